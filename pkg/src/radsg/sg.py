"""Radical Sylvester-Gallai configurations: validation, verification, sets."""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations

from .ideal import (
    QuotientContext,
    is_radical_pair,
    is_regular_sequence,
    radical_member,
)
from .poly import (
    Poly,
    in_linear_span,
    is_squarefree,
    poly_gcd,
    span_dimension,
)

__all__ = [
    "SGConfig",
    "SGReport",
    "PairResult",
    "Violation",
    "validate",
    "verify_sg",
    "embed_basic",
    "robust_linear_check",
    "sg_sets",
    "potential",
    "config_span",
]

MAX_WITNESS_POWER = 8
POWER_PROBE = 64
GRID_LIMIT = 3 ** 8


@dataclass
class SGConfig:
    ambient: QuotientContext
    kind: str
    forms: list
    degree_bound: int
    z: Poly | None = None
    name: str = ""
    annotations: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("basic", "general"):
            raise ValueError("kind must be 'basic' or 'general'")
        if self.kind == "general" and self.z is None:
            raise ValueError("a general configuration needs its linear form z")
        self.forms = [self.ambient.lift(f) for f in self.forms]
        if self.z is not None:
            self.z = self.ambient.lift(self.z)

    @property
    def ring(self):
        return self.ambient.ring

    def elements(self):
        """The configuration set itself: forms, or {z, zF_1, ..., zF_m}."""
        if self.kind == "basic":
            return list(self.forms)
        return [self.z] + [self.z * f for f in self.forms]

    def element_label(self, k):
        if self.kind == "basic":
            return k + 1
        return "z" if k == 0 else k

    def residual_degrees(self):
        return [f.degree() for f in self.forms]

    def pairs(self):
        if self.kind == "basic":
            return list(combinations(range(len(self.forms)), 2))
        return list(combinations(range(1, len(self.forms) + 1), 2))


@dataclass
class Violation:
    kind: str
    indices: tuple
    message: str

    def to_dict(self):
        return {"kind": self.kind, "indices": list(self.indices), "message": self.message}

    def __str__(self):
        return f"{self.kind} {list(self.indices)}: {self.message}"


@dataclass
class PairResult:
    i: object
    j: object
    witness: object = None
    method: str | None = None
    power: int | None = None
    witness_form: str | None = None

    @property
    def ok(self):
        return self.witness is not None

    def to_dict(self):
        d = {"pair": [self.i, self.j], "ok": self.ok}
        if self.ok:
            d["witness"] = self.witness
            d["witness_form"] = self.witness_form
            d["method"] = self.method
            if self.power is not None:
                d["power"] = self.power
        return d


@dataclass
class SGReport:
    name: str
    kind: str
    passed: bool
    pairs: list
    span_dimension: int
    potential: int
    seed: int
    warnings: list = dc_field(default_factory=list)
    violations: list = dc_field(default_factory=list)
    uncertified: list = dc_field(default_factory=list)
    timing: float = 0.0

    def failures(self):
        return [p for p in self.pairs if not p.ok]

    def to_dict(self, include_timing=False):
        d = {
            "name": self.name,
            "kind": self.kind,
            "passed": self.passed,
            "span_dimension": self.span_dimension,
            "potential": self.potential,
            "seed": self.seed,
            "pair_count": len(self.pairs),
            "failed_pairs": [[p.i, p.j] for p in self.failures()],
            "pairs": [p.to_dict() for p in self.pairs],
            "violations": [v.to_dict() for v in self.violations],
            "uncertified": list(self.uncertified),
            "warnings": list(self.warnings),
        }
        if include_timing:
            d["timing_seconds"] = round(self.timing, 3)
        return d


def _ambient_is_free(config):
    return config.ambient.is_polynomial_ring()


def validate(config: SGConfig):
    """List every violated configuration invariant (empty when valid)."""
    out = []
    amb = config.ambient
    forms = [amb.nf(f) for f in config.forms]
    d = config.degree_bound
    for k, f in enumerate(forms):
        if not f:
            out.append(Violation("zero", (k + 1,), "form vanishes in the ambient ring"))
            continue
        if not config.forms[k].is_homogeneous():
            out.append(Violation("not-homogeneous", (k + 1,), str(config.forms[k])))
        deg = config.forms[k].degree()
        if deg > d:
            out.append(Violation("degree", (k + 1,), f"degree {deg} exceeds bound {d}"))
    if config.kind == "general":
        z = config.z
        if z.degree() != 1 or not z.is_homogeneous():
            out.append(Violation("z-degree", (0,), "z must be a linear form"))
    free = _ambient_is_free(config)
    for a, b in combinations(range(len(forms)), 2):
        fa, fb = forms[a], forms[b]
        if not fa or not fb:
            continue
        if config.kind == "basic":
            if _associate(fa, fb, amb):
                out.append(Violation("associate", (a + 1, b + 1), "forms are associate"))
        else:
            if free:
                g = poly_gcd(fa, fb)
                if not g.is_constant():
                    out.append(Violation("gcd", (a + 1, b + 1), f"common factor {g}"))
            elif _associate(fa, fb, amb):
                out.append(Violation("associate", (a + 1, b + 1), "forms are associate"))
    if config.kind == "general" and free:
        for k, f in enumerate(forms):
            if f and not is_squarefree(amb.nf(config.z * config.forms[k])):
                out.append(Violation("not-squarefree", (k + 1,), "z*F is not squarefree"))
    return out


def _associate(f, g, amb):
    if f.degree() != g.degree():
        return False
    if len(f.terms) != len(g.terms):
        return False
    return f.monic() == g.monic()


def certification_gaps(config: SGConfig):
    """Invariants that cannot be certified in a proper quotient ambient."""
    if config.kind == "general" and not _ambient_is_free(config):
        return ["coprimality and squarefreeness of residual forms are not certified "
                "outside polynomial-ring ambients"]
    return []


def config_span(config: SGConfig) -> int:
    amb = config.ambient
    return span_dimension([amb.nf(e) for e in config.elements()])


def potential(config: SGConfig) -> int:
    """Sum of j * |F_j| over residual degrees j, i.e. the sum of the degrees."""
    return sum(int(f.degree()) for f in config.forms)


def _power_in(f, gb, limit):
    """Least k <= limit with f^k in the ideal, else None."""
    p = f
    for k in range(1, limit + 1):
        p = gb.reduce(p)
        if not p:
            return k
        p = p * f
    return None


def _grid_points(config, a, b):
    """Small integer points of V(a, b, U); each one refutes radical membership."""
    ring = config.ring
    n = ring.nvars
    if 3 ** n > GRID_LIMIT:
        return []
    field = ring.field
    vals = [field(v) for v in (0, 1, -1)]
    polys = [a, b] + list(config.ambient.relations)
    out = []
    for pt in itertools.product(vals, repeat=n):
        if all(not v for v in pt):
            continue
        if all(not g.evaluate(pt) for g in polys):
            out.append(pt)
    return out


def _check_pair(config: SGConfig, i, j) -> PairResult:
    amb = config.ambient
    elems = config.elements()
    a, b = elems[i], elems[j]
    gb = amb.ideal([a, b])
    cands = [k for k in range(len(elems)) if k not in (i, j)]
    cands.sort(key=lambda k: (elems[k].degree(), k))
    res = PairResult(config.element_label(i), config.element_label(j))
    for k in cands:
        if gb.contains(elems[k]):
            res.witness = config.element_label(k)
            res.method = "ideal"
            res.power = 1
            res.witness_form = str(elems[k])
            return res
    homogeneous = all(g.is_homogeneous() for g in [a, b] + list(amb.relations))
    points = None
    for k in cands:
        f = elems[k]
        power = _power_in(f, gb, POWER_PROBE)
        if power is None and homogeneous:
            if points is None:
                points = _grid_points(config, a, b)
            if any(f.evaluate(pt) for pt in points):
                continue
        if power is not None or radical_member(f, [a, b], amb):
            res.witness = config.element_label(k)
            res.method = "radical"
            res.witness_form = str(f)
            res.power = power
            return res
    return res


def _check_pair_job(args):
    config, i, j = args
    return _check_pair(config, i, j)


def verify_sg(config: SGConfig, jobs: int = 1, seed: int = 42) -> SGReport:
    """Search a third configuration element in the radical of every pair."""
    t0 = time.perf_counter()
    violations = validate(config)
    pairs = config.pairs()
    if jobs and jobs > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_check_pair_job, [(config, i, j) for i, j in pairs]))
    else:
        results = [_check_pair(config, i, j) for i, j in pairs]
    results.sort(key=lambda r: (str(r.i).zfill(6), str(r.j).zfill(6)))
    span = config_span(config)
    warnings = []
    stated = config.annotations.get("stated_span")
    if stated is not None and stated != span:
        warnings.append(
            f"computed span dimension {span} differs from the stated value {stated}"
        )
    passed = not violations and all(r.ok for r in results)
    return SGReport(
        name=config.name,
        kind=config.kind,
        passed=passed,
        pairs=results,
        span_dimension=span,
        potential=potential(config),
        seed=seed,
        warnings=warnings,
        violations=violations,
        uncertified=certification_gaps(config),
        timing=time.perf_counter() - t0,
    )


def embed_basic(config: SGConfig, name: str | None = None) -> SGConfig:
    """Basic configuration {F_i} to the general one {z, zF_1, ..., zF_m}."""
    if config.kind != "basic":
        raise ValueError("embed_basic expects a basic configuration")
    ring = config.ring
    if name is None:
        name = ring.fresh_name("z")
    elif name in ring.index:
        raise ValueError(f"variable collision: {name}")
    big = ring.extend([name])
    amb = QuotientContext(big, [r.to_ring(big) for r in config.ambient.relations])
    return SGConfig(
        ambient=amb,
        kind="general",
        forms=[f.to_ring(big) for f in config.forms],
        degree_bound=config.degree_bound,
        z=big.var(name),
        name=(config.name + "+z") if config.name else "",
        annotations=dict(config.annotations),
    )


def _linear_vector(f: Poly):
    if f.degree() != 1 or not f.is_homogeneous():
        raise ValueError(f"{f} is not a linear form")
    return f


def robust_linear_check(points, c: int = 0, delta=Fraction(1), W=None) -> dict:
    """Check the (c, delta) robust condition for linear forms against W."""
    delta = Fraction(delta)
    if not (0 < delta <= 1):
        raise ValueError("delta must lie in (0, 1]")
    pts = [_linear_vector(p) for p in points]
    Wb = list(W) if W else []
    if not Wb:
        c = 0
    m = len(pts)
    for a, b in combinations(range(m), 2):
        if span_dimension([pts[a], pts[b]]) < 2:
            raise ValueError(f"forms {a + 1} and {b + 1} are associate")

    def in_W(f):
        return bool(Wb) and in_linear_span(f, Wb)

    def meets_W(f, g):
        if not Wb:
            return False
        return span_dimension([f, g]) + span_dimension(Wb) > span_dimension([f, g] + Wb)

    per_point = []
    holds = True
    for i in range(m):
        if in_W(pts[i]):
            per_point.append({"index": i + 1, "in_W": True})
            continue
        good = 0
        for j in range(m):
            if j == i or in_W(pts[j]):
                continue
            third = any(
                k not in (i, j) and span_dimension([pts[i], pts[j], pts[k]]) == 2
                for k in range(m)
            )
            if third or meets_W(pts[i], pts[j]):
                good += 1
        need = delta * (m - 1)
        ok = good >= need
        holds = holds and ok
        per_point.append({"index": i + 1, "partners": good, "needed": str(need), "ok": ok})
    span = span_dimension(pts)
    bound = c + 1 + Fraction(8) / delta
    out = {
        "holds": holds,
        "span_dimension": span,
        "bound": str(bound),
        "points": per_point,
    }
    violation = holds and span > bound
    if not Wb:
        thm = math.ceil(Fraction(4) / delta) - 1
        out["bound_no_W"] = thm
        violation = violation or (holds and span > thm)
    out["violation"] = violation
    return out


@dataclass
class SGSets:
    F: Poly
    fspan: list
    grad: list
    frad: list
    unknown: list
    details: dict

    def to_dict(self):
        return {
            "F": str(self.F),
            "Fspan": [str(g) for g in self.fspan],
            "Grad": [str(p) for p in self.grad],
            "Frad": [str(g) for g in self.frad],
            "unknown_radicality": [str(p) for p in self.unknown],
            "details": self.details,
        }


def sg_sets(config: SGConfig, F: Poly, search_degree: int = 2) -> SGSets:
    """The span / radical neighbourhoods of a top-degree residual form F."""
    if config.kind != "general":
        raise ValueError("sg_sets expects a general configuration")
    amb = config.ambient
    F = amb.lift(F)
    forms = config.forms
    top = max(f.degree() for f in forms)
    if F.degree() != top or not any(F == f for f in forms):
        raise ValueError("F must be a residual form of top degree")
    Fd = [f for f in forms if f.degree() == top]
    lower = [f for f in forms if f.degree() < top]
    fspan = []
    for G in Fd:
        if G == F:
            continue
        if any(H != F and H != G and in_linear_span(amb.nf(H), [amb.nf(F), amb.nf(G)]) for H in Fd):
            fspan.append(G)
    grad, unknown, details = [], [], {}
    for P in lower:
        reg = is_regular_sequence([config.z, P, F], amb)
        entry = {"regular": reg}
        if reg:
            rad = is_radical_pair(F, P, amb, search_degree)
            entry["radicality"] = rad.to_dict()
            if rad.status == "RADICAL":
                grad.append(P)
            elif rad.status == "UNKNOWN":
                unknown.append(P)
        details[str(P)] = entry
    frad = []
    for G in Fd:
        if G == F:
            continue
        for P in grad:
            if amb.ideal([F, P]).contains(G):
                frad.append(G)
                break
    return SGSets(F, fspan, grad, frad, unknown, details)
