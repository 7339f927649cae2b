"""Collapse and strength of forms, and the strengthening loop for graded spaces."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from math import gcd

from gmpy2 import is_square, isqrt, mpq

from . import linalg
from .ideal import groebner, krull_dimension, subalgebra_member
from .poly import GradedVectorSpace, Poly, divide_exact, in_linear_span

__all__ = [
    "INFINITY",
    "CollapseCertificate",
    "StrengthEstimate",
    "quadric_matrix",
    "quadric_rank",
    "quadric_strength",
    "collapse_search",
    "min_strength",
    "lifted_strength",
    "strength_translate_check",
    "strengthen",
    "StrengthenResult",
]

INFINITY = math.inf


def _fmt_bound(v):
    return "inf" if v == INFINITY else int(v)


@dataclass
class CollapseCertificate:
    """F = sum G_i H_i, plus optional formal pairs c1 L1^2 + c2 L2^2.

    A formal pair factors only over an extension containing sqrt(-c2/c1).
    """

    target: Poly
    factors: list = dc_field(default_factory=list)
    formal: list = dc_field(default_factory=list)

    @property
    def count(self):
        return len(self.factors) + len(self.formal)

    @property
    def rational(self):
        return not self.formal

    def expand(self):
        acc = self.target.ring.zero()
        for g, h in self.factors:
            acc = acc + g * h
        for c1, l1, c2, l2 in self.formal:
            acc = acc + l1 * l1 * c1 + l2 * l2 * c2
        return acc

    def verify(self):
        return self.expand() == self.target

    def to_dict(self):
        out = {
            "count": self.count,
            "rational": self.rational,
            "factors": [[str(g), str(h)] for g, h in self.factors],
        }
        if self.formal:
            out["formal_pairs"] = [
                {"c1": str(c1), "L1": str(l1), "c2": str(c2), "L2": str(l2)}
                for c1, l1, c2, l2 in self.formal
            ]
        return out


@dataclass
class StrengthEstimate:
    form: Poly
    lower: float
    upper: float
    methods: list = dc_field(default_factory=list)
    certificate: CollapseCertificate | None = None

    @property
    def exact(self):
        return self.lower == self.upper

    def to_dict(self):
        out = {
            "form": str(self.form),
            "lower": _fmt_bound(self.lower),
            "upper": _fmt_bound(self.upper),
            "exact": self.exact,
            "methods": list(self.methods),
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        return out


# ---------------------------------------------------------------------------
# quadrics


def _check_quadric(q: Poly):
    if q and (not q.is_homogeneous() or q.degree() != 2):
        raise ValueError("expected a homogeneous quadric")


def quadric_matrix(q: Poly):
    """Symmetric matrix M with q = x^T M x, as dict rows."""
    _check_quadric(q)
    n = q.ring.nvars
    rows = [dict() for _ in range(n)]
    for e, c in q.terms.items():
        idx = [i for i, x in enumerate(e) for _ in range(x)]
        i, j = idx
        if i == j:
            rows[i][i] = rows[i].get(i, 0) + c
        else:
            half = c * mpq(1, 2)
            rows[i][j] = rows[i].get(j, 0) + half
            rows[j][i] = rows[j].get(i, 0) + half
    return rows


def quadric_rank(q: Poly) -> int:
    if not q:
        return 0
    return linalg.rank(quadric_matrix(q))


def _square_coeff(q, i):
    e = [0] * q.ring.nvars
    e[i] = 2
    return q.terms.get(tuple(e))


def _rational_sqrt(v):
    if hasattr(v, "is_rational"):
        if not v.is_rational():
            return None
        v = v.c[0]
    v = mpq(v)
    if v < 0:
        return None
    num, den = v.numerator, v.denominator
    if is_square(num) and is_square(den):
        return mpq(isqrt(num), isqrt(den))
    return None


def _split_quadric(q: Poly):
    """Hyperbolic products and diagonal squares with q = sum GH + sum c L^2."""
    ring = q.ring
    hyper, diag = [], []
    r = q
    while r:
        sq = next((i for i in range(ring.nvars) if _square_coeff(r, i)), None)
        if sq is not None:
            a = _square_coeff(r, sq)
            xi = ring.gens()[sq]
            B = r.diff(ring.vars[sq]) - xi * (2 * a)
            L = xi + B.scale(1 / (2 * a) if not hasattr(a, "inv") else (a * 2).inv())
            diag.append((a, L))
            r = r - (L * L).scale(a)
            continue
        e = next(iter(r.terms))
        i, j = [k for k, x in enumerate(e) if x]
        b = r.terms[e]
        binv = 1 / b if not hasattr(b, "inv") else b.inv()
        xi, xj = ring.gens()[i], ring.gens()[j]
        B1 = r.diff(ring.vars[i]) - xj.scale(b)
        B2 = r.diff(ring.vars[j]) - xi.scale(b)
        G = (xi + B2.scale(binv)).scale(b)
        H = xj + B1.scale(binv)
        hyper.append((G, H))
        r = r - G * H
    return hyper, diag


def _quadric_certificate(q: Poly) -> CollapseCertificate:
    hyper, diag = _split_quadric(q)
    factors = list(hyper)
    formal = []
    pending = list(diag)
    while len(pending) >= 2:
        c1, l1 = pending.pop(0)
        partner = None
        for k, (c2, l2) in enumerate(pending):
            t = _rational_sqrt(-c2 / c1)
            if t is not None:
                partner = k
                break
        if partner is None:
            c2, l2 = pending.pop(0)
            formal.append((c1, l1, c2, l2))
            continue
        c2, l2 = pending.pop(partner)
        factors.append(((l1 - l2.scale(t)).scale(c1), l1 + l2.scale(t)))
    if pending:
        c, l = pending.pop()
        factors.append((l.scale(c), l))
    return CollapseCertificate(q, factors, formal)


def quadric_strength(q: Poly) -> StrengthEstimate:
    """Exact strength ceil(rank/2) - 1 with a splitting certificate."""
    _check_quadric(q)
    if not q:
        return StrengthEstimate(q, -1, -1, ["zero-form"])
    r = quadric_rank(q)
    s = (r + 1) // 2 - 1
    cert = _quadric_certificate(q)
    assert cert.count == s + 1 and cert.verify()
    tags = ["quadric-rank"] + ([] if cert.rational else ["formal-certificate"])
    return StrengthEstimate(q, s, s, tags, cert)


# ---------------------------------------------------------------------------
# bounded search for higher degree


def _min_variable_cover(f: Poly):
    supports = [frozenset(i for i, x in enumerate(e) if x) for e in f.terms]
    pool = sorted(set().union(*supports)) if supports else []
    for k in range(0, len(pool) + 1):
        for S in itertools.combinations(pool, k):
            s = set(S)
            if all(sup & s for sup in supports):
                return list(S)
    return pool


def _split_by_variables(f: Poly, cover):
    ring = f.ring
    parts = {i: {} for i in cover}
    for e, c in f.terms.items():
        i = next(i for i in cover if e[i])
        ne = list(e)
        ne[i] -= 1
        parts[i][tuple(ne)] = c
    return [(ring.gens()[i], Poly(ring, parts[i])) for i in cover if parts[i]]


def _linear_candidates(var_idx, n, radius):
    rng = range(-radius, radius + 1)
    for coeffs in itertools.product(rng, repeat=len(var_idx)):
        nz = [c for c in coeffs if c]
        if len(nz) < 2 or nz[0] < 0:
            continue
        g = 0
        for c in nz:
            g = gcd(g, abs(c))
        if g != 1:
            continue
        yield {var_idx[k]: c for k, c in enumerate(coeffs) if c}


def collapse_search(f: Poly, radius: int = 1) -> StrengthEstimate:
    """Strength bounds from collapses found by a bounded search."""
    if not f or f.is_constant():
        raise ValueError("collapse_search needs a form of degree at least 1")
    if not f.is_homogeneous():
        raise ValueError("collapse_search needs a homogeneous form")
    if f.degree() == 1:
        return StrengthEstimate(f, INFINITY, INFINITY, ["linear-infinite"])
    if f.degree() == 2:
        return quadric_strength(f)
    ring = f.ring
    cover = _min_variable_cover(f)
    best = CollapseCertificate(f, _split_by_variables(f, cover))
    used = sorted(f.variables())
    for ell in _linear_candidates(used, ring.nvars, radius):
        if best.count <= 1:
            break
        piv = max(ell)
        cp = ell[piv]
        L = ring.zero()
        for i, c in ell.items():
            L = L + ring.gens()[i].scale(c)
        sub = ring.zero()
        for i, c in ell.items():
            if i != piv:
                sub = sub - ring.gens()[i].scale(mpq(c, cp))
        fbar = f.subs({ring.vars[piv]: sub})
        h0 = divide_exact(f - fbar, L)
        if h0 is None:
            continue
        if not fbar:
            parts = [(L, h0)]
        else:
            sub_cover = _min_variable_cover(fbar)
            if 1 + len(sub_cover) >= best.count:
                continue
            parts = [(L, h0)] + _split_by_variables(fbar, sub_cover)
        best = CollapseCertificate(f, parts)
    assert best.verify()
    tags = ["collapse-found", f"search-radius({radius})"]
    return StrengthEstimate(f, 0, best.count - 1, tags, best)


# ---------------------------------------------------------------------------
# spaces


def _pencil_min_rank(quads):
    """Minimum rank over nonzero members of span(quads) (over the closure)."""
    ring = quads[0].ring
    k = len(quads)
    n = ring.nvars
    tnames = [f"t{i}" for i in range(k)]
    from .poly import Ring

    T = Ring(tnames, field=ring.field)
    mats = [quadric_matrix(q) for q in quads]
    M = [[T.zero() for _ in range(n)] for _ in range(n)]
    for a, m in enumerate(mats):
        ta = T.gens()[a]
        for i, row in enumerate(m):
            for j, c in row.items():
                M[i][j] = M[i][j] + ta.scale(c)
    cap = min(quadric_rank(q) for q in quads)
    for r in range(1, cap):
        minors = []
        for rows in itertools.combinations(range(n), r + 1):
            for cols in itertools.combinations(range(n), r + 1):
                sub = [[M[i][j] for j in cols] for i in rows]
                d = _poly_det(sub, T)
                if d:
                    minors.append(d)
        if not minors:
            return r
        gb = groebner(minors, T.order)
        if not gb.is_unit and krull_dimension(gb) >= 1:
            return r
    return cap


def _poly_det(mat, ring):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    acc = ring.zero()
    for j in range(n):
        if not mat[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * _poly_det(minor, ring)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _small_combos(k, span=2):
    for coeffs in itertools.product(range(-span, span + 1), repeat=k):
        if any(coeffs):
            nz = next(c for c in coeffs if c)
            if nz > 0:
                yield coeffs


def _combine(basis, coeffs):
    acc = basis[0].ring.zero()
    for b, c in zip(basis, coeffs):
        if c:
            acc = acc + b.scale(c)
    return acc


def _piece_min_strength(piece, radius, rng, samples):
    if not piece:
        return StrengthEstimate(None, INFINITY, INFINITY, ["empty"])
    deg = piece[0].degree()
    if deg == 1:
        return StrengthEstimate(piece[0], INFINITY, INFINITY, ["linear-infinite"])
    if deg == 2:
        ests = [quadric_strength(b) for b in piece]
        best = min(ests, key=lambda s: s.upper)
        if len(piece) == 1:
            return best
        if len(piece) <= 3:
            rmin = _pencil_min_rank(piece)
            s = (rmin + 1) // 2 - 1
            if best.upper == s:
                return StrengthEstimate(best.form, s, s, ["pencil-minors"], best.certificate)
            for coeffs in _small_combos(len(piece)):
                g = _combine(piece, coeffs)
                if quadric_rank(g) == rmin:
                    est = quadric_strength(g)
                    return StrengthEstimate(g, s, s, ["pencil-minors"], est.certificate)
            # minimum attained only away from small rational combinations
            return StrengthEstimate(None, s, s, ["pencil-minors", "no-rational-witness"])
        for _ in range(samples):
            coeffs = [rng.randint(-3, 3) for _ in piece]
            if not any(coeffs):
                continue
            est = quadric_strength(_combine(piece, coeffs))
            if est.upper < best.upper:
                best = est
        return StrengthEstimate(best.form, 0, best.upper, ["sampled-upper-bound"], best.certificate)
    ests = [collapse_search(b, radius) for b in piece]
    best = min(ests, key=lambda s: s.upper)
    for _ in range(samples):
        coeffs = [rng.randint(-3, 3) for _ in piece]
        if not any(coeffs):
            continue
        est = collapse_search(_combine(piece, coeffs), radius)
        if est.upper < best.upper:
            best = est
    return StrengthEstimate(best.form, 0, best.upper, ["sampled-upper-bound"], best.certificate)


def min_strength(space: GradedVectorSpace, radius: int = 1, seed: int = 42, samples: int = 20):
    """Per-degree minimum strength estimates; the zero space has strength inf."""
    rng = random.Random(seed)
    out = {}
    for deg in sorted(set(space.degrees())):
        out[deg] = _piece_min_strength(space.piece(deg), radius, rng, samples)
    return out


def lifted_strength(lifts, U_forms=(), radius: int = 1, seed: int = 42):
    """Upper bounds for the strength of one chosen lift of a space modulo U.

    Only the supplied lifts are examined; no minimum over all lifts is taken.
    """
    lifts = list(lifts)
    if not lifts:
        return {}
    ring = lifts[0].ring
    basis = []
    for f in list(U_forms) + lifts:
        if f and not in_linear_span(f, basis):
            basis.append(f)
    return min_strength(GradedVectorSpace(ring, basis), radius, seed)


def strength_translate_check(f: Poly, alpha, z: str | None = None, radius: int = 1) -> dict:
    """Compare s(F) with s(F - alpha z^d) for a fresh variable z."""
    ring = f.ring
    z = z or ring.fresh_name("z")
    if z in ring.index:
        raise ValueError(f"{z} is not fresh")
    big = ring.extend([z])
    F = f.to_ring(big)
    G = F - big.var(z) ** f.degree() * big.field(alpha)
    if f.degree() == 2:
        before, after = quadric_strength(F), quadric_strength(G)
        out = {
            "rank_before": quadric_rank(F),
            "rank_after": quadric_rank(G),
        }
    else:
        before, after = collapse_search(F, radius), collapse_search(G, radius)
        out = {}
    s0, s1 = before, after
    # interval version of s <= s' <= s + 1
    holds = s1.upper >= s0.lower and s1.lower <= s0.upper + 1
    out.update({
        "form": str(f),
        "translated": str(G),
        "strength_before": [_fmt_bound(s0.lower), _fmt_bound(s0.upper)],
        "strength_after": [_fmt_bound(s1.lower), _fmt_bound(s1.upper)],
        "exact": s0.exact and s1.exact,
        "holds": bool(holds),
    })
    return out


# ---------------------------------------------------------------------------
# strengthening loop


@dataclass
class StrengthenResult:
    status: str  # B-STRONG | ASSUMED-STRONG | UNDECIDED
    space: GradedVectorSpace
    trace: list
    contained: bool | None
    bound: tuple | None
    dims: tuple
    reason: str = ""

    def to_dict(self):
        return {
            "status": self.status,
            "basis": [str(b) for b in self.space.basis],
            "dimension_sequence": list(self.dims),
            "contains_input_algebra": self.contained,
            "C_bound": list(self.bound) if self.bound is not None else None,
            "iterations": len(self.trace),
            "trace": self.trace,
            "reason": self.reason,
        }


def _dims(pieces, e):
    return tuple(len(pieces.get(i, [])) for i in range(1, e + 1))


def _revlex_less(a, b):
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return x < y
    return False


def strengthen(space: GradedVectorSpace, B, radius: int = 1, policy: str = "abort",
               max_iterations: int = 200, seed: int = 42, budget=None) -> StrengthenResult:
    """Replace weak forms by their collapse factors until the space is B-strong."""
    from .bounds import BudgetExceeded, eval_C

    if policy not in ("abort", "assume-strong"):
        raise ValueError("policy must be 'abort' or 'assume-strong'")
    e = B.e
    if any(d > e or d < 1 for d in space.degrees()):
        raise ValueError(f"space has degrees outside [1, {e}]")
    ring = space.ring
    pieces = {}
    for b in space.basis:
        pieces.setdefault(b.degree(), []).append(b)
    delta0 = _dims(pieces, e)
    trace = []
    assumed = []
    status = "B-STRONG"
    reason = ""
    for _ in range(max_iterations):
        delta = _dims(pieces, e)
        target = B(delta)
        ell, pick = None, None
        for i in range(e, 0, -1):
            piece = pieces.get(i, [])
            if not piece or i == 1:
                continue
            need = target[i - 1]
            # lowest-index basis element that is already weak
            cand = None
            for b in piece:
                est = quadric_strength(b) if i == 2 else collapse_search(b, radius)
                if est.upper < need:
                    cand = est
                    break
            if cand is None:
                est = _piece_min_strength(piece, radius, random.Random(seed), 20)
                if est.upper < need:
                    if est.form is None:
                        return StrengthenResult("UNDECIDED", GradedVectorSpace(ring, _flat(pieces)),
                                                trace, None, None, delta,
                                                f"degree {i}: weak member has no rational witness")
                    cand = est
                elif est.lower < need:
                    if policy == "abort":
                        return StrengthenResult("UNDECIDED", GradedVectorSpace(ring, _flat(pieces)),
                                                trace, None, None, delta,
                                                f"degree {i}: strength in [{_fmt_bound(est.lower)}, "
                                                f"{_fmt_bound(est.upper)}] vs required {need}")
                    assumed.append(i)
                    continue
            if cand is not None:
                ell, pick = i, cand
                break
        if ell is None:
            break
        cert = pick.certificate
        if cert is None or not cert.rational:
            return StrengthenResult("UNDECIDED", GradedVectorSpace(ring, _flat(pieces)), trace,
                                    None, None, delta,
                                    f"degree {ell}: no rational collapse of {pick.form}")
        P = pick.form
        piece = pieces[ell]
        coeffs = linalg.solve_in_span(P.terms, [b.terms for b in piece])
        k = next(j for j, c in enumerate(coeffs) if c)
        removed = piece[k]
        pieces[ell] = piece[:k] + piece[k + 1:]
        added = []
        for g, h in cert.factors:
            for w in (g, h):
                if w.is_constant():
                    continue
                dw = w.degree()
                cur = pieces.setdefault(dw, [])
                if not in_linear_span(w, cur):
                    cur.append(w)
                    added.append(str(w))
        new_delta = _dims(pieces, e)
        assert _revlex_less(new_delta, delta)
        trace.append({
            "degree": ell,
            "removed": str(removed),
            "collapsed_form": str(P),
            "collapse_factors": [[str(g), str(h)] for g, h in cert.factors],
            "added": added,
            "dimension_sequence": list(new_delta),
        })
    else:
        return StrengthenResult("UNDECIDED", GradedVectorSpace(ring, _flat(pieces)), trace, None,
                                None, _dims(pieces, e), "iteration limit reached")
    if assumed:
        status = "ASSUMED-STRONG"
        reason = f"strength assumed in degrees {sorted(set(assumed))}"
    out = GradedVectorSpace(ring, _flat(pieces))
    contained = all(subalgebra_member(b, out.basis) for b in space.basis)
    try:
        bound = eval_C(B, delta0, budget)
    except BudgetExceeded:
        bound = None
    return StrengthenResult(status, out, trace, contained, bound, _dims(pieces, e), reason)


def _flat(pieces):
    return [b for d in sorted(pieces) for b in pieces[d]]
