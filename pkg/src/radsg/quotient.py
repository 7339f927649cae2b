"""General quotients R -> R[u]/(F_i - alpha_i u^deg F_i) and degree reduction."""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field as dc_field
from math import prod

from .ideal import QuotientContext, divide_in_quotient
from .poly import (
    GradedVectorSpace,
    Poly,
    Ring,
    divide_exact,
    in_linear_span,
    pairwise_associate,
    squarefree_part,
)
from .sg import SGConfig, potential, validate, verify_sg

__all__ = [
    "GeneralQuotientMap",
    "sample_alpha",
    "push_config",
    "degree_reduce_pipeline",
    "PipelineError",
    "PushResult",
    "lifting_bound",
    "compose_bound",
    "append_trace",
    "suggest_covering_space",
]

MAX_ATTEMPTS = 5


class PipelineError(ValueError):
    pass


def sample_alpha(n: int, seed: int, bits: int = 16):
    """n nonzero integers uniform in [1, 2^bits], reproducible from the seed."""
    if n <= 0:
        raise ValueError("need at least one scalar")
    if bits < 8:
        raise ValueError("bits must be at least 8")
    rng = random.Random(seed)
    return [rng.randint(1, 2 ** bits) for _ in range(n)]


class GeneralQuotientMap:
    """phi_alpha: kill F_i - alpha_i u^{deg F_i} for a basis F_i of V."""

    def __init__(self, source: QuotientContext, space, alpha=None, seed: int = 42,
                 bits: int = 16, fresh: str | None = None):
        if not isinstance(space, GradedVectorSpace):
            space = GradedVectorSpace(source.ring, [source.lift(b) for b in space])
        self.source = source
        self.space = space
        self.seed = seed
        if alpha is None:
            alpha = sample_alpha(space.dim, seed, bits)
        if len(alpha) != space.dim:
            raise ValueError("need one scalar per basis element")
        field = source.ring.field
        self.alpha = [field(a) for a in alpha]
        if any(not a for a in self.alpha):
            raise ValueError("scalars must be nonzero")
        self.fresh = fresh or source.ring.fresh_name("u")
        big = source.ring.extend([self.fresh])
        self.ring = big
        u = big.var(self.fresh)
        self.u = u
        rels = [r.to_ring(big) for r in source.relations]
        rels += [b.to_ring(big) - u ** b.degree() * a for b, a in zip(space.basis, self.alpha)]
        self.target = QuotientContext(big, rels)

    def apply(self, f: Poly) -> Poly:
        f = self.source.lift(f)
        return self.target.nf(f.to_ring(self.ring))

    def defining_hash(self) -> str:
        text = "\n".join(sorted(str(r) for r in self.target.relations))
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def describe(self):
        return {
            "fresh_variable": self.fresh,
            "space": [str(b) for b in self.space.basis],
            "alpha": [str(a) for a in self.alpha],
            "seed": self.seed,
            "defining_ideal_hash": self.defining_hash(),
        }


@dataclass
class PushResult:
    config: SGConfig
    images: list
    dropped: list = dc_field(default_factory=list)
    uncertified: list = dc_field(default_factory=list)
    failures: list = dc_field(default_factory=list)


def _strip_u(g: Poly, u: Poly, amb: QuotientContext, free: bool):
    k = 0
    while g and not g.is_constant():
        h = divide_exact(g, u) if free else divide_in_quotient(g, u, amb)
        if h is None or not h:
            break
        g, k = h, k + 1
    return g, k


def push_config(qmap: GeneralQuotientMap, config: SGConfig) -> PushResult:
    """Image of a general configuration, reduced, with u as its linear form."""
    if config.kind != "general":
        raise ValueError("push_config expects a general configuration")
    if not in_linear_span(config.z, qmap.space.basis):
        raise PipelineError("the configuration's linear form is not in the covering space")
    tgt = qmap.target
    free = tgt.is_polynomial_ring()
    if free:
        names = tgt.free_variables()
        weights = [qmap.ring.weights[qmap.ring.index[v]] for v in names]
        out_ring = Ring(names, weights, qmap.ring.field)
        out_amb = QuotientContext.polynomial(out_ring)
    else:
        out_ring = qmap.ring
        out_amb = tgt
    u = out_ring.var(qmap.fresh)
    zimg = qmap.apply(config.z)
    failures = []
    if not zimg:
        failures.append("image of z vanishes")
    images, forms, dropped, uncertified = [], [], [], []
    for k, f in enumerate(config.forms):
        img = qmap.apply(f)
        images.append(img)
        if not img:
            failures.append(f"image of F{k + 1} vanishes")
            continue
        g = img.to_ring(out_ring)
        if free:
            g = squarefree_part(g)
        g, _ = _strip_u(g, u, out_amb, free)
        if not free:
            uncertified.append(k + 1)
        if g.is_constant():
            dropped.append(k + 1)
            continue
        if any(pairwise_associate(g, h) for h in forms):
            dropped.append(k + 1)
            continue
        forms.append(g.monic())
    new_bound = max(config.degree_bound - 1, max((f.degree() for f in forms), default=1), 1)
    new = SGConfig(
        ambient=out_amb,
        kind="general",
        forms=forms,
        degree_bound=new_bound,
        z=u,
        name=(config.name + "/phi") if config.name else "",
    )
    return PushResult(new, images, dropped, uncertified, failures)


def degree_reduce_pipeline(config: SGConfig, covering_space, seed: int = 42, bits: int = 16,
                           verify: bool = True):
    """One general-quotient step that lowers the top residual degree."""
    if config.kind != "general":
        raise PipelineError("the pipeline expects a general configuration")
    amb = config.ambient
    if not isinstance(covering_space, GradedVectorSpace):
        covering_space = GradedVectorSpace(config.ring, [amb.lift(b) for b in covering_space])
    if not in_linear_span(config.z, covering_space.basis):
        raise PipelineError("covering space does not contain z")
    d = config.degree_bound
    top = [f for f in config.forms if f.degree() == d]
    if not top:
        raise PipelineError("nothing to reduce: no residual form of top degree")
    cover = amb.ideal(covering_space.basis)
    uncovered = [str(f) for f in top if not cover.contains(f)]
    if uncovered:
        raise PipelineError("covering condition fails for: " + ", ".join(uncovered))
    degrees_before = [int(f.degree()) for f in config.forms]
    phi_before = potential(config)
    rng = random.Random(seed)
    attempts = []
    for attempt in range(MAX_ATTEMPTS):
        s = seed if attempt == 0 else rng.randrange(2 ** 31)
        qmap = GeneralQuotientMap(amb, covering_space, seed=s, bits=bits)
        pushed = push_config(qmap, config)
        problems = list(pushed.failures)
        if not problems:
            problems += [str(v) for v in validate(pushed.config)]
        new_top = max((f.degree() for f in pushed.config.forms), default=0)
        if not problems and new_top >= d:
            problems.append("top degree did not drop")
        attempts.append({"seed": s, "problems": problems})
        if not problems:
            break
    else:
        raise PipelineError(f"no general alpha found in {MAX_ATTEMPTS} attempts: {attempts}")
    out = pushed.config
    trace = {
        "seed": s,
        "retries": len(attempts) - 1,
        "attempts": attempts,
        "alpha": [str(a) for a in qmap.alpha],
        "fresh_variable": qmap.fresh,
        "defining_ideal_hash": qmap.defining_hash(),
        "degrees_before": degrees_before,
        "degrees_after": [int(f.degree()) for f in out.forms],
        "potential_before": phi_before,
        "potential_after": potential(out),
        "dropped": pushed.dropped,
        "uncertified_squarefree": pushed.uncertified,
    }
    if verify:
        rep = verify_sg(out, seed=seed)
        trace["output_verified"] = rep.passed
        trace["witnesses"] = [p.to_dict() for p in rep.pairs]
    return out, trace


def suggest_covering_space(config: SGConfig, r: int | None = None) -> GradedVectorSpace:
    """z plus the r+1 top-degree forms with the fewest span partners.

    The covering condition is checked directly; when the chosen forms leave a
    top-degree form uncovered the remaining top forms are added as well.
    """
    from .sg import sg_sets

    if config.kind != "general":
        raise PipelineError("a covering space is built for general configurations")
    amb = config.ambient
    d = max((f.degree() for f in config.forms), default=0)
    top = [f for f in config.forms if f.degree() == d]
    if not top:
        raise PipelineError("nothing to reduce: no residual forms")
    sizes = [len(sg_sets(config, F).fspan) for F in top]
    order = sorted(range(len(top)), key=lambda k: (sizes[k], k))
    take = len(top) if r is None else min(len(top), r + 1)
    chosen = [top[k] for k in order[:take]]
    basis = [config.z]
    for f in chosen:
        if not in_linear_span(f, basis):
            basis.append(f)
    cover = amb.ideal(basis)
    for f in top:
        if not cover.contains(f) and not in_linear_span(f, basis):
            basis.append(f)
            cover = amb.ideal(basis)
    return GradedVectorSpace(config.ring, basis)


def append_trace(path, record):
    """Append one JSON record per line."""
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(record, sort_keys=False) + "\n")


def lifting_bound(variant: str, d: int, n: int, D: int, extra_degrees=(), e: int | None = None,
                  U_dim: int = 0) -> int:
    """Span bounds that lift through one general quotient.

    ``basic``:    d^2 (1+d)^(2n+2) D
    ``general``:  the basic value times the product of ``extra_degrees``
    ``preserve``: (d+3)^(3n+6) e^U_dim D
    """
    if variant == "basic":
        return d * d * (1 + d) ** (2 * n + 2) * D
    if variant == "general":
        return d * d * (1 + d) ** (2 * n + 2) * D * prod(extra_degrees)
    if variant == "preserve":
        if e is None:
            raise ValueError("the preserve variant needs e")
        return (d + 3) ** (3 * n + 6) * e ** U_dim * D
    raise ValueError(f"unknown lifting-bound variant {variant!r}")


def compose_bound(d: int, e: int, ell: int, n_list, U_dim: int, D: int) -> int:
    """Bound lifted through ell successive general quotients."""
    n_list = list(n_list)
    if len(n_list) != ell:
        raise ValueError("n_list must have exactly ell entries")
    if ell == 0:
        return D
    exp_base = 6 * ell + 3 * sum(n_list)
    exp_e = ell * U_dim + sum((ell - k - 1) * n_list[k] for k in range(ell - 1))
    return (d + 3) ** exp_base * e ** exp_e * D
