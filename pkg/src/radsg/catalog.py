"""Named example configurations.

Each builder returns a fully materialised :class:`SGConfig` over the
smallest cyclotomic field its coefficients need.
"""

from __future__ import annotations

from .ideal import QuotientContext
from .poly import Ring
from .scalar import Field, primitive_root_of_minus_one
from .sg import SGConfig

__all__ = ["EXAMPLES", "builtin_example", "recursive_forms", "example_names"]

RANGES = {
    "fermat": ("n", 3, 6),
    "recursive": ("m", 4, 8),
    "quotient-counter": ("r", 3, 6),
}


class ExampleRangeError(ValueError):
    pass


def _check(name, value):
    key, lo, hi = RANGES[name]
    if value is None:
        raise ExampleRangeError(f"{name} needs --{key}")
    if not lo <= value <= hi:
        raise ExampleRangeError(f"{name}: {key}={value} outside supported range [{lo}, {hi}]")


def _points_to_forms(ring, points):
    x, y, z = ring.gens()
    return [a * x + b * y + c * z for a, b, c in points]


def fermat(n: int) -> SGConfig:
    _check("fermat", n)
    field = Field(2 * n)
    w = primitive_root_of_minus_one(n, field)
    ring = Ring(["x", "y", "z"], field=field)
    one, zero = field.one(), field.zero()
    pts = []
    # coordinates run over -mu_n; for odd n these are exactly the roots of -1
    for j in range(1, n + 1):
        wj = -(w ** (2 * j))
        pts += [(zero, one, wj), (wj, zero, one), (one, wj, zero)]
    return SGConfig(QuotientContext(ring), "basic", _points_to_forms(ring, pts), 1,
                    name=f"fermat({n})")


def kelly_nwankpa() -> SGConfig:
    field = Field(4)
    i = field.zeta()
    one, zero = field.one(), field.zero()
    a = (one + i) / 2
    b = (one - i) / 2
    pts = [
        (zero, zero, one), (zero, one, one), (one, zero, one), (one, one, one),
        (a, a, one), (a, b, one), (b, a, one), (b, b, one),
        # points at infinity on the lines from [0:0:1]
        (zero, one, zero), (one, zero, zero), (one, i, zero), (one, -i, zero),
    ]
    ring = Ring(["x", "y", "z"], field=field)
    return SGConfig(QuotientContext(ring), "basic", _points_to_forms(ring, pts), 1,
                    name="kelly-nwankpa")


def recursive_forms(ring: Ring, m: int):
    x, y, z = (ring.var(v) for v in ("x", "y", "z"))
    forms = [x, y, x * z + y ** 2]
    forms.append(x * forms[2] + y ** 3)
    while len(forms) < m:
        prod = ring.one()
        for f in forms[2:]:
            prod = prod * f
        forms.append(prod + y ** prod.degree())
    return forms[:m]


def recursive(m: int) -> SGConfig:
    _check("recursive", m)
    ring = Ring(["x", "y", "z"])
    forms = recursive_forms(ring, m)
    return SGConfig(QuotientContext(ring), "basic", forms, max(f.degree() for f in forms),
                    name=f"recursive({m})")


def quotient_counter(r: int) -> SGConfig:
    _check("quotient-counter", r)
    names = [f"x{k}" for k in range(1, 2 * r + 1)]
    ring = Ring(names)
    xs = ring.gens()
    n = 2 * r
    rel = [xs[k] * xs[(k + 1) % n] - xs[(k + 2) % n] ** 2 for k in range(n)]
    forms = [xs[k] for k in range(0, n, 2)]
    return SGConfig(QuotientContext(ring, rel), "basic", forms, 1,
                    name=f"quotient-counter({r})",
                    annotations={"stated_span": r - 1})


def ufd_quadric() -> SGConfig:
    ring = Ring([f"x{k}" for k in range(1, 8)])
    x = ring.gens()
    q = x[0] * x[1] + x[2] * x[3] + x[4] ** 2
    return SGConfig(QuotientContext(ring, [q]), "basic", [x[0], x[2], x[4]], 1,
                    name="ufd-quadric")


EXAMPLES = {
    "fermat": fermat,
    "kelly-nwankpa": kelly_nwankpa,
    "recursive": recursive,
    "quotient-counter": quotient_counter,
    "ufd-quadric": ufd_quadric,
}


def example_names():
    return sorted(EXAMPLES)


def builtin_example(name: str, n=None, m=None, r=None) -> SGConfig:
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(example_names())}")
    if name == "fermat":
        return fermat(n)
    if name == "recursive":
        return recursive(m)
    if name == "quotient-counter":
        return quotient_counter(r)
    return EXAMPLES[name]()
