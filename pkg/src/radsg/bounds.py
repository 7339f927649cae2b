"""Exact evaluators for the explicit bound functions and recursions.

Every value is an arbitrary-precision integer (rationals only for epsilon).
Vector-valued functions N^e -> N^e are :class:`BoundFunction` objects with
a memo table; the C and h recursions run under a shared work budget and
raise :class:`BudgetExceeded` naming the level that ran out.
"""

from __future__ import annotations

import itertools
import threading
from collections import deque
from fractions import Fraction
from math import ceil

__all__ = [
    "BudgetExceeded",
    "Budget",
    "ATable",
    "toy_a_table",
    "BoundFunction",
    "ConstantBound",
    "BEta",
    "Scaled",
    "Translated",
    "COf",
    "HOf",
    "eval_B_eta",
    "eval_C",
    "eval_h",
    "eval_C_direct",
    "eval_h_direct",
    "eval_epsilon_k",
    "eval_lambda",
    "scalar_bounds",
    "SCALAR_BOUNDS",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10 ** 7


class BudgetExceeded(RuntimeError):
    def __init__(self, level, used, memo_size=0):
        super().__init__(f"budget exceeded at {level} after {used} units")
        self.level = level
        self.used = used
        self.memo_size = memo_size


class Budget:
    """Shared work counter: one unit per memo entry or enumerated candidate."""

    def __init__(self, limit=DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0

    def spend(self, level, k=1):
        self.used += k
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(level, self.used)


# ---------------------------------------------------------------------------
# the A table


class ATable:
    """Rows (eta, d) -> value; must be ascending in both arguments."""

    def __init__(self, rows, label="user"):
        self.values = {(int(a), int(b)): int(v) for (a, b), v in dict(rows).items()}
        self.label = label
        for (a, b), v in self.values.items():
            for (a2, b2), v2 in self.values.items():
                if a <= a2 and b <= b2 and v > v2:
                    raise ValueError(f"A table is not ascending at ({a},{b}) vs ({a2},{b2})")

    def __call__(self, eta, d):
        try:
            return self.values[(eta, d)]
        except KeyError:
            raise KeyError(f"A table has no entry for eta={eta}, d={d}") from None

    @classmethod
    def from_rows(cls, rows, label="user"):
        return cls({(r[0], r[1]): r[2] for r in rows}, label)

    @classmethod
    def from_text(cls, text):
        rows = []
        for line in text.splitlines():
            line = line.split("#")[0].strip()
            if not line:
                continue
            parts = line.replace(",", " ").split()
            if len(parts) != 3:
                raise ValueError(f"A-table row needs eta d value: {line!r}")
            rows.append(tuple(int(p) for p in parts))
        return cls.from_rows(rows)


def toy_a_table(max_eta=12, max_d=12):
    """Demonstration table A(eta, d) = eta + d; not a published bound."""
    return ATable({(a, b): a + b for a in range(max_eta + 1) for b in range(max_d + 1)},
                  label="toy A(eta,d)=eta+d (demonstration only)")


# ---------------------------------------------------------------------------
# bound functions


class BoundFunction:
    """Ascending N^e -> N^e with an immutable memo."""

    kind = "abstract"

    def __init__(self, e, name=None):
        self.e = int(e)
        self.name = name or self.kind
        self.memo = {}
        self._lock = threading.Lock()

    def _compute(self, delta):
        raise NotImplementedError

    def __call__(self, delta):
        delta = tuple(int(x) for x in delta)
        if len(delta) != self.e:
            raise ValueError(f"{self.name}: expected a vector of length {self.e}")
        hit = self.memo.get(delta)
        if hit is not None:
            return hit
        val = tuple(self._compute(delta))
        with self._lock:
            self.memo.setdefault(delta, val)
        return self.memo[delta]

    def bmax(self, delta):
        return max(self(delta))

    def check_ascending(self):
        """Pairs of memoised arguments violating monotonicity."""
        items = list(self.memo.items())
        bad = []
        for (a, fa), (b, fb) in itertools.product(items, items):
            if all(x <= y for x, y in zip(a, b)) and not all(x <= y for x, y in zip(fa, fb)):
                bad.append((a, b))
        return bad


class ConstantBound(BoundFunction):
    kind = "constant"

    def __init__(self, values, name=None):
        values = tuple(int(v) for v in values)
        super().__init__(len(values), name or f"const{list(values)}")
        self.values = values

    def _compute(self, delta):
        return self.values


class BEta(BoundFunction):
    """B_{eta,i}(delta) = A(eta, i) + 3 (|delta| - 1), clamped below at 0."""

    kind = "B_eta"

    def __init__(self, A: ATable, eta: int, e: int):
        super().__init__(e, f"B_{eta}")
        self.A, self.eta = A, eta
        for i in range(1, e + 1):
            A(eta, i)

    def _compute(self, delta):
        n = sum(delta)
        return [max(0, self.A(self.eta, i) + 3 * (n - 1)) for i in range(1, self.e + 1)]


class Scaled(BoundFunction):
    kind = "scaled"

    def __init__(self, inner: BoundFunction, factor: int):
        super().__init__(inner.e, f"{factor}*{inner.name}")
        self.inner, self.factor = inner, factor

    def _compute(self, delta):
        return [self.factor * v for v in self.inner(delta)]


class Translated(BoundFunction):
    """f o t_a with t_a adding a to every coordinate."""

    kind = "translate"

    def __init__(self, inner: BoundFunction, a: int):
        super().__init__(inner.e, f"{inner.name}.t{a}")
        self.inner, self.a = inner, a

    def _compute(self, delta):
        return self.inner(tuple(x + self.a for x in delta))


def _revlex_less(a, b):
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return x < y
    return False


def _is_base(delta):
    return not any(delta[1:])


def _admissible(delta, bound_sum):
    """All delta' <_revlex delta with |delta'| < bound_sum."""
    e = len(delta)
    top = bound_sum - 1
    if top < 0:
        return
    for comp in _compositions_upto(top, e):
        if _revlex_less(comp, delta):
            yield comp


def _compositions_upto(total, e):
    if e == 1:
        for k in range(total + 1):
            yield (k,)
        return
    for last in range(total + 1):
        for rest in _compositions_upto(total - last, e - 1):
            yield rest + (last,)


class _Closure(BoundFunction):
    """Shared machinery for C_B and h_B: max over the admissible closure."""

    def __init__(self, B: BoundFunction, budget: Budget | None, name):
        super().__init__(B.e, name)
        self.B = B
        self.budget = budget or Budget(None)

    def _leaf(self, delta):
        raise NotImplementedError

    def _compute(self, delta):
        # iterative post-order over the DAG of admissible predecessors
        stack = [(delta, None)]
        while stack:
            node, kids = stack.pop()
            if node in self.memo:
                continue
            if _is_base(node):
                self.budget.spend(self.name)
                self.memo[node] = tuple(self._leaf(node))
                continue
            if kids is None:
                bound = sum(node) + 2 * self.B.bmax(node)
                kids = []
                for k in _admissible(node, bound):
                    self.budget.spend(self.name)
                    kids.append(k)
                stack.append((node, kids))
                stack.extend((k, None) for k in kids if k not in self.memo)
                continue
            self.budget.spend(self.name)
            best = list(self._leaf(node))
            for k in kids:
                val = self.memo[k]
                best = [max(a, b) for a, b in zip(best, val)]
            self.memo[node] = self._fix(node, best)
        return self.memo[delta]

    def _fix(self, node, best):
        return tuple(best)


class COf(_Closure):
    """C_B: C_{B,e}(delta) = delta_e, C_{B,i}(delta) = max(delta_i, C_{B,i}(delta'))."""

    kind = "C"

    def __init__(self, B, budget=None):
        super().__init__(B, budget, f"C[{B.name}]")

    def _leaf(self, delta):
        return delta

    def _fix(self, node, best):
        best[-1] = node[-1]
        return tuple(best)


class HOf(_Closure):
    """h_B: h_{B,i}(delta) = max(B_i(delta), h_{B,i}(delta'))."""

    kind = "h"

    def __init__(self, B, budget=None):
        super().__init__(B, budget, f"h[{B.name}]")

    def _leaf(self, delta):
        return self.B(delta)


def eval_B_eta(A: ATable, eta: int, delta):
    return BEta(A, eta, len(delta))(delta)


def eval_C(B: BoundFunction, delta, budget=None):
    return COf(B, Budget(budget) if isinstance(budget, int) else budget)(delta)


def eval_h(B: BoundFunction, delta, budget=None):
    return HOf(B, Budget(budget) if isinstance(budget, int) else budget)(delta)


def _closure_direct(B, delta):
    """Breadth-first reachable set, expanding only non-base vectors."""
    delta = tuple(delta)
    seen = {delta}
    queue = deque([delta])
    while queue:
        v = queue.popleft()
        if _is_base(v):
            continue
        S = sum(v) + 2 * max(B(v))
        for w in itertools.product(*(range(S) for _ in v)):
            if sum(w) < S and _revlex_less(w, v) and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def eval_C_direct(B, delta):
    """Independent evaluator: coordinate maxima over the reachable set."""
    pts = _closure_direct(B, delta)
    out = [max(p[i] for p in pts) for i in range(len(delta))]
    out[-1] = delta[-1]
    return tuple(out)


def eval_h_direct(B, delta):
    pts = _closure_direct(B, delta)
    vals = [B(p) for p in pts]
    return tuple(max(v[i] for v in vals) for i in range(len(delta)))


# ---------------------------------------------------------------------------
# epsilon, k and lambda


def eval_epsilon_k(d: int):
    """epsilon_d = 1/(d^3 2^(d^2+4)) and k_d = ceil((5d)^3 / epsilon_d)."""
    if d < 2:
        raise ValueError("epsilon_d and k_d are defined for d >= 2")
    eps = Fraction(1, d ** 3 * 2 ** (d * d + 4))
    k = ceil(Fraction((5 * d) ** 3) / eps)
    return eps, k


class _LambdaTower:
    def __init__(self, e, B, budget):
        self.e = e
        self.B = B
        self.budget = budget
        self._Lam = {}
        self._Lam_ell = {}

    def Lam(self, d):
        if d not in self._Lam:
            if d == 1:
                f = Translated(HOf(Scaled(self.B, 2), self.budget), 2)
                f.name = "Lambda_1"
            else:
                _, k = eval_epsilon_k(d)
                f = Translated(HOf(Scaled(self.Lam_ell(d, 0), 2), self.budget), k)
                f.name = f"Lambda_{d}"
            self._Lam[d] = f
        return self._Lam[d]

    def Lam_ell(self, d, ell):
        key = (d, ell)
        if key not in self._Lam_ell:
            _, k = eval_epsilon_k(d)
            inner = self.Lam(d - 1) if ell == 8 * d + 1 else self.Lam_ell(d, ell + 1)
            f = Translated(HOf(Scaled(inner, 2), self.budget), k)
            f.name = f"Lambda_{d}^({ell})"
            self._Lam_ell[key] = f
        return self._Lam_ell[key]

    def Gamma(self, G: BoundFunction, n, k, level):
        C = COf(Scaled(G, 2), self.budget)
        best = 0
        for delta in _compositions_upto(n, self.e):
            self.budget.spend(level)
            try:
                val = sum(C(tuple(x + k for x in delta)))
            except BudgetExceeded as exc:
                raise BudgetExceeded(f"{level} via {exc.level}", exc.used) from None
            best = max(best, val)
        return best


def eval_lambda(d: int, n: int, A: ATable | None = None, eta: int = 3, e: int = 2,
                budget=DEFAULT_BUDGET, B: BoundFunction | None = None):
    """lambda_d(n) as an exact integer; raises BudgetExceeded when infeasible."""
    if d < 1:
        raise ValueError("d must be positive")
    if d == 1:
        return 26
    if B is None:
        B = BEta(A or toy_a_table(), eta, e)
    tower = _LambdaTower(B.e, B, budget if isinstance(budget, Budget) else Budget(budget))
    return _lambda(tower, d, n)


def _lambda(tower, d, n):
    if d == 1:
        return 26
    e = tower.e
    _, k = eval_epsilon_k(d)
    L = 8 * d + 1
    ns = []
    for j in range(L + 1):
        arg = n if j == 0 else n + sum(ns)
        g = tower.Gamma(tower.Lam_ell(d, j), arg, k, f"Gamma_{d}^({j})")
        ns.append(n + g if j == 0 else g)
    nprime = n + tower.Gamma(tower.Lam(d - 1), n + sum(ns), k, f"Gamma_{d - 1}")
    D = _lambda(tower, d - 1, n + sum(ns) + nprime)
    exp1 = 6 * (8 * d + 2) + 3 * (sum(ns) + nprime)
    exp2 = (8 * d + 2) * n + sum((8 * d + 1 - j) * ns[j] for j in range(8 * d + 1)) + nprime
    return (d + 3) ** exp1 * e ** exp2 * D


# ---------------------------------------------------------------------------
# closed-form constants


def _nonradical(d):
    return d * d * (2 * d - 1)


def _grad(d):
    return 2 ** (d * d)


def _bezout(p, q):
    return p * q


def _minimal_primes(d):
    return 2 ** (d * d)


def _robust_sg(delta):
    return ceil(Fraction(4) / Fraction(delta)) - 1


def _robust_sg_w(c, delta):
    return Fraction(c) + 1 + Fraction(8) / Fraction(delta)


SCALAR_BOUNDS = {
    "nonradical": (_nonradical, ("d",), "d^2 (2d - 1) minimal primes beyond the radical"),
    "grad": (_grad, ("d",), "2^(d^2) factor in |Grad(F)| <= 2^(d^2) |Frad(F)|"),
    "bezout": (_bezout, ("p", "q"), "deg P * deg Q minimal primes of (P, Q)"),
    "minimal-primes": (_minimal_primes, ("d",), "2^(d^2) pigeonhole threshold"),
    "robust-sg": (_robust_sg, ("delta",), "ceil(4/delta) - 1 for delta-linear SG"),
    "robust-sg-w": (_robust_sg_w, ("c", "delta"), "c + 1 + 8/delta with a c-dim W"),
}


def scalar_bounds(name: str, *args):
    try:
        fn, params, _ = SCALAR_BOUNDS[name]
    except KeyError:
        raise KeyError(f"unknown bound {name!r}; known: {', '.join(sorted(SCALAR_BOUNDS))}") from None
    if len(args) != len(params):
        raise ValueError(f"{name} takes {len(params)} argument(s): {', '.join(params)}")
    return fn(*args)
