"""Sparse multivariate polynomials with exact coefficients.

A :class:`Poly` is an immutable map from exponent tuples to nonzero field
elements, tied to a :class:`Ring` (variable names, positive integer weights
and a coefficient :class:`~radsg.scalar.Field`).
"""

from __future__ import annotations

import re
from functools import total_ordering
import heapq

from gmpy2 import mpq

from . import linalg
from .scalar import QQ, Cyclo, Field, format_scalar

__all__ = [
    "NEG_INF",
    "Ring",
    "Poly",
    "MonomialOrder",
    "ParseError",
    "RingMismatchError",
    "parse_polynomial",
    "poly_gcd",
    "squarefree_part",
    "resultant",
    "discriminant",
    "homogenize",
    "dehomogenize",
    "vandermonde_det",
    "span_dimension",
    "GradedVectorSpace",
    "divide_exact",
]

_BITS = 32
_MASK = (1 << _BITS) - 1


@total_ordering
class _NegInf:
    """Degree of the zero polynomial; compares below every integer."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __lt__(self, other):
        return other is not self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("-inf")

    def __repr__(self):
        return "-inf"


NEG_INF = _NegInf()


class RingMismatchError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, msg, pos=None):
        super().__init__(msg if pos is None else f"{msg} at position {pos}")
        self.pos = pos


_VAR_RE = re.compile(r"^[a-zA-Z][a-zA-Z0-9_]*$")


class Ring:
    """Polynomial ring context: ordered variables, weights, coefficient field."""

    __slots__ = ("vars", "weights", "field", "index", "_hash", "_default_order")

    def __init__(self, variables, weights=None, field: Field = QQ):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be unique")
        for v in variables:
            if not _VAR_RE.match(v) or v == "zeta":
                raise ValueError(f"bad variable name {v!r}")
        if weights is None:
            weights = (1,) * len(variables)
        weights = tuple(int(w) for w in weights)
        if len(weights) != len(variables) or any(w < 1 for w in weights):
            raise ValueError("weights must be positive and match the variables")
        self.vars = variables
        self.weights = weights
        self.field = field if isinstance(field, Field) else Field.from_text(field)
        self.index = {v: i for i, v in enumerate(variables)}
        self._hash = hash((self.vars, self.weights, self.field))
        self._default_order = None

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def __reduce__(self):
        return (Ring, (self.vars, self.weights, self.field))

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.vars == other.vars
            and self.weights == other.weights
            and self.field == other.field
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        w = "" if all(x == 1 for x in self.weights) else f", weights={self.weights}"
        return f"Ring({list(self.vars)}{w}, {self.field!r})"

    @property
    def order(self) -> "MonomialOrder":
        if self._default_order is None:
            self._default_order = MonomialOrder.grevlex(self)
        return self._default_order

    def extend(self, names, weights=None) -> "Ring":
        names = list(names)
        for n in names:
            if n in self.index:
                raise ValueError(f"variable collision: {n}")
        weights = [1] * len(names) if weights is None else list(weights)
        return Ring(self.vars + tuple(names), self.weights + tuple(weights), self.field)

    def drop(self, names) -> "Ring":
        keep = [i for i, v in enumerate(self.vars) if v not in set(names)]
        return Ring([self.vars[i] for i in keep], [self.weights[i] for i in keep], self.field)

    def fresh_name(self, base="z", avoid=()) -> str:
        taken = set(self.vars) | set(avoid)
        if base not in taken:
            return base
        k = 0
        while f"{base}_{k}" in taken:
            k += 1
        return f"{base}_{k}"

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name) -> "Poly":
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return Poly(self, {tuple(e): self.field.one()})

    def gens(self):
        return [self.var(v) for v in self.vars]

    def monomial(self, exp, coeff=1) -> "Poly":
        c = self.field(coeff)
        return Poly(self, {tuple(exp): c} if c else {})

    def parse(self, text) -> "Poly":
        return parse_polynomial(text, self)

    def wdeg(self, exp) -> int:
        return sum(w * e for w, e in zip(self.weights, exp))

    def describe(self) -> dict:
        d = {"vars": list(self.vars)}
        if any(w != 1 for w in self.weights):
            d["weights"] = list(self.weights)
        d["field"] = self.field.describe()
        return d


class MonomialOrder:
    """Monomial order encoded as an integer sort key per exponent tuple.

    ``grevlex`` uses the ring's weighted degree, ``lex`` compares exponents
    left to right, and ``block`` compares the eliminated block first (graded
    reverse lexicographic inside each block).
    """

    __slots__ = ("kind", "ring", "eliminated", "_cache", "_fn", "_hash")

    def __init__(self, kind, ring: Ring, eliminated=()):
        self.kind = kind
        self.ring = ring
        self.eliminated = tuple(sorted(ring.index[v] for v in eliminated))
        self._cache = {}
        n = ring.nvars
        w = ring.weights
        if kind == "grevlex":
            self._fn = _grevlex_fn(range(n), w)
        elif kind == "lex":
            def fn(e, n=n):
                k = 0
                for x in e:
                    k = (k << _BITS) | x
                return k
            self._fn = fn
        elif kind == "block":
            elim = self.eliminated
            if not elim or len(elim) == n:
                raise ValueError("block order needs a nonempty proper subset of variables")
            rest = tuple(i for i in range(n) if i not in elim)
            f1 = _grevlex_fn(elim, w)
            f2 = _grevlex_fn(rest, w)
            shift = _BITS * (len(rest) + 1)

            def fn(e, f1=f1, f2=f2, shift=shift):
                return (f1(e) << shift) | f2(e)
            self._fn = fn
        else:
            raise ValueError(f"unknown order {kind}")
        self._hash = hash((kind, ring, self.eliminated))

    @classmethod
    def grevlex(cls, ring):
        return cls("grevlex", ring)

    @classmethod
    def lex(cls, ring):
        return cls("lex", ring)

    @classmethod
    def block(cls, ring, eliminated):
        return cls("block", ring, eliminated)

    def key(self, exp) -> int:
        k = self._cache.get(exp)
        if k is None:
            k = self._fn(exp)
            if len(self._cache) < 2_000_000:
                self._cache[exp] = k
        return k

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.ring == other.ring
            and self.eliminated == other.eliminated
        )

    def __hash__(self):
        return self._hash

    def describe(self) -> str:
        if self.kind == "block":
            return "block(" + ",".join(self.ring.vars[i] for i in self.eliminated) + ")"
        return self.kind

    def __repr__(self):
        return f"MonomialOrder({self.describe()})"


def _grevlex_fn(idx, weights):
    idx = tuple(idx)
    m = len(idx)

    def fn(e):
        deg = 0
        k = 0
        for pos in range(m - 1, -1, -1):
            i = idx[pos]
            x = e[i]
            deg += weights[i] * x
            k = (k << _BITS) | (_MASK - x)
        return (deg << (_BITS * m)) | k

    return fn


def _madd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _msub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mdivides(a, b):
    """True when monomial a divides b."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


class Poly:
    """Immutable sparse polynomial over a :class:`Ring`."""

    __slots__ = ("ring", "terms", "_sorted", "_hash")

    def __init__(self, ring: Ring, terms=None):
        self.ring = ring
        self.terms = {} if terms is None else terms
        self._sorted = None
        self._hash = None

    @classmethod
    def from_terms(cls, ring, terms):
        return cls(ring, {e: c for e, c in terms.items() if c})

    # -- basic protocol -------------------------------------------------
    def _other(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Cyclo)) or type(other) is type(mpq(0)):
            return self.ring.const(other)
        try:
            return self.ring.const(mpq(other))
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for e, c in o.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = v + c
                if v:
                    t[e] = v
                else:
                    del t[e]
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            o = self._other(other)
            if o is None:
                return NotImplemented
            if not o.terms:
                return self.ring.zero()
            c = o.terms[(0,) * self.ring.nvars]
            return Poly(self.ring, {e: v * c for e, v in self.terms.items()})
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Poly(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Poly):
            q = divide_exact(self, other)
            if q is None:
                raise ArithmeticError("inexact polynomial division")
            return q
        c = self.ring.field(other)
        inv = 1 / c
        return Poly(self.ring, {e: v * inv for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        return format_polynomial(self)

    def __reduce__(self):
        return (_rebuild_poly, (self.ring.vars, self.ring.weights, self.ring.field.order,
                                tuple(self.terms.items())))

    # -- queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        n = self.ring.nvars
        return not self.terms or (len(self.terms) == 1 and (0,) * n in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero())

    def degree(self):
        """Weighted total degree; ``NEG_INF`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        w = self.ring.weights
        return max(sum(a * b for a, b in zip(w, e)) for e in self.terms)

    def degree_in(self, var) -> int:
        i = var if isinstance(var, int) else self.ring.index[var]
        if not self.terms:
            return NEG_INF
        return max(e[i] for e in self.terms)

    def variables(self):
        """Indices of variables actually occurring."""
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(i)
        return sorted(used)

    def variable_names(self):
        return [self.ring.vars[i] for i in self.variables()]

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        w = self.ring.weights
        degs = {sum(a * b for a, b in zip(w, e)) for e in self.terms}
        return len(degs) == 1

    def homogeneous_components(self):
        w = self.ring.weights
        out = {}
        for e, c in self.terms.items():
            out.setdefault(sum(a * b for a, b in zip(w, e)), {})[e] = c
        return {d: Poly(self.ring, t) for d, t in sorted(out.items())}

    def sorted_terms(self, order: MonomialOrder | None = None):
        """Terms in descending order (default: the ring's grevlex)."""
        if order is None or order == self.ring.order:
            if self._sorted is None:
                k = self.ring.order.key
                self._sorted = sorted(self.terms.items(), key=lambda t: k(t[0]), reverse=True)
            return self._sorted
        k = order.key
        return sorted(self.terms.items(), key=lambda t: k(t[0]), reverse=True)

    def leading_term(self, order=None):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if order is None:
            order = self.ring.order
        k = order.key
        e = max(self.terms, key=k)
        return e, self.terms[e]

    def leading_coefficient(self, order=None):
        return self.leading_term(order)[1]

    def monic(self, order=None) -> "Poly":
        if not self.terms:
            return self
        lc = self.leading_coefficient(order)
        if lc == 1:
            return self
        inv = 1 / lc
        return Poly(self.ring, {e: c * inv for e, c in self.terms.items()})

    def scale(self, c) -> "Poly":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_monomial(self, exp, c=None) -> "Poly":
        if c is None:
            return Poly(self.ring, {_madd(e, exp): v for e, v in self.terms.items()})
        return Poly(self.ring, {_madd(e, exp): v * c for e, v in self.terms.items()})

    def diff(self, var) -> "Poly":
        i = var if isinstance(var, int) else self.ring.index[var]
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Poly(self.ring, out)

    def to_ring(self, ring: Ring) -> "Poly":
        """Re-embed by variable name; missing variables must not occur."""
        if ring == self.ring:
            return self
        if ring.field != self.ring.field:
            raise RingMismatchError("field mismatch")
        pos = []
        for i, v in enumerate(self.ring.vars):
            pos.append(ring.index.get(v))
        n = ring.nvars
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, x in enumerate(e):
                if x:
                    j = pos[i]
                    if j is None:
                        raise RingMismatchError(f"variable {self.ring.vars[i]} not in target ring")
                    ne[j] = x
            out[tuple(ne)] = c
        return Poly(ring, out)

    def subs(self, mapping) -> "Poly":
        """Substitute variables (name -> Poly or scalar) simultaneously."""
        ring = self.ring
        images = []
        for v in ring.vars:
            if v in mapping:
                m = mapping[v]
                images.append(m if isinstance(m, Poly) else ring.const(m))
            else:
                images.append(ring.var(v))
        target = images[0].ring if images else ring
        out = Poly(target, {})
        pow_cache = {}
        for e, c in self.terms.items():
            term = Poly(target, {(0,) * target.nvars: c})
            for i, x in enumerate(e):
                if x:
                    key = (i, x)
                    p = pow_cache.get(key)
                    if p is None:
                        p = images[i] ** x
                        pow_cache[key] = p
                    term = term * p
            out = out + term
        return out

    def evaluate(self, point):
        """Value at a point given as a sequence of field elements."""
        total = self.ring.field.zero()
        for e, c in self.terms.items():
            v = c
            for x, p in zip(point, e):
                if p:
                    v = v * (x ** p)
            total = total + v
        return total

    def coefficient_vector(self):
        return dict(self.terms)

    def univariate_coeffs(self, var):
        """Map k -> coefficient of var^k (a Poly free of var)."""
        i = var if isinstance(var, int) else self.ring.index[var]
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[ne] = c
        return {k: Poly(self.ring, t) for k, t in out.items()}


def _rebuild_poly(vars_, weights, order, items):
    return Poly(_ring_cache(vars_, weights, order), dict(items))


_RINGS = {}


def _ring_cache(vars_, weights, order):
    key = (vars_, weights, order)
    r = _RINGS.get(key)
    if r is None:
        r = Ring(vars_, weights, Field(order))
        _RINGS[key] = r
    return r


# ---------------------------------------------------------------------------
# text form


def _fmt_coeff(c) -> tuple[str, bool]:
    """(text, negative) for a coefficient in front of a monomial."""
    if isinstance(c, Cyclo):
        if c.is_rational():
            q = c.c[0]
            return format_scalar(abs(q)), q < 0
        return "(" + format_scalar(c) + ")", False
    return format_scalar(abs(c)), c < 0


def format_polynomial(f: Poly) -> str:
    if not f.terms:
        return "0"
    names = f.ring.vars
    parts = []
    for e, c in f.sorted_terms():
        mono = "*".join(
            names[i] if x == 1 else f"{names[i]}^{x}" for i, x in enumerate(e) if x
        )
        text, neg = _fmt_coeff(c)
        if mono:
            if text == "1":
                body = mono
            else:
                body = f"{text}*{mono}"
        else:
            body = text
        parts.append((neg, body))
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r}", pos)
        start = m.start(1) if m.group(1) else (m.start(2) if m.group(2) else m.start(3))
        if m.group(1):
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, ring):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise ParseError(f"expected {op!r}", t[2])

    def parse(self):
        f = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected token {t[1]!r}", t[2])
        return f

    def expr(self):
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                g = self.term()
                f = f + g if t[1] == "+" else f - g
            else:
                return f

    def term(self):
        f = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                f = f * self.factor()
            elif t[0] == "op" and t[1] == "/":
                self.take()
                d = self.factor()
                if not d.is_constant() or not d:
                    raise ParseError("division only by nonzero scalars", t[2])
                f = f / d.constant_value()
            else:
                return f

    def factor(self):
        t = self.take()
        ring = self.ring
        if t[0] == "num":
            base = ring.const(t[1])
        elif t[0] == "name":
            if t[1] == "zeta":
                base = ring.const(ring.field.zeta())
            elif t[1] in ring.index:
                base = ring.var(t[1])
            else:
                raise ParseError(f"unknown variable {t[1]!r}", t[2])
        elif t[0] == "op" and t[1] == "(":
            base = self.expr()
            self.expect_op(")")
        elif t[0] == "op" and t[1] == "-":
            return -self.factor()
        else:
            raise ParseError(f"unexpected token {t[1]!r}", t[2])
        nt = self.peek()
        if nt[0] == "op" and nt[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                raise ParseError("exponent must be a natural number", e[2])
            base = base ** e[1]
        return base


def parse_polynomial(text: str, ring: Ring) -> Poly:
    """Parse ``text`` in the polynomial grammar over ``ring``."""
    if not isinstance(text, str):
        raise ParseError("polynomial text must be a string")
    return _Parser(text, ring).parse()


# ---------------------------------------------------------------------------
# division, gcd, squarefree


def divide_exact(f: Poly, g: Poly):
    """f / g when g divides f exactly, else None."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    if f.ring != g.ring:
        raise RingMismatchError("ring mismatch")
    if not f:
        return f
    order = f.ring.order
    key = order.key
    glm, glc = g.leading_term()
    ginv = 1 / glc
    gtail = [(e, c) for e, c in g.terms.items() if e != glm]
    r = dict(f.terms)
    q = {}
    heap = [(-key(e), e) for e in r]
    heapq.heapify(heap)
    while heap:
        _, e = heapq.heappop(heap)
        c = r.pop(e, None)
        if c is None:
            continue
        if not _mdivides(glm, e):
            return None
        s = _msub(e, glm)
        qc = c * ginv
        q[s] = qc
        for te, tc in gtail:
            ne = _madd(te, s)
            old = r.get(ne)
            if old is None:
                r[ne] = -qc * tc
                heapq.heappush(heap, (-key(ne), ne))
            else:
                v = old - qc * tc
                if v:
                    r[ne] = v
                else:
                    del r[ne]
    return Poly(f.ring, q)


def _content_in(f: Poly, i: int) -> Poly:
    coeffs = f.univariate_coeffs(i)
    g = None
    for k in sorted(coeffs, key=lambda k: len(coeffs[k].terms)):
        c = coeffs[k]
        g = c if g is None else _gcd(g, c)
        if g.is_constant():
            return f.ring.one()
    return g


def _prem(a: dict, b: dict, da: int, db: int, ring, xi):
    """Pseudo-remainder of univariate polys given as {k: Poly}."""
    lcb = b[db]
    r = dict(a)
    dr = da
    e = da - db + 1
    while r and dr >= db:
        lcr = r[dr]
        shift = dr - db
        new = {}
        for k, c in r.items():
            new[k] = c * lcb
        for k, c in b.items():
            kk = k + shift
            new[kk] = new.get(kk, ring.zero()) - lcr * c
        r = {k: c for k, c in new.items() if c}
        e -= 1
        dr = max(r) if r else -1
    if e > 0 and r:
        m = lcb ** e
        r = {k: c * m for k, c in r.items()}
    return r, dr


def _gcd(f: Poly, g: Poly) -> Poly:
    """Unnormalised gcd via content/primitive part and subresultant PRS."""
    ring = f.ring
    if not f:
        return g
    if not g:
        return f
    if f.is_constant() or g.is_constant():
        return ring.one()
    fv = set(f.variables())
    gv = set(g.variables())
    common = fv & gv
    if not common:
        return ring.one()
    i = min(common)
    # variables occurring in only one side contribute through contents
    cf = _content_in(f, i)
    cg = _content_in(g, i)
    c = _gcd(cf, cg)
    pf = divide_exact(f, cf) if not cf.is_constant() else f
    pg = divide_exact(g, cg) if not cg.is_constant() else g
    a = pf.univariate_coeffs(i)
    b = pg.univariate_coeffs(i)
    da, db = max(a), max(b)
    if da == 0 or db == 0:
        return c
    if da < db:
        a, b, da, db = b, a, db, da
    gg = ring.one()
    h = ring.one()
    while True:
        delta = da - db
        r, dr = _prem(a, b, da, db, ring, i)
        if not r:
            break
        if dr == 0:
            return c
        denom = gg * (h ** delta)
        r = {k: divide_exact(v, denom) for k, v in r.items()}
        a, da = b, db
        b, db = r, dr
        gg = a[da]
        if delta == 0:
            pass
        elif delta == 1:
            h = gg
        else:
            h = divide_exact(gg ** delta, h ** (delta - 1))
    # primitive part of the last nonzero remainder
    xi_exp = [0] * ring.nvars
    res = ring.zero()
    for k, v in b.items():
        xi_exp[i] = k
        res = res + v.mul_monomial(tuple(xi_exp))
    cres = _content_in(res, i)
    if not cres.is_constant():
        res = divide_exact(res, cres)
    return c * res


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Greatest common divisor, monic under the ring's grevlex order."""
    if f.ring != g.ring:
        raise RingMismatchError("ring mismatch")
    if not f and not g:
        raise ValueError("gcd(0, 0) is undefined")
    return _gcd(f, g).monic()


def squarefree_part(f: Poly) -> Poly:
    """f / gcd(f, df/dx_1, ..., df/dx_n), made monic."""
    if not f:
        raise ValueError("squarefree part of zero")
    if f.is_constant():
        return f.ring.one()
    g = f
    for i in f.variables():
        g = _gcd(g, f.diff(i))
        if g.is_constant():
            return f.monic()
    return divide_exact(f, g).monic()


def is_squarefree(f: Poly) -> bool:
    if f.is_constant():
        return True
    return squarefree_part(f).degree() == f.degree()


# ---------------------------------------------------------------------------
# resultants


def _bareiss_det(mat, ring):
    n = len(mat)
    if n == 0:
        return ring.one()
    m = [list(r) for r in mat]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if not m[k][k]:
            piv = next((r for r in range(k + 1, n) if m[r][k]), None)
            if piv is None:
                return ring.zero()
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num if prev == 1 else divide_exact(num, prev)
            m[i][k] = ring.zero()
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def sylvester_matrix(f: Poly, g: Poly, var):
    i = f.ring.index[var] if not isinstance(var, int) else var
    a = f.univariate_coeffs(i)
    b = g.univariate_coeffs(i)
    m = max(a) if a else 0
    n = max(b) if b else 0
    ring = f.ring
    size = m + n
    zero = ring.zero()
    rows = []
    for r in range(n):
        row = [zero] * size
        for k, c in a.items():
            row[r + (m - k)] = c
        rows.append(row)
    for r in range(m):
        row = [zero] * size
        for k, c in b.items():
            row[r + (n - k)] = c
        rows.append(row)
    return rows


def resultant(f: Poly, g: Poly, var) -> Poly:
    """Sylvester resultant in ``var`` via fraction-free elimination."""
    if f.ring != g.ring:
        raise RingMismatchError("ring mismatch")
    i = f.ring.index[var] if not isinstance(var, int) else var
    df = f.degree_in(i) if f else NEG_INF
    dg = g.degree_in(i) if g else NEG_INF
    if (df is NEG_INF or df <= 0) and (dg is NEG_INF or dg <= 0):
        raise ValueError(f"both inputs are free of {f.ring.vars[i]}")
    if not f or not g:
        return f.ring.zero()
    if df == 0:
        return f ** dg
    if dg == 0:
        return g ** df
    return _bareiss_det(sylvester_matrix(f, g, i), f.ring)


def discriminant(f: Poly, var) -> Poly:
    """Res_var(f, df/dvar), with no division by the leading coefficient."""
    i = f.ring.index[var] if not isinstance(var, int) else var
    if not f or f.degree_in(i) < 1:
        raise ValueError(f"polynomial does not depend on {f.ring.vars[i]}")
    return resultant(f, f.diff(i), i)


# ---------------------------------------------------------------------------
# homogenisation, Vandermonde, spans


def homogenize(f: Poly, var: str) -> Poly:
    """Homogenise with a fresh weight-1 variable appended to the ring."""
    ring = f.ring
    if var in ring.index:
        raise ValueError(f"variable collision: {var}")
    big = ring.extend([var])
    if not f:
        return big.zero()
    D = f.degree()
    out = {}
    for e, c in f.terms.items():
        out[e + (D - ring.wdeg(e),)] = c
    return Poly(big, out)


def dehomogenize(f: Poly, var: str) -> Poly:
    """Set ``var`` to 1 and drop it from the ring."""
    ring = f.ring
    i = ring.index[var]
    small = ring.drop([var])
    out = {}
    for e, c in f.terms.items():
        ne = e[:i] + e[i + 1:]
        v = out.get(ne)
        out[ne] = c if v is None else v + c
    return Poly(small, {e: c for e, c in out.items() if c})


def vandermonde_det(monomials, points, field: Field = QQ):
    """det M with M_ij = monomials[i](points[j]), exact."""
    r = len(monomials)
    if len(points) != r:
        raise ValueError("need as many points as monomials")
    exps = []
    for m in monomials:
        if isinstance(m, Poly):
            if len(m.terms) != 1:
                raise ValueError("expected a monomial")
            exps.append(next(iter(m.terms)))
        else:
            exps.append(tuple(m))
    for e in exps:
        for p in points:
            if len(p) != len(e):
                raise ValueError("point dimension does not match the variable count")
    pts = [[field(x) for x in p] for p in points]
    mat = []
    for e in exps:
        row = []
        for p in pts:
            v = field.one()
            for x, k in zip(p, e):
                if k:
                    v = v * (x ** k)
            row.append(v)
        mat.append(row)
    return linalg.det(mat)


def span_dimension(polys) -> int:
    """Dimension of the linear span of the coefficient vectors."""
    polys = list(polys)
    if not polys:
        return 0
    ring = polys[0].ring
    for p in polys:
        if p.ring != ring:
            raise RingMismatchError("ring mismatch")
    return linalg.rank([p.terms for p in polys])


def in_linear_span(f: Poly, polys) -> bool:
    return linalg.in_span(f.terms, [p.terms for p in polys])


def linear_dependency(f: Poly, polys):
    """Coefficients expressing f in the span of polys, or None."""
    return linalg.solve_in_span(f.terms, [p.terms for p in polys])


class GradedVectorSpace:
    """Span of homogeneous polynomials with a dimension sequence per degree."""

    def __init__(self, ring: Ring, basis, check=True):
        self.ring = ring
        self.basis = [b.to_ring(ring) if b.ring != ring else b for b in basis]
        if check:
            for b in self.basis:
                if not b:
                    raise ValueError("basis element is zero")
                if not b.is_homogeneous():
                    raise ValueError(f"basis element {b} is not homogeneous")
            if span_dimension(self.basis) != len(self.basis):
                raise ValueError("basis is linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degrees(self):
        return [b.degree() for b in self.basis]

    def dimension_sequence(self, e=None):
        degs = self.degrees()
        top = max(degs, default=0)
        if e is None:
            e = max(top, 1)
        seq = [0] * e
        for d in degs:
            if d >= 1:
                seq[d - 1] += 1
        return tuple(seq)

    def piece(self, d):
        return [b for b in self.basis if b.degree() == d]

    def contains(self, f: Poly) -> bool:
        return in_linear_span(f, self.basis)

    def __repr__(self):
        return f"GradedVectorSpace({[str(b) for b in self.basis]})"


def coprime(f: Poly, g: Poly) -> bool:
    return poly_gcd(f, g).is_constant()


def pairwise_associate(f: Poly, g: Poly) -> bool:
    """True when f and g differ by a nonzero scalar."""
    if len(f.terms) != len(g.terms) or not f:
        return False
    return f.monic() == g.monic()

