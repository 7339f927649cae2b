"""Exact scalars: the rationals and cyclotomic fields Q(zeta_n).

Rationals are plain ``gmpy2.mpq`` values.  Elements of Q(zeta_n) with
phi(n) > 1 are :class:`Cyclo` instances, stored as coefficient vectors
reduced modulo the n-th cyclotomic polynomial.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from gmpy2 import mpq

__all__ = [
    "Field",
    "Cyclo",
    "QQ",
    "IncompatibleFieldError",
    "FieldTooSmallError",
    "cyclotomic_poly",
    "field_add",
    "field_mul",
    "field_neg",
    "field_inv",
    "primitive_root_of_minus_one",
]

ZERO = mpq(0)
ONE = mpq(1)


class IncompatibleFieldError(ValueError):
    pass


class FieldTooSmallError(ValueError):
    pass


def _poly_divmod_int(num, den):
    # integer polynomial long division, den monic; coefficient lists low->high
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    return out, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients (low to high) of Phi_n."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, cyclotomic_poly(d))
            assert not any(rem)
    return tuple(poly)


def _totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


class Field:
    """Field descriptor: ``Field(1)`` is Q, ``Field(n)`` is Q(zeta_n)."""

    __slots__ = ("order", "degree", "_phi", "_red", "_hash")

    def __init__(self, order: int = 1):
        order = int(order)
        if order < 1:
            raise ValueError("cyclotomic order must be >= 1")
        if order == 2:
            order = 1
        self.order = order
        self.degree = _totient(order) if order > 1 else 1
        self._phi = cyclotomic_poly(order)
        self._red = None
        self._hash = hash(("field", order))

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __reduce__(self):
        return (Field, (self.order,))

    def __eq__(self, other):
        return isinstance(other, Field) and other.order == self.order

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "QQ" if self.order == 1 else f"Field({self.order})"

    def describe(self) -> str:
        return "QQ" if self.order == 1 else f"cyclotomic({self.order})"

    @classmethod
    def from_text(cls, text) -> "Field":
        if isinstance(text, Field):
            return text
        if isinstance(text, int):
            return cls(text)
        t = str(text).strip().lower()
        if t in ("qq", "q", "rationals", "rational"):
            return cls(1)
        for prefix in ("cyclotomic(", "qq(zeta_", "q(zeta_"):
            if t.startswith(prefix) and t.endswith(")"):
                return cls(int(t[len(prefix):-1]))
        if t.startswith("cyclotomic"):
            return cls(int(t[len("cyclotomic"):].strip(":= ")))
        raise ValueError(f"unknown field descriptor {text!r}")

    # reduction table: zeta^k for k < 2*deg - 1, expressed in the power basis
    def _table(self):
        if self._red is None:
            deg = self.degree
            phi = self._phi
            rows = []
            for k in range(2 * deg - 1):
                if k < deg:
                    v = [0] * deg
                    v[k] = 1
                else:
                    prev = rows[k - 1]
                    # multiply by zeta: shift, then substitute zeta^deg
                    top = prev[deg - 1]
                    v = [0] + prev[:-1]
                    if top:
                        for j in range(deg):
                            v[j] -= top * phi[j]
                rows.append(v)
            self._red = rows
        return self._red

    # element constructors
    def zero(self):
        return ZERO if self.degree == 1 else Cyclo(self, (ZERO,) * self.degree)

    def one(self):
        return ONE if self.degree == 1 else Cyclo._const(self, ONE)

    def zeta(self):
        if self.order == 1:
            return ONE
        if self.degree == 1:
            return mpq(-1)
        v = [ZERO] * self.degree
        v[1] = ONE
        return Cyclo(self, tuple(v))

    def __call__(self, value):
        """Coerce ints, fractions, mpq or Cyclo into this field."""
        if isinstance(value, Cyclo):
            if value.field != self:
                raise IncompatibleFieldError(f"{value.field} vs {self}")
            return value
        q = mpq(value)
        if self.degree == 1:
            return q
        return Cyclo._const(self, q)

    def is_element(self, value) -> bool:
        if self.degree == 1:
            return type(value) is type(ONE)
        return isinstance(value, Cyclo) and value.field == self


QQ = Field(1)


class Cyclo:
    """Element of Q(zeta_n) as a coefficient vector modulo Phi_n."""

    __slots__ = ("field", "c", "_h")

    def __init__(self, field: Field, coeffs):
        self.field = field
        self.c = tuple(coeffs)
        self._h = None

    @staticmethod
    def _const(field, q):
        return Cyclo(field, (mpq(q),) + (ZERO,) * (field.degree - 1))

    def _coerce(self, other):
        if isinstance(other, Cyclo):
            if other.field != self.field:
                raise IncompatibleFieldError(f"{other.field} vs {self.field}")
            return other
        try:
            return Cyclo._const(self.field, mpq(other))
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclo(self.field, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.field, [-a for a in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclo(self.field, [a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if not isinstance(other, Cyclo):
            try:
                q = mpq(other)
            except (TypeError, ValueError):
                return NotImplemented
            return Cyclo(self.field, [a * q for a in self.c])
        if other.field != self.field:
            raise IncompatibleFieldError(f"{other.field} vs {self.field}")
        deg = self.field.degree
        prod = [ZERO] * (2 * deg - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        prod[i + j] += a * b
        table = self.field._table()
        out = prod[:deg]
        for k in range(deg, 2 * deg - 1):
            ck = prod[k]
            if ck:
                row = table[k]
                for j in range(deg):
                    if row[j]:
                        out[j] += ck * row[j]
        return Cyclo(self.field, out)

    __rmul__ = __mul__

    def inv(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        # solve (multiplication-by-self matrix) * x = e_0 exactly
        deg = self.field.degree
        cols = []
        basis = [Cyclo(self.field, [ONE if i == k else ZERO for i in range(deg)])
                 for k in range(deg)]
        for b in basis:
            cols.append((self * b).c)
        mat = [[cols[j][i] for j in range(deg)] + [ONE if i == 0 else ZERO]
               for i in range(deg)]
        for col in range(deg):
            piv = next(r for r in range(col, deg) if mat[r][col])
            mat[col], mat[piv] = mat[piv], mat[col]
            p = mat[col][col]
            mat[col] = [v / p for v in mat[col]]
            for r in range(deg):
                if r != col and mat[r][col]:
                    f = mat[r][col]
                    mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
        return Cyclo(self.field, [mat[i][deg] for i in range(deg)])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, Cyclo):
            return self.field == other.field and self.c == other.c
        try:
            q = mpq(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.c[0] == q and not any(self.c[1:])

    def __hash__(self):
        if self._h is None:
            if not any(self.c[1:]):
                self._h = hash(self.c[0])
            else:
                self._h = hash((self.field.order, self.c))
        return self._h

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __repr__(self):
        return f"Cyclo({self.field.order}, {format_scalar(self)})"

    def __str__(self):
        return format_scalar(self)


def _fmt_q(q) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(a) -> str:
    """Canonical text form; parses back through the polynomial grammar."""
    if not isinstance(a, Cyclo):
        return _fmt_q(a)
    parts = []
    for k, q in enumerate(a.c):
        if not q:
            continue
        mono = "" if k == 0 else ("zeta" if k == 1 else f"zeta^{k}")
        if not mono:
            body = _fmt_q(abs(q))
        elif abs(q) == 1:
            body = mono
        else:
            body = f"{_fmt_q(abs(q))}*{mono}"
        sign = "-" if q < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _check(a, b):
    fa = a.field if isinstance(a, Cyclo) else QQ
    fb = b.field if isinstance(b, Cyclo) else QQ
    if fa != fb:
        raise IncompatibleFieldError(f"{fa} vs {fb}")


def field_add(a, b):
    _check(a, b)
    return a + b


def field_mul(a, b):
    _check(a, b)
    return a * b


def field_neg(a):
    return -a


def field_inv(a):
    if not a:
        raise ZeroDivisionError("inverse of zero")
    if isinstance(a, Cyclo):
        return a.inv()
    return ONE / mpq(a)


def primitive_root_of_minus_one(n: int, field: Field):
    """omega with omega^n = -1 and omega^k != -1 for 0 < k < n, i.e. zeta_{2n}."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return field(-1)
    if field.order % (2 * n) != 0:
        raise FieldTooSmallError(f"need cyclotomic order divisible by {2 * n}, have {field.order}")
    return field.zeta() ** (field.order // (2 * n))
