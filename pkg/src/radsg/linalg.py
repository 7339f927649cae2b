"""Exact Gaussian elimination over Q or a cyclotomic field."""

from __future__ import annotations

from gmpy2 import mpq


def _inv(a):
    if hasattr(a, "inv"):
        return a.inv()
    return mpq(1) / a


def echelon(rows, ncols=None):
    """Row-reduce sparse rows (dicts col -> value).

    Returns (pivot_rows, pivots) where each pivot row is normalised to 1 at
    its pivot column and fully reduced against the others.
    """
    basis = {}  # pivot col -> row
    for r in rows:
        v = {k: c for k, c in r.items() if c}
        v = _reduce_row(v, basis)
        if not v:
            continue
        p = min(v)
        inv = _inv(v[p])
        v = {k: c * inv for k, c in v.items()}
        for q, row in basis.items():
            c = row.get(p)
            if c:
                for k, x in v.items():
                    nv = row.get(k, 0) - c * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        basis[p] = v
    pivots = sorted(basis)
    return [basis[p] for p in pivots], pivots


def _reduce_row(v, basis):
    v = dict(v)
    for p in sorted(basis):
        c = v.get(p)
        if c:
            for k, x in basis[p].items():
                nv = v.get(k, 0) - c * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return v


def rank(rows) -> int:
    return len(echelon(rows)[0])


def in_span(vec, rows) -> bool:
    basis_rows, pivots = echelon(rows)
    basis = dict(zip(pivots, basis_rows))
    return not _reduce_row({k: c for k, c in vec.items() if c}, basis)


def solve_in_span(vec, rows):
    """Coefficients lam with sum lam_i rows_i == vec, or None."""
    n = len(rows)
    aug = []
    for i, r in enumerate(rows):
        row = {("c", k): c for k, c in r.items() if c}
        row[("t", i)] = mpq(1)
        aug.append(row)
    # columns sort before tags, so pivots land on columns whenever possible
    keyed = [{_colkey(k): c for k, c in row.items()} for row in aug]
    basis_rows, pivots = echelon(keyed)
    basis = dict(zip(pivots, basis_rows))
    target = _reduce_row({_colkey(("c", k)): c for k, c in vec.items() if c}, basis)
    if any(k[0] == 0 for k in target):
        return None
    # what is left is -(sum lam_i t_i)
    lam = [mpq(0)] * n
    for k, c in target.items():
        lam[k[1]] = -c
    return lam


def _colkey(k):
    kind, idx = k
    return (0, repr(idx)) if kind == "c" else (1, idx)


def det(mat):
    """Determinant of a square matrix of field elements (fraction elimination)."""
    n = len(mat)
    if n == 0:
        return mpq(1)
    m = [list(r) for r in mat]
    sign = 1
    result = None
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return m[0][0] * 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        result = p if result is None else result * p
        inv = _inv(p)
        for r in range(col + 1, n):
            f = m[r][col]
            if f:
                f = f * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return result if sign == 1 else -result
