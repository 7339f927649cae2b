"""Groebner bases and the ideal queries built on them.

Buchberger's algorithm with the Gebauer-Moeller pair update and sugar
selection.  Radical membership uses the Rabinowitsch trick, or the cheaper
affine chart ``1 in I + (f - 1)`` when everything is homogeneous.
"""

from __future__ import annotations

import hashlib
import heapq
import itertools
import json
import threading
from dataclasses import dataclass, field as dc_field

from .poly import (
    GradedVectorSpace,
    MonomialOrder,
    Poly,
    Ring,
    RingMismatchError,
    discriminant,
    divide_exact,
    is_squarefree,
    poly_gcd,
    squarefree_part,
)

__all__ = [
    "GroebnerBasis",
    "QuotientContext",
    "BasisCache",
    "groebner",
    "normal_form",
    "ideal_member",
    "radical_member",
    "eliminate",
    "krull_dimension",
    "is_regular_sequence",
    "subalgebra_member",
    "discriminant_radicality",
    "is_radical_pair",
    "RadicalityResult",
    "DiscriminantResult",
    "spoly",
]


# ---------------------------------------------------------------------------
# raw kernel on {exp: coeff} dicts


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _disjoint(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Elem:
    """Monic basis element: leading monomial, tail terms, sugar, cofactors."""

    __slots__ = ("lm", "tail", "terms", "sugar", "cof", "mask")

    def __init__(self, terms, lm, sugar, cof=None):
        self.terms = terms
        self.lm = lm
        self.tail = [(e, c) for e, c in terms.items() if e != lm]
        self.sugar = sugar
        self.cof = cof
        self.mask = sum(1 << i for i, x in enumerate(lm) if x)


def _leading(terms, key):
    return max(terms, key=key)


def _reduce(p, reducers, key, track=None):
    """Reduce dict p by the monic reducers.

    ``track`` is a dict collecting quotient coefficients per reducer index
    (as {index: {exp: coeff}}) when cofactors are wanted.
    """
    p = dict(p)
    heap = [(-key(m), m) for m in p]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        mm = 0
        for i, x in enumerate(m):
            if x:
                mm |= 1 << i
        red = None
        for idx, g in reducers:
            if g.mask & ~mm:
                continue
            if _divides(g.lm, m):
                red = (idx, g)
                break
        if red is None:
            rem[m] = c
            continue
        idx, g = red
        q = tuple(x - y for x, y in zip(m, g.lm))
        if track is not None:
            t = track.setdefault(idx, {})
            t[q] = t.get(q, 0) + c
        for te, tc in g.tail:
            ne = tuple(x + y for x, y in zip(te, q))
            old = p.get(ne)
            if old is None:
                p[ne] = -c * tc
                heapq.heappush(heap, (-key(ne), ne))
            else:
                v = old - c * tc
                if v:
                    p[ne] = v
                else:
                    del p[ne]
    return {e: c for e, c in rem.items() if c}


def _poly_mul_dict(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _poly_add_into(acc, a, scale=None):
    for e, c in a.items():
        v = acc.get(e, 0) + (c if scale is None else c * scale)
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)


def _cof_combine(cof_list, quotients, nvars):
    """sum_j quotients[j] * cof_list[j] (each cofactor a list of dicts)."""
    ngen = len(next(iter(cof_list.values()))) if cof_list else 0
    out = [dict() for _ in range(ngen)]
    for j, q in quotients.items():
        for g, cg in enumerate(cof_list[j]):
            if cg:
                _poly_add_into(out[g], _poly_mul_dict(q, cg))
    return out


def _buchberger(polys, order, field, wdeg, track=False, limit=None):
    """Reduced Groebner basis of the dict polynomials ``polys``.

    Returns a list of (terms, cofactors) with monic terms; cofactors are
    lists of dicts aligned with ``polys`` or None when not tracked.
    """
    key = order.key
    nvars = order.ring.nvars
    elems = []  # every element ever added (pairs refer to indices here)
    active = []  # indices currently in G
    pairs = []  # heap of (sugar, lcm_key, i, j, lcm)
    counter = itertools.count()
    ngen = len(polys)
    zero_exp = (0,) * nvars

    def make_elem(terms, sugar, cof):
        lm = _leading(terms, key)
        lc = terms[lm]
        if lc != 1:
            inv = 1 / lc
            terms = {e: c * inv for e, c in terms.items()}
            if cof is not None:
                cof = [{e: c * inv for e, c in cg.items()} for cg in cof]
        return _Elem(terms, lm, sugar, cof)

    def reducers():
        return [(i, elems[i]) for i in active]

    def residual_cof(start_cof, quotients):
        if not track:
            return None
        cof = [dict(c) for c in start_cof]
        if quotients:
            sub = _cof_combine({j: elems[j].cof for j in quotients}, quotients, nvars)
            for g in range(ngen):
                _poly_add_into(cof[g], sub[g], scale=-1)
        return cof

    def update(h_idx):
        h = elems[h_idx]
        # Gebauer-Moeller: chain criterion on the new pairs, then coprime skip
        lcms = {g: _lcm(h.lm, elems[g].lm) for g in active}
        C = list(active)
        D = []
        while C:
            g1 = C.pop(0)
            l1 = lcms[g1]
            if _disjoint(h.lm, elems[g1].lm) or not any(
                _divides(lcms[g2], l1) for g2 in itertools.chain(C, D)
            ):
                D.append(g1)
        newpairs = [g for g in D if not _disjoint(h.lm, elems[g].lm)]
        # prune old pairs
        survivors = []
        for item in pairs:
            _, _, _, i, j, l = item
            if (
                _divides(h.lm, l)
                and _lcm(elems[i].lm, h.lm) != l
                and _lcm(elems[j].lm, h.lm) != l
            ):
                continue
            survivors.append(item)
        pairs[:] = survivors
        heapq.heapify(pairs)
        for g in newpairs:
            l = lcms[g]
            eg = elems[g]
            dl = wdeg(l)
            sugar = max(h.sugar + dl - wdeg(h.lm), eg.sugar + dl - wdeg(eg.lm))
            heapq.heappush(pairs, (sugar, key(l), next(counter), g, h_idx, l))
        active[:] = [g for g in active if not _divides(h.lm, elems[g].lm)]
        active.append(h_idx)

    def add(terms, sugar, cof):
        e = make_elem(terms, sugar, cof)
        elems.append(e)
        idx = len(elems) - 1
        if e.lm == zero_exp:
            return True
        update(idx)
        return False

    # inputs
    order_in = sorted(
        range(ngen), key=lambda i: (wdeg(_leading(polys[i], key)) if polys[i] else 0, i)
    )
    for i in order_in:
        p = polys[i]
        if not p:
            continue
        q = {} if track else None
        r = _reduce(p, reducers(), key, track=q)
        if not r:
            continue
        start = [dict() for _ in range(ngen)] if track else None
        if track:
            start[i] = {zero_exp: field.one()}
        cof = residual_cof(start, q)
        sugar = max(wdeg(e) for e in p)
        if add(r, sugar, cof):
            return _finish_unit(elems[-1], track, field)

    steps = 0
    while pairs:
        sugar, _, _, i, j, l = heapq.heappop(pairs)
        steps += 1
        if limit is not None and steps > limit:
            raise RuntimeError("Groebner step limit exceeded")
        gi, gj = elems[i], elems[j]
        mi = tuple(a - b for a, b in zip(l, gi.lm))
        mj = tuple(a - b for a, b in zip(l, gj.lm))
        s = {}
        for e, c in gi.tail:
            ne = tuple(a + b for a, b in zip(e, mi))
            s[ne] = s.get(ne, 0) + c
        for e, c in gj.tail:
            ne = tuple(a + b for a, b in zip(e, mj))
            s[ne] = s.get(ne, 0) - c
        s = {e: c for e, c in s.items() if c}
        if not s:
            continue
        q = {} if track else None
        r = _reduce(s, reducers(), key, track=q)
        if not r:
            continue
        cof = None
        if track:
            start = [dict() for _ in range(ngen)]
            for g in range(ngen):
                if gi.cof[g]:
                    _poly_add_into(start[g], _poly_mul_dict({mi: field.one()}, gi.cof[g]))
                if gj.cof[g]:
                    _poly_add_into(start[g], _poly_mul_dict({mj: field.one()}, gj.cof[g]), scale=-1)
            cof = residual_cof(start, q)
        if add(r, sugar, cof):
            return _finish_unit(elems[-1], track, field)

    # interreduce
    G = sorted((elems[i] for i in active), key=lambda g: key(g.lm))
    minimal = []
    for g in G:
        if not any(_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    out = []
    red_list = list(enumerate(minimal))
    for k, g in enumerate(minimal):
        others = [(i, h) for i, h in red_list if i != k]
        q = {} if track else None
        tail = _reduce(dict(g.tail), others, key, track=q)
        terms = {g.lm: field.one()}
        terms.update(tail)
        cof = None
        if track:
            cof = [dict(c) for c in g.cof]
            if q:
                sub = _cof_combine({i: minimal[i].cof for i in q}, q, nvars)
                for gg in range(ngen):
                    _poly_add_into(cof[gg], sub[gg], scale=-1)
        out.append((terms, cof))
    out.sort(key=lambda t: key(_leading(t[0], key)))
    return out


def _finish_unit(elem, track, field):
    terms = {elem.lm: field.one()}
    return [(terms, elem.cof if track else None)]


def spoly(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    ef, cf = f.leading_term(order)
    eg, cg = g.leading_term(order)
    l = _lcm(ef, eg)
    a = f.mul_monomial(tuple(x - y for x, y in zip(l, ef)), 1 / cf)
    b = g.mul_monomial(tuple(x - y for x, y in zip(l, eg)), 1 / cg)
    return a - b


# ---------------------------------------------------------------------------
# public objects


class BasisCache:
    """Thread-safe process-wide cache of reduced bases (last writer wins)."""

    HEADER = {"format": "radsg-basis-cache", "version": 1}

    def __init__(self, max_entries=4096):
        self._lock = threading.Lock()
        self._data = {}
        self.max_entries = max_entries
        self.hits = 0
        self.misses = 0

    @staticmethod
    def key_for(ring: Ring, order: MonomialOrder, gens) -> str:
        h = hashlib.sha256()
        h.update(json.dumps(ring.describe(), sort_keys=True).encode())
        h.update(order.describe().encode())
        for g in gens:
            h.update(str(g).encode())
            h.update(b";")
        return h.hexdigest()

    def get(self, key):
        with self._lock:
            v = self._data.get(key)
            if v is None:
                self.misses += 1
            else:
                self.hits += 1
            return v

    def put(self, key, value):
        with self._lock:
            if len(self._data) >= self.max_entries:
                self._data.pop(next(iter(self._data)))
            self._data[key] = value

    def clear(self):
        with self._lock:
            self._data.clear()

    def __len__(self):
        return len(self._data)

    def save(self, path):
        with self._lock:
            items = list(self._data.items())
        with open(path, "w") as fh:
            fh.write(json.dumps(self.HEADER) + "\n")
            for k, gb in items:
                rec = {
                    "hash": k,
                    "ring": gb.ring.describe(),
                    "order": gb.order.describe(),
                    "generators": [str(g) for g in gb.generators],
                    "basis": [str(b) for b in gb.basis],
                }
                fh.write(json.dumps(rec) + "\n")

    def load(self, path):
        from .scalar import Field

        with open(path) as fh:
            header = json.loads(fh.readline())
            if header.get("format") != self.HEADER["format"] or header.get("version") != 1:
                raise ValueError("unsupported basis cache file")
            for line in fh:
                if not line.strip():
                    continue
                rec = json.loads(line)
                r = rec["ring"]
                ring = Ring(r["vars"], r.get("weights"), Field.from_text(r["field"]))
                order = _order_from_text(rec["order"], ring)
                gens = [ring.parse(t) for t in rec["generators"]]
                basis = [ring.parse(t) for t in rec["basis"]]
                gb = GroebnerBasis(ring, order, gens, basis, None)
                self.put(rec["hash"], gb)


def _order_from_text(text, ring):
    if text in ("grevlex", "lex"):
        return MonomialOrder(text, ring)
    if text.startswith("block(") and text.endswith(")"):
        return MonomialOrder.block(ring, text[6:-1].split(","))
    raise ValueError(f"unknown order {text}")


CACHE = BasisCache()


class GroebnerBasis:
    """Reduced Groebner basis with its generators and (optional) cofactors."""

    def __init__(self, ring, order, generators, basis, cofactors):
        self.ring = ring
        self.order = order
        self.generators = list(generators)
        self.basis = list(basis)
        self.cofactors = cofactors
        self.is_unit = len(self.basis) == 1 and self.basis[0].is_constant() and bool(self.basis[0])
        self._elems = None

    @property
    def is_unit_ideal(self):
        return self.is_unit

    def _reducers(self):
        if self._elems is None:
            key = self.order.key
            self._elems = [
                (i, _Elem(b.terms, _leading(b.terms, key), 0)) for i, b in enumerate(self.basis)
            ]
        return self._elems

    def leading_monomials(self):
        return [e.lm for _, e in self._reducers()]

    def reduce(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f.ring} vs {self.ring}")
        if not f:
            return f
        return Poly(self.ring, _reduce(f.terms, self._reducers(), self.order.key))

    def reduce_with_quotients(self, f: Poly):
        q = {}
        r = _reduce(f.terms, self._reducers(), self.order.key, track=q)
        quots = [Poly(self.ring, q.get(i, {})) for i in range(len(self.basis))]
        return Poly(self.ring, r), quots

    def contains(self, f: Poly) -> bool:
        return not self.reduce(f)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __repr__(self):
        return f"GroebnerBasis({[str(b) for b in self.basis]}, order={self.order.describe()})"

    def certificate(self, f: Poly):
        """Cofactors (aligned with generators) expressing f, or None."""
        if self.cofactors is None:
            raise ValueError("basis was computed without cofactor tracking")
        r, quots = self.reduce_with_quotients(f)
        if r:
            return None
        out = [self.ring.zero() for _ in self.generators]
        for q, cofs in zip(quots, self.cofactors):
            if q:
                for g, c in enumerate(cofs):
                    if c:
                        out[g] = out[g] + q * c
        return out


def groebner(generators, order: MonomialOrder | None = None, cofactors=False,
             cache: BasisCache | None = CACHE) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``generators``."""
    generators = list(generators)
    if order is None:
        if not generators:
            raise ValueError("need a ring: pass an order when there are no generators")
        order = generators[0].ring.order
    ring = order.ring
    for g in generators:
        if g.ring != ring:
            raise RingMismatchError(f"{g.ring} vs {ring}")
    ckey = None
    if cache is not None and not cofactors:
        ckey = BasisCache.key_for(ring, order, generators)
        hit = cache.get(ckey)
        if hit is not None:
            return hit
    polys = [g.terms for g in generators]
    raw = _buchberger(polys, order, ring.field, ring.wdeg, track=cofactors)
    basis = [Poly(ring, t) for t, _ in raw]
    cofs = None
    if cofactors:
        cofs = [[Poly(ring, c) for c in cf] for _, cf in raw]
    gb = GroebnerBasis(ring, order, generators, basis, cofs)
    if ckey is not None:
        cache.put(ckey, gb)
    return gb


def normal_form(f: Poly, gb: GroebnerBasis) -> Poly:
    return gb.reduce(f)


# ---------------------------------------------------------------------------
# quotient rings


class QuotientContext:
    """R = S/(U) represented by normal forms modulo a grevlex basis of (U)."""

    def __init__(self, ring: Ring, relations=()):
        self.ring = ring
        rel = []
        for r in relations:
            if isinstance(r, GradedVectorSpace):
                rel.extend(r.basis)
            else:
                rel.append(r if r.ring == ring else r.to_ring(ring))
        self.relations = [r for r in rel if r]
        self._gb = None

    def __getstate__(self):
        return {"ring": self.ring, "relations": self.relations, "_gb": None}

    def __setstate__(self, state):
        self.__dict__.update(state)

    @classmethod
    def polynomial(cls, ring):
        return cls(ring, ())

    @property
    def is_trivial(self) -> bool:
        return not self.relations

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = groebner(self.relations, self.ring.order)
        return self._gb

    def nf(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            f = f.to_ring(self.ring)
        if self.is_trivial:
            return f
        return self.gb.reduce(f)

    def lift(self, f: Poly) -> Poly:
        return f if f.ring == self.ring else f.to_ring(self.ring)

    def ideal(self, gens, cofactors=False) -> GroebnerBasis:
        gens = [self.lift(g) for g in gens]
        return groebner(gens + self.relations, self.ring.order, cofactors=cofactors)

    def is_polynomial_ring(self) -> bool:
        """True when every basis element has a single variable as leading term.

        Then R is a polynomial ring in the remaining variables and normal
        forms live in that subring.
        """
        if self.is_trivial:
            return True
        for lm in self.gb.leading_monomials():
            if sum(lm) != 1:
                return False
        return True

    def free_variables(self):
        """Variables not eliminated by the relations (polynomial case)."""
        if self.is_trivial:
            return list(self.ring.vars)
        dead = {lm.index(1) for lm in self.gb.leading_monomials() if sum(lm) == 1}
        return [v for i, v in enumerate(self.ring.vars) if i not in dead]

    def dimension(self) -> int:
        if self.is_trivial:
            return self.ring.nvars
        return krull_dimension(self.gb)

    def describe(self):
        return {"ring": self.ring.describe(), "relations": [str(r) for r in self.relations]}

    def __repr__(self):
        return f"QuotientContext({self.ring!r}, {[str(r) for r in self.relations]})"


# ---------------------------------------------------------------------------
# queries


@dataclass
class MembershipResult:
    member: bool
    normal_form: Poly
    cofactors: list | None = None

    def __bool__(self):
        return self.member


def ideal_member(f: Poly, I, ambient: QuotientContext | None = None, certificate=False):
    """Membership test; ``I`` is a GroebnerBasis or a list of generators."""
    if isinstance(I, GroebnerBasis):
        gb = I
        if ambient is not None and not ambient.is_trivial:
            gb = ambient.ideal(gb.generators, cofactors=certificate)
    else:
        gens = list(I)
        if ambient is not None:
            gb = ambient.ideal(gens, cofactors=certificate)
        else:
            gb = groebner(gens, f.ring.order, cofactors=certificate)
    if f.ring != gb.ring:
        f = f.to_ring(gb.ring)
    r = gb.reduce(f)
    cof = None
    if certificate and not r:
        if gb.cofactors is None:
            gb = groebner(gb.generators, gb.order, cofactors=True, cache=None)
        cof = gb.certificate(f)
    return MembershipResult(not r, r, cof)


def _all_homogeneous(polys):
    return all(p.is_homogeneous() for p in polys)


def radical_member(f: Poly, generators, ambient: QuotientContext | None = None) -> bool:
    """f in rad(generators + U), decided by a unit-ideal test."""
    ring = ambient.ring if ambient is not None else f.ring
    f = f if f.ring == ring else f.to_ring(ring)
    gens = [g if g.ring == ring else g.to_ring(ring) for g in generators]
    if ambient is not None:
        gens = gens + ambient.relations
    gens = [g for g in gens if g]
    if not f:
        return True
    if not gens:
        return False
    if f.is_constant():
        return groebner(gens, ring.order).is_unit
    if _all_homogeneous(gens) and f.is_homogeneous():
        # weighted-homogeneous chart: V(I) lies in V(f) iff V(I, f - 1) is empty
        return groebner(gens + [f - 1], ring.order).is_unit
    return _rabinowitsch(f, gens)


def _rabinowitsch(f: Poly, gens) -> bool:
    ring = f.ring
    t = ring.fresh_name("t_rab")
    big = ring.extend([t])
    tv = big.var(t)
    polys = [g.to_ring(big) for g in gens] + [big.one() - tv * f.to_ring(big)]
    return groebner(polys, big.order).is_unit


def rabinowitsch_member(f: Poly, generators, ambient=None) -> bool:
    """Radical membership strictly through 1 in I + (1 - t f)."""
    ring = ambient.ring if ambient is not None else f.ring
    gens = [g.to_ring(ring) for g in generators]
    if ambient is not None:
        gens += ambient.relations
    if not f:
        return True
    return _rabinowitsch(f.to_ring(ring), [g for g in gens if g])


def eliminate(I: GroebnerBasis, variables) -> GroebnerBasis:
    """Generators of I intersected with the subring without ``variables``."""
    ring = I.ring
    variables = list(variables)
    for v in variables:
        if v not in ring.index:
            raise ValueError(f"unknown variable {v}")
    if len(set(variables)) >= ring.nvars:
        raise ValueError("cannot eliminate every variable")
    if not variables:
        return I
    order = MonomialOrder.block(ring, variables)
    gb = groebner(I.generators, order)
    idx = {ring.index[v] for v in variables}
    kept = [b for b in gb.basis if not any(e[i] for e in b.terms for i in idx)]
    return groebner(kept, ring.order) if kept else GroebnerBasis(ring, ring.order, [], [], None)


def krull_dimension(I: GroebnerBasis) -> int:
    """Dimension via maximal independent sets modulo the initial ideal."""
    if I.is_unit:
        raise ValueError("dimension of the unit ideal is undefined")
    n = I.ring.nvars
    supports = [frozenset(i for i, x in enumerate(lm) if x) for lm in I.leading_monomials()]
    for k in range(n, -1, -1):
        for S in itertools.combinations(range(n), k):
            s = set(S)
            if not any(sup <= s for sup in supports):
                return k
    return 0


def is_regular_sequence(forms, ambient: QuotientContext | None = None) -> bool:
    """Codimension test: dim R - dim R/(forms) == len(forms)."""
    forms = list(forms)
    for f in forms:
        if not f.is_homogeneous():
            raise ValueError("is_regular_sequence needs homogeneous forms")
        if f.is_constant():
            raise ValueError("forms must have positive degree")
    if not forms:
        return True
    ring = ambient.ring if ambient is not None else forms[0].ring
    amb = ambient if ambient is not None else QuotientContext.polynomial(ring)
    base = amb.dimension()
    gb = amb.ideal(forms)
    if gb.is_unit:
        return False
    return base - krull_dimension(gb) == len(forms)


def subalgebra_member(f: Poly, generators) -> bool:
    return subalgebra_expression(f, generators) is not None


def subalgebra_expression(f: Poly, generators):
    """Express f as a polynomial in the generators (over tag variables), or None."""
    ring = f.ring
    gens = [g for g in generators]
    if not gens:
        return f if f.is_constant() else None
    tags = []
    for i in range(len(gens)):
        tags.append(ring.fresh_name(f"y{i}_tag", avoid=tags))
    wts = [g.degree() if g.is_homogeneous() and g.degree() > 0 else 1 for g in gens]
    big = ring.extend(tags, wts)
    order = MonomialOrder.block(big, ring.vars)
    rels = [big.var(t) - g.to_ring(big) for t, g in zip(tags, gens)]
    gb = groebner(rels, order)
    r = gb.reduce(f.to_ring(big))
    n = ring.nvars
    for e in r.terms:
        if any(e[:n]):
            return None
    tag_ring = Ring(tags, wts, ring.field)
    return Poly(tag_ring, {e[n:]: c for e, c in r.terms.items()})


# ---------------------------------------------------------------------------
# radicality of pairs


@dataclass
class DiscriminantResult:
    status: str  # RADICAL | NOT_APPLICABLE
    split: tuple = ()
    failing_variable: str | None = None
    failing_gcd: Poly | None = None
    discriminants: dict = dc_field(default_factory=dict)

    def to_dict(self):
        return {
            "status": self.status,
            "z_part": list(self.split[0]) if self.split else [],
            "x_part": list(self.split[1]) if self.split else [],
            "failing_variable": self.failing_variable,
            "failing_gcd": None if self.failing_gcd is None else str(self.failing_gcd),
        }


class PreconditionError(ValueError):
    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


def discriminant_radicality(P: Poly, Q: Poly, z_part, x_part=None) -> DiscriminantResult:
    """Radicality of (P, Q) from discriminants in the z-variables.

    Q must live in the x-variables and be squarefree; P must be squarefree
    and not in the ideal of the x-variables.  RADICAL when each relevant
    discriminant of P is coprime to Q; NOT_APPLICABLE otherwise.
    """
    ring = P.ring
    z_part = list(z_part)
    if x_part is None:
        x_part = [v for v in ring.vars if v not in z_part]
    x_part = list(x_part)
    zi = {ring.index[v] for v in z_part}
    xi = {ring.index[v] for v in x_part}
    problems = []
    if not P.is_homogeneous() or not Q.is_homogeneous():
        problems.append("P and Q must be homogeneous under the ring weights")
    if P.is_constant() or Q.is_constant():
        problems.append("P and Q must have positive degree")
    if any(i in zi or i not in xi for i in Q.variables()):
        problems.append("Q depends on the z-part")
    if all(any(e[i] for i in xi) for e in P.terms):
        problems.append("P lies in the ideal of the x-part")
    if not problems:
        if not is_squarefree(Q):
            problems.append("Q is not squarefree")
        if not is_squarefree(P):
            problems.append("P is not squarefree")
    if problems:
        raise PreconditionError(problems)
    split = (tuple(z_part), tuple(x_part))
    discs = {}
    for v in z_part:
        i = ring.index[v]
        if P.degree_in(i) < 1:
            continue
        D = discriminant(P, v)
        discs[v] = D
        g = poly_gcd(D, Q) if D else Q.monic()
        if not g.is_constant():
            return DiscriminantResult("NOT_APPLICABLE", split, v, g, discs)
    return DiscriminantResult("RADICAL", split, None, None, discs)


@dataclass
class RadicalityResult:
    status: str  # RADICAL | NOT_RADICAL | UNKNOWN
    witness: Poly | None = None
    split: tuple | None = None
    details: dict = dc_field(default_factory=dict)

    def __str__(self):
        if self.status == "NOT_RADICAL":
            return f"NOT_RADICAL(witness={self.witness})"
        return self.status

    def to_dict(self):
        d = {"status": self.status}
        if self.witness is not None:
            d["witness"] = str(self.witness)
        if self.split is not None:
            d["z_part"] = list(self.split[0])
            d["x_part"] = list(self.split[1])
        return d


def _monomials_upto(n, deg):
    for d in range(1, deg + 1):
        for combo in itertools.combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            yield tuple(e)


def is_radical_pair(F: Poly, P: Poly, ambient: QuotientContext | None = None,
                    search_degree: int = 2) -> RadicalityResult:
    """Three-valued radicality of (F, P)."""
    ring = ambient.ring if ambient is not None else F.ring
    F = F.to_ring(ring)
    P = P.to_ring(ring)
    trivial = ambient is None or ambient.is_trivial
    if trivial and not poly_gcd(F, P).is_constant():
        raise ValueError("is_radical_pair needs coprime inputs")
    # discriminant certificate over coordinate splits
    if trivial:
        for A, B in ((F, P), (P, F)):
            xs = [ring.vars[i] for i in B.variables()]
            zs = [v for v in ring.vars if v not in xs]
            if not zs or not set(A.variables()) - set(B.variables()):
                continue
            try:
                res = discriminant_radicality(A, B, zs, xs)
            except PreconditionError:
                continue
            if res.status == "RADICAL":
                return RadicalityResult("RADICAL", split=res.split)
    # witness search
    gb = (ambient or QuotientContext.polynomial(ring)).ideal([F, P])
    if gb.is_unit:
        return RadicalityResult("RADICAL", details={"unit": True})
    seen = set()
    cands = []

    def push(c):
        if not c or c.is_constant():
            return
        c = c.monic()
        if c in seen:
            return
        seen.add(c)
        cands.append(c)

    amb = ambient or QuotientContext.polynomial(ring)
    for A, B in ((F, P), (P, F)):
        r = amb.ideal([B]).reduce(A)
        if r:
            push(squarefree_part(r))
            for comp in r.homogeneous_components().values():
                push(squarefree_part(comp))
    for g in gb.basis:
        push(squarefree_part(g))
    for e in _monomials_upto(ring.nvars, search_degree):
        push(ring.monomial(e))
    for c in sorted(cands, key=lambda c: (c.degree(), len(c.terms), str(c))):
        if gb.contains(c):
            continue
        if radical_member(c, [F, P], ambient):
            return RadicalityResult("NOT_RADICAL", witness=c)
    return RadicalityResult("UNKNOWN")


def eliminate_polys(gens, variables):
    ring = gens[0].ring
    return eliminate(groebner(gens, ring.order), variables)


def divide_in_quotient(f: Poly, g: Poly, ambient: QuotientContext):
    """h with f - g*h in (U), or None (cofactor of g in a basis of (g) + U)."""
    gb = groebner([g] + ambient.relations, ambient.ring.order, cofactors=True, cache=None)
    cof = gb.certificate(f)
    if cof is None:
        return None
    return ambient.nf(cof[0])


def exact_divide(f: Poly, g: Poly):
    return divide_exact(f, g)
