"""Buchberger's algorithm, normal forms, saturation and K-polynomials.

Coefficients are handled fraction-free during the run: every intermediate
polynomial is an integer polynomial kept primitive.  Only the final reduced
basis is made monic (with exact rationals).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce as _fold
from math import gcd, lcm
from typing import Iterable, Sequence

from .ideal import IdealGens
from .polyring import Grading, MultiPoly, VarSet, grevlex_key, homogeneous_components

Exp = tuple[int, ...]


class GroebnerTimeout(RuntimeError):
    """Raised when a run exceeds its time budget.

    ``partial`` holds the basis elements found so far and ``pairs_left`` the
    number of unprocessed critical pairs.
    """

    def __init__(self, message: str, partial: list[MultiPoly], pairs_left: int):
        super().__init__(message)
        self.partial = partial
        self.pairs_left = pairs_left


@dataclass(frozen=True)
class TermOrder:
    kind: str = "grevlex"
    block: int = 0  # leading variables eliminated by an "elim" order

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown term order {self.kind!r}")

    @classmethod
    def grevlex(cls) -> "TermOrder":
        return cls("grevlex")

    @classmethod
    def lex(cls) -> "TermOrder":
        return cls("lex")

    @classmethod
    def elimination(cls, block: int) -> "TermOrder":
        return cls("elim", block)

    def key(self, exp: Exp):
        if self.kind == "grevlex":
            return grevlex_key(exp)
        if self.kind == "lex":
            return exp
        b = self.block
        return (grevlex_key(exp[:b]), grevlex_key(exp[b:]))


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Exp, b: Exp) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class _Poly:
    """Working polynomial for the Buchberger loop (primitive, integer)."""

    __slots__ = ("terms", "lm", "lc")

    def __init__(self, terms: dict[Exp, int], keyf):
        self.terms = terms
        self.lm = max(terms, key=keyf)
        self.lc = terms[self.lm]


def _primitive(terms: dict[Exp, int]) -> dict[Exp, int]:
    g = _fold(gcd, terms.values(), 0)
    if g > 1:
        return {e: c // g for e, c in terms.items()}
    return terms


def _to_int_terms(f: MultiPoly) -> dict[Exp, int]:
    den = 1
    for c in f._terms.values():
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    return {e: int(c * den) for e, c in f._terms.items()}


class _Reducer:
    def __init__(self, keyf, deadline: float | None):
        self.keyf = keyf
        self.deadline = deadline

    def reduce(self, f: dict[Exp, int], basis: Sequence[_Poly]):
        """Return (remainder, scale) with remainder = scale * NF(f) (scale rational)."""
        keyf = self.keyf
        f = dict(f)
        rem: dict[Exp, int] = {}
        scale = Fraction(1)
        steps = 0
        while f:
            m = max(f, key=keyf)
            c = f[m]
            g = None
            for p in basis:
                if _divides(p.lm, m):
                    g = p
                    break
            if g is None:
                rem[m] = c
                del f[m]
                continue
            k = gcd(g.lc, c)
            a, b = g.lc // k, c // k
            if a != 1:
                if a < 0:
                    a, b = -a, -b
                f = {e: a * v for e, v in f.items()}
                rem = {e: a * v for e, v in rem.items()}
                scale *= a
            q = tuple(x - y for x, y in zip(m, g.lm))
            for e2, v2 in g.terms.items():
                e = tuple(x + y for x, y in zip(e2, q))
                nv = f.get(e, 0) - b * v2
                if nv:
                    f[e] = nv
                else:
                    f.pop(e, None)
            steps += 1
            if steps % 64 == 0:
                cont = _fold(gcd, list(f.values()) + list(rem.values()), 0)
                if cont > 1:
                    f = {e: v // cont for e, v in f.items()}
                    rem = {e: v // cont for e, v in rem.items()}
                    scale /= cont
                if self.deadline is not None and time.monotonic() > self.deadline:
                    raise TimeoutError
        return rem, scale


@dataclass(frozen=True, eq=False)
class GroebnerBasis:
    """A reduced, monic Groebner basis."""

    varset: VarSet
    basis: tuple[MultiPoly, ...]
    order: TermOrder = field(default_factory=TermOrder)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (self.varset == other.varset and self.order == other.order
                and set(self.basis) == set(other.basis))

    def __hash__(self):
        return hash((self.varset, self.order, frozenset(self.basis)))

    def __len__(self):
        return len(self.basis)

    def leading_monomials(self) -> list[Exp]:
        keyf = self.order.key
        return [max(g._terms, key=keyf) for g in self.basis]

    def initial_ideal(self) -> IdealGens:
        gens = [MultiPoly.monomial(self.varset, m) for m in self.leading_monomials()]
        return IdealGens.build(self.varset, gens, label="initial ideal")

    def _working(self) -> list[_Poly]:
        keyf = self.order.key
        return [_Poly(_primitive(_to_int_terms(g)), keyf) for g in self.basis]

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        if f.varset != self.varset:
            raise ValueError("polynomial and basis use different alphabets")
        if f.is_zero():
            return f
        den = 1
        for c in f._terms.values():
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
        rem, scale = _Reducer(self.order.key, None).reduce(_to_int_terms(f), self._working())
        total = scale * den
        return MultiPoly(self.varset, {e: Fraction(v) / total for e, v in rem.items()})

    def contains(self, f: MultiPoly) -> bool:
        return self.normal_form(f).is_zero()

    def to_json(self) -> dict:
        return {"vars": list(self.varset.names), "order": self.order.kind,
                "basis": [g.to_json() for g in self.basis]}


def _gm_update(G: list[int], B: list[tuple[int, int]], h: int, store: list[_Poly]):
    """Gebauer-Moeller installation of a new element (Buchberger's criteria)."""
    lm = [p.lm for p in store]
    hl = lm[h]
    C = [g for g in G]
    D: list[int] = []
    while C:
        g1 = C.pop(0)
        l1 = _lcm(hl, lm[g1])
        if _coprime(hl, lm[g1]):
            D.append(g1)
            continue
        if any(_divides(_lcm(hl, lm[g2]), l1) for g2 in C) or any(
            _divides(_lcm(hl, lm[g2]), l1) for g2 in D
        ):
            continue
        D.append(g1)
    E = [(g, h) for g in D if not _coprime(hl, lm[g])]
    newB = []
    for g1, g2 in B:
        l12 = _lcm(lm[g1], lm[g2])
        if (_divides(hl, l12) and _lcm(lm[g1], hl) != l12 and _lcm(hl, lm[g2]) != l12):
            continue
        newB.append((g1, g2))
    newB.extend(E)
    newG = [g for g in G if not _divides(hl, lm[g])]
    newG.append(h)
    return newG, newB


def _spoly(p: _Poly, q: _Poly) -> dict[Exp, int]:
    m = _lcm(p.lm, q.lm)
    up = tuple(a - b for a, b in zip(m, p.lm))
    uq = tuple(a - b for a, b in zip(m, q.lm))
    k = gcd(p.lc, q.lc)
    a, b = q.lc // k, p.lc // k
    out: dict[Exp, int] = {}
    for e, c in p.terms.items():
        e2 = tuple(x + y for x, y in zip(e, up))
        out[e2] = out.get(e2, 0) + a * c
    for e, c in q.terms.items():
        e2 = tuple(x + y for x, y in zip(e, uq))
        v = out.get(e2, 0) - b * c
        if v:
            out[e2] = v
        else:
            out.pop(e2, None)
    return {e: c for e, c in out.items() if c}


def buchberger(gens: IdealGens | Iterable[MultiPoly], order: TermOrder | None = None,
               budget: float | None = None, varset: VarSet | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Critical pairs are processed smallest-lcm first (normal strategy) and
    pruned with Buchberger's coprime and chain criteria in Gebauer-Moeller
    form.  ``budget`` is a wall-clock limit in seconds.
    """
    order = order or TermOrder.grevlex()
    if isinstance(gens, IdealGens):
        varset = gens.varset
        gens = list(gens.gens)
    else:
        gens = list(gens)
        if varset is None:
            if not gens:
                raise ValueError("cannot infer the alphabet of an empty generator list")
            varset = gens[0].varset
    for g in gens:
        if g.varset != varset:
            raise ValueError("generators over different alphabets")

    keycache: dict[Exp, object] = {}
    okey = order.key

    def keyf(e):
        k = keycache.get(e)
        if k is None:
            k = keycache[e] = okey(e)
        return k

    deadline = None if budget is None else time.monotonic() + budget
    red = _Reducer(keyf, deadline)
    store: list[_Poly] = []
    G: list[int] = []
    B: list[tuple[int, int]] = []

    def partial():
        return [MultiPoly(varset, store[i].terms) for i in G]

    def install(terms):
        nonlocal G, B
        store.append(_Poly(terms, keyf))
        G, B = _gm_update(G, B, len(store) - 1, store)

    def pair_key(pair):
        i, j = pair
        return (keyf(_lcm(store[i].lm, store[j].lm)), i, j)

    inputs = sorted((_primitive(_to_int_terms(g)) for g in gens if not g.is_zero()),
                    key=lambda t: keyf(max(t, key=keyf)))
    try:
        for terms in inputs:
            r, _ = red.reduce(terms, [store[i] for i in G])
            if r:
                install(_primitive(r))
        while B:
            if deadline is not None and time.monotonic() > deadline:
                raise TimeoutError
            best = min(B, key=pair_key)
            B.remove(best)
            i, j = best
            s = _spoly(store[i], store[j])
            if not s:
                continue
            r, _ = red.reduce(s, [store[k] for k in G])
            if r:
                install(_primitive(r))
    except TimeoutError:
        raise GroebnerTimeout(f"Groebner budget of {budget}s exceeded", partial(), len(B)) from None

    # interreduce the (already minimal) basis and make it monic
    final = [store[i] for i in G]
    final.sort(key=lambda p: keyf(p.lm))
    out = []
    for k, p in enumerate(final):
        others = final[:k] + final[k + 1:]
        tail = {e: c for e, c in p.terms.items() if e != p.lm}
        r, scale = red.reduce(tail, others) if tail else ({}, Fraction(1))
        # p = lc*lm + tail  ==>  reduced = lc*lm + r/scale
        poly = {p.lm: Fraction(p.lc)}
        for e, v in r.items():
            poly[e] = Fraction(v) / scale
        lc = poly[p.lm]
        out.append(MultiPoly(varset, {e: v / lc for e, v in poly.items()}))
    return GroebnerBasis(varset, tuple(out), order)


def normal_form(f: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    return gb.normal_form(f)


def is_groebner(gb: GroebnerBasis) -> bool:
    """Check that every S-polynomial reduces to zero (post hoc verification)."""
    keyf = gb.order.key
    work = gb._working()
    red = _Reducer(keyf, None)
    for a in range(len(work)):
        for b in range(a + 1, len(work)):
            s = _spoly(work[a], work[b])
            if s and red.reduce(s, work)[0]:
                return False
    return True


def saturate_at(ideal: IdealGens, d: MultiPoly, budget: float | None = None) -> IdealGens:
    """Generators of (I : d^infinity), by eliminating t from I + <t*d - 1>."""
    if d.is_zero():
        raise ValueError("cannot saturate at zero")
    vs = ideal.varset
    tname = "t_sat"
    while tname in vs.index:
        tname += "_"
    big = vs.extend([tname], front=True)
    t = MultiPoly.var(big, tname)
    gens = [g.embed(big) for g in ideal.gens] + [t * d.embed(big) - 1]
    gb = buchberger(gens, TermOrder.elimination(1), budget=budget, varset=big)
    keep = []
    for g in gb.basis:
        if all(e[0] == 0 for e in g._terms):
            keep.append(MultiPoly(vs, {e[1:]: c for e, c in g._terms.items()}))
    label = f"({ideal.label}) : d^inf" if ideal.label else "saturation"
    return IdealGens.build(vs, keep, ideal.grading, label)


# -- multigraded Hilbert series ------------------------------------------

@dataclass(frozen=True)
class KPolynomial:
    """K-polynomial of S/I; the denominator prod(1 - x^deg(z)) stays implicit."""

    numerator: MultiPoly
    grading: Grading

    def series(self, max_degree: int) -> dict[Exp, int]:
        """Hilbert series coefficients up to total x-degree ``max_degree``."""
        acc: dict[Exp, int] = {e: int(c) for e, c in self.numerator._terms.items() if sum(e) <= max_degree}
        for deg in self.grading.degrees:
            step = sum(deg)
            if step <= 0:
                raise ValueError("series expansion needs a positive grading")
            new: dict[Exp, int] = {}
            for e, c in acc.items():
                k = 0
                cur = e
                while sum(cur) <= max_degree:
                    new[cur] = new.get(cur, 0) + c
                    k += 1
                    cur = tuple(a + k * b for a, b in zip(e, deg))
            acc = {e: c for e, c in new.items() if c}
        return acc

    def to_json(self) -> dict:
        return {"numerator": self.numerator.to_json(), "grading": self.grading.to_json()}


def _minimalize(gens: Iterable[Exp]) -> frozenset[Exp]:
    gens = sorted(set(gens), key=sum)
    out: list[Exp] = []
    for m in gens:
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return frozenset(out)


def _numerator(gens: frozenset[Exp], degs: tuple[Exp, ...], memo: dict) -> dict[Exp, int]:
    if gens in memo:
        return memo[gens]
    rank = len(degs[0]) if degs else 0
    zero = (0,) * rank

    def shift(poly, dv, sign=1):
        return {tuple(a + b for a, b in zip(e, dv)): sign * c for e, c in poly.items()}

    def degree(m):
        out = [0] * rank
        for v, e in enumerate(m):
            if e:
                for k in range(rank):
                    out[k] += e * degs[v][k]
        return tuple(out)

    def add(p, q):
        out = dict(p)
        for e, c in q.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return out

    def times_one_minus(p, dv):
        return add(p, shift(p, dv, -1))

    gl = list(gens)
    if not gl:
        return {zero: 1}
    # split off generators sharing no variable with any other generator
    support = [frozenset(i for i, e in enumerate(m) if e) for m in gl]
    lone, rest = [], []
    for k, m in enumerate(gl):
        if all(not (support[k] & support[j]) for j in range(len(gl)) if j != k):
            lone.append(m)
        else:
            rest.append(m)
    if lone:
        result = _numerator(frozenset(rest), degs, memo) if rest else {zero: 1}
        for m in lone:
            result = times_one_minus(result, degree(m))
    else:
        counts: dict[int, int] = {}
        for m in rest:
            for i, e in enumerate(m):
                if e:
                    counts[i] = counts.get(i, 0) + 1
        v = min(counts, key=lambda i: (-counts[i], i))
        p = tuple(int(i == v) for i in range(len(rest[0])))
        plus = _minimalize([m for m in rest if not m[v]] + [p])
        colon = _minimalize([tuple(e - 1 if i == v and e else e for i, e in enumerate(m)) for m in rest])
        result = add(_numerator(plus, degs, memo), shift(_numerator(colon, degs, memo), degree(p)))
    memo[gens] = result
    return result


def hilbert_numerator(monomial_ideal: IdealGens, grading: Grading | None = None) -> KPolynomial:
    """K-polynomial of S/I for a monomial ideal I.

    Uses N(I) = N(I + <v>) + x^deg(v) N(I : v) pivoting on the variable that
    occurs in the most generators.
    """
    grading = grading or monomial_ideal.grading
    if grading is None:
        raise ValueError("a grading is required")
    if len(grading.degrees) != len(monomial_ideal.varset):
        raise ValueError("grading does not match the alphabet")
    exps = []
    for g in monomial_ideal.gens:
        if len(g) != 1:
            raise ValueError(f"generator {g} is not a monomial")
        exps.append(next(iter(g._terms)))
    raw = _numerator(_minimalize(exps), tuple(grading.degrees), {})
    xs = VarSet.x(grading.target_rank)
    if any(min(e, default=0) < 0 for e in raw):
        raise ValueError("K-polynomial has negative exponents; use a nonnegative grading")
    return KPolynomial(MultiPoly(xs, raw), grading)


def multidegree(kp: KPolynomial | MultiPoly) -> tuple[int, MultiPoly]:
    """(codim, multidegree): lowest-degree part of K(1 - x)."""
    num = kp.numerator if isinstance(kp, KPolynomial) else kp
    if num.is_zero():
        raise ValueError("zero K-polynomial")
    comps = homogeneous_components(num.one_minus())
    return comps[0]


def standard_monomial_counts(leading: Sequence[Exp], grading: Grading, max_degree: int) -> dict[Exp, int]:
    """Brute-force count of monomials outside <leading>, bucketed by degree."""
    nv = len(grading.degrees)
    weight = [sum(d) for d in grading.degrees]
    if min(weight, default=1) <= 0:
        raise ValueError("enumeration needs a positive grading")
    counts: dict[Exp, int] = {}

    def rec(i, remaining, exp):
        if i == nv:
            if not any(_divides(m, exp) for m in leading):
                d = grading.degree(tuple(exp))
                counts[d] = counts.get(d, 0) + 1
            return
        for e in range(remaining // weight[i] + 1):
            exp.append(e)
            rec(i + 1, remaining - e * weight[i], exp)
            exp.pop()

    rec(0, max_degree, [])
    return counts


def check_hilbert_series(kp: KPolynomial, leading: Sequence[Exp], max_degree: int = 6) -> bool:
    """Compare the series of ``kp`` with standard-monomial counts up to ``max_degree``."""
    series = kp.series(max_degree)
    counts = standard_monomial_counts(leading, kp.grading, max_degree)
    return {e: c for e, c in series.items() if c} == counts
