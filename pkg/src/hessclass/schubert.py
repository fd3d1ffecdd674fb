"""Schubert and Grothendieck polynomials, the Hessenberg class substitution,
and coefficient extraction in H*(G/B) and K^0(G/B).

All three families are computed top-down from the longest permutation:

* ``schubert``: S_{w0} = prod x_i^(m-i), S_{w s_i} = d_i S_w;
* ``grothendieck_modified``: G^_{w0} = prod (1 - x_i)^(m-i),
  G^_{w s_i} = -d_i(x_{i+1} G^_w);
* ``grothendieck_standard``: G_{w0} = prod x_i^(m-i),
  G_{w s_i} = d_i((1 - x_{i+1}) G_w).

The last operator is the modified Demazure operator conjugated by
x -> 1 - x, so G_w(x) = G^_w(1 - x) holds by construction and is checked
independently in the test-suite.  Polynomials are computed for the trimmed
permutation (trailing fixed points removed) and embedded afterwards.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable

from .groebner import GroebnerBasis, buchberger
from .perms import HessFn, Perm, build_wh, reduced_word
from .polyring import MultiPoly, VarSet, elementary_symmetric, exact_div_diff

FAMILIES = ("schubert", "grothendieck_modified", "grothendieck_standard")


def demazure_modified(f: MultiPoly, i: int) -> MultiPoly:
    xi1 = MultiPoly.var(f.varset, i)  # 0-based position i is x_{i+1}
    return -exact_div_diff(xi1 * f, i)


def demazure_standard(f: MultiPoly, i: int) -> MultiPoly:
    xi1 = MultiPoly.var(f.varset, i)
    return exact_div_diff((1 - xi1) * f, i)


_OPERATORS: dict[str, Callable[[MultiPoly, int], MultiPoly]] = {
    "schubert": exact_div_diff,
    "grothendieck_modified": demazure_modified,
    "grothendieck_standard": demazure_standard,
}


def _top(family: str, m: int) -> MultiPoly:
    vs = VarSet.x(m)
    if family == "grothendieck_modified":
        result = MultiPoly.one(vs)
        for i in range(1, m):
            result = result * (1 - MultiPoly.var(vs, i - 1)) ** (m - i)
        return result
    return MultiPoly.monomial(vs, tuple(m - i for i in range(1, m + 1)))


class SchubertCache:
    """Thread-safe memo of (family, permutation) -> polynomial.

    An entry is stored only once fully computed, so readers see it either
    absent or complete.  Concurrent misses may compute the same value twice.
    """

    def __init__(self):
        self._store: dict[tuple[str, tuple[int, ...]], MultiPoly] = {}
        self._lock = threading.Lock()

    def get(self, family: str, w: Perm) -> MultiPoly | None:
        with self._lock:
            return self._store.get((family, w.oneline))

    def put(self, family: str, w: Perm, value: MultiPoly) -> MultiPoly:
        with self._lock:
            return self._store.setdefault((family, w.oneline), value)

    def __len__(self):
        with self._lock:
            return len(self._store)

    def clear(self):
        with self._lock:
            self._store.clear()

    def compute(self, family: str, w: Perm) -> MultiPoly:
        """Polynomial of ``w`` (untrimmed) over x_1..x_m, m = len(w)."""
        if family not in _OPERATORS:
            raise ValueError(f"unknown family {family!r}")
        hit = self.get(family, w)
        if hit is not None:
            return hit
        op = _OPERATORS[family]
        m = len(w)
        top = Perm.longest(m)
        # climb by smallest ascents until a cached permutation or w0
        path = []
        cur = w
        while True:
            hit = self.get(family, cur)
            if hit is not None:
                poly = hit
                break
            if cur == top:
                poly = self.put(family, cur, _top(family, m))
                break
            i = cur.ascents()[0]
            path.append((cur, i))
            cur = cur.times_s(i)
        for perm, i in reversed(path):
            poly = self.put(family, perm, op(poly, i))
        return poly


DEFAULT_CACHE = SchubertCache()


def family_poly(w: Perm, family: str, cache: SchubertCache | None = None, trim: bool = True) -> MultiPoly:
    cache = cache or DEFAULT_CACHE
    base = w.trimmed() if trim else w
    poly = cache.compute(family, base)
    if len(base) != len(w):
        poly = poly.embed(VarSet.x(len(w)))
    return poly


def schubert_poly(w: Perm, cache: SchubertCache | None = None, trim: bool = True) -> MultiPoly:
    return family_poly(w, "schubert", cache, trim)


def grothendieck_modified(w: Perm, cache: SchubertCache | None = None, trim: bool = True) -> MultiPoly:
    return family_poly(w, "grothendieck_modified", cache, trim)


def grothendieck_standard(w: Perm, cache: SchubertCache | None = None, trim: bool = True) -> MultiPoly:
    return family_poly(w, "grothendieck_standard", cache, trim)


def apply_word(f: MultiPoly, word, op: Callable[[MultiPoly, int], MultiPoly] = exact_div_diff) -> MultiPoly:
    """Apply op_{i1} o ... o op_{ik} (rightmost first) for ``word`` = [i1, ..., ik]."""
    for i in reversed(list(word)):
        f = op(f, i)
    return f


def family_by_word(w: Perm, word, family: str = "schubert") -> MultiPoly:
    """Walk down from w0 along ``word``, a reduced word [j1, ..., jk] of w0 w.

    Applies the family operator for j1 first, so the result is the polynomial
    of w0 s_j1 ... s_jk = w.  Used to test independence of the chosen path.
    """
    f = _top(family, len(w))
    for j in word:
        f = _OPERATORS[family](f, j)
    return f


def substitution_map(h: HessFn) -> dict[str, MultiPoly]:
    """x_j -> x_m for j = m + h(m) and for j = m + h'(m)."""
    n = h.n
    xs = VarSet.x(n)
    mapping = {}
    for m in range(1, n + 1):
        xm = MultiPoly.var(xs, m - 1)
        mapping[f"x{m + h(m)}"] = xm
        mapping[f"x{m + h.h_prime(m)}"] = xm
    if len(mapping) != 2 * n:
        raise AssertionError("top and bottom positions must partition 1..2n")
    return mapping


def hessenberg_substitution(h: HessFn, family: str = "schubert", cache: SchubertCache | None = None) -> MultiPoly:
    """The w_h polynomial of ``family`` evaluated at the Hessenberg argument list
    (x_1..x_h(1), x_1, x_h(1)+1, .., x_h(n), x_n)."""
    w = build_wh(h)
    f = family_poly(w, family, cache)
    return f.substitute(substitution_map(h), VarSet.x(h.n))


# -- classes modulo I_n and J_n ------------------------------------------

@lru_cache(maxsize=None)
def cohomology_basis(n: int) -> GroebnerBasis:
    """Groebner basis of I_n = <e_1, ..., e_n>."""
    xs = VarSet.x(n)
    return buchberger([elementary_symmetric(xs, d) for d in range(1, n + 1)], varset=xs)


@lru_cache(maxsize=None)
def ktheory_basis(n: int) -> GroebnerBasis:
    """Groebner basis of J_n = <e_d - C(n, d)>."""
    xs = VarSet.x(n)
    return buchberger([elementary_symmetric(xs, d) - comb(n, d) for d in range(1, n + 1)], varset=xs)


def _in_x(f: MultiPoly, n: int) -> MultiPoly:
    xs = VarSet.x(n)
    return f if f.varset == xs else f.embed(xs)


def cohomology_normal_form(f: MultiPoly, n: int) -> MultiPoly:
    return cohomology_basis(n).normal_form(_in_x(f, n))


def ktheory_normal_form(f: MultiPoly, n: int) -> MultiPoly:
    return ktheory_basis(n).normal_form(_in_x(f, n))


def schubert_expand(f: MultiPoly, n: int) -> dict[Perm, int]:
    """Coefficients c_w (w in S_n, l(w) = deg f) with f = sum c_w S_w mod I_n.

    c_w is the constant d_w(f) = d_i1 ... d_ik (f) for a reduced word of w.
    """
    f = _in_x(f, n)
    if not f.is_homogeneous():
        raise ValueError("schubert_expand needs a homogeneous polynomial")
    if f.is_zero():
        return {}
    k = f.total_degree
    out = {}
    for w in Perm.all(n):
        if w.length != k:
            continue
        c = apply_word(f, reduced_word(w))
        if not c.is_constant():
            raise AssertionError("d_w(f) is not a constant")
        out[w] = c.constant_value()
    return out


def schubert_reconstruct(coeffs: dict[Perm, int], n: int) -> MultiPoly:
    xs = VarSet.x(n)
    acc = MultiPoly.zero(xs)
    for w, c in coeffs.items():
        acc = acc + schubert_poly(w).embed(xs) * c
    return acc


def _solve(columns: list[dict], target: dict) -> list[Fraction]:
    """Solve sum_k a_k columns[k] = target exactly (columns indexed by monomial)."""
    rows = sorted({e for col in columns for e in col} | set(target))
    ncol = len(columns)
    mat = [[Fraction(col.get(r, 0)) for col in columns] + [Fraction(target.get(r, 0))] for r in rows]
    piv_cols = []
    row = 0
    for c in range(ncol):
        p = next((r for r in range(row, len(mat)) if mat[r][c]), None)
        if p is None:
            continue
        mat[row], mat[p] = mat[p], mat[row]
        lead = mat[row][c]
        mat[row] = [v / lead for v in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][c]:
                factor = mat[r][c]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[row])]
        piv_cols.append(c)
        row += 1
    if any(all(v == 0 for v in r[:-1]) and r[-1] for r in mat):
        raise ValueError("target is not in the span")
    sol = [Fraction(0)] * ncol
    for r, c in enumerate(piv_cols):
        sol[c] = mat[r][-1]
    return sol


def grothendieck_expand(f: MultiPoly, n: int, convention: str = "standard") -> dict[Perm, int]:
    """Coefficients of f in the Grothendieck basis of K^0(G/B).

    Modified convention: f = sum c_w G^_w mod J_n.  Standard convention:
    f = sum c_w G_w mod I_n; it is reduced to the modified case by x -> 1 - x.
    """
    f = _in_x(f, n)
    if convention == "standard":
        f = f.one_minus()
    elif convention != "modified":
        raise ValueError(f"unknown convention {convention!r}")
    gb = ktheory_basis(n)
    perms = Perm.all(n)
    cols = [gb.normal_form(_in_x(grothendieck_modified(w), n))._terms for w in perms]
    sol = _solve(cols, gb.normal_form(f)._terms)
    out = {}
    for w, c in zip(perms, sol):
        if c:
            if c.denominator != 1:
                raise AssertionError("non-integral Grothendieck coefficient")
            out[w] = int(c)
    return out
