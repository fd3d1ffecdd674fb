"""Exact sparse multivariate polynomials.

A :class:`MultiPoly` is an immutable map from exponent tuples to nonzero
integer or :class:`~fractions.Fraction` coefficients, tied to a
:class:`VarSet`.  All arithmetic is exact.  Terms are kept in a plain dict;
canonical (graded reverse-lexicographic, largest first) ordering is applied
whenever terms are listed or serialized.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Union

Coeff = Union[int, Fraction]

MAX_EXPONENT = 255


def _norm(c) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def grevlex_key(exp: tuple[int, ...]):
    """Sort key: a larger key is a larger monomial in graded reverse-lex."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


class VarSet:
    """An ordered, duplicate-free tuple of variable names."""

    __slots__ = ("names", "index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        index = {name: i for i, name in enumerate(names)}
        if len(index) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.index = index

    @classmethod
    def x(cls, n: int) -> "VarSet":
        return cls(f"x{i}" for i in range(1, n + 1))

    @classmethod
    def matrix(cls, letter: str, n: int) -> "VarSet":
        # row-major: letter_1_1 > letter_1_2 > ... > letter_n_n
        return cls(f"{letter}_{i}_{j}" for i in range(1, n + 1) for j in range(1, n + 1))

    @classmethod
    def z(cls, n: int) -> "VarSet":
        return cls.matrix("z", n)

    @classmethod
    def y(cls, n: int) -> "VarSet":
        """Coordinates on 2n x 2n matrices."""
        return cls.matrix("y", 2 * n)

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other):
        return isinstance(other, VarSet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        if len(self.names) > 6:
            return f"VarSet({self.names[0]}..{self.names[-1]}, count={len(self.names)})"
        return f"VarSet({', '.join(self.names)})"

    def extend(self, names: Iterable[str], front: bool = False) -> "VarSet":
        names = tuple(names)
        return VarSet(names + self.names if front else self.names + names)

    def gens(self) -> list["MultiPoly"]:
        return [MultiPoly.var(self, name) for name in self.names]


@dataclass(frozen=True)
class Grading:
    """A Z^a-grading: one integer degree vector per variable."""

    degrees: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        ranks = {len(d) for d in self.degrees}
        if len(ranks) > 1:
            raise ValueError("degree vectors must share one length")

    @property
    def target_rank(self) -> int:
        return len(self.degrees[0]) if self.degrees else 0

    @classmethod
    def column(cls, n: int) -> "Grading":
        """deg(z_ij) = e_j on the row-major n x n alphabet."""
        e = [tuple(int(k == j) for k in range(n)) for j in range(n)]
        return cls(tuple(e[j] for _ in range(n) for j in range(n)))

    def degree(self, exp: tuple[int, ...]) -> tuple[int, ...]:
        out = [0] * self.target_rank
        for v, e in enumerate(exp):
            if e:
                for k, d in enumerate(self.degrees[v]):
                    out[k] += e * d
        return tuple(out)

    def is_homogeneous(self, f: "MultiPoly") -> bool:
        if len(self.degrees) != len(f.varset):
            raise ValueError("grading does not match the polynomial's alphabet")
        return len({self.degree(e) for e in f.terms}) <= 1

    def to_json(self) -> list[list[int]]:
        return [list(d) for d in self.degrees]


class MultiPoly:
    """Immutable sparse polynomial over a fixed :class:`VarSet`."""

    __slots__ = ("varset", "_terms", "__dict__")

    def __init__(self, varset: VarSet, terms: Mapping[tuple[int, ...], Coeff] | None = None):
        self.varset = varset
        clean: dict[tuple[int, ...], Coeff] = {}
        if terms:
            nv = len(varset)
            for exp, c in terms.items():
                if not c:
                    continue
                exp = tuple(exp)
                if len(exp) != nv:
                    raise ValueError(f"exponent {exp} does not fit {nv} variables")
                if any(e < 0 or e > MAX_EXPONENT for e in exp):
                    raise ValueError(f"exponent out of range in {exp}")
                clean[exp] = _norm(c)
        self._terms = clean

    @classmethod
    def _raw(cls, varset: VarSet, terms: dict) -> "MultiPoly":
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.varset = varset
        obj._terms = terms
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, varset: VarSet) -> "MultiPoly":
        return cls._raw(varset, {})

    @classmethod
    def constant(cls, varset: VarSet, c: Coeff) -> "MultiPoly":
        if not c:
            return cls.zero(varset)
        return cls._raw(varset, {(0,) * len(varset): _norm(c)})

    @classmethod
    def one(cls, varset: VarSet) -> "MultiPoly":
        return cls.constant(varset, 1)

    @classmethod
    def var(cls, varset: VarSet, name: str | int) -> "MultiPoly":
        i = name if isinstance(name, int) else varset.index[name]
        exp = [0] * len(varset)
        exp[i] = 1
        return cls._raw(varset, {tuple(exp): 1})

    @classmethod
    def monomial(cls, varset: VarSet, exp: tuple[int, ...], c: Coeff = 1) -> "MultiPoly":
        return cls(varset, {tuple(exp): c})

    # -- basic accessors ------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, ...], Coeff]:
        return dict(self._terms)

    def items(self):
        """Terms in canonical order (grevlex, largest first)."""
        return [(e, self._terms[e]) for e in self.sorted_exponents()]

    def sorted_exponents(self) -> list[tuple[int, ...]]:
        return sorted(self._terms, key=grevlex_key, reverse=True)

    def coeff(self, exp: tuple[int, ...]) -> Coeff:
        return self._terms.get(tuple(exp), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self._terms.values()), 0)

    @cached_property
    def total_degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    @cached_property
    def max_exponent(self) -> int:
        return max((max(e, default=0) for e in self._terms), default=0)

    def support(self) -> set[str]:
        used = set()
        for exp in self._terms:
            used.update(i for i, e in enumerate(exp) if e)
        return {self.varset.names[i] for i in used}

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.varset != self.varset:
                raise ValueError(f"mismatched variable sets: {self.varset!r} vs {other.varset!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.varset, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.varset, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.varset, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly.zero(self.varset)
            return MultiPoly._raw(self.varset, {e: _norm(c * other) for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.max_exponent + other.max_exponent > MAX_EXPONENT:
            raise OverflowError("exponent bound exceeded")
        out: dict[tuple[int, ...], Coeff] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.varset, {e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.one(self.varset)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_term(self, exp: tuple[int, ...], c: Coeff) -> "MultiPoly":
        out = {tuple(a + b for a, b in zip(e, exp)): _norm(v * c) for e, v in self._terms.items()}
        return MultiPoly._raw(self.varset, out)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.varset, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.varset == other.varset and self._terms == other._terms

    def __hash__(self):
        return hash((self.varset, frozenset(self._terms.items())))

    # -- homomorphisms --------------------------------------------------
    def substitute(self, mapping: Mapping[str, "MultiPoly | Coeff"], target: VarSet | None = None) -> "MultiPoly":
        """Apply the ring homomorphism sending each variable to ``mapping[var]``.

        Every variable in the support must be mapped.  ``target`` is needed
        only when all images are scalars.
        """
        images: dict[int, MultiPoly] = {}
        for name in self.support():
            if name not in mapping:
                raise KeyError(f"variable {name} is not mapped")
        if target is None:
            for v in mapping.values():
                if isinstance(v, MultiPoly):
                    target = v.varset
                    break
            else:
                raise ValueError("target variable set cannot be inferred")
        for name, v in mapping.items():
            if name not in self.varset.index:
                continue
            if not isinstance(v, MultiPoly):
                v = MultiPoly.constant(target, v)
            elif v.varset != target:
                raise ValueError("images live in different variable sets")
            images[self.varset.index[name]] = v

        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] if e == 1 else power(i, e - 1) * images[i]
            return powers[key]

        acc: dict[tuple[int, ...], Coeff] = {}
        for exp, c in self._terms.items():
            term = MultiPoly.constant(target, c)
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            for te, tc in term._terms.items():
                acc[te] = acc.get(te, 0) + tc
        return MultiPoly._raw(target, {e: _norm(c) for e, c in acc.items() if c})

    def embed(self, target: VarSet) -> "MultiPoly":
        """Re-express over another alphabet containing this one's support."""
        positions = []
        for i, name in enumerate(self.varset.names):
            positions.append(target.index.get(name))
        out = {}
        nt = len(target)
        for exp, c in self._terms.items():
            new = [0] * nt
            for i, e in enumerate(exp):
                if e:
                    if positions[i] is None:
                        raise KeyError(f"variable {self.varset.names[i]} missing from target")
                    new[positions[i]] = e
            out[tuple(new)] = c
        return MultiPoly._raw(target, out)

    def one_minus(self) -> "MultiPoly":
        """Substitute x_i -> 1 - x_i for every variable."""
        vs = self.varset
        one = MultiPoly.one(vs)
        return self.substitute({name: one - MultiPoly.var(vs, name) for name in vs.names}, vs)

    def swap(self, i: int, j: int) -> "MultiPoly":
        """Exchange variables at 0-based positions i and j."""
        out = {}
        for exp, c in self._terms.items():
            e = list(exp)
            e[i], e[j] = e[j], e[i]
            out[tuple(e)] = c
        return MultiPoly._raw(self.varset, out)

    # -- text forms -----------------------------------------------------
    def _monomial_text(self, exp, latex=False) -> str:
        parts = []
        for i, e in enumerate(exp):
            if not e:
                continue
            name = self.varset.names[i]
            if latex:
                name = _latex_name(name)
                parts.append(name if e == 1 else f"{name}^{{{e}}}")
            else:
                parts.append(name if e == 1 else f"{name}^{e}")
        return (" " if latex else "*").join(parts)

    def _render(self, latex: bool) -> str:
        if not self._terms:
            return "0"
        out = []
        for k, (exp, c) in enumerate(self.items()):
            neg = c < 0
            a = -c if neg else c
            mono = self._monomial_text(exp, latex)
            if latex and isinstance(a, Fraction):
                num = f"\\frac{{{a.numerator}}}{{{a.denominator}}}"
            else:
                num = str(a)
            if not mono:
                body = num
            elif a == 1:
                body = mono
            else:
                body = f"{num} {mono}" if latex else f"{num}*{mono}"
            if k == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __str__(self):
        return self._render(latex=False)

    def to_latex(self) -> str:
        return self._render(latex=True)

    def __repr__(self):
        return f"MultiPoly({self})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.varset.names),
            "terms": [{"c": str(c), "e": list(e)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MultiPoly":
        vs = VarSet(data["vars"])
        return cls(vs, {tuple(t["e"]): Fraction(t["c"]) for t in data["terms"]})

    @classmethod
    def parse(cls, text: str, varset: VarSet) -> "MultiPoly":
        """Parse a sum of terms such as ``2*x1^3 - x1*x2`` or ``-3 x_{1}^{4} x_{2}``."""
        plain: dict[str, list[str]] = {}
        for n in varset.names:
            plain.setdefault(_plain_name(n), []).append(n)
        src = re.sub(r"\\frac\s*\{(\d+)\}\s*\{(\d+)\}", r" \1/\2 ", text)
        src = re.sub(r"[&\\]", " ", re.sub(r"[{}]", "", src))
        src = re.sub(r"\s+", " ", src).strip()
        if src in ("", "0"):
            return cls.zero(varset)
        pieces = re.findall(r"([+-]?)\s*([^+-]+)", src)
        acc = cls.zero(varset)
        for sign, body in pieces:
            coef: Coeff = 1
            exp = [0] * len(varset)
            for tok in re.split(r"[\s*]+", body.strip()):
                if not tok:
                    continue
                m = re.fullmatch(r"(\d+)(?:/(\d+))?", tok)
                if m:
                    coef *= Fraction(int(m.group(1)), int(m.group(2) or 1))
                    continue
                base, _, power = tok.partition("^")
                if base in varset.index:
                    name = base
                elif len(plain.get(_plain_name(base), ())) == 1:
                    name = plain[_plain_name(base)][0]
                else:
                    raise ValueError(f"unknown or ambiguous variable {base!r}")
                exp[varset.index[name]] += int(power or 1)
            if sign == "-":
                coef = -coef
            acc = acc + cls.monomial(varset, tuple(exp), coef)
        return acc


def _plain_name(name: str) -> str:
    return name.replace("_", "")


def _latex_name(name: str) -> str:
    m = re.fullmatch(r"([A-Za-z]+)_?(\d+(?:_\d+)*)", name)
    if not m:
        return name
    letter, idx = m.groups()
    return f"{letter}_{{{idx.replace('_', ',')}}}"


# -- polynomial operations used across the package ----------------------

def exact_div_diff(f: MultiPoly, i: int) -> MultiPoly:
    """Divided difference (f - s_i f) / (x_i - x_{i+1}); ``i`` is 1-based."""
    a_pos, b_pos = i - 1, i
    if b_pos >= len(f.varset):
        raise ValueError(f"divided difference {i} needs at least {i + 1} variables")
    out: dict[tuple[int, ...], Coeff] = {}
    for exp, c in f._terms.items():
        a, b = exp[a_pos], exp[b_pos]
        if a == b:
            continue
        # x^a y^b - x^b y^a = (x - y) * sum_k x^(hi-1-k) y^(lo+k), sign by order
        hi, lo, sgn = (a, b, 1) if a > b else (b, a, -1)
        base = list(exp)
        for k in range(hi - lo):
            base[a_pos] = hi - 1 - k
            base[b_pos] = lo + k
            e = tuple(base)
            out[e] = out.get(e, 0) + sgn * c
    return MultiPoly._raw(f.varset, {e: _norm(c) for e, c in out.items() if c})


def homogeneous_components(f: MultiPoly) -> list[tuple[int, MultiPoly]]:
    """Split f by total degree, ascending."""
    buckets: dict[int, dict] = {}
    for exp, c in f._terms.items():
        buckets.setdefault(sum(exp), {})[exp] = c
    return [(d, MultiPoly._raw(f.varset, buckets[d])) for d in sorted(buckets)]


def lowest_component(f: MultiPoly) -> tuple[int, MultiPoly]:
    comps = homogeneous_components(f)
    if not comps:
        raise ValueError("zero polynomial has no lowest component")
    return comps[0]


def elementary_symmetric(varset: VarSet, d: int) -> MultiPoly:
    from itertools import combinations

    n = len(varset)
    terms = {}
    for idx in combinations(range(n), d):
        exp = [0] * n
        for i in idx:
            exp[i] = 1
        terms[tuple(exp)] = 1
    return MultiPoly._raw(varset, terms)
