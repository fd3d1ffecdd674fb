"""Generic matrices, minors, and the Schubert / Hessenberg determinantal ideals."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Sequence

from .ideal import IdealGens
from .perms import HessFn, Perm, build_wh, essential_set, rank_matrix
from .polyring import Grading, MultiPoly, VarSet


@dataclass(frozen=True)
class Operator:
    """A square matrix X with exact rational entries."""

    entries: tuple[tuple[Fraction, ...], ...]
    name: str = "custom"

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.entries)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("operator must be a square matrix")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def regular_nilpotent(cls, n: int) -> "Operator":
        """Single Jordan block: X e_j = e_{j-1}, X e_1 = 0."""
        return cls(tuple(tuple(int(j == i + 1) for j in range(n)) for i in range(n)), "nilpotent")

    @classmethod
    def regular_semisimple(cls, eigenvalues: Sequence) -> "Operator":
        eig = [Fraction(v) for v in eigenvalues]
        if len(set(eig)) != len(eig):
            raise ValueError("eigenvalues of a regular semisimple operator must be distinct")
        n = len(eig)
        rows = tuple(tuple(eig[i] if i == j else 0 for j in range(n)) for i in range(n))
        return cls(rows, "semisimple:" + ",".join(str(e) for e in eig))

    @classmethod
    def from_file(cls, path: str | Path) -> "Operator":
        """Read a JSON list of rows or whitespace-separated rows of rationals."""
        text = Path(path).read_text()
        try:
            rows = json.loads(text)
        except json.JSONDecodeError:
            rows = [line.split() for line in text.splitlines() if line.strip()]
        return cls(tuple(tuple(Fraction(str(v)) for v in row) for row in rows), f"file:{path}")

    @classmethod
    def parse(cls, text: str, n: int) -> "Operator":
        """``nilpotent``, ``semisimple`` (eigenvalues 1..n), ``semisimple:a,b,..`` or ``file:path``."""
        if text == "nilpotent":
            return cls.regular_nilpotent(n)
        if text == "semisimple":
            return cls.regular_semisimple(range(1, n + 1))
        if text.startswith("semisimple:"):
            op = cls.regular_semisimple([Fraction(t) for t in text.split(":", 1)[1].split(",")])
        elif text.startswith("file:"):
            op = cls.from_file(text.split(":", 1)[1])
        else:
            raise ValueError(f"unknown operator {text!r}")
        if op.n != n:
            raise ValueError(f"operator is {op.n}x{op.n} but n = {n}")
        return op

    def apply(self, vec: Sequence[MultiPoly]) -> tuple[MultiPoly, ...]:
        if len(vec) != self.n:
            raise ValueError("dimension mismatch")
        out = []
        for row in self.entries:
            acc = vec[0] * 0
            for a, v in zip(row, vec):
                if a:
                    acc = acc + v * a
            out.append(acc)
        return tuple(out)

    def to_json(self) -> dict:
        return {"name": self.name, "entries": [[str(v) for v in row] for row in self.entries]}


def generic_columns(varset: VarSet, letter: str, rows: int, cols: int) -> list[tuple[MultiPoly, ...]]:
    """Columns v_j = sum_i letter_ij e_i of a generic matrix (0-based list of vectors)."""
    return [
        tuple(MultiPoly.var(varset, f"{letter}_{i}_{j}") for i in range(1, rows + 1))
        for j in range(1, cols + 1)
    ]


def det(matrix: Sequence[Sequence]):
    """Determinant by cofactor expansion along the first column, memoized on row sets."""
    m = len(matrix)
    if any(len(r) != m for r in matrix):
        raise ValueError("determinant of a non-square matrix")
    if m == 0:
        return 1
    memo: dict[tuple[int, ...], object] = {}

    def rec(rows: tuple[int, ...]):
        col = m - len(rows)
        if len(rows) == 1:
            return matrix[rows[0]][col]
        if rows in memo:
            return memo[rows]
        total = None
        for k, r in enumerate(rows):
            a = matrix[r][col]
            if not a:
                continue
            sub = rec(rows[:k] + rows[k + 1:])
            term = a * sub
            if k % 2:
                term = -term
            total = term if total is None else total + term
        if total is None:
            total = matrix[rows[0]][col] * 0
        memo[rows] = total
        return total

    return rec(tuple(range(m)))


def minor(rows: Sequence[int], cols: Sequence[Sequence]):
    """d_{R,C}: determinant of the matrix whose (i, j) entry is coordinate R_i of C_j."""
    if len(rows) != len(cols):
        raise ValueError(f"minor needs |R| = |C|, got {len(rows)} and {len(cols)}")
    return det([[c[r - 1] for c in cols] for r in rows])


def z_grading(n: int) -> Grading:
    return Grading.column(n)


def y_grading(h: HessFn) -> Grading:
    """deg(y_ij) = x_m when column j is m + h(m) or m + h'(m)."""
    n = h.n
    col_deg = {}
    for m in range(1, n + 1):
        col_deg[m + h(m)] = m
        col_deg[m + h.h_prime(m)] = m
    unit = [tuple(int(k == m) for k in range(1, n + 1)) for m in range(n + 1)]
    return Grading(tuple(unit[col_deg[j]] for _ in range(2 * n) for j in range(1, 2 * n + 1)))


def fulton_ideal(w: Perm, letter: str = "z") -> IdealGens:
    """Schubert determinantal ideal I_w, generated over the essential set only."""
    m = len(w)
    vs = VarSet.matrix(letter, m)
    cols = generic_columns(vs, letter, m, m)
    r = rank_matrix(w)
    gens = []
    for i, j in essential_set(w):
        size = r[i - 1][j - 1] + 1
        for R in combinations(range(1, i + 1), size):
            for C in combinations(cols[:j], size):
                gens.append(minor(R, C))
    grading = Grading.column(m) if letter == "z" else None
    return IdealGens.build(vs, gens, grading, f"I_{w}")


def fulton_ideal_all_cells(w: Perm, letter: str = "z") -> IdealGens:
    """I_w from every cell (i, j), without the essential-set reduction."""
    m = len(w)
    vs = VarSet.matrix(letter, m)
    cols = generic_columns(vs, letter, m, m)
    r = rank_matrix(w)
    gens = []
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            size = r[i - 1][j - 1] + 1
            if size > min(i, j):
                continue
            for R in combinations(range(1, i + 1), size):
                for C in combinations(cols[:j], size):
                    gens.append(minor(R, C))
    return IdealGens.build(vs, gens, Grading.column(m) if letter == "z" else None, f"I_{w} (all cells)")


def _check_dims(X: Operator, h: HessFn):
    if X.n != h.n:
        raise ValueError(f"operator is {X.n}x{X.n} but h has length {h.n}")


def hess_ideal_J(X: Operator, h: HessFn, skip_redundant: bool = False) -> IdealGens:
    """J_{X,h}: (h(j)+1)-minors of the columns Xv_1..Xv_j, v_1..v_h(j), summed over j."""
    _check_dims(X, h)
    n = h.n
    vs = VarSet.z(n)
    v = generic_columns(vs, "z", n, n)
    Xv = [X.apply(col) for col in v]
    gens = []
    for j in range(1, n + 1):
        r = h(j)
        if r + 1 > n:
            continue
        if skip_redundant and j < n and h(j) == h(j + 1):
            continue
        columns = Xv[:j] + v[:r]
        for R in combinations(range(1, n + 1), r + 1):
            for C in combinations(columns, r + 1):
                gens.append(minor(R, C))
    return IdealGens.build(vs, gens, z_grading(n), f"J_{{X,{h}}}")


def hess_ideal_I(X: Operator, h: HessFn) -> IdealGens:
    """I_{X,H_h}: det(v_1..v_{i-1}, Xv_j, v_{i+1}..v_n) for every i > h(j)."""
    _check_dims(X, h)
    n = h.n
    vs = VarSet.z(n)
    v = generic_columns(vs, "z", n, n)
    rows = list(range(1, n + 1))
    gens = []
    for j in range(1, n + 1):
        Xvj = X.apply(v[j - 1])
        for i in range(h(j) + 1, n + 1):
            cols = v[: i - 1] + [Xvj] + v[i:]
            gens.append(minor(rows, cols))
    return IdealGens.build(vs, gens, z_grading(n), f"I_{{X,H_{h}}}")


def generic_determinant(n: int) -> MultiPoly:
    vs = VarSet.z(n)
    return minor(list(range(1, n + 1)), generic_columns(vs, "z", n, n))


def phi_map(X: Operator, h: HessFn) -> dict[str, MultiPoly]:
    """The substitution y_ij -> R = K[z] sending the top half of column m+h(m) to Xv_m,
    column m+h'(m) to v_m, and every bottom-half variable to 0."""
    _check_dims(X, h)
    n = h.n
    zs = VarSet.z(n)
    v = generic_columns(zs, "z", n, n)
    image_col: dict[int, tuple[MultiPoly, ...]] = {}
    for m in range(1, n + 1):
        image_col[m + h(m)] = X.apply(v[m - 1])
        image_col[m + h.h_prime(m)] = v[m - 1]
    zero = MultiPoly.zero(zs)
    mapping = {}
    for i in range(1, 2 * n + 1):
        for j in range(1, 2 * n + 1):
            mapping[f"y_{i}_{j}"] = image_col[j][i - 1] if i <= n else zero
    return mapping


def phi_image(X: Operator, h: HessFn) -> IdealGens:
    """phi_{X,h} applied to the generators of I_{w_h}."""
    n = h.n
    mapping = phi_map(X, h)
    zs = VarSet.z(n)
    src = fulton_ideal(build_wh(h), letter="y")
    gens = [g.substitute(mapping, zs) for g in src.gens]
    return IdealGens.build(zs, gens, z_grading(n), f"phi(I_{build_wh(h)})")


def plucker_check(u: Sequence[Sequence], v: Sequence[Sequence], phi: Sequence[Sequence], k: int) -> bool:
    """Check det(M)det(N) = sum_i det(M_i)det(N_i).

    ``u``: m vectors and ``v``: n vectors in K^n; ``phi``: m x n matrix of a
    linear map K^n -> K^m; ``k`` in 1..m.  M has columns phi(u_1..u_m), M_i
    replaces phi(u_k) by phi(v_i); N has columns v_1..v_n and N_i replaces
    v_i by u_k.  Entries may be numbers or polynomials.
    """
    m, n = len(u), len(v)
    if len(phi) != m or any(len(row) != n for row in phi):
        raise ValueError("phi must be an m x n matrix")
    if any(len(vec) != n for vec in list(u) + list(v)):
        raise ValueError("vectors must live in K^n")
    if not 1 <= k <= m:
        raise ValueError("k out of range")

    def apply(vec):
        out = []
        for row in phi:
            acc = 0
            for a, b in zip(row, vec):
                acc = a * b + acc
            out.append(acc)
        return out

    def cols_to_matrix(cols):
        return [[c[r] for c in cols] for r in range(len(cols[0]))]

    pu = [apply(x) for x in u]
    pv = [apply(x) for x in v]
    lhs = det(cols_to_matrix(pu)) * det(cols_to_matrix(list(v)))
    rhs = 0
    for i in range(n):
        Mi = pu[: k - 1] + [pv[i]] + pu[k:]
        Ni = list(v[:i]) + [u[k - 1]] + list(v[i + 1:])
        rhs = det(cols_to_matrix(Mi)) * det(cols_to_matrix(Ni)) + rhs
    return (lhs - rhs) == 0
