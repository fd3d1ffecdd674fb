"""Permutations, Hessenberg functions and the permutation w_h.

Everything user-facing is 1-indexed: ``Perm((2, 1))`` is the transposition
s_1 in S_2, and ``w(j)`` is the value in position ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations as _permutations
from typing import Iterator, Sequence


@dataclass(frozen=True)
class Perm:
    oneline: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "oneline", tuple(int(v) for v in self.oneline))
        if sorted(self.oneline) != list(range(1, len(self.oneline) + 1)):
            raise ValueError(f"{self.oneline} is not a permutation of 1..{len(self.oneline)}")

    @classmethod
    def identity(cls, m: int) -> "Perm":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def longest(cls, m: int) -> "Perm":
        return cls(tuple(range(m, 0, -1)))

    @classmethod
    def parse(cls, text: str) -> "Perm":
        """Accept ``"12536478"`` (m <= 9) or comma-separated ``"1,2,5,..."``."""
        text = text.strip().strip("[]")
        if "," in text or " " in text.strip():
            return cls(tuple(int(t) for t in text.replace(",", " ").split()))
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def all(cls, m: int) -> list["Perm"]:
        return [cls(p) for p in _permutations(range(1, m + 1))]

    def __len__(self):
        return len(self.oneline)

    def __call__(self, j: int) -> int:
        return self.oneline[j - 1]

    def __str__(self):
        if len(self.oneline) <= 9:
            return "".join(map(str, self.oneline))
        return ",".join(map(str, self.oneline))

    def to_json(self) -> list[int]:
        return list(self.oneline)

    @cached_property
    def inverse(self) -> "Perm":
        inv = [0] * len(self.oneline)
        for j, v in enumerate(self.oneline, start=1):
            inv[v - 1] = j
        return Perm(tuple(inv))

    @cached_property
    def length(self) -> int:
        w = self.oneline
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    def times_s(self, i: int) -> "Perm":
        """Right multiplication by s_i: swap positions i and i+1."""
        w = list(self.oneline)
        w[i - 1], w[i] = w[i], w[i - 1]
        return Perm(tuple(w))

    def descents(self) -> list[int]:
        w = self.oneline
        return [i for i in range(1, len(w)) if w[i - 1] > w[i]]

    def ascents(self) -> list[int]:
        w = self.oneline
        return [i for i in range(1, len(w)) if w[i - 1] < w[i]]

    def embed(self, m: int) -> "Perm":
        """The image in S_m fixing m' + 1, ..., m."""
        if m < len(self):
            raise ValueError("cannot embed into a smaller symmetric group")
        return Perm(self.oneline + tuple(range(len(self) + 1, m + 1)))

    def trimmed(self) -> "Perm":
        """Drop trailing fixed points (keeping at least S_1)."""
        w = list(self.oneline)
        while len(w) > 1 and w[-1] == len(w):
            w.pop()
        return Perm(tuple(w))


def length(w: Perm) -> int:
    return w.length


def rank_matrix(w: Perm) -> list[list[int]]:
    """``r[i-1][j-1] = #({w(1..j)} & {1..i})``."""
    m = len(w)
    r = [[0] * m for _ in range(m)]
    for i in range(1, m + 1):
        count = 0
        for j in range(1, m + 1):
            if w(j) <= i:
                count += 1
            r[i - 1][j - 1] = count
    return r


def essential_set(w: Perm) -> list[tuple[int, int]]:
    """Cells (i, j) with w(j) > i >= w(j+1) and w^-1(i) > j >= w^-1(i+1), sorted."""
    m = len(w)
    winv = w.inverse
    cells = []
    for i in range(1, m):
        for j in range(1, m):
            if w(j) > i >= w(j + 1) and winv(i) > j >= winv(i + 1):
                cells.append((i, j))
    return cells


def reduced_word(w: Perm) -> list[int]:
    """A reduced word [i1, ..., ik] with w = s_i1 s_i2 ... s_ik.

    Built by stripping the smallest descent of the running permutation from
    the right, so the word read right to left is the sequence of descents.
    """
    word = []
    cur = w
    while True:
        ds = cur.descents()
        if not ds:
            break
        i = ds[0]
        word.append(i)
        cur = cur.times_s(i)
    word.reverse()
    return word


def word_to_perm(word: Sequence[int], m: int) -> Perm:
    cur = Perm.identity(m)
    for i in word:
        cur = cur.times_s(i)
    return cur


@dataclass(frozen=True)
class HessFn:
    """A Hessenberg function, stored as the tuple (h(1), ..., h(n))."""

    h: tuple[int, ...]

    def __post_init__(self):
        h = tuple(int(v) for v in self.h)
        object.__setattr__(self, "h", h)
        n = len(h)
        if n == 0:
            raise ValueError("empty Hessenberg function")
        for i, v in enumerate(h, start=1):
            if not i <= v <= n:
                raise ValueError(f"need {i} <= h({i}) <= {n}, got h({i}) = {v}")
            if i < n and v > h[i]:
                raise ValueError(f"h must be nondecreasing: h({i}) = {v} > h({i + 1}) = {h[i]}")

    @classmethod
    def parse(cls, text: str) -> "HessFn":
        try:
            values = tuple(int(t) for t in text.replace(" ", "").split(",") if t)
        except ValueError as exc:
            raise ValueError(f"cannot parse Hessenberg function {text!r}") from exc
        return cls(values)

    @property
    def n(self) -> int:
        return len(self.h)

    def __call__(self, i: int) -> int:
        return self.h[i - 1]

    def __str__(self):
        return ",".join(map(str, self.h))

    def h_prime(self, m: int) -> int:
        """#{p : h(p) < m}."""
        return sum(1 for v in self.h if v < m)

    def codim(self) -> int:
        return sum(self.n - v for v in self.h)

    def top_positions(self) -> list[int]:
        """Positions m + h(m), m = 1..n (these carry the values n+1..2n in w_h)."""
        return [m + self(m) for m in range(1, self.n + 1)]

    def bottom_positions(self) -> list[int]:
        """Positions m + h'(m), m = 1..n (these carry the values 1..n in w_h)."""
        return [m + self.h_prime(m) for m in range(1, self.n + 1)]


def build_wh(h: HessFn) -> Perm:
    n = h.n
    w = [0] * (2 * n)
    for m, pos in enumerate(h.top_positions(), start=1):
        w[pos - 1] = n + m
    free = iter(range(1, n + 1))
    for k in range(2 * n):
        if w[k] == 0:
            w[k] = next(free)
    return Perm(tuple(w))


def hessenberg_functions(n: int) -> Iterator[HessFn]:
    """All Hessenberg functions on {1..n}, in lexicographic order."""

    def rec(prefix: list[int]):
        i = len(prefix) + 1
        if i > n:
            yield HessFn(tuple(prefix))
            return
        lo = max(i, prefix[-1] if prefix else 1)
        for v in range(lo, n + 1):
            prefix.append(v)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])
