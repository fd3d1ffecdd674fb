from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .polyring import Grading, MultiPoly, VarSet, grevlex_key


def _sort_key(f: MultiPoly):
    return [(grevlex_key(e), str(c)) for e, c in f.items()]


@dataclass(frozen=True)
class IdealGens:
    """A finite generating list for an ideal, with an optional multigrading.

    Use :meth:`build` to get the canonical form: zero generators dropped,
    signs normalized so the leading coefficient is positive, duplicates
    removed and the list sorted.
    """

    varset: VarSet
    gens: tuple[MultiPoly, ...]
    grading: Grading | None = None
    label: str = ""

    @classmethod
    def build(cls, varset: VarSet, gens: Iterable[MultiPoly], grading: Grading | None = None,
              label: str = "") -> "IdealGens":
        seen = {}
        for g in gens:
            if g.varset != varset:
                raise ValueError("generator over a different alphabet")
            if g.is_zero():
                continue
            if g.items()[0][1] < 0:
                g = -g
            seen.setdefault(g, None)
        ordered = sorted(seen, key=_sort_key, reverse=True)
        return cls(varset, tuple(ordered), grading, label)

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def is_homogeneous(self) -> bool:
        if self.grading is None:
            return all(g.is_homogeneous() for g in self.gens)
        return all(self.grading.is_homogeneous(g) for g in self.gens)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "vars": list(self.varset.names),
            "grading": self.grading.to_json() if self.grading else None,
            "gens": [g.to_json() for g in self.gens],
        }

    @classmethod
    def from_json(cls, data: dict) -> "IdealGens":
        vs = VarSet(data["vars"])
        grading = Grading(tuple(tuple(d) for d in data["grading"])) if data.get("grading") else None
        gens = [MultiPoly.from_json(g).embed(vs) for g in data["gens"]]
        return cls.build(vs, gens, grading, data.get("label", ""))
