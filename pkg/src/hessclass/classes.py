"""Class formulas for regular Hessenberg varieties and their Groebner oracle.

The formula side substitutes into the Schubert/Grothendieck polynomial of
w_h.  The oracle side computes the K-polynomial of R/J_{X,h} (grading
deg z_ij = x_j) from the initial ideal of a Groebner basis.  The two are
compared in H*(G/B) = Q[x]/I_n and K^0(G/B) = Q[x]/J_n by normal forms.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

from . import __version__
from .groebner import (
    GroebnerTimeout,
    KPolynomial,
    buchberger,
    check_hilbert_series,
    hilbert_numerator,
    multidegree,
    saturate_at,
)
from .hessideal import Operator, generic_determinant, hess_ideal_J, z_grading
from .perms import HessFn, Perm
from .polyring import MultiPoly, homogeneous_components
from .schubert import (
    cohomology_normal_form,
    ktheory_normal_form,
    schubert_expand,
    hessenberg_substitution,
)


@dataclass
class Verdict:
    name: str
    status: str  # "pass" | "fail" | "timeout"
    details: dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self, timings: bool = True) -> dict:
        out = {"name": self.name, "status": self.status, "details": self.details}
        if timings:
            out["seconds"] = round(self.seconds, 4)
        return out


def _verdict(name: str, ok: bool, **details) -> Verdict:
    return Verdict(name, "pass" if ok else "fail", details)


def compute_class(h: HessFn, theory: str = "cohomology", convention: str = "standard") -> MultiPoly:
    """Representative of [Y_{X,h}] for any regular X."""
    if theory == "cohomology":
        f = hessenberg_substitution(h, "schubert")
        if not f.is_homogeneous() or f.total_degree != h.codim():
            raise AssertionError(f"cohomology class of {h} is not homogeneous of degree {h.codim()}")
        return f
    if theory == "ktheory":
        if convention not in ("standard", "modified"):
            raise ValueError(f"unknown convention {convention!r}")
        return hessenberg_substitution(h, f"grothendieck_{convention}")
    raise ValueError(f"unknown theory {theory!r}")


def _coeff_table(coeffs: dict[Perm, int]) -> dict[str, int]:
    return {str(w): int(c) for w, c in sorted(coeffs.items(), key=lambda kv: kv[0].oneline)}


def compare_cohomology(formula: MultiPoly, oracle_md: MultiPoly, n: int) -> Verdict:
    """Equal in Q[x]/<e_1..e_n>: zero normal form and equal Schubert tables."""
    if formula.total_degree != oracle_md.total_degree or not (
        formula.is_homogeneous() and oracle_md.is_homogeneous()
    ):
        return _verdict("cohomology", False, reason="degree mismatch",
                        formula_degree=formula.total_degree, oracle_degree=oracle_md.total_degree)
    diff = cohomology_normal_form(formula - oracle_md, n)
    ft = _coeff_table(schubert_expand(formula, n))
    ot = _coeff_table(schubert_expand(oracle_md, n))
    return _verdict("cohomology", diff.is_zero() and ft == ot,
                    normal_form_difference=str(diff), formula_schubert=ft, oracle_schubert=ot)


def compare_ktheory(formula: MultiPoly, oracle_kp: KPolynomial | MultiPoly, n: int,
                    convention: str = "standard") -> Verdict:
    """Equal in Q[x]/<e_d - C(n,d)>.

    The oracle K-polynomial is in the modified (K-polynomial) convention.  A
    standard-convention formula is mapped back by x -> 1 - x first.
    """
    kp = oracle_kp.numerator if isinstance(oracle_kp, KPolynomial) else oracle_kp
    if convention == "standard":
        formula = formula.one_minus()
    elif convention != "modified":
        raise ValueError(f"unknown convention {convention!r}")
    a = ktheory_normal_form(formula, n)
    b = ktheory_normal_form(kp, n)
    return _verdict(f"ktheory[{convention}]", a == b, formula_normal_form=str(a), oracle_normal_form=str(b))


@dataclass
class KPolyReport:
    h: HessFn
    operator: Operator
    formula_cohomology: MultiPoly
    formula_ktheory: MultiPoly
    schubert_coeffs: dict[Perm, int]
    oracle_kpoly: KPolynomial | None = None
    oracle_multidegree: MultiPoly | None = None
    codim: int | None = None
    leading_monomials: list = field(default_factory=list)
    verdicts: list[Verdict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_json(self, timings: bool = True) -> dict:
        return {
            "tool": "hessclass",
            "version": __version__,
            "h": list(self.h.h),
            "n": self.h.n,
            "operator": self.operator.to_json(),
            "formula_cohomology": self.formula_cohomology.to_json(),
            "formula_ktheory": self.formula_ktheory.to_json(),
            "schubert_coeffs": _coeff_table(self.schubert_coeffs),
            "oracle_kpoly": self.oracle_kpoly.to_json() if self.oracle_kpoly else None,
            "oracle_multidegree": self.oracle_multidegree.to_json() if self.oracle_multidegree else None,
            "codim": self.codim,
            "verdicts": [v.to_json(timings) for v in self.verdicts],
        }


def oracle_class(h: HessFn, X: Operator | None = None, budget: float | None = 60.0,
                 max_n: int | None = 3, saturate: bool = False) -> KPolyReport:
    """K-polynomial, multidegree and codimension of R/J_{X,h}, plus both formulas.

    With ``saturate`` the oracle uses (J_{X,h} : d^inf) instead, which drops
    components inside the singular locus.  From n = 4 on such components can
    have smaller codimension than Y and then dominate the lowest-degree part.

    Raises :class:`GroebnerTimeout` if a Groebner run exceeds ``budget``.
    """
    n = h.n
    if max_n is not None and n > max_n:
        raise ValueError(f"oracle runs are limited to n <= {max_n} (got n = {n})")
    X = X or Operator.regular_nilpotent(n)
    formula = compute_class(h, "cohomology")
    report = KPolyReport(
        h=h,
        operator=X,
        formula_cohomology=formula,
        formula_ktheory=compute_class(h, "ktheory", "standard"),
        schubert_coeffs=schubert_expand(formula, n),
    )
    ideal = hess_ideal_J(X, h)
    if saturate:
        ideal = saturate_at(ideal, generic_determinant(n), budget=budget)
    gb = buchberger(ideal, budget=budget)
    lms = gb.leading_monomials()
    kp = hilbert_numerator(gb.initial_ideal(), z_grading(n))
    codim, md = multidegree(kp)
    report.oracle_kpoly = kp
    report.oracle_multidegree = md
    report.codim = codim
    report.leading_monomials = lms
    return report


def certify(h: HessFn, X: Operator | None = None, budget: float | None = 60.0,
            series_degree: int = 6, max_n: int | None = 3, saturate: bool = False) -> KPolyReport:
    """Run the oracle and attach every class-level verdict."""
    start = time.perf_counter()
    n = h.n
    X = X or Operator.regular_nilpotent(n)
    try:
        report = oracle_class(h, X, budget, max_n, saturate)
    except GroebnerTimeout as exc:
        formula = compute_class(h, "cohomology")
        report = KPolyReport(h, X, formula, compute_class(h, "ktheory"), schubert_expand(formula, n))
        report.verdicts.append(Verdict("oracle", "timeout", {"pairs_left": exc.pairs_left,
                                                              "partial_basis_size": len(exc.partial)}))
        return report
    oracle_seconds = time.perf_counter() - start
    report.verdicts.append(Verdict("oracle", "pass", {"basis_size": len(report.leading_monomials)},
                                   oracle_seconds))
    checks = [
        lambda: _verdict("codimension", report.codim == h.codim(), expected=h.codim(), oracle=report.codim),
        lambda: compare_cohomology(report.formula_cohomology, report.oracle_multidegree, n),
        lambda: compare_ktheory(report.formula_ktheory, report.oracle_kpoly, n, "standard"),
        lambda: compare_ktheory(compute_class(h, "ktheory", "modified"), report.oracle_kpoly, n, "modified"),
        lambda: _verdict("hilbert_series_oracle",
                         check_hilbert_series(report.oracle_kpoly, report.leading_monomials, series_degree),
                         max_degree=series_degree),
    ]
    for check in checks:
        t0 = time.perf_counter()
        v = check()
        v.seconds = time.perf_counter() - t0
        report.verdicts.append(v)
    return report


def lowest_component_matches(h: HessFn) -> bool:
    """Lowest homogeneous part of the standard K-theory formula is the cohomology formula."""
    k = compute_class(h, "ktheory", "standard")
    return homogeneous_components(k)[0][1] == compute_class(h, "cohomology")
