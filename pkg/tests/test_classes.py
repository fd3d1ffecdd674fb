import pytest

from hessclass.classes import (
    certify,
    compare_cohomology,
    compare_ktheory,
    compute_class,
    lowest_component_matches,
    oracle_class,
)
from hessclass.hessideal import Operator
from hessclass.perms import HessFn, hessenberg_functions
from hessclass.polyring import MultiPoly, VarSet, elementary_symmetric
from hessclass.schubert import schubert_expand


def test_full_function_has_trivial_class():
    for n in range(1, 6):
        h = HessFn((n,) * n)
        one = MultiPoly.one(VarSet.x(n))
        assert compute_class(h) == one
        assert compute_class(h, "ktheory") == one


def test_unknown_theory_or_convention():
    with pytest.raises(ValueError):
        compute_class(HessFn((2, 2)), "chow")
    with pytest.raises(ValueError):
        compute_class(HessFn((2, 2)), "ktheory", "other")


def test_degree_bookkeeping():
    for n in range(1, 7):
        for h in hessenberg_functions(n):
            f = compute_class(h)
            assert f.is_homogeneous()
            assert f.total_degree == sum(n - v for v in h.h)


def test_staircase_function_degree():
    for n in range(2, 6):
        assert compute_class(HessFn(tuple(range(1, n + 1)))).total_degree == n * (n - 1) // 2


def test_schubert_coefficients_nonnegative_up_to_4():
    for n in range(1, 5):
        for h in hessenberg_functions(n):
            assert all(c >= 0 for c in schubert_expand(compute_class(h), n).values())


def test_lowest_component_up_to_4():
    for n in range(1, 5):
        for h in hessenberg_functions(n):
            assert lowest_component_matches(h)


def test_compare_cohomology_examples():
    n = 3
    xs = VarSet.x(n)
    f = compute_class(HessFn((1, 3, 3)))
    assert compare_cohomology(f, f, n).passed
    g = f + elementary_symmetric(xs, 1) * MultiPoly.var(xs, 2)
    assert compare_cohomology(f, g, n).passed
    bad = compare_cohomology(f, f + MultiPoly.var(xs, 0) ** f.total_degree, n)
    assert not bad.passed
    mismatch = compare_cohomology(f, f * MultiPoly.var(xs, 0), n)
    assert not mismatch.passed and mismatch.details["reason"] == "degree mismatch"


def test_compare_ktheory_examples():
    n = 3
    xs = VarSet.x(n)
    f = compute_class(HessFn((2, 2, 3)), "ktheory", "modified")
    assert compare_ktheory(f, f, n, "modified").passed
    shifted = f + (elementary_symmetric(xs, 1) - n) * MultiPoly.var(xs, 1)
    assert compare_ktheory(f, shifted, n, "modified").passed
    assert not compare_ktheory(f, f + MultiPoly.var(xs, 0), n, "modified").passed
    with pytest.raises(ValueError):
        compare_ktheory(f, f, n, "other")


def test_oracle_trivial_case():
    r = oracle_class(HessFn((3, 3, 3)))
    assert r.codim == 0
    assert str(r.oracle_kpoly.numerator) == "1"
    assert str(r.oracle_multidegree) == "1"


def test_oracle_n2_by_hand():
    # J = <z_21^2> with deg z_21 = x1: K = 1 - x1^2, K(1-x) = 2x1 - x1^2
    r = oracle_class(HessFn((1, 2)))
    assert str(r.oracle_kpoly.numerator) == "-x1^2 + 1"
    assert r.codim == 1
    assert str(r.oracle_multidegree) == "2*x1"
    assert str(r.formula_cohomology) == "2*x1"


def test_oracle_size_bound():
    with pytest.raises(ValueError):
        oracle_class(HessFn((2, 3, 4, 4)))


@pytest.mark.parametrize("op", ["nilpotent", "semisimple"])
@pytest.mark.parametrize("n", [2, 3])
def test_certify_all_functions(n, op):
    for h in hessenberg_functions(n):
        r = certify(h, Operator.parse(op, n))
        assert [v.name for v in r.verdicts] == [
            "oracle", "codimension", "cohomology", "ktheory[standard]", "ktheory[modified]",
            "hilbert_series_oracle",
        ]
        assert r.passed, [(v.name, v.details) for v in r.verdicts if not v.passed]


def test_report_json_is_deterministic_without_timings():
    h = HessFn((2, 3, 3))
    a = certify(h).to_json(timings=False)
    b = certify(h).to_json(timings=False)
    assert a == b
    assert "seconds" not in a["verdicts"][0]
    assert a["tool"] == "hessclass" and a["version"]


@pytest.mark.slow
@pytest.mark.parametrize("h", [(1, 2, 4, 4), (2, 2, 4, 4), (2, 3, 4, 4), (3, 3, 4, 4)], ids=str)
def test_saturated_oracle_at_n4(h):
    r = certify(HessFn(h), budget=600, series_degree=3, max_n=4, saturate=True)
    assert r.passed, [(v.name, v.details) for v in r.verdicts if not v.passed]


@pytest.mark.slow
def test_unsaturated_oracle_at_n4_sees_extra_components():
    # components of R/J inside {det = 0} can have smaller codimension than Y;
    # they vanish on G/B, so the K-theory comparison still holds
    from hessclass.polyring import homogeneous_components
    from hessclass.schubert import cohomology_normal_form

    h = HessFn((2, 2, 4, 4))
    r = certify(h, budget=600, series_degree=3, max_n=4)
    status = {v.name: v.status for v in r.verdicts}
    assert r.codim < h.codim()
    assert status["ktheory[standard]"] == status["ktheory[modified]"] == "pass"
    comps = dict(homogeneous_components(r.oracle_kpoly.numerator.one_minus()))
    assert all(cohomology_normal_form(comps[d], 4).is_zero() for d in comps if d < h.codim())
    assert compare_cohomology(r.formula_cohomology, comps[h.codim()], 4).passed
