from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hessclass.perms import (
    HessFn,
    Perm,
    build_wh,
    essential_set,
    hessenberg_functions,
    rank_matrix,
    reduced_word,
    word_to_perm,
)

CATALAN = [1, 1, 2, 5, 14, 42, 132]


def rothe_diagram(w: Perm) -> set[tuple[int, int]]:
    # (value row i, position column j) left of w^-1(i) and above w(j)
    m = len(w)
    return {(i, j) for i in range(1, m + 1) for j in range(1, m + 1) if w(j) > i and w.inverse(i) > j}


def essential_by_diagram(w: Perm) -> list[tuple[int, int]]:
    D = rothe_diagram(w)
    return sorted(c for c in D if (c[0] + 1, c[1]) not in D and (c[0], c[1] + 1) not in D)


def test_perm_validation_and_parse():
    assert Perm.parse("12536478") == Perm((1, 2, 5, 3, 6, 4, 7, 8))
    assert Perm.parse("1,2,10,3,4,5,6,7,8,9").oneline[2] == 10
    with pytest.raises(ValueError):
        Perm((1, 1, 2))


def test_length_counts_inversions_and_word_length():
    for w in Perm.all(5):
        word = reduced_word(w)
        assert word_to_perm(word, 5) == w
        assert len(word) == w.length
    assert Perm.longest(5).length == 10


def test_rank_matrix_by_definition():
    for w in Perm.all(4):
        r = rank_matrix(w)
        for i, j in product(range(1, 5), repeat=2):
            assert r[i - 1][j - 1] == len({w(k) for k in range(1, j + 1)} & set(range(1, i + 1)))


def test_essential_set_agrees_with_diagram_corners():
    for w in Perm.all(5):
        assert essential_set(w) == essential_by_diagram(w)


def test_essential_set_examples():
    assert essential_set(Perm.identity(4)) == []
    assert essential_set(Perm((2, 1))) == [(1, 1)]
    assert rank_matrix(Perm((2, 1)))[0][0] == 0


def test_trim_and_embed():
    w = Perm((2, 1, 3, 4))
    assert w.trimmed() == Perm((2, 1))
    assert Perm((2, 1)).embed(4) == w
    assert Perm.identity(3).trimmed() == Perm((1,))


def test_hessenberg_function_validation():
    with pytest.raises(ValueError):
        HessFn((1, 1, 3))  # h(2) < 2
    with pytest.raises(ValueError):
        HessFn((3, 2, 3))  # decreasing
    with pytest.raises(ValueError):
        HessFn.parse("2,a")
    assert HessFn.parse("2, 3,4,4").h == (2, 3, 4, 4)


def test_hessenberg_counts_are_catalan():
    for n in range(1, 7):
        hs = list(hessenberg_functions(n))
        assert len(hs) == CATALAN[n]
        assert [h.h for h in hs] == sorted(h.h for h in hs)


def test_wh_example():
    w = build_wh(HessFn((2, 3, 4, 4)))
    assert str(w) == "12536478"
    assert w.length == 3


def test_wh_extreme_cases():
    for n in range(1, 7):
        assert build_wh(HessFn((n,) * n)) == Perm.identity(2 * n)
        # h = (1, ..., n): the values n+m land on the even positions 2m
        stairs = build_wh(HessFn(tuple(range(1, n + 1))))
        expected = tuple(v for m in range(1, n + 1) for v in (m, n + m))
        assert stairs.oneline == expected
        assert stairs.length == n * (n - 1) // 2


def test_length_formula_exhaustive():
    total = 0
    for n in range(1, 7):
        for h in hessenberg_functions(n):
            assert build_wh(h).length == sum(n - v for v in h.h)
            total += 1
    assert total == sum(CATALAN[1:7])


def test_bottom_positions_carry_small_values():
    for n in range(1, 6):
        for h in hessenberg_functions(n):
            w = build_wh(h)
            for m in range(1, n + 1):
                assert w(m + h.h_prime(m)) == m
                assert w(m + h(m)) == n + m
            assert sorted(h.top_positions() + h.bottom_positions()) == list(range(1, 2 * n + 1))


@given(st.permutations(range(1, 7)))
def test_inverse_and_simple_reflections(p):
    w = Perm(tuple(p))
    assert word_to_perm(reduced_word(w.inverse), 6) == w.inverse
    for i in range(1, 6):
        step = w.times_s(i)
        assert abs(step.length - w.length) == 1
        assert (step.length > w.length) == (i in w.ascents())


