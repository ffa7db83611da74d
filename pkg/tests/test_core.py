from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from sidonkit.core import (
    BudgetExceeded,
    ModulusTooSmall,
    NotSidon,
    SearchBudget,
    SidonError,
    SidonSet,
    canonical,
    diff_mask,
    exhaustive_optimal,
    find_collision,
    greedy_sidon,
    is_modular_sidon,
    is_sidon,
    max_sidon_in_interval,
    naive_optimal,
    normalize,
    theorem1_holds,
)
from strategies import sidon_sets

KNOWN_S = [0, 1, 3, 6, 11, 17, 25, 34]


@pytest.mark.parametrize("xs, expected", [
    ((0, 1, 3, 7), True),
    ((0, 1, 2, 4), False),
    ((), True),
    ((5,), True),
    ((7, 3, 1, 0), True),
    ((0, 1, 1), False),
])
def test_is_sidon_examples(xs, expected):
    assert is_sidon(xs) is expected
    assert oracles.sidon(xs) is expected


def test_normalize():
    assert normalize([10, 11, 14]).elements == (0, 1, 4)
    assert normalize([3]).elements == (0,)
    assert normalize([]).elements == ()
    with pytest.raises(NotSidon) as e:
        normalize([0, 1, 2])
    assert {e.value.pair1, e.value.pair2} == {(0, 1), (1, 2)}


def test_sidonset_rejects_bad_input():
    with pytest.raises(SidonError):
        SidonSet((0, 2, 1))
    with pytest.raises(SidonError):
        SidonSet((1, 2))  # not normalized
    s = SidonSet((0, 1, 3, 7))
    assert (s.k, s.diameter) == (4, 7)
    assert s.reflected().elements == (0, 4, 6, 7)
    assert canonical(SidonSet((0, 4, 6, 7))).elements == (0, 1, 3, 7)


def test_find_collision():
    assert find_collision([0, 1, 3, 7]) is None
    (a, b), (c, d) = find_collision([0, 2, 5, 7])
    assert b - a == d - c


@pytest.mark.parametrize("xs, limit, bits", [
    ((0, 1, 3), 3, [1, 2, 3]),
    ((0,), 10, []),
    ((0, 1, 4, 6), 6, [1, 2, 3, 4, 5, 6]),
    ((0, 1, 4, 6), 3, [1, 2, 3]),
])
def test_diff_mask_examples(xs, limit, bits):
    m = diff_mask(SidonSet(xs), limit)
    assert m.members() == bits
    assert m.popcount == len(bits)


@pytest.mark.parametrize("res, m, expected", [
    ((0, 1, 3), 7, True),
    ((1, 2, 5), 8, False),
    ((0,), 5, True),
    ((0, 2), 4, False),  # 2 - 0 = 0 - 2 mod 4
])
def test_is_modular_sidon_examples(res, m, expected):
    assert is_modular_sidon(res, m) is expected
    assert oracles.modular_sidon(res, m) is expected


def test_modulus_too_small():
    with pytest.raises(ModulusTooSmall):
        is_modular_sidon([0], 0)


def test_greedy():
    assert greedy_sidon(1).elements == (0,)
    assert greedy_sidon(4).elements == (0, 1, 3, 7)
    assert greedy_sidon(8).elements == (0, 1, 3, 7, 12, 20, 30, 44)


@pytest.mark.parametrize("k", range(1, 9))
def test_exhaustive_matches_known_values(k):
    d, w = exhaustive_optimal(k)
    assert d == KNOWN_S[k - 1]
    assert w.k == k and w.diameter == d and is_sidon(w.elements)
    assert theorem1_holds(k, d)


def test_exhaustive_examples():
    assert exhaustive_optimal(1) == (0, SidonSet((0,)))
    d, w = exhaustive_optimal(4)
    assert d == 6 and w.elements == (0, 1, 4, 6)


@pytest.mark.parametrize("k", range(1, 7))
def test_exhaustive_vs_test_owned_enumerator(k):
    assert exhaustive_optimal(k)[0] == oracles.min_diameter(k)


@pytest.mark.slow
@pytest.mark.parametrize("k", [7, 8])
def test_exhaustive_vs_naive_subset_scan(k):
    assert exhaustive_optimal(k)[0] == naive_optimal(k)[0]


def test_budget_exceeded_returns_incumbent():
    exhaustive_optimal.__globals__["_OPTIMAL_CACHE"].pop(11, None)
    with pytest.raises(BudgetExceeded) as e:
        exhaustive_optimal(11, SearchBudget(max_nodes=50))
    assert not e.value.optimal
    assert is_sidon(e.value.best.elements) and e.value.best.k == 11
    assert e.value.best.diameter >= 72


def test_budget_validation():
    with pytest.raises(SidonError):
        SearchBudget(max_nodes=0)


def test_theorem1_holds_boundary():
    # bound at k=1 is exactly 0; at k=4 it is 5; at k=9 it is 38
    assert theorem1_holds(1, 0)
    assert theorem1_holds(4, 5) and not theorem1_holds(4, 4)
    assert theorem1_holds(9, 38) and not theorem1_holds(9, 37)


def test_max_sidon_in_interval_small():
    # R2(n) = largest k with s_k <= n - 1
    for n in range(1, 31):
        expected = max(k for k in range(1, 9) if KNOWN_S[k - 1] <= n - 1)
        assert max_sidon_in_interval(n) == expected


# --- properties ---------------------------------------------------------------

@given(sidon_sets())
def test_popcount_is_pair_count(xs):
    s = normalize(xs)
    assert diff_mask(s, max(1, s.diameter)).popcount == comb(s.k, 2)


@given(st.lists(st.integers(-50, 50), max_size=8), st.integers(-100, 100))
def test_is_sidon_translation_reflection(xs, t):
    ref = oracles.sidon(xs)
    assert is_sidon(xs) == ref
    assert is_sidon([a + t for a in xs]) == ref
    assert is_sidon([t - a for a in xs]) == ref


@given(st.integers(2, 40).flatmap(lambda m: st.tuples(st.just(m), st.sets(st.integers(0, m - 1), max_size=8))))
def test_is_modular_sidon_matches_bruteforce(args):
    m, res = args
    assert is_modular_sidon(sorted(res), m) == oracles.modular_sidon(res, m)


@given(sidon_sets())
def test_canonical_is_min_of_set_and_reflection(xs):
    s = normalize(xs)
    c = canonical(s)
    assert c.elements == min(s.elements, s.reflected().elements)
    assert canonical(s.reflected()) == c
