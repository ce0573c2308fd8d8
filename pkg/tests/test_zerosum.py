import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charvar.errors import BudgetExceeded
from charvar.zerosum import (
    WeightedGenerator,
    ZeroSumMultiset,
    character_phase,
    davenport,
    davenport_bounds,
    is_invariant,
    is_minimal_zero_sum,
    minimal_zero_sum_multisets,
    synthesize_generators,
)

from oracle import all_minimal_zero_sum, brute_force_minimal_zero_sum


def _vectors(found):
    return {ms.vectors for ms in found}


def test_klein_four_group():
    got = [ms.vectors for ms in minimal_zero_sum_multisets(2, 2)]
    assert got == [
        ((0, 0),),
        ((0, 1), (0, 1)),
        ((1, 0), (1, 0)),
        ((1, 1), (1, 1)),
        ((0, 1), (1, 0), (1, 1)),
    ]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_trivial_group(n):
    # (Z/1)^N is trivial: only the zero vector
    assert [ms.vectors for ms in minimal_zero_sum_multisets(1, n)] == [((0,) * n,)]


def test_cyclic_group_of_order_two():
    assert [ms.vectors for ms in minimal_zero_sum_multisets(2, 1)] == [((0,),), ((1,), (1,))]


@pytest.mark.parametrize("m,n,max_len", [(2, 2, 3), (3, 2, 5), (2, 3, 4), (4, 2, 7), (5, 1, 5)])
def test_matches_exhaustive_search(m, n, max_len):
    # max_len is the Davenport constant, so the exhaustive search is complete
    assert _vectors(minimal_zero_sum_multisets(m, n)) == all_minimal_zero_sum(m, n, max_len)


@pytest.mark.parametrize("m,n", [(2, 2), (3, 2), (4, 2), (2, 3), (6, 1)])
def test_every_output_passes_brute_force(m, n):
    for ms in minimal_zero_sum_multisets(m, n):
        assert brute_force_minimal_zero_sum(ms.vectors, m)


def test_output_order_is_canonical():
    found = minimal_zero_sum_multisets(3, 2)
    keys = [(len(ms), ms.vectors) for ms in found]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_davenport_rank_two(m):
    assert davenport(m, 2) == 2 * m - 1


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)])
def test_davenport_elementary_p_groups(p, n):
    assert davenport(p, n) == n * (p - 1) + 1


@pytest.mark.parametrize("m,n", [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (7, 1)])
def test_davenport_within_bounds(m, n):
    lo, hi = davenport_bounds(m, n)
    assert lo <= davenport(m, n) <= hi


def test_cyclic_davenport():
    for m in range(1, 9):
        assert davenport(m, 1) == m


def test_budget_errors(monkeypatch):
    with pytest.raises(BudgetExceeded):
        minimal_zero_sum_multisets(2, 13)
    with pytest.raises(BudgetExceeded):
        davenport(3, 3, budget=10)
    monkeypatch.setenv("CHARVAR_BUDGET", "3")
    with pytest.raises(BudgetExceeded):
        minimal_zero_sum_multisets(2, 2)
    monkeypatch.setenv("CHARVAR_BUDGET", "not a number")
    with pytest.raises(ValueError):
        minimal_zero_sum_multisets(2, 2)


def test_bad_group_parameters():
    with pytest.raises(ValueError):
        minimal_zero_sum_multisets(0, 2)
    with pytest.raises(ValueError):
        davenport(2, 0)


def test_multiset_validation():
    assert len(ZeroSumMultiset(((1, 1), (0, 1), (1, 0)), 2)) == 3
    assert ZeroSumMultiset(((3, 1), (1, 1)), 2).vectors == ((1, 1), (1, 1))
    with pytest.raises(ValueError):
        ZeroSumMultiset(((1, 0), (1, 0), (0, 0)), 2)
    with pytest.raises(ValueError):
        ZeroSumMultiset((), 2)
    assert not is_minimal_zero_sum([(1, 0)], 2)


vectors_mod3 = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=6)


@given(vectors_mod3)
def test_minimality_check_matches_brute_force(vecs):
    assert is_minimal_zero_sum(vecs, 3) == brute_force_minimal_zero_sum(vecs, 3)


FRICKE = [WeightedGenerator("t1", (1, 0)), WeightedGenerator("t2", (0, 1)), WeightedGenerator("t12", (1, 1))]


def test_psl_synthesis():
    assert synthesize_generators(FRICKE, 2) == [
        ("t1", "t1"), ("t12", "t12"), ("t2", "t2"), ("t1", "t12", "t2"),
    ]


def test_synthesis_weight_zero_generator():
    assert synthesize_generators([WeightedGenerator("x", (0,))], 2) == [("x",)]


def test_synthesis_repeated_weights_and_kinds():
    gens = [WeightedGenerator("p", (1,), "trace"), WeightedGenerator("q", (1,), "q-invariant")]
    assert synthesize_generators(gens, 2) == [("p", "p"), ("p", "q"), ("q", "q")]


def test_synthesis_rejects_mixed_lengths():
    with pytest.raises(ValueError):
        synthesize_generators([WeightedGenerator("a", (1,)), WeightedGenerator("b", (1, 0))], 2)
    with pytest.raises(ValueError):
        WeightedGenerator("a", (1,), "other")
    assert synthesize_generators([], 2) == []


weights3 = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=4)


@settings(max_examples=30)
@given(weights3)
def test_synthesized_products_are_invariant(ws):
    gens = [WeightedGenerator(f"g{i}", w) for i, w in enumerate(ws)]
    weights = {g.name: g.weight for g in gens}
    products = synthesize_generators(gens, 3)
    for p in products:
        assert is_invariant(p, weights, 3)
    # each product is a minimal invariant: no proper nonempty subproduct is invariant
    for p in products:
        for r in range(1, len(p)):
            for sub in itertools.combinations(p, r):
                assert not is_invariant(sub, weights, 3)


def test_character_phase():
    weights = {"t1": (1, 0), "t2": (0, 1)}
    assert character_phase(("t1",), weights, (1, 0), 2) == 1
    assert character_phase(("t1", "t1"), weights, (1, 0), 2) == 0
    assert not is_invariant(("t1", "t2"), weights, 2)
