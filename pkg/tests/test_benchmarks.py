import itertools

import pytest
from hypothesis import given, strategies as st

from moea_lab.benchmarks import (
    BenchmarkSpec,
    CapacityError,
    brute_force_front,
    evaluate,
    front_size,
    is_covered,
    is_front_value,
    iter_front_values,
    max_incomparable,
    milestone_sets,
    pareto_front,
)
from moea_lab.core import BitString, strictly_dominates

OMM_42 = BenchmarkSpec("omm", 4, 2)
OJZJ_612 = BenchmarkSpec("ojzj", 6, 1, k=2)


def bitstrings(n):
    return st.integers(0, (1 << n) - 1).map(lambda mask: BitString(n, mask))


class TestSpecValidation:
    def test_divisibility(self):
        with pytest.raises(ValueError):
            BenchmarkSpec("omm", 7, 2)

    def test_cocz_block_width_multiple_of_four(self):
        BenchmarkSpec("cocz", 8, 1)  # b = 4
        with pytest.raises(ValueError):
            BenchmarkSpec("cocz", 12, 1)  # b = 6
        with pytest.raises(ValueError):
            BenchmarkSpec("cocz", 10, 1)  # n not divisible by 2*m'

    def test_ojzj_k_range(self):
        BenchmarkSpec("ojzj", 8, 1, k=4)
        with pytest.raises(ValueError):
            BenchmarkSpec("ojzj", 8, 1, k=5)
        with pytest.raises(ValueError):
            BenchmarkSpec("ojzj", 8, 1, k=1)
        with pytest.raises(ValueError):
            BenchmarkSpec("ojzj", 8, 1)

    def test_k_only_for_ojzj(self):
        with pytest.raises(ValueError):
            BenchmarkSpec("omm", 8, 1, k=2)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            BenchmarkSpec("zdt1", 8, 1)


class TestEvaluate:
    def test_omm_hand_example(self):
        assert evaluate(OMM_42, BitString.from_string("1100")) == (0, 2, 2, 0)

    def test_ojzj_all_ones(self):
        assert evaluate(OJZJ_612, BitString.from_string("111111")) == (2, 8)

    def test_ojzj_valley(self):
        assert evaluate(OJZJ_612, BitString.from_string("111110")) == (3, 1)

    def test_lotz_hand_examples(self):
        spec = BenchmarkSpec("lotz", 4, 1)
        assert evaluate(spec, BitString.from_string("1100")) == (2, 2)
        assert evaluate(spec, BitString.from_string("0101")) == (0, 0)
        assert evaluate(spec, BitString.from_string("1011")) == (0, 1)
        two = BenchmarkSpec("lotz", 4, 2)
        assert evaluate(two, BitString.from_string("1001")) == (1, 1, 0, 0)

    def test_cocz_hand_example(self):
        spec = BenchmarkSpec("cocz", 8, 1)
        # first half 1101 (coop=3), second half 0110 (two ones of four)
        assert evaluate(spec, BitString.from_string("11010110")) == (3 + 2, 3 + 2)
        assert evaluate(spec, BitString.from_string("11111111")) == (4, 8)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            evaluate(OMM_42, BitString.from_string("110"))

    @given(bitstrings(12))
    def test_omm_pair_normalization(self, x):
        spec = BenchmarkSpec("omm", 12, 3)
        fx = evaluate(spec, x)
        assert len(fx) == spec.m
        b = spec.block_width
        assert all(fx[2 * i] + fx[2 * i + 1] == b for i in range(spec.m_prime))

    @given(bitstrings(16))
    def test_cocz_shared_cooperative_term(self, x):
        spec = BenchmarkSpec("cocz", 16, 2)
        fx = evaluate(spec, x)
        coop = (x.mask & ((1 << 8) - 1)).bit_count()
        b = spec.block_width
        assert all(fx[2 * i] + fx[2 * i + 1] == 2 * coop + b for i in range(spec.m_prime))

    @given(bitstrings(12))
    def test_ojzj_plateau_and_valley(self, x):
        spec = BenchmarkSpec("ojzj", 12, 2, k=2)
        fx = evaluate(spec, x)
        b, k = spec.block_width, spec.k
        for i in range(spec.m_prime):
            ones = sum(x.bit(j) for j in range(i * b + 1, (i + 1) * b + 1))
            if ones <= b - k or ones == b:
                assert fx[2 * i + 1] == ones + k
            else:
                assert fx[2 * i + 1] < k

    @given(bitstrings(12))
    def test_lotz_pairs_bounded_by_block(self, x):
        spec = BenchmarkSpec("lotz", 12, 2)
        fx = evaluate(spec, x)
        b = spec.block_width
        for i in range(spec.m_prime):
            assert 0 <= fx[2 * i] <= b and 0 <= fx[2 * i + 1] <= b
            assert fx[2 * i] + fx[2 * i + 1] <= b or fx[2 * i] + fx[2 * i + 1] == b


ORACLE_SPECS = [
    BenchmarkSpec("omm", 8, 2),
    BenchmarkSpec("omm", 9, 3),
    BenchmarkSpec("cocz", 8, 1),
    BenchmarkSpec("lotz", 8, 2),
    BenchmarkSpec("lotz", 6, 1),
    BenchmarkSpec("ojzj", 8, 2, k=2),
    BenchmarkSpec("ojzj", 10, 1, k=3),
]


class TestFronts:
    def test_omm_size_example(self):
        assert pareto_front(BenchmarkSpec("omm", 8, 2)).size == 25

    def test_ojzj_size_example(self):
        assert pareto_front(BenchmarkSpec("ojzj", 8, 2, k=2)).size == (4 - 4 + 3) ** 2 == 9

    def test_bi_objective_omm(self):
        for n in (2, 5, 9):
            assert front_size(BenchmarkSpec("omm", n, 1)) == n + 1

    def test_front_values_mutually_non_dominating(self):
        for spec in ORACLE_SPECS:
            values = list(iter_front_values(spec))
            assert len(values) == front_size(spec)
            for u in values[:50]:
                assert not any(strictly_dominates(v, u) for v in values)

    @pytest.mark.parametrize("spec", ORACLE_SPECS, ids=str)
    def test_closed_form_equals_brute_force(self, spec):
        assert pareto_front(spec).front_values == brute_force_front(spec).front_values

    def test_lotz_brute_force_small(self):
        spec = BenchmarkSpec("lotz", 4, 1)
        desc = brute_force_front(spec)
        assert desc.size == 5
        assert desc.front_values == {(4, 0), (3, 1), (2, 2), (1, 3), (0, 4)}
        # exact antichain for the bi-objective case meets the closed-form bound
        assert desc.max_incomparable == 5 == max_incomparable(spec)

    def test_lotz_antichain_between_front_and_bound(self):
        # incomparable sets genuinely exceed the front from block width 4 on
        spec = BenchmarkSpec("lotz", 8, 2)
        desc = brute_force_front(spec)
        assert front_size(spec) < desc.max_incomparable <= max_incomparable(spec)
        assert desc.max_incomparable == 30

    def test_ojzj_front_size_n6(self):
        assert brute_force_front(BenchmarkSpec("ojzj", 6, 1, k=2)).size == 6 - 4 + 3

    def test_front_cap(self):
        with pytest.raises(CapacityError):
            pareto_front(BenchmarkSpec("omm", 8, 2), cap=10)

    def test_brute_force_cap(self):
        with pytest.raises(CapacityError):
            brute_force_front(BenchmarkSpec("omm", 26, 2))


class TestCoverage:
    def test_full_front_covered(self):
        spec = BenchmarkSpec("omm", 4, 2)
        front = set(iter_front_values(spec))
        assert is_covered(spec, front)
        front.pop()
        assert not is_covered(spec, front)

    def test_tiny_omm(self):
        spec = BenchmarkSpec("omm", 2, 1)
        assert is_covered(spec, {(2, 0), (1, 1), (0, 2)})

    @pytest.mark.parametrize("spec", ORACLE_SPECS, ids=str)
    def test_membership_test_matches_front_set(self, spec):
        front = set(iter_front_values(spec))
        seen = set()
        for mask in range(0, 1 << spec.n, 7):
            seen.add(evaluate(spec, BitString(spec.n, mask)))
        for v in seen:
            assert is_front_value(spec, v) == (v in front)


class TestMilestones:
    def test_omm_corner_count(self):
        sets = milestone_sets(BenchmarkSpec("omm", 8, 2))
        assert len(sets.corners) == 4
        assert sets.cliffs is None

    def test_cocz_corners_on_front(self):
        spec = BenchmarkSpec("cocz", 8, 1)
        sets = milestone_sets(spec)
        assert len(sets.corners) == 2
        assert sets.corners <= set(iter_front_values(spec))

    def test_ojzj_set_sizes(self):
        sets = milestone_sets(BenchmarkSpec("ojzj", 12, 2, k=2))
        assert len(sets.cliffs) == 4
        assert len(sets.corners) == 16
        assert sets.cliffs <= sets.corners

    def test_ojzj_single_block(self):
        sets = milestone_sets(BenchmarkSpec("ojzj", 12, 1, k=2))
        assert len(sets.corners) == 4

    def test_ojzj_degenerate_half_width_jump(self):
        # k = b/2 collapses the valley edges onto one value per block
        sets = milestone_sets(BenchmarkSpec("ojzj", 8, 2, k=2))
        assert len(sets.cliffs) == 1
        assert len(sets.corners) == 9

    def test_milestone_values_are_front_values(self):
        spec = BenchmarkSpec("ojzj", 12, 2, k=2)
        front = set(iter_front_values(spec))
        sets = milestone_sets(spec)
        assert sets.corners <= front and sets.cliffs <= front

    def test_lotz_rejected(self):
        with pytest.raises(ValueError):
            milestone_sets(BenchmarkSpec("lotz", 8, 2))


class TestClosedForms:
    def test_sizes_match_formulas(self):
        assert front_size(BenchmarkSpec("omm", 12, 3)) == (12 // 3 + 1) ** 3
        assert front_size(BenchmarkSpec("cocz", 16, 2)) == (16 // 4 + 1) ** 2
        assert front_size(BenchmarkSpec("lotz", 12, 3)) == (12 // 3 + 1) ** 3
        assert front_size(BenchmarkSpec("ojzj", 12, 2, k=2)) == (6 - 4 + 3) ** 2

    def test_lotz_incomparable_bound(self):
        assert max_incomparable(BenchmarkSpec("lotz", 12, 3)) == 5 ** 5

    def test_f_max(self):
        assert BenchmarkSpec("omm", 12, 3).f_max == 4
        assert BenchmarkSpec("cocz", 16, 2).f_max == 8 + 4
        assert BenchmarkSpec("lotz", 12, 3).f_max == 4
        assert BenchmarkSpec("ojzj", 12, 2, k=2).f_max == 8
