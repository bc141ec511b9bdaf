import numpy as np
import pytest
from hypothesis import given, strategies as st

from moea_lab.core import (
    BitString,
    FixedPopulation,
    ParetoArchive,
    block_ones,
    dominates,
    random_bitstring,
    strictly_dominates,
)

def vec(m=4, hi=5):
    return st.tuples(*[st.integers(0, hi) for _ in range(m)])


class TestDomination:
    def test_reflexive(self):
        assert dominates((2, 0, 2, 0), (2, 0, 2, 0))

    def test_componentwise(self):
        assert dominates((3, 1), (2, 1))
        assert not dominates((2, 1), (3, 1))

    def test_incomparable_pair(self):
        assert not dominates((2, 0), (1, 1))
        assert not dominates((1, 1), (2, 0))

    def test_strict(self):
        assert strictly_dominates((3, 1), (2, 1))
        assert not strictly_dominates((2, 1), (2, 1))
        assert not strictly_dominates((2, 0), (1, 1))

    @pytest.mark.parametrize("fn", [dominates, strictly_dominates])
    def test_length_mismatch(self, fn):
        with pytest.raises(ValueError):
            fn((1, 2), (1, 2, 3))

    @given(vec(), vec(), vec())
    def test_partial_order(self, u, v, w):
        # reflexivity, antisymmetry up to equality, transitivity
        assert dominates(u, u)
        assert not strictly_dominates(u, u)
        if dominates(u, v) and dominates(v, u):
            assert u == v
        if dominates(u, v) and dominates(v, w):
            assert dominates(u, w)
        if strictly_dominates(u, v) and strictly_dominates(v, w):
            assert strictly_dominates(u, w)


class TestBitString:
    def test_string_roundtrip(self):
        x = BitString.from_string("110010")
        assert x.n == 6
        assert x.to_string() == "110010"
        assert [x.bit(j) for j in range(1, 7)] == [1, 1, 0, 0, 1, 0]

    def test_count_ones(self):
        assert BitString.from_string("110010").count_ones() == 3

    def test_validation(self):
        with pytest.raises(ValueError):
            BitString(0)
        with pytest.raises(ValueError):
            BitString(2, mask=4)
        with pytest.raises(ValueError):
            BitString.from_bits([0, 2])
        with pytest.raises(ValueError):
            BitString(3).bit(4)

    def test_random_bitstring_in_range(self):
        rng = np.random.default_rng(0)
        for n in (1, 7, 8, 9, 64, 65):
            x = random_bitstring(rng, n)
            assert x.n == n and 0 <= x.mask < (1 << n)

    def test_random_bitstring_bit_balance(self):
        rng = np.random.default_rng(1)
        n, reps = 16, 4000
        counts = np.zeros(n)
        for _ in range(reps):
            x = random_bitstring(rng, n)
            counts += [(x.mask >> i) & 1 for i in range(n)]
        # each bit is Bernoulli(1/2); 4 sigma band
        sigma = (reps * 0.25) ** 0.5
        assert np.all(np.abs(counts - reps / 2) < 4 * sigma)


class TestBlockOnes:
    def test_hand_counts(self):
        x = BitString.from_string("110010")
        assert block_ones(x, 1, 2) == 2
        assert block_ones(x, 2, 2) == 1

    def test_all_zero(self):
        x = BitString.from_string("000000")
        assert all(block_ones(x, i, 3) == 0 for i in (1, 2, 3))

    def test_errors(self):
        x = BitString.from_string("110010")
        with pytest.raises(ValueError):
            block_ones(x, 3, 2)
        with pytest.raises(ValueError):
            block_ones(x, 0, 2)
        with pytest.raises(ValueError):
            block_ones(x, 1, 4)  # 6 % 4 != 0


def _archive_with(*values):
    archive = ParetoArchive()
    for i, v in enumerate(values):
        archive.insert(BitString(8, i), v)
    return archive


class TestParetoArchive:
    def test_incomparable_coexist(self):
        archive = _archive_with((1, 1))
        assert archive.insert(BitString(8, 99), (2, 0))
        assert sorted(archive.values()) == [(1, 1), (2, 0)]

    def test_weak_domination_evicts(self):
        archive = _archive_with((1, 1))
        assert archive.insert(BitString(8, 99), (2, 1))
        assert archive.values() == [(2, 1)]

    def test_equal_value_keeps_new_individual(self):
        archive = _archive_with((1, 1))
        newcomer = BitString(8, 99)
        assert archive.insert(newcomer, (1, 1))
        assert archive.values() == [(1, 1)]
        assert archive.get((1, 1)) is newcomer

    def test_dominated_rejected(self):
        archive = _archive_with((2, 2))
        assert not archive.insert(BitString(8, 99), (1, 1))
        assert archive.values() == [(2, 2)]

    def test_sample_empty_errors(self):
        with pytest.raises(ValueError):
            ParetoArchive().sample(np.random.default_rng(0))

    def test_sample_returns_entries(self):
        archive = _archive_with((1, 1), (2, 0), (0, 2))
        rng = np.random.default_rng(3)
        seen = {archive.sample(rng)[1] for _ in range(60)}
        assert seen == {(1, 1), (2, 0), (0, 2)}

    @given(st.lists(vec(m=3, hi=4), min_size=1, max_size=60))
    def test_invariants_under_random_insertions(self, values):
        archive = ParetoArchive()
        for i, v in enumerate(values):
            archive.insert(BitString(4, i % 16), v)
        kept = archive.values()
        assert len(set(kept)) == len(kept)
        for u in kept:
            assert not any(strictly_dominates(v, u) for v in kept if v is not u)

    @given(st.lists(vec(m=3, hi=4), min_size=1, max_size=200))
    def test_matches_brute_force_non_dominated_subset(self, values):
        archive = ParetoArchive()
        last_writer = {}
        for i, v in enumerate(values):
            archive.insert(BitString(16, i % 500), v)
            last_writer[v] = i % 500
        expected = {
            v for v in set(values)
            if not any(strictly_dominates(u, v) for u in values)
        }
        assert set(archive.values()) == expected
        # representative per value is the last-inserted individual
        for v in expected:
            assert archive.get(v).mask == last_writer[v]


class TestFixedPopulation:
    def test_size(self):
        pop = FixedPopulation([BitString(4, 1)] * 3, [(1, 3)] * 3)
        assert pop.mu == 3 and len(pop) == 3

    def test_validation(self):
        with pytest.raises(ValueError):
            FixedPopulation([], [])
        with pytest.raises(ValueError):
            FixedPopulation([BitString(4, 1)], [])
