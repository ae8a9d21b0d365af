"""
Tests for multiplicity matroids, minors and axiom checks
"""
import pytest
import random
import sys
import os

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.constructors import from_integer_matrix
from models.errors import NonpositiveMultiplicity, UnderlyingMatroidMismatch
from models.matroid import (
    MultiplicityMatroid,
    check_arithmetic_axioms,
    check_matroid_axioms,
    elements_of,
    embed_masks,
    mask_of,
)


@pytest.fixture
def diagonal():
    """Columns (2, 0) and (0, 3)"""
    return MultiplicityMatroid([0, 1, 1, 2], [1, 2, 3, 6])


@pytest.fixture
def u12():
    return MultiplicityMatroid([0, 1, 1, 1], [1, 1, 1, 1])


class TestSubsets:
    """Test bitmask helpers"""

    def test_mask_round_trip(self):
        assert mask_of([0, 2]) == 5
        assert elements_of(5) == [0, 2]

    def test_embed_masks(self):
        assert embed_masks([0, 2]).tolist() == [0, 1, 4, 5]
        assert embed_masks([]).tolist() == [0]


class TestMultiplicityMatroid:
    """Test construction and minors"""

    def test_basic_properties(self, diagonal):
        assert diagonal.n == 2
        assert diagonal.full_rank == 2
        assert diagonal.mult_of(3) == 6
        assert not diagonal.is_trivial

    def test_tables_are_read_only(self, diagonal):
        with pytest.raises(ValueError):
            diagonal.rank[0] = 1
        with pytest.raises(AttributeError):
            diagonal.n = 3

    def test_nonpositive_multiplicity(self):
        with pytest.raises(NonpositiveMultiplicity):
            MultiplicityMatroid([0, 1], [1, 0])

    def test_table_length_must_be_power_of_two(self):
        with pytest.raises(ValueError):
            MultiplicityMatroid([0, 1, 1], [1, 1, 1])

    def test_restriction(self, diagonal):
        """M|{1} keeps element label 1"""
        minor = diagonal.restriction(0b10)
        assert minor.n == 1
        assert minor.rank.tolist() == [0, 1]
        assert minor.mult == (1, 3)
        assert minor.element_labels == (1,)

    def test_contraction(self, diagonal):
        """M/{0}: rk(A + 0) - rk({0}) and m(A + 0)"""
        minor = diagonal.contraction(0b01)
        assert minor.rank.tolist() == [0, 1]
        assert minor.mult == (2, 6)
        assert minor.element_labels == (1,)

    def test_contraction_by_everything(self, diagonal):
        """The empty minor keeps m(X) as its only multiplicity"""
        minor = diagonal.contraction(0b11)
        assert minor.n == 0
        assert minor.mult == (6,)

    def test_dual_rank(self, u12):
        assert u12.dual_rank(0b01) == 1
        assert u12.dual_rank(0b11) == 1
        assert u12.dual_rank_table().tolist() == [0, 1, 1, 1]

    def test_product(self, diagonal):
        product = diagonal.product(diagonal)
        assert product.mult == (1, 4, 9, 36)
        assert product.same_underlying(diagonal)

    def test_product_mismatch(self, diagonal, u12):
        with pytest.raises(UnderlyingMatroidMismatch):
            diagonal.product(u12)

    def test_trivialized(self, diagonal):
        trivial = diagonal.trivialized()
        assert trivial.is_trivial
        assert trivial.same_underlying(diagonal)
        assert trivial != diagonal


class TestMatroidAxioms:
    """Test rank-function axioms"""

    def test_valid(self, u12):
        assert check_matroid_axioms(u12.rank).ok

    def test_normalization(self):
        result = check_matroid_axioms([1, 1])
        assert not result.ok
        assert result.counterexample == (0,)

    def test_unit_increase(self):
        result = check_matroid_axioms([0, 2])
        assert result.violation == 'unit increase'
        assert result.counterexample == (0, 0)

    def test_submodularity(self):
        """rk({0,1}) + rk(empty) > rk({0}) + rk({1})"""
        result = check_matroid_axioms([0, 0, 0, 1])
        assert result.violation == 'submodularity'
        assert result.counterexample == (1, 2)


class TestArithmeticAxioms:
    """Test the four arithmetic-matroid axioms"""

    def test_representable_matroid(self, diagonal):
        assert check_arithmetic_axioms(diagonal).all_hold

    def test_trivial_multiplicity(self, u12):
        assert check_arithmetic_axioms(u12).all_hold

    def test_broken_divisibility(self):
        """m(empty) = 2, m({0}) = 3 on U_{1,1} fails axiom 1 at (empty, 0)"""
        report = check_arithmetic_axioms(MultiplicityMatroid([0, 1], [2, 3]))
        assert report.matroid_ok
        assert not report.axiom1.holds
        assert report.axiom1.counterexample == (0, 0)
        assert not report.all_hold

    def test_broken_molecule(self):
        """A coloop 0 and a loop 1 need m(empty) m(X) = m({0}) m({1})"""
        report = check_arithmetic_axioms(MultiplicityMatroid([0, 1, 0, 1], [1, 2, 1, 1]))
        assert report.axiom1.holds
        assert not report.axiom2.holds
        assert report.axiom2.counterexample == (0, 3, 1, 2)

    def test_failing_alternating_sum(self):
        """A loop with m(empty) = 1, m({0}) = 2 gives 1 - 2 < 0 on (empty, {0})"""
        report = check_arithmetic_axioms(MultiplicityMatroid([0, 0], [1, 2]))
        assert not report.axiom3.holds
        assert report.axiom3.counterexample == (0, 1)

    def test_failing_dual_alternating_sum(self):
        """A coloop with m = (2, 1) fails the same sum on the dual"""
        report = check_arithmetic_axioms(MultiplicityMatroid([0, 1], [2, 1]))
        assert report.axiom3.holds
        assert not report.axiom4.holds
        assert report.axiom4.counterexample == (0, 1)
        assert not report.all_hold


def local_mask(minor, labels):
    """Mask of the given original labels in a minor's own indexing"""
    return mask_of(i for i, label in enumerate(minor.element_labels) if label in labels)


@pytest.fixture
def four_vectors():
    """Four integer vectors of height 3"""
    return from_integer_matrix([[1, 0, 2], [0, 3, 1], [2, 2, 0], [1, 1, 1]])


@pytest.fixture
def rng():
    return random.Random(7)


class TestMinorLaws:
    """Minors, duals and products on every pair of disjoint subsets"""

    def test_restriction_and_contraction_commute(self, four_vectors):
        M = four_vectors
        for t in range(1 << M.n):
            for s in range(1 << M.n):
                if s & t:
                    continue
                contracted = M.contraction(t)
                left = contracted.restriction(local_mask(contracted, set(elements_of(s))))
                restricted = M.restriction(s | t)
                right = restricted.contraction(local_mask(restricted, set(elements_of(t))))
                assert left == right, (s, t)

    def test_rank_splits_over_contraction(self, four_vectors):
        M = four_vectors
        for t in range(1 << M.n):
            assert M.full_rank == M.rank_of(t) + M.contraction(t).full_rank

    def test_minor_labels(self, four_vectors):
        minor = four_vectors.contraction(mask_of([1])).restriction(mask_of([0, 2]))
        assert minor.element_labels == (0, 3)

    def test_dual_rank_is_a_matroid(self, four_vectors, u12, diagonal):
        for M in (four_vectors, u12, diagonal):
            assert check_matroid_axioms(M.dual_rank_table()).ok

    def test_product_laws(self, four_vectors, rng):
        M = four_vectors
        size = 1 << M.n
        for _ in range(10):
            M1, M2, M3 = (M.with_multiplicity([rng.randint(1, 9) for _ in range(size)])
                          for _ in range(3))
            assert M1.product(M2) == M2.product(M1)
            assert M1.product(M2).product(M3) == M1.product(M2.product(M3))
            assert M1.product(M.trivialized()) == M1
