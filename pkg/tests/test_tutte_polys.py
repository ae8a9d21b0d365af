"""
Tests for Tutte, arithmetic Tutte, Z and characteristic polynomials
"""
import pytest
import sys
import os
from fractions import Fraction

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.constructors import from_integer_matrix, graphic, uniform
from models.poly_engine import (
    LAMBDA,
    P,
    X,
    Y,
    Family,
    Monomial,
    evaluate,
    parse_poly,
    substitute_monomial,
    v,
)
from models.reports import IdentityId
from models.tutte_polys import (
    PolyKind,
    PolyRequest,
    arithmetic_tutte,
    characteristic,
    check_chi_relations,
    check_dupont_substitution,
    check_Z_to_M_relation,
    classical_tutte,
    compute_poly,
    multivariate_Z,
)


@pytest.fixture
def two():
    """The 1x1 integer matrix (2)"""
    return from_integer_matrix([[2]])


@pytest.fixture
def triangle():
    return graphic(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def diagonal():
    return from_integer_matrix([[2, 0], [0, 3]])


class TestPolynomials:
    """Test the subset-sum definitions on small matroids"""

    def test_matrix_two(self, two):
        assert multivariate_Z(two) == parse_poly('1 + 2*q^-1*v0')
        assert arithmetic_tutte(two) == parse_poly('1 + x')
        assert characteristic(two) == parse_poly('-2 + l')
        assert classical_tutte(two) == parse_poly('x')

    def test_empty_matroid(self):
        assert multivariate_Z(uniform(0, 0)) == 1
        assert arithmetic_tutte(uniform(0, 0)) == 1

    def test_u12(self):
        U = uniform(1, 2)
        assert multivariate_Z(U) == parse_poly('1 + q^-1*v0 + q^-1*v1 + q^-1*v0*v1')
        assert classical_tutte(U) == parse_poly('x + y')

    def test_coloop_and_loop(self):
        assert arithmetic_tutte(uniform(1, 1)) == parse_poly('x')
        assert classical_tutte(uniform(0, 1)) == parse_poly('y')
        assert characteristic(uniform(1, 1)) == parse_poly('-1 + l')

    def test_triangle(self, triangle):
        assert classical_tutte(triangle) == parse_poly('x^2 + x + y')
        assert characteristic(triangle) == parse_poly('l^2 - 3*l + 2')

    def test_collapsed_Z(self):
        Z = multivariate_Z(uniform(1, 2), collapsed=True)
        assert Z == parse_poly('1 + 2*q^-1*v + q^-1*v^2')

    def test_variable_families(self, two):
        Z = multivariate_Z(two, qvar=P, vfamily=Family.U)
        assert Z == parse_poly('1 + 2*p^-1*u0')

    def test_minor_keeps_labels(self, diagonal):
        Z = multivariate_Z(diagonal.restriction(0b10))
        assert Z == parse_poly('1 + 3*q^-1*v1')

    def test_negated_elements(self, diagonal):
        """sign -1 is v_e -> -v_e applied to every element"""
        expected = multivariate_Z(diagonal)
        for e in range(diagonal.n):
            expected = substitute_monomial(expected, v(e), -1, Monomial.of(v(e)))
        assert multivariate_Z(diagonal, sign=-1) == expected

    def test_trivial_multiplicity_collapse(self, triangle):
        assert arithmetic_tutte(triangle) == classical_tutte(triangle)

    def test_degree_bounds(self, triangle, diagonal):
        T = classical_tutte(triangle)
        assert T.degree_in(X) == 2
        assert T.degree_in(Y) == 1
        chi = characteristic(diagonal)
        assert chi.degree_in(LAMBDA) == 2
        assert chi.coefficient(Monomial.of(LAMBDA, 2)) == diagonal.mult_of(0)

    def test_value_at_two_two(self, diagonal):
        """Every prefactor is 1 at x = y = 2"""
        value = evaluate(arithmetic_tutte(diagonal), {X: Fraction(2), Y: Fraction(2)})
        assert value == sum(diagonal.mult)

    def test_compute_poly(self, two):
        assert compute_poly(two, PolyRequest(PolyKind.ARITHMETIC_TUTTE)) == parse_poly('1 + x')
        assert compute_poly(two, PolyRequest(PolyKind.SOKAL_Z)) == parse_poly('1 + q^-1*v0')
        request = PolyRequest(PolyKind.ARITHMETIC_Z, collapsed=True)
        assert compute_poly(two, request) == parse_poly('1 + 2*q^-1*v')

    def test_request_validation(self):
        with pytest.raises(ValueError):
            PolyRequest(PolyKind.TUTTE, qvar=P)
        with pytest.raises(ValueError):
            PolyRequest(PolyKind.SOKAL_Z, qvar=X)


class TestRelations:
    """Test the change-of-variable relations"""

    @pytest.fixture(params=['two', 'triangle', 'diagonal', 'u12', 'empty', 'table'])
    def matroid(self, request):
        return {
            'two': lambda: from_integer_matrix([[2]]),
            'triangle': lambda: graphic(3, [(0, 1), (1, 2), (0, 2)]),
            'diagonal': lambda: from_integer_matrix([[2, 0], [0, 3], [1, 1]]),
            'u12': lambda: uniform(1, 2),
            'empty': lambda: uniform(0, 0),
            'table': lambda: uniform(2, 3, [3, 1, 4, 1, 5, 9, 2, 6]),
        }[request.param]()

    def test_Z_to_arithmetic_tutte(self, matroid):
        report = check_Z_to_M_relation(matroid)
        assert report.identity_id == IdentityId.Z_TO_ARITH_TUTTE
        assert report.equal

    def test_chi_relations(self, matroid):
        arithmetic, classical = check_chi_relations(matroid)
        assert arithmetic.identity_id == IdentityId.CHI_ARITHMETIC
        assert classical.identity_id == IdentityId.CHI_CLASSICAL
        assert arithmetic.equal and classical.equal

    def test_dupont_substitution(self, matroid):
        assert check_dupont_substitution(matroid).equal

    def test_relation_values(self, two):
        report = check_Z_to_M_relation(two)
        assert report.lhs == parse_poly('1 + x')
        assert report.rhs_first == report.lhs
        arithmetic, _ = check_chi_relations(two)
        assert arithmetic.rhs_first == parse_poly('l - 2')
        dupont = check_dupont_substitution(two)
        assert dupont.lhs == parse_poly('2 + a*b')
        assert dupont.equal
