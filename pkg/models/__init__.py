"""Models package initialization"""
from models.constructors import MatroidSpec, SpecKind, build_matroid
from models.matroid import MultiplicityMatroid, check_arithmetic_axioms, check_matroid_axioms
from models.poly_engine import LaurentPoly, Monomial, VarId, canonical_string, parse_poly
from models.reports import IdentityId, IdentityReport

__all__ = [
    'MatroidSpec',
    'SpecKind',
    'build_matroid',
    'MultiplicityMatroid',
    'check_arithmetic_axioms',
    'check_matroid_axioms',
    'LaurentPoly',
    'Monomial',
    'VarId',
    'canonical_string',
    'parse_poly',
    'IdentityId',
    'IdentityReport'
]
