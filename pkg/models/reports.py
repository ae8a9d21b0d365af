"""
Verdicts of identity checks
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

from models.poly_engine import LaurentPoly, VarId, poly_eq


class IdentityId(str, Enum):
    PRODUCT_MULTIVARIATE = 'product_multivariate'
    PRODUCT_UNIVARIATE = 'product_univariate'
    SINGLE_MULTIVARIATE = 'single_multivariate'
    SINGLE_UNIVARIATE = 'single_univariate'
    DUPONT_ABCD = 'dupont_abcd'
    BACKMAN_LENZ = 'backman_lenz'
    MIXED_TUTTE = 'mixed_tutte'
    CHAR_CONVOLUTION = 'char_convolution'
    CHAR_PRODUCT = 'char_product'
    CLASSICAL_KOOK = 'classical_kook'
    Z_TO_ARITH_TUTTE = 'z_to_arith_tutte'
    CHI_ARITHMETIC = 'chi_arithmetic'
    CHI_CLASSICAL = 'chi_classical'
    DUPONT_SUBSTITUTION = 'dupont_substitution'


class VerificationMode(str, Enum):
    SYMBOLIC = 'symbolic'
    PROBABILISTIC = 'probabilistic'


@dataclass(frozen=True)
class SampleCheck:
    """Both sides of an identity evaluated at one rational point"""
    point: Tuple[Tuple[VarId, Fraction], ...]
    lhs: Fraction
    rhs_first: Fraction
    rhs_second: Optional[Fraction] = None

    @property
    def agrees(self) -> bool:
        return self.lhs == self.rhs_first and (
            self.rhs_second is None or self.lhs == self.rhs_second
        )


@dataclass(frozen=True)
class IdentityReport:
    """
    Outcome of one identity check

    In symbolic mode all three polynomials are present and equal is exact
    polynomial equality. In probabilistic mode the right sides are never
    expanded: rhs_first and rhs_second are None and equal means every
    sampled point agreed.
    """
    identity_id: IdentityId
    lhs: LaurentPoly
    rhs_first: Optional[LaurentPoly]
    rhs_second: Optional[LaurentPoly]
    equal: bool
    millis: float = 0.0
    mode: VerificationMode = VerificationMode.SYMBOLIC
    samples: Tuple[SampleCheck, ...] = ()

    @classmethod
    def compare(cls, identity_id: IdentityId, lhs: LaurentPoly, rhs_first: LaurentPoly,
                rhs_second: Optional[LaurentPoly] = None, millis: float = 0.0) -> 'IdentityReport':
        equal = poly_eq(lhs, rhs_first) and (rhs_second is None or poly_eq(lhs, rhs_second))
        return cls(identity_id, lhs, rhs_first, rhs_second, equal, millis)

    @classmethod
    def from_samples(cls, identity_id: IdentityId, lhs: LaurentPoly,
                     samples: Tuple[SampleCheck, ...], millis: float = 0.0) -> 'IdentityReport':
        equal = all(sample.agrees for sample in samples)
        return cls(identity_id, lhs, None, None, equal, millis,
                   VerificationMode.PROBABILISTIC, tuple(samples))
