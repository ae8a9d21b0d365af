"""
Convolution identities: both sides computed independently and compared

Every right-hand side is a sum over subsets T of products of minor
polynomials. It is collected as a list of factor tuples and then either
expanded into one polynomial (symbolic mode) or evaluated at random exact
rational points (probabilistic mode, only for ground sets larger than
verification.symbolic_max_n when fast_mode is on).
"""
import logging
import random
import time
from fractions import Fraction
from typing import List, Optional, Set, Tuple

from models.matroid import MultiplicityMatroid, elements_of, popcount
from models.poly_engine import (
    LAMBDA,
    P,
    Q,
    X,
    XI,
    Y,
    A as VAR_A,
    B as VAR_B,
    C as VAR_C,
    D as VAR_D,
    Family,
    LaurentPoly,
    Monomial,
    VarId,
    collapse_elements,
    evaluate,
    partial_eval,
    poly_sum,
    substitute_monomial,
    substitute_poly,
    u,
    v,
)
from models.reports import IdentityId, IdentityReport, SampleCheck
from models.settings import get_settings
from models.tutte_polys import arithmetic_tutte, characteristic, multivariate_Z

logger = logging.getLogger(__name__)


class _Convolution:
    """A sum of products of factor polynomials, kept unexpanded"""

    def __init__(self, collapse: bool = False):
        self.collapse = collapse
        self.terms: List[Tuple[LaurentPoly, ...]] = []

    def add(self, *factors: LaurentPoly) -> None:
        if any(f.is_zero for f in factors):
            return
        if self.collapse:
            factors = tuple(collapse_elements(f) for f in factors)
        self.terms.append(factors)

    def variables(self) -> Set[VarId]:
        return {var for factors in self.terms for f in factors for var in f.variables()}

    def expand(self) -> LaurentPoly:
        def products():
            for factors in self.terms:
                product = factors[0]
                for f in factors[1:]:
                    product = product * f
                yield product

        return poly_sum(products())

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for factors in self.terms:
            value = Fraction(1)
            for f in factors:
                value *= evaluate(f, point)
            total += value
        return total


def _tutte_at(T: LaurentPoly, x_value: LaurentPoly, y_value: LaurentPoly) -> LaurentPoly:
    return substitute_poly(substitute_poly(T, X, x_value), Y, y_value)


class ConvolutionVerifier:
    """
    Checks every convolution identity on given multiplicity matroids
    """

    def __init__(self, config_path: Optional[str] = None, fast_mode: Optional[bool] = None):
        """
        Args:
            config_path: settings file, the packaged config/toolkit.yaml by default
            fast_mode: override verification.fast_mode from the settings
        """
        verification = get_settings(config_path).get('verification', {})
        self.symbolic_max_n = int(verification.get('symbolic_max_n', 10))
        self.fast_mode = bool(verification.get('fast_mode', True)) if fast_mode is None else fast_mode
        self.sample_points = int(verification.get('sample_points', 3))
        self.seed = int(verification.get('seed', 0))
        self.numerator_range = int(verification.get('numerator_range', 9))

        logger.info(
            f"Convolution verifier initialized with symbolic_max_n={self.symbolic_max_n}, "
            f"fast_mode={self.fast_mode}, sample_points={self.sample_points}"
        )

    def samples_for(self, n: int) -> bool:
        return self.fast_mode and n > self.symbolic_max_n

    def _random_rational(self, rng: random.Random) -> Fraction:
        bound = self.numerator_range
        numerator = 0
        while numerator == 0:
            numerator = rng.randint(-bound, bound)
        return Fraction(numerator, rng.randint(1, bound))

    def _sample(self, lhs: LaurentPoly, first: _Convolution,
                second: Optional[_Convolution]) -> Tuple[SampleCheck, ...]:
        rng = random.Random(self.seed)
        variables = set(lhs.variables()) | first.variables()
        if second is not None:
            variables |= second.variables()
        samples = []
        for _ in range(self.sample_points):
            point = {var: self._random_rational(rng) for var in sorted(variables)}
            samples.append(SampleCheck(
                point=tuple(point.items()),
                lhs=evaluate(lhs, point),
                rhs_first=first.evaluate(point),
                rhs_second=second.evaluate(point) if second is not None else None,
            ))
        return tuple(samples)

    def _finish(self, identity_id: IdentityId, n: int, lhs: LaurentPoly, first: _Convolution,
                second: Optional[_Convolution], started: float) -> IdentityReport:
        if self.samples_for(n):
            samples = self._sample(lhs, first, second)
            millis = (time.perf_counter() - started) * 1000
            report = IdentityReport.from_samples(identity_id, lhs, samples, millis)
        else:
            rhs_first = first.expand()
            rhs_second = second.expand() if second is not None else None
            millis = (time.perf_counter() - started) * 1000
            report = IdentityReport.compare(identity_id, lhs, rhs_first, rhs_second, millis)
        logger.debug(
            f"{identity_id.value} on n={n}: equal={report.equal} "
            f"({report.mode.value}, {millis:.1f} ms)"
        )
        return report

    # Z(pq, uv) = sum_T p^{-rk(T)} prod_{e in T}(-u_e) Z_{M1|T}(q, -v) Z_{M2/T}(p, u)

    def _product_rhs(self, M1: MultiplicityMatroid, M2: MultiplicityMatroid,
                     collapse: bool) -> _Convolution:
        conv = _Convolution(collapse)
        labels = M1.element_labels
        for mask in range(1 << M1.n):
            powers = {P: -M1.rank_of(mask)}
            for e in elements_of(mask):
                powers[u(labels[e])] = 1
            prefactor = LaurentPoly.from_powers(powers, -1 if popcount(mask) & 1 else 1)
            conv.add(
                prefactor,
                multivariate_Z(M1.restriction(mask), Q, Family.V, sign=-1),
                multivariate_Z(M2.contraction(mask), P, Family.U),
            )
        return conv

    def _verify_product(self, M1: MultiplicityMatroid, M2: MultiplicityMatroid,
                        collapse: bool, identity_id: IdentityId) -> IdentityReport:
        started = time.perf_counter()
        M = M1.product(M2)
        lhs = substitute_monomial(multivariate_Z(M), Q, 1, Monomial({P: 1, Q: 1}))
        for label in M.element_labels:
            lhs = substitute_monomial(lhs, v(label), 1, Monomial({u(label): 1, v(label): 1}))
        if collapse:
            lhs = collapse_elements(lhs)
        first = self._product_rhs(M1, M2, collapse)
        second = self._product_rhs(M2, M1, collapse)
        return self._finish(identity_id, M.n, lhs, first, second, started)

    def verify_product_multivariate(self, M1: MultiplicityMatroid,
                                    M2: MultiplicityMatroid) -> IdentityReport:
        return self._verify_product(M1, M2, False, IdentityId.PRODUCT_MULTIVARIATE)

    def verify_product_univariate(self, M1: MultiplicityMatroid,
                                  M2: MultiplicityMatroid) -> IdentityReport:
        return self._verify_product(M1, M2, True, IdentityId.PRODUCT_UNIVARIATE)

    def verify_single_multivariate(self, M: MultiplicityMatroid) -> IdentityReport:
        """The product theorem with a trivial second multiplicity"""
        return self._verify_product(M, M.trivialized(), False, IdentityId.SINGLE_MULTIVARIATE)

    def verify_single_univariate(self, M: MultiplicityMatroid) -> IdentityReport:
        return self._verify_product(M, M.trivialized(), True, IdentityId.SINGLE_UNIVARIATE)

    # M(1+ab, 1+cd) = sum_A a^{rk(X)-rk(A)} (-d)^{|A|-rk(A)} M_{M1|A}(1-a, 1-c) M_{M2/A}(1+b, 1+d)

    def _dupont_rhs(self, M1: MultiplicityMatroid, M2: MultiplicityMatroid) -> _Convolution:
        one = LaurentPoly.constant(1)
        a, b, c, d = (LaurentPoly.variable(var) for var in (VAR_A, VAR_B, VAR_C, VAR_D))
        conv = _Convolution()
        top = M1.full_rank
        for mask in range(1 << M1.n):
            r = M1.rank_of(mask)
            nullity = popcount(mask) - r
            prefactor = LaurentPoly.from_powers({VAR_A: top - r, VAR_D: nullity},
                                                -1 if nullity & 1 else 1)
            conv.add(
                prefactor,
                _tutte_at(arithmetic_tutte(M1.restriction(mask)), one - a, one - c),
                _tutte_at(arithmetic_tutte(M2.contraction(mask)), one + b, one + d),
            )
        return conv

    def verify_dupont(self, M1: MultiplicityMatroid, M2: MultiplicityMatroid) -> IdentityReport:
        started = time.perf_counter()
        M = M1.product(M2)
        ab = LaurentPoly.from_powers({VAR_A: 1, VAR_B: 1})
        cd = LaurentPoly.from_powers({VAR_C: 1, VAR_D: 1})
        lhs = _tutte_at(arithmetic_tutte(M), 1 + ab, 1 + cd)
        first = self._dupont_rhs(M1, M2)
        second = self._dupont_rhs(M2, M1)
        return self._finish(IdentityId.DUPONT_ABCD, M.n, lhs, first, second, started)

    # M(x, y) = sum_A M_{M1|A}(0, y) M_{M2/A}(x, 0)

    def _corank_nullity_rhs(self, M1: MultiplicityMatroid, M2: MultiplicityMatroid) -> _Convolution:
        conv = _Convolution()
        for mask in range(1 << M1.n):
            conv.add(
                partial_eval(arithmetic_tutte(M1.restriction(mask)), X, 0),
                partial_eval(arithmetic_tutte(M2.contraction(mask)), Y, 0),
            )
        return conv

    def _verify_corank_nullity(self, M1: MultiplicityMatroid, M2: MultiplicityMatroid,
                               identity_id: IdentityId, both_orders: bool = True) -> IdentityReport:
        started = time.perf_counter()
        M = M1.product(M2)
        lhs = arithmetic_tutte(M)
        first = self._corank_nullity_rhs(M1, M2)
        second = self._corank_nullity_rhs(M2, M1) if both_orders else None
        return self._finish(identity_id, M.n, lhs, first, second, started)

    def verify_backman_lenz(self, M1: MultiplicityMatroid, M2: MultiplicityMatroid) -> IdentityReport:
        """Needs no arithmetic axioms: any positive multiplicity tables will do"""
        return self._verify_corank_nullity(M1, M2, IdentityId.BACKMAN_LENZ)

    def verify_mixed_tutte(self, M: MultiplicityMatroid) -> IdentityReport:
        return self._verify_corank_nullity(M, M.trivialized(), IdentityId.MIXED_TUTTE)

    def verify_classical_kook(self, M: MultiplicityMatroid) -> IdentityReport:
        trivial = M.trivialized()
        return self._verify_corank_nullity(trivial, trivial, IdentityId.CLASSICAL_KOOK,
                                           both_orders=False)

    # chi(l*s) = sum_A l^{rk(X)-rk(A)} chi_{M1|A}(l) chi_{M2/A}(s)

    def _char_rhs(self, M1: MultiplicityMatroid, M2: MultiplicityMatroid) -> _Convolution:
        conv = _Convolution()
        top = M1.full_rank
        for mask in range(1 << M1.n):
            conv.add(
                LaurentPoly.variable(LAMBDA, top - M1.rank_of(mask)),
                characteristic(M1.restriction(mask), LAMBDA),
                characteristic(M2.contraction(mask), XI),
            )
        return conv

    def _verify_char(self, M1: MultiplicityMatroid, M2: MultiplicityMatroid,
                     identity_id: IdentityId) -> IdentityReport:
        started = time.perf_counter()
        M = M1.product(M2)
        lhs = substitute_monomial(characteristic(M), LAMBDA, 1, Monomial({LAMBDA: 1, XI: 1}))
        first = self._char_rhs(M1, M2)
        second = self._char_rhs(M2, M1)
        return self._finish(identity_id, M.n, lhs, first, second, started)

    def verify_char_product(self, M1: MultiplicityMatroid, M2: MultiplicityMatroid) -> IdentityReport:
        return self._verify_char(M1, M2, IdentityId.CHAR_PRODUCT)

    def verify_char_convolution(self, M: MultiplicityMatroid) -> IdentityReport:
        return self._verify_char(M, M.trivialized(), IdentityId.CHAR_CONVOLUTION)

    def verify_matroid(self, M: MultiplicityMatroid) -> List[IdentityReport]:
        """Every single-matroid identity"""
        return [
            self.verify_single_multivariate(M),
            self.verify_single_univariate(M),
            self.verify_mixed_tutte(M),
            self.verify_char_convolution(M),
            self.verify_classical_kook(M),
        ]

    def verify_pair(self, M1: MultiplicityMatroid, M2: MultiplicityMatroid) -> List[IdentityReport]:
        """Every product identity"""
        return [
            self.verify_product_multivariate(M1, M2),
            self.verify_product_univariate(M1, M2),
            self.verify_dupont(M1, M2),
            self.verify_backman_lenz(M1, M2),
            self.verify_char_product(M1, M2),
        ]
