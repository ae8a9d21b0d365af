"""
Tutte-type polynomials of multiplicity matroids by direct subset sums

All sums run over the 2^n subsets of the ground set. Variables of the
multivariate forms carry the element labels of the matroid, so minors keep
the indices of their parent.
"""
import logging
import time
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple

from models.matroid import MultiplicityMatroid, elements_of, popcount_table
from models.poly_engine import (
    LAMBDA,
    P,
    Q,
    X,
    Y,
    A as VAR_A,
    B as VAR_B,
    C as VAR_C,
    D as VAR_D,
    Family,
    LaurentPoly,
    Monomial,
    VarId,
    partial_eval,
    substitute_monomial,
    substitute_poly,
)
from models.reports import IdentityId, IdentityReport

logger = logging.getLogger(__name__)


class PolyKind(str, Enum):
    SOKAL_Z = 'sokal_Z'
    ARITHMETIC_Z = 'arithmetic_Z'
    TUTTE = 'tutte'
    ARITHMETIC_TUTTE = 'arithmetic_tutte'
    CHARACTERISTIC = 'characteristic'

    @property
    def multivariate(self) -> bool:
        return self in (PolyKind.SOKAL_Z, PolyKind.ARITHMETIC_Z)


@dataclass(frozen=True)
class PolyRequest:
    """Which polynomial to compute and, for the Z forms, in which variables"""
    which: PolyKind
    qvar: VarId = Q
    vfamily: Family = Family.V
    collapsed: bool = False

    def __post_init__(self):
        if self.qvar not in (Q, P):
            raise ValueError(f"The rank variable must be q or p, got {self.qvar}")
        if self.vfamily not in (Family.V, Family.U):
            raise ValueError(f"The element variables must be v or u, got {self.vfamily.symbol}")
        custom = self.qvar != Q or self.vfamily != Family.V or self.collapsed
        if custom and not PolyKind(self.which).multivariate:
            raise ValueError(f"Variable selection only applies to the Z polynomials, not {self.which}")


def multivariate_Z(M: MultiplicityMatroid, qvar: VarId = Q, vfamily: Family = Family.V,
                   sign: int = 1, collapsed: bool = False) -> LaurentPoly:
    """
    Sum over A of m(A) q^{-rk(A)} prod_{e in A} (sign * v_e)

    collapsed=True uses the shared variable v (or u) for every element.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    counts = popcount_table(M.n)
    labels = M.element_labels
    shared = VarId(vfamily)
    terms: Dict[Monomial, int] = {}
    for mask in range(1 << M.n):
        size = int(counts[mask])
        powers = {qvar: -int(M.rank[mask])}
        if collapsed:
            powers[shared] = size
        else:
            for e in elements_of(mask):
                powers[VarId(vfamily, labels[e])] = 1
        mono = Monomial(powers)
        coeff = M.mult[mask] if sign > 0 or not size & 1 else -M.mult[mask]
        terms[mono] = terms.get(mono, 0) + coeff
    return LaurentPoly(terms)


def sokal_Z(M: MultiplicityMatroid, qvar: VarId = Q, vfamily: Family = Family.V,
            sign: int = 1, collapsed: bool = False) -> LaurentPoly:
    return multivariate_Z(M.trivialized(), qvar, vfamily, sign, collapsed)


def _corank_nullity_weights(M: MultiplicityMatroid) -> Dict[Tuple[int, int], int]:
    counts = popcount_table(M.n)
    top = M.full_rank
    weights: Dict[Tuple[int, int], int] = {}
    for mask in range(1 << M.n):
        r = int(M.rank[mask])
        key = (top - r, int(counts[mask]) - r)
        weights[key] = weights.get(key, 0) + M.mult[mask]
    return weights


def _power_table(base: LaurentPoly, top: int):
    powers = [LaurentPoly.constant(1)]
    for _ in range(top):
        powers.append(powers[-1] * base)
    return powers


def arithmetic_tutte(M: MultiplicityMatroid) -> LaurentPoly:
    """Sum over A of m(A) (x-1)^{rk(X)-rk(A)} (y-1)^{|A|-rk(A)}"""
    weights = _corank_nullity_weights(M)
    x_powers = _power_table(LaurentPoly.variable(X) - 1, M.full_rank)
    y_powers = _power_table(LaurentPoly.variable(Y) - 1, M.n - M.full_rank)
    total = LaurentPoly.zero()
    for (corank, nullity), weight in sorted(weights.items()):
        total = total + x_powers[corank] * y_powers[nullity] * weight
    return total


def classical_tutte(M: MultiplicityMatroid) -> LaurentPoly:
    """The Tutte polynomial of the underlying matroid; M's multiplicities are ignored"""
    return arithmetic_tutte(M.trivialized())


def characteristic(M: MultiplicityMatroid, var: VarId = LAMBDA) -> LaurentPoly:
    """Sum over A of (-1)^{|A|} m(A) var^{rk(X)-rk(A)}"""
    counts = popcount_table(M.n)
    top = M.full_rank
    terms: Dict[Monomial, int] = {}
    for mask in range(1 << M.n):
        mono = Monomial.of(var, top - int(M.rank[mask]))
        value = -M.mult[mask] if counts[mask] & 1 else M.mult[mask]
        terms[mono] = terms.get(mono, 0) + value
    return LaurentPoly(terms)


def compute_poly(M: MultiplicityMatroid, request: PolyRequest) -> LaurentPoly:
    if request.which == PolyKind.SOKAL_Z:
        return sokal_Z(M, request.qvar, request.vfamily, collapsed=request.collapsed)
    if request.which == PolyKind.ARITHMETIC_Z:
        return multivariate_Z(M, request.qvar, request.vfamily, collapsed=request.collapsed)
    if request.which == PolyKind.TUTTE:
        return classical_tutte(M)
    if request.which == PolyKind.ARITHMETIC_TUTTE:
        return arithmetic_tutte(M)
    return characteristic(M)


def _collapsed_terms(M: MultiplicityMatroid):
    """(coefficient, rk(A), |A|) for every term of the collapsed Z polynomial"""
    Z = multivariate_Z(M, collapsed=True)
    shared_v = VarId(Family.V)
    for mono, coeff in Z.terms.items():
        yield coeff, -mono.exponent(Q), mono.exponent(shared_v)


def check_Z_to_M_relation(M: MultiplicityMatroid) -> IdentityReport:
    """
    M(x, y) = (x-1)^{rk(X)} Z((x-1)(y-1), y-1)

    The right side is expanded term by term: q^{-r} v^k becomes
    (x-1)^{rk(X)-r} (y-1)^{k-r}, both exponents nonnegative.
    """
    started = time.perf_counter()
    lhs = arithmetic_tutte(M)
    x_minus_1 = LaurentPoly.variable(X) - 1
    y_minus_1 = LaurentPoly.variable(Y) - 1
    top = M.full_rank
    rhs = LaurentPoly.zero()
    for coeff, r, k in _collapsed_terms(M):
        rhs = rhs + (x_minus_1 ** (top - r)) * (y_minus_1 ** (k - r)) * coeff
    millis = (time.perf_counter() - started) * 1000
    return IdentityReport.compare(IdentityId.Z_TO_ARITH_TUTTE, lhs, rhs, millis=millis)


def _chi_from_Z(M: MultiplicityMatroid) -> LaurentPoly:
    # lambda^{rk(X)} Z(lambda, -1)
    Z = multivariate_Z(M)
    for label in M.element_labels:
        Z = partial_eval(Z, VarId(Family.V, label), -1)
    Z = substitute_monomial(Z, Q, 1, Monomial.of(LAMBDA))
    return Z * LaurentPoly.variable(LAMBDA, M.full_rank)


def check_chi_relations(M: MultiplicityMatroid) -> Tuple[IdentityReport, IdentityReport]:
    """
    chi(lambda) = lambda^{rk(X)} Z(lambda, -1), for M and for its underlying matroid
    """
    reports = []
    for identity_id, matroid in ((IdentityId.CHI_ARITHMETIC, M),
                                 (IdentityId.CHI_CLASSICAL, M.trivialized())):
        started = time.perf_counter()
        lhs = characteristic(matroid)
        rhs = _chi_from_Z(matroid)
        millis = (time.perf_counter() - started) * 1000
        reports.append(IdentityReport.compare(identity_id, lhs, rhs, millis=millis))
    return reports[0], reports[1]


def check_dupont_substitution(M: MultiplicityMatroid) -> IdentityReport:
    """M(1+ab, 1+cd) = (ab)^{rk(X)} Z(abcd, cd)"""
    started = time.perf_counter()
    lhs = arithmetic_tutte(M)
    lhs = substitute_poly(lhs, X, 1 + LaurentPoly.from_powers({VAR_A: 1, VAR_B: 1}))
    lhs = substitute_poly(lhs, Y, 1 + LaurentPoly.from_powers({VAR_C: 1, VAR_D: 1}))
    top = M.full_rank
    terms: Dict[Monomial, int] = {}
    for coeff, r, k in _collapsed_terms(M):
        mono = Monomial({VAR_A: top - r, VAR_B: top - r, VAR_C: k - r, VAR_D: k - r})
        terms[mono] = terms.get(mono, 0) + coeff
    millis = (time.perf_counter() - started) * 1000
    return IdentityReport.compare(IdentityId.DUPONT_SUBSTITUTION, lhs, LaurentPoly(terms), millis=millis)
