"""
Exact sparse multivariate Laurent polynomials with integer coefficients

Every value is immutable and canonical: no zero exponent is stored in a
monomial and no zero coefficient is stored in a polynomial, so two equal
polynomials always hold identical term mappings.
"""
import re
from enum import IntEnum
from fractions import Fraction
from functools import total_ordering
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from models.errors import (
    NegativeExponentSubstitution,
    NonIntegralResult,
    NonUnitCoefficientAtNegativeExponent,
    ZeroAtNegativeExponent,
)

# Exponents never exceed the ground-set size or the rank in this toolkit.
MAX_EXPONENT = 1 << 31


class Family(IntEnum):
    """Variable families, in their fixed print and sort order"""
    Q = 0
    P = 1
    X = 2
    Y = 3
    A = 4
    B = 5
    C = 6
    D = 7
    LAMBDA = 8
    XI = 9
    V = 10
    U = 11

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    @property
    def indexed(self) -> bool:
        return self in (Family.V, Family.U)


_SYMBOLS = {
    Family.Q: 'q', Family.P: 'p', Family.X: 'x', Family.Y: 'y',
    Family.A: 'a', Family.B: 'b', Family.C: 'c', Family.D: 'd',
    Family.LAMBDA: 'l', Family.XI: 's', Family.V: 'v', Family.U: 'u',
}
_FAMILY_BY_SYMBOL = {symbol: family for family, symbol in _SYMBOLS.items()}


@total_ordering
class VarId:
    """
    A variable: a family plus, for v and u, the ground-set element it belongs to

    An indexed family without an index is the shared variable obtained by
    setting v_e = v (or u_e = u) for every element.
    """
    __slots__ = ('family', 'index', '_key')

    def __init__(self, family: Family, index: Optional[int] = None):
        family = Family(family)
        if index is not None:
            if not family.indexed:
                raise ValueError(f"Variable family '{family.symbol}' takes no element index")
            if index < 0:
                raise ValueError(f"Element index must be nonnegative, got {index}")
        object.__setattr__(self, 'family', family)
        object.__setattr__(self, 'index', index)
        object.__setattr__(self, '_key', (int(family), -1 if index is None else index))

    def __setattr__(self, name, value):
        raise AttributeError("VarId is immutable")

    @property
    def sort_key(self) -> Tuple[int, int]:
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, VarId) and self._key == other._key

    def __lt__(self, other: 'VarId') -> bool:
        return self._key < other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __str__(self) -> str:
        if self.index is None:
            return self.family.symbol
        return f"{self.family.symbol}{self.index}"

    def __repr__(self) -> str:
        return f"VarId({self})"


Q = VarId(Family.Q)
P = VarId(Family.P)
X = VarId(Family.X)
Y = VarId(Family.Y)
A = VarId(Family.A)
B = VarId(Family.B)
C = VarId(Family.C)
D = VarId(Family.D)
LAMBDA = VarId(Family.LAMBDA)
XI = VarId(Family.XI)
V_SHARED = VarId(Family.V)
U_SHARED = VarId(Family.U)


def v(element: int) -> VarId:
    return VarId(Family.V, element)


def u(element: int) -> VarId:
    return VarId(Family.U, element)


_VAR_PATTERN = re.compile(r'^([a-z])(\d*)$')


def parse_var(text: str) -> VarId:
    """Parse a printed variable name such as 'q', 'l' or 'v3'"""
    match = _VAR_PATTERN.match(text)
    if not match or match.group(1) not in _FAMILY_BY_SYMBOL:
        raise ValueError(f"Unknown variable '{text}'")
    family = _FAMILY_BY_SYMBOL[match.group(1)]
    index = int(match.group(2)) if match.group(2) else None
    return VarId(family, index)


class Monomial:
    """Product of variables raised to nonzero integer exponents"""
    __slots__ = ('_powers', '_hash')

    def __init__(self, powers: Optional[Mapping[VarId, int]] = None):
        items = []
        for var, exponent in (powers or {}).items():
            if exponent:
                assert abs(exponent) < MAX_EXPONENT, f"exponent overflow on {var}"
                items.append((var, int(exponent)))
        items.sort(key=lambda item: item[0].sort_key)
        self._powers: Tuple[Tuple[VarId, int], ...] = tuple(items)
        self._hash = hash(self._powers)

    @classmethod
    def unit(cls) -> 'Monomial':
        return _UNIT

    @classmethod
    def of(cls, var: VarId, exponent: int = 1) -> 'Monomial':
        return cls({var: exponent})

    @property
    def powers(self) -> Tuple[Tuple[VarId, int], ...]:
        return self._powers

    @property
    def is_unit(self) -> bool:
        return not self._powers

    @property
    def degree(self) -> int:
        return sum(exponent for _, exponent in self._powers)

    @property
    def sort_key(self):
        return (self.degree, tuple((var.sort_key, exponent) for var, exponent in self._powers))

    def variables(self) -> Tuple[VarId, ...]:
        return tuple(var for var, _ in self._powers)

    def exponent(self, var: VarId) -> int:
        for other, exponent in self._powers:
            if other == var:
                return exponent
        return 0

    def as_dict(self) -> Dict[VarId, int]:
        return dict(self._powers)

    def without(self, var: VarId) -> 'Monomial':
        return Monomial({other: exponent for other, exponent in self._powers if other != var})

    def __mul__(self, other: 'Monomial') -> 'Monomial':
        if not other._powers:
            return self
        if not self._powers:
            return other
        merged = dict(self._powers)
        for var, exponent in other._powers:
            merged[var] = merged.get(var, 0) + exponent
        return Monomial(merged)

    def __pow__(self, k: int) -> 'Monomial':
        return Monomial({var: exponent * k for var, exponent in self._powers})

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self._powers == other._powers

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if not self._powers:
            return "1"
        return '*'.join(
            str(var) if exponent == 1 else f"{var}^{exponent}"
            for var, exponent in self._powers
        )

    def __repr__(self) -> str:
        return f"Monomial({self})"


_UNIT = Monomial()

Scalar = Union[int, 'LaurentPoly']


class LaurentPoly:
    """Finite mapping from monomials to nonzero integer coefficients"""
    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        self._terms: Dict[Monomial, int] = {
            mono: int(coeff) for mono, coeff in (terms or {}).items() if coeff
        }

    @classmethod
    def _wrap(cls, terms: Dict[Monomial, int]) -> 'LaurentPoly':
        # caller guarantees the mapping is canonical
        poly = cls.__new__(cls)
        poly._terms = terms
        return poly

    @classmethod
    def zero(cls) -> 'LaurentPoly':
        return cls._wrap({})

    @classmethod
    def constant(cls, value: int) -> 'LaurentPoly':
        return cls._wrap({_UNIT: int(value)} if value else {})

    @classmethod
    def variable(cls, var: VarId, exponent: int = 1) -> 'LaurentPoly':
        return cls._wrap({Monomial.of(var, exponent): 1})

    @classmethod
    def monomial(cls, mono: Monomial, coeff: int = 1) -> 'LaurentPoly':
        return cls._wrap({mono: int(coeff)} if coeff else {})

    @classmethod
    def from_powers(cls, powers: Mapping[VarId, int], coeff: int = 1) -> 'LaurentPoly':
        return cls.monomial(Monomial(powers), coeff)

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, mono: Monomial) -> int:
        return self._terms.get(mono, 0)

    def variables(self) -> Tuple[VarId, ...]:
        found = {var for mono in self._terms for var in mono.variables()}
        return tuple(sorted(found))

    def degree_in(self, var: VarId) -> int:
        """Largest exponent of var (0 for the zero polynomial)"""
        return max((mono.exponent(var) for mono in self._terms), default=0)

    def min_exponent(self, var: VarId) -> int:
        return min((mono.exponent(var) for mono in self._terms), default=0)

    def __add__(self, other: Scalar) -> 'LaurentPoly':
        return poly_add(self, _lift(other))

    __radd__ = __add__

    def __neg__(self) -> 'LaurentPoly':
        return LaurentPoly._wrap({mono: -coeff for mono, coeff in self._terms.items()})

    def __sub__(self, other: Scalar) -> 'LaurentPoly':
        return poly_add(self, -_lift(other))

    def __rsub__(self, other: Scalar) -> 'LaurentPoly':
        return poly_add(_lift(other), -self)

    def __mul__(self, other: Scalar) -> 'LaurentPoly':
        if isinstance(other, int):
            if not other:
                return LaurentPoly.zero()
            return LaurentPoly._wrap({mono: coeff * other for mono, coeff in self._terms.items()})
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> 'LaurentPoly':
        if k < 0:
            raise ValueError("Only nonnegative powers of polynomials are defined")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return poly_eq(self, other)

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        return canonical_string(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({canonical_string(self)!r})"


ONE = LaurentPoly.constant(1)
ZERO = LaurentPoly.zero()


def _lift(value: Scalar) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    return LaurentPoly.constant(value)


def accumulate(total: Dict[Monomial, int], f: LaurentPoly, scale: int = 1) -> None:
    """Add scale*f into a term dictionary in place, dropping cancelled terms"""
    for mono, coeff in f._terms.items():
        value = total.get(mono, 0) + coeff * scale
        if value:
            total[mono] = value
        else:
            total.pop(mono, None)


def poly_sum(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    total: Dict[Monomial, int] = {}
    for f in polys:
        accumulate(total, f)
    return LaurentPoly._wrap(total)


def poly_add(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """
    Sum of two polynomials

    Args:
        f, g: summands

    Returns:
        f + g with cancelled terms removed
    """
    total = dict(f._terms)
    accumulate(total, g)
    return LaurentPoly._wrap(total)


def poly_mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """
    Product of two polynomials

    Args:
        f, g: factors; exponents add, so negative powers cancel freely

    Returns:
        f * g with cancelled terms removed
    """
    total: Dict[Monomial, int] = {}
    for mono_f, coeff_f in f._terms.items():
        for mono_g, coeff_g in g._terms.items():
            mono = mono_f * mono_g
            total[mono] = total.get(mono, 0) + coeff_f * coeff_g
    return LaurentPoly._wrap({mono: coeff for mono, coeff in total.items() if coeff})


def poly_eq(f: LaurentPoly, g: LaurentPoly) -> bool:
    return f._terms == g._terms


def substitute_monomial(f: LaurentPoly, var: VarId, coeff: int, mono: Monomial) -> LaurentPoly:
    """
    Replace every var^k by coeff^k * mono^k

    The replacement is applied once to f, so mono may itself contain var
    (q -> p*q). Negative powers of var need |coeff| = 1 to stay integral.
    """
    if coeff == 0:
        raise ValueError("Substitution coefficient must be nonzero")
    if abs(coeff) != 1 and f.min_exponent(var) < 0:
        raise NonUnitCoefficientAtNegativeExponent(
            f"Cannot substitute {var} -> {coeff}*{mono}: {var} occurs with a negative exponent"
        )
    total: Dict[Monomial, int] = {}
    for term, value in f._terms.items():
        k = term.exponent(var)
        if k:
            term = term.without(var) * mono ** k
            # |coeff| = 1 whenever k < 0, so coeff^k == coeff^|k|
            value = value * coeff ** abs(k)
        total[term] = total.get(term, 0) + value
    return LaurentPoly._wrap({term: value for term, value in total.items() if value})


def substitute_poly(f: LaurentPoly, var: VarId, g: LaurentPoly) -> LaurentPoly:
    """Compose f with var := g; var must occur with nonnegative exponents only"""
    if f.min_exponent(var) < 0:
        raise NegativeExponentSubstitution(
            f"Cannot substitute a polynomial for {var}: it occurs with a negative exponent"
        )
    by_power: Dict[int, Dict[Monomial, int]] = {}
    for term, value in f._terms.items():
        k = term.exponent(var)
        by_power.setdefault(k, {})[term.without(var)] = value
    total: Dict[Monomial, int] = {}
    for k, rest in by_power.items():
        accumulate(total, LaurentPoly._wrap(rest) * g ** k)
    return LaurentPoly._wrap(total)


def partial_eval(f: LaurentPoly, var: VarId, value) -> LaurentPoly:
    """Set var to a rational value; the result must have integer coefficients"""
    value = Fraction(value)
    sums: Dict[Monomial, Fraction] = {}
    for term, coeff in f._terms.items():
        k = term.exponent(var)
        if k < 0 and value == 0:
            raise ZeroAtNegativeExponent(f"{var} = 0 but {var} occurs with exponent {k}")
        rest = term.without(var)
        sums[rest] = sums.get(rest, 0) + coeff * value ** k
    total: Dict[Monomial, int] = {}
    for term, coeff in sums.items():
        if coeff.denominator != 1:
            raise NonIntegralResult(f"Evaluating {var} at {value} gives coefficient {coeff}")
        if coeff:
            total[term] = int(coeff)
    return LaurentPoly._wrap(total)


def evaluate(f: LaurentPoly, point: Mapping[VarId, Fraction]) -> Fraction:
    """Exact value of f at a rational point assigning every variable of f"""
    result = Fraction(0)
    for term, coeff in f._terms.items():
        value = Fraction(coeff)
        for var, k in term.powers:
            if var not in point:
                raise ValueError(f"No value given for {var}")
            x = Fraction(point[var])
            if k < 0 and x == 0:
                raise ZeroAtNegativeExponent(f"{var} = 0 but {var} occurs with exponent {k}")
            value *= x ** k
        result += value
    return result


def collapse_elements(f: LaurentPoly) -> LaurentPoly:
    """Set v_e = v and u_e = u for every element e"""
    total: Dict[Monomial, int] = {}
    for term, coeff in f._terms.items():
        powers: Dict[VarId, int] = {}
        for var, k in term.powers:
            if var.family.indexed:
                var = V_SHARED if var.family == Family.V else U_SHARED
            powers[var] = powers.get(var, 0) + k
        mono = Monomial(powers)
        total[mono] = total.get(mono, 0) + coeff
    return LaurentPoly._wrap({mono: coeff for mono, coeff in total.items() if coeff})


def canonical_string(f: LaurentPoly) -> str:
    """Deterministic rendering, e.g. '1 + 2*q^-1*v0'"""
    if not f._terms:
        return "0"
    pieces = []
    for position, (mono, coeff) in enumerate(sorted(f._terms.items(), key=lambda t: t[0].sort_key)):
        magnitude = abs(coeff)
        if mono.is_unit:
            body = str(magnitude)
        elif magnitude == 1:
            body = str(mono)
        else:
            body = f"{magnitude}*{mono}"
        if position == 0:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f" {'+' if coeff > 0 else '-'} {body}")
    return ''.join(pieces)


_TERM_SEPARATOR = re.compile(r' ([+-]) ')
_FACTOR_PATTERN = re.compile(r'^([a-z]\d*)(?:\^(-?\d+))?$')


def parse_poly(text: str) -> LaurentPoly:
    """Read back the output of canonical_string"""
    text = text.strip()
    if text == "0":
        return ZERO
    pieces = _TERM_SEPARATOR.split(text)
    signed = [(1, pieces[0])]
    signed += [(1 if sign == '+' else -1, body) for sign, body in zip(pieces[1::2], pieces[2::2])]
    total: Dict[Monomial, int] = {}
    for sign, body in signed:
        if body.startswith('-'):
            sign, body = -sign, body[1:]
        factors = body.split('*')
        coeff = 1
        if factors[0].isdigit():
            coeff = int(factors[0])
            factors = factors[1:]
        powers: Dict[VarId, int] = {}
        for factor in factors:
            match = _FACTOR_PATTERN.match(factor)
            if not match:
                raise ValueError(f"Cannot parse factor '{factor}' in '{text}'")
            var = parse_var(match.group(1))
            powers[var] = powers.get(var, 0) + int(match.group(2) or 1)
        mono = Monomial(powers)
        total[mono] = total.get(mono, 0) + sign * coeff
    return LaurentPoly._wrap({mono: coeff for mono, coeff in total.items() if coeff})
