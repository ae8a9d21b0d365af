"""
Multiplicity matroids on dense subset tables

A subset of the ground set {0, ..., n-1} is a bitmask: element e is present
iff bit e is set. Rank and multiplicity are stored for all 2^n subsets.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from models.errors import (
    GroundSetTooLarge,
    NonpositiveMultiplicity,
    UnderlyingMatroidMismatch,
)

logger = logging.getLogger(__name__)

# masks are held in int64 arrays
MAX_MASK_BITS = 62


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def elements_of(mask: int) -> List[int]:
    elements = []
    e = 0
    while mask:
        if mask & 1:
            elements.append(e)
        mask >>= 1
        e += 1
    return elements


def popcount(mask: int) -> int:
    return bin(mask).count('1')


def embed_masks(positions: Sequence[int]) -> np.ndarray:
    """
    Masks of all subsets of the given positions

    Entry j is the subset whose i-th member is positions[i] exactly when
    bit i of j is set, so the result is ascending and indexes the tables of
    a minor on those positions.
    """
    masks = np.zeros(1, dtype=np.int64)
    for position in positions:
        masks = np.concatenate([masks, masks | (1 << position)])
    return masks


def submasks(mask: int) -> np.ndarray:
    return embed_masks(elements_of(mask))


@lru_cache(maxsize=None)
def popcount_table(n: int) -> np.ndarray:
    table = np.zeros(1 << n, dtype=np.int64)
    for bit in range(n):
        table[1 << bit:2 << bit] = table[:1 << bit] + 1
    table.setflags(write=False)
    return table


class MultiplicityMatroid:
    """
    Matroid (X, rk) together with a positive multiplicity m on all subsets

    element_labels keeps the original element of every position so that a
    minor's polynomial variables carry the same indices as in the parent.
    """
    __slots__ = ('n', 'rank', 'mult', 'element_labels')

    def __init__(self, rank: Sequence[int], mult: Sequence[int],
                 element_labels: Optional[Sequence[int]] = None):
        rank = np.array(rank, dtype=np.int64)
        size = len(rank)
        n = size.bit_length() - 1
        if size != 1 << n:
            raise ValueError(f"Rank table length {size} is not a power of two")
        if n > MAX_MASK_BITS:
            raise GroundSetTooLarge(f"Ground set of size {n} exceeds {MAX_MASK_BITS} elements")
        mult = tuple(int(m) for m in mult)
        if len(mult) != size:
            raise ValueError(f"Multiplicity table has {len(mult)} entries, expected {size}")
        for mask, m in enumerate(mult):
            if m < 1:
                raise NonpositiveMultiplicity(f"m({elements_of(mask)}) = {m} is not positive")
        labels = tuple(range(n)) if element_labels is None else tuple(int(e) for e in element_labels)
        if len(labels) != n:
            raise ValueError(f"Expected {n} element labels, got {len(labels)}")
        rank.setflags(write=False)
        object.__setattr__(self, 'n', n)
        object.__setattr__(self, 'rank', rank)
        object.__setattr__(self, 'mult', mult)
        object.__setattr__(self, 'element_labels', labels)

    def __setattr__(self, name, value):
        raise AttributeError("MultiplicityMatroid is immutable")

    @property
    def ground_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def full_rank(self) -> int:
        return int(self.rank[self.ground_mask])

    @property
    def is_trivial(self) -> bool:
        return all(m == 1 for m in self.mult)

    def _check_mask(self, mask: int) -> None:
        if mask < 0 or mask > self.ground_mask:
            raise ValueError(f"Subset mask {mask} is outside a ground set of size {self.n}")

    def rank_of(self, mask: int) -> int:
        """
        Rank of a subset

        Args:
            mask: bitmask over 0..n-1

        Returns:
            rk(mask)

        Raises:
            ValueError: mask has bits outside the ground set
        """
        self._check_mask(mask)
        return int(self.rank[mask])

    def mult_of(self, mask: int) -> int:
        self._check_mask(mask)
        return self.mult[mask]

    def dual_rank(self, mask: int) -> int:
        """rk*(A) = |A| + rk(X - A) - rk(X)"""
        self._check_mask(mask)
        return popcount(mask) + int(self.rank[self.ground_mask ^ mask]) - self.full_rank

    def dual_rank_table(self) -> np.ndarray:
        masks = np.arange(1 << self.n, dtype=np.int64)
        return popcount_table(self.n) + self.rank[self.ground_mask ^ masks] - self.full_rank

    def restriction(self, mask: int) -> 'MultiplicityMatroid':
        """M|T: rank and multiplicity restricted to subsets of T"""
        self._check_mask(mask)
        positions = elements_of(mask)
        masks = embed_masks(positions)
        return MultiplicityMatroid(
            self.rank[masks],
            [self.mult[i] for i in masks.tolist()],
            [self.element_labels[p] for p in positions],
        )

    def contraction(self, mask: int) -> 'MultiplicityMatroid':
        """M/T on X - T: rk(A u T) - rk(T) and m(A u T)"""
        self._check_mask(mask)
        positions = elements_of(self.ground_mask ^ mask)
        masks = embed_masks(positions) | mask
        return MultiplicityMatroid(
            self.rank[masks] - self.rank[mask],
            [self.mult[i] for i in masks.tolist()],
            [self.element_labels[p] for p in positions],
        )

    def same_underlying(self, other: 'MultiplicityMatroid') -> bool:
        return (
            self.n == other.n
            and self.element_labels == other.element_labels
            and np.array_equal(self.rank, other.rank)
        )

    def product(self, other: 'MultiplicityMatroid') -> 'MultiplicityMatroid':
        """M1 . M2: same underlying matroid, pointwise product of multiplicities"""
        if not self.same_underlying(other):
            raise UnderlyingMatroidMismatch(
                f"Cannot multiply matroids on different underlying matroids "
                f"(sizes {self.n} and {other.n})"
            )
        return MultiplicityMatroid(
            self.rank, [a * b for a, b in zip(self.mult, other.mult)], self.element_labels
        )

    def trivialized(self) -> 'MultiplicityMatroid':
        return MultiplicityMatroid(self.rank, [1] * len(self.mult), self.element_labels)

    def with_multiplicity(self, mult: Sequence[int]) -> 'MultiplicityMatroid':
        return MultiplicityMatroid(self.rank, mult, self.element_labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiplicityMatroid):
            return NotImplemented
        return self.same_underlying(other) and self.mult == other.mult

    def __hash__(self) -> int:
        return hash((self.n, self.rank.tobytes(), self.mult, self.element_labels))

    def __repr__(self) -> str:
        return (f"MultiplicityMatroid(n={self.n}, rank={self.full_rank}, "
                f"labels={list(self.element_labels)})")


@dataclass(frozen=True)
class MatroidCheck:
    """Verdict of check_matroid_axioms"""
    ok: bool
    counterexample: Optional[Tuple[int, ...]] = None
    violation: Optional[str] = None


def check_matroid_axioms(rank: Sequence[int]) -> MatroidCheck:
    """
    Check normalization, unit increase and submodularity of a rank table

    Counterexamples: (0,) for rk(empty) != 0, (A, e) for a bad step from A
    to A + e, (A, B) for a submodularity failure. O(4^n).
    """
    table = np.asarray(rank, dtype=np.int64)
    size = len(table)
    n = size.bit_length() - 1
    if size != 1 << n:
        raise ValueError(f"Rank table length {size} is not a power of two")

    if table[0] != 0:
        return MatroidCheck(False, (0,), 'normalization')

    masks = np.arange(size, dtype=np.int64)
    first = None
    for e in range(n):
        bit = 1 << e
        without = masks[(masks & bit) == 0]
        step = table[without | bit] - table[without]
        bad = without[(step < 0) | (step > 1)]
        if bad.size:
            candidate = (int(bad[0]), e)
            if first is None or candidate < first:
                first = candidate
    if first is not None:
        return MatroidCheck(False, first, 'unit increase')

    for a in range(size):
        joined = table[a | masks] + table[a & masks]
        bad = np.nonzero(joined > table[a] + table)[0]
        if bad.size:
            return MatroidCheck(False, (a, int(bad[0])), 'submodularity')

    return MatroidCheck(True)


@dataclass(frozen=True)
class AxiomVerdict:
    holds: bool
    counterexample: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class AxiomReport:
    """
    Outcome of the four arithmetic axioms

    Counterexamples are masks: axiom 1 (A, e), axiom 2 (A, B, F, T),
    axioms 3 and 4 (A, B).
    """
    matroid_ok: bool
    axiom1: AxiomVerdict
    axiom2: AxiomVerdict
    axiom3: AxiomVerdict
    axiom4: AxiomVerdict

    @property
    def all_hold(self) -> bool:
        return self.matroid_ok and all(
            verdict.holds for verdict in (self.axiom1, self.axiom2, self.axiom3, self.axiom4)
        )


def _divisibility(M: MultiplicityMatroid) -> AxiomVerdict:
    rank, mult = M.rank, M.mult
    for a in range(1 << M.n):
        for e in range(M.n):
            bit = 1 << e
            if a & bit:
                continue
            b = a | bit
            if rank[b] == rank[a]:
                ok = mult[a] % mult[b] == 0
            else:
                ok = mult[b] % mult[a] == 0
            if not ok:
                return AxiomVerdict(False, (a, e))
    return AxiomVerdict(True)


def _molecules(M: MultiplicityMatroid) -> AxiomVerdict:
    rank, mult = M.rank, M.mult
    counts = popcount_table(M.n)
    for a in range(1 << M.n):
        for d in submasks(M.ground_mask ^ a).tolist()[1:]:
            # rk(A + e) = rk(A) + [e in F] for every e in B - A, so the
            # singletons fix the only split of B - A that can be a molecule
            f = 0
            for e in elements_of(d):
                if rank[a | (1 << e)] > rank[a]:
                    f |= 1 << e
            t = d ^ f
            inner = submasks(d)
            if not np.all(rank[a | inner] == rank[a] + counts[inner & f]):
                continue
            if mult[a] * mult[a | d] != mult[a | f] * mult[a | t]:
                return AxiomVerdict(False, (a, a | d, f, t))
    return AxiomVerdict(True)


def _alternating_sums(M: MultiplicityMatroid, rank_table: np.ndarray, complement: bool) -> AxiomVerdict:
    mult = M.mult
    counts = popcount_table(M.n)
    ground = M.ground_mask
    for a in range(1 << M.n):
        for d in submasks(ground ^ a).tolist():
            b = a | d
            if rank_table[b] != rank_table[a]:
                continue
            total = 0
            for t in submasks(d).tolist():
                value = mult[ground ^ (a | t)] if complement else mult[a | t]
                total += -value if counts[t] & 1 else value
            if total < 0:
                return AxiomVerdict(False, (a, b))
    return AxiomVerdict(True)


def check_arithmetic_axioms(M: MultiplicityMatroid) -> AxiomReport:
    """Exhaustively test the arithmetic-matroid axioms (1)-(4)"""
    report = AxiomReport(
        matroid_ok=check_matroid_axioms(M.rank).ok,
        axiom1=_divisibility(M),
        axiom2=_molecules(M),
        axiom3=_alternating_sums(M, M.rank, complement=False),
        axiom4=_alternating_sums(M, M.dual_rank_table(), complement=True),
    )
    logger.debug(f"Axiom check on {M}: all_hold={report.all_hold}")
    return report
