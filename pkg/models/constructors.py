"""
Builders for multiplicity matroids: uniform, graphic, integer matrix, explicit
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np
from networkx.utils import UnionFind

from models.errors import (
    GroundSetTooLarge,
    HeightMismatch,
    NonpositiveMultiplicity,
    NotAMatroid,
    RankExceedsSize,
)
from models.linalg import (
    bareiss_rank,
    columns_to_rows,
    lattice_multiplicity,
    minor_gcd_multiplicity,
)
from models.matroid import (
    MultiplicityMatroid,
    check_matroid_axioms,
    elements_of,
    popcount_table,
)
from models.settings import max_ground_set

logger = logging.getLogger(__name__)


class SpecKind(str, Enum):
    UNIFORM = 'uniform'
    GRAPHIC = 'graphic'
    MATRIX = 'matrix'
    EXPLICIT = 'explicit'


@dataclass(frozen=True)
class MatroidSpec:
    """
    Serializable description of a multiplicity matroid

    uniform:  rank, size, optional multiplicity table
    graphic:  vertices, edges
    matrix:   columns (all of one height)
    explicit: size, rank_table, multiplicity (tables of length 2^size)
    """
    kind: SpecKind
    size: Optional[int] = None
    rank: Optional[int] = None
    vertices: Optional[int] = None
    edges: Optional[Tuple[Tuple[int, int], ...]] = None
    columns: Optional[Tuple[Tuple[int, ...], ...]] = None
    rank_table: Optional[Tuple[int, ...]] = None
    multiplicity: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        required = {
            SpecKind.UNIFORM: ('rank', 'size'),
            SpecKind.GRAPHIC: ('vertices', 'edges'),
            SpecKind.MATRIX: ('columns',),
            SpecKind.EXPLICIT: ('size', 'rank_table', 'multiplicity'),
        }[SpecKind(self.kind)]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"{self.kind.value} spec is missing {', '.join(missing)}")

    @classmethod
    def uniform(cls, rank: int, size: int, multiplicity: Optional[Sequence[int]] = None) -> 'MatroidSpec':
        table = tuple(int(m) for m in multiplicity) if multiplicity is not None else None
        return cls(SpecKind.UNIFORM, size=size, rank=rank, multiplicity=table)

    @classmethod
    def graphic(cls, vertices: int, edges: Sequence[Sequence[int]]) -> 'MatroidSpec':
        return cls(SpecKind.GRAPHIC, vertices=vertices,
                   edges=tuple((int(a), int(b)) for a, b in edges))

    @classmethod
    def matrix(cls, columns: Sequence[Sequence[int]]) -> 'MatroidSpec':
        return cls(SpecKind.MATRIX, columns=tuple(tuple(int(x) for x in c) for c in columns))

    @classmethod
    def explicit(cls, rank_table: Sequence[int], multiplicity: Sequence[int]) -> 'MatroidSpec':
        size = len(rank_table).bit_length() - 1
        return cls(SpecKind.EXPLICIT, size=size, rank_table=tuple(int(r) for r in rank_table),
                   multiplicity=tuple(int(m) for m in multiplicity))

    @property
    def ground_size(self) -> int:
        if self.kind == SpecKind.GRAPHIC:
            return len(self.edges)
        if self.kind == SpecKind.MATRIX:
            return len(self.columns)
        return self.size


def _check_size(n: int, max_size: Optional[int]) -> None:
    cap = max_ground_set() if max_size is None else max_size
    if n > cap:
        raise GroundSetTooLarge(f"Ground set of size {n} exceeds the limit of {cap}")


def uniform(rank: int, size: int, multiplicity: Optional[Sequence[int]] = None,
            max_size: Optional[int] = None) -> MultiplicityMatroid:
    """U_{r,n}: rk(A) = min(|A|, r), trivial multiplicity unless a table is given"""
    if rank < 0 or size < 0:
        raise ValueError("Rank and size must be nonnegative")
    if rank > size:
        raise RankExceedsSize(f"Rank {rank} exceeds ground-set size {size}")
    _check_size(size, max_size)
    table = np.minimum(popcount_table(size), rank)
    mult = [1] * (1 << size) if multiplicity is None else list(multiplicity)
    return MultiplicityMatroid(table, mult)


def graphic(vertices: int, edges: Sequence[Sequence[int]],
            max_size: Optional[int] = None) -> MultiplicityMatroid:
    """Cycle matroid of a multigraph: rk(A) = vertices - components(A)"""
    if vertices < 1:
        raise ValueError("A graph needs at least one vertex")
    for a, b in edges:
        if not (0 <= a < vertices and 0 <= b < vertices):
            raise ValueError(f"Edge ({a}, {b}) has an endpoint outside 0..{vertices - 1}")
    n = len(edges)
    _check_size(n, max_size)
    rank = []
    for mask in range(1 << n):
        forest = UnionFind()
        merges = 0
        for e in elements_of(mask):
            a, b = edges[e]
            if forest[a] != forest[b]:
                forest.union(a, b)
                merges += 1
        rank.append(merges)
    return MultiplicityMatroid(rank, [1] * (1 << n))


def from_integer_matrix(columns: Sequence[Sequence[int]],
                        max_size: Optional[int] = None) -> MultiplicityMatroid:
    """
    Matroid of a list of integer vectors

    rk(A) is the rational rank of the columns in A and m(A) the product of
    the nonzero invariant factors of their Smith normal form.
    """
    heights = {len(column) for column in columns}
    if len(heights) > 1:
        raise HeightMismatch(f"Columns have different heights: {sorted(heights)}")
    height = heights.pop() if heights else 0
    n = len(columns)
    _check_size(n, max_size)
    rank, mult = [], []
    for mask in range(1 << n):
        chosen = [columns[e] for e in elements_of(mask)]
        rank.append(bareiss_rank(columns_to_rows(chosen, height)))
        mult.append(lattice_multiplicity(chosen, height))
    return MultiplicityMatroid(rank, mult)


def explicit(spec: MatroidSpec, max_size: Optional[int] = None) -> MultiplicityMatroid:
    """Tables taken as given; only the matroid axioms are enforced"""
    size = 1 << spec.size
    if len(spec.rank_table) != size or len(spec.multiplicity) != size:
        raise ValueError(f"Explicit tables must have {size} entries")
    _check_size(spec.size, max_size)
    for mask, m in enumerate(spec.multiplicity):
        if m < 1:
            raise NonpositiveMultiplicity(f"m({elements_of(mask)}) = {m} is not positive")
    check = check_matroid_axioms(spec.rank_table)
    if not check.ok:
        raise NotAMatroid(
            f"Rank table violates {check.violation} at {check.counterexample}",
            check.counterexample,
        )
    return MultiplicityMatroid(spec.rank_table, spec.multiplicity)


def build_matroid(spec: MatroidSpec, max_size: Optional[int] = None) -> MultiplicityMatroid:
    """
    Build the matroid a spec describes

    Args:
        spec: uniform, graphic, matrix or explicit description
        max_size: ground-set cap, limits.max_ground_set by default

    Returns:
        MultiplicityMatroid with rank and multiplicity tables filled in

    Raises:
        GroundSetTooLarge, RankExceedsSize, HeightMismatch, NotAMatroid,
        NonpositiveMultiplicity: the spec does not describe a valid matroid
    """
    if spec.kind == SpecKind.UNIFORM:
        matroid = uniform(spec.rank, spec.size, spec.multiplicity, max_size)
    elif spec.kind == SpecKind.GRAPHIC:
        matroid = graphic(spec.vertices, spec.edges, max_size)
    elif spec.kind == SpecKind.MATRIX:
        matroid = from_integer_matrix(spec.columns, max_size)
    else:
        matroid = explicit(spec, max_size)
    logger.debug(f"Built {spec.kind.value} matroid {matroid}")
    return matroid


def oracle_disagreement(columns: Sequence[Sequence[int]], M: MultiplicityMatroid) -> Optional[int]:
    """
    First subset whose rank or multiplicity differs from the gcd-of-minors oracle

    Returns None when the Smith normal form tables of M agree with brute-force
    minor enumeration on every subset.
    """
    height = len(columns[0]) if columns else 0
    for mask in range(1 << M.n):
        chosen = [columns[e] for e in elements_of(mask)]
        rank, multiplicity = minor_gcd_multiplicity(chosen, height)
        if rank != M.rank_of(mask) or multiplicity != M.mult_of(mask):
            logger.warning(f"Oracle disagrees on {elements_of(mask)}: "
                           f"({rank}, {multiplicity}) vs ({M.rank_of(mask)}, {M.mult_of(mask)})")
            return mask
    return None
