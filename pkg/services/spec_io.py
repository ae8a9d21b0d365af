"""
JSON documents: matroid specs in, identity/axiom/corpus reports out
"""
import json
import logging
import re
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, StrictStr, TypeAdapter, ValidationError

from models.constructors import MatroidSpec, SpecKind
from models.errors import (
    BadSubsetKey,
    GroundSetTooLarge,
    MalformedDocument,
    TableSizeMismatch,
    UnknownKind,
)
from models.matroid import AxiomReport, AxiomVerdict, elements_of, mask_of
from models.poly_engine import canonical_string
from models.reports import IdentityReport
from models.settings import max_ground_set
from services.corpus import CorpusRun, EntryResult

logger = logging.getLogger(__name__)

# Larger multiplicities are written as decimal strings
MAX_JSON_INT = 2 ** 63 - 1

BigInt = Union[StrictInt, StrictStr]

_INDEX = re.compile(r'[0-9]+')
_DECIMAL = re.compile(r'-?[0-9]+')


# Spec documents

class _Document(BaseModel):
    model_config = ConfigDict(extra='forbid')


class UniformDocument(_Document):
    kind: Literal['uniform']
    rank: StrictInt
    size: StrictInt
    multiplicity: Optional[Dict[str, BigInt]] = None
    default: Optional[BigInt] = None


class GraphicDocument(_Document):
    kind: Literal['graphic']
    vertices: StrictInt
    edges: List[Tuple[StrictInt, StrictInt]]


class MatrixDocument(_Document):
    kind: Literal['matrix']
    columns: List[List[StrictInt]]


class ExplicitDocument(_Document):
    kind: Literal['explicit']
    size: StrictInt
    rank: Dict[str, StrictInt]
    multiplicity: Dict[str, BigInt]
    default: Optional[BigInt] = None


SpecDocument = Annotated[
    Union[UniformDocument, GraphicDocument, MatrixDocument, ExplicitDocument],
    Field(discriminator='kind'),
]
_spec_adapter = TypeAdapter(SpecDocument)


def subset_key(mask: int) -> str:
    """'0,2' for {0, 2}; '' for the empty set"""
    return ','.join(str(e) for e in elements_of(mask))


def parse_subset_key(key: str, size: int) -> int:
    if key == '':
        return 0
    parts = key.split(',')
    if not all(_INDEX.fullmatch(part) for part in parts):
        raise BadSubsetKey(f"Subset key '{key}' is not a comma-separated list of indices")
    elements = [int(part) for part in parts]
    if any(b <= a for a, b in zip(elements, elements[1:])):
        raise BadSubsetKey(f"Subset key '{key}' must list distinct indices in ascending order")
    if elements[-1] >= size:
        raise BadSubsetKey(f"Subset key '{key}' names an element outside 0..{size - 1}")
    return mask_of(elements)


def _big_int(value: BigInt, field: str) -> int:
    if isinstance(value, int):
        return value
    text = value.strip()
    if not _DECIMAL.fullmatch(text):
        raise MalformedDocument(f"{field}: '{value}' is not a decimal integer")
    return int(text)


def _json_int(value: int) -> BigInt:
    return value if abs(value) <= MAX_JSON_INT else str(value)


def _table(entries: Dict[str, BigInt], size: int, field: str,
           default: Optional[BigInt] = None) -> Tuple[int, ...]:
    length = 1 << size
    table: List[Optional[int]] = [None] * length
    for key, value in entries.items():
        table[parse_subset_key(key, size)] = _big_int(value, f"{field}['{key}']")
    missing = [mask for mask, value in enumerate(table) if value is None]
    if missing:
        if default is None:
            raise TableSizeMismatch(
                f"{field} has {length - len(missing)} of {length} subsets and no default; "
                f"first missing subset '{subset_key(missing[0])}'"
            )
        fill = _big_int(default, 'default')
        for mask in missing:
            table[mask] = fill
    return tuple(table)


def _check_size(size: int, field: str, max_size: Optional[int]) -> None:
    if size < 0:
        raise MalformedDocument(f"{field}: size must be nonnegative, got {size}")
    cap = max_ground_set() if max_size is None else max_size
    if size > cap:
        raise GroundSetTooLarge(f"{field}: ground set of size {size} exceeds the limit of {cap}")


def _to_spec(document, max_size: Optional[int] = None) -> MatroidSpec:
    if isinstance(document, UniformDocument):
        _check_size(document.size, 'size', max_size)
        if document.multiplicity is None:
            if document.default is not None:
                raise MalformedDocument("default: only allowed together with a multiplicity table")
            return MatroidSpec.uniform(document.rank, document.size)
        mult = _table(document.multiplicity, document.size, 'multiplicity', document.default)
        return MatroidSpec.uniform(document.rank, document.size, mult)
    if isinstance(document, GraphicDocument):
        return MatroidSpec.graphic(document.vertices, document.edges)
    if isinstance(document, MatrixDocument):
        return MatroidSpec.matrix(document.columns)
    _check_size(document.size, 'size', max_size)
    rank = _table(document.rank, document.size, 'rank')
    mult = _table(document.multiplicity, document.size, 'multiplicity', document.default)
    return MatroidSpec(SpecKind.EXPLICIT, size=document.size, rank_table=rank, multiplicity=mult)


def parse_spec(text: Union[str, bytes], max_size: Optional[int] = None) -> MatroidSpec:
    """
    Parse a spec document

    Raises:
        MalformedDocument: invalid JSON (with line and column) or a bad field
        UnknownKind: "kind" is not uniform, graphic, matrix or explicit
        BadSubsetKey, TableSizeMismatch: explicit tables that do not fit the size
    """
    if isinstance(text, bytes):
        try:
            text = text.decode('utf-8')
        except UnicodeDecodeError as e:
            raise MalformedDocument(f"Document is not valid UTF-8: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedDocument(f"line {e.lineno} column {e.colno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise MalformedDocument("line 1: top level must be a JSON object")
    if 'kind' not in data:
        raise MalformedDocument("kind: field required")
    if data['kind'] not in [kind.value for kind in SpecKind]:
        raise UnknownKind(f"kind: unknown matroid kind {data['kind']!r}")
    try:
        document = _spec_adapter.validate_python(data)
    except ValidationError as e:
        error = e.errors()[0]
        location = '.'.join(str(part) for part in error['loc'][1:]) or 'document'
        raise MalformedDocument(f"{location}: {error['msg']}") from e
    spec = _to_spec(document, max_size)
    logger.debug(f"Parsed {spec.kind.value} spec with ground set of size {spec.ground_size}")
    return spec


def emit_spec(spec: MatroidSpec) -> str:
    """Serialize a spec so that parse_spec reads it back unchanged"""
    if spec.kind == SpecKind.UNIFORM:
        mult = None
        if spec.multiplicity is not None:
            mult = {subset_key(mask): _json_int(m) for mask, m in enumerate(spec.multiplicity)}
        document = UniformDocument(kind='uniform', rank=spec.rank, size=spec.size, multiplicity=mult)
    elif spec.kind == SpecKind.GRAPHIC:
        document = GraphicDocument(kind='graphic', vertices=spec.vertices, edges=list(spec.edges))
    elif spec.kind == SpecKind.MATRIX:
        document = MatrixDocument(kind='matrix', columns=[list(c) for c in spec.columns])
    else:
        document = ExplicitDocument(
            kind='explicit',
            size=spec.size,
            rank={subset_key(mask): r for mask, r in enumerate(spec.rank_table)},
            multiplicity={subset_key(mask): _json_int(m) for mask, m in enumerate(spec.multiplicity)},
        )
    return document.model_dump_json(indent=2, exclude_none=True)


# Report documents

class _Report(BaseModel):
    model_config = ConfigDict(extra='forbid', populate_by_name=True)


class PolyDocument(_Report):
    poly: str
    value: str


class SampleEntry(_Report):
    point: Dict[str, str]
    lhs: str
    rhs1: str
    rhs2: Optional[str] = None


class IdentityEntry(_Report):
    identity: str
    equal: bool
    mode: str
    lhs: str
    rhs1: Optional[str] = None
    rhs2: Optional[str] = None
    samples: Optional[List[SampleEntry]] = None
    millis: Optional[float] = None


class ReportDocument(_Report):
    passed: bool = Field(alias='pass')
    entries: List[IdentityEntry]


class AxiomEntry(_Report):
    holds: bool
    counterexample: Optional[List[str]] = None


class AxiomDocument(_Report):
    passed: bool = Field(alias='pass')
    matroid: bool
    axiom1: AxiomEntry
    axiom2: AxiomEntry
    axiom3: AxiomEntry
    axiom4: AxiomEntry


class CorpusEntryDocument(_Report):
    index: int
    name: str
    passed: bool = Field(alias='pass')
    error: Optional[str] = None
    identities: List[IdentityEntry] = Field(default_factory=list)
    axioms_required: bool = False
    axioms: Optional[AxiomDocument] = None
    oracle: Optional[bool] = None


class CorpusDocument(_Report):
    passed: bool = Field(alias='pass')
    seed: int
    entries: List[CorpusEntryDocument]
    seconds: Optional[float] = None


def identity_entry(report: IdentityReport, timing: bool = True) -> IdentityEntry:
    samples = None
    if report.samples:
        samples = [
            SampleEntry(
                point={str(var): str(value) for var, value in sample.point},
                lhs=str(sample.lhs),
                rhs1=str(sample.rhs_first),
                rhs2=None if sample.rhs_second is None else str(sample.rhs_second),
            )
            for sample in report.samples
        ]
    return IdentityEntry(
        identity=report.identity_id.value,
        equal=report.equal,
        mode=report.mode.value,
        lhs=canonical_string(report.lhs),
        rhs1=None if report.rhs_first is None else canonical_string(report.rhs_first),
        rhs2=None if report.rhs_second is None else canonical_string(report.rhs_second),
        samples=samples,
        millis=round(report.millis, 3) if timing else None,
    )


def report_document(reports: List[IdentityReport], timing: bool = True) -> ReportDocument:
    return ReportDocument(
        passed=all(report.equal for report in reports),
        entries=[identity_entry(report, timing) for report in reports],
    )


def _verdict_entry(verdict: AxiomVerdict, element_last: bool = False) -> AxiomEntry:
    if verdict.counterexample is None:
        return AxiomEntry(holds=verdict.holds)
    masks = list(verdict.counterexample)
    keys = [subset_key(mask) for mask in masks]
    if element_last:
        keys[-1] = str(masks[-1])
    return AxiomEntry(holds=verdict.holds, counterexample=keys)


def axiom_document(report: AxiomReport) -> AxiomDocument:
    """Counterexamples are listed as subset keys; axiom 1 ends with the added element"""
    return AxiomDocument(
        passed=report.all_hold,
        matroid=report.matroid_ok,
        axiom1=_verdict_entry(report.axiom1, element_last=True),
        axiom2=_verdict_entry(report.axiom2),
        axiom3=_verdict_entry(report.axiom3),
        axiom4=_verdict_entry(report.axiom4),
    )


def _corpus_entry(result: EntryResult, timing: bool) -> CorpusEntryDocument:
    return CorpusEntryDocument(
        index=result.index,
        name=result.name,
        passed=result.passed,
        error=result.error,
        identities=[identity_entry(report, timing) for report in result.reports],
        axioms_required=result.axioms_required,
        axioms=None if result.axioms is None else axiom_document(result.axioms),
        oracle=result.oracle_agrees,
    )


def corpus_document(run: CorpusRun, timing: bool = False) -> CorpusDocument:
    """Deterministic unless timing is requested"""
    return CorpusDocument(
        passed=run.passed,
        seed=run.seed,
        entries=[_corpus_entry(result, timing) for result in run.entries],
        seconds=round(run.elapsed, 3) if timing else None,
    )


def dump_document(document: BaseModel) -> str:
    return document.model_dump_json(indent=2, by_alias=True, exclude_none=True)
