"""
Seeded verification corpus and the concurrent runner over it
"""
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from models.constructors import MatroidSpec, SpecKind, build_matroid, oracle_disagreement
from models.matroid import AxiomReport, check_arithmetic_axioms
from models.reports import IdentityReport
from models.settings import get_settings
from models.tutte_polys import check_chi_relations, check_dupont_substitution, check_Z_to_M_relation
from services.convolution import ConvolutionVerifier

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorpusEntry:
    """
    One matroid of the corpus, optionally paired with a second multiplicity
    on the same underlying matroid

    expect_arithmetic marks matroids that satisfy the arithmetic axioms by
    construction (trivial multiplicities and integer matrices).
    """
    name: str
    spec: MatroidSpec
    partner: Optional[MatroidSpec] = None
    expect_arithmetic: bool = False


@dataclass(frozen=True)
class Corpus:
    seed: int
    entries: Tuple[CorpusEntry, ...] = ()


def _random_columns(rng: random.Random, max_height: int, max_columns: int,
                    bound: int) -> List[List[int]]:
    height = rng.randint(1, max_height)
    width = rng.randint(1, max_columns)
    return [[rng.randint(-bound, bound) for _ in range(height)] for _ in range(width)]


def default_corpus(seed: Optional[int] = None, max_n: Optional[int] = None,
                   config_path: Optional[str] = None) -> Corpus:
    """
    Build the standard corpus from the corpus section of the settings

    Uniform matroids U_{r,n}, the listed graphs, seeded random integer
    matrices, seeded random multiplicity tables on U_{2,4} and seeded
    product pairs (a matrix with a random second multiplicity table).
    Entries larger than max_n are dropped.
    """
    settings = get_settings(config_path)['corpus']
    seed = int(settings.get('seed', 42)) if seed is None else seed
    rng = random.Random(seed)
    entries: List[CorpusEntry] = []

    for n in range(settings['uniform_max_size'] + 1):
        for r in range(n + 1):
            entries.append(CorpusEntry(f"U_{r},{n}", MatroidSpec.uniform(r, n), expect_arithmetic=True))

    for graph in settings.get('graphs', []):
        entries.append(CorpusEntry(
            graph['name'], MatroidSpec.graphic(graph['vertices'], graph['edges']),
            expect_arithmetic=True,
        ))

    matrices = settings['random_matrices']
    for i in range(matrices['count']):
        columns = _random_columns(rng, matrices['max_height'], matrices['max_columns'],
                                  matrices['entry_bound'])
        entries.append(CorpusEntry(f"matrix_{i}", MatroidSpec.matrix(columns), expect_arithmetic=True))

    tables = settings['random_tables']
    for i in range(tables['count']):
        mult = [rng.randint(1, tables['max_value']) for _ in range(1 << tables['size'])]
        entries.append(CorpusEntry(
            f"table_{i}", MatroidSpec.uniform(tables['rank'], tables['size'], mult)
        ))

    pairs = settings['product_pairs']
    for i in range(pairs['count']):
        columns = _random_columns(rng, pairs['max_height'], pairs['max_columns'],
                                  pairs['entry_bound'])
        spec = MatroidSpec.matrix(columns)
        rank_table = build_matroid(spec).rank.tolist()
        mult = [rng.randint(1, pairs['max_value']) for _ in rank_table]
        entries.append(CorpusEntry(
            f"pair_{i}", spec, MatroidSpec.explicit(rank_table, mult), expect_arithmetic=True
        ))

    if max_n is not None:
        entries = [entry for entry in entries if entry.spec.ground_size <= max_n]
    logger.info(f"Default corpus with seed {seed}: {len(entries)} entries")
    return Corpus(seed, tuple(entries))


@dataclass
class EntryResult:
    index: int
    name: str
    reports: List[IdentityReport] = field(default_factory=list)
    axioms: Optional[AxiomReport] = None
    axioms_required: bool = False
    oracle_agrees: Optional[bool] = None
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        if self.error is not None:
            return False
        if self.axioms_required and not (self.axioms and self.axioms.all_hold):
            return False
        return self.oracle_agrees is not False and all(report.equal for report in self.reports)


@dataclass
class CorpusRun:
    seed: int
    entries: List[EntryResult]
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(entry.passed for entry in self.entries)


class CorpusRunner:
    """
    Runs every identity, relation, axiom and oracle check over a corpus
    """

    def __init__(self, config_path: Optional[str] = None, workers: Optional[int] = None,
                 fast_mode: Optional[bool] = None):
        settings = get_settings(config_path)
        self.workers = workers or int(settings.get('processing', {}).get('workers', 4))
        self.verifier = ConvolutionVerifier(config_path, fast_mode=fast_mode)

        logger.info(f"Corpus runner initialized with workers={self.workers}")

    def verify_entry(self, index: int, entry: CorpusEntry) -> EntryResult:
        result = EntryResult(index, entry.name)
        M = build_matroid(entry.spec)

        result.reports.extend(self.verifier.verify_matroid(M))
        result.reports.append(check_Z_to_M_relation(M))
        result.reports.extend(check_chi_relations(M))
        result.reports.append(check_dupont_substitution(M))
        if entry.partner is not None:
            result.reports.extend(self.verifier.verify_pair(M, build_matroid(entry.partner)))

        result.axioms = check_arithmetic_axioms(M)
        result.axioms_required = entry.expect_arithmetic
        if entry.spec.kind == SpecKind.MATRIX:
            result.oracle_agrees = oracle_disagreement(entry.spec.columns, M) is None
        return result

    def verify_all(self, corpus: Corpus) -> CorpusRun:
        """
        Verify every entry concurrently

        A failing entry is recorded with its error message and the run
        continues. Results are ordered by corpus position.
        """
        start_time = time.time()
        results: List[EntryResult] = []

        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            future_to_entry = {
                executor.submit(self.verify_entry, i, entry): (i, entry)
                for i, entry in enumerate(corpus.entries)
            }

            for future in as_completed(future_to_entry):
                idx, entry = future_to_entry[future]
                try:
                    result = future.result()
                except Exception as e:
                    logger.error(f"Error verifying corpus entry {idx} ({entry.name}): {e}")
                    result = EntryResult(idx, entry.name, error=str(e))
                logger.debug(f"Entry {idx} ({entry.name}): passed={result.passed}")
                results.append(result)

        results.sort(key=lambda r: r.index)
        elapsed = time.time() - start_time
        run = CorpusRun(corpus.seed, results, elapsed)
        logger.info(f"Verified {len(results)} corpus entries in {elapsed:.2f}s, passed={run.passed}")
        return run
