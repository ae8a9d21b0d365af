"""
Tests for the verification corpus and the concurrent runner
"""
import pytest
import sys
import os

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.constructors import MatroidSpec, SpecKind, build_matroid
from models.reports import IdentityId
from services.corpus import Corpus, CorpusEntry, CorpusRunner, default_corpus


@pytest.fixture
def runner():
    return CorpusRunner(workers=4)


class TestDefaultCorpus:
    """Test corpus construction"""

    @pytest.fixture
    def corpus(self):
        return default_corpus(42)

    def test_entry_counts(self, corpus):
        names = [entry.name for entry in corpus.entries]
        assert sum(name.startswith('U_') for name in names) == 21
        assert 'K3' in names and 'K4' in names
        assert sum(name.startswith('matrix_') for name in names) == 25
        assert sum(name.startswith('table_') for name in names) == 10
        assert sum(name.startswith('pair_') for name in names) == 15
        assert len(corpus.entries) == 73

    def test_matrix_bounds(self, corpus):
        for entry in corpus.entries:
            if entry.spec.kind != SpecKind.MATRIX:
                continue
            assert 1 <= len(entry.spec.columns) <= 6
            for column in entry.spec.columns:
                assert 1 <= len(column) <= 4
                assert all(-5 <= x <= 5 for x in column)

    def test_pairs_share_rank_tables(self, corpus):
        for entry in corpus.entries:
            if entry.partner is None:
                continue
            M1 = build_matroid(entry.spec)
            M2 = build_matroid(entry.partner)
            assert M1.same_underlying(M2)

    def test_deterministic(self, corpus):
        assert default_corpus(42) == corpus
        assert default_corpus(43) != corpus

    def test_max_n(self):
        small = default_corpus(42, max_n=3)
        assert all(entry.spec.ground_size <= 3 for entry in small.entries)
        assert len(small.entries) == 10 + sum(
            1 for entry in default_corpus(42).entries
            if entry.spec.kind != SpecKind.UNIFORM and entry.spec.ground_size <= 3
        )


class TestCorpusRunner:
    """Test verify_all"""

    def test_empty_corpus(self, runner):
        run = runner.verify_all(Corpus(0))
        assert run.entries == []
        assert run.passed

    def test_entry_checks(self, runner):
        entry = CorpusEntry('diag', MatroidSpec.matrix([[2, 0], [0, 3]]),
                            MatroidSpec.explicit([0, 1, 1, 2], [5, 1, 2, 3]), expect_arithmetic=True)
        result = runner.verify_entry(0, entry)
        ids = {report.identity_id for report in result.reports}
        assert IdentityId.Z_TO_ARITH_TUTTE in ids
        assert IdentityId.CHI_CLASSICAL in ids
        assert IdentityId.DUPONT_SUBSTITUTION in ids
        assert IdentityId.PRODUCT_MULTIVARIATE in ids
        assert IdentityId.CHAR_PRODUCT in ids
        assert result.axioms.all_hold
        assert result.oracle_agrees
        assert result.passed

    def test_failing_entry_does_not_stop_the_run(self, runner):
        corpus = Corpus(0, (
            CorpusEntry('good', MatroidSpec.uniform(1, 2)),
            CorpusEntry('mismatch', MatroidSpec.matrix([[2]]), MatroidSpec.uniform(1, 2)),
            CorpusEntry('also_good', MatroidSpec.graphic(2, [(0, 1)])),
        ))
        run = runner.verify_all(corpus)
        assert [entry.name for entry in run.entries] == ['good', 'mismatch', 'also_good']
        assert run.entries[0].passed
        assert run.entries[1].error is not None
        assert run.entries[2].passed
        assert not run.passed

    def test_non_arithmetic_table_is_not_required(self, runner):
        """The broken U_{1,1} fails axiom 1 but still satisfies every identity"""
        entry = CorpusEntry('broken', MatroidSpec.explicit([0, 1], [2, 3]))
        result = runner.verify_entry(0, entry)
        assert not result.axioms.axiom1.holds
        assert result.axioms.axiom1.counterexample == (0, 0)
        assert result.passed

    def test_required_axioms(self, runner):
        entry = CorpusEntry('broken', MatroidSpec.explicit([0, 1], [2, 3]), expect_arithmetic=True)
        assert not runner.verify_entry(0, entry).passed

    def test_small_corpus(self, runner):
        run = runner.verify_all(default_corpus(42, max_n=3))
        assert run.passed
        assert [entry.index for entry in run.entries] == list(range(len(run.entries)))


@pytest.fixture(scope='module')
def full_run():
    """One verify_all over the default corpus, shared by TestFullCorpus"""
    return CorpusRunner(workers=4).verify_all(default_corpus(42))


class TestFullCorpus:
    """Every identity, relation, axiom and oracle check on the default corpus"""

    def test_everything_passes(self, full_run):
        failures = [entry.name for entry in full_run.entries if not entry.passed]
        assert failures == []

    def test_matrix_matroids_are_arithmetic(self, full_run):
        for entry in full_run.entries:
            if entry.name.startswith(('matrix_', 'pair_')):
                assert entry.axioms.all_hold, entry.name
                assert entry.oracle_agrees, entry.name

    def test_product_identities_ran_on_pairs(self, full_run):
        for entry in full_run.entries:
            if entry.name.startswith('pair_'):
                ids = {report.identity_id for report in entry.reports}
                assert IdentityId.DUPONT_ABCD in ids
                assert IdentityId.BACKMAN_LENZ in ids
