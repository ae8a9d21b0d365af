"""
Tests for spec documents and report documents
"""
import json
import pytest
import sys
import os

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.constructors import MatroidSpec, SpecKind, build_matroid, from_integer_matrix
from models.errors import (
    BadSubsetKey,
    GroundSetTooLarge,
    MalformedDocument,
    TableSizeMismatch,
    UnknownKind,
)
from models.matroid import MultiplicityMatroid, check_arithmetic_axioms
from services.convolution import ConvolutionVerifier
from services.corpus import CorpusRunner, default_corpus
from services.spec_io import (
    AxiomDocument,
    CorpusDocument,
    ReportDocument,
    axiom_document,
    corpus_document,
    dump_document,
    emit_spec,
    parse_spec,
    parse_subset_key,
    report_document,
    subset_key,
)


class TestParseSpec:
    """Test reading spec documents"""

    def test_matrix(self):
        spec = parse_spec('{"kind": "matrix", "columns": [[2]]}')
        assert spec.kind == SpecKind.MATRIX
        assert spec.ground_size == 1

    def test_uniform(self):
        spec = parse_spec('{"kind": "uniform", "rank": 2, "size": 4}')
        assert spec == MatroidSpec.uniform(2, 4)

    def test_explicit_matches_matrix_two(self):
        spec = parse_spec(
            '{"kind": "explicit", "size": 1, "rank": {"": 0, "0": 1}, "multiplicity": {"": 1, "0": 2}}'
        )
        assert build_matroid(spec) == from_integer_matrix([[2]])

    def test_graphic(self):
        spec = parse_spec('{"kind": "graphic", "vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]}')
        assert spec.edges == ((0, 1), (1, 2), (0, 2))

    def test_multiplicity_as_string(self):
        spec = parse_spec(
            '{"kind": "explicit", "size": 1, "rank": {"": 0, "0": 1},'
            ' "multiplicity": {"": "1", "0": "36893488147419103232"}}'
        )
        assert spec.multiplicity == (1, 2 ** 65)

    def test_default_fills_missing_multiplicities(self):
        spec = parse_spec(
            '{"kind": "explicit", "size": 2, "rank": {"": 0, "0": 1, "1": 1, "0,1": 1},'
            ' "multiplicity": {"0,1": 3}, "default": 1}'
        )
        assert spec.multiplicity == (1, 1, 1, 3)

    def test_invalid_json(self):
        with pytest.raises(MalformedDocument) as excinfo:
            parse_spec('{"kind": "matrix",\n "columns": [[2]}')
        assert 'line 2' in str(excinfo.value)

    def test_unknown_kind(self):
        with pytest.raises(UnknownKind):
            parse_spec('{"kind": "lattice"}')

    def test_unknown_field(self):
        with pytest.raises(MalformedDocument) as excinfo:
            parse_spec('{"kind": "matrix", "columns": [[2]], "height": 1}')
        assert 'height' in str(excinfo.value)

    def test_wrong_type(self):
        with pytest.raises(MalformedDocument) as excinfo:
            parse_spec('{"kind": "uniform", "rank": "2", "size": 4}')
        assert 'rank' in str(excinfo.value)

    def test_bad_subset_key(self):
        with pytest.raises(BadSubsetKey):
            parse_spec(
                '{"kind": "explicit", "size": 2, "rank": {"": 0, "0": 1, "1": 1, "1,0": 1},'
                ' "multiplicity": {}, "default": 1}'
            )

    def test_missing_subsets(self):
        with pytest.raises(TableSizeMismatch):
            parse_spec(
                '{"kind": "explicit", "size": 1, "rank": {"": 0, "0": 1}, "multiplicity": {"": 1}}'
            )

    def test_size_cap(self):
        with pytest.raises(GroundSetTooLarge):
            parse_spec('{"kind": "uniform", "rank": 1, "size": 40}')

    def test_subset_keys(self):
        assert subset_key(0) == ''
        assert subset_key(0b101) == '0,2'
        assert parse_subset_key('0,2', 3) == 0b101
        with pytest.raises(BadSubsetKey):
            parse_subset_key('3', 3)
        with pytest.raises(BadSubsetKey):
            parse_subset_key('0,,1', 3)

    def test_subset_keys_are_ascii_digits(self):
        for key in ('\u00b2', '0,\u0661', '+1', ' 1'):
            with pytest.raises(BadSubsetKey):
                parse_subset_key(key, 3)

    def test_malformed_multiplicity_string(self):
        for value in ('--5', '\u00b2', '1.5', ''):
            document = json.dumps({
                'kind': 'explicit', 'size': 1,
                'rank': {'': 0, '0': 1},
                'multiplicity': {'': 1, '0': value},
            })
            with pytest.raises(MalformedDocument):
                parse_spec(document)


class TestEmitSpec:
    """Test writing spec documents"""

    def test_corpus_round_trip(self):
        """Every corpus spec reads back with identical tables"""
        for entry in default_corpus(42, max_n=4).entries:
            for spec in (entry.spec, entry.partner):
                if spec is None:
                    continue
                again = parse_spec(emit_spec(spec))
                assert build_matroid(again) == build_matroid(spec), entry.name

    def test_large_multiplicities_are_strings(self):
        text = emit_spec(MatroidSpec.explicit([0, 1], [1, 2 ** 70]))
        assert json.loads(text)['multiplicity']['0'] == str(2 ** 70)
        assert parse_spec(text).multiplicity == (1, 2 ** 70)


class TestReportDocuments:
    """Test report serialization"""

    def test_identity_report(self):
        verifier = ConvolutionVerifier()
        M = from_integer_matrix([[2]])
        document = report_document([verifier.verify_char_convolution(M)])
        data = json.loads(dump_document(document))
        assert data['pass'] is True
        entry = data['entries'][0]
        assert entry['identity'] == 'char_convolution'
        assert entry['equal'] is True
        assert entry['lhs'] == '-2 + l*s'
        assert 'rhs2' in entry

    def test_single_sum_has_no_second_side(self):
        M = from_integer_matrix([[2]])
        document = report_document([ConvolutionVerifier().verify_classical_kook(M)])
        assert 'rhs2' not in json.loads(dump_document(document))['entries'][0]

    def test_report_reparses(self):
        M = from_integer_matrix([[2, 0], [0, 3]])
        document = report_document(ConvolutionVerifier().verify_matroid(M))
        assert ReportDocument.model_validate_json(dump_document(document)) == document

    def test_axiom_document(self):
        report = check_arithmetic_axioms(MultiplicityMatroid([0, 1], [2, 3]))
        document = axiom_document(report)
        assert not document.passed
        assert document.axiom1.counterexample == ['', '0']
        assert AxiomDocument.model_validate_json(dump_document(document)) == document

    def test_corpus_document_is_deterministic(self):
        corpus = default_corpus(42, max_n=2)
        first = dump_document(corpus_document(CorpusRunner().verify_all(corpus)))
        second = dump_document(corpus_document(CorpusRunner().verify_all(corpus)))
        assert first == second
        assert 'millis' not in first
        assert CorpusDocument.model_validate_json(first).passed
