"""
Command-line surface: compute, verify, axioms, corpus
"""
import argparse
import logging
from typing import Callable, Dict, List, Optional, Sequence

from cli.middleware import EXIT_FAILED, EXIT_OK, EXIT_USAGE, input_errors, logged_command, setup_logging
from models.constructors import build_matroid
from models.matroid import MultiplicityMatroid, check_arithmetic_axioms
from models.poly_engine import canonical_string
from models.reports import IdentityReport
from models.settings import max_ground_set
from models.tutte_polys import PolyKind, PolyRequest, compute_poly
from services.convolution import ConvolutionVerifier
from services.corpus import CorpusRunner, default_corpus
from services.spec_io import (
    PolyDocument,
    axiom_document,
    corpus_document,
    dump_document,
    parse_spec,
    report_document,
)

logger = logging.getLogger(__name__)

POLY_KINDS = {
    'z': PolyKind.ARITHMETIC_Z,
    'tutte': PolyKind.TUTTE,
    'arith-tutte': PolyKind.ARITHMETIC_TUTTE,
    'char': PolyKind.CHARACTERISTIC,
}

Check = Callable[[ConvolutionVerifier, MultiplicityMatroid, MultiplicityMatroid], IdentityReport]

IDENTITIES: Dict[str, Check] = {
    'product-mv': lambda verifier, M1, M2: verifier.verify_product_multivariate(M1, M2),
    'product-uv': lambda verifier, M1, M2: verifier.verify_product_univariate(M1, M2),
    'single-mv': lambda verifier, M1, M2: verifier.verify_single_multivariate(M1),
    'single-uv': lambda verifier, M1, M2: verifier.verify_single_univariate(M1),
    'dupont': lambda verifier, M1, M2: verifier.verify_dupont(M1, M2),
    'backman-lenz': lambda verifier, M1, M2: verifier.verify_backman_lenz(M1, M2),
    'mixed': lambda verifier, M1, M2: verifier.verify_mixed_tutte(M1),
    'char': lambda verifier, M1, M2: verifier.verify_char_convolution(M1),
    'char-product': lambda verifier, M1, M2: verifier.verify_char_product(M1, M2),
    'kook': lambda verifier, M1, M2: verifier.verify_classical_kook(M1),
}


def _load(path: str, config: Optional[str]) -> MultiplicityMatroid:
    cap = max_ground_set(config)
    with open(path, 'rb') as f:
        spec = parse_spec(f.read(), max_size=cap)
    return build_matroid(spec, max_size=cap)


def _fast_mode(args) -> Optional[bool]:
    return getattr(args, 'fast', None)


def format_report(report: IdentityReport) -> List[str]:
    lines = [f"{report.identity_id.value}: equal={str(report.equal).lower()} ({report.mode.value})"]
    lines.append(f"  lhs:  {canonical_string(report.lhs)}")
    if report.rhs_first is not None:
        lines.append(f"  rhs1: {canonical_string(report.rhs_first)}")
    if report.rhs_second is not None:
        lines.append(f"  rhs2: {canonical_string(report.rhs_second)}")
    for sample in report.samples:
        point = ', '.join(f"{var}={value}" for var, value in sample.point)
        values = [str(sample.lhs), str(sample.rhs_first)]
        if sample.rhs_second is not None:
            values.append(str(sample.rhs_second))
        lines.append(f"  at {point}: {' | '.join(values)}")
    return lines


@logged_command
@input_errors
def compute_command(args) -> int:
    M = _load(args.input, args.config)
    kind = POLY_KINDS[args.poly]
    request = PolyRequest(kind, collapsed=args.univariate and kind.multivariate)
    value = canonical_string(compute_poly(M, request))
    if args.json:
        print(dump_document(PolyDocument(poly=args.poly, value=value)))
    else:
        print(value)
    return EXIT_OK


@logged_command
@input_errors
def verify_command(args) -> int:
    M1 = _load(args.input, args.config)
    # without --with the second multiplicity is trivial
    M2 = _load(args.with_input, args.config) if args.with_input else M1.trivialized()
    verifier = ConvolutionVerifier(args.config, fast_mode=_fast_mode(args))
    names = list(IDENTITIES) if args.identity == 'all' else [args.identity]
    reports = [IDENTITIES[name](verifier, M1, M2) for name in names]
    document = report_document(reports)
    if args.json:
        print(dump_document(document))
    else:
        for report in reports:
            print('\n'.join(format_report(report)))
        print(f"pass: {str(document.passed).lower()}")
    return EXIT_OK if document.passed else EXIT_FAILED


@logged_command
@input_errors
def axioms_command(args) -> int:
    M = _load(args.input, args.config)
    document = axiom_document(check_arithmetic_axioms(M))
    if args.json:
        print(dump_document(document))
    else:
        print(f"matroid: {str(document.matroid).lower()}")
        for name in ('axiom1', 'axiom2', 'axiom3', 'axiom4'):
            entry = getattr(document, name)
            line = f"{name}: {str(entry.holds).lower()}"
            if entry.counterexample is not None:
                line += f" counterexample={entry.counterexample}"
            print(line)
        print(f"pass: {str(document.passed).lower()}")
    return EXIT_OK if document.passed else EXIT_FAILED


@logged_command
@input_errors
def corpus_command(args) -> int:
    corpus = default_corpus(args.seed, args.max_n, args.config)
    runner = CorpusRunner(args.config, workers=args.workers, fast_mode=_fast_mode(args))
    run = runner.verify_all(corpus)
    document = corpus_document(run, timing=args.timing)
    if args.json:
        print(dump_document(document))
    else:
        for entry in document.entries:
            status = 'ok' if entry.passed else 'FAIL'
            line = f"[{status}] {entry.index:3d} {entry.name}"
            if entry.error:
                line += f": {entry.error}"
            print(line)
        print(f"pass: {str(document.passed).lower()} ({len(document.entries)} entries, seed {run.seed})")
    return EXIT_OK if run.passed else EXIT_FAILED


def _add_mode_flags(parser: argparse.ArgumentParser) -> None:
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument('--fast', dest='fast', action='store_const', const=True, default=None,
                      help='sample random rational points above verification.symbolic_max_n')
    mode.add_argument('--exact', dest='fast', action='store_const', const=False,
                      help='always expand both sides symbolically')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='matroid-convolutions',
        description='Tutte polynomials of multiplicity matroids and their convolution identities',
    )
    parser.add_argument('--verbose', action='store_true', help='debug logging on stderr')
    parser.add_argument('--config', default=None, help='settings file (default config/toolkit.yaml)')
    sub = parser.add_subparsers(dest='command', required=True)

    compute = sub.add_parser('compute', help='print one polynomial of a matroid')
    compute.add_argument('--input', required=True)
    compute.add_argument('--poly', required=True, choices=list(POLY_KINDS))
    compute.add_argument('--univariate', action='store_true', help='shared v for the z polynomial')
    compute.add_argument('--json', action='store_true')
    compute.set_defaults(handler=compute_command)

    verify = sub.add_parser('verify', help='check convolution identities')
    verify.add_argument('--input', required=True)
    verify.add_argument('--with', dest='with_input', default=None,
                        help='second multiplicity on the same underlying matroid')
    verify.add_argument('--identity', default='all', choices=['all'] + list(IDENTITIES))
    verify.add_argument('--json', action='store_true')
    _add_mode_flags(verify)
    verify.set_defaults(handler=verify_command)

    axioms = sub.add_parser('axioms', help='check the arithmetic matroid axioms')
    axioms.add_argument('--input', required=True)
    axioms.add_argument('--json', action='store_true')
    axioms.set_defaults(handler=axioms_command)

    corpus = sub.add_parser('corpus', help='verify everything on the built-in corpus')
    corpus.add_argument('--seed', type=int, default=None)
    corpus.add_argument('--max-n', dest='max_n', type=int, default=None)
    corpus.add_argument('--workers', type=int, default=None)
    corpus.add_argument('--timing', action='store_true', help='include timings in the report')
    corpus.add_argument('--json', action='store_true')
    _add_mode_flags(corpus)
    corpus.set_defaults(handler=corpus_command)

    return parser


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    setup_logging(args.verbose)
    return args.handler(args)
