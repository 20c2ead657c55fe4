"""evoclaws command line interface"""

import sys
from argparse import ArgumentDefaultsHelpFormatter, ArgumentParser, Namespace
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, List, Sequence, Tuple
import termcolor
from tqdm import tqdm

from .. import __version__
from ..base import set_logger
from ..base.exceptions import (CatalogError, ClassifyError, ClawsError, ExpressionError, JetError,
                               Mismatch, Refuted, VerifyError)
from ..catalog import check_report, table_entries
from ..claws import ConservedVector, DEFAULT_DEGREE
from ..classify import Classifier, normalized_images
from ..expr.canonical import DEFAULT_SEED
from ..expr.parser import parse, parse_declaration
from ..expr.printer import to_text
from ..jet import EvolutionEquation
from ..verify import VERIFY_SAMPLES, verify_characteristic, verify_conserved, verify_report
from .report import (dumps, normalized_dicts, render_certificate, render_report, render_table,
                     report_dict)

TAG = termcolor.colored('evoclaws (v%s)' % __version__, 'cyan', attrs=['underline'])
DESCRIPTION = ('%s: classifies the local conservation laws of evolution equations '
               'u_t = H(t,x,u,u_x,u_xx) and certifies every law it reports.' % TAG)
VERBOSE = 'turn on detailed logging'
FUNCTIONS = 'declare a function symbol, e.g. "A(u)" or "h(t,x)|backward_heat" (repeatable)'
DEGREE = 'degree of the polynomial density ansatz'
SEED = 'seed for numeric sampling'
EMIT_SYSTEMS = 'include unsolved determining and transformation systems in the report'
JSON = 'print the report as JSON'
TEXT = 'print a human readable summary'
JOBS = 'number of worker processes for batch input'
FILE = 'read equations from a file, one per line ("-" for stdin)'
EQUATION = ('right-hand side H of u_t = H; put "--" before an H starting with "-", '
            'e.g. "classify -- -1/u_xx"')
DENSITY = 'density F'
FLUX = 'flux G'
CHARACTERISTIC = 'characteristic lambda, checked when given'
SAMPLES = 'number of sample points when no symbolic certificate exists'

OK, REFUTED, BAD_INPUT = 0, 1, 2

logger = set_logger('cli')


def add_default_args(parser: ArgumentParser) -> ArgumentParser:
    """Add the options shared by every evoclaws subcommand"""
    parser.add_argument('--verbose', action='store_true', default=False, help=VERBOSE)
    parser.add_argument('--functions', action='append', default=[], help=FUNCTIONS)
    parser.add_argument('--degree', type=int, default=DEFAULT_DEGREE, help=DEGREE)
    parser.add_argument('--seed', type=int, default=DEFAULT_SEED, help=SEED)
    parser.add_argument('--emit-systems', action='store_true', default=False, help=EMIT_SYSTEMS)
    output = parser.add_mutually_exclusive_group()
    output.add_argument('--json', dest='output', action='store_const', const='json', help=JSON)
    output.add_argument('--text', dest='output', action='store_const', const='text', help=TEXT)
    parser.set_defaults(output='json')
    return parser


def get_parser() -> ArgumentParser:
    parser = ArgumentParser(description=DESCRIPTION, formatter_class=ArgumentDefaultsHelpFormatter)
    parser.add_argument('--version', action='version', version=__version__)
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    classify = commands.add_parser('classify', help='classify the conservation laws of H',
                                   formatter_class=ArgumentDefaultsHelpFormatter)
    add_default_args(classify)
    classify.add_argument('equation', nargs='?', help=EQUATION)
    classify.add_argument('--file', type=str, default=None, help=FILE)
    classify.add_argument('--jobs', type=int, default=1, help=JOBS)

    verify = commands.add_parser('verify', help='certify a conserved vector',
                                 formatter_class=ArgumentDefaultsHelpFormatter)
    add_default_args(verify)
    verify.add_argument('equation', help=EQUATION)
    verify.add_argument('density', help=DENSITY)
    verify.add_argument('flux', help=FLUX)
    verify.add_argument('characteristic', nargs='?', default=None, help=CHARACTERISTIC)
    verify.add_argument('--samples', type=int, default=VERIFY_SAMPLES, help=SAMPLES)

    reduce = commands.add_parser('reduce', help='divergence forms and normalising transformations',
                                 formatter_class=ArgumentDefaultsHelpFormatter)
    add_default_args(reduce)
    reduce.add_argument('equation', help=EQUATION)

    table = commands.add_parser('table', help='reproduce the diffusion-convection table',
                                formatter_class=ArgumentDefaultsHelpFormatter)
    add_default_args(table)
    return parser


def get_args(argv: List[str] = None) -> Namespace:
    """Get parsed arguments for the evoclaws cli"""
    return get_parser().parse_args(argv)


def read_equation(text: str, functions: Sequence[str]) -> EvolutionEquation:
    declarations = [parse_declaration(d) for d in functions]
    return EvolutionEquation(parse(text, declarations), [d for d in declarations
                                                        if not isinstance(d, str)])


def classify_text(text: str, functions: Sequence[str] = (), degree: int = DEFAULT_DEGREE,
                  seed: int = DEFAULT_SEED, emit_systems: bool = False,
                  verbose: bool = False) -> Tuple[Dict, List[str]]:
    """Serialised report and stage timings for one equation; input errors are
    reported in the dictionary"""
    try:
        eq = read_equation(text, functions)
    except (ExpressionError, JetError) as e:
        return dict(input=text, error='%s: %s' % (type(e).__name__, e)), []
    classifier = Classifier(degree=degree, seed=seed, emit_systems=emit_systems, verbose=verbose)
    report = classifier.decide(eq)
    try:
        certificates = verify_report(report, seed=seed)
    except (VerifyError, ClassifyError, ClawsError, JetError) as e:
        logger.error('report for %s failed verification: %s', text, e)
        report.failures.append('verification: %s' % e)
        certificates = []
    return report_dict(report, text, certificates), report.timings


def _classify_job(job: Tuple) -> Tuple[Dict, List[str]]:
    return classify_text(*job)


def read_batch(path: str) -> List[str]:
    stream = sys.stdin if path == '-' else open(path, encoding='utf-8')
    try:
        lines = [line.strip() for line in stream]
    finally:
        if stream is not sys.stdin:
            stream.close()
    return [line for line in lines if line and not line.startswith('#')]


def cmd_classify(args: Namespace) -> int:
    if args.file is None and args.equation is None:
        raise ExpressionError('nothing to classify: give an equation or --file')
    texts = [args.equation] if args.file is None else read_batch(args.file)
    jobs = [(text, args.functions, args.degree, args.seed, args.emit_systems, args.verbose)
            for text in texts]
    if len(jobs) == 1:
        results = [_classify_job(jobs[0])]
    elif args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(tqdm(pool.map(_classify_job, jobs), total=len(jobs), desc='classify'))
    else:
        results = [_classify_job(job) for job in tqdm(jobs, desc='classify')]

    if args.output == 'text':
        print('\n\n'.join(render_report(data, timings) for data, timings in results))
    else:
        data = [data for data, _ in results]
        print(dumps(data[0] if args.file is None else data))
    if any('error' in data for data, _ in results):
        for data, _ in results:
            if 'error' in data:
                print(termcolor.colored('%s: %s' % (data['input'], data['error']), 'red'),
                      file=sys.stderr)
        return BAD_INPUT
    return OK


def cmd_verify(args: Namespace) -> int:
    declarations = [parse_declaration(d) for d in args.functions]
    eq = read_equation(args.equation, args.functions)
    cv = ConservedVector(parse(args.density, declarations), parse(args.flux, declarations))
    options = dict(samples=args.samples, seed=args.seed)
    subject = 'F = %s, G = %s on u_t = %s' % (to_text(cv.density), to_text(cv.flux),
                                               to_text(eq.rhs))
    data = dict(input=dict(equation=args.equation, density=args.density, flux=args.flux,
                           characteristic=args.characteristic),
                subject=subject, status='certified', certificates=[], error=None,
                version=__version__, seed=args.seed)
    code = OK
    try:
        data['certificates'].append(verify_conserved(cv, eq, **options).to_dict())
        if args.characteristic is not None:
            multiplier = parse(args.characteristic, declarations)
            data['certificates'].append(verify_characteristic(cv, multiplier, eq,
                                                              **options).to_dict())
    except (Refuted, Mismatch) as e:
        data.update(status='refuted' if isinstance(e, Refuted) else 'mismatch', error=str(e))
        if e.certificate is not None:
            data['certificates'].append(e.certificate.to_dict())
        code = REFUTED
    print(render_certificate(data) if args.output == 'text' else dumps(data))
    return code


def cmd_reduce(args: Namespace) -> int:
    eq = read_equation(args.equation, args.functions)
    classifier = Classifier(degree=args.degree, seed=args.seed, emit_systems=args.emit_systems,
                            verbose=args.verbose)
    report = classifier.decide(eq)
    full = report_dict(report, args.equation)
    data = {key: full[key] for key in ('input', 'H', 'verdict', 'canonical_forms',
                                       'transformations', 'potential_systems',
                                       'emitted_systems', 'version', 'seed')}
    data['normalized'] = normalized_dicts(normalized_images(report))
    if 'hat_h' not in report.canonical_forms:
        data['message'] = 'no divergence structure; dim %s' % (
            report.verdict.k if report.verdict.k is not None else report.verdict)
    if args.output == 'text':
        lines = ['%s = %s' % (name, value) for name, value in
                 sorted(data['canonical_forms'].items())]
        lines += ['t~ = %s, x~ = %s, u~ = %s (%s)' % (tr['T'], tr['X'], tr['U'], tr['provenance'])
                  for tr in data['transformations']]
        for image in data['normalized']:
            lines.append('u~_t~ = %s' % image['H'])
            lines += ['  %s~ = %s' % (name, value) for name, value in
                      sorted(image['canonical_forms'].items())]
            lines += ['  F~ = %s, G~ = %s' % (law['F'], law['G']) for law in image['laws']]
        if 'message' in data:
            lines.append(data['message'])
        print('\n'.join(lines))
    else:
        print(dumps(data))
    return OK


def cmd_table(args: Namespace) -> int:
    classifier = Classifier(degree=args.degree, seed=args.seed, verbose=args.verbose)
    rows = []
    for row, entry in table_entries():
        report = classifier.decide(entry.equation)
        problems = check_report(report, entry.expectations)
        if row['verdict'] != repr(report.verdict):
            problems.append('table lists %s' % row['verdict'])
        rows.append(dict(label=row['label'], H=to_text(entry.equation.rhs),
                         verdict=repr(report.verdict),
                         characteristics=[to_text(c) for c in report.characteristics],
                         problems=problems, ok=not problems))
    print(render_table(rows) if args.output == 'text' else dumps(rows))
    return OK if all(row['ok'] for row in rows) else REFUTED


COMMANDS = dict(classify=cmd_classify, verify=cmd_verify, reduce=cmd_reduce, table=cmd_table)


def run(argv: Iterable[str] = None) -> int:
    """Run one subcommand and return the exit code"""
    args = get_args(None if argv is None else list(argv))
    set_logger('cli', verbose=args.verbose)
    try:
        return COMMANDS[args.command](args)
    except (ExpressionError, JetError, CatalogError, ClassifyError, VerifyError, OSError) as e:
        print(termcolor.colored('%s: %s' % (type(e).__name__, e), 'red'), file=sys.stderr)
        return BAD_INPUT
