import logging
import sys
from fractions import Fraction
from typing import List, Optional

import typer

from . import classical, clusters
from .commands.config_commands import execute_config_command
from .disassemble import AScheme, disassemble_solvable, verify_scheme
from .errors import (DimensionMismatch, DocumentError, GuardExceeded,
                     InvalidSpec, LieonError)
from .exterior import schouten
from .lie import (compatible, is_jacobi, jacobi_defect, lie_rank, make_rng,
                  modular_split, modular_vector, random_rational,
                  recognize_lieon, to_bivector)
from .translators import documents, dot
from .utils.config import get_config_value
from .utils.formatting import format_check, format_cluster_report

logger = logging.getLogger("lieon-cli")

# Core logic in process_* functions to enable testing without Typer

USAGE_ERRORS = (DocumentError, InvalidSpec, GuardExceeded, DimensionMismatch)
MODES = ('solvable', 'modular-split')


def _results():
    return {
        'success': False,
        'exit_code': 1,
        'display_message': '',
        'error_message': '',
        'output': '',
    }


def _fail(results, error):
    """Fill in an error: usage and parse problems exit 2, domain refusals exit 1."""
    results['exit_code'] = 2 if isinstance(error, USAGE_ERRORS) else 1
    results['error_message'] = f'❌ {error}'
    return results


def _done(results, output, exit_code=0, message=''):
    results['success'] = exit_code == 0
    results['exit_code'] = exit_code
    results['output'] = output
    results['display_message'] = message
    return results


def _indent():
    return get_config_value('output.indent', 2)


def _render_scheme(s, fmt):
    if fmt == 'dot':
        return dot.scheme_to_dot(s)
    return documents.dumps(documents.scheme_to_document(s), _indent())


def _format(fmt):
    """Explicit --format, else the configured output.format."""
    return fmt or get_config_value('output.format', 'json')


def _check_format(fmt):
    if fmt not in ('json', 'dot'):
        raise DocumentError(f"unknown format {fmt!r}; use json or dot")


def process_check(text):
    """Jacobi status, modular vector, Lie rank and lieon recognition of a structure."""
    results = _results()
    try:
        g = documents.structure_from_document(documents.loads(text))
        report = {'jacobi': is_jacobi(g), 'theta': modular_vector(g).as_tuple(g.dim),
                  'rank': lie_rank(g)}
        if not report['jacobi']:
            report['defect'] = repr(jacobi_defect(g))
            return _done(results, format_check(report), 1)
        report['lieon'] = recognize_lieon(g)
        return _done(results, format_check(report))
    except LieonError as e:
        return _fail(results, e)


def _split_pair(text_a, text_b):
    if text_b is not None:
        return documents.loads(text_a), documents.loads(text_b)
    doc = documents.loads(text_a)
    if not isinstance(doc, list) or len(doc) != 2:
        raise DocumentError('compat expects two documents or a JSON array of two')
    return doc[0], doc[1]


def process_compat(text_a, text_b=None):
    results = _results()
    try:
        doc_a, doc_b = _split_pair(text_a, text_b)
        g1 = documents.structure_from_document(doc_a)
        g2 = documents.structure_from_document(doc_b)
        if compatible(g1, g2):
            return _done(results, 'compatible')
        defect = schouten(to_bivector(g1), to_bivector(g2))
        return _done(results, f'incompatible\ndefect: {defect!r}', 1)
    except LieonError as e:
        return _fail(results, e)


def process_disassemble(text, mode='solvable', fmt='json'):
    results = _results()
    try:
        _check_format(fmt)
        if mode not in MODES:
            raise InvalidSpec(f"unknown mode {mode!r}; use {' or '.join(MODES)}")
        g = documents.structure_from_document(documents.loads(text))
        if mode == 'solvable':
            scheme = disassemble_solvable(g)
        else:
            split = modular_split(g, strict=True)
            scheme = AScheme(g, (AScheme(split.uni, (), 'uni', flagged=split.uni.is_abelian),
                                 AScheme(split.non, (), 'non')), 'g')
        problems = verify_scheme(scheme)
        if problems:
            results['error_message'] = '❌ scheme failed verification: ' + '; '.join(problems)
            return results
        return _done(results, _render_scheme(scheme, fmt))
    except LieonError as e:
        return _fail(results, e)


def _parse_params(params):
    if not params:
        return None
    try:
        return tuple(Fraction(p) for p in params.split(','))
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidSpec(f'bad parameter list {params!r}') from e


def process_classical(kind, n, params=None, lam=None, fmt='json'):
    results = _results()
    try:
        _check_format(fmt)
        lam = None if lam is None else documents.parse_rational(lam)
        spec = classical.ClassicalSpec(kind, n, _parse_params(params), lam)
        scheme = classical.canonical_scheme(spec)
        problems = verify_scheme(scheme)
        if problems:
            results['error_message'] = f'❌ {spec.name} scheme failed verification: ' + '; '.join(problems)
            return results
        return _done(results, _render_scheme(scheme, fmt), message=f'{spec.name}: dim {scheme.node.dim}')
    except LieonError as e:
        return _fail(results, e)


def process_clusters(n, fmt='json', report=False, dees_only=False):
    results = _results()
    try:
        _check_format(fmt)
        # the configured guard can lower the enumeration limit, never raise it
        max_n = min(get_config_value('clusters.max_n', clusters.DEFAULT_MAX_N), clusters.DEFAULT_MAX_N)
        if report:
            rows = clusters.low_dimensional_report(n, max_n=max_n)
            return _done(results, '\n'.join(format_cluster_report(rows)))
        found = clusters.enumerate_clusters(n, dees_only=dees_only, max_n=max_n)
        cards = [clusters.compute_card(F) for F in found]
        if fmt == 'dot':
            return _done(results, dot.clusters_to_dot(found, cards))
        doc = [{'family': documents.family_to_document(F), 'card': documents.card_to_document(card)}
               for F, card in zip(found, cards)]
        return _done(results, documents.dumps(doc, _indent()), message=f'{len(found)} clusters at n={n}')
    except LieonError as e:
        return _fail(results, e)


def process_card(text, fmt='json'):
    results = _results()
    try:
        _check_format(fmt)
        F = documents.family_from_document(documents.loads(text))
        if fmt == 'dot':
            return _done(results, dot.family_to_dot(F))
        types = clusters.vertex_types(F)
        card = clusters.compute_card(F)
        doc = {
            'vertex_types': {str(v): str(t) for v, t in types.items()},
            'card': documents.card_to_document(card),
            'dimension': card.dimension(),
        }
        return _done(results, documents.dumps(doc, _indent()))
    except LieonError as e:
        return _fail(results, e)


def process_synth(text, ideals=False, seed=None):
    """Coaxial algebra of a family; with a seed the member coefficients are redrawn at random."""
    results = _results()
    try:
        F = documents.family_from_document(documents.loads(text))
        coeffs = documents.family_coefficients(F)
        if seed is not None:
            rng = make_rng(seed)
            coeffs = {key: random_rational(rng, nonzero=True) for key in sorted(coeffs)}
        g = clusters.synthesize(F, coeffs)
        doc = {'structure': documents.structure_to_document(g)}
        if ideals:
            report = clusters.coaxial_ideals(F, coeffs)
            doc['ideals'] = {name: {'dim': span.dimension, 'ideal': report.ideals.get(name)}
                             for name, span in report.spans.items()}
            doc['checks'] = {'central': report.central_ok, 'radical_length': report.radical_length,
                             'quotient': report.quotient_ok}
        return _done(results, documents.dumps(doc, _indent()))
    except LieonError as e:
        return _fail(results, e)


def process_config(words):
    """Dispatch 'config <command> [argument]' to the config command table."""
    results = _results()
    words = list(words)
    if not words:
        words = ['show']
    command = 'config ' + words[0]
    ok, message = execute_config_command(command, ' '.join(words[1:]) or None)
    if not ok:
        results['exit_code'] = 2
        results['error_message'] = f'❌ {message}'
        return results
    return _done(results, message)


def _read(path):
    if path is None or path == '-':
        return sys.stdin.read()
    try:
        with open(path) as f:
            return f.read()
    except OSError as e:
        typer.secho(f'❌ Cannot read {path}: {e}', fg=typer.colors.RED)
        raise typer.Exit(code=2)


def _emit(result):
    if result['error_message']:
        typer.secho(result['error_message'], fg=typer.colors.RED, err=True)
        raise typer.Exit(code=result['exit_code'])
    if result['display_message']:
        typer.secho(result['display_message'], fg=typer.colors.CYAN, err=True)
    typer.secho(result['output'], fg=typer.colors.GREEN if result['success'] else typer.colors.YELLOW)
    if result['exit_code']:
        raise typer.Exit(code=result['exit_code'])


# Typer CLI interface
app = typer.Typer(help='🚀 lieon: Lie algebras as linear Poisson bivectors, split into lieons.')


@app.callback()
def main(verbose: bool = typer.Option(False, '--verbose', help='Log progress to stderr')):
    level = logging.DEBUG if verbose else getattr(logging, str(get_config_value('logging.level', 'WARNING')).upper(),
                                                  logging.WARNING)
    logging.basicConfig(level=level)


@app.command()
def check(input: Optional[str] = typer.Option(None, '--input', '-i', help='StructureDocument (stdin when omitted)')):
    """Jacobi identity, modular vector, Lie rank and lieon type."""
    _emit(process_check(_read(input)))


@app.command()
def compat(input: Optional[str] = typer.Option(None, '--input', '-i', help='First StructureDocument, or an array of two'),
           other: Optional[str] = typer.Option(None, '--other', help='Second StructureDocument')):
    """Are two structures compatible (their sum again a Lie structure)?"""
    _emit(process_compat(_read(input), _read(other) if other else None))


@app.command()
def disassemble(input: Optional[str] = typer.Option(None, '--input', '-i'),
                mode: str = typer.Option('solvable', '--mode', '-m', help='solvable or modular-split'),
                format: Optional[str] = typer.Option(None, '--format', '-f', help='json or dot')):
    """Disassemble a structure into compatible pieces."""
    _emit(process_disassemble(_read(input), mode, _format(format)))


@app.command('classical')
def classical_command(kind: str = typer.Argument(..., help='so, sp, gl, sl, u or su'),
                      n: int = typer.Argument(..., help='Matrix size (sp takes the even total size)'),
                      params: Optional[str] = typer.Option(None, '--params', help='so diagonal, e.g. 1,1,-1'),
                      lam: Optional[str] = typer.Option(None, '--lambda', help='Dressing scale for gl/sl/u/su'),
                      format: Optional[str] = typer.Option(None, '--format', '-f')):
    """Canonical complete disassembling of a classical Lie algebra."""
    _emit(process_classical(kind, n, params, lam, _format(format)))


@app.command('clusters')
def clusters_command(n: int = typer.Argument(..., help='Number of vertices'),
                     report: bool = typer.Option(False, '--report', help='Compare against the named low-dimensional list'),
                     dees_only: bool = typer.Option(False, '--dees-only', help='Enumerate dee-only clusters'),
                     format: Optional[str] = typer.Option(None, '--format', '-f')):
    """Enumerate the clusters on n vertices with their cards."""
    _emit(process_clusters(n, _format(format), report, dees_only))


@app.command()
def card(input: Optional[str] = typer.Option(None, '--input', '-i', help='FamilyDocument'),
         format: Optional[str] = typer.Option(None, '--format', '-f')):
    """Vertex types and card of a cluster."""
    _emit(process_card(_read(input), _format(format)))


@app.command()
def synth(input: Optional[str] = typer.Option(None, '--input', '-i', help='FamilyDocument'),
          ideals: bool = typer.Option(False, '--ideals', help='Report the coaxial ideals'),
          seed: Optional[int] = typer.Option(None, '--seed', help='Draw random coefficients with this seed')):
    """Coaxial Lie algebra of a compatible family."""
    _emit(process_synth(_read(input), ideals, seed))


@app.command()
def config(words: List[str] = typer.Argument(None, help='show | path | get KEY | set KEY=VALUE | reset')):
    """Show or change lieon settings."""
    _emit(process_config(words or []))


if __name__ == '__main__':
    app()
