"""
JSON documents for structures, schemes, families and cards.

Rationals travel as strings ("3", "-1/2") and indices are 1-based. Parsing
raises DocumentError on anything malformed.
"""

import json
from fractions import Fraction

from ..clusters import ClusterCard
from ..disassemble import AScheme
from ..errors import DocumentError, LieonError
from ..geometry import BaseFamily, Dee, Tee
from ..lie import LieStructure


def format_rational(value):
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f'{value.numerator}/{value.denominator}'


def parse_rational(text):
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise DocumentError(f'rational must be a string or an integer, got {text!r}')
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise DocumentError(f'bad rational {text!r}') from e


def _field(doc, key, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise DocumentError(f'missing field {key!r}')
    value = doc[key]
    if kind is not None and (not isinstance(value, kind) or isinstance(value, bool)):
        raise DocumentError(f'field {key!r} must be {kind.__name__}')
    return value


def structure_to_document(g):
    return {
        'dim': g.dim,
        'brackets': [{'i': i, 'j': j, 'k': k, 'c': format_rational(c)} for (i, j, k), c in g.items()],
    }


def structure_from_document(doc):
    dim = _field(doc, 'dim', int)
    seen = set()
    constants = {}
    for entry in _field(doc, 'brackets', list):
        i, j, k = (_field(entry, key, int) for key in ('i', 'j', 'k'))
        c = parse_rational(_field(entry, 'c'))
        if i >= j:
            raise DocumentError(f'bracket ({i},{j},{k}) needs i < j')
        if (i, j, k) in seen:
            raise DocumentError(f'duplicate bracket ({i},{j},{k})')
        if not c:
            raise DocumentError(f'zero coefficient in bracket ({i},{j},{k})')
        seen.add((i, j, k))
        constants[(i, j, k)] = c
    try:
        return LieStructure(dim, constants)
    except LieonError as e:
        raise DocumentError(str(e)) from e


def scheme_to_document(s):
    doc = {
        'structure': structure_to_document(s.node),
        'label': s.label,
        'children': [scheme_to_document(c) for c in s.children],
    }
    if s.flagged:
        doc['flagged'] = True
    return doc


def scheme_from_document(doc):
    return AScheme(
        structure_from_document(_field(doc, 'structure', dict)),
        tuple(scheme_from_document(c) for c in doc.get('children', [])),
        str(doc.get('label', '')),
        bool(doc.get('flagged', False)),
    )


def family_to_document(F):
    return {
        'dim': F.dim,
        'tees': [{'ends': list(t.ends), 'center': t.center, 'c': format_rational(t.coefficient)}
                 for t in F.members if isinstance(t, Tee)],
        'dees': [{'origin': d.origin, 'end': d.end, 'c': format_rational(d.coefficient)}
                 for d in F.members if isinstance(d, Dee)],
    }


def family_from_document(doc):
    dim = _field(doc, 'dim', int)
    members = []
    try:
        for entry in doc.get('tees', []):
            ends = _field(entry, 'ends', list)
            if len(ends) != 2:
                raise DocumentError('a tee has exactly two ends')
            members.append(Tee.of(ends[0], ends[1], _field(entry, 'center', int),
                                  parse_rational(entry.get('c', '1'))))
        for entry in doc.get('dees', []):
            members.append(Dee(_field(entry, 'origin', int), _field(entry, 'end', int),
                               parse_rational(entry.get('c', '1'))))
        return BaseFamily.of(dim, members)
    except DocumentError:
        raise
    except LieonError as e:
        raise DocumentError(str(e)) from e


def family_coefficients(F):
    return {m.key: m.coefficient for m in F.members}


def card_to_document(card):
    return {
        'n_t': card.n_t, 'n_e': card.n_e, 'n_d': card.n_d, 'n_tr': card.n_tr, 'n_r': card.n_r,
        't': [format_rational(x) for x in card.tvec],
        'p': list(card.pvec),
        'B': [list(r) for r in card.B],
        'D': [list(r) for r in card.D],
    }


def card_from_document(doc):
    return ClusterCard(
        *(_field(doc, key, int) for key in ('n_t', 'n_e', 'n_d', 'n_tr', 'n_r')),
        tvec=tuple(parse_rational(x) for x in doc.get('t', [])),
        pvec=tuple(doc.get('p', [])),
        B=tuple(tuple(r) for r in doc.get('B', [])),
        D=tuple(tuple(r) for r in doc.get('D', [])),
    )


def loads(text):
    try:
        return json.loads(text)
    except ValueError as e:
        raise DocumentError(f'invalid JSON: {e}') from e


def dumps(doc, indent=2):
    return json.dumps(doc, indent=indent, ensure_ascii=False)
