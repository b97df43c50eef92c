"""
Classical Lie algebras over Q and their canonical complete disassemblings.

Every basis vector carries a grade label (a pair of indices). A structure
constant c(m1, m2 -> m3) leaves the multiset label(m1) + label(m2) - label(m3)
equal to {a, a} for a single index a, and grouping constants by that a splits
the bracket into mutually compatible pieces: rescaling basis vectors by
products of per-index weights multiplies the a-th piece by the a-th weight
squared without leaving the isomorphism class.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Tuple

import networkx as nx
import sympy

from .disassemble import (AScheme, Involution, combine, disassemble_dressing,
                          gamma_split, split_semidirect, strip)
from .errors import InvalidSpec, SubspaceError
from .geometry import incompatibility_graph, monomial_lieons, realize
from .lie import (LieStructure, compatible, is_jacobi, killing_form,
                  random_rational, recognize_lieon)
from .utils import linalg
from .utils.linalg import Subspace

logger = logging.getLogger("lieon-classical")

KINDS = ('so', 'sp', 'gl', 'sl', 'u', 'su')
MATRIX_KINDS = ('gl', 'sl', 'u', 'su')
_MIN_SIZE = {'so': 3, 'sp': 2, 'gl': 2, 'sl': 2, 'u': 2, 'su': 2}


@dataclass(frozen=True)
class ClassicalSpec:
    """kind and size n; sp takes the total size 2m, so sp(2) is the 3-dimensional algebra."""

    kind: str
    n: int
    params: Optional[Tuple[Fraction, ...]] = None
    lam: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f'unknown kind {self.kind!r}; expected one of {", ".join(KINDS)}')
        if not isinstance(self.n, int) or self.n < _MIN_SIZE[self.kind]:
            raise InvalidSpec(f'{self.kind} needs n >= {_MIN_SIZE[self.kind]}, got {self.n}')
        if self.kind == 'sp' and self.n % 2:
            raise InvalidSpec(f'sp requires an even size, got {self.n}')
        if self.kind == 'so':
            params = (1,) * self.n if self.params is None else self.params
            params = tuple(Fraction(a) for a in params)
            if len(params) != self.n:
                raise InvalidSpec(f'so({self.n}) needs {self.n} diagonal coefficients, got {len(params)}')
            if not all(params):
                raise InvalidSpec('so requires every diagonal coefficient to be nonzero')
            object.__setattr__(self, 'params', params)
        elif self.params is not None:
            raise InvalidSpec(f'{self.kind} takes no diagonal coefficients')
        if self.kind in MATRIX_KINDS:
            lam = Fraction(self.lam) if self.lam is not None else Fraction(-1 if self.kind in ('u', 'su') else 1)
            if not lam:
                raise InvalidSpec('the dressing scale must be nonzero')
            object.__setattr__(self, 'lam', lam)
        elif self.lam is not None:
            raise InvalidSpec(f'{self.kind} takes no dressing scale')

    @property
    def name(self):
        return f'{self.kind}({self.n})'


@dataclass(frozen=True)
class UniversalSignature:
    """First-level blocks P_a with free symbols a_1..a_n as coefficients."""

    kind: str
    n: int
    symbols: tuple
    blocks: tuple = field(default=())

    @property
    def dim(self):
        return self.n * (self.n - 1) // 2


# so(n)

def _so_basis(n):
    return [(i, j) for i, j in combinations(range(1, n + 1), 2)]


def _oriented(pair, first):
    """Sign turning e_pair into e(first, other)."""
    return 1 if pair[0] == first else -1


def _so_terms(n):
    """{(index, index, index): (shared index s, sign)} for [e(x,s), e(s,y)] = a_s e(x,y)."""
    basis = _so_basis(n)
    index = {pair: b for b, pair in enumerate(basis, start=1)}
    terms = {}
    for (b1, P), (b2, Q) in combinations(enumerate(basis, start=1), 2):
        shared = set(P) & set(Q)
        if len(shared) != 1:
            continue
        s = shared.pop()
        x = P[0] if P[1] == s else P[1]
        y = Q[0] if Q[1] == s else Q[1]
        sign = _oriented(P, x) * _oriented(Q, s) * (1 if x < y else -1)
        terms[(b1, b2, index[tuple(sorted((x, y)))])] = (s, sign)
    return terms


def _so_blocks(n):
    blocks = {}
    for key, (s, sign) in _so_terms(n).items():
        blocks.setdefault(s, {})[key] = sign
    return blocks


# sp(2m)

def _sp_basis(m):
    """Exponent vectors over (p_1..p_m, q_1..q_m): p_ip_j (i<=j), p_iq_j, q_iq_j (i<=j)."""
    def mono(*positions):
        e = [0] * (2 * m)
        for pos in positions:
            e[pos] += 1
        return tuple(e)

    basis = [mono(i, j) for i in range(m) for j in range(i, m)]
    basis += [mono(i, m + j) for i in range(m) for j in range(m)]
    basis += [mono(m + i, m + j) for i in range(m) for j in range(i, m)]
    return basis


def _sp_label(e, m):
    label = []
    for pos, exp in enumerate(e):
        label += [pos % m + 1] * exp
    return tuple(sorted(label))


def _sp_structure(m):
    basis = _sp_basis(m)
    ps = sympy.symbols(f'p1:{m + 1}')
    qs = sympy.symbols(f'q1:{m + 1}')
    gens = ps + qs
    index = {e: b for b, e in enumerate(basis, start=1)}
    polys = [sympy.Mul(*[g ** k for g, k in zip(gens, e)]) for e in basis]
    constants = {}
    for (b1, f), (b2, g) in combinations(enumerate(polys, start=1), 2):
        value = sum(sympy.diff(f, p) * sympy.diff(g, q) - sympy.diff(f, q) * sympy.diff(g, p)
                    for p, q in zip(ps, qs))
        value = sympy.expand(value)
        if value == 0:
            continue
        for e, c in sympy.Poly(value, *gens).as_dict().items():
            constants[(b1, b2, index[tuple(e)])] = linalg.to_fraction(c)
    return LieStructure(len(basis), constants), basis


# gl / sl / u / su

def _unit_matrix(n, i, j):
    M = sympy.zeros(n, n)
    M[i - 1, j - 1] = 1
    return M


def _matrix_basis(kind, n):
    """[(matrix, label, parity)]; parity 0 spans s (antisymmetric), 1 spans W."""
    E = lambda i, j: _unit_matrix(n, i, j)
    elements = [(E(i, j) - E(j, i), (i, j), 0) for i, j in combinations(range(1, n + 1), 2)]
    if kind in ('gl', 'u'):
        elements += [(E(i, j) + E(j, i), (i, j), 1) for i in range(1, n + 1) for j in range(i, n + 1)]
    else:
        elements += [(E(i, j) + E(j, i), (i, j), 1) for i, j in combinations(range(1, n + 1), 2)]
        elements += [(E(i, i) - E(1, 1), (i, i), 1) for i in range(2, n + 1)]
    return elements


def _matrix_structure(spec):
    n = spec.n
    elements = _matrix_basis(spec.kind, n)
    B = sympy.Matrix.hstack(*[M.reshape(n * n, 1) for M, _, _ in elements])
    left = (B.T * B).inv() * B.T
    constants = {}
    for (b1, (X, _, s1)), (b2, (Y, _, s2)) in combinations(enumerate(elements, start=1), 2):
        C = (X * Y - Y * X).reshape(n * n, 1)
        coords = left * C
        if B * coords != C:
            raise SubspaceError(f'commutator leaves {spec.name}')
        scale = spec.lam if s1 and s2 else 1
        for k in range(len(elements)):
            if coords[k] != 0:
                constants[(b1, b2, k + 1)] = scale * linalg.to_fraction(coords[k])
    g = LieStructure(len(elements), constants)
    return g, tuple(label for _, label, _ in elements), tuple(parity for _, _, parity in elements)


def make_classical(spec):
    if spec.kind == 'so':
        terms = _so_terms(spec.n)
        return LieStructure(len(_so_basis(spec.n)), {key: spec.params[s - 1] * sign for key, (s, sign) in terms.items()})
    if spec.kind == 'sp':
        return _sp_structure(spec.n // 2)[0]
    return _matrix_structure(spec)[0]


def grade_labels(spec):
    """Index-pair label of every basis vector, in basis order."""
    if spec.kind == 'so':
        return tuple(_so_basis(spec.n))
    if spec.kind == 'sp':
        m = spec.n // 2
        return tuple(_sp_label(e, m) for e in _sp_basis(m))
    return tuple(label for _, label, _ in _matrix_basis(spec.kind, spec.n))


def grade_of(labels, key):
    i, j, k = key
    left = Counter(labels[i - 1]) + Counter(labels[j - 1])
    out = Counter(labels[k - 1])
    if any(left[a] < c for a, c in out.items()):
        raise InvalidSpec(f'constant {key} is not homogeneous for the labels')
    rest = left - out
    if len(rest) != 1 or sum(rest.values()) != 2:
        raise InvalidSpec(f'constant {key} leaves {sorted(rest.elements())}, not a doubled index')
    return next(iter(rest))


def grade_groups(g, labels):
    """{a: part of g with grade a}; the parts sum to g."""
    groups = {}
    for key, c in g.items():
        groups.setdefault(grade_of(labels, key), {})[key] = c
    return {a: LieStructure(g.dim, constants) for a, constants in sorted(groups.items())}


def parametric_compatibility(groups, rng, trials=3):
    """Jacobi of sum t_a P_a for random nonzero t_a; True when every trial passes."""
    groups = list(groups.values())
    if not groups:
        return True
    for _ in range(trials):
        total = LieStructure(groups[0].dim)
        for part in groups:
            total = total + part.scale(random_rational(rng, nonzero=True))
        if not is_jacobi(total):
            return False
    return True


def _leaf(g, label):
    return AScheme(g, (), f'{label} {recognize_lieon(g)}')


def _group(members, n, label):
    leaves = [AScheme(realize(m, n), (), f'{label} {m}') for m in members]
    if len(leaves) == 1:
        return leaves[0]
    total = LieStructure(n)
    for leaf in leaves:
        total = total + leaf.node
    return AScheme(total, tuple(leaves), label)


def monomial_scheme(g, label):
    """Leaves for the monomial lieons of a Lie structure g.

    Monomials compatible with all others become leaves directly; the rest must
    form a bipartite incompatibility graph, and each colour class becomes one
    node (the two class sums are compatible because g is Jacobi).
    """
    members = monomial_lieons(g)
    if len(members) <= 1:
        return _leaf(g, label) if members else AScheme(g, (), label, flagged=True)
    graph = incompatibility_graph(members)
    isolated = [m for m in members if graph.degree(m) == 0]
    rest = [m for m in members if graph.degree(m)]
    children = [_group([m], g.dim, label) for m in isolated]
    if rest:
        sub = graph.subgraph(rest)
        if not nx.is_bipartite(sub):
            raise SubspaceError(f'{label}: incompatibility graph of the monomials is not bipartite')
        colours = nx.bipartite.color(sub)
        for colour, mark in ((0, "'"), (1, "''")):
            side = [m for m in rest if colours[m] == colour]
            children.append(_group(side, g.dim, f'{label}{mark}'))
    return combine(g, children, label)


def _coordinate(n, indices):
    return Subspace.coordinate(n, sorted(indices))


def _diagonal_involution(n, plus):
    return Involution(tuple(tuple(Fraction(0 if i != j else (1 if i + 1 in plus else -1))
                                  for j in range(n)) for i in range(n)))


def input_type_scheme(Q, alpha, labels, parity, label):
    """Q_a split by input type: both in s, W input diagonal at a, other W inputs.

    When the parts are not Lie or not mutually compatible, Q is split by its
    monomials instead.
    """
    parts = {1: {}, 2: {}, 3: {}}
    for (i, j, k), c in Q.items():
        if not parity[i - 1] and not parity[j - 1]:
            parts[1][(i, j, k)] = c
            continue
        w = j if parity[j - 1] else i
        parts[3 if labels[w - 1] == (alpha, alpha) else 2][(i, j, k)] = c
    structures = [(t, LieStructure(Q.dim, parts[t])) for t in (1, 2, 3) if parts[t]]
    if all(is_jacobi(p) for _, p in structures) and all(
            compatible(a, b) for (_, a), (_, b) in combinations(structures, 2)):
        children = [monomial_scheme(p, f'{label}^{t}') for t, p in structures]
        return combine(Q, children, label)
    logger.warning('%s: input-type parts are not mutually compatible; splitting monomials directly', label)
    return monomial_scheme(Q, label)


def _matrix_scheme(spec):
    g, labels, parity = _matrix_structure(spec)
    n = g.dim
    s_idx = [b for b in range(1, n + 1) if not parity[b - 1]]
    w_idx = [b for b in range(1, n + 1) if parity[b - 1]]
    stripped = strip(g, _diagonal_involution(n, set(s_idx)), spec.name)
    acting, beta = (child.node for child in stripped.children)
    beta_node = None
    if not beta.is_abelian:
        beta_node = disassemble_dressing(beta, _coordinate(n, s_idx), _coordinate(n, w_idx), f'{spec.name}.beta')
    q_children = []
    for alpha, Q in grade_groups(acting, labels).items():
        logger.debug('%s: grade %d has %d constants', spec.name, alpha, len(Q))
        if spec.kind in ('gl', 'u'):
            q_children.append(input_type_scheme(Q, alpha, labels, parity, f'Q[{alpha}]'))
        else:
            q_children.append(monomial_scheme(Q, f'Q0[{alpha}]'))
    q_node = combine(acting, q_children, 'Q')
    return combine(g, [q_node, beta_node], spec.name)


def _sp_block(g, basis, m, a, label):
    """Scheme of the grade-a part: sl(2) on p_a, q_a acting on the rest."""
    n = g.dim
    pa, qa = a - 1, m + a - 1
    kind = {b: (basis[b - 1][pa], basis[b - 1][qa]) for b in range(1, n + 1)}
    of = lambda *types: [b for b in range(1, n + 1) if kind[b] in types]
    s_idx = of((2, 0), (1, 1), (0, 2))
    pq, = of((1, 1))
    q2, = of((0, 2))
    vp, vq, c = of((1, 0)), of((0, 1)), of((0, 0))

    radical = None
    if vp or vq or c:
        child1, child2 = split_semidirect(g, _coordinate(n, vp + vq + c), _coordinate(n, s_idx))
        if not child2.is_abelian:
            radical = disassemble_dressing(child2, _coordinate(n, s_idx + c), _coordinate(n, vp + vq),
                                           f'{label}.r')
    else:
        child1 = g

    plus = [pq] + vp
    minus = [b for b in range(1, n + 1) if b not in plus]
    stripped = strip(child1, _diagonal_involution(n, set(plus)), f'{label}.s')
    acting, beta = (child.node for child in stripped.children)
    beta_node = None
    if not beta.is_abelian:
        beta_node = disassemble_dressing(beta, _coordinate(n, plus), _coordinate(n, minus), f'{label}.beta')

    rest = [b for b in range(1, n + 1) if b != pq]
    gamma, inner = split_semidirect(acting, _coordinate(n, rest), _coordinate(n, [pq]))
    gamma_node = None
    if not gamma.is_abelian:
        gamma_node = combine(gamma, gamma_split(gamma, linalg.unit(pq, n), _coordinate(n, rest)),
                             f'{label}.gamma')
    inner_node = None
    if not inner.is_abelian:
        wing = vp + [q2]
        inner_node = disassemble_dressing(inner, _coordinate(n, [b for b in range(1, n + 1) if b not in wing]),
                                          _coordinate(n, wing), f'{label}.wing')
    acting_node = combine(acting, [gamma_node, inner_node], f'{label}.act')
    return combine(g, [combine(child1, [acting_node, beta_node], f'{label}.levi'), radical], label)


def _sp_scheme(spec):
    m = spec.n // 2
    g, basis = _sp_structure(m)
    labels = tuple(_sp_label(e, m) for e in basis)
    children = [_sp_block(part, basis, m, a, f'Pi[{a}]')
                for a, part in grade_groups(g, labels).items()]
    return combine(g, children, spec.name)


def universal_scheme_signature(kind, n):
    if kind != 'so':
        raise InvalidSpec(f'no universal signature for {kind!r}; only so is supported')
    ClassicalSpec('so', n)
    symbols = sympy.symbols(f'a1:{n + 1}')
    blocks = tuple((alpha, {key: symbols[alpha - 1] * sign for key, sign in constants.items()})
                   for alpha, constants in sorted(_so_blocks(n).items()))
    return UniversalSignature(kind, n, symbols, blocks)


def instantiate_signature(sig, values):
    """Scheme from a universal signature at the given nonzero rationals."""
    values = tuple(Fraction(v) for v in values)
    if len(values) != len(sig.symbols):
        raise InvalidSpec(f'expected {len(sig.symbols)} values, got {len(values)}')
    if not all(values):
        raise InvalidSpec('a zero coefficient degenerates the form')
    subs = {sym: linalg.to_sympy(v) for sym, v in zip(sig.symbols, values)}
    children = []
    root = LieStructure(sig.dim)
    for alpha, constants in sig.blocks:
        block = LieStructure(sig.dim, {key: linalg.to_fraction(expr.subs(subs))
                                       for key, expr in constants.items()})
        root = root + block
        children.append(monomial_scheme(block, f'P[{alpha}]'))
    return combine(root, children, f'{sig.kind}({sig.n})')


def canonical_scheme(spec):
    logger.debug('building the canonical scheme of %s', spec.name)
    if spec.kind == 'so':
        return instantiate_signature(universal_scheme_signature('so', spec.n), spec.params)
    if spec.kind == 'sp':
        return _sp_scheme(spec)
    return _matrix_scheme(spec)


def killing_signature(spec):
    """(positive, negative, zero) of the Killing form of the classical algebra."""
    return linalg.inertia(killing_form(make_classical(spec)))
