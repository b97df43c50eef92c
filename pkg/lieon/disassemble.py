"""
Assembling schemes and the constructive disassembling procedures.

An AScheme is a rooted tree of LieStructures in which every internal node is
the sum of its mutually compatible children. Leaves should be lieons; a
deliberately abelian node carries ``flagged=True``.
"""

import logging
from dataclasses import dataclass
from itertools import combinations

from .errors import NotSolvable, SubspaceError
from .lie import (LieStructure, bracket, center, change_basis, compatible,
                  derived_algebra, is_ideal, is_jacobi, is_lieon, is_solvable,
                  is_subalgebra, recognize_lieon)
from .utils import linalg
from .utils.linalg import Subspace

logger = logging.getLogger("lieon-disassemble")


@dataclass(frozen=True)
class AScheme:
    node: LieStructure
    children: tuple = ()
    label: str = ''
    flagged: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'children', tuple(self.children))

    @property
    def is_leaf(self):
        return not self.children

    def relabel(self, label):
        return AScheme(self.node, self.children, label, self.flagged)


@dataclass(frozen=True)
class Involution:
    matrix: tuple

    @property
    def size(self):
        return len(self.matrix)


def leaves(s):
    if s.is_leaf:
        yield s
        return
    for child in s.children:
        yield from leaves(child)


def depth(s):
    return 0 if s.is_leaf else 1 + max(depth(c) for c in s.children)


def scheme_summary(s):
    """Counts of leaf kinds, e.g. {'fork(3)': 3}."""
    counts = {}
    for leaf in leaves(s):
        kind = 'flagged' if leaf.flagged else recognize_lieon(leaf.node)
        counts[kind] = counts.get(kind, 0) + 1
    return counts


def _verify(s, path, report):
    if not is_jacobi(s.node):
        report.append(f'{path}: Jacobi identity fails')
    if s.is_leaf:
        if s.node.is_abelian and not s.flagged:
            report.append(f'{path}: zero structure as a leaf')
        return
    dims = {c.node.dim for c in s.children}
    if dims != {s.node.dim}:
        report.append(f'{path}: children dimensions {sorted(dims)} differ from {s.node.dim}')
        return
    for a, b in combinations(range(len(s.children)), 2):
        if not compatible(s.children[a].node, s.children[b].node):
            report.append(f'{path}: children {a},{b} incompatible')
    total = LieStructure(s.node.dim)
    for c in s.children:
        total = total + c.node
    if total != s.node:
        report.append(f'{path}: children do not sum to the node')
    for index, child in enumerate(s.children):
        _verify(child, f'{path}/{index}', report)


def verify_scheme(s):
    """List of violations; empty when the scheme is a valid disassembling."""
    report = []
    _verify(s, 'root', report)
    return report


def is_complete(s):
    return all(not leaf.flagged and is_lieon(leaf.node) for leaf in leaves(s))


def _adapted(g, first, second):
    """Basis change putting `first` then `second` at the front; returns (g', T, T^-1, split)."""
    T_cols = list(first.basis) + list(second.basis)
    T = linalg.transpose(T_cols)
    return change_basis(g, T), T, linalg.inverse(T), len(first.basis)


def _keep(g, predicate):
    return LieStructure(g.dim, {key: c for key, c in g.items() if predicate(*key)})


def _check_complement(g, A, B, what):
    if A.dimension + B.dimension != g.dim or A.intersection(B).dimension:
        raise SubspaceError(f'{what} are not complementary')


def split_semidirect(g, ideal, subalg):
    """(subalgebra with its action on the ideal, ideal bracket alone), summing to g."""
    if not is_ideal(g, ideal):
        raise SubspaceError('ideal is not an ideal')
    if not is_subalgebra(g, subalg):
        raise SubspaceError('subalgebra is not closed under the bracket')
    _check_complement(g, ideal, subalg, 'ideal and subalgebra')
    adapted, T, T_inv, h = _adapted(g, subalg, ideal)
    acting = _keep(adapted, lambda a, b, k: a <= h)
    inner = _keep(adapted, lambda a, b, k: a > h)
    return change_basis(acting, T_inv), change_basis(inner, T_inv)


def gamma_split(g, u, J):
    """Split the Gamma-shaped g = span(u) + J (J abelian) into Gamma_{a_ij E_ij} pieces."""
    adapted, T, T_inv, _ = _adapted(g, Subspace(g.dim, [u]), J)
    pieces = []
    for (a, b, k), c in adapted.items():
        if a != 1:
            raise SubspaceError('structure is not Gamma-shaped over the chosen ideal')
        piece = change_basis(LieStructure(g.dim, {(a, b, k): c}), T_inv)
        kind = 'dee' if b == k else 'fork'
        pieces.append(AScheme(piece, (), f'Gamma[{k - 1},{b - 1}] {kind}'))
    return pieces


def combine(g, children, label):
    """Node over the non-zero children; a lone child stands in for the node itself."""
    children = [c for c in children if c is not None and not c.node.is_abelian]
    if not children:
        return AScheme(g, (), label, flagged=g.is_abelian)
    if len(children) == 1:
        return children[0].relabel(label)
    return AScheme(g, tuple(children), label)


def _solvable(g, label, level):
    if g.is_abelian:
        return AScheme(g, (), label, flagged=True)
    if is_lieon(g):
        return AScheme(g, (), f'{label} {recognize_lieon(g)}')
    D = derived_algebra(g)
    Z = center(g)
    DZ = D + Z
    u_index = next(i for i in range(1, g.dim + 1) if not DZ.contains(linalg.unit(i, g.dim)))
    u = linalg.unit(u_index, g.dim)
    extra = (DZ + Subspace(g.dim, [u])).complement_units()
    J = DZ + Subspace.coordinate(g.dim, extra)
    logger.debug('level %d: derived %d, center %d, splitting off e%d', level, D.dimension, Z.dimension, u_index)
    acting, inner = split_semidirect(g, J, Subspace(g.dim, [u]))
    gammas = gamma_split(acting, u, J) if not acting.is_abelian else []
    gamma_node = combine(acting, gammas, f'{label}.gamma') if gammas else None
    children = [gamma_node] if gamma_node else []
    if not inner.is_abelian:
        children.append(_solvable(inner, f'{label}.ideal', level + 1))
    return combine(g, children, label)


def disassemble_solvable(g, label='g'):
    if not is_solvable(g):
        raise NotSolvable('structure is not solvable')
    return _solvable(g, label, 0)


def disassemble_dressing(g, W0, W, label='a'):
    """One-level scheme of fork leaves for a dressing algebra: [W, W] in W0, W0 central."""
    _check_complement(g, W0, W, 'W0 and W')
    if not center(g).includes(W0):
        raise SubspaceError('W0 is not central')
    adapted, T, T_inv, w = _adapted(g, W, W0)
    leaves_ = []
    for (a, b, k), c in adapted.items():
        if a > w or b > w or k <= w:
            raise SubspaceError('structure is not a dressing algebra for this split')
        piece = change_basis(LieStructure(g.dim, {(a, b, k): c}), T_inv)
        leaves_.append(AScheme(piece, (), f'beta[{a},{b}|{k}] fork'))
    if not leaves_:
        return AScheme(g, (), label, flagged=True)
    if len(leaves_) == 1:
        return leaves_[0].relabel(label)
    return AScheme(g, tuple(leaves_), label)


def check_involution(g, I):
    m = I.matrix
    n = g.dim
    if len(m) != n or any(len(r) != n for r in m):
        raise SubspaceError(f'involution must be {n}x{n}')
    if linalg.matmul(m, m) != linalg.identity(n):
        raise SubspaceError('matrix is not involutive')
    units = [linalg.unit(i, n) for i in range(1, n + 1)]
    images = [linalg.apply(m, e) for e in units]
    for a, b in combinations(range(n), 2):
        if linalg.apply(m, bracket(g, units[a], units[b])) != bracket(g, images[a], images[b]):
            raise SubspaceError('involution is not an automorphism')


def d_pair(I):
    """Eigenspaces (s, W) of an involution for the eigenvalues +1 and -1."""
    return linalg.eigenspace(I.matrix, 1), linalg.eigenspace(I.matrix, -1)


def strip(g, I, label='g'):
    """Stripping by a d-pair: children (s acting on W) and the dressing algebra a_beta."""
    check_involution(g, I)
    s, W = d_pair(I)
    adapted, T, T_inv, h = _adapted(g, s, W)
    acting = change_basis(_keep(adapted, lambda a, b, k: a <= h), T_inv)
    dressing = change_basis(_keep(adapted, lambda a, b, k: a > h), T_inv)
    children = (
        AScheme(acting, (), f'{label}.s', flagged=acting.is_abelian),
        AScheme(dressing, (), f'{label}.beta', flagged=dressing.is_abelian),
    )
    return AScheme(g, children, label)
