"""
Coaxial clusters: maximal compatible families of base lieons.

A family F is a cluster when its graph Upsilon_F is connected and every
base lieon on S(F) that no member blocks already belongs to F. Clusters on
{1..n} are therefore the connected maximal cliques of the compatibility
graph covering every vertex.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from fractions import Fraction
from itertools import combinations, permutations

import networkx as nx

from .errors import GuardExceeded, IncompatibleFamily, NotACluster
from .geometry import (BaseFamily, Dee, Tee, base_lieons, compatibility_graph,
                       compatible_base, family_is_compatible, lieon_key,
                       synthesize_structure)
from .lie import bracket_spaces, center, is_ideal
from .utils.linalg import Subspace

logger = logging.getLogger("lieon-clusters")

DEFAULT_MAX_N = 6


class VertexType(Enum):
    T_CENTER = 't-center'
    D_CENTER = 'd-center'
    END = 'end'
    MIXING = 'mixing'

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ClusterCard:
    """Counts of structural groups; per-end vectors and matrices in canonical end order."""

    n_t: int
    n_e: int
    n_d: int
    n_tr: int
    n_r: int
    tvec: tuple = ()
    pvec: tuple = ()
    B: tuple = ()
    D: tuple = ()

    def dimension(self):
        pairs = sum(self.B[i][j] + self.D[i][j] for i, j in combinations(range(self.n_e), 2))
        return (self.n_t + self.n_e + self.n_d + 3 * self.n_tr + 2 * self.n_r
                + sum(p + 2 * t for p, t in zip(self.pvec, self.tvec)) + pairs)

    def __str__(self):
        head = f'({self.n_t},{self.n_e},{self.n_d},{self.n_tr},{self.n_r})'
        if not self.n_e:
            return head
        return f'{head} t={list(self.tvec)} p={list(self.pvec)} B={[list(r) for r in self.B]} D={[list(r) for r in self.D]}'


# Named clusters in low dimension, in the order they are usually listed.
LOW_DIMENSIONAL_CLUSTERS = {
    2: ('double',),
    3: ('triangle', '(1,1)-rotator', 'framed twain', 'd-bridge'),
    4: ('(3,1)-spider', '(1,1)-hedgehog', '(1,2)-rotator', '(2,2)-raft', 'framed 3-pyramid'),
    5: ('(4,1)-spider', '(3,2)-spider', '(3,1)-spider⋈d-bridge', 'tripod⋈(3,1)-spider',
        '(3,1)-spider⋈single', '(1,2)-hedgehog', '(1,3)-rotator', '(2,1)-rotator',
        '(4,1)-multiped', '2-bridge cluster', 'single-center-single cluster',
        'bridge-d-bridge cluster', 'suspended (2,2)-raft', 'trey⋈single', 'd-2-plex⋈bridge',
        '(2,3)-raft', 'single-twain cluster', '(d-bridge⋈single)⋈single',
        'd-bridge⋈(framed twain)', '(3,2)-raft', 'framed 4-pyramid'),
}


def upsilon_graph(F):
    """Vertices S(F); a tee joins its three vertices pairwise, a dee joins origin and end."""
    graph = nx.Graph()
    graph.add_nodes_from(sorted(F.vertices))
    for member in F.members:
        graph.add_edges_from(combinations(sorted(member.vertices), 2))
    return graph


def candidates(vertices):
    """Every tee and dee on the given vertex set, by key."""
    vs = sorted(vertices)
    found = [Tee.of(i, j, k) for i, j in combinations(vs, 2) for k in vs if k not in (i, j)]
    found += [Dee(p, q) for p in vs for q in vs if p != q]
    return sorted(found, key=lieon_key)


def blocked(candidate, F):
    return any(not compatible_base(candidate, member) for member in F.members)


def _require_compatible(F):
    if not family_is_compatible(F):
        raise IncompatibleFamily(f'family {F} is not compatible')


def is_cluster(F):
    _require_compatible(F)
    if not len(F) or not nx.is_connected(upsilon_graph(F)):
        return False
    return all(c in F or blocked(c, F) for c in candidates(F.vertices))


def complete_family(F):
    """Add the least unblocked candidate on S(F) until none is left."""
    _require_compatible(F)
    while True:
        extra = next((c for c in candidates(F.vertices) if c not in F and not blocked(c, F)), None)
        if extra is None:
            return F
        F = F.add(extra)


def relabel(F, perm, dim=None):
    """Image of F under the vertex map perm (a dict)."""
    members = []
    for m in F.members:
        if isinstance(m, Tee):
            members.append(Tee.of(perm[m.ends[0]], perm[m.ends[1]], perm[m.center], m.coefficient))
        else:
            members.append(Dee(perm[m.origin], perm[m.end], m.coefficient))
    return BaseFamily.of(dim or F.dim, members)


def _encoding(F):
    return tuple(sorted(m.key for m in F.members))


def canonical_form(F):
    """Relabeling of S(F) onto 1..|S(F)| with the least encoding."""
    vs = sorted(F.vertices)
    best = None
    for image in permutations(range(1, len(vs) + 1)):
        candidate = relabel(F, dict(zip(vs, image)), len(vs))
        if best is None or _encoding(candidate) < _encoding(best):
            best = candidate
    return best


def brute_force_equivalent(F1, F2):
    """Search for a vertex bijection carrying F1 onto F2."""
    v1, v2 = sorted(F1.vertices), sorted(F2.vertices)
    if len(v1) != len(v2) or len(F1) != len(F2):
        return False
    target = _encoding(F2)
    dim = max(F2.dim, len(v2))
    return any(_encoding(relabel(F1, dict(zip(v1, image)), dim)) == target
               for image in permutations(v2))


def enumerate_clusters(n, dees_only=False, max_n=DEFAULT_MAX_N):
    """Canonical representatives of the clusters on {1..n}, sorted."""
    if n > max_n:
        raise GuardExceeded(f'cluster enumeration is limited to n <= {max_n}, got {n}')
    if n < 2:
        return []
    pool = [m for m in base_lieons(n) if not dees_only or isinstance(m, Dee)]
    full = frozenset(range(1, n + 1))
    found = {}
    for clique in nx.find_cliques(compatibility_graph(pool)):
        F = BaseFamily.of(n, clique)
        if F.vertices != full or not is_cluster(F):
            continue
        rep = canonical_form(F)
        found.setdefault(_encoding(rep), rep)
    logger.info('n=%d: %d clusters%s', n, len(found), ' (dees only)' if dees_only else '')
    return [found[key] for key in sorted(found)]


def _parts(F):
    dees, tees = F.dees, F.tees
    parts = {
        'dee_origins': {d.origin for d in dees},
        'dee_ends': {d.end for d in dees},
        'tee_ends': {e for t in tees for e in t.ends},
        'tee_centers': {t.center for t in tees},
    }
    parts['S_D'] = parts['dee_origins'] | parts['dee_ends']
    parts['S_T'] = parts['tee_ends'] | parts['tee_centers']
    return parts


def vertex_types(F):
    _require_compatible(F)
    p = _parts(F)
    types = {}
    for v in sorted(F.vertices):
        if v in p['dee_origins'] or (v in p['tee_ends'] and v not in p['tee_centers']):
            types[v] = VertexType.END
        elif v in p['tee_centers'] and v not in p['tee_ends'] and v not in p['S_D']:
            types[v] = VertexType.T_CENTER
        elif v in p['dee_ends'] and v not in p['dee_origins'] and v not in p['S_T']:
            types[v] = VertexType.D_CENTER
        else:
            types[v] = VertexType.MIXING
    return types


def _tee_set(F):
    return {(frozenset(t.ends), t.center) for t in F.tees}


def _triangles(F):
    tees = _tee_set(F)
    return [set(T) for T in combinations(sorted(F.vertices), 3)
            if all((frozenset(T) - {v}, v) in tees for v in T)]


def _is_trey_bottom(v, root, tees, t_centers):
    for w, c in ((w, c) for _, w in tees for c in t_centers):
        if w == v:
            continue
        if ((frozenset((root, v)), w) in tees and (frozenset((root, w)), v) in tees
                and (frozenset((v, w)), c) in tees):
            return True
    return False


def _canonical_card(n_t, n_e, n_d, n_tr, n_r, t, p, B, D):
    best = None
    for perm in permutations(range(n_e)):
        key = (tuple((t[i], p[i]) for i in perm),
               tuple(tuple(B[i][j] for j in perm) for i in perm),
               tuple(tuple(D[i][j] for j in perm) for i in perm))
        if best is None or key < best:
            best = key
    tp, B, D = best if best else ((), (), ())
    return ClusterCard(n_t, n_e, n_d, n_tr, n_r, tuple(a for a, _ in tp), tuple(b for _, b in tp), B, D)


def _integral(x):
    return int(x) if Fraction(x).denominator == 1 else x


def compute_card(F):
    if not is_cluster(F):
        raise NotACluster(f'family {F} is not a cluster')
    p = _parts(F)
    S = set(F.vertices)
    dee_keys = {(d.origin, d.end) for d in F.dees}
    tees = _tee_set(F)
    doubles = [(a, b) for a, b in dee_keys if a < b and (b, a) in dee_keys]
    R = {v for pair in doubles for v in pair}
    triangles = _triangles(F)
    Tr = set().union(*triangles) if triangles else set()

    E = sorted((p['dee_origins'] | (p['tee_ends'] - p['tee_centers'])) - R)
    t_centers = (p['tee_centers'] - p['tee_ends']) - p['S_D']
    d_centers = (p['dee_ends'] - p['dee_origins']) - p['S_T']
    mixing = S - set(E) - t_centers - d_centers - R - Tr

    pos = {e: i for i, e in enumerate(E)}
    k = len(E)
    t = [Fraction(0)] * k
    pv = [0] * k
    B = [[0] * k for _ in range(k)]
    D = [[0] * k for _ in range(k)]
    for v in sorted(mixing):
        into = sorted(a for a, b in dee_keys if b == v and a in pos)
        if len(into) == 2 and (frozenset(into), v) in tees:
            a, b = pos[into[0]], pos[into[1]]
            D[a][b] += 1
            D[b][a] += 1
            continue
        bridge = next((ends for ends, c in tees if c == v and ends <= set(E)), None)
        if bridge is not None and v not in p['dee_ends']:
            a, b = sorted(pos[e] for e in bridge)
            B[a][b] += 1
            B[b][a] += 1
            continue
        roots = [e for e in E if any(c == v and e in ends for ends, c in tees)]
        roots = roots or [e for e in E if (e, v) in dee_keys]
        if not roots:
            logger.warning('mixing vertex %d of %s has no end to attach to', v, F)
            continue
        # a single belongs to the end its dee leaves from
        root = next((e for e in roots if (e, v) in dee_keys), roots[0])
        if (root, v) in dee_keys:
            pv[pos[root]] += 1
        elif _is_trey_bottom(v, root, tees, t_centers):
            t[pos[root]] += Fraction(1, 2)
        else:
            pv[pos[root]] += 1

    card = _canonical_card(len(t_centers), k, len(d_centers), len(triangles), len(doubles),
                           [_integral(x) for x in t], pv, B, D)
    if card.dimension() != len(S):
        logger.warning('card %s of %s accounts for %d of %d vertices', card, F, card.dimension(), len(S))
    return card


def equivalent(F1, F2):
    return compute_card(F1) == compute_card(F2)


def _member_key(member):
    return member.key if isinstance(member, (Tee, Dee)) else tuple(member)


def synthesize(F, coeffs=None):
    """sum of coeff * realize(member); coeffs may be keyed by member or by member key."""
    _require_compatible(F)
    keyed = None if coeffs is None else {_member_key(m): c for m, c in coeffs.items()}
    return synthesize_structure(F, keyed)


@dataclass(frozen=True)
class IdealReport:
    spans: dict
    ideals: dict
    central_ok: bool
    radical_length: int
    quotient_ok: bool

    @property
    def ok(self):
        return all(self.ideals.values()) and self.central_ok and self.radical_length <= 3 and self.quotient_ok


def _derived_length(g, U, limit=8):
    steps = 0
    while U.dimension and steps <= limit:
        nxt = bracket_spaces(g, U, U)
        if nxt == U:
            return limit + 1
        U = nxt
        steps += 1
    return steps


def _quotient_ok(g, triangles, radical):
    """Brackets of triangle vertices, modulo the radical, stay inside one simple triangle."""
    for (i, j, k), c in g.items():
        if i in radical or j in radical or k in radical:
            continue
        if not any({i, j, k} <= T for T in triangles):
            return False
    n = g.dim
    for T in triangles:
        span = Subspace.coordinate(n, sorted(T))
        image = bracket_spaces(g, span, span)
        if (image + Subspace.coordinate(n, sorted(radical))).dimension != len(T) + len(radical):
            return False
    return True


def coaxial_ideals(F, coeffs=None):
    """Spans of the coordinate ideals of a cluster algebra, each checked against the bracket."""
    if not is_cluster(F):
        raise NotACluster(f'family {F} is not a cluster')
    g = synthesize(F, coeffs)
    n = g.dim
    types = vertex_types(F)
    triangles = _triangles(F)
    Tr = set().union(*triangles) if triangles else set()
    radical = set(F.vertices) - Tr
    pick = lambda kind: [v for v, t in types.items() if t is kind]
    spans = {
        'g_c': Subspace.coordinate(n, pick(VertexType.T_CENTER)),
        'g_cd': Subspace.coordinate(n, pick(VertexType.D_CENTER)),
        'g_rad': Subspace.coordinate(n, sorted(radical)),
        'g_tr': Subspace.coordinate(n, sorted(Tr)),
    }
    ideals = {name: is_ideal(g, span) for name, span in spans.items() if name != 'g_tr'}
    # the triangle span is a complement, not necessarily an ideal
    report = IdealReport(
        spans=spans,
        ideals=ideals,
        central_ok=center(g).includes(spans['g_c']),
        radical_length=_derived_length(g, spans['g_rad']),
        quotient_ok=_quotient_ok(g, triangles, radical),
    )
    logger.debug('ideals of %s: %s', F, {k: v.dimension for k, v in spans.items()})
    return report


def _card(n_t, n_e, n_d, n_tr, n_r, t=None, p=None, B=None, D=None):
    zeros = tuple((0,) * n_e for _ in range(n_e))
    return _canonical_card(n_t, n_e, n_d, n_tr, n_r, tuple(t or (0,) * n_e), tuple(p or (0,) * n_e),
                           B or zeros, D or zeros)


KNOWN_CARDS = {
    'double': _card(0, 0, 0, 0, 1),
    'triangle': _card(0, 0, 0, 1, 0),
    '(1,1)-rotator': _card(1, 0, 0, 0, 1),
    'framed twain': _card(0, 1, 0, 0, 0, p=(2,)),
    'd-bridge': _card(0, 2, 0, 0, 0, D=((0, 1), (1, 0))),
    '(3,1)-spider': _card(0, 3, 1, 0, 0),
    '(1,1)-hedgehog': _card(1, 0, 0, 1, 0),
    '(1,2)-rotator': _card(2, 0, 0, 0, 1),
    '(2,2)-raft': _card(0, 2, 0, 0, 0, D=((0, 2), (2, 0))),
    'framed 3-pyramid': _card(0, 1, 0, 0, 0, p=(3,)),
    '(4,1)-spider': _card(0, 4, 1, 0, 0),
    '(3,2)-spider': _card(0, 3, 2, 0, 0),
    '(3,1)-spider⋈d-bridge': _card(0, 3, 1, 0, 0, D=((0, 1, 0), (1, 0, 0), (0, 0, 0))),
    'tripod⋈(3,1)-spider': _card(1, 3, 1, 0, 0),
    '(3,1)-spider⋈single': _card(0, 3, 1, 0, 0, p=(1, 0, 0)),
    '(1,2)-hedgehog': _card(2, 0, 0, 1, 0),
    '(1,3)-rotator': _card(3, 0, 0, 0, 1),
    '(2,1)-rotator': _card(1, 0, 0, 0, 2),
    '(4,1)-multiped': _card(1, 4, 0, 0, 0),
    '2-bridge cluster': _card(1, 2, 0, 0, 0, B=((0, 2), (2, 0))),
    'single-center-single cluster': _card(1, 2, 0, 0, 0, p=(1, 1)),
    'bridge-d-bridge cluster': _card(1, 2, 0, 0, 0, B=((0, 1), (1, 0)), D=((0, 1), (1, 0))),
    'trey⋈single': _card(1, 1, 0, 0, 0, t=(1,), p=(1,)),
    'd-2-plex⋈bridge': _card(0, 3, 0, 0, 0, p=(1, 0, 0), D=((0, 0, 0), (0, 0, 1), (0, 1, 0))),
    '(2,3)-raft': _card(0, 3, 0, 0, 0, D=((0, 1, 0), (1, 0, 1), (0, 1, 0))),
    'd-bridge⋈(framed twain)': _card(0, 2, 0, 0, 0, p=(2, 0), D=((0, 1), (1, 0))),
    '(3,2)-raft': _card(0, 2, 0, 0, 0, D=((0, 3), (3, 0))),
    'framed 4-pyramid': _card(0, 1, 0, 0, 0, p=(4,)),
    'single-bridge-single': _card(0, 2, 0, 0, 0, p=(1, 1), B=((0, 1), (1, 0))),
}


def _witness(n, tees=(), dees=()):
    return BaseFamily.of(n, [Tee.of(*t) for t in tees] + [Dee(*d) for d in dees])


_TRIANGLE = [(1, 2, 3), (1, 3, 2), (2, 3, 1)]

# One family per name. Three of the five-vertex names describe families that
# are not maximal; complete_family turns each into another listed cluster.
NAMED_FAMILIES = {
    'double': _witness(2, dees=[(1, 2), (2, 1)]),
    'triangle': _witness(3, _TRIANGLE),
    '(1,1)-rotator': _witness(3, [(1, 2, 3)], [(1, 2), (2, 1)]),
    'framed twain': _witness(3, [(1, 2, 3), (1, 3, 2)], [(1, 2), (1, 3)]),
    'd-bridge': _witness(3, [(1, 2, 3)], [(1, 3), (2, 3)]),
    '(3,1)-spider': _witness(4, dees=[(1, 4), (2, 4), (3, 4)]),
    '(1,1)-hedgehog': _witness(4, _TRIANGLE + [(1, 2, 4), (1, 3, 4), (2, 3, 4)]),
    '(1,2)-rotator': _witness(4, [(1, 2, 3), (1, 2, 4)], [(1, 2), (2, 1)]),
    '(2,2)-raft': _witness(4, [(1, 2, 3), (1, 2, 4)], [(1, 3), (2, 3), (1, 4), (2, 4)]),
    'framed 3-pyramid': _witness(4, [(1, a, b) for a in (2, 3, 4) for b in (2, 3, 4) if a != b],
                                 [(1, 2), (1, 3), (1, 4)]),
    '(4,1)-spider': _witness(5, dees=[(1, 5), (2, 5), (3, 5), (4, 5)]),
    '(3,2)-spider': _witness(5, dees=[(a, b) for a in (1, 2, 3) for b in (4, 5)]),
    '(3,1)-spider⋈d-bridge': _witness(5, [(1, 2, 5)], [(1, 4), (2, 4), (3, 4), (1, 5), (2, 5)]),
    'tripod⋈(3,1)-spider': _witness(5, [(1, 2, 4), (1, 3, 4), (2, 3, 4)], [(1, 5), (2, 5), (3, 5)]),
    '(3,1)-spider⋈single': _witness(5, [(1, 2, 5), (1, 3, 5)], [(1, 4), (2, 4), (3, 4), (1, 5)]),
    '(1,2)-hedgehog': _witness(5, _TRIANGLE + [(a, b, c) for c in (4, 5) for a, b in combinations((1, 2, 3), 2)]),
    '(1,3)-rotator': _witness(5, [(1, 2, 3), (1, 2, 4), (1, 2, 5)], [(1, 2), (2, 1)]),
    '(2,1)-rotator': _witness(5, [(1, 2, 5), (3, 4, 5)], [(1, 2), (2, 1), (3, 4), (4, 3)]),
    '(4,1)-multiped': _witness(5, [(a, b, 5) for a, b in combinations((1, 2, 3, 4), 2)]),
    '2-bridge cluster': _witness(5, [(1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 3, 5), (2, 3, 5), (1, 4, 5), (2, 4, 5)]),
    'single-center-single cluster': _witness(5, [(1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 3, 5), (2, 4, 5)],
                                             [(1, 3), (2, 4)]),
    'bridge-d-bridge cluster': _witness(5, [(1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 4, 5), (2, 4, 5)],
                                        [(1, 3), (2, 3)]),
    'suspended (2,2)-raft': _witness(5, [(1, 2, 3), (1, 2, 4), (1, 2, 5)], [(1, 3), (2, 3), (1, 4), (2, 4)]),
    'trey⋈single': _witness(5, [(1, 2, 3), (1, 3, 2), (2, 3, 4), (1, 2, 4), (1, 3, 4), (1, 2, 5), (1, 3, 5),
                                (1, 5, 4)], [(1, 5)]),
    'd-2-plex⋈bridge': _witness(5, [(1, 2, 4), (1, 3, 5), (2, 3, 5)], [(1, 4), (2, 4), (3, 5)]),
    '(2,3)-raft': _witness(5, [(1, 2, 4), (2, 3, 5)], [(1, 4), (2, 4), (2, 5), (3, 5)]),
    'single-twain cluster': _witness(5, [(1, 3, 4), (1, 4, 3), (1, 2, 3), (1, 2, 4), (1, 2, 5)],
                                     [(1, 3), (1, 4), (2, 5)]),
    '(d-bridge⋈single)⋈single': _witness(5, [(1, 2, 3), (1, 2, 4), (1, 2, 5)], [(1, 3), (2, 3), (1, 4), (2, 5)]),
    'd-bridge⋈(framed twain)': _witness(5, [(1, 2, 3), (1, 4, 5), (1, 5, 4), (1, 2, 4), (1, 2, 5)],
                                        [(1, 3), (2, 3), (1, 4), (1, 5)]),
    '(3,2)-raft': _witness(5, [(1, 2, 3), (1, 2, 4), (1, 2, 5)], [(a, b) for a in (1, 2) for b in (3, 4, 5)]),
    'framed 4-pyramid': _witness(5, [(1, a, b) for a in range(2, 6) for b in range(2, 6) if a != b],
                                 [(1, 2), (1, 3), (1, 4), (1, 5)]),
}

# Enumerated clusters missing from the named lists: a bridge hung on two singles.
UNLISTED_FAMILIES = {
    'single-bridge-single': _witness(5, [(1, 2, 3), (1, 5, 3), (1, 2, 4), (2, 5, 4), (1, 2, 5)], [(1, 3), (2, 4)]),
}

_NAMED_SIZES = {len(W.vertices) for W in NAMED_FAMILIES.values()}


@lru_cache(maxsize=None)
def _named_forms():
    found = {}
    for name, W in list(NAMED_FAMILIES.items()) + list(UNLISTED_FAMILIES.items()):
        if is_cluster(W):
            found.setdefault(_encoding(canonical_form(W)), name)
    return found


def identify(F):
    """Low-dimensional name of a cluster, found through its canonical form."""
    if not is_cluster(F):
        raise NotACluster(f'family {F} is not a cluster')
    if len(F.vertices) not in _NAMED_SIZES:
        return None
    return _named_forms().get(_encoding(canonical_form(F)))


def low_dimensional_report(n, max_n=DEFAULT_MAX_N):
    """Enumeration against the named list.

    Every enumerated cluster comes with its card and name. Listed names whose
    family is not a cluster are reported with the cluster their completion is.
    """
    found = enumerate_clusters(n, max_n=max_n)
    rows = []
    for F in found:
        card = compute_card(F)
        rows.append({
            'family': F,
            'card': card,
            'dimension_ok': card.dimension() == n,
            'name': identify(F),
        })
    named = LOW_DIMENSIONAL_CLUSTERS.get(n, ())
    unmatched = []
    for name in named:
        W = NAMED_FAMILIES[name]
        if not is_cluster(W):
            unmatched.append({'name': name, 'family': W, 'completes_to': identify(complete_family(W))})
    unlisted = [row['name'] or str(row['card']) for row in rows if row['name'] not in named]
    if len(found) != len(named):
        logger.info('n=%d: enumeration found %d clusters, the named list has %d (%d not maximal, %d unlisted)',
                    n, len(found), len(named), len(unmatched), len(unlisted))
    return {'n': n, 'enumerated': len(found), 'named': len(named), 'names': named, 'clusters': rows,
            'unmatched': unmatched, 'unlisted': unlisted}
