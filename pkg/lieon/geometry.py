"""
Coaxial base lieons on a fixed basis and their pairwise compatibility.

A tee <i,j|k> is the fork lieon [e_i, e_j] = e_k (k outside {i, j}); a dee
<p|q> is the two-dimensional lieon [e_p, e_q] = e_q. Compatibility of two
base lieons is decided combinatorially from their vertices; schouten_compatible
is the bracket oracle it must agree with.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import networkx as nx

from .errors import IndexOutOfRange, SubspaceError
from .lie import LieStructure, compatible


@dataclass(frozen=True)
class Tee:
    ends: tuple
    center: int
    coefficient: Fraction = field(default=Fraction(1), compare=False)

    def __post_init__(self):
        i, j = self.ends
        if len({i, j, self.center}) != 3:
            raise IndexOutOfRange(f'tee vertices must be distinct: {i}, {j}, {self.center}')
        if i > j:
            # <i,j|k> = -<j,i|k>
            object.__setattr__(self, 'ends', (j, i))
            object.__setattr__(self, 'coefficient', -Fraction(self.coefficient))
        else:
            object.__setattr__(self, 'coefficient', Fraction(self.coefficient))

    @classmethod
    def of(cls, i, j, k, coefficient=1):
        return cls((i, j), k, coefficient)

    @property
    def key(self):
        return (0,) + self.ends + (self.center,)

    @property
    def vertices(self):
        return frozenset(self.ends + (self.center,))

    def with_coefficient(self, c):
        return Tee(self.ends, self.center, c)

    def __str__(self):
        return f'⌊{self.ends[0]},{self.ends[1]}|{self.center}⌉'


@dataclass(frozen=True)
class Dee:
    origin: int
    end: int
    coefficient: Fraction = field(default=Fraction(1), compare=False)

    def __post_init__(self):
        if self.origin == self.end:
            raise IndexOutOfRange(f'dee origin and end coincide: {self.origin}')
        object.__setattr__(self, 'coefficient', Fraction(self.coefficient))

    @property
    def key(self):
        return (1, self.origin, self.end)

    @property
    def vertices(self):
        return frozenset((self.origin, self.end))

    def with_coefficient(self, c):
        return Dee(self.origin, self.end, c)

    def __str__(self):
        return f'⌊{self.origin}|{self.end}⌉'


def lieon_key(x):
    return x.key


@dataclass(frozen=True)
class BaseFamily:
    dim: int
    tees: frozenset = frozenset()
    dees: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, 'tees', frozenset(self.tees))
        object.__setattr__(self, 'dees', frozenset(self.dees))
        for member in self.tees | self.dees:
            if max(member.vertices) > self.dim or min(member.vertices) < 1:
                raise IndexOutOfRange(f'{member} has a vertex outside 1..{self.dim}')

    @classmethod
    def of(cls, dim, members):
        members = list(members)
        return cls(dim, [m for m in members if isinstance(m, Tee)],
                   [m for m in members if isinstance(m, Dee)])

    @property
    def members(self):
        return sorted(self.tees | self.dees, key=lieon_key)

    @property
    def vertices(self):
        found = set()
        for member in self.tees | self.dees:
            found |= member.vertices
        return frozenset(found)

    def __len__(self):
        return len(self.tees) + len(self.dees)

    def __contains__(self, member):
        return member in self.tees or member in self.dees

    def __iter__(self):
        return iter(self.members)

    def add(self, member):
        return BaseFamily.of(self.dim, self.members + [member])

    def __str__(self):
        return '{' + ', '.join(str(m) for m in self.members) + '}'


def realize(x, n):
    if max(x.vertices) > n:
        raise IndexOutOfRange(f'{x} does not fit in dimension {n}')
    if isinstance(x, Tee):
        i, j = x.ends
        return LieStructure(n, {(i, j, x.center): x.coefficient})
    return LieStructure(n, {(x.origin, x.end, x.end): x.coefficient})


def _tee_blocks(t, other):
    """True if t's center hits an end of `other` whose partner end lies outside t's ends."""
    a, b = other.ends
    if t.center == a:
        return b not in t.ends
    if t.center == b:
        return a not in t.ends
    return False


def compatible_base(x, y):
    if x.key == y.key or not (x.vertices & y.vertices):
        return True
    if isinstance(x, Tee) and isinstance(y, Tee):
        return not (_tee_blocks(x, y) or _tee_blocks(y, x))
    if isinstance(x, Dee) and isinstance(y, Dee):
        p, q, r, s = x.origin, x.end, y.origin, y.end
        return not ((q == r and s != p) or (s == p and q != r))
    tee, dee = (x, y) if isinstance(x, Tee) else (y, x)
    # vertices are shared here, so only an origin on the ends saves it
    return dee.origin in tee.ends


def schouten_compatible(x, y, n=None):
    n = n or max(x.vertices | y.vertices)
    return compatible(realize(x, n), realize(y, n))


def family_is_compatible(F):
    return all(compatible_base(x, y) for x, y in combinations(F.members, 2))


def incompatible_pairs(F):
    return [(x, y) for x, y in combinations(F.members, 2) if not compatible_base(x, y)]


def synthesize_structure(F, coeffs=None):
    """sum of coeff * realize(member); coeffs keyed by member key (default: member coefficient)."""
    g = LieStructure(F.dim)
    for member in F.members:
        c = member.coefficient if coeffs is None else coeffs.get(member.key, member.coefficient)
        g = g + realize(member.with_coefficient(c), F.dim)
    return g


def base_lieons(n):
    """All tees and dees on vertices 1..n in lexicographic key order."""
    found = [Tee.of(i, j, k) for i, j in combinations(range(1, n + 1), 2)
             for k in range(1, n + 1) if k not in (i, j)]
    found += [Dee(p, q) for p in range(1, n + 1) for q in range(1, n + 1) if p != q]
    return sorted(found, key=lieon_key)


def monomial_lieons(g):
    """Read a structure's constants as coefficient-carrying base lieons."""
    found = []
    for (i, j, k), c in g.items():
        if k == j:
            found.append(Dee(i, j, c))
        elif k == i:
            found.append(Dee(j, i, -c))
        else:
            found.append(Tee.of(i, j, k, c))
    return found


def incompatibility_graph(members):
    graph = nx.Graph()
    graph.add_nodes_from(members)
    graph.add_edges_from((x, y) for x, y in combinations(members, 2) if not compatible_base(x, y))
    return graph


def compatibility_graph(members):
    graph = nx.Graph()
    graph.add_nodes_from(members)
    graph.add_edges_from((x, y) for x, y in combinations(members, 2) if compatible_base(x, y))
    return graph


def tight_pencil_family(n, centers, lines):
    """Tees whose centers (as (n-2)-subsets of indices) form a pencil or co-pencil.

    A member with center C and line k is the tee with ends [n] - C and center k.
    """
    centers = [frozenset(c) for c in centers]
    if len(centers) != len(lines):
        raise SubspaceError('one line index is needed per center')
    universe = frozenset(range(1, n + 1))
    for c, k in zip(centers, lines):
        if len(c) != n - 2 or not c <= universe:
            raise SubspaceError(f'center {sorted(c)} is not an (n-2)-subset of 1..{n}')
        if k not in c:
            raise SubspaceError(f'line {k} is not inside center {sorted(c)}')
    if centers:
        pencil = len(frozenset.intersection(*centers)) >= n - 3
        co_pencil = len(frozenset.union(*centers)) <= n - 1
        if not (pencil or co_pencil):
            raise SubspaceError('centers form neither a pencil nor a co-pencil')
    tees = []
    for c, k in zip(centers, lines):
        i, j = sorted(universe - c)
        tees.append(Tee.of(i, j, k))
    return BaseFamily(n, tees)
