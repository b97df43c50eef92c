"""
Lie algebra structures as structure constants and their linear Poisson duals.

A LieStructure on Q^n stores c_ij^k for i < j, meaning
    [e_i, e_j] = sum_k c_ij^k e_k,
and its dual bivector is P = sum_{i<j} c_ij^k x_k xi_i xi_j. Jacobi is not a
constructor invariant: candidate (skew) structures are representable and
checked with jacobi_defect.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Tuple

from . import exterior
from .errors import (AlreadyUnimodular, DimensionMismatch, GradeError,
                     IndexOutOfRange, InvalidQuadruple, NotJacobi)
from .exterior import MultiVector, Polynomial
from .utils import linalg
from .utils.linalg import Subspace


class LieStructure:
    """Sparse antisymmetric structure constants on a fixed basis e_1..e_n."""

    __slots__ = ('dim', '_constants')

    def __init__(self, dim, constants=None):
        if dim < 1:
            raise IndexOutOfRange(f'dimension must be positive, got {dim}')
        clean = {}
        for (i, j, k), c in (constants or {}).items():
            c = Fraction(c)
            for idx in (i, j, k):
                if not 1 <= idx <= dim:
                    raise IndexOutOfRange(f'index {idx} outside 1..{dim}')
            if i == j:
                if c:
                    raise GradeError(f'[e{i}, e{i}] must vanish')
                continue
            if i > j:
                i, j, c = j, i, -c
            clean[(i, j, k)] = clean.get((i, j, k), Fraction(0)) + c
        self.dim = dim
        self._constants = {key: c for key, c in clean.items() if c}

    @classmethod
    def abelian(cls, dim):
        return cls(dim)

    def items(self):
        return sorted(self._constants.items())

    def c(self, i, j, k):
        if i == j:
            return Fraction(0)
        if i > j:
            return -self._constants.get((j, i, k), Fraction(0))
        return self._constants.get((i, j, k), Fraction(0))

    def bracket_units(self, i, j):
        """[e_i, e_j] as a coordinate tuple."""
        return tuple(self.c(i, j, k) for k in range(1, self.dim + 1))

    @property
    def is_abelian(self):
        return not self._constants

    def __len__(self):
        return len(self._constants)

    def __eq__(self, other):
        if not isinstance(other, LieStructure):
            return NotImplemented
        return self.dim == other.dim and self._constants == other._constants

    def __hash__(self):
        return hash((self.dim, frozenset(self._constants.items())))

    def _combine(self, other, factor):
        if self.dim != other.dim:
            raise DimensionMismatch(f'dimension mismatch: {self.dim} vs {other.dim}')
        out = dict(self._constants)
        for key, c in other._constants.items():
            out[key] = out.get(key, Fraction(0)) + factor * c
        return LieStructure(self.dim, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, factor):
        factor = Fraction(factor)
        return LieStructure(self.dim, {key: factor * c for key, c in self._constants.items()})

    def __repr__(self):
        body = ', '.join(f'[e{i},e{j}]_{k}={c}' for (i, j, k), c in self.items())
        return f'LieStructure(dim={self.dim}, {body or "abelian"})'


def lie_sum(g1, g2):
    return g1 + g2


def _vector(v, n):
    v = tuple(Fraction(a) for a in v)
    if len(v) != n:
        raise DimensionMismatch(f'vector of length {len(v)} for dimension {n}')
    return v


def bracket(g, u, v):
    u = _vector(u, g.dim)
    v = _vector(v, g.dim)
    out = [Fraction(0)] * g.dim
    for (i, j, k), c in g._constants.items():
        # antisymmetry folded in: u_i v_j - u_j v_i
        w = u[i - 1] * v[j - 1] - u[j - 1] * v[i - 1]
        if w:
            out[k - 1] += c * w
    return tuple(out)


def ad_matrix(g, u):
    """Matrix of ad u: column j is [u, e_j]."""
    cols = [bracket(g, u, linalg.unit(j, g.dim)) for j in range(1, g.dim + 1)]
    return linalg.transpose(cols)


def to_bivector(g):
    terms = {}
    for (i, j, k), c in g.items():
        terms[(i, j)] = terms.get((i, j), Polynomial()) + Polynomial.var(k, c)
    return MultiVector(g.dim, 2, terms)


def from_bivector(P):
    if P.grade != 2:
        raise GradeError(f'from_bivector expects a bivector, got grade {P.grade}')
    constants = {}
    for (i, j), coeff in P.items():
        if coeff.constant or coeff.degree > 1:
            raise GradeError(f'coefficient {coeff!r} of xi{i}xi{j} is not purely linear')
        for k, c in coeff.linear.items():
            constants[(i, j, k)] = c
    return LieStructure(P.dim, constants)


def jacobi_defect(g):
    P = to_bivector(g)
    return exterior.schouten(P, P)


def cyclic_jacobi_defect(g):
    """Independent oracle: {(i,j,k): nonzero cyclic sum} over basis triples i<j<k."""
    n = g.dim
    units = [linalg.unit(i, n) for i in range(1, n + 1)]
    found = {}
    for i, j, k in combinations(range(n), 3):
        a, b, c = units[i], units[j], units[k]
        total = linalg.add(linalg.add(bracket(g, a, bracket(g, b, c)),
                                      bracket(g, b, bracket(g, c, a))),
                           bracket(g, c, bracket(g, a, b)))
        if any(total):
            found[(i + 1, j + 1, k + 1)] = total
    return found


def is_jacobi(g):
    return jacobi_defect(g).is_zero


def compatible(g1, g2):
    if g1.dim != g2.dim:
        raise DimensionMismatch(f'dimension mismatch: {g1.dim} vs {g2.dim}')
    return exterior.schouten(to_bivector(g1), to_bivector(g2)).is_zero


class Covector:
    """Sparse linear form on Q^n, components indexed 1..n."""

    __slots__ = ('components',)

    def __init__(self, components=None):
        self.components = {i: Fraction(c) for i, c in (components or {}).items() if c}

    def __call__(self, v):
        return sum((c * v[i - 1] for i, c in self.components.items()), Fraction(0))

    def __getitem__(self, i):
        return self.components.get(i, Fraction(0))

    def as_tuple(self, n):
        return tuple(self[i] for i in range(1, n + 1))

    @property
    def is_zero(self):
        return not self.components

    def __add__(self, other):
        out = dict(self.components)
        for i, c in other.components.items():
            out[i] = out.get(i, Fraction(0)) + c
        return Covector(out)

    def __eq__(self, other):
        if not isinstance(other, Covector):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(frozenset(self.components.items()))

    def __repr__(self):
        return f'Covector({self.components})'


def modular_vector(g):
    """theta(e_u) = -tr(ad e_u)."""
    theta = {}
    for u in range(1, g.dim + 1):
        tr = sum((g.c(u, j, j) for j in range(1, g.dim + 1)), Fraction(0))
        theta[u] = -tr
    return Covector(theta)


@dataclass(frozen=True)
class ModularSplit:
    uni: LieStructure
    non: LieStructure
    theta: Covector
    nu: Optional[Tuple[Fraction, ...]]
    A: Optional[Tuple[Tuple[Fraction, ...], ...]]

    @property
    def unimodular(self):
        return self.theta.is_zero


def modular_split(g, strict=False):
    """g = uni + non with non(u,v) = theta(u) A v - theta(v) A u, A = ad nu."""
    theta = modular_vector(g)
    if theta.is_zero:
        if strict:
            raise AlreadyUnimodular('structure is already unimodular (theta = 0)')
        return ModularSplit(g, LieStructure(g.dim), theta, None, None)
    i = min(theta.components)
    nu = linalg.scale(linalg.unit(i, g.dim), 1 / theta[i])
    A = ad_matrix(g, nu)
    th = theta.as_tuple(g.dim)
    non = {}
    for a, b in combinations(range(g.dim), 2):
        for k in range(g.dim):
            c = th[a] * A[k][b] - th[b] * A[k][a]
            if c:
                non[(a + 1, b + 1, k + 1)] = c
    non = LieStructure(g.dim, non)
    return ModularSplit(g - non, non, theta, nu, A)


def derived_algebra(g):
    n = g.dim
    return Subspace(n, [g.bracket_units(i, j) for i, j in combinations(range(1, n + 1), 2)])


def center(g):
    n = g.dim
    # v in Z iff sum_i v_i c_ij^k = 0 for all j, k
    rows = [[g.c(i, j, k) for i in range(1, n + 1)]
            for j in range(1, n + 1) for k in range(1, n + 1)]
    return linalg.kernel(rows, n)


def bracket_spaces(g, U, W):
    """Span of [u, w] for u in U, w in W."""
    return Subspace(g.dim, [bracket(g, u, w) for u in U.basis for w in W.basis])


def derived_series(g):
    series = [Subspace.full(g.dim)]
    while True:
        nxt = bracket_spaces(g, series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if not nxt.dimension:
            return series


def is_solvable(g):
    return derived_series(g)[-1].dimension == 0


def is_subalgebra(g, S):
    return S.includes(bracket_spaces(g, S, S))


def is_ideal(g, S):
    return S.includes(bracket_spaces(g, Subspace.full(g.dim), S))


def lie_rank(g):
    return exterior.mv_rank(to_bivector(g))


def recognize_lieon(g):
    """'fork(n)', 'dee(n)', 'abelian' or 'other' from dimension criteria."""
    if not is_jacobi(g):
        raise NotJacobi('recognize_lieon requires a Lie structure')
    n = g.dim
    derived = derived_algebra(g)
    if derived.dimension == 0:
        return 'abelian'
    if derived.dimension != 1:
        return 'other'
    z = center(g)
    if z.dimension != n - 2:
        return 'other'
    if z.includes(derived):
        return f'fork({n})'
    if z.intersection(derived).dimension == 0:
        return f'dee({n})'
    return 'other'


def is_lieon(g):
    return recognize_lieon(g).startswith(('fork', 'dee'))


def gamma_of_operator(A):
    """Gamma_A on span(e1) + V: [e1, v] = A v, V abelian, V = span(e2..e_{m+1})."""
    m = len(A)
    constants = {}
    for row in range(m):
        if len(A[row]) != m:
            raise DimensionMismatch('operator matrix must be square')
        for col in range(m):
            if A[row][col]:
                constants[(1, col + 2, row + 2)] = A[row][col]
    return LieStructure(m + 1, constants)


def change_basis(g, T):
    """Structure in the basis f_a = sum_i T_ia e_i (columns of T)."""
    n = g.dim
    if len(T) != n or any(len(r) != n for r in T):
        raise DimensionMismatch(f'basis change must be {n}x{n}')
    T_inv = linalg.inverse(T)
    cols = [tuple(T[i][a] for i in range(n)) for a in range(n)]
    constants = {}
    for a, b in combinations(range(n), 2):
        w = linalg.apply(T_inv, bracket(g, cols[a], cols[b]))
        for k, c in enumerate(w):
            if c:
                constants[(a + 1, b + 1, k + 1)] = c
    return LieStructure(n, constants)


def killing_form(g):
    n = g.dim
    ads = [linalg.matrix(ad_matrix(g, linalg.unit(i, n))) for i in range(1, n + 1)]
    return tuple(tuple(linalg.to_fraction((ads[i] * ads[j]).trace()) for j in range(n))
                 for i in range(n))


def _commutator(A, B):
    AB = linalg.matmul(A, B)
    BA = linalg.matmul(B, A)
    return tuple(tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(AB, BA))


@dataclass(frozen=True)
class MatchQuadruple:
    """(dim V, A, B, lambda); nu1/nu2 extend it to the quintuple form."""

    dimV: int
    A: tuple
    B: tuple
    lam: Fraction
    nu1: Optional[tuple] = None
    nu2: Optional[tuple] = None

    def violations(self):
        m = self.dimV
        found = []
        for name, mat in (('A', self.A), ('B', self.B)):
            if len(mat) != m or any(len(r) != m for r in mat):
                found.append(f'{name} must be {m}x{m}')
        if found:
            return found
        lam = Fraction(self.lam)
        for name, nu in (('nu1', self.nu1), ('nu2', self.nu2)):
            if nu is None:
                continue
            if len(nu) != m:
                found.append(f'{name} must have length {m}')
            elif lam != 0:
                found.append(f'{name} only extends the lambda = 0 quintuple')
            elif not linalg.is_zero(linalg.apply(self.A, tuple(Fraction(a) for a in nu))):
                found.append(f'{name} not in Ker A')
        comm = _commutator(self.A, self.B)
        target = tuple(tuple(2 * lam * a for a in row) for row in self.A)
        if comm != target:
            found.append('[A,B] != 2*lambda*A')
        if linalg.trace(self.B) != 2 * (1 + lam):
            found.append('tr B != 2(1 + lambda)')
        if lam == 0 and linalg.trace(self.A) != 0:
            found.append('tr A != 0')
        return found


def matching_from_quadruple(q):
    """Pair of compatible modular structures on Q^(dimV+2).

    Basis: e1, e2 dual to theta_1, theta_2, then V. Each factor is
    g_i(u,v) = theta_i(v) A_i u - theta_i(u) A_i v with theta_i o A_i = 0 and
    tr A_i = 1; on V the operators are (B + A)/2 and (B - A)/2, whose
    commutator relation is exactly [A, B] = 2*lambda*A.
    """
    problems = q.violations()
    if problems:
        raise InvalidQuadruple('; '.join(problems))
    m = q.dimV
    n = m + 2
    lam = Fraction(q.lam)
    nu1 = q.nu1 or (Fraction(0),) * m
    nu2 = q.nu2 or (Fraction(0),) * m
    halves = []
    for sign in (1, -1):
        halves.append([[(Fraction(q.B[r][c]) + sign * Fraction(q.A[r][c])) / 2 for c in range(m)]
                       for r in range(m)])
    structures = []
    for which, block in enumerate(halves):
        op = [[Fraction(0)] * n for _ in range(n)]
        # the other f-direction absorbs -lambda so that tr = 1
        other = 1 - which
        op[other][other] = -lam
        for r in range(m):
            op[r + 2][0] = Fraction(nu1[r]) / 2
            op[r + 2][1] = Fraction(nu2[r]) / 2
            for c in range(m):
                op[r + 2][c + 2] = block[r][c]
        constants = {}
        # g(e_a, e_b) = theta(e_b) op e_a - theta(e_a) op e_b with theta = e_{which}^*
        for a, b in combinations(range(n), 2):
            for k in range(n):
                c = (int(b == which) * op[k][a]) - (int(a == which) * op[k][b])
                if c:
                    constants[(a + 1, b + 1, k + 1)] = c
        structures.append(LieStructure(n, constants))
    return structures[0], structures[1]


def random_rational(rng, bound=3, nonzero=False):
    while True:
        value = Fraction(rng.randint(-bound, bound), rng.randint(1, 2))
        if value or not nonzero:
            return value


def random_invertible(rng, n, bound=2):
    while True:
        T = tuple(tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n)) for _ in range(n))
        if linalg.matrix(T).det() != 0:
            return T


def random_solvable(rng, dim, mix=True):
    """Abelian r-dim algebra acting on abelian V by commuting triangular operators."""
    if dim < 2:
        return LieStructure(dim)
    r = rng.randint(1, dim - 1)
    m = dim - r
    M = [[random_rational(rng) if c >= row else Fraction(0) for c in range(m)] for row in range(m)]
    M2 = linalg.matmul(M, M)
    constants = {}
    for a in range(r):
        c0, c1, c2 = (random_rational(rng) for _ in range(3))
        for row in range(m):
            for col in range(m):
                value = c0 * int(row == col) + c1 * M[row][col] + c2 * M2[row][col]
                if value:
                    constants[(a + 1, r + col + 1, r + row + 1)] = value
    g = LieStructure(dim, constants)
    if mix:
        g = change_basis(g, random_invertible(rng, dim))
    return g


def _triangle_block(rng):
    a, b, c = (random_rational(rng, nonzero=True) for _ in range(3))
    return 3, {(1, 2, 3): a, (2, 3, 1): b, (1, 3, 2): -c}


def _heisenberg_block(rng):
    return 3, {(1, 2, 3): random_rational(rng, nonzero=True)}


def _traceless_gamma_block(rng):
    a = random_rational(rng, nonzero=True)
    return 3, {(1, 2, 2): a, (1, 3, 3): -a}


def _traceless_operator_block(rng):
    """Gamma_A on a 3-dim V with tr A = 0."""
    A = [[random_rational(rng) for _ in range(3)] for _ in range(3)]
    A[2][2] = -A[0][0] - A[1][1]
    return 4, {(1, c + 2, r + 2): A[r][c] for r in range(3) for c in range(3) if A[r][c]}


def _sl2_plane_block(rng):
    """sl(2) = span(h, e, f) acting on the plane span(x, y)."""
    s = random_rational(rng, nonzero=True)
    return 5, {(1, 2, 2): 2 * s, (1, 3, 3): -2 * s, (2, 3, 1): s,
               (1, 4, 4): s, (1, 5, 5): -s, (2, 5, 4): s, (3, 4, 5): s}


def _euclidean_block(rng):
    """so(3) acting on Q^3: rotations L1..L3, translations P1..P3."""
    s = random_rational(rng, nonzero=True)
    constants = {}
    for i, j, k in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        constants[(i, j, k)] = s
        constants[(i, j + 3, k + 3)] = s
        constants[(j, i + 3, k + 3)] = -s
    return 6, constants


UNIMODULAR_BLOCKS = (
    (3, _triangle_block),
    (3, _heisenberg_block),
    (3, _traceless_gamma_block),
    (4, _traceless_operator_block),
    (5, _sl2_plane_block),
    (6, _euclidean_block),
)


def random_unimodular(rng, dim, mix=True):
    """Direct sum of unimodular blocks (simple, nilpotent, traceless Gamma, semidirect) plus an abelian part."""
    constants = {}
    offset = 0
    while dim - offset >= 3:
        builders = [build for size, build in UNIMODULAR_BLOCKS if size <= dim - offset]
        size, block = rng.choice(builders)(rng)
        for (i, j, k), c in block.items():
            constants[(i + offset, j + offset, k + offset)] = c
        offset += size
        if rng.random() < 0.3:
            break
    g = LieStructure(dim, constants)
    if mix:
        g = change_basis(g, random_invertible(rng, dim))
    return g


def _combination(rng, basis, n):
    out = (Fraction(0),) * n
    for v in basis:
        out = linalg.add(out, v, random_rational(rng))
    return out


def random_quadruple(rng, max_dimV=3):
    """A valid MatchQuadruple, conjugated by a random basis change of V."""
    m = rng.randint(1, max_dimV)
    if rng.random() < 0.3:
        lam = Fraction(0)
        B = [[Fraction(2, m) if r == c else Fraction(0) for c in range(m)] for r in range(m)]
        A = [[random_rational(rng) if c > r else Fraction(0) for c in range(m)] for r in range(m)]
    else:
        lam = random_rational(rng, nonzero=True)
        levels = [rng.randint(0, 2) for _ in range(m)]
        shift = (2 * (1 + lam) - 2 * lam * sum(levels)) / m
        B = [[2 * lam * levels[r] + shift if r == c else Fraction(0) for c in range(m)] for r in range(m)]
        A = [[random_rational(rng) if levels[c] - levels[r] == 1 else Fraction(0) for c in range(m)]
             for r in range(m)]
    T = random_invertible(rng, m)
    T_inv = linalg.inverse(T)
    A = linalg.matmul(linalg.matmul(T, A), T_inv)
    B = linalg.matmul(linalg.matmul(T, B), T_inv)
    nus = (None, None)
    if lam == 0:
        # nu1, nu2 drawn from Ker A
        ker = linalg.kernel(A, m).basis
        nus = tuple(_combination(rng, ker, m) for _ in range(2))
    return MatchQuadruple(m, A, B, lam, *nus)


def make_rng(seed=None):
    return random.Random(seed)
