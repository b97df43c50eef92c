"""
Exact linear algebra over Q on top of sympy matrices.

Scalars cross this boundary as fractions.Fraction; vectors are tuples of
Fractions (0-based positions, even though basis *labels* are 1-based).
"""

from fractions import Fraction

import sympy

from ..errors import DimensionMismatch, SubspaceError


def to_sympy(value):
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def to_fraction(value):
    value = sympy.sympify(value)
    if not isinstance(value, sympy.Rational):
        raise SubspaceError(f'non-rational value {value} in exact computation')
    return Fraction(int(value.p), int(value.q))


def matrix(rows):
    """sympy Matrix from nested sequences of rationals."""
    rows = [list(r) for r in rows]
    if not rows:
        return sympy.zeros(0, 0)
    return sympy.Matrix([[to_sympy(v) for v in r] for r in rows])


def from_matrix(m):
    """Nested tuple of Fractions from a sympy Matrix."""
    return tuple(tuple(to_fraction(m[i, j]) for j in range(m.cols)) for i in range(m.rows))


def column(vector):
    return sympy.Matrix([to_sympy(v) for v in vector])


def as_vector(col):
    return tuple(to_fraction(v) for v in col)


def identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def unit(i, n):
    """The 1-based basis vector e_i of Q^n."""
    return tuple(Fraction(int(j == i - 1)) for j in range(n))


def add(u, v, factor=1):
    if len(u) != len(v):
        raise DimensionMismatch(f'vector lengths differ: {len(u)} vs {len(v)}')
    return tuple(a + factor * b for a, b in zip(u, v))


def scale(u, c):
    return tuple(c * a for a in u)


def is_zero(u):
    return not any(u)


class Subspace:
    """A subspace of Q^n stored by its reduced row echelon basis (canonical)."""

    __slots__ = ('ambient', 'basis')

    def __init__(self, ambient, vectors=()):
        self.ambient = ambient
        vectors = [tuple(Fraction(v) for v in vec) for vec in vectors]
        for vec in vectors:
            if len(vec) != ambient:
                raise DimensionMismatch(f'vector of length {len(vec)} in Q^{ambient}')
        vectors = [v for v in vectors if any(v)]
        if not vectors:
            self.basis = ()
            return
        reduced, pivots = matrix(vectors).rref()
        self.basis = tuple(as_vector(reduced.row(i)) for i in range(len(pivots)))

    @classmethod
    def full(cls, n):
        return cls(n, identity(n))

    @classmethod
    def coordinate(cls, n, indices):
        """Span of the 1-based basis vectors e_i, i in indices."""
        return cls(n, [unit(i, n) for i in indices])

    def __len__(self):
        return len(self.basis)

    @property
    def dimension(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f'Subspace(ambient={self.ambient}, dim={len(self.basis)})'

    def contains(self, vector):
        if not self.basis:
            return is_zero(vector)
        return Subspace(self.ambient, self.basis + (tuple(vector),)).dimension == self.dimension

    def includes(self, other):
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other):
        return Subspace(self.ambient, self.basis + other.basis)

    def intersection(self, other):
        if not self.basis or not other.basis:
            return Subspace(self.ambient)
        # solve sum a_i u_i = sum b_j w_j
        stacked = matrix(list(self.basis) + [scale(w, -1) for w in other.basis]).T
        vectors = []
        for null in stacked.nullspace():
            coeffs = as_vector(null)[:len(self.basis)]
            vec = tuple(Fraction(0) for _ in range(self.ambient))
            for c, u in zip(coeffs, self.basis):
                vec = add(vec, u, c)
            vectors.append(vec)
        return Subspace(self.ambient, vectors)

    def complement_units(self):
        """1-based indices of unit vectors completing this subspace to Q^n, earliest first."""
        chosen = []
        current = self
        for i in range(1, self.ambient + 1):
            if len(current) == self.ambient:
                break
            if not current.contains(unit(i, self.ambient)):
                chosen.append(i)
                current = current + Subspace.coordinate(self.ambient, [i])
        return chosen


def column_space(vectors, n):
    return Subspace(n, vectors)


def kernel(rows, n):
    """Common kernel of linear forms / stacked matrices given as rows of length n."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return Subspace.full(n)
    return Subspace(n, [as_vector(v) for v in matrix(rows).nullspace()])


def inverse(m):
    sm = matrix(m)
    if sm.rows != sm.cols or sm.det() == 0:
        raise SubspaceError('matrix is singular')
    return from_matrix(sm.inv())


def matmul(a, b):
    return from_matrix(matrix(a) * matrix(b))


def apply(m, vector):
    return tuple(sum((row[j] * vector[j] for j in range(len(vector))), Fraction(0)) for row in m)


def trace(m):
    return sum((m[i][i] for i in range(len(m))), Fraction(0))


def transpose(m):
    return tuple(zip(*m)) if m else ()


def eigenspace(m, value):
    n = len(m)
    shifted = [[m[i][j] - (value if i == j else 0) for j in range(n)] for i in range(n)]
    return kernel(shifted, n)


def coordinates(basis, vector):
    """Coordinates of vector in the given (independent) basis, or SubspaceError."""
    if not basis:
        if any(vector):
            raise SubspaceError('vector not in the zero subspace')
        return ()
    system = matrix(basis).T
    try:
        sol, params = system.gauss_jordan_solve(column(vector))
    except ValueError as e:
        raise SubspaceError(f'vector not in span: {e}') from e
    if params.shape[0]:
        sol = sol.subs({p: 0 for p in params})
    return as_vector(sol)


def inertia(symmetric):
    """(positive, negative, zero) counts of a symmetric rational matrix."""
    sm = matrix(symmetric)
    n = sm.rows
    pos = neg = 0
    # symmetric Gaussian elimination with pivoting on the diagonal or pair rotations
    work = sm.copy()
    active = list(range(n))
    while active:
        pivot = next((i for i in active if work[i, i] != 0), None)
        if pivot is None:
            pair = next(((i, j) for i in active for j in active if i < j and work[i, j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # e_i -> e_i + e_j makes a nonzero diagonal entry
            work[i, :] = work[i, :] + work[j, :]
            work[:, i] = work[:, i] + work[:, j]
            pivot = i
        p = work[pivot, pivot]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for k in active:
            if k != pivot and work[k, pivot] != 0:
                factor = work[k, pivot] / p
                work[k, :] = work[k, :] - factor * work[pivot, :]
                work[:, k] = work[:, k] - factor * work[:, pivot]
        active.remove(pivot)
    return pos, neg, n - pos - neg
