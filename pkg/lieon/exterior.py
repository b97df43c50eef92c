"""
Exact graded multivector algebra.

Commuting coordinates x_1..x_n carry polynomial coefficients, the odd
partners xi_1..xi_n anticommute. A MultiVector of grade m is a sparse sum
of f_I(x) * xi_I over strictly increasing index tuples I of length m.
Indices are 1-based everywhere.
"""

from fractions import Fraction

from .errors import DimensionMismatch, GradeError, IndexOutOfRange


def _mono_mul(a, b):
    """Multiply two sparse monomials given as sorted ((var, exp), ...) tuples."""
    if not a:
        return b
    if not b:
        return a
    powers = dict(a)
    for var, exp in b:
        powers[var] = powers.get(var, 0) + exp
    return tuple(sorted(powers.items()))


class Polynomial:
    """Sparse polynomial in x_1..x_n with Fraction coefficients.

    Affine polynomials (constant + linear part) are the coefficient ring of
    everything linear-algebraic; products of those (wedge powers) may leave
    that range, which is why the general type exists.
    """

    __slots__ = ('_terms',)

    def __init__(self, terms=None):
        clean = {}
        for mono, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                clean[tuple(mono)] = coeff
        self._terms = clean

    @classmethod
    def const(cls, value):
        return cls({(): value})

    @classmethod
    def var(cls, i, coeff=1):
        return cls({((i, 1),): coeff})

    @classmethod
    def affine(cls, constant=0, linear=None):
        terms = {(): constant}
        for i, c in (linear or {}).items():
            terms[((i, 1),)] = c
        return cls(terms)

    def items(self):
        return self._terms.items()

    @property
    def constant(self):
        return self._terms.get((), Fraction(0))

    @property
    def linear(self):
        return {mono[0][0]: c for mono, c in self._terms.items()
                if len(mono) == 1 and mono[0][1] == 1}

    @property
    def degree(self):
        if not self._terms:
            return -1
        return max(sum(e for _, e in mono) for mono in self._terms)

    @property
    def is_affine(self):
        return self.degree <= 1

    def max_variable(self):
        return max((v for mono in self._terms for v, _ in mono), default=0)

    def derivative(self, i):
        out = {}
        for mono, c in self._terms.items():
            for pos, (var, exp) in enumerate(mono):
                if var != i:
                    continue
                rest = mono[:pos] + ((var, exp - 1),) + mono[pos + 1:] if exp > 1 else mono[:pos] + mono[pos + 1:]
                out[rest] = out.get(rest, 0) + c * exp
        return Polynomial(out)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.const(other)
        out = dict(self._terms)
        for mono, c in other._terms.items():
            out[mono] = out.get(mono, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            other = Fraction(other)
            return Polynomial({m: c * other for m, c in self._terms.items()})
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _mono_mul(m1, m2)
                out[mono] = out.get(mono, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __repr__(self):
        if not self._terms:
            return '0'
        parts = []
        for mono, c in sorted(self._terms.items()):
            factor = '*'.join(f'x{v}' if e == 1 else f'x{v}^{e}' for v, e in mono)
            if not factor:
                parts.append(str(c))
            elif c == 1:
                parts.append(factor)
            elif c == -1:
                parts.append(f'-{factor}')
            else:
                parts.append(f'{c}*{factor}')
        return ' + '.join(parts).replace('+ -', '- ')


def _as_poly(value):
    return value if isinstance(value, Polynomial) else Polynomial.const(value)


def _sort_sign(indices):
    """Sort a tuple of xi indices; return (sign, sorted) or (0, None) on repeats."""
    idx = list(indices)
    sign = 1
    # bubble sort counts adjacent transpositions
    for end in range(len(idx) - 1, 0, -1):
        for pos in range(end):
            if idx[pos] > idx[pos + 1]:
                idx[pos], idx[pos + 1] = idx[pos + 1], idx[pos]
                sign = -sign
            elif idx[pos] == idx[pos + 1]:
                return 0, None
    if len(set(idx)) != len(idx):
        return 0, None
    return sign, tuple(idx)


class MultiVector:
    """Grade-homogeneous multivector: sparse map WedgeMonomial -> Polynomial."""

    __slots__ = ('dim', 'grade', '_terms')

    def __init__(self, dim, grade, terms=None):
        if dim < 1:
            raise IndexOutOfRange(f'dimension must be positive, got {dim}')
        if grade < 0:
            raise GradeError(f'grade must be non-negative, got {grade}')
        clean = {}
        for indices, coeff in (terms or {}).items():
            indices = tuple(indices)
            if len(indices) != grade:
                raise GradeError(f'monomial {indices} has length {len(indices)}, expected {grade}')
            if any(a >= b for a, b in zip(indices, indices[1:])):
                raise GradeError(f'monomial {indices} is not strictly increasing')
            if indices and (indices[0] < 1 or indices[-1] > dim):
                raise IndexOutOfRange(f'monomial {indices} outside 1..{dim}')
            coeff = _as_poly(coeff)
            if coeff.max_variable() > dim:
                raise IndexOutOfRange(f'coefficient {coeff!r} uses a variable outside 1..{dim}')
            if coeff:
                clean[indices] = coeff
        self.dim = dim
        self.grade = grade
        self._terms = clean

    @classmethod
    def from_terms(cls, dim, grade, pairs):
        """Build from (indices, coeff) pairs with arbitrary index order; signs are applied."""
        acc = {}
        for indices, coeff in pairs:
            sign, key = _sort_sign(indices)
            if not sign:
                continue
            acc[key] = acc.get(key, Polynomial()) + _as_poly(coeff) * sign
        return cls(dim, grade, acc)

    @classmethod
    def zero(cls, dim, grade=0):
        return cls(dim, grade)

    def items(self):
        return self._terms.items()

    def coefficient(self, indices):
        return self._terms.get(tuple(indices), Polynomial())

    @property
    def is_zero(self):
        return not self._terms

    @property
    def is_affine(self):
        return all(c.is_affine for c in self._terms.values())

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, MultiVector):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        return hash((self.dim, frozenset(self._terms.items())))

    def _combine(self, other, factor):
        _check_dims(self, other)
        if self.grade != other.grade and self and other:
            raise GradeError(f'cannot add grade {self.grade} and grade {other.grade}')
        grade = self.grade if self else other.grade
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            out[key] = out.get(key, Polynomial()) + coeff * factor
        return MultiVector(self.dim, grade, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, factor):
        """Multiply every coefficient by a scalar or a Polynomial."""
        return MultiVector(self.dim, self.grade, {k: c * factor for k, c in self._terms.items()})

    __mul__ = scale
    __rmul__ = scale

    def __repr__(self):
        if not self._terms:
            return f'MultiVector(dim={self.dim}, grade={self.grade}, 0)'
        body = ' + '.join(f'({c!r})*' + ''.join(f'xi{i}' for i in k) if k else f'({c!r})'
                          for k, c in sorted(self._terms.items()))
        return f'MultiVector(dim={self.dim}, grade={self.grade}, {body})'


def _check_dims(P, Q):
    if P.dim != Q.dim:
        raise DimensionMismatch(f'dimension mismatch: {P.dim} vs {Q.dim}')


def _check_index(P, i):
    if not 1 <= i <= P.dim:
        raise IndexOutOfRange(f'index {i} outside 1..{P.dim}')


def x(i, dim, coeff=1):
    """The coordinate function coeff * x_i as a grade-0 multivector."""
    if not 1 <= i <= dim:
        raise IndexOutOfRange(f'index {i} outside 1..{dim}')
    return MultiVector(dim, 0, {(): Polynomial.var(i, coeff)})


def xi(i, dim, coeff=1):
    """The constant vector field coeff * xi_i."""
    return MultiVector(dim, 1, {(i,): coeff})


def scalar(value, dim):
    return MultiVector(dim, 0, {(): value})


def wedge(P, Q):
    _check_dims(P, Q)
    out = {}
    for i1, c1 in P.items():
        for i2, c2 in Q.items():
            sign, key = _sort_sign(i1 + i2)
            if not sign:
                continue
            out[key] = out.get(key, Polynomial()) + c1 * c2 * sign
    return MultiVector(P.dim, P.grade + Q.grade, out)


def d_dx(P, i):
    """Derivative of the coefficients with respect to x_i."""
    _check_index(P, i)
    return MultiVector(P.dim, P.grade, {k: c.derivative(i) for k, c in P.items()})


def d_dxi(P, i):
    """Left derivative with respect to xi_i: removing position p costs (-1)^(p-1)."""
    _check_index(P, i)
    if P.grade == 0:
        return MultiVector(P.dim, 0)
    out = {}
    for key, coeff in P.items():
        if i not in key:
            continue
        pos = key.index(i)
        rest = key[:pos] + key[pos + 1:]
        out[rest] = coeff if pos % 2 == 0 else -coeff
    return MultiVector(P.dim, P.grade - 1, out)


def _variables(P):
    found = set()
    for key, coeff in P.items():
        found.update(key)
        for mono, _ in coeff.items():
            found.update(v for v, _ in mono)
    return found


def schouten(P, Q):
    """Coordinate Schouten bracket -sum_i (dP/dx_i ^ dQ/dxi_i + (-1)^|P| dP/dxi_i ^ dQ/dx_i)."""
    _check_dims(P, Q)
    sign = -1 if P.grade % 2 else 1
    total = MultiVector(P.dim, max(P.grade + Q.grade - 1, 0))
    for i in sorted(_variables(P) | _variables(Q)):
        total = total + wedge(d_dx(P, i), d_dxi(Q, i))
        total = total + wedge(d_dxi(P, i), d_dx(Q, i)).scale(sign)
    result = -total
    if P.is_affine and Q.is_affine and not result.is_affine:
        raise GradeError('Schouten bracket of affine multivectors left the affine range')
    return result


def mv_rank(P):
    """Rank 2k of a bivector: P^k != 0 and P^(k+1) = 0."""
    if P.grade != 2:
        raise GradeError(f'mv_rank expects a bivector, got grade {P.grade}')
    if P.is_zero:
        return 0
    k = 1
    power = P
    while True:
        power = wedge(power, P)
        if power.is_zero:
            return 2 * k
        k += 1
