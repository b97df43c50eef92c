# tests/test_lie.py
from fractions import Fraction
from itertools import combinations, product

import pytest

from lieon.errors import (AlreadyUnimodular, GradeError, InvalidQuadruple,
                          NotJacobi)
from lieon.exterior import MultiVector, Polynomial
from lieon.lie import (UNIMODULAR_BLOCKS, LieStructure, MatchQuadruple,
                       ad_matrix, bracket, center, change_basis, compatible,
                       cyclic_jacobi_defect, derived_algebra, derived_series,
                       from_bivector, gamma_of_operator, is_ideal, is_jacobi,
                       is_solvable, jacobi_defect, lie_rank, make_rng,
                       matching_from_quadruple, modular_split, modular_vector,
                       random_quadruple, random_rational, random_solvable,
                       random_unimodular, recognize_lieon, to_bivector)
from lieon.utils import linalg

DEE = LieStructure(2, {(1, 2, 2): 1})
HEISENBERG = LieStructure(3, {(1, 2, 3): 1})
TRIANGLE = LieStructure(3, {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1})
NOT_LIE = LieStructure(3, {(1, 2, 1): 1, (1, 3, 2): 1})


def test_constants_are_canonicalized():
    # Test [e2, e1] = e2 is stored as [e1, e2] = -e2
    assert LieStructure(2, {(2, 1, 2): 1}) == LieStructure(2, {(1, 2, 2): -1})
    assert LieStructure(2, {(1, 2, 2): 1, (2, 1, 2): 1}).is_abelian


def test_bracket_of_units():
    # Test [e1, e2] = e2 in the dee algebra
    assert bracket(DEE, linalg.unit(1, 2), linalg.unit(2, 2)) == (0, 1)
    assert bracket(DEE, linalg.unit(2, 2), linalg.unit(1, 2)) == (0, -1)


def test_bivector_round_trip():
    # Test the dual bivector of the Heisenberg algebra
    P = to_bivector(HEISENBERG)
    assert P == MultiVector(3, 2, {(1, 2): Polynomial.var(3)})
    assert from_bivector(P) == HEISENBERG


def test_from_bivector_rejects_constants():
    # Test affine but non-linear coefficients are refused
    with pytest.raises(GradeError):
        from_bivector(MultiVector(2, 2, {(1, 2): Polynomial.affine(1, {1: 1})}))


def test_jacobi_on_known_structures():
    # Test Jacobi holds on lieons and the triangle and fails on a skew non-Lie bracket
    for g in (DEE, HEISENBERG, TRIANGLE):
        assert is_jacobi(g)
        assert not cyclic_jacobi_defect(g)
    assert not is_jacobi(NOT_LIE)
    assert cyclic_jacobi_defect(NOT_LIE) == {(1, 2, 3): (0, -1, 0)}


def test_recognize_lieon():
    # Test lieon recognition by derived algebra and center
    assert recognize_lieon(DEE) == 'dee(2)'
    assert recognize_lieon(HEISENBERG) == 'fork(3)'
    assert recognize_lieon(LieStructure(3, {(1, 2, 2): 1})) == 'dee(3)'
    assert recognize_lieon(LieStructure(3)) == 'abelian'
    assert recognize_lieon(TRIANGLE) == 'other'
    with pytest.raises(NotJacobi):
        recognize_lieon(NOT_LIE)


def test_modular_vector():
    # Test theta(u) = -tr ad u
    assert modular_vector(DEE).as_tuple(2) == (-1, 0)
    assert modular_vector(HEISENBERG).is_zero
    assert modular_vector(TRIANGLE).is_zero


def test_lie_rank():
    # Test ranks of the basic algebras
    assert lie_rank(DEE) == 2
    assert lie_rank(HEISENBERG) == 2
    assert lie_rank(TRIANGLE) == 2
    assert lie_rank(LieStructure(4, {(1, 2, 3): 1, (1, 4, 4): 1})) == 2
    assert lie_rank(LieStructure(4, {(1, 2, 2): 1, (3, 4, 4): 1})) == 4


def test_compatible_pairs():
    # Test disjoint tees are compatible and blocking tees are not
    a = LieStructure(5, {(1, 2, 5): 1})
    b = LieStructure(5, {(3, 4, 5): 1})
    c = LieStructure(5, {(3, 4, 1): 1})
    d = LieStructure(5, {(1, 2, 3): 1})
    assert compatible(a, b)
    assert not compatible(d, c)
    assert compatible(a, LieStructure(5))


def test_derived_series_and_center():
    # Test the derived series of the dee and the center of the Heisenberg algebra
    series = derived_series(DEE)
    assert [s.dimension for s in series] == [2, 1, 0]
    assert is_solvable(DEE)
    assert not is_solvable(TRIANGLE)
    assert derived_algebra(TRIANGLE).dimension == 3
    assert center(HEISENBERG) == linalg.Subspace.coordinate(3, [3])
    assert is_ideal(HEISENBERG, center(HEISENBERG))


def test_ad_matrix_and_gamma():
    # Test ad e1 on Gamma_A recovers A
    A = ((1, 0), (0, -1))
    g = gamma_of_operator(A)
    ad = ad_matrix(g, linalg.unit(1, 3))
    assert [row[1:] for row in ad[1:]] == [(1, 0), (0, -1)]


def test_change_basis_identity_and_swap():
    # Test basis changes by the identity and by swapping e1, e2
    assert change_basis(DEE, linalg.identity(2)) == DEE
    swapped = change_basis(DEE, ((0, 1), (1, 0)))
    assert swapped == LieStructure(2, {(1, 2, 1): -1})


def test_modular_split_dee():
    # Test the dee is all modular part
    split = modular_split(DEE)
    assert split.uni.is_abelian
    assert split.non == DEE
    assert split.uni + split.non == DEE


def test_modular_split_strict_on_unimodular():
    # Test strict mode refuses theta = 0
    with pytest.raises(AlreadyUnimodular):
        modular_split(HEISENBERG, strict=True)
    assert modular_split(HEISENBERG).unimodular


def test_modular_split_random_solvable():
    # Test g = uni + non on random non-unimodular solvable structures
    rng = make_rng(7)
    checked = 0
    while checked < 200:
        g = random_solvable(rng, rng.randint(3, 6))
        if modular_vector(g).is_zero:
            continue
        split = modular_split(g)
        assert split.uni + split.non == g
        assert is_jacobi(split.uni) and is_jacobi(split.non)
        assert compatible(split.uni, split.non)
        assert modular_vector(split.uni).is_zero
        assert lie_rank(split.non) == 2
        checked += 1


def test_modular_split_relations():
    # Test theta o A = 0, tr A = -1, A nu = 0 and theta(nu) = 1
    rng = make_rng(13)
    checked = 0
    while checked < 100:
        g = random_solvable(rng, rng.randint(2, 6))
        split = modular_split(g)
        if split.unimodular:
            continue
        n = g.dim
        th = split.theta.as_tuple(n)
        for b in range(n):
            assert sum(th[k] * split.A[k][b] for k in range(n)) == 0
        assert linalg.trace(split.A) == -1
        assert linalg.is_zero(linalg.apply(split.A, split.nu))
        assert split.theta(split.nu) == 1
        checked += 1


def test_modular_vector_vanishes_on_derived_algebra():
    # Test theta([u, v]) = 0
    rng = make_rng(17)
    structures = [TRIANGLE, HEISENBERG, DEE]
    structures += [random_solvable(rng, rng.randint(2, 6)) for _ in range(100)]
    structures += [random_unimodular(rng, rng.randint(3, 6)) for _ in range(50)]
    for g in structures:
        theta = modular_vector(g)
        assert all(theta(v) == 0 for v in derived_algebra(g).basis)


def test_modular_vector_additive_on_compatible_pairs():
    # Test theta(g1 + g2) = theta(g1) + theta(g2) for compatible pairs
    rng = make_rng(19)
    pairs = [matching_from_quadruple(random_quadruple(rng)) for _ in range(30)]
    for _ in range(30):
        split = modular_split(random_solvable(rng, rng.randint(2, 6)))
        pairs.append((split.uni, split.non))
    for g1, g2 in pairs:
        assert compatible(g1, g2)
        assert modular_vector(g1 + g2) == modular_vector(g1) + modular_vector(g2)


def test_bivector_random_round_trip_and_linearity():
    # Test from_bivector(to_bivector(g)) = g and linearity of to_bivector
    rng = make_rng(23)
    for _ in range(100):
        dim = rng.randint(2, 6)
        g1 = random_solvable(rng, dim)
        g2 = random_unimodular(rng, dim) if dim >= 3 else random_solvable(rng, dim)
        s = random_rational(rng, nonzero=True)
        assert from_bivector(to_bivector(g1)) == g1
        assert to_bivector(g1 + g2.scale(s)) == to_bivector(g1) + to_bivector(g2).scale(s)


def test_compatible_iff_every_combination_is_jacobi():
    # Test compatible(g1, g2) <=> s g1 + t g2 is Jacobi for nonzero s, t
    rng = make_rng(29)
    pairs = [matching_from_quadruple(random_quadruple(rng)) for _ in range(20)]
    pairs += [(random_solvable(rng, d), random_solvable(rng, d)) for d in (3, 4, 5) for _ in range(10)]
    pairs.append((LieStructure(3, {(1, 2, 2): 1}), LieStructure(3, {(2, 3, 3): 1})))
    seen = set()
    for g1, g2 in pairs:
        expected = compatible(g1, g2)
        seen.add(expected)
        for s, t in ((1, 1), (2, -1), (Fraction(1, 2), 3)):
            assert is_jacobi(g1.scale(s) + g2.scale(t)) == expected
    assert seen == {True, False}


def test_unimodular_blocks():
    # Test each building block is a unimodular Lie structure
    rng = make_rng(31)
    ranks = {}
    for size, build in UNIMODULAR_BLOCKS:
        for _ in range(5):
            dim, constants = build(rng)
            assert dim == size
            g = LieStructure(dim, constants)
            assert is_jacobi(g)
            assert modular_vector(g).is_zero
            ranks[build.__name__] = lie_rank(g)
    assert ranks['_sl2_plane_block'] == 4
    assert ranks['_euclidean_block'] == 4


def test_unimodular_rank_bound():
    # Test lie_rank < dim for unimodular structures of even dimension
    rng = make_rng(11)
    for _ in range(100):
        for dim in (4, 6):
            g = random_unimodular(rng, dim)
            assert is_jacobi(g)
            assert modular_vector(g).is_zero
            assert lie_rank(g) < dim


def test_matching_sample_quadruple():
    # Test A = E12, B = diag(1,3), lambda = 1 gives a compatible modular pair
    q = MatchQuadruple(2, ((0, 1), (0, 0)), ((1, 0), (0, 3)), 1)
    g1, g2 = matching_from_quadruple(q)
    assert g1.dim == g2.dim == 4
    assert is_jacobi(g1) and is_jacobi(g2)
    assert compatible(g1, g2)
    assert modular_vector(g1).as_tuple(4) == (1, 0, 0, 0)
    assert modular_vector(g2).as_tuple(4) == (0, 1, 0, 0)


def test_matching_rejects_invalid_quadruple():
    # Test B = diag(4,0) breaks [A,B] = 2 lambda A
    q = MatchQuadruple(2, ((0, 1), (0, 0)), ((4, 0), (0, 0)), 1)
    assert '[A,B] != 2*lambda*A' in q.violations()
    with pytest.raises(InvalidQuadruple):
        matching_from_quadruple(q)
    # nu outside Ker A in the lambda = 0 quintuple
    q = MatchQuadruple(2, ((0, 1), (0, 0)), ((1, 0), (0, 1)), 0, (0, 1), (0, 0))
    assert q.violations() == ['nu1 not in Ker A']
    with pytest.raises(InvalidQuadruple):
        matching_from_quadruple(q)
    # nu given although lambda != 0
    q = MatchQuadruple(1, ((0,),), ((4,),), 1, (1,), (1,))
    assert q.violations() == ['nu1 only extends the lambda = 0 quintuple',
                              'nu2 only extends the lambda = 0 quintuple']
    with pytest.raises(InvalidQuadruple):
        matching_from_quadruple(q)


def test_matching_quintuple_with_kernel_nus():
    # Test lambda = 0 with nu1, nu2 in Ker A gives a compatible modular pair
    q = MatchQuadruple(2, ((0, 1), (0, 0)), ((1, 0), (0, 1)), 0, (1, 0), (-2, 0))
    assert q.violations() == []
    g1, g2 = matching_from_quadruple(q)
    assert is_jacobi(g1) and is_jacobi(g2)
    assert compatible(g1, g2)
    assert modular_vector(g1).as_tuple(4) == (1, 0, 0, 0)
    assert modular_vector(g2).as_tuple(4) == (0, 1, 0, 0)


def test_matching_random_quadruples():
    # Test random valid quadruples give compatible non-unimodular pairs
    rng = make_rng(3)
    for _ in range(50):
        q = random_quadruple(rng)
        assert not q.violations()
        g1, g2 = matching_from_quadruple(q)
        assert is_jacobi(g1) and is_jacobi(g2)
        assert not modular_vector(g1).is_zero and not modular_vector(g2).is_zero
        assert compatible(g1, g2)


def _random_structure(rng, dim, count):
    keys = [(i, j, k) for i, j in combinations(range(1, dim + 1), 2) for k in range(1, dim + 1)]
    return LieStructure(dim, {key: rng.choice((-1, 1)) for key in rng.sample(keys, count)})


def test_oracle_agreement_random():
    # Test the Schouten defect and the cyclic-sum oracle agree on random structures
    rng = make_rng(5)
    for _ in range(1000):
        g = _random_structure(rng, rng.choice((4, 5)), rng.randint(1, 5))
        assert jacobi_defect(g).is_zero == (not cyclic_jacobi_defect(g))


@pytest.mark.slow
def test_oracle_agreement_exhaustive_dim3():
    # Test every dim-3 structure with constants in {-1, 0, 1}
    keys = [(i, j, k) for i, j in combinations(range(1, 4), 2) for k in range(1, 4)]
    for values in product((-1, 0, 1), repeat=len(keys)):
        g = LieStructure(3, dict(zip(keys, values)))
        assert jacobi_defect(g).is_zero == (not cyclic_jacobi_defect(g))
