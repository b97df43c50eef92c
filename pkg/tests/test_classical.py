# tests/test_classical.py
import logging

import pytest

from lieon.classical import (ClassicalSpec, canonical_scheme, grade_groups,
                             input_type_scheme,
                             grade_labels, grade_of, instantiate_signature,
                             killing_signature, make_classical,
                             parametric_compatibility,
                             universal_scheme_signature)
from lieon.disassemble import is_complete, leaves, scheme_summary, verify_scheme
from lieon.errors import InvalidSpec
from lieon.lie import LieStructure, is_jacobi, make_rng


def _scheme(kind, n, **kwargs):
    scheme = canonical_scheme(ClassicalSpec(kind, n, **kwargs))
    assert verify_scheme(scheme) == []
    return scheme


def test_spec_validation():
    # Test rejected kinds, sizes and parameters
    with pytest.raises(InvalidSpec):
        ClassicalSpec('e8', 8)
    with pytest.raises(InvalidSpec):
        ClassicalSpec('so', 2)
    with pytest.raises(InvalidSpec):
        ClassicalSpec('sp', 3)
    with pytest.raises(InvalidSpec):
        ClassicalSpec('so', 3, params=(1, 0, 1))
    with pytest.raises(InvalidSpec):
        ClassicalSpec('so', 3, params=(1, 1))
    with pytest.raises(InvalidSpec):
        ClassicalSpec('so', 3, lam=2)
    with pytest.raises(InvalidSpec):
        ClassicalSpec('gl', 2, lam=0)
    assert ClassicalSpec('su', 2).lam == -1
    assert ClassicalSpec('gl', 2).lam == 1
    assert ClassicalSpec('so', 3).params == (1, 1, 1)


def test_dimensions():
    # Test the dimension of each classical family
    assert make_classical(ClassicalSpec('so', 5)).dim == 10
    assert make_classical(ClassicalSpec('sp', 4)).dim == 10
    assert make_classical(ClassicalSpec('gl', 3)).dim == 9
    assert make_classical(ClassicalSpec('sl', 3)).dim == 8
    assert make_classical(ClassicalSpec('u', 2)).dim == 4


@pytest.mark.parametrize('kind,n', [('so', 4), ('sp', 2), ('sp', 4), ('gl', 3), ('sl', 3), ('u', 2), ('su', 3)])
def test_classical_structures_are_lie(kind, n):
    # Test the Jacobi identity of every classical structure
    assert is_jacobi(make_classical(ClassicalSpec(kind, n)))


def test_sp2_constants():
    # Test {p^2, q^2} = 4pq on the basis p^2, pq, q^2
    g = make_classical(ClassicalSpec('sp', 2))
    assert g.c(1, 3, 2) == 4
    assert g.c(1, 2, 1) == 2
    assert g.c(2, 3, 3) == 2


@pytest.mark.parametrize('n,count', [(3, 3), (4, 12), (5, 30)])
def test_so_scheme_leaf_counts(n, count):
    # Test so(n) splits into one fork per structure constant
    scheme = _scheme('so', n)
    assert len(list(leaves(scheme))) == count
    assert is_complete(scheme)
    assert scheme_summary(scheme) == {f'fork({n * (n - 1) // 2})': count}


def test_so_indefinite():
    # Test an indefinite diagonal form
    scheme = _scheme('so', 3, params=(1, 1, -1))
    assert is_complete(scheme)


@pytest.mark.parametrize('kind,n', [('sp', 2), ('sp', 4), ('gl', 2), ('gl', 3), ('sl', 2), ('sl', 3),
                                    ('u', 2), ('su', 2)])
def test_classical_schemes_are_complete(kind, n):
    # Test canonical schemes verify and end in lieons
    assert is_complete(_scheme(kind, n))


def test_sp2_scheme_shape():
    # Test sp(2) gives two dees and one fork
    scheme = _scheme('sp', 2)
    assert scheme_summary(scheme) == {'dee(3)': 2, 'fork(3)': 1}


def test_su2_scheme_is_three_forks():
    # Test su(2) splits into three forks
    assert scheme_summary(_scheme('su', 2)) == {'fork(3)': 3}


def test_universal_signature_instances():
    # Test instantiating the so(3) signature at several points
    sig = universal_scheme_signature('so', 3)
    assert sig.dim == 3
    assert len(sig.blocks) == 3
    unit = instantiate_signature(sig, (1, 1, 1))
    assert unit.node == make_classical(ClassicalSpec('so', 3))
    scaled = instantiate_signature(sig, (2, 3, 5))
    assert verify_scheme(scaled) == []
    assert scaled.node == make_classical(ClassicalSpec('so', 3, params=(2, 3, 5)))
    with pytest.raises(InvalidSpec):
        instantiate_signature(sig, (1, 0, 1))
    with pytest.raises(InvalidSpec):
        instantiate_signature(sig, (1, 1))
    with pytest.raises(InvalidSpec):
        universal_scheme_signature('sp', 4)


def test_grade_groups_are_compatible():
    # Test grade parts sum to the structure and stay compatible under rescaling
    rng = make_rng(1)
    for spec in (ClassicalSpec('so', 4), ClassicalSpec('gl', 3), ClassicalSpec('sp', 4)):
        g = make_classical(spec)
        groups = grade_groups(g, grade_labels(spec))
        total = None
        for part in groups.values():
            total = part if total is None else total + part
        assert total == g
        assert parametric_compatibility(groups, rng)


def test_grade_of_rejects_unbalanced_constants():
    # Test a constant that does not leave a doubled index
    labels = ((1, 2), (1, 3), (2, 3))
    assert grade_of(labels, (1, 2, 3)) == 1
    with pytest.raises(InvalidSpec):
        grade_of(labels, (1, 2, 1))


def test_killing_signatures():
    # Test compact and split real forms have different Killing signatures
    compact = killing_signature(ClassicalSpec('so', 3))
    split = killing_signature(ClassicalSpec('so', 3, params=(1, 1, -1)))
    assert compact == (0, 3, 0)
    assert split == (2, 1, 0)
    assert killing_signature(ClassicalSpec('su', 2)) == compact
    assert killing_signature(ClassicalSpec('sl', 2)) == split


def test_input_type_parts_fall_back_to_monomials(caplog):
    # Test an sl(2)-shaped grade whose W-input part alone fails Jacobi
    Q = LieStructure(4, {(1, 3, 3): 1, (1, 4, 4): -1, (3, 4, 1): 1})
    labels = ((1, 1), (2, 2), (1, 1), (1, 2))
    parity = (0, 0, 1, 1)
    with caplog.at_level(logging.WARNING, logger='lieon-classical'):
        scheme = input_type_scheme(Q, 1, labels, parity, 'Q[1]')
    assert 'not mutually compatible' in caplog.text
    assert verify_scheme(scheme) == []
    assert scheme.node == Q
    assert len(scheme.children) == 2
    assert scheme_summary(scheme) == {'fork(4)': 1, 'dee(4)': 2}


def test_input_type_parts_keep_their_labels():
    # Test a grade with no s-only part labels its children by input type
    Q = LieStructure(3, {(1, 2, 2): 1, (1, 3, 3): 2})
    scheme = input_type_scheme(Q, 1, ((1, 1), (1, 1), (1, 2)), (0, 1, 1), 'Q[1]')
    assert verify_scheme(scheme) == []
    assert sorted(c.label for c in scheme.children) == ['Q[1]^2 dee(3)', 'Q[1]^3 dee(3)']
