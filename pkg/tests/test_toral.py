from fractions import Fraction as F

import pytest

from exactlie.classical import build_classical
from exactlie.errors import NotToral, PreconditionError
from exactlie.exact_linalg import Subspace, unit_vector
from exactlie.lie_core import LieAlgebra, exp_ad
from exactlie.toral import ToralSubalgebra, check_decomposition, is_toral, restrict, weight_decomposition

from oracles import commutator, matrix_of, sl_matrices
import data


def test_is_toral_examples():
    L, _ = build_classical("sl", 2)  # (e, f, h)
    assert is_toral(L, Subspace.span([unit_vector(3, 2)], 3))
    assert not is_toral(L, Subspace.span([unit_vector(3, 0)], 3))
    assert not is_toral(L, Subspace.zero(3))
    sl3, T = build_classical("sl", 3)
    assert is_toral(sl3, T.space)
    # non-abelian span
    assert not is_toral(sl3, Subspace.span([unit_vector(8, 6), unit_vector(8, 0)], 8))


def test_toral_constructor_rejects_bad_input():
    L, _ = build_classical("sl", 2)
    with pytest.raises(NotToral):
        ToralSubalgebra(L, [])
    with pytest.raises(NotToral):
        ToralSubalgebra(L, [unit_vector(3, 0)])
    with pytest.raises(NotToral):
        ToralSubalgebra(L, [unit_vector(3, 2), unit_vector(3, 2)])
    # rotation generator: eigenvalues +-i are not rational
    so2_plus = LieAlgebra(3, {(0, 1): [(2, 1)], (0, 2): [(1, -1)], (1, 2): [(0, 1)]})
    with pytest.raises(NotToral):
        ToralSubalgebra(so2_plus, [unit_vector(3, 0)])


def test_sl2_decomposition():
    L, T = build_classical("sl", 2)
    d = weight_decomposition(L, T)
    assert d.spaces == {
        (F(-2),): Subspace.span([unit_vector(3, 1)], 3),
        (F(0),): Subspace.span([unit_vector(3, 2)], 3),
        (F(2),): Subspace.span([unit_vector(3, 0)], 3),
    }
    assert check_decomposition(d) == []


def test_sl3_decomposition_matches_matrix_eigenvalues():
    L, T = build_classical("sl", 3)
    d = weight_decomposition(L, T)
    assert len(d.roots) == 6
    assert all(d.space(a).dim == 1 for a in d.roots)
    assert d.zero_space == T.space
    basis = sl_matrices(3)
    toral_mats = [basis[6], basis[7]]
    # each E_ij is a common eigenvector: [H, E_ij] = (H_ii - H_jj) E_ij
    for a in d.roots:
        (v,) = d.space(a).basis
        x = matrix_of(v, basis)
        for value, h in zip(a, toral_mats):
            assert (commutator(h, x) == value * x).all()


def test_abelian_decomposition():
    L, T = build_classical("abelian", 3)
    d = weight_decomposition(L, T)
    assert d.roots == () and d.zero_space == Subspace.full(3)


@pytest.mark.parametrize("fam,n", data.CLASSICAL_PAIRS)
def test_decomposition_checks_on_classical_pairs(fam, n):
    d = data.decomposition(fam, n)
    assert check_decomposition(d) == []
    assert d.zero_space == d.toral.space


def test_restrict_to_same_toral_is_identity():
    d = data.decomposition("sl", 3)
    assert restrict(d, d.toral).same_as(d)


def test_restrict_sl3_to_first_coroot():
    """Values on h_1 = E11 - E22: a1 -> 2, a2 -> -1, a1 + a2 -> 1 and negatives.

    a1 + a2 and -a2 both take the value 1, so those root spaces merge.
    """
    L, T = build_classical("sl", 3)
    d = weight_decomposition(L, T)
    h1 = ToralSubalgebra(L, [T.basis[0]])
    r = restrict(d, h1)
    dims = {w[0]: s.dim for w, s in r.spaces.items()}
    assert dims == {F(-2): 1, F(-1): 2, F(0): 2, F(1): 2, F(2): 1}
    assert r.zero_space == T.space
    labels = list(L.labels)
    assert r.space((F(1),)) == Subspace.span([unit_vector(8, labels.index("E13")), unit_vector(8, labels.index("E32"))], 8)


def test_restrict_rejects_non_subalgebra():
    """h1 conjugated by exp(ad E12) is toral but not inside the diagonal Cartan."""
    L, T = build_classical("sl", 3)
    d = weight_decomposition(L, T)
    g = exp_ad(L, unit_vector(8, 0))
    moved = ToralSubalgebra(L, [g @ T.basis[0]])
    assert not moved.space <= T.space
    with pytest.raises(PreconditionError):
        restrict(d, moved)


def test_weight_functional_agrees_on_toral():
    L, T = build_classical("sl", 3)
    a = (F(2), F(-1))
    for h in T.basis:
        assert T.weight_functional(a, h) == T.evaluate(a, h)
