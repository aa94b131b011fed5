import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from regslice.adjoint_quotient import char_invariants
from regslice.errors import IndeterminateRankError, ShapeError
from regslice.lie_core import (
    AlgebraBasis,
    GroupSpec,
    ad_matrix,
    adjoint_action,
    algebra_element,
    bracket,
    group_element,
    group_exp,
    is_regular,
    killing_form,
    numerical_rank,
    orbit_dimension,
    random_algebra_element,
    random_group_element,
    standard_basis,
)
from regslice.slodowy import principal_triple


def test_group_spec():
    for n in range(2, 7):
        spec = GroupSpec(n)
        assert spec.dim_g == n * n - 1
        assert spec.rank == n - 1
    with pytest.raises(ValueError):
        GroupSpec(1)


def test_validators():
    assert algebra_element(np.diag([1, -1])).dtype == complex
    with pytest.raises(ValueError):
        algebra_element(np.eye(2))
    with pytest.raises(ValueError):
        group_element(2 * np.eye(2))
    with pytest.raises(ShapeError):
        bracket(np.zeros((2, 2)), np.zeros((3, 3)))


def test_bracket_sl2():
    e = np.array([[0, 1], [0, 0]])
    f = np.array([[0, 0], [1, 0]])
    assert np.array_equal(bracket(e, f), np.diag([1, -1]))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_bracket_of_principal_triple(n):
    t = principal_triple(n)
    assert np.array_equal(bracket(t.xi, t.eta), t.h)


def test_bracket_antisymmetric(rng):
    x = random_algebra_element(4, rng)
    assert np.allclose(bracket(x, x), 0)


small_ints = arrays(np.int64, (3, 3), elements=st.integers(-5, 5))


@given(small_ints, small_ints, small_ints)
def test_jacobi_identity_exact(a, b, c):
    total = (bracket(a, bracket(b, c)) + bracket(b, bracket(c, a))
             + bracket(c, bracket(a, b)))
    assert np.array_equal(total, np.zeros((3, 3), dtype=np.int64))


def test_jacobi_identity_float(rng):
    for _ in range(50):
        a, b, c = (random_algebra_element(4, rng) for _ in range(3))
        total = (bracket(a, bracket(b, c)) + bracket(b, bracket(c, a))
                 + bracket(c, bracket(a, b)))
        assert np.abs(total).max() <= 1e-10


def test_standard_basis_layout():
    b = standard_basis(3)
    assert len(b) == 8
    assert b.elements[0][0, 1] == 1
    assert np.array_equal(b.elements[6], np.diag([1, -1, 0]))
    assert np.array_equal(b.elements[7], np.diag([0, 1, -1]))


def test_coords_round_trip(rng):
    b = standard_basis(4)
    x = random_algebra_element(4, rng)
    assert np.allclose(b.element(b.coords(x)), x, atol=1e-12)


def test_degenerate_basis_rejected():
    els = np.array(standard_basis(2).elements, dtype=complex)
    els[2] = els[0]
    with pytest.raises(ValueError):
        AlgebraBasis(els)


def test_ad_matrix_zero():
    assert np.array_equal(ad_matrix(np.zeros((3, 3))), np.zeros((8, 8)))


def test_ad_matrix_represents_bracket(rng):
    basis = standard_basis(3)
    a = random_algebra_element(3, rng)
    m = ad_matrix(a, basis)
    for _ in range(10):
        b = random_algebra_element(3, rng)
        assert np.allclose(m @ basis.coords(b), basis.coords(bracket(a, b)), atol=1e-10)


def test_ad_h_eigenvalues_sl2():
    # brute force: eigenvalues of the 3x3 ad matrix in the standard basis
    ev = np.sort(np.linalg.eigvals(ad_matrix(np.diag([1, -1]))).real)
    assert np.allclose(ev, [-2, 0, 2])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_ad_xi_rank(n):
    xi = principal_triple(n).xi
    sv = np.linalg.svd(ad_matrix(xi), compute_uv=False)
    rank, grey = numerical_rank(sv)
    assert grey.size == 0
    assert rank == GroupSpec(n).dim_g - (n - 1)


def test_killing_sl2_h():
    # oracle: ad_h has eigenvalues 2, 0, -2 so trace(ad_h^2) = 8
    h = np.diag([1, -1])
    assert killing_form(h, h) == 8
    assert np.isclose(killing_form(h, h, mode="oracle"), 8)


def test_killing_bilinear_zero(rng):
    x = random_algebra_element(3, rng)
    assert killing_form(x, np.zeros((3, 3))) == 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_killing_fast_matches_oracle(n, rng):
    for _ in range(100):
        a, b = random_algebra_element(n, rng), random_algebra_element(n, rng)
        fast, slow = killing_form(a, b), killing_form(a, b, mode="oracle")
        assert abs(fast - slow) <= 1e-9 * max(1.0, abs(slow))
        assert np.isclose(killing_form(b, a), fast)


@pytest.mark.parametrize("n", [2, 3])
def test_killing_ad_invariant(n, rng):
    for _ in range(100):
        g = random_group_element(n, rng)
        a, b = random_algebra_element(n, rng), random_algebra_element(n, rng)
        lhs = killing_form(adjoint_action(g, a), adjoint_action(g, b))
        assert abs(lhs - killing_form(a, b)) <= 1e-8 * max(1.0, abs(lhs))


def test_adjoint_action_basics(rng):
    x = random_algebra_element(3, rng)
    g = random_group_element(3, rng)
    assert np.allclose(adjoint_action(np.eye(3), x), x)
    back = adjoint_action(g, adjoint_action(np.linalg.inv(g), x))
    assert np.abs(back - x).max() <= 1e-9


def test_adjoint_action_preserves_char_poly(rng):
    # oracle: np.poly of the matrix, independent of Faddeev-LeVerrier
    for _ in range(100):
        x = random_algebra_element(3, rng)
        g = random_group_element(3, rng)
        y = adjoint_action(g, x)
        assert abs(np.trace(y)) < 1e-12
        assert np.abs(np.poly(y) - np.poly(x)).max() <= 1e-8


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_principal_nilpotent_regular(n):
    verdict = is_regular(principal_triple(n).xi)
    assert verdict.regular is True
    assert verdict.kernel_dim == n - 1


def test_zero_not_regular():
    verdict = is_regular(np.zeros((3, 3)))
    assert verdict.regular is False
    assert verdict.kernel_dim == 8


def test_diag_112_not_regular():
    # oracle: exact null space of the gl_3 operator X -> xX - Xx, minus the
    # identity direction
    import sympy

    x = sympy.diag(1, 1, -2)
    eye = sympy.eye(3)
    op = sympy.kronecker_product(x, eye) - sympy.kronecker_product(eye, x.T)
    expected = len(op.nullspace()) - 1
    assert expected == 4
    verdict = is_regular(np.diag([1, 1, -2]))
    assert verdict.regular is False
    assert verdict.kernel_dim == expected


def test_indeterminate_band():
    sv = [1.0, 0.5, 5e-9]
    rank, grey = numerical_rank(sv, tol=1e-9)
    assert grey.size == 1
    assert is_regular(np.diag([1.0, -1.0])).regular is True
    # nearly scalar diagonal sits in the band for a coarse tolerance
    near = np.diag([1.0, 1.0 + 5e-3, -2.0 - 5e-3]) / 3
    verdict = is_regular(near, tol=1e-3)
    assert verdict.indeterminate
    with pytest.raises(IndeterminateRankError):
        bool(verdict)
    with pytest.raises(IndeterminateRankError):
        orbit_dimension(near, tol=1e-3)


def test_rounding_floor_makes_tiny_tol_indeterminate(rng):
    x = principal_triple(3).xi.astype(complex)
    y = adjoint_action(random_group_element(3, rng), x)
    assert is_regular(y, tol=1e-20).indeterminate


def test_orbit_dimension():
    assert orbit_dimension(np.array([[0, 1], [1, 0]])) == 2
    assert orbit_dimension(np.zeros((2, 2))) == 0


def test_orbit_dimension_slice_point(slices, rng):
    s = slices[3]
    y = s.point(rng.standard_normal(2) + 1j * rng.standard_normal(2))
    assert orbit_dimension(y) == 6


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_regularity_conjugation_invariant(seed):
    rng = np.random.default_rng(seed)
    x = random_algebra_element(3, rng)
    g = random_group_element(3, rng)
    a, b = is_regular(x), is_regular(adjoint_action(g, x))
    if not (a.indeterminate or b.indeterminate):
        assert a.regular == b.regular


def test_group_exp():
    assert np.allclose(group_exp(np.zeros((3, 3))), np.eye(3))
    xi = np.array([[0.0, 1.0], [0.0, 0.0]])
    assert np.array_equal(group_exp(2.5 * xi), np.eye(2) + 2.5 * xi)


def test_group_exp_det(rng):
    for _ in range(100):
        a = random_algebra_element(4, rng)
        assert abs(np.linalg.det(group_exp(a)) - 1) <= 1e-10


def test_invariants_survive_group_exp_conjugation(rng):
    x = random_algebra_element(3, rng)
    g = group_exp(random_algebra_element(3, rng, 0.3))
    assert np.allclose(char_invariants(adjoint_action(g, x)), char_invariants(x), atol=1e-10)
