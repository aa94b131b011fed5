import numpy as np
import pytest

from regslice.errors import (
    CyclicVectorError,
    NoTransportError,
    NotRegularError,
    TrivializationError,
    WitnessError,
)
from regslice.lie_core import adjoint_action, random_algebra_element, random_group_element
from regslice.model_space import ModelSpace
from regslice.normal_form import (
    ConjugationWitness,
    companion_form,
    conjugate_into_slice,
    cyclic_vector,
    intertwiners,
    is_cyclic,
    krylov_matrix,
    model_trivialize,
    sylvester_operator,
    transporter,
)
from regslice.scenarios import center_quotient_scenario, disguised_scenario, model_scenario


def test_cyclic_vectors_diag():
    x = np.diag([1.0, -1.0])
    assert is_cyclic(x, np.array([1.0, 1.0]))
    assert not is_cyclic(x, np.array([1.0, 0.0]))


def test_cyclic_vector_refuses_derogatory():
    with pytest.raises(CyclicVectorError):
        cyclic_vector(np.diag([1.0, 1.0, -2.0]))


def test_companion_form_oracle(rng):
    # the last column of the companion matrix holds -(char poly) coefficients
    x = random_algebra_element(4, rng)
    comp = companion_form(x, cyclic_vector(x, seed=1))
    coeffs = np.poly(x)
    assert np.allclose(comp[:, -1], -coeffs[:0:-1], atol=1e-8)
    assert np.allclose(comp[1:, :-1], np.eye(3), atol=1e-8)


def test_krylov_columns(rng):
    x = random_algebra_element(3, rng)
    v = rng.standard_normal(3)
    k = krylov_matrix(x, v)
    assert np.allclose(k[:, 2], x @ x @ v)


def test_sylvester_operator_vectorization(rng):
    x, y, m = (random_algebra_element(3, rng) for _ in range(3))
    lhs = sylvester_operator(x, y) @ m.reshape(-1)
    assert np.allclose(lhs, (m @ x - y @ m).reshape(-1))


def test_intertwiners_refuse_nonconjugate():
    with pytest.raises(WitnessError):
        intertwiners(np.diag([1.0, -1.0]), np.diag([2.0, -2.0]))


def test_conjugate_diag_into_slice(slices):
    x = np.diag([1.0, -1.0])
    w = conjugate_into_slice(slices[2], x)
    assert np.allclose(w.target, [[0, 1], [1, 0]])
    assert w.residual <= 1e-7
    # oracle: the eigenvalues of p x p^{-1} are those of x
    ev = np.sort_complex(np.linalg.eigvals(w.p @ x @ np.linalg.inv(w.p)))
    assert np.allclose(ev, [-1, 1])


def test_conjugate_slice_point(slices, rng):
    s = slices[3]
    y = s.point([0.5j, -1.0])
    w = conjugate_into_slice(s, y)
    assert np.abs(w.target - y).max() <= 1e-8


@pytest.mark.parametrize("n", [3, 4])
def test_conjugate_random(n, slices, rng):
    s = slices[n]
    for _ in range(200):
        w = conjugate_into_slice(s, random_algebra_element(n, rng))
        assert w.residual <= 1e-7
        assert abs(np.linalg.det(w.p) - 1) <= 1e-9


def test_conjugate_refuses_irregular(slices):
    with pytest.raises(NotRegularError):
        conjugate_into_slice(slices[3], np.diag([1.0, 1.0, -2.0]))


def test_transporter_conjugates(rng):
    x1 = random_algebra_element(3, rng)
    g = random_group_element(3, rng)
    x2 = adjoint_action(g, x1)
    w = transporter(x1, x2)
    assert w.residual <= 1e-6


def test_transporter_self(rng):
    x = random_algebra_element(3, rng)
    assert transporter(x, x).residual <= 1e-7


def test_transporter_refuses_other_orbit(rng):
    with pytest.raises(NoTransportError) as info:
        transporter(np.diag([1.0, -1.0]), np.diag([2.0, -2.0]))
    assert info.value.gap > 0


def test_transporter_composition(rng):
    x1 = random_algebra_element(3, rng)
    x2 = adjoint_action(random_group_element(3, rng), x1)
    x3 = adjoint_action(random_group_element(3, rng), x1)
    p = transporter(x2, x3).p @ transporter(x1, x2).p
    assert np.linalg.norm(p @ x1 @ np.linalg.inv(p) - x3) <= 2e-6


def test_witness_validation():
    x = np.diag([1.0, -1.0])
    with pytest.raises(WitnessError):
        ConjugationWitness.build(2 * np.eye(2), x, x)
    with pytest.raises(WitnessError):
        ConjugationWitness.build(np.eye(2), x, -2 * x)
    w = ConjugationWitness.build(np.eye(2), x, x, seed=3)
    assert w.to_dict()["seed"] == 3


def test_trivialize_model_is_identity(slices, rng):
    space = model_scenario(slices[3])
    for p in space.sample(4, 10):
        phi = model_trivialize(space, p)
        assert np.abs(phi.g - p.g).max() <= 1e-8
        assert np.abs(phi.coords - p.coords).max() <= 1e-8


def test_trivialize_undoes_disguise(slices):
    space = disguised_scenario(slices[3], 7)
    undisguise = space.extras["undisguise"]
    for q in space.sample(1, 10):
        phi = model_trivialize(space, q)
        p = undisguise(q)
        assert np.abs(phi.g - p.g).max() <= 1e-7
        assert np.abs(phi.coords - p.coords).max() <= 1e-7


def test_trivialize_is_equivariant(slices, rng):
    space = disguised_scenario(slices[2], 3)
    model = ModelSpace(slices[2])
    q = space.sample(0, 1)[0]
    g = random_group_element(2, rng)
    lhs = model_trivialize(space, space.act(g, q), model)
    rhs = model.act(g, model_trivialize(space, q, model))
    assert np.abs(model.embed(lhs) - model.embed(rhs)).max() <= 1e-6


def test_trivialize_refuses_center_quotient(slices):
    space = center_quotient_scenario(slices[2])
    with pytest.raises(TrivializationError, match="central"):
        model_trivialize(space, space.sample(0, 1)[0])
