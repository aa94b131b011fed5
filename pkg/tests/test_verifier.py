import dataclasses
import json

import numpy as np
import pytest

from regslice.errors import ContractError, PreconditionError
from regslice.lie_core import random_group_element
from regslice.model_space import ModelPoint, ModelSpace, ModelTangent
from regslice.scenarios import model_scenario
from regslice.verifier import (
    DECLARED,
    ERROR,
    FAIL,
    PASS,
    UNVERIFIABLE,
    PresentedSpace,
    VerifierConfig,
    check_affine,
    check_contract,
    check_dimension,
    check_fibre_single_orbit,
    check_free_action,
    check_image_regular,
    check_integrable_system,
    check_mu_bar_submersion,
    classify,
    fibre_points_for,
)

CONF = VerifierConfig(samples=6, fibre_samples=4, surjectivity_trials=10,
                      trivialization_samples=4)


@pytest.fixture(scope="module")
def model2():
    from regslice.slodowy import SlodowySlice

    return model_scenario(SlodowySlice.principal(2))


def frozen_slice_space(slice, c0):
    """G x {c0}: the model restricted to one slice point, so mu_bar is
    constant and every condition except the dimension count can be read."""
    model = ModelSpace(slice)
    n = model.n
    c0 = np.asarray(c0, dtype=complex)
    zero_b = np.zeros(model.spec.rank, dtype=complex)

    def sample(seed, count):
        rng = np.random.default_rng(seed)
        return [ModelPoint(random_group_element(n, rng), c0) for _ in range(count)]

    return PresentedSpace(
        name="frozen", slice=slice, dimension=model.spec.dim_g, sample=sample,
        moment=model.moment, act=model.act,
        tangent_basis=lambda p: [ModelTangent(e.astype(complex), zero_b)
                                 for e in model.basis.elements],
        move=model.move, embed=model.embed)


def test_affine_declared_and_unknown(model2):
    assert check_affine(model2).status == DECLARED
    assert check_affine(dataclasses.replace(model2, affine=None)).status == UNVERIFIABLE


def test_free_action_model(model2):
    v = check_free_action(model2, model2.sample(0, 5), CONF)
    assert v.status == PASS
    assert v.evidence["stabilizer_witness"] is None


def test_dimension_pass_and_mismatch(model2):
    assert check_dimension(model2, model2.sample(0, 2)).status == PASS
    liar = dataclasses.replace(model2, dimension=5)
    with pytest.raises(ContractError):
        check_dimension(liar, model2.sample(0, 2))


def test_image_regular_model(model2):
    v = check_image_regular(model2, model2.sample(0, 5), CONF)
    assert v.status == PASS
    assert v.evidence["surjectivity"]["max_label_gap"] <= 1e-6


def test_image_without_section_is_unverifiable(model2):
    space = dataclasses.replace(model2, fibre_section=None)
    assert check_image_regular(space, model2.sample(0, 3), CONF).status == UNVERIFIABLE


def test_fibre_rejects_mixed_labels(model2):
    model = model2.extras["model"]
    pts = [model.point(np.eye(2), [1.0]), model.point(np.eye(2), [2.0])]
    with pytest.raises(PreconditionError):
        check_fibre_single_orbit(model2, model.mu_bar(pts[0]), pts, CONF)


def test_fibre_single_orbit_model(model2):
    y = model2.slice.point([0.3 - 0.4j])
    pts = fibre_points_for(model2, y, 5, seed=1)
    v = check_fibre_single_orbit(model2, y, pts, CONF)
    assert v.status == PASS
    assert v.evidence["kernel_dims"] == [3] * 5
    assert v.evidence["max_transport_residual"] <= 1e-5


def test_mu_bar_constant_space_fails(slices):
    space = frozen_slice_space(slices[2], [0.5])
    v = check_mu_bar_submersion(space, space.sample(0, 3), CONF)
    assert v.status == FAIL
    assert v.evidence["ranks"] == [0, 0, 0]


def test_frozen_space_report(slices):
    report = classify(frozen_slice_space(slices[2], [0.5]), CONF)
    pat = report.pattern()
    assert pat["iii_dimension"] == FAIL
    assert pat["mu_bar_submersion"] == FAIL
    assert pat["i_affine"] == UNVERIFIABLE
    assert pat["trivialization"] == "declined"


def test_integrable_needs_form(slices):
    space = frozen_slice_space(slices[2], [0.5])
    with pytest.raises(PreconditionError):
        check_integrable_system(space, space.sample(0, 1), CONF)


def test_integrable_model(model2):
    v = check_integrable_system(model2, model2.sample(0, 3), CONF)
    assert v.status == PASS
    assert all(s["span_dim"] == s["ker_dmu_dim"] == 1 for s in v.evidence["samples"])


def test_contract_catches_broken_equivariance(model2):
    broken = dataclasses.replace(model2, moment=lambda p: model2.slice.point(p.coords))
    with pytest.raises(ContractError, match="equivariant"):
        check_contract(broken, model2.sample(0, 3))


def test_contract_catches_broken_group_law(model2):
    broken = dataclasses.replace(model2, act=lambda g, p: ModelPoint(p.g @ g, p.coords))
    with pytest.raises(ContractError, match="group law"):
        check_contract(broken, model2.sample(0, 3))


def test_classify_raises_on_contract(model2):
    broken = dataclasses.replace(model2, moment=lambda p: model2.slice.point(p.coords))
    with pytest.raises(ContractError):
        classify(broken, CONF)


def test_indeterminate_becomes_error_verdict(model2):
    report = classify(model2, dataclasses.replace(CONF, rank_tol=1e-20))
    v = report.verdicts["iv_image"]
    assert v.status == ERROR
    assert v.evidence["error_type"] == "IndeterminateRankError"
    assert v.evidence["singular_values"]


def test_model_pattern_and_consistency(model2):
    report = classify(model2, CONF)
    assert all(s in (PASS, DECLARED) for s in report.pattern().values())
    assert report.criterion_consistent is True


def test_report_deterministic(model2):
    a = json.dumps(classify(model2, CONF).to_dict(), sort_keys=True)
    b = json.dumps(classify(model2, CONF).to_dict(), sort_keys=True)
    assert a == b
