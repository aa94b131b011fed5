"""Bundled presented spaces: the model G x S_reg, a disguised copy of it,
the quotient by the centre, an open piece G x U, and T*G as a negative
control for the integrable-system criterion."""
from dataclasses import dataclass, field

import numpy as np

from .adjoint_quotient import char_invariants, solve_slice_coords
from .errors import ConfigError, NoTransportError, OutsideDomainError
from .lie_core import (
    GroupSpec,
    adjoint_action,
    group_exp,
    random_algebra_element,
    random_group_element,
    standard_basis,
)
from .model_space import ModelPoint, ModelSpace, ModelTangent, cotangent_form, negation_twist
from .serialize import encode_matrix
from .slodowy import SlodowySlice, slice_membership
from .verifier import DECLARED, DECLINED, FAIL, PASS, SKIPPED, PresentedSpace

KINDS = ("model", "disguised", "center_quotient", "open_subvariety", "cotangent")

# Expected status per condition, by scenario kind.
EXPECTED = {
    "model": {"i_affine": DECLARED, "ii_free": PASS, "iii_dimension": PASS, "iv_image": PASS,
              "v_fibre": PASS, "integrable_system": PASS, "mu_bar_submersion": PASS,
              "trivialization": PASS},
    "center_quotient": {"i_affine": DECLARED, "ii_free": FAIL, "iii_dimension": PASS,
                        "iv_image": PASS, "v_fibre": PASS, "integrable_system": PASS,
                        "mu_bar_submersion": PASS, "trivialization": DECLINED},
    "open_subvariety": {"i_affine": DECLARED, "ii_free": PASS, "iii_dimension": PASS,
                        "iv_image": FAIL, "v_fibre": PASS, "integrable_system": PASS,
                        "mu_bar_submersion": PASS, "trivialization": DECLINED},
    "cotangent": {"i_affine": DECLARED, "ii_free": PASS, "iii_dimension": FAIL,
                  "iv_image": FAIL, "v_fibre": FAIL, "integrable_system": FAIL,
                  "mu_bar_submersion": SKIPPED, "trivialization": DECLINED},
}
EXPECTED["disguised"] = dict(EXPECTED["model"])

_BRANCH_MARGIN = 0.05


@dataclass(frozen=True)
class ScenarioSpec:
    kind: str
    n: int = 2
    seed: int = 0
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown scenario kind {self.kind!r}; expected one of {KINDS}")
        try:
            GroupSpec(self.n)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.kind == "open_subvariety" and not self.radius > 0:
            raise ConfigError("open_subvariety needs a positive radius (U would be empty)")

    @property
    def radius(self):
        return float(self.params.get("radius", 1.0))

    @property
    def disguise_seed(self):
        return int(self.params.get("disguise_seed", self.seed + 1000))

    def to_dict(self):
        return {"kind": self.kind, "n": self.n, "seed": self.seed,
                "params": dict(sorted(self.params.items()))}


def _random_coords(rng, rank):
    return rng.standard_normal(rank) + 1j * rng.standard_normal(rank)


def _model_transporter(p1, p2):
    """g with g . p1 = p2 for model points: g = g2^{-1} g1 when the slice
    parts agree."""
    gap = float(np.linalg.norm(p1.coords - p2.coords))
    if gap > 1e-6 * max(1.0, float(np.abs(p1.coords).max(initial=0.0))):
        raise NoTransportError(f"slice parts differ by {gap:.3e}", gap)
    return np.linalg.inv(p2.g) @ p1.g


def _model_parts(model):
    """Callables shared by the model and its variants."""
    slice = model.slice
    n, rank = model.n, model.spec.rank

    def twisted_coords(label):
        return slice_membership(slice, negation_twist(slice, label)).astype(complex)

    def fibre_sample(label, seed, count):
        rng = np.random.default_rng([seed, 3])
        c = twisted_coords(label)
        return [ModelPoint(random_group_element(n, rng), c) for _ in range(count)]

    def sample(seed, count):
        rng = np.random.default_rng([seed, 1])
        return [ModelPoint(random_group_element(n, rng), _random_coords(rng, rank))
                for _ in range(count)]

    return twisted_coords, fibre_sample, sample


def model_scenario(slice):
    model = ModelSpace(slice)
    twisted_coords, fibre_sample, sample = _model_parts(model)
    n = model.n
    return PresentedSpace(
        name="model", slice=slice, dimension=model.dimension, sample=sample,
        moment=model.moment, act=model.act, tangent_basis=model.tangent_basis,
        move=model.move, embed=model.embed, symplectic=model.symplectic_form,
        fibre_section=lambda label: ModelPoint(np.eye(n, dtype=complex), twisted_coords(label)),
        transporter=_model_transporter, fibre_sample=fibre_sample, affine=True,
        extras={"model": model})


def disguised_scenario(slice, disguise_seed):
    """The model seen through (h, c) -> (k h k^{-1}, A c + b).

    ``extras["disguise"]`` and ``extras["undisguise"]`` expose the map.
    """
    model = ModelSpace(slice)
    n, rank = model.n, model.spec.rank
    rng = np.random.default_rng([disguise_seed, 5])
    k = random_group_element(n, rng, scale=0.7)
    kinv = np.linalg.inv(k)
    a_mat = np.eye(rank) + 0.3 * (rng.standard_normal((rank, rank))
                                  + 1j * rng.standard_normal((rank, rank)))
    a_inv = np.linalg.inv(a_mat)
    shift = 0.5 * _random_coords(rng, rank)

    def disguise(p):
        return ModelPoint(k @ p.g @ kinv, a_mat @ p.coords + shift)

    def undisguise(q):
        return ModelPoint(kinv @ q.g @ k, a_inv @ (q.coords - shift))

    def push(v):
        return ModelTangent(kinv @ v.a @ k, a_inv @ v.b)

    twisted_coords, fibre_sample, sample = _model_parts(model)
    return PresentedSpace(
        name="disguised", slice=slice, dimension=model.dimension,
        sample=lambda seed, count: [disguise(p) for p in sample(seed, count)],
        moment=lambda q: model.moment(undisguise(q)),
        act=lambda g, q: disguise(model.act(g, undisguise(q))),
        tangent_basis=model.tangent_basis, move=model.move, embed=model.embed,
        symplectic=lambda q, v, w: model.symplectic_form(undisguise(q), push(v), push(w)),
        fibre_section=lambda label: disguise(
            ModelPoint(np.eye(n, dtype=complex), twisted_coords(label))),
        transporter=lambda q1, q2: _model_transporter(undisguise(q1), undisguise(q2)),
        fibre_sample=lambda label, seed, count: [
            disguise(p) for p in fibre_sample(label, seed, count)],
        affine=True,
        extras={"model": model, "disguise": disguise, "undisguise": undisguise,
                "conjugator": k, "reparametrization": (a_mat, shift)})


def center_representative(g):
    """Representative of g Z(G): the first nonzero entry (row-major) is
    rotated by an n-th root of unity to argument in [-pi/n, pi/n]."""
    g = np.asarray(g, dtype=complex)
    n = g.shape[0]
    flat = g.reshape(-1)
    idx = int(np.argmax(np.abs(flat) > 1e-8 * np.abs(flat).max()))
    k = np.round(np.angle(flat[idx]) * n / (2 * np.pi))
    return g * np.exp(-2j * np.pi * k / n)


def _branch_distance(g):
    n = g.shape[0]
    flat = g.reshape(-1)
    idx = int(np.argmax(np.abs(flat) > 1e-8 * np.abs(flat).max()))
    return np.pi / n - abs(np.angle(flat[idx]))


def center_quotient_scenario(slice):
    """(G / Z(G)) x S_reg with points stored as canonical representatives."""
    model = ModelSpace(slice)
    n, rank = model.n, model.spec.rank
    twisted_coords, _, _ = _model_parts(model)

    def canon(p):
        return ModelPoint(center_representative(p.g), p.coords)

    def draw_group(rng):
        while True:
            g = center_representative(random_group_element(n, rng))
            if _branch_distance(g) > _BRANCH_MARGIN:
                return g

    def sample(seed, count):
        rng = np.random.default_rng([seed, 1])
        return [ModelPoint(draw_group(rng), _random_coords(rng, rank)) for _ in range(count)]

    def fibre_sample(label, seed, count):
        rng = np.random.default_rng([seed, 3])
        c = twisted_coords(label)
        return [ModelPoint(draw_group(rng), c) for _ in range(count)]

    return PresentedSpace(
        name="center_quotient", slice=slice, dimension=model.dimension, sample=sample,
        moment=model.moment, act=lambda g, p: canon(model.act(g, p)),
        tangent_basis=model.tangent_basis, move=lambda p, v, t: canon(model.move(p, v, t)),
        embed=model.embed, symplectic=model.symplectic_form,
        fibre_section=lambda label: ModelPoint(np.eye(n, dtype=complex), twisted_coords(label)),
        transporter=_model_transporter, fibre_sample=fibre_sample, affine=True,
        extras={"model": model, "canon": canon})


def open_subvariety_scenario(slice, radius):
    """G x U with U = {|c_k| < radius} in slice coordinates."""
    model = ModelSpace(slice)
    n, rank = model.n, model.spec.rank
    twisted_coords, fibre_sample_model, _ = _model_parts(model)

    def inside(c):
        return bool(np.all(np.abs(c) < radius))

    def sample(seed, count):
        rng = np.random.default_rng([seed, 1])
        out = []
        for _ in range(count):
            r = 0.9 * radius * np.sqrt(rng.uniform(size=rank))
            c = r * np.exp(2j * np.pi * rng.uniform(size=rank))
            out.append(ModelPoint(random_group_element(n, rng), c))
        return out

    def fibre_section(label):
        c = twisted_coords(label)
        if not inside(c):
            raise OutsideDomainError(f"slice coordinates {c} lie outside U")
        return ModelPoint(np.eye(n, dtype=complex), c)

    def fibre_sample(label, seed, count):
        if not inside(twisted_coords(label)):
            raise OutsideDomainError("fibre lies outside U")
        return fibre_sample_model(label, seed, count)

    def transporter(p1, p2):
        if not (inside(p1.coords) and inside(p2.coords)):
            raise OutsideDomainError("point lies outside U")
        return _model_transporter(p1, p2)

    return PresentedSpace(
        name="open_subvariety", slice=slice, dimension=model.dimension, sample=sample,
        moment=model.moment, act=model.act, tangent_basis=model.tangent_basis,
        move=model.move, embed=model.embed, symplectic=model.symplectic_form,
        fibre_section=fibre_section, transporter=transporter, fibre_sample=fibre_sample,
        affine=True, extras={"model": model, "radius": radius, "inside": inside})


@dataclass(frozen=True)
class CotangentPoint:
    g: np.ndarray
    x: np.ndarray

    def to_dict(self):
        return {"g": encode_matrix(self.g), "x": encode_matrix(self.x)}


def cotangent_scenario(slice):
    """T*G = G x g with mu(g, x) = -Ad_{g^-1} x and the canonical form.

    The first sample always has x = 0, an irregular moment value.
    """
    spec = GroupSpec(slice.n)
    n = spec.n
    els = standard_basis(n).elements.astype(complex)
    zero = np.zeros((n, n), dtype=complex)

    def act(g, p):
        return CotangentPoint(p.g @ np.linalg.inv(g), p.x)

    def moment(p):
        return -adjoint_action(np.linalg.inv(p.g), p.x)

    def tangent_basis(p=None):
        return [(e, zero) for e in els] + [(zero, e) for e in els]

    def move(p, v, t):
        return CotangentPoint(p.g @ group_exp(t * v[0]), p.x + t * v[1])

    def embed(p):
        return np.concatenate([p.g.reshape(-1), p.x.reshape(-1)])

    def symplectic(p, v, w):
        return cotangent_form(p.g, p.x, v[0], v[1], w[0], w[1])

    def sample(seed, count):
        rng = np.random.default_rng([seed, 1])
        out = [CotangentPoint(random_group_element(n, rng), zero.copy())]
        while len(out) < count:
            out.append(CotangentPoint(random_group_element(n, rng),
                                      random_algebra_element(n, rng)))
        return out[:count]

    def twisted(label):
        return negation_twist(slice, label)

    def fibre_sample(label, seed, count):
        rng = np.random.default_rng([seed, 3])
        x0 = twisted(label)
        return [CotangentPoint(random_group_element(n, rng),
                               adjoint_action(random_group_element(n, rng), x0))
                for _ in range(count)]

    def transporter(p1, p2):
        gap = float(np.linalg.norm(p1.x - p2.x))
        if gap > 1e-6 * max(1.0, float(np.linalg.norm(p1.x))):
            raise NoTransportError(f"cotangent parts differ by {gap:.3e}", gap)
        return np.linalg.inv(p2.g) @ p1.g

    return PresentedSpace(
        name="cotangent", slice=slice, dimension=2 * spec.dim_g, sample=sample,
        moment=moment, act=act, tangent_basis=tangent_basis, move=move, embed=embed,
        symplectic=symplectic,
        fibre_section=lambda label: CotangentPoint(np.eye(n, dtype=complex), twisted(label)),
        transporter=transporter, fibre_sample=fibre_sample, affine=True)


def build(spec):
    """Build the presented space for `spec` and its expected status pattern."""
    slice = SlodowySlice.principal(spec.n)
    if spec.kind == "model":
        space = model_scenario(slice)
    elif spec.kind == "disguised":
        space = disguised_scenario(slice, spec.disguise_seed)
    elif spec.kind == "center_quotient":
        space = center_quotient_scenario(slice)
    elif spec.kind == "open_subvariety":
        space = open_subvariety_scenario(slice, spec.radius)
    else:
        space = cotangent_scenario(slice)
    return space, dict(EXPECTED[spec.kind])


def invariants_of(slice, coords):
    """Invariant vector of the slice point with the given coordinates."""
    return char_invariants(slice.point(np.asarray(coords, dtype=complex)))


def unreached_invariants(space, invariants):
    """True when the fibre section of `space` refuses the given invariants."""
    y = solve_slice_coords(space.slice, invariants).point
    try:
        space.fibre_section(y)
    except OutsideDomainError:
        return True
    return False
