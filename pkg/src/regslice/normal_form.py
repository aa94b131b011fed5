"""Constructive conjugation: cyclic vectors, intertwiners, transporters and
the equivariant trivialization of a presented space."""
from dataclasses import dataclass

import numpy as np

from . import lie_core
from .adjoint_quotient import char_invariants, orbit_representative
from .errors import (
    CyclicVectorError,
    NoTransportError,
    NotRegularError,
    TrivializationError,
    WitnessError,
)
from .lie_core import center_elements, is_regular
from .serialize import encode_matrix
from .slodowy import SlodowySlice, slice_membership

WITNESS_TOL = 1e-7
WITNESS_DET_TOL = 1e-9
SYLVESTER_TOL = 1e-8
MAX_COND = 1e10
RANDOM_TRIES = 8


@dataclass(frozen=True)
class ConjugationWitness:
    """p with p source p^{-1} = target, checked on construction."""

    p: np.ndarray
    source: np.ndarray
    target: np.ndarray
    residual: float
    seed: "int | None" = None
    tol: float = WITNESS_TOL

    def __post_init__(self):
        det_err = abs(np.linalg.det(self.p) - 1)
        if det_err > WITNESS_DET_TOL:
            raise WitnessError(f"witness has |det - 1| = {det_err:.3e}")
        if not self.residual <= self.tol:
            raise WitnessError(f"witness residual {self.residual:.3e} exceeds {self.tol:.0e}")

    @classmethod
    def build(cls, p, source, target, seed=None, tol=WITNESS_TOL):
        residual = float(np.linalg.norm(p @ source @ np.linalg.inv(p) - target))
        return cls(p, source, target, residual, seed, tol)

    def to_dict(self):
        return {"p": encode_matrix(self.p), "source": encode_matrix(self.source),
                "target": encode_matrix(self.target), "residual": self.residual,
                "seed": self.seed}


def krylov_matrix(x, v):
    """Columns v, xv, ..., x^{n-1} v."""
    x = np.asarray(x)
    cols = [np.asarray(v, dtype=complex)]
    for _ in range(x.shape[0] - 1):
        cols.append(x @ cols[-1])
    return np.array(cols).T


def is_cyclic(x, v, max_cond=MAX_COND):
    return bool(np.linalg.cond(krylov_matrix(x, v)) < max_cond)


def cyclic_vector(x, seed=0, max_cond=MAX_COND):
    """A vector whose Krylov matrix under `x` is well conditioned.

    Tries seeded Gaussian vectors first, then the standard basis vectors and
    their partial sums.
    """
    x = np.asarray(x, dtype=complex)
    n = x.shape[0]
    rng = np.random.default_rng(seed)
    for _ in range(RANDOM_TRIES):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        if is_cyclic(x, v, max_cond):
            return v
    eye = np.eye(n)
    candidates = list(eye) + [eye[:k].sum(axis=0) for k in range(2, n + 1)]
    for v in candidates:
        if is_cyclic(x, v, max_cond):
            return v.astype(complex)
    raise CyclicVectorError("no cyclic vector found; the matrix looks derogatory")


def companion_form(x, v):
    """K^{-1} x K for the Krylov matrix K of a cyclic vector `v`."""
    k = krylov_matrix(x, v)
    return np.linalg.solve(k, np.asarray(x) @ k)


def _det_normalize(m):
    n = m.shape[0]
    scale = np.power(complex(1.0 / np.linalg.det(m)), 1.0 / n)
    return m * scale


def sylvester_operator(x, y):
    """Matrix of M -> M x - y M acting on row-major vec(M)."""
    n = x.shape[0]
    eye = np.eye(n)
    return np.kron(eye, x.T) - np.kron(y, eye)


def intertwiners(x, y, tol=SYLVESTER_TOL):
    """Basis of {M : M x = y M}, shape ``(n, n, n)``.

    For nonderogatory x, y with equal invariants the solution space has
    dimension n; the n smallest right singular vectors are taken and the
    largest of their singular values must stay below tol * sigma_max.
    """
    n = x.shape[0]
    op = sylvester_operator(x, y)
    _, sv, vh = np.linalg.svd(op)
    if sv[-n] > tol * sv[0]:
        raise WitnessError(
            f"intertwiner space is smaller than {n} (singular value {sv[-n]:.3e}); "
            "the two elements are not conjugate")
    return vh[-n:].conj().reshape(n, n, n), sv


def conjugate_into_slice(slice, x, seed=0, rank_tol=lie_core.RANK_TOL):
    """Witness p in SL_n with p x p^{-1} on the slice."""
    x = np.asarray(x, dtype=complex)
    if not is_regular(x, rank_tol):
        raise NotRegularError("only regular elements can be conjugated into the slice")
    y = orbit_representative(slice, x, rank_tol)
    basis, _ = intertwiners(x, y)
    n = x.shape[0]
    rng = np.random.default_rng(seed)
    best, best_cond = None, np.inf
    for _ in range(RANDOM_TRIES):
        c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        m = np.tensordot(c, basis, axes=(0, 0))
        cond = np.linalg.cond(m)
        if cond < best_cond:
            best, best_cond = m, cond
    if best_cond > MAX_COND:
        eye = np.eye(n)
        for c in list(eye) + [eye[:k].sum(axis=0) for k in range(2, n + 1)]:
            m = np.tensordot(c, basis, axes=(0, 0))
            cond = np.linalg.cond(m)
            if cond < best_cond:
                best, best_cond = m, cond
    if best_cond > MAX_COND:
        raise WitnessError(f"no invertible intertwiner found (best condition number {best_cond:.3e})")
    return ConjugationWitness.build(_det_normalize(best), x, y, seed)


def transporter(x1, x2, slice=None, seed=0, invariant_tol=1e-6, tol=1e-6):
    """Witness p with p x1 p^{-1} = x2, through the common slice point.

    Raises :class:`NoTransportError` when the invariants differ.
    """
    x1 = np.asarray(x1, dtype=complex)
    x2 = np.asarray(x2, dtype=complex)
    if slice is None:
        slice = SlodowySlice.principal(x1.shape[0])
    inv1, inv2 = char_invariants(x1), char_invariants(x2)
    gap = float(np.linalg.norm(inv1 - inv2))
    scale = max(1.0, float(np.abs(inv1).max(initial=0.0)))
    if gap > invariant_tol * scale:
        raise NoTransportError(f"invariants differ by {gap:.3e}", gap)
    w1 = conjugate_into_slice(slice, x1, seed)
    w2 = conjugate_into_slice(slice, x2, seed)
    p = _det_normalize(np.linalg.inv(w2.p) @ w1.p)
    return ConjugationWitness.build(p, x1, x2, seed, tol)


def model_trivialize(space, x, model=None, transport_tol=1e-6, ambiguity_tol=1e-8):
    """The point of G x S_reg corresponding to the point `x` of `space`.

    The fibre label y = mu_bar(x) is turned into the model slice point
    twist(y); the space's own fibre section and transporter give g with
    x = g . section(y), and the image is g . (1, twist(y)).  The map is
    G-equivariant by construction.  A transport that also works after
    multiplying g by a nontrivial central element is ambiguous and refused.
    """
    from .model_space import ModelPoint, ModelSpace, negation_twist

    if space.fibre_section is None or space.transporter is None:
        raise TrivializationError("the space supplies no fibre section or transporter")
    slice = space.slice
    model = model or ModelSpace(slice)
    label = orbit_representative(slice, space.moment(x))
    coords = slice_membership(slice, negation_twist(slice, label))
    base = space.fibre_section(label)
    g = space.transporter(base, x)
    miss = space.distance(space.act(g, base), x)
    if miss > transport_tol:
        raise TrivializationError(f"transporter misses the target by {miss:.3e}")
    for z in center_elements(slice.n):
        if space.distance(space.act(z @ g, base), x) <= ambiguity_tol:
            raise TrivializationError(
                "group part is ambiguous: a nontrivial central element fixes the fibre point")
    n = slice.n
    return model.act(g, ModelPoint(np.eye(n, dtype=complex), coords.astype(complex)))
