"""Principal sl2-triples and the regular Slodowy slice xi + ker(ad_eta)."""
from dataclasses import dataclass, field

import numpy as np

from . import lie_core
from .errors import NotOnSliceError, RegsliceError
from .lie_core import GroupSpec, ad_matrix, bracket, numerical_rank, standard_basis
from .serialize import decode_matrix, encode_matrix

MEMBERSHIP_TOL = 1e-8


@dataclass(frozen=True)
class Sl2Triple:
    xi: np.ndarray
    h: np.ndarray
    eta: np.ndarray

    @property
    def n(self):
        return self.xi.shape[0]

    def relations_exact(self):
        """True when [xi,eta]=h, [h,xi]=2xi, [h,eta]=-2eta hold exactly."""
        return (np.array_equal(bracket(self.xi, self.eta), self.h)
                and np.array_equal(bracket(self.h, self.xi), 2 * self.xi)
                and np.array_equal(bracket(self.h, self.eta), -2 * self.eta))


def principal_triple(spec):
    """The standard principal triple of sl_n, as integer matrices.

    h = diag(n-1, n-3, ..., 1-n), xi = sum E_{i,i+1},
    eta = sum i(n-i) E_{i+1,i}.
    """
    if isinstance(spec, int):
        spec = GroupSpec(spec)
    n = spec.n
    h = np.diag(np.arange(n - 1, -n, -2))
    xi = np.diag(np.ones(n - 1, dtype=int), 1)
    eta = np.diag(np.array([i * (n - i) for i in range(1, n)]), -1)
    return Sl2Triple(xi=xi, h=h, eta=eta)


def kernel_ad_eta(triple, tol=lie_core.RANK_TOL):
    """Frobenius-orthonormal basis of ker(ad_eta), shape ``(n-1, n, n)``.

    The kernel is found numerically from the SVD of the ad matrix.  Inside
    it we pick the basis obtained by Gram-Schmidt on the projections of
    eta, eta^2, ..., eta^{n-1}, so element k sits on the k-th subdiagonal
    and the result does not depend on the sign choices of the SVD.
    """
    n = triple.n
    spec = GroupSpec(n)
    basis = standard_basis(n)
    ad = ad_matrix(np.asarray(triple.eta, dtype=complex), basis)
    _, sv, vh = np.linalg.svd(ad)
    rank, grey = numerical_rank(sv, tol)
    if grey.size or spec.dim_g - rank != spec.rank:
        raise RegsliceError(
            f"ker(ad_eta) has dimension {spec.dim_g - rank}, expected {spec.rank}; "
            "the triple is not principal")
    null_coords = vh[rank:].conj()
    null_flat = np.array([basis.element(c).reshape(-1) for c in null_coords]).T
    q, _ = np.linalg.qr(null_flat)
    eta = np.asarray(triple.eta, dtype=complex)
    powers = [np.linalg.matrix_power(eta, k).reshape(-1) for k in range(1, n)]
    projected = q @ (q.conj().T @ np.array(powers).T)
    out, r = np.linalg.qr(projected)
    out = out * np.sign(np.diag(r).real)
    return out.T.reshape(spec.rank, n, n)


@dataclass(frozen=True)
class SlodowySlice:
    """S_reg = xi + span(kernel_basis)."""

    triple: Sl2Triple
    kernel_basis: np.ndarray
    membership_tol: float = MEMBERSHIP_TOL
    _flat: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        kb = np.asarray(self.kernel_basis, dtype=complex)
        kb.setflags(write=False)
        object.__setattr__(self, "kernel_basis", kb)
        object.__setattr__(self, "_flat", kb.reshape(len(kb), -1).T)

    @classmethod
    def principal(cls, n, membership_tol=MEMBERSHIP_TOL):
        triple = principal_triple(GroupSpec(n))
        return cls(triple, kernel_ad_eta(triple), membership_tol)

    @property
    def n(self):
        return self.triple.n

    @property
    def rank(self):
        return self.n - 1

    @property
    def base_point(self):
        return np.asarray(self.triple.xi, dtype=complex)

    def point(self, coords):
        return slice_point(self, coords)

    def coords(self, x):
        return slice_membership(self, x)

    def to_dict(self):
        return {
            "n": self.n,
            "xi": encode_matrix(self.triple.xi),
            "h": encode_matrix(self.triple.h),
            "eta": encode_matrix(self.triple.eta),
            "kernel_basis": [encode_matrix(b) for b in self.kernel_basis],
            "membership_tol": self.membership_tol,
        }

    @classmethod
    def from_dict(cls, data):
        def as_int_if_exact(m):
            if np.all(m.imag == 0) and np.all(m.real == np.round(m.real)):
                return m.real.astype(int)
            return m
        triple = Sl2Triple(*(as_int_if_exact(decode_matrix(data[k]))
                             for k in ("xi", "h", "eta")))
        basis = np.array([decode_matrix(b) for b in data["kernel_basis"]])
        return cls(triple, basis, data.get("membership_tol", MEMBERSHIP_TOL))


def slice_point(slice, coords):
    """xi + sum_k coords_k * kernel_basis_k."""
    coords = np.asarray(coords)
    if coords.shape != (slice.rank,):
        raise ValueError(f"expected {slice.rank} slice coordinates, got shape {coords.shape}")
    return slice.base_point + np.tensordot(coords, slice.kernel_basis, axes=(0, 0))


def slice_residual(slice, x):
    """Least-squares coordinates of x - xi and the Frobenius residual."""
    d = (np.asarray(x, dtype=complex) - slice.base_point).reshape(-1)
    coords, *_ = np.linalg.lstsq(slice._flat, d, rcond=None)
    residual = float(np.linalg.norm(slice._flat @ coords - d))
    return coords, residual


def slice_membership(slice, x):
    """Slice coordinates of `x`; raises :class:`NotOnSliceError` if `x` is
    farther than the membership tolerance from the slice."""
    coords, residual = slice_residual(slice, x)
    if residual > slice.membership_tol:
        raise NotOnSliceError(f"not on the slice (residual {residual:.3e})", residual)
    return coords
