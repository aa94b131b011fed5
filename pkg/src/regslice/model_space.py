"""The model space G x S_reg with its action, moment map and symplectic form.

Points are pairs (g, c) with g in SL_n and c the slice coordinates of
x = xi + sum c_k b_k.  Tangent vectors at (g, c) are pairs (a, b): the group
direction g*a in left trivialization and a slice-coordinate direction b.

The symplectic form comes from embedding (g, x) -> (g, Ad_{g^-1} x) into
the left-trivialized cotangent bundle G x g with its canonical form

    omega((a1, z1), (a2, z2)) = <z2, a1> - <z1, a2> + <zeta, [a1, a2]>

(Killing pairing), pushed through the differential z = [zeta, a] + Ad_{g^-1} B.
With this sign, (g, x) -> -Ad_{g^-1} x is the moment map of the action
h . (g, x) = (g h^{-1}, x).
"""
from dataclasses import dataclass

import numpy as np

from . import lie_core
from .adjoint_quotient import char_invariants, orbit_representative, solve_slice_coords
from .errors import DegenerateFormError
from .lie_core import GroupSpec, adjoint_action, group_exp, killing_form, standard_basis
from .serialize import decode_matrix, decode_vector, encode_matrix, encode_vector
from .slodowy import slice_point

FD_STEP = 1e-5


@dataclass(frozen=True)
class ModelPoint:
    g: np.ndarray
    coords: np.ndarray

    def to_dict(self):
        return {"g": encode_matrix(self.g), "coords": encode_vector(self.coords)}

    @classmethod
    def from_dict(cls, data):
        return cls(decode_matrix(data["g"]), decode_vector(data["coords"]))


@dataclass(frozen=True)
class ModelTangent:
    a: np.ndarray
    b: np.ndarray


def cotangent_form(g, x, a1, d1, a2, d2):
    """Canonical form of G x g pulled back along (g, x) -> (g, Ad_{g^-1} x).

    `x` is the value in g, `d1`, `d2` are matrix directions of x and `a1`,
    `a2` left-trivialized group directions.
    """
    ginv = np.linalg.inv(g)
    zeta = ginv @ x @ g
    z1 = zeta @ a1 - a1 @ zeta + ginv @ d1 @ g
    z2 = zeta @ a2 - a2 @ zeta + ginv @ d2 @ g
    return (killing_form(z2, a1) - killing_form(z1, a2)
            + killing_form(zeta, a1 @ a2 - a2 @ a1))


def negation_twist(slice, y, rank_tol=lie_core.RANK_TOL):
    """The slice point on the orbit of -y.  An involution of the slice."""
    return orbit_representative(slice, -np.asarray(y), rank_tol)


def _fd_solve(gram, df):
    sv = np.linalg.svd(gram, compute_uv=False)
    if sv[-1] <= 1e-12 * sv[0]:
        raise DegenerateFormError(
            f"symplectic Gram matrix is singular (smallest singular value {sv[-1]:.3e})")
    return np.linalg.solve(gram.T, df)


class ModelSpace:
    """G x S_reg for a fixed Slodowy slice."""

    def __init__(self, slice):
        self.slice = slice
        self.spec = GroupSpec(slice.n)
        self.basis = standard_basis(slice.n)

    @property
    def n(self):
        return self.spec.n

    @property
    def dimension(self):
        return self.spec.dim_g + self.spec.rank

    def point(self, g, coords):
        return ModelPoint(np.asarray(g, dtype=complex), np.asarray(coords, dtype=complex))

    def slice_value(self, p):
        return slice_point(self.slice, p.coords)

    def act(self, g, p):
        """g . (h, x) = (h g^{-1}, x)."""
        return ModelPoint(p.g @ np.linalg.inv(g), p.coords)

    def moment(self, p):
        """(g, x) -> -Ad_{g^{-1}}(x)."""
        return -adjoint_action(np.linalg.inv(p.g), self.slice_value(p))

    def mu_bar(self, p):
        """Slice point of the orbit through moment(p)."""
        return orbit_representative(self.slice, self.moment(p))

    def mu_bar_coords(self, p):
        return solve_slice_coords(self.slice, char_invariants(self.moment(p))).coords

    # tangent spaces

    def tangent_basis(self, p=None):
        """Basis (standard basis of sl_n, 0) then (0, e_k)."""
        zero_b = np.zeros(self.spec.rank, dtype=complex)
        out = [ModelTangent(e.astype(complex), zero_b) for e in self.basis.elements]
        for k in range(self.spec.rank):
            out.append(ModelTangent(np.zeros((self.n, self.n), dtype=complex),
                                    np.eye(self.spec.rank, dtype=complex)[k]))
        return out

    def tangent_from_coeffs(self, coeffs):
        coeffs = np.asarray(coeffs)
        d = self.spec.dim_g
        return ModelTangent(self.basis.element(coeffs[:d]), coeffs[d:].astype(complex))

    def tangent_coeffs(self, v):
        return np.concatenate([self.basis.coords(v.a), v.b])

    def move(self, p, v, t):
        """Point at parameter t on the curve (g exp(t a), c + t b)."""
        return ModelPoint(p.g @ group_exp(t * v.a), p.coords + t * v.b)

    def embed(self, p):
        return np.concatenate([p.g.reshape(-1), p.coords])

    # symplectic structure

    def _slice_direction(self, b):
        return np.tensordot(b, self.slice.kernel_basis, axes=(0, 0))

    def symplectic_form(self, p, v, w):
        return cotangent_form(p.g, self.slice_value(p), v.a, self._slice_direction(v.b),
                              w.a, self._slice_direction(w.b))

    def gram(self, p):
        """Matrix of omega on :meth:`tangent_basis`."""
        basis = self.tangent_basis(p)
        m = len(basis)
        out = np.zeros((m, m), dtype=complex)
        for i in range(m):
            for j in range(i + 1, m):
                out[i, j] = self.symplectic_form(p, basis[i], basis[j])
                out[j, i] = -out[i, j]
        return out

    def fundamental_vector_field(self, theta, p):
        """d/dt act(exp(t theta), p) at t = 0, i.e. (-theta, 0)."""
        return ModelTangent(-np.asarray(theta, dtype=complex),
                            np.zeros(self.spec.rank, dtype=complex))

    def differential(self, f, p, step=FD_STEP):
        """Central differences of a scalar or vector function along the basis."""
        cols = [(np.asarray(f(self.move(p, v, step))) - np.asarray(f(self.move(p, v, -step))))
                / (2 * step) for v in self.tangent_basis(p)]
        return np.array(cols).T

    def hamiltonian_vector_field(self, f, p, step=FD_STEP):
        """Solve omega(X_f, .) = df for X_f; df by central differences."""
        df = self.differential(f, p, step)
        return self.tangent_from_coeffs(_fd_solve(self.gram(p), df))
