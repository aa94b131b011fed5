"""Characteristic-polynomial invariants and their inversion on the slice.

The invariant vector of x in sl_n is ``(a_2, ..., a_n)`` where
det(lambda - x) = lambda^n + a_2 lambda^{n-2} + ... + a_n.  Regular orbits
are separated by this vector, so it stands in for the orbit space.
"""
from dataclasses import dataclass

import numpy as np

from . import lie_core
from .errors import ConvergenceError, NotRegularError, SubmersionError
from .lie_core import GroupSpec, is_regular, numerical_rank, standard_basis
from .slodowy import slice_point

NEWTON_TOL = 1e-10
NEWTON_MAXITER = 100
FD_STEP = 1e-6


def _faddeev_leverrier(x, directions=()):
    """Char-poly coefficients of x and their derivatives along `directions`.

    Returns ``(c, dc)`` with c[k] the coefficient of lambda^{n-k} (c[0] = 1)
    and dc[j][k] its derivative along directions[j].
    """
    x = np.asarray(x, dtype=complex)
    n = x.shape[0]
    eye = np.eye(n)
    c = np.zeros(n + 1, dtype=complex)
    c[0] = 1.0
    dirs = [np.asarray(d, dtype=complex) for d in directions]
    dc = np.zeros((len(dirs), n + 1), dtype=complex)
    m = np.zeros_like(x)
    dm = [np.zeros_like(x) for _ in dirs]
    for k in range(1, n + 1):
        m_new = x @ m + c[k - 1] * eye
        dm_new = [d @ m + x @ dmj + dc[j, k - 1] * eye
                  for j, (d, dmj) in enumerate(zip(dirs, dm))]
        am = x @ m_new
        c[k] = -np.trace(am) / k
        for j, d in enumerate(dirs):
            dc[j, k] = -(np.trace(d @ m_new) + np.trace(x @ dm_new[j])) / k
        m, dm = m_new, dm_new
    return c, dc


def char_invariants(x):
    """Invariant vector (a_2, ..., a_n) of `x`, via Faddeev-LeVerrier."""
    c, _ = _faddeev_leverrier(x)
    return c[2:]


def char_invariants_jacobian(x, directions):
    """Invariants of `x` and their derivatives, shape ``(n-1, len(directions))``."""
    c, dc = _faddeev_leverrier(x, directions)
    return c[2:], dc[:, 2:].T


@dataclass(frozen=True)
class NewtonResult:
    coords: np.ndarray
    point: np.ndarray
    residual: float
    iterations: int


def solve_slice_coords(slice, invariants, tol=NEWTON_TOL, maxiter=NEWTON_MAXITER):
    """Newton iteration for the slice point with the given invariants.

    Starts from the base point (coords 0) and backtracks on the residual
    norm.  The target residual is ``tol * max(1, |inv|)``.  Once it is met,
    one extra step is taken if it lowers the residual further, so the
    result is accurate to rounding rather than to the stopping tolerance.
    """
    inv = np.asarray(invariants, dtype=complex).reshape(-1)
    if inv.shape != (slice.rank,):
        raise ValueError(f"expected {slice.rank} invariants, got {inv.shape}")
    target = tol * max(1.0, float(np.max(np.abs(inv), initial=0.0)))
    basis = slice.kernel_basis

    def residual_at(c):
        return char_invariants(slice_point(slice, c)) - inv

    coords = np.zeros(slice.rank, dtype=complex)
    f = residual_at(coords)
    fnorm = np.linalg.norm(f)
    it = 0
    while fnorm > target and it < maxiter:
        it += 1
        _, jac = char_invariants_jacobian(slice_point(slice, coords), basis)
        step = np.linalg.lstsq(jac, -f, rcond=None)[0]
        t = 1.0
        while True:
            trial = coords + t * step
            f_trial = residual_at(trial)
            norm_trial = np.linalg.norm(f_trial)
            if norm_trial < fnorm or t < 1e-4:
                break
            t *= 0.5
        coords, f, fnorm = trial, f_trial, norm_trial
    if fnorm > target:
        raise ConvergenceError(
            f"Newton inversion stalled at residual {fnorm:.3e} after {it} iterations",
            float(fnorm), it)
    _, jac = char_invariants_jacobian(slice_point(slice, coords), basis)
    polished = coords + np.linalg.lstsq(jac, -f, rcond=None)[0]
    f_pol = residual_at(polished)
    if np.linalg.norm(f_pol) < fnorm:
        coords, fnorm = polished, np.linalg.norm(f_pol)
    return NewtonResult(coords, slice_point(slice, coords), float(fnorm), it)


def slice_from_invariants(slice, invariants, tol=NEWTON_TOL, maxiter=NEWTON_MAXITER):
    """The unique slice point whose invariant vector is `invariants`."""
    return solve_slice_coords(slice, invariants, tol, maxiter).point


def orbit_representative(slice, x, rank_tol=lie_core.RANK_TOL):
    """The point where the orbit of the regular element `x` meets the slice."""
    if not is_regular(x, rank_tol):
        raise NotRegularError("invariants determine the orbit only for regular elements")
    return slice_from_invariants(slice, char_invariants(x))


def orbit_coords(slice, x, rank_tol=lie_core.RANK_TOL):
    """Slice coordinates of :func:`orbit_representative`."""
    if not is_regular(x, rank_tol):
        raise NotRegularError("invariants determine the orbit only for regular elements")
    return solve_slice_coords(slice, char_invariants(x)).coords


def invariants_fd_jacobian(x, step=FD_STEP):
    """Central-difference Jacobian of the invariants along the standard basis."""
    x = np.asarray(x, dtype=complex)
    els = standard_basis(x.shape[0]).elements
    cols = [(char_invariants(x + step * e) - char_invariants(x - step * e)) / (2 * step)
            for e in els]
    return np.array(cols).T


@dataclass(frozen=True)
class SubmersionReport:
    ranks: list
    singular_values: list

    @property
    def passed(self):
        return bool(self.ranks)

    def as_dict(self):
        return {"ranks": self.ranks,
                "singular_values": [[float(s) for s in sv] for sv in self.singular_values]}


def quotient_submersion_check(samples, step=FD_STEP, rank_tol=1e-7):
    """Check the invariant map has full rank n-1 at every regular sample.

    Raises :class:`NotRegularError` for a non-regular sample and
    :class:`SubmersionError` at the first rank-deficient one.
    """
    ranks, svs = [], []
    for i, x in enumerate(samples):
        spec = GroupSpec(np.shape(x)[0])
        if not is_regular(x):
            raise NotRegularError(f"sample {i} is not regular")
        sv = np.linalg.svd(invariants_fd_jacobian(x, step), compute_uv=False)
        rank, _ = numerical_rank(sv, rank_tol)
        if rank != spec.rank:
            raise SubmersionError(
                f"sample {i}: invariant Jacobian has rank {rank}, expected {spec.rank}")
        ranks.append(rank)
        svs.append(sv)
    return SubmersionReport(ranks, svs)
