"""Arithmetic of sl_n and SL_n.

Elements of the Lie algebra and of the group are plain complex numpy arrays
of shape ``(n, n)``.  The helpers :func:`algebra_element` and
:func:`group_element` validate the trace / determinant conditions where a
caller wants them enforced.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from .errors import IndeterminateRankError, ShapeError

TRACE_TOL = 1e-9
DET_TOL = 1e-9
RANK_TOL = 1e-9

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class GroupSpec:
    """The group SL_n: matrix size plus derived dimension and rank."""

    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n!r}")

    @property
    def dim_g(self):
        return self.n * self.n - 1

    @property
    def rank(self):
        return self.n - 1


def _square(x, name="matrix"):
    x = np.asarray(x)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {x.shape}")
    return x


def _same_size(a, b):
    a, b = _square(a), _square(b)
    if a.shape != b.shape:
        raise ShapeError(f"size mismatch: {a.shape} vs {b.shape}")
    return a, b


def algebra_element(x, trace_tol=TRACE_TOL):
    """Return `x` as a complex array, checking it is square and traceless."""
    x = _square(x, "algebra element").astype(complex)
    tr = np.trace(x)
    if abs(tr) > trace_tol:
        raise ValueError(f"not traceless: |trace| = {abs(tr):.3e}")
    return x


def group_element(g, det_tol=DET_TOL):
    """Return `g` as a complex array, checking det(g) = 1."""
    g = _square(g, "group element").astype(complex)
    d = np.linalg.det(g)
    if abs(d - 1) > det_tol:
        raise ValueError(f"not in SL_n: |det - 1| = {abs(d - 1):.3e}")
    return g


class AlgebraBasis:
    """An ordered basis of sl_n together with its Killing Gram matrix.

    ``elements`` has shape ``(dim_g, n, n)``.  Coordinates are computed by a
    least-squares solve against the flattened elements.
    """

    def __init__(self, elements, rank_tol=RANK_TOL):
        elements = np.asarray(elements, dtype=complex)
        if elements.ndim != 3 or elements.shape[1] != elements.shape[2]:
            raise ShapeError(f"basis must have shape (d, n, n), got {elements.shape}")
        n = elements.shape[1]
        self.spec = GroupSpec(n)
        if elements.shape[0] != self.spec.dim_g:
            raise ValueError(
                f"sl_{n} needs {self.spec.dim_g} basis elements, got {elements.shape[0]}")
        flat = elements.reshape(len(elements), -1).T
        sv = np.linalg.svd(flat, compute_uv=False)
        if sv[-1] <= rank_tol * sv[0]:
            raise ValueError("basis elements are linearly dependent")
        self.elements = elements
        self.elements.setflags(write=False)
        self._pinv = np.linalg.pinv(flat)
        # Killing form: 2n trace(ab)
        self.gram = 2 * n * np.einsum("aij,bji->ab", elements, elements)
        self.gram.setflags(write=False)
        gsv = np.linalg.svd(self.gram, compute_uv=False)
        if gsv[-1] <= rank_tol:
            raise ValueError("Killing form is degenerate on this basis")

    @property
    def n(self):
        return self.spec.n

    def __len__(self):
        return len(self.elements)

    def coords(self, x):
        """Coordinates of `x` (or a stack of matrices) in this basis."""
        x = np.asarray(x)
        if x.ndim == 2:
            return self._pinv @ x.reshape(-1)
        return (self._pinv @ x.reshape(len(x), -1).T).T

    def element(self, coords):
        return np.tensordot(np.asarray(coords), self.elements, axes=(0, 0))


@lru_cache(maxsize=None)
def standard_basis(n):
    """The fixed basis of sl_n: E_ij (i != j, row-major order), then
    E_ii - E_{i+1,i+1}."""
    elements = []
    for i in range(n):
        for j in range(n):
            if i != j:
                e = np.zeros((n, n), dtype=int)
                e[i, j] = 1
                elements.append(e)
    for i in range(n - 1):
        e = np.zeros((n, n), dtype=int)
        e[i, i] = 1
        e[i + 1, i + 1] = -1
        elements.append(e)
    return AlgebraBasis(np.array(elements))


def bracket(a, b):
    """Commutator ab - ba.  Integer inputs give exact integer output."""
    a, b = _same_size(a, b)
    return a @ b - b @ a


def adjoint_action(g, x):
    """Ad_g(x) = g x g^{-1}."""
    g, x = _same_size(g, x)
    return g @ x @ np.linalg.inv(g)


def ad_matrix(a, basis=None):
    """Matrix of ad_a in `basis` (default: :func:`standard_basis`).

    Column j holds the coordinates of [a, basis_j].
    """
    a = _square(a)
    if basis is None:
        basis = standard_basis(a.shape[0])
    if basis.n != a.shape[0]:
        raise ShapeError(f"element is {a.shape[0]}x{a.shape[0]}, basis is for n={basis.n}")
    els = basis.elements
    brackets = a[None] @ els - els @ a[None]
    return basis.coords(brackets).T


def killing_form(a, b, mode="fast"):
    """Killing form trace(ad_a ad_b).

    ``mode="fast"`` uses the closed form 2n trace(ab) valid on sl_n;
    ``mode="oracle"`` multiplies ad matrices in the standard basis.
    """
    a, b = _same_size(a, b)
    n = a.shape[0]
    if mode == "fast":
        return 2 * n * np.trace(a @ b)
    if mode == "oracle":
        return np.trace(ad_matrix(a) @ ad_matrix(b))
    raise ValueError(f"unknown mode {mode!r}")


def numerical_rank(singular_values, tol=RANK_TOL, scale=None):
    """Rank from singular values with the one-decade indeterminate band.

    A singular value s counts as zero when s <= tol * scale.  Values in
    (tol * scale, band * scale) are indeterminate, where band is the larger
    of 10 * tol and the rounding floor len(sv) * eps.  Returns
    ``(rank, indeterminate_values)``.
    """
    sv = np.asarray(singular_values, dtype=float)
    if scale is None:
        scale = sv.max() if sv.size else 0.0
    if scale == 0.0:
        return 0, np.array([])
    band = max(10 * tol, max(sv.size, 1) * _EPS)
    zero = sv <= tol * scale
    grey = (~zero) & (sv < band * scale)
    return int(np.count_nonzero(~zero)), sv[grey]


@dataclass(frozen=True)
class RegularityVerdict:
    """Outcome of :func:`is_regular`.

    ``regular`` is None when some singular value lies in the indeterminate
    band; otherwise it says whether dim ker(ad_x) equals n - 1.
    """

    regular: "bool | None"
    kernel_dim: "int | None"
    singular_values: tuple
    tol: float

    @property
    def indeterminate(self):
        return self.regular is None

    def __bool__(self):
        if self.regular is None:
            raise IndeterminateRankError(
                "regularity is indeterminate at this tolerance", self.singular_values)
        return self.regular

    def as_dict(self):
        return {
            "regular": self.regular,
            "kernel_dim": self.kernel_dim,
            "singular_values": [float(s) for s in self.singular_values],
            "tol": self.tol,
        }


def is_regular(x, tol=RANK_TOL):
    """Test whether dim ker(ad_x) equals the rank n - 1."""
    x = _square(x)
    spec = GroupSpec(x.shape[0])
    sv = np.linalg.svd(ad_matrix(x), compute_uv=False)
    rank, grey = numerical_rank(sv, tol)
    if grey.size:
        return RegularityVerdict(None, None, tuple(sv), tol)
    kernel_dim = spec.dim_g - rank
    return RegularityVerdict(kernel_dim == spec.rank, kernel_dim, tuple(sv), tol)


def orbit_dimension(x, tol=RANK_TOL):
    """dim_g - dim ker(ad_x)."""
    verdict = is_regular(x, tol)
    if verdict.indeterminate:
        raise IndeterminateRankError(
            "kernel dimension of ad_x is indeterminate", verdict.singular_values)
    return GroupSpec(np.shape(x)[0]).dim_g - verdict.kernel_dim


def group_exp(a):
    """Matrix exponential; lands in SL_n when `a` is traceless."""
    return scipy.linalg.expm(_square(a))


def center_elements(n):
    """The nontrivial central elements zeta * I of SL_n, zeta^n = 1."""
    roots = np.exp(2j * np.pi * np.arange(1, n) / n)
    # exact zeros where the root lies on an axis, e.g. -1 rather than -1+1e-16j
    roots = np.where(np.abs(roots.real) < 1e-15, 0, roots.real) + 1j * np.where(
        np.abs(roots.imag) < 1e-15, 0, roots.imag)
    return [z * np.eye(n) for z in roots]


def random_algebra_element(n, rng, scale=1.0):
    """Complex Gaussian traceless matrix."""
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    x -= np.trace(x) / n * np.eye(n)
    return scale * x


def random_group_element(n, rng, scale=0.5):
    """exp of a scaled random traceless matrix; well conditioned for small scale."""
    return group_exp(random_algebra_element(n, rng, scale))
