"""Sampled checks of the classification hypotheses on presented spaces.

A presented space is a bundle of pure callables (:class:`PresentedSpace`).
Each check returns a :class:`Verdict` carrying its numeric evidence;
:func:`classify` runs all of them, and when the hypotheses hold, builds and
tests the equivariant trivialization onto G x S_reg.
"""
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from . import lie_core
from .adjoint_quotient import char_invariants, slice_from_invariants, solve_slice_coords
from .errors import (
    ContractError,
    IndeterminateRankError,
    NoTransportError,
    NotRegularError,
    OutsideDomainError,
    PreconditionError,
    RegsliceError,
)
from .lie_core import (
    GroupSpec,
    adjoint_action,
    center_elements,
    group_exp,
    is_regular,
    numerical_rank,
    random_group_element,
    standard_basis,
)
from .model_space import ModelSpace
from .normal_form import model_trivialize
from .normal_form import transporter as orbit_transporter
from .serialize import encode_complex, encode_vector
from .slodowy import SlodowySlice

SCHEMA_VERSION = "1.0"

PASS, FAIL, UNVERIFIABLE = "pass", "fail", "unverifiable"
DECLARED, SKIPPED, DECLINED, ERROR = "declared", "skipped", "declined", "error"
NOT_AT_DESK_SCALE = "not verifiable at desk scale"

CONDITION_LABELS = {
    "i_affine": "(i) X is affine",
    "ii_free": "(ii) the G-action is free",
    "iii_dimension": "(iii) dim X = dim G + rk G",
    "iv_image": "(iv) mu(X) = g_reg",
    "v_fibre": "(v) mu^-1(O) irreducible, via single-orbit fibres",
    "integrable_system": "abstract integrable system of rank rk G",
    "mu_bar_submersion": "mu_bar is a submersion",
    "trivialization": "G-equivariant isomorphism X = G x S_reg",
}


@dataclass(frozen=True)
class PresentedSpace:
    """A Hamiltonian G-space given by evaluable data.

    ``tangent_basis(p)`` lists tangent vectors at p; ``move(p, v, t)`` is a
    curve through p with velocity v; ``embed(p)`` flattens p into a complex
    vector, used for distances and finite differences.  All callables must
    be pure.
    """

    name: str
    slice: SlodowySlice
    dimension: int
    sample: Callable[[int, int], list]
    moment: Callable[[Any], np.ndarray]
    act: Callable[[np.ndarray, Any], Any]
    tangent_basis: Callable[[Any], list]
    move: Callable[[Any, Any, float], Any]
    embed: Callable[[Any], np.ndarray]
    symplectic: Optional[Callable[[Any, Any, Any], complex]] = None
    fibre_section: Optional[Callable[[np.ndarray], Any]] = None
    transporter: Optional[Callable[[Any, Any], np.ndarray]] = None
    fibre_sample: Optional[Callable[[np.ndarray, int, int], list]] = None
    affine: Optional[bool] = None
    extras: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.slice.n

    @property
    def spec(self):
        return GroupSpec(self.slice.n)

    def distance(self, p, q):
        return float(np.linalg.norm(self.embed(p) - self.embed(q)))

    def mu_bar(self, p, rank_tol=lie_core.RANK_TOL):
        x = self.moment(p)
        if not is_regular(x, rank_tol):
            raise NotRegularError("moment value is not regular; mu_bar is undefined")
        return solve_slice_coords(self.slice, char_invariants(x)).point


@dataclass(frozen=True)
class VerifierConfig:
    samples: int = 20
    seed: int = 0
    rank_tol: float = lie_core.RANK_TOL
    fd_step: float = 1e-5
    fd_rank_tol: float = 1e-7
    local_free_tol: float = 1e-7
    center_tol: float = 1e-6
    label_tol: float = 1e-6
    transport_tol: float = 1e-5
    containment_tol: float = 1e-4
    fibre_labels: int = 2
    fibre_samples: int = 10
    surjectivity_trials: int = 50
    trivialization_samples: int = 20
    equivariance_tol: float = 1e-6
    injectivity_tol: float = 1e-6


@dataclass
class Verdict:
    key: str
    status: str
    detail: str
    evidence: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.status == PASS

    def to_dict(self):
        return {"label": CONDITION_LABELS.get(self.key, self.key), "status": self.status,
                "detail": self.detail, "evidence": self.evidence}


@dataclass
class ConditionReport:
    scenario: dict
    verdicts: dict
    criterion_consistent: Optional[bool] = None

    def status(self, key):
        return self.verdicts[key].status

    def pattern(self):
        return {k: v.status for k, v in self.verdicts.items()}

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "scenario": self.scenario,
            "conditions": {k: v.to_dict() for k, v in self.verdicts.items()},
            "criterion_consistent": self.criterion_consistent,
        }


def _rng(seed, *stream):
    return np.random.default_rng([seed, *stream])


def _fd_jacobian(space, f, p, step):
    """Central differences of f along space.tangent_basis(p); columns per
    basis vector, rows per flattened output entry."""
    cols = []
    for v in space.tangent_basis(p):
        plus = np.asarray(f(space.move(p, v, step)), dtype=complex).reshape(-1)
        minus = np.asarray(f(space.move(p, v, -step)), dtype=complex).reshape(-1)
        cols.append((plus - minus) / (2 * step))
    return np.array(cols).T


def _fd_rank(jac, tol):
    """Numerical rank relative to max(sigma_max, 1); the floor keeps a zero
    map from being read at the scale of its own rounding noise."""
    sv = np.linalg.svd(jac, compute_uv=False) if jac.size else np.array([])
    scale = max(float(sv.max(initial=0.0)), 1.0)
    rank, _ = numerical_rank(sv, tol, scale)
    return rank, sv


def check_contract(space, samples, config=VerifierConfig()):
    """Group law and moment equivariance at samples; raises ContractError."""
    rng = _rng(config.seed, 7)
    n = space.n
    worst_law = worst_eq = 0.0
    for i, p in enumerate(samples):
        g1 = random_group_element(n, rng)
        g2 = random_group_element(n, rng)
        law = space.distance(space.act(g2, space.act(g1, p)), space.act(g2 @ g1, p))
        mu = space.moment(p)
        eq = np.linalg.norm(space.moment(space.act(g1, p)) - adjoint_action(g1, mu))
        eq /= max(1.0, np.linalg.norm(mu))
        worst_law, worst_eq = max(worst_law, law), max(worst_eq, eq)
        if law > 1e-8:
            raise ContractError(f"{space.name}: action breaks the group law at sample {i} ({law:.3e})")
        if eq > 1e-7:
            raise ContractError(f"{space.name}: moment map not equivariant at sample {i} ({eq:.3e})")
    return {"group_law_defect": float(worst_law), "equivariance_defect": float(worst_eq)}


def check_affine(space):
    if space.affine is None:
        return Verdict("i_affine", UNVERIFIABLE, f"affineness not declared; {NOT_AT_DESK_SCALE}")
    return Verdict("i_affine", DECLARED,
                   f"declared affine={space.affine} (metadata, not computed)",
                   {"declared": space.affine})


def check_free_action(space, samples, config=VerifierConfig()):
    """Local freeness by the rank of theta -> theta_X, then centre freeness."""
    n = space.n
    els = standard_basis(n).elements
    h = config.fd_step
    min_sv = []
    for p in samples:
        cols = [(space.embed(space.act(group_exp(h * e), p))
                 - space.embed(space.act(group_exp(-h * e), p))) / (2 * h) for e in els]
        min_sv.append(float(np.linalg.svd(np.array(cols).T, compute_uv=False)[-1]))
    locally_free = all(s > config.local_free_tol for s in min_sv)
    witness = None
    center_dist = []
    for i, p in enumerate(samples):
        for z in center_elements(n):
            d = space.distance(space.act(z, p), p)
            center_dist.append(d)
            if d <= config.center_tol and witness is None:
                witness = {"sample": i, "zeta": encode_complex(z[0, 0]), "distance": d}
    evidence = {"min_singular_values": min_sv,
                "min_center_distance": float(min(center_dist)) if center_dist else None,
                "stabilizer_witness": witness,
                "scope": "stabilizers tested against the centre {zeta I : zeta^n = 1} only"}
    if not locally_free:
        return Verdict("ii_free", FAIL, "not locally free", evidence)
    if witness is not None:
        z = complex(*witness["zeta"])
        return Verdict("ii_free", FAIL,
                       f"locally free, not free: zeta={z.real:+.3f}{z.imag:+.3f}i times I "
                       f"fixes sample {witness['sample']}", evidence)
    return Verdict("ii_free", PASS, "free (at sampled resolution)", evidence)


def check_dimension(space, samples, config=VerifierConfig()):
    spec = space.spec
    expected = spec.dim_g + spec.rank
    sizes = [len(space.tangent_basis(p)) for p in samples[:5]]
    if any(s != space.dimension for s in sizes):
        raise ContractError(
            f"{space.name}: tangent chart sizes {sizes} disagree with declared dimension "
            f"{space.dimension}")
    evidence = {"declared": space.dimension, "dim_g_plus_rank": expected, "chart_sizes": sizes}
    if space.dimension == expected:
        return Verdict("iii_dimension", PASS, f"dim X = {expected}", evidence)
    return Verdict("iii_dimension", FAIL,
                   f"dim X = {space.dimension} != {spec.dim_g} + {spec.rank}", evidence)


def check_image_regular(space, samples, config=VerifierConfig()):
    """Containment of mu(X) in g_reg at samples; surjectivity through the
    fibre section when the space has one."""
    irregular = []
    for i, p in enumerate(samples):
        verdict = is_regular(space.moment(p), config.rank_tol)
        if verdict.indeterminate:
            raise IndeterminateRankError(
                f"regularity of mu(sample {i}) is indeterminate at tol {config.rank_tol:g}",
                [float(s) for s in verdict.singular_values])
        if not verdict.regular:
            irregular.append({"sample": i, "kernel_dim": verdict.kernel_dim})
    containment = {"passed": not irregular, "irregular_samples": irregular}
    if space.fibre_section is None:
        surj = {"status": UNVERIFIABLE, "detail": NOT_AT_DESK_SCALE}
    else:
        rng = _rng(config.seed, 11)
        unreached, mislabelled, max_gap = None, None, 0.0
        for trial in range(config.surjectivity_trials):
            inv = random_invariants(space.spec.rank, rng)
            y = slice_from_invariants(space.slice, inv)
            try:
                p = space.fibre_section(y)
            except OutsideDomainError:
                if unreached is None:
                    unreached = {"trial": trial, "invariants": encode_vector(inv)}
                continue
            gap = float(np.linalg.norm(space.mu_bar(p, config.rank_tol) - y))
            max_gap = max(max_gap, gap)
            if gap > config.label_tol and mislabelled is None:
                mislabelled = {"trial": trial, "gap": gap}
        if unreached is not None:
            surj = {"status": FAIL, "detail": "proper subset: an invariant vector is not reached",
                    "unreached_witness": unreached}
        elif mislabelled is not None:
            surj = {"status": FAIL, "detail": "fibre section lands in the wrong fibre",
                    "mislabelled": mislabelled}
        else:
            surj = {"status": PASS, "trials": config.surjectivity_trials,
                    "max_label_gap": max_gap}
    evidence = {"containment": containment, "surjectivity": surj}
    if irregular:
        return Verdict("iv_image", FAIL,
                       f"containment fails: {len(irregular)} sample(s) with irregular mu", evidence)
    if surj["status"] == FAIL:
        return Verdict("iv_image", FAIL, "mu(X) is contained in g_reg but " + surj["detail"],
                       evidence)
    if surj["status"] == UNVERIFIABLE:
        return Verdict("iv_image", UNVERIFIABLE,
                       f"containment verified; surjectivity {NOT_AT_DESK_SCALE}", evidence)
    return Verdict("iv_image", PASS, "mu(X) = g_reg at sampled resolution", evidence)


def check_fibre_single_orbit(space, y, fibre_points, config=VerifierConfig()):
    """Dimension and transitivity evidence that the mu_bar fibre over y is
    one G-orbit.  Evidence for, not proof of, irreducibility."""
    spec = space.spec
    y = np.asarray(y)
    for i, p in enumerate(fibre_points):
        gap = float(np.linalg.norm(space.mu_bar(p, config.rank_tol) - y))
        if gap > config.label_tol:
            raise PreconditionError(f"fibre sample {i} has mu_bar label {gap:.3e} away from y")
    inv = lambda q: char_invariants(space.moment(q))
    kernel_dims = []
    for p in fibre_points:
        rank, _ = _fd_rank(_fd_jacobian(space, inv, p, config.fd_step), config.fd_rank_tol)
        kernel_dims.append(space.dimension - rank)
    dim_ok = all(k == spec.dim_g for k in kernel_dims)
    evidence = {"label": encode_vector(y), "kernel_dims": kernel_dims,
                "orbit_dim": spec.dim_g, "fibre_samples": len(fibre_points)}
    if space.transporter is None:
        evidence["transitivity"] = NOT_AT_DESK_SCALE
        status = FAIL if not dim_ok else UNVERIFIABLE
        return Verdict("v_fibre", status, f"no transporter; (v) {NOT_AT_DESK_SCALE}", evidence)
    worst, failures = 0.0, []
    for i in range(len(fibre_points)):
        for j in range(i + 1, len(fibre_points)):
            try:
                g = space.transporter(fibre_points[i], fibre_points[j])
            except NoTransportError as exc:
                failures.append({"pair": [i, j], "gap": exc.gap})
                continue
            res = space.distance(space.act(g, fibre_points[i]), fibre_points[j])
            worst = max(worst, res)
            if res > config.transport_tol:
                failures.append({"pair": [i, j], "residual": res})
    moment_residuals = []
    for j in range(1, len(fibre_points)):
        try:
            w = orbit_transporter(space.moment(fibre_points[0]), space.moment(fibre_points[j]),
                                  space.slice, seed=config.seed)
            moment_residuals.append(w.residual)
        except RegsliceError:
            moment_residuals.append(None)
    evidence.update({"max_transport_residual": worst, "transport_failures": failures[:5],
                     "moment_transport_residuals": moment_residuals,
                     "note": "single-orbit fibres are evidence for (v), not a proof"})
    if dim_ok and not failures:
        return Verdict("v_fibre", PASS, "fibre is a single G-orbit at samples", evidence)
    reasons = []
    if not dim_ok:
        reasons.append(f"fibre dimension {max(kernel_dims)} != dim G = {spec.dim_g}")
    if failures:
        reasons.append(f"{len(failures)} fibre pair(s) not connected by the action")
    return Verdict("v_fibre", FAIL, "; ".join(reasons), evidence)


def fibre_points_for(space, label, count, seed):
    if space.fibre_sample is not None:
        return space.fibre_sample(label, seed, count)
    if space.fibre_section is not None:
        rng = _rng(seed, 13)
        base = space.fibre_section(label)
        return [space.act(random_group_element(space.n, rng), base) for _ in range(count)]
    return None


def check_mu_bar_submersion(space, samples, config=VerifierConfig()):
    spec = space.spec
    coords = lambda q: solve_slice_coords(
        space.slice, char_invariants(space.moment(q))).coords
    ranks, min_sv = [], []
    for p in samples:
        rank, sv = _fd_rank(_fd_jacobian(space, coords, p, config.fd_step), config.fd_rank_tol)
        ranks.append(rank)
        min_sv.append(float(sv[spec.rank - 1]) if sv.size >= spec.rank else 0.0)
    evidence = {"ranks": ranks, "expected_rank": spec.rank,
                "smallest_nonzero_singular_values": min_sv}
    if all(r == spec.rank for r in ranks):
        return Verdict("mu_bar_submersion", PASS, f"d(mu_bar) has rank {spec.rank} at samples",
                       evidence)
    bad = [i for i, r in enumerate(ranks) if r != spec.rank]
    return Verdict("mu_bar_submersion", FAIL,
                   f"d(mu_bar) rank deficient at {len(bad)} sample(s) (first: {bad[0]})", evidence)


def _symplectic_gram(space, p):
    basis = space.tangent_basis(p)
    m = len(basis)
    gram = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for j in range(i + 1, m):
            gram[i, j] = space.symplectic(p, basis[i], basis[j])
            gram[j, i] = -gram[i, j]
    return gram


def integrable_at(space, p, config=VerifierConfig()):
    """Hamiltonian fields of the pulled-back invariants against ker d(mu) at p."""
    from .errors import DegenerateFormError

    spec = space.spec
    step = config.fd_step
    gram = _symplectic_gram(space, p)
    gsv = np.linalg.svd(gram, compute_uv=False)
    if gsv[-1] <= 1e-12 * gsv[0]:
        raise DegenerateFormError(f"symplectic Gram matrix singular ({gsv[-1]:.3e})")
    df = _fd_jacobian(space, lambda q: char_invariants(space.moment(q)), p, step)
    fields = np.linalg.solve(gram.T, df.T)
    jmu = _fd_jacobian(space, space.moment, p, step)
    ker_dim = space.dimension - _fd_rank(jmu, config.fd_rank_tol)[0]
    span_dim = _fd_rank(fields, config.fd_rank_tol)[0]
    jnorm = np.linalg.norm(jmu, 2)
    residuals = []
    for k in range(fields.shape[1]):
        xk = fields[:, k]
        nk = np.linalg.norm(xk)
        residuals.append(float(np.linalg.norm(jmu @ xk) / (jnorm * nk)) if nk > 0 else 0.0)
    contained = all(r <= config.containment_tol for r in residuals)
    spanning = contained and span_dim == ker_dim == spec.rank
    return {"spanning": spanning, "span_dim": span_dim, "ker_dmu_dim": ker_dim,
            "containment_residuals": residuals,
            "min_gram_singular_value": float(gsv[-1])}


def check_integrable_system(space, samples, config=VerifierConfig(), dimension_ok=None):
    """Spanning test for the foliation by mu-fibres, sample by sample.

    Each sample is also checked against the equivalence: spanning holds iff
    the dimension condition holds and mu(p) is regular.
    """
    if space.symplectic is None:
        raise PreconditionError("space has no symplectic form")
    spec = space.spec
    if dimension_ok is None:
        dimension_ok = space.dimension == spec.dim_g + spec.rank
    per_sample, consistent = [], []
    for p in samples:
        info = integrable_at(space, p, config)
        regular = bool(is_regular(space.moment(p), config.rank_tol))
        info["consistent"] = info["spanning"] == (dimension_ok and regular)
        per_sample.append(info)
        consistent.append(info["consistent"])
    spanning = all(s["spanning"] for s in per_sample)
    evidence = {"rank": spec.rank, "samples": per_sample,
                "consistent_with_criterion": all(consistent)}
    if spanning:
        return Verdict("integrable_system", PASS,
                       f"Hamiltonian fields of the invariants span ker d(mu), rank {spec.rank}",
                       evidence)
    first = next(s for s in per_sample if not s["spanning"])
    return Verdict("integrable_system", FAIL,
                   f"spanning fails: span dim {first['span_dim']}, ker d(mu) dim "
                   f"{first['ker_dmu_dim']}, expected {spec.rank}", evidence)


def check_trivialization(space, samples, config=VerifierConfig()):
    """Build Phi: X -> G x S_reg at samples and test equivariance,
    injectivity and the rank of its differential."""
    model = ModelSpace(space.slice)
    pts = samples[:config.trivialization_samples]
    images = [model_trivialize(space, p, model) for p in pts]
    rng = _rng(config.seed, 17)
    defects = []
    for p, phi in zip(pts, images):
        g = random_group_element(space.n, rng)
        lhs = model_trivialize(space, space.act(g, p), model)
        defects.append(float(np.linalg.norm(model.embed(lhs) - model.embed(model.act(g, phi)))))
    min_ratio, injective = np.inf, True
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d_in = space.distance(pts[i], pts[j])
            if d_in < config.injectivity_tol:
                continue
            d_out = float(np.linalg.norm(model.embed(images[i]) - model.embed(images[j])))
            min_ratio = min(min_ratio, d_out / d_in)
            if d_out < config.injectivity_tol:
                injective = False
    ranks = []
    phi_embed = lambda q: model.embed(model_trivialize(space, q, model))
    for p in pts:
        ranks.append(_fd_rank(_fd_jacobian(space, phi_embed, p, config.fd_step),
                              config.fd_rank_tol)[0])
    full_rank = all(r == space.dimension for r in ranks)
    equivariant = max(defects) <= config.equivariance_tol
    evidence = {"samples": len(pts), "max_equivariance_defect": max(defects),
                "injective_on_samples": injective,
                "min_distance_ratio": None if min_ratio == np.inf else float(min_ratio),
                "differential_ranks": ranks, "expected_rank": space.dimension,
                "image_sample": images[0].to_dict() if images else None}
    if equivariant and injective and full_rank:
        return Verdict("trivialization", PASS,
                       "equivariant, injective on samples, full-rank differential", evidence)
    reasons = [name for name, ok in (("equivariance", equivariant), ("injectivity", injective),
                                     ("differential rank", full_rank)) if not ok]
    return Verdict("trivialization", FAIL, "trivialization fails: " + ", ".join(reasons), evidence)


def _guard(key, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except RegsliceError as exc:
        evidence = {"error_type": type(exc).__name__}
        sv = getattr(exc, "singular_values", None)
        if sv is not None:
            evidence["singular_values"] = [float(s) for s in sv]
        return Verdict(key, ERROR, str(exc), evidence)


def classify(space, config=VerifierConfig(), scenario=None):
    """Run every check on `space` and, if (ii)-(v) hold, the trivialization.

    Contract violations raise :class:`ContractError`; errors inside
    individual checks are embedded in the report as ``error`` verdicts.
    """
    samples = space.sample(config.seed, config.samples)
    contract = check_contract(space, samples, config)
    verdicts = {}
    verdicts["i_affine"] = check_affine(space)
    verdicts["ii_free"] = _guard("ii_free", check_free_action, space, samples, config)
    verdicts["iii_dimension"] = check_dimension(space, samples, config)
    verdicts["iv_image"] = _guard("iv_image", check_image_regular, space, samples, config)
    verdicts["v_fibre"] = _guard("v_fibre", _fibre_verdict, space, samples, config)
    verdicts["integrable_system"] = _guard(
        "integrable_system", check_integrable_system, space, samples, config,
        verdicts["iii_dimension"].passed)
    containment = (verdicts["iv_image"].status != ERROR
                   and verdicts["iv_image"].evidence["containment"]["passed"])
    if containment:
        verdicts["mu_bar_submersion"] = _guard(
            "mu_bar_submersion", check_mu_bar_submersion, space, samples, config)
    else:
        verdicts["mu_bar_submersion"] = Verdict(
            "mu_bar_submersion", SKIPPED, "precondition not met: containment of mu(X) in g_reg did not pass")
    blockers = [k for k in ("ii_free", "iii_dimension", "iv_image", "v_fibre")
                if not verdicts[k].passed]
    if blockers:
        cites = "; ".join(f"{CONDITION_LABELS[k]}: {verdicts[k].detail}" for k in blockers)
        evidence = {"failed_conditions": blockers}
        witness = verdicts["ii_free"].evidence.get("stabilizer_witness")
        if witness:
            evidence["stabilizer_witness"] = witness
        verdicts["trivialization"] = Verdict("trivialization", DECLINED,
                                             "classification declined: " + cites, evidence)
    elif space.fibre_section is None or space.transporter is None:
        verdicts["trivialization"] = Verdict(
            "trivialization", UNVERIFIABLE,
            f"no fibre section or transporter; {NOT_AT_DESK_SCALE}")
    else:
        verdicts["trivialization"] = _guard(
            "trivialization", check_trivialization, space, samples, config)
    integ = verdicts["integrable_system"]
    consistent = integ.evidence.get("consistent_with_criterion") if integ.status != ERROR else None
    meta = dict(scenario or {"name": space.name, "n": space.n})
    meta.update({"samples": config.samples, "seed": config.seed, "rank_tol": config.rank_tol,
                 "contract": contract})
    return ConditionReport(meta, verdicts, consistent)


def _fibre_verdict(space, samples, config):
    labels = []
    for p in samples:
        if len(labels) >= config.fibre_labels:
            break
        x = space.moment(p)
        verdict = is_regular(x, config.rank_tol)
        if verdict.indeterminate:
            raise IndeterminateRankError("regularity indeterminate while choosing fibre labels",
                                         [float(s) for s in verdict.singular_values])
        if verdict.regular:
            labels.append(space.mu_bar(p, config.rank_tol))
    if not labels:
        return Verdict("v_fibre", UNVERIFIABLE, "no regular sample to label a fibre")
    per_label = []
    for k, y in enumerate(labels):
        pts = fibre_points_for(space, y, config.fibre_samples, config.seed + k)
        if pts is None:
            return Verdict("v_fibre", UNVERIFIABLE, f"no way to sample fibres; {NOT_AT_DESK_SCALE}")
        per_label.append(check_fibre_single_orbit(space, y, pts, config))
    evidence = {"fibres": [{"status": v.status, "detail": v.detail, **v.evidence}
                           for v in per_label]}
    for v in per_label:
        if v.status != PASS:
            return Verdict("v_fibre", v.status, v.detail, evidence)
    return Verdict("v_fibre", PASS,
                   f"{len(per_label)} fibre(s) are single G-orbits at samples "
                   "(evidence for irreducibility, not a proof)", evidence)


def random_invariants(rank, rng, scale=2.0):
    return scale * (rng.standard_normal(rank) + 1j * rng.standard_normal(rank))


__all__ = [
    "PresentedSpace", "VerifierConfig", "Verdict", "ConditionReport", "classify",
    "check_contract", "check_affine", "check_free_action", "check_dimension",
    "check_image_regular", "check_fibre_single_orbit", "check_mu_bar_submersion",
    "check_integrable_system", "check_trivialization", "integrable_at",
    "fibre_points_for", "random_invariants",
]
