"""Verification engine: identity suites, audit of the printed formulas, and a rejection sampler.

Gating suites only use the coefficient construction. Audit and chain-law suites
are report-only and never affect the exit status.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import amplitudes as amp
from .geometry import TWO_PI, Z_AXIS, Axis, SpherePoint, cell_centered_grid, random_axes
from .harmonics import (
    DENSITY_SUM,
    PRINTED_LABELS,
    AxisKind,
    GeneralizedHarmonic,
    axis_variant,
    density_field,
    generalized_harmonic,
    ordinary_basis,
    printed_closed_form_field,
    printed_density,
)
from .operators import KIND_FOR_OPERATOR, THETA_MIN, OperatorLabel, build_operator, assembled_operator, apply_on, eigen_residual
from .quadrature import gram_matrix, integrate_density, patch_rule, sphere_rule

PASS, FAIL, REPORT = "pass", "fail", "report-only"
KINDS = (AxisKind.W, AxisKind.U, AxisKind.V)
OP_FOR_KIND = {v: k for k, v in KIND_FOR_OPERATOR.items()}
ENVELOPE = DENSITY_SUM * 1.0001
RNG_NAME = f"numpy.random.Philox (4x64-10) via SeedSequence, numpy {np.__version__}"

# fixed substream ids; adding a suite must not reshuffle existing streams
_STREAM = {
    "unitarity": 1,
    "hermiticity": 2,
    "orthonormality": 3,
    "normalization": 4,
    "completeness": 5,
    "eigen": 6,
    "eigen.convergence": 7,
    "operator-frame": 8,
    "envelope": 9,
    "chain-law": 10,
    "audit": 11,
}


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=int(seed) & (2**64 - 1), spawn_key=(stream,))
    return np.random.Generator(np.random.Philox(ss))


@dataclass
class VerifyConfig:
    seed: int = 42
    tol_algebra: float = 1e-12
    tol_exact: float = 1e-15
    tol_density: float = 1e-14
    tol_frame: float = 1e-14
    tol_fd: float = 1e-6
    tol_l2: float = 1e-5
    step: float = 1e-5
    step_l2: float = 1e-4
    convergence_step: float = 1e-3
    convergence_band: tuple[float, float] = (3.5, 4.5)
    theta_min: float = THETA_MIN
    n_pairs: int = 1000
    n_axes: int = 100
    n_quad_axes: int = 50
    n_points: int = 200
    n_convergence_axes: int = 20
    grid: int = 50
    completeness_grid: int = 100
    audit_axes: int = 20
    quad: tuple[int, int] = (16, 32)


@dataclass
class SuiteResult:
    name: str
    status: str
    max_residual: float
    tolerance: float | None
    details: str = ""

    @property
    def gating(self) -> bool:
        return self.status != REPORT


@dataclass
class VerificationReport:
    seed: int
    config: dict
    suites: list[SuiteResult] = field(default_factory=list)
    rng: str = RNG_NAME

    @property
    def passed(self) -> bool:
        return all(s.status == PASS for s in self.suites if s.gating)

    def suite(self, name: str) -> SuiteResult:
        for s in self.suites:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_dict(self) -> dict:
        def clean(x):
            if isinstance(x, float) and not math.isfinite(x):
                return None
            return x

        return {
            "seed": self.seed,
            "rng": self.rng,
            "config": self.config,
            "suites": [{k: clean(v) for k, v in asdict(s).items()} for s in self.suites],
            "passed": self.passed,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _gate(name: str, residual: float, tol: float, details: str = "") -> SuiteResult:
    status = PASS if residual <= tol else FAIL
    return SuiteResult(name, status, float(residual), float(tol), details)


def _report(name: str, residual: float, details: str = "") -> SuiteResult:
    return SuiteResult(name, REPORT, float(residual), None, details)


def _fmt(x: float) -> str:
    return f"{x:.3e}"


# --- gating suites -----------------------------------------------------------

def suite_reduction(cfg: VerifyConfig) -> list[SuiteResult]:
    tt, pp = cell_centered_grid(cfg.grid, cfg.grid)
    basis = ordinary_basis(tt, pp)
    amp_dev, dens_dev = {}, {}
    exact = {
        1: 3.0 / (8.0 * math.pi) * np.sin(tt) ** 2,
        0: 3.0 / (4.0 * math.pi) * np.cos(tt) ** 2,
        -1: 3.0 / (8.0 * math.pi) * np.sin(tt) ** 2,
    }
    for m in amp.M_VALUES:
        h = generalized_harmonic(m, Z_AXIS)
        amp_dev[m] = float(np.max(np.abs(h(tt, pp) - basis[amp.index_of(m)])))
        dens_dev[m] = float(np.max(np.abs(density_field(h, tt, pp) - exact[m])))
    amp_detail = ", ".join(f"m={m:+d}: {_fmt(v)}" for m, v in amp_dev.items())
    coeffs = generalized_harmonic(-1, Z_AXIS).coeffs
    if amp_dev[-1] > cfg.tol_exact:
        amp_detail += f"; m=-1 coefficient row at z is {tuple(complex(c) for c in coeffs)}"
    return [
        _gate("reduction.harmonics", max(amp_dev.values()), cfg.tol_exact, f"{tt.size} grid points; {amp_detail}"),
        _gate(
            "reduction.densities",
            max(dens_dev.values()),
            cfg.tol_density,
            ", ".join(f"m={m:+d}: {_fmt(v)}" for m, v in dens_dev.items()),
        ),
    ]


def _random_pairs(rng, n):
    a = random_axes(rng, n)
    c = random_axes(rng, n)
    return list(zip(a, c))


def suite_unitarity(cfg: VerifyConfig) -> SuiteResult:
    rng = make_rng(cfg.seed, _STREAM["unitarity"])
    worst = max(amp.chi_matrix(a, c).unitarity_residual() for a, c in _random_pairs(rng, cfg.n_pairs))
    return _gate("unitarity", worst, cfg.tol_algebra, f"{cfg.n_pairs} random axis pairs")


def suite_hermiticity(cfg: VerifyConfig) -> SuiteResult:
    rng = make_rng(cfg.seed, _STREAM["hermiticity"])
    worst = 0.0
    for a, c in _random_pairs(rng, cfg.n_pairs):
        fwd = amp.chi_matrix(a, c).entries
        back = amp.chi_matrix(c, a).entries
        worst = max(worst, float(np.max(np.abs(fwd - back.conj().T))))
    return _gate("hermiticity", worst, cfg.tol_algebra, f"{cfg.n_pairs} random configurations, all 9 (m_i, m_f)")


def suite_orthonormality(cfg: VerifyConfig) -> SuiteResult:
    rng = make_rng(cfg.seed, _STREAM["orthonormality"])
    rule = sphere_rule(*cfg.quad)
    worst = 0.0
    for a in random_axes(rng, cfg.n_quad_axes):
        for kind in KINDS:
            g = gram_matrix([axis_variant(m, a, kind) for m in amp.M_VALUES], rule)
            worst = max(worst, float(np.max(np.abs(g - np.eye(3)))))
    return _gate(
        "orthonormality", worst, cfg.tol_algebra, f"{cfg.n_quad_axes} axes x 3 kinds, rule {cfg.quad}"
    )


def suite_normalization(cfg: VerifyConfig) -> SuiteResult:
    rng = make_rng(cfg.seed, _STREAM["normalization"])
    rule = sphere_rule(*cfg.quad)
    worst_int = worst_coef = 0.0
    for a in random_axes(rng, cfg.n_quad_axes):
        for kind in KINDS:
            for m in amp.M_VALUES:
                h = axis_variant(m, a, kind)
                worst_int = max(worst_int, abs(integrate_density(h, rule) - 1.0))
                worst_coef = max(worst_coef, h.norm_residual())
    return _gate(
        "normalization",
        max(worst_int, worst_coef),
        cfg.tol_algebra,
        f"integral {_fmt(worst_int)}, coefficient norm {_fmt(worst_coef)}",
    )


def suite_completeness(cfg: VerifyConfig) -> SuiteResult:
    rng = make_rng(cfg.seed, _STREAM["completeness"])
    tt, pp = cell_centered_grid(cfg.completeness_grid, cfg.completeness_grid)
    worst = worst_conj = 0.0
    for a in random_axes(rng, cfg.n_axes):
        for kind in KINDS:
            dens = [density_field(axis_variant(m, a, kind), tt, pp) for m in amp.M_VALUES]
            worst = max(worst, float(np.max(np.abs(sum(dens) - DENSITY_SUM))))
            worst_conj = max(worst_conj, float(np.max(np.abs(dens[0] - dens[2]))))
    return _gate(
        "completeness",
        max(worst, worst_conj),
        cfg.tol_algebra,
        f"{tt.size} points x {cfg.n_axes} axes x 3 kinds; sum {_fmt(worst)}, |P+1|-|P-1| {_fmt(worst_conj)}",
    )


def _eigen_points(rng, n, theta_min):
    theta = rng.uniform(theta_min, math.pi - theta_min, size=n)
    phi = rng.uniform(0.0, TWO_PI, size=n)
    return theta, phi


def suite_eigen(cfg: VerifyConfig) -> list[SuiteResult]:
    rng = make_rng(cfg.seed, _STREAM["eigen"])
    axes = random_axes(rng, cfg.n_axes)
    out = []
    worst = {k: 0.0 for k in KINDS}
    worst_l2 = 0.0
    try:
        for a in axes:
            for kind in KINDS:
                for m in amp.M_VALUES:
                    h = axis_variant(m, a, kind)
                    pts = _eigen_points(rng, cfg.n_points, cfg.theta_min)
                    r = eigen_residual(OP_FOR_KIND[kind], h, m, pts, cfg.step)
                    worst[kind] = max(worst[kind], r.max_abs)
                    r2 = eigen_residual("L2", h, 2.0, pts, cfg.step_l2)
                    worst_l2 = max(worst_l2, r2.max_abs)
    except ValueError as exc:
        msg = f"error: {exc}"
        for kind in KINDS:
            out.append(SuiteResult(f"eigen.{OP_FOR_KIND[kind].value}", FAIL, math.inf, cfg.tol_fd, msg))
        out.append(SuiteResult("eigen.L2", FAIL, math.inf, cfg.tol_l2, msg))
        return out
    desc = f"{cfg.n_axes} axes x 3 m x {cfg.n_points} points"
    for kind in KINDS:
        out.append(
            _gate(f"eigen.{OP_FOR_KIND[kind].value}", worst[kind], cfg.tol_fd, f"{desc}, step {cfg.step}")
        )
    out.append(_gate("eigen.L2", worst_l2, cfg.tol_l2, f"{desc} x 3 kinds, step {cfg.step_l2}"))
    return out


def convergence_ratios(cfg: VerifyConfig) -> list[float]:
    """Residual ratio r(h)/r(h/2) for every case whose r(h) sits well above the rounding floor.

    m = 0 cases are skipped automatically: their cubic truncation terms cancel and
    the residual is already at the floor.
    """
    rng = make_rng(cfg.seed, _STREAM["eigen.convergence"])
    h = cfg.convergence_step
    ratios = []
    for a in random_axes(rng, cfg.n_convergence_axes):
        for kind in KINDS:
            for m in amp.M_VALUES:
                harm = axis_variant(m, a, kind)
                pts = _eigen_points(rng, cfg.n_points, max(cfg.theta_min, THETA_MIN))
                r1 = eigen_residual(OP_FOR_KIND[kind], harm, m, pts, h).max_abs
                r2 = eigen_residual(OP_FOR_KIND[kind], harm, m, pts, h / 2).max_abs
                if r1 > 1e-10:
                    ratios.append(r1 / r2)
    return ratios


def suite_convergence(cfg: VerifyConfig) -> SuiteResult:
    ratios = convergence_ratios(cfg)
    lo, hi = cfg.convergence_band
    if not ratios:
        return SuiteResult("eigen.convergence", FAIL, math.inf, 0.5 * (hi - lo), "no case above rounding floor")
    mid = 0.5 * (lo + hi)
    dev = max(abs(r - mid) for r in ratios)
    return _gate(
        "eigen.convergence",
        dev,
        0.5 * (hi - lo),
        f"{len(ratios)} cases, ratio range [{min(ratios):.5f}, {max(ratios):.5f}], step {cfg.convergence_step} -> half",
    )


def suite_operator_frame(cfg: VerifyConfig) -> SuiteResult:
    rng = make_rng(cfg.seed, _STREAM["operator-frame"])
    n = cfg.grid
    theta = THETA_MIN + (np.arange(n) + 0.5) * (math.pi - 2 * THETA_MIN) / n
    phi = np.arange(n) * TWO_PI / n
    tt, pp = (x.ravel() for x in np.meshgrid(theta, phi, indexing="ij"))
    worst = 0.0
    for a in random_axes(rng, cfg.n_axes):
        for label in (OperatorLabel.LxP, OperatorLabel.LyP, OperatorLabel.LzP):
            ta, pa = build_operator(label, a).coefficients(tt, pp)
            tb, pb = assembled_operator(label, a).coefficients(tt, pp)
            worst = max(worst, float(np.max(np.abs(ta - tb))), float(np.max(np.abs(pa - pb))))
    return _gate(
        "operator-frame", worst, cfg.tol_frame, f"{n}x{n} coefficient grid in the pole band x {cfg.n_axes} axes"
    )


def suite_envelope(cfg: VerifyConfig) -> SuiteResult:
    rng = make_rng(cfg.seed, _STREAM["envelope"])
    tt, pp = cell_centered_grid(200, 200)
    top = 0.0
    for a in random_axes(rng, 10):
        for kind in KINDS:
            for m in amp.M_VALUES:
                top = max(top, float(np.max(density_field(axis_variant(m, a, kind), tt, pp))))
    return SuiteResult(
        "envelope",
        PASS if top <= ENVELOPE else FAIL,
        top,
        ENVELOPE,
        f"max density on 200x200 grid vs rejection bound {ENVELOPE!r}",
    )


# --- report-only suites ------------------------------------------------------

def suite_chain_law(cfg: VerifyConfig) -> SuiteResult:
    rng = make_rng(cfg.seed, _STREAM["chain-law"])
    worst = 0.0
    for _ in range(cfg.n_axes):
        a, b, c = random_axes(rng, 3)
        worst = max(worst, float(np.max(np.abs(amp.chain(a, b, c).entries - amp.chi_matrix(a, c).entries))))
    a, b, c = Axis(math.pi / 2, 0.0), Z_AXIS, Axis(math.pi / 4, math.pi / 3)
    fixed = float(np.max(np.abs(amp.chain(a, b, c).entries - amp.chi_matrix(a, c).entries)))
    return _report(
        "chain-law",
        max(worst, fixed),
        f"{cfg.n_axes} random triples max {_fmt(worst)}; (pi/2,0)->(0,0)->(pi/4,pi/3): {_fmt(fixed)}",
    )


def audit_printed_forms(cfg: VerifyConfig) -> dict[str, dict]:
    """Max deviation of every printed closed form from the coefficient construction.

    Also records, for each printed function, which normative m (same axis kind)
    it is closest to up to a global sign, and its eigen-residual under the
    matching primed operator with the labelled eigenvalue.
    """
    rng = make_rng(cfg.seed, _STREAM["audit"])
    axes = random_axes(rng, cfg.audit_axes)
    tt, pp = cell_centered_grid(cfg.grid, cfg.grid)
    pts = _eigen_points(rng, cfg.n_points, THETA_MIN)
    out = {}
    for (kind, m), label in PRINTED_LABELS.items():
        dev = eig = 0.0
        closest = {mm: 0.0 for mm in amp.M_VALUES}
        for a in axes:
            printed = printed_closed_form_field(m, a, kind)
            normative = axis_variant(m, a, kind)
            dev = max(dev, float(np.max(np.abs(printed(tt, pp) - normative(tt, pp)))))
            pv = printed(tt, pp)
            for mm in amp.M_VALUES:
                nv = axis_variant(mm, a, kind)(tt, pp)
                closest[mm] = max(closest[mm], float(min(np.max(np.abs(pv - nv)), np.max(np.abs(pv + nv)))))
            op = build_operator(OP_FOR_KIND[kind], a)
            lhs = apply_on(op, printed, *pts, cfg.step)
            eig = max(eig, float(np.max(np.abs(lhs - m * printed(*pts)))))
        out[label] = {"kind": kind.value, "m": m, "max_dev": dev, "eigen_residual": eig, "closest": closest}
    return out


def suite_audit(cfg: VerifyConfig) -> list[SuiteResult]:
    results = []
    for label, rec in audit_printed_forms(cfg).items():
        near = ", ".join(f"m={mm:+d}: {_fmt(v)}" for mm, v in rec["closest"].items())
        op = OP_FOR_KIND[AxisKind(rec["kind"])].value
        results.append(
            _report(
                f"audit.closed-form.{label}",
                rec["max_dev"],
                f"kind {rec['kind']}, m={rec['m']:+d}; {op} eigen-residual with labelled m: "
                f"{_fmt(rec['eigen_residual'])}; distance up to sign to normative {near}",
            )
        )

    rng = make_rng(cfg.seed, _STREAM["audit"] + 100)
    tt, pp = cell_centered_grid(cfg.grid, cfg.grid)
    dev = {m: 0.0 for m in amp.M_VALUES}
    sum_dev = 0.0
    for a in random_axes(rng, cfg.audit_axes):
        printed = {m: printed_density(m, a, tt, pp) for m in amp.M_VALUES}
        for m in amp.M_VALUES:
            dev[m] = max(dev[m], float(np.max(np.abs(printed[m] - density_field(generalized_harmonic(m, a), tt, pp)))))
        sum_dev = max(sum_dev, float(np.max(np.abs(sum(printed.values()) - DENSITY_SUM))))
    for m in amp.M_VALUES:
        results.append(_report(f"audit.density.m{m:+d}", dev[m], f"printed density m={m:+d} vs |Y|^2"))
    results.append(
        _report("audit.density-sum", sum_dev, "sum of printed densities minus 3/(4 pi)")
    )

    row_dev = {m: 0.0 for m in amp.M_VALUES}
    row_flip = {m: 0.0 for m in amp.M_VALUES}
    for a in random_axes(rng, cfg.n_axes):
        gen = amp.chi_matrix(a, Z_AXIS).entries
        zt = amp.chi_to_z_matrix(a).entries
        for m in amp.M_VALUES:
            i = amp.index_of(m)
            row_dev[m] = max(row_dev[m], float(np.max(np.abs(gen[i] - zt[i]))))
            row_flip[m] = max(row_flip[m], float(np.max(np.abs(gen[i] + zt[i]))))
    results.append(
        _report(
            "audit.specialization",
            max(row_dev.values()),
            "general amplitudes at c=z vs printed z-specialised table, per m_i row: "
            + ", ".join(f"m_i={m:+d}: {_fmt(row_dev[m])} (with sign flip {_fmt(row_flip[m])})" for m in amp.M_VALUES),
        )
    )
    results.append(
        _report(
            "audit.v-operator-symbol",
            0.0,
            "eigenvalue equation for the v-quantized harmonics is printed with L_x'; checked here against L_y'",
        )
    )
    return results


# --- driver ------------------------------------------------------------------

def run_suite(cfg: VerifyConfig | None = None) -> VerificationReport:
    cfg = cfg or VerifyConfig()
    report = VerificationReport(seed=cfg.seed, config=asdict(cfg))
    steps: list[Callable] = [
        suite_reduction,
        suite_unitarity,
        suite_hermiticity,
        suite_orthonormality,
        suite_normalization,
        suite_completeness,
        suite_eigen,
        suite_convergence,
        suite_operator_frame,
        suite_envelope,
        suite_chain_law,
        suite_audit,
    ]
    for step in steps:
        res = step(cfg)
        report.suites.extend(res if isinstance(res, list) else [res])
    return report


# --- sampling ----------------------------------------------------------------

@dataclass(frozen=True)
class SampleBatch:
    theta: np.ndarray
    phi: np.ndarray
    seed: int
    target: tuple[int, Axis, AxisKind]

    def __len__(self):
        return self.theta.size

    @property
    def points(self) -> list[SpherePoint]:
        return [SpherePoint(float(t), float(p)) for t, p in zip(self.theta, self.phi)]


def sample(h: GeneralizedHarmonic, n: int, seed: int) -> SampleBatch:
    """Rejection-sample n angular positions from |Y|^2.

    Proposal: uniform on the sphere; envelope 3/(4 pi) * 1.0001, which bounds
    every l=1 density by completeness.
    """
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n}")
    rng = make_rng(seed)
    thetas, phis = [], []
    got = 0
    while got < n:
        block = max(1024, 4 * (n - got))
        cos_t = 1.0 - 2.0 * rng.random(block)
        phi = TWO_PI * rng.random(block)
        u = rng.random(block)
        theta = np.arccos(cos_t)
        keep = u * ENVELOPE < density_field(h, theta, phi)
        thetas.append(theta[keep])
        phis.append(phi[keep])
        got += int(keep.sum())
    theta = np.concatenate(thetas)[:n]
    phi = np.concatenate(phis)[:n]
    return SampleBatch(theta, phi, int(seed), (h.m, h.axis, h.axis_kind))


def cos_theta_bins(batch: SampleBatch, h: GeneralizedHarmonic, bins: int = 20):
    """Observed and expected counts in equal-width cos(theta) bins."""
    edges = np.linspace(-1.0, 1.0, bins + 1)
    observed, _ = np.histogram(np.cos(batch.theta), bins=edges)
    expected = np.empty(bins)
    for k in range(bins):
        t_hi, t_lo = math.acos(edges[k]), math.acos(edges[k + 1])
        rule = patch_rule(t_lo, t_hi, 0.0, TWO_PI, n=16)
        expected[k] = len(batch) * rule.integrate(density_field(h, rule.theta, rule.phi)).real
    return observed, expected


def chi_square_2d(batch: SampleBatch, h: GeneralizedHarmonic, n_cos: int = 10, n_phi: int = 10) -> float:
    """Pearson statistic over an n_cos x n_phi grid of (cos theta, phi) bins."""
    c_edges = np.linspace(-1.0, 1.0, n_cos + 1)
    p_edges = np.linspace(0.0, TWO_PI, n_phi + 1)
    observed, _, _ = np.histogram2d(np.cos(batch.theta), batch.phi, bins=[c_edges, p_edges])
    stat = 0.0
    for i in range(n_cos):
        t_hi, t_lo = math.acos(c_edges[i]), math.acos(c_edges[i + 1])
        for j in range(n_phi):
            rule = patch_rule(t_lo, t_hi, p_edges[j], p_edges[j + 1], n=12)
            exp = len(batch) * rule.integrate(density_field(h, rule.theta, rule.phi)).real
            stat += (observed[i, j] - exp) ** 2 / exp
    return float(stat)
