"""Ellipticity analysis: defect frontiers, distortion constants, pair checks.

A sense-preserving map with jet (f_z, f_zbar) satisfies a two-parameter
ellipticity inequality ||D||^2 <= K J + K' pointwise.  For fixed K >= 1 the
smallest admissible K' is the sup of the defect ||D||^2 - K J, so sweeping K
traces a trade-off frontier.  This module estimates those suprema on polar
grids, converts between the (K, K') and (k1, k2) parameter forms, and runs
sampled checks of global distance inequalities (bi-Lipschitz growth with a
chord integral, domination by the analytic part, and the pointwise /
difference-quotient equivalence for concave majorants).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import gamma as _gamma

from .coefficients import MajorantSpec, extract_coeffs
from .grids import GridSpec, grid_supremum, polar_grid
from .maps import PlanarMap, SeriesMap
from .potential import GreenPotential
from .wirtinger import WirtingerJet, disk_distance, jet_metrics

__all__ = [
    "EllipticityParams",
    "CauchyPair",
    "FrontierReport",
    "HypothesisReport",
    "QcResult",
    "ConvergenceError",
    "pointwise_defect",
    "min_kprime",
    "qc_constant",
    "frontier",
    "lemma24_convert",
    "invert_map",
    "check_theorem11",
    "check_prop14",
    "lemma22_check",
    "beta_constant",
]


class ConvergenceError(RuntimeError):
    """An iterative solve failed to converge."""


# Margins within this of zero count as holding: shields exact-equality cases
# (identity maps, tight triangle inequalities) from last-bit roundoff.
_HOLD_TOL = 1e-12


@dataclass(frozen=True)
class EllipticityParams:
    """Distortion pair (K, K'): ||D||^2 <= K J + K' pointwise."""

    K: float
    Kprime: float

    def __post_init__(self):
        if self.K < 1.0:
            raise ValueError("K must be >= 1")
        if self.Kprime < 0.0:
            raise ValueError("Kprime must be >= 0")


@dataclass(frozen=True)
class CauchyPair:
    """Coefficient pair (k1, k2) for |f_zbar| <= k1 |f_z| + k2."""

    k1: float
    k2: float

    def __post_init__(self):
        if not 0.0 <= self.k1 < 1.0:
            raise ValueError("k1 must lie in [0, 1)")
        if self.k2 < 0.0:
            raise ValueError("k2 must be >= 0")


@dataclass(frozen=True)
class FrontierReport:
    """min-K' estimates along a sweep of K values."""

    samples: Tuple[Tuple[float, float], ...]
    witnesses: Tuple[complex, ...]
    sup_dilatation: float
    dilatation_unbounded: bool


@dataclass(frozen=True)
class HypothesisReport:
    """Outcome of a sampled inequality check."""

    condition_id: str
    holds_on_sample: bool
    worst_margin: float
    witness: Optional[tuple]
    derived_constants: dict
    notes: str = ""


@dataclass(frozen=True)
class QcResult:
    """Grid estimate of sup ||D|| / l(D), with degeneracy flags."""

    value: float
    flag: str  # "finite" | "unbounded" | "not-sense-preserving"
    witness: Optional[complex] = None
    shell_dilatations: Tuple[float, ...] = ()  # outermost shells, inner to outer


def pointwise_defect(jet: WirtingerJet, K: float) -> float:
    """||D||^2 - K J at one jet; positive part is the K' needed there."""
    if K < 1.0:
        raise ValueError("K must be >= 1")
    m = jet_metrics(jet)
    return m.op_norm**2 - K * m.jacobian


def _jet_arrays(m: PlanarMap, pts: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    _, dz, dzbar = m.jets(pts)
    return np.abs(dz), np.abs(dzbar)


def min_kprime(m: PlanarMap, K: float, grid: Optional[GridSpec] = None) -> Tuple[float, complex]:
    """Grid estimate of the least K' valid for this K, with its witness.

    The estimate is sup over the (refined) grid of max(0, ||D||^2 - K J);
    it is a lower bound for the true minimal K'.
    """
    if K < 1.0:
        raise ValueError("K must be >= 1")
    grid = grid or GridSpec()

    def defect(pts: np.ndarray) -> np.ndarray:
        adz, adb = _jet_arrays(m, pts)
        return (adz + adb) ** 2 - K * (adz**2 - adb**2)

    value, witness = grid_supremum(defect, grid)
    return max(0.0, value), witness


def _shell_dilatation_sups(adz: np.ndarray, adb: np.ndarray) -> np.ndarray:
    """Per-shell sup of |f_zbar| / |f_z| (rows = radii), nan-safe."""
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = adb / adz
    ratio = np.where(np.isfinite(ratio), ratio, -np.inf)
    return ratio.max(axis=1)


def qc_constant(m: PlanarMap, grid: Optional[GridSpec] = None) -> QcResult:
    """sup ||D|| / l(D) over the grid, flagged when the sup degenerates.

    flag "not-sense-preserving": some grid jet has J <= 0 (witness attached).
    flag "unbounded": the per-shell dilatation sup exceeds 1 - 1e-3 on the
    outermost shell and increases over the last three shells, so the ratio
    blows up toward the boundary and the reported value is a grid artifact.
    """
    grid = grid or GridSpec()
    pts = polar_grid(grid)
    adz, adb = _jet_arrays(m, pts)
    finite = np.isfinite(adz) & np.isfinite(adb)
    jac = adz**2 - adb**2
    degenerate = finite & (jac <= 0.0)
    if degenerate.any():
        idx = int(np.argmax(degenerate.ravel()))
        return QcResult(value=math.nan, flag="not-sense-preserving",
                        witness=complex(pts.ravel()[idx]))

    shell_sups = _shell_dilatation_sups(adz, adb)
    tail = shell_sups[-3:]
    unbounded = (
        len(tail) == 3
        and tail[-1] > 1.0 - 1e-3
        and bool(np.all(np.diff(tail) > 0.0))
    )

    def ratio_field(z: np.ndarray) -> np.ndarray:
        a, b = _jet_arrays(m, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = (a + b) / (a - b)
        return np.where((a > b), out, np.nan)

    value, witness = grid_supremum(ratio_field, grid)
    flag = "unbounded" if unbounded else "finite"
    return QcResult(value=value, flag=flag, witness=witness,
                    shell_dilatations=tuple(float(s) for s in shell_sups[-8:]))


def frontier(m: PlanarMap, Ks: Sequence[float],
             grid: Optional[GridSpec] = None) -> FrontierReport:
    """Sweep K over Ks (ascending) and estimate min K' at each.

    For a sense-preserving map the estimates are non-increasing in K.
    """
    if not Ks:
        raise ValueError("Ks must be nonempty")
    Ks = sorted(float(K) for K in Ks)
    if Ks[0] < 1.0:
        raise ValueError("every K must be >= 1")
    grid = grid or GridSpec()

    samples: List[Tuple[float, float]] = []
    witnesses: List[complex] = []
    for K in Ks:
        est, wit = min_kprime(m, K, grid)
        samples.append((K, est))
        witnesses.append(wit)

    pts = polar_grid(grid)
    adz, adb = _jet_arrays(m, pts)
    shell_sups = _shell_dilatation_sups(adz, adb)
    sup_dil = float(shell_sups.max()) if np.isfinite(shell_sups).any() else math.nan
    tail = shell_sups[-3:]
    unbounded = (
        len(tail) == 3
        and tail[-1] > 1.0 - 1e-3
        and bool(np.all(np.diff(tail) > 0.0))
    )
    return FrontierReport(samples=tuple(samples), witnesses=tuple(witnesses),
                          sup_dilatation=sup_dil, dilatation_unbounded=unbounded)


def lemma24_convert(params: Union[EllipticityParams, CauchyPair]):
    """Convert between the (K, K') and (k1, k2) parameter forms.

    The two directions are sharp separately but are not mutual inverses:
    (K, K') -> (k1, k2) -> (K2, K2') generally has K2 >= K.
    """
    if isinstance(params, EllipticityParams):
        K, Kp = params.K, params.Kprime
        return CauchyPair(k1=(K - 1.0) / (K + 1.0),
                          k2=math.sqrt(Kp) / (1.0 + K))
    if isinstance(params, CauchyPair):
        k1, k2 = params.k1, params.k2
        return EllipticityParams(K=2.0 * (1.0 + k1) / (1.0 - k1),
                                 Kprime=4.0 * k2**2 / (1.0 - k1) ** 2)
    raise TypeError("expected EllipticityParams or CauchyPair")


def invert_map(m: PlanarMap, w: complex, guess: complex,
               tol: float = 1e-12, max_iter: int = 100) -> complex:
    """Solve f(z) = w by damped Newton steps in the Wirtinger frame.

    The update inverts the real-linear differential: with residual
    r = f(z) - w and J = |f_z|^2 - |f_zbar|^2,

        z <- z - (conj(f_z) r - f_zbar conj(r)) / J.

    Steps are halved (at most 20 times) whenever the residual fails to
    decrease or the iterate leaves the disk.  Raises ConvergenceError on a
    degenerate Jacobian (J <= 1e-12) or after max_iter iterations.
    """
    z = complex(guess)
    if abs(z) >= 1.0:
        raise ValueError("guess must lie in the open unit disk")
    r = m.value(z) - w
    for _ in range(max_iter):
        if abs(r) <= tol:
            return z
        jet = m.jet(z)
        jac = abs(jet.dz) ** 2 - abs(jet.dzbar) ** 2
        if jac <= 1e-12:
            raise ConvergenceError(f"degenerate Jacobian {jac:.3e} at z = {z}")
        step = (jet.dz.conjugate() * r - jet.dzbar * r.conjugate()) / jac
        lam = 1.0
        for _ in range(20):
            cand = z - lam * step
            if abs(cand) < 1.0:
                r_cand = m.value(cand) - w
                if abs(r_cand) < abs(r):
                    z, r = cand, r_cand
                    break
            lam *= 0.5
        else:
            raise ConvergenceError(f"stalled at z = {z} with residual {abs(r):.3e}")
    raise ConvergenceError(f"no convergence after {max_iter} iterations "
                           f"(residual {abs(r):.3e})")


def _as_majorant(omega) -> MajorantSpec:
    if isinstance(omega, MajorantSpec):
        return omega
    return MajorantSpec(omega)


def _check_univalence_on_sample(m: PlanarMap, points: Sequence[complex]) -> None:
    pts = np.array(sorted(set(map(complex, points)), key=lambda z: (z.real, z.imag)))
    vals = m.values(pts)
    n = len(pts)
    if n < 2:
        return
    dz = np.abs(pts[:, None] - pts[None, :])
    dv = np.abs(vals[:, None] - vals[None, :])
    clash = (dz > 1e-10) & (dv < 1e-10)
    if clash.any():
        i, j = np.argwhere(clash)[0]
        raise ValueError(
            f"map is not injective on the sample: f({pts[i]}) ~ f({pts[j]})"
        )


def check_theorem11(
    m: PlanarMap,
    omega,
    alpha: float,
    C1: float,
    C2: float,
    pairs: Sequence[Tuple[complex, complex]],
    line_nodes: int = 129,
) -> HypothesisReport:
    """Sampled check of the two-sided growth bound plus the chord integral.

    For each pair (z1, z2) with chord ratio q = |f(z1)-f(z2)| / |z1-z2| and
    d(z) = 1 - |z|, verifies

        omega(((1+|z1|)(1+|z2|))^{(1-alpha)/2}) / C1
            <= q <= C1 / omega((d(z1) d(z2))^{(1-alpha)/2}),

    and integrates 1 / omega(d(Phi(t))^{1-alpha}) along the preimage
    Phi(t) = f^{-1}((1-t) f(z1) + t f(z2)) of the image segment (composite
    Simpson, Newton inversion marched with warm starts), requiring the
    integral to stay <= C2.  The worst margin over all clauses and pairs is
    reported; pairs whose inversion fails are counted as indeterminate.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    if C1 <= 0.0 or C2 <= 0.0:
        raise ValueError("C1 and C2 must be positive")
    if not pairs:
        raise ValueError("pairs must be nonempty")
    if line_nodes < 3:
        raise ValueError("line_nodes must be >= 3")
    if line_nodes % 2 == 0:
        line_nodes += 1  # composite Simpson needs an odd node count
    spec = _as_majorant(omega)
    expo = (1.0 - alpha) / 2.0

    flat = [z for pair in pairs for z in pair]
    for z in flat:
        disk_distance(z)
    _check_univalence_on_sample(m, flat)

    worst = math.inf
    witness: Optional[tuple] = None
    indeterminate = 0
    max_integral = -math.inf
    ts = np.linspace(0.0, 1.0, line_nodes)
    simpson_w = np.ones(line_nodes)
    simpson_w[1:-1:2] = 4.0
    simpson_w[2:-1:2] = 2.0
    simpson_w /= 3.0 * (line_nodes - 1)

    for z1, z2 in pairs:
        z1, z2 = complex(z1), complex(z2)
        if abs(z1 - z2) < 1e-14:
            raise ValueError("pairs must consist of distinct points")
        w1, w2 = m.value(z1), m.value(z2)
        ratio = abs(w1 - w2) / abs(z1 - z2)
        lower = spec.eval(((1.0 + abs(z1)) * (1.0 + abs(z2))) ** expo) / C1
        upper = C1 / spec.eval((disk_distance(z1) * disk_distance(z2)) ** expo)
        margins = [ratio - lower, upper - ratio]

        try:
            guess = z1
            integrand = np.empty(line_nodes)
            for i, t in enumerate(ts):
                target = (1.0 - t) * w1 + t * w2
                guess = invert_map(m, target, guess, tol=1e-10)
                integrand[i] = 1.0 / spec.eval(disk_distance(guess) ** (1.0 - alpha))
            integral = float(simpson_w @ integrand)
            max_integral = max(max_integral, integral)
            margins.append(C2 - integral)
        except ConvergenceError:
            indeterminate += 1

        pair_margin = min(margins)
        if pair_margin < worst:
            worst = pair_margin
            witness = (z1, z2)

    notes = ""
    if indeterminate:
        notes = (f"{indeterminate} of {len(pairs)} chord integrals skipped "
                 "(inversion did not converge)")
    derived = {
        "alpha": alpha,
        "C1": C1,
        "C2": C2,
        "max_chord_integral": max_integral if max_integral > -math.inf else math.nan,
    }
    return HypothesisReport(
        condition_id="growth-and-chord-integral",
        holds_on_sample=bool(worst >= -_HOLD_TOL),
        worst_margin=worst,
        witness=witness,
        derived_constants=derived,
        notes=notes,
    )


def _default_prop14_pairs(m: PlanarMap, h1: PlanarMap,
                          count: int = 400) -> List[Tuple[complex, complex]]:
    """Seeded uniform pairs plus short chords near the grid argmax of
    ||D_f|| / |h1'|, oriented along the direction of maximal stretch."""
    rng = np.random.default_rng(20250814)
    r = 0.95 * np.sqrt(rng.uniform(size=2 * count))
    t = rng.uniform(0.0, 2.0 * np.pi, size=2 * count)
    pts = r * np.exp(1j * t)
    pairs = [(complex(pts[2 * i]), complex(pts[2 * i + 1])) for i in range(count)]

    grid = GridSpec(radial_count=64, angular_count=128, max_radius=0.999,
                    refine_rounds=2)

    def stretch_ratio(z: np.ndarray) -> np.ndarray:
        _, dz, db = m.jets(z)
        _, h1dz, _ = h1.jets(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = (np.abs(dz) + np.abs(db)) / np.abs(h1dz)
        return np.where(np.isfinite(out), out, np.nan)

    try:
        _, zstar = grid_supremum(stretch_ratio, grid)
    except RuntimeError:
        return pairs
    jet = m.jet(zstar)
    if abs(jet.dz) > 0.0:
        # Direction of maximal stretch: arg(dz e^{it}) = arg(dzbar e^{-it}).
        db_angle = np.angle(complex(jet.dzbar)) if jet.dzbar != 0 else 0.0
        theta = 0.5 * (db_angle - np.angle(complex(jet.dz)))
        direction = complex(np.exp(1j * theta))
        for delta in (1e-2, 1e-3, 1e-4):
            a, b = zstar - delta * direction, zstar + delta * direction
            if abs(a) < 1.0 and abs(b) < 1.0 and abs(a - b) > 1e-14:
                pairs.append((a, b))
    return pairs


def _analytic_part_and_source(m: PlanarMap):
    """(h1, ||g||_inf, extracted?) for f = h1 + conj(h2) - G[g]."""
    parts = m.analytic_parts()
    if parts is not None:
        h1 = parts[0]
        expr = m.laplacian_expr
        if expr is None or expr.strip() in {"0", "0.0", "(0)"}:
            return h1, 0.0, False
        pot = GreenPotential(expr)
        return h1, pot.source_grid_sup(), False

    expr = m.laplacian_expr
    if expr is None:
        # Last resort: a radius-consistent coefficient table certifies the
        # map as harmonic within tolerance, so h1 is its analytic half.
        table = extract_coeffs(m, count=32)
        if not table.valid:
            raise ValueError(
                "no analytic-part decomposition available: the map declares "
                "neither analytic_parts() nor a Laplacian, and its circle "
                f"coefficients disagree across radii by {table.disagreement:.3e}"
            )
        return SeriesMap(table.a, label="extracted-analytic-part"), 0.0, True

    pot = GreenPotential(expr)

    class _Harmonized:
        def values(self, z):
            return m.values(z) + pot.values(z)

    table = extract_coeffs(_Harmonized(), count=32)
    if not table.valid:
        raise ValueError(
            "analytic-part extraction failed: circle coefficients disagree "
            f"across radii by {table.disagreement:.3e}"
        )
    return SeriesMap(table.a, label="extracted-analytic-part"), pot.source_grid_sup(), True


def check_prop14(m: PlanarMap, C3: float,
                 pairs: Optional[Sequence[Tuple[complex, complex]]] = None
                 ) -> HypothesisReport:
    """Sampled check of |f(z1) - f(z2)| <= C3 |h1(z1) - h1(z2)|.

    h1 is the analytic part of f + G[Delta f]: taken from the map's own
    decomposition when declared, otherwise extracted from circle Fourier
    coefficients after adding the Green potential of the declared source.
    When pairs is omitted, 400 seeded uniform pairs are used, augmented
    with short chords near the grid maximizer of ||D_f|| / |h1'|.  On
    success the report carries the induced coefficient pair
    k1 = C3 - 1, k2 = (C3 / 3) ||Delta f||_inf and its (K, K') image.

    When h1 comes from coefficient extraction, the hold tolerance widens to
    1e-9 per unit chord: short chords divide the absolute coefficient noise
    (~1e-15) by tiny |z1 - z2|, so exact-equality cases would otherwise flip
    on roundoff.  Genuine violations are orders of magnitude larger.
    """
    if not 1.0 <= C3 < 2.0:
        raise ValueError("C3 must lie in [1, 2)")
    h1, g_sup, extracted = _analytic_part_and_source(m)
    if pairs is None:
        pairs = _default_prop14_pairs(m, h1)
    if not pairs:
        raise ValueError("pairs must be nonempty")

    worst = math.inf
    witness: Optional[tuple] = None
    for z1, z2 in pairs:
        z1, z2 = complex(z1), complex(z2)
        disk_distance(z1)
        disk_distance(z2)
        if abs(z1 - z2) < 1e-14:
            continue
        lhs = abs(m.value(z1) - m.value(z2))
        rhs = C3 * abs(h1.value(z1) - h1.value(z2))
        scale = max(abs(z1 - z2), 1e-30)
        margin = (rhs - lhs) / scale  # per unit chord, comparable across deltas
        if margin < worst:
            worst = margin
            witness = (z1, z2)
    if witness is None:
        raise ValueError("pairs must contain at least one distinct pair")

    hold_tol = 1e-9 if extracted else _HOLD_TOL
    holds = bool(worst >= -hold_tol)
    derived = {"C3": C3, "source_sup": g_sup}
    if holds:
        k1 = C3 - 1.0
        k2 = (C3 / 3.0) * g_sup
        derived["cauchy_pair"] = CauchyPair(k1=k1, k2=k2)
        derived["ellipticity_params"] = lemma24_convert(CauchyPair(k1=k1, k2=k2))
    return HypothesisReport(
        condition_id="analytic-part-domination",
        holds_on_sample=holds,
        worst_margin=worst,
        witness=witness,
        derived_constants=derived,
    )


def lemma22_check(
    m: PlanarMap,
    omega,
    alpha: float,
    C4: float,
    C5: float,
    pairs: Sequence[Tuple[complex, complex]],
    grid: Optional[GridSpec] = None,
) -> HypothesisReport:
    """Sampled equivalence of difference-quotient and pointwise bounds.

    Clause (a), on pairs: the chord ratio is squeezed between
    omega(((1+|z1|)(1+|z2|))^{(1-alpha)/2}) / C4 and
    C4 / omega((d(z1) d(z2))^{(1-alpha)/2}).
    Clause (b), on the grid: l(D) >= omega((1+|z|)^{1-alpha}) / C5 and
    ||D|| <= C5 / omega(d(z)^{1-alpha}).
    The derived constant beta(alpha) * C5 converts any (b)-type bound into
    an (a)-type one, with beta = Gamma((1+alpha)/2)^2 / Gamma(1+alpha).
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    if C4 <= 0.0 or C5 <= 0.0:
        raise ValueError("C4 and C5 must be positive")
    if not pairs:
        raise ValueError("pairs must be nonempty")
    spec = _as_majorant(omega)
    grid = grid or GridSpec()
    expo = (1.0 - alpha) / 2.0

    worst_a = math.inf
    witness_a = None
    for z1, z2 in pairs:
        z1, z2 = complex(z1), complex(z2)
        disk_distance(z1)
        disk_distance(z2)
        if abs(z1 - z2) < 1e-14:
            raise ValueError("pairs must consist of distinct points")
        ratio = abs(m.value(z1) - m.value(z2)) / abs(z1 - z2)
        lower = spec.eval(((1.0 + abs(z1)) * (1.0 + abs(z2))) ** expo) / C4
        upper = C4 / spec.eval((disk_distance(z1) * disk_distance(z2)) ** expo)
        margin = min(ratio - lower, upper - ratio)
        if margin < worst_a:
            worst_a, witness_a = margin, (z1, z2)

    pts = polar_grid(grid)
    _, dz, db = m.jets(pts)
    adz, adb = np.abs(dz), np.abs(db)
    op = adz + adb
    low = np.abs(adz - adb)
    d = 1.0 - np.abs(pts)
    lower_b = spec.eval((1.0 + np.abs(pts)) ** (1.0 - alpha)) / C5
    upper_b = C5 / spec.eval(d ** (1.0 - alpha))
    margins_b = np.minimum(low - lower_b, upper_b - op)
    margins_b = np.where(np.isfinite(margins_b), margins_b, np.inf)
    idx = int(np.argmin(margins_b.ravel()))
    worst_b = float(margins_b.ravel()[idx])
    witness_b = complex(pts.ravel()[idx])

    worst = min(worst_a, worst_b)
    witness = witness_a if worst_a <= worst_b else (witness_b,)
    derived = {
        "alpha": alpha,
        "C4": C4,
        "C5": C5,
        "pair_margin": worst_a,
        "pointwise_margin": worst_b,
        "pointwise_to_pair_constant": beta_constant(alpha) * C5,
    }
    return HypothesisReport(
        condition_id="pointwise-vs-chord-equivalence",
        holds_on_sample=bool(worst >= -_HOLD_TOL),
        worst_margin=worst,
        witness=witness,
        derived_constants=derived,
    )


def beta_constant(alpha: float) -> float:
    """Gamma((1+alpha)/2)^2 / Gamma(1+alpha); equals 1 at alpha=1, pi at 0."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    return float(_gamma((1.0 + alpha) / 2.0) ** 2 / _gamma(1.0 + alpha))
