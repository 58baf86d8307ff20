"""Experiment runners: almost-conservation drift sweeps, commutator decay,
orbital stability exit times, Sobolev growth traces, and the rescaling /
parameter-selection pipeline.

Every runner is deterministic given its configuration (seeded noise, fixed
step counts, no wall-clock input) and writes CSV traces plus a JSON-lines
summary through the persistence module.  The smoothing multiplier is applied
diagnostically only: one trajectory is evolved and all cutoffs are evaluated
at sampling times.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .. import backend
from ..diagnostics import DiagnosticsRecord
from ..functionals import (
    EquationParams,
    _kinetic_energy,
    _potential_energy,
    hamiltonian,
    mass,
    nonlinearity,
    sobolev_norm,
)
from ..grid import BoxGrid, SpectralField, field_from_coefficients
from ..ground_state import GroundStateProfile, embed, shoot
from ..integrator import EvolutionError, SolverConfig, evolve, tail_fraction
from ..operators import MultiplierSpec, _multiplier_table
from ..orbital import dist_to_cylinder
from .config import ExperimentConfig
from .persistence import write_records_csv, write_summary_jsonl


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float


def fit_loglog(points) -> FitResult:
    """Ordinary least squares on (log x, log y); requires >= 3 positive points."""
    pts = list(points)
    if len(pts) < 3:
        raise ValueError(f"log-log fit needs at least 3 points, got {len(pts)}")
    offenders = [(x, y) for x, y in pts if not (x > 0 and y > 0)]
    if offenders:
        raise ValueError(f"log-log fit requires positive coordinates; offenders: {offenders}")
    lx = np.log([x for x, _ in pts])
    ly = np.log([y for _, y in pts])
    slope, intercept = np.polyfit(lx, ly, 1)
    predicted = slope * lx + intercept
    ss_res = float(np.sum((ly - predicted) ** 2))
    ss_tot = float(np.sum((ly - np.mean(ly)) ** 2))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return FitResult(float(slope), float(intercept), r_squared)


def rescale(field: SpectralField, lam: float, params: EquationParams) -> SpectralField:
    """Scaling map u -> lam^(-2/(p-1)) u(x / lam) on a box enlarged by lam.

    With the output grid's box length scaled by lam the samples just pick up
    the amplitude factor, so the homogeneous-Sobolev identities
    ||u_lam||_{Hdot^s} = lam^(s_c - s) ||u||_{Hdot^s} hold exactly.
    """
    if lam < 1.0:
        raise ValueError(f"scaling parameter must be >= 1, got {lam}")
    grid = field.grid
    out_grid = BoxGrid(grid.dim, grid.box_length * lam, grid.points_per_axis)
    amplitude = lam ** (-2.0 / (params.power - 1.0))
    return SpectralField(out_grid, field.to_physical().samples * amplitude, "physical")


def perturbation(
    seed: int, band: tuple[float, float], s: float, sigma: float, grid: BoxGrid
) -> SpectralField:
    """Seeded complex Gaussian spectrum on lo <= |xi| <= hi, normalized so the
    H^s norm equals sigma exactly."""
    lo, hi = band
    norm = grid.frequency_norm()
    mask = (norm >= lo) & (norm <= hi)
    count = int(np.sum(mask))
    if count == 0:
        raise ValueError(f"frequency band [{lo}, {hi}] contains no lattice points")
    rng = np.random.default_rng(seed)
    coeff = np.zeros(grid.shape, dtype=np.complex128)
    coeff[mask] = rng.standard_normal(count) + 1j * rng.standard_normal(count)
    hat = SpectralField(grid, coeff, "frequency")
    current = sobolev_norm(hat, s)
    return field_from_coefficients(grid, coeff * (sigma / current))


def rough_field(
    seed: int, band: tuple[float, float], s: float, sigma: float, grid: BoxGrid
) -> SpectralField:
    """Seeded field that is rough at exactly regularity s: Gaussian spectrum
    shaped like <2 pi xi>^-(s + 1/2 + 0.05) (barely summable H^s tail, flat
    H^s content across dyadic blocks), normalized so the H^s norm is sigma.

    Distinct from `perturbation`, whose flat band spectrum models localized
    high-frequency noise; this models generic data at regularity s.
    """
    lo, hi = band
    norm = grid.frequency_norm()
    mask = (norm >= lo) & (norm <= hi) & (norm > 0)
    count = int(np.sum(mask))
    if count == 0:
        raise ValueError(f"frequency band [{lo}, {hi}] contains no lattice points")
    rng = np.random.default_rng(seed)
    coeff = np.zeros(grid.shape, dtype=np.complex128)
    shape = (1.0 + (2.0 * np.pi * norm[mask]) ** 2) ** (-(s + 0.55) / 2.0)
    coeff[mask] = shape * (rng.standard_normal(count) + 1j * rng.standard_normal(count))
    hat = SpectralField(grid, coeff, "frequency")
    current = sobolev_norm(hat, s)
    return field_from_coefficients(grid, coeff * (sigma / current))


def choose_parameters(
    t_target: float, s: float, params: EquationParams, decay_exponent: float
) -> dict:
    """Smallest (cutoff, lam) on a geometric menu with small smoothed energy,
    cutoff^(2(1-s)) lam^(2(s_c - s)) <= 0.1, and a drift horizon covering the
    target, cutoff^decay_exponent / lam^2 >= 10 t_target."""
    s_c = params.critical_regularity
    for cutoff in (8.0 * 2.0**k for k in range(14)):
        for lam in (2.0 * 2.0**j for j in range(10)):
            small_energy = cutoff ** (2.0 * (1.0 - s)) * lam ** (2.0 * (s_c - s)) <= 0.1
            horizon = cutoff**decay_exponent / lam**2 >= 10.0 * t_target
            if small_energy and horizon:
                return {"feasible": True, "cutoff": cutoff, "lam": lam}
    return {
        "feasible": False,
        "reason": "menu exhausted: no (cutoff, lam) satisfies both constraints",
    }


def _smoothed_diagnostics(
    field: SpectralField,
    grid: BoxGrid,
    params: EquationParams,
    spec: MultiplierSpec | None,
    with_commutator: bool,
) -> tuple[float, float, float | None]:
    """H, L of the multiplier-filtered field and optionally the commutator
    residual, sharing the sample's cached spectrum."""
    volume = grid.box_length**grid.dim
    hat = field.to_frequency().samples
    if spec is None:
        h = hamiltonian(field, params)
        m = mass(field)
        return h, 2.0 * h + m, None
    table = _multiplier_table(grid, spec)
    smoothed_hat = hat * table
    smoothed = SpectralField(grid, smoothed_hat, "frequency").to_physical()
    kinetic = _kinetic_energy(smoothed_hat, grid)
    potential = _potential_energy(smoothed.samples, grid, params)
    h = kinetic + potential
    m = backend.abs_power_sum(smoothed_hat, 2.0) / volume
    commutator = None
    if with_commutator:
        f_u_hat = nonlinearity(field, params).to_frequency().samples
        f_s_hat = nonlinearity(smoothed, params).to_frequency().samples
        diff = table * f_u_hat - f_s_hat
        commutator = float(
            np.sqrt(np.sum(diff.real**2 + diff.imag**2) / volume)
        )
    return h, 2.0 * h + m, commutator


def _basic_columns(field: SpectralField, params: EquationParams) -> tuple[float, float, float]:
    h = hamiltonian(field, params)
    m = mass(field)
    tail = tail_fraction(field.to_frequency().samples, field.grid)
    return m, h, tail


def run_almost_conservation(config: ExperimentConfig, out_dir) -> dict:
    """One evolution of rough seeded data; smoothed-energy drift for every
    cutoff in the sweep, commutator residuals along the trajectory, and the
    log-log drift fit."""
    params = config.params
    if params.sign == "focusing" and not params.l2_subcritical:
        raise ValueError("focusing drift runs require the mass-subcritical regime")
    grid = config.grid
    band = (0.0, grid.nyquist / 2.0)
    amplitude = config.sigma_list[0]
    data = rough_field(config.seed, band, config.s, amplitude, grid)
    specs = [(cutoff, MultiplierSpec(config.s, cutoff)) for cutoff in config.cutoff_list]
    solver = SolverConfig(
        dt=config.solver.dt,
        t_end=config.solver.t_end,
        sample_every=config.solver.sample_every,
        tail_fraction_max=1e-4,
        localization_min=0.01,
    )

    records_by_cutoff: dict[float, list[DiagnosticsRecord]] = {c: [] for c, _ in specs}

    def observer(t: float, field: SpectralField) -> None:
        m, h, tail = _basic_columns(field, params)
        sob = sobolev_norm(field, config.s)
        for cutoff, spec in specs:
            h_s, l_s, comm = _smoothed_diagnostics(field, grid, params, spec, True)
            records_by_cutoff[cutoff].append(
                DiagnosticsRecord(
                    t=t,
                    mass=m,
                    hamiltonian=h,
                    lyapunov=2.0 * h + m,
                    hamiltonian_smoothed=h_s,
                    lyapunov_smoothed=l_s,
                    sobolev_s=sob,
                    commutator_residual=comm,
                    tail_fraction=tail,
                )
            )

    manifest = config.manifest()
    out_dir = Path(out_dir)
    aborted = None
    try:
        evolve(data, params, solver, observers=[observer])
    except EvolutionError as err:
        aborted = err.reason

    entries = []
    drift_points_h = []
    drift_points_l = []
    for cutoff, _ in specs:
        rows = records_by_cutoff[cutoff]
        extra = {"experiment": "almost-conservation", "N": cutoff, "band_hi": band[1]}
        if aborted:
            extra["aborted"] = aborted
        write_records_csv(out_dir / f"drift_N{cutoff:g}.csv", rows, manifest, extra)
        if not rows:
            continue
        h0 = rows[0].hamiltonian_smoothed
        l0 = rows[0].lyapunov_smoothed
        drift_h = max(abs(r.hamiltonian_smoothed - h0) for r in rows)
        drift_l = max(abs(r.lyapunov_smoothed - l0) for r in rows)
        comm0 = rows[0].commutator_residual
        entries.append(
            {
                "kind": "drift",
                "N": cutoff,
                "drift_hamiltonian": drift_h,
                "drift_lyapunov": drift_l,
                "commutator_initial": comm0,
            }
        )
        drift_points_h.append((cutoff, drift_h))
        drift_points_l.append((cutoff, drift_l))

    summary: dict = {"entries": entries, "aborted": aborted}
    for name, pts in (("hamiltonian", drift_points_h), ("lyapunov", drift_points_l)):
        if len(pts) >= 3 and all(y > 0 for _, y in pts):
            fit = fit_loglog(pts)
            entry = {
                "kind": "fit",
                "quantity": f"{name}_smoothed_drift",
                "slope": fit.slope,
                "intercept": fit.intercept,
                "r_squared": fit.r_squared,
                "decay_exponent": -fit.slope,
            }
            entries.append(entry)
            summary[f"fit_{name}"] = entry
    write_summary_jsonl(out_dir / "summary.jsonl", entries, manifest)
    if aborted:
        raise EvolutionError(f"almost-conservation run aborted: {aborted}", -1.0, [])
    return summary


def run_growth(config: ExperimentConfig, out_dir) -> dict:
    """Sobolev-norm trace of a defocusing run with the running-maximum slope."""
    params = config.params
    if params.sign != "defocusing":
        raise ValueError("growth runs are defined for the defocusing sign")
    grid = config.grid
    band = (0.0, grid.nyquist / 2.0)
    data = rough_field(config.seed, band, config.s, config.sigma_list[0], grid)
    spec = MultiplierSpec(config.s, config.cutoff_list[0])
    solver = SolverConfig(
        dt=config.solver.dt,
        t_end=config.solver.t_end,
        sample_every=config.solver.sample_every,
        tail_fraction_max=1e-4,
        localization_min=0.01,
    )
    records: list[DiagnosticsRecord] = []

    def observer(t: float, field: SpectralField) -> None:
        m, h, tail = _basic_columns(field, params)
        h_s, l_s, _ = _smoothed_diagnostics(field, grid, params, spec, False)
        records.append(
            DiagnosticsRecord(
                t=t,
                mass=m,
                hamiltonian=h,
                lyapunov=2.0 * h + m,
                hamiltonian_smoothed=h_s,
                lyapunov_smoothed=l_s,
                sobolev_s=sobolev_norm(field, config.s),
                tail_fraction=tail,
            )
        )

    manifest = config.manifest()
    out_dir = Path(out_dir)
    aborted = None
    try:
        evolve(data, params, solver, observers=[observer])
    except EvolutionError as err:
        aborted = err.reason
    extra = {"experiment": "growth"}
    if aborted:
        extra["aborted"] = aborted
    write_records_csv(out_dir / "growth.csv", records, manifest, extra)

    entries = []
    running = []
    peak = 0.0
    for row in records:
        peak = max(peak, row.sobolev_s)
        running.append((1.0 + row.t, peak))
    slope_entry = None
    if len(running) >= 3:
        fit = fit_loglog(running)
        slope_entry = {
            "kind": "fit",
            "quantity": "sobolev_running_max",
            "slope": fit.slope,
            "intercept": fit.intercept,
            "r_squared": fit.r_squared,
        }
        entries.append(slope_entry)
    write_summary_jsonl(out_dir / "summary.jsonl", entries, manifest)
    if aborted:
        raise EvolutionError(f"growth run aborted: {aborted}", -1.0, [])
    return {"entries": entries, "fit": slope_entry, "aborted": aborted}


def run_stability(config: ExperimentConfig, out_dir, profile: GroundStateProfile | None = None) -> dict:
    """Perturbation sweep around an embedded ground state: cylinder-distance
    traces, Sobolev exit times, and the exit-time fit against 1/sigma.

    One unit-norm noise direction (from the config seed) is scaled by each
    sigma, so the sweep isolates the size dependence from seed scatter.  The
    exit ball is anchored per run at the initial norm: a run exits when
    ||u(t)||_{H^s} first exceeds ||u0||_{H^s} + radius_R; with radius_R <= 0
    the allowed excess defaults to ||u0||_{H^s} itself (exit at twice the
    initial norm).
    """
    params = config.params
    if params.sign != "focusing" or not params.l2_subcritical:
        raise ValueError("stability runs require focusing mass-subcritical parameters")
    grid = config.grid
    if profile is None:
        profile = shoot(params)
    center = np.full(grid.dim, grid.box_length / 2.0)
    base = embed(profile, grid, theta=0.0, shift=center)
    band = (grid.nyquist / 8.0, grid.nyquist / 3.0)
    unit_noise = perturbation(config.seed, band, config.s, 1.0, grid)
    solver = SolverConfig(
        dt=config.solver.dt,
        t_end=config.solver.t_end,
        sample_every=config.solver.sample_every,
        tail_fraction_max=1e-4,
        localization_min=0.5,
    )
    manifest = config.manifest()
    out_dir = Path(out_dir)
    entries = []
    exit_points = []
    control_max_dist = None

    for sigma in config.sigma_list:
        if sigma > 0:
            u0 = SpectralField(grid, base.samples + sigma * unit_noise.samples, "physical")
            spec = MultiplierSpec(config.s, max(1.0, sigma ** (-config.a)))
        else:
            u0 = base.copy()
            spec = None
        start_norm = sobolev_norm(u0, config.s)
        radius = start_norm + (config.radius_R if config.radius_R > 0 else start_norm)
        records: list[DiagnosticsRecord] = []

        def observer(t: float, field: SpectralField) -> None:
            m, h, tail = _basic_columns(field, params)
            h_s, l_s, _ = _smoothed_diagnostics(field, grid, params, spec, False)
            fit = dist_to_cylinder(field, profile, config.s, grid)
            records.append(
                DiagnosticsRecord(
                    t=t,
                    mass=m,
                    hamiltonian=h,
                    lyapunov=2.0 * h + m,
                    hamiltonian_smoothed=h_s,
                    lyapunov_smoothed=l_s,
                    sobolev_s=sobolev_norm(field, config.s),
                    cylinder_distance=fit.distance,
                    tail_fraction=tail,
                )
            )

        aborted = None
        try:
            evolve(u0, params, solver, observers=[observer])
        except EvolutionError as err:
            aborted = err.reason
        exit_time = next((r.t for r in records if r.sobolev_s > radius), None)
        max_dist = max((r.cylinder_distance for r in records), default=None)
        extra = {
            "experiment": "stability",
            "sigma": sigma,
            "radius": radius,
            "N": None if spec is None else spec.cutoff,
            "band_lo": band[0],
            "band_hi": band[1],
        }
        if aborted:
            extra["aborted"] = aborted
        write_records_csv(out_dir / f"stability_sigma{sigma:g}.csv", records, manifest, extra)
        entry = {
            "kind": "exit",
            "sigma": sigma,
            "exit_time": exit_time,
            "radius": radius,
            "max_distance": max_dist,
        }
        if aborted:
            entry["aborted"] = aborted
        entries.append(entry)
        if sigma > 0 and exit_time is not None:
            exit_points.append((1.0 / sigma, exit_time))
        if sigma == 0:
            control_max_dist = max_dist

    fit_entry = None
    positive = [(x, y) for x, y in exit_points if y > 0]
    if len(positive) >= 3:
        fit = fit_loglog(positive)
        fit_entry = {
            "kind": "fit",
            "quantity": "exit_time",
            "slope": fit.slope,
            "intercept": fit.intercept,
            "r_squared": fit.r_squared,
        }
        entries.append(fit_entry)
    write_summary_jsonl(out_dir / "summary.jsonl", entries, manifest)
    return {
        "entries": entries,
        "fit": fit_entry,
        "control_max_distance": control_max_dist,
    }


def run_rescaling_report(config: ExperimentConfig, out_dir, decay_exponent: float = 1.0) -> dict:
    """Scaling-identity verification sweep plus the (cutoff, lam) selection."""
    params = config.params
    grid = config.grid
    data = perturbation(config.seed, (0.0, grid.nyquist / 4.0), config.s, 1.0, grid)
    entries = []
    for k in (1, 2, 3):
        lam = config.lam**k
        scaled = rescale(data, lam, params)
        ratio_hs = sobolev_norm(scaled, config.s, "homogeneous") / sobolev_norm(
            data, config.s, "homogeneous"
        )
        ratio_l2 = float(np.sqrt(mass(scaled) / mass(data)))
        s_c = params.critical_regularity
        entries.append(
            {
                "kind": "rescale",
                "lam": lam,
                "ratio_sobolev_homogeneous": ratio_hs,
                "expected_sobolev": lam ** (s_c - config.s),
                "ratio_l2": ratio_l2,
                "expected_l2": lam**s_c,
            }
        )
    selection = choose_parameters(config.solver.t_end, config.s, params, decay_exponent)
    entries.append({"kind": "selection", "decay_exponent": decay_exponent, **selection})
    write_summary_jsonl(Path(out_dir) / "rescaling.jsonl", entries, config.manifest())
    return {"entries": entries}


def run_simulation(config: ExperimentConfig, out_dir) -> dict:
    """Plain guarded evolution with full diagnostics columns.

    Focusing mass-subcritical parameters evolve an embedded ground state;
    otherwise a seeded smooth bump of H^s size sigma_list[0] is used.
    """
    params = config.params
    grid = config.grid
    if params.sign == "focusing" and params.l2_subcritical:
        profile = shoot(params)
        center = np.full(grid.dim, grid.box_length / 2.0)
        data = embed(profile, grid, theta=0.0, shift=center)
        localization_min = 0.5
    elif params.sign == "focusing":
        raise ValueError(
            "focusing simulation outside the mass-subcritical regime is refused "
            "(finite-time blowup risk); use defocusing parameters"
        )
    else:
        profile = None
        data = perturbation(config.seed, (0.0, grid.nyquist / 4.0), config.s, config.sigma_list[0], grid)
        localization_min = 0.01
    spec = MultiplierSpec(config.s, config.cutoff_list[0])
    solver = SolverConfig(
        dt=config.solver.dt,
        t_end=config.solver.t_end,
        sample_every=config.solver.sample_every,
        tail_fraction_max=1e-4,
        localization_min=localization_min,
    )
    records: list[DiagnosticsRecord] = []

    def observer(t: float, field: SpectralField) -> None:
        m, h, tail = _basic_columns(field, params)
        h_s, l_s, comm = _smoothed_diagnostics(field, grid, params, spec, True)
        dist = None
        if profile is not None:
            dist = dist_to_cylinder(field, profile, config.s, grid).distance
        records.append(
            DiagnosticsRecord(
                t=t,
                mass=m,
                hamiltonian=h,
                lyapunov=2.0 * h + m,
                hamiltonian_smoothed=h_s,
                lyapunov_smoothed=l_s,
                sobolev_s=sobolev_norm(field, config.s),
                cylinder_distance=dist,
                commutator_residual=comm,
                tail_fraction=tail,
            )
        )

    aborted = None
    try:
        evolve(data, params, solver, observers=[observer])
    except EvolutionError as err:
        aborted = err.reason
    extra = {"experiment": "simulate", "N": spec.cutoff}
    if aborted:
        extra["aborted"] = aborted
    write_records_csv(Path(out_dir) / "simulate.csv", records, config.manifest(), extra)
    if aborted:
        raise EvolutionError(f"simulation aborted: {aborted}", -1.0, [])
    return {"records": len(records)}
