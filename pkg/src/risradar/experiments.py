"""End-to-end studies driven by a Scenario.

* pattern study: peak / notch / combined beampatterns plus their
  argmax-and-null metrics,
* interference sweep: range-error statistics over a grid of
  interference-to-target power ratios and interferer-angle offsets,
* multi-notch study: widened notches for a list of spacings, with
  suppression-bandwidth and in-band-suppression metrics (and optional
  error sweeps),
* report: aggregate whatever studies an output directory holds into one
  pass/fail summary.

Sweep grid points are independent: per-trial seeds derive from
(master_seed, ratio index, offset index, trial index) through one
SeedSequence rule, so results do not depend on execution order or the
number of workers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .arrays import (
    CARRIER_ONLY,
    RisConfig,
    angle_grid,
    angle_grid_deg,
    normalize_pattern_db,
    power_pattern,
)
from .fileio import (
    write_keyvals,
    write_pattern_table,
    write_peak_records,
    write_sweep_table,
)
from .scenario import Scenario, ScenarioError
from .simulation import (
    InterferenceParams,
    NoiseParams,
    RadarScenario,
    TargetParams,
    estimate_target,
    frame_difference,
    generate_symbols,
    range_error_metric,
    rv_map,
    simulate_frame_pair,
)
from .synthesis import (
    TrainingResult,
    combine_convolve,
    multi_notch,
    normalize_coefficients,
    train_peak_network,
)

SUPPRESSION_THRESHOLD_DB = -30.0
MAX_SUPPRESSION_DB = 300.0


# ---------------------------------------------------------------------------
# configuration synthesis shared by the studies


@dataclass
class SynthesisBundle:
    training: TrainingResult
    peak: RisConfig
    notch: RisConfig
    combined: RisConfig


def synthesize_configs(
    scenario: Scenario,
    num_notches: int | None = None,
    spacing_rad: float | None = None,
    training: TrainingResult | None = None,
) -> SynthesisBundle:
    """Train the peak (unless supplied), build the notch, convolve, and
    rescale the combination into the unit disk."""
    if training is None:
        training = train_peak_network(
            scenario.target_angle_rad, scenario.num_peak_elements, scenario.network_spec()
        )
    notch = multi_notch(scenario.notch_spec(num_notches, spacing_rad))
    combined = normalize_coefficients(combine_convolve(training.config, notch))
    return SynthesisBundle(training=training, peak=training.config, notch=notch, combined=combined)


# ---------------------------------------------------------------------------
# pattern study


@dataclass
class PatternStudyResult:
    peak_path: Path
    notch_path: Path
    combined_path: Path
    metrics_path: Path
    argmax_deg: float
    combined_db_at_interferer: float
    gain_ratio: float


def run_pattern_study(
    scenario: Scenario,
    out_dir,
    subcarrier_mode: str = CARRIER_ONLY,
    grid_points: int = 721,
    training: TrainingResult | None = None,
) -> PatternStudyResult:
    """Emit normalized dB patterns for the peak, notch, and combined
    configurations over the angle grid, plus a metrics file."""
    out_dir = Path(out_dir)
    params = scenario.ofdm_params()
    bundle = synthesize_configs(scenario, training=training)
    grid_deg = angle_grid_deg(grid_points)
    grid_rad = angle_grid(grid_points)

    patterns = {}
    for name, config in (("peak", bundle.peak), ("notch", bundle.notch), ("combined", bundle.combined)):
        linear = power_pattern(config, params, grid_rad, subcarrier_mode)
        patterns[name] = normalize_pattern_db(linear)

    peak_path = write_pattern_table(out_dir / "pattern_peak.csv", grid_deg, patterns["peak"])
    notch_path = write_pattern_table(out_dir / "pattern_notch.csv", grid_deg, patterns["notch"])
    combined_path = write_pattern_table(out_dir / "pattern_combined.csv", grid_deg, patterns["combined"])

    argmax_deg = float(grid_deg[int(np.argmax(patterns["combined"]))])
    interferer_idx = int(np.argmin(np.abs(grid_rad - scenario.interferer_angle_rad)))
    db_at_interferer = float(patterns["combined"][interferer_idx])
    metrics = {
        "target_angle_deg": float(np.degrees(scenario.target_angle_rad)),
        "interferer_angle_deg": float(np.degrees(scenario.interferer_angle_rad)),
        "combined_argmax_deg": argmax_deg,
        "combined_db_at_interferer": db_at_interferer,
        "peak_gain_ratio": bundle.training.gain_ratio,
        "grid_points": grid_points,
        "subcarrier_mode": subcarrier_mode,
    }
    metrics_path = write_keyvals(out_dir / "pattern_metrics.txt", metrics)
    return PatternStudyResult(
        peak_path=peak_path,
        notch_path=notch_path,
        combined_path=combined_path,
        metrics_path=metrics_path,
        argmax_deg=argmax_deg,
        combined_db_at_interferer=db_at_interferer,
        gain_ratio=bundle.training.gain_ratio,
    )


# ---------------------------------------------------------------------------
# interference sweep


@dataclass(frozen=True)
class SweepPoint:
    power_ratio_db: float
    angle_offset_rad: float
    mean_range_error_m: float
    std_range_error_m: float
    trials: int


@dataclass
class SweepResult:
    points: list[SweepPoint]
    records: list[tuple[int, float, float, float]]
    interferer_angle_rad: float
    range_bin_m: float


def trial_seeds(master_seed: int, ratio_idx: int, offset_idx: int, trial: int) -> tuple[int, int, int, int]:
    """Fixed splitting rule: independent seeds for the radar symbols, the
    interferer symbols, and the two frame noise draws."""
    seq = np.random.SeedSequence([int(master_seed), int(ratio_idx), int(offset_idx), int(trial)])
    return tuple(int(s) for s in seq.generate_state(4))


def run_trial(
    scenario: Scenario,
    config: RisConfig,
    power_ratio_db: float,
    angle_offset_rad: float,
    seeds: tuple[int, int, int, int],
    subcarrier_mode: str = CARRIER_ONLY,
) -> float:
    """One simulated measurement; returns the absolute range error in meters."""
    params = scenario.ofdm_params()
    symbols = generate_symbols(params, seeds[0])
    target = TargetParams(
        range_m=scenario.target_range_m,
        angle_rad=scenario.target_angle_rad,
        velocity_mps=scenario.target_velocity_mps,
        amplitude=1.0 + 0.0j,
    )
    interference = InterferenceParams(
        delay_s=scenario.interferer_delay_s,
        angle_rad=scenario.interferer_angle_rad + angle_offset_rad,
        doppler_scale=scenario.interferer_doppler_scale,
        amplitude=10.0 ** (power_ratio_db / 20.0),
        symbol_seed=seeds[1],
    )
    radar = RadarScenario(
        params=params,
        config=config,
        target=target,
        symbols=symbols,
        interference=interference,
        noise=NoiseParams(scenario.noise_variance, 0),
        subcarrier_mode=subcarrier_mode,
    )
    y_a, y_b = simulate_frame_pair(radar, noise_seeds=(seeds[2], seeds[3]))
    grid = frame_difference(y_a, y_b)
    estimate = estimate_target(rv_map(grid, params, scenario.pad_range, scenario.pad_velocity))
    return range_error_metric(scenario.target_range_m, estimate.range_m)


def _sweep_point(args) -> tuple[SweepPoint, list[tuple[int, float, float, float]]]:
    scenario, config, ratio_db, ratio_idx, offset_rad, offset_idx, mode = args
    errors = np.empty(scenario.trials)
    records = []
    for trial in range(scenario.trials):
        seeds = trial_seeds(scenario.master_seed, ratio_idx, offset_idx, trial)
        errors[trial] = run_trial(scenario, config, ratio_db, offset_rad, seeds, mode)
        records.append(
            (seeds[0], float(ratio_db), float(scenario.interferer_angle_rad + offset_rad), float(errors[trial]))
        )
    std = float(np.std(errors, ddof=1)) if scenario.trials > 1 else 0.0
    point = SweepPoint(
        power_ratio_db=float(ratio_db),
        angle_offset_rad=float(offset_rad),
        mean_range_error_m=float(np.mean(errors)),
        std_range_error_m=std,
        trials=scenario.trials,
    )
    return point, records


def run_interference_sweep(
    scenario: Scenario,
    out_dir=None,
    subcarrier_mode: str = CARRIER_ONLY,
    workers: int = 1,
    config: RisConfig | None = None,
    training: TrainingResult | None = None,
) -> SweepResult:
    """Range-error statistics over (power ratio, interferer-angle offset).

    Every grid point runs `scenario.trials` fresh-symbol, fresh-noise
    measurements with the frame-difference pipeline. Results are sorted
    by (ratio, offset) and identical for any worker count.
    """
    for offset in scenario.angle_offsets_rad:
        shifted = scenario.interferer_angle_rad + offset
        if not 0.0 <= shifted <= np.pi:
            raise ScenarioError(f"angle offset {offset} pushes the interferer outside [0, pi]")
    if config is None:
        config = synthesize_configs(scenario, training=training).combined

    ratios = sorted(scenario.power_ratios_db)
    offsets = sorted(scenario.angle_offsets_rad)
    tasks = [
        (scenario, config, ratio, i, offset, j, subcarrier_mode)
        for i, ratio in enumerate(ratios)
        for j, offset in enumerate(offsets)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_sweep_point, tasks))
    else:
        outcomes = [_sweep_point(t) for t in tasks]

    points = [point for point, _ in outcomes]
    records = [record for _, point_records in outcomes for record in point_records]
    params = scenario.ofdm_params()
    result = SweepResult(
        points=points,
        records=records,
        interferer_angle_rad=scenario.interferer_angle_rad,
        range_bin_m=params.range_bin_size,
    )
    if out_dir is not None:
        write_sweep_files(result, Path(out_dir))
    return result


def write_sweep_files(result: SweepResult, out_dir: Path, stem: str = "sweep") -> tuple[Path, Path]:
    comments = (
        "error_statistic=mean_over_trials",
        "spread_statistic=sample_std_ddof1",
        f"interferer_angle_rad={float(result.interferer_angle_rad)!r}",
        f"range_bin_m={float(result.range_bin_m)!r}",
    )
    table = write_sweep_table(out_dir / f"{stem}.csv", result.points, comments)
    records = write_peak_records(out_dir / f"{stem}_records.csv", result.records)
    return table, records


# ---------------------------------------------------------------------------
# multi-notch study


def _carrier_power(column: np.ndarray, thetas) -> np.ndarray:
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    phases = np.exp(-1j * np.pi * np.outer(np.cos(thetas), np.arange(column.size)))
    return np.abs(phases @ column) ** 2


def suppression_band(
    config: RisConfig,
    center_rad: float,
    threshold_db: float = SUPPRESSION_THRESHOLD_DB,
    scan_step_rad: float = 1e-4,
) -> tuple[float, float]:
    """Contiguous angle span around the center where the normalized
    carrier pattern stays below threshold_db.

    Edges are located by an outward scan followed by bisection, so
    spacings far below any practical plot grid still order correctly.
    """
    column = config.static_column()
    dense = np.linspace(0.0, np.pi, 200001)
    peak = _carrier_power(column, dense).max()
    threshold = peak * 10.0 ** (threshold_db / 10.0)

    def above(theta: float) -> bool:
        return _carrier_power(column, theta)[0] >= threshold

    if above(center_rad):
        return (center_rad, center_rad)

    def find_edge(direction: float) -> float:
        inside = center_rad
        probe = center_rad + direction * scan_step_rad
        while 0.0 <= probe <= np.pi and not above(probe):
            inside = probe
            probe += direction * scan_step_rad
        if not 0.0 <= probe <= np.pi:
            return 0.0 if direction < 0 else float(np.pi)
        outside = probe
        for _ in range(80):
            mid = 0.5 * (inside + outside)
            if above(mid):
                outside = mid
            else:
                inside = mid
        return 0.5 * (inside + outside)

    return (find_edge(-1.0), find_edge(+1.0))


def min_inband_suppression_db(config: RisConfig, center_rad: float, spacing_rad: float, num_notches: int) -> float:
    """Worst-case suppression (positive dB, capped at 300) over the span
    between the outermost notch angles; at zero spacing, the depth at the
    center itself."""
    column = config.static_column()
    dense = np.linspace(0.0, np.pi, 200001)
    peak = _carrier_power(column, dense).max()
    half_span = (num_notches - 1) / 2.0 * spacing_rad
    if half_span == 0.0:
        worst = _carrier_power(column, center_rad)[0]
    else:
        span = np.linspace(center_rad - half_span, center_rad + half_span, 4001)
        worst = _carrier_power(column, span).max()
    if worst == 0.0:
        return MAX_SUPPRESSION_DB
    return float(min(-10.0 * np.log10(worst / peak), MAX_SUPPRESSION_DB))


@dataclass
class MultinotchEntry:
    epsilon_rad: float
    notch: RisConfig
    pattern_path: Path | None
    sweep: SweepResult | None
    band: tuple[float, float]
    bandwidth_rad: float
    min_inband_suppression_db: float


@dataclass
class MultinotchStudyResult:
    entries: list[MultinotchEntry]
    summary_path: Path | None


def run_multinotch_study(
    scenario: Scenario,
    epsilon_list=(0.0, 1e-3, 1e-2),
    out_dir=None,
    subcarrier_mode: str = CARRIER_ONLY,
    workers: int = 1,
    grid_points: int = 721,
    include_sweeps: bool = True,
    training: TrainingResult | None = None,
) -> MultinotchStudyResult:
    """Widened notches for each spacing epsilon: pattern file, suppression
    metrics, and (optionally) the error sweep with the combined config."""
    # a single notch cannot widen; 4 notches (5 elements) is the study default
    num_notches = scenario.num_notches if scenario.num_notches >= 2 else 4
    params = scenario.ofdm_params()
    if include_sweeps and training is None:
        training = train_peak_network(
            scenario.target_angle_rad, scenario.num_peak_elements, scenario.network_spec()
        )
    grid_deg = angle_grid_deg(grid_points)
    grid_rad = angle_grid(grid_points)
    out_dir = Path(out_dir) if out_dir is not None else None

    entries = []
    for epsilon in epsilon_list:
        notch = multi_notch(scenario.notch_spec(num_notches, epsilon))
        band = suppression_band(notch, scenario.interferer_angle_rad)
        entry = MultinotchEntry(
            epsilon_rad=float(epsilon),
            notch=notch,
            pattern_path=None,
            sweep=None,
            band=band,
            bandwidth_rad=float(band[1] - band[0]),
            min_inband_suppression_db=min_inband_suppression_db(
                notch, scenario.interferer_angle_rad, float(epsilon), num_notches
            ),
        )
        if out_dir is not None:
            pattern_db = normalize_pattern_db(power_pattern(notch, params, grid_rad, subcarrier_mode))
            entry.pattern_path = write_pattern_table(
                out_dir / f"multinotch_pattern_eps{float(epsilon)!r}.csv", grid_deg, pattern_db
            )
        if include_sweeps:
            combined = normalize_coefficients(combine_convolve(training.config, notch))
            entry.sweep = run_interference_sweep(
                scenario, out_dir=None, subcarrier_mode=subcarrier_mode, workers=workers, config=combined
            )
            if out_dir is not None:
                write_sweep_files(entry.sweep, out_dir, stem=f"multinotch_sweep_eps{float(epsilon)!r}")
        entries.append(entry)

    summary_path = None
    if out_dir is not None:
        lines = [
            f"# suppression_threshold_db={SUPPRESSION_THRESHOLD_DB!r}",
            f"# center_rad={float(scenario.interferer_angle_rad)!r}",
            f"# num_notches={num_notches}",
            "# edges located by outward scan plus bisection on the carrier pattern",
            "epsilon_rad,suppression_bandwidth_rad,band_low_rad,band_high_rad,min_inband_suppression_db",
        ]
        for e in entries:
            lines.append(
                f"{e.epsilon_rad!r},{e.bandwidth_rad!r},{e.band[0]!r},{e.band[1]!r},"
                f"{e.min_inband_suppression_db!r}"
            )
        summary_path = out_dir / "multinotch_summary.csv"
        summary_path.parent.mkdir(parents=True, exist_ok=True)
        summary_path.write_text("\n".join(lines) + "\n")
    return MultinotchStudyResult(entries=entries, summary_path=summary_path)


# ---------------------------------------------------------------------------
# report


@dataclass
class ReportResult:
    path: Path
    num_studies: int
    checks: list[tuple[str, bool, str]]

    @property
    def all_passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def _read_comment_meta(path: Path) -> dict:
    meta = {}
    for line in path.read_text().splitlines():
        if line.startswith("#"):
            key, sep, value = line.lstrip("# ").partition("=")
            if sep:
                meta[key.strip()] = value.strip()
    return meta


def _check_pattern_study(out_dir: Path, checks: list, artifacts: list) -> bool:
    from .fileio import read_keyvals

    path = out_dir / "pattern_metrics.txt"
    if not path.exists():
        return False
    for name in ("pattern_peak.csv", "pattern_notch.csv", "pattern_combined.csv", "pattern_metrics.txt"):
        if (out_dir / name).exists():
            artifacts.append(out_dir / name)
    metrics = read_keyvals(path)
    argmax = float(metrics["combined_argmax_deg"])
    target = float(metrics["target_angle_deg"])
    null_db = float(metrics["combined_db_at_interferer"])
    checks.append(
        (
            "pattern: combined argmax within 0.25 deg of target",
            abs(argmax - target) <= 0.25,
            f"argmax={argmax} target={target}",
        )
    )
    checks.append(
        (
            "pattern: combined level at interferer <= -60 dB",
            null_db <= -60.0,
            f"level={null_db} dB",
        )
    )
    return True


def _check_sweep(out_dir: Path, checks: list, artifacts: list, stem: str = "sweep") -> bool:
    from .fileio import read_sweep_table

    path = out_dir / f"{stem}.csv"
    if not path.exists():
        return False
    artifacts.append(path)
    rows = read_sweep_table(path)
    meta = _read_comment_meta(path)
    bin_m = float(meta.get("range_bin_m", 0.75))
    by_offset: dict = {}
    for ratio, offset, mean, _std, _trials in rows:
        by_offset.setdefault(offset, []).append((ratio, mean))

    if 0.0 in by_offset:
        at_null = [mean for ratio, mean in by_offset[0.0] if ratio <= 30.0]
        checks.append(
            (
                f"{stem}: mean error at zero offset <= one range bin (ratios <= 30 dB)",
                all(m <= bin_m for m in at_null),
                f"max={max(at_null) if at_null else 0.0} bin={bin_m}",
            )
        )
    monotone = True
    for offset, series in by_offset.items():
        series.sort()
        means = [m for _, m in series]
        if any(b < a - bin_m for a, b in zip(means, means[1:])):
            monotone = False
    checks.append(
        (
            f"{stem}: mean error non-decreasing in power ratio (one-bin tolerance)",
            monotone,
            f"offsets={len(by_offset)}",
        )
    )
    top_ratio = max(r for r, *_ in rows)
    top = sorted((abs(offset), mean) for ratio, offset, mean, _s, _t in rows if ratio == top_ratio)
    offset_monotone = all(b >= a - bin_m for (_, a), (_, b) in zip(top, top[1:]))
    checks.append(
        (
            f"{stem}: mean error non-decreasing in |offset| at the top ratio (one-bin tolerance)",
            offset_monotone,
            f"ratio={top_ratio}",
        )
    )
    return True


def _check_multinotch(out_dir: Path, checks: list, artifacts: list) -> bool:
    path = out_dir / "multinotch_summary.csv"
    if not path.exists():
        return False
    artifacts.append(path)
    artifacts.extend(sorted(out_dir.glob("multinotch_pattern_eps*.csv")))
    rows = []
    for line in path.read_text().splitlines():
        if not line or line.startswith("#") or line.startswith("epsilon_rad"):
            continue
        eps, bw, _lo, _hi, sup = (float(v) for v in line.split(","))
        rows.append((eps, bw, sup))
    rows.sort()
    bw_ordered = all(b[1] > a[1] for a, b in zip(rows, rows[1:]))
    sup_ordered = all(b[2] < a[2] for a, b in zip(rows, rows[1:]))
    checks.append(
        (
            "multinotch: suppression bandwidth strictly increasing with spacing",
            bw_ordered,
            ",".join(repr(r[1]) for r in rows),
        )
    )
    checks.append(
        (
            "multinotch: minimum in-band suppression strictly decreasing with spacing",
            sup_ordered,
            ",".join(repr(r[2]) for r in rows),
        )
    )
    return True


def report(out_dir) -> ReportResult:
    """Aggregate study outputs under out_dir into summary.txt.

    Zero discovered studies still writes the summary; the CLI maps that
    to a nonzero exit status.
    """
    out_dir = Path(out_dir)
    checks: list[tuple[str, bool, str]] = []
    artifacts: list[Path] = []
    num_studies = 0
    num_studies += _check_pattern_study(out_dir, checks, artifacts)
    num_studies += _check_sweep(out_dir, checks, artifacts)
    for sweep_path in sorted(out_dir.glob("multinotch_sweep_eps*.csv")):
        if not sweep_path.stem.endswith("_records"):
            _check_sweep(out_dir, checks, artifacts, stem=sweep_path.stem)
    num_studies += _check_multinotch(out_dir, checks, artifacts)

    lines = [f"studies: {num_studies}"]
    scenario_echo = out_dir / "scenario_used.txt"
    if scenario_echo.exists():
        lines.append("")
        lines.append("parameters:")
        lines += ["  " + ln for ln in scenario_echo.read_text().splitlines()]
    if artifacts:
        lines.append("")
        lines.append("files:")
        lines += [f"  {p}" for p in artifacts]
    if checks:
        lines.append("")
        lines.append("checks:")
        for name, ok, detail in checks:
            lines.append(f"  [{'PASS' if ok else 'FAIL'}] {name} ({detail})")
    lines.append("")
    lines.append(f"result: {'pass' if checks and all(c[1] for c in checks) else ('nothing-run' if not checks else 'fail')}")
    path = out_dir / "summary.txt"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")
    return ReportResult(path=path, num_studies=num_studies, checks=checks)
