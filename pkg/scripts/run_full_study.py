#!/usr/bin/env python3
"""Run every study end to end and write the summary report.

    python scripts/run_full_study.py --out out [--scenario file] [--quick] [--workers N]

--quick swaps in a scaled-down scenario (small grid, small network) so the
whole pipeline finishes in seconds; omit it to run the full default setup.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from risradar.experiments import (
    report,
    run_interference_sweep,
    run_multinotch_study,
    run_pattern_study,
    write_sweep_files,
)
from risradar.scenario import default_scenario, load_scenario
from risradar.synthesis import train_peak_network

QUICK_OVERRIDES = dict(
    num_subcarriers=32,
    num_symbols=8,
    num_peak_elements=48,
    net_num_layers=3,
    net_hidden_width=32,
    net_num_iterations=500,
    trials=5,
    target_range_m=9.75,
    pad_range=2,
    pad_velocity=2,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--scenario", type=Path, default=None)
    parser.add_argument("--out", type=Path, default=Path("out"))
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--quick", action="store_true")
    args = parser.parse_args()

    scenario = load_scenario(args.scenario) if args.scenario else default_scenario()
    if args.quick:
        scenario = scenario.replace(**QUICK_OVERRIDES)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "scenario_used.txt").write_text(scenario.to_text())

    print("training peak network ...")
    training = train_peak_network(
        scenario.target_angle_rad, scenario.num_peak_elements, scenario.network_spec()
    )
    print(f"  gain ratio vs analytic optimum: {training.gain_ratio:.4f}")

    print("pattern study ...")
    patterns = run_pattern_study(scenario, args.out, training=training)
    print(f"  combined argmax {patterns.argmax_deg} deg, "
          f"level at interferer {patterns.combined_db_at_interferer:.1f} dB")

    print("interference sweep ...")
    sweep = run_interference_sweep(scenario, workers=args.workers, training=training)
    write_sweep_files(sweep, args.out)
    worst = max(p.mean_range_error_m for p in sweep.points)
    print(f"  {len(sweep.points)} grid points, worst mean error {worst:.3f} m")

    print("multi-notch study ...")
    multi = run_multinotch_study(
        scenario, out_dir=args.out, workers=args.workers, training=training
    )
    for entry in multi.entries:
        print(f"  eps={entry.epsilon_rad}: bandwidth {entry.bandwidth_rad:.6f} rad, "
              f"min in-band suppression {entry.min_inband_suppression_db:.1f} dB")

    summary = report(args.out)
    print(summary.path.read_text())
    return 0 if summary.all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
