"""Command-line experiment runner.

    swarmsearch run --config exp.cfg [--out DIR] [--seeds 1,2,3]
    swarmsearch run --preset fig4 --seeds 1,2,3
    swarmsearch preset fig2            # print a built-in config
    swarmsearch dump-function --id F5 --width 100 --height 100 --out f5.csv
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from swarmsearch import metrics
from swarmsearch.benchmarks import get_function
from swarmsearch.bfoa import run_bfoa
from swarmsearch.config import ConfigError, ExperimentConfig, dump_config, parse_config
from swarmsearch.domain import Domain2D, Goal
from swarmsearch.habitat import cell_centers, sample_function
from swarmsearch.presets import PRESETS, load_preset, preset_text
from swarmsearch.snapshots import write_grid_csv, write_pgm, write_points_csv
from swarmsearch.ssa import PlacementError, run_ssa

log = logging.getLogger("swarmsearch")


def _snapshot_writer(directory: Path, steps):
    wanted = set(steps)

    def observe(t, state, habitat, values, record):
        if t in wanted:
            stem = directory / f"pheromone_t{t:05d}"
            write_pgm(stem.with_suffix(".pgm"), values, comment=f"t={t} max={float(values.max()):.9g}")
            write_grid_csv(stem.with_suffix(".csv"), values)

    return observe


def _round(value):
    return float(f"{value:.9g}")


def run_ssa_seed(config: ExperimentConfig, seed: int, directory: Path) -> dict:
    directory.mkdir(parents=True, exist_ok=True)
    habitat = sample_function(config.function, config.domain, config.width, config.height, config.goal)
    params = config.ssa.replace(rng_seed=seed)
    run = run_ssa(habitat, params, config.schedule, [_snapshot_writer(directory, config.snapshot_steps)],
                  radius=config.radius)
    with open(directory / "metrics.csv", "w", newline="") as fh:
        metrics.write_csv(run.records, fh)
    summary = {"algorithm": "ssa", "seed": seed}
    if run.records:
        last = run.records[-1]
        summary.update(
            final_t=last.t,
            final_best_z=_round(last.best_z),
            final_pher_argmax=list(last.pher_argmax),
            final_dist_to_opt=_round(last.dist_to_opt),
            final_mass_fraction=_round(last.mass_fraction_r),
            success=bool(last.dist_to_opt <= config.radius),
        )
    summary["switches"] = [
        {
            "at_step": t,
            "landscape_changed": landscape,
            "goal_changed": goal,
            "adaptation_time": metrics.adaptation_time(run.records, t, config.radius, config.threshold),
        }
        for t, landscape, goal in run.switches
    ]
    return summary


def run_bfoa_seed(config: ExperimentConfig, seed: int, directory: Path) -> dict:
    directory.mkdir(parents=True, exist_ok=True)
    fn = get_function(config.function)
    sign = 1.0 if config.goal is Goal.MINIMIZE else -1.0

    def cost(x, y):
        return sign * fn.evaluator(x, y)

    params = config.bfoa.replace(rng_seed=seed)
    run = run_bfoa(cost, config.domain, params, config.snapshot_steps)
    with open(directory / "trace.csv", "w", newline="") as fh:
        fh.write("global_step,best_x,best_y,best_cost\n")
        for rec in run.trace:
            fh.write(f"{rec.global_step},{rec.best_x:.9g},{rec.best_y:.9g},{rec.best_cost:.9g}\n")
    for t, points in sorted(run.snapshots.items()):
        write_points_csv(directory / f"positions_t{t:05d}.csv", points)

    habitat = sample_function(config.function, config.domain, config.width, config.height, config.goal)
    opt_cell, _ = metrics.grid_optimum(habitat)
    last = run.trace[-1]
    best_cell = habitat.nearest_cell(last.best_x, last.best_y)
    dist = float(np.hypot(best_cell[0] - opt_cell[0], best_cell[1] - opt_cell[1]))
    return {
        "algorithm": "bfoa",
        "seed": seed,
        "final_t": last.global_step,
        "final_best_cost": _round(last.best_cost),
        "final_best_point": [_round(last.best_x), _round(last.best_y)],
        "final_dist_to_opt": _round(dist),
        "population_sizes_ok": all(n == params.s for n in run.population_sizes),
        "success": bool(dist <= config.radius),
    }


def run(config: ExperimentConfig, out_dir: str | Path | None = None) -> dict:
    """Run every (algorithm, seed) pair, writing per-seed directories and an
    aggregate ``summary.json`` under the output directory."""
    root = Path(out_dir or config.out_dir)
    root.mkdir(parents=True, exist_ok=True)
    resolved = dump_config(config.replace(out_dir=str(root)))
    (root / "config.resolved.cfg").write_text(resolved)
    results = []
    for seed in config.seeds:
        seed_dir = root / f"seed_{seed}"
        seed_dir.mkdir(parents=True, exist_ok=True)
        (seed_dir / "config.resolved.cfg").write_text(dump_config(config.replace(out_dir=str(root), seeds=(seed,))))
        entry = {"seed": seed}
        if config.ssa is not None:
            log.info("ssa seed %d", seed)
            entry["ssa"] = run_ssa_seed(config, seed, seed_dir / "ssa")
        if config.bfoa is not None:
            log.info("bfoa seed %d", seed)
            entry["bfoa"] = run_bfoa_seed(config, seed, seed_dir / "bfoa")
        (seed_dir / "summary.json").write_text(json.dumps(entry, indent=2, sort_keys=True) + "\n")
        results.append(entry)
    aggregate = {"n_seeds": len(results), "seeds": results}
    for algo in config.algorithms:
        aggregate[f"{algo}_successes"] = sum(1 for r in results if r[algo].get("success"))
    (root / "summary.json").write_text(json.dumps(aggregate, indent=2, sort_keys=True) + "\n")
    return aggregate


def dump_function(fn_id: str, domain: Domain2D | None, width: int, height: int, out: str | Path) -> Path:
    """Write the sampled grid as CSV plus a JSON sidecar describing the layout."""
    habitat = sample_function(fn_id, domain, width, height)
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_grid_csv(out, habitat.altitude)
    xs, ys = cell_centers(habitat.domain, width, height)
    sidecar = {
        "function": fn_id,
        "domain": list(habitat.domain.as_tuple()),
        "width": width,
        "height": height,
        "mapping": "cell centers: x(cx) = x_min + (cx + 0.5) * (x_max - x_min) / width; same for y",
        "layout": "row i holds cy = height - 1 - i (north up); column j holds cx = j",
        "x_first": float(xs[0]),
        "y_first": float(ys[0]),
    }
    out.with_suffix(".json").write_text(json.dumps(sidecar, indent=2) + "\n")
    return out


def _parse_seeds(text: str) -> tuple[int, ...]:
    try:
        seeds = tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}") from None
    if not seeds:
        raise argparse.ArgumentTypeError("empty seed list")
    return seeds


def _parse_domain(text: str) -> Domain2D:
    try:
        return Domain2D(*(float(v) for v in text.split(",")))
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"bad domain {text!r}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swarmsearch", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment config")
    src = p_run.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", help="INI experiment file")
    src.add_argument("--preset", choices=sorted(PRESETS), help="built-in experiment")
    p_run.add_argument("--out", help="output directory (overrides [output] out_dir)")
    p_run.add_argument("--seeds", type=_parse_seeds, help="comma-separated seeds (overrides [output] seeds)")

    p_preset = sub.add_parser("preset", help="print a built-in config")
    p_preset.add_argument("name", nargs="?", choices=sorted(PRESETS))
    p_preset.add_argument("--list", action="store_true", help="list preset names")

    p_dump = sub.add_parser("dump-function", help="write a sampled benchmark grid as CSV")
    p_dump.add_argument("--id", required=True, dest="fn_id")
    p_dump.add_argument("--domain", type=_parse_domain, help="x_min,x_max,y_min,y_max")
    p_dump.add_argument("--width", type=int, default=100)
    p_dump.add_argument("--height", type=int, default=100)
    p_dump.add_argument("--out", help="CSV path (default <id>.csv)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

    if args.command == "preset":
        if args.list or not args.name:
            print("\n".join(sorted(PRESETS)))
        else:
            sys.stdout.write(preset_text(args.name))
        return 0

    if args.command == "dump-function":
        try:
            path = dump_function(args.fn_id, args.domain, args.width, args.height, args.out or f"{args.fn_id}.csv")
        except (KeyError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        print(path)
        return 0

    try:
        if args.preset:
            config = load_preset(args.preset)
        else:
            config = parse_config(Path(args.config).read_text())
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.seeds:
        config = config.replace(seeds=args.seeds)
    try:
        summary = run(config, args.out)
    except PlacementError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    for algo in config.algorithms:
        print(f"{algo}: {summary[f'{algo}_successes']}/{summary['n_seeds']} seeds localized the optimum")
    return 0


if __name__ == "__main__":
    sys.exit(main())
