"""Command-line front end.

Runs packaged presets or a config file, writes per-experiment CSV traces,
and emits the operation-count table. The output directory defaults to
``$SMCGBEAM_OUT`` and falls back to ``./out``.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .harness import (
    ConfigError,
    PRESET_NAMES,
    RunDivergedError,
    apply_overrides,
    config_to_sections,
    emit_complexity_table,
    emit_csv,
    load_config_file,
    preset,
    presets,
    run_experiment,
    sections_to_config,
)


def _default_out() -> str:
    return os.environ.get("SMCGBEAM_OUT", "out")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smcgbeam",
        description="Constrained adaptive beamforming experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a preset or a config file")
    src = run_p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=PRESET_NAMES, help="packaged experiment")
    src.add_argument("--config", help="path to a config file")
    run_p.add_argument("--runs", type=int, help="override Monte-Carlo repetitions")
    run_p.add_argument("--seed", type=int, help="override the master seed")
    run_p.add_argument("--out", default=None, help="output directory")
    run_p.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="SECTION.KEY=VALUE",
        help="override a config value, e.g. scenario.inr_db=20 (repeatable)",
    )

    cx_p = sub.add_parser("complexity", help="write the operation-count table")
    cx_p.add_argument("--m-min", type=int, default=8)
    cx_p.add_argument("--m-max", type=int, default=64)
    cx_p.add_argument("--m-step", type=int, default=8)
    cx_p.add_argument("--snapshots", type=int, default=1000)
    cx_p.add_argument("--out", default=None, help="output CSV path")

    sub.add_parser("list-presets", help="list packaged experiments")
    return parser


def _resolve_configs(args):
    if args.preset:
        configs = preset(args.preset, runs=args.runs, master_seed=args.seed)
    else:
        configs = (load_config_file(args.config),)
        if args.runs is not None or args.seed is not None:
            from dataclasses import replace

            kwargs = {}
            if args.runs is not None:
                kwargs["runs"] = args.runs
            if args.seed is not None:
                kwargs["master_seed"] = args.seed
            configs = tuple(replace(c, **kwargs) for c in configs)
    if args.overrides:
        patched = []
        for config in configs:
            sections = apply_overrides(config_to_sections(config), args.overrides)
            patched.append(sections_to_config(sections))
        configs = tuple(patched)
    return configs


def _cmd_run(args) -> int:
    out_dir = Path(args.out or _default_out())
    out_dir.mkdir(parents=True, exist_ok=True)
    for config in _resolve_configs(args):
        result = run_experiment(config)
        path = out_dir / f"{config.label}.csv"
        emit_csv(result, path)
        print(f"{config.label}: {config.runs} runs x {config.n_snapshots} snapshots")
        for lab in result.algorithms:
            final = result.mean_sinr_db[lab][-1]
            rate = result.mean_update_rate[lab]
            err = result.max_constraint_error[lab]
            print(
                f"  {lab:12s} final SINR {final:7.2f} dB"
                f"  update rate {rate:6.1%}  max |w^H a0 - gamma| {err:.2e}"
            )
        print(f"  wrote {path}")
    return 0


def _cmd_complexity(args) -> int:
    if args.m_min < 1 or args.m_max < args.m_min or args.m_step < 1:
        raise ConfigError("require 1 <= m-min <= m-max and m-step >= 1")
    out = Path(args.out) if args.out is not None else Path(_default_out())
    if out.suffix == ".csv" and not out.is_dir():
        path = out
        path.parent.mkdir(parents=True, exist_ok=True)
    else:
        out.mkdir(parents=True, exist_ok=True)
        path = out / "complexity.csv"
    m_values = list(range(args.m_min, args.m_max + 1, args.m_step))
    emit_complexity_table(path, m_values, n_snapshots=args.snapshots)
    print(f"wrote {path}")
    return 0


def _cmd_list_presets() -> int:
    for name, configs in presets().items():
        parts = []
        for c in configs:
            algos = ",".join(spec.label for spec in c.algorithms)
            parts.append(f"{c.label}: m={c.m} N={c.n_snapshots} [{algos}]")
        print(f"{name}")
        for part in parts:
            print(f"  {part}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "complexity":
            return _cmd_complexity(args)
        return _cmd_list_presets()
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RunDivergedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
