"""Command-line entry point.

Subcommands:
  interactions  measure the per-group phase/role contact matrix
  privacy       run the privacy probes and derive the holder-privacy table
  scale         population sweeps with fitted growth verdicts
  run           run one scenario from a JSON config and export its outputs

Golden-table mismatches and scaling-class violations exit nonzero, bad
configurations exit 2, so CI can enforce all of it.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .errors import ConfigError
from .methods import GROUPS, METHOD_NAMES
from .privacy.assessment import assess_group
from .sim.matrix import group_matrices
from .sim.runner import run_scenario
from .sim.scenario import Scenario
from .sim.sweep import scaling_sweep
from . import tables

PROFILE_ENV = "REVOCKIT_PROFILE"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _selected_groups(methods: list[str] | None) -> list[tuple[str, list[str]]]:
    if not methods:
        return GROUPS
    chosen = []
    for group, members in GROUPS:
        subset = [m for m in members if m in methods]
        if subset:
            chosen.append((group, subset))
    return chosen


def cmd_interactions(args) -> int:
    groups, _ = group_matrices(seed=args.seed, profile=args.profile, methods=args.method or None)
    if args.format == "csv":
        text = tables.render_interactions_csv(groups)
    elif args.format == "json":
        text = tables.render_interactions_json(groups)
    else:
        text = tables.render_interactions_text(groups)
    _emit(text, args.out)
    problems = tables.interactions_match_reference(groups)
    for problem in problems:
        print(f"MISMATCH: {problem}", file=sys.stderr)
    return 1 if problems else 0


def cmd_privacy(args) -> int:
    assessments = [
        assess_group(group, members, seed=args.seed, profile=args.profile)
        for group, members in _selected_groups(args.method or None)
    ]
    if args.id_mode in ("stable", "pairwise"):
        # single-mode view: aspect cells show that mode's measurement;
        # levels keep the implementation-best rating
        from .privacy.classify import AspectReport

        for a in assessments:
            mode = a.by_mode[args.id_mode]
            a.aspects = AspectReport(
                correlation=mode.correlation,
                linkage=mode.linkage,
                transaction_data=a.aspects.transaction_data,
            )
    if args.format == "csv":
        text = tables.render_privacy_csv(assessments)
    elif args.format == "json":
        text = tables.render_privacy_json(assessments)
    else:
        text = tables.render_privacy_text(assessments)
    _emit(text, args.out)
    if args.id_mode == "both":
        problems = tables.privacy_match_reference(assessments)
        for problem in problems:
            print(f"MISMATCH: {problem}", file=sys.stderr)
        return 1 if problems else 0
    return 0


def _scale_text(sweeps, extrapolations) -> str:
    lines = [f"{'Method':20s}| {'series':26s}| {'slope':7s}| {'fit rms':8s}| {'verdict':11s}| declared | ok"]
    lines.append("-" * len(lines[0]))
    for sw in sweeps:
        lines.append(
            f"{sw.method:20s}| {sw.kind:26s}| {sw.slope:7.3f}| {sw.residual:8.4f}| {sw.verdict:11s}| {sw.declared:8s} | {'yes' if sw.ok else 'NO'}"
        )
        for p in sw.points:
            lines.append(f"    N={p.population:<8d} {p.value} bytes")
    lines.append("")
    lines.extend(extrapolations)
    return "\n".join(lines) + "\n"


def _scale_extrapolations(sweeps) -> list[str]:
    notes = []
    for sw in sweeps:
        by_n = {p.population: p.value for p in sw.points}
        largest = max(by_n)
        if sw.method == "lvvc" and sw.points:
            size = by_n[largest]
            total = size * 1_000_000
            notes.append(
                f"lvvc: measured refresh payload {size} bytes; projected issuer storage for "
                f"1,000,000 credentials = {total:,} bytes ({total / 1e9:.3f} GB)"
            )
        if sw.method == "rsa-accumulator" and sw.points:
            projected = by_n[largest] * 32768 / largest
            notes.append(
                f"rsa-accumulator: measured per-holder maintenance download {by_n[largest]:,} bytes at "
                f"N={largest}; linear projection to N=32,768 = {projected:,.0f} bytes "
                f"(reported, not asserted: absolute sizes are implementation-specific)"
            )
    return notes


def cmd_scale(args) -> int:
    populations = args.populations
    if len(populations) < 2:
        raise ConfigError("scale needs at least two --populations")
    methods = args.method or METHOD_NAMES
    sweeps = [
        scaling_sweep(m, populations, seed=args.seed, profile=args.profile, epochs=args.epochs)
        for m in methods
    ]
    extrapolations = _scale_extrapolations(sweeps)
    if args.format == "csv":
        lines = ["method,kind,population,bytes,slope,residual,verdict,declared,ok"]
        for sw in sweeps:
            for p in sw.points:
                lines.append(
                    f"{sw.method},{sw.kind},{p.population},{p.value},{sw.slope:.6f},{sw.residual:.6f},{sw.verdict},{sw.declared},{int(sw.ok)}"
                )
        text = "\n".join(lines) + "\n"
    elif args.format == "json":
        import json

        text = json.dumps(
            {
                "schema_version": 1,
                "sweeps": [
                    {
                        "method": sw.method,
                        "kind": sw.kind,
                        "points": [{"population": p.population, "bytes": p.value} for p in sw.points],
                        "slope": round(sw.slope, 6),
                        "residual": round(sw.residual, 6),
                        "verdict": sw.verdict,
                        "declared": sw.declared,
                        "ok": sw.ok,
                    }
                    for sw in sweeps
                ],
                "extrapolations": extrapolations,
            },
            indent=2,
            sort_keys=True,
        )
    else:
        text = _scale_text(sweeps, extrapolations)
    _emit(text, args.out)
    violations = [sw.method for sw in sweeps if not sw.ok]
    for method in violations:
        print(f"SCALING VIOLATION: {method}", file=sys.stderr)
    return 1 if violations else 0


def cmd_run(args) -> int:
    if args.config:
        scenario = Scenario.from_json(Path(args.config).read_text())
    else:
        if not args.method_single:
            raise ConfigError("run needs --config or --method")
        scenario = Scenario(
            method=args.method_single,
            population=args.population,
            epochs=args.epochs,
            seed=args.seed,
            profile=args.profile,
            id_mode=args.id_mode if args.id_mode != "both" else "stable",
            max_age=args.max_age,
            revocations=[[1, 1]] if args.epochs > 1 else [],
            verifications=[[args.epochs - 1, args.population]],
        )
        scenario.validate()
    result = run_scenario(scenario)
    if args.out:
        directory = Path(args.out)
        directory.mkdir(parents=True, exist_ok=True)
        (directory / "scenario.json").write_text(scenario.to_json())
        (directory / "ledger.csv").write_text(result.ledger.to_csv())
        (directory / "metrics.json").write_text(result.metrics.to_json())
        import json

        (directory / "timings.json").write_text(json.dumps(result.timings, indent=2, sort_keys=True))
        print(f"wrote scenario.json, ledger.csv, metrics.json, timings.json to {directory}")
    else:
        sys.stdout.write(result.metrics.to_json() + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="revockit", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_format=True):
        p.add_argument("--seed", type=int, default=7)
        p.add_argument(
            "--profile",
            choices=("toy", "full"),
            default=os.environ.get(PROFILE_ENV, "toy"),
            help=f"crypto profile (env {PROFILE_ENV}; 'full' uses 2048-bit moduli and ed25519 and is slow)",
        )
        if with_format:
            p.add_argument("--format", choices=("table", "csv", "json"), default="table")
            p.add_argument("--out", default=None, help="write output to this file instead of stdout")

    p_int = sub.add_parser("interactions", help="measured phase/role contact matrix per group")
    p_int.add_argument("--method", action="append", choices=METHOD_NAMES, help="restrict to these methods")
    common(p_int)
    p_int.set_defaults(func=cmd_interactions)

    p_priv = sub.add_parser("privacy", help="privacy probes and derived levels per group")
    p_priv.add_argument("--method", action="append", choices=METHOD_NAMES)
    p_priv.add_argument("--id-mode", choices=("both", "stable", "pairwise"), default="both")
    common(p_priv)
    p_priv.set_defaults(func=cmd_privacy)

    p_scale = sub.add_parser("scale", help="population sweeps with growth verdicts")
    p_scale.add_argument("--method", action="append", choices=METHOD_NAMES)
    p_scale.add_argument("--populations", type=int, nargs="+", default=[1024, 2048, 4096])
    p_scale.add_argument("--epochs", type=int, default=6)
    common(p_scale)
    p_scale.set_defaults(func=cmd_scale)

    p_run = sub.add_parser("run", help="run one scenario and export ledger/metrics")
    p_run.add_argument("--config", default=None, help="scenario JSON file")
    p_run.add_argument("--method", dest="method_single", choices=METHOD_NAMES, default=None)
    p_run.add_argument("--population", type=int, default=16)
    p_run.add_argument("--epochs", type=int, default=4)
    p_run.add_argument("--id-mode", choices=("both", "stable", "pairwise"), default="stable")
    p_run.add_argument("--max-age", type=int, default=1)
    p_run.add_argument("--out", default=None, help="directory for ledger.csv / metrics.json / timings.json")
    common(p_run, with_format=False)
    p_run.set_defaults(func=cmd_run)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
