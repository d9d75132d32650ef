"""Command-line front end: ``radloc sweep``, ``radloc snapshot``, ``radloc verify``.

Exit codes: 0 success, 1 validation error, 2 I/O error, 3 verify failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Optional, Sequence

from . import verify
from .errors import ConfigError, RadlocError
from .sim import SWEEP_PARAMS, ScenarioConfig, ScenarioResult, run_scenario
from .svg import snapshot_svg

EXIT_OK, EXIT_VALIDATION, EXIT_IO, EXIT_VERIFY = 0, 1, 2, 3

CSV_HEADER = [
    "sweep_param",
    "value",
    "e_ca",
    "e_rla",
    "improvement_pct",
    "localized_fraction",
    "raw_e_ca",
    "raw_e_rla",
]

# Experiment presets: config overrides plus the default sweep.
PRESETS = {
    "fig3": ({"doi": 0.0, "mixed_ranges": False}, "num_anchors", (24, 36, 4)),
    "fig4": ({"doi": 0.1, "mixed_ranges": False}, "num_anchors", (24, 36, 4)),
    "fig5": ({"doi": 0.0, "mixed_ranges": True}, "num_anchors", (24, 36, 4)),
    "fig6": ({"doi": 0.2, "mixed_ranges": True}, "num_anchors", (24, 36, 4)),
    "fig7": ({"doi": 0.1, "mixed_ranges": True, "num_anchors": 30}, "num_anchors", (30, 30, 1)),
    "fig8": ({"doi": 0.1, "mixed_ranges": False, "num_anchors": 30}, "num_sensors", (50, 80, 10)),
    "fig9": ({"doi": 0.1, "mixed_ranges": True, "num_anchors": 30}, "num_sensors", (50, 80, 10)),
}

_FIELD_TYPES = {f.name: f.type for f in fields(ScenarioConfig)}


def build_config(data: dict) -> ScenarioConfig:
    """Validate a mapping of ScenarioConfig keys; unknown keys are rejected."""
    for key in data:
        if key not in _FIELD_TYPES:
            raise ConfigError(f"unknown config key {key!r}", key)
    values = dict(data)
    for key, value in values.items():
        # JSON has a single number type: accept integral values for float fields
        if _FIELD_TYPES[key] == "float" and isinstance(value, int) and not isinstance(value, bool):
            values[key] = float(value)
    return ScenarioConfig(**values)


def _json_object(text: str, source: str = "config") -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {source}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{source} must be a JSON object")
    return data


def parse_config(text: str) -> ScenarioConfig:
    """Strict JSON config to ScenarioConfig; missing keys take their defaults."""
    return build_config(_json_object(text))


def parse_range(text: str) -> tuple[int, int, int]:
    parts = text.split(":")
    if len(parts) not in (1, 3):
        raise ConfigError(f"range must be start:stop:step, got {text!r}", "range")
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise ConfigError(f"range values must be integers, got {text!r}", "range") from None
    if len(nums) == 1:
        nums = [nums[0], nums[0], 1]
    start, stop, step = nums
    if step <= 0 or start > stop:
        raise ConfigError(f"range needs start <= stop and step > 0, got {text!r}", "range")
    return start, stop, step


def parse_override(text: str) -> tuple[str, object]:
    key, sep, raw = text.partition("=")
    if not sep or not key:
        raise ConfigError(f"override must look like key=value, got {text!r}")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key.strip(), value


@dataclass
class RunManifest:
    config_path: Optional[Path] = None
    out_dir: Path = Path(".")
    param: str = "num_anchors"
    start: int = 24
    stop: int = 36
    step: int = 4
    emit_csv: bool = True
    emit_svg: bool = False
    overrides: list[tuple[str, object]] = field(default_factory=list)
    preset: Optional[str] = None
    workers: int = 1

    def __post_init__(self):
        if self.step <= 0 or self.start > self.stop:
            raise ConfigError("sweep needs start <= stop and step > 0", "range")

    @property
    def values(self) -> list[int]:
        return list(range(self.start, self.stop + 1, self.step))

    @property
    def name(self) -> str:
        if self.config_path is not None:
            return self.config_path.stem
        return self.preset or "default"

    def load_config(self) -> ScenarioConfig:
        data: dict = {}
        if self.preset is not None:
            data.update(PRESETS[self.preset][0])
        if self.config_path is not None:
            data.update(_json_object(self.config_path.read_text(encoding="utf-8"), str(self.config_path)))
        data.update(dict(self.overrides))
        return build_config(data)


def _g6(v: float) -> str:
    return format(v, ".6g")


def csv_rows(results: Sequence[ScenarioResult]) -> list[list[str]]:
    return [
        [
            r.sweep_param,
            str(r.value),
            _g6(r.e_ca),
            _g6(r.e_rla),
            _g6(r.improvement_pct),
            _g6(r.localized_fraction),
            _g6(r.raw_e_ca),
            _g6(r.raw_e_rla),
        ]
        for r in results
    ]


def write_csv(path: Path, results: Sequence[ScenarioResult]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(csv_rows(results))


def cmd_sweep(manifest: RunManifest) -> tuple[list[ScenarioResult], list[Path]]:
    """Run the sweep and write its outputs; returns the results and written files."""
    cfg = manifest.load_config()
    results = run_scenario(cfg, manifest.param, manifest.values, workers=manifest.workers)
    manifest.out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if manifest.emit_csv:
        path = manifest.out_dir / f"{manifest.name}_{manifest.param}.csv"
        write_csv(path, results)
        written.append(path)
    if manifest.emit_svg:
        for v in manifest.values:
            path = manifest.out_dir / f"{manifest.name}_{manifest.param}{v}_trial0.svg"
            path.write_text(snapshot_svg(replace(cfg, **{manifest.param: v}), 0), encoding="utf-8")
            written.append(path)
    return results, written


def cmd_snapshot(cfg: ScenarioConfig, trial_index: int, out: Path) -> Path:
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(snapshot_svg(cfg, trial_index), encoding="utf-8")
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="radloc", description="Range-free localization with the radical line.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sw = sub.add_parser("sweep", help="run a parameter sweep and write a CSV table")
    src = sw.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", type=Path, help="JSON scenario config")
    src.add_argument("--preset", choices=sorted(PRESETS), help="built-in reference scenario")
    sw.add_argument("--param", choices=SWEEP_PARAMS, help="parameter to sweep")
    sw.add_argument("--range", dest="sweep_range", help="start:stop:step, stop inclusive")
    sw.add_argument("--out", type=Path, required=True, help="output directory")
    sw.add_argument("--seed", type=int, help="override master_seed")
    sw.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE")
    sw.add_argument("--workers", type=int, default=1, help="worker processes (results do not change)")
    sw.add_argument("--svg", action="store_true", help="also write a trial-0 snapshot per sweep value")
    sw.add_argument("--no-csv", action="store_true", help=argparse.SUPPRESS)

    sn = sub.add_parser("snapshot", help="render one trial as SVG")
    src = sn.add_mutually_exclusive_group()
    src.add_argument("--config", type=Path, help="JSON scenario config")
    src.add_argument("--preset", choices=sorted(PRESETS), help="built-in reference scenario")
    sn.add_argument("--trial", type=int, default=0)
    sn.add_argument("--out", type=Path, required=True)
    sn.add_argument("--seed", type=int)
    sn.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE")

    vf = sub.add_parser("verify", help="run the built-in oracle checks")
    vf.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return parser


def _manifest_from_args(args) -> RunManifest:
    param, rng = None, None
    if args.preset:
        _, param, rng = PRESETS[args.preset]
    param = args.param or param or "num_anchors"
    if args.sweep_range:
        rng = parse_range(args.sweep_range)
    if rng is None:
        raise ConfigError("--range is required with --config", "range")
    overrides = [parse_override(o) for o in args.overrides]
    if args.seed is not None:
        overrides.append(("master_seed", args.seed))
    return RunManifest(
        config_path=args.config,
        out_dir=args.out,
        param=param,
        start=rng[0],
        stop=rng[1],
        step=rng[2],
        emit_csv=not args.no_csv,
        emit_svg=args.svg,
        overrides=overrides,
        preset=args.preset,
        workers=args.workers,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return EXIT_OK if verify.main(args.inject_fault) else EXIT_VERIFY
        if args.command == "sweep":
            manifest = _manifest_from_args(args)
            results, written = cmd_sweep(manifest)
            for r in results:
                print(
                    f"{r.sweep_param}={r.value}: e_ca={r.e_ca:.4f} e_rla={r.e_rla:.4f} "
                    f"improvement={r.improvement_pct:.1f}% coverage={r.localized_fraction:.3f}"
                )
            for path in written:
                print(f"wrote {path}")
            return EXIT_OK
        if args.command == "snapshot":
            overrides = [parse_override(o) for o in args.overrides]
            if args.seed is not None:
                overrides.append(("master_seed", args.seed))
            manifest = RunManifest(config_path=args.config, preset=args.preset, overrides=overrides)
            path = cmd_snapshot(manifest.load_config(), args.trial, args.out)
            print(f"wrote {path}")
            return EXIT_OK
    except RadlocError as exc:
        print(f"radloc: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"radloc: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
