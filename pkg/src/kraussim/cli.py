"""Command-line interface.

Three subcommands emit plain CSV: ``evolve`` sweeps the closed-form map over
a (theta, t) grid, ``compare`` pits the discrete engine against the closed
form, and ``kraus-dump`` prints one operator set.  Scenario values come from
built-in defaults, then an optional ``key=value`` config file, then flags,
in that order of precedence.  Output is byte-deterministic: rows are sorted
by (theta, t, n) and floats are written with shortest round-trip formatting.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .generating import generating_values
from .kraus import (
    JumpSpec,
    NormalizationError,
    RegimeError,
    evolve_discrete,
    exact_kraus,
)
from .metrics import (
    EvolutionRecord,
    re_approx,
    relative_error,
    spectral_norm,
    distance as norm_distance,
)
from .model import (
    ConsistencyError,
    ParameterError,
    initial_state,
    make_params,
    validate_density,
)
from .propagator import analytic_propagator

__all__ = [
    "ConfigError",
    "GridSpec",
    "ScenarioConfig",
    "load_config",
    "run_evolve",
    "run_compare",
    "run_kraus_dump",
    "main",
]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERIC = 2
EXIT_IO = 3


class ConfigError(ValueError):
    """Malformed scenario input (file syntax, flag values, impossible grids)."""


@dataclass(frozen=True)
class GridSpec:
    """A single value (count == 1) or an inclusive linspace start:stop:count."""

    start: float
    stop: float
    count: int

    def points(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.start])
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class ScenarioConfig:
    kappa: float = 2.0
    rabi: float = 4.0
    omega: float = 2.0
    theta: GridSpec = GridSpec(0.0, math.pi, 64)
    time: GridSpec = GridSpec(0.0, 3.0, 64)
    n_list: tuple[int, ...] = (10, 100, 1000)
    jumps: str = "paper"
    renormalize: bool = False
    out: str | None = None
    seed: int | None = None
    per_operator: bool = False
    per_operator_form: str = "sandwich"


def _parse_float(text: str, key: str) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise ConfigError(f"{key}: expected a number, got {text!r}") from exc
    if not math.isfinite(value):
        raise ConfigError(f"{key}: value must be finite, got {text!r}")
    return value


def _parse_grid(text: str, key: str) -> GridSpec:
    parts = text.split(":")
    if len(parts) == 1:
        value = _parse_float(parts[0], key)
        return GridSpec(value, value, 1)
    if len(parts) != 3:
        raise ConfigError(f"{key}: expected VALUE or START:STOP:COUNT, got {text!r}")
    start = _parse_float(parts[0], key)
    stop = _parse_float(parts[1], key)
    try:
        count = int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"{key}: grid count must be an integer, got {parts[2]!r}") from exc
    if count < 1:
        raise ConfigError(f"{key}: grid count must be >= 1, got {count}")
    if count > 1 and stop < start:
        raise ConfigError(f"{key}: empty range {text!r} (stop < start)")
    return GridSpec(start, stop, count)


def _parse_steps(text: str, key: str = "steps") -> tuple[int, ...]:
    values = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        try:
            n = int(piece)
        except ValueError as exc:
            raise ConfigError(f"{key}: expected integers, got {piece!r}") from exc
        if n < 1:
            raise ConfigError(f"{key}: step counts must be >= 1, got {n}")
        values.append(n)
    if not values:
        raise ConfigError(f"{key}: at least one step count required, got {text!r}")
    return tuple(values)


def _parse_bool(text: str, key: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {text!r}")


def _parse_int(text: str, key: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise ConfigError(f"{key}: expected an integer, got {text!r}") from exc


_CONFIG_PARSERS: dict[str, Callable[[str], object]] = {
    "decay": lambda v: _parse_float(v, "decay"),
    "coupling": lambda v: _parse_float(v, "coupling"),
    "frequency": lambda v: _parse_float(v, "frequency"),
    "theta": lambda v: _parse_grid(v, "theta"),
    "time": lambda v: _parse_grid(v, "time"),
    "steps": lambda v: _parse_steps(v),
    "jumps": lambda v: v.strip(),
    "renormalize": lambda v: _parse_bool(v, "renormalize"),
    "out": lambda v: v.strip(),
    "seed": lambda v: _parse_int(v, "seed"),
    "per_operator": lambda v: _parse_bool(v, "per_operator"),
    "per_operator_form": lambda v: v.strip(),
}

_CONFIG_FIELDS = {
    "decay": "kappa",
    "coupling": "rabi",
    "frequency": "omega",
    "theta": "theta",
    "time": "time",
    "steps": "n_list",
    "jumps": "jumps",
    "renormalize": "renormalize",
    "out": "out",
    "seed": "seed",
    "per_operator": "per_operator",
    "per_operator_form": "per_operator_form",
}


def _read_config_file(path: str) -> dict[str, object]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    values: dict[str, object] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not sep or not key:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
        if key not in _CONFIG_PARSERS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if not value:
            raise ConfigError(f"{path}:{lineno}: empty value for {key!r}")
        try:
            values[_CONFIG_FIELDS[key]] = _CONFIG_PARSERS[key](value)
        except ConfigError as exc:
            raise ConfigError(f"{path}:{lineno}: {exc}") from exc
    return values


def load_config(
    path: str | None = None,
    overrides: dict[str, object] | None = None,
    defaults: ScenarioConfig | None = None,
) -> ScenarioConfig:
    """Defaults, then config-file values, then explicit overrides."""
    config = defaults if defaults is not None else ScenarioConfig()
    if path is not None:
        config = replace(config, **_read_config_file(path))
    if overrides:
        config = replace(config, **overrides)
    if config.per_operator_form not in ("sandwich", "left"):
        raise ConfigError(
            f"per_operator_form must be 'sandwich' or 'left', got {config.per_operator_form!r}"
        )
    return config


def _jump_spec(config: ScenarioConfig) -> JumpSpec | None:
    mode = config.jumps
    if mode == "paper":
        return None  # engine default: the two-amplitude split
    if mode == "single":
        return JumpSpec.single(config.kappa)
    try:
        amplitudes = tuple(complex(float(piece)) for piece in mode.split(",") if piece.strip())
    except ValueError as exc:
        raise ConfigError(
            f"jumps: expected 'paper', 'single' or a comma-separated list, got {mode!r}"
        ) from exc
    if not amplitudes:
        raise ConfigError(f"jumps: no amplitudes in {mode!r}")
    return JumpSpec(amplitudes)


def _fmt(value: float) -> str:
    return repr(float(value))


_ENTRY_LABELS = [f"{i}{j}" for i in (1, 2, 3) for j in (1, 2, 3)]

EVOLVE_BASE_HEADER = (
    ["theta", "t", "norm"]
    + [c for label in _ENTRY_LABELS for c in (f"re_{label}", f"im_{label}")]
    + ["trace_dev", "min_eig"]
)
COMPARE_HEADER = [
    "theta",
    "t",
    "n",
    "norm_analytic",
    "norm_discrete",
    "distance",
    "re_signed",
    "re_abs",
    "re_approx",
]


def evolve_rows(config: ScenarioConfig) -> tuple[list[str], list[list[str]]]:
    """Closed-form sweep; returns (header, rows) ready for CSV."""
    params = make_params(config.kappa, config.rabi, config.omega)
    header = list(EVOLVE_BASE_HEADER)
    if config.per_operator:
        header += ["k0_norm", "k1_norm", "k2_norm"]
    header.append("ok")

    thetas = config.theta.points()
    times = config.time.points()
    states = [initial_state(float(th)) for th in thetas]
    keyed: list[tuple[tuple[float, float], list[str]]] = []
    for t in times:
        t = float(t)
        prop = analytic_propagator(params, t)
        kset = exact_kraus(params, t) if config.per_operator else None
        for theta, rho0 in zip(thetas, states):
            rho = (prop @ rho0.reshape(9)).reshape(3, 3)
            report = validate_density(rho)
            row = [_fmt(theta), _fmt(t), _fmt(spectral_norm(rho))]
            for i in range(3):
                for j in range(3):
                    row.append(_fmt(rho[i, j].real))
                    row.append(_fmt(rho[i, j].imag))
            row.append(_fmt(report.trace_deviation))
            row.append(_fmt(report.min_eigenvalue))
            if kset is not None:
                for op in kset.operators:
                    if config.per_operator_form == "sandwich":
                        row.append(_fmt(spectral_norm(op @ rho0 @ op.conj().T)))
                    else:
                        row.append(_fmt(spectral_norm(op @ rho0)))
            row.append("1" if report.ok else "0")
            keyed.append(((float(theta), t), row))
    keyed.sort(key=lambda item: item[0])
    return header, [row for _, row in keyed]


def compare_records(config: ScenarioConfig) -> list[EvolutionRecord]:
    params = make_params(config.kappa, config.rabi, config.omega)
    jumps = _jump_spec(config)
    times = [float(t) for t in config.time.points()]
    for t in times:
        if t <= 0.0:
            raise ConfigError(f"compare requires positive times, got t={t!r}")
    records = []
    for theta in config.theta.points():
        theta = float(theta)
        rho0 = initial_state(theta)
        for t in times:
            rho_analytic = (analytic_propagator(params, t) @ rho0.reshape(9)).reshape(3, 3)
            norm_a = spectral_norm(rho_analytic)
            for n in config.n_list:
                rho_discrete, _ = evolve_discrete(
                    params, rho0, t, n, jumps=jumps, renormalize=config.renormalize
                )
                records.append(
                    EvolutionRecord(
                        theta=theta,
                        t=t,
                        n=int(n),
                        norm_analytic=norm_a,
                        norm_discrete=spectral_norm(rho_discrete),
                        distance=norm_distance(rho_discrete, rho_analytic),
                        relative_error=relative_error(rho_discrete, rho_analytic),
                        re_approx=re_approx(params.omega, int(n)),
                    )
                )
    records.sort(key=lambda r: (r.theta, r.t, r.n))
    return records


def compare_rows(records: list[EvolutionRecord]) -> tuple[list[str], list[list[str]]]:
    rows = []
    for r in records:
        rows.append(
            [
                _fmt(r.theta),
                _fmt(r.t),
                str(r.n),
                _fmt(r.norm_analytic),
                _fmt(r.norm_discrete),
                _fmt(r.distance),
                _fmt(r.relative_error),
                _fmt(abs(r.relative_error)),
                _fmt(r.re_approx),
            ]
        )
    return list(COMPARE_HEADER), rows


def _fit_loglog_slope(ns: list[int], values: list[float]) -> float | None:
    pairs = [(math.log(n), math.log(v)) for n, v in zip(ns, values) if v > 0.0]
    if len(pairs) < 2:
        return None
    mean_x = sum(x for x, _ in pairs) / len(pairs)
    mean_y = sum(y for _, y in pairs) / len(pairs)
    denom = sum((x - mean_x) ** 2 for x, _ in pairs)
    if denom == 0.0:
        return None
    return sum((x - mean_x) * (y - mean_y) for x, y in pairs) / denom


def compare_summary(records: list[EvolutionRecord]) -> list[str]:
    """Fitted log-log slopes of |RE| and distance versus n, grid-averaged."""
    groups: dict[tuple[float, float], list[EvolutionRecord]] = {}
    for r in records:
        groups.setdefault((r.theta, r.t), []).append(r)
    re_slopes = []
    dist_slopes = []
    for group in groups.values():
        ns = [g.n for g in group]
        if len(set(ns)) < 2:
            continue
        slope = _fit_loglog_slope(ns, [abs(g.relative_error) for g in group])
        if slope is not None:
            re_slopes.append(slope)
        slope = _fit_loglog_slope(ns, [g.distance for g in group])
        if slope is not None:
            dist_slopes.append(slope)
    lines = [f"compare: {len(records)} rows over {len(groups)} grid points"]
    if re_slopes:
        lines.append(
            f"mean log-log slope of |RE| vs n: {sum(re_slopes) / len(re_slopes):.3f}"
        )
    if dist_slopes:
        lines.append(
            f"mean log-log slope of distance vs n: {sum(dist_slopes) / len(dist_slopes):.3f}"
        )
    return lines


def kraus_dump_text(config: ScenarioConfig, t: float | None = None) -> str:
    if t is None:
        if config.time.count != 1:
            raise ConfigError("kraus-dump needs a single --time value, not a grid")
        t = float(config.time.points()[0])
    params = make_params(config.kappa, config.rabi, config.omega)
    gv = generating_values(params, t)
    kset = exact_kraus(params, t)
    cross = gv.lambda_zero * (gv.lambda_plus + gv.lambda_minus)
    disc = gv.drain_plus * gv.drain_minus - cross * cross
    lines = [
        f"time = {_fmt(t)}",
        f"decay = {_fmt(params.kappa)}  coupling = {_fmt(params.rabi)}  "
        f"frequency = {_fmt(params.omega)}  gamma = {params.gamma!r}  "
        f"regime = {params.regime.value}",
        f"lambda_plus = {_fmt(gv.lambda_plus)}",
        f"lambda_minus = {_fmt(gv.lambda_minus)}",
        f"lambda_zero = {_fmt(gv.lambda_zero)}",
        f"drain_plus = {_fmt(gv.drain_plus)}",
        f"drain_minus = {_fmt(gv.drain_minus)}",
        f"discriminant = {_fmt(disc)}",
        f"completeness_defect = {_fmt(kset.completeness_defect)}",
    ]
    for index, op in enumerate(kset.operators):
        lines.append(f"K{index}:")
        for i in range(3):
            entries = "  ".join(
                f"({_fmt(op[i, j].real)}, {_fmt(op[i, j].imag)})" for j in range(3)
            )
            lines.append(f"  {entries}")
    return "\n".join(lines) + "\n"


def _write_text(out: str | None, text: str) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def run_evolve(config: ScenarioConfig) -> int:
    header, rows = evolve_rows(config)
    _write_text(config.out, _csv_text(header, rows))
    return EXIT_OK


def run_compare(config: ScenarioConfig) -> int:
    records = compare_records(config)
    header, rows = compare_rows(records)
    _write_text(config.out, _csv_text(header, rows))
    for line in compare_summary(records):
        print(line, file=sys.stderr)
    return EXIT_OK


def run_kraus_dump(config: ScenarioConfig, t: float | None = None) -> int:
    _write_text(config.out, kraus_dump_text(config, t))
    return EXIT_OK


_EVOLVE_DEFAULTS = ScenarioConfig()
_COMPARE_DEFAULTS = ScenarioConfig(time=GridSpec(1.0, 1.0, 1))
_DUMP_DEFAULTS = ScenarioConfig(time=GridSpec(1.0, 1.0, 1))


class _Parser(argparse.ArgumentParser):
    # Route argparse's usage errors through the config-error exit code.
    def error(self, message: str) -> None:  # type: ignore[override]
        raise ConfigError(message)


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="key=value scenario file")
    parser.add_argument("--decay", metavar="RATE", help="cavity decay rate kappa")
    parser.add_argument("--coupling", metavar="RATE", help="atom-cavity coupling")
    parser.add_argument("--frequency", metavar="RATE", help="resonance frequency")
    parser.add_argument("--theta", metavar="SPEC", help="angle: VALUE or START:STOP:COUNT")
    parser.add_argument("--time", metavar="SPEC", help="time: VALUE or START:STOP:COUNT")
    parser.add_argument("--steps", metavar="LIST", help="comma-separated step counts")
    parser.add_argument(
        "--jumps", metavar="MODE", help="'paper', 'single' or comma-separated amplitudes"
    )
    parser.add_argument(
        "--renormalize", action="store_true", default=None, help="renormalize each discrete step"
    )
    parser.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    parser.add_argument("--seed", metavar="INT", help="seed recorded for randomized scenarios")
    parser.add_argument(
        "--per-operator",
        action="store_true",
        default=None,
        help="emit per-operator norm columns (evolve)",
    )
    parser.add_argument(
        "--per-operator-form",
        choices=("sandwich", "left"),
        help="per-operator norm: ||K rho K^dag|| (sandwich) or ||K rho|| (left)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kraussim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, handler, defaults in (
        ("evolve", run_evolve, _EVOLVE_DEFAULTS),
        ("compare", run_compare, _COMPARE_DEFAULTS),
        ("kraus-dump", run_kraus_dump, _DUMP_DEFAULTS),
    ):
        sub_parser = sub.add_parser(name)
        _add_common_flags(sub_parser)
        sub_parser.set_defaults(handler=handler, defaults=defaults)
    return parser


def _overrides_from_args(args: argparse.Namespace) -> dict[str, object]:
    overrides: dict[str, object] = {}
    flag_values = {
        "decay": args.decay,
        "coupling": args.coupling,
        "frequency": args.frequency,
        "theta": args.theta,
        "time": args.time,
        "steps": args.steps,
        "jumps": args.jumps,
        "out": args.out,
        "seed": args.seed,
    }
    for key, raw in flag_values.items():
        if raw is not None:
            overrides[_CONFIG_FIELDS[key]] = _CONFIG_PARSERS[key](raw)
    if args.renormalize is not None:
        overrides["renormalize"] = args.renormalize
    if args.per_operator is not None:
        overrides["per_operator"] = args.per_operator
    if args.per_operator_form is not None:
        overrides["per_operator_form"] = args.per_operator_form
    return overrides


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = load_config(args.config, _overrides_from_args(args), args.defaults)
        return args.handler(config)
    except (ConfigError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (
        RegimeError,
        NormalizationError,
        ConsistencyError,
        ZeroDivisionError,
        OverflowError,
    ) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
