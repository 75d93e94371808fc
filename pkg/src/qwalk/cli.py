"""Command-line front end and flat-file output for the walk toolkit.

Four subcommands: ``simulate`` (exact finite-time distribution with
amplitudes), ``density`` (limit density on a grid), ``compare``
(simulation scored against a limit law), and ``sweep`` (support
half-width over a parameter grid).  Output is CSV or JSON; floats are
written with 17 significant digits so files round-trip doubles
losslessly, and identical invocations produce byte-identical files.

Angles accept raw radians or exact tokens like ``pi/2``, ``-pi/4``,
``3pi/4``.  Complex coin amplitudes are written ``re,im``.  A flat
``key=value`` config file can supply any flag; explicit flags win.

Exit codes: 0 success, 2 invalid parameters, 1 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .harness import ComparisonReport, run_comparison
from .limitlaw import LAW_KINDS, make_limit_law, support_halfwidth
from .walk import VARIANTS, CoinSpinor, WalkParams, distribution, evolve

__all__ = [
    "main",
    "parse_angle",
    "parse_complex",
    "report_to_dict",
    "report_from_dict",
]

SCHEMA_VERSION = 1

_DENSITY_GRID_POINTS = 2001
_DENSITY_GRID_PAD = 1.05

_ANGLE_PATTERN = re.compile(r"^([+-]?)(\d+)?pi(?:/(\d+))?$")


def parse_angle(text: str) -> float:
    """Parse an angle: a float literal or a pi-token like ``-3pi/4``."""
    cleaned = text.strip().lower().replace(" ", "")
    match = _ANGLE_PATTERN.match(cleaned)
    if match:
        sign = -1.0 if match.group(1) == "-" else 1.0
        num = int(match.group(2)) if match.group(2) else 1
        den = int(match.group(3)) if match.group(3) else 1
        if den == 0:
            raise ValueError(f"zero denominator in angle {text!r}")
        return sign * num * math.pi / den
    return float(cleaned)


def parse_complex(text: str) -> complex:
    """Parse ``"re,im"`` (or a bare real) into a complex number."""
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) != 2:
        raise ValueError(f"complex value must be 're,im', got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


@dataclass(frozen=True)
class RunConfig:
    """Fully parsed and validated invocation."""

    command: str
    output: Path
    format: str
    params: WalkParams | None = None
    coin: CoinSpinor | None = None
    t: int = 0
    variant: str = "full"
    law: str = "theorem1"
    n: int = 0
    grid: tuple[float, float, int, float, float, int] | None = None


def _read_config_file(path: str) -> dict[str, str]:
    data: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"malformed config line {raw!r}")
        data[key.strip()] = value.strip()
    return data


def _merged_options(args: argparse.Namespace) -> dict[str, str]:
    merged: dict[str, str] = {}
    if args.config:
        merged.update(_read_config_file(args.config))
    for key in ("rho", "nu", "alpha", "beta", "t", "variant", "law", "n",
                "grid", "out", "format"):
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


def _require(options: dict[str, str], key: str) -> str:
    value = options.get(key)
    if value is None:
        raise ValueError(f"missing required option --{key}")
    return value


def _parse_grid(text: str) -> tuple[float, float, int, float, float, int]:
    tokens = text.replace(",", " ").split()
    if len(tokens) != 6:
        raise ValueError(
            "grid must have six entries: rho_min rho_max rho_steps"
            " nu_min nu_max nu_steps"
        )
    rho_min, rho_max = float(tokens[0]), float(tokens[1])
    rho_steps = int(tokens[2])
    nu_min, nu_max = parse_angle(tokens[3]), parse_angle(tokens[4])
    nu_steps = int(tokens[5])
    if not (0.0 < rho_min <= rho_max < 1.0):
        raise ValueError("grid rho bounds must satisfy 0 < rho_min <= rho_max < 1")
    if nu_min > nu_max:
        raise ValueError("grid nu bounds must satisfy nu_min <= nu_max")
    if rho_steps < 2 or nu_steps < 2:
        raise ValueError("grid must have at least 2 steps per axis")
    return (rho_min, rho_max, rho_steps, nu_min, nu_max, nu_steps)


def _make_config(args: argparse.Namespace) -> RunConfig:
    options = _merged_options(args)
    command = args.command
    output = Path(_require(options, "out"))
    fmt = options.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown format {fmt!r}")

    if command == "sweep":
        return RunConfig(
            command=command,
            output=output,
            format=fmt,
            grid=_parse_grid(_require(options, "grid")),
        )

    rho = float(_require(options, "rho"))
    if not 0.0 < rho < 1.0:
        raise ValueError(f"rho must lie strictly between 0 and 1, got {rho}")
    params = WalkParams(rho=rho, nu=parse_angle(_require(options, "nu")))
    coin = CoinSpinor(
        a0=parse_complex(options.get("alpha", "1,0")),
        a1=parse_complex(options.get("beta", "0,0")),
    )
    if abs(coin.norm_sq() - 1.0) > 1e-9:
        raise ValueError("coin amplitudes must be normalised to 1 within 1e-9")

    variant = options.get("variant", "full")
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    law = options.get("law", "theorem1")
    if law not in LAW_KINDS:
        raise ValueError(f"unknown law {law!r}")
    n = int(options.get("n", "0"))

    t = 0
    if command in ("simulate", "compare"):
        t = int(_require(options, "t"))
        if t < 0:
            raise ValueError("t must be nonnegative")

    return RunConfig(
        command=command,
        output=output,
        format=fmt,
        params=params,
        coin=coin,
        t=t,
        variant=variant,
        law=law,
        n=n,
    )


def _csv_text(header: str, rows: list[str], meta: list[str] | None = None) -> str:
    lines = [f"# {key_value}" for key_value in meta] if meta else []
    lines.append(header)
    lines.extend(rows)
    return "\n".join(lines) + "\n"


def cmd_simulate(cfg: RunConfig) -> str:
    """Exact distribution and amplitudes after t steps, one row per site."""
    state = evolve(cfg.coin, cfg.params, cfg.t, variant=cfg.variant)
    probs = distribution(state).probs
    xs = state.positions()
    if cfg.format == "json":
        rows = [
            {
                "x": int(x),
                "prob": float(p),
                "amp0_re": float(a[0].real),
                "amp0_im": float(a[0].imag),
                "amp1_re": float(a[1].real),
                "amp1_im": float(a[1].imag),
            }
            for x, p, a in zip(xs, probs, state.amps)
        ]
        return _json_text({"command": "simulate", "rows": rows})
    rows = [
        ",".join(
            (
                str(int(x)),
                _fmt(p),
                _fmt(a[0].real),
                _fmt(a[0].imag),
                _fmt(a[1].real),
                _fmt(a[1].imag),
            )
        )
        for x, p, a in zip(xs, probs, state.amps)
    ]
    return _csv_text("x,prob,amp0_re,amp0_im,amp1_re,amp1_im", rows)


def cmd_density(cfg: RunConfig) -> str:
    """Limit density on a 2001-point grid padded 5% beyond the support."""
    law = make_limit_law(cfg.law, cfg.params, cfg.coin, n=cfg.n)
    xs = np.linspace(
        -_DENSITY_GRID_PAD * law.support_hi,
        _DENSITY_GRID_PAD * law.support_hi,
        _DENSITY_GRID_POINTS,
    )
    vals = law.density(xs)
    if cfg.format == "json":
        rows = [
            {"x": float(x), "density": float(v)} for x, v in zip(xs, vals)
        ]
        return _json_text({"command": "density", "rows": rows})
    rows = [f"{_fmt(x)},{_fmt(v)}" for x, v in zip(xs, vals)]
    return _csv_text("x,density", rows)


def report_to_dict(report: ComparisonReport) -> dict:
    """JSON-ready dictionary of a comparison report."""
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "compare",
        "t": int(report.t),
        "variant": report.variant,
        "law": report.law_kind,
        "smoothing_width": int(report.smoothing_width),
        "ks_distance": float(report.ks_distance),
        "moment_errors": [
            {"r": int(r), "error": float(e)} for r, e in report.moment_errors
        ],
        "rows": [
            {"x": int(x), "simulated": float(s), "approx": float(a)}
            for x, s, a in zip(
                report.positions, report.simulated, report.approx
            )
        ],
    }


def report_from_dict(data: dict) -> ComparisonReport:
    """Rebuild a comparison report from its JSON dictionary."""
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {data.get('schema_version')!r}")
    rows = data["rows"]
    return ComparisonReport(
        t=int(data["t"]),
        variant=data["variant"],
        law_kind=data["law"],
        ks_distance=float(data["ks_distance"]),
        moment_errors=tuple(
            (int(item["r"]), float(item["error"]))
            for item in data["moment_errors"]
        ),
        positions=np.array([row["x"] for row in rows], dtype=int),
        simulated=np.array([row["simulated"] for row in rows]),
        approx=np.array([row["approx"] for row in rows]),
        smoothing_width=int(data["smoothing_width"]),
    )


def cmd_compare(cfg: RunConfig) -> str:
    """Comparison report: metadata block plus per-site rows."""
    report = run_comparison(
        cfg.params,
        cfg.coin,
        cfg.t,
        variant=cfg.variant,
        law_kind=cfg.law,
        n=cfg.n,
    )
    if cfg.format == "json":
        return _json_text(report_to_dict(report))
    meta = [
        f"schema_version,{SCHEMA_VERSION}",
        "command,compare",
        f"t,{report.t}",
        f"variant,{report.variant}",
        f"law,{report.law_kind}",
        f"smoothing_width,{report.smoothing_width}",
        f"ks_distance,{_fmt(report.ks_distance)}",
    ]
    meta.extend(
        f"moment_error_r{r},{_fmt(e)}" for r, e in report.moment_errors
    )
    rows = [
        f"{int(x)},{_fmt(s)},{_fmt(a)}"
        for x, s, a in zip(report.positions, report.simulated, report.approx)
    ]
    return _csv_text("x,simulated,approx", rows, meta=meta)


def cmd_sweep(cfg: RunConfig) -> str:
    """Support half-width over the (rho, nu) grid, rho-major row order."""
    rho_min, rho_max, rho_steps, nu_min, nu_max, nu_steps = cfg.grid
    rhos = np.linspace(rho_min, rho_max, rho_steps)
    nus = np.linspace(nu_min, nu_max, nu_steps)
    triples = [
        (rho, nu, support_halfwidth(WalkParams(rho=float(rho), nu=float(nu))))
        for rho in rhos
        for nu in nus
    ]
    if cfg.format == "json":
        rows = [
            {"rho": float(r), "nu": float(v), "h_star": float(h)}
            for r, v, h in triples
        ]
        return _json_text({"command": "sweep", "rows": rows})
    rows = [f"{_fmt(r)},{_fmt(v)},{_fmt(h)}" for r, v, h in triples]
    return _csv_text("rho,nu,h_star", rows)


def _json_text(payload: dict) -> str:
    body = {"schema_version": SCHEMA_VERSION}
    body.update(payload)
    return json.dumps(body, indent=2) + "\n"


_COMMANDS = {
    "simulate": cmd_simulate,
    "density": cmd_density,
    "compare": cmd_compare,
    "sweep": cmd_sweep,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwalk",
        description="Five-diagonal unitary walk: simulation, limit laws, comparisons.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="flat key=value file; flags override it")
        p.add_argument("--out", help="output file path")
        p.add_argument("--format", choices=("csv", "json"), dest="format")

    def add_params(p: argparse.ArgumentParser) -> None:
        p.add_argument("--rho", help="reflection weight in (0,1)")
        p.add_argument("--nu", help="phase angle (radians or pi-token like pi/2)")
        p.add_argument("--alpha", help="coin amplitude a0 as re,im (default 1,0)")
        p.add_argument("--beta", help="coin amplitude a1 as re,im (default 0,0)")

    p_sim = sub.add_parser("simulate", help="exact finite-time distribution")
    add_params(p_sim)
    p_sim.add_argument("--t", help="number of steps")
    p_sim.add_argument("--variant", choices=VARIANTS)
    add_common(p_sim)

    p_den = sub.add_parser("density", help="limit density on a grid")
    add_params(p_den)
    p_den.add_argument("--law", choices=LAW_KINDS)
    p_den.add_argument("--n", help="branch index of the standard law")
    add_common(p_den)

    p_cmp = sub.add_parser("compare", help="simulation vs limit law report")
    add_params(p_cmp)
    p_cmp.add_argument("--t", help="number of steps")
    p_cmp.add_argument("--variant", choices=VARIANTS)
    p_cmp.add_argument("--law", choices=LAW_KINDS)
    p_cmp.add_argument("--n", help="branch index of the standard law")
    add_common(p_cmp)

    p_swp = sub.add_parser("sweep", help="support half-width over a parameter grid")
    p_swp.add_argument(
        "--grid",
        help="rho_min,rho_max,rho_steps,nu_min,nu_max,nu_steps (angles may use pi-tokens)",
    )
    add_common(p_swp)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _make_config(args)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        text = _COMMANDS[cfg.command](cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        cfg.output.write_text(text)
    except OSError as exc:
        print(f"error: cannot write {cfg.output}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
