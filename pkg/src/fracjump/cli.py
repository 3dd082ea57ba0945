"""Command-line interface: ``fracjump {deriv,characterize,paper}``.

Exit codes: 0 success, 1 input error, 2 flag error, 3 no findings.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Sequence

from . import numeric
from .characterize import (
    DEFAULT_SLOPE_TOLERANCE,
    characterize_signal,
    fmt_number,
    numeric_knot_values,
    phase_indicator,
)
from .closedform import Side, eval_expression, jumarie_left_closed, jumarie_right_closed
from .worked import (
    DISCREPANCIES,
    EXAMPLE_LABELS,
    EXAMPLE_ALPHAS,
    example_function,
    printed_knot_values,
)
from .piecewise import InputError, PiecewiseFunction, SampleSeries

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_FLAGS = 2
EXIT_NO_FINDINGS = 3

PROG = "fracjump"


class FlagError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    alpha: float | None
    side: str
    engine: str
    input: Path | None
    output: Path | None
    grid: numeric.GridSpec | None
    threshold: float | None
    slope_tolerance: float
    format: str
    example: int | None
    h: float


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # pragma: no cover - exercised via main
        raise FlagError(message)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, help="order in (0, 1); default 0.5")
    p.add_argument("--side", choices=("left", "right", "both"), default="both")
    p.add_argument("--engine", choices=("closed", "gl", "quad"), default="closed")
    p.add_argument("--grid", help="start:stop:step (inclusive start)")
    p.add_argument("--input", type=Path)
    p.add_argument("--output", type=Path, help="output file (a directory for paper --format csv)")
    p.add_argument("--threshold", type=float)
    p.add_argument("--slope-tolerance", type=float, default=DEFAULT_SLOPE_TOLERANCE)
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--example", type=int, help="built-in example 1-5")
    p.add_argument("--h", type=float, default=1e-4, help="step of the gl engine")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description="Left and right fractional derivatives of "
                     "piecewise polynomials, and kink reports for sampled signals.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    _add_common(sub.add_parser("deriv", help="derivatives of a function JSON on a grid"))
    _add_common(sub.add_parser("characterize", help="kink report for a signal CSV"))
    _add_common(sub.add_parser("paper", help="reproduce the built-in examples"))
    return parser


def parse_config(argv: Sequence[str] | None) -> CliConfig:
    """Parse and validate flags; raises :class:`FlagError` on any problem."""
    args = build_parser().parse_args(argv)
    cmd = args.subcommand

    if args.alpha is not None and not 0.0 < args.alpha < 1.0:
        raise FlagError(f"--alpha must lie in (0, 1), got {args.alpha}")
    if args.engine == "gl" and args.side != "left":
        raise FlagError("--engine gl computes left derivatives only; use --side left")
    if not args.h > 0:
        raise FlagError("--h must be positive")
    if args.threshold is not None and args.threshold < 0:
        raise FlagError("--threshold must be non-negative")
    if args.slope_tolerance < 0:
        raise FlagError("--slope-tolerance must be non-negative")
    if args.example is not None:
        if cmd != "paper":
            raise FlagError("--example only applies to the paper subcommand")
        if args.example not in range(1, 6):
            raise FlagError("--example must be 1..5")
    if cmd in ("deriv", "characterize") and args.input is None:
        raise FlagError(f"{cmd} requires --input")
    if cmd == "paper" and args.input is not None:
        raise FlagError("paper uses built-in functions and takes no --input")

    grid = None
    if args.grid is not None:
        try:
            grid = numeric.GridSpec.parse(args.grid)
        except ValueError as exc:
            raise FlagError(f"--grid: {exc}") from None

    fmt = args.format or ("csv" if cmd == "deriv" else "json")
    if cmd == "paper":
        if fmt == "csv" and args.output is None:
            raise FlagError("paper --format csv needs --output DIRECTORY")
        if grid is not None and (grid.start < 0 or grid.points()[-1] > 1 + 1e-12):
            raise FlagError("--grid must stay inside [0, 1] for the built-in examples")
    alpha = args.alpha if args.alpha is not None or cmd == "paper" else 0.5
    return CliConfig(
        cmd, alpha, args.side, args.engine, args.input, args.output, grid,
        args.threshold, args.slope_tolerance, fmt, args.example, args.h,
    )


# -- output helpers ---------------------------------------------------------


def fmt(v: float) -> str:
    if math.isnan(v):
        return "nan"
    s = f"{v:.10g}"
    return "0" if s == "-0" else s


def _json_text(obj: Any) -> str:
    return json.dumps(obj, indent=2, allow_nan=True) + "\n"


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[float]]) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def write_atomic(path: Path, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(cfg: CliConfig, text: str) -> None:
    if cfg.output is None:
        sys.stdout.write(text)
    else:
        write_atomic(cfg.output, text)


def _read_text(path: Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


# -- deriv ------------------------------------------------------------------


def _engine_functions(
    f: PiecewiseFunction, alpha: float, engine: str, h: float
) -> dict[str, Callable[[float], float]]:
    a, b = f.a, f.b
    if engine == "closed":
        left, right = jumarie_left_closed(f, alpha), jumarie_right_closed(f, alpha)
        return {
            "left": lambda x: eval_expression(left, x),
            "right": lambda x: eval_expression(right, x),
        }

    if engine == "gl":
        def gl_left(x: float) -> float:
            if x <= a:
                return 0.0
            return numeric.gl_derivative(f, alpha, a, x, min(h, (x - a) / 32))

        return {"left": gl_left}

    def spec_for(dist: float) -> numeric.QuadSpec | None:
        # shrink the difference step near the anchor; NaN once it underflows
        s = min(numeric.DEFAULT_QUAD.diff_step, 0.4 * dist / (b - a))
        return numeric.QuadSpec(diff_step=s) if s >= 1e-8 else None

    def quad_left(x: float) -> float:
        if x <= a:
            return 0.0
        spec = spec_for(x - a)
        return math.nan if spec is None else numeric.jumarie_left_numeric(f, alpha, x, spec=spec)

    def quad_right(x: float) -> float:
        if x >= b:
            return 0.0
        spec = spec_for(b - x)
        return math.nan if spec is None else numeric.jumarie_right_numeric(f, alpha, x, spec=spec)

    return {"left": quad_left, "right": quad_right}


def _sides(side: str) -> list[str]:
    return ["left", "right"] if side == "both" else [side]


def derivative_table(
    f: PiecewiseFunction,
    alpha: float,
    grid: numeric.GridSpec,
    *,
    side: str = "both",
    engine: str = "closed",
    h: float = 1e-4,
) -> tuple[list[str], list[list[float]]]:
    """Header and rows ``x, f, dL, dR`` (or the subset for one side)."""
    fns = _engine_functions(f, alpha, engine, h)
    sides = _sides(side)
    header = ["x", "f"] + [{"left": "dL", "right": "dR"}[s] for s in sides]
    columns = [numeric.sample_grid(fns[s], grid) for s in sides]
    rows = []
    for i, x in enumerate(float(x) for x in grid.points()):
        rows.append([x, float(f(x))] + [col[i][1] for col in columns])
    return header, rows


def cmd_deriv(cfg: CliConfig) -> int:
    f = PiecewiseFunction.loads(_read_text(cfg.input))
    grid = cfg.grid or numeric.GridSpec(f.a, f.b, (f.b - f.a) / 100)
    pts = grid.points()
    tol = 1e-12 * (f.b - f.a)
    if pts[0] < f.a - tol or pts[-1] > f.b + tol:
        raise FlagError(f"--grid leaves the function domain [{f.a:g}, {f.b:g}]")
    header, rows = derivative_table(
        f, cfg.alpha, grid, side=cfg.side, engine=cfg.engine, h=cfg.h
    )
    if cfg.format == "csv":
        _emit(cfg, _csv_text(header, rows))
        return EXIT_OK

    doc: dict[str, Any] = {
        "alpha": fmt_number(cfg.alpha),
        "engine": cfg.engine,
        "columns": header,
        "rows": [[float(fmt(v)) for v in row] for row in rows],
    }
    if cfg.engine == "closed":
        doc["expressions"] = {
            s: _expression_json(f, cfg.alpha, Side(s)) for s in _sides(cfg.side)
        }
    _emit(cfg, _json_text(doc))
    return EXIT_OK


def _expression_json(f: PiecewiseFunction, alpha: float, side: Side) -> dict:
    e = jumarie_left_closed(f, alpha) if side is Side.LEFT else jumarie_right_closed(f, alpha)
    doc = e.to_json()
    doc["alpha"] = fmt_number(doc["alpha"])
    for r in doc["regions"]:
        r["from"], r["to"] = fmt_number(r["from"]), fmt_number(r["to"])
        for t in r["terms"]:
            for key in ("c", "center", "exp"):
                t[key] = fmt_number(t[key])
    return doc


# -- characterize -----------------------------------------------------------


def cmd_characterize(cfg: CliConfig) -> int:
    series = SampleSeries.read_csv(_read_text(cfg.input))
    report = characterize_signal(
        series, cfg.alpha, cfg.threshold, cfg.slope_tolerance,
        source=str(cfg.input.name),
    )
    if cfg.format == "json":
        text = _json_text(report.to_json())
    else:
        rows = [
            [k.x, k.slope_jump, k.left_value, k.right_value, k.indicator]
            for k in report.findings
        ]
        text = _csv_text(["x", "slope_jump", "left", "right", "indicator"], rows)
    _emit(cfg, text)
    return EXIT_OK if report.findings else EXIT_NO_FINDINGS


# -- built-in examples ------------------------------------------------------------------


def _example_entry(n: int, alpha: float, grid: numeric.GridSpec) -> dict[str, Any]:
    f = example_function(n)
    finding = phase_indicator(f, alpha, 0.5)
    printed = {
        side.value: fmt_number(v) for side, v in printed_knot_values(n, alpha).items()
    }
    header, rows = derivative_table(f, alpha, grid)
    return {
        "example": n,
        "label": EXAMPLE_LABELS[n],
        "alpha": alpha,
        "function": f.to_json(),
        "left_expression": _expression_json(f, alpha, Side.LEFT),
        "right_expression": _expression_json(f, alpha, Side.RIGHT),
        "knot": {
            "x": finding.x,
            "slope_jump": fmt_number(finding.slope_jump),
            "left": fmt_number(finding.left_value),
            "right": fmt_number(finding.right_value),
            "indicator": fmt_number(finding.indicator),
            "magnitude": fmt_number(finding.magnitude),
            "printed": printed,
        },
        "grid": {"columns": header, "rows": [[float(fmt(v)) for v in r] for r in rows]},
    }


def discrepancy_table(alphas: Sequence[float], examples: Sequence[int]) -> list[dict]:
    """Printed versus derived values, with the numeric oracles alongside."""
    out = []
    for d in DISCREPANCIES:
        if d.example not in examples:
            continue
        f = example_function(d.example)
        for alpha in alphas:
            if not d.applies(alpha):
                continue
            x = d.probe
            if d.at_knot:
                closed = getattr(phase_indicator(f, alpha, x), f"{d.side.value}_value")
                pick = 0 if d.side is Side.LEFT else 1
                quad = numeric_knot_values(f, alpha, x, method="quad")[pick]
                gl = numeric_knot_values(f, alpha, x, method="gl")[pick]
            elif d.side is Side.LEFT:
                closed = eval_expression(jumarie_left_closed(f, alpha), x)
                quad = numeric.jumarie_left_numeric(f, alpha, x)
                gl = numeric.gl_derivative(f, alpha, f.a, x, 1e-4)
            else:
                closed = eval_expression(jumarie_right_closed(f, alpha), x)
                quad = numeric.jumarie_right_numeric(f, alpha, x)
                gl = numeric.gl_right_derivative(f, alpha, x, f.b, 1e-4)
            out.append({
                "key": d.key,
                "example": d.example,
                "side": d.side.value,
                "alpha": alpha,
                "x": x,
                "printed": fmt_number(d.printed_value(alpha)),
                "closed_form": fmt_number(closed),
                "gl": fmt_number(gl),
                "quad": fmt_number(quad),
                "description": d.description,
            })
    return out


def cmd_paper(cfg: CliConfig) -> int:
    alphas = (cfg.alpha,) if cfg.alpha is not None else EXAMPLE_ALPHAS
    examples = (cfg.example,) if cfg.example is not None else tuple(range(1, 6))
    grid = cfg.grid or numeric.GridSpec(0.0, 1.0, 0.01)

    entries = [_example_entry(n, a, grid) for n in examples for a in alphas]
    doc = {
        "examples": entries,
        "discrepancies": discrepancy_table(alphas, examples),
    }

    if cfg.format == "csv":
        try:
            cfg.output.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise InputError(f"cannot create {cfg.output}: {exc}") from None
        for e in entries:
            name = f"example{e['example']}_alpha{e['alpha']:g}.csv"
            write_atomic(cfg.output / name, _csv_text(e["grid"]["columns"], e["grid"]["rows"]))
        summary = {
            "examples": [{k: v for k, v in e.items() if k != "grid"} for e in entries],
            "discrepancies": doc["discrepancies"],
        }
        write_atomic(cfg.output / "summary.json", _json_text(summary))
        return EXIT_OK

    _emit(cfg, _json_text(doc))
    return EXIT_OK


COMMANDS = {"deriv": cmd_deriv, "characterize": cmd_characterize, "paper": cmd_paper}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
        return COMMANDS[cfg.subcommand](cfg)
    except FlagError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return EXIT_FLAGS
    except (InputError, OSError) as exc:
        print(f"{PROG}: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
