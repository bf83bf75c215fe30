"""Command-line front end: parameter sweeps, convergence reports, comparisons.

``sweep`` evaluates any subset of the implemented methods over a grid
along one parameter axis (coupling g, detuning delta - 1, or bias) and
writes one record per (point, method, level) to CSV or JSON.  ``converge``
prints the truncation ladder of the exact solver at a single point, and
``compare`` digests a sweep file into per-method error statistics against
the exact energies it contains.

Output is deterministic: records are ordered point-major, method-minor,
level-minor and floats are serialized with 17 significant digits, so
identical configurations give byte-identical files.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional

from .basis import ModelParams, build_overlap_table
from .closedform import (dsc_levels, variational_ground, vvp_ladder, zoa_levels)
from .errors import (ComplexRadicalError, ConvergenceError, DiscriminantError,
                     DomainError, ResonanceError, ResourceLimitError)
from .exact import TRUNCATION_SCHEDULE, assemble, converged_spectrum, eigen_spectrum
from .grwa import brwa_levels, foa_levels, grwa_biased_levels

METHODS = ("exact", "zoa", "dsc", "vvp", "grwa", "brwa", "variational")
AXES = ("g", "detuning_delta", "epsilon")

CSV_HEADER = ("g", "delta", "epsilon", "method", "level_index",
              "energy", "n_tr_used", "flag")


class ConfigError(ValueError):
    """Invalid sweep configuration."""


class MissingExactError(ValueError):
    """Comparison requested but exact energies are absent for some point."""


@dataclass(frozen=True)
class SweepConfig:
    axis: str
    start: float
    stop: float
    count: int
    methods: tuple
    levels: int
    delta: Optional[float] = None
    epsilon: Optional[float] = None
    g: Optional[float] = None
    tol: float = 1e-10
    fmt: str = "csv"
    out: Optional[str] = None

    def __post_init__(self):
        if self.axis not in AXES:
            raise ConfigError(f"unknown axis {self.axis!r}; choose from {AXES}")
        if self.count < 2:
            raise ConfigError("count must be >= 2")
        if not self.start < self.stop:
            raise ConfigError("range start must be < stop")
        if self.levels < 1:
            raise ConfigError("levels must be >= 1")
        if not self.methods:
            raise ConfigError("method set must be non-empty")
        for m in self.methods:
            if m not in METHODS:
                raise ConfigError(f"unknown method {m!r}; choose from {METHODS}")
        if not self.tol > 0:
            raise ConfigError("tol must be positive")
        if self.fmt not in ("csv", "json"):
            raise ConfigError("format must be 'csv' or 'json'")
        fixed_needed = {"g": ("delta", "epsilon"),
                        "detuning_delta": ("g", "epsilon"),
                        "epsilon": ("g", "delta")}[self.axis]
        for name in fixed_needed:
            if getattr(self, name) is None:
                raise ConfigError(f"axis {self.axis!r} requires a fixed --{name}")

    def points(self):
        """Grid points as ModelParams, in axis order."""
        step = (self.stop - self.start) / (self.count - 1)
        out = []
        for i in range(self.count):
            v = self.start + i * step
            if self.axis == "g":
                out.append(ModelParams(self.delta, self.epsilon, v))
            elif self.axis == "epsilon":
                out.append(ModelParams(self.delta, v, self.g))
            else:  # detuning_delta sweeps delta - 1
                out.append(ModelParams(1.0 + v, self.epsilon, self.g))
        return out


@dataclass(frozen=True)
class SweepRecord:
    g: float
    delta: float
    epsilon: float
    method: str
    level_index: int
    energy: Optional[float]
    n_tr_used: Optional[int]
    flag: str


_ERROR_KINDS = (
    (ResonanceError, "resonance"),
    (DiscriminantError, "discriminant"),
    (ComplexRadicalError, "complex_radical"),
    (ConvergenceError, "convergence"),
    (ResourceLimitError, "resource"),
    (DomainError, "domain"),
    (IndexError, "index"),
)


def _error_flag(exc) -> str:
    for cls, kind in _ERROR_KINDS:
        if isinstance(exc, cls):
            return f"error:{kind}"
    raise exc


def _ladder_m_max(levels: int) -> int:
    """Manifolds needed so that ground + pairs cover the requested levels."""
    return max(0, math.ceil((levels - 1) / 2) - 1)


def _evaluate(method: str, params: ModelParams, levels: int, tol: float):
    """Energies of one method at one point.

    Returns (values, n_tr_used, flag) where values is a list of energies in
    level-index order.
    """
    if method == "exact":
        spectrum = converged_spectrum(params, levels, tol)
        return list(spectrum.energies[:levels]), spectrum.n_tr_used, "ok"

    n_tr = max(40, levels + 2)
    table = build_overlap_table(params, n_tr)
    if method == "zoa":
        vals = []
        for m in range(levels + 1):
            pair = zoa_levels(params, m, table)
            vals += [pair.e_minus, pair.e_plus]
        return sorted(vals)[:levels], None, "ok"
    if method == "dsc":
        vals = []
        for m in range((levels + 3) // 2 + 1):
            for parity in ("even", "odd"):
                vals.append(dsc_levels(params, m, parity, table, n_tr))
        return sorted(vals)[:levels], None, "ok"
    if method == "vvp":
        return vvp_ladder(params, levels, table, n_tr), None, "ok"
    if method == "variational":
        return [variational_ground(params).energy], None, "ok"

    m_max = _ladder_m_max(levels)
    if method == "grwa":
        ladder = (foa_levels(params, m_max, table) if params.epsilon == 0.0
                  else grwa_biased_levels(params, m_max, table))
    else:  # brwa
        ladder = brwa_levels(params, m_max, table)
    # records rank levels ascending so they line up with the exact spectrum
    return sorted(ladder.energies())[:levels], None, ladder.flag


def _records_for_point(params: ModelParams, config: SweepConfig):
    recs = []
    for method in config.methods:
        try:
            values, n_tr_used, flag = _evaluate(method, params, config.levels,
                                                config.tol)
        except tuple(cls for cls, _ in _ERROR_KINDS) as exc:
            flag = _error_flag(exc)
            values, n_tr_used = [], None
        if flag.startswith("error:"):
            # keep the failure visible at every requested level slot
            slots = [(level, None) for level in range(config.levels)]
        else:
            # methods with fewer levels than requested (variational) emit
            # only what they produce
            slots = list(enumerate(values[: config.levels]))
        for level, energy in slots:
            recs.append(SweepRecord(
                g=params.g, delta=params.delta, epsilon=params.epsilon,
                method=method, level_index=level, energy=energy,
                n_tr_used=n_tr_used, flag=flag))
    return recs


def run_sweep(config: SweepConfig):
    """Evaluate every requested method at every grid point.

    Per-point failures are recorded in the flag column and never abort the
    sweep.  Points may be evaluated concurrently (RABISPEC_JOBS > 1) but
    records are always emitted in deterministic order.
    """
    points = config.points()
    jobs = int(os.environ.get("RABISPEC_JOBS", "1"))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(lambda p: _records_for_point(p, config), points))
    else:
        chunks = [_records_for_point(p, config) for p in points]
    return [rec for chunk in chunks for rec in chunk]


def _fmt_float(x: Optional[float]) -> str:
    return "" if x is None else format(x, ".17g")


def write_csv(records, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow((_fmt_float(r.g), _fmt_float(r.delta), _fmt_float(r.epsilon),
                         r.method, r.level_index, _fmt_float(r.energy),
                         "" if r.n_tr_used is None else r.n_tr_used, r.flag))


def write_json(records, stream) -> None:
    json.dump([asdict(r) for r in records], stream, indent=1)
    stream.write("\n")


def read_records(path: str):
    """Parse a sweep file (CSV or JSON) back into records."""
    with open(path, encoding="utf-8") as f:
        head = f.read(1)
        f.seek(0)
        if head == "[":
            return [SweepRecord(**row) for row in json.load(f)]
        reader = csv.DictReader(f)
        out = []
        for row in reader:
            out.append(SweepRecord(
                g=float(row["g"]), delta=float(row["delta"]),
                epsilon=float(row["epsilon"]), method=row["method"],
                level_index=int(row["level_index"]),
                energy=float(row["energy"]) if row["energy"] else None,
                n_tr_used=int(row["n_tr_used"]) if row["n_tr_used"] else None,
                flag=row["flag"]))
        return out


def report_errors(records):
    """Per-method, per-level max and mean absolute error against exact.

    Every point must carry exact energies; otherwise MissingExactError.
    Returns rows (method, level_index, n_points, max_abs_err, mean_abs_err).
    """
    exact = {}
    points = set()
    for r in records:
        key = (r.g, r.delta, r.epsilon)
        points.add(key)
        if r.method == "exact" and r.energy is not None:
            exact[key + (r.level_index,)] = r.energy
    for key in points:
        if key + (0,) not in exact:
            raise MissingExactError(f"no exact energies at point {key}")

    acc = {}
    for r in records:
        if r.method == "exact" or r.energy is None:
            continue
        ref = exact.get((r.g, r.delta, r.epsilon, r.level_index))
        if ref is None:
            continue
        err = abs(r.energy - ref)
        bucket = acc.setdefault((r.method, r.level_index), [0, 0.0, 0.0])
        bucket[0] += 1
        bucket[1] = max(bucket[1], err)
        bucket[2] += err
    rows = []
    for (method, level), (n, mx, total) in sorted(acc.items()):
        rows.append((method, level, n, mx, total / n))
    return rows


def _format_report(rows) -> str:
    lines = [f"{'method':<12} {'level':>5} {'points':>6} {'max_abs_err':>14} {'mean_abs_err':>14}"]
    for method, level, n, mx, mean in rows:
        lines.append(f"{method:<12} {level:>5} {n:>6} {mx:>14.6e} {mean:>14.6e}")
    return "\n".join(lines) + "\n"


class _Parser(argparse.ArgumentParser):
    # spec'd exit codes: 1 = configuration error
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def _parse_range(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError("--range must be start:stop:count")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"bad --range {text!r}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rabispec",
                     description="Spectra of a biased two-level system coupled "
                                 "to one bosonic mode.")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="evaluate methods over a parameter grid")
    sweep.add_argument("--axis", required=True, choices=AXES)
    sweep.add_argument("--range", required=True, metavar="a:b:n",
                       help="inclusive grid start:stop:count along the axis "
                            "(detuning_delta sweeps delta - 1)")
    sweep.add_argument("--delta", type=float, default=None)
    sweep.add_argument("--epsilon", type=float, default=None)
    sweep.add_argument("--g", type=float, default=None)
    sweep.add_argument("--methods", default="exact",
                       help="comma-separated subset of " + ",".join(METHODS))
    sweep.add_argument("--levels", type=int, default=7)
    sweep.add_argument("--tol", type=float, default=1e-10)
    sweep.add_argument("--format", dest="fmt", choices=("csv", "json"),
                       default="csv")
    sweep.add_argument("--out", default=None, help="output path (default stdout)")

    conv = sub.add_parser("converge", help="truncation-convergence report for "
                                           "the exact solver at one point")
    conv.add_argument("--delta", type=float, required=True)
    conv.add_argument("--epsilon", type=float, default=0.0)
    conv.add_argument("--g", type=float, required=True)
    conv.add_argument("--levels", type=int, default=7)
    conv.add_argument("--tol", type=float, default=1e-10)

    comp = sub.add_parser("compare", help="error statistics of a sweep file "
                                          "against its exact records")
    comp.add_argument("--input", required=True, help="CSV or JSON sweep file")
    comp.add_argument("--format", dest="fmt", choices=("table", "csv"),
                      default="table")
    comp.add_argument("--out", default=None)
    return parser


def _cmd_sweep(args) -> int:
    start, stop, count = _parse_range(args.range)
    axis_field = {"g": "g", "detuning_delta": "delta", "epsilon": "epsilon"}[args.axis]
    fixed = {"delta": args.delta, "epsilon": args.epsilon, "g": args.g}
    if fixed[axis_field] is not None:
        raise ConfigError(f"--{axis_field} conflicts with --axis {args.axis}")
    config = SweepConfig(axis=args.axis, start=start, stop=stop, count=count,
                         methods=tuple(m.strip() for m in args.methods.split(",") if m.strip()),
                         levels=args.levels, delta=fixed["delta"],
                         epsilon=fixed["epsilon"], g=fixed["g"],
                         tol=args.tol, fmt=args.fmt, out=args.out)
    records = run_sweep(config)
    buffer = io.StringIO()
    if config.fmt == "csv":
        write_csv(records, buffer)
    else:
        write_json(records, buffer)
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="") as f:
            f.write(buffer.getvalue())
    else:
        sys.stdout.write(buffer.getvalue())
    if all(r.flag.startswith("error:") for r in records):
        return 2
    return 0


def _cmd_converge(args) -> int:
    params = ModelParams(args.delta, args.epsilon, args.g)
    prev = None
    print(f"{'n_tr':>6} {'dim':>6} {'max |dE|':>12}   lowest {args.levels} levels")
    for n_tr in TRUNCATION_SCHEDULE:
        if 2 * (n_tr + 1) < args.levels:
            continue
        spectrum = eigen_spectrum(assemble(params, n_tr))
        cur = spectrum.energies[: args.levels]
        change = "" if prev is None else f"{max(abs(cur - prev)):.3e}"
        print(f"{n_tr:>6} {2 * (n_tr + 1):>6} {change:>12}   "
              + " ".join(f"{e:.10f}" for e in cur))
        if prev is not None and max(abs(cur - prev)) < args.tol:
            print(f"converged: n_tr_used={n_tr}, tol={args.tol:g}")
            return 0
        prev = cur
    print(f"not converged to tol={args.tol:g} within the schedule", file=sys.stderr)
    return 2


def _cmd_compare(args) -> int:
    records = read_records(args.input)
    rows = report_errors(records)
    if args.fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(("method", "level_index", "n_points",
                         "max_abs_err", "mean_abs_err"))
        for method, level, n, mx, mean in rows:
            writer.writerow((method, level, n, _fmt_float(mx), _fmt_float(mean)))
        text = buffer.getvalue()
    else:
        text = _format_report(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "converge":
            return _cmd_converge(args)
        return _cmd_compare(args)
    except (ConfigError, MissingExactError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
