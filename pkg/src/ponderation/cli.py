"""Command-line front end: ``ponderation <subcommand> [options]``.

Every table starts with a versioned header comment naming its columns.  Exit
codes: 0 success, 1 a verification suite failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, fields
from typing import Sequence

import numpy as np

from . import operators as ops
from . import ring, series, verification
from .quadrature import build_grid, exact_radial_moment
from .scalars import parse_scalar

CSV_VERSION = "ponderation-table/1"
SUBCOMMANDS = ("symbol", "kernel", "transform", "moments", "verify", "explore-theta")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    n: int = 1
    m_max: int = 60
    tolerance: float = 1e-10
    radial: int = 64
    angular: int = 32
    t_order: int | None = None
    normalization: str = "calibrated"
    seed: int = 1
    format: str = "csv"
    output: str | None = None

    def validate(self):
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand {self.subcommand!r}")
        if self.n not in (1, 2):
            raise UsageError("n must be 1 or 2")
        if self.m_max < 0:
            raise UsageError("m_max must be >= 0")
        if not self.tolerance > 0:
            raise UsageError("tolerance must be positive")
        if self.radial < 16 or self.angular < 8:
            raise UsageError("grid needs radial >= 16 and angular >= 8")
        if self.normalization not in ops.NORMALIZATIONS:
            raise UsageError(f"normalization must be one of {ops.NORMALIZATIONS}")
        if self.format not in ("csv", "json"):
            raise UsageError("format must be csv or json")
        return self


CONFIG_KEYS = {f.name for f in fields(RunConfig)} - {"subcommand"}


# ---------------------------------------------------------------- output

def _num(x) -> str:
    return repr(float(x))


def _complex_cols(prefix: str, z) -> dict:
    z = complex(z)
    return {f"{prefix}_re": _num(z.real), f"{prefix}_im": _num(z.imag)}


def _emit(cfg: RunConfig, table: str, columns: list[str], rows: list[dict], extra: dict | None = None):
    if cfg.format == "json":
        payload = {"format": CSV_VERSION, "table": table, "config": asdict(cfg), "columns": columns,
                   "rows": rows}
        if extra:
            payload.update(extra)
        text = json.dumps(verification._jsonable(payload), indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        buf.write(f"# {CSV_VERSION} table={table} columns={','.join(columns)}\n")
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow({c: row.get(c, "") for c in columns})
        text = buf.getvalue()
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- parsing helpers

def parse_complex(text: str) -> complex:
    try:
        return complex(parse_scalar(text.strip()))
    except (TypeError, ValueError) as exc:
        raise UsageError(f"cannot read complex number {text!r}") from exc


def parse_point(text: str, n: int) -> tuple[tuple, tuple]:
    vals = [parse_complex(v) for v in text.split(",")]
    if len(vals) != 2 * n:
        raise UsageError(f"point {text!r} needs {2 * n} comma-separated values (zbar then u)")
    return tuple(vals[:n]), tuple(vals[n:])


def parse_u_points(text: str, n: int) -> np.ndarray:
    text = text.strip()
    if text.startswith("["):
        data = json.loads(text)
        if n == 1:
            pts = [[complex(parse_scalar(p))] for p in data]
        else:
            pts = [[complex(parse_scalar(v)) for v in p] for p in data]
    else:
        pts = [[parse_complex(v) for v in chunk.split(",")] for chunk in text.split(";")]
        if n == 1 and len(pts) == 1:
            pts = [[v] for v in pts[0]]
    arr = np.array(pts, dtype=complex)
    if arr.ndim != 2 or arr.shape[1] != n:
        raise UsageError(f"u points must have {n} coordinates each")
    return arr


def parse_weight(spec: str, n: int, c=2):
    spec = spec.strip()
    if spec.startswith("{"):
        return ring.weight_from_json(json.loads(spec))
    if spec in ("1", "unit", "identity"):
        return ring.unit(n)
    if spec.startswith("factorial_power:"):
        return ring.module_element(ring.factorial_power(int(spec.split(":")[1])), ring.unit(n))
    try:
        return series.catalog_weight(spec, n, c)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def parse_alpha(text: str | None, n: int):
    if text is None:
        return None
    alpha = tuple(int(v) for v in text.split(","))
    if len(alpha) != n:
        raise UsageError(f"alpha needs {n} entries")
    return alpha


def parse_function(text: str, n: int) -> ops.TestFunction:
    try:
        f = ops.TestFunction.from_json(json.loads(text)) if text.strip().startswith("[") \
            else ops.TestFunction.parse(text, n)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read test function {text!r}: {exc}") from exc
    if f.n != n:
        f = ops.TestFunction.from_mapping({g + (0,) * (n - len(g)): c for g, c in f.terms}, n)
    return f


# ---------------------------------------------------------------- subcommands

def cmd_symbol(cfg: RunConfig, args) -> int:
    n = cfg.n
    weight = parse_weight(args.weight, n, args.c)
    points = [parse_point(p, n) for p in (args.point or [",".join(["1"] * 2 * n)])]
    columns = ([f"zbar{j + 1}_{p}" for j in range(n) for p in ("re", "im")]
               + [f"u{j + 1}_{p}" for j in range(n) for p in ("re", "im")]
               + ["kernel_re", "kernel_im", "symbol_re", "symbol_im", "tail_bound", "denominator_magnitude", "error"])
    rows = []
    for zbar, u in points:
        row = {}
        for j in range(n):
            row.update(_complex_cols(f"zbar{j + 1}", zbar[j]))
            row.update(_complex_cols(f"u{j + 1}", u[j]))
        try:
            ker = series.kernel_series(series.KernelQuery(weight, zbar, u, args.M, cfg.m_max, args.mode))
            row.update(_complex_cols("kernel", ker.value))
            row["tail_bound"] = _num(ker.tail_bound)
            if args.M is None:
                sym = series.symbol(weight, zbar, u, cfg.m_max, args.mode)
                row.update(_complex_cols("symbol", sym.value))
                row["denominator_magnitude"] = _num(sym.denominator_magnitude)
        except (series.SeriesDomainError, ValueError) as exc:
            row["error"] = str(exc)
        rows.append(row)
    _emit(cfg, "symbol", columns, rows)
    return 0


def _default_kernel_points(n: int) -> list[tuple[tuple, tuple]]:
    vals = [-1.5, -0.5 + 0.5j, 0.0, 0.7, 1.2 - 0.3j]
    if n == 1:
        return [((v,), (1.0,)) for v in vals]
    return [((a, b), (1.0, 1.0)) for a, b in zip(vals, reversed(vals))]


def cmd_kernel(cfg: RunConfig, args) -> int:
    n = cfg.n
    tags = args.tag or (["g1", "g2", "g3", "g1_e", "g1_o"] if n == 1
                        else ["g1", "g2", "g3", "g", "g_ee", "g_oo", "g_eo", "g_oe"])
    points = [parse_point(p, n) for p in args.point] if args.point else _default_kernel_points(n)
    columns = (["tag"] + [f"w{j + 1}_{p}" for j in range(n) for p in ("re", "im")]
               + ["series_re", "series_im", "closed_re", "closed_im", "abs_diff", "tail_bound"]
               + (["hankel_J_re", "hankel_J_im"] if args.hankel else []) + ["error"])
    rows = []
    for tag in tags:
        try:
            weight = series.catalog_weight(tag, n, args.c)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        for zbar, u in points:
            row = {"tag": tag}
            for j in range(n):
                row.update(_complex_cols(f"w{j + 1}", zbar[j] * u[j]))
            try:
                val = series.kernel_series(series.KernelQuery(weight, zbar, u, None, cfg.m_max))
                closed = series.closed_form(tag, zbar, u, **series.catalog_tag(weight)[1])
                row.update(_complex_cols("series", val.value))
                row.update(_complex_cols("closed", closed))
                row["abs_diff"] = _num(abs(val.value - closed))
                row["tail_bound"] = _num(val.tail_bound)
                if args.hankel and tag == "g3":
                    row.update(_complex_cols("hankel_J", series.hankel_candidate(zbar, u, args.c)))
            except (series.SeriesDomainError, ValueError) as exc:
                row["error"] = str(exc)
            rows.append(row)
    _emit(cfg, "kernel", columns, rows)
    return 0


def _grid(cfg: RunConfig, s: float = 0.0):
    return build_grid(cfg.n, cfg.radial, cfg.angular, s, cfg.t_order)


def cmd_transform(cfg: RunConfig, args) -> int:
    n = cfg.n
    f = parse_function(args.f, n)
    u = parse_u_points(args.u, n)
    alpha = parse_alpha(args.alpha, n)
    if args.tag == "simple" and alpha is None:
        raise UsageError("--tag simple needs --alpha")
    try:
        op = ops.OperatorDescriptor(args.tag, n, cfg.normalization, alpha=alpha, c=args.c)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    grid = _grid(cfg)
    series_vals = ops.apply_operator(op, f, u, grid, cfg.m_max).values
    columns = ([f"u{j + 1}_{p}" for j in range(n) for p in ("re", "im")] if n > 1 else ["u_re", "u_im"]) \
        + ["val_re", "val_im", "residual", "error"]
    rows = []
    for point, ser in zip(u, series_vals):
        row = {"error": ""}
        if n == 1:
            row.update(_complex_cols("u", point[0]))
        else:
            for j in range(n):
                row.update(_complex_cols(f"u{j + 1}", point[j]))
        try:
            named = ops.named_transform(args.tag, f, point[None, :], grid, cfg.normalization, alpha, args.c).values[0]
        except series.SeriesDomainError as exc:
            named, row["error"] = complex("nan"), str(exc)
        val, alt = (named, ser) if args.route == "named" else (ser, named)
        row.update(_complex_cols("val", val))
        row["residual"] = _num(abs(val - alt))
        rows.append(row)
    extra = {"calibration_constant": ops.calibration(grid).constant} if cfg.format == "json" else None
    _emit(cfg, "transform", columns, rows, extra)
    return 0


def cmd_moments(cfg: RunConfig, args) -> int:
    grid = _grid(cfg, args.s)
    columns = ["k", "grid_value", "oracle", "rel_error"]
    rows = []
    for k in range(args.k_max + 1):
        got = grid.radial_moment(k)
        exact = exact_radial_moment(k, cfg.n, args.s)
        rows.append({"k": k, "grid_value": _num(got), "oracle": _num(exact), "rel_error": _num(abs(got / exact - 1))})
    _emit(cfg, "moments", columns, rows)
    return 0


def cmd_verify(cfg: RunConfig, args) -> int:
    names = verification.SUITES if not args.suite or "all" in args.suite else args.suite
    for name in names:
        if name not in verification.SUITES:
            raise UsageError(f"unknown suite {name!r}")
    vcfg = verification.SuiteConfig(m_max=cfg.m_max, radial_order=max(cfg.radial, 64),
                                    angular_order=max(cfg.angular, 64))
    reports = verification.run_all(cfg.seed, vcfg, names, workers=args.workers)
    for rep in reports:
        print(f"{rep.name}: {rep.cases} cases, {len(rep.failures)} failures, {rep.wall_time:.2f}s",
              file=sys.stderr)
    columns = ["suite", "cases", "failures", "passed", "source"]
    rows = [{"suite": r.name, "cases": r.cases, "failures": len(r.failures),
             "passed": "report-only" if r.passed is None else str(r.passed).lower(), "source": r.source}
            for r in reports]
    extra = None
    if cfg.format == "json":
        extra = {"reports": [{k: v for k, v in r.to_json().items() if k != "wall_time"} for r in reports]}
    _emit(cfg, "verify", columns, rows, extra)
    return 1 if any(r.passed is False for r in reports) else 0


def cmd_explore_theta(cfg: RunConfig, args) -> int:
    cfg.n = 1
    grid = _grid(cfg)
    data = ops.theta_eigenvalues(grid, args.k_max, cfg.m_max)
    columns = ["k", "lambda_theta_re", "lambda_theta_im", "central_binomial_over_pi2",
               "lambda_identity_re", "ratio_to_identity_re", "residual"]
    rows = [{"k": d["k"], **_complex_cols("lambda_theta", d["lambda_theta"]),
             "central_binomial_over_pi2": _num(d["central_binomial_over_pi2"]),
             "lambda_identity_re": _num(d["lambda_identity"].real),
             "ratio_to_identity_re": _num(d["ratio_to_identity"].real),
             "residual": _num(d["off_diagonal_residual"])} for d in data]
    _emit(cfg, "explore-theta", columns, rows)
    return 0


HANDLERS = {"symbol": cmd_symbol, "kernel": cmd_kernel, "transform": cmd_transform,
            "moments": cmd_moments, "verify": cmd_verify, "explore-theta": cmd_explore_theta}


# ---------------------------------------------------------------- argument parsing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="dimension (1 or 2; default 1)")
    common.add_argument("--m-max", dest="m_max", type=int, help="series truncation (default 60)")
    common.add_argument("--tol", dest="tolerance", type=float, help="tolerance (default 1e-10)")
    common.add_argument("--grid-radial", dest="radial", type=int, help="radial Gauss order (default 64)")
    common.add_argument("--grid-angular", dest="angular", type=int, help="angular nodes (default 32)")
    common.add_argument("--grid-t", dest="t_order", type=int, help="Gauss-Legendre order in t for n = 2")
    common.add_argument("--normalization", choices=ops.NORMALIZATIONS, help="default calibrated")
    common.add_argument("--seed", type=int, help="random seed (default 1)")
    common.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--config", help="JSON file with RunConfig fields; flags override it")

    parser = argparse.ArgumentParser(prog="ponderation", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("symbol", parents=[common], help="evaluate I_M^psi and a_psi at points")
    p.add_argument("--weight", default="g1", help="catalog tag (g1, g2, g3, g, g_ee, ...), 'unit' or JSON")
    p.add_argument("--point", action="append", help="zbar_1..zbar_n,u_1..u_n (repeatable), e.g. 1+0i,1+0i")
    p.add_argument("--M", type=float, default=None, help="kernel index (default n-1; symbol needs the default)")
    p.add_argument("--mode", choices=series.MODES, default="generic")
    p.add_argument("--c", type=float, default=2)

    p = sub.add_parser("kernel", parents=[common], help="series against closed forms")
    p.add_argument("--tag", action="append", choices=series.CLOSED_FORM_TAGS)
    p.add_argument("--point", action="append")
    p.add_argument("--c", type=float, default=2)
    p.add_argument("--hankel", action="store_true", help="add the J_n candidate for g3")

    p = sub.add_parser("transform", parents=[common], help="operators on monomial inputs")
    p.add_argument("--tag", required=True, choices=ops.NAMED_TAGS)
    p.add_argument("--f", required=True, help='test function, e.g. "z^1+3z^2" or JSON monomial list')
    p.add_argument("--u", required=True, help="points: 0.5 | 0.5,0.3+0.1i | JSON list")
    p.add_argument("--alpha", help="multi-index for the simple tag, e.g. 1 or 0,2")
    p.add_argument("--c", type=float, default=2)
    p.add_argument("--route", choices=("series", "named"), default="series")

    p = sub.add_parser("moments", parents=[common], help="radial moment table against its closed form")
    p.add_argument("--k-max", dest="k_max", type=int, default=6)
    p.add_argument("--s", type=float, default=0.0)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", action="append", help="suite name or 'all' (repeatable)")
    p.add_argument("--workers", type=int, default=1, help="worker processes (one suite each)")

    p = sub.add_parser("explore-theta", parents=[common], help="open-problem data for the class of 1")
    p.add_argument("--k-max", dest="k_max", type=int, default=6)
    return parser


def resolve_config(args) -> RunConfig:
    values = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        unknown = set(loaded) - CONFIG_KEYS - {"subcommand"}
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        values.update({k: v for k, v in loaded.items() if k in CONFIG_KEYS})
    for key in CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            values[key] = val
    return RunConfig(subcommand=args.subcommand, **values).validate()


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        return HANDLERS[cfg.subcommand](cfg, args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
