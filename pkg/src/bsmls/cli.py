"""Command-line front end.

Exit codes: 0 ok, 2 usage, 3 data/io, 4 numeric, 5 verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bspline_core import Curve, basis_values, curve_eval_many, make_uniform_knots
from .datasets import BUILTIN_NAMES, Dataset, builtin_dataset, parse_points_csv
from .emit import emit_samples
from .equivalence import (
    brute_force_minimize,
    make_report,
    verify_curve_equivalence,
    verify_interpolation,
    verify_surface_equivalence,
)
from .errors import DataError, NumericError
from .mls import MlsProblem, mls_apply, monomial_basis
from .surface import Surface, surface_eval_many
from .weights import CATALOG, WeightSpec, cardinal_weight

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC, EXIT_VERIFY = 0, 2, 3, 4, 5

COMMANDS = (
    "knots",
    "basis",
    "curve",
    "surface",
    "mls",
    "interp",
    "verify-curve",
    "verify-surface",
    "verify-min",
    "dataset",
)

DEFAULT_SAMPLES = {
    "basis": 1001,
    "curve": 1001,
    "surface": 50,
    "mls": 1001,
    "verify-curve": 1000,
    "verify-surface": 50,
    "verify-min": 20,
}
DEFAULT_TOL = {"verify-curve": 1e-10, "verify-surface": 1e-10, "verify-min": 1e-7, "interp": 1e-8}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int = 10
    r: int = 4
    weight: str = "cardinal"
    alpha: float = 1.0
    delta: float = 0.1
    degree: int = 0
    index: int = 0
    samples: int | None = None
    domain: tuple[float, float] | None = None
    dataset: str | None = None
    input: str | None = None
    output: str | None = None
    format: str = "csv"
    tol: float | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.samples is not None and self.samples < 2:
            raise UsageError("--samples must be at least 2")
        if self.r < 1:
            raise UsageError("--r must be at least 1")
        if self.n < 0:
            raise UsageError("--n must be non-negative")
        if self.command in ("knots", "basis") and self.r > self.n + 1:
            raise UsageError(f"--r {self.r} exceeds n+1 = {self.n + 1}")
        if self.command == "interp" and not self.delta > 0:
            raise UsageError("--delta must be positive")
        if self.format not in ("csv", "svg"):
            raise UsageError("--format must be csv or svg")
        if self.domain is not None and not self.domain[0] < self.domain[1]:
            raise UsageError("--domain a:b needs a < b")
        if self.tol is not None and not self.tol >= 0:
            raise UsageError("--tol must be non-negative")

    @property
    def sample_count(self) -> int:
        return self.samples if self.samples is not None else DEFAULT_SAMPLES.get(self.command, 1001)

    @property
    def tolerance(self) -> float:
        return self.tol if self.tol is not None else DEFAULT_TOL.get(self.command, 1e-10)

    def weight_spec(self) -> WeightSpec:
        if self.weight == "cardinal":
            return cardinal_weight(self.r)
        return CATALOG[self.weight](self.alpha)


def _parse_domain(text: str) -> tuple[float, float]:
    try:
        a, b = text.split(":")
        return float(a), float(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=10, help="last node index (built-in data, knots)")
    common.add_argument("--r", type=int, default=4, help="spline order")
    common.add_argument("--weight", choices=list(CATALOG) + ["cardinal"], default="cardinal")
    common.add_argument("--alpha", type=float, default=1.0, help="catalog weight shape")
    common.add_argument("--delta", type=float, default=0.1, help="interpolatory shift")
    common.add_argument("--degree", type=int, default=0, help="MLS polynomial degree")
    common.add_argument("--index", type=int, default=0, help="basis function index")
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--domain", type=_parse_domain, default=None, metavar="A:B")
    common.add_argument("--dataset", choices=BUILTIN_NAMES, default=None)
    common.add_argument("--input", default=None, metavar="FILE")
    common.add_argument("--output", default=None, metavar="FILE")
    common.add_argument("--format", choices=("csv", "svg"), default="csv")
    common.add_argument("--tol", type=float, default=None)

    parser = argparse.ArgumentParser(
        prog="bsmls", description="Uniform B-splines and moving least squares."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "knots": "print the uniform knot vector",
        "basis": "sample one basis function B_{i,r}",
        "curve": "sample the B-spline curve through a dataset",
        "surface": "sample the tensor-product surface through a 2-D dataset",
        "mls": "sample the MLS approximant",
        "interp": "sample the interpolatory MLS variant on x = l/100",
        "verify-curve": "check spline == MLS (shifted by r/2) on a curve dataset",
        "verify-surface": "check surface == 2-D MLS on a surface dataset",
        "verify-min": "check MLS against the brute-force minimizer",
        "dataset": "print a built-in dataset",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "dataset":
            p.add_argument("name", nargs="?", choices=BUILTIN_NAMES, default="xi0-curve")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    dataset = ns.dataset
    if ns.command == "dataset":
        dataset = ns.name
    return RunConfig(
        command=ns.command,
        n=ns.n,
        r=ns.r,
        weight=ns.weight,
        alpha=ns.alpha,
        delta=ns.delta,
        degree=ns.degree,
        index=ns.index,
        samples=ns.samples,
        domain=ns.domain,
        dataset=dataset,
        input=ns.input,
        output=ns.output,
        format=ns.format,
        tol=ns.tol,
    )


def _load(cfg: RunConfig, surface: bool | None) -> Dataset:
    if cfg.input:
        try:
            ds = parse_points_csv(cfg.input)
        except OSError as exc:
            raise DataError(f"cannot read {cfg.input}: {exc}") from exc
    else:
        ds = builtin_dataset(cfg.dataset or ("xi0-surface" if surface else "xi0-curve"), cfg.n)
    if surface is not None and ds.is_surface != surface:
        kind = "surface" if surface else "curve"
        raise DataError(f"command {cfg.command} needs a {kind} dataset")
    return ds


def _node_rows(ds: Dataset):
    return [(p if len(p) > 1 else p[0], v) for p, v in ds.rows()]


def _emit(cfg: RunConfig, samples, nodes=None, title=""):
    emit_samples(samples, cfg.format, cfg.output, nodes=nodes, title=title)


def _report_out(report, extra: dict | None = None) -> int:
    summary = report.summary()
    worst = max(report.samples, key=lambda s: s[3])
    summary["worst_sample"] = {"point": list(worst[0]), "lhs": worst[1], "rhs": worst[2]}
    if extra:
        summary.update(extra)
    sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    return EXIT_OK if report.passed else EXIT_VERIFY


def _curve_domain(cfg, n, r):
    return cfg.domain or (float(r - 1), float(n + 1))


def run(cfg: RunConfig) -> int:
    cfg.validate()
    cmd = cfg.command

    if cmd == "knots":
        kv = make_uniform_knots(cfg.n, cfg.r)
        _emit(cfg, [(i, t) for i, t in enumerate(kv.knots)])
        return EXIT_OK

    if cmd == "basis":
        kv = make_uniform_knots(cfg.n, cfg.r)
        if not 0 <= cfg.index <= cfg.n:
            raise UsageError(f"--index must lie in 0..{cfg.n}")
        lo, hi = cfg.domain or (0.0, float(kv.last_knot))
        t = np.linspace(lo, hi, cfg.sample_count)
        vals = basis_values(kv, cfg.r, t)[cfg.index]
        _emit(cfg, list(zip(t, vals)), title=f"B_{cfg.index},{cfg.r}")
        return EXIT_OK

    if cmd == "dataset":
        ds = _load(cfg, surface=None)
        _emit(cfg, _node_rows(ds), title=ds.name)
        return EXIT_OK

    if cmd == "curve":
        ds = _load(cfg, surface=False)
        if cfg.r > ds.n + 1:
            raise UsageError(f"--r {cfg.r} exceeds n+1 = {ds.n + 1}")
        curve = Curve.from_values(ds.values, cfg.r)
        t = np.linspace(*_curve_domain(cfg, ds.n, cfg.r), cfg.sample_count)
        y = curve_eval_many(curve, t)[:, 1]
        _emit(cfg, list(zip(t, y)), nodes=_node_rows(ds), title=f"{ds.name} order {cfg.r}")
        return EXIT_OK

    if cmd == "surface":
        ds = _load(cfg, surface=True)
        if cfg.r > ds.n + 1:
            raise UsageError(f"--r {cfg.r} exceeds n+1 = {ds.n + 1}")
        surf = Surface.from_grid(ds.values, cfg.r)
        axis = np.linspace(*_curve_domain(cfg, ds.n, cfg.r), cfg.sample_count)
        uu, vv = np.meshgrid(axis, axis, indexing="ij")
        z = surface_eval_many(surf, uu.ravel(), vv.ravel())[:, 2]
        samples = [((u, v), h) for u, v, h in zip(uu.ravel(), vv.ravel(), z)]
        _emit(cfg, samples, nodes=_node_rows(ds), title=f"{ds.name} order {cfg.r}")
        return EXIT_OK

    if cmd == "mls":
        ds = _load(cfg, surface=False)
        problem = MlsProblem(np.arange(ds.n + 1.0), monomial_basis(1, cfg.degree), cfg.weight_spec())
        x = np.linspace(*(cfg.domain or (0.0, float(ds.n))), cfg.sample_count)
        y = [mls_apply(problem, ds.values, xi) for xi in x]
        _emit(cfg, list(zip(x, y)), nodes=_node_rows(ds), title=problem.weight.describe())
        return EXIT_OK

    if cmd == "interp":
        ds = _load(cfg, surface=False)
        count = cfg.samples if cfg.samples is not None else 100 * ds.n
        report = verify_interpolation(ds.values, delta=cfg.delta, sample_count=count, tol=cfg.tolerance)
        _emit(cfg, list(report.trace), nodes=_node_rows(ds), title=f"interpolation delta={cfg.delta:g}")
        return EXIT_OK if report.passed else EXIT_VERIFY

    if cmd == "verify-curve":
        ds = _load(cfg, surface=False)
        if cfg.r > ds.n + 1:
            raise UsageError(f"--r {cfg.r} exceeds n+1 = {ds.n + 1}")
        report = verify_curve_equivalence(
            ds.values, r=cfg.r, sample_count=cfg.sample_count, tol=cfg.tolerance, domain=cfg.domain
        )
        if cfg.output:
            _emit(cfg, [(s[0][0], s[1]) for s in report.samples], nodes=_node_rows(ds))
        return _report_out(report, {"dataset": ds.name, "r": cfg.r})

    if cmd == "verify-surface":
        ds = _load(cfg, surface=True)
        if cfg.r > ds.n + 1:
            raise UsageError(f"--r {cfg.r} exceeds n+1 = {ds.n + 1}")
        report = verify_surface_equivalence(
            ds.values, r=cfg.r, sample_count=cfg.sample_count, tol=cfg.tolerance, domain=cfg.domain
        )
        if cfg.output:
            _emit(cfg, [(s[0], s[1]) for s in report.samples], nodes=_node_rows(ds))
        return _report_out(report, {"dataset": ds.name, "r": cfg.r})

    if cmd == "verify-min":
        ds = _load(cfg, surface=False)
        problem = MlsProblem(np.arange(ds.n + 1.0), monomial_basis(1, cfg.degree), cfg.weight_spec())
        # midpoints between grid samples keep queries off the nodes
        lo, hi = cfg.domain or (0.0, float(ds.n))
        edges = np.linspace(lo, hi, cfg.sample_count + 1)
        x = (edges[:-1] + edges[1:]) / 2.0
        lhs = [mls_apply(problem, ds.values, xi) for xi in x]
        rhs = [brute_force_minimize(problem, ds.values, xi) for xi in x]
        report = make_report("minimizer-oracle", x, lhs, rhs, cfg.tolerance, 0.0)
        return _report_out(report, {"dataset": ds.name, "weight": problem.weight.describe()})

    raise UsageError(f"unhandled command {cmd!r}")  # pragma: no cover


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return run(config_from_args(ns))
    except UsageError as exc:
        print(f"bsmls: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"bsmls: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericError as exc:
        print(f"bsmls: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"bsmls: invalid input: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
