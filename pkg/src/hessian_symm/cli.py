"""Body generators, experiment runner and the ``hessian-symm`` command line."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from hessian_symm.geometry import Ball, ConvexBody, Ellipsoid, FourierBody2D, Polygon, Polytope3D, homothety, shape_summary
from hessian_symm.khessian import SourceField, radial_eigen
from hessian_symm.quermass import hausdorff_asymmetry, quermassintegrals, steiner_volume_check
from hessian_symm.report import CSV_FIELDS, FAIL, PASS, DeficitReport, fmt
from hessian_symm.stability import ExcludedCaseError, constants_table, format_constants, gs_worst, propagation_check
from hessian_symm.symmetrize import ConeOverBody, cone_minorant_check
from hessian_symm.verify import (
    explicit_solution,
    faber_krahn_report,
    hk_comparison_report,
    pointwise_tso_check,
    polya_szego_report,
    saint_venant_report,
    talenti_data,
    talenti_gap_report,
)


class ConfigError(ValueError):
    """Invalid experiment configuration (exit status 1)."""


FAMILY_DIM = {"polygons": 2, "fourier": 2, "ellipses": 2, "polytopes3d": 3, "ellipsoids": 3, "balls": None}
SOURCE_VALUE = 2.0
MAX_RESAMPLES = 1000


@dataclass
class FamilySpec:
    name: str
    n: int
    count: int
    params: dict = field(default_factory=dict)

    def param(self, key, default, cast=float):
        return cast(self.params.get(key, default))


def _label(spec: FamilySpec, i: int) -> str:
    return f"{spec.name}-{i:05d}"


def _unit_ball_points(rng, count, n):
    g = rng.standard_normal((count, n))
    g /= np.linalg.norm(g, axis=1)[:, None]
    return g * rng.random(count)[:, None] ** (1.0 / n)


def _fourier_body(spec: FamilySpec, rng, label):
    amp = spec.param("amplitude", 0.05)
    modes = spec.param("modes", 4, int)
    for _ in range(MAX_RESAMPLES):
        a = np.zeros(modes + 1)
        b = np.zeros(modes + 1)
        a[1:] = amp * rng.uniform(-1.0, 1.0, modes)
        b[1:] = amp * rng.uniform(-1.0, 1.0, modes)
        try:
            return FourierBody2D(1.0, a, b, label=label)
        except ValueError:
            continue
    raise ConfigError(f"fourier amplitude {amp} gives no convex sample after {MAX_RESAMPLES} tries")


def generate_bodies(spec: FamilySpec, seed: int) -> list[ConvexBody]:
    """Deterministic list of bodies; body i draws from default_rng(seed ^ i)."""
    dim = FAMILY_DIM.get(spec.name, -1)
    if dim == -1:
        raise ConfigError(f"unknown family {spec.name!r}")
    if dim is not None and spec.n != dim:
        raise ConfigError(f"family {spec.name} lives in dimension {dim}, not {spec.n}")
    if spec.count < 1:
        raise ConfigError("count must be positive")
    out = []
    if spec.name in ("ellipses", "ellipsoids"):
        lo, hi = spec.param("a_min", 1.0), spec.param("a_max", 1.6)
        if not 0 < lo <= hi:
            raise ConfigError("need 0 < a_min <= a_max")
        for i, a in enumerate(np.linspace(lo, hi, spec.count)):
            axes = [a, 1.0 / a] if spec.name == "ellipses" else [a, 1.0, 1.0 / a]
            out.append(Ellipsoid(np.zeros(spec.n), axes, label=_label(spec, i)))
        return out
    if spec.name == "balls":
        radii = [float(r) for r in str(spec.params.get("radii", "0.5,1,2")).split(",")]
        return [Ball(np.zeros(spec.n), radii[i % len(radii)], label=_label(spec, i)) for i in range(spec.count)]
    vertices = spec.param("vertices", 20, int)
    for i in range(spec.count):
        rng = np.random.default_rng(seed ^ i)
        label = _label(spec, i)
        if spec.name == "polygons":
            out.append(Polygon.hull(_unit_ball_points(rng, vertices, 2), label=label))
        elif spec.name == "polytopes3d":
            out.append(Polytope3D(_unit_ball_points(rng, vertices, 3), label=label))
        else:
            out.append(_fourier_body(spec, rng, label))
    return out


# --------------------------------------------------------------- experiments


@dataclass
class ExperimentConfig:
    experiment: str
    family: FamilySpec
    k: int | None = None
    seed: int = 0
    samples: int = 100_000
    out: str | None = None
    format: str = "csv"
    workers: int = 1


def _inner_homothet(body: ConvexBody, seed: int) -> ConvexBody:
    """A homothet about an interior point, close enough to meet the propagation hypothesis."""
    rng = np.random.default_rng(seed)
    s = shape_summary(body)
    n = body.dim
    d_h = hausdorff_asymmetry(body).d_H_to_steiner_ball
    if isinstance(body, (Polygon, Polytope3D)):
        w = rng.dirichlet(np.ones(len(body.vertices)))
        p = w @ body.vertices
    else:
        p = s.steiner_point
    eps = rng.uniform(0.05, 1.0) * d_h / (2 * (n + 2) * s.diameter)
    return homothety(body, 1.0 - eps, p) if eps > 0 else body


def _steiner_report(body, seed, samples):
    rho = 0.5
    chk = steiner_volume_check(body, rho, samples, seed)
    lhs, rhs = 4.0 * chk.stderr, abs(chk.predicted - chk.estimated)
    return DeficitReport("steiner_mc", lhs, rhs, PASS if chk.passed else FAIL, n=body.dim,
                         alpha=hausdorff_asymmetry(body).alpha, body_id=body.label,
                         extra={"predicted": chk.predicted, "estimated": chk.estimated})


def _cone_function(body):
    if isinstance(body, (Polygon, Polytope3D)):
        apex = body.vertices.mean(axis=0)
    else:
        apex = shape_summary(body).steiner_point
    return ConeOverBody(body, apex, -1.0)


def _source(body):
    return SourceField.constant(body, SOURCE_VALUE)


EXPERIMENTS = {
    "gs_bound": lambda b, k, seed, cfg: gs_worst(b),
    "propagation": lambda b, k, seed, cfg: propagation_check(b, _inner_homothet(b, seed)),
    "steiner": lambda b, k, seed, cfg: _steiner_report(b, seed, cfg.samples),
    "cone_minorant": lambda b, k, seed, cfg: cone_minorant_check(_cone_function(b), k - 1),
    "polya_szego": lambda b, k, seed, cfg: polya_szego_report(explicit_solution(b, _source(b), k), k),
    "talenti": lambda b, k, seed, cfg: talenti_gap_report(b, _source(b), k),
    "hk_comparison": lambda b, k, seed, cfg: hk_comparison_report(b, _source(b), k),
    "pointwise_tso": lambda b, k, seed, cfg: pointwise_tso_check(b, _source(b), k),
    "faber_krahn": lambda b, k, seed, cfg: faber_krahn_report(b, k),
    "saint_venant": lambda b, k, seed, cfg: saint_venant_report(b, k),
}
NEEDS_K = {"cone_minorant", "polya_szego", "talenti", "hk_comparison", "pointwise_tso", "faber_krahn", "saint_venant"}


def _validate(cfg: ExperimentConfig):
    if cfg.experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {cfg.experiment!r}; choose from {', '.join(sorted(EXPERIMENTS))}")
    n = cfg.family.n
    if n not in (2, 3) and cfg.family.name != "balls":
        raise ConfigError("geometric families live in dimension 2 or 3")
    if cfg.experiment in NEEDS_K:
        if cfg.k is None:
            raise ConfigError(f"experiment {cfg.experiment} needs --k")
        if cfg.k == n:
            raise ConfigError("k = n (Monge-Ampere) is excluded")
        if not 1 <= cfg.k <= n - 1:
            raise ConfigError(f"k must satisfy 1 <= k <= n-1 = {n - 1}")
    if cfg.format not in ("csv", "json"):
        raise ConfigError("format must be csv or json")
    if cfg.workers < 1:
        raise ConfigError("workers must be positive")


def compute_reports(cfg: ExperimentConfig) -> list[DeficitReport]:
    _validate(cfg)
    bodies = generate_bodies(cfg.family, cfg.seed)
    fun = EXPERIMENTS[cfg.experiment]

    def one(item):
        i, body = item
        return fun(body, cfg.k, cfg.seed ^ i, cfg)

    items = list(enumerate(bodies))
    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            reports = list(pool.map(one, items))
    else:
        reports = [one(it) for it in items]
    for r in reports:
        if r.k is None and cfg.k is not None and cfg.experiment in NEEDS_K:
            r.k = cfg.k
    return sorted(reports, key=lambda r: r.body_id or "")


def render(reports: list[DeficitReport], fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps([r.to_json() for r in reports], indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in reports:
        row = r.row()
        w.writerow([fmt(row[f]) for f in CSV_FIELDS])
    return buf.getvalue()


def _write(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def run_experiment(cfg: ExperimentConfig) -> int:
    """Write one row per body; 0 if nothing failed, 2 on any fail, 1 on configuration or I/O errors."""
    try:
        reports = compute_reports(cfg)
        _write(render(reports, cfg.format), cfg.out)
    except (ConfigError, ExcludedCaseError, TypeError, ValueError) as exc:
        print(f"hessian-symm: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"hessian-symm: I/O error: {exc}", file=sys.stderr)
        return 1
    return 2 if any(r.status == FAIL for r in reports) else 0


# ----------------------------------------------------------------------- CLI


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def read_config(path: str) -> dict:
    """Line-oriented key=value file; ``family.*`` keys become family parameters."""
    conf: dict = {"family_params": {}}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, val = (s.strip() for s in line.split("=", 1))
            if key.startswith("family."):
                conf["family_params"][key[len("family."):]] = val
            else:
                conf[key] = val
    return conf


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hessian-symm", description="Quermassintegral symmetrization and k-Hessian inequality checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run an experiment over a body family")
    run.add_argument("--config")
    run.add_argument("--experiment")
    run.add_argument("--family")
    run.add_argument("--n", type=int)
    run.add_argument("--k", type=int)
    run.add_argument("--count", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--samples", type=int)
    run.add_argument("--out")
    run.add_argument("--format", choices=("csv", "json"))
    run.add_argument("--workers", type=int)
    run.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                     help="family parameter, e.g. vertices=20 or amplitude=0.05")

    const = sub.add_parser("constants", help="dump the explicit constants for (n, k)")
    const.add_argument("--n", type=int, required=True)
    const.add_argument("--k", type=int, required=True)
    const.add_argument("--out")

    dump = sub.add_parser("profile-dump", help="write a radial profile as CSV")
    dump.add_argument("--kind", choices=("symmetrand", "solution", "eigen"), default="symmetrand")
    dump.add_argument("--family", default="ellipses")
    dump.add_argument("--n", type=int)
    dump.add_argument("--k", type=int, default=1)
    dump.add_argument("--index", type=int, default=0)
    dump.add_argument("--seed", type=int, default=0)
    dump.add_argument("--points", type=int, default=257)
    dump.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    dump.add_argument("--out")
    return p


def _params(pairs) -> dict:
    out = {}
    for item in pairs:
        if "=" not in item:
            raise ConfigError(f"family parameter {item!r} is not key=value")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _family_dim(name, n):
    dim = FAMILY_DIM.get(name, -1)
    if dim == -1:
        raise ConfigError(f"unknown family {name!r}")
    return n if n is not None else (dim if dim is not None else 2)


def config_from_args(args) -> ExperimentConfig:
    conf = read_config(args.config) if args.config else {"family_params": {}}
    for key in ("experiment", "family", "n", "k", "count", "seed", "samples", "out", "format", "workers"):
        val = getattr(args, key)
        if val is not None:
            conf[key] = val
    conf["family_params"].update(_params(args.param))
    if "experiment" not in conf or "family" not in conf:
        raise ConfigError("both --experiment and --family are required")
    try:
        n = _family_dim(conf["family"], int(conf["n"]) if "n" in conf else None)
        fam = FamilySpec(conf["family"], n, int(conf.get("count", 10)), conf["family_params"])
        return ExperimentConfig(
            experiment=conf["experiment"],
            family=fam,
            k=int(conf["k"]) if "k" in conf else None,
            seed=int(conf.get("seed", 0)),
            samples=int(conf.get("samples", 100_000)),
            out=conf.get("out"),
            format=conf.get("format", "csv"),
            workers=int(conf.get("workers", 1)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def _profile_dump(args) -> int:
    n = _family_dim(args.family, args.n)
    fam = FamilySpec(args.family, n, args.index + 1, _params(args.param))
    body = generate_bodies(fam, args.seed)[args.index]
    if args.kind == "eigen":
        z = quermassintegrals(body).mean_radius(args.k - 1) if not isinstance(body, Ball) else body.radius
        text = radial_eigen(n, args.k, z).profile.to_csv(points=args.points)
    else:
        data = talenti_data(body, _source(body), args.k)
        if args.kind == "symmetrand":
            text = data.star.to_csv(points=args.points)
        else:
            text = data.u0.to_csv(points=args.points)
    _write(text, args.out)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "constants":
            text = format_constants(constants_table(args.n, args.k)) + "\n"
            _write(text, args.out)
            return 0
        if args.command == "profile-dump":
            return _profile_dump(args)
        cfg = config_from_args(args)
    except (ConfigError, ExcludedCaseError, TypeError, ValueError) as exc:
        print(f"hessian-symm: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"hessian-symm: I/O error: {exc}", file=sys.stderr)
        return 1
    return run_experiment(cfg)


if __name__ == "__main__":
    sys.exit(main())
