"""Command-line front end.

Subcommands: ``analyze`` (spectral and reduction report as JSON), ``orbit``
and ``portrait`` (orbit samples as CSV), ``restrict`` (invariant-plane
restriction and chart orbit), ``induced`` (return-map samples on the
zero-eigenvalue plane) and ``scan`` (one-parameter attractor sweep).

Exit codes: 0 success, 2 invalid input, 3 runtime dynamics failure,
4 reduction hypothesis failure.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass, fields

import numpy as np

from .analysis import attractor, default_x0, scan
from .errors import (
    DynamicsError,
    IllConditioned,
    NoReturn,
    NotContinuous,
    NotSingular,
    PwldynError,
    ReductionError,
    UnsupportedDimension,
)
from .linalg import Spectrum, real_eigen
from .pwlmap import BcnfParams, PwlMap, bcnf, fixed_points, orbit, validate_continuity
from .reduction import (
    Chart,
    classify_unit_modulus,
    detect_shared_eigenvalue,
    plane_chart,
    reduced_orbit,
    restrict_to_manifold,
    sample_induced,
    zero_eig_reduction,
)

__all__ = ["RunConfig", "main"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DYNAMICS = 3
EXIT_REDUCTION = 4

_BCNF_KEYS = ("tl", "dl", "sl", "tr", "dr", "sr")


@dataclass
class RunConfig:
    """Effective settings of one invocation; serializable to an INI file."""

    dim: int | None = None
    tl: float | None = None
    dl: float | None = None
    sl: float | None = None
    tr: float | None = None
    dr: float | None = None
    sr: float | None = None
    matrix_file: str | None = None
    x0: tuple[float, ...] | None = None
    transient: int = 1000
    keep: int = 3000
    escape_radius: float = 1e12
    tol: float = 1e-9
    grid: str | None = None
    param: str | None = None
    values: tuple[float, ...] | None = None
    seed: int | None = None
    format: str | None = None


# ---------------------------------------------------------------------------
# config file round trip


def dump_config(cfg: RunConfig) -> str:
    parser = configparser.ConfigParser()
    parser["map"] = {}
    if cfg.matrix_file is not None:
        parser["map"]["matrix_file"] = cfg.matrix_file
    else:
        if cfg.dim is not None:
            parser["map"]["dim"] = str(cfg.dim)
        for key in _BCNF_KEYS:
            val = getattr(cfg, key)
            if val is not None:
                parser["map"][key] = repr(float(val))
    parser["orbit"] = {
        "transient": str(cfg.transient),
        "keep": str(cfg.keep),
        "escape_radius": repr(float(cfg.escape_radius)),
    }
    if cfg.x0 is not None:
        parser["orbit"]["x0"] = ",".join(repr(float(v)) for v in cfg.x0)
    parser["tolerances"] = {"tol": repr(float(cfg.tol))}
    parser["sampling"] = {}
    if cfg.grid is not None:
        parser["sampling"]["grid"] = cfg.grid
    if cfg.param is not None:
        parser["sampling"]["param"] = cfg.param
    if cfg.values is not None:
        parser["sampling"]["values"] = ",".join(repr(float(v)) for v in cfg.values)
    if cfg.seed is not None:
        parser["sampling"]["seed"] = str(cfg.seed)
    parser["output"] = {}
    if cfg.format is not None:
        parser["output"]["format"] = cfg.format
    buf = io.StringIO()
    parser.write(buf)
    return buf.getvalue()


def load_config(path: str) -> RunConfig:
    parser = configparser.ConfigParser()
    with open(path, encoding="utf-8") as fh:
        parser.read_file(fh)
    cfg = RunConfig()
    if parser.has_section("map"):
        sec = parser["map"]
        if "matrix_file" in sec:
            cfg.matrix_file = sec["matrix_file"]
        if "dim" in sec:
            cfg.dim = sec.getint("dim")
        for key in _BCNF_KEYS:
            if key in sec:
                setattr(cfg, key, sec.getfloat(key))
    if parser.has_section("orbit"):
        sec = parser["orbit"]
        cfg.transient = sec.getint("transient", cfg.transient)
        cfg.keep = sec.getint("keep", cfg.keep)
        cfg.escape_radius = sec.getfloat("escape_radius", cfg.escape_radius)
        if "x0" in sec:
            cfg.x0 = _parse_floats(sec["x0"], "x0")
    if parser.has_section("tolerances"):
        cfg.tol = parser["tolerances"].getfloat("tol", cfg.tol)
    if parser.has_section("sampling"):
        sec = parser["sampling"]
        cfg.grid = sec.get("grid", cfg.grid)
        cfg.param = sec.get("param", cfg.param)
        if "values" in sec:
            cfg.values = _parse_floats(sec["values"], "values")
        if "seed" in sec:
            cfg.seed = sec.getint("seed")
    if parser.has_section("output"):
        cfg.format = parser["output"].get("format", cfg.format)
    return cfg


def _parse_floats(text: str, what: str) -> tuple[float, ...]:
    items = [s for s in text.split(",") if s.strip()]
    if not items:
        raise ValueError(f"empty {what} list")
    try:
        return tuple(float(s) for s in items)
    except ValueError as exc:
        raise ValueError(f"could not parse {what}: {text!r}") from exc


def resolve_config(args: argparse.Namespace, command: str) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    inline_bcnf = args.dim is not None or any(
        getattr(args, key) is not None for key in _BCNF_KEYS
    )
    if inline_bcnf and args.matrix_file:
        raise ValueError("give either normal-form coefficients or --matrix-file, not both")
    if args.matrix_file:
        cfg.matrix_file = args.matrix_file
        cfg.dim = None
        for key in _BCNF_KEYS:
            setattr(cfg, key, None)
    elif inline_bcnf:
        cfg.matrix_file = None
        if args.dim is not None:
            cfg.dim = args.dim
        for key in _BCNF_KEYS:
            val = getattr(args, key)
            if val is not None:
                setattr(cfg, key, val)
    if args.x0 is not None:
        cfg.x0 = _parse_floats(args.x0, "x0")
    for key in ("transient", "keep", "escape_radius", "tol", "grid", "param", "seed"):
        val = getattr(args, key)
        if val is not None:
            setattr(cfg, key, val)
    if args.values is not None:
        cfg.values = _parse_floats(args.values, "values")
    if args.format is not None:
        cfg.format = args.format
    if cfg.format is None:
        cfg.format = "json" if command in ("analyze", "restrict") else "csv"
    if cfg.format not in ("csv", "json"):
        raise ValueError(f"unknown output format {cfg.format!r}")
    return cfg


# ---------------------------------------------------------------------------
# map construction


def read_matrix_file(path: str) -> PwlMap:
    """Plain-text map file: first the size n, then row-wise A_L, A_R, b, c."""
    with open(path, encoding="utf-8") as fh:
        tokens = fh.read().split()
    if not tokens:
        raise ValueError(f"matrix file {path!r} is empty")
    try:
        n = int(tokens[0])
        data = [float(t) for t in tokens[1:]]
    except ValueError as exc:
        raise ValueError(f"matrix file {path!r} contains non-numeric data") from exc
    need = 2 * n * n + 2 * n
    if n < 1 or len(data) != need:
        raise ValueError(
            f"matrix file {path!r} must hold {need} numbers after the size, got {len(data)}"
        )
    a_l = np.array(data[: n * n]).reshape(n, n)
    a_r = np.array(data[n * n : 2 * n * n]).reshape(n, n)
    b = np.array(data[2 * n * n : 2 * n * n + n])
    c = np.array(data[2 * n * n + n :])
    return PwlMap(a_l, a_r, b, c)


def build_bcnf_params(cfg: RunConfig) -> BcnfParams:
    if cfg.matrix_file is not None:
        raise ValueError("this command needs normal-form coefficients, not a matrix file")
    if cfg.dim is None:
        raise ValueError(
            "no map specification: give --dim with coefficients, --matrix-file, or --config"
        )
    required = ["tl", "dl", "tr", "dr"] + (["sl", "sr"] if cfg.dim == 3 else [])
    missing = [k for k in required if getattr(cfg, k) is None]
    if missing:
        raise ValueError(f"missing normal-form coefficients: {', '.join(missing)}")
    return BcnfParams(
        dim=cfg.dim, tl=cfg.tl, dl=cfg.dl, tr=cfg.tr, dr=cfg.dr, sl=cfg.sl, sr=cfg.sr
    )


def build_map(cfg: RunConfig) -> PwlMap:
    if cfg.matrix_file is not None:
        return read_matrix_file(cfg.matrix_file)
    return bcnf(build_bcnf_params(cfg))


# ---------------------------------------------------------------------------
# output helpers


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj)!r}")


def _write_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".pwldyn-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit_json(payload, out: str | None) -> None:
    _write_text(json.dumps(payload, indent=2, default=_json_default) + "\n", out)


def _emit_csv(header: list[str], rows, out: str | None) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])
    _write_text(buf.getvalue(), out)


def _floats(arr) -> list:
    return [float(v) for v in np.asarray(arr).ravel()]


# ---------------------------------------------------------------------------
# report builders


def _spectrum_dict(spec: Spectrum) -> dict:
    return {
        "real": [
            {
                "value": t.value,
                "multiplicity": t.multiplicity,
                "canonical": t.canonical,
                "left": _floats(t.left),
                "right": _floats(t.right),
            }
            for t in spec.real
        ],
        "complex_pairs": [
            {
                "real": p.real,
                "imag": p.imag,
                "modulus": p.modulus,
                "multiplicity": p.multiplicity,
            }
            for p in spec.complex_pairs
        ],
    }


def _fixed_point_dict(info) -> dict:
    if info.point is None:
        return {"point": None, "admissible": None, "borderline": False, "reason": info.reason}
    return {
        "point": _floats(info.point),
        "admissible": info.admissible,
        "borderline": info.borderline,
    }


def _plane_dict(plane) -> dict:
    return {
        "normal": _floats(plane.normal),
        "base_point": _floats(plane.base_point),
        "offset": plane.offset,
    }


def _restricted_dict(rmap) -> dict:
    payload = {
        "dimension": rmap.dimension,
        "matrix_left": rmap.matrix_left.tolist(),
        "offset_left": _floats(rmap.offset_left),
        "matrix_right": rmap.matrix_right.tolist(),
        "offset_right": _floats(rmap.offset_right),
        "switch_normal": _floats(rmap.switch_normal),
        "switch_offset": rmap.switch_offset,
        "chart": {
            "base_point": _floats(rmap.chart.base),
            "basis": rmap.chart.basis.tolist(),
        },
    }
    if rmap.dimension == 1:
        payload["slopes"] = list(rmap.slopes())
    return payload


def _shared_dict(red) -> dict:
    return {
        "value": red.value,
        "other_shared": list(red.other_shared),
        "left_eigenvector": _floats(red.left),
        "right_eigenvector": _floats(red.right),
        "offset": red.offset,
        "manifold": _plane_dict(red.manifold),
        "transversal": red.transversal,
        "restricted": None if red.restricted is None else _restricted_dict(red.restricted),
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_analyze(cfg: RunConfig, out: str | None) -> int:
    pwl = build_map(cfg)
    report: dict = {
        "map": {
            "n": pwl.n,
            "A_L": pwl.A_L.tolist(),
            "A_R": pwl.A_R.tolist(),
            "b": _floats(pwl.b),
            "c": _floats(pwl.c),
        }
    }
    try:
        report["continuity"] = {"p": _floats(validate_continuity(pwl))}
    except NotContinuous as exc:
        report["continuity"] = {"error": f"NotContinuous: {exc}"}
    report["eigenvalues"] = {
        "L": _spectrum_dict(real_eigen(pwl.A_L, cfg.tol)),
        "R": _spectrum_dict(real_eigen(pwl.A_R, cfg.tol)),
    }
    fp = fixed_points(pwl)
    report["fixed_points"] = {
        "right": _fixed_point_dict(fp.right),
        "left": _fixed_point_dict(fp.left),
    }
    try:
        red = detect_shared_eigenvalue(pwl, cfg.tol)
        report["shared_eigenvalue"] = None if red is None else _shared_dict(red)
    except PwldynError as exc:
        report["shared_eigenvalue"] = {"error": f"{type(exc).__name__}: {exc}"}
    try:
        plane = zero_eig_reduction(pwl, cfg.tol)
        report["zero_eigenvalue"] = _plane_dict(plane)
    except NotSingular:
        report["zero_eigenvalue"] = None
    except PwldynError as exc:
        report["zero_eigenvalue"] = {"error": f"{type(exc).__name__}: {exc}"}
    report["unit_modulus"] = [
        {
            "side": r.side,
            "kind": r.kind,
            "value": r.value,
            "theta": r.theta,
            "resonant": r.resonant,
        }
        for r in classify_unit_modulus(pwl, cfg.tol)
    ]
    _emit_json(report, out)
    return EXIT_OK


def cmd_orbit(cfg: RunConfig, out: str | None, portrait: bool) -> int:
    pwl = build_map(cfg)
    x0 = np.asarray(cfg.x0, dtype=float) if cfg.x0 is not None else default_x0(pwl)
    if portrait:
        orb = orbit(pwl, x0, cfg.transient, cfg.keep, cfg.escape_radius)
    else:
        orb = orbit(pwl, x0, 0, cfg.transient + cfg.keep, cfg.escape_radius)
    if orb.points.shape[0] == 0:
        print(f"error: orbit escaped at step {orb.escape_index} before any retained point",
              file=sys.stderr)
        return EXIT_DYNAMICS
    coords = [f"x{i + 1}" for i in range(pwl.n)]
    if cfg.format == "json":
        payload = {
            "points": orb.points.tolist(),
            "itinerary": orb.itinerary.tolist(),
            "escaped": orb.escaped,
            "escape_index": orb.escape_index,
            "transient_discarded": orb.transient_discarded,
        }
        if not portrait:
            payload["first_index"] = 0
        _emit_json(payload, out)
        return EXIT_OK
    if portrait:
        rows = (
            [*(float(v) for v in pt), sym]
            for pt, sym in zip(orb.points, orb.itinerary)
        )
        _emit_csv(coords + ["symbol"], rows, out)
    else:
        rows = (
            [k, *(float(v) for v in pt), sym]
            for k, (pt, sym) in enumerate(zip(orb.points, orb.itinerary))
        )
        _emit_csv(["k"] + coords + ["symbol"], rows, out)
    return EXIT_OK


def cmd_restrict(cfg: RunConfig, out: str | None) -> int:
    pwl = build_map(cfg)
    red = detect_shared_eigenvalue(pwl, cfg.tol)
    if red is None:
        raise ReductionError("no eigenvalue is shared by the two pieces at this tolerance")
    rmap = restrict_to_manifold(red)
    x0 = np.asarray(cfg.x0, dtype=float) if cfg.x0 is not None else default_x0(pwl)
    orb = reduced_orbit(rmap, rmap.chart.project(x0), cfg.transient, cfg.keep, cfg.escape_radius)
    cobweb = None
    if rmap.dimension == 1 and orb.points.shape[0] > 0:
        lo = float(orb.points.min())
        hi = float(orb.points.max())
        pad = 0.05 * (hi - lo) + 1e-9
        count = 512
        if cfg.grid is not None:
            lo, hi, count = _parse_grid_axis(cfg.grid)
            pad = 0.0
        xs = np.linspace(lo - pad, hi + pad, count)
        fxs = np.array([float(rmap(np.array([x]))[0]) for x in xs])
        cobweb = {"x": xs.tolist(), "fx": fxs.tolist()}
    if cfg.format == "json":
        payload = {
            "shared": _shared_dict(red),
            "reduced": _restricted_dict(rmap),
            "orbit": {
                "points": orb.points.tolist(),
                "itinerary": orb.itinerary.tolist(),
                "escaped": orb.escaped,
            },
            "cobweb": cobweb,
        }
        _emit_json(payload, out)
        return EXIT_OK
    if rmap.dimension == 1 and cobweb is not None:
        rows = ([x, fx] for x, fx in zip(cobweb["x"], cobweb["fx"]))
        _emit_csv(["x", "fx"], rows, out)
    else:
        coords = [f"xi{i + 1}" for i in range(rmap.dimension)]
        rows = (
            [*(float(v) for v in pt), sym]
            for pt, sym in zip(orb.points, orb.itinerary)
        )
        _emit_csv(coords + ["symbol"], rows, out)
    return EXIT_OK


def _parse_grid_axis(spec: str) -> tuple[float, float, int]:
    bits = spec.split(":")
    if len(bits) != 3:
        raise ValueError(f"grid axis must be lo:hi:count, got {spec!r}")
    lo, hi, count = float(bits[0]), float(bits[1]), int(bits[2])
    if count < 1:
        raise ValueError("grid count must be at least 1")
    return lo, hi, count


def _parse_grid(spec: str, dims: int) -> np.ndarray:
    parts = spec.split(",")
    if len(parts) != dims:
        raise ValueError(f"grid needs {dims} axis specs lo:hi:count, got {len(parts)}")
    axes = []
    for part in parts:
        lo, hi, count = _parse_grid_axis(part)
        axes.append(np.linspace(lo, hi, count))
    if dims == 1:
        return axes[0][:, None]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.column_stack([m.ravel() for m in mesh])


def _default_induced_grid(pwl, plane, chart, cfg: RunConfig) -> np.ndarray:
    cloud = attractor(pwl, default_x0(pwl), cfg.transient, cfg.keep, cfg.escape_radius)
    mask = np.abs(plane.distances(cloud.points)) <= cfg.tol * (
        1.0 + np.linalg.norm(cloud.points, axis=1)
    )
    if not np.any(mask):
        raise NoReturn("the sampled attractor never visits the section; give --grid explicitly")
    coords = chart.project_many(cloud.points[mask])
    lo = coords.min(axis=0)
    hi = coords.max(axis=0)
    pad = 0.02 * (hi - lo) + 1e-9
    dims = coords.shape[1]
    count = 500 if dims == 1 else 40
    axes = [np.linspace(lo[d] - pad[d], hi[d] + pad[d], count) for d in range(dims)]
    if dims == 1:
        return axes[0][:, None]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.column_stack([m.ravel() for m in mesh])


def cmd_induced(cfg: RunConfig, out: str | None) -> int:
    pwl = build_map(cfg)
    plane = zero_eig_reduction(pwl, cfg.tol)
    chart = plane_chart(plane)
    if cfg.grid is not None:
        grid = _parse_grid(cfg.grid, pwl.n - 1)
    else:
        grid = _default_induced_grid(pwl, plane, chart, cfg)
    samples = sample_induced(pwl, plane, grid, chart=chart, membership_tol=cfg.tol)
    if all(s.status != "ok" for s in samples):
        print("error: every grid sample failed to return to the section", file=sys.stderr)
        return EXIT_DYNAMICS
    d = pwl.n - 1
    if cfg.format == "json":
        payload = {
            "plane": _plane_dict(plane),
            "chart": {"base_point": _floats(chart.base), "basis": chart.basis.tolist()},
            "samples": [
                {
                    "point": _floats(s.point),
                    "image": None if s.image is None else _floats(s.image),
                    "return_time": s.return_time,
                    "itinerary": None if s.itinerary is None else list(s.itinerary),
                    "status": s.status,
                }
                for s in samples
            ],
        }
        _emit_json(payload, out)
        return EXIT_OK
    header = (
        [f"in{i + 1}" for i in range(d)]
        + [f"out{i + 1}" for i in range(d)]
        + ["j", "status"]
    )
    rows = []
    for s in samples:
        row = list(float(v) for v in s.point)
        if s.image is None:
            row += [None] * d + [None, s.status]
        else:
            row += [float(v) for v in s.image] + [s.return_time, s.status]
        rows.append(row)
    _emit_csv(header, rows, out)
    return EXIT_OK


def cmd_scan(cfg: RunConfig, out: str | None) -> int:
    base = build_bcnf_params(cfg)
    if cfg.param is None:
        raise ValueError("scan needs --param")
    if not cfg.values:
        raise ValueError("scan needs a non-empty --values list")
    x0 = np.asarray(cfg.x0, dtype=float) if cfg.x0 is not None else None
    result = scan(
        base,
        cfg.param,
        cfg.values,
        x0=x0,
        n_transient=cfg.transient,
        n_keep=cfg.keep,
        escape_radius=cfg.escape_radius,
    )
    from dataclasses import replace as _replace

    n = bcnf(base).n
    plane_stat: list[float] = []
    for v in result.values:
        pwl = bcnf(_replace(base, **{cfg.param: v}))
        stat = float("nan")
        try:
            red = detect_shared_eigenvalue(pwl, cfg.tol)
        except PwldynError:
            red = None
        cloud = result.clouds[result.values.index(v)]
        if red is not None and cloud is not None and cloud.points.shape[0] > 0:
            stat = float(np.max(np.abs(red.manifold.distances(cloud.points))))
        plane_stat.append(stat)
    rows = []
    for i, v in enumerate(result.values):
        cloud = result.clouds[i]
        if cloud is None or cloud.points.shape[0] == 0:
            size = 0 if cloud is not None else None
            bbox = [float("nan")] * (2 * n)
            escaped = cloud.escaped if cloud is not None else None
        else:
            size = cloud.points.shape[0]
            bbox = [float(x) for x in cloud.points.min(axis=0)] + [
                float(x) for x in cloud.points.max(axis=0)
            ]
            escaped = cloud.escaped
        prev = result.consecutive_hausdorff[i - 1] if i > 0 else float("nan")
        rows.append(
            [v, size, escaped, *bbox, plane_stat[i], prev, result.errors[i]]
        )
    header = (
        ["value", "cloud_size", "escaped"]
        + [f"min_x{i + 1}" for i in range(n)]
        + [f"max_x{i + 1}" for i in range(n)]
        + ["plane_dist_max", "hausdorff_prev", "error"]
    )
    if cfg.format == "json":
        payload = {
            "parameter": result.parameter,
            "values": list(result.values),
            "consecutive_hausdorff": list(result.consecutive_hausdorff),
            "rows": [dict(zip(header, row)) for row in rows],
        }
        _emit_json(payload, out)
        return EXIT_OK
    _emit_csv(header, rows, out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    spec = common.add_argument_group("map specification")
    spec.add_argument("--config", metavar="FILE", help="read settings from an INI file")
    spec.add_argument("--dim", type=int, choices=(2, 3), help="normal-form dimension")
    spec.add_argument("--tl", type=float, help="left trace")
    spec.add_argument("--dl", type=float, help="left determinant")
    spec.add_argument("--sl", type=float, help="left second trace (dimension 3)")
    spec.add_argument("--tr", type=float, help="right trace")
    spec.add_argument("--dr", type=float, help="right determinant")
    spec.add_argument("--sr", type=float, help="right second trace (dimension 3)")
    spec.add_argument("--matrix-file", metavar="FILE",
                      help="explicit map file: n, then rows of A_L, A_R, b, c")
    run = common.add_argument_group("run settings")
    run.add_argument("--x0", metavar="V1,V2,...", help="initial point (default: b nudged off the axis)")
    run.add_argument("--transient", type=int, help="iterates to discard (default 1000)")
    run.add_argument("--keep", type=int, help="iterates to keep (default 3000)")
    run.add_argument("--escape-radius", dest="escape_radius", type=float,
                     help="divergence radius (default 1e12)")
    run.add_argument("--tol", type=float, help="detection/membership tolerance (default 1e-9)")
    run.add_argument("--grid", metavar="LO:HI:N[,LO:HI:N]", help="sampling grid")
    run.add_argument("--param", choices=("tl", "dl", "sl", "tr", "dr", "sr"),
                     help="scan parameter")
    run.add_argument("--values", metavar="V1,V2,...", help="scan parameter values")
    run.add_argument("--seed", type=int, help="seed recorded for randomized sampling")
    output = common.add_argument_group("output")
    output.add_argument("--format", choices=("csv", "json"), help="output format")
    output.add_argument("--out", metavar="FILE", help="output path (default: stdout)")
    output.add_argument("--dump-config", dest="dump_config", metavar="FILE",
                        help="write the effective config before running")

    parser = argparse.ArgumentParser(
        prog="pwldyn",
        description="Analyze continuous piecewise-linear maps near border collisions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common],
                   help="spectral, fixed-point and reduction report (JSON)")
    sub.add_parser("orbit", parents=[common], help="orbit samples with iterate index (CSV)")
    sub.add_parser("portrait", parents=[common],
                   help="post-transient orbit samples without index (CSV)")
    sub.add_parser("restrict", parents=[common],
                   help="restriction to the shared-eigenvalue invariant plane")
    sub.add_parser("induced", parents=[common],
                   help="induced return map on the zero-eigenvalue plane")
    sub.add_parser("scan", parents=[common], help="one-parameter attractor sweep")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args, args.command)
        if args.dump_config:
            _write_text(dump_config(cfg), args.dump_config)
        if args.command == "analyze":
            return cmd_analyze(cfg, args.out)
        if args.command == "orbit":
            return cmd_orbit(cfg, args.out, portrait=False)
        if args.command == "portrait":
            return cmd_orbit(cfg, args.out, portrait=True)
        if args.command == "restrict":
            return cmd_restrict(cfg, args.out)
        if args.command == "induced":
            return cmd_induced(cfg, args.out)
        if args.command == "scan":
            return cmd_scan(cfg, args.out)
        raise ValueError(f"unknown command {args.command!r}")
    except (ValueError, UnsupportedDimension, NotContinuous, OSError,
            configparser.Error) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DynamicsError, IllConditioned) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DYNAMICS
    except ReductionError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_REDUCTION


if __name__ == "__main__":
    sys.exit(main())
