"""Experiment driver.

Subcommands: lemma, forward, backward, norms, fourier-check, model-info.
Exit codes: 0 all tolerances met, 1 numerical failure, 2 usage/config error.
"""

import argparse
import csv
import json
import logging
import os
import sys

import numpy as np

from .contraction import measure_normalization
from .fourier import (RadialFunction, fourier_transform, gaussian_profile,
                      gaussian_transform_exact, inverse_constant, inverse_constant_exact,
                      inverse_transform, smooth_bump, transform_profile)
from .model import InvalidModelError, model_from_name
from .norms import transference_norm_report
from .spherical import lemma_limit_check
from .transfer import (BackwardQuadrature, backward_limit_check, dilation_family,
                       forward_limit, gaussian_regularize)

log = logging.getLogger("transference")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULTS = {
    "lemma": {"model": "su2", "t_grid": "50:800:5", "z_grid": [0.5, 1.0, 2.0],
              "theta_grid": [0.3, 0.8, 1.2], "sign": 1, "slope_band": [-1.3, -0.7]},
    "forward": {"model": "su2", "t_grid": "10:1000000:6", "z_grid": [0.25, 0.5, 1.0, 1.5, 2.0],
                "eps": 0.0, "tol": 1e-6},
    "backward": {"model": "su2", "t_grid": "20:320:5", "z_grid": [0.0, 0.5, 1.0, 2.0],
                 "bump_radius": 0.5, "quad_order": 200, "shell_order": 24, "angle_order": 24,
                 "slope_band": [-1.3, -0.7]},
    "norms": {"model": "su2", "t_grid": "20:320:5", "z_grid": [0.0, 0.5, 1.0, 2.0], "p": 2.0,
              "bump_radius": 0.5, "quad_order": 200, "degree_cut": 8, "tol": 1e-2},
    "fourier-check": {"model": "su2", "bump_radius": 0.5, "quad_order": 200, "tol": 1e-5,
                      "gaussian_tol": 1e-6, "samples": 41},
    "model-info": {"model": "su2"},
}


class ConfigError(ValueError):
    pass


def _round(v):
    return float(f"{v:.12g}")


def parse_t_grid(text):
    """``a:b:n`` (log spacing), ``a:b:n:lin``, a comma list, or a JSON list."""
    if isinstance(text, (list, tuple)):
        grid = [float(v) for v in text]
    else:
        text = str(text).strip()
        if not text:
            raise ConfigError("empty t grid")
        if ":" in text:
            parts = text.split(":")
            if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] not in ("log", "lin")):
                raise ConfigError(f"bad t grid {text!r}; expected a:b:n[:log|lin]")
            try:
                a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
            except ValueError:
                raise ConfigError(f"bad t grid {text!r}") from None
            if n < 1 or a <= 0 or b < a:
                raise ConfigError(f"bad t grid {text!r}")
            space = np.linspace if len(parts) == 4 and parts[3] == "lin" else np.geomspace
            grid = [_round(v) for v in space(a, b, n)]
        else:
            try:
                grid = [float(v) for v in text.split(",") if v.strip()]
            except ValueError:
                raise ConfigError(f"bad t grid {text!r}") from None
    if not grid:
        raise ConfigError("empty t grid")
    if any(t < 1 for t in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigError("t grid must be increasing with t >= 1")
    return grid


def _z_points(model, z_grid):
    pts = []
    for z in z_grid:
        z = np.atleast_1d(np.asarray(z, dtype=float))
        if z.size == 1:
            z = np.repeat(z, model.rank)
        if z.size != model.rank or np.any(z < 0):
            raise ConfigError(f"z point {z.tolist()} does not fit rank {model.rank}")
        pts.append(z)
    return pts


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v
                             for v in row])


def _write_json(path, data):
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True, default=float)
        fh.write("\n")


def _load_profile(model, cfg):
    path = cfg.get("profile")
    if path:
        if not os.path.exists(path):
            raise ConfigError(f"profile file not found: {path}")
        try:
            return RadialFunction.from_csv(model, path)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    return smooth_bump(model, float(cfg["bump_radius"]))


def cmd_lemma(model, cfg, out):
    t_grid = parse_t_grid(cfg["t_grid"])
    rows, summary, ok = [], [], True
    for z in _z_points(model, cfg["z_grid"]):
        for theta in cfg["theta_grid"]:
            x = np.zeros(model.dim)
            for s in model.factor_slices:
                x[s.start] = float(theta)
            rep = lemma_limit_check(model, z, x, np.zeros(model.dim), t_grid,
                                    sign=int(cfg["sign"]), slope_band=tuple(cfg["slope_band"]))
            ok &= rep.passed
            for t, e, v in rep.rows():
                rows.append([*z.tolist(), float(theta), t, e, v])
            summary.append({"z": z.tolist(), "theta": float(theta), **rep.summary()})
    zcols = [f"z{j}" for j in range(model.rank)]
    _write_csv(os.path.join(out, "lemma.csv"), zcols + ["theta", "t", "error", "estimate"], rows)
    _write_json(os.path.join(out, "lemma.json"), {"passed": bool(ok), "cases": summary})
    return ok


def cmd_forward(model, cfg, out):
    t_grid = parse_t_grid(cfg["t_grid"])
    eps = float(cfg["eps"])
    tol = float(cfg["tol"])

    def m(z):
        z = np.asarray(z, dtype=float)
        return np.exp(-np.sum(z * z, axis=-1))
    fam = dilation_family(model, m, "dilation of exp(-|Z|^2)")
    if eps > 0:
        fam = gaussian_regularize(fam, eps)
    # Lipschitz constant of exp(-(1+eps)|Z|^2)
    lip = np.sqrt(2.0 * (1.0 + eps)) * np.exp(-0.5)
    rows, summary, ok = [], [], True
    for z in _z_points(model, cfg["z_grid"]):
        target = float(np.exp(-(1.0 + eps) * float(z @ z)))
        rep = forward_limit(model, fam, z, t_grid, reference=target, tol=tol)
        within = bool(np.all(rep.errors <= 2.0 * lip / rep.t + 1e-15))
        ok &= rep.passed and within
        for t, e, v in rep.rows():
            rows.append([*z.tolist(), t, e, v])
        summary.append({"z": z.tolist(), "target": target, "lipschitz_bound_met": within,
                        **rep.summary()})
    zcols = [f"z{j}" for j in range(model.rank)]
    _write_csv(os.path.join(out, "forward.csv"), zcols + ["t", "error", "estimate"], rows)
    _write_json(os.path.join(out, "forward.json"), {"passed": bool(ok), "cases": summary})
    return ok


def _quad(cfg):
    return BackwardQuadrature(int(cfg["quad_order"]), int(cfg.get("shell_order", 24)),
                              int(cfg.get("angle_order", 24)))


def cmd_backward(model, cfg, out):
    t_grid = parse_t_grid(cfg["t_grid"])
    xi = _load_profile(model, cfg)
    quad = _quad(cfg)
    rows, summary, ok = [], [], True
    for z in _z_points(model, cfg["z_grid"]):
        try:
            rep = backward_limit_check(model, xi, z, t_grid, quad, tuple(cfg["slope_band"]))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        ok &= rep.passed
        for t, e, v in rep.rows():
            rows.append([*z.tolist(), t, e, v])
        summary.append(rep.summary())
    zcols = [f"z{j}" for j in range(model.rank)]
    _write_csv(os.path.join(out, "backward.csv"), zcols + ["t", "error", "estimate"], rows)
    _write_json(os.path.join(out, "backward.json"), {"passed": bool(ok), "cases": summary})
    return ok


def cmd_norms(model, cfg, out):
    t_grid = parse_t_grid(cfg["t_grid"])
    xi = _load_profile(model, cfg)
    p = float(cfg["p"])
    if not 1.0 < p < np.inf:
        raise ConfigError(f"p must lie in (1, inf), got {p}")
    report = transference_norm_report(model, xi, p, t_grid, _z_points(model, cfg["z_grid"]),
                                      degree_cut=int(cfg["degree_cut"]),
                                      quad=BackwardQuadrature(int(cfg["quad_order"])),
                                      tol=float(cfg["tol"]))
    _write_json(os.path.join(out, "norms.json"), report)
    _write_csv(os.path.join(out, "norms.csv"),
               ["t", "sup_floored_mt", "spherical_estimate", "ratio_flat_over_spherical"],
               [[r["t"], r["sup_floored_mt"], r["spherical_estimate"],
                 r["ratio_flat_over_spherical"] if r["ratio_flat_over_spherical"] is not None
                 else float("nan")] for r in report["rows"]])
    return report["passed"] is not False


def cmd_fourier_check(model, cfg, out):
    xi = _load_profile(model, cfg)
    order = int(cfg["quad_order"])
    r = np.linspace(0.0, xi.support_radius, int(cfg["samples"]))
    pts = np.repeat(r[:, None], model.rank, axis=1)
    xhat = transform_profile(model, xi, quad_order=order)
    back = inverse_transform(model, xhat, pts, quad_order=order)
    ref = xi(pts)
    err = np.abs(back - ref)
    g = gaussian_profile(model, 1.0)
    zs = np.repeat(np.linspace(0.0, 5.0, 11)[:, None], model.rank, axis=1)
    gerr = float(np.max(np.abs(fourier_transform(model, g, zs, quad_order=order)
                                - gaussian_transform_exact(model, 1.0, zs))))
    ok = bool(err.max() < float(cfg["tol"]) and gerr < float(cfg["gaussian_tol"]))
    _write_csv(os.path.join(out, "fourier_check.csv"), ["r", "value", "roundtrip", "error"],
               [[a, b, c, d] for a, b, c, d in zip(r, ref, back, err)])
    _write_json(os.path.join(out, "fourier_check.json"),
                {"passed": ok, "roundtrip_sup_error": float(err.max()),
                 "gaussian_sup_error": gerr, "truncation_radius": xhat.support_radius,
                 "profile": xi.label})
    return ok


def cmd_model_info(model, cfg, out):
    info = {
        "name": model.name,
        "rank": model.rank,
        "dim": model.dim,
        "roots": [{"coeffs": list(a.coeffs), "multiplicity": a.multiplicity,
                   "delta_pairings": [str(c) for c in a.delta_pairings]} for a in model.roots],
        "delta": list(model.delta),
        "chamber_radius": model.chamber_radius,
        "calibration": list(model.calibration),
        "measure_normalization": measure_normalization(model),
        "inverse_constant": inverse_constant(model),
        "inverse_constant_closed_form": inverse_constant_exact(model),
    }
    _write_json(os.path.join(out, "model.json"), info)
    print(json.dumps(info, indent=2))
    return True


COMMANDS = {
    "lemma": cmd_lemma,
    "forward": cmd_forward,
    "backward": cmd_backward,
    "norms": cmd_norms,
    "fourier-check": cmd_fourier_check,
    "model-info": cmd_model_info,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="transference", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--model", help='"sphere:d", "su2" or "product:<a>,<b>"')
        p.add_argument("--config", help="JSON file of parameters")
        p.add_argument("--out-dir", default=".", help="directory for CSV/JSON outputs")
        p.add_argument("--t-grid", help='"a:b:n" (log), "a:b:n:lin" or "t1,t2,..."')
        p.add_argument("--tol", type=float)
        p.add_argument("--quad-order", type=int)
        p.add_argument("--profile", help="CSV profile (header; radius,value)")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def resolve_config(args):
    cfg = dict(DEFAULTS[args.command])
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        if not isinstance(loaded, dict):
            raise ConfigError("config must be a JSON object")
        cfg.update(loaded)
    for key in ("model", "t_grid", "tol", "quad_order", "profile"):
        val = getattr(args, key)
        if val is not None:
            cfg[key] = val
    if "quad_order" in cfg and int(cfg["quad_order"]) < 8:
        raise ConfigError("quadrature order must be >= 8")
    for key in ("tol", "gaussian_tol"):
        if key in cfg and float(cfg[key]) <= 0:
            raise ConfigError(f"{key} must be positive")
    if "t_grid" in cfg:
        cfg["t_grid"] = parse_t_grid(cfg["t_grid"])
    return cfg


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = resolve_config(args)
        model = model_from_name(cfg["model"])
        os.makedirs(args.out_dir, exist_ok=True)
        _write_json(os.path.join(args.out_dir, f"{args.command}.config.json"),
                    {"command": args.command, **cfg})
        ok = COMMANDS[args.command](model, cfg, args.out_dir)
    except (ConfigError, InvalidModelError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    log.info("%s: %s", args.command, "pass" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
