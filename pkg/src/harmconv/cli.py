"""Command-line front end.

Every subcommand prints one JSON document (or writes it to ``--out``).  Exit
status: 0 when the verdict is true or the quantity was computed, 1 when a
verdict is false, 2 on bad input.  ``--config file.json`` supplies flags from a
JSON object (``{"command": "check", "class": "starlike", ...}``); explicit
flags win.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import hypergeom as hg
from . import membership as mb
from . import oracle as orc
from . import transforms as tf
from .kernels import kernel_from_json, named_kernel, validate
from .series import HarmonicSeries, hat_product, series_from_json, series_to_json

DEFAULT_SEED = 20240101


class InputError(Exception):
    pass


def _load_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _series(path) -> HarmonicSeries:
    try:
        return series_from_json(_load_json(path))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _kernel(args):
    if getattr(args, "kernel", None):
        try:
            k = kernel_from_json(_load_json(args.kernel))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        if args.alpha is not None:
            k = k.with_alpha(args.alpha)
        report = validate(k)
        if not report.valid:
            raise InputError(f"invalid kernel at n={report.first_violation}: {report.reason}")
        return k
    if not getattr(args, "klass", None):
        raise InputError("give --class or --kernel")
    try:
        return named_kernel(args.klass, args.alpha or 0.0)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _triple(text):
    try:
        a, b, c = (float(x) for x in text.split(","))
        return hg.HyperParams(a, b, c)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a,b,c with positive values, got {text!r}") from exc


def _grid(args, **defaults) -> orc.GridSpec:
    opts = dict(defaults)
    if getattr(args, "radii", None):
        opts["n_radii"] = args.radii
    if getattr(args, "angles", None):
        opts["n_angles"] = args.angles
    if getattr(args, "r_max", None):
        opts["r_max"] = args.r_max
    try:
        return orc.GridSpec(**opts)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# -- commands -------------------------------------------------------------------


def cmd_check(args):
    k = _kernel(args)
    if args.suite:
        return _suite(args, k)
    f = _series(args.series)
    try:
        rep = mb.condition_lhs(f, k) if f.is_th else mb.sufficient_condition(f, k)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    out = rep.to_dict()
    out["mode"] = "exact" if f.is_th else "sufficient"
    return out, rep.verdict


def _suite(args, k):
    rng = np.random.default_rng(args.seed)
    grid = orc.GridSpec(n_angles=360)
    disagreements, rows = 0, []
    for idx in range(args.suite):
        member = idx % 2 == 0
        f = mb.random_member(k, rng, (0.0, 1.0) if member else (1.05, 2.0))
        lhs = mb.condition_lhs(f, k).lhs
        m = orc.check_defining_inequality(f, k, grid, geometry=False).min_re_ratio
        agree = m > -1e-9 if member else m < 0
        disagreements += not agree
        rows.append({"lhs": lhs, "min_re_ratio": m, "agree": bool(agree)})
    return {"seed": args.seed, "count": args.suite, "disagreements": disagreements, "cases": rows}, disagreements == 0


def cmd_bounds(args):
    k = _kernel(args)
    rows = []
    for n in range(1, args.n + 1):
        a, b = mb.coefficient_bounds(k, n)
        rows.append({"n": n, "A_bound": a, "B_bound": b})
    return {"kernel": repr(k), "bounds": rows}, True


def cmd_growth(args):
    k = _kernel(args)
    try:
        g = mb.growth_and_covering(k, args.b1)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return g.to_dict(), True


def cmd_extreme(args):
    k = _kernel(args)
    try:
        f = mb.extreme_point(k, args.kind, args.n)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {"series": series_to_json(f), "lhs": mb.condition_lhs(f, k).lhs}, True


def cmd_decompose(args):
    k = _kernel(args)
    f = _series(args.series)
    if not f.is_th:
        raise InputError("decompose needs a TH series")
    rep = mb.condition_lhs(f, k)
    if not rep.verdict:
        return {"lhs": rep.lhs, "verdict": False, "error": "not a member"}, False
    d = mb.decompose(f, k)
    return {"X": d.X.tolist(), "Y": d.Y.tolist(), "total": d.total, "lhs": rep.lhs, "verdict": True}, True


def cmd_product(args):
    f, F = _series(args.series), _series(args.other)
    try:
        g = hat_product(f, F)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    out = {"series": series_to_json(g)}
    if args.klass or args.kernel:
        k = _kernel(args)
        try:
            member = mb.condition_lhs(f, k).verdict
            applies = member and not (np.any(F.analytic > 1) or np.any(F.coanalytic > 1))
            rep = mb.hat_product_membership(f, F, k) if applies else mb.condition_lhs(g, k)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        out.update(lhs=rep.lhs, verdict=rep.verdict, closure_theorem_applies=bool(applies))
        return out, rep.verdict
    return out, True


def cmd_transform(args):
    f = _series(args.series)
    try:
        if args.kind == "L":
            if args.gamma is None:
                raise InputError("--kind L needs --gamma")
            g = tf.L_gamma(f, args.gamma)
        else:
            if args.delta is None:
                raise InputError("--kind G needs --delta")
            g = tf.G_delta(f, args.delta)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    out = {"series": series_to_json(g)}
    if (args.klass or args.kernel) and g.is_th:
        k = _kernel(args)
        before, after = mb.condition_lhs(f, k), mb.condition_lhs(g, k)
        out.update(lhs_before=before.lhs, lhs_after=after.lhs, verdict=after.verdict)
        return out, after.verdict
    return out, True


def cmd_hyper(args):
    kind = args.criterion
    try:
        if kind in ("phi", "psi"):
            k = _kernel(args)
            fn = hg.criterion_phi if kind == "phi" else hg.criterion_psi
            rep = fn(args.p1, args.p2, k, max_terms=args.terms)
            return rep.to_dict(), rep.verdict
        if kind == "product-phi":
            total, ok = hg.product_condition_phi(args.p1, args.p2)
            threshold = 3.0
        elif kind == "product-psi":
            total, ok = hg.product_condition_psi(args.p1, args.p2)
            threshold = 4.0
        else:
            alpha = args.alpha or 0.0
            total, ok = hg.tu_phi_condition(args.p1, args.p2, alpha)
            threshold = 3.0 - alpha
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {"sum": total, "threshold": threshold, "verdict": ok}, ok


def cmd_oracle(args):
    k = _kernel(args)
    f = _series(args.series)
    rep = orc.check_defining_inequality(f, k, _grid(args))
    return rep.to_dict(), rep.min_re_ratio > -1e-9


def cmd_radius(args):
    alpha = args.alpha or 0.0
    if args.series:
        f = _series(args.series)
    else:
        if (args.klass or "").lower() != "u":
            raise InputError("without --series only --class U (extremal z + (1-alpha) conj(z)^2) is supported")
        f = HarmonicSeries.th(B={2: 1 - alpha})
    try:
        r = orc.radius_search(f, args.property, tol=args.tol)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    out = {"property": args.property, "radius": r}
    if not args.series:
        ru, rs, rc = mb.class_radii(alpha)
        out["expected"] = rc if args.property == "convex" else ru
    return out, True


def cmd_figure1(args):
    res = orc.figure1_scan(args.order, _grid(args, r_max=0.98, refine_rounds=0, real_axis_points=0))
    if args.out:
        Path(args.out).write_text(orc.samples_to_csv(res.samples), encoding="utf-8")
    summary = orc.samples_to_json(res)
    summary.pop("samples")
    summary["negative_real_part"] = res.min_re < 0
    return summary, True


def cmd_plot_data(args):
    grid = _grid(args, refine_rounds=0, real_axis_points=0)
    if args.series:
        f = _series(args.series)
        r, t = np.meshgrid(grid.radii(), grid.angles(), indexing="ij")
        z = (r * np.exp(1j * t)).ravel()
        w = f(z)
        if args.stat == "ratio":
            stat = orc.ratio_function(f, _kernel(args))(z)
        elif args.stat == "jacobian":
            stat = orc._jacobian(f, z)
        elif args.stat == "starlike":
            stat = orc.starlike_derivative(f, z)
        elif args.stat == "convex":
            stat = orc.convex_derivative(f, z)
        else:
            stat = np.abs(w)
        samples = np.zeros(z.size, dtype=[("r", float), ("theta", float), ("re", float), ("im", float), ("stat", float)])
        samples["r"], samples["theta"], samples["re"], samples["im"], samples["stat"] = (
            r.ravel(), t.ravel(), w.real, w.imag, stat)
        envelope = {"grid": grid.to_dict(), "stat": args.stat, "n_samples": int(z.size),
                    "columns": list(samples.dtype.names),
                    "samples": {n: samples[n].tolist() for n in samples.dtype.names}}
    else:
        res = orc.figure1_scan(args.order, grid)
        samples, envelope = res.samples, orc.samples_to_json(res)
    if args.format == "csv":
        text = orc.samples_to_csv(samples)
    else:
        text = json.dumps(envelope, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        return {"written": args.out, "format": args.format, "n_samples": int(samples.size)}, True
    sys.stdout.write(text)
    return None, True


# -- parser -----------------------------------------------------------------------


def _add_kernel(p, required=False):
    p.add_argument("--class", dest="klass", choices=["starlike", "convex", "U", "u"], help="named class")
    p.add_argument("--kernel", help="kernel JSON document (user-defined class)")
    p.add_argument("--alpha", type=float, default=None, help="order alpha in [0, 1)")


def _add_grid(p):
    p.add_argument("--radii", type=int, help="number of radii")
    p.add_argument("--angles", type=int, help="number of angles")
    p.add_argument("--r-max", dest="r_max", type=float, help="largest radius sampled")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="harmconv", description=__doc__.split("\n\n")[0])
    parser.add_argument("--config", help="JSON file with flag values (keys = flag names)")
    parser.add_argument("--out", help="write the JSON result here instead of stdout")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("check", help="coefficient membership test (exact for TH series)")
    _add_kernel(p)
    p.add_argument("--series", help="series JSON document")
    p.add_argument("--suite", type=int, default=0, help="run N random criterion-vs-oracle cases instead")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bounds", help="sharp coefficient bounds for n = 1..N")
    _add_kernel(p)
    p.add_argument("--n", type=int, default=5)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("growth", help="growth bounds and covering radius")
    _add_kernel(p)
    p.add_argument("--b1", type=float, default=0.0)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("extreme", help="extreme point h_n or g_n")
    _add_kernel(p)
    p.add_argument("--kind", choices=["H", "G"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_extreme)

    p = sub.add_parser("decompose", help="weights over the extreme points")
    _add_kernel(p)
    p.add_argument("--series", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("product", help="hat product of two TH series")
    _add_kernel(p)
    p.add_argument("--series", required=True)
    p.add_argument("--other", required=True)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("transform", help="L_gamma or G_delta transform")
    _add_kernel(p)
    p.add_argument("--series", required=True)
    p.add_argument("--kind", choices=["L", "G"], required=True)
    p.add_argument("--gamma", type=float)
    p.add_argument("--delta", type=float)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("hyper", help="hypergeometric criteria")
    _add_kernel(p)
    p.add_argument("--p1", type=_triple, required=True, help="a1,b1,c1")
    p.add_argument("--p2", type=_triple, required=True, help="a2,b2,c2")
    p.add_argument("--criterion", choices=["phi", "psi", "product-phi", "product-psi", "tu"], default="phi")
    p.add_argument("--terms", type=int, default=None, help="head length for the partial sum")
    p.set_defaults(func=cmd_hyper)

    p = sub.add_parser("oracle", help="disk-sampling check of the defining inequality")
    _add_kernel(p)
    p.add_argument("--series", required=True)
    _add_grid(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("radius", help="radius of univalence/starlikeness/convexity by bisection")
    _add_kernel(p)
    p.add_argument("--series")
    p.add_argument("--property", choices=["jacobian", "starlike", "convex"], required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("figure1", help="scan Re L(z)/z for the half-plane map")
    p.add_argument("--order", type=int, default=60)
    p.add_argument("--out", dest="out", help="CSV dump path")
    _add_grid(p)
    p.set_defaults(func=cmd_figure1, out_is_csv=True)

    p = sub.add_parser("plot-data", help="emit CSV/JSON samples for plotting")
    _add_kernel(p)
    p.add_argument("--series", help="series JSON (default: half-plane map L(z)/z)")
    p.add_argument("--order", type=int, default=60)
    p.add_argument("--stat", choices=["abs", "ratio", "jacobian", "starlike", "convex"], default="abs")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", dest="out")
    _add_grid(p)
    p.set_defaults(func=cmd_plot_data, out_is_csv=True)
    return parser


def _config_argv(argv):
    """Expand ``--config path`` into flags placed before the explicit ones."""
    argv = list(argv)
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise InputError("--config needs a path")
    cfg = _load_json(argv[i + 1])
    if not isinstance(cfg, dict):
        raise InputError("config must be a JSON object")
    rest = argv[:i] + argv[i + 2:]
    command = cfg.pop("command", None)
    flags = []
    for key, value in cfg.items():
        flag = "--" + key.replace("_", "-")
        if value is True:
            flags.append(flag)
        elif value is False or value is None:
            continue
        elif isinstance(value, (list, tuple)):
            flags += [flag, ",".join(str(v) for v in value)]
        else:
            flags += [flag, str(value)]
    has_command = any(a in _COMMANDS for a in rest)
    if has_command:
        idx = next(j for j, a in enumerate(rest) if a in _COMMANDS)
        return rest[: idx + 1] + flags + rest[idx + 1:]
    if command is None:
        raise InputError("config has no 'command' and none was given")
    return [command] + flags + rest


_COMMANDS = {"check", "bounds", "growth", "extreme", "decompose", "product", "transform",
             "hyper", "oracle", "radius", "figure1", "plot-data"}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        argv = _config_argv(argv)
    except InputError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if not getattr(args, "func", None):
        parser.print_help()
        return 2
    try:
        result, ok = args.func(args)
    except (InputError, hg.DivergenceError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    if result is not None:
        text = json.dumps(result, indent=2, sort_keys=True) + "\n"
        if args.out and not getattr(args, "out_is_csv", False):
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
