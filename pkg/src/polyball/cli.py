"""Command-line front end: ``polyball <verb> ...``.

Exit codes: 0 success, 2 unparseable input or bad arguments, 3 numeric
domain errors (non-interior points, singular resolvents, capacity).
"""

import argparse
import csv
import io as _io
import sys

from ._version import __version__
from .domain import membership
from .errors import CapacityError, DomainError, InvalidInputError, PolyballError
from .fock import build_fock_model
from .io import RunConfig, dumps, load_tuple, matrix_to_json
from .kernels import berezin_kernel, cauchy_kernel, poisson_kernel
from .metrics import (d_p, delta_h_polydisk, delta_h_scalar, delta_p, kobayashi_polydisk,
                      richardson, truncation_ladder, _log_terms, _same_layout,
                      _interior_or_raise, _canonical)
from .verify import SUITES, run_suite

METRICS = ("dp", "dh-polydisk", "dh-scalar", "dP-aux", "kobayashi")


def _parse_grid(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad r grid {text!r}") from exc


def _config(args):
    return RunConfig.from_file(
        args.config, L=args.L, tol_psd=args.tol, tail_tol=args.tail_tol,
        r_grid=args.r_grid, cap=args.cap, seed=args.seed, format=args.format,
        samples=args.samples, levels=args.levels)


def _emit(payload, cfg, out):
    payload = dict(payload, version=__version__)
    out.write(dumps(payload))


def _scalars_of(X):
    if X.d != 1 or not X.shape.is_polydisk:
        raise DomainError("this metric needs scalar polydisk tuples (d = 1, all n_i = 1)")
    return [row[0][0, 0] for row in X.rows]


def _start_L(cfg, default=8):
    return default if cfg.L is None else cfg.L


def cmd_membership(args, cfg, out):
    X, label = load_tuple(args.tuple)
    verdict = membership(X, tol=cfg.tol_psd)
    payload = verdict.to_dict()
    payload["label"] = label
    _emit(payload, cfg, out)


def cmd_distance(args, cfg, out):
    A, _ = load_tuple(args.a)
    B, _ = load_tuple(args.b)
    _same_layout(A, B)
    opts = {"cap": cfg.cap, "tail_tol": cfg.tail_tol}
    if cfg.levels is not None:
        opts["levels"] = cfg.levels
    if args.metric == "dp":
        rep = delta_p(A, B, L=_start_L(cfg), **opts).to_dict()
    elif args.metric == "dh-polydisk":
        if not A.shape.is_polydisk:
            raise DomainError("dh-polydisk: polydisk only (all n_i = 1); use --metric dp")
        rep = delta_h_polydisk(A, B, L=_start_L(cfg), **opts).to_dict()
    elif args.metric == "dP-aux":
        rep = d_p(A, B, L=_start_L(cfg), r_grid=cfg.r_grid, **opts).to_dict()
    else:
        z, w = _scalars_of(A), _scalars_of(B)
        f = delta_h_scalar if args.metric == "dh-scalar" else kobayashi_polydisk
        rep = {"value": f(z, w),
               "metric": "delta_h_scalar" if args.metric == "dh-scalar" else "kobayashi",
               "converged": True}
    _emit(rep, cfg, out)


def converge_rows(A, B, cfg):
    """Rows ``(L, value, delta_vs_previous, raw)`` along the truncation ladder."""
    _same_layout(A, B)
    _interior_or_raise(A, B)
    A, B = _canonical(A, B)
    ladder = truncation_ladder(A.shape, _start_L(cfg), A.d, cap=cfg.cap,
                               fast=A.d == 1, to_cap=True)
    rows, terms, prev = [], [], None
    converged = False
    for Li in ladder:
        terms.append(_log_terms(A, B, Li, cfg.cap))
        raw = max(terms[-1])
        if A.shape.is_polydisk and len(terms) > 1:
            hs = [min(L) for L in ladder[:len(terms)]]
            value = max(richardson(hs, [t[0] for t in terms])[0],
                        richardson(hs, [t[1] for t in terms])[0])
        else:
            value = raw
        delta = None if prev is None else abs(value - prev)
        rows.append({"L": list(Li), "value": value, "delta_vs_previous": delta, "raw": raw})
        prev = value
        if delta is not None and delta < cfg.tail_tol:
            converged = True
            break
    for r in rows:
        r["converged"] = False
    rows[-1]["converged"] = converged
    return rows, converged


def cmd_converge(args, cfg, out):
    A, _ = load_tuple(args.a)
    B, _ = load_tuple(args.b)
    rows, converged = converge_rows(A, B, cfg)
    if cfg.format == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["L", "value", "delta_vs_previous", "raw", "converged"])
        for r in rows:
            w.writerow(["x".join(str(v) for v in r["L"]), repr(r["value"]),
                        "" if r["delta_vs_previous"] is None else repr(r["delta_vs_previous"]),
                        repr(r["raw"]), str(r["converged"]).lower()])
        out.write(f"# version {__version__}\n")
        out.write(buf.getvalue())
    else:
        _emit({"rows": rows, "converged": converged}, cfg, out)


def cmd_verify(args, cfg, out):
    report = run_suite(args.suite, cfg)
    _emit(report, cfg, out)
    return 0 if report["passed"] else 1


def cmd_kernel(args, cfg, out):
    X, _ = load_tuple(args.tuple)
    L = cfg.L if cfg.L is not None else 4
    model = build_fock_model(X.shape, L, cap=cfg.cap)
    if args.which == "berezin":
        M = berezin_kernel(X.scaled(args.r), model)
    elif args.which == "cauchy":
        M = cauchy_kernel(X, model, args.r)
    else:
        M = poisson_kernel(X, model, args.r)
    labels = [[list(w) for w in lab] for lab in model.labels()]
    _emit({"which": args.which, "r": args.r, "L": list(model.L), "d": X.d,
           "basis": labels, "matrix": matrix_to_json(M)}, cfg, out)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file (flags override it)")
    common.add_argument("--L", type=int, nargs="+", help="truncation degree(s)")
    common.add_argument("--r-grid", type=_parse_grid, dest="r_grid",
                        help="comma-separated r values")
    common.add_argument("--tol", type=float, help="PSD tolerance")
    common.add_argument("--tail-tol", type=float, dest="tail_tol",
                        help="truncation tail tolerance")
    common.add_argument("--seed", type=int, help="seed for sampling suites")
    common.add_argument("--format", choices=("json", "csv"))
    common.add_argument("--cap", type=int, help="dimension cap")
    common.add_argument("--samples", type=int, help="sample count for verify suites")
    common.add_argument("--levels", type=int, help="ladder levels for extrapolation")

    p = argparse.ArgumentParser(prog="polyball", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("membership", parents=[common], help="classify a tuple")
    s.add_argument("tuple")
    s.set_defaults(func=cmd_membership)

    s = sub.add_parser("distance", parents=[common], help="distance between two tuples")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--metric", choices=METRICS, default="dp")
    s.set_defaults(func=cmd_distance)

    s = sub.add_parser("converge", parents=[common], help="truncation convergence table")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_converge)

    s = sub.add_parser("verify", parents=[common], help="run a property suite")
    s.add_argument("suite", choices=sorted(SUITES))
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("kernel", parents=[common], help="emit a kernel matrix")
    s.add_argument("tuple")
    s.add_argument("--which", choices=("berezin", "cauchy", "poisson"), default="poisson")
    s.add_argument("--r", type=float, default=1.0)
    s.set_defaults(func=cmd_kernel)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        code = args.func(args, cfg, out)
    except InvalidInputError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except (DomainError, CapacityError) as exc:
        err.write(f"error: {exc}\n")
        return 3
    except PolyballError as exc:
        err.write(f"error: {exc}\n")
        return 3
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
