"""Command-line front end.

Subcommands: kernel, embed, norm, norm-formula, carleson, mz-test,
poly-density, factor, rank, dual, verify, suite.  Exit codes: 0 success,
1 invariant failure, 2 configuration error, 3 numerical failure.  The
environment variable HBSPACE_THREADS caps the worker threads used for
independent point evaluations; aggregation order is fixed, so outputs are
byte-identical for identical (config, seed).
"""

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .acceptance import run_all
from .analysis import (
    LimitSchedule,
    cauchy_dual,
    mz_test,
    norm_limit_estimate,
    reverse_carleson,
)
from .catalog import named_space, space_from_json
from .errors import ConfigError, HBSpaceError, InvariantViolation, NumericalError
from .model import SpaceHandle
from .reporting import heatmap, line_plot, write_csv
from .subspaces import poly_density_residual
from .symbols import estimate_rank

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _worker_count() -> int:
    raw = os.environ.get("HBSPACE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"HBSPACE_THREADS must be an integer, got {raw!r}")


def _parallel_map(fn, items):
    workers = _worker_count()
    items = list(items)
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _load_space(args):
    if args.space and args.named:
        raise ConfigError("give either --space FILE or --named NAME, not both")
    if args.space:
        return space_from_json(args.space)
    if args.named:
        return named_space(args.named)
    raise ConfigError("a space is required: --space FILE or --named NAME")


def _parse_coeffs(text) -> np.ndarray:
    try:
        return np.array([complex(tok.strip().replace("i", "j"))
                         for tok in text.split(",")], dtype=complex)
    except ValueError as exc:
        raise ConfigError(f"cannot parse coefficient list {text!r}: {exc}")


def _input_function(args, space) -> np.ndarray:
    if args.coeffs and args.kernel_at is not None:
        raise ConfigError("give either --coeffs or --kernel-at, not both")
    if args.coeffs:
        return _parse_coeffs(args.coeffs)
    if args.kernel_at is not None:
        lam = complex(args.kernel_at.replace("i", "j"))
        if not hasattr(space, "kernel_taylor"):
            raise ConfigError("kernel inputs need a symbol-backed space")
        return space.kernel_taylor(lam)
    raise ConfigError("an input function is required: --coeffs or --kernel-at")


def _out_path(args, name) -> str:
    return os.path.join(args.out, name)


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(value.real), "im": float(value.imag)}
    return value


def _emit_json(args, payload) -> None:
    text = json.dumps(_jsonable(payload), indent=2, sort_keys=True)
    if args.json:
        print(text)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(_out_path(args, "report.json"), "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def cmd_kernel(args) -> int:
    space = _load_space(args)
    rng = np.random.default_rng(args.seed)
    if args.pairs:
        pts = []
        for chunk in args.pairs.split(";"):
            z_text, _, lam_text = chunk.partition(":")
            try:
                pts.append((complex(z_text.replace("i", "j")),
                            complex(lam_text.replace("i", "j"))))
            except ValueError as exc:
                raise ConfigError(f"cannot parse evaluation pair {chunk!r}: {exc}")
        pts = np.array(pts)
        count = len(pts)
    else:
        count = 16 if args.quick else 64
        pts = rng.uniform(0.05, 0.9, (count, 2)) * np.exp(
            2j * np.pi * rng.uniform(0, 1, (count, 2)))
    rows = _parallel_map(lambda p: (p[0], p[1], space.kernel(p[0], p[1])), pts)
    meta = {"command": "kernel", "seed": args.seed}
    if args.out:
        write_csv(_out_path(args, "kernel.csv"), ["z", "lam", "k"], rows, meta)
        radius = 0.9
        m = 24
        diag = np.array([[space.kernel(radius * np.exp(2j * np.pi * (i / m)),
                                       radius * np.exp(2j * np.pi * (j / m))).real
                          for j in range(m)] for i in range(m)])
        heatmap(_out_path(args, "kernel.svg"), diag,
                title="Re k on the 0.9-radius torus grid")
    for z, lam, k in rows[: 5 if not args.json else 0]:
        print(f"k({z:.4f}, {lam:.4f}) = {k:.12g}")
    _emit_json(args, {"command": "kernel", "seed": args.seed, "count": count,
                      "rows": [[str(z), str(lam), str(k)] for z, lam, k in rows]})
    return EXIT_OK


def cmd_embed(args) -> int:
    space = _load_space(args)
    f = _input_function(args, space)
    if isinstance(space, SpaceHandle):
        pair = space.embed(f)
        companions, residual, norm = pair.companions, pair.residual, pair.norm
    else:
        companions = np.array(space.companions(f))  # exact Dirichlet embedding
        residual, norm = 0.0, space.norm(f)
    n = companions.shape[0]
    print(f"residual: {residual:.6e}")
    print(f"norm: {norm:.12g}")
    width = max(len(f), companions.shape[1] if companions.size else 0)
    rows = [(k, f[k] if k < len(f) else 0.0,
             *(companions[i, k] if k < companions.shape[1] else 0.0
               for i in range(n)))
            for k in range(width)]
    if args.out:
        cols = ["k", "f"] + [f"f1_{i + 1}" for i in range(n)]
        write_csv(_out_path(args, "embed.csv"), cols, rows,
                  {"command": "embed", "seed": args.seed})
    _emit_json(args, {"command": "embed", "residual": residual,
                      "norm": norm, "n": n})
    return EXIT_OK


def cmd_norm(args) -> int:
    space = _load_space(args)
    f = _input_function(args, space)
    if isinstance(space, SpaceHandle):
        report = space.membership(f)
        print(f"member: {report.member}  residual: {report.residual:.6e}")
        if report.member:
            print(f"norm: {report.norm:.12g}")
        _emit_json(args, {"command": "norm", "member": bool(report.member),
                          "residual": report.residual, "norm": report.norm})
        return EXIT_OK
    value = space.norm(f)
    print(f"norm: {value:.12g}")
    _emit_json(args, {"command": "norm", "member": True, "norm": value})
    return EXIT_OK


def cmd_norm_formula(args) -> int:
    space = _load_space(args)
    f = _input_function(args, space)
    k_max = 8 if args.quick else args.k_max
    schedule = LimitSchedule(args.k_min, k_max)
    est = norm_limit_estimate(space, f, schedule)
    direct = space.poly_norm_sq(f)
    print(f"direct norm^2: {direct:.12g}")
    for r, v in est.rows:
        print(f"r = {r:.10f}  estimate = {v:.12g}")
    if est.extrapolated is not None:
        print(f"extrapolated: {est.extrapolated:.12g} (advisory)")
    if args.out:
        write_csv(_out_path(args, "norm_formula.csv"), ["r", "estimate"], est.rows,
                  {"command": "norm-formula", "seed": args.seed, "direct": direct})
        line_plot(_out_path(args, "norm_formula.svg"), [r for r, _ in est.rows],
                  {"estimate": [v for _, v in est.rows],
                   "direct": [direct] * len(est.rows)},
                  title="radial norm estimates", xlabel="r", ylabel="estimate")
    rel = abs(est.final - direct) / max(direct, 1e-30)
    _emit_json(args, {"command": "norm-formula", "direct": direct,
                      "final": est.final, "relative_gap": rel})
    return EXIT_OK


def cmd_carleson(args) -> int:
    space = _load_space(args)
    report = reverse_carleson(space, deep_level=12 if args.quick else 16)
    if not report.applicable:
        print(report.note)
        _emit_json(args, {"command": "carleson", "applicable": False})
        return EXIT_OK
    print(f"admits reverse Carleson measure: {report.admits}")
    print(f"sup kernel criterion: {report.sup_kernel:.6g}")
    print(f"h2 radius: {report.radius_h2}  h1 radius: {report.radius_h1}")
    rows = []
    for i, lam in enumerate(report.lam):
        rows.append((lam,
                     report.h1[i] if report.h1 is not None else "",
                     report.h2[i],
                     report.g[i] if report.g is not None else ""))
    if args.out:
        write_csv(_out_path(args, "carleson.csv"), ["lam", "h1", "h2", "g"], rows,
                  {"command": "carleson", "seed": args.seed})
    _emit_json(args, {"command": "carleson", "admits": report.admits,
                      "sup_kernel": report.sup_kernel,
                      "radius_h2": report.radius_h2})
    return EXIT_OK


def cmd_mz_test(args) -> int:
    space = _load_space(args)
    symbol = getattr(space, "symbol", None)
    if symbol is None:
        print("invariant: True (Dirichlet-type spaces are forward-shift invariant)")
        _emit_json(args, {"command": "mz-test", "invariant": True, "conclusive": True})
        return EXIT_OK
    report = mz_test(symbol)
    print(f"invariant: {report.invariant}  conclusive: {report.conclusive}")
    if report.log_estimate is not None:
        print(f"log-defect integral: {report.log_estimate:.10g}")
    if report.note:
        print(report.note)
    _emit_json(args, {"command": "mz-test", "invariant": report.invariant,
                      "conclusive": report.conclusive,
                      "log_estimate": report.log_estimate})
    return EXIT_OK


def cmd_poly_density(args) -> int:
    space = _load_space(args)
    f = _input_function(args, space)
    degrees = list(range(0, (12 if args.quick else args.max_degree) + 1, args.step))
    result = poly_density_residual(space, f, degrees)
    rows = list(zip(result.degrees, result.residuals))
    for d, r in rows:
        print(f"degree {d:3d}  residual {r:.6e}")
    if args.out:
        write_csv(_out_path(args, "poly_density.csv"), ["degree", "residual"], rows,
                  {"command": "poly-density", "seed": args.seed})
        line_plot(_out_path(args, "poly_density.svg"), result.degrees,
                  {"residual": result.residuals}, title="polynomial approximation",
                  xlabel="degree", ylabel="residual")
    _emit_json(args, {"command": "poly-density",
                      "degrees": [int(d) for d in result.degrees],
                      "residuals": [float(r) for r in result.residuals]})
    return EXIT_OK


def cmd_factor(args) -> int:
    space = _load_space(args)
    if not isinstance(space, SpaceHandle) or space.mode != "analytic" or space.n == 0:
        raise ConfigError("factor output needs an analytic-model symbol space")
    report = space.factorization
    print(f"method: {report.method}  iterations: {report.iterations}")
    print(f"residual: {report.residual:.6e}  regularization: {report.regularization:g}")
    coeffs = report.symbol.coeffs
    rows = []
    for k in range(coeffs.shape[0]):
        for i in range(coeffs.shape[1]):
            for j in range(coeffs.shape[2]):
                rows.append((k, i, j, coeffs[k, i, j]))
    if args.out:
        write_csv(_out_path(args, "factor.csv"), ["power", "row", "col", "value"],
                  rows, {"command": "factor", "seed": args.seed,
                         "method": report.method})
    _emit_json(args, {"command": "factor", "method": report.method,
                      "residual": report.residual,
                      "degree": int(coeffs.shape[0] - 1)})
    return EXIT_OK


def cmd_rank(args) -> int:
    space = _load_space(args)
    degree = 24 if args.quick else args.gram_degree
    gram = space.monomial_gram(degree)
    rank = estimate_rank(gram, tol=args.tol)
    label = ""
    if getattr(space, "truncated", False):
        label = " (truncated symbol: lower bound only)"
    print(f"numerical defect rank: {rank}{label}")
    _emit_json(args, {"command": "rank", "rank": int(rank),
                      "gram_degree": degree, "truncated": bool(getattr(space, "truncated", False))})
    return EXIT_OK


def cmd_dual(args) -> int:
    if not args.weights:
        raise ConfigError("--weights is required for dual")
    w = [float(tok) for tok in args.weights.split(",")]
    dual = cauchy_dual(np.diag(w))
    dual_w = np.diagonal(dual).real
    rows = list(zip(range(len(w)), w, dual_w))
    for k, a, b in rows:
        print(f"k={k}  w={a:.12g}  dual={b:.12g}")
    if args.out:
        write_csv(_out_path(args, "dual.csv"), ["k", "weight", "dual_weight"], rows,
                  {"command": "dual", "seed": args.seed})
    _emit_json(args, {"command": "dual", "weights": w,
                      "dual_weights": [float(x) for x in dual_w]})
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verification import verify_space

    space = _load_space(args)
    checks = verify_space(space, seed=args.seed)
    for c in checks:
        print(c.line())
    passed = all(c.passed for c in checks)
    _emit_json(args, {"command": "verify", "passed": passed,
                      "checks": [{"name": c.name, "passed": c.passed,
                                  "detail": c.detail} for c in checks]})
    return EXIT_OK if passed else EXIT_INVARIANT


def cmd_suite(args) -> int:
    start = time.perf_counter()
    results = run_all(quick=args.quick, echo=None if args.json else print)
    elapsed = time.perf_counter() - start
    passed = all(r.passed for r in results)
    if not args.json:
        print(f"total runtime: {elapsed:.2f}s  "
              f"({sum(r.passed for r in results)}/{len(results)} criteria passed)")
    _emit_json(args, {
        "tool": "hbspace", "version": __version__, "command": "suite",
        "seed": args.seed, "quick": bool(args.quick),
        "elapsed_seconds": elapsed, "passed": passed,
        "results": [{"id": r.cid, "name": r.name, "passed": r.passed,
                     "detail": r.detail, "elapsed_seconds": r.elapsed}
                    for r in results],
    })
    return EXIT_OK if passed else EXIT_INVARIANT


def _add_space_args(p):
    p.add_argument("--space", help="path to a space-definition JSON file")
    p.add_argument("--named", help="named example space (h2, rank1-half, ...)")


def _add_common(p):
    p.add_argument("--out", help="directory for CSV/SVG outputs")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized point sets")
    p.add_argument("--quick", action="store_true", help="reduced schedules")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def _add_function_args(p):
    p.add_argument("--coeffs", help="Taylor coefficients, comma separated")
    p.add_argument("--kernel-at", help="use the kernel function at this point")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hbspace",
        description="Numerics for Hilbert spaces of disk-analytic functions "
                    "with a contractive backward shift.")
    parser.add_argument("--version", action="version", version=f"hbspace {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    specs = [
        ("kernel", cmd_kernel, "tabulate reproducing-kernel values", True, False),
        ("embed", cmd_embed, "model companion of a function", True, True),
        ("norm", cmd_norm, "space norm and membership verdict", True, True),
        ("norm-formula", cmd_norm_formula, "radial norm-formula estimates", True, True),
        ("carleson", cmd_carleson, "reverse-Carleson diagnostics", True, False),
        ("mz-test", cmd_mz_test, "forward-shift invariance test", True, False),
        ("poly-density", cmd_poly_density, "polynomial approximation residuals", True, True),
        ("factor", cmd_factor, "outer defect factor", True, False),
        ("rank", cmd_rank, "numerical defect rank", True, False),
        ("dual", cmd_dual, "Cauchy dual of diagonal weights", False, False),
        ("verify", cmd_verify, "run the invariant battery on a space", True, False),
        ("suite", cmd_suite, "run all acceptance criteria", False, False),
    ]
    for name, fn, help_text, needs_space, needs_function in specs:
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        if needs_space:
            _add_space_args(p)
        if needs_function:
            _add_function_args(p)
        if name == "kernel":
            p.add_argument("--pairs", help="explicit z:lam pairs, ';' separated")
        if name == "norm-formula":
            p.add_argument("--k-min", type=int, default=4)
            p.add_argument("--k-max", type=int, default=10)
        if name == "poly-density":
            p.add_argument("--max-degree", type=int, default=24)
            p.add_argument("--step", type=int, default=2)
        if name == "rank":
            p.add_argument("--gram-degree", type=int, default=48)
            p.add_argument("--tol", type=float, default=1e-6)
        if name == "dual":
            p.add_argument("--weights", help="diagonal Gram weights, comma separated")
        p.set_defaults(fn=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage, matching the config-error code
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InvariantViolation as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except HBSpaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, NotImplementedError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
