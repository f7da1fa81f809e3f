"""Command line front end.

Subcommands: build (emit module or graded-family JSON), query (isomorphism,
indecomposability, Jordan data, profile, degree), verify (run a named
verification suite and report), claims (print what each suite checks).
Exit codes: 0 success / all gating cases pass, 1 a verification case
failed, 2 usage or validation error.  Errors are emitted to stderr as a
one-line JSON record {"error": code, "message": text}.
"""

import argparse
import json
import os
import sys
from typing import Optional

import numpy as np

from . import curvefam as cf
from . import kmod as km
from .errors import RepcurveError
from .ff import FieldElem, ctx_new, default_ctx
from .suites import (ARTIFACT_VERSION, SUITE_NAMES, claims_rows,
                     report_to_json, report_to_markdown, run_suite)

BUILD_KINDS = ("vd", "vdr", "regular", "aug", "trivial", "holo", "dr")
QUERY_KINDS = ("iso", "indec", "jordan", "profile", "ddeg")


def _parse_modulus(text: str) -> tuple:
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError:
        raise RepcurveError(f"modulus must be comma-separated integers, got {text!r}")


def _ctx_from_args(args):
    if args.modulus is not None:
        return ctx_new(args.p, args.n, _parse_modulus(args.modulus))
    return default_ctx(args.p, args.n)


def _emit(payload: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _load_module(path: str) -> km.HModule:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as e:
        raise RepcurveError(f"cannot read {path}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise RepcurveError(f"{path} is not valid JSON: {e}")
    if not isinstance(obj, dict):
        raise RepcurveError(f"{path} does not hold a module object")
    return km.module_from_json(obj)


def _require(args, names) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join(f"--{n}" for n in missing)
        raise RepcurveError(f"build {args.kind} needs {flags}")


def cmd_build(args) -> int:
    ctx = _ctx_from_args(args)
    if args.kind in ("vd", "vdr"):
        _require(args, ("d", "beta"))
        beta = ctx.from_text(args.beta)
        build = km.v_d if args.kind == "vd" else km.v_dr
        payload = _dump(km.module_to_json(build(ctx, args.d, beta)))
    elif args.kind == "regular":
        payload = _dump(km.module_to_json(km.regular_module(ctx)))
    elif args.kind == "aug":
        payload = _dump(km.module_to_json(km.augmentation_ideal(ctx)))
    elif args.kind == "trivial":
        payload = _dump(km.module_to_json(km.trivial_module(ctx)))
    else:
        _require(args, ("m", "alpha"))
        alpha = ctx.from_text(args.alpha)
        params = cf.curve_params(ctx, args.m, alpha)
        gm = cf.holo_graded(params) if args.kind == "holo" else cf.dr_graded(params)
        payload = _dump(cf.graded_to_json(gm))
    _emit(payload, args.out)
    return 0


def _query_ddeg(args, M: km.HModule) -> dict:
    if (args.label is None) == (args.vector is None):
        raise RepcurveError("ddeg needs exactly one of --label or --vector")
    if args.label is not None:
        v = M.basis_vector(args.label)
        shown = args.label
    else:
        parts = args.vector.split(";")
        if len(parts) != M.dim:
            raise RepcurveError(
                f"vector has {len(parts)} components, module has dim {M.dim}")
        v = np.array([M.ctx.from_text(t).idx for t in parts], dtype=np.int64)
        shown = args.vector
    return {"input": shown, "ddeg": km.ddeg(M, v)}


def cmd_query(args) -> int:
    if args.kind == "iso":
        A = _load_module(args.modules[0])
        if len(args.modules) != 2:
            raise RepcurveError("iso needs exactly two module files")
        B = _load_module(args.modules[1])
        dec = km.is_isomorphic(A, B, seed=args.seed, trials=args.trials)
        payload = dec.to_json()
    else:
        if len(args.modules) != 1:
            raise RepcurveError(f"{args.kind} needs exactly one module file")
        M = _load_module(args.modules[0])
        if args.kind == "indec":
            tiers = tuple(args.tiers.split(",")) if args.tiers else ("T1", "T2", "T3")
            payload = km.is_indecomposable(M, seed=args.seed, trials=args.trials,
                                           tiers=tiers).to_json()
        elif args.kind == "jordan":
            scan = [{"point": [FieldElem(M.ctx, a).text() if a else "0",
                               FieldElem(M.ctx, b).text()],
                     "type": list(t)}
                    for (a, b), t in km.jordan_scan(M)]
            payload = {"generic": list(km.generic_jordan_type(M)),
                       "scan": scan,
                       "constant": km.constant_type_over_scan(M)}
        elif args.kind == "profile":
            payload = km.profile(M).to_json()
        else:
            payload = _query_ddeg(args, M)
    _emit(_dump(payload), args.out)
    return 0


def cmd_verify(args) -> int:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("REPCURVE_SEED", "0"))
    p_values = tuple(args.p) if args.p else (3, 5)
    report = run_suite(args.suite, p_values, seed=seed, trials=args.trials,
                       timings=args.timings, jobs=args.jobs)
    payload = (report_to_markdown(report) if args.format == "md"
               else report_to_json(report))
    _emit(payload, args.out)
    return report["exit"]


def cmd_claims(args) -> int:
    rows = claims_rows()
    if args.format == "json":
        payload = _dump([{"suite": s, "cases": c, "claim": t} for s, c, t in rows])
    else:
        lines = ["| suite | cases | claim |", "|---|---|---|"]
        lines += [f"| {s} | {c} | {t} |" for s, c, t in rows]
        payload = "\n".join(lines) + "\n"
    _emit(payload, args.out)
    return 0


def _add_ctx_flags(sub) -> None:
    sub.add_argument("--p", type=int, required=True, help="prime")
    sub.add_argument("--n", type=int, default=2, help="extension degree (default 2)")
    sub.add_argument("--modulus", type=str, default=None,
                     help="comma-separated coefficients, low degree first")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="repcurve",
        description="exact verification toolkit for a family of modular"
                    " representations attached to a family of curves")
    ap.add_argument("--version", action="version", version=ARTIFACT_VERSION)
    subs = ap.add_subparsers(dest="command", required=True)

    b = subs.add_parser("build", help="construct a module or graded family as JSON")
    b.add_argument("kind", choices=BUILD_KINDS)
    _add_ctx_flags(b)
    b.add_argument("--d", type=int, default=None, help="module parameter")
    b.add_argument("--beta", type=str, default=None,
                   help="twist parameter, element text like 0,1")
    b.add_argument("--m", type=int, default=None, help="branching exponent")
    b.add_argument("--alpha", type=str, default=None,
                   help="family parameter, element text like 0,1")
    b.add_argument("--out", type=str, default=None)
    b.set_defaults(fn=cmd_build)

    q = subs.add_parser("query", help="run a decision procedure on module JSON")
    q.add_argument("kind", choices=QUERY_KINDS)
    q.add_argument("modules", nargs="+", help="module JSON file(s)")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--trials", type=int, default=64)
    q.add_argument("--tiers", type=str, default=None,
                   help="comma list among T1,T2,T3 (indec only)")
    q.add_argument("--label", type=str, default=None, help="basis label (ddeg only)")
    q.add_argument("--vector", type=str, default=None,
                   help="semicolon-separated element texts (ddeg only)")
    q.add_argument("--out", type=str, default=None)
    q.set_defaults(fn=cmd_query)

    v = subs.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITE_NAMES + ("all",))
    v.add_argument("--p", type=int, action="append", default=None,
                   help="prime to run at; repeatable; default 3 and 5")
    v.add_argument("--seed", type=int, default=None,
                   help="global seed; falls back to REPCURVE_SEED, then 0")
    v.add_argument("--trials", type=int, default=64)
    v.add_argument("--format", choices=("json", "md"), default="json")
    v.add_argument("--timings", action="store_true",
                   help="record wall-clock ms per case (off for bytewise determinism)")
    v.add_argument("--jobs", type=int, default=1, help="worker threads")
    v.add_argument("--out", type=str, default=None)
    v.set_defaults(fn=cmd_verify)

    c = subs.add_parser("claims", help="print the claim checked by each suite")
    c.add_argument("--format", choices=("json", "md"), default="md")
    c.add_argument("--out", type=str, default=None)
    c.set_defaults(fn=cmd_claims)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args)
    except RepcurveError as e:
        record = {"error": e.code, "message": str(e)}
        sys.stderr.write(json.dumps(record, sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
