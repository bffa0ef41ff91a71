"""Batch command-line surface.

Subcommands: ``sample`` (row points as CSV/JSONL), ``tc`` (closed transforms
plus optional Monte Carlo), ``weights`` (face or dimension weight tables),
``chain`` (streamed trajectories), ``process`` (random atomic probabilities
as JSON lines), ``verify`` (the named check suites).

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 mathematical nonexistence.  Everything is deterministic under fixed
``--seed``/``--stream``; ``SIMPLEX_LAB_THREADS`` caps fan-out workers
without changing any output byte.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ._backend import active_backend, worker_count
from .chain import ChainConfig, iter_chain
from .core import face_weights
from .nu_measure import SignedMeasureError, nu_weights
from .process import BaseMeasure, sample_qb_process
from .rng import RngStream
from .samplers import (
    sample_bernoulli_vertex,
    sample_dirichlet,
    sample_face_uniform,
    sample_nu,
    sample_quasi_bernoulli,
)
from .transforms import tc_dirichlet, tc_monte_carlo, tc_quasi_bernoulli
from .verify import run_suite

_CHUNK = 65_536


class UsageError(ValueError):
    pass


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _parse_vector(values, flag):
    if values is None:
        raise UsageError(f"missing required flag {flag}")
    parts = []
    for chunk in values:
        parts.extend(p for p in chunk.split(",") if p)
    try:
        out = [float(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"{flag} expects numbers, got {values}") from exc
    if not out:
        raise UsageError(f"{flag} must be nonempty")
    return out


def _chunk_generator(seed, stream, index):
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(stream, index))
    return np.random.Generator(np.random.PCG64(ss))


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _emit_rows(rows, fmt, out):
    if fmt == "csv":
        for row in rows:
            out.write(",".join(_fmt(v) for v in row) + "\n")
    else:
        for row in rows:
            out.write('{"x":[' + ",".join(_fmt(v) for v in row) + "]}\n")


def _sampler_for(args):
    dist = args.dist
    if dist in ("dirichlet", "bernoulli", "qb-mixture", "qb-ewens"):
        a = _parse_vector(args.a, "--a")
        if dist == "dirichlet":
            return len(a), lambda gen, m: sample_dirichlet(a, gen, size=m)
        if dist == "bernoulli":
            return len(a), lambda gen, m: sample_bernoulli_vertex(a, gen, size=m)
        if args.k is None:
            raise UsageError(f"--dist {dist} requires --k")
        route = "mixture" if dist == "qb-mixture" else "ewens"
        return len(a), lambda gen, m: sample_quasi_bernoulli(
            a, args.k, gen, size=m, route=route
        )
    if dist == "face-uniform":
        if args.d is None or args.k is None:
            raise UsageError("--dist face-uniform requires --d and --k")
        return args.d + 1, lambda gen, m: sample_face_uniform(args.d, args.k, gen, size=m)
    if dist == "nu":
        if args.d is None or args.c is None:
            raise UsageError("--dist nu requires --c and --d")
        return args.d + 1, lambda gen, m: sample_nu(args.c, args.d, gen, size=m)
    raise UsageError(f"unknown --dist {dist!r}")


def cmd_sample(args) -> int:
    if args.k is not None and args.c is not None:
        raise UsageError("--k and --c are mutually exclusive")
    dim, draw = _sampler_for(args)
    if args.dist == "nu":
        # fail before emitting anything
        spec = nu_weights(args.c, args.d)
        if not spec.is_probability:
            raise SignedMeasureError(
                f"nu_{{c,d}} is not a probability for c={args.c}, d={args.d}"
            )
    n = args.n
    if n < 0:
        raise UsageError("-n must be >= 0")
    chunks = [(i, min(_CHUNK, n - lo)) for i, lo in enumerate(range(0, n, _CHUNK))]
    out, close = _open_out(args.out)
    try:
        if args.format == "csv":
            out.write(",".join(f"x{i}" for i in range(dim)) + "\n")

        def work(spec_pair):
            idx, m = spec_pair
            return draw(_chunk_generator(args.seed, args.stream, idx), m)

        workers = worker_count()
        if workers > 1 and len(chunks) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                for block in pool.map(work, chunks):
                    _emit_rows(np.atleast_2d(block), args.format, out)
        else:
            for pair in chunks:
                _emit_rows(np.atleast_2d(work(pair)), args.format, out)
    finally:
        if close:
            out.close()
    return 0


def cmd_tc(args) -> int:
    f = _parse_vector(args.f, "--f")
    if any(v <= 0 for v in f):
        raise UsageError("--f entries must be strictly positive")
    a = _parse_vector(args.a, "--a")
    if len(f) != len(a):
        raise UsageError("--f and --a must have equal length")
    lines = []
    if args.dist == "dirichlet":
        value = tc_dirichlet(f, a)
        lines.append(f"tc_dirichlet = {_fmt(value)}")
        c = sum(a)
        mc_draw = lambda gen, m: sample_dirichlet(a, gen, size=m)  # noqa: E731
    elif args.dist == "qb":
        if args.k is None:
            raise UsageError("--dist qb requires --k")
        methods = (
            ("compositions", "partitions") if args.method == "both" else (args.method,)
        )
        vals = []
        for meth in methods:
            v = tc_quasi_bernoulli(f, a, args.k, method=meth)
            vals.append(v)
            lines.append(f"tc_quasi_bernoulli[{meth}] = {_fmt(v)}")
        if len(vals) == 2:
            gap = abs(vals[0] - vals[1]) / abs(vals[0])
            lines.append(f"relative_gap = {_fmt(gap)}")
        value = vals[0]
        c = args.k
        mc_draw = lambda gen, m: sample_quasi_bernoulli(a, args.k, gen, size=m)  # noqa: E731
    else:
        raise UsageError(f"unknown --dist {args.dist!r} (expected dirichlet or qb)")
    if args.mc:
        gen = RngStream(args.seed, args.stream).generator()
        est, se = tc_monte_carlo(mc_draw(gen, args.mc), f, c)
        lines.append(f"mc_estimate = {_fmt(est)} se = {_fmt(se)} n = {args.mc}")
        lines.append(f"abs_z = {_fmt(abs(est - value) / se if se > 0 else 0.0)}")
    print("\n".join(lines))
    return 0


def cmd_weights(args) -> int:
    has_face = args.a is not None or args.k is not None
    has_dim = args.c is not None or args.d is not None
    if has_face and has_dim:
        raise UsageError("give either (--a, --k) or (--c, --d), not both")
    if has_face:
        if args.a is None or args.k is None:
            raise UsageError("face weights need both --a and --k")
        a = _parse_vector(args.a, "--a")
        table = face_weights(args.k, a)
        total = 0.0
        for face, w in sorted(table.items(), key=lambda kv: (len(kv[0]), kv[0])):
            total += w
            print("{" + ",".join(str(i) for i in face) + "} " + _fmt(w))
        print(f"sum {_fmt(total)}")
        return 0
    if args.c is None or args.d is None:
        raise UsageError("dimension weights need both --c and --d")
    spec = nu_weights(args.c, args.d)
    names = {0: "vertices", 1: "edges"}
    for k, w in enumerate(spec.dim_weights):
        label = names.get(k, f"{k}-faces")
        if k == args.d:
            label = "interior"
        print(f"dim {k} ({label}) {_fmt(w)}")
    print(f"sum {_fmt(sum(spec.dim_weights))}")
    if not spec.is_probability:
        print("warning: signed weights; not a probability", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    reports = run_suite(args.suite, seed=args.seed, n=args.n)
    failed = 0
    for rep in reports:
        tag = "PASS" if rep.passed else "FAIL"
        failed += 0 if rep.passed else 1
        print(f"[{tag}] {rep.name} {rep.to_json()}")
    print(f"{len(reports) - failed}/{len(reports)} checks passed")
    return 0 if failed == 0 else 1


def cmd_chain(args) -> int:
    a = _parse_vector(args.a, "--a")
    x0 = _parse_vector([args.x0], "--x0") if args.x0 else None
    cfg = ChainConfig(
        a=tuple(a),
        k=args.k if args.k is not None else 1,
        burn_in=args.burn_in,
        thin=args.thin,
        x0=tuple(x0) if x0 else None,
        route=args.route,
    )
    out, close = _open_out(args.out)
    try:
        out.write(",".join(f"x{i}" for i in range(len(a))) + "\n")
        for block in iter_chain(cfg, args.n, RngStream(args.seed, args.stream)):
            for row in block:
                out.write(",".join(_fmt(v) for v in row) + "\n")
    finally:
        if close:
            out.close()
    return 0


def _parse_base(text):
    if text == "uniform":
        return "uniform", ()
    if text.startswith("beta:"):
        p, q = (float(v) for v in text[len("beta:") :].split(","))
        return "beta", (p, q)
    if text.startswith("pwl:"):
        knots = []
        for knot in text[len("pwl:") :].split(","):
            x, fv = knot.split(":")
            knots.append((float(x), float(fv)))
        return "pwl", tuple(knots)
    raise UsageError(f"unknown --base {text!r} (uniform | beta:p,q | pwl:x:F,...)")


def cmd_process(args) -> int:
    if args.k is None:
        raise UsageError("process requires --k")
    kind, params = _parse_base(args.base)
    if kind == "uniform":
        measure = BaseMeasure.uniform(total_mass=args.mass)
    elif kind == "beta":
        measure = BaseMeasure.beta(*params, total_mass=args.mass)
    else:
        measure = BaseMeasure.piecewise_linear(params, total_mass=args.mass)
    gen = RngStream(args.seed, args.stream).generator()
    out, close = _open_out(args.out)
    try:
        for _ in range(args.n):
            ap = sample_qb_process(args.k, measure, gen)
            atoms = ",".join(
                "[" + _fmt(x) + "," + _fmt(w) + "]"
                for x, w in zip(ap.locations, ap.weights)
            )
            out.write('{"atoms":[' + atoms + "]}\n")
    finally:
        if close:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simplex-lab",
        description="Samplers, transforms and verification suites for "
        "Dirichlet and quasi-Bernoulli laws on the simplex.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--stream", type=int, default=0)

    p = sub.add_parser("sample", help="emit random simplex points")
    p.add_argument(
        "--dist",
        required=True,
        choices=["dirichlet", "bernoulli", "qb-mixture", "qb-ewens", "face-uniform", "nu"],
    )
    p.add_argument("--a", action="append")
    p.add_argument("--k", type=int)
    p.add_argument("--c", type=float)
    p.add_argument("--d", type=int)
    p.add_argument("-n", "--n", type=int, default=1)
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.add_argument("--out")
    add_common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("tc", help="closed transforms and Monte Carlo checks")
    p.add_argument("--dist", required=True, choices=["dirichlet", "qb"])
    p.add_argument("--a", action="append")
    p.add_argument("--f", action="append")
    p.add_argument("--k", type=int)
    p.add_argument(
        "--method", choices=["compositions", "partitions", "both"], default="partitions"
    )
    p.add_argument("--mc", type=int, default=0)
    add_common(p)
    p.set_defaults(func=cmd_tc)

    p = sub.add_parser("weights", help="face or dimension weight tables")
    p.add_argument("--a", action="append")
    p.add_argument("--k", type=int)
    p.add_argument("--c", type=float)
    p.add_argument("--d", type=int)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument(
        "--suite",
        required=True,
        choices=["core", "transforms", "chain", "process", "all"],
    )
    p.add_argument("-n", "--n", type=int, default=None)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chain", help="stream a chain trajectory as CSV")
    p.add_argument("--a", action="append", required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("-n", "--n", type=int, required=True)
    p.add_argument("--burn-in", type=int, default=200)
    p.add_argument("--thin", type=int, default=1)
    p.add_argument("--x0")
    p.add_argument("--route", choices=["mixture", "ewens"], default="mixture")
    p.add_argument("--out")
    add_common(p)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("process", help="emit random atomic probabilities as JSONL")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--base", default="uniform")
    p.add_argument("-n", "--n", type=int, default=1)
    p.add_argument("--out")
    add_common(p)
    p.set_defaults(func=cmd_process)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        active_backend()  # fail on a bad SIMPLEX_LAB_BACKEND before any output
        return args.func(args)
    except SignedMeasureError as exc:
        print(str(exc), file=sys.stderr)
        return 3
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
