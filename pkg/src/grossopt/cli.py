"""Command-line front end: ``grossopt solve | homogeneity | demo-illcond | bench``.

Gross values on the command line use the ``digit@power`` literal form
(``1@-1`` for ①⁻¹).  Output files go to ``--out`` or, when that is omitted,
into the directory named by ``$GROSSOPT_OUTPUT_DIR`` if it is set.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .experiments import (
    ScalePair,
    benchmark_suite,
    check_homogeneity,
    illcond_demo,
    parse_scales,
    recover,
    trial_table,
)
from .grossone import GrossNumber, GrossParseError, parse_scalar
from .problems import BUILTIN_PROBLEMS, ScaledProblem, load_problems
from .records import ReportRecord
from .solver import METHOD_IDS, MethodConfig, run

OUTPUT_DIR_ENV = "GROSSOPT_OUTPUT_DIR"


def _gross_arg(text: str) -> GrossNumber:
    try:
        return parse_scalar(text)
    except GrossParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _scales_arg(text: str) -> list[ScalePair]:
    try:
        return parse_scales(text)
    except (GrossParseError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _problems(args) -> dict:
    probs = dict(BUILTIN_PROBLEMS)
    if getattr(args, "problems_file", None):
        probs.update(load_problems(args.problems_file))
    return probs


def _select(name: str, known: dict | tuple, what: str) -> list:
    if name == "all":
        return list(known)
    if name not in known:
        raise SystemExit(f"error: unknown {what} {name!r}; choose from {', '.join(known)} or 'all'")
    return [name]


def _output_path(out: str | None, default_name: str) -> Path | None:
    if out:
        return Path(out)
    d = os.environ.get(OUTPUT_DIR_ENV)
    return Path(d) / default_name if d else None


def _plain(v) -> GrossNumber | float:
    # purely finite literals become floats so the run stays in machine arithmetic
    return v.to_real() if isinstance(v, GrossNumber) and v.is_purely_finite() else v


def cmd_solve(args) -> int:
    probs = _problems(args)
    if args.function not in probs:
        print(f"error: unknown function {args.function!r}; choose from {', '.join(probs)}", file=sys.stderr)
        return 2
    base = probs[args.function]
    alpha, beta = _plain(args.alpha), _plain(args.beta)
    kwargs = {"epsilon_fraction": args.eps_frac, "max_iterations": args.max_iter}
    if args.r is not None:
        kwargs["r"] = args.r
    if args.L is not None:
        kwargs["lipschitz"] = _plain(args.L)
    try:
        config = MethodConfig.from_id(args.method, **kwargs)
        rep = run(ScaledProblem(base, alpha, beta), config)
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    record = ReportRecord.from_report(rep)
    f_best = recover(rep.z_best, alpha, beta)
    print(
        f"{rep.problem} {rep.method}: x*={rep.x_best!r} z*={rep.z_best} "
        f"f*={f_best!r} trials={rep.trial_count} stop={rep.stop_reason.value}"
    )
    path = _output_path(args.out, f"solve-{rep.problem}-{rep.method}.{args.format}")
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(record.dumps(args.format))
    return 0


def cmd_homogeneity(args) -> int:
    probs = _problems(args)
    names = _select(args.function, probs, "function")
    methods = _select(args.method, METHOD_IDS, "method")
    failed = 0
    for pname in names:
        for mid in methods:
            for scale in args.scales:
                v = check_homogeneity(probs[pname], mid, scale, check_invariants=not args.no_invariants)
                good = v.sequences_equal and (v.invariants_ok or not args.strict)
                failed += not good
                rule = "exact" if v.exact else "rel 1e-9"
                line = (
                    f"{'OK  ' if good else 'FAIL'} {pname:>4} {mid:<9} {scale.label:<14} "
                    f"[{rule}] trials={v.trial_counts[0]}/{v.trial_counts[1]} cases={''.join(sorted(v.cases))}"
                )
                if v.first_divergence is not None:
                    d = v.first_divergence
                    line += f" diverged at iteration {d.iteration}: {d.reason}"
                    if d.x_original is not None:
                        line += f" ({d.x_original!r} vs {d.x_scaled!r})"
                if v.invariant_failures:
                    line += f" invariant-failures={len(v.invariant_failures)}"
                print(line)
    return 1 if failed else 0


def cmd_demo_illcond(args) -> int:
    demo = illcond_demo(args.alpha, args.beta, args.step)
    xf, gf = demo.float_argmin
    xt, ft = demo.true_argmin
    xg, gg = demo.gross_argmin
    print(f"true minimum of f3:      x={xt:.4f} f={ft:.4f}")
    print(f"float g = {args.alpha!r}*f3 + {args.beta!r}: x={xf:.4f} g={gf!r} (rounded {gf:.1f})")
    print(f"gross g = {demo.gross_scale.alpha.pretty()}*f3 + {demo.gross_scale.beta.pretty()}: "
          f"x={xg:.4f} g={gg.pretty()} recovered f*={demo.gross_recovered:.4f}")
    xi, fi = demo.inverted_argmin
    print(f"inverted (g - beta)/alpha: x={xi:.4f} value={fi!r}")
    if demo.ill_conditioned:
        print("ill-conditioning detected: the float path lost the true minimum")
    else:
        print("no ill-conditioning detected")
    path = _output_path(args.out, "illcond.dat")
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w") as fh:
            fh.write("# x value series\n")
            for x, v, s in demo.plot_rows():
                fh.write(f"{x!r} {v!r} {s}\n")
    return 0


def cmd_bench(args) -> int:
    probs = _problems(args)
    names = _select(args.function, probs, "function")
    methods = _select(args.method, METHOD_IDS, "method")
    cells = benchmark_suite(methods, [probs[n] for n in names], args.scales, max_workers=args.workers)
    table = trial_table(cells)
    labels = [s.label for s in args.scales]
    print("problem,method," + ",".join(labels))
    for (pname, mid), row in table.items():
        print(f"{pname},{mid}," + ",".join("" if row[l] is None else str(row[l]) for l in labels))
    for c in cells:
        if c.error:
            print(f"# {c.problem} {c.method} {c.scale.label}: {c.error}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grossopt", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="run one method on one problem")
    s.add_argument("--function", required=True)
    s.add_argument("--method", required=True, choices=METHOD_IDS)
    s.add_argument("--alpha", type=_gross_arg, default=GrossNumber(1.0))
    s.add_argument("--beta", type=_gross_arg, default=GrossNumber(0.0))
    s.add_argument("--r", type=float)
    s.add_argument("--L", type=_gross_arg, help="a-priori Lipschitz constant, used verbatim")
    s.add_argument("--eps-frac", type=float, default=1e-4)
    s.add_argument("--max-iter", type=int, default=10**6)
    s.add_argument("--out")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.add_argument("--problems-file", help="JSON file with extra problems")
    s.set_defaults(func=cmd_solve)

    h = sub.add_parser("homogeneity", help="compare runs on f and alpha*f + beta")
    h.add_argument("--function", default="all")
    h.add_argument("--method", default="all")
    h.add_argument("--scales", type=_scales_arg, default=parse_scales("1@-1,1@1;1@1,1@2"))
    h.add_argument("--no-invariants", action="store_true", help="skip the per-iteration estimate checks")
    h.add_argument("--strict", action="store_true", help="also fail on per-iteration check failures")
    h.add_argument("--problems-file")
    h.set_defaults(func=cmd_homogeneity)

    d = sub.add_parser("demo-illcond", help="grid minima of 1e-17*f3 + 1 in doubles and in gross arithmetic")
    d.add_argument("--alpha", type=float, default=1e-17)
    d.add_argument("--beta", type=float, default=1.0)
    d.add_argument("--step", type=float, default=1e-4)
    d.add_argument("--out")
    d.set_defaults(func=cmd_demo_illcond)

    b = sub.add_parser("bench", help="trial counts for methods x problems x scales")
    b.add_argument("--function", default="all")
    b.add_argument("--method", default="all")
    b.add_argument("--scales", type=_scales_arg, default=[ScalePair(1.0, 0.0, "identity"), *parse_scales("1@-1,1@1;1@1,1@2")])
    b.add_argument("--workers", type=int, default=None)
    b.add_argument("--problems-file")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
