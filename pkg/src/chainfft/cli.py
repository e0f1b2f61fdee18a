"""Command-line surface: construction, transforms, verification, and benchmarks.

Exit codes: 0 success, 1 verification failure, 2 usage error.  Identical
flags and seed produce byte-identical output; every number is emitted as an
exact integer or a "p/q" string.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
from fractions import Fraction

from .combinat import (
    ChainKind,
    algebra_dim,
    bratteli_dot,
    bratteli_json_str,
    cached_bratteli,
    hom_count_brute,
    hom_count_closed,
    paper_bounds,
    stage_quiver_shape,
)
from .diagrams import all_diagrams, check_relations, diagram_mul, evaluate, factor_map
from .errors import ChainFFTError
from .reps import DEFAULT_Q, adapted_rep
from .transform import (
    element_from_json,
    element_to_json,
    fft_naive,
    fft_sov,
    image_to_json,
    inverse_ft,
    random_element,
    sov_plan,
)

USAGE_ERROR = 2
VERIFY_ERROR = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chainfft")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_q=True):
        p.add_argument("--chain", required=True, choices=["sn", "brauer", "tl", "bmw"])
        p.add_argument("-n", type=int, required=True)
        if with_q:
            p.add_argument("--q", default=None, help="loop parameter as p/q")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", default="json", choices=["json", "dot", "csv"])

    common(sub.add_parser("bratteli", help="emit the Bratteli diagram"))
    common(sub.add_parser("dims", help="per-level dimension table"))

    fft = sub.add_parser("fft", help="run a Fourier transform")
    common(fft)
    fft.add_argument("--algo", default="sov", choices=["naive", "sov"])
    fft.add_argument("--coeffs", required=True, help="coefficient JSON file")

    inv = sub.add_parser("invert", help="round-trip a coefficient file")
    common(inv)
    inv.add_argument("--coeffs", required=True)

    ver = sub.add_parser("verify", help="run verification suites")
    common(ver)
    ver.add_argument(
        "--suite",
        default="all",
        choices=["all", "relations", "factor-set", "hom-counts", "roundtrip", "bounds"],
    )

    plan = sub.add_parser("plan", help="emit the SOV schedule and predicted costs")
    common(plan)

    bench = sub.add_parser("bench", help="operation-count benchmark table")
    common(bench)
    bench.add_argument("--n-max", type=int, default=None)
    bench.add_argument("--trials", type=int, default=1)
    return parser


def _parse_q(args) -> Fraction:
    kind = ChainKind.parse(args.chain)
    q_raw = getattr(args, "q", None)
    if kind is ChainKind.SYMMETRIC_GROUP and q_raw is not None:
        raise UsageError("--q is meaningless for the symmetric-group chain")
    return Fraction(q_raw) if q_raw is not None else DEFAULT_Q


class UsageError(Exception):
    pass


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        return dispatch(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ChainFFTError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def dispatch(args) -> int:
    kind = ChainKind.parse(args.chain)
    n = args.n
    if n < 0:
        raise UsageError("-n must be nonnegative")
    if kind is ChainKind.SYMMETRIC_GROUP and getattr(args, "q", None) is not None:
        raise UsageError("--q is meaningless for the symmetric-group chain")
    if args.command == "bratteli":
        B = cached_bratteli(kind, n)
        print(bratteli_dot(B) if args.format == "dot" else bratteli_json_str(B), end="")
        return 0
    if args.command == "dims":
        return cmd_dims(kind, n, args)
    if args.command == "plan":
        return cmd_plan(kind, n, args)
    if args.command == "fft":
        return cmd_fft(kind, n, args)
    if args.command == "invert":
        return cmd_invert(kind, n, args)
    if args.command == "verify":
        return cmd_verify(kind, n, args)
    if args.command == "bench":
        return cmd_bench(kind, n, args)
    raise UsageError(f"unknown command {args.command}")


def cmd_dims(kind: ChainKind, n: int, args) -> int:
    B = cached_bratteli(kind, n)
    rows = []
    for i in range(n + 1):
        rows.append(
            {
                "level": i,
                "dims": list(B.dims[i]),
                "sum_of_squares": sum(d * d for d in B.dims[i]),
                "algebra_dim": algebra_dim(kind, i),
            }
        )
    if args.format == "csv":
        print("level,sum_of_squares,algebra_dim")
        for row in rows:
            print(f"{row['level']},{row['sum_of_squares']},{row['algebra_dim']}")
    else:
        print(json.dumps(rows, indent=2))
    return 0


def cmd_plan(kind: ChainKind, n: int, args) -> int:
    plan = sov_plan(kind, n)
    payload = {
        "chain": kind.value,
        "n": n,
        "stages": [
            {
                "stage": s.i,
                "family": list(s.family),
                "w_size": s.w_size,
                "hom": s.hom,
                "predicted_mults": s.predicted_mults,
            }
            for s in plan.stages
        ],
        "levels": [
            {
                "level": l.level,
                "algebra_dim": l.algebra_dim,
                "combine_cost": l.combine_cost,
                "weight": str(l.subproblem_weight),
                "contribution": str(l.contribution),
            }
            for l in plan.levels
        ],
        "predicted_total": str(plan.predicted_total),
        "predicted_reduced": str(plan.predicted_reduced),
        "paper_total": str(plan.paper.total) if plan.paper else None,
        "paper_reduced": str(plan.paper.reduced_total) if plan.paper else None,
    }
    print(json.dumps(payload, indent=2))
    return 0


def _reject_bmw(kind: ChainKind, what: str) -> None:
    if kind is ChainKind.BMW_STRUCTURAL:
        raise UsageError(f"{what} unavailable for bmw: structural support only")


def cmd_fft(kind: ChainKind, n: int, args) -> int:
    _reject_bmw(kind, "fft")
    q = _parse_q(args)
    with open(args.coeffs) as fh:
        element, q_file = element_from_json(json.load(fh))
    if element.kind != kind or element.n != n:
        raise UsageError("coefficient file does not match --chain/-n")
    if getattr(args, "q", None) is None:
        q = q_file
    rep = adapted_rep(kind, n, q)
    plan = sov_plan(kind, n)
    if args.algo == "naive":
        img, ops = fft_naive(element, rep)
    else:
        img, ops = fft_sov(element, rep, plan)
    print(json.dumps(image_to_json(img, rep.B, ops, plan), indent=2))
    return 0


def cmd_invert(kind: ChainKind, n: int, args) -> int:
    _reject_bmw(kind, "invert")
    q = _parse_q(args)
    with open(args.coeffs) as fh:
        element, q_file = element_from_json(json.load(fh))
    if getattr(args, "q", None) is None:
        q = q_file
    rep = adapted_rep(kind, n, q)
    img, _ = fft_sov(element, rep, sov_plan(kind, n))
    back = inverse_ft(img, rep)
    ok = back.coeffs == element.coeffs
    print(json.dumps({"roundtrip": "pass" if ok else "fail"}))
    return 0 if ok else VERIFY_ERROR


def cmd_verify(kind: ChainKind, n: int, args) -> int:
    failures = 0
    suites = (
        ["relations", "factor-set", "hom-counts", "roundtrip", "bounds"]
        if args.suite == "all"
        else [args.suite]
    )
    for suite in suites:
        try:
            ok, detail = run_suite(kind, n, suite, args)
        except ChainFFTError as exc:
            ok, detail = False, str(exc)
        print(f"{suite}: {'pass' if ok else 'FAIL'}{detail}")
        failures += 0 if ok else 1
    return 0 if failures == 0 else VERIFY_ERROR


def run_suite(kind: ChainKind, n: int, suite: str, args) -> tuple[bool, str]:
    if suite == "relations":
        if kind is ChainKind.BMW_STRUCTURAL or n < 2:
            return True, " (skipped: structural or trivial)"
        report = check_relations(kind, n)
        return report.ok, f" ({report.checked} instances)"
    if suite == "factor-set":
        if kind is ChainKind.BMW_STRUCTURAL:
            return True, " (skipped: structural)"
        count = 0
        for d in all_diagrams(kind, n):
            word, b = factor_map(d)
            prod = diagram_mul(evaluate(word, kind, n).diagram, b)
            if prod.diagram != d or prod.loops != 0 or evaluate(word, kind, n).loops:
                return False, f" (diagram {d.key()})"
            count += 1
        return True, f" ({count} diagrams)"
    if suite == "hom-counts":
        B = cached_bratteli(kind, n)
        for i in range(2, n + 1):
            closed = hom_count_closed(B, i, n)
            brute = hom_count_brute(B, stage_quiver_shape(i, n), n)
            if closed != brute:
                return False, f" (stage {i}: {closed} vs {brute})"
        return True, f" (stages 2..{n})"
    if suite == "roundtrip":
        if kind is ChainKind.BMW_STRUCTURAL:
            return True, " (skipped: structural)"
        from .errors import CapabilityError

        q = _parse_q(args)
        rep = adapted_rep(kind, n, q)
        f = random_element(kind, n, args.seed)
        img, _ = fft_sov(f, rep, sov_plan(kind, n))
        try:
            back = inverse_ft(img, rep)
        except CapabilityError:
            return True, " (skipped: beyond the dual-basis size limit)"
        return back.coeffs == f.coeffs, ""
    if suite == "bounds":
        if kind is ChainKind.SYMMETRIC_GROUP:
            return True, " (skipped: no headline bound)"
        plan = sov_plan(kind, n)
        ok = plan.predicted_total <= plan.paper.total
        return ok, f" (predicted {plan.predicted_total} vs paper {plan.paper.total})"
    raise UsageError(f"unknown suite {suite}")


def cmd_bench(kind: ChainKind, n: int, args) -> int:
    _reject_bmw(kind, "bench")
    q = _parse_q(args)
    n_max = args.n_max if args.n_max is not None else n
    print("n,dim,naive_mul,sov_mul,sov_add,predicted,paper_bound,reduced_t")
    for size in range(n, n_max + 1):
        rep = adapted_rep(kind, size, q)
        plan = sov_plan(kind, size)
        naive_m, sov_m, sov_a = [], [], []
        for t in range(args.trials):
            f = random_element(kind, size, args.seed + t)
            _, ops_n = fft_naive(f, rep)
            _, ops_s = fft_sov(f, rep, plan)
            naive_m.append(ops_n.mul)
            sov_m.append(ops_s.mul)
            sov_a.append(ops_s.add)
        dim = algebra_dim(kind, size)
        med = lambda xs: int(statistics.median(xs))
        paper = str(plan.paper.total) if plan.paper else ""
        reduced = Fraction(med(sov_m), dim)
        print(
            f"{size},{dim},{med(naive_m)},{med(sov_m)},{med(sov_a)},"
            f"{plan.predicted_total},{paper},{reduced}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
