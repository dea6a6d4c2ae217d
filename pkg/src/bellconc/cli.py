"""Command-line front end.

Subcommands::

    scatter         random states per rank -> CSV of (C, N, M, purity), checks the inequality
    channel         (p, eps) grid for the PD or AD channel -> CSV, closed form vs direct
    werner-unitary  random U on Werner states -> JSON report of prediction deviations
    state           analyze one state stored as JSON

Exit codes: 0 all checks pass, 1 a numerical check failed, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from bellconc.channels import ad_closed_form, evolved_werner, pd_closed_form
from bellconc.measures import analyze, bell_nonlocality, concurrence
from bellconc.states import InvalidStateError, RngStream, load_state, random_mixed, random_unitary
from bellconc.werner import (
    check_proof_eigenstructure,
    correlation_scaling_deviation,
    make_case,
    property1_predicted_n,
    property2_predicted_c,
    werner_closed_form,
)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2
CHANNEL_TOL = 1e-10
WERNER_UNITARY_TOL = 1e-9
SCATTER_COLUMNS = ["index", "rank", "concurrence", "nonlocality", "m_value", "purity"]
CHANNEL_COLUMNS = ["p", "eps", "c_closed", "n_closed", "c_direct", "n_direct"]


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def parse_ranks(text: str) -> list[int]:
    try:
        ranks = sorted({int(tok) for tok in text.split(",") if tok.strip()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"ranks must be comma-separated integers, got {text!r}") from None
    if not ranks or any(r not in (1, 2, 3, 4) for r in ranks):
        raise argparse.ArgumentTypeError(f"ranks must be a subset of 1,2,3,4, got {text!r}")
    return ranks


def scatter_records(samples_per_rank: int, ranks, seed: int):
    """Yield (index, rank, C, N, M, purity), ordered by (rank, index).

    Rank r draws from RngStream(seed, stream=r).
    """
    for rank in ranks:
        rng = RngStream(seed, stream=rank)
        for i in range(samples_per_rank):
            rho = random_mixed(rank, rng)
            rep = analyze(rho)
            pur = float(np.real(np.vdot(rho.conj().T, rho)))  # rho already validated by analyze
            yield i, rank, rep.concurrence, rep.nonlocality, rep.m_value, pur


def cmd_scatter(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    rows, violations = [], 0
    lo_margin = hi_margin = math.inf
    for idx, rank, c, n, m, pur in scatter_records(args.samples, args.ranks, args.seed):
        lo = math.sqrt(max(0.0, 2.0 * c * c - 1.0))
        lo_margin = min(lo_margin, n - lo)
        hi_margin = min(hi_margin, c - n)
        if n < lo - 1e-9 or n > c + 1e-9:
            violations += 1
        rows.append([idx, rank, fmt(c), fmt(n), fmt(m), fmt(pur)])
    _write_text(args.out, _csv_text(SCATTER_COLUMNS, rows))
    print(f"samples: {len(rows)} (ranks {','.join(map(str, args.ranks))}, seed {args.seed})")
    print(f"violations: {violations}")
    print(f"min N - lower bound: {lo_margin:.3e}")
    print(f"min upper bound - N: {hi_margin:.3e}")
    print(f"wrote {args.out}")
    return EXIT_OK if violations == 0 else EXIT_CHECK_FAILED


def channel_rows(kind: str, p_steps: int, eps_steps: int):
    closed = {"pd": pd_closed_form, "ad": ad_closed_form}[kind]
    for p in np.linspace(0.0, 1.0, p_steps):
        for eps in np.linspace(0.0, 1.0, eps_steps):
            c_cl, n_cl = closed(p, eps)
            rho = evolved_werner(kind, p, eps)
            yield float(p), float(eps), c_cl, n_cl, concurrence(rho), bell_nonlocality(rho)


def cmd_channel(args) -> int:
    if args.p_steps < 2 or args.eps_steps < 2:
        raise UsageError("--p-steps and --eps-steps must be >= 2")
    rows, worst = [], 0.0
    for p, eps, c_cl, n_cl, c_d, n_d in channel_rows(args.kind, args.p_steps, args.eps_steps):
        worst = max(worst, abs(c_cl - c_d), abs(n_cl - n_d))
        rows.append([fmt(v) for v in (p, eps, c_cl, n_cl, c_d, n_d)])
    _write_text(args.out, _csv_text(CHANNEL_COLUMNS, rows))
    ok = worst <= CHANNEL_TOL
    print(f"{args.kind} grid {args.p_steps}x{args.eps_steps}: max |closed - direct| = {worst:.3e} ({'ok' if ok else 'MISMATCH'})")
    print(f"wrote {args.out}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def werner_unitary_report(trials: int, seed: int, identity: bool = False) -> dict:
    rng = RngStream(seed)
    dev = dict.fromkeys(
        ["n_property1", "c_property2", "lambda3", "lambda4", "lambda1+lambda2", "lambda1*lambda2",
         "t_scaling", "c_dominance", "n_dominance"],
        0.0,
    )
    for _ in range(trials):
        p = float(rng.uniform())
        u = np.eye(4, dtype=complex) if identity else random_unitary(4, rng)
        case = make_case(p, u)
        c, n = concurrence(case.rho_wu), bell_nonlocality(case.rho_wu)
        dev["n_property1"] = max(dev["n_property1"], abs(property1_predicted_n(case) - n))
        dev["c_property2"] = max(dev["c_property2"], abs(property2_predicted_c(case) - c))
        for name, d in check_proof_eigenstructure(case).deviations.items():
            dev[name] = max(dev[name], d)
        dev["t_scaling"] = max(dev["t_scaling"], correlation_scaling_deviation(case))
        c_w, n_w = werner_closed_form(p)
        dev["c_dominance"] = max(dev["c_dominance"], c - c_w)
        dev["n_dominance"] = max(dev["n_dominance"], n - n_w)
    passed = all(v <= WERNER_UNITARY_TOL for v in dev.values())
    return {
        "trials": trials,
        "seed": seed,
        "identity_unitary": identity,
        "tolerance": WERNER_UNITARY_TOL,
        "max_deviation": dev,
        "passed": passed,
    }


def cmd_werner_unitary(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    report = werner_unitary_report(args.trials, args.seed, args.identity)
    _write_text(args.out, json.dumps(report, indent=2) + "\n")
    for name, d in report["max_deviation"].items():
        print(f"{name:>16}: {d:.3e}")
    print(f"{'PASS' if report['passed'] else 'FAIL'} at tolerance {WERNER_UNITARY_TOL:g}; wrote {args.out}")
    return EXIT_OK if report["passed"] else EXIT_CHECK_FAILED


def cmd_state(args) -> int:
    try:
        rho = load_state(args.in_path)
    except OSError as exc:
        raise UsageError(f"cannot read {args.in_path}: {exc}") from None
    except InvalidStateError as exc:
        raise UsageError(f"invalid state: {exc}") from None
    rep = analyze(rho)
    print(f"concurrence:  {rep.concurrence:.12f}")
    print(f"M:            {rep.m_value:.12f}")
    print(f"nonlocality:  {rep.nonlocality:.12f}")
    print(f"bounds:       [{rep.lower_bound:.12f}, {rep.upper_bound:.12f}]")
    print(f"inequality:   {'VIOLATED' if rep.violates_inequality else 'satisfied'}")
    return EXIT_CHECK_FAILED if rep.violates_inequality else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bellconc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("scatter", help="random-state scatter of (C, N)")
    sp.add_argument("--samples", type=int, default=10_000, help="samples per rank")
    sp.add_argument("--ranks", type=parse_ranks, default=[2, 3, 4])
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_scatter)

    sp = sub.add_parser("channel", help="channel-evolved Werner grid")
    sp.add_argument("--kind", choices=["pd", "ad"], required=True)
    sp.add_argument("--p-steps", type=int, default=21)
    sp.add_argument("--eps-steps", type=int, default=21)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_channel)

    sp = sub.add_parser("werner-unitary", help="unitary-rotated Werner verification")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--identity", action="store_true", help="use U = 1 in every trial")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_werner_unitary)

    sp = sub.add_parser("state", help="analyze a JSON state file")
    sp.add_argument("--in", dest="in_path", required=True)
    sp.set_defaults(func=cmd_state)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
