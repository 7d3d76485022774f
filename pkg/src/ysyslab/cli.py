"""Command-line entry point: build, schedule, tropical, numeric, orbits,
dilog, mutclass, and suite subcommands, all emitting JSON."""

from __future__ import annotations

import argparse
import json
from fractions import Fraction


from .builders import FamilySpec, build
from .dilog import check_DI, check_functional_DI
from .mutclass import search_equivalence
from .numeric import NumericRun
from .quiver import find_isomorphism
from .roots import format_d_symbol, sigma_C, sigma_F4, sigma_G2
from .schedule import schedule_steps
from .suite import run_suite, suite_passed
from .tropical import TropicalRun, sign_of


def _parse_case(text):
    family, rank, level = text.split(":")
    return FamilySpec(family, int(rank), int(level))


def _emit(data, path=None):
    text = json.dumps(data, indent=2, default=str)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cmd_build(args):
    mdl = build(FamilySpec(args.family, args.rank, args.level))
    text = mdl.quiver.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cmd_schedule(args):
    mdl = build(FamilySpec(args.family, args.rank, args.level))
    steps = schedule_steps(mdl, Fraction(args.frm), Fraction(args.to))
    _emit(
        [
            {
                "from": str(st.u_from),
                "to": str(st.u_to),
                "mutate": [list(v) for v in st.vertices],
                "expected_perm": st.expected_perm,
                "expected_opposite": st.expected_op,
            }
            for st in steps
        ],
        args.out,
    )


def _cmd_tropical(args):
    run = TropicalRun(args.family, args.rank, args.level)
    counts = run.count_signs()
    points = [
        {
            "vertex": list(run.model.position(v)),
            "u": str(Fraction(s, run.t)),
            "exponents": run.monomial(v, s).tolist(),
            "sign": sign_of(run.monomial(v, s)),
        }
        for v, s in run.p_plus_points(0, run.full_s)
    ]
    _emit(
        {
            "case": f"{args.family}:{args.rank}:{args.level}",
            "positive": counts[0],
            "negative": counts[1],
            "periodicity_mismatches": len(run.periodicity_mismatches()),
            "points": points,
        },
        args.report,
    )


def _cmd_numeric(args):
    worst_res, worst_per = 0.0, 0.0
    for seed in range(args.seeds):
        tracked = NumericRun(args.family, args.rank, args.level, seed=seed, tracked=True)
        plain = NumericRun(args.family, args.rank, args.level, seed=seed, tracked=False)
        worst_res = max(
            worst_res,
            plain.t_residuals().max(),
            tracked.t_residuals().max(),
            tracked.y_residuals().max(),
        )
        worst_per = max(
            worst_per,
            plain.t_periodicity_errors().max(),
            tracked.y_periodicity_errors().max(),
        )
    _emit(
        {
            "case": f"{args.family}:{args.rank}:{args.level}",
            "seeds": args.seeds,
            "max_residual": worst_res,
            "max_periodicity_error": worst_per,
            "tol": args.tol,
            "ok": bool(worst_res < args.tol and worst_per < args.tol),
        },
        args.out,
    )


def _cmd_orbits(args):
    if args.sigma == "C":
        if args.rank is None:
            raise SystemExit("--rank (of the D diagram) is required with --sigma C")
        sig = sigma_C(args.rank - 1)
        fmt = lambda vec: format_d_symbol(args.rank - 1, vec)
    elif args.sigma == "F4":
        sig = sigma_F4()
        fmt = str
    else:
        sig = sigma_G2()
        fmt = str
    for orbit in sig.orbit_decomposition():
        print(" -> ".join(fmt(v) for v in orbit) + " -> " + fmt(orbit[0]))


def _cmd_dilog(args):
    lhs, rhs, err = check_DI(args.family, args.rank, args.level)
    out = {"constant": {"lhs": lhs, "rhs": rhs, "abs_error": err}}
    if args.functional:
        out["functional"] = check_functional_DI(args.family, args.rank, args.level)
    _emit(out, args.out)


def _cmd_mutclass(args):
    Q1 = build(_parse_case(args.left)).quiver
    Q2 = build(_parse_case(args.right)).quiver
    res = search_equivalence(Q1, Q2, depth_cap=args.depth, node_cap=args.nodes)
    if res is None:
        _emit({"found": False, "depth_cap": args.depth, "node_cap": args.nodes})
        raise SystemExit(2)
    path, _ = res
    iso = find_isomorphism(path.replay(), Q2)
    _emit({"found": True, "moves": list(path.moves), "isomorphism": list(iso)})


def _cmd_suite(args):
    config = None
    if args.config:
        with open(args.config) as fh:
            config = json.load(fh)
    rows = run_suite(config)
    lines = [r.to_json() for r in rows]
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    for r in rows:
        print(f"{r.status:12s} {r.case:12s} {r.check}")
    n_fail = sum(r.status != "pass" for r in rows)
    print(f"{len(rows)} checks, {n_fail} not passing")
    if not suite_passed(rows):
        raise SystemExit(1)


def main(argv=None):
    ap = argparse.ArgumentParser(prog="ysyslab")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add_case_args(p):
        p.add_argument("--family", required=True, choices=["C", "F4", "G2", "A", "D", "E6"])
        p.add_argument("--rank", type=int, default=None)
        p.add_argument("--level", type=int, default=2)

    p = sub.add_parser("build", help="emit a quiver as JSON")
    add_case_args(p)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_build)

    p = sub.add_parser("schedule", help="list composite mutation steps")
    add_case_args(p)
    p.add_argument("--from", dest="frm", default="0")
    p.add_argument("--to", dest="to", default="2")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_schedule)

    p = sub.add_parser("tropical", help="tropical coefficient run and tallies")
    add_case_args(p)
    p.add_argument("--report")
    p.set_defaults(fn=_cmd_tropical)

    p = sub.add_parser("numeric", help="numeric residual and periodicity report")
    add_case_args(p)
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_numeric)

    p = sub.add_parser("orbits", help="print sigma orbits on almost positive roots")
    p.add_argument("--type", choices=["D", "E6"], default="D")
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--sigma", choices=["C", "F4", "G2"], required=True)
    p.set_defaults(fn=_cmd_orbits)

    p = sub.add_parser("dilog", help="dilogarithm identity report")
    add_case_args(p)
    p.add_argument("--functional", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_dilog)

    p = sub.add_parser("mutclass", help="search a mutation equivalence")
    p.add_argument("--left", required=True, help="family:rank:level")
    p.add_argument("--right", required=True, help="family:rank:level")
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--nodes", type=int, default=10**6)
    p.set_defaults(fn=_cmd_mutclass)

    p = sub.add_parser("suite", help="run the whole verification suite")
    p.add_argument("--config")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_suite)

    args = ap.parse_args(argv)
    if getattr(args, "rank", None) is None and getattr(args, "family", None):
        args.rank = {"C": 3, "F4": 4, "G2": 2, "E6": 6}.get(args.family, 3)
    args.fn(args)


if __name__ == "__main__":
    main()
