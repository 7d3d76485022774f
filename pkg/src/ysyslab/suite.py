"""The wired verification suite: runs every check over a case list and
emits machine-readable report rows (one JSON object per case and check)."""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field


from .builders import FamilySpec, build
from .dilog import check_DI, check_functional_DI
from .mutclass import search_equivalence
from .numeric import NumericRun, tropical_shadow_mismatches
from .quiver import find_isomorphism
from .roots import apart_mismatches_C, tvector_mismatches
from .schedule import ScheduleError, run_schedule
from .tropical import TropicalRun, expected_counts, total_points

DEFAULT_CASES = (
    [("C", r, lev) for r in (2, 3, 4) for lev in (2, 3, 4)]
    + [("F4", 4, 2), ("F4", 4, 3)]
    + [("G2", 2, lev) for lev in (2, 3, 4)]
)

DEFAULT_PAIRS = [
    (("C", 3, 2), ("D", 4, 3)),
    (("F4", 4, 2), ("D", 5, 3)),
    (("C", 2, 3), ("A", 3, 4)),
    (("G2", 2, 2), ("C", 3, 2)),
    (("G2", 2, 3), ("C", 3, 3)),
]

DEFAULT_CONFIG = {
    "cases": DEFAULT_CASES,
    "pairs": DEFAULT_PAIRS,
    "seeds": [0, 1, 2, 3, 4],
    "residual_tol": 1e-9,
    "periodicity_tol": 1e-8,
    "dilog_tol": 1e-8,
    "functional_tol": 1e-6,
    "extra_dilog_levels": [5],
    "depth_cap": 12,
    "node_cap": 10**6,
}


@dataclass
class VerificationReport:
    case: str
    check: str
    status: str  # pass / fail / inconclusive
    statement: str
    metrics: dict = field(default_factory=dict)

    def to_json(self):
        return json.dumps(
            {
                "case": self.case,
                "check": self.check,
                "status": self.status,
                "statement": self.statement,
                "metrics": self.metrics,
            },
            sort_keys=True,
        )


def _case_id(family, rank, level):
    return f"{family}:{rank}:{level}"


def _case_rows(case, cfg):
    family, rank, level = case
    cid = _case_id(family, rank, level)
    rows = []

    def row(check, status, statement, **metrics):
        rows.append(VerificationReport(cid, check, status, statement, metrics))

    # scheduled mutation cycle (quiver transforms asserted on every step)
    try:
        mdl = build(FamilySpec(family, rank, level))
        t = mdl.cartan["t"]
        run_schedule(mdl, -2 * t, 2 * t)
        row("schedule", "pass", "scheduled-quiver-cycle", vertices=mdl.n)
    except ScheduleError as err:
        row("schedule", "fail", "scheduled-quiver-cycle", error=str(err))
        return rows

    trop = TropicalRun(family, rank, level)
    try:
        counts = trop.count_signs()
        want = expected_counts(family, rank, level)
        ok = counts == want and sum(counts) == total_points(family, rank, level)
        row(
            "tropical-counts",
            "pass" if ok else "fail",
            "sign-count-closed-form",
            got=list(counts),
            expected=list(want),
        )
    except ArithmeticError as err:
        row("tropical-counts", "fail", "sign-count-closed-form", error=str(err))
    per = trop.periodicity_mismatches()
    row(
        "tropical-periodicity",
        "pass" if not per else "fail",
        "tropical-half-full-periodicity",
        mismatches=len(per),
    )
    sgn = trop.sign_pattern_mismatches()
    bnd = trop.boundary_mismatches()
    row(
        "tropical-signs",
        "pass" if not (sgn or bnd) else "fail",
        "region-sign-classification",
        region_mismatches=len(sgn),
        boundary_mismatches=len(bnd),
    )

    if level == 2:
        bad = tvector_mismatches(trop)
        if family == "C":
            bad += apart_mismatches_C(trop)
        row(
            "tvectors",
            "pass" if not bad else "fail",
            "level2-root-identities",
            mismatches=len(bad),
        )

    res_t, res_x, res_y, per_t, per_y = [], [], [], [], []
    for seed in cfg["seeds"]:
        tracked = NumericRun(family, rank, level, seed=seed, tracked=True)
        plain = NumericRun(family, rank, level, seed=seed, tracked=False)
        res_t.append(plain.t_residuals().max())
        res_x.append(tracked.t_residuals().max())
        res_y.append(tracked.y_residuals().max())
        per_t.append(plain.t_periodicity_errors().max())
        per_y.append(tracked.y_periodicity_errors().max())
    worst_res = float(max(max(res_t), max(res_x), max(res_y)))
    worst_per = float(max(max(per_t), max(per_y)))
    row(
        "numeric-residuals",
        "pass" if worst_res < cfg["residual_tol"] else "fail",
        "recursion-residuals",
        max_residual=worst_res,
        tol=cfg["residual_tol"],
    )
    row(
        "numeric-periodicity",
        "pass" if worst_per < cfg["periodicity_tol"] else "fail",
        "labelled-periodicity",
        max_error=worst_per,
        tol=cfg["periodicity_tol"],
    )
    shadow = tropical_shadow_mismatches(family, rank, level, seed=cfg["seeds"][0])
    row(
        "tropical-shadow",
        "pass" if not shadow else "fail",
        "small-parameter-slopes",
        mismatches=len(shadow),
    )

    lhs, rhs, err = check_DI(family, rank, level)
    row(
        "dilog-constant",
        "pass" if err < cfg["dilog_tol"] else "fail",
        "constant-dilog-identity",
        lhs=lhs,
        rhs=rhs,
        abs_error=err,
    )
    rep = check_functional_DI(family, rank, level, seeds=tuple(cfg["seeds"]))
    ok = rep["max_deviation"] < cfg["functional_tol"] and rep["seed_spread"] < cfg["functional_tol"]
    row(
        "dilog-functional",
        "pass" if ok else "fail",
        "functional-dilog-identity",
        max_deviation=rep["max_deviation"],
        seed_spread=rep["seed_spread"],
        targets=list(rep["targets"]),
    )
    return rows


def _pair_rows(pair, cfg):
    left, right = pair
    cid = f"{_case_id(*left)}~{_case_id(*right)}"
    Q1 = build(FamilySpec(*left)).quiver
    Q2 = build(FamilySpec(*right)).quiver
    res = search_equivalence(Q1, Q2, depth_cap=cfg["depth_cap"], node_cap=cfg["node_cap"])
    if res is None:
        return [
            VerificationReport(
                cid, "mutation-equivalence", "inconclusive", "mutation-equivalence",
                {"depth_cap": cfg["depth_cap"], "node_cap": cfg["node_cap"]},
            )
        ]
    path, _ = res
    verified = find_isomorphism(path.replay(), Q2) is not None
    return [
        VerificationReport(
            cid,
            "mutation-equivalence",
            "pass" if verified else "fail",
            "mutation-equivalence",
            {"path_length": len(path.moves), "moves": list(path.moves)},
        )
    ]


def _extra_dilog_rows(cfg):
    rows = []
    families = sorted({(f, r) for f, r, _ in cfg["cases"]})
    for lev in cfg["extra_dilog_levels"]:
        for family, rank in families:
            lhs, rhs, err = check_DI(family, rank, lev)
            rows.append(
                VerificationReport(
                    _case_id(family, rank, lev),
                    "dilog-constant",
                    "pass" if err < cfg["dilog_tol"] else "fail",
                    "constant-dilog-identity",
                    {"lhs": lhs, "rhs": rhs, "abs_error": err},
                )
            )
    return rows


def run_suite(config=None):
    """Run every verification over the configured cases; returns report rows."""
    cfg = dict(DEFAULT_CONFIG)
    if config:
        cfg.update(config)
    cfg["cases"] = [tuple(c) for c in cfg["cases"]]
    cfg["pairs"] = [tuple(map(tuple, p)) for p in cfg["pairs"]]
    workers = int(os.environ.get("YSYSLAB_THREADS", "1"))
    jobs = [("case", c) for c in cfg["cases"]] + [("pair", p) for p in cfg["pairs"]]

    def work(job):
        kind, payload = job
        return _case_rows(payload, cfg) if kind == "case" else _pair_rows(payload, cfg)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(work, jobs))
    else:
        batches = [work(j) for j in jobs]
    rows = [row for batch in batches for row in batch]
    rows += _extra_dilog_rows(cfg)
    rows.sort(key=lambda r: (r.case, r.check))
    return rows


def suite_passed(rows):
    return all(r.status == "pass" for r in rows)
