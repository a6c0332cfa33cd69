"""Search for optimal (s, a, b, c, d) given a word length w and r words.

Starting from δ = floor(w/2), every quadruple in [δ, w-δ]^4 with
min(a, b, c, d) = δ is screened against the structural criteria, then each
lag s coprime to r is tested for full period.  The first δ level with any
full-period quintuple wins; among those the highest weight W is chosen,
with the lexicographically smallest quintuple breaking any remaining tie.

By default the four shifts must also be pairwise distinct.  Every published
optimal row has distinct shifts, and without this rule the search prefers
rows such as (1, 15, 14, 13, 15) for w = 32, r = 2 over the tabled
(1, 17, 14, 12, 19).  Pass ``distinct_shifts=False`` for criteria 1-7 only.
"""

from __future__ import annotations

import logging
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from math import gcd

from .analysis import Verdict, char_poly
from .factors import FactorTable, load_table
from .params import XorgensParams

__all__ = ["SearchOutcome", "search_optimal", "structural_reject", "check_candidate"]

log = logging.getLogger(__name__)


@dataclass
class SearchOutcome:
    w: int
    r: int
    found: XorgensParams | None
    delta_reached: int
    candidates_tested: int = 0
    successes: int = 0
    rejects_by_criterion: Counter = field(default_factory=Counter)
    period_rejects: Counter = field(default_factory=Counter)
    solutions: list[XorgensParams] = field(default_factory=list)
    complete: bool = True
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        f = self.found
        return {
            "w": self.w,
            "r": self.r,
            "n": self.w * self.r,
            "found": None if f is None else dict(zip("sabcd", f.quintuple), delta=f.delta, W=f.weight),
            "delta_reached": self.delta_reached,
            "candidates_tested": self.candidates_tested,
            "successes": self.successes,
            "rejects_by_criterion": dict(sorted(self.rejects_by_criterion.items())),
            "period_rejects": dict(sorted(self.period_rejects.items())),
            "solutions_at_delta": len(self.solutions),
            "status": "complete" if self.complete else "incomplete",
            "elapsed": round(self.elapsed, 3),
        }


def structural_reject(w: int, a: int, b: int, c: int, d: int, distinct_shifts: bool = True) -> str | None:
    """First failed structural criterion ("1"-"4", then "distinct"), or None."""
    if a + b > w or c + d > w:
        return "1"
    if gcd(a, b) != 1 or gcd(c, d) != 1:
        return "2"
    if a < b:
        return "3"
    if c > d:
        return "4"
    if distinct_shifts and len({a, b, c, d}) < 4:
        return "distinct"
    return None


def check_candidate(args: tuple[XorgensParams, FactorTable]) -> tuple[str, int | None]:
    """Full-period test for one quintuple: ("ok", W) or (reason, None)."""
    params, factors = args
    # An irreducible P(z) makes every nonzero output bit sequence have
    # minimal polynomial P(z) itself, so one short attempt is decisive.
    report = char_poly(params, factors, attempts=1)
    if report.verdict is Verdict.PRIMITIVE:
        return "ok", report.weight
    if report.verdict is Verdict.NOT_FULL_DEGREE:
        return "not-full-degree", None
    return ("reducible" if not report.irreducible else "not-primitive"), None


def _quadruples(w: int, delta: int):
    span = range(delta, w - delta + 1)
    for a, b, c, d in product(span, repeat=4):
        if min(a, b, c, d) == delta:
            yield a, b, c, d


def search_optimal(
    w: int,
    r: int,
    factors: FactorTable | None = None,
    *,
    delta_floor: int = 1,
    budget: float | None = None,
    workers: int = 1,
    distinct_shifts: bool = True,
) -> SearchOutcome:
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")
    if w < 2:
        raise ValueError(f"w must be >= 2, got {w}")
    n = w * r
    if factors is None:
        factors = load_table(n)
    elif factors.n != n:
        raise ValueError(f"factor table is for n={factors.n}, search needs n={n}")
    elif factors.product() != (1 << n) - 1:
        raise ValueError(f"factor table product does not equal 2^{n}-1")
    start = time.perf_counter()
    deadline = None if budget is None else start + budget
    out = SearchOutcome(w, r, None, 0)
    lags = [s for s in range(1, r) if gcd(r, s) == 1]
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for delta in range(w // 2, max(delta_floor, 1) - 1, -1):
            pending: list[XorgensParams] = []
            for a, b, c, d in _quadruples(w, delta):
                reason = structural_reject(w, a, b, c, d, distinct_shifts)
                out.candidates_tested += r - 1
                if reason is not None:
                    out.rejects_by_criterion[reason] += r - 1
                    continue
                coprime_fail = (r - 1) - len(lags)
                if coprime_fail:
                    out.rejects_by_criterion["6"] += coprime_fail
                    out.period_rejects["gcd(r,s)"] += coprime_fail
                pending.extend(XorgensParams(w, r, s, a, b, c, d) for s in lags)
            log.info("delta=%d: %d quintuples pass structural criteria", delta, len(pending))
            jobs = [(p, factors) for p in pending]
            if pool is not None:
                results = list(pool.map(check_candidate, jobs, chunksize=16))
            else:
                results = []
                for job in jobs:
                    if deadline is not None and time.perf_counter() > deadline:
                        out.complete = False
                        break
                    results.append(check_candidate(job))
            for p, (status, weight) in zip(pending, results):
                if status == "ok":
                    out.successes += 1
                    out.solutions.append(
                        XorgensParams(p.w, p.r, p.s, p.a, p.b, p.c, p.d, weight=weight)
                    )
                else:
                    out.rejects_by_criterion["6"] += 1
                    out.period_rejects[status] += 1
            # untested leftovers from a budget stop are not counted as tested
            out.candidates_tested -= len(pending) - len(results)
            if out.solutions:
                out.found = min(out.solutions, key=lambda q: (-q.weight, q.quintuple))
                out.delta_reached = delta
                break
            if not out.complete:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    out.elapsed = time.perf_counter() - start
    return out
