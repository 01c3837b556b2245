"""Golden-data checks shared by the ``verify`` command and the acceptance
tests.  Every check returns a CheckResult; exceptions (a missing or corrupt
reference file, say) become failures carrying the error text."""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

from . import golden
from .algebra import Poly, berlekamp_massey, check_recurrence, matrix_minpoly, strip_x_power
from .digraphs import find_isomorphism
from .graphs import count_ham_cycles_oracle
from .recurrence import (
    algorithm1,
    classify_sccs,
    full_h_series,
    locate_condensation,
    minimal_charpoly_on_initial,
    parity_checks,
    reduction_chain,
    scc_decompose,
)
from .signatures import enumerate_side_intersections, enumerate_signatures, signature_tally
from .transfer import Pipeline, parity_split_counts, state_to_tally, step

CATALOG_COUNTS = {1: (5, 15), 2: (13, 141), 3: (33, 1705), 4: (85, 25675), 5: (217, 455835)}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        tail = f" ({self.detail})" if self.detail else ""
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}{tail}"


class Context:
    """Lazily built objects for one k, shared across checks."""

    def __init__(self, k: int, seed: int = 0, workers: int = 1):
        self.k = k
        self.seed = seed
        self.workers = workers

    @cached_property
    def pipeline(self) -> Pipeline:
        return Pipeline.build(self.k)

    @cached_property
    def decomp(self):
        return scc_decompose(self.pipeline.sigma)

    @cached_property
    def classes(self):
        return classify_sccs(self.decomp, self.workers)

    def h_series(self, n_max: int) -> dict[int, int]:
        cache = self.__dict__.setdefault("_h", {})
        if n_max not in cache:
            vals = full_h_series(self.pipeline, n_max, golden.h_values(self.k))
            cache[n_max] = {i + 1: v for i, v in enumerate(vals)}
        return cache[n_max]

    @cached_property
    def minimal(self):
        return minimal_charpoly_on_initial(self.pipeline, seed=self.seed)


def _run(name: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    t = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # reported, not raised
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, bool(ok), detail, time.perf_counter() - t)


# --- individual checks ------------------------------------------------------

def check_catalog(k: int) -> CheckResult:
    def body():
        sides = enumerate_side_intersections(k)
        sigs = enumerate_signatures(k, sides)
        want = CATALOG_COUNTS[k]
        return (len(sides), len(sigs)) == want, f"sides={len(sides)} signatures={len(sigs)}"

    return _run(f"catalog counts k={k}", body)


def check_oracle(k: int, n_lo: int, n_hi: int) -> CheckResult:
    def body():
        ref = golden.h_values(k)
        bad = [n for n in range(n_lo, n_hi + 1) if count_ham_cycles_oracle(n, k) != ref[n]]
        return not bad, f"n={n_lo}..{n_hi}" + (f" mismatch at {bad}" if bad else "")

    return _run(f"oracle vs reference counts k={k}", body)


def check_pipeline(ctx: Context, n_hi: int) -> CheckResult:
    def body():
        ref = golden.h_values(ctx.k)
        h = ctx.h_series(n_hi)
        lo = 3 * ctx.k
        bad = [n for n in range(lo, n_hi + 1) if h[n] != ref[n]]
        return not bad, f"n={lo}..{n_hi}" + (f" mismatch at {bad[:5]}" if bad else "")

    return _run(f"pipeline vs reference counts k={ctx.k}", body)


def check_one_step(ctx: Context) -> CheckResult:
    def body():
        p = ctx.pipeline
        got = state_to_tally(step(p.start(), p.sigma), p.catalog)
        want = signature_tally(3 * ctx.k + 1, ctx.k, p.catalog)
        return got == want, f"{len(want)} signatures in G'({3 * ctx.k + 1},{ctx.k})"

    return _run(f"one-step transfer equals enumeration k={ctx.k}", body)


EXPECTED_CLASSES = {3: ["1", "2", "3", "4", "12", "13", "24"], 4: ["1A", "1B", "2", "4", "5", "10", "20", "46", "66", "114", "122"]}


def check_scc_classes(ctx: Context) -> CheckResult:
    def body():
        labels = [c.label for c in ctx.classes.classes]
        return labels == EXPECTED_CLASSES[ctx.k], f"{len(labels)} classes: {' '.join(labels)}"

    return _run(f"SCC isomorphism classes k={ctx.k}", body)


def check_scc_table(ctx: Context) -> CheckResult:
    def body():
        table = dict(golden.scc_table(ctx.k))
        bad = [c.label for c in ctx.classes.classes if table.get(c.label) != c.universal or not c.universal.is_integral()]
        return not bad and len(table) == len(ctx.classes), "mismatch: " + ",".join(bad) if bad else "all rows equal"

    return _run(f"per-class universal polynomials k={ctx.k}", body)


def check_example_scc() -> CheckResult:
    def body():
        n, arcs = golden.example_scc_arcs()
        M = [[0] * n for _ in range(n)]
        for a, b in arcs:
            M[b][a] = 1
        got = strip_x_power(matrix_minpoly(M))
        return got == golden.factor("P", 7), f"stripped minimal polynomial {got}"

    return _run("13-node example system gives x^6-x^3-x-1", body)


def check_example_scc_in_sigma3(ctx: Context) -> CheckResult:
    def body():
        n, arcs = golden.example_scc_arcs()
        for cls in ctx.classes.classes:
            if cls.size == n and find_isomorphism(ctx.decomp.local_arcs(cls.representative), arcs, n) is not None:
                return True, f"isomorphic to class {cls.label}"
        return False, "no class isomorphic to the example system"

    return _run("13-node example system occurs in sigma_3", body)


def check_product_identity() -> CheckResult:
    def body():
        lhs = Poly([-1, 1]) * Poly([1, 1, 1, 1, 1]) * golden.factor("P", 7)
        rhs = Poly([1, 1, 0, 1, 0, -1, -2, 0, -1, 0, 0, 1])
        return lhs == rhs, str(lhs)

    return _run("(x-1)(x^4+x^3+x^2+x+1)(x^6-x^3-x-1) identity", body)


def check_example_condensation(ctx: Context) -> CheckResult:
    def body():
        fx = golden.example_condensation()
        k = ctx.k
        label = {"L": lambda j: j, "R": lambda j: k + 1 + j}
        pairing = tuple(sorted(tuple(sorted((label[a](i), label[b](j)))) for a, i, b, j in fx["vertex_pairing"]))
        found = locate_condensation(ctx.pipeline, ctx.decomp, pairing, fx["sizes"], fx["arcs"])
        if not found:
            return False, "no vertex with a matching condensation"
        v, comps = found[0]
        values = ctx.pipeline.start().values
        zeros = all(not any(values[w] for w in ctx.decomp.components[comps[x]]) for x in fx["zero_initial"])
        res = algorithm1(ctx.pipeline.sigma, ctx.decomp, ctx.classes, values, targets=[v])
        want = golden.factor("P", 7) ** 2
        return zeros and res.poly == want, f"vertex {v}, {len(found)} matches, result degree {res.poly.degree}"

    return _run("SCC composition on the example predecessor set gives (x^6-x^3-x-1)^2", body)


def check_theorem(ctx: Context, n_hi: int) -> CheckResult:
    name = "P" if ctx.k == 3 else "Q"

    def body():
        p = golden.load_poly(name)
        h = ctx.h_series(n_hi)
        lo = p.degree + 1
        seq = [h[n] for n in range(1, n_hi + 1)]
        return check_recurrence(p, seq, lo, offset=1), f"degree {p.degree}, n={lo}..{n_hi}"

    return _run(f"{name} annihilates h_{ctx.k}", body)


def check_bm_h3(ctx: Context) -> CheckResult:
    def body():
        h = ctx.h_series(150)
        p = berlekamp_massey([h[n] for n in range(1, 151)])
        want = golden.load_poly("P")
        return p == want and p.degree == 38, f"degree {p.degree}"

    return _run("Berlekamp-Massey on h_3 returns P", body)


def check_minimal_k4(ctx: Context) -> CheckResult:
    def body():
        m = ctx.minimal
        want = golden.product_poly("minimal4")
        return m.poly == want and m.degree == 171, f"degree {m.degree}, certified at n={m.check_index}"

    return _run("minimal polynomial on (sigma_4, I_4)", body)


def check_q_reduction(ctx: Context) -> CheckResult:
    def body():
        Q = golden.load_poly("Q")
        h = ctx.h_series(400)
        rc = reduction_chain(ctx.pipeline, Q, golden.factor("Q", 1) * golden.factor("Q", 6), h, Q.degree + 1)
        detail = (
            f"deg Q={Q.degree}; padded relation from n={rc.check_index}; period start {rc.period_start}; "
            f"direct {rc.direct_from}..{rc.period_start - 1}"
        )
        return rc.ok and Q.degree == 162 and Q == golden.product_poly("Q"), detail

    return _run("Q holds from 163 via the period-5 reduction", body)


def check_reachability(ctx: Context) -> CheckResult:
    def body():
        Q = golden.load_poly("Q")
        h = ctx.h_series(200)
        rc = reduction_chain(ctx.pipeline, Q, golden.factor("Q", 1) * golden.factor("Q", 6), h, Q.degree + 1)
        note = "" if len(rc.failing) == 25 else " (count differs from 25)"
        return not rc.failing_reach_h, f"{len(rc.failing)} failing signatures at n={rc.check_index}{note}"

    return _run("failing signatures cannot reach H_4", body)


def check_parity(ctx: Context, n_hi: int = 100) -> list[CheckResult]:
    t = time.perf_counter()
    try:
        data = golden.parity_data()
        series = parity_split_counts(3, n_hi, ctx.pipeline)
        even = {n: v for n, v in enumerate(data["h_even"]["values"], 1) if n < 9}
        odd = {n: v for n, v in enumerate(data["h_odd"]["values"], 1) if n < 9}
        for i, n in enumerate(range(9, n_hi + 1)):
            even[n], odd[n] = series.even[i], series.odd[i]
        h = ctx.h_series(n_hi)
        results = parity_checks(even, odd, h, data, n_hi)
    except Exception as exc:
        return [CheckResult("parity split", False, f"{type(exc).__name__}: {exc}")]
    dt = time.perf_counter() - t
    return [CheckResult(f"parity: {name}", ok, seconds=dt) for name, ok in results]


# --- suites -----------------------------------------------------------------

def verify(k: int, seed: int = 0, workers: int = 1) -> tuple[list[CheckResult], bool]:
    """All golden checks relevant to one k.  Returns (results, partial)."""
    if k == 5:
        return [check_catalog(5)], True
    if k not in (3, 4):
        return [check_catalog(k)], True
    ctx = Context(k, seed, workers)
    out = [check_catalog(k)]
    if k == 3:
        out += [
            check_oracle(3, 7, 14),
            check_pipeline(ctx, 38),
            check_one_step(ctx),
            check_scc_classes(ctx),
            check_scc_table(ctx),
            check_example_scc(),
            check_example_scc_in_sigma3(ctx),
            check_product_identity(),
            check_example_condensation(ctx),
            check_theorem(ctx, 150),
            check_bm_h3(ctx),
        ]
        out += check_parity(ctx)
    else:
        out += [
            check_oracle(4, 9, 14),
            check_pipeline(ctx, 162),
            check_one_step(ctx),
            check_scc_classes(ctx),
            check_scc_table(ctx),
            check_theorem(ctx, 400),
            check_q_reduction(ctx),
            check_reachability(ctx),
            check_minimal_k4(ctx),
        ]
    return out, False
