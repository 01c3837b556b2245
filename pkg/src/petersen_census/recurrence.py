"""SCC structure of the signature digraph, per-component universal
polynomials, the SCC-ordered composition of per-component polynomials and minimal
characteristic polynomials of the counting sequences.

Conventions: a polynomial p of degree d "annihilates u at n" when
sum_i p_i u(n - d + i) = 0.  A transient of length E is carried as a factor
x^E.  Residual vectors follow r_{n+1} = M r_n, so one vanishing residual at
n1 >= n0 + d proves the relation for every n >= n1.
"""
from __future__ import annotations

import json
import random
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .algebra import (
    Poly,
    berlekamp_massey,
    matrix_minpoly,
    poly_lcm_all,
    strip_x_power,
    x_power,
)
from .digraphs import find_isomorphism, reachable, topological_components
from .transfer import Pipeline, SigmaGraph, hamiltonian_indices


# --- SCC decomposition ------------------------------------------------------

@dataclass
class SccDecomposition:
    num_nodes: int
    components: list[list[int]]  # sources first
    comp_of: list[int]
    condensation: list[tuple[int, int]]
    arcs: list[tuple[int, int]] = field(repr=False)
    self_loops: frozenset[int] = field(repr=False, default=frozenset())

    def size(self, c: int) -> int:
        return len(self.components[c])

    def is_trivial(self, c: int) -> bool:
        return len(self.components[c]) == 1

    def has_self_loop(self, c: int) -> bool:
        return self.is_trivial(c) and self.components[c][0] in self.self_loops

    def local_arcs(self, c: int) -> list[tuple[int, int]]:
        members = self.components[c]
        pos = {v: i for i, v in enumerate(members)}
        return sorted((pos[a], pos[b]) for a, b in self._arcs_by_comp()[c])

    def matrix(self, c: int) -> list[list[int]]:
        """Transition matrix M[dst][src] restricted to the component."""
        n = self.size(c)
        M = [[0] * n for _ in range(n)]
        for a, b in self.local_arcs(c):
            M[b][a] = 1
        return M

    def _arcs_by_comp(self) -> dict[int, list[tuple[int, int]]]:
        cache = self.__dict__.get("_by_comp")
        if cache is None:
            cache = defaultdict(list)
            for a, b in self.arcs:
                if self.comp_of[a] == self.comp_of[b]:
                    cache[self.comp_of[a]].append((a, b))
            self.__dict__["_by_comp"] = cache
        return cache

    def sinks(self, within: set[int] | None = None) -> list[int]:
        """Components with no arc to another component inside ``within``."""
        comps = set(range(len(self.components))) if within is None else within
        has_out = {a for a, b in self.condensation if a in comps and b in comps}
        return sorted(c for c in comps if c not in has_out)


def scc_decompose(sigma: SigmaGraph) -> SccDecomposition:
    components, comp_of, cond = topological_components(sigma.num_nodes, sigma.succs())
    loops = frozenset(a for a, b in sigma.arcs if a == b)
    return SccDecomposition(sigma.num_nodes, components, comp_of, cond, list(sigma.arcs), loops)


def scc_minpoly(decomp: SccDecomposition, c: int) -> Poly:
    """Full minimal polynomial of the component's transition matrix."""
    return matrix_minpoly(decomp.matrix(c))


def scc_universal_minpoly(decomp: SccDecomposition, c: int) -> Poly:
    return strip_x_power(scc_minpoly(decomp, c))


# --- isomorphism classes ----------------------------------------------------

@dataclass
class SccClass:
    label: str
    size: int
    self_loop: bool
    members: list[int]
    minpoly: Poly
    universal: Poly
    degree_key: tuple = field(repr=False, default=())

    @property
    def representative(self) -> int:
        return self.members[0]


@dataclass
class SccClassReport:
    classes: list[SccClass]
    class_of: dict[int, int]

    def __len__(self) -> int:
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [c.size for c in self.classes]

    def universal_of(self, comp: int) -> Poly:
        return self.classes[self.class_of[comp]].universal

    def minpoly_of(self, comp: int) -> Poly:
        return self.classes[self.class_of[comp]].minpoly

    def to_json(self) -> list[dict]:
        return [
            {
                "label": c.label,
                "size": c.size,
                "selfLoop": c.self_loop,
                "count": len(c.members),
                "representative": c.representative,
                "universalPoly": c.universal.int_coeffs(),
            }
            for c in self.classes
        ]


def _degree_key(decomp: SccDecomposition, c: int) -> tuple:
    arcs = decomp.local_arcs(c)
    n = decomp.size(c)
    ins, outs = [0] * n, [0] * n
    for a, b in arcs:
        outs[a] += 1
        ins[b] += 1
    return (n, tuple(sorted(ins)), tuple(sorted(outs)), sum(a == b for a, b in arcs))


def classify_sccs(decomp: SccDecomposition, workers: int = 1) -> SccClassReport:
    """Group components up to digraph isomorphism.  Candidates are bucketed by
    size and degree sequences, then confirmed by an exact isomorphism test.
    Minimal polynomials of the class representatives are independent and run
    in a process pool when ``workers > 1``."""
    classes: list[SccClass] = []
    by_key: dict[tuple, list[int]] = defaultdict(list)
    class_of: dict[int, int] = {}
    for c in range(len(decomp.components)):
        key = _degree_key(decomp, c)
        arcs = decomp.local_arcs(c)
        for ci in by_key[key]:
            rep = classes[ci].representative
            if find_isomorphism(decomp.local_arcs(rep), arcs, key[0]) is not None:
                classes[ci].members.append(c)
                class_of[c] = ci
                break
        else:
            cls = SccClass("", key[0], decomp.has_self_loop(c), [c], Poly.const(1), Poly.const(1), key)
            by_key[key].append(len(classes))
            class_of[c] = len(classes)
            classes.append(cls)
    mats = [decomp.matrix(cls.representative) for cls in classes]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            polys = list(pool.map(matrix_minpoly, mats))
    else:
        polys = [matrix_minpoly(m) for m in mats]
    for cls, full in zip(classes, polys):
        cls.minpoly, cls.universal = full, strip_x_power(full)
    order = sorted(range(len(classes)), key=lambda i: (classes[i].size, classes[i].self_loop, classes[i].representative))
    renum = {old: new for new, old in enumerate(order)}
    classes = [classes[i] for i in order]
    class_of = {c: renum[i] for c, i in class_of.items()}
    size_counts = defaultdict(int)
    for cls in classes:
        size_counts[cls.size] += 1
    seen = defaultdict(int)
    for cls in classes:
        if size_counts[cls.size] > 1:
            cls.label = f"{cls.size}{chr(ord('A') + seen[cls.size])}"
            seen[cls.size] += 1
        else:
            cls.label = str(cls.size)
    return SccClassReport(classes, class_of)


# --- SCC-ordered composition ----------------------------------------------

class _LocalSystem:
    """The sub-digraph induced by a predecessor-closed node set, with a dense
    integer state that can be stepped and recombined in place."""

    def __init__(self, sigma: SigmaGraph, nodes: Sequence[int], values: Sequence[int]):
        self.nodes = list(nodes)
        pos = {v: i for i, v in enumerate(self.nodes)}
        self.preds = [[pos[p] for p in sigma.preds[v]] for v in self.nodes]
        self.values = [int(values[v]) for v in self.nodes]
        self.pos = pos

    def step(self, vals: list[int], alive: list[bool]) -> list[int]:
        return [sum(vals[p] for p in ps) if alive[i] else 0 for i, ps in enumerate(self.preds)]

    def apply_poly(self, p: Poly, alive: list[bool]) -> None:
        """Replace the stored sequences by sum_i p_i u_{n+i}."""
        coeffs = p.int_coeffs()
        cur = self.values
        acc = [0] * len(cur)
        for i, a in enumerate(coeffs):
            if a:
                acc = [x + a * y for x, y in zip(acc, cur)]
            if i + 1 < len(coeffs):
                cur = self.step(cur, alive)
        self.values = acc


def _steps_until_zero(sub: _LocalSystem, idx: list[int], limit: int) -> int | None:
    """Steps after which the component is identically zero given zero input,
    or None when that never happens (checked up to the nilpotency bound)."""
    member = set(idx)
    local_preds = {i: [p for p in sub.preds[i] if p in member] for i in idx}
    vals = {i: sub.values[i] for i in idx}
    for e in range(limit + 1):
        if not any(vals.values()):
            return e
        vals = {i: sum(vals[p] for p in local_preds[i]) for i in idx}
    return None


@dataclass
class Algorithm1Trace:
    vertex: int
    poly: Poly
    deleted_zero: list[int]
    used: list[int]


@dataclass
class Algorithm1Result:
    poly: Poly
    traces: list[Algorithm1Trace]


def algorithm1(
    sigma: SigmaGraph,
    decomp: SccDecomposition,
    report: SccClassReport,
    values: Sequence[int],
    targets: Iterable[int] | None = None,
) -> Algorithm1Result:
    """Characteristic polynomial on (D, I) where D is the set of nodes that can
    reach ``targets`` (all nodes by default) and I is ``values``."""
    if targets is None:
        domain = set(range(sigma.num_nodes))
    else:
        domain = reachable(list(targets), sigma.preds)
    dcomps = {decomp.comp_of[v] for v in domain}
    traces = []
    for sink in decomp.sinks(dcomps):
        v = decomp.components[sink][0]
        traces.append(_run_flowchart(sigma, decomp, report, values, v))
    return Algorithm1Result(poly_lcm_all(t.poly for t in traces), traces)


def _run_flowchart(sigma, decomp, report, values, v: int) -> Algorithm1Trace:
    rho = sorted(reachable([v], sigma.preds))
    sub = _LocalSystem(sigma, rho, values)
    comps = sorted({decomp.comp_of[w] for w in rho})  # topological: each is a source once earlier ones go
    alive = [True] * len(rho)
    P = Poly.const(1)
    deleted_zero, used = [], []
    for c in comps:
        idx = [sub.pos[w] for w in decomp.components[c]]
        applied = False
        while True:
            e = _steps_until_zero(sub, idx, len(idx))
            if e is not None:
                for _ in range(e):
                    sub.values = sub.step(sub.values, alive)
                for i in idx:
                    alive[i] = False
                if not applied:
                    deleted_zero.append(c)
                break
            if applied:
                raise AssertionError(f"component {c} survived its own universal polynomial")
            p = report.universal_of(c)
            P = P * p
            used.append(c)
            sub.apply_poly(p, alive)
            applied = True
    return Algorithm1Trace(v, P, deleted_zero, used)


# --- streaming residuals ----------------------------------------------------

def residual_vector(pipeline: Pipeline, p: Poly, n1: int) -> np.ndarray:
    """r_{n1} = sum_i p_i s_{n1-d+i} over all signatures (needs n1 - d >= n0)."""
    d = p.degree
    start = n1 - d
    if start < pipeline.initial.n0:
        raise ValueError(f"check index {n1} is below n0 + deg = {pipeline.initial.n0 + d}")
    coeffs = p.int_coeffs()
    acc = np.empty(pipeline.sigma.num_nodes, dtype=object)
    acc[:] = 0
    for s in pipeline.states(n1):
        i = s.n - start
        if i >= 0 and coeffs[i]:
            acc += coeffs[i] * s.values
    return acc


def annihilates_all(pipeline: Pipeline, p: Poly, transient: int = 0) -> tuple[bool, int]:
    """Certificate: x^transient * p annihilates every signature
    sequence from n1 = n0 + transient + deg p on.  Returns (ok, n1)."""
    q = Poly.x(transient) * p
    n1 = pipeline.initial.n0 + q.degree
    r = residual_vector(pipeline, q, n1)
    return (not any(r), n1)


@dataclass
class MinimalPolyResult:
    poly: Poly  # x-power stripped, monic
    transient: int
    check_index: int
    window: int
    draw_degrees: list[int]

    @property
    def degree(self) -> int:
        return self.poly.degree


def minimal_charpoly_on_initial(
    pipeline: Pipeline,
    seed: int = 0,
    draws: int = 3,
    window: int = 96,
    max_window: int = 2048,
) -> MinimalPolyResult:
    """Minimal characteristic polynomial on (sigma_k, I_k).

    Berlekamp-Massey on random integer combinations of all signature
    sequences gives divisors of the answer; their LCM is then certified by one
    residual check per signature.  The window is kept at least twice the
    certified degree, so each BM output is exact and the LCM is minimal.
    """
    rng = random.Random(seed)
    n0 = pipeline.initial.n0
    N = pipeline.sigma.num_nodes
    weights = [np.array([rng.randint(1, 1 << 16) for _ in range(N)], dtype=object) for _ in range(draws)]
    while window <= max_window:
        seqs = [[] for _ in range(draws)]
        for s in pipeline.states(n0 + window - 1):
            for j, w in enumerate(weights):
                seqs[j].append(int(np.dot(w, s.values)))
        found = [berlekamp_massey(q) for q in seqs]
        span = max(f.degree for f in found)
        if 2 * span + 2 <= window:
            E = max(x_power(f) for f in found)
            p = poly_lcm_all(strip_x_power(f) for f in found)
            if 2 * (p.degree + E) + 2 <= window:
                ok, n1 = annihilates_all(pipeline, p, E)
                if ok:
                    return MinimalPolyResult(p, E, n1, window, [f.degree for f in found])
        window *= 2
    raise RuntimeError("could not certify a characteristic polynomial within the window budget")


# --- divisor minimization ---------------------------------------------------

def coprime_base(polys: Iterable[Poly]) -> list[Poly]:
    """Pairwise coprime monic polynomials whose products give every input."""
    from .algebra import poly_gcd

    base: list[Poly] = []
    for p in polys:
        todo = [p.monic()]
        while todo:
            q = todo.pop()
            if q.degree < 1:
                continue
            for i, b in enumerate(base):
                g = poly_gcd(q, b)
                if g.degree >= 1:
                    base.pop(i)
                    for piece in (g, b // g, q // g):
                        if piece.degree >= 1:
                            todo.append(piece.monic())
                    break
            else:
                base.append(q)
    return sorted(base, key=lambda b: (b.degree, b.int_coeffs()))


def minimize_divisors(
    pipeline: Pipeline,
    poly: Poly,
    base: Sequence[Poly],
    transient: int,
) -> Poly:
    """Drop base factors from ``poly`` while the quotient still annihilates
    every signature sequence (greedy; each accepted drop is certified)."""
    cur = poly.monic()
    changed = True
    while changed:
        changed = False
        for b in base:
            q, r = divmod(cur, b)
            if not r.is_zero():
                continue
            if annihilates_all(pipeline, q, transient)[0]:
                cur = q.monic()
                changed = True
    return cur


# --- h_k annihilators -------------------------------------------------------

def first_valid_index(p: Poly, seq: Sequence[int], first_n: int) -> int:
    """Smallest n such that p annihilates seq at every index from n to the
    last term (last + 1 when it fails at the last term)."""
    d = p.degree
    coeffs = p.int_coeffs()
    n = first_n + len(seq)
    while n - 1 - d >= first_n:
        m = n - 1
        if sum(coeffs[i] * seq[m - d + i - first_n] for i in range(d + 1)) != 0:
            break
        n = m
    return n


@dataclass
class HAnnihilator:
    poly: Poly
    start_index: int
    first_n: int
    last_n: int


def h_annihilator(series: Sequence[int], first_n: int = 1) -> HAnnihilator:
    p = berlekamp_massey(series)
    if 2 * p.degree + 2 > len(series):
        raise ValueError("series too short for a trustworthy annihilator")
    p = p.monic()
    return HAnnihilator(p, first_valid_index(p, [int(x) for x in series], first_n), first_n, first_n + len(series) - 1)


@dataclass
class ReductionChain:
    """The k=4 argument: a padded polynomial holds for h_4 from a check index,
    a period-5 residual then collapses to the bare polynomial."""

    padded_degree: int
    check_index: int
    failing: list[int]
    failing_reach_h: bool
    period_start: int
    period_terms_zero: bool
    direct_from: int
    direct_ok: bool

    @property
    def ok(self) -> bool:
        return not self.failing_reach_h and self.period_terms_zero and self.direct_ok


def reduction_chain(
    pipeline: Pipeline,
    Q: Poly,
    period_factor: Poly,
    h: dict[int, int],
    direct_from: int,
) -> ReductionChain:
    """period_factor must be x^m - 1."""
    m = period_factor.degree
    if period_factor != Poly.x(m) - Poly.const(1):
        raise ValueError("period factor must be x^m - 1")
    padded = Q * period_factor
    n1 = pipeline.initial.n0 + padded.degree
    r = residual_vector(pipeline, padded, n1)
    failing = [i for i, x in enumerate(r) if x]
    ham = set(hamiltonian_indices(pipeline.catalog).tolist())
    can_reach_h = reachable(list(ham), pipeline.sigma.preds)
    reach = any(i in can_reach_h for i in failing)
    coeffs = Q.int_coeffs()
    d = Q.degree

    def res(n: int) -> int:
        return sum(coeffs[i] * h[n - d + i] for i in range(d + 1))

    # padded relation from n1 means res(n) = res(n - m) for n >= n1
    period_start = n1 - m
    zero = all(res(n) == 0 for n in range(period_start, n1))
    direct = all(res(n) == 0 for n in range(direct_from, period_start))
    return ReductionChain(padded.degree, n1, failing, reach, period_start, zero, direct_from, direct)


# --- parity split (k = 3) ---------------------------------------------------

def _periodic(spec: dict, n: int) -> int:
    return spec["values"].get(str(n % spec["modulus"]), 0)


def _lin(coeffs: dict, seq: dict[int, int], n: int) -> int:
    return sum(int(c) * seq[n - int(lag)] for lag, c in coeffs.items())


def parity_checks(even: dict[int, int], odd: dict[int, int], h: dict[int, int], data: dict, n_max: int) -> list[tuple[str, bool]]:
    """All parity-split identities; ``even``/``odd``/``h`` must cover 1..n_max."""
    from .golden import factor

    out: list[tuple[str, bool]] = []
    for key, seq in (("h_even", even), ("h_odd", odd)):
        ref = data[key]
        out.append((f"{key} initial values", all(seq[ref["first_n"] + i] == v for i, v in enumerate(ref["values"]))))
    for key, seq, uspec in (("even_recurrence", even, data["u_even"]), ("odd_recurrence", odd, data["u_odd"])):
        rec = data[key]
        lo = rec["from_n"]
        ok = all(_lin(rec["coeffs"], seq, n) == _periodic(rec["rhs"], n) for n in range(lo, n_max + 1))
        out.append((f"{key} holds for {lo}<=n<={n_max}", ok))
        u = {n: _periodic(uspec, n) for n in range(-20, n_max + 1)}
        ok_u = all(_lin(rec["coeffs"], u, n) == _periodic(rec["rhs"], n) for n in range(lo, n_max + 1))
        out.append((f"periodic particular solution of {key}", ok_u))
    alpha = {n: even[n] - _periodic(data["u_even"], n) for n in range(1, n_max + 1)}
    beta = {n: odd[n] - _periodic(data["u_odd"], n) for n in range(1, n_max + 1)}
    gamma = {n: _periodic(data["u_even"], n) + _periodic(data["u_odd"], n) for n in range(1, n_max + 1)}
    for key, seq in (("h_alpha", alpha), ("h_beta", beta)):
        ref = data[key]
        out.append((f"{key} initial values", all(seq[ref["first_n"] + i] == v for i, v in enumerate(ref["values"]))))
    p7sq = factor("P", 7) ** 2
    p8 = factor("P", 8)
    for name, seq, p in (("h_alpha", alpha, p7sq), ("h_beta", beta, p8)):
        c = p.int_coeffs()
        d = p.degree
        ok = all(sum(c[i] * seq[n - d + i] for i in range(d + 1)) == 0 for n in range(d + 1, n_max + 1))
        out.append((f"{name} annihilated from n={d + 1}", ok))
    block = data["gamma_block"]
    out.append(("h_gamma period-12 block", all(gamma[n] == block[(n - 1) % 12] for n in range(1, n_max + 1))))
    out.append(("h = alpha + beta + gamma", all(h[n] == alpha[n] + beta[n] + gamma[n] for n in range(1, n_max + 1))))
    return out


# --- reports ----------------------------------------------------------------

@dataclass
class CharPolyReport:
    k: int
    classes: SccClassReport
    algorithm1_poly: Poly
    minimized_poly: Poly
    minimal: MinimalPolyResult
    h_annihilator: HAnnihilator
    checks: list[tuple[str, bool]]

    def to_json(self) -> str:
        return json.dumps(
            {
                "schemaVersion": 1,
                "k": self.k,
                "sccClasses": self.classes.to_json(),
                "perClassPoly": {c.label: c.universal.int_coeffs() for c in self.classes.classes},
                "algorithm1Poly": self.algorithm1_poly.int_coeffs(),
                "minimizedPoly": self.minimized_poly.int_coeffs(),
                "minimalPoly": self.minimal.poly.int_coeffs(),
                "minimalTransient": self.minimal.transient,
                "hAnnihilator": self.h_annihilator.poly.int_coeffs(),
                "startIndex": self.h_annihilator.start_index,
                "checks": [{"name": n, "pass": ok} for n, ok in self.checks],
            },
            indent=1,
        )


def full_h_series(pipeline: Pipeline, n_max: int, prefix: dict[int, int]) -> list[int]:
    """h_k(1..n_max): reference values below n0, pipeline values from n0."""
    ham = hamiltonian_indices(pipeline.catalog)
    n0 = pipeline.initial.n0
    out = [prefix[n] for n in range(1, n0)]
    out += [int(s.values[ham].sum()) for s in pipeline.states(n_max)]
    return out



def find_transient(pipeline: Pipeline, p: Poly, limit: int = 64) -> int:
    """Least E with x^E p annihilating every signature sequence."""
    for e in range(limit + 1):
        if annihilates_all(pipeline, p, e)[0]:
            return e
    raise ValueError("polynomial does not annihilate the system within the transient limit")


def locate_condensation(
    pipeline: Pipeline,
    decomp: SccDecomposition,
    pairing: tuple[tuple[int, int], ...],
    sizes: dict[int, int],
    arcs: Sequence[tuple[int, int]],
) -> list[tuple[int, list[int]]]:
    """Signatures v with the given pairing whose rho(v) condenses to the given
    DAG (component sizes respected).  Returns (v, fixture -> component) pairs."""
    out = []
    n = len(sizes)
    for i, sig in enumerate(pipeline.catalog.signatures):
        if sig.pairing != pairing:
            continue
        rho = reachable([i], pipeline.sigma.preds)
        comps = sorted({decomp.comp_of[w] for w in rho})
        if len(comps) != n:
            continue
        pos = {c: j for j, c in enumerate(comps)}
        local = [(pos[a], pos[b]) for a, b in decomp.condensation if a in pos and b in pos]
        f = find_isomorphism(arcs, local, n)
        if f is not None and all(decomp.size(comps[f[x]]) == sizes[x] for x in range(n)):
            out.append((i, [comps[f[x]] for x in range(n)]))
    return out


def mine(
    pipeline: Pipeline,
    h_prefix: dict[int, int],
    seed: int = 0,
    h_terms: int | None = None,
    workers: int = 1,
) -> CharPolyReport:
    """Full analysis for one k: classes, SCC composition, divisor minimization,
    certified minimal polynomial and the annihilator of h_k."""
    decomp = scc_decompose(pipeline.sigma)
    report = classify_sccs(decomp, workers)
    values = pipeline.start().values
    alg = algorithm1(pipeline.sigma, decomp, report, values)
    E = find_transient(pipeline, alg.poly)
    base = coprime_base(c.universal for c in report.classes)
    minimized = minimize_divisors(pipeline, alg.poly, base, E)
    minimal = minimal_charpoly_on_initial(pipeline, seed=seed)
    n_max = h_terms or max(150, 2 * minimal.degree + 60)
    series = full_h_series(pipeline, n_max, h_prefix)
    ha = h_annihilator(series)
    checks = [
        ("minimal divides the SCC composition output", (alg.poly % minimal.poly).is_zero()),
        ("divisor minimization reaches the certified minimum", minimized == minimal.poly),
        ("h annihilator divides the minimal polynomial", (minimal.poly % ha.poly).is_zero()),
    ]
    return CharPolyReport(pipeline.k, report, alg.poly, minimized, minimal, ha, checks)
