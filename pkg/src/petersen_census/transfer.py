"""The signature digraph and the linear iteration that counts Hamiltonian
cycles column by column.

Arcs are produced by extending a predecessor signature on G'(n, k) with one
new column (v_n, w_n).  The new vertices must reach degree 2 using the three
new edges v_n R_0, v_n w_n, w_n R_k together with the two old stubs R_0 (now
v_{n-1} v_n) and R_1 (now w_{n-k} w_n), which leaves five cases:

    spoke absent                  old R_0 -> new R_0, old R_1 -> new R_k
    spoke, v_n R_0, w_n R_k       new pair (R_0, R_k)
    spoke, v_n R_0                old R_1 -> new R_0
    spoke, w_n R_k                old R_0 -> new R_k
    spoke only                    old R_0 and old R_1 are joined

In every case old R_j becomes new R_{j-1} for j >= 2.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .signatures import (
    InitialState,
    Pairing,
    Signature,
    SignatureCatalog,
    build_catalog,
    initial_state,
    is_hamiltonian_signature,
)

# (spoke, v_n R_0, w_n R_k)
CASES = ((0, 1, 1), (1, 1, 1), (1, 1, 0), (1, 0, 1), (1, 0, 0))


@dataclass
class SigmaGraph:
    k: int
    num_nodes: int
    arcs: list[tuple[int, int]]
    preds: list[list[int]] = field(repr=False)
    _slots: list[tuple[np.ndarray, np.ndarray]] | None = field(default=None, repr=False)

    @classmethod
    def from_arcs(cls, k: int, num_nodes: int, arcs) -> "SigmaGraph":
        arcs = sorted(set(arcs))
        preds: list[list[int]] = [[] for _ in range(num_nodes)]
        for a, b in arcs:
            preds[b].append(a)
        return cls(k, num_nodes, arcs, preds)

    def succs(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_nodes)]
        for a, b in self.arcs:
            out[a].append(b)
        return out

    def slots(self) -> list[tuple[np.ndarray, np.ndarray]]:
        """Arcs grouped so that each destination occurs at most once per group."""
        if self._slots is None:
            groups: list[tuple[list[int], list[int]]] = []
            for dst, ps in enumerate(self.preds):
                for j, src in enumerate(ps):
                    if j == len(groups):
                        groups.append(([], []))
                    groups[j][0].append(dst)
                    groups[j][1].append(src)
            self._slots = [(np.array(d, dtype=np.intp), np.array(s, dtype=np.intp)) for d, s in groups]
        return self._slots


@dataclass
class StateVector:
    n: int
    values: np.ndarray  # dtype=object, Python ints

    @classmethod
    def zeros(cls, n: int, size: int) -> "StateVector":
        v = np.empty(size, dtype=object)
        v[:] = 0
        return cls(n, v)


def shifted_right_mask(k: int, mask: int, spoke: int, r0: int, rk: int) -> int:
    """Right-side bitmask after appending a column (bits as in signatures)."""
    bit = lambda b: mask >> b & 1  # noqa: E731
    out = r0 | rk << 1 | bit(0) << (k + 1) | spoke << (2 * k + 1) | bit(k) << (3 * k + 1)
    for i in range(1, k):
        out |= bit(i) << (1 + i)
        out |= bit(k + i) << (k + 1 + i)
        out |= bit(2 * k + i) << (2 * k + 1 + i)
        out |= bit(3 * k + i) << (3 * k + 1 + i)
    return out


def extend_pairing(k: int, pairing: Pairing, spoke: int, r0: int, rk: int) -> Pairing | None:
    """New pairing after appending a column, or None when a premature cycle
    would close.  Loose-end presence of old R_0/R_1 is assumed consistent."""
    R = lambda j: k + 1 + j  # noqa: E731
    mate = {}
    for a, b in pairing:
        mate[a], mate[b] = b, a

    def rename(x: int) -> int:
        return x if x <= k else R(x - k - 2)  # R_j -> R_{j-1}; R_0/R_1 handled by caller

    special: dict[int, int] = {}
    extra: list[tuple[int, int]] = []
    if not spoke:
        special = {R(0): R(0), R(1): R(k)}
    elif r0 and rk:
        if not pairing:
            return None  # the old graph is already a cycle
        extra.append((R(0), R(k)))
    elif r0:
        special = {R(1): R(0)}
    elif rk:
        special = {R(0): R(k)}
    else:
        if mate.get(R(0)) == R(1):
            if len(pairing) == 1:
                return ()  # the path closes into the whole cycle
            return None
        x, y = mate[R(0)], mate[R(1)]
        del mate[R(0)], mate[R(1)]
        mate[x], mate[y] = y, x
    out = set(extra)
    for a, b in mate.items():
        a2 = special.get(a, rename(a) if a not in (R(0), R(1)) else None)
        b2 = special.get(b, rename(b) if b not in (R(0), R(1)) else None)
        assert a2 is not None and b2 is not None
        out.add((min(a2, b2), max(a2, b2)))
    return tuple(sorted(out))


def successors(catalog: SignatureCatalog, sig: Signature) -> list[Signature]:
    k = catalog.k
    side = catalog.sides[sig.right_id]
    has_r0 = side.edge_mask & 1
    has_r1 = side.edge_mask >> k & 1
    out = []
    for spoke, r0, rk in CASES:
        if has_r0 + spoke + r0 != 2 or has_r1 + spoke + rk != 2:
            continue
        new_mask = shifted_right_mask(k, side.edge_mask, spoke, r0, rk)
        new_id = catalog.side_by_mask.get(new_mask)
        if new_id is None:
            continue
        lam = extend_pairing(k, sig.pairing, spoke, r0, rk)
        if lam is None:
            continue
        need = set(catalog.sides[sig.left_id].left_forced()) | set(catalog.sides[new_id].right_forced())
        if not need.issubset(lam):
            continue
        nxt = Signature(sig.left_id, new_id, lam)
        if nxt in catalog.index:
            out.append(nxt)
    return out


def build_sigma(catalog: SignatureCatalog) -> SigmaGraph:
    arcs = []
    for i, sig in enumerate(catalog.signatures):
        for nxt in successors(catalog, sig):
            arcs.append((i, catalog.index[nxt]))
    return SigmaGraph.from_arcs(catalog.k, len(catalog), arcs)


def step(state: StateVector, sigma: SigmaGraph) -> StateVector:
    out = StateVector.zeros(state.n + 1, sigma.num_nodes)
    for dst, src in sigma.slots():
        out.values[dst] += state.values[src]
    return out


def state_from_initial(init: InitialState, catalog: SignatureCatalog) -> StateVector:
    s = StateVector.zeros(init.n0, len(catalog))
    for sig, c in init.values.items():
        s.values[catalog.index[sig]] = c
    return s


def state_to_tally(state: StateVector, catalog: SignatureCatalog) -> dict[Signature, int]:
    return {catalog.signatures[i]: int(c) for i, c in enumerate(state.values) if c}


def hamiltonian_indices(catalog: SignatureCatalog) -> np.ndarray:
    return np.array(
        [i for i, s in enumerate(catalog.signatures) if is_hamiltonian_signature(s.pairing, catalog.k)],
        dtype=np.intp,
    )


def parity_indices(catalog: SignatureCatalog) -> tuple[np.ndarray, np.ndarray]:
    """Hamiltonian signatures split by loose-end parity (even, odd)."""
    ham = hamiltonian_indices(catalog)
    odd = np.array([len(catalog.sides[catalog.signatures[i].left_id].loose_ends) % 2 for i in ham], dtype=bool)
    return ham[~odd], ham[odd]


@dataclass
class Pipeline:
    """Catalog, digraph and initial vector for one k, built once."""

    k: int
    catalog: SignatureCatalog
    sigma: SigmaGraph
    initial: InitialState

    @classmethod
    def build(cls, k: int) -> "Pipeline":
        if k not in (1, 2, 3, 4):
            raise ValueError("the transfer pipeline supports k in {1, 2, 3, 4}")
        catalog = build_catalog(k)
        return cls(k, catalog, build_sigma(catalog), initial_state(k, catalog))

    def start(self) -> StateVector:
        return state_from_initial(self.initial, self.catalog)

    def states(self, n_max: int):
        s = self.start()
        while s.n <= n_max:
            yield s
            s = step(s, self.sigma)


@dataclass
class CountSeries:
    k: int
    first_n: int
    values: list[int]
    even: list[int] | None = None
    odd: list[int] | None = None

    def at(self, n: int) -> int:
        return self.values[n - self.first_n]

    def as_dict(self) -> dict[int, int]:
        return {self.first_n + i: v for i, v in enumerate(self.values)}

    def rows(self) -> list[tuple[int, ...]]:
        out = []
        for i, h in enumerate(self.values):
            row = (self.first_n + i, h)
            if self.even is not None:
                row += (self.even[i], self.odd[i])
            out.append(row)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "h"] + (["h_even", "h_odd"] if self.even is not None else []))
        w.writerows(self.rows())
        return buf.getvalue()

    def to_json(self) -> str:
        cols = ["n", "h"] + (["h_even", "h_odd"] if self.even is not None else [])
        rows = [dict(zip(cols, (str(x) if j else x for j, x in enumerate(r)))) for r in self.rows()]
        return json.dumps({"schemaVersion": 1, "k": self.k, "rows": rows}, indent=1)


def hamiltonian_counts(k: int, n_max: int, pipeline: Pipeline | None = None) -> CountSeries:
    p = pipeline or Pipeline.build(k)
    if n_max < 3 * k:
        raise ValueError(f"n_max must be >= 3k = {3 * k}")
    ham = hamiltonian_indices(p.catalog)
    vals = [int(s.values[ham].sum()) for s in p.states(n_max)]
    return CountSeries(k, 3 * k, vals)


def parity_split_counts(k: int, n_max: int, pipeline: Pipeline | None = None) -> CountSeries:
    p = pipeline or Pipeline.build(k)
    if n_max < 3 * k:
        raise ValueError(f"n_max must be >= 3k = {3 * k}")
    even, odd = parity_indices(p.catalog)
    h, he, ho = [], [], []
    for s in p.states(n_max):
        e, o = int(s.values[even].sum()), int(s.values[odd].sum())
        he.append(e)
        ho.append(o)
        h.append(e + o)
    return CountSeries(k, 3 * k, h, he, ho)
