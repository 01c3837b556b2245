"""Generalized Petersen graphs G(n, k), their framed versions G'(n, k), and a
brute-force Hamiltonian cycle counter used as an independent oracle.

Vertex numbering
    G(n, k):   v_i -> i,  w_i -> n + i                      (0 <= i < n)
    G'(n, k):  as above, plus L_j -> 2n + j, R_j -> 2n + k + 1 + j   (0 <= j <= k)
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

Edge = tuple[int, int]


def _edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class PetersenGraph:
    n: int
    k: int
    edges: tuple[Edge, ...]
    degenerate: bool

    @property
    def num_vertices(self) -> int:
        return 2 * self.n

    def degrees(self) -> list[int]:
        deg = [0] * self.num_vertices
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def label(self, x: int) -> str:
        return f"v{x}" if x < self.n else f"w{x - self.n}"


@dataclass(frozen=True)
class FramedGraph:
    n: int
    k: int
    edges: tuple[Edge, ...]

    @property
    def num_vertices(self) -> int:
        return 2 * self.n + 2 * (self.k + 1)

    def v(self, i: int) -> int:
        return i

    def w(self, i: int) -> int:
        return self.n + i

    def L(self, j: int) -> int:
        return 2 * self.n + j

    def R(self, j: int) -> int:
        return 2 * self.n + self.k + 1 + j

    def is_stub(self, x: int) -> bool:
        return x >= 2 * self.n

    def degrees(self) -> list[int]:
        deg = [0] * self.num_vertices
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def label(self, x: int) -> str:
        n, k = self.n, self.k
        if x < n:
            return f"v{x}"
        if x < 2 * n:
            return f"w{x - n}"
        if x < 2 * n + k + 1:
            return f"L{x - 2 * n}"
        return f"R{x - 2 * n - k - 1}"


def build_petersen(n: int, k: int) -> PetersenGraph:
    """G(n, k) with set semantics; ``degenerate`` is set when n <= 2k."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    edges: set[Edge] = set()
    for i in range(n):
        for a, b in ((i, (i + 1) % n), (n + i, n + (i + k) % n), (i, n + i)):
            if a != b:
                edges.add(_edge(a, b))
    return PetersenGraph(n, k, tuple(sorted(edges)), degenerate=n <= 2 * k)


def build_framed(n: int, k: int) -> FramedGraph:
    """G'(n, k): the seam edges of G(n, k) cut open into stubs L_0..L_k, R_0..R_k."""
    if k < 1 or n < 2 * k + 1:
        raise ValueError(f"G'(n, k) needs n >= 2k + 1, got n={n}, k={k}")
    L = lambda j: 2 * n + j  # noqa: E731
    R = lambda j: 2 * n + k + 1 + j  # noqa: E731
    edges = [(i, i + 1) for i in range(n - 1)]
    edges += [(i, n + i) for i in range(n)]
    edges += [(n + i, n + i + k) for i in range(n - k)]
    edges += [(0, L(0))] + [(n + i, L(i + 1)) for i in range(k)]
    edges += [(n - 1, R(0))] + [(n + n - k + i, R(i + 1)) for i in range(k)]
    return FramedGraph(n, k, tuple(sorted(_edge(a, b) for a, b in edges)))


def iter_two_regular_subgraphs(
    num_vertices: int,
    edges: Sequence[Edge],
    required: Sequence[int],
) -> Iterator[tuple[int, list[int]]]:
    """Enumerate edge subsets in which every ``required`` vertex has degree 2,
    every other vertex has degree <= 1, and no cycle appears unless it is the
    only component and passes through all required vertices.

    Yields ``(mask, partner)`` where bit e of ``mask`` marks edge e and
    ``partner[x]`` is the far end of the path through endpoint x.  ``partner``
    is live state: read it before advancing the iterator.
    """
    incident: list[list[int]] = [[] for _ in range(num_vertices)]
    for e, (a, b) in enumerate(edges):
        incident[a].append(e)
        incident[b].append(e)
    req = set(required)
    cap = [2 if x in req else 1 for x in range(num_vertices)]
    status = [0] * len(edges)  # 0 undecided, 1 in, -1 out
    deg = [0] * num_vertices
    partner = list(range(num_vertices))
    order = list(required)
    n_req = len(order)
    state = {"mask": 0, "count": 0}

    def add(e: int, undo: list) -> bool:
        a, b = edges[e]
        if deg[a] >= cap[a] or deg[b] >= cap[b]:
            return False
        pa, pb = partner[a], partner[b]
        if pa == b:
            # closing a cycle: only the single whole-graph cycle is allowed
            if state["count"] + 1 != n_req or any(deg[x] for x in range(num_vertices) if x not in req):
                return False
        undo.append((pa, partner[pa], pb, partner[pb], a, b))
        partner[pa] = pb
        partner[pb] = pa
        deg[a] += 1
        deg[b] += 1
        status[e] = 1
        state["mask"] |= 1 << e
        state["count"] += 1
        return True

    def remove(e: int, undo: list) -> None:
        pa, opa, pb, opb, a, b = undo.pop()
        partner[pb] = opb
        partner[pa] = opa
        deg[a] -= 1
        deg[b] -= 1
        status[e] = 0
        state["mask"] &= ~(1 << e)
        state["count"] -= 1

    def rec(t: int) -> Iterator[tuple[int, list[int]]]:
        if t == n_req:
            yield state["mask"], partner
            return
        u = order[t]
        free = [e for e in incident[u] if status[e] == 0]
        need = 2 - deg[u]
        if need < 0 or need > len(free):
            return
        for chosen in combinations(free, need):
            undo: list = []
            added: list[int] = []
            ok = True
            for e in chosen:
                if not add(e, undo):
                    ok = False
                    break
                added.append(e)
            if ok:
                dropped = [e for e in free if e not in chosen]
                for e in dropped:
                    status[e] = -1
                yield from rec(t + 1)
                for e in dropped:
                    status[e] = 0
            for e in reversed(added):
                remove(e, undo)

    yield from rec(0)


def count_hamiltonian_cycles(num_vertices: int, edges: Sequence[Edge]) -> int:
    """Number of Hamiltonian cycles (as edge sets) of a simple graph."""
    return sum(1 for _ in iter_two_regular_subgraphs(num_vertices, edges, range(num_vertices)))


def count_ham_cycles_oracle(n: int, k: int) -> int:
    g = build_petersen(n, k)
    if g.degenerate:
        raise ValueError(f"G({n}, {k}) is degenerate (n <= 2k); the oracle needs n >= 2k + 1")
    return count_hamiltonian_cycles(g.num_vertices, g.edges)


def iter_hamiltonian_cycles(n: int, k: int) -> Iterator[list[Edge]]:
    g = build_petersen(n, k)
    if g.degenerate:
        raise ValueError(f"G({n}, {k}) is degenerate (n <= 2k)")
    for mask, _ in iter_two_regular_subgraphs(g.num_vertices, g.edges, range(g.num_vertices)):
        yield [g.edges[e] for e in range(len(g.edges)) if mask >> e & 1]
