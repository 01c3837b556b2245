"""Small digraph toolkit: Tarjan SCCs, condensation, reachability and an exact
isomorphism test (colour refinement plus individualisation)."""
from __future__ import annotations

import heapq
from collections import Counter
from typing import Sequence


def tarjan_scc(num_nodes: int, succs: Sequence[Sequence[int]]) -> list[list[int]]:
    """Strongly connected components, iterative Tarjan (no recursion limit).
    Components come out in reverse topological order."""
    index = [-1] * num_nodes
    low = [0] * num_nodes
    on_stack = [False] * num_nodes
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in range(num_nodes):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succs[v]):
                work[-1] = (v, i + 1)
                w = succs[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
    return out


def topological_components(num_nodes: int, succs: Sequence[Sequence[int]]):
    """SCCs ordered sources first (ties broken by smallest member), the
    component id of each node, and the condensation arc set."""
    comps = tarjan_scc(num_nodes, succs)
    comp_of = [0] * num_nodes
    for c, members in enumerate(comps):
        for v in members:
            comp_of[v] = c
    arcs = {(comp_of[a], comp_of[b]) for a in range(num_nodes) for b in succs[a] if comp_of[a] != comp_of[b]}
    indeg = Counter(b for _, b in arcs)
    out_arcs: dict[int, list[int]] = {}
    for a, b in arcs:
        out_arcs.setdefault(a, []).append(b)
    heap = [(comps[c][0], c) for c in range(len(comps)) if indeg[c] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, c = heapq.heappop(heap)
        order.append(c)
        for d in out_arcs.get(c, ()):
            indeg[d] -= 1
            if indeg[d] == 0:
                heapq.heappush(heap, (comps[d][0], d))
    renum = {old: new for new, old in enumerate(order)}
    components = [comps[c] for c in order]
    comp_of = [renum[c] for c in comp_of]
    condensation = sorted((renum[a], renum[b]) for a, b in arcs)
    return components, comp_of, condensation


def reachable(start: Sequence[int], adj: Sequence[Sequence[int]]) -> set[int]:
    seen = set(start)
    todo = list(start)
    while todo:
        v = todo.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def _refine(n: int, succ, pred, colors: list[int]) -> list[int]:
    while True:
        sig = [
            (colors[v], tuple(sorted(colors[w] for w in succ[v])), tuple(sorted(colors[w] for w in pred[v])))
            for v in range(n)
        ]
        table = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [table[s] for s in sig]
        if len(table) == len(set(colors)):
            return new
        colors = new


def find_isomorphism(arcs_a, arcs_b, n: int) -> list[int] | None:
    """A bijection f with (u, v) in A  <=>  (f(u), f(v)) in B, or None.
    Both digraphs live on nodes 0..n-1."""
    set_a, set_b = set(arcs_a), set(arcs_b)
    if len(set_a) != len(set_b):
        return None
    N = 2 * n
    succ: list[list[int]] = [[] for _ in range(N)]
    pred: list[list[int]] = [[] for _ in range(N)]
    for u, v in set_a:
        succ[u].append(v)
        pred[v].append(u)
    for u, v in set_b:
        succ[n + u].append(n + v)
        pred[n + v].append(n + u)
    loops = {u for u, v in set_a if u == v} | {n + u for u, v in set_b if u == v}

    def balanced(colors):
        return Counter(colors[:n]) == Counter(colors[n:])

    def search(colors: list[int]) -> list[int] | None:
        colors = _refine(N, succ, pred, colors)
        if not balanced(colors):
            return None
        classes: dict[int, list[int]] = {}
        for v in range(n):
            classes.setdefault(colors[v], []).append(v)
        open_cls = [c for c, vs in classes.items() if len(vs) > 1]
        if not open_cls:
            where = {colors[n + v]: v for v in range(n)}
            f = [where[colors[v]] for v in range(n)]
            ok = all((f[u], f[v]) in set_b for u, v in set_a)
            return f if ok else None
        c = min(open_cls, key=lambda c: (len(classes[c]), c))
        u = classes[c][0]
        fresh = max(colors) + 1
        for t in range(n, N):
            if colors[t] != c:
                continue
            trial = list(colors)
            trial[u] = trial[t] = fresh
            f = search(trial)
            if f is not None:
                return f
        return None

    start = [(len(succ[v]), len(pred[v]), v in loops) for v in range(N)]
    table = {s: i for i, s in enumerate(sorted(set(start)))}
    return search([table[s] for s in start])
