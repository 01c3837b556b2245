"""Side intersections, signatures, the Hamiltonian-inducing set and the
initial state vector.

A side intersection is stored as a bitmask over the 4k + 1 outer edges of one
side, in this fixed order (written for the left side, column i = 0..k-1):

    bit 0            v_0 L_0
    bit 1 + i        w_i L_{i+1}
    bit k + 1 + i    v_i v_{i+1}
    bit 2k + 1 + i   v_i w_i
    bit 3k + 1 + i   w_i w_{i+k}

The right side uses the mirror image i -> n - 1 - i, which sends L_0 to R_0
and L_j to R_{k+1-j} for j >= 1.  Both sides therefore share one catalog and
one id space (ids follow ascending bitmask).

Loose ends are labelled by integers: L_j -> j and R_j -> k + 1 + j.  A pairing
is a sorted tuple of sorted pairs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

from .graphs import build_framed, iter_two_regular_subgraphs

Pair = tuple[int, int]
Pairing = tuple[Pair, ...]


@dataclass(frozen=True)
class SideIntersection:
    k: int
    id: int
    edge_mask: int
    loose_ends: tuple[int, ...]  # stub indices j of L_j (left orientation)
    forced_pairs: tuple[Pair, ...]  # stub index pairs joined inside the side
    open_ends: tuple[str, ...]  # interior attachment points ending a path

    def mirrored_stub(self, j: int) -> int:
        return 0 if j == 0 else self.k + 1 - j

    def left_labels(self) -> tuple[int, ...]:
        return self.loose_ends

    def right_labels(self) -> tuple[int, ...]:
        k = self.k
        return tuple(sorted(k + 1 + self.mirrored_stub(j) for j in self.loose_ends))

    def left_forced(self) -> tuple[Pair, ...]:
        return self.forced_pairs

    def right_forced(self) -> tuple[Pair, ...]:
        k = self.k
        out = []
        for a, b in self.forced_pairs:
            x, y = k + 1 + self.mirrored_stub(a), k + 1 + self.mirrored_stub(b)
            out.append((min(x, y), max(x, y)))
        return tuple(sorted(out))

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "edgeMask": self.edge_mask,
            "looseEnds": list(self.loose_ends),
            "forcedPairs": [list(p) for p in self.forced_pairs],
        }


@dataclass(frozen=True)
class Signature:
    left_id: int
    right_id: int
    pairing: Pairing


@dataclass
class SignatureCatalog:
    k: int
    sides: list[SideIntersection]
    signatures: list[Signature]
    index: dict[Signature, int] = field(repr=False)
    side_by_mask: dict[int, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.signatures)

    def dump_sides(self) -> str:
        return json.dumps([s.to_json() for s in self.sides], indent=1)


def side_edge_endpoints(k: int) -> list[tuple[str, str]]:
    """Endpoints (local labels) of the canonical left-side edges, by bit."""
    edges = [("v0", "L0")]
    edges += [(f"w{i}", f"L{i + 1}") for i in range(k)]
    edges += [(f"v{i}", f"v{i + 1}") for i in range(k)]
    edges += [(f"v{i}", f"w{i}") for i in range(k)]
    edges += [(f"w{i}", f"w{i + k}") for i in range(k)]
    return edges


def analyze_side(k: int, mask: int) -> tuple[tuple[int, ...], tuple[Pair, ...], tuple[str, ...]] | None:
    """Loose ends, forced pairs and open ends of a side edge subset, or None
    if the subset is not a valid side intersection."""
    ends = side_edge_endpoints(k)
    internal = {f"v{i}" for i in range(k)} | {f"w{i}" for i in range(k)}
    adj: dict[str, list[str]] = {}
    for e, (a, b) in enumerate(ends):
        if mask >> e & 1:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
    if any(len(adj.get(x, ())) != 2 for x in internal):
        return None
    # every boundary vertex has at most one side edge, so components are
    # paths between boundary vertices unless a cycle sits on internal ones
    seen: set[str] = set()
    forced: list[Pair] = []
    opens: list[str] = []
    for start in sorted(adj):
        if start in seen or start in internal:
            continue
        prev, cur = None, start
        seen.add(cur)
        while True:
            nxt = [y for y in adj[cur] if y != prev]
            if not nxt or (cur != start and cur not in internal):
                break
            prev, cur = cur, nxt[0]
            seen.add(cur)
        a, b = start, cur
        if a[0] == "L" and b[0] == "L":
            x, y = int(a[1:]), int(b[1:])
            forced.append((min(x, y), max(x, y)))
        else:
            opens.extend(z for z in (a, b) if z[0] != "L")
    if any(x not in seen for x in internal):
        return None  # an internal cycle
    loose = tuple(sorted(int(x[1:]) for x in adj if x[0] == "L"))
    return loose, tuple(sorted(forced)), tuple(sorted(opens))


def enumerate_side_intersections(k: int) -> list[SideIntersection]:
    """All side intersections for the given k, ordered by edge bitmask."""
    if k < 1:
        raise ValueError("k must be positive")
    masks = []
    # ring bits e_0 (v_0 L_0) .. e_k (v_{k-1} v_k); each v_i then needs
    # spoke s_i = 2 - e_i - e_{i+1}; each w_i picks its two other edges
    for ring in product((0, 1), repeat=k + 1):
        spokes = [2 - ring[i] - ring[i + 1] for i in range(k)]
        if any(s not in (0, 1) for s in spokes):
            continue
        w_options = [[(1, 1)] if s == 0 else [(1, 0), (0, 1)] for s in spokes]
        for w_choice in product(*w_options):
            mask = ring[0]
            for i in range(k):
                stub, chord = w_choice[i]
                mask |= stub << (1 + i)
                mask |= ring[i + 1] << (k + 1 + i)
                mask |= spokes[i] << (2 * k + 1 + i)
                mask |= chord << (3 * k + 1 + i)
            masks.append(mask)
    sides = []
    for sid, mask in enumerate(sorted(masks)):
        info = analyze_side(k, mask)
        assert info is not None
        sides.append(SideIntersection(k, sid, mask, *info))
    return sides


def _perfect_matchings(items: Sequence[int]) -> Iterator[list[Pair]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for i, other in enumerate(rest):
        for m in _perfect_matchings(rest[:i] + rest[i + 1:]):
            yield [(first, other)] + m


def iter_signatures(k: int, sides: Sequence[SideIntersection]) -> Iterator[Signature]:
    """Signatures in canonical order: (left id, right id, pairing)."""
    for left in sides:
        lf = left.left_forced()
        l_free = [x for x in left.left_labels() if not any(x in p for p in lf)]
        for right in sides:
            rf = right.right_forced()
            r_free = [x for x in right.right_labels() if not any(x in p for p in rf)]
            free = l_free + r_free
            if len(free) % 2:
                continue
            pairings = sorted(tuple(sorted(lf + rf + tuple(m))) for m in _perfect_matchings(free))
            for lam in pairings:
                yield Signature(left.id, right.id, lam)


def enumerate_signatures(k: int, sides: Sequence[SideIntersection] | None = None) -> list[Signature]:
    if sides is None:
        sides = enumerate_side_intersections(k)
    return list(iter_signatures(k, sides))


def build_catalog(k: int) -> SignatureCatalog:
    sides = enumerate_side_intersections(k)
    sigs = enumerate_signatures(k, sides)
    return SignatureCatalog(
        k=k,
        sides=sides,
        signatures=sigs,
        index={s: i for i, s in enumerate(sigs)},
        side_by_mask={s.edge_mask: s.id for s in sides},
    )


def loose_end_sets(pairing: Pairing, k: int) -> tuple[set[int], set[int]]:
    """Stub indices of left and right loose ends covered by a pairing."""
    left, right = set(), set()
    for p in pairing:
        for x in p:
            (left if x <= k else right).add(x if x <= k else x - k - 1)
    return left, right


def hamiltonian_walk_covers(pairing: Pairing, k: int, start: int) -> bool:
    """Run the gluing walk from one loose end; True iff it visits them all
    before returning.  Assumes left and right index sets coincide."""
    mate = {}
    for a, b in pairing:
        mate[a], mate[b] = b, a
    glue = lambda x: x + k + 1 if x <= k else x - k - 1  # noqa: E731
    seen = {start}
    cur = start
    step = 0
    while True:
        cur = mate[cur] if step % 2 == 0 else glue(cur)
        step += 1
        if cur == start:
            break
        if cur in seen:
            return False
        seen.add(cur)
    return len(seen) == len(mate)


def is_hamiltonian_signature(pairing: Pairing, k: int) -> bool:
    if not pairing:
        return True  # a whole cycle avoiding every seam edge
    left, right = loose_end_sets(pairing, k)
    if left != right:
        return False
    return hamiltonian_walk_covers(pairing, k, pairing[0][0])


def loose_end_parity(sig: Signature, catalog: SignatureCatalog) -> int:
    """0 if both sides carry an even number of loose ends, 1 if odd."""
    return len(catalog.sides[sig.left_id].loose_ends) % 2


# --- admissible subgraphs of G'(n, k) --------------------------------------

def _framed_edge_bits(n: int, k: int, edges) -> list[tuple[int | None, int | None]]:
    """For each framed edge: (left canonical bit, right canonical bit)."""
    v = lambda i: i  # noqa: E731
    w = lambda i: n + i  # noqa: E731
    L = lambda j: 2 * n + j  # noqa: E731
    R = lambda j: 2 * n + k + 1 + j  # noqa: E731

    def pair(a, b):
        return (a, b) if a < b else (b, a)

    left = {pair(v(0), L(0)): 0}
    right = {pair(v(n - 1), R(0)): 0}
    for i in range(k):
        left[pair(w(i), L(i + 1))] = 1 + i
        left[pair(v(i), v(i + 1))] = k + 1 + i
        left[pair(v(i), w(i))] = 2 * k + 1 + i
        left[pair(w(i), w(i + k))] = 3 * k + 1 + i
        c = n - 1 - i
        right[pair(w(c), R(k - i))] = 1 + i
        right[pair(v(c), v(c - 1))] = k + 1 + i
        right[pair(v(c), w(c))] = 2 * k + 1 + i
        right[pair(w(c), w(c - k))] = 3 * k + 1 + i
    return [(left.get(e), right.get(e)) for e in edges]


def signature_tally(n: int, k: int, catalog: SignatureCatalog) -> dict[Signature, int]:
    """Signatures of all admissible subgraphs of G'(n, k), by brute force.

    Needs n >= 3k so that the two sides share no edge.
    """
    if n < 3 * k:
        raise ValueError(f"signature tally needs n >= 3k, got n={n}, k={k}")
    g = build_framed(n, k)
    bits = _framed_edge_bits(n, k, g.edges)
    stub_edge = {}
    for e, (a, b) in enumerate(g.edges):
        if g.is_stub(b):
            stub_edge[b] = e
    label = lambda x: x - 2 * n  # L_j -> j, R_j -> k + 1 + j  # noqa: E731
    tally: dict[Signature, int] = {}
    for mask, partner in iter_two_regular_subgraphs(g.num_vertices, g.edges, range(2 * n)):
        lmask = rmask = 0
        for e, (lb, rb) in enumerate(bits):
            if mask >> e & 1:
                if lb is not None:
                    lmask |= 1 << lb
                if rb is not None:
                    rmask |= 1 << rb
        pairs = set()
        for x, e in stub_edge.items():
            if mask >> e & 1:
                a, b = label(x), label(partner[x])
                pairs.add((min(a, b), max(a, b)))
        sig = Signature(catalog.side_by_mask[lmask], catalog.side_by_mask[rmask], tuple(sorted(pairs)))
        tally[sig] = tally.get(sig, 0) + 1
    return tally


@dataclass
class InitialState:
    k: int
    n0: int
    values: dict[Signature, int]


def initial_state(k: int, catalog: SignatureCatalog | None = None) -> InitialState:
    """Signature counts of G'(3k, k), the first n where both sides are disjoint."""
    if catalog is None:
        catalog = build_catalog(k)
    return InitialState(k, 3 * k, signature_tally(3 * k, k, catalog))
