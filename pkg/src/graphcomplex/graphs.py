"""Labeled simple graphs, graph surgery, grading, and graph6 I/O.

A graph is stored with an explicit edge sequence; the position of an edge
in that sequence is the orientation datum carried through all surgery
operations.  All values are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction  # noqa: F401  (re-exported convenience)
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Invalid graph construction or malformed input."""


class NonSimple:
    """Marker: an edge contraction would create a parallel edge."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "NonSimple"


class AlreadyAdjacent:
    """Marker: the requested edge is already present."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "AlreadyAdjacent"


NON_SIMPLE = NonSimple()
ALREADY_ADJACENT = AlreadyAdjacent()


@dataclass(frozen=True)
class SimpleGraph:
    """Simple graph on vertices 0..n-1 with an ordered edge sequence.

    ``edges[i] = (u, v)`` with ``u < v``; the sequence order is the
    orientation.  ``adj[v]`` is the neighbor bitset of vertex ``v``.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, edges={list(self.edges)})"


def build_graph(vertex_count: int, edge_list: Iterable[Sequence[int]]) -> SimpleGraph:
    """Normalize and validate an edge list into a SimpleGraph.

    Pairs may arrive unsorted; per-pair sorting does not count as an
    orientation change.  Rejects self-edges, duplicates, and out-of-range
    labels.
    """
    if vertex_count < 0:
        raise GraphError(f"negative vertex count {vertex_count}")
    edges: list[tuple[int, int]] = []
    adj = [0] * vertex_count
    seen: set[tuple[int, int]] = set()
    for pair in edge_list:
        u, v = pair
        if u == v:
            raise GraphError(f"self-edge at vertex {u}")
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise GraphError(f"edge ({u},{v}) out of range for {vertex_count} vertices")
        if u > v:
            u, v = v, u
        if (u, v) in seen:
            raise GraphError(f"duplicate edge ({u},{v})")
        seen.add((u, v))
        edges.append((u, v))
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return SimpleGraph(vertex_count, tuple(edges), tuple(adj))


def complete_graph(n: int) -> SimpleGraph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def contract_edge(g: SimpleGraph, e: int) -> SimpleGraph | NonSimple:
    """Contract edge ``e``; returns NON_SIMPLE if its endpoints share a neighbor.

    The merged vertex keeps the lower label; labels above the removed vertex
    shift down.  The edge ordering is inherited with ``e`` removed.
    """
    u, v = g.edges[e]
    if g.adj[u] & g.adj[v]:
        return NON_SIMPLE

    def remap(w: int) -> int:
        if w == v:
            w = u
        return w - 1 if w > v else w

    edges = []
    for i, (a, b) in enumerate(g.edges):
        if i == e:
            continue
        a, b = remap(a), remap(b)
        edges.append((a, b) if a < b else (b, a))
    return build_graph(g.n - 1, edges)


def add_edge(g: SimpleGraph, u: int, v: int) -> SimpleGraph | AlreadyAdjacent:
    """Insert edge (u,v) at the FRONT of the orientation ordering."""
    if u == v:
        raise GraphError(f"self-edge at vertex {u}")
    if g.has_edge(u, v):
        return ALREADY_ADJACENT
    return build_graph(g.n, [(u, v)] + list(g.edges))


@dataclass(frozen=True)
class Grading:
    loop_order: int
    degree_n0: int
    degree_n2: int


def grading_of(g: SimpleGraph) -> Grading:
    """Loop order and cohomological degrees (n=0 and n=2 readouts).

    For disconnected graphs the loop order is k - r + c with c components.
    """
    c = len(component_masks(g))
    loop = g.k - g.n + c
    return Grading(loop_order=loop, degree_n0=-g.k, degree_n2=g.k - 2 * (g.n - 1))


def component_masks(g: SimpleGraph) -> list[int]:
    """Vertex bitsets of the connected components, by least vertex."""
    unseen = (1 << g.n) - 1
    masks = []
    while unseen:
        start = (unseen & -unseen).bit_length() - 1
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            m = frontier
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= nxt
        masks.append(comp)
        unseen &= ~comp
    return masks


def is_connected(g: SimpleGraph) -> bool:
    if g.n == 0:
        return True
    return len(component_masks(g)) == 1


def components(g: SimpleGraph) -> list[SimpleGraph]:
    return components_with_sign(g)[0]


def components_with_sign(g: SimpleGraph) -> tuple[list[SimpleGraph], int]:
    """Connected components with induced edge orderings.

    The sign is the parity of the unshuffle sorting the edge sequence into
    per-component blocks (stable within blocks).
    """
    masks = component_masks(g)
    comps: list[SimpleGraph] = []
    order: list[int] = []
    for mask in masks:
        verts = [v for v in range(g.n) if mask >> v & 1]
        relabel = {v: i for i, v in enumerate(verts)}
        sub = []
        for i, (u, v) in enumerate(g.edges):
            if mask >> u & 1:
                sub.append((relabel[u], relabel[v]))
                order.append(i)
        comps.append(build_graph(len(verts), sub))
    return comps, permutation_sign(order)


def permutation_sign(perm: Sequence[int]) -> int:
    """Parity of a permutation given as a list of distinct sortable items."""
    perm = list(perm)
    index = {x: i for i, x in enumerate(perm)}
    target = sorted(perm)
    sign = 1
    for i, want in enumerate(target):
        j = index[perm[i]]
        have = perm[i]
        if have != want:
            j = index[want]
            perm[i], perm[j] = perm[j], perm[i]
            index[have] = j
            index[want] = i
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# graph6 (short form, <= 62 vertices)

def graph6_encode(g: SimpleGraph) -> bytes:
    if g.n > 62:
        raise GraphError("graph6 short form supports at most 62 vertices")
    out = [63 + g.n]
    bits = 0
    nbits = 0
    for j in range(1, g.n):
        for i in range(j):
            bits = bits << 1 | (g.adj[i] >> j & 1)
            nbits += 1
            if nbits == 6:
                out.append(63 + bits)
                bits = nbits = 0
    if nbits:
        out.append(63 + (bits << (6 - nbits)))
    return bytes(out)


def graph6_decode(data: bytes | str) -> SimpleGraph:
    """Decode short-form graph6; edges come out in lexicographic order."""
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise GraphError("empty graph6 string")
    n = data[0] - 63
    if not (0 <= n <= 62):
        raise GraphError(f"unsupported graph6 vertex byte {data[0]}")
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[1:]
    if len(body) != need:
        raise GraphError(f"graph6 length mismatch: expected {need} body bytes, got {len(body)}")
    bits = []
    for byte in body:
        x = byte - 63
        if not (0 <= x < 64):
            raise GraphError(f"graph6 byte {byte} out of range")
        bits.extend((x >> s & 1) for s in range(5, -1, -1))
    pairs = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                pairs.append((i, j))
            idx += 1
    pairs.sort()
    return build_graph(n, pairs)
