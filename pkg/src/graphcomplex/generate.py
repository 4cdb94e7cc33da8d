"""Isomorph-free generation of connected simple graphs with min valence 3.

Edge-augmentation search with the canonical-deletion rule: a child graph is
accepted only if the edge just added lies in the automorphism orbit of the
child's canonical deletion edge.  Each isomorphism class of each admissible
intermediate graph is visited exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .canon import CanonicalClass, canonical_form
from .connectivity import connectivity_class
from .graphs import SimpleGraph, build_graph, component_masks, graph6_decode


def _deficiency(g: SimpleGraph) -> int:
    return sum(max(0, 3 - d) for d in g.degrees())


def _feasible(g: SimpleGraph, k: int) -> bool:
    """Can g still be completed to a connected min-valence-3 graph with k edges?

    Both bounds are monotone under edge deletion, so they are safe prunes
    for the canonical-deletion search.
    """
    rem = k - g.k
    if rem < 0:
        return False
    if _deficiency(g) > 2 * rem:
        return False
    if len(component_masks(g)) - 1 > rem:
        return False
    return True


def _edge_orbit_reps(
    items: list[tuple[int, int]], gens: tuple[tuple[int, ...], ...]
) -> list[tuple[int, int]]:
    """One representative per orbit of vertex pairs under the given perms."""
    if not gens:
        return items
    index = {e: i for i, e in enumerate(items)}
    parent = list(range(len(items)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for e, i in index.items():
            u, v = g[e[0]], g[e[1]]
            img = (u, v) if u < v else (v, u)
            j = index.get(img)
            if j is not None:
                a, b = find(i), find(j)
                if a != b:
                    parent[a] = b
    reps = []
    seen: set[int] = set()
    for i, e in enumerate(items):
        root = find(i)
        if root not in seen:
            seen.add(root)
            reps.append(e)
    return reps


def _canonical_deletion_ok(
    child: SimpleGraph, cf: CanonicalClass, new_edge: tuple[int, int]
) -> bool:
    """True iff new_edge is Aut-equivalent to the canonical deletion edge."""
    perm = cf.relabel
    best_pair = None
    best_edge = None
    for u, v in child.edges:
        a, b = perm[u], perm[v]
        pair = (a, b) if a < b else (b, a)
        if best_pair is None or pair > best_pair:
            best_pair = pair
            best_edge = (u, v)
    if best_edge == new_edge:
        return True
    if not cf.aut_generators:
        return False
    # same orbit test: union-find over the child's edges
    index = {e: i for i, e in enumerate(child.edges)}
    parent = list(range(len(child.edges)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in cf.aut_generators:
        for e, i in index.items():
            u, v = g[e[0]], g[e[1]]
            img = (u, v) if u < v else (v, u)
            j = index[img]
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
    return find(index[best_edge]) == find(index[new_edge])


@lru_cache(maxsize=256)
def generate(r: int, k: int) -> frozenset[bytes]:
    """Canonical keys of all connected simple graphs, r vertices, k edges,
    every vertex at least trivalent.  Orientation-zero classes included."""
    if r < 1 or k < 0:
        return frozenset()
    out: set[bytes] = set()
    root = build_graph(r, [])
    if not _feasible(root, k):
        return frozenset()

    def recurse(g: SimpleGraph, cf: CanonicalClass) -> None:
        if g.k == k:
            if min(g.degrees(), default=3) >= 3 and len(component_masks(g)) == 1:
                out.add(cf.canon_key)
            return
        nonedges = [
            (u, v)
            for u in range(r)
            for v in range(u + 1, r)
            if not g.adj[u] >> v & 1
        ]
        for u, v in _edge_orbit_reps(nonedges, cf.aut_generators):
            child = build_graph(r, list(g.edges) + [(u, v)])
            if not _feasible(child, k):
                continue
            cfc = canonical_form(child)
            if _canonical_deletion_ok(child, cfc, (u, v)):
                recurse(child, cfc)

    recurse(root, canonical_form(root))
    return frozenset(out)


_THRESHOLD = {"full": 1, "biconnected": 2, "triconnected": 3}


@dataclass(frozen=True)
class Basis:
    """Deterministic ordered basis of one graded piece of one variant."""

    loop_order: int
    vertex_count: int
    variant: str
    keys: tuple[bytes, ...]
    index: dict[bytes, int]

    def __len__(self) -> int:
        return len(self.keys)


def build_basis(g: int, r: int, variant: str = "full") -> Basis:
    """Basis of the (loop order g, r vertices) piece: generate, drop
    orientation-zero classes, drop classes below the variant's
    connectivity threshold, sort lexicographically."""
    if variant not in _THRESHOLD:
        raise ValueError(f"unknown variant {variant!r}")
    threshold = _THRESHOLD[variant]
    k = g + r - 1
    keys = []
    for key in generate(r, k):
        graph = graph6_decode(key)
        if canonical_form(graph).is_zero:
            continue
        if threshold > 1 and connectivity_class(graph) < threshold:
            continue
        keys.append(key)
    keys.sort()
    return Basis(
        loop_order=g,
        vertex_count=r,
        variant=variant,
        keys=tuple(keys),
        index={key: i for i, key in enumerate(keys)},
    )
