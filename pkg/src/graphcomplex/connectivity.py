"""Connectivity classification and SPQR tree decomposition.

Brute-force separation-pair search and recursive splitting; graphs at desk
scale have at most a few dozen vertices, so auditability wins over
asymptotics.  Split components are multigraphs internally (bonds, cycles
with virtual placeholders); the input graph itself is always simple.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .graphs import GraphError, SimpleGraph, build_graph, is_connected

# internal part edge: (u, v, tag); tag = ("real", (gu, gv)) | ("virtual", vid)
_PartEdge = tuple[int, int, tuple]


class SpqrError(ValueError):
    """Structurally invalid SPQR input."""


@dataclass(frozen=True)
class VirtualEdge:
    endpoints: tuple[int, int]
    twin_node: int
    twin_index: int


@dataclass(frozen=True)
class SpqrNode:
    id: int
    kind: str  # "S" | "P" | "R"
    vertices: frozenset[int]
    real_edges: tuple[tuple[int, int], ...]
    virtual_edges: tuple[VirtualEdge, ...]


@dataclass(frozen=True)
class SpqrTree:
    graph: SimpleGraph
    nodes: tuple[SpqrNode, ...]
    tree_edges: tuple[tuple[int, int], ...]

    def node(self, node_id: int) -> SpqrNode:
        return self.nodes[node_id]

    def neighbors(self, node_id: int) -> list[int]:
        out = []
        for a, b in self.tree_edges:
            if a == node_id:
                out.append(b)
            elif b == node_id:
                out.append(a)
        return out

    def leaves(self) -> list[int]:
        if len(self.nodes) == 1:
            return [self.nodes[0].id]
        return [n.id for n in self.nodes if len(self.neighbors(n.id)) == 1]


def _connected_after_removal(g: SimpleGraph, removed: set[int]) -> bool:
    keep = [v for v in range(g.n) if v not in removed]
    if not keep:
        return True
    mask_keep = 0
    for v in keep:
        mask_keep |= 1 << v
    start = keep[0]
    comp = 1 << start
    frontier = comp
    while frontier:
        nxt = 0
        m = frontier
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            nxt |= g.adj[v] & mask_keep
        frontier = nxt & ~comp
        comp |= nxt
    return comp == mask_keep


def connectivity_class(g: SimpleGraph) -> int:
    """1, 2 or 3 (capped): highest k <= 3 such that g is k-connected."""
    if not is_connected(g):
        raise GraphError("connectivity_class requires a connected graph")
    if g.n < 3:
        return 1
    for v in range(g.n):
        if not _connected_after_removal(g, {v}):
            return 1
    if separation_pairs(g):
        return 2
    return 3


def separation_pairs(g: SimpleGraph) -> list[tuple[int, int]]:
    """All vertex pairs whose deletion (with incident edges) disconnects g."""
    pairs = []
    for u, v in combinations(range(g.n), 2):
        if not _connected_after_removal(g, {u, v}):
            pairs.append((u, v))
    return pairs


# ---------------------------------------------------------------------------
# decomposition internals


def _part_vertices(edges: list[_PartEdge]) -> list[int]:
    vs: set[int] = set()
    for u, v, _ in edges:
        vs.add(u)
        vs.add(v)
    return sorted(vs)


def _part_components(edges: list[_PartEdge], removed: set[int]) -> list[set[int]]:
    """Components of the part's vertex set after deleting `removed`."""
    adj: dict[int, set[int]] = {}
    for u, v, _ in edges:
        if u in removed or v in removed:
            continue
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    verts = set(_part_vertices(edges)) - removed
    comps = []
    unseen = set(verts)
    while unseen:
        start = min(unseen)
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj.get(x, ()):
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        comps.append(comp)
        unseen -= comp
    return comps


def _is_cycle(edges: list[_PartEdge]) -> bool:
    deg: dict[int, int] = {}
    for u, v, _ in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if any(d != 2 for d in deg.values()):
        return False
    return len(_part_components(edges, set())) == 1


def _decompose(edges: list[_PartEdge], next_vid: list[int], out_nodes: list[dict]) -> None:
    verts = _part_vertices(edges)

    if len(verts) == 2:
        out_nodes.append({"kind": "P", "edges": list(edges)})
        return

    # split off one maximal parallel class at a time
    by_pair: dict[tuple[int, int], list[_PartEdge]] = {}
    for e in edges:
        by_pair.setdefault((e[0], e[1]), []).append(e)
    parallel = sorted(p for p, es in by_pair.items() if len(es) >= 2)
    if parallel:
        u, v = parallel[0]
        vid = next_vid[0]
        next_vid[0] += 1
        bond = by_pair[(u, v)] + [(u, v, ("virtual", vid))]
        out_nodes.append({"kind": "P", "edges": bond})
        rest = [e for e in edges if (e[0], e[1]) != (u, v)]
        rest.append((u, v, ("virtual", vid)))
        _decompose(rest, next_vid, out_nodes)
        return

    if _is_cycle(edges):
        out_nodes.append({"kind": "S", "edges": list(edges)})
        return

    # simple part: find the least separation pair
    split_pair = None
    for u, v in combinations(verts, 2):
        if len(_part_components(edges, {u, v})) >= 2:
            split_pair = (u, v)
            break
    if split_pair is None:
        out_nodes.append({"kind": "R", "edges": list(edges)})
        return

    u, v = split_pair
    comps = _part_components(edges, {u, v})
    direct = [e for e in edges if (e[0], e[1]) == (u, v)]
    classes: list[list[_PartEdge]] = []
    for comp in comps:
        cls = [e for e in edges if (e[0] in comp or e[1] in comp)]
        classes.append(cls)
    n_classes = len(classes) + (1 if direct else 0)

    if n_classes == 2:
        vid = next_vid[0]
        next_vid[0] += 1
        for cls in classes:
            _decompose(cls + [(u, v, ("virtual", vid))], next_vid, out_nodes)
        return

    hub: list[_PartEdge] = list(direct)
    for cls in classes:
        vid = next_vid[0]
        next_vid[0] += 1
        hub.append((u, v, ("virtual", vid)))
        _decompose(cls + [(u, v, ("virtual", vid))], next_vid, out_nodes)
    out_nodes.append({"kind": "P", "edges": hub})


def _fuse(nodes: list[dict]) -> list[dict]:
    """Merge adjacent same-kind S nodes and same-kind P nodes."""

    def twin_map(ns: list[dict]) -> dict[int, list[int]]:
        owner: dict[int, list[int]] = {}
        for i, node in enumerate(ns):
            for _, _, tag in node["edges"]:
                if tag[0] == "virtual":
                    owner.setdefault(tag[1], []).append(i)
        return owner

    while True:
        owner = twin_map(nodes)
        merged = False
        for vid, owners in sorted(owner.items()):
            if len(owners) != 2:
                raise SpqrError(f"virtual edge {vid} has {len(owners)} owners")
            a, b = owners
            if a != b and nodes[a]["kind"] == nodes[b]["kind"] and nodes[a]["kind"] in "SP":
                keep = [e for e in nodes[a]["edges"] if e[2] != ("virtual", vid)]
                keep += [e for e in nodes[b]["edges"] if e[2] != ("virtual", vid)]
                new = {"kind": nodes[a]["kind"], "edges": keep}
                nodes = [n for i, n in enumerate(nodes) if i not in (a, b)] + [new]
                merged = True
                break
        if not merged:
            return nodes


def spqr(g: SimpleGraph) -> SpqrTree:
    """The unique SPQR tree of a biconnected graph with >= 3 vertices."""
    if g.n < 3:
        raise GraphError("SPQR tree needs at least 3 vertices")
    if connectivity_class(g) < 2:
        raise GraphError("SPQR tree requires a biconnected graph")

    edges: list[_PartEdge] = [(u, v, ("real", (u, v))) for u, v in g.edges]
    raw: list[dict] = []
    _decompose(edges, [0], raw)
    raw = _fuse(raw)

    # deterministic node order
    def node_key(node: dict) -> tuple:
        reals = sorted(e[:2] for e in node["edges"] if e[2][0] == "real")
        virts = sorted(e[:2] for e in node["edges"] if e[2][0] == "virtual")
        return (node["kind"], sorted(_part_vertices(node["edges"])), reals, virts)

    raw.sort(key=node_key)

    # locate twins
    owner: dict[int, list[tuple[int, int]]] = {}
    for i, node in enumerate(raw):
        vlist = [e for e in node["edges"] if e[2][0] == "virtual"]
        vlist.sort(key=lambda e: (e[0], e[1], e[2][1]))
        node["virtuals"] = vlist
        for j, e in enumerate(vlist):
            owner.setdefault(e[2][1], []).append((i, j))

    nodes = []
    tree_edges = set()
    for i, node in enumerate(raw):
        virtuals = []
        for j, e in enumerate(node["virtuals"]):
            pair = owner[e[2][1]]
            (oi, oj) = pair[0] if pair[1] == (i, j) else pair[1]
            virtuals.append(VirtualEdge(endpoints=(e[0], e[1]), twin_node=oi, twin_index=oj))
            tree_edges.add((min(i, oi), max(i, oi)))
        reals = tuple(sorted(e[:2] for e in node["edges"] if e[2][0] == "real"))
        nodes.append(
            SpqrNode(
                id=i,
                kind=node["kind"],
                vertices=frozenset(_part_vertices(node["edges"])),
                real_edges=reals,
                virtual_edges=tuple(virtuals),
            )
        )
    return SpqrTree(graph=g, nodes=tuple(nodes), tree_edges=tuple(sorted(tree_edges)))


def recompose(tree: SpqrTree) -> SimpleGraph:
    """Glue matching virtual edges and drop them; inverse of spqr up to labels."""
    verts: set[int] = set()
    reals: list[tuple[int, int]] = []
    for node in tree.nodes:
        verts |= node.vertices
        for ve in node.virtual_edges:
            twin = tree.nodes[ve.twin_node]
            if ve.twin_index >= len(twin.virtual_edges):
                raise SpqrError("twin index out of range")
            back = twin.virtual_edges[ve.twin_index]
            if back.twin_node != node.id or back.endpoints != ve.endpoints:
                raise SpqrError(
                    f"twin mismatch between nodes {node.id} and {ve.twin_node}"
                )
        reals.extend(node.real_edges)
    relabel = {v: i for i, v in enumerate(sorted(verts))}
    if len(set(reals)) != len(reals):
        raise SpqrError("real edges do not partition: duplicate edge")
    return build_graph(len(verts), [(relabel[u], relabel[v]) for u, v in reals])


def r_edge_weight(tree: SpqrTree) -> int:
    """Real edges inside R-node skeleta: the filtration level of the graph."""
    return sum(len(n.real_edges) for n in tree.nodes if n.kind == "R")


def edge_owner(tree: SpqrTree, e: int) -> tuple[int, str]:
    pair = tree.graph.edges[e]
    for node in tree.nodes:
        if pair in node.real_edges:
            return node.id, node.kind
    raise SpqrError(f"edge {pair} not owned by any node")


def contraction_case(tree: SpqrTree, e: int) -> str:
    """Predicted effect of contracting real edge e on the tree/filtration.

    P-kill: result not biconnected; S-shrink: cycle shortens in place;
    S-merge: triangle S node disappears; R-local: filtration level drops.
    """
    node_id, kind = edge_owner(tree, e)
    if kind == "P":
        return "P-kill"
    if kind == "R":
        return "R-local"
    if len(tree.nodes[node_id].vertices) >= 4:
        return "S-shrink"
    return "S-merge"


def tree_to_json(tree: SpqrTree) -> str:
    doc = {
        "graph": {"vertices": tree.graph.n, "edges": [list(e) for e in tree.graph.edges]},
        "nodes": [
            {
                "id": n.id,
                "kind": n.kind,
                "skeleton_vertices": sorted(n.vertices),
                "real_edges": [list(e) for e in n.real_edges],
                "virtual_edges": [
                    {
                        "endpoints": list(v.endpoints),
                        "twin": [v.twin_node, v.twin_index],
                    }
                    for v in n.virtual_edges
                ],
            }
            for n in tree.nodes
        ],
        "tree_edges": [list(e) for e in tree.tree_edges],
    }
    return json.dumps(doc, indent=2)
