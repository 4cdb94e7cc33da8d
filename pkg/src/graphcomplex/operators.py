"""Pointwise dual-side operators on formal sums: d, delta0, nabla, D, pi,
Dbar, delta_k, plus the identity-checking harness.

Formal sums may carry disconnected classes: the canonical labeling treats
a disjoint union as one graph, so a disconnected class ("DiscClass") is
simply the canonical key of the whole graph, with the same zero/sign
bookkeeping as connected classes.

Sign conventions (validated by the identity suite and the adjointness
check rather than asserted):
  - d: contraction of the j-th edge carries (-1)^(j-1);
  - nabla and delta0: the new edge becomes the first in the ordering,
    all other edges keep their positions;
  - D: edges keep their identity and positions; each removal of a vertex
    v carries the weight (-1)^(deg v + 1) / 2.

With these conventions the operator identities hold in the form
  delta0 D - D delta0 = nabla        (commutator)
  nabla D + D nabla = 0              (anticommutator)
  D^2 = 0
which is the bracket structure forced by the telescoping
  delta_k = (k-1)/k! ad_Dbar^(k-1)(nabla),
since that formula requires ad_Dbar(delta0) = -nabla.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Callable, Sequence

from .canon import aut_group_order, canonical_form
from .formal import FormalSum
from .graphs import (
    NonSimple,
    SimpleGraph,
    add_edge,
    build_graph,
    component_masks,
    contract_edge,
    graph6_decode,
)

Operator = Callable[[FormalSum], FormalSum]


def _terms(x: FormalSum):
    for key, coeff in x:
        yield graph6_decode(key), coeff


def apply_d(x: FormalSum) -> FormalSum:
    """Signed sum of simple edge contractions, extended linearly."""
    out = FormalSum()
    for g, coeff in _terms(x):
        for j in range(g.k):
            image = contract_edge(g, j)
            if isinstance(image, NonSimple):
                continue
            out.add_graph(image, coeff * (-1) ** j)
    return out


def _split_vertex(
    g: SimpleGraph, v: int, moved: Sequence[int]
) -> SimpleGraph:
    """Split vertex v: edge positions in ``moved`` are redirected to a new
    vertex, joined to v by a new first edge."""
    w = g.n
    edges: list[tuple[int, int]] = [(v, w)]
    moved_set = set(moved)
    for i, (a, b) in enumerate(g.edges):
        if i in moved_set:
            a, b = (w if a == v else a), (w if b == v else b)
        edges.append((a, b))
    return build_graph(g.n + 1, edges)


def apply_delta0(x: FormalSum) -> FormalSum:
    """Vertex splitting: each vertex of valence >= 4, each unordered
    distribution of its edges into two blocks of size >= 2."""
    out = FormalSum()
    for g, coeff in _terms(x):
        for v in range(g.n):
            incident = [i for i, e in enumerate(g.edges) if v in e]
            m = len(incident)
            if m < 4:
                continue
            # unordered blocks: the first incident edge stays with v
            anchor, rest = incident[0], incident[1:]
            for size in range(2, m - 1):
                for moved in combinations(rest, size):
                    out.add_graph(_split_vertex(g, v, moved), coeff)
    return out


def apply_nabla(x: FormalSum) -> FormalSum:
    """Add one edge in all possible ways (new edge first)."""
    out = FormalSum()
    for g, coeff in _terms(x):
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if not g.has_edge(u, v):
                    child = add_edge(g, u, v)
                    out.add_graph(child, coeff)
    return out


def _reattachments(g: SimpleGraph, v: int):
    """All legal reassignments of v's dangling edge-ends after deleting v.

    Yields full edge lists (original positions preserved).  A dangling end
    of edge (v, w) may go to any surviving vertex t with t != w, (t, w)
    not an existing edge, and no two reassigned ends forming equal pairs.
    """
    incident = [(i, (e[0] if e[1] == v else e[1])) for i, e in enumerate(g.edges) if v in e]
    survivors = [u for u in range(g.n) if u != v]
    fixed_edges = {e for e in g.edges if v not in e}

    def rec(idx: int, chosen: dict[int, int], used: set[tuple[int, int]]):
        if idx == len(incident):
            yield dict(chosen)
            return
        pos, w = incident[idx]
        for t in survivors:
            if t == w:
                continue
            pair = (t, w) if t < w else (w, t)
            if pair in fixed_edges or pair in used:
                continue
            chosen[pos] = t
            used.add(pair)
            yield from rec(idx + 1, chosen, used)
            used.discard(pair)
            del chosen[pos]

    yield from rec(0, {}, set())


def apply_D(x: FormalSum) -> FormalSum:
    """Remove one vertex and reconnect its edges in all legal ways, with
    weight (-1)^(deg v + 1) / 2 for the removal of vertex v.

    Output classes may be disconnected; loop order rises by one while the
    edge count is unchanged.
    """
    out = FormalSum()
    for g, coeff in _terms(x):
        for v in range(g.n):
            weight = Fraction((-1) ** (g.degree(v) + 1), 2)
            relabel = [u if u < v else u - 1 for u in range(g.n)]
            for assignment in _reattachments(g, v):
                edges = []
                for i, (a, b) in enumerate(g.edges):
                    if i in assignment:
                        w = b if a == v else a
                        a, b = assignment[i], w
                    edges.append((relabel[a], relabel[b]))
                out.add_graph(build_graph(g.n - 1, edges), coeff * weight)
    return out


def component_count(key: bytes) -> int:
    return len(component_masks(graph6_decode(key)))


def apply_pi(x: FormalSum) -> FormalSum:
    """Project away all disconnected classes."""
    out = FormalSum()
    for key, coeff in x:
        if component_count(key) <= 1:
            out.add_term(key, coeff)
    return out


def apply_Dbar(x: FormalSum) -> FormalSum:
    return apply_pi(apply_D(x))


def apply_delta_k(k: int, x: FormalSum) -> FormalSum:
    """delta_k = (k-1)/k! * ad_Dbar^(k-1)(nabla), ad_Dbar(X) = Dbar X - X Dbar."""
    if k < 2:
        raise ValueError("delta_k requires k >= 2")

    def ad(op: Operator) -> Operator:
        return lambda y: apply_Dbar(op(y)) - op(apply_Dbar(y))

    op: Operator = apply_nabla
    for _ in range(k - 1):
        op = ad(op)
    return op(x).scaled(Fraction(k - 1, factorial(k)))


def aut_order(key: bytes) -> int:
    g = graph6_decode(key)
    cf = canonical_form(g)
    return aut_group_order(g.n, cf.aut_generators)


def pairing(x: FormalSum, y: FormalSum) -> Fraction:
    """Automorphism-weighted pairing: <gamma, gamma> = |Aut(gamma)| on
    classes, extended bilinearly.  With this normalization the vertex
    splitting delta0 is exactly adjoint to the edge contraction d."""
    total = Fraction(0)
    for key, coeff in x:
        other = y.coefficient(key)
        if other:
            total += coeff * other * aut_order(key)
    return total


# ---------------------------------------------------------------------------
# identity harness

IDENTITIES: dict[str, Callable[[FormalSum], FormalSum]] = {
    "square_zero": lambda x: (
        apply_delta0(apply_delta0(x))
        + apply_delta0(apply_nabla(x))
        + apply_nabla(apply_delta0(x))
        + apply_nabla(apply_nabla(x))
    ),
    "nabla_squared": lambda x: apply_nabla(apply_nabla(x)),
    "delta0_D": lambda x: (
        apply_delta0(apply_D(x)) - apply_D(apply_delta0(x)) - apply_nabla(x)
    ),
    "D_squared": lambda x: apply_D(apply_D(x)),
    "nabla_D": lambda x: apply_nabla(apply_D(x)) + apply_D(apply_nabla(x)),
    "Dbar_squared": lambda x: apply_Dbar(apply_Dbar(x)),
    "nabla_Dbar": lambda x: (
        apply_nabla(apply_Dbar(x)) + apply_Dbar(apply_nabla(x))
    ),
    "delta3": lambda x: apply_delta_k(3, x),
    "delta4": lambda x: apply_delta_k(4, x),
}


def identity_suite(name: str, sample_keys: Sequence[bytes]) -> dict:
    """Evaluate a named identity (must vanish) on each sample class."""
    check = IDENTITIES[name]
    failures = []
    for key in sample_keys:
        x = FormalSum()
        x.add_term(key, 1)
        result = check(x)
        if not result.is_zero():
            failures.append((key.decode("ascii", "replace"), repr(result)))
    return {
        "identity": name,
        "samples": len(sample_keys),
        "passed": len(sample_keys) - len(failures),
        "failures": failures,
    }
