"""Dual-side operators: gradings, adjointness, and the identity suite."""

from fractions import Fraction

import pytest

from graphcomplex import (
    FormalSum,
    apply_D,
    apply_Dbar,
    apply_d,
    apply_delta0,
    apply_delta_k,
    apply_nabla,
    apply_pi,
    build_basis,
    build_graph,
    canonical_form,
    differential_matrix,
    grade_range,
    graph6_decode,
    identity_suite,
    pairing,
    singleton,
)
from graphcomplex.graphs import component_masks, grading_of
from graphcomplex.operators import aut_order

from conftest import k4, k5, wheel


def all_basis_keys(max_loops: int, variant: str = "full") -> list[bytes]:
    keys: list[bytes] = []
    for g in range(3, max_loops + 1):
        for r in grade_range(g):
            keys += list(build_basis(g, r, variant).keys)
    return keys


def test_d_of_k4_is_zero():
    assert apply_d(singleton(k4())).is_zero()


def test_d_lowers_vertex_count():
    x = singleton(wheel(5))
    for key, _ in apply_d(x):
        g = graph6_decode(key)
        assert g.n == 5 and grading_of(g).loop_order == 5


def test_delta0_needs_valence_four():
    assert apply_delta0(singleton(k4())).is_zero()
    # K5 is itself a zero class, so its singleton is empty; the 5-wheel
    # is a nonzero class whose hub has valence 5
    assert singleton(k5()).is_zero()
    y = apply_delta0(singleton(wheel(5)))
    assert not y.is_zero()
    for key, _ in y:
        g = graph6_decode(key)
        assert g.n == 7 and g.k == 11


def test_nabla_raises_loop_order():
    x = singleton(wheel(5))
    y = apply_nabla(x)
    assert not y.is_zero()
    for key, _ in y:
        g = graph6_decode(key)
        assert grading_of(g).loop_order == grading_of(wheel(5)).loop_order + 1
        assert g.n == wheel(5).n


def test_D_of_five_wheel_vanishes_on_classes():
    # every D image of a (6 vertices, 10 edges) graph is K5, a zero class
    assert apply_D(singleton(wheel(5))).is_zero()


def test_D_keeps_edges_and_raises_loops():
    base = graph6_decode(build_basis(5, 7).keys[0])
    y = apply_D(singleton(base))
    assert not y.is_zero()
    for key, coeff in y:
        g = graph6_decode(key)
        assert g.n == base.n - 1
        assert g.k == base.k
        assert coeff.denominator in (1, 2)


def test_pi_projects_to_connected():
    base = singleton(graph6_decode(build_basis(5, 7).keys[0]))
    y = apply_D(base)
    projected = apply_pi(y)
    for key, _ in projected:
        assert len(component_masks(graph6_decode(key))) == 1
    disconnected = {
        key for key, _ in y if len(component_masks(graph6_decode(key))) > 1
    }
    for key in disconnected:
        assert projected.coefficient(key) == 0
    assert apply_Dbar(base) == projected


def test_delta_k_rejects_small_k():
    with pytest.raises(ValueError):
        apply_delta_k(1, singleton(k4()))


def test_pairing_is_aut_weighted_and_symmetric():
    x = singleton(k4())
    assert pairing(x, x) == aut_order(canonical_form(k4()).canon_key) == 24
    y = singleton(wheel(5), Fraction(1, 3))
    assert pairing(x, y) == 0
    z = singleton(wheel(5), 2)
    assert pairing(y, z) == pairing(z, y) == Fraction(2, 3) * 10


def delta0_matrix(source, target):
    """Matrix of delta0 from `source` (r vertices) into `target` (r+1)."""
    from graphcomplex.matrixops import SparseRationalMatrix

    m = SparseRationalMatrix(len(target), len(source))
    for col, key in enumerate(source.keys):
        image = apply_delta0(singleton(graph6_decode(key)))
        for ikey, coeff in image:
            row = target.index.get(ikey)
            if row is not None:
                m.add(row, col, coeff)
    return m


@pytest.mark.parametrize("g", [3, 4, 5])
def test_delta0_is_adjoint_to_d(g):
    """<delta0 a, b> = <a, d b> under the Aut-weighted pairing, checked as
    Delta[b', a] |Aut b'| == M[a, b'] |Aut a| on every grade pair."""
    rs = list(grade_range(g))
    for r in rs:
        if r - 1 < rs[0]:
            continue
        upper = build_basis(g, r)
        lower = build_basis(g, r - 1)
        if not len(upper) or not len(lower):
            continue
        m = differential_matrix(upper, lower)  # d: upper -> lower
        delta = delta0_matrix(lower, upper)  # delta0: lower -> upper
        for i, up_key in enumerate(upper.keys):
            for j, low_key in enumerate(lower.keys):
                lhs = delta.get(i, j) * aut_order(up_key)
                rhs = m.get(j, i) * aut_order(low_key)
                assert lhs == rhs, (g, r, up_key, low_key)


def test_identity_suite_loop_order_five():
    keys = all_basis_keys(5)
    assert keys  # non-vacuous: loop orders 3 and 5 contribute
    for name in ("square_zero", "nabla_squared", "delta0_D", "D_squared"):
        report = identity_suite(name, keys)
        assert not report["failures"], report
        assert report["passed"] == len(keys)


def test_biconnected_identities_loop_order_five():
    keys = all_basis_keys(5, "biconnected")
    for name in ("Dbar_squared", "delta3"):
        report = identity_suite(name, keys)
        assert not report["failures"], report


def test_identity_suite_detects_wrong_signs():
    """A deliberately mis-signed commutator must fail loudly."""
    key = build_basis(5, 6).keys[0]  # has a vertex of valence >= 4
    x = FormalSum()
    x.add_term(key, 1)
    wrong = apply_delta0(apply_D(x)) + apply_D(apply_delta0(x)) - apply_nabla(x)
    right = apply_delta0(apply_D(x)) - apply_D(apply_delta0(x)) - apply_nabla(x)
    assert right.is_zero()
    assert not wrong.is_zero()
