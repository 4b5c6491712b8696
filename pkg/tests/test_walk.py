from fractions import Fraction

import pytest

from moebius.dyadic import Dyadic
from moebius.band import parse_obj, hom_c_dim
from moebius.cluster import ClusterPt, object_of
from moebius.walk import (support, walk_of, minimal_walk, approximation,
                          hom_ct_dim, tau_dims, tau_dims_via_epsilon,
                          hom0_via_factoring, concrete_epsilon, shifted,
                          induced_support_map, factors_through_sink,
                          compose_basic_nonzero)
from moebius.errors import InCluster, NotBasic

T = ClusterPt
M = parse_obj
D = Dyadic


def grid_off(e=2):
    from moebius.checks import grid_off_cluster
    return grid_off_cluster(e)


def test_support_examples():
    assert support(M("M(1/4,3/4)")) == {T(0, 0), T(1, 0), T(1, 1)}
    assert support(M("M(1/2,1/2)")) == {T(0, 0)}
    assert support(M("M(0,1/2)")) == frozenset()


def test_walk_of_examples():
    w = walk_of(M("M(1/4,3/4)"))
    assert list(w.points()) == [T(2, 2), T(1, 1), T(0, 0), T(1, 0), T(2, 0)]
    assert [(str(v.rep[0]), str(v.rep[1])) for v in w.vertices] == [
        ("1/4", "-1/2"), ("0", "-1/2"), ("0", "0"), ("0", "1/2"), ("0", "3/4")]
    assert [v.role for v in w.vertices] == ["sink", "source", "through", "through", "sink"]

    w2 = walk_of(M("M(1/8,1/4)"))
    assert list(w2.points()) == [T(3, 2), T(2, 1), T(1, 1), T(0, 0), T(1, 3), T(2, 6)]
    assert [v.role for v in w2.vertices] == ["sink", "source", "through", "sink", "source", "sink"]

    w3 = walk_of(M("M(1/2,1/2)"))
    assert list(w3.points()) == [T(1, 2), T(0, 0), T(1, 0)]
    assert [v.role for v in w3.vertices] == ["sink", "source", "sink"]


def test_walk_in_cluster_errors():
    with pytest.raises(InCluster):
        walk_of(M("M(0,1/2)"))


def test_walk_json():
    data = walk_of(M("M(1/2,1/2)")).to_json()
    assert data[0] == {"pt": [1, 2], "rep": ["1/2", "0"], "role": "sink"}


def test_minimal_walk():
    assert minimal_walk(T(0, 0), T(0, 0)).length == 0
    w = minimal_walk(T(0, 0), T(1, 0))
    assert w.length == 1 and list(w.points()) == [T(0, 0), T(1, 0)]
    w = minimal_walk(T(2, 2), T(2, 0))
    assert w.length == 4
    assert list(w.points()) == [T(2, 2), T(1, 1), T(0, 0), T(1, 0), T(2, 0)]


def test_minimal_walk_symmetry():
    pts = [T(0, 0), T(1, 0), T(2, 2), T(2, 0), T(1, 3), T(3, 5)]
    for v in pts:
        for w in pts:
            a = minimal_walk(v, w)
            b = minimal_walk(w, v)
            assert a.length == b.length
            assert set(a.points()) == set(b.points())


def _bfs_distance(v, w, cap=16):
    from moebius.cluster import in_neighbors, out_neighbors
    frontier, seen, dist = {v}, {v}, 0
    while frontier and dist <= cap:
        if w in frontier:
            return dist
        frontier = {u for p in frontier
                    for u in (*in_neighbors(p), *out_neighbors(p))} - seen
        seen |= frontier
        dist += 1
    raise AssertionError("bfs cap hit")


def test_minimal_walk_length_is_graph_distance():
    pts = [T(0, 0)] + [T(n, m) for n in range(1, 4) for m in range(1 << (n + 1))]
    for v in pts:
        for w in pts:
            assert minimal_walk(v, w).length == _bfs_distance(v, w), (v, w)


def test_walks_nondegenerate():
    # composable consecutive steps (runs through a vertex) compose nonzero
    for x in grid_off():
        w = walk_of(x)
        for i in range(len(w.steps) - 1):
            if w.steps[i] != w.steps[i + 1]:
                continue
            if w.steps[i] == "v":
                lo, hi = w.vertices[i].rep, w.vertices[i + 2].rep
            else:
                lo, hi = w.vertices[i + 2].rep, w.vertices[i].rep
            assert lo[0] <= hi[0] and lo[1] <= hi[1]
            assert hi[1] - Dyadic(1) < lo[0] and hi[0] - Dyadic(1) < lo[1], (x, i)


def test_approximation_examples():
    a = approximation(M("M(1/4,3/4)"))
    assert list(a.sources) == [T(1, 1)]
    assert list(a.sinks) == [T(2, 2), T(2, 0)]
    a2 = approximation(M("M(1/8,1/4)"))
    assert list(a2.sources) == [T(2, 1), T(1, 3)]
    assert list(a2.sinks) == [T(3, 2), T(0, 0), T(2, 6)]
    a3 = approximation(M("M(1/2,1/2)"))
    assert list(a3.sources) == [T(0, 0)]
    assert list(a3.sinks) == [T(1, 2), T(1, 0)]


def test_approximation_balance_grid():
    for x in grid_off():
        a = approximation(x)
        firsts_b = sorted(r[0].as_fraction() for r in a.sink_reps)
        firsts_a = sorted([r[0].as_fraction() for r in a.source_reps] + [x.x.as_fraction()])
        assert firsts_a == firsts_b, x
        seconds_b = sorted(r[1].as_fraction() for r in a.sink_reps)
        seconds_a = sorted([r[1].as_fraction() for r in a.source_reps] + [x.y.as_fraction()])
        assert seconds_a == seconds_b, x


def test_hom_ct_examples():
    assert hom_ct_dim(M("M(1/8,1/4)"), M("M(1/4,3/4)")) == 1
    assert hom_ct_dim(M("M(-1/8,1/4)"), M("M(1/4,3/4)")) == 0
    assert hom_ct_dim(M("M(0,1/2)"), M("M(1/4,3/4)")) == 0
    assert hom_ct_dim(M("M(1/4,3/4)"), M("M(0,1/2)")) == 0
    assert hom_ct_dim(M("M(1/4,3/4)"), M("M(1/8,1/4)")) == 0


def test_support_is_walk_interior():
    for x in grid_off():
        w = walk_of(x)
        interior = set(w.points()) - {w.vertices[0].pt, w.vertices[-1].pt}
        assert support(x) == interior


def test_tau_dims_examples():
    x = M("M(1/4,3/4)")
    for s, want in [
        (T(1, 1), (1, 1, 0, 0, 1)),
        (T(0, 0), (1, 1, 1, 0, 0)),
        (T(2, 0), (0, 0, 1, 1, 0)),
    ]:
        td = tau_dims(s, x)
        assert (td.tau_inv, td.tau, td.rad, td.hom0, td.hom0_T1) == want
        assert td.alternating_sum == 0


def test_tau_dims_on_cluster_object():
    td = tau_dims(T(1, 0), M("M(0,1/2)"))
    assert (td.tau_inv, td.tau, td.rad, td.hom0, td.hom0_T1) == (0, 0, 0, 1, 0)
    td = tau_dims(T(0, 0), M("M(0,1/2)"))
    assert (td.tau_inv, td.tau, td.rad, td.hom0, td.hom0_T1) == (0, 0, 0, 0, 0)


def test_tau_dims_match_epsilon_oracles():
    pts = [T(0, 0)] + [T(1, m) for m in range(4)] + [T(2, m) for m in range(8)]
    for x in grid_off():
        for s in pts:
            td = tau_dims(s, x)
            ti, t, r = tau_dims_via_epsilon(s, x)
            assert (td.tau_inv, td.tau, td.rad) == (ti, t, r), (s, x)
            assert td.hom0 == hom0_via_factoring(s, x), (s, x)


def test_epsilon_halving_stability():
    sample = grid_off()[::7]
    pts = [T(0, 0), T(1, 1), T(2, 3)]
    for x in sample:
        for s in pts:
            eps = concrete_epsilon([object_of(s), x])
            for e in (eps, eps.half()):
                assert hom_ct_dim(shifted(s, e, e), x) == tau_dims(s, x).tau_inv


def test_concrete_epsilon():
    assert concrete_epsilon([]) == D(1, 2)
    assert concrete_epsilon([M("M(1/8,1/4)")]) == D(1, 5)


def test_induced_support_map():
    m = induced_support_map(M("M(1/8,1/4)"), M("M(1/4,3/4)"), Fraction(1))
    assert set(m) == {T(0, 0), T(1, 1)}
    assert all(v == 1 for v in m.values())
    ident = induced_support_map(M("M(1/8,1/4)"), M("M(1/8,1/4)"), Fraction(2))
    assert set(ident) == set(support(M("M(1/8,1/4)")))
    assert all(v == 2 for v in ident.values())
    with pytest.raises(NotBasic):
        induced_support_map(M("M(1/4,3/4)"), M("M(1/8,1/4)"), Fraction(1))


def test_approximation_covers_cluster_maps():
    pts = [T(0, 0)] + [T(n, m) for n in range(1, 4) for m in range(1 << (n + 1))]
    for x in grid_off():
        for s in pts:
            if hom_c_dim(object_of(s), x) == 1:
                assert factors_through_sink(s, x), (s, x)


def test_compose_basic_nonzero_blocked():
    # straight-through composite survives
    assert compose_basic_nonzero(M("M(1/8,1/4)"), M("M(3/16,1/2)"), M("M(1/4,3/4)"))


def test_ambient_translate_duality():
    # dim Hom(translate of S, X) = dim Hom(X, S) in the ambient category
    pts = [T(0, 0)] + [T(n, m) for n in range(1, 4) for m in range(1 << (n + 1))]
    for x in grid_off():
        for s in pts:
            eps = concrete_epsilon([object_of(s), x])
            lhs = hom_c_dim(shifted(s, eps, eps), x)
            rhs = hom_c_dim(x, object_of(s))
            assert lhs == rhs, (s, x)
