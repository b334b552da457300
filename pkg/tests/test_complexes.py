import networkx as nx
import pytest
from hypothesis import given

from lrbtools import errors
from lrbtools.complexes import (BettiVector, SimplicialComplex, boundary_squared_is_zero,
                                clique_complex, cross_cut_complex, is_chordal, leray_number,
                                order_complex, reduced_betti)
from lrbtools.constructions import boolean_lattice, free_lrb
from lrbtools.core import FinitePoset, r_order
from lrbtools.linalg import Field

from conftest import small_graphs


def sphere(d):
    """Boundary of the (d+1)-simplex."""
    verts = range(d + 2)
    return SimplicialComplex.from_simplices(verts, [[v for v in verts if v != w] for w in verts])


def test_faces_and_f_vector():
    K = SimplicialComplex.from_simplices("abc", [["a", "b"], ["b", "c"]])
    assert K.dimension == 1
    assert K.faces(-1) == [()]
    assert K.f_vector() == (1, 3, 2)
    assert K.euler_characteristic() == 1


def test_isolated_vertices_become_points():
    K = SimplicialComplex.from_simplices("abc", [["a", "b"]])
    assert reduced_betti(K).dims == (0, 1)


def test_empty_complex_has_reduced_class_in_degree_minus_one():
    K = SimplicialComplex.from_simplices([], [])
    assert reduced_betti(K).dims == (1,)
    assert reduced_betti(K)[-1] == 1


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_sphere_betti(d):
    b = reduced_betti(sphere(d))
    assert b.top_degree() == d and b[d] == 1 and sum(b.dims) == 1


def test_projective_plane_depends_on_field():
    # six-vertex triangulation of RP^2
    faces = [(0, 1, 3), (1, 3, 4), (1, 2, 4), (2, 4, 0), (2, 0, 3), (3, 4, 5), (4, 0, 5),
             (0, 1, 5), (1, 2, 5), (2, 3, 5)]
    K = SimplicialComplex.from_simplices(range(6), faces)
    assert reduced_betti(K).dims == ()
    assert reduced_betti(K, Field(2)).dims == (0, 0, 1, 1)


def test_betti_csv():
    assert BettiVector(Field(0), (0, 0, 2)).to_csv() == "degree,dimension\n-1,0\n0,0\n1,2\n"


def test_boundary_squared_zero_on_spheres():
    assert all(boundary_squared_is_zero(sphere(d)) for d in range(4))


def test_order_complex_of_boolean_lattice_interior():
    lat = boolean_lattice("abc")
    inner = [i for i in range(lat.size) if 0 < len(lat.names[i].strip("{}").split(",")) < 3
             and lat.names[i] != "{}"]
    P = FinitePoset.from_leq([lat.names[i] for i in inner],
                             [[bool(lat.leq[x, y]) for y in inner] for x in inner])
    # proper part of B_3 is a circle
    assert reduced_betti(order_complex(P)).dims == (0, 0, 1)


def test_order_complex_of_r_order_is_cone():
    K = order_complex(r_order(free_lrb("ab")))
    assert reduced_betti(K).dims == ()


def test_clique_complex_and_chordality():
    C5 = nx.cycle_graph(5)
    assert reduced_betti(clique_complex(C5)).dims == (0, 0, 1)
    ok, cycle = is_chordal(C5)
    assert not ok and len(cycle) == 5
    ok, order = is_chordal(nx.complete_graph(4))
    assert ok and sorted(order) == [0, 1, 2, 3]


def test_leray_of_complement_of_c6():
    G = nx.complement(nx.cycle_graph(6))
    K = clique_complex(G)
    assert reduced_betti(K).dims == (0, 0, 2)
    assert leray_number(K, fast=False, prune=False) == 2
    assert leray_number(K) == 2


def test_leray_cap():
    K = SimplicialComplex.from_simplices(range(5), [[i] for i in range(5)])
    with pytest.raises(errors.TooManyVertices):
        leray_number(K, cap=4)


def test_leray_non_flag():
    # hollow triangle: not flag, Leray number 2
    assert leray_number(sphere(1)) == 2
    assert leray_number(sphere(2)) == 3


def _poset(labels, pairs):
    idx = {a: i for i, a in enumerate(labels)}
    leq = [[i == j for j in range(len(labels))] for i in range(len(labels))]
    for a, b in pairs:
        leq[idx[a]][idx[b]] = True
    return FinitePoset.from_leq(labels, leq)


def test_cross_cut_complex():
    # z below x and y: cross-cut is an edge
    P = _poset("xyz", [("z", "x"), ("z", "y")])
    K = cross_cut_complex(P)
    assert sorted(K.vertices) == ["x", "y"] and K.dimension == 1
    # two incomparable lower bounds and no meet
    Q = _poset("xyuv", [("u", "x"), ("u", "y"), ("v", "x"), ("v", "y")])
    with pytest.raises(errors.MeetHypothesisFails):
        cross_cut_complex(Q)


@given(small_graphs(max_nodes=5))
def test_pruned_leray_matches_brute_force(G):
    K = clique_complex(G)
    brute = leray_number(K, fast=False, prune=False)
    assert leray_number(K) == brute
    assert (brute <= 1) == nx.is_chordal(G)


@given(small_graphs(max_nodes=6))
def test_chordal_agrees_with_networkx(G):
    ok, witness = is_chordal(G)
    assert ok == nx.is_chordal(G)
    if not ok:
        H = G.subgraph(witness)
        assert len(witness) >= 4 and all(d == 2 for _, d in H.degree)
