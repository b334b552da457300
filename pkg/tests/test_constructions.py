import math
from itertools import permutations

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from lrbtools import errors
from lrbtools.constructions import (Quiver, acyclic_orientations, boolean_lattice, chain_lattice,
                                    complex_face_monoid_from_covectors, complex_sign_monoid,
                                    direct_product, feasible_sign_vectors, fpc_word_value,
                                    free_lrb, free_partially_commutative, generated_submonoid,
                                    karnofsky_rhodes, lattice_as_lrb, quiver_lrb,
                                    real_face_monoid_from_covectors,
                                    real_face_monoid_from_normals, rhodes_expansion,
                                    truncated_boolean_lattice)
from lrbtools.core import is_isomorphic, lambda_chain_length, support_lattice
from lrbtools.corpus import THREE_LINES, THREE_LINES_COVECTORS, corpus, path_quiver

from conftest import small_graphs


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_free_lrb_size(n):
    assert free_lrb("abcd"[:n]).size == sum(math.perm(n, k) for k in range(n + 1))


def test_free_lrb_caps():
    with pytest.raises(errors.AlphabetTooLarge):
        free_lrb("abcdefgh", max_size=1000)
    with pytest.raises(errors.InputError):
        free_lrb("aa")


def test_free_lrb_product():
    F = free_lrb("abc")
    assert F.names[F.mul(F.index("ba"), F.index("cab"))] == "bac"


@pytest.mark.parametrize("G, size", [
    (nx.empty_graph(3), 16),           # no commutation: free LRB
    (nx.complete_graph(3), 8),         # full commutation: free semilattice
    (nx.cycle_graph(4), 25),
])
def test_fpc_sizes(G, size):
    assert free_partially_commutative(G).size == size


def test_fpc_extremes_are_isomorphic_to_known_monoids():
    assert is_isomorphic(free_partially_commutative(nx.empty_graph(3)), free_lrb("012"))
    assert is_isomorphic(free_partially_commutative(nx.complete_graph(3)),
                         lattice_as_lrb(boolean_lattice("abc")))


def test_fpc_names_avoid_identity_clash():
    G = nx.path_graph([1, 2, 3])
    B = free_partially_commutative(G)
    assert B.names[B.identity] == "()"
    assert len(set(B.names)) == B.size


def test_acyclic_orientation_count_is_chromatic_value():
    # number of acyclic orientations = |chi_G(-1)|
    assert len(acyclic_orientations(range(5), list(nx.path_graph(5).edges))) == 16
    assert len(acyclic_orientations(range(4), list(nx.cycle_graph(4).edges))) == 14
    assert len(acyclic_orientations(range(4), list(nx.complete_graph(4).edges))) == 24


def test_three_lines_faces():
    A = real_face_monoid_from_normals(THREE_LINES)
    assert sorted(A.names) == sorted(THREE_LINES_COVECTORS)
    assert sorted(feasible_sign_vectors(THREE_LINES)) == sorted(THREE_LINES_COVECTORS)
    assert A.names[A.mul(A.index("0++"), A.index("-0-"))] == "-++"
    assert A.names[A.mul(A.index("+-0"), A.index("+++"))] == "+-+"


def test_arrangement_hyperplane_cap():
    normals = [(1, i) for i in range(11)]
    with pytest.raises(errors.TooManyHyperplanes):
        real_face_monoid_from_normals(normals)


def test_covector_closure_is_checked():
    with pytest.raises(errors.LrbError):
        real_face_monoid_from_covectors(["00", "+0", "0+"])


def test_complex_sign_monoid():
    assert complex_sign_monoid(1).size == 5
    assert complex_sign_monoid(2).size == 25
    S = complex_face_monoid_from_covectors(["0", "+", "-", "i", "j"])
    assert is_isomorphic(S, complex_sign_monoid(1))


def test_lattices():
    assert boolean_lattice("abc").size == 8
    L3 = truncated_boolean_lattice(3)
    assert L3.size == 5
    assert chain_lattice(3).names == ("1", "x1", "0")


def test_karnofsky_rhodes_of_truncated_lattice():
    K = karnofsky_rhodes(truncated_boolean_lattice(3), {"1": "{1}", "2": "{2}", "3": "{3}"})
    assert K.size == 10
    assert support_lattice(K).count == 5


def test_karnofsky_rhodes_requires_generation():
    with pytest.raises(errors.NotGenerating):
        karnofsky_rhodes(boolean_lattice("ab"), {"a": "{a}"})


def test_rhodes_expansion_of_chain():
    R = rhodes_expansion(chain_lattice(3))
    assert R.size == 4
    assert lambda_chain_length(support_lattice(R)) == 2


def test_quiver_lrb_of_a3():
    Q = path_quiver(3)
    B = quiver_lrb(Q)
    assert sorted(B.names) == sorted(["e1", "a", "e2", "ab", "b", "e3"])
    assert B.names[B.identity] == "e1"
    assert B.names[B.mul(B.index("a"), B.index("b"))] == "ab"
    assert B.names[B.mul(B.index("b"), B.index("a"))] == "b"


def test_quiver_validation():
    with pytest.raises(errors.NotAcyclic):
        Quiver.build("12", [("1", "2", "a"), ("2", "1", "b")])
    with pytest.raises(errors.BadOrder):
        Quiver.build("12", [("1", "2", "a")], order="21")
    with pytest.raises(errors.InputError):
        Quiver.build("12", [("1", "2", "a"), ("1", "2", "a")])


def test_direct_product_and_submonoid():
    sign = real_face_monoid_from_covectors(["0", "+", "-"])
    P = direct_product(sign, sign)
    assert P.size == 9
    assert is_isomorphic(P, real_face_monoid_from_covectors(
        [a + b for a in "0+-" for b in "0+-"]))
    sub = generated_submonoid(free_lrb("abc"), ["a", "b"])
    assert is_isomorphic(sub, free_lrb("ab"))


def test_corpus_shape():
    entries = corpus()
    assert len(entries) == 29
    assert len({e.name for e in entries}) == 29
    assert sum(1 for e in entries if e.graph is not None) == 18


# ----------------------------------------------------------- word problem

@given(small_graphs(max_nodes=4), st.data())
def test_fpc_word_problem(G, data):
    """Multiplying letters in the monoid matches the word rule."""
    B = free_partially_commutative(G)
    V = sorted(G.nodes)
    word = data.draw(st.lists(st.sampled_from(V), max_size=6)) if V else []
    x = B.identity
    for v in word:
        x = B.mul(x, B.index(str(v)))
    W, arcs = fpc_word_value(G, word)
    # the canonical name is a topological order of the orientation
    name = B.names[x]
    letters = [] if x == B.identity else list(name.replace(".", ""))
    assert set(map(int, letters)) == set(W)
    pos = {int(c): i for i, c in enumerate(letters)}
    assert all(pos[a] < pos[b] for a, b in arcs)


@pytest.mark.parametrize("normals", [
    [(1, 0), (0, 1), (1, -1)],
    [(1, -1, 0), (1, 0, -1), (0, 1, -1)],
])
def test_other_three_hyperplane_arrangements(normals):
    A = real_face_monoid_from_normals(normals)
    assert A.size == 13
    assert support_lattice(A).count == 5


@pytest.mark.parametrize("normals", [
    [(1, 0)], [(1, 0), (0, 1)], [(1, 0, 0), (0, 1, 0), (1, 1, 1)], THREE_LINES,
])
def test_normals_agree_with_covector_route(normals):
    A = real_face_monoid_from_normals(normals)
    C = real_face_monoid_from_covectors(feasible_sign_vectors(normals))
    assert A.names == C.names and A.table == C.table
