"""The fixed test corpus of small LRBs, built on demand and cached."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import networkx as nx

from .constructions import (Quiver, boolean_lattice, chain_lattice, complex_sign_monoid,
                            free_lrb, free_partially_commutative, karnofsky_rhodes,
                            quiver_lrb, real_face_monoid_from_covectors,
                            real_face_monoid_from_normals, rhodes_expansion,
                            truncated_boolean_lattice)

THREE_LINES = ((0, 1), (1, -1), (1, 1))
THREE_LINES_COVECTORS = ("000", "+++", "0++", "-++", "-+0", "-+-", "-0-",
                         "---", "0--", "+--", "+-0", "+-+", "+0+")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    monoid: object
    graph: object = None        # set for free partially commutative entries
    quiver: object = None       # set for quiver LRBs


def small_graphs(max_nodes=4, min_nodes=1):
    """Graphs up to isomorphism, from the networkx atlas."""
    return [G for G in nx.graph_atlas_g() if min_nodes <= G.number_of_nodes() <= max_nodes]


def graph_name(G):
    edges = ",".join(f"{u}{v}" for u, v in sorted(tuple(sorted(e)) for e in G.edges))
    return f"B(n{G.number_of_nodes()}:{edges or '-'})"


def path_quiver(n):
    verts = [str(i) for i in range(1, n + 1)]
    arrows = [(verts[i], verts[i + 1], "abcdefgh"[i]) for i in range(n - 1)]
    return Quiver.build(verts, arrows)


@lru_cache(maxsize=None)
def corpus():
    out = [
        CorpusEntry("sign", real_face_monoid_from_covectors(["0", "+", "-"])),
        CorpusEntry("S", complex_sign_monoid(1)),
        CorpusEntry("F1", free_lrb("a")),
        CorpusEntry("F2", free_lrb("ab")),
        CorpusEntry("F3", free_lrb("abc")),
    ]
    for G in small_graphs():
        out.append(CorpusEntry(graph_name(G), free_partially_commutative(G), graph=G))
    out += [
        CorpusEntry("KR(P{a,b})", karnofsky_rhodes(boolean_lattice("ab"),
                                                   {"a": "{a}", "b": "{b}"})),
        CorpusEntry("KR(L3)", karnofsky_rhodes(truncated_boolean_lattice(3),
                                               {"1": "{1}", "2": "{2}", "3": "{3}"})),
        CorpusEntry("Rhodes(3-chain)", rhodes_expansion(chain_lattice(3))),
    ]
    for n in (2, 3):
        Q = path_quiver(n)
        out.append(CorpusEntry(f"quiver(A{n})", quiver_lrb(Q), quiver=Q))
    out.append(CorpusEntry("three-lines", real_face_monoid_from_normals(THREE_LINES)))
    return tuple(out)


def by_name(name):
    for entry in corpus():
        if entry.name == name:
            return entry
    raise KeyError(name)
