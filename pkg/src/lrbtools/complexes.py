"""Simplicial complexes and their reduced cohomology over exact fields.

Faces are sorted tuples of vertex indices.  Boundary matrices are laid out
with faces in lexicographic order, so every rank computation sees the same
matrix on every run.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx

from . import errors
from .linalg import QQ, ExactMatrix

LERAY_CAP = 16
CLIQUE_CAP = 200_000
FACE_CAP = 2_000_000


def _node_order(G):
    try:
        return sorted(G.nodes)
    except TypeError:
        return sorted(G.nodes, key=str)


def _maximal_sets(sets):
    """Inclusion-maximal members of a collection of frozensets."""
    uniq = sorted(set(sets), key=len, reverse=True)
    out = []
    for s in uniq:
        if not any(s <= t for t in out):
            out.append(s)
    return out


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    vertices: tuple
    facets: tuple
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_simplices(cls, vertices, simplices):
        """Complex on ``vertices`` generated by ``simplices`` (collections of labels).

        Vertices not covered by any simplex become isolated 0-simplices.
        """
        vertices = tuple(vertices)
        pos = {v: i for i, v in enumerate(vertices)}
        if len(pos) != len(vertices):
            raise errors.InputError("duplicate vertex label")
        sets = [frozenset(pos[v] for v in s) for s in simplices]
        covered = set().union(*sets) if sets else set()
        sets += [frozenset([i]) for i in range(len(vertices)) if i not in covered]
        facets = sorted(tuple(sorted(s)) for s in _maximal_sets(s for s in sets if s))
        return cls(vertices, tuple(facets))

    @property
    def dimension(self):
        return max((len(f) for f in self.facets), default=0) - 1

    def faces(self, k):
        """Sorted list of k-dimensional faces; ``faces(-1) == [()]``."""
        key = ("faces", k)
        out = self._memo.get(key)
        if out is None:
            if k == -1:
                out = [()]
            else:
                acc = set()
                for f in self.facets:
                    if len(f) > k:
                        acc.update(combinations(f, k + 1))
                        if len(acc) > FACE_CAP:
                            raise errors.TooLarge(f"more than {FACE_CAP} faces in dimension {k}")
                out = sorted(acc)
            self._memo[key] = out
        return out

    def f_vector(self):
        """Face counts ``(f_-1, f_0, ..., f_d)``."""
        return tuple(len(self.faces(k)) for k in range(-1, self.dimension + 1))

    def euler_characteristic(self):
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()[1:]))

    def is_simplex(self):
        return len(self.facets) <= 1

    def induced(self, indices):
        """``K[W]`` for a set of vertex indices ``W``."""
        W = sorted(set(indices))
        sW = set(W)
        sets = [frozenset(v for v in f if v in sW) for f in self.facets]
        return SimplicialComplex.from_simplices(
            [self.vertices[i] for i in W],
            [[self.vertices[i] for i in s] for s in _maximal_sets(s for s in sets if s)])

    def one_skeleton(self):
        G = nx.Graph()
        G.add_nodes_from(range(len(self.vertices)))
        G.add_edges_from(self.faces(1))
        return G

    def is_flag(self):
        """True iff the complex is the clique complex of its 1-skeleton."""
        cliques = {tuple(sorted(c)) for c in nx.find_cliques(self.one_skeleton())}
        return cliques == set(self.facets)

    def boundary(self, k):
        """Boundary matrix from k-faces to (k-1)-faces (rows are k-faces)."""
        lower = {f: i for i, f in enumerate(self.faces(k - 1))}
        rows = []
        for f in self.faces(k):
            rows.append({lower[f[:i] + f[i + 1:]]: (-1) ** i for i in range(len(f))})
        return ExactMatrix(len(rows), len(lower), rows)

    def to_dict(self):
        return {"vertices": [str(v) for v in self.vertices],
                "facets": [[str(self.vertices[i]) for i in f] for f in self.facets]}

    @classmethod
    def from_dict(cls, data):
        return cls.from_simplices(data["vertices"], data.get("facets", []))


@dataclass(frozen=True)
class BettiVector:
    """Reduced cohomology dimensions, ``dims[0]`` being degree -1.

    Trailing zeros are dropped, so a contractible complex has ``dims == ()``.
    """

    field: object
    dims: tuple

    def __getitem__(self, degree):
        i = degree + 1
        return self.dims[i] if 0 <= i < len(self.dims) else 0

    def top_degree(self):
        """Highest degree with nonzero cohomology, or None."""
        return len(self.dims) - 2 if self.dims else None

    def nonzero(self):
        return {i - 1: d for i, d in enumerate(self.dims) if d}

    def to_csv(self):
        lines = ["degree,dimension"]
        lines += [f"{i - 1},{d}" for i, d in enumerate(self.dims)]
        return "\n".join(lines) + "\n"


def boundary_ranks(K, field=QQ):
    """``ranks[k] = rank of boundary(k)`` for k = 0..dim; boundary(0) is the augmentation."""
    key = ("ranks", field)
    ranks = K._memo.get(key)
    if ranks is None:
        ranks = tuple(K.boundary(k).rank(field) for k in range(0, K.dimension + 1))
        K._memo[key] = ranks
    return ranks


def reduced_betti(K, field=QQ):
    """Reduced cohomology of K; equal in dimension to reduced homology over a field."""
    f = K.f_vector()
    r = boundary_ranks(K, field)
    dims = []
    for k in range(-1, K.dimension + 1):
        rk = r[k] if k >= 0 else 0
        rk1 = r[k + 1] if k + 1 < len(r) else 0
        dims.append(f[k + 1] - rk - rk1)
    while dims and dims[-1] == 0:
        dims.pop()
    return BettiVector(field, tuple(dims))


def boundary_squared_is_zero(K):
    for k in range(1, K.dimension + 1):
        if not (K.boundary(k) @ K.boundary(k - 1)).is_zero():
            return False
    return True


# ---------------------------------------------------------------- builders

def order_complex(P):
    """Chains of a FinitePoset; facets are the maximal chains."""
    if P.count == 0:
        return SimplicialComplex((), ())
    ups = {a: [] for a in range(P.count)}
    for a, b in P.hasse:
        ups[a].append(b)
    chains = []
    stack = [(m,) for m in P.minimal()]
    while stack:
        c = stack.pop()
        nxt = ups[c[-1]]
        if not nxt:
            chains.append(c)
        stack.extend(c + (b,) for b in nxt)
    return SimplicialComplex.from_simplices(P.labels, [[P.labels[i] for i in c] for c in chains])


def clique_complex(G, max_cliques=CLIQUE_CAP):
    verts = _node_order(G)
    cliques = []
    for c in nx.find_cliques(G):
        cliques.append(c)
        if len(cliques) > max_cliques:
            raise errors.TooManyCliques(f"more than {max_cliques} maximal cliques")
    return SimplicialComplex.from_simplices(verts, cliques)


def is_chordal(G):
    """``(True, elimination order)`` or ``(False, induced cycle of length >= 4)``."""
    H = G.copy()
    order = []
    while H.number_of_nodes():
        for v in _node_order(H):
            nb = list(H.neighbors(v))
            if all(H.has_edge(a, b) for a, b in combinations(nb, 2)):
                order.append(v)
                H.remove_node(v)
                break
        else:
            cycle = next(c for c in nx.chordless_cycles(H) if len(c) >= 4)
            return False, cycle
    return True, order


def cross_cut_complex(P):
    """Maximal elements of P, with a simplex for every subset that has a lower bound.

    Every such subset must have a meet in P; otherwise MeetHypothesisFails.
    """
    L = P.leq
    maxes = P.maximal()
    groups = [frozenset(m for m in maxes if L[p, m]) for p in range(P.count)]
    K = SimplicialComplex.from_simplices([P.labels[m] for m in maxes],
                                         [[P.labels[m] for m in g] for g in groups])
    for k in range(K.dimension + 1):
        for face in K.faces(k):
            S = [maxes[i] for i in face]
            lower = [p for p in range(P.count) if all(L[p, m] for m in S)]
            if not any(all(L[q, p] for q in lower) for p in lower):
                raise errors.MeetHypothesisFails(
                    "subset has lower bounds but no meet", tuple(P.labels[m] for m in S))
    return K


# ------------------------------------------------------------------ Leray

def _leray_from_betti(b):
    top = b.top_degree()
    return top + 1 if top is not None and top >= 0 else 0


def leray_number(K, field=QQ, cap=LERAY_CAP, fast=True, prune=True):
    """Least d with vanishing reduced cohomology in degrees >= d on every K[W].

    ``fast`` enables the simplex and chordal shortcuts.  ``prune`` skips K[W]
    that are cones, fold onto a smaller K[W], or are too low-dimensional to
    raise the running maximum.  With both off every K[W] is computed.
    """
    n = len(K.vertices)
    if n > cap:
        raise errors.TooManyVertices(f"{n} vertices exceeds Leray cap {cap}", (n,))
    if fast and K.is_simplex():
        return 0
    if fast and K.is_flag() and is_chordal(K.one_skeleton())[0]:
        return 1
    masks = [sum(1 << v for v in f) for f in K.facets]
    flag = prune and K.is_flag()
    if flag:
        nbhd = [1 << v for v in range(n)]
        for a, b in K.faces(1):
            nbhd[a] |= 1 << b
            nbhd[b] |= 1 << a
    best = 0
    ceiling = K.dimension + 1
    for W in range(1, 1 << n):
        if flag and _has_dominated_vertex(W, nbhd):
            continue            # K[W] folds onto K[W - u], visited separately
        restricted = _maximal_sets(frozenset(_bits(m & W)) for m in masks if m & W)
        if prune and frozenset.intersection(*restricted):
            continue            # a cone
        if prune and max(len(s) for s in restricted) <= best:
            continue            # dim K[W] + 1 cannot beat best
        sub = SimplicialComplex.from_simplices(
            [K.vertices[i] for i in _bits(W)],
            [[K.vertices[i] for i in s] for s in restricted])
        best = max(best, _leray_from_betti(reduced_betti(sub, field)))
        if prune and best == ceiling:
            break
    return best


def _has_dominated_vertex(W, nbhd):
    """Some u in W has its closed neighbourhood inside that of another v in W."""
    vs = _bits(W)
    for u in vs:
        nu = nbhd[u] & W
        for v in vs:
            if v != u and nu & ~nbhd[v] == 0:
                return True
    return False


def _bits(m):
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out
