"""Ext between simple modules of kB, the quiver, and global dimension.

Everything here goes through the order complex of ``B[X, Y)``: for X < Y,
``Ext^n(k_X, k_Y)`` is the reduced cohomology of that complex in degree
``n - 1``.  Complexes and their Betti vectors are cached on the monoid.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from networkx.utils import UnionFind

from . import errors
from .complexes import (LERAY_CAP, BettiVector, clique_complex, leray_number, order_complex,
                        reduced_betti)
from .core import (commutation_graph, content_label, interval_submonoid, is_geometric,
                   is_right_hereditary, lambda_chain_length, lattice_label, r_order,
                   support_lattice)
from .linalg import QQ


def lattice_labels(B, style="auto"):
    """Labels for lattice indices.

    ``ideal`` uses the least generator of the ideal (``B.a``); ``content``
    uses the maximal non-identity elements above X, which for free LRBs is
    the familiar subset label.  ``auto`` picks content labels when they are
    distinct and falls back to ideal labels otherwise.
    """
    L = support_lattice(B)
    ideal = tuple(lattice_label(B, X) for X in range(L.count))
    if style == "ideal":
        return ideal
    content = tuple(content_label(B, X) for X in range(L.count))
    if style == "content" or len(set(content)) == len(content):
        return content
    return ideal


def _interval_poset(B, X, Y):
    L = support_lattice(B)
    if not L.lt(X, Y):
        raise errors.NotStrictlyComparable(f"lattice element {X} is not strictly below {Y}",
                                           (X, Y))
    key = ("interval_poset", X, Y)
    P = B._memo.get(key)
    if P is None:
        sm = interval_submonoid(B, X, Y)
        elems = [e for e in sm.embed if e != sm.representative]
        P = B._memo[key] = r_order(B).subposet(elems)
    return P


def delta_complex(B, X, Y):
    """Order complex of ``B[X, Y)`` (the interval submonoid minus its identity)."""
    key = ("delta", X, Y)
    K = B._memo.get(key)
    if K is None:
        K = B._memo[key] = order_complex(_interval_poset(B, X, Y))
    return K


def delta_betti(B, X, Y, field=QQ):
    key = ("delta_betti", X, Y, field)
    b = B._memo.get(key)
    if b is None:
        b = B._memo[key] = reduced_betti(delta_complex(B, X, Y), field)
    return b


def component_count(B, X, Y):
    """Connected components of Delta(X, Y), by union-find on the Hasse diagram."""
    P = _interval_poset(B, X, Y)
    uf = UnionFind(range(P.count))
    for a, b in P.hasse:
        uf.union(a, b)
    return len({uf[i] for i in range(P.count)})


def ext_dims(B, X, Y, field=QQ, max_degree=None):
    """``[dim Ext^n(k_X, k_Y) for n = 0..max_degree]``."""
    L = support_lattice(B)
    if max_degree is None:
        max_degree = lambda_chain_length(L)
    out = [0] * (max_degree + 1)
    if X == Y:
        out[0] = 1
    elif L.lt(X, Y):
        b = delta_betti(B, X, Y, field)
        for n in range(1, max_degree + 1):
            out[n] = b[n - 1]
    return out


@dataclass(frozen=True)
class ExtTable:
    field: object
    max_degree: int
    labels: tuple
    entries: dict = field(repr=False)       # (X, Y, n) -> dim

    def dims(self, X, Y):
        return [self.entries.get((X, Y, n), 0) for n in range(self.max_degree + 1)]

    def to_csv(self):
        lines = ["X,Y,n,dim"]
        m = len(self.labels)
        for X in range(m):
            for Y in range(m):
                for n in range(self.max_degree + 1):
                    lines.append(f"{csv_field(self.labels[X])},{csv_field(self.labels[Y])},{n},"
                                 f"{self.entries.get((X, Y, n), 0)}")
        return "\n".join(lines) + "\n"


def csv_field(text):
    return '"' + text.replace('"', '""') + '"' if ("," in text or '"' in text) else text


def ext_table(B, field=QQ, max_degree=None, labels="auto"):
    L = support_lattice(B)
    if max_degree is None:
        max_degree = lambda_chain_length(L)
    entries = {}
    for X in range(L.count):
        for Y in range(L.count):
            for n, d in enumerate(ext_dims(B, X, Y, field, max_degree)):
                if d:
                    entries[(X, Y, n)] = d
    return ExtTable(field, max_degree, lattice_labels(B, labels), entries)


# ------------------------------------------------------------------ quiver

@dataclass(frozen=True)
class QuiverDescription:
    labels: tuple
    arrows: dict                # (X, Y) -> multiplicity, nonzero only
    field: object = QQ
    top: int = None
    bottom: int = None

    def multiplicity(self, X, Y):
        return self.arrows.get((X, Y), 0)

    def arrow_count(self):
        return sum(self.arrows.values())

    def to_dot(self, name="quiver"):
        lines = [f"digraph {name} {{"]
        for i, lab in enumerate(self.labels):
            extra = ""
            if i == self.top:
                extra = ", top=true"
            elif i == self.bottom:
                extra = ", bottom=true"
            lines.append(f'  v{i} [label="{lab}"{extra}];')
        for (X, Y), m in sorted(self.arrows.items()):
            for _ in range(m):
                lines.append(f"  v{X} -> v{Y};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _description(B, arrows, field, labels):
    L = support_lattice(B)
    return QuiverDescription(lattice_labels(B, labels), arrows, field, L.top, L.bottom)


def quiver(B, field=QQ, labels="auto"):
    """Arrows X -> Y counted as (components of Delta(X, Y)) - 1."""
    L = support_lattice(B)
    arrows = {}
    for X in range(L.count):
        for Y in range(L.count):
            if L.lt(X, Y):
                m = component_count(B, X, Y) - 1
                if m:
                    arrows[(X, Y)] = m
    return _description(B, arrows, field, labels)


def right_hereditary_quiver(B, labels="auto"):
    """Arrow counts from children of ``e_Y`` in the R-order (tree case)."""
    if not is_right_hereditary(B):
        raise errors.NotRightHereditary("R-order Hasse diagram is not a tree")
    L = support_lattice(B)
    P = r_order(B)
    arrows = {}
    for Y in range(L.count):
        children = P.lower_covers(L.reps[Y])
        for X in range(L.count):
            if L.lt(X, Y):
                m = sum(1 for c in children if L.le(X, L.sigma[c])) - 1
                if m > 0:
                    arrows[(X, Y)] = m
    return _description(B, arrows, QQ, labels)


def relation_counts(B, field=QQ):
    """``dim H~^1(Delta(X, Y))`` for every X < Y."""
    L = support_lattice(B)
    return {(X, Y): delta_betti(B, X, Y, field)[1]
            for X in range(L.count) for Y in range(L.count) if L.lt(X, Y)}


# -------------------------------------------------------------- dimensions

def _pair_dimension(B, X, Y, field):
    top = delta_betti(B, X, Y, field).top_degree()
    return top + 1 if top is not None and top >= 0 else 0


def proj_dimension(B, X, field=QQ):
    L = support_lattice(B)
    return max((_pair_dimension(B, X, Y, field) for Y in range(L.count) if L.lt(X, Y)),
               default=0)


def global_dimension(B, field=QQ):
    L = support_lattice(B)
    return max((proj_dimension(B, X, field) for X in range(L.count)), default=0)


@dataclass(frozen=True)
class BoundsReport:
    field: object
    gldim: int
    chain_bound: int
    leray_bound: int = None
    notice: str = None

    @property
    def within_chain_bound(self):
        return self.gldim <= self.chain_bound

    @property
    def within_leray_bound(self):
        return None if self.leray_bound is None else self.gldim <= self.leray_bound

    def to_dict(self):
        return {"field": str(self.field), "gldim": self.gldim,
                "chain_bound": self.chain_bound, "leray_bound": self.leray_bound,
                "gldim_le_chain_bound": self.within_chain_bound,
                "gldim_le_leray_bound": self.within_leray_bound,
                "notice": self.notice}


def bounds_report(B, field=QQ, leray_cap=LERAY_CAP):
    gd = global_dimension(B, field)
    chain = lambda_chain_length(support_lattice(B))
    if B.size > leray_cap:
        return BoundsReport(field, gd, chain, None,
                            f"Leray bound skipped: {B.size} elements exceeds cap {leray_cap}")
    lb = leray_number(order_complex(r_order(B)), field, cap=leray_cap)
    return BoundsReport(field, gd, chain, lb)


# --------------------------------------------------------- commutation graph

@dataclass(frozen=True)
class CommutationReport:
    delta: BettiVector
    clique: BettiVector
    vertices: tuple
    edges: tuple

    @property
    def agree(self):
        return self.delta.dims == self.clique.dims

    def to_dict(self):
        return {"delta_betti": list(self.delta.dims), "clique_betti": list(self.clique.dims),
                "agree": self.agree, "vertices": list(self.vertices),
                "edges": [list(e) for e in self.edges]}


def geometric_commutation_check(B, field=QQ):
    ok, witness = is_geometric(B)
    if not ok:
        a, b, c = witness
        raise errors.NotGeometric("up-set is not commutative",
                                  (B.names[a], B.names[b], B.names[c]))
    G = commutation_graph(B)
    L = support_lattice(B)
    return CommutationReport(
        delta_betti(B, L.bottom, L.top, field),
        reduced_betti(clique_complex(G), field),
        tuple(B.names[v] for v in sorted(G.nodes)),
        tuple(sorted((B.names[a], B.names[b]) for a, b in G.edges)))
