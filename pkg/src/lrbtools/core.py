"""Finite left regular bands: Cayley tables, support lattice, R-order.

Elements are dense indices ``0..n-1``.  The product of ``x`` and ``y`` is
``B.table[x][y]``.  Left ideals ``Ba`` are handled as boolean rows of a numpy
array; the support lattice is the set of distinct rows ordered by inclusion,
with ``1^ = B`` on top (Brown uses the opposite order; we do not).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import errors

DEFAULT_MAX_SIZE = 5000


@dataclass(frozen=True, eq=False)
class Lrb:
    """A finite left regular band given by its Cayley table."""

    table: tuple
    identity: int
    names: tuple
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def size(self):
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def __eq__(self, other):
        if not isinstance(other, Lrb):
            return NotImplemented
        return (self.identity == other.identity and self.names == other.names
                and self.table == other.table)

    def __hash__(self):
        h = self._memo.get("hash")
        if h is None:
            h = self._memo["hash"] = hash((self.identity, self.names, self.table))
        return h

    def mul(self, x, y):
        return self.table[x][y]

    def prod(self, elements):
        acc = self.identity
        for x in elements:
            acc = self.table[acc][x]
        return acc

    def index(self, name):
        lookup = self._memo.get("index")
        if lookup is None:
            lookup = self._memo["index"] = {n: i for i, n in enumerate(self.names)}
        return lookup[name]

    @property
    def array(self):
        arr = self._memo.get("array")
        if arr is None:
            arr = np.array(self.table, dtype=np.int64).reshape(self.size, self.size)
            arr.setflags(write=False)
            self._memo["array"] = arr
        return arr

    def __repr__(self):
        return f"Lrb(size={self.size}, identity={self.names[self.identity]!r})"


def validate_lrb(table, identity, names=None, max_size=DEFAULT_MAX_SIZE):
    """Check the monoid and left-regular-band axioms and wrap ``table``."""
    n = len(table)
    if n == 0:
        raise errors.NotSquare("empty table")
    if n > max_size:
        raise errors.TooLarge(f"{n} elements exceeds cap {max_size}")
    if any(len(row) != n for row in table):
        raise errors.NotSquare("table is not square")
    if not 0 <= identity < n:
        raise errors.BadIdentity(f"identity {identity} out of range", (identity,))
    T = np.asarray(table, dtype=np.int64)
    if T.min() < 0 or T.max() >= n:
        bad = np.argwhere((T < 0) | (T >= n))[0]
        raise errors.NotSquare("entry out of range", tuple(int(v) for v in bad))
    idx = np.arange(n)
    for x in range(n):
        if T[identity, x] != x or T[x, identity] != x:
            raise errors.BadIdentity(
                f"{identity} is not a two-sided identity (fails at {x})", (identity, x))
    diag = T[idx, idx]
    if (diag != idx).any():
        x = int(np.flatnonzero(diag != idx)[0])
        raise errors.NotIdempotent(f"x*x != x for x={x}", (x, x, x))
    # xyx == xy
    xyx = T[T, idx[:, None]]
    if (xyx != T).any():
        x, y = (int(v) for v in np.argwhere(xyx != T)[0])
        raise errors.NotLeftRegular(f"xyx != xy for x={x}, y={y}", (x, y, x))
    for x in range(n):
        lhs = T[T[x]]           # (xy)z over rows y, cols z
        rhs = T[x][T]           # x(yz)
        if (lhs != rhs).any():
            y, z = (int(v) for v in np.argwhere(lhs != rhs)[0])
            raise errors.NotAssociative(f"(xy)z != x(yz) for {(x, y, z)}", (x, y, z))
    if names is None:
        names = tuple(str(i) for i in range(n))
    names = tuple(str(s) for s in names)
    if len(names) != n:
        raise errors.InputError("names length does not match table")
    if len(set(names)) != n:
        raise errors.InputError("element names must be distinct")
    return Lrb(tuple(tuple(int(v) for v in row) for row in T), int(identity), names)


def relabel(B, order, check=False):
    """Return ``B`` with elements listed in ``order`` (a permutation of indices)."""
    pos = {old: new for new, old in enumerate(order)}
    table = [[pos[B.table[a][b]] for b in order] for a in order]
    names = [B.names[a] for a in order]
    if check:
        return validate_lrb(table, pos[B.identity], names)
    return Lrb(tuple(tuple(r) for r in table), pos[B.identity], tuple(names))


def canonical(B):
    """Sort elements by (depth below the identity in the R-order, name)."""
    depth = r_order(B).depth_below_top()
    order = sorted(range(B.size), key=lambda x: (depth[x], B.names[x]))
    return relabel(B, order)


# ---------------------------------------------------------------- posets

@dataclass(frozen=True, eq=False)
class FinitePoset:
    labels: tuple
    leq: np.ndarray
    hasse: tuple

    @classmethod
    def from_leq(cls, labels, leq):
        leq = np.asarray(leq, dtype=bool)
        n = len(labels)
        strict = leq & ~np.eye(n, dtype=bool)
        if n:
            through = (strict.astype(np.int32) @ strict.astype(np.int32)) > 0
            cover = strict & ~through
        else:
            cover = strict
        leq = leq.copy()
        leq.setflags(write=False)
        hasse = tuple((int(a), int(b)) for a, b in np.argwhere(cover))
        return cls(tuple(labels), leq, hasse)

    @property
    def count(self):
        return len(self.labels)

    def less(self, a, b):
        return a != b and bool(self.leq[a, b])

    def subposet(self, indices):
        indices = list(indices)
        return FinitePoset.from_leq([self.labels[i] for i in indices],
                                    self.leq[np.ix_(indices, indices)])

    def maximal(self):
        strict = self.leq & ~np.eye(self.count, dtype=bool)
        return [i for i in range(self.count) if not strict[i].any()]

    def minimal(self):
        strict = self.leq & ~np.eye(self.count, dtype=bool)
        return [i for i in range(self.count) if not strict[:, i].any()]

    def upper_covers(self, a):
        return [b for x, b in self.hasse if x == a]

    def lower_covers(self, b):
        return [a for a, y in self.hasse if y == b]

    def depth_below_top(self):
        """Longest chain length from each element up to a maximal element."""
        n = self.count
        strict = self.leq & ~np.eye(n, dtype=bool)
        depth = [0] * n
        # x < y implies y has strictly fewer upper bounds than x
        for i in sorted(range(n), key=lambda i: int(strict[i].sum())):
            ups = np.flatnonzero(strict[i])
            depth[i] = 1 + max((depth[u] for u in ups), default=-1)
        return depth

    def is_valid(self):
        L = self.leq
        n = self.count
        if not L[np.arange(n), np.arange(n)].all():
            return False
        if ((L & L.T) & ~np.eye(n, dtype=bool)).any():
            return False
        trans = (L.astype(np.int32) @ L.astype(np.int32)) > 0
        return not (trans & ~L).any()

    def to_dot(self, name="poset"):
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i, lab in enumerate(self.labels):
            lines.append(f'  n{i} [label="{lab}"];')
        for a, b in self.hasse:
            lines.append(f"  n{a} -> n{b} [arrowhead=none];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def r_order(B):
    """The R-order ``x <= y iff yx == x``; the identity is the maximum."""
    P = B._memo.get("r_order")
    if P is None:
        T = B.array
        n = B.size
        # leq[x, y] = (T[y, x] == x)
        leq = (T.T == np.arange(n)[:, None])
        P = B._memo["r_order"] = FinitePoset.from_leq(B.names, leq)
    return P


# ---------------------------------------------------------- support lattice

@dataclass(frozen=True, eq=False)
class SupportLattice:
    """Principal left ideals ``Ba`` ordered by inclusion.

    Indices are sorted by ideal size, so index order is a linear extension
    from the bottom (the minimal ideal) to the top (``B`` itself).
    """

    witness: tuple      # frozenset of element indices per lattice index
    sigma: tuple        # element -> lattice index
    meet: tuple
    leq: np.ndarray
    top: int
    bottom: int
    reps: tuple         # least element index with support X

    @property
    def count(self):
        return len(self.witness)

    def le(self, x, y):
        return bool(self.leq[x, y])

    def lt(self, x, y):
        return x != y and bool(self.leq[x, y])

    def fiber(self, x):
        return [b for b, s in enumerate(self.sigma) if s == x]

    def above(self, x):
        return [y for y in range(self.count) if self.leq[x, y]]

    def as_poset(self, labels=None):
        if labels is None:
            labels = tuple(range(self.count))
        return FinitePoset.from_leq(labels, self.leq)


def support_lattice(B):
    L = B._memo.get("lattice")
    if L is not None:
        return L
    n = B.size
    T = B.array
    member = np.zeros((n, n), dtype=bool)   # member[a, x]: x in Ba
    member[np.repeat(np.arange(n), n), T.T.ravel()] = True
    keys = {}
    for a in range(n):
        keys.setdefault(np.packbits(member[a]).tobytes(), a)
    firsts = sorted(keys.values(), key=lambda a: (int(member[a].sum()), a))
    ideal_of = {np.packbits(member[a]).tobytes(): i for i, a in enumerate(firsts)}
    sigma = tuple(ideal_of[np.packbits(member[a]).tobytes()] for a in range(n))
    rows = member[firsts]
    m = len(firsts)
    # X <= Y iff rows[X] subset of rows[Y]
    leq = ~((rows[:, None, :] & ~rows[None, :, :]).any(axis=2))
    leq.setflags(write=False)
    reps = [None] * m
    for b in range(n):
        if reps[sigma[b]] is None:
            reps[sigma[b]] = b
    meet = tuple(tuple(sigma[T[reps[x], reps[y]]] for y in range(m)) for x in range(m))
    witness = tuple(frozenset(int(v) for v in np.flatnonzero(r)) for r in rows)
    # index 0 is the minimal ideal: it is the unique smallest one
    L = SupportLattice(witness, sigma, meet, leq, sigma[B.identity], 0, tuple(reps))
    B._memo["lattice"] = L
    return L


def lattice_label(B, X):
    """Label a lattice element by its witness ideal ``B.a``, ``a`` the least representative."""
    return "B." + B.names[support_lattice(B).reps[X]]


def content_label(B, X):
    """Maximal elements of ``B - {1}`` lying over ``X``; for F(A) this is the content."""
    L = support_lattice(B)
    maxes = maximal_nonidentity(B) if B.size > 1 else []
    names = sorted(B.names[m] for m in maxes if L.le(X, L.sigma[m]))
    return "{" + ",".join(names) + "}" if names else "\u2205"


def lambda_chain_length(L):
    """Length (number of covers) of the longest chain in the lattice."""
    height = [0] * L.count
    for y in range(L.count):   # index order is a linear extension
        below = [x for x in range(y) if L.lt(x, y)]
        height[y] = 1 + max((height[x] for x in below), default=-1)
    return max(height)


def lift_chain(B, chain):
    """Lift a strict chain ``X_0 < ... < X_n`` of the lattice to ``b_0 < ... < b_n`` in B."""
    L = support_lattice(B)
    for x, y in zip(chain, chain[1:]):
        if not L.lt(x, y):
            raise errors.NotStrictlyComparable(f"{x} is not below {y}", (x, y))
    a = [L.reps[x] for x in chain]
    out = []
    for i in range(len(chain)):
        out.append(B.prod(reversed(a[i:])))
    return out


# ------------------------------------------------------------- submonoids

@dataclass(frozen=True)
class SubmonoidMap:
    sub: Lrb
    embed: tuple
    representative: int = None


def restrict(B, elements, identity):
    """Restrict ``B`` to a closed subset containing ``identity`` (used as local identity)."""
    elements = sorted(elements)
    pos = {e: i for i, e in enumerate(elements)}
    table = []
    for a in elements:
        row = []
        for b in elements:
            ab = B.table[a][b]
            if ab not in pos:
                raise errors.NotClosed("subset not closed under product", (a, b))
            row.append(pos[ab])
        table.append(tuple(row))
    sub = Lrb(tuple(table), pos[identity], tuple(B.names[e] for e in elements))
    return SubmonoidMap(sub, tuple(elements), identity)


def interval_submonoid(B, X, Y, rep=None):
    """``B[X, Y] = {ab : sigma(ab) >= X}`` with identity ``a``, ``sigma(a) = Y``."""
    L = support_lattice(B)
    if not L.le(X, Y):
        raise errors.NotComparable(f"lattice element {X} is not below {Y}", (X, Y))
    a = L.reps[Y] if rep is None else rep
    if L.sigma[a] != Y:
        raise errors.InputError(f"representative {a} does not have support {Y}", (a, Y))
    elems = {B.table[a][b] for b in range(B.size)
             if L.le(X, L.sigma[B.table[a][b]])}
    return restrict(B, elems, a)


def submonoid_generated(B, gens):
    seen = {B.identity}
    frontier = [B.identity]
    gens = list(dict.fromkeys(gens))
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = B.table[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return restrict(B, seen, B.identity)


def up_set(B, a):
    return [b for b in range(B.size) if B.table[b][a] == a]


# ------------------------------------------------------------- predicates

def is_geometric(B):
    """Return ``(True, None)`` or ``(False, (a, b, c))`` with b, c >= a not commuting."""
    T = B.table
    for a in range(B.size):
        ups = up_set(B, a)
        for i, b in enumerate(ups):
            for c in ups[i + 1:]:
                if T[b][c] != T[c][b]:
                    return False, (a, b, c)
    return True, None


def is_right_hereditary(B):
    P = r_order(B)
    ncov = [0] * B.size
    for a, _ in P.hasse:
        ncov[a] += 1
    return all(ncov[x] == 1 for x in range(B.size) if x != B.identity)


def maximal_nonidentity(B):
    P = r_order(B)
    return sorted(a for a, b in P.hasse if b == B.identity)


def commutation_graph(B):
    import networkx as nx
    if B.size == 1:
        raise errors.TrivialMonoid("commutation graph of the trivial monoid")
    verts = maximal_nonidentity(B)
    G = nx.Graph()
    for v in verts:
        G.add_node(v, name=B.names[v])
    for i, a in enumerate(verts):
        for b in verts[i + 1:]:
            if B.table[a][b] == B.table[b][a]:
                G.add_edge(a, b)
    return G


def is_commutative(B):
    T = B.array
    return bool((T == T.T).all())


# ------------------------------------------------------------ isomorphism

def _generators(B):
    """A small generating set: irreducible elements, then greedy additions."""
    T = B.table
    n = B.size
    prods = set()
    for x in range(n):
        for y in range(n):
            z = T[x][y]
            if z != x and z != y:
                prods.add(z)
    gens = [x for x in range(n) if x != B.identity and x not in prods]
    closure = set(submonoid_generated(B, gens).embed) if gens else {B.identity}
    for x in range(n):
        if x not in closure:
            gens.append(x)
            closure = set(submonoid_generated(B, gens).embed)
    return gens


def _invariant(B, x):
    L = support_lattice(B)
    P = r_order(B)
    return (len(L.witness[L.sigma[x]]), int(P.leq[x].sum()), int(P.leq[:, x].sum()),
            sum(1 for y in range(B.size) if B.table[x][y] == B.table[y][x]))


def find_isomorphism(B1, B2):
    """Return a list ``phi`` with ``phi[x]`` the image of x, or None."""
    if B1.size != B2.size:
        return None
    inv1 = [_invariant(B1, x) for x in range(B1.size)]
    inv2 = [_invariant(B2, x) for x in range(B2.size)]
    if sorted(inv1) != sorted(inv2):
        return None
    gens = _generators(B1)
    cands = [[y for y in range(B2.size) if inv2[y] == inv1[g]] for g in gens]

    def extend(assign):
        phi = {B1.identity: B2.identity}
        for g, h in zip(gens, assign):
            if phi.get(g, h) != h:
                return None
            phi[g] = h
        frontier = list(phi)
        while frontier:
            nxt = []
            for x in frontier:
                for g, h in zip(gens, assign):
                    y = B1.table[x][g]
                    img = B2.table[phi[x]][h]
                    if y in phi:
                        if phi[y] != img:
                            return None
                    else:
                        phi[y] = img
                        nxt.append(y)
            frontier = nxt
        return phi

    def search(k, assign):
        if k == len(gens):
            phi = extend(assign)
            if phi is None or len(phi) != B1.size or len(set(phi.values())) != B2.size:
                return None
            for x, y in product(range(B1.size), repeat=2):
                if phi[B1.table[x][y]] != B2.table[phi[x]][phi[y]]:
                    return None
            return [phi[x] for x in range(B1.size)]
        return None

    # partial consistency: images of the first k generators must generate
    # a submonoid of the right size
    def search_pruned(k, assign):
        if k:
            sub1 = submonoid_generated(B1, gens[:k]).sub.size
            sub2 = submonoid_generated(B2, assign).sub.size
            if sub1 != sub2:
                return None
        if k == len(gens):
            return search(k, assign)
        for c in cands[k]:
            if c in assign:
                continue
            res = search_pruned(k + 1, assign + [c])
            if res is not None:
                return res
        return None

    return search_pruned(0, [])


def is_isomorphic(B1, B2):
    return find_isomorphism(B1, B2) is not None


def support_law_violations(B):
    """Pairs breaking ``sigma(xy) = sigma(x) ^ sigma(y)`` or ``xy = x <=> sigma(y) >= sigma(x)``,
    plus pairs in the minimal ideal with ``xy != x``."""
    L = support_lattice(B)
    s, T = L.sigma, B.table
    bad = []
    for x in range(B.size):
        for y in range(B.size):
            xy = T[x][y]
            if s[xy] != L.meet[s[x]][s[y]]:
                bad.append(("meet", x, y))
            if (xy == x) != L.le(s[x], s[y]):
                bad.append(("absorb", x, y))
            if s[x] == L.bottom and s[y] == L.bottom and xy != x:
                bad.append(("left-zero", x, y))
    return bad
