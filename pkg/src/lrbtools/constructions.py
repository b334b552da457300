"""The zoo: free LRBs, face monoids, expansions of lattices, quiver LRBs.

Every constructor returns a validated :class:`~lrbtools.core.Lrb` in
canonical element order (depth below the identity, then name), so element
indices are reproducible across runs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product

import networkx as nx
import numpy as np

from . import errors
from .core import (DEFAULT_MAX_SIZE, Lrb, canonical, restrict, submonoid_generated,
                   support_lattice, validate_lrb)


def _identity_name(letters):
    # "1" unless a generator already uses it
    return "()" if "1" in {str(a) for a in letters} else "1"


def _join(parts):
    parts = [str(p) for p in parts]
    if all(len(p) == 1 for p in parts):
        return "".join(parts)
    return ".".join(parts)


def from_elements(elements, mul, identity, name=str, max_size=DEFAULT_MAX_SIZE):
    """Build an Lrb from hashable elements and a product function."""
    elements = list(elements)
    if len(elements) > max_size:
        raise errors.TooLarge(f"{len(elements)} elements exceeds cap {max_size}")
    index = {e: i for i, e in enumerate(elements)}
    table = []
    for a in elements:
        row = []
        for b in elements:
            c = mul(a, b)
            if c not in index:
                raise errors.NotClosed(f"{name(a)} * {name(b)} = {name(c)} is not an element",
                                       (name(a), name(b)))
            row.append(index[c])
        table.append(row)
    if identity not in index:
        raise errors.MissingIdentity(f"identity {name(identity)} missing")
    B = validate_lrb(table, index[identity], [name(e) for e in elements], max_size=max_size)
    return canonical(B)


# ------------------------------------------------------------ free LRBs

def _injective_word_count(n):
    return sum(math.perm(n, k) for k in range(n + 1))


def _dedupe(word):
    return tuple(dict.fromkeys(word))


def free_lrb(alphabet, max_size=DEFAULT_MAX_SIZE):
    alphabet = [str(a) for a in alphabet]
    if not alphabet or len(set(alphabet)) != len(alphabet):
        raise errors.InputError("alphabet must be nonempty with distinct letters")
    count = _injective_word_count(len(alphabet))
    if count > max_size:
        raise errors.AlphabetTooLarge(f"F({len(alphabet)}) has {count} elements, cap {max_size}")
    words = [w for k in range(len(alphabet) + 1) for w in permutations(alphabet, k)]
    empty = _identity_name(alphabet)
    return from_elements(words, lambda u, v: _dedupe(u + v), (),
                         name=lambda w: _join(w) if w else empty, max_size=max_size)


# ------------------------------------------- free partially commutative

def _complement_edges(G, W):
    W = sorted(W, key=str)
    return [(u, v) for i, u in enumerate(W) for v in W[i + 1:] if not G.has_edge(u, v)]


def acyclic_orientations(vertices, edges):
    """All acyclic orientations, as frozensets of arcs, by vertex elimination."""
    vertices = list(vertices)
    if not vertices:
        return [frozenset()]
    v, rest = vertices[-1], vertices[:-1]
    inner = [e for e in edges if v not in e]
    incident = [e for e in edges if v in e]
    out = []
    for base in acyclic_orientations(rest, inner):
        D = nx.DiGraph()
        D.add_nodes_from(rest)
        D.add_edges_from(base)
        reach = {u: nx.descendants(D, u) for u in rest}
        nbrs = [a if b == v else b for a, b in incident]
        for bits in product((0, 1), repeat=len(nbrs)):
            outs = [u for u, bit in zip(nbrs, bits) if bit]       # v -> u
            ins = [u for u, bit in zip(nbrs, bits) if not bit]   # u -> v
            # a cycle through v needs a path out -> in
            if any(w in reach[u] for u in outs for w in ins):
                continue
            arcs = set(base)
            arcs.update((v, u) for u in outs)
            arcs.update((u, v) for u in ins)
            out.append(frozenset(arcs))
    return out


def _topological_name(W, arcs, empty="1"):
    D = nx.DiGraph()
    D.add_nodes_from(W)
    D.add_edges_from(arcs)
    word = list(nx.lexicographical_topological_sort(D, key=str))
    return _join(word) if word else empty


def free_partially_commutative(G, max_size=DEFAULT_MAX_SIZE):
    """B(G): pairs (W, acyclic orientation of the complement graph on W)."""
    V = sorted(G.nodes, key=str)
    elements = []
    for k in range(len(V) + 1):
        for W in combinations(V, k):
            for arcs in acyclic_orientations(W, _complement_edges(G, W)):
                elements.append((frozenset(W), arcs))
                if len(elements) > max_size:
                    raise errors.TooLarge(f"B(G) exceeds cap {max_size}")

    def mul(x, y):
        W1, O1 = x
        W2, O2 = y
        new = W2 - W1
        arcs = set(O1)
        for a, b in _complement_edges(G, W1 | W2):
            if a in W1 and b in W1:
                continue
            for s, t in ((a, b), (b, a)):
                if s in W1 and t in new:
                    arcs.add((s, t))
                elif s in new and t in new and (s, t) in O2:
                    arcs.add((s, t))
        return (W1 | W2, frozenset(arcs))

    empty = _identity_name(V)
    return from_elements(elements, mul, (frozenset(), frozenset()),
                         name=lambda e: _topological_name(*e, empty=empty), max_size=max_size)


def fpc_word_value(G, word):
    """(support, orientation) of a word over the vertices, by the word rule."""
    W = frozenset(word)
    pos = {}
    for i, v in enumerate(word):
        pos.setdefault(v, i)
    arcs = frozenset((a, b) if pos[a] < pos[b] else (b, a)
                     for a, b in _complement_edges(G, W))
    return W, arcs


# ---------------------------------------------------------- sign vectors

REAL_SIGNS = "0+-"
COMPLEX_SIGNS = "0+-ij"
# Cayley table of the complex sign monoid, rows/cols in COMPLEX_SIGNS order
_S_TABLE = {
    "0": "0+-ij",
    "+": "+++ij",
    "-": "---ij",
    "i": "iiiii",
    "j": "jjjjj",
}


def compose_real(x, y):
    return "".join(a if a != "0" else b for a, b in zip(x, y))


def compose_complex(x, y):
    return "".join(_S_TABLE[a][COMPLEX_SIGNS.index(b)] for a, b in zip(x, y))


def _normalize_sign(v, alphabet):
    if isinstance(v, str):
        s = v.strip().strip("()")
    else:
        s = "".join({0: "0", 1: "+", -1: "-"}.get(e, str(e)) for e in v)
    if any(c not in alphabet for c in s):
        raise errors.InputError(f"sign vector {v!r} uses letters outside {alphabet!r}")
    return s


def _covector_monoid(covectors, alphabet, compose, max_size):
    vecs = list(dict.fromkeys(_normalize_sign(v, alphabet) for v in covectors))
    if not vecs:
        raise errors.MissingIdentity("no covectors given")
    n = len(vecs[0])
    if any(len(v) != n for v in vecs):
        raise errors.InputError("covectors have different lengths")
    zero = "0" * n
    if zero not in vecs:
        raise errors.MissingIdentity("the all-zero covector is required", (zero,))
    present = set(vecs)
    for x in vecs:
        for y in vecs:
            if compose(x, y) not in present:
                raise errors.NotClosed(f"{x} o {y} = {compose(x, y)} missing", (x, y))
    return from_elements(vecs, compose, zero, max_size=max_size)


def real_face_monoid_from_covectors(covectors, max_size=DEFAULT_MAX_SIZE):
    return _covector_monoid(covectors, REAL_SIGNS, compose_real, max_size)


def complex_face_monoid_from_covectors(covectors, max_size=DEFAULT_MAX_SIZE):
    return _covector_monoid(covectors, COMPLEX_SIGNS, compose_complex, max_size)


def complex_sign_monoid(n=1, max_size=DEFAULT_MAX_SIZE):
    if n < 1:
        raise errors.InputError("n must be at least 1")
    if 5 ** n > max_size:
        raise errors.TooLarge(f"5^{n} exceeds cap {max_size}")
    vecs = ["".join(t) for t in product(COMPLEX_SIGNS, repeat=n)]
    return from_elements(vecs, compose_complex, "0" * n, max_size=max_size)


# ------------------------------------------- faces from rational normals

def _as_fraction(v):
    if isinstance(v, str):
        return Fraction(v.strip())
    return Fraction(v)


def _primitive_int(row):
    den = 1
    for v in row:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in row]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


def nullspace(rows, d):
    """Basis (list of vectors) of ``{x in Q^d : r.x = 0 for r in rows}``."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(d):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(d) if c not in pivots]
    basis = []
    for fcol in free:
        x = [Fraction(0)] * d
        x[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -m[i][fcol]
        basis.append(x)
    return basis


def _strict_system_feasible(rows, k):
    """Fourier-Motzkin for homogeneous strict inequalities ``r.y > 0``."""
    system = set()
    for r in rows:
        p = _primitive_int(r)
        if not any(p):
            return False
        system.add(p)
    for j in range(k):
        pos = [r for r in system if r[j] > 0]
        neg = [r for r in system if r[j] < 0]
        nxt = {r for r in system if r[j] == 0}
        for p in pos:
            for q in neg:
                combo = tuple(-q[j] * a + p[j] * b for a, b in zip(p, q))
                combo = _primitive_int([Fraction(v) for v in combo])
                if not any(combo):
                    return False
                nxt.add(combo)
        system = nxt
    return not system


def sign_vector_feasible(normals, eps):
    """Is there x with sign(<h_i, x>) = eps_i for every i?"""
    d = len(normals[0])
    eq = [normals[i] for i, s in enumerate(eps) if s == "0"]
    basis = nullspace(eq, d)
    strict = []
    for h, s in zip(normals, eps):
        if s == "0":
            continue
        sign = 1 if s == "+" else -1
        strict.append([sign * sum(hi * bj for hi, bj in zip(h, b)) for b in basis])
    if not basis:
        return not strict
    return _strict_system_feasible(strict, len(basis))


def face_dimension(normals, eps):
    """Dimension of the span of the face: ``d - rank`` of the hyperplanes containing it."""
    d = len(normals[0])
    eq = [normals[i] for i, s in enumerate(eps) if s == "0"]
    return len(nullspace(eq, d))


def feasible_sign_vectors(normals, max_hyperplanes=10):
    normals = [[_as_fraction(v) for v in h] for h in normals]
    if not normals:
        raise errors.InputError("at least one normal is required")
    if len(normals) > max_hyperplanes:
        raise errors.TooManyHyperplanes(
            f"{len(normals)} hyperplanes: 3^{len(normals)} sign vectors exceeds the cap")
    d = len(normals[0])
    if any(len(h) != d for h in normals):
        raise errors.InputError("normals have different dimensions")
    if any(all(v == 0 for v in h) for h in normals):
        raise errors.InputError("zero normal vector")
    return ["".join(eps) for eps in product(REAL_SIGNS, repeat=len(normals))
            if sign_vector_feasible(normals, eps)]


def real_face_monoid_from_normals(normals, max_hyperplanes=10, max_size=DEFAULT_MAX_SIZE):
    return real_face_monoid_from_covectors(feasible_sign_vectors(normals, max_hyperplanes),
                                           max_size=max_size)


# ------------------------------------------------------------- lattices

@dataclass(frozen=True, eq=False)
class FiniteLattice:
    names: tuple
    leq: np.ndarray
    meet: tuple

    @classmethod
    def build(cls, names, leq, meet=None):
        names = tuple(str(x) for x in names)
        n = len(names)
        leq = np.array(leq, dtype=bool)
        if leq.shape != (n, n):
            raise errors.NotALattice("order relation has the wrong shape")
        if not leq.diagonal().all():
            raise errors.NotALattice("order is not reflexive")
        if ((leq & leq.T) & ~np.eye(n, dtype=bool)).any():
            raise errors.NotALattice("order is not antisymmetric")
        if (((leq.astype(int) @ leq.astype(int)) > 0) & ~leq).any():
            raise errors.NotALattice("order is not transitive")
        computed = []
        for x in range(n):
            row = []
            for y in range(n):
                lower = [z for z in range(n) if leq[z, x] and leq[z, y]]
                glb = [z for z in lower if all(leq[w, z] for w in lower)]
                if len(glb) != 1:
                    raise errors.NotALattice(f"{names[x]} and {names[y]} have no meet",
                                             (names[x], names[y]))
                row.append(glb[0])
            computed.append(tuple(row))
        if meet is not None and [list(r) for r in meet] != [list(r) for r in computed]:
            raise errors.NotALattice("meet table disagrees with the order")
        tops = [x for x in range(n) if leq[:, x].all()]
        if len(tops) != 1:
            raise errors.NotALattice("no top element")
        leq.setflags(write=False)
        return cls(names, leq, tuple(computed))

    @classmethod
    def from_cover_pairs(cls, names, pairs):
        """Order generated by ``(lower, upper)`` pairs of indices."""
        n = len(names)
        leq = np.eye(n, dtype=bool)
        for a, b in pairs:
            leq[a, b] = True
        while True:
            nxt = (leq.astype(int) @ leq.astype(int)) > 0
            if (nxt == leq).all():
                break
            leq = nxt
        return cls.build(names, leq)

    @property
    def size(self):
        return len(self.names)

    @property
    def top(self):
        return next(x for x in range(self.size) if self.leq[:, x].all())

    def index(self, name):
        return self.names.index(str(name))

    def lt(self, x, y):
        return x != y and bool(self.leq[x, y])


def boolean_lattice(letters):
    """Free semilattice P(A): subsets under reverse inclusion, product = union."""
    letters = [str(a) for a in letters]
    subsets = [frozenset(c) for k in range(len(letters) + 1)
               for c in combinations(letters, k)]
    names = ["{" + ",".join(sorted(s)) + "}" for s in subsets]
    leq = [[t <= s for t in subsets] for s in subsets]
    return FiniteLattice.build(names, leq)


def truncated_boolean_lattice(n):
    """L(n): P({1..n}) with all (n-1)-subsets identified with the full set."""
    letters = [str(i) for i in range(1, n + 1)]
    subsets = [frozenset(c) for k in range(max(n - 1, 0))
               for c in combinations(letters, k)]
    subsets.append(frozenset(letters))
    names = ["{" + ",".join(sorted(s)) + "}" for s in subsets]
    leq = [[t <= s for t in subsets] for s in subsets]
    return FiniteLattice.build(names, leq)


def chain_lattice(k, names=None):
    """Chain with ``k`` elements, listed from the top down."""
    if names is None:
        names = ["1"] + [f"x{i}" for i in range(1, k - 1)] + (["0"] if k > 1 else [])
    leq = [[i >= j for j in range(k)] for i in range(k)]
    return FiniteLattice.build(names, leq)


def lattice_of(B):
    """The support lattice of B as a FiniteLattice (labels ``B.a``)."""
    L = support_lattice(B)
    names = ["B." + B.names[r] for r in L.reps]
    return FiniteLattice.build(names, L.leq)


def lattice_as_lrb(lat):
    top = lat.top
    return from_elements(list(range(lat.size)), lambda x, y: lat.meet[x][y], top,
                         name=lambda x: lat.names[x])


# ----------------------------------------------------------- expansions

def karnofsky_rhodes(lat, gens, max_size=DEFAULT_MAX_SIZE):
    """Reduced words over ``gens`` (name -> lattice index) with product reduce(vw)."""
    gens = {str(a): (lat.index(v) if isinstance(v, str) else int(v)) for a, v in gens.items()}
    top = lat.top
    closure = {top}
    frontier = [top]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens.values():
                y = lat.meet[x][g]
                if y not in closure:
                    closure.add(y)
                    nxt.append(y)
        frontier = nxt
    if len(closure) != lat.size:
        missing = [lat.names[x] for x in range(lat.size) if x not in closure]
        raise errors.NotGenerating("generators do not generate the lattice", tuple(missing))

    letters = list(gens)

    def reduce(word):
        out = []
        v = top
        for a in word:
            w = lat.meet[v][gens[a]]
            if w != v:
                out.append(a)
                v = w
        return tuple(out)

    words = [()]
    frontier = [((), top)]
    while frontier:
        nxt = []
        for w, v in frontier:
            for a in letters:
                u = lat.meet[v][gens[a]]
                if u != v:
                    nxt.append((w + (a,), u))
        words.extend(w for w, _ in nxt)
        if len(words) > max_size:
            raise errors.TooLarge(f"expansion exceeds cap {max_size}")
        frontier = nxt
    empty = _identity_name(letters)
    return from_elements(words, lambda u, v: reduce(u + v), (),
                         name=lambda w: _join(w) if w else empty, max_size=max_size)


def rhodes_expansion(lat, max_size=DEFAULT_MAX_SIZE):
    """Chains of the lattice through the top, with ``X.Y = X u (min X)Y``."""
    top = lat.top
    chains = []
    stack = [(top,)]
    while stack:
        c = stack.pop()
        chains.append(c)
        if len(chains) > max_size:
            raise errors.TooLarge(f"Rhodes expansion exceeds cap {max_size}")
        for z in range(lat.size):
            if lat.lt(z, c[-1]):
                stack.append(c + (z,))

    def mul(x, y):
        out = list(x)
        m = x[-1]
        for v in y:
            z = lat.meet[m][v]
            if z != out[-1]:
                out.append(z)
        return tuple(out)

    return from_elements(chains, mul, (top,),
                         name=lambda c: ">".join(lat.names[v] for v in c), max_size=max_size)


# ------------------------------------------------------------- quivers

@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple        # (source, target, label)
    order: tuple         # total order on vertices, least first

    @classmethod
    def build(cls, vertices, arrows, order=None):
        vertices = tuple(str(v) for v in vertices)
        arrows = tuple((str(s), str(t), str(lab)) for s, t, lab in arrows)
        order = vertices if order is None else tuple(str(v) for v in order)
        if len(set(vertices)) != len(vertices):
            raise errors.InputError("duplicate quiver vertex")
        labels = [a[2] for a in arrows]
        if len(set(labels)) != len(labels):
            raise errors.InputError("arrow labels must be distinct")
        if set(labels) & {f"e{v}" for v in vertices}:
            raise errors.InputError("arrow label clashes with a stationary path name")
        for s, t, lab in arrows:
            if s not in vertices or t not in vertices:
                raise errors.InputError(f"arrow {lab} has an unknown endpoint", (lab,))
        if sorted(order) != sorted(vertices):
            raise errors.InputError("order must list every vertex once")
        D = nx.MultiDiGraph()
        D.add_nodes_from(vertices)
        D.add_edges_from((s, t) for s, t, _ in arrows)
        if not nx.is_directed_acyclic_graph(D):
            cycle = [e[:2] for e in nx.find_cycle(D)]
            raise errors.NotAcyclic("quiver has a directed cycle", tuple(cycle))
        rank = {v: i for i, v in enumerate(order)}
        for s, t, lab in arrows:
            if not rank[s] < rank[t]:
                raise errors.BadOrder(f"arrow {lab}: {s} is not before {t}", (s, t, lab))
        return cls(vertices, arrows, order)


def quiver_paths(Q):
    """All paths as ``(start vertex, tuple of arrow indices)``."""
    paths = [(v, ()) for v in Q.vertices]
    frontier = list(paths)
    while frontier:
        nxt = []
        for start, arr in frontier:
            end = Q.arrows[arr[-1]][1] if arr else start
            for i, (s, _, _) in enumerate(Q.arrows):
                if s == end:
                    nxt.append((start, arr + (i,)))
        paths.extend(nxt)
        frontier = nxt
    return paths


def path_target(Q, p):
    start, arr = p
    return Q.arrows[arr[-1]][1] if arr else start


def path_vertices(Q, p):
    start, arr = p
    return (start,) + tuple(Q.arrows[i][1] for i in arr)


def path_name(Q, p):
    start, arr = p
    if not arr:
        return f"e{start}"
    return _join(Q.arrows[i][2] for i in arr)


def quiver_product(Q, p, q):
    """Product of paths in the quiver LRB (the three cases of the product rule)."""
    rank = {v: i for i, v in enumerate(Q.order)}
    ta, tb = rank[path_target(Q, p)], rank[path_target(Q, q)]
    if ta >= tb:
        return p
    verts = path_vertices(Q, q)
    k = next(i for i, v in enumerate(verts) if rank[v] >= ta)
    suffix = q[1][k:]
    if rank[verts[k]] == ta:
        start, arr = p
        return (start, arr + suffix)
    return (verts[k], suffix)


def quiver_lrb(Q, max_size=DEFAULT_MAX_SIZE):
    paths = quiver_paths(Q)
    if len(paths) > max_size:
        raise errors.TooLarge(f"{len(paths)} paths exceeds cap {max_size}")
    least = (Q.order[0], ())
    return from_elements(paths, lambda p, q: quiver_product(Q, p, q), least,
                         name=lambda p: path_name(Q, p), max_size=max_size)


# ----------------------------------------------------- products, subsets

def direct_product(B1, B2, max_size=DEFAULT_MAX_SIZE):
    if B1.size * B2.size > max_size:
        raise errors.TooLarge(f"product has {B1.size * B2.size} elements, cap {max_size}")
    elems = [(a, b) for a in range(B1.size) for b in range(B2.size)]
    return from_elements(elems, lambda x, y: (B1.table[x[0]][y[0]], B2.table[x[1]][y[1]]),
                         (B1.identity, B2.identity),
                         name=lambda e: f"({B1.names[e[0]]},{B2.names[e[1]]})",
                         max_size=max_size)


def generated_submonoid(B, gen_names):
    """Closure of the named generators and the identity, as a standalone Lrb."""
    gens = [B.index(g) for g in gen_names]
    return canonical(submonoid_generated(B, gens).sub)


__all__ = [
    "free_lrb", "free_partially_commutative", "fpc_word_value", "acyclic_orientations",
    "real_face_monoid_from_covectors", "real_face_monoid_from_normals",
    "complex_face_monoid_from_covectors", "complex_sign_monoid", "feasible_sign_vectors",
    "sign_vector_feasible", "face_dimension", "compose_real", "compose_complex",
    "FiniteLattice", "boolean_lattice", "truncated_boolean_lattice", "chain_lattice",
    "lattice_of", "lattice_as_lrb", "karnofsky_rhodes", "rhodes_expansion",
    "Quiver", "quiver_paths", "quiver_product", "quiver_lrb", "path_name",
    "direct_product", "generated_submonoid", "from_elements", "restrict",
]
