"""Second route to Ext: the algebra kB itself.

Nothing in this module looks at order complexes.  Idempotents are built by
the recursion ``e_X = f_X (1 - sum_{Y < X} e_Y)`` and checked, the
Schutzenberger modules are checked against left multiplication, and
``Ext^n(k_X, k_Y)`` is computed from the normalized bar resolution of
``k_X`` over ``kB_{>=X}``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from itertools import product

from . import errors
from .constructions import path_target, path_vertices, quiver_paths, quiver_product
from .core import lambda_chain_length, r_order, support_lattice
from .linalg import QQ, ExactMatrix

BAR_BUDGET = 2_000_000


# ---------------------------------------------------------------- algebra

@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """Element of kB as a sparse coefficient map ``{element index: coefficient}``."""

    B: object
    coeffs: dict
    field: object = QQ

    @classmethod
    def basis(cls, B, b, field=QQ):
        return cls(B, {b: field.coerce(1)}, field)

    @classmethod
    def one(cls, B, field=QQ):
        return cls.basis(B, B.identity, field)

    @classmethod
    def zero(cls, B, field=QQ):
        return cls(B, {}, field)

    def _make(self, acc):
        F = self.field
        out = {}
        for k, v in acc.items():
            v = F.coerce(v)
            if v:
                out[k] = v
        return AlgebraElement(self.B, out, F)

    def __add__(self, other):
        acc = dict(self.coeffs)
        for k, v in other.coeffs.items():
            acc[k] = acc.get(k, 0) + v
        return self._make(acc)

    def __neg__(self):
        return self._make({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self._make({k: v * other for k, v in self.coeffs.items()})
        T = self.B.table
        acc = {}
        for a, u in self.coeffs.items():
            row = T[a]
            for b, v in other.coeffs.items():
                c = row[b]
                acc[c] = acc.get(c, 0) + u * v
        return self._make(acc)

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.coeffs == other.coeffs

    __hash__ = None

    def is_zero(self):
        return not self.coeffs

    def to_dict(self):
        return {self.B.names[k]: str(v) for k, v in sorted(self.coeffs.items())}


def _sum(elems, B, field):
    acc = AlgebraElement.zero(B, field)
    for e in elems:
        acc = acc + e
    return acc


@dataclass(frozen=True)
class IdempotentSystem:
    reps: tuple          # f_X, an element of support X
    e: tuple             # AlgebraElement per lattice index


def idempotents(B, field=QQ, reps=None, order=None):
    """Orthogonal idempotents by the recursion, verified before returning.

    ``reps`` overrides the choice of f_X (default: least element of support X);
    ``order`` is a linear extension of the lattice from the bottom (default:
    index order).
    """
    L = support_lattice(B)
    reps = tuple(L.reps) if reps is None else tuple(reps)
    for X, f in enumerate(reps):
        if L.sigma[f] != X:
            raise errors.InputError(f"representative {B.names[f]} does not have support {X}")
    order = list(range(L.count)) if order is None else list(order)
    seen = set()
    for X in order:
        if any(L.lt(Y, X) and Y not in seen for Y in range(L.count)):
            raise errors.InputError("order is not a linear extension from the bottom")
        seen.add(X)
    one = AlgebraElement.one(B, field)
    e = [None] * L.count
    for X in order:
        below = _sum((e[Y] for Y in range(L.count) if L.lt(Y, X)), B, field)
        e[X] = AlgebraElement.basis(B, reps[X], field) * (one - below)
    system = IdempotentSystem(reps, tuple(e))
    _verify_idempotents(B, system, field)
    return system


def _verify_idempotents(B, system, field):
    L = support_lattice(B)
    e = system.e
    for X in range(L.count):
        for Y in range(L.count):
            p = e[X] * e[Y]
            want = e[X] if X == Y else AlgebraElement.zero(B, field)
            if p != want:
                raise errors.VerificationFailed(
                    "idempotents are not orthogonal" if X != Y else "e_X is not idempotent",
                    (X, Y))
    if _sum(e, B, field) != AlgebraElement.one(B, field):
        raise errors.VerificationFailed("idempotents do not sum to 1")
    for b in range(B.size):
        xb = AlgebraElement.basis(B, b, field)
        for X in range(L.count):
            if not L.le(X, L.sigma[b]) and not (xb * e[X]).is_zero():
                raise errors.VerificationFailed("b e_X != 0 although sigma(b) is not above X",
                                                (B.names[b], X))


@dataclass(frozen=True)
class BasisCheck:
    ok: bool
    rank: int
    witness: object = None


def idempotent_basis_check(B, field=QQ, system=None):
    """Is ``{b e_sigma(b)}`` a basis of idempotents, unitriangular in the R-order?"""
    L = support_lattice(B)
    if system is None:
        system = idempotents(B, field)
    P = r_order(B)
    rows = []
    for b in range(B.size):
        v = AlgebraElement.basis(B, b, field) * system.e[L.sigma[b]]
        if v * v != v:
            return BasisCheck(False, -1, ("not idempotent", B.names[b]))
        if v.coeffs.get(b) != field.coerce(1):
            return BasisCheck(False, -1, ("diagonal entry is not 1", B.names[b]))
        for c in v.coeffs:
            if c != b and not P.less(c, b):
                return BasisCheck(False, -1, ("entry outside the R-order below", B.names[b],
                                              B.names[c]))
        rows.append(v.coeffs)
    rank = ExactMatrix(B.size, B.size, rows).rank(field)
    return BasisCheck(rank == B.size, rank, None if rank == B.size else ("singular",))


@dataclass(frozen=True)
class SchutzenbergerReport:
    fiber_sizes: tuple
    total: int
    span_rank: int
    intertwines: bool
    witness: object = None

    @property
    def ok(self):
        return (sum(self.fiber_sizes) == self.total and self.span_rank == self.total
                and self.intertwines)


def schutzenberger_check(B, field=QQ, system=None):
    """Check ``kB = sum_X kB e_X`` with ``kB e_X`` carrying the action on ``L_X``."""
    L = support_lattice(B)
    if system is None:
        system = idempotents(B, field)
    fibers = [L.fiber(X) for X in range(L.count)]
    phi = {}
    for X, fib in enumerate(fibers):
        for b in fib:
            phi[b] = AlgebraElement.basis(B, b, field) * system.e[X]
    rank = ExactMatrix(B.size, B.size, [phi[b].coeffs for b in range(B.size)]).rank(field)
    zero = AlgebraElement.zero(B, field)
    for X, fib in enumerate(fibers):
        for a in range(B.size):
            xa = AlgebraElement.basis(B, a, field)
            for b in fib:
                # Schutzenberger action: a.b = ab if sigma(a) >= X, else 0
                want = phi[B.table[a][b]] if L.le(X, L.sigma[a]) else zero
                if xa * phi[b] != want:
                    return SchutzenbergerReport(tuple(map(len, fibers)), B.size, rank, False,
                                                (B.names[a], B.names[b], X))
    return SchutzenbergerReport(tuple(map(len, fibers)), B.size, rank, True)


# ------------------------------------------------------------ bar complex

@dataclass
class BarCochainComplex:
    """Cochains ``Hom(C_n(B, X), k_Y) = k^{T_n}``, ``T_n = (B_{>=X} - {1})^n``."""

    B: object
    X: int
    Y: int
    field: object = QQ
    budget: int = BAR_BUDGET
    letters: tuple = dc_field(init=False)
    _coboundary: dict = dc_field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        L = support_lattice(self.B)
        self.letters = tuple(b for b in range(self.B.size)
                             if b != self.B.identity and L.le(self.X, L.sigma[b]))
        # with Y not above X the cochain spaces are zero
        self.live = L.le(self.X, self.Y)

    @property
    def m(self):
        return len(self.letters)

    def dim(self, n):
        return self.m ** n if self.live else 0

    def entries(self, n):
        """Matrix entries of the coboundary out of degree n."""
        return self.dim(n + 1) * self.dim(n)

    def fits(self, n):
        return self.entries(n) <= self.budget

    def coboundary(self, n):
        """delta^n as a matrix with rows T_{n+1} and columns T_n."""
        if n in self._coboundary:
            return self._coboundary[n]
        if not self.fits(n):
            raise errors.TooLarge(f"coboundary in degree {n} has {self.entries(n)} entries, "
                                  f"budget {self.budget}", (n,))
        if not self.live:
            M = ExactMatrix(0, 0)
            self._coboundary[n] = M
            return M
        B, T = self.B, self.B.table
        L = support_lattice(B)
        pos = {b: i for i, b in enumerate(self.letters)}
        m = self.m
        above_y = [L.le(self.Y, L.sigma[b]) for b in self.letters]

        def col(word):
            c = 0
            for s in word:
                c = c * m + pos[s]
            return c

        rows = []
        for word in product(self.letters, repeat=n + 1):
            row = {}
            if above_y[pos[word[0]]]:
                _acc(row, col(word[1:]), 1)
            for i in range(1, n + 1):
                st = T[word[i - 1]][word[i]]
                if st == B.identity:
                    raise errors.VerificationFailed("product of non-identity elements is 1",
                                                    (B.names[word[i - 1]], B.names[word[i]]))
                _acc(row, col(word[:i - 1] + (st,) + word[i + 1:]), (-1) ** i)
            _acc(row, col(word[:-1]), (-1) ** (n + 1))
            rows.append(row)
        M = ExactMatrix(m ** (n + 1), m ** n, rows)
        self._coboundary[n] = M
        return M

    def check_square_zero(self, n):
        """delta^{n+1} delta^n == 0."""
        return (self.coboundary(n + 1) @ self.coboundary(n)).is_zero(self.field)

    def max_degree_within_budget(self, cap):
        d = -1
        while d < cap and self.fits(d + 1):
            d += 1
        return d

    def cohomology(self, max_degree):
        ranks = [self.coboundary(n).rank(self.field) for n in range(max_degree + 1)]
        return [self.dim(n) - ranks[n] - (ranks[n - 1] if n else 0)
                for n in range(max_degree + 1)]


def _acc(row, c, v):
    w = row.get(c, 0) + v
    if w:
        row[c] = w
    else:
        row.pop(c, None)


def bar_ext(B, X, Y, field=QQ, max_degree=None, budget=BAR_BUDGET):
    """``[dim Ext^n(k_X, k_Y)]`` from the normalized bar resolution."""
    if max_degree is None:
        max_degree = lambda_chain_length(support_lattice(B))
    return BarCochainComplex(B, X, Y, field, budget).cohomology(max_degree)


@dataclass
class PairResult:
    X: int
    Y: int
    degree: int
    bar: list
    simplicial: list
    seconds: float

    @property
    def agree(self):
        return self.bar == self.simplicial


@dataclass
class CrosscheckReport:
    field: object
    max_degree: int
    pairs: list = dc_field(default_factory=list)
    skipped: list = dc_field(default_factory=list)
    square_zero_failures: list = dc_field(default_factory=list)

    @property
    def mismatches(self):
        return [p for p in self.pairs if not p.agree]

    @property
    def ok(self):
        return not self.mismatches and not self.square_zero_failures

    def to_dict(self):
        return {
            "field": str(self.field), "max_degree": self.max_degree, "ok": self.ok,
            "pairs": [{"X": p.X, "Y": p.Y, "degree": p.degree, "bar": p.bar,
                       "simplicial": p.simplicial, "agree": p.agree,
                       "seconds": round(p.seconds, 4)} for p in self.pairs],
            "skipped": [{"X": X, "Y": Y, "reason": r} for X, Y, r in self.skipped],
            "square_zero_failures": self.square_zero_failures,
        }


def oracle_crosscheck(B, field=QQ, max_degree=None, budget=BAR_BUDGET, check_square=True):
    """Compare bar-resolution Ext with the simplicial route, pair by pair.

    Pairs are visited with smaller ``B_{>=X}`` first; each pair is run to the
    largest degree whose coboundary fits the budget.
    """
    from .homological import ext_dims

    L = support_lattice(B)
    if max_degree is None:
        max_degree = lambda_chain_length(L)
    report = CrosscheckReport(field, max_degree)
    order = sorted(range(L.count), key=lambda X: (len(L.above(X)), X))
    for X in order:
        for Y in range(L.count):
            bar = BarCochainComplex(B, X, Y, field, budget)
            d = bar.max_degree_within_budget(max_degree)
            if d < 0:
                report.skipped.append((X, Y, "degree 0 exceeds budget"))
                continue
            if d < max_degree:
                report.skipped.append((X, Y, f"degrees above {d} exceed budget"))
            t0 = time.perf_counter()
            got = bar.cohomology(d)
            if check_square:
                for n in range(d):
                    if bar.fits(n + 1) and not bar.check_square_zero(n):
                        report.square_zero_failures.append((X, Y, n))
            want = ext_dims(B, X, Y, field, d)
            report.pairs.append(PairResult(X, Y, d, got, want, time.perf_counter() - t0))
    return report


# ------------------------------------------------- quiver LRB inside kQ

def _path_mul(Q, p, q):
    """Product of two paths in the path algebra, or None when it is zero."""
    if path_target(Q, p) != q[0]:
        return None
    return (p[0], p[1] + q[1])


def ell(Q, p):
    """The image of a path in kQ: stationary paths above its target plus its suffixes."""
    rank = {v: i for i, v in enumerate(Q.order)}
    t = path_target(Q, p)
    out = {(u, ()): 1 for u in Q.vertices if rank[u] >= rank[t]}
    verts = path_vertices(Q, p)
    for i in range(len(p[1])):
        out[(verts[i], p[1][i:])] = 1
    return out


def _kq_mul(Q, f, g):
    acc = {}
    for p, u in f.items():
        for q, v in g.items():
            r = _path_mul(Q, p, q)
            if r is not None:
                acc[r] = acc.get(r, 0) + u * v
    return {k: v for k, v in acc.items() if v}


@dataclass(frozen=True)
class EllReport:
    paths: int
    rank: int
    multiplicative: bool
    witness: object = None

    @property
    def ok(self):
        return self.rank == self.paths and self.multiplicative


def quiver_ell_check(Q, field=QQ):
    """ell-images are independent in kQ and multiply by the quiver LRB rule."""
    paths = quiver_paths(Q)
    index = {p: i for i, p in enumerate(paths)}
    images = [ell(Q, p) for p in paths]
    rows = [{index[k]: v for k, v in img.items()} for img in images]
    rank = ExactMatrix(len(paths), len(paths), rows).rank(field)
    for p, fp in zip(paths, images):
        for q, fq in zip(paths, images):
            if _kq_mul(Q, fp, fq) != ell(Q, quiver_product(Q, p, q)):
                return EllReport(len(paths), rank, False, (p, q))
    return EllReport(len(paths), rank, True)
