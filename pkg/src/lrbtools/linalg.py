"""Exact linear algebra over Q and over prime fields.

Matrices are stored sparsely, one ``{column: value}`` dict per row.  All the
matrices this package builds (simplicial boundaries, bar coboundaries,
algebra change-of-basis) are integral, so the Q path works with Python
integers only: each elimination step is fraction free, and rows are kept
primitive (content divided out) so coefficients do not grow.

A dense Bareiss routine is kept alongside as an independent check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: ``p == 0`` is Q, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")

    @classmethod
    def parse(cls, text):
        text = text.strip().lower()
        if text in ("q", "qq", "0"):
            return cls(0)
        if text.startswith("fp:"):
            return cls(int(text[3:]))
        raise ValueError(f"unknown field {text!r}; expected 'q' or 'fp:P'")

    @property
    def is_rational(self):
        return self.p == 0

    def __str__(self):
        return "q" if self.p == 0 else f"fp:{self.p}"

    def coerce(self, x):
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return x % self.p

    def inv(self, x):
        if self.p == 0:
            return 1 / Fraction(x)
        return pow(x, -1, self.p)


QQ = Field(0)


def _clear_denominators(row):
    """Scale a row with Fraction entries to a primitive integer row."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // math.gcd(den, v.denominator)
    out = {c: int(v * den) for c, v in row.items() if v != 0}
    return _primitive(out)


def _primitive(row):
    if not row:
        return row
    g = reduce(math.gcd, row.values())
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _rank_rational(rows):
    pivots = {}
    for raw in sorted(rows, key=len):
        r = _clear_denominators(raw)
        while r:
            c = min(r)
            prow = pivots.get(c)
            if prow is None:
                pivots[c] = r
                break
            a, b = r[c], prow[c]
            g = math.gcd(a, b)
            a, b = a // g, b // g
            new = {k: b * v for k, v in r.items()}
            for k, v in prow.items():
                w = new.get(k, 0) - a * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            r = _primitive(new)
    return len(pivots)


def _rank_modp(rows, p):
    pivots = {}
    for raw in sorted(rows, key=len):
        r = {}
        for c, v in raw.items():
            v = Field(p).coerce(v) if isinstance(v, Fraction) else v % p
            if v:
                r[c] = v
        while r:
            c = min(r)
            prow = pivots.get(c)
            if prow is None:
                inv = pow(r[c], -1, p)
                pivots[c] = {k: (v * inv) % p for k, v in r.items()}
                break
            a = r[c]
            for k, v in prow.items():
                w = (r.get(k, 0) - a * v) % p
                if w:
                    r[k] = w
                else:
                    r.pop(k, None)
    return len(pivots)


@dataclass
class ExactMatrix:
    """Sparse matrix with exact entries (ints or Fractions)."""

    nrows: int
    ncols: int
    rows: list = field(default_factory=list)

    def __post_init__(self):
        if not self.rows:
            self.rows = [{} for _ in range(self.nrows)]
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")

    @classmethod
    def from_dense(cls, dense, ncols=None):
        dense = [list(r) for r in dense]
        if ncols is None:
            ncols = len(dense[0]) if dense else 0
        rows = [{j: v for j, v in enumerate(r) if v != 0} for r in dense]
        return cls(len(dense), ncols, rows)

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    def transpose(self):
        cols = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return ExactMatrix(self.ncols, self.nrows, cols)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.rows:
            acc = {}
            for k, v in r.items():
                for j, w in other.rows[k].items():
                    acc[j] = acc.get(j, 0) + v * w
            out.append({j: v for j, v in acc.items() if v != 0})
        return ExactMatrix(self.nrows, other.ncols, out)

    def is_zero(self, field=QQ):
        if field.is_rational:
            return all(not r for r in self.rows)
        return all(v % field.p == 0 for r in self.rows for v in r.values())

    @property
    def entry_count(self):
        return self.nrows * self.ncols

    def rank(self, field=QQ):
        if self.nrows == 0 or self.ncols == 0:
            return 0
        if field.is_rational:
            return _rank_rational(self.rows)
        return _rank_modp(self.rows, field.p)


def bareiss_rank(dense):
    """Rank over Q of an integer (or rational) matrix by Bareiss elimination."""
    m = [list(r) for r in dense]
    if not m or not m[0]:
        return 0
    if any(isinstance(v, Fraction) for r in m for v in r):
        m = [list(_clear_denominators(dict(enumerate(r))).get(j, 0)
                  for j in range(len(r))) for r in m]
    nr, nc = len(m), len(m[0])
    prev = 1
    rank = 0
    for c in range(nc):
        if rank == nr:
            break
        piv = next((i for i in range(rank, nr) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        for i in range(rank + 1, nr):
            a = m[i][c]
            row_i, row_r = m[i], m[rank]
            for j in range(c + 1, nc):
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        rank += 1
    return rank
