"""JSON readers and writers for monoids, graphs, lattices, quivers, arrangements."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import networkx as nx
import numpy as np

from . import errors
from .complexes import SimplicialComplex
from .constructions import FiniteLattice, Quiver
from .core import validate_lrb


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise errors.InputError(f"no such file: {path}", (str(path),)) from None
    except json.JSONDecodeError as exc:
        raise errors.InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})",
                                (str(path),)) from None


def _require(data, keys, what):
    if not isinstance(data, dict):
        raise errors.InputError(f"{what} JSON must be an object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise errors.InputError(f"{what} JSON is missing {', '.join(missing)}", tuple(missing))


# ----------------------------------------------------------------- monoids

def monoid_to_dict(B):
    return {"size": B.size, "identity": B.identity, "names": list(B.names),
            "table": [list(r) for r in B.table]}


def dumps_monoid(B):
    """Stable text form: one table row per line."""
    rows = ",\n    ".join(json.dumps(list(r)) for r in B.table)
    return (
        "{\n"
        f'  "size": {B.size},\n'
        f'  "identity": {B.identity},\n'
        f'  "names": {json.dumps(list(B.names), ensure_ascii=False)},\n'
        f'  "table": [\n    {rows}\n  ]\n'
        "}\n"
    )


def monoid_from_dict(data, max_size=None):
    _require(data, ("identity", "table"), "monoid")
    table = data["table"]
    if not (isinstance(table, list) and all(isinstance(r, list) for r in table)
            and all(type(v) is int for r in table for v in r)):
        raise errors.NotSquare("table must be a list of lists of integers")
    if "size" in data and data["size"] != len(table):
        raise errors.NotSquare(f"size {data['size']} does not match {len(table)} table rows")
    if type(data["identity"]) is not int:
        raise errors.BadIdentity("identity must be an integer index")
    kwargs = {} if max_size is None else {"max_size": max_size}
    return validate_lrb(table, data["identity"], data.get("names"), **kwargs)


def read_monoid(path, max_size=None):
    return monoid_from_dict(read_json(path), max_size)


def write_monoid(B, path):
    Path(path).write_text(dumps_monoid(B))


# ------------------------------------------------------------------ graphs

def graph_from_dict(data):
    _require(data, ("vertices",), "graph")
    G = nx.Graph()
    G.add_nodes_from(str(v) for v in data["vertices"])
    for e in data.get("edges", []):
        if len(e) != 2:
            raise errors.InputError(f"edge {e!r} does not have two endpoints")
        u, v = (str(x) for x in e)
        if u not in G or v not in G:
            raise errors.InputError(f"edge {e!r} uses an unknown vertex", tuple(e))
        if u == v:
            raise errors.InputError(f"loop at {u!r}; graphs must be simple", (u,))
        G.add_edge(u, v)
    return G


def graph_to_dict(G):
    verts = sorted(G.nodes, key=str)
    return {"vertices": [str(v) for v in verts],
            "edges": sorted(sorted([str(u), str(v)]) for u, v in G.edges)}


# ---------------------------------------------------------------- lattices

def lattice_from_dict(data):
    _require(data, ("size", "leq"), "lattice")
    n = data["size"]
    names = data.get("names") or [str(i) for i in range(n)]
    if len(names) != n:
        raise errors.InputError("names do not match size")
    pos = {str(x): i for i, x in enumerate(names)}

    def ref(x):
        if isinstance(x, int) and 0 <= x < n:
            return x
        if str(x) in pos:
            return pos[str(x)]
        raise errors.InputError(f"unknown lattice element {x!r}", (x,))

    leq = np.eye(n, dtype=bool)
    for a, b in data["leq"]:
        leq[ref(a), ref(b)] = True
    while True:
        nxt = (leq.astype(int) @ leq.astype(int)) > 0
        if (nxt == leq).all():
            break
        leq = nxt
    return FiniteLattice.build(names, leq, data.get("meet"))


def lattice_to_dict(lat):
    n = lat.size
    return {"size": n, "names": list(lat.names),
            "leq": [[x, y] for x in range(n) for y in range(n) if lat.leq[x, y]],
            "meet": [list(r) for r in lat.meet]}


# ----------------------------------------------------------------- quivers

def quiver_from_dict(data):
    _require(data, ("vertices", "arrows"), "quiver")
    for a in data["arrows"]:
        if len(a) != 3:
            raise errors.InputError(f"arrow {a!r} must be [source, target, label]")
    return Quiver.build(data["vertices"], data["arrows"], data.get("order"))


def quiver_to_dict(Q):
    return {"vertices": list(Q.vertices), "arrows": [list(a) for a in Q.arrows],
            "order": list(Q.order)}


# ------------------------------------------------------------ arrangements

def parse_rational(x):
    if isinstance(x, bool):
        raise errors.InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise errors.InputError(f"not a rational: {x!r}", (x,)) from None
    raise errors.InputError(f"rationals must be integers or 'p/q' strings, got {x!r}", (x,))


def normals_from_dict(data):
    _require(data, ("normals",), "arrangement")
    normals = [[parse_rational(x) for x in row] for row in data["normals"]]
    if not normals:
        raise errors.InputError("arrangement has no hyperplanes")
    d = data.get("dim", len(normals[0]))
    for row in normals:
        if len(row) != d:
            raise errors.InputError(f"normal {row!r} is not in dimension {d}")
        if not any(row):
            raise errors.InputError("zero normal vector")
    return normals


def normals_to_dict(normals):
    return {"dim": len(normals[0]),
            "normals": [[str(Fraction(x)) for x in row] for row in normals]}


# --------------------------------------------------------------- complexes

def complex_from_dict(data):
    _require(data, ("vertices",), "complex")
    return SimplicialComplex.from_dict(data)
