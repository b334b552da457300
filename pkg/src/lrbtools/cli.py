"""Command line front end: ``lrb construct | analyze | verify``.

Exit codes: 0 success, 1 a verification failed, 2 bad input, 3 a size cap or
budget was hit.  Errors are written to stderr as one JSON object.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import constructions as C
from . import errors, homological as H, io, oracle
from .complexes import LERAY_CAP, leray_number, order_complex
from .core import (DEFAULT_MAX_SIZE, lambda_chain_length, r_order, support_lattice,
                   support_law_violations)
from .linalg import Field

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

KINDS = ("free", "fpc", "covectors", "arrangement", "complex-sign", "kr", "rhodes",
         "quiver", "product", "submonoid")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise errors.InputError(f"{self.prog}: {message}")


@dataclass
class Job:
    """A parsed command: every input file is loaded before any computation."""

    command: str
    inputs: dict
    field: Field
    caps: dict
    outputs: dict
    flags: dict = field(default_factory=dict)


def exit_code(exc):
    if isinstance(exc, errors.ResourceCap):
        return EXIT_CAP
    if isinstance(exc, errors.VerificationFailed):
        return EXIT_FAILED
    return EXIT_INPUT


def _emit_error(exc):
    sys.stderr.write(json.dumps(exc.to_dict(), ensure_ascii=False, sort_keys=True) + "\n")


def _split(text):
    return [t.strip() for t in text.split(",") if t.strip()]


def _dump(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=True) + "\n"


# ------------------------------------------------------------------ parser

def build_parser():
    p = _Parser(prog="lrb", description="Left regular bands: build, analyze, verify.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build a monoid and write its JSON")
    c.add_argument("kind", choices=KINDS)
    c.add_argument("--letters", help="free: comma-separated alphabet")
    c.add_argument("--graph", help="fpc: graph JSON")
    c.add_argument("--covectors", help="covectors: JSON list or {'covectors': [...]}")
    c.add_argument("--complex", action="store_true", help="covectors use 0,+,-,i,j")
    c.add_argument("--normals", help="arrangement: arrangement JSON")
    c.add_argument("--n", type=int, default=1, help="complex-sign: number of coordinates")
    c.add_argument("--lattice", help="kr, rhodes: lattice JSON")
    c.add_argument("--gens", help="kr: generator map JSON (defaults to the lattice's)")
    c.add_argument("--quiver", help="quiver: quiver JSON")
    c.add_argument("--left", help="product: first monoid JSON")
    c.add_argument("--right", help="product: second monoid JSON")
    c.add_argument("--monoid", help="submonoid: ambient monoid JSON")
    c.add_argument("--elements", help="submonoid: comma-separated generator names")
    c.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE)
    c.add_argument("--max-hyperplanes", type=int, default=10)
    c.add_argument("--out", help="output path (default: stdout)")

    a = sub.add_parser("analyze", help="Ext table, quiver, dimensions, bounds")
    a.add_argument("monoid")
    a.add_argument("--ext", action="store_true")
    a.add_argument("--quiver", action="store_true")
    a.add_argument("--relations", action="store_true")
    a.add_argument("--gldim", action="store_true")
    a.add_argument("--leray", action="store_true")
    a.add_argument("--bounds", action="store_true")
    a.add_argument("--field", default="q", help="q or fp:P")
    a.add_argument("--max-degree", type=int)
    a.add_argument("--leray-cap", type=int, default=LERAY_CAP)
    a.add_argument("--labels", choices=("auto", "ideal", "content"), default="auto")
    a.add_argument("--outdir", default=".")
    a.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE)

    v = sub.add_parser("verify", help="check axioms, idempotents, the oracle, geometry")
    v.add_argument("monoid")
    v.add_argument("--axioms", action="store_true")
    v.add_argument("--idempotents", action="store_true")
    v.add_argument("--oracle", action="store_true")
    v.add_argument("--geometric", action="store_true")
    v.add_argument("--field", default="q")
    v.add_argument("--max-degree", type=int)
    v.add_argument("--budget", type=int, default=oracle.BAR_BUDGET)
    v.add_argument("--report", help="also write the JSON report here")
    v.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE)
    return p


def _field(text):
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise errors.InputError(str(exc), (text,)) from None


def prepare(args):
    """Turn parsed arguments into a Job, reading and validating every input."""
    caps = {"max_size": args.max_size}
    if args.command == "construct":
        caps.update(max_hyperplanes=args.max_hyperplanes)
        return Job("construct", _construct_inputs(args), Field(0), caps,
                   {"out": args.out}, {"kind": args.kind, "complex": args.complex})
    fld = _field(args.field)
    inputs = {"monoid": io.read_monoid(args.monoid, args.max_size),
              "stem": Path(args.monoid).stem}
    if args.max_degree is not None and args.max_degree < 0:
        raise errors.InputError("--max-degree must be nonnegative")
    if args.command == "analyze":
        flags = {k: getattr(args, k) for k in ("ext", "quiver", "relations", "gldim",
                                                "leray", "bounds")}
        if not any(flags.values()):
            raise errors.InputError("analyze needs at least one of --ext --quiver "
                                    "--relations --gldim --leray --bounds")
        caps.update(leray_cap=args.leray_cap)
        flags.update(max_degree=args.max_degree, labels=args.labels)
        return Job("analyze", inputs, fld, caps, {"outdir": Path(args.outdir)}, flags)
    flags = {k: getattr(args, k) for k in ("axioms", "idempotents", "oracle", "geometric")}
    if not any(flags.values()):
        raise errors.InputError("verify needs at least one of --axioms --idempotents "
                                "--oracle --geometric")
    caps.update(budget=args.budget)
    flags.update(max_degree=args.max_degree)
    return Job("verify", inputs, fld, caps, {"report": args.report}, flags)


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise errors.InputError(f"construct {args.kind} needs {' '.join(missing)}")


def _construct_inputs(args):
    kind = args.kind
    if kind == "free":
        _need(args, "letters")
        return {"letters": _split(args.letters)}
    if kind == "fpc":
        _need(args, "graph")
        return {"graph": io.graph_from_dict(io.read_json(args.graph))}
    if kind == "covectors":
        _need(args, "covectors")
        data = io.read_json(args.covectors)
        if isinstance(data, dict):
            data = data.get("covectors")
        if not isinstance(data, list):
            raise errors.InputError("covector file must be a list or {'covectors': [...]}")
        return {"covectors": data}
    if kind == "arrangement":
        _need(args, "normals")
        return {"normals": io.normals_from_dict(io.read_json(args.normals))}
    if kind == "complex-sign":
        return {"n": args.n}
    if kind in ("kr", "rhodes"):
        _need(args, "lattice")
        data = io.read_json(args.lattice)
        out = {"lattice": io.lattice_from_dict(data)}
        if kind == "kr":
            gens = io.read_json(args.gens) if args.gens else data.get("generators")
            if not isinstance(gens, dict) or not gens:
                raise errors.InputError("kr needs a generator map {letter: lattice element}")
            out["gens"] = gens
        return out
    if kind == "quiver":
        _need(args, "quiver")
        return {"quiver": io.quiver_from_dict(io.read_json(args.quiver))}
    if kind == "product":
        _need(args, "left", "right")
        return {"left": io.read_monoid(args.left, args.max_size),
                "right": io.read_monoid(args.right, args.max_size)}
    _need(args, "monoid", "elements")
    B = io.read_monoid(args.monoid, args.max_size)
    names = _split(args.elements)
    unknown = [n for n in names if n not in B.names]
    if unknown:
        raise errors.InputError("unknown element names", tuple(unknown))
    return {"monoid": B, "elements": names}


# ----------------------------------------------------------------- commands

def run_construct(job, out=None):
    out = out or sys.stdout
    kind, inp, cap = job.flags["kind"], job.inputs, job.caps["max_size"]
    if kind == "free":
        B = C.free_lrb(inp["letters"], cap)
    elif kind == "fpc":
        B = C.free_partially_commutative(inp["graph"], cap)
    elif kind == "covectors":
        build = (C.complex_face_monoid_from_covectors if job.flags.get("complex")
                 or any(c in "ij" for v in inp["covectors"] for c in str(v))
                 else C.real_face_monoid_from_covectors)
        B = build(inp["covectors"], cap)
    elif kind == "arrangement":
        B = C.real_face_monoid_from_normals(inp["normals"], job.caps["max_hyperplanes"], cap)
    elif kind == "complex-sign":
        B = C.complex_sign_monoid(inp["n"], cap)
    elif kind == "kr":
        B = C.karnofsky_rhodes(inp["lattice"], inp["gens"], cap)
    elif kind == "rhodes":
        B = C.rhodes_expansion(inp["lattice"], cap)
    elif kind == "quiver":
        B = C.quiver_lrb(inp["quiver"], cap)
    elif kind == "product":
        B = C.direct_product(inp["left"], inp["right"], cap)
    else:
        B = C.generated_submonoid(inp["monoid"], inp["elements"])
    L = support_lattice(B)
    summary = (f"{kind}: {B.size} elements, support lattice {L.count} elements, "
               f"longest chain {lambda_chain_length(L)}\n")
    text = io.dumps_monoid(B)
    if job.outputs["out"]:
        Path(job.outputs["out"]).write_text(text)
        out.write(summary)
    else:
        out.write(text)
        sys.stderr.write(summary)
    return EXIT_OK


def run_analyze(job, out=None):
    out = out or sys.stdout
    B, stem, F = job.inputs["monoid"], job.inputs["stem"], job.field
    outdir = job.outputs["outdir"]
    outdir.mkdir(parents=True, exist_ok=True)
    flags = job.flags
    labels = H.lattice_labels(B, flags["labels"])
    status = EXIT_OK

    def write(suffix, text):
        path = outdir / f"{stem}.{suffix}"
        path.write_text(text)
        out.write(f"wrote {path}\n")

    steps = []
    if flags["ext"]:
        steps.append(("ext", lambda: write("ext.csv", H.ext_table(
            B, F, flags["max_degree"], flags["labels"]).to_csv())))
    if flags["quiver"]:
        steps.append(("quiver", lambda: write("quiver.dot",
                                              H.quiver(B, F, flags["labels"]).to_dot())))
    if flags["relations"]:
        def relations():
            rows = ["X,Y,relations"]
            for (X, Y), r in sorted(H.relation_counts(B, F).items()):
                rows.append(f"{H.csv_field(labels[X])},{H.csv_field(labels[Y])},{r}")
            write("relations.csv", "\n".join(rows) + "\n")
        steps.append(("relations", relations))
    if flags["gldim"]:
        def gldim():
            gd = H.global_dimension(B, F)
            L = support_lattice(B)
            pd = {labels[X]: H.proj_dimension(B, X, F) for X in range(L.count)}
            out.write(f"gldim {gd}\n")
            write("gldim.json", _dump({"field": str(F), "gldim": gd, "proj_dims": pd}))
        steps.append(("gldim", gldim))
    if flags["leray"]:
        def leray():
            lb = leray_number(order_complex(r_order(B)), F, cap=job.caps["leray_cap"])
            out.write(f"leray {lb}\n")
            write("leray.json", _dump({"field": str(F), "leray": lb}))
        steps.append(("leray", leray))
    if flags["bounds"]:
        steps.append(("bounds", lambda: write("bounds.json", _dump(
            H.bounds_report(B, F, job.caps["leray_cap"]).to_dict()))))

    for name, step in steps:
        try:
            step()
        except errors.LrbError as exc:
            payload = exc.to_dict()
            payload["step"] = name
            sys.stderr.write(json.dumps(payload, ensure_ascii=False, sort_keys=True) + "\n")
            status = status or exit_code(exc)
    return status


def run_verify(job, out=None):
    out = out or sys.stdout
    B, F, flags = job.inputs["monoid"], job.field, job.flags
    report = {"monoid": job.inputs["stem"], "size": B.size, "field": str(F), "checks": {}}
    checks = report["checks"]
    chain = lambda_chain_length(support_lattice(B))

    if flags["axioms"]:
        bad = support_law_violations(B)
        checks["axioms"] = {"pass": not bad,
                            "witness": [[k, B.names[x], B.names[y]] for k, x, y in bad[:5]]}
    if flags["idempotents"]:
        try:
            system = oracle.idempotents(B, F)
            basis = oracle.idempotent_basis_check(B, F, system)
            sch = oracle.schutzenberger_check(B, F, system)
            checks["idempotents"] = {
                "pass": basis.ok and sch.ok,
                "basis_rank": basis.rank, "basis_witness": basis.witness,
                "fiber_sizes": list(sch.fiber_sizes), "schutzenberger": sch.ok,
                "schutzenberger_witness": sch.witness,
                "gldim": H.global_dimension(B, F)}
        except errors.VerificationFailed as exc:
            checks["idempotents"] = {"pass": False, "error": exc.to_dict()}
    if flags["oracle"]:
        d = flags["max_degree"] if flags["max_degree"] is not None else min(3, chain)
        rep = oracle.oracle_crosscheck(B, F, d, job.caps["budget"])
        checks["oracle"] = {"pass": rep.ok, **rep.to_dict()}
        for p in checks["oracle"]["pairs"]:
            p.pop("seconds")      # keep reports byte-for-byte reproducible
    if flags["geometric"]:
        try:
            rep = H.geometric_commutation_check(B, F)
            checks["geometric"] = {"pass": rep.agree, "betti_first_degree": -1,
                                   **rep.to_dict()}
        except (errors.NotGeometric, errors.TrivialMonoid) as exc:
            checks["geometric"] = {"pass": False, "error": exc.to_dict()}

    report["pass"] = all(c["pass"] for c in checks.values())
    text = _dump(errors._jsonable(report))
    if job.outputs["report"]:
        Path(job.outputs["report"]).write_text(text)
    out.write(text)
    return EXIT_OK if report["pass"] else EXIT_FAILED


RUNNERS = {"construct": run_construct, "analyze": run_analyze, "verify": run_verify}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        job = prepare(args)
        return RUNNERS[job.command](job)
    except errors.LrbError as exc:
        _emit_error(exc)
        return exit_code(exc)
    except OSError as exc:
        _emit_error(errors.InputError(f"{exc.strerror}: {exc.filename}", (str(exc.filename),)))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
