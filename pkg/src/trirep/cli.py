"""Command line: trirep {represent,kernel,wenum,recover,verify,potts,gadget}."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .code import BudgetExceeded, CodeError, DEFAULT_CODEWORD_BUDGET
from .complex import ComplexError, kernel, triangle_id
from .enumerator import (
    EnumeratorError, LaurentPolynomial, kernel_weight_enumerator, recover_code_enumerator,
    recover_multivariate, weight_enumerator,
)
from .field import FieldError, FieldSpec
from .gadgets import GadgetError, build_multisphere, build_sphere, build_tunnel
from .potts import GraphError, potts_direct, potts_via_representation
from .representation import (
    DEFAULT_TRIANGLE_BUDGET, RepresentationError, build_representation, check_structure,
    verify_representation,
)

log = logging.getLogger("trirep")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class Run:
    """Collects what a subcommand read, wrote and checked, for the manifest."""

    def __init__(self, args):
        self.args = args
        self.inputs: dict = {}
        self.outputs: list = []
        self.results: dict = {}
        self.notes: list = []
        self.out = Path(args.out)

    def read(self, path) -> str:
        p = Path(path)
        try:
            text = p.read_text()
        except OSError as err:
            raise io.ParseError(path, 0, err.strerror or str(err)) from None
        self.inputs[str(path)] = io.sha256_file(p)
        return text

    def write(self, name: str, text: str):
        io.write_atomic(self.out / name, text)
        self.outputs.append(name)

    def check(self, name: str, ok: bool):
        self.results[name] = "PASS" if ok else "FAIL"
        print(f"{'PASS' if ok else 'FAIL'} {name}")

    def manifest(self, status: int) -> dict:
        a = self.args
        return {
            "subcommand": a.command,
            "inputs": self.inputs,
            "field": getattr(a, "field", None),
            "budgets": {"codewords": a.budget_codewords, "triangles": a.budget_triangles},
            "outputs": sorted(self.outputs),
            "results": self.results,
            "notes": self.notes,
            "exit_code": status,
        }


def _field(args, required=False) -> FieldSpec | None:
    if args.field is None:
        if required:
            raise FieldError("--field is required for this input")
        return None
    return FieldSpec.parse(args.field)


def _load_code(run: Run, path):
    code = io.parse_code(run.read(path), _field(run.args), path=path)
    if not code.field.is_finite and any(
            Fraction(x).denominator != 1 for b in code.basis for x in b):
        run.notes.append("rational basis integerized before construction")
    return code


def cmd_represent(run: Run) -> int:
    a = run.args
    code = _load_code(run, a.code)
    rep = build_representation(code, triangle_budget=a.budget_triangles)
    for name, ok in check_structure(rep).items():
        run.check(name, ok)
    meta = {
        "field": code.field.literal,
        "n": rep.n,
        "dim": code.dimension,
        "e": rep.e,
        "triangles": len(rep.triangles),
        "basis": [[str(x) for x in b] for b in rep.code.basis],
        "mu": {str(i + 1): triangle_id(t) for i, t in enumerate(rep.mu)},
        "S": [triangle_id(t) for t in rep.S],
        "parts": [{"index": p.index + 1, "weight": sum(1 for x in p.vector if x != 0),
                   "triangles": p.triangle_count, "surplus": p.surplus}
                  for p in rep.parts],
    }
    run.write("complex.txt", io.format_complex(rep.delta))
    run.write("representation.json", io.dumps(meta))
    print(f"e = {rep.e}, |T| = {len(rep.triangles)}, dim = {code.dimension}")
    return EXIT_OK if all(v == "PASS" for v in run.results.values()) else EXIT_FAIL


def cmd_kernel(run: Run) -> int:
    F = _field(run.args, required=True)
    cfg = io.parse_complex(run.read(run.args.complex), path=run.args.complex)
    K = kernel(cfg, F)
    data = {"field": F.literal, "dimension": K.dimension,
            "triangles": [triangle_id(t) for t in K.triangles],
            "basis": [[str(x) for x in v] for v in K.vectors]}
    run.write("kernel.json", io.dumps(data))
    print(f"dim ker = {K.dimension}")
    return EXIT_OK


def _is_code_file(text: str) -> bool:
    for _, toks in io._lines(text):
        return toks[0].lower() in ("field", "length")
    return False


def cmd_wenum(run: Run) -> int:
    a = run.args
    text = run.read(a.input)
    if _is_code_file(text):
        poly = weight_enumerator(_load_code(run, a.input), a.budget_codewords)
    else:
        F = _field(a, required=True)
        cfg = io.parse_complex(text, path=a.input)
        poly = kernel_weight_enumerator(kernel(cfg, F), a.budget_codewords)
    run.write("wenum.json", io.dumps(poly.to_json()))
    print(poly)
    return EXIT_OK


def cmd_recover(run: Run) -> int:
    a = run.args
    run.read(a.poly)
    poly = LaurentPolynomial.from_json(io.read_json(a.poly))
    if poly.nvars == 1:
        out = recover_code_enumerator(poly, a.e, halve=not a.no_halve)
    else:
        out = recover_multivariate(poly, a.e, a.reserved, halve=not a.no_halve)
    run.write("recovered.json", io.dumps(out.to_json()))
    print(out)
    return EXIT_OK


def cmd_verify(run: Run) -> int:
    a = run.args
    code = _load_code(run, a.code)
    rep = build_representation(code, triangle_budget=a.budget_triangles)
    for name, ok in verify_representation(rep, a.budget_codewords).items():
        run.check(name, ok)
    if code.field.is_finite:
        got = recover_code_enumerator(kernel_weight_enumerator(rep.kernel, a.budget_codewords), rep.e)
        run.check("recovered W_C equals brute force", got == weight_enumerator(code, a.budget_codewords))
    return EXIT_OK if all(v == "PASS" for v in run.results.values()) else EXIT_FAIL


def cmd_potts(run: Run) -> int:
    a = run.args
    G = io.parse_graph(run.read(a.graph), path=a.graph)
    polys = {}
    if a.via in ("direct", "both"):
        polys["direct"] = potts_direct(G, a.q, a.budget_codewords)
    if a.via in ("representation", "both"):
        r = potts_via_representation(G, a.q, a.budget_codewords, report=True)
        polys["representation"] = r.polynomial
        run.notes.append(f"e = {r.e}, |E| = {r.edges}, e/|E| = {r.ratio:.3f}")
    for k, p in polys.items():
        print(f"{k}: {p}")
    run.write("potts.json", io.dumps({k: p.to_json() for k, p in polys.items()}))
    if a.via == "both":
        run.check("direct equals representation", polys["direct"] == polys["representation"])
        return EXIT_OK if polys["direct"] == polys["representation"] else EXIT_FAIL
    return EXIT_OK


def cmd_gadget(run: Run) -> int:
    a = run.args
    F = _field(a) or FieldSpec.gf(2)
    if a.kind == "tunnel":
        g = build_tunnel()
    elif a.kind == "sphere":
        g = build_sphere(a.m, field=F)
    else:
        g = build_multisphere(a.n, a.M, 1, F)
    run.write("gadget.txt", io.format_complex(g.complex.base))
    run.write("gadget.json", io.dumps(io.gadget_sidecar(g)))
    print(f"{a.kind}: {len(g.complex.base.triangles)} triangles")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    env_cw = int(os.environ.get("TRIREP_BUDGET_CODEWORDS", DEFAULT_CODEWORD_BUDGET))
    env_tr = int(os.environ.get("TRIREP_BUDGET_TRIANGLES", DEFAULT_TRIANGLE_BUDGET))
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="gf:<p> or q; overrides the input file")
    common.add_argument("--out", default=".", help="output directory (default: .)")
    common.add_argument("--budget-codewords", type=int, default=env_cw)
    common.add_argument("--budget-triangles", type=int, default=env_tr)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="trirep", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("represent", parents=[common], help="build a triangular representation")
    s.add_argument("code")
    s.set_defaults(func=cmd_represent)
    s = sub.add_parser("kernel", parents=[common], help="kernel basis of a complex")
    s.add_argument("complex")
    s.set_defaults(func=cmd_kernel)
    s = sub.add_parser("wenum", parents=[common], help="weight enumerator of a code or kernel")
    s.add_argument("input")
    s.set_defaults(func=cmd_wenum)
    s = sub.add_parser("recover", parents=[common], help="code enumerator from a kernel enumerator")
    s.add_argument("poly")
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--reserved", type=int, default=None, help="1-based reserved variable")
    s.add_argument("--no-halve", action="store_true")
    s.set_defaults(func=cmd_recover)
    s = sub.add_parser("verify", parents=[common], help="run the invariant suite on a code")
    s.add_argument("code")
    s.set_defaults(func=cmd_verify)
    s = sub.add_parser("potts", parents=[common], help="q-Potts partition function")
    s.add_argument("graph")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--via", choices=("direct", "representation", "both"), default="both")
    s.set_defaults(func=cmd_potts)
    s = sub.add_parser("gadget", parents=[common], help="write a tunnel, sphere or multisphere")
    s.add_argument("kind", choices=("tunnel", "sphere", "multisphere"))
    s.add_argument("--m", type=int, default=8, help="sphere size")
    s.add_argument("--n", type=int, nargs="+", default=[1, 2], help="multisphere n_i")
    s.add_argument("--M", type=int, default=2, help="multisphere class bound")
    s.set_defaults(func=cmd_gadget)
    return p


INPUT_ERRORS = (io.ParseError, FieldError, CodeError, ComplexError, GraphError,
                EnumeratorError, GadgetError)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    run = Run(args)
    try:
        status = args.func(run)
    except BudgetExceeded as err:
        print(f"budget exceeded: {err}", file=sys.stderr)
        status = EXIT_BUDGET
    except RepresentationError as err:
        print(f"verification failed: {err}", file=sys.stderr)
        status = EXIT_FAIL
    except INPUT_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        status = EXIT_INPUT
    try:
        io.write_json(run.out / "manifest.json", run.manifest(status))
    except OSError as err:
        print(f"cannot write manifest: {err}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
