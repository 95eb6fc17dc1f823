"""Plain-text file formats and atomic JSON/text output.

Code file::

    field gf:5          # or: field q
    length 4
    1 2 3 4             # one basis (or spanning) vector per line

Complex file: ``t a b c`` per triangle, ``e a b`` per edge in no triangle,
``v a`` per isolated vertex. Graph file: ``vertices n`` then ``edge u v w``
lines with 0-based vertices and integer weights. ``#`` starts a comment.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .code import LinearCode
from .complex import ComplexError, TriangularConfiguration, edge, tri
from .field import FieldError, FieldSpec
from .potts import GraphError, WeightedGraph


class ParseError(ValueError):
    def __init__(self, path, lineno: int, msg: str):
        super().__init__(f"{path}:{lineno}: {msg}")
        self.path, self.lineno = path, lineno


def _lines(text: str):
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line.split()


def parse_code(text: str, field: FieldSpec | None = None, path="<code>") -> LinearCode:
    """Parse a code file; `field` overrides the file's own field line."""
    length, vectors = None, []
    for i, toks in _lines(text):
        head = toks[0].lower()
        try:
            if head == "field":
                if len(toks) != 2:
                    raise ParseError(path, i, "expected 'field <spec>'")
                spec = FieldSpec.parse(toks[1])
                field = field or spec
            elif head == "length":
                if len(toks) != 2 or not toks[1].isdigit():
                    raise ParseError(path, i, "expected 'length <n>'")
                length = int(toks[1])
            else:
                if field is None:
                    raise ParseError(path, i, "vector before any 'field' line")
                vec = tuple(field.parse_literal(t) for t in toks)
                if length is None:
                    length = len(vec)
                if len(vec) != length:
                    raise ParseError(path, i, f"vector has {len(vec)} entries, expected {length}")
                vectors.append(vec)
        except (FieldError, ZeroDivisionError, ValueError) as err:
            if isinstance(err, ParseError):
                raise
            raise ParseError(path, i, str(err)) from None
    if field is None:
        raise ParseError(path, 0, "no field given")
    if length is None:
        raise ParseError(path, 0, "no length and no vectors")
    return LinearCode.spanned_by(field, length, vectors)


def format_code(code: LinearCode) -> str:
    lines = [f"field {code.field.literal}", f"length {code.length}"]
    for b in code.basis:
        lines.append(" ".join(str(x) for x in b))
    return "\n".join(lines) + "\n"


def parse_complex(text: str, path="<complex>") -> TriangularConfiguration:
    T, E, V = [], [], []
    for i, toks in _lines(text):
        kind, args = toks[0], toks[1:]
        try:
            if kind == "t" and len(args) == 3:
                T.append(tri(*args))
            elif kind == "e" and len(args) == 2:
                E.append(edge(*args))
            elif kind == "v" and len(args) == 1:
                V.append(args[0])
            else:
                raise ParseError(path, i, f"expected 't a b c', 'e a b' or 'v a', got {' '.join(toks)!r}")
        except ComplexError as err:
            raise ParseError(path, i, str(err)) from None
    return TriangularConfiguration.build(T, E, V)


def format_complex(cfg: TriangularConfiguration) -> str:
    lines = [f"t {' '.join(t)}" for t in cfg.sorted_triangles]
    lines += [f"e {' '.join(e)}" for e in cfg.maximal_edges]
    used = {v for e in cfg.edges for v in e}
    lines += [f"v {v}" for v in sorted(cfg.vertices - used)]
    return "\n".join(lines) + "\n"


def parse_graph(text: str, path="<graph>") -> WeightedGraph:
    n, edges = None, []
    for i, toks in _lines(text):
        try:
            if toks[0] == "vertices" and len(toks) == 2:
                n = int(toks[1])
            elif toks[0] == "edge" and len(toks) in (3, 4):
                edges.append(tuple(int(x) for x in toks[1:]))
            else:
                raise ParseError(path, i, f"expected 'vertices n' or 'edge u v w', got {' '.join(toks)!r}")
        except ValueError as err:
            if isinstance(err, ParseError):
                raise
            raise ParseError(path, i, str(err)) from None
    if n is None:
        raise ParseError(path, 0, "missing 'vertices' line")
    try:
        return WeightedGraph(n, tuple(edges))
    except GraphError as err:
        raise ParseError(path, 0, str(err)) from None


def sha256_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_atomic(path, text: str):
    """Write via a temp file in the same directory, then rename over the target."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path, obj):
    write_atomic(path, dumps(obj))


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as err:
        raise ParseError(path, err.lineno, err.msg) from None


def gadget_sidecar(gadget) -> dict:
    """Sign classes and class memberships of an oriented gadget, by triangle id."""
    from .complex import triangle_id

    cfg = gadget.complex
    out = {"plus": [triangle_id(t) for t in cfg.plus],
           "minus": [triangle_id(t) for t in cfg.minus]}
    if hasattr(gadget, "class_plus"):
        out["n"] = list(gadget.n_list)
        out["M"] = gadget.M
        out["values"] = [str(v) for v in gadget.values]
        out["class_plus"] = [[triangle_id(t) for t in c] for c in gadget.class_plus]
        out["class_minus"] = [[triangle_id(t) for t in c] for c in gadget.class_minus]
        out["junctions"] = [[triangle_id(t) for t in pair] for pair in gadget.junctions]
    if hasattr(gadget, "positive_end"):
        out["positive_end"] = triangle_id(gadget.positive_end)
        out["negative_end"] = triangle_id(gadget.negative_end)
    return out
