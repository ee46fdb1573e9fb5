"""JSON file formats: group files, constructor parameter files, Lie algebras.

Scalars are written as strings "p" or "p/q"; plain JSON integers are also
accepted on input.  Every parse failure raises :class:`ParseError` carrying
a locus such as ``generators[1].linear[2][0]``.
"""

from __future__ import annotations

import json
import sys
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import FlatIsoError, InputError, ParseError
from .exactlin import Matrix, Vector, format_scalar, parse_scalar
from .isogrp import AffineIsometry, GroupPresentation
from .lowdim import construct_dim6, construct_sig2
from .nilrep import NilLieAlgebra, realize_group
from .quadspace import QuadraticSpace

GROUP_FORMAT = "flatiso-group"
LIE_FORMAT = "flatiso-lie"
FORMAT_VERSION = 1


def _scalar(x: Any, locus: str):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ParseError(locus, f"expected a rational string like \"3/4\", got {x!r}")
    try:
        return parse_scalar(str(x))
    except InputError as exc:
        raise ParseError(locus, str(exc)) from None


def _vector(x: Any, locus: str, length: int | None = None) -> Vector:
    if not isinstance(x, list):
        raise ParseError(locus, "expected a list of scalars")
    if length is not None and len(x) != length:
        raise ParseError(locus, f"expected length {length}, got {len(x)}")
    return tuple(_scalar(v, f"{locus}[{i}]") for i, v in enumerate(x))


def _matrix(x: Any, locus: str, shape: tuple[int, int] | None = None) -> Matrix:
    if not isinstance(x, list) or not all(isinstance(r, list) for r in x):
        raise ParseError(locus, "expected a list of rows")
    if shape is not None and len(x) != shape[0]:
        raise ParseError(locus, f"expected {shape[0]} rows, got {len(x)}")
    width = shape[1] if shape is not None else (len(x[0]) if x else 0)
    return Matrix([_vector(r, f"{locus}[{i}]", width) for i, r in enumerate(x)])


def _int(x: Any, locus: str, minimum: int = 0) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < minimum:
        raise ParseError(locus, f"expected an integer >= {minimum}, got {x!r}")
    return x


def _require(doc: dict, key: str, locus: str = "") -> Any:
    if key not in doc:
        raise ParseError(f"{locus}.{key}" if locus else key, "missing field")
    return doc[key]


def load_json(path: str | Path) -> Any:
    text = Path(path).read_text() if str(path) != "-" else sys.stdin.read()
    return loads_json(text)


def loads_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None


def _space(doc: dict) -> QuadraticSpace:
    if "gram" in doc and "signature" in doc:
        raise ParseError("signature", "give either signature or gram, not both")
    if "gram" in doc:
        gram = _matrix(doc["gram"], "gram")
        if not gram.is_square():
            raise ParseError("gram", "Gram matrix must be square")
        if not gram.is_symmetric():
            raise ParseError("gram", "Gram matrix is not symmetric")
        try:
            return QuadraticSpace(gram)
        except FlatIsoError as exc:
            raise ParseError("gram", str(exc)) from None
    sig = _require(doc, "signature")
    if not isinstance(sig, list) or len(sig) != 2:
        raise ParseError("signature", "expected [p, q]")
    p, q = _int(sig[0], "signature[0]"), _int(sig[1], "signature[1]")
    if p < q:
        raise ParseError("signature", "p >= q is required; negate the form")
    return QuadraticSpace.from_signature(p, q)


def parse_group(doc: Any) -> GroupPresentation:
    if not isinstance(doc, dict):
        raise ParseError("<root>", "expected a JSON object")
    fmt = doc.get("format", GROUP_FORMAT)
    if fmt != GROUP_FORMAT:
        raise ParseError("format", f"expected {GROUP_FORMAT!r}, got {fmt!r}")
    version = doc.get("version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ParseError("version", f"unsupported version {version!r}")
    space = _space(doc)
    n = space.dim
    mode = doc.get("linear", "full")
    if mode not in ("full", "nilpotent"):
        raise ParseError("linear", "expected \"full\" or \"nilpotent\"")
    raw = doc.get("generators", [])
    if not isinstance(raw, list):
        raise ParseError("generators", "expected a list")
    gens, names = [], []
    for i, g in enumerate(raw):
        loc = f"generators[{i}]"
        if not isinstance(g, dict):
            raise ParseError(loc, "expected an object")
        lin = _matrix(_require(g, "linear", loc), f"{loc}.linear", (n, n))
        t = _vector(_require(g, "translation", loc), f"{loc}.translation", n)
        if mode == "full":
            gens.append(AffineIsometry.from_linear(space, lin, t))
        else:
            gens.append(AffineIsometry(space, lin, t))
        name = g.get("name", f"g{i + 1}")
        if not isinstance(name, str):
            raise ParseError(f"{loc}.name", "expected a string")
        names.append(name)
    if len(set(names)) != len(names):
        raise ParseError("generators", "generator names must be distinct")
    return GroupPresentation(space, tuple(gens), tuple(names))


def load_group(path: str | Path) -> GroupPresentation:
    return parse_group(load_json(path))


def fixture_path(name: str) -> Path:
    """Path of a bundled example group file, e.g. ``heisenberg_r14_7.json``."""
    return Path(str(resources.files("flatiso") / "fixtures" / name))


def matrix_strings(m: Matrix) -> list[list[str]]:
    return [[format_scalar(x) for x in r] for r in m.rows]


def vector_strings(v) -> list[str]:
    return [format_scalar(x) for x in v]


def serialize_group(P: GroupPresentation, description: str | None = None) -> dict:
    doc: dict[str, Any] = {"format": GROUP_FORMAT, "version": FORMAT_VERSION}
    if description:
        doc["description"] = description
    doc["gram"] = matrix_strings(P.space.gram)
    doc["linear"] = "full"
    doc["generators"] = [
        {"name": name, "linear": matrix_strings(g.linear), "translation": vector_strings(g.translation)}
        for name, g in zip(P.names, P.generators)
    ]
    return doc


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# Lie algebras and constructor parameters


def parse_lie(doc: dict, locus: str = ""):
    def loc(key: str) -> str:
        return f"{locus}.{key}" if locus else key

    dim = _int(_require(doc, "dim", locus), loc("dim"))
    raw = doc.get("brackets", [])
    if not isinstance(raw, list):
        raise ParseError(loc("brackets"), "expected a list of [i, j, k, c] entries")
    entries = []
    for idx, e in enumerate(raw):
        el = f"{loc('brackets')}[{idx}]"
        if not isinstance(e, list) or len(e) != 4:
            raise ParseError(el, "expected [i, j, k, c] with 1-based indices")
        i, j, k = (_int(e[t], f"{el}[{t}]", 1) for t in range(3))
        if not i < j:
            raise ParseError(el, "brackets are given for i < j only")
        if max(i, j, k) > dim:
            raise ParseError(el, f"index exceeds dimension {dim}")
        entries.append((i - 1, j - 1, k - 1, _scalar(e[3], f"{el}[3]")))
    try:
        return NilLieAlgebra(dim, tuple(entries))
    except InputError as exc:
        raise ParseError(loc("brackets"), str(exc)) from None


def build_from_parameters(doc: Any) -> GroupPresentation:
    """Run the constructor named by ``construct`` (or a Lie algebra file)."""
    if not isinstance(doc, dict):
        raise ParseError("<root>", "expected a JSON object")
    kind = doc.get("construct")
    if kind is None and doc.get("format") == LIE_FORMAT:
        kind = "nilrep"
    if kind == "sig2":
        n = _int(_require(doc, "n"), "n")
        raw = _require(doc, "generators")
        if not isinstance(raw, list):
            raise ParseError("generators", "expected a list")
        k = _int(doc.get("k", len(raw)), "k")
        gens = []
        for i, g in enumerate(raw):
            loc = f"generators[{i}]"
            if not isinstance(g, dict):
                raise ParseError(loc, "expected an object with c, u, w")
            gens.append(
                {
                    "c": _scalar(g.get("c", "0"), f"{loc}.c"),
                    "u": _vector(g.get("u", ["0", "0"]), f"{loc}.u", 2),
                    "w": _vector(g.get("w", ["0"] * max(n - 4, 0)), f"{loc}.w", max(n - 4, 0)),
                }
            )
        return construct_sig2(k, n, gens)
    if kind == "dim6":
        typ = _require(doc, "type")
        if typ not in ("a", "b"):
            raise ParseError("type", "expected \"a\" or \"b\"")
        params: dict[str, Any] = {"alpha": _scalar(doc.get("alpha", "1"), "alpha")}
        for key in ("ustar", "u", "theta"):
            if key in doc:
                if not isinstance(doc[key], list):
                    raise ParseError(key, "expected a list of 3-vectors")
                params[key] = [_vector(v, f"{key}[{i}]", 3) for i, v in enumerate(doc[key])]
        return construct_dim6(typ, params)
    if kind == "nilrep":
        g = parse_lie(doc)
        raw = doc.get("generators")
        if raw is None:
            gens = [tuple(x) + (0,) * g.dim for x in g.basis()]
        else:
            if not isinstance(raw, list):
                raise ParseError("generators", "expected a list of vectors of length 2 dim")
            gens = [_vector(v, f"generators[{i}]", 2 * g.dim) for i, v in enumerate(raw)]
        return realize_group(g, gens)
    raise ParseError("construct", f"unknown constructor {kind!r}; expected sig2, dim6 or nilrep")
