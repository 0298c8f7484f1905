"""JSON bundle and algebra files.

Bundle file::

    {"base": {"generators": [{"name": "c4", "degree": 4}, ...],
              "relations": ["..."]},
     "rank": 3,
     "chern": ["0", "c4", "c6"]}

``chern`` lists c2, c4, ... as polynomial text.  An algebra file is just
the ``base`` object.  Names without a path resolve to the shipped
fixtures.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .algebra import ParseError, RingPresentation
from .algebra.poly import GeneratorTable
from .gysin import BundleSpec

_NAME_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")


class SpecError(ValueError):
    """Schema violation; ``field`` names the offending entry."""

    def __init__(self, source: str, field: str, message: str):
        self.source, self.field = source, field
        super().__init__(f"{source}: {field}: {message}")


def fixture_names() -> list[str]:
    root = resources.files("mmm_calc") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def _read(path: str) -> tuple[str, Any]:
    p = Path(path)
    if p.exists():
        text, source = p.read_text(), str(p)
    else:
        name = path[:-5] if path.endswith(".json") else path
        if name not in fixture_names():
            raise SpecError(path, "<file>", "no such file or shipped fixture")
        text = (resources.files("mmm_calc") / "fixtures" / f"{name}.json").read_text()
        source = f"fixture:{name}"
    try:
        return source, json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(source, f"line {exc.lineno} column {exc.colno}", exc.msg) from None


def _require(obj: Any, key: str, kind, source: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise SpecError(source, f"{where}{key}", "missing")
    val = obj[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise SpecError(source, f"{where}{key}", f"expected an integer, got {val!r}")
    if kind is not int and not isinstance(val, kind):
        raise SpecError(source, f"{where}{key}", f"expected {kind.__name__}, got {type(val).__name__}")
    return val


def algebra_from_obj(obj: Any, source: str, where: str = "") -> RingPresentation:
    if not isinstance(obj, dict):
        raise SpecError(source, where.rstrip(".") or "<root>", "expected an object")
    gens = _require(obj, "generators", list, source, where)
    pairs = []
    seen = set()
    for i, g in enumerate(gens):
        at = f"{where}generators[{i}]."
        name = _require(g, "name", str, source, at)
        degree = _require(g, "degree", int, source, at)
        if not name or not set(name) <= _NAME_CHARS or name[0].isdigit():
            raise SpecError(source, f"{at}name", f"invalid generator name {name!r}")
        if name in seen:
            raise SpecError(source, f"{at}name", f"duplicate generator {name!r}")
        if degree < 1:
            raise SpecError(source, f"{at}degree", f"degree must be positive, got {degree}")
        seen.add(name)
        pairs.append((name, degree))
    table = GeneratorTable(pairs)
    rels = obj.get("relations", [])
    if not isinstance(rels, list):
        raise SpecError(source, f"{where}relations", "expected a list")
    free = RingPresentation.free(pairs)
    polys = []
    for i, text in enumerate(rels):
        at = f"{where}relations[{i}]"
        if not isinstance(text, str):
            raise SpecError(source, at, "expected polynomial text")
        try:
            p = free.parse(text)
        except ParseError as exc:
            raise SpecError(source, at, str(exc)) from None
        if p.is_zero() or not p.is_homogeneous():
            raise SpecError(source, at, "relation must be a nonzero homogeneous polynomial")
        polys.append(p)
    name = obj.get("name")
    try:
        return RingPresentation.from_relations(table, polys, name=name) if polys else RingPresentation.free(pairs, name=name)
    except ValueError as exc:
        raise SpecError(source, f"{where}relations", str(exc)) from None


def parse_algebra(path: str) -> RingPresentation:
    source, obj = _read(path)
    if isinstance(obj, dict) and "base" in obj:
        return algebra_from_obj(obj["base"], source, "base.")
    return algebra_from_obj(obj, source)


def parse_bundle(path: str) -> BundleSpec:
    source, obj = _read(path)
    base_obj = _require(obj, "base", dict, source, "")
    base = algebra_from_obj(base_obj, source, "base.")
    rank = _require(obj, "rank", int, source, "")
    if rank < 1:
        raise SpecError(source, "rank", f"rank must be at least 1, got {rank}")
    chern_text = obj.get("chern", [])
    if not isinstance(chern_text, list):
        raise SpecError(source, "chern", "expected a list of polynomials")
    if len(chern_text) > rank:
        raise SpecError(source, "chern", f"{len(chern_text)} classes given for rank {rank}")
    chern = []
    for i, text in enumerate(chern_text):
        at = f"chern[{i}]"
        if isinstance(text, int) and not isinstance(text, bool):
            text = str(text)
        if not isinstance(text, str):
            raise SpecError(source, at, "expected polynomial text")
        try:
            c = base.reduce(base.parse(text))
        except ParseError as exc:
            raise SpecError(source, at, str(exc)) from None
        if not c.is_zero() and c.degrees() != {2 * (i + 1)}:
            raise SpecError(source, at, f"c{2 * (i + 1)} must be homogeneous of degree {2 * (i + 1)}, got {sorted(c.degrees())}")
        chern.append(c)
    return BundleSpec(base, rank, tuple(chern), name=obj.get("name", ""))
