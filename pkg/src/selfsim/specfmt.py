"""Text formats: system specs and finite groupoid tables.

Both formats are YAML documents.  A system spec looks like::

    vertices: [u, v]
    edges:
      - [e1, u, u]          # name, range, source
      - [e2, v, u]
    generators:
      - name: a
        d: u
        t: v
        moves:
          e1: [e2, u]       # a . e1 = e2 and a|_e1 = u
    cocycle: {a: 1}         # optional degree per generator
    budgets: {max_seen: 10000, max_len: 64}   # optional

Restriction words are whitespace separated tokens ``g`` or ``g^-1``; the
rightmost letter acts first and a vertex name stands for the unit there.
An optional ``inverse_moves`` map per generator is checked against the
derived inverse rows.

A finite groupoid file lists ``elements``, ``units``, ``d`` and ``t`` (lists
aligned with ``elements``) and ``products`` as ``[x, y, xy]`` triples.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path as FsPath

import yaml

from .action import ActionSystem, Budget, DegreeCocycle, build_system
from .finitegpd import FiniteGroupoid, InvalidGroupoid
from .graph import DuplicateName, EmptyGraph, Graph


class SpecError(ValueError):
    pass


class SpecSyntaxError(SpecError):
    def __init__(self, msg: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{msg}{where}")


class UnknownIdentifier(SpecError):
    pass


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    d: str
    t: str
    moves: tuple[tuple[str, str, str], ...]
    inverse_moves: tuple[tuple[str, str, str], ...] = ()


@dataclass(frozen=True)
class SystemSpec:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]
    generators: tuple[GeneratorSpec, ...]
    cocycle: tuple[tuple[str, int], ...] | None = None
    budgets: tuple[tuple[str, int], ...] | None = None


def _load(text: str):
    try:
        return yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        raise SpecSyntaxError(str(exc.problem), mark.line + 1 if mark else None,
                              mark.column + 1 if mark else None) from None
    except yaml.YAMLError as exc:
        raise SpecSyntaxError(str(exc)) from None


def _names(x, what: str) -> list[str]:
    if not isinstance(x, list):
        raise SpecSyntaxError(f"{what} must be a list")
    return [str(v) for v in x]


def _move_rows(raw, gen: str, key: str) -> tuple[tuple[str, str, str], ...]:
    if raw is None:
        return ()
    if not isinstance(raw, dict):
        raise SpecSyntaxError(f"{key} of {gen!r} must be a mapping")
    rows = []
    for e, val in raw.items():
        if isinstance(val, dict):
            img, word = val.get("image"), val.get("restriction")
        elif isinstance(val, (list, tuple)) and len(val) == 2:
            img, word = val
        else:
            raise SpecSyntaxError(f"{key}[{e}] of {gen!r} must be [image, restriction]")
        if img is None or word is None:
            raise SpecSyntaxError(f"{key}[{e}] of {gen!r} needs an image and a restriction")
        rows.append((str(e), str(img), str(word)))
    return tuple(rows)


def parse_spec(text: str) -> SystemSpec:
    doc = _load(text)
    if doc is None:
        raise EmptyGraph()
    if not isinstance(doc, dict):
        raise SpecSyntaxError("a spec is a mapping with vertices, edges and generators")
    if not doc.get("vertices"):
        raise EmptyGraph()
    unknown = set(doc) - {"vertices", "edges", "generators", "cocycle", "budgets"}
    if unknown:
        raise SpecSyntaxError(f"unknown top-level keys {sorted(unknown)}")
    vertices = _names(doc["vertices"], "vertices")
    edges = []
    for row in doc.get("edges") or []:
        if isinstance(row, dict):
            row = [row.get("name"), row.get("r"), row.get("s")]
        if not isinstance(row, (list, tuple)) or len(row) != 3 or None in row:
            raise SpecSyntaxError(f"edge entry {row!r} must be [name, range, source]")
        edges.append(tuple(str(x) for x in row))
    gens = []
    for row in doc.get("generators") or []:
        if not isinstance(row, dict) or not {"name", "d", "t"} <= set(row):
            raise SpecSyntaxError(f"generator entry {row!r} needs name, d and t")
        name = str(row["name"])
        gens.append(GeneratorSpec(name, str(row["d"]), str(row["t"]),
                                  _move_rows(row.get("moves"), name, "moves"),
                                  _move_rows(row.get("inverse_moves"), name, "inverse_moves")))
    seen: set[str] = set()
    for name in [e[0] for e in edges] + [g.name for g in gens]:
        if name in seen:
            raise DuplicateName(f"duplicate edge or generator {name!r}")
        seen.add(name)
    cocycle = None
    if doc.get("cocycle") is not None:
        raw = doc["cocycle"]
        if not isinstance(raw, dict):
            raise SpecSyntaxError("cocycle must map generator names to integers")
        gnames = {g.name for g in gens}
        for k in raw:
            if str(k) not in gnames:
                raise UnknownIdentifier(f"cocycle names unknown generator {k!r}")
        cocycle = tuple((str(k), int(v)) for k, v in raw.items())
    budgets = None
    if doc.get("budgets") is not None:
        raw = doc["budgets"]
        if not isinstance(raw, dict) or set(raw) - {"max_seen", "max_len"}:
            raise SpecSyntaxError("budgets takes max_seen and max_len")
        budgets = tuple((str(k), int(v)) for k, v in raw.items())
    return SystemSpec(tuple(vertices), tuple(edges), tuple(gens), cocycle, budgets)


def _flow(items) -> str:
    return "[" + ", ".join(items) + "]"


def _scalar(s: str) -> str:
    """``s`` as a flow-context YAML scalar that reads back as the same string."""
    if re.fullmatch(r"[A-Za-z0-9_.^+-]+", s) and yaml.safe_load(s) == s:
        return s
    return json.dumps(s)


def emit_spec(spec: SystemSpec) -> str:
    lines = [f"vertices: {_flow(_scalar(v) for v in spec.vertices)}",
             "edges:" + ("" if spec.edges else " []")]
    for name, r, s in spec.edges:
        lines.append(f"  - {_flow(_scalar(x) for x in (name, r, s))}")
    lines.append("generators:" + ("" if spec.generators else " []"))
    for g in spec.generators:
        lines.append(f"  - name: {_scalar(g.name)}")
        lines.append(f"    d: {_scalar(g.d)}")
        lines.append(f"    t: {_scalar(g.t)}")
        for key, rows in (("moves", g.moves), ("inverse_moves", g.inverse_moves)):
            if key == "inverse_moves" and not rows:
                continue
            lines.append(f"    {key}:" + ("" if rows else " {}"))
            for e, img, word in rows:
                lines.append(f"      {_scalar(e)}: {_flow([_scalar(img), _scalar(word)])}")
    if spec.cocycle is not None:
        body = ", ".join(f"{_scalar(k)}: {v}" for k, v in spec.cocycle)
        lines.append(f"cocycle: {{{body}}}")
    if spec.budgets is not None:
        body = ", ".join(f"{k}: {v}" for k, v in spec.budgets)
        lines.append(f"budgets: {{{body}}}")
    return "\n".join(lines) + "\n"


def spec_graph(spec: SystemSpec) -> Graph:
    return Graph(list(spec.vertices), list(spec.edges))


def to_system(spec: SystemSpec) -> ActionSystem:
    g = spec_graph(spec)
    tables = {}
    for gen in spec.generators:
        tables[gen.name] = {
            "d": gen.d, "t": gen.t,
            "moves": {e: (img, w) for e, img, w in gen.moves},
            "inverse_moves": {e: (img, w) for e, img, w in gen.inverse_moves},
        }
    return build_system(g, tables)


def spec_cocycle(spec: SystemSpec, sys: ActionSystem) -> DegreeCocycle | None:
    if spec.cocycle is None:
        return None
    return DegreeCocycle({sys.gen_id[name]: deg for name, deg in spec.cocycle})


def spec_budget(spec: SystemSpec) -> Budget | None:
    if spec.budgets is None:
        return None
    return Budget(**dict(spec.budgets))


# -- finite groupoids -----------------------------------------------------------


def parse_gpd(text: str) -> FiniteGroupoid:
    doc = _load(text)
    if not isinstance(doc, dict):
        raise SpecSyntaxError("a groupoid file is a mapping")
    for key in ("elements", "units", "d", "t", "products"):
        if key not in doc:
            raise SpecSyntaxError(f"missing key {key!r}")
    elements = _names(doc["elements"], "elements")
    units = _names(doc["units"], "units")
    d = _names(doc["d"], "d")
    t = _names(doc["t"], "t")
    if len(d) != len(elements) or len(t) != len(elements):
        raise SpecSyntaxError("d and t must be aligned with elements")
    index = {x: i for i, x in enumerate(elements)}
    if len(index) != len(elements):
        raise DuplicateName("duplicate element")
    for x in units + d + t:
        if x not in index:
            raise UnknownIdentifier(f"unknown element {x!r}")
    mul = {}
    for row in doc["products"] or []:
        if not isinstance(row, list) or len(row) != 3:
            raise SpecSyntaxError(f"product entry {row!r} must be [x, y, xy]")
        x, y, z = (str(v) for v in row)
        for v in (x, y, z):
            if v not in index:
                raise UnknownIdentifier(f"unknown element {v!r}")
        if (index[x], index[y]) in mul:
            raise DuplicateName(f"product {x} * {y} given twice")
        mul[index[x], index[y]] = index[z]
    G = FiniteGroupoid(elements, [index[v] for v in d], [index[v] for v in t], mul)
    if sorted(index[u] for u in units) != G.units:
        raise InvalidGroupoid("declared units differ from the images of d and t")
    return G


def _label_text(lab) -> str:
    if isinstance(lab, str):
        return lab
    if isinstance(lab, tuple):
        return "(" + ",".join(_label_text(x) for x in lab) + ")"
    return str(lab)


def emit_gpd(G: FiniteGroupoid) -> str:
    names = [_label_text(x) for x in G.labels]
    if len(set(names)) != len(names):
        raise SpecError("element labels do not print distinctly")
    q = [_scalar(n) for n in names]
    lines = [f"elements: {_flow(q)}",
             f"units: {_flow(q[u] for u in G.units)}",
             f"d: {_flow(q[x] for x in G.d)}",
             f"t: {_flow(q[x] for x in G.t)}",
             "products:"]
    for (x, y), z in sorted(G._mul.items()):
        lines.append(f"  - {_flow([q[x], q[y], q[z]])}")
    return "\n".join(lines) + "\n"


# -- bundled data ----------------------------------------------------------------


def data_path(name: str) -> FsPath:
    return FsPath(str(resources.files("selfsim") / "data" / name))


def read_input(name: str) -> str:
    """Read a file, falling back to the bundled data directory."""
    p = FsPath(name)
    if p.exists():
        return p.read_text()
    bundled = data_path(name)
    if bundled.exists():
        return bundled.read_text()
    raise FileNotFoundError(name)
