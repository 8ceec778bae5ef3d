"""Finite directed graphs and their finite paths.

Vertices and edges are interned as small integers in declaration order; the
name tables live on the :class:`Graph`.  A path ``e1 e2 ... ek`` is composable
when ``r(e_{i+1}) == s(e_i)``; ``r`` of the path is ``r(e1)`` and ``s`` is
``s(ek)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class GraphError(ValueError):
    pass


class EmptyGraph(GraphError):
    def __init__(self):
        super().__init__("graph has no vertices")


class SourceVertex(GraphError):
    def __init__(self, vertex: str):
        self.vertex = vertex
        super().__init__(f"vertex {vertex!r} receives no edge (it is a source)")


class DanglingEdge(GraphError):
    def __init__(self, edge: str, endpoint: str):
        self.edge = edge
        self.endpoint = endpoint
        super().__init__(f"edge {edge!r} refers to unknown vertex {endpoint!r}")


class DuplicateName(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


class UnknownEdge(GraphError):
    pass


class NotComposable(GraphError):
    pass


class InvalidGraph(GraphError):
    def __init__(self, problems: list[GraphError]):
        self.problems = problems
        super().__init__("; ".join(str(p) for p in problems))


@dataclass(frozen=True)
class Path:
    """A finite path.  ``r`` is kept explicitly so empty paths at different
    vertices are different values."""

    r: int
    s: int
    edges: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def is_vertex(self) -> bool:
        return not self.edges


class Graph:
    def __init__(self, vertices: Sequence[str], edges: Sequence[tuple[str, str, str]]):
        """``edges`` are ``(name, range, source)`` triples."""
        self.vertex_names: tuple[str, ...] = tuple(vertices)
        self.edge_names: tuple[str, ...] = tuple(e[0] for e in edges)
        self._raw_edges = tuple(tuple(e) for e in edges)
        self.vertex_id = {name: i for i, name in enumerate(self.vertex_names)}
        self.edge_id = {name: i for i, name in enumerate(self.edge_names)}
        self.r = tuple(self.vertex_id.get(e[1], -1) for e in edges)
        self.s = tuple(self.vertex_id.get(e[2], -1) for e in edges)

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_names)

    @property
    def n_edges(self) -> int:
        return len(self.edge_names)

    @cached_property
    def edges_into(self) -> tuple[tuple[int, ...], ...]:
        """``edges_into[v]`` lists vE^1, the edges with range v, in id order."""
        out = [[] for _ in self.vertex_names]
        for e, v in enumerate(self.r):
            if v >= 0:
                out[v].append(e)
        return tuple(tuple(x) for x in out)

    def vertex(self, name: str) -> int:
        try:
            return self.vertex_id[name]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {name!r}") from None

    def edge(self, name: str) -> int:
        try:
            return self.edge_id[name]
        except KeyError:
            raise UnknownEdge(f"unknown edge {name!r}") from None

    # -- paths -------------------------------------------------------------

    def vertex_path(self, v: int) -> Path:
        return Path(v, v, ())

    def path(self, edges: Iterable[int], base: int | None = None) -> Path:
        edges = tuple(edges)
        if not edges:
            if base is None:
                raise ValueError("empty path needs a base vertex")
            return Path(base, base, ())
        for x, y in zip(edges, edges[1:]):
            if self.r[y] != self.s[x]:
                raise NotComposable(f"{self.edge_names[x]} {self.edge_names[y]}: "
                                    f"s({self.edge_names[x]}) != r({self.edge_names[y]})")
        if base is not None and base != self.r[edges[0]]:
            raise NotComposable("base vertex does not match range of first edge")
        return Path(self.r[edges[0]], self.s[edges[-1]], edges)

    def parse_path(self, text: str) -> Path:
        """Whitespace separated edge names; a lone vertex name is the empty path there."""
        tokens = text.split()
        if len(tokens) == 1 and tokens[0] in self.vertex_id and tokens[0] not in self.edge_id:
            return self.vertex_path(self.vertex_id[tokens[0]])
        if not tokens:
            raise ValueError("empty path text; name a vertex for an empty path")
        return self.path(self.edge(t) for t in tokens)

    def format_path(self, p: Path) -> str:
        if not p.edges:
            return self.vertex_names[p.r]
        return " ".join(self.edge_names[e] for e in p.edges)


def validate_graph(g: Graph) -> list[GraphError]:
    """All invariant violations of ``g``; an empty list means the graph is usable."""
    problems: list[GraphError] = []
    if not g.vertex_names:
        problems.append(EmptyGraph())
        return problems
    seen = set()
    for name in g.vertex_names + g.edge_names:
        if name in seen:
            problems.append(DuplicateName(f"duplicate name {name!r}"))
        seen.add(name)
    for (name, rv, sv), r, s in zip(g._raw_edges, g.r, g.s):
        if r < 0:
            problems.append(DanglingEdge(name, rv))
        if s < 0:
            problems.append(DanglingEdge(name, sv))
    for v, ins in enumerate(g.edges_into):
        if not ins:
            problems.append(SourceVertex(g.vertex_names[v]))
    return problems


def check_graph(g: Graph) -> Graph:
    problems = validate_graph(g)
    if problems:
        raise InvalidGraph(problems)
    return g


def paths_of_length(g: Graph, v: int, k: int) -> list[Path]:
    """vE^k in lexicographic order of edge ids."""
    if not 0 <= v < g.n_vertices:
        raise UnknownVertex(f"unknown vertex id {v}")
    out = [Path(v, v, ())]
    for _ in range(k):
        out = [Path(p.r, g.s[e], p.edges + (e,)) for p in out for e in g.edges_into[p.s]]
    return out


def concat(mu: Path, nu: Path) -> Path:
    if mu.s != nu.r:
        raise NotComposable(f"s(mu)={mu.s} != r(nu)={nu.r}")
    return Path(mu.r, nu.s, mu.edges + nu.edges)


def strip_prefix(mu: Path, beta: Path) -> Path | None:
    """The path lam with mu == beta lam, or None when beta is not a prefix of mu."""
    if beta.r != mu.r or len(beta) > len(mu) or mu.edges[:len(beta)] != beta.edges:
        return None
    rest = mu.edges[len(beta):]
    return Path(beta.s, mu.s, rest)


def is_prefix(beta: Path, mu: Path) -> bool:
    return strip_prefix(mu, beta) is not None
