"""Germs [alpha, g, beta; xi] over eventually periodic infinite paths.

Only points of the form ``prefix cycle cycle ...`` are represented.  Germ
equality is decided by extending both germs along the common point until the
betas agree; under pseudo-freeness the remaining comparison is word equality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .action import DEFAULT_BUDGET, ActionSystem, Budget, Decision, Word
from .graph import Graph, NotComposable, Path, concat


class GermError(ValueError):
    pass


class NotAlongPoint(GermError):
    pass


class PeriodicityBudgetExceeded(GermError):
    """The image of a point did not become visibly periodic within budget.

    ``image_prefix(n)`` still evaluates any finite prefix of the image.
    """

    def __init__(self, msg, image_prefix):
        super().__init__(msg)
        self.image_prefix = image_prefix


@dataclass(frozen=True)
class EvPath:
    prefix: Path
    cycle: Path

    @property
    def r(self) -> int:
        return self.prefix.r

    def edge_at(self, i: int) -> int:
        p = self.prefix.edges
        if i < len(p):
            return p[i]
        c = self.cycle.edges
        return c[(i - len(p)) % len(c)]

    def first(self, n: int) -> tuple[int, ...]:
        return tuple(self.edge_at(i) for i in range(n))


def make_evpath(g: Graph, prefix: Path, cycle: Path) -> EvPath:
    if not cycle.edges:
        raise GermError("cycle must be nonempty")
    if cycle.r != prefix.s or cycle.s != cycle.r:
        raise GermError("cycle must be a loop at s(prefix)")
    return EvPath(prefix, cycle)


def ev_prefix(g: Graph, xi: EvPath, n: int) -> Path:
    return g.path(xi.first(n), base=xi.r)


def ev_drop(g: Graph, xi: EvPath, n: int) -> EvPath:
    """The tail of xi after its first n edges."""
    p = xi.prefix.edges
    if n <= len(p):
        return EvPath(g.path(p[n:], base=xi.prefix.s if n == len(p) else g.r[p[n]]), xi.cycle)
    k = (n - len(p)) % len(xi.cycle)
    c = xi.cycle.edges
    rot = c[k:] + c[:k]
    start = g.r[rot[0]]
    return EvPath(g.vertex_path(start), g.path(rot))


def ev_equal(xi1: EvPath, xi2: EvPath) -> bool:
    if xi1.r != xi2.r:
        return False
    n = 2 * (max(len(xi1.prefix), len(xi2.prefix)) + len(xi1.cycle) * len(xi2.cycle))
    return xi1.first(n) == xi2.first(n)


def ev_canonical(g: Graph, xi: EvPath) -> EvPath:
    """Shortest prefix and primitive cycle describing the same point."""
    c = xi.cycle.edges
    n = len(c)
    for p in range(1, n + 1):
        if n % p == 0 and c[:p] * (n // p) == c:
            c = c[:p]
            break
    pre = list(xi.prefix.edges)
    while pre and pre[-1] == c[-1]:
        pre.pop()
        c = (c[-1],) + c[:-1]
    prefix = g.path(pre, base=xi.r)
    return EvPath(prefix, g.path(c))


def ev_concat(g: Graph, mu: Path, xi: EvPath) -> EvPath:
    return EvPath(concat(mu, xi.prefix), xi.cycle)


def parse_evpath(g: Graph, text: str) -> EvPath:
    """``prefix | cycle`` where prefix may be a vertex name."""
    left, bar, right = text.partition("|")
    if not bar:
        raise GermError("point syntax is 'prefix | cycle'")
    cycle = g.parse_path(right)
    prefix = g.parse_path(left) if left.strip() else g.vertex_path(cycle.r)
    return make_evpath(g, prefix, cycle)


def format_evpath(g: Graph, xi: EvPath) -> str:
    return f"{g.format_path(xi.prefix)} | {g.format_path(xi.cycle)}"


def act_point(sys: ActionSystem, w: Word, xi: EvPath, max_passes: int = 4096) -> EvPath:
    """w . xi as an eventually periodic point.

    The restriction word at the start of each pass through the cycle is the
    state; the first repeated state closes the period of the image.
    """
    if xi.r != w.d:
        raise NotComposable("point does not start at d(w)")
    g = sys.graph
    cur = w
    out: list[int] = []
    for e in xi.prefix.edges:
        f, cur = sys.act_restrict_edge(cur, e)
        out.append(f)
    seen: dict[Word, int] = {}
    while cur not in seen:
        if len(seen) >= max_passes:
            def image_prefix(n, _w=w, _xi=xi):
                return sys.act_path(_w, ev_prefix(g, _xi, n))
            raise PeriodicityBudgetExceeded(
                f"image not periodic after {max_passes} passes through the cycle", image_prefix)
        seen[cur] = len(out)
        for e in xi.cycle.edges:
            f, cur = sys.act_restrict_edge(cur, e)
            out.append(f)
    start = seen[cur]
    prefix = g.path(out[:start], base=w.t)
    return EvPath(prefix, g.path(out[start:]))


@dataclass(frozen=True)
class Germ:
    alpha: Path
    word: Word
    beta: Path
    point: EvPath


def make_germ(sys: ActionSystem, alpha: Path, word: Word, beta: Path, point: EvPath) -> Germ:
    if word.d != beta.s or word.t != alpha.s:
        raise GermError("word must run from s(beta) to s(alpha)")
    if point.r != beta.r or point.first(len(beta)) != beta.edges:
        raise NotAlongPoint("beta is not a prefix of the point")
    return Germ(alpha, word, beta, point)


def unit_germ(sys: ActionSystem, xi: EvPath) -> Germ:
    v = xi.r
    return Germ(sys.graph.vertex_path(v), sys.unit(v), sys.graph.vertex_path(v), xi)


def germ_source(x: Germ) -> EvPath:
    return x.point


def germ_range(sys: ActionSystem, x: Germ) -> EvPath:
    g = sys.graph
    tail = ev_drop(g, x.point, len(x.beta))
    return ev_concat(g, x.alpha, act_point(sys, x.word, tail))


def extend(sys: ActionSystem, x: Germ, lam: Path) -> Germ:
    """[alpha (w . lam), w|_lam, beta lam; xi]: the same germ with a longer beta."""
    if not lam.edges:
        if lam.r != x.beta.s:
            raise NotAlongPoint("empty extension at the wrong vertex")
        return x
    n = len(x.beta)
    if lam.r != x.beta.s or x.point.first(n + len(lam)) != x.beta.edges + lam.edges:
        raise NotAlongPoint("beta lam is not a prefix of the point")
    moved, res = sys.act_restrict_path(x.word, lam)
    return Germ(concat(x.alpha, moved), res, concat(x.beta, lam), x.point)


def extend_to(sys: ActionSystem, x: Germ, beta_len: int) -> Germ:
    n = len(x.beta)
    if beta_len <= n:
        return x
    lam = sys.graph.path(x.point.first(beta_len)[n:], base=x.beta.s)
    return extend(sys, x, lam)


def germ_equal(sys: ActionSystem, x1: Germ, x2: Germ, budget: Budget = DEFAULT_BUDGET) -> Decision:
    if not ev_equal(x1.point, x2.point):
        return Decision.NO
    if len(x1.alpha) - len(x1.beta) != len(x2.alpha) - len(x2.beta):
        return Decision.NO
    n = max(len(x1.beta), len(x2.beta))
    a, b = extend_to(sys, x1, n), extend_to(sys, x2, n)
    if a.alpha != b.alpha:
        return Decision.NO
    return sys.equal(a.word, b.word, budget)


def compose(sys: ActionSystem, x1: Germ, x2: Germ) -> Germ:
    """x1 x2, defined when d(x1) = t(x2)."""
    if not ev_equal(x1.point, germ_range(sys, x2)):
        raise NotComposable("d(x1) != t(x2)")
    n = max(len(x1.beta), len(x2.alpha))
    a = extend_to(sys, x1, n)
    b = extend_to(sys, x2, len(x2.beta) + n - len(x2.alpha))
    if a.beta != b.alpha:
        raise NotComposable("aligned paths disagree")
    return Germ(a.alpha, sys.mul(a.word, b.word), b.beta, b.point)


def invert(sys: ActionSystem, x: Germ) -> Germ:
    return Germ(x.beta, sys.inverse(x.word), x.alpha, germ_range(sys, x))


def rho(x: Germ) -> int:
    return len(x.alpha) - len(x.beta)


@dataclass(frozen=True)
class Bisection:
    """The full-cylinder bisection B(alpha, g, beta; Z(beta))."""

    alpha: Path
    word: Word
    beta: Path

    def germ_at(self, sys: ActionSystem, xi: EvPath) -> Germ:
        return make_germ(sys, self.alpha, self.word, self.beta, xi)

    @property
    def degree(self) -> int:
        return len(self.alpha) - len(self.beta)


def std_bisection_word(sys: ActionSystem, w: Word) -> Bisection:
    g = sys.graph
    return Bisection(g.vertex_path(w.t), w, g.vertex_path(w.d))


def std_bisection_edge(sys: ActionSystem, e: int) -> Bisection:
    g = sys.graph
    s = g.s[e]
    return Bisection(g.path([e]), sys.unit(s), g.vertex_path(s))


def std_bisection_vertex(sys: ActionSystem, v: int) -> Bisection:
    p = sys.graph.vertex_path(v)
    return Bisection(p, sys.unit(v), p)


def format_germ(sys: ActionSystem, x: Germ) -> str:
    g = sys.graph
    return (f"[{g.format_path(x.alpha)}, {sys.format_word(x.word)}, {g.format_path(x.beta)}; "
            f"{format_evpath(g, ev_canonical(g, x.point))}]")


def parse_germ(sys: ActionSystem, text: str) -> Germ:
    """``alpha, word, beta; prefix | cycle``."""
    text = text.strip().strip("[]")
    triple, semi, point = text.partition(";")
    if not semi:
        raise GermError("germ syntax is 'alpha, word, beta; prefix | cycle'")
    parts = [p.strip() for p in triple.split(",")]
    if len(parts) != 3:
        raise GermError("germ triple needs three comma separated parts")
    g = sys.graph
    return make_germ(sys, g.parse_path(parts[0]), sys.parse_word(parts[1]),
                     g.parse_path(parts[2]), parse_evpath(g, point))

