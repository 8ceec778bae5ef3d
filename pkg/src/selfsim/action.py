"""Self-similar groupoid actions on the path space of a finite graph.

A word ``l1 l2 ... ln`` denotes the product with the rightmost letter acting
first, so ``w . e`` is computed by applying ``ln`` first and the restriction
satisfies ``(hg)|_mu = (h|_{g.mu}) (g|_mu)``.  Letters are encoded as signed
integers: generator ``i`` is ``i + 1`` and its inverse is ``-(i + 1)``.

Group elements are identified with their action (faithfulness is built in),
so equality of words is decided by the closure algorithm in
:meth:`ActionSystem.is_unit`, which may answer ``UNKNOWN`` when its budget
runs out.
"""

from __future__ import annotations

import os
import threading
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Mapping

from .graph import DuplicateName, Graph, NotComposable, Path, check_graph, paths_of_length


class Decision(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class ActionError(ValueError):
    pass


class NotBijectiveAtLevel1(ActionError):
    def __init__(self, gen: str, detail: str):
        self.gen = gen
        super().__init__(f"{gen}: not a bijection d({gen})E^1 -> t({gen})E^1 ({detail})")


class RangeMismatch(ActionError):
    def __init__(self, gen: str, edge: str, detail: str = ""):
        self.gen, self.edge = gen, edge
        super().__init__(f"{gen} on {edge}: range mismatch {detail}".rstrip())


class RestrictionEndpointMismatch(ActionError):
    def __init__(self, gen: str, edge: str, detail: str = ""):
        self.gen, self.edge = gen, edge
        super().__init__(f"{gen}|_{edge}: endpoints wrong {detail}".rstrip())


class InverseTableConflict(ActionError):
    def __init__(self, gen: str, edge: str, detail: str = ""):
        self.gen, self.edge = gen, edge
        super().__init__(f"{gen}^-1 on {edge}: supplied row disagrees with derived row {detail}".rstrip())


class WordSyntaxError(ActionError):
    pass


class NotInDomain(ActionError):
    pass


class InvalidSystem(ActionError):
    def __init__(self, problems: list[Exception]):
        self.problems = problems
        super().__init__("; ".join(str(p) for p in problems))


@dataclass(frozen=True)
class Word:
    d: int
    t: int
    letters: tuple[int, ...] = ()

    @property
    def is_unit(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)


@dataclass(frozen=True)
class Budget:
    max_seen: int = 10_000
    max_len: int = 64

    @classmethod
    def from_env(cls) -> "Budget":
        return cls(int(os.environ.get("ISUNIT_MAX_SEEN", cls.max_seen)),
                   int(os.environ.get("ISUNIT_MAX_LEN", cls.max_len)))


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class UnitCheck:
    answer: Decision
    witness: tuple[Path, Path] | None = None
    reason: str = ""
    closure: tuple[Word, ...] = ()


@dataclass
class DegreeCocycle:
    """Integer degree per generator, extended additively to words."""

    degrees: dict[int, int] = field(default_factory=dict)

    def __call__(self, w: Word) -> int:
        total = 0
        for letter in w.letters:
            deg = self.degrees.get(abs(letter) - 1, 0)
            total += deg if letter > 0 else -deg
        return total

    def negated(self) -> "DegreeCocycle":
        return DegreeCocycle({g: -d for g, d in self.degrees.items()})


class ActionSystem:
    """The automaton of a self-similar action together with derived inverse rows.

    Build instances with :func:`build_system`.
    """

    def __init__(self, graph: Graph, gen_names: list[str], gen_d: list[int], gen_t: list[int]):
        self.graph = graph
        self.gen_names = tuple(gen_names)
        self.gen_id = {n: i for i, n in enumerate(gen_names)}
        self.gen_d = tuple(gen_d)
        self.gen_t = tuple(gen_t)
        # letter -> {edge: (image edge, restriction word)}
        self.moves: dict[int, dict[int, tuple[int, Word]]] = {}
        self._edge_cache: dict[tuple[Word, int], tuple[int, Word]] = {}
        self._unit_cache: dict[tuple[Word, Budget], UnitCheck] = {}
        self._lock = threading.Lock()

    # -- letters and words -------------------------------------------------

    def letter_d(self, letter: int) -> int:
        i = abs(letter) - 1
        return self.gen_d[i] if letter > 0 else self.gen_t[i]

    def letter_t(self, letter: int) -> int:
        i = abs(letter) - 1
        return self.gen_t[i] if letter > 0 else self.gen_d[i]

    @property
    def letters(self) -> list[int]:
        out = []
        for i in range(len(self.gen_names)):
            out += [i + 1, -(i + 1)]
        return out

    def unit(self, v: int) -> Word:
        return Word(v, v, ())

    def letter_word(self, letter: int) -> Word:
        return Word(self.letter_d(letter), self.letter_t(letter), (letter,))

    def gen(self, name: str, exponent: int = 1) -> Word:
        i = self.gen_id[name]
        return self.letter_word((i + 1) * (1 if exponent > 0 else -1))

    def word_from_letters(self, letters) -> Word:
        """Product of letters (left to right), freely reduced."""
        letters = list(letters)
        if not letters:
            raise ValueError("empty letter list; use unit(v)")
        out = self.letter_word(letters[-1])
        for l in reversed(letters[:-1]):
            out = self.mul(self.letter_word(l), out)
        return out

    def mul(self, x: Word, y: Word) -> Word:
        """The product xy (y acts first)."""
        if x.d != y.t:
            raise NotComposable(f"d({self.format_word(x)}) != t({self.format_word(y)})")
        a = list(x.letters)
        b = y.letters
        i = 0
        while a and i < len(b) and a[-1] == -b[i]:
            a.pop()
            i += 1
        return Word(y.d, x.t, tuple(a) + b[i:])

    def product(self, *words: Word) -> Word:
        out = words[-1]
        for w in reversed(words[:-1]):
            out = self.mul(w, out)
        return out

    def inverse(self, w: Word) -> Word:
        return Word(w.t, w.d, tuple(-l for l in reversed(w.letters)))

    def power(self, w: Word, n: int) -> Word:
        if w.d != w.t:
            raise NotComposable("only loops have powers")
        base = w if n >= 0 else self.inverse(w)
        out = self.unit(w.d)
        for _ in range(abs(n)):
            out = self.mul(out, base)
        return out

    def parse_word(self, text: str) -> Word:
        """Whitespace separated tokens ``g`` or ``g^-1``; a vertex name is a unit."""
        tokens = text.replace("⁻¹", "^-1").split()
        if not tokens:
            raise WordSyntaxError("empty word")
        pieces: list[Word] = []
        for tok in tokens:
            name, exp = tok, 1
            if "^" in tok:
                name, _, e = tok.partition("^")
                e = e.strip("{}()")
                if e not in ("-1", "1", "+1"):
                    raise WordSyntaxError(f"unsupported exponent in {tok!r}")
                exp = -1 if e == "-1" else 1
            if name in self.gen_id:
                pieces.append(self.gen(name, exp))
            elif name in self.graph.vertex_id and exp == 1:
                pieces.append(self.unit(self.graph.vertex_id[name]))
            else:
                raise WordSyntaxError(f"unknown generator {name!r}")
        try:
            return self.product(*pieces)
        except NotComposable as exc:
            raise WordSyntaxError(f"{text!r} is not composable: {exc}") from None

    def format_word(self, w: Word) -> str:
        if not w.letters:
            return self.graph.vertex_names[w.d]
        return " ".join(self.gen_names[abs(l) - 1] + ("" if l > 0 else "^-1") for l in w.letters)

    # -- action and restriction ---------------------------------------------

    def act_edge_letter(self, letter: int, e: int) -> tuple[int, Word]:
        try:
            return self.moves[letter][e]
        except KeyError:
            raise NotInDomain(f"letter {letter} does not act on edge {e}") from None

    def act_restrict_edge(self, w: Word, e: int) -> tuple[int, Word]:
        if self.graph.r[e] != w.d:
            raise NotInDomain(f"r({self.graph.edge_names[e]}) != d({self.format_word(w)})")
        key = (w, e)
        hit = self._edge_cache.get(key)
        if hit is not None:
            return hit
        if not w.letters:
            out = (e, self.unit(self.graph.s[e]))
        else:
            parts = []
            cur = e
            for letter in reversed(w.letters):
                cur, res = self.moves[letter][cur]
                parts.append(res)
            parts.reverse()
            out = (cur, self.product(*parts))
        with self._lock:
            self._edge_cache.setdefault(key, out)
        return out

    def act_edge(self, w: Word, e: int) -> int:
        return self.act_restrict_edge(w, e)[0]

    def restrict_edge(self, w: Word, e: int) -> Word:
        return self.act_restrict_edge(w, e)[1]

    def act_restrict_path(self, w: Word, mu: Path) -> tuple[Path, Word]:
        if mu.r != w.d:
            raise NotInDomain(f"r(path) != d({self.format_word(w)})")
        cur = w
        image = []
        for e in mu.edges:
            f, cur = self.act_restrict_edge(cur, e)
            image.append(f)
        return Path(w.t, cur.t, tuple(image)), cur

    def act_path(self, w: Word, mu: Path) -> Path:
        return self.act_restrict_path(w, mu)[0]

    def restrict_path(self, w: Word, mu: Path) -> Word:
        return self.act_restrict_path(w, mu)[1]

    # -- word problem ---------------------------------------------------------

    def is_unit(self, w: Word, budget: Budget = DEFAULT_BUDGET) -> UnitCheck:
        key = (w, budget)
        hit = self._unit_cache.get(key)
        if hit is not None:
            return hit
        out = self._is_unit(w, budget)
        with self._lock:
            self._unit_cache.setdefault(key, out)
        return out

    def _is_unit(self, w: Word, budget: Budget) -> UnitCheck:
        g = self.graph
        if w.d != w.t:
            return UnitCheck(Decision.NO, (g.vertex_path(w.d), g.vertex_path(w.t)),
                             "domain and terminus differ")
        if not w.letters:
            return UnitCheck(Decision.YES, reason="freely reduces to a unit", closure=(w,))
        if len(w) > budget.max_len:
            return UnitCheck(Decision.UNKNOWN, reason="word longer than budget")
        parent: dict[Word, tuple[Word, int] | None] = {w: None}
        queue = deque([w])
        while queue:
            x = queue.popleft()
            for e in g.edges_into[x.d]:
                f, res = self.act_restrict_edge(x, e)
                if f != e:
                    prefix = []
                    node = x
                    while parent[node] is not None:
                        node, edge = parent[node]
                        prefix.append(edge)
                    prefix.reverse()
                    moved = g.path(prefix + [e])
                    image = g.path(prefix + [f])
                    return UnitCheck(Decision.NO, (moved, image), "moves a finite path")
                if res.letters and res not in parent:
                    if len(res) > budget.max_len:
                        return UnitCheck(Decision.UNKNOWN, reason="restriction exceeded length budget")
                    if len(parent) >= budget.max_seen:
                        return UnitCheck(Decision.UNKNOWN, reason="closure exceeded size budget")
                    parent[res] = (x, e)
                    queue.append(res)
        return UnitCheck(Decision.YES, reason="closure fixes every level", closure=tuple(parent))

    def equal(self, w1: Word, w2: Word, budget: Budget = DEFAULT_BUDGET) -> Decision:
        if w1.d != w2.d or w1.t != w2.t:
            return Decision.NO
        if w1.letters == w2.letters:
            return Decision.YES
        return self.is_unit(self.mul(w1, self.inverse(w2)), budget).answer

    # -- enumeration ------------------------------------------------------------

    def reduced_words(self, max_len: int, include_units: bool = False) -> Iterator[Word]:
        """All freely reduced words of length <= max_len, by length then letter order."""
        if include_units:
            for v in range(self.graph.n_vertices):
                yield self.unit(v)
        layer = [self.letter_word(l) for l in self.letters]
        n = 1
        while layer and n <= max_len:
            yield from layer
            if n == max_len:
                break
            nxt = []
            for w in layer:
                for l in self.letters:
                    if self.letter_d(l) == w.t and l != -w.letters[0]:
                        nxt.append(Word(w.d, self.letter_t(l), (l,) + w.letters))
            layer = nxt
            n += 1

    def loop_words(self, v: int, max_len: int) -> Iterator[Word]:
        return (w for w in self.reduced_words(max_len) if w.d == v and w.t == v)


def build_system(graph: Graph, tables: Mapping[str, Mapping]) -> ActionSystem:
    """Validate the graph and generator tables and derive inverse rows.

    ``tables[name]`` holds ``d``, ``t`` (vertex names) and ``moves``, a map
    ``edge name -> (image edge name, restriction word text)``; an optional
    ``inverse_moves`` map in the same shape is checked against the derived
    inverse rows.
    """
    check_graph(graph)
    names = list(tables)
    problems: list[Exception] = []
    taken = set(graph.vertex_names) | set(graph.edge_names)
    for name in names:
        if name in taken:
            problems.append(DuplicateName(f"generator {name!r} reuses a vertex or edge name"))
        if not name or any(ch.isspace() for ch in name) or "^" in name:
            problems.append(WordSyntaxError(f"bad generator name {name!r}"))
    gd, gt = [], []
    for name in names:
        row = tables[name]
        try:
            gd.append(graph.vertex(row["d"]))
            gt.append(graph.vertex(row["t"]))
        except Exception as exc:
            problems.append(exc)
            gd.append(0)
            gt.append(0)
    if problems:
        raise InvalidSystem(problems)
    sys = ActionSystem(graph, names, gd, gt)
    for i, name in enumerate(names):
        row = tables[name]
        d, t = gd[i], gt[i]
        moves: dict[int, tuple[int, Word]] = {}
        raw = row.get("moves", {}) or {}
        for ename, (iname, wtext) in raw.items():
            try:
                e, f = graph.edge(ename), graph.edge(iname)
            except Exception as exc:
                problems.append(exc)
                continue
            if graph.r[e] != d:
                problems.append(NotBijectiveAtLevel1(name, f"{ename} is not in d({name})E^1"))
                continue
            if graph.r[f] != t:
                problems.append(RangeMismatch(name, ename, f"r({iname}) != t({name})"))
                continue
            try:
                res = sys.parse_word(str(wtext))
            except ActionError as exc:
                problems.append(exc)
                continue
            if res.d != graph.s[e] or res.t != graph.s[f]:
                problems.append(RestrictionEndpointMismatch(
                    name, ename, f"need d = s({ename}), t = s({iname})"))
                continue
            moves[e] = (f, res)
        domain = set(graph.edges_into[d])
        if set(moves) != domain and len(moves) == len(raw):
            missing = sorted(graph.edge_names[e] for e in domain - set(moves))
            problems.append(NotBijectiveAtLevel1(name, f"missing rows for {missing}"))
        images = [f for f, _ in moves.values()]
        if len(set(images)) != len(images):
            problems.append(NotBijectiveAtLevel1(name, "two edges share an image"))
        elif set(moves) == domain and set(images) != set(graph.edges_into[t]):
            problems.append(NotBijectiveAtLevel1(name, "image misses part of t(g)E^1"))
        sys.moves[i + 1] = moves
    if problems:
        raise InvalidSystem(problems)
    for i in range(len(names)):
        sys.moves[-(i + 1)] = {f: (e, sys.inverse(res)) for e, (f, res) in sys.moves[i + 1].items()}
    for i, name in enumerate(names):
        given = tables[name].get("inverse_moves") or {}
        for fname, (ename, wtext) in given.items():
            try:
                f = graph.edge(fname)
                derived = sys.moves[-(i + 1)].get(f)
                e = graph.edge(ename)
                res = sys.parse_word(str(wtext))
            except Exception as exc:
                problems.append(exc)
                continue
            if derived is None or derived[0] != e or derived[1] != res:
                problems.append(InverseTableConflict(name, fname))
    if problems:
        raise InvalidSystem(problems)
    return sys


# -- structural probes ---------------------------------------------------------


@dataclass
class PseudoFreeReport:
    bound: int
    violation: tuple[Word, int] | None = None
    inconclusive: list[tuple[Word, int]] = field(default_factory=list)
    unit_generators: list[str] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return self.violation is None


def pseudo_free_probe(sys: ActionSystem, length_bound: int,
                      budget: Budget = DEFAULT_BUDGET) -> PseudoFreeReport:
    """Search reduced words up to ``length_bound`` for a counterexample to
    ``w.e == e and w|_e a unit  =>  w a unit``."""
    report = PseudoFreeReport(length_bound)
    for i, name in enumerate(sys.gen_names):
        if sys.is_unit(sys.letter_word(i + 1), budget).answer is Decision.YES:
            report.unit_generators.append(name)
    for w in sys.reduced_words(length_bound):
        if w.d != w.t:
            continue
        for e in sys.graph.edges_into[w.d]:
            f, res = sys.act_restrict_edge(w, e)
            if f != e:
                continue
            report.checked += 1
            r = sys.is_unit(res, budget).answer
            if r is Decision.NO:
                continue
            if r is Decision.UNKNOWN:
                report.inconclusive.append((w, e))
                continue
            whole = sys.is_unit(w, budget).answer
            if whole is Decision.NO:
                report.violation = (w, e)
                return report
            if whole is Decision.UNKNOWN:
                report.inconclusive.append((w, e))
    return report


def orbits(sys: ActionSystem) -> list[list[int]]:
    parent = list(range(sys.graph.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d, t in zip(sys.gen_d, sys.gen_t):
        a, b = find(d), find(t)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(sys.graph.n_vertices):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def is_transitive(sys: ActionSystem) -> bool:
    return len(orbits(sys)) == 1


@dataclass
class LoopEvidence:
    word: Word
    witness: tuple[Path, Path]
    nonunit_powers: int


@dataclass
class IsotropyReport:
    vertex: int
    length_bound: int
    power_bound: int
    nonunits: list[LoopEvidence] = field(default_factory=list)
    units: list[Word] = field(default_factory=list)
    unknown: list[Word] = field(default_factory=list)


def isotropy_probe(sys: ActionSystem, v: int, length_bound: int, power_bound: int,
                   budget: Budget = DEFAULT_BUDGET) -> IsotropyReport:
    """Evidence about G_v^v: certified non-unit loops and how many of their
    powers are certified non-units."""
    report = IsotropyReport(v, length_bound, power_bound)
    for w in sys.loop_words(v, length_bound):
        check = sys.is_unit(w, budget)
        if check.answer is Decision.YES:
            report.units.append(w)
            continue
        if check.answer is Decision.UNKNOWN:
            report.unknown.append(w)
            continue
        n = 1
        while n < power_bound:
            if sys.is_unit(sys.power(w, n + 1), budget).answer is not Decision.NO:
                break
            n += 1
        report.nonunits.append(LoopEvidence(w, check.witness, n))
    return report


@dataclass
class CocycleReport:
    conflict: Word | None = None
    checked: int = 0
    inconclusive: int = 0

    @property
    def ok(self) -> bool:
        return self.conflict is None


def validate_cocycle(sys: ActionSystem, c: DegreeCocycle, sample_len: int = 6,
                     budget: Budget = DEFAULT_BUDGET) -> CocycleReport:
    """Soundness check: every sampled word certified to be a unit has degree 0."""
    report = CocycleReport()
    for w in sys.reduced_words(sample_len):
        if w.d != w.t:
            continue
        report.checked += 1
        ans = sys.is_unit(w, budget).answer
        if ans is Decision.UNKNOWN:
            report.inconclusive += 1
        elif ans is Decision.YES and c(w) != 0:
            report.conflict = w
            return report
    return report


def degree_zero_nonunits(sys: ActionSystem, c: DegreeCocycle, length_bound: int = 4,
                         budget: Budget = DEFAULT_BUDGET) -> list[Word]:
    """Certified non-unit loop words on which the cocycle vanishes.

    A cocycle that identifies the isotropy with a subgroup of Z must be
    nonzero on every nontrivial loop; any word returned here refutes that.
    """
    bad = []
    for w in sys.reduced_words(length_bound):
        if w.d == w.t and c(w) == 0 and sys.is_unit(w, budget).answer is Decision.NO:
            bad.append(w)
    return bad


def rk_classes(sys: ActionSystem, k: int) -> list[list[Path]]:
    """E^k partitioned by the G-orbit of the source vertex."""
    g = sys.graph
    orbit_of = {}
    for i, orb in enumerate(orbits(sys)):
        for v in orb:
            orbit_of[v] = i
    classes: dict[int, list[Path]] = {}
    for v in range(g.n_vertices):
        for p in paths_of_length(g, v, k):
            classes.setdefault(orbit_of[p.s], []).append(p)
    return [classes[i] for i in sorted(classes)]
