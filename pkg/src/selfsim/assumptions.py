"""Scope guards shared by the K-theory and homology pipelines.

Both pipelines are only sound for a transitive, pseudo-free action whose
isotropy is identified with a subgroup of Z by a user supplied degree
cocycle.  Each hypothesis is probed up to a budget and the outcome is
recorded so reports can say exactly what was checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .action import (DEFAULT_BUDGET, ActionSystem, Budget, DegreeCocycle, Decision,
                     degree_zero_nonunits, is_transitive, isotropy_probe,
                     pseudo_free_probe, validate_cocycle)
from .germ import EvPath, act_point, ev_equal, PeriodicityBudgetExceeded
from .graph import paths_of_length


class ScopeError(Exception):
    """The input is outside the regime where a pipeline result is sound."""


class AssumptionFailed(ScopeError):
    def __init__(self, flag: str, detail: str = ""):
        self.flag = flag
        self.detail = detail
        super().__init__(f"assumption {flag!r} failed" + (f": {detail}" if detail else ""))


class NotTransitive(AssumptionFailed):
    def __init__(self, detail: str = ""):
        super().__init__("transitive", detail)


class CocycleConflict(AssumptionFailed):
    def __init__(self, detail: str = ""):
        super().__init__("cocycle", detail)


FLAGS = ("transitive", "pseudo_free", "cocycle", "free_on_paths")


@dataclass
class PipelineAssumptions:
    transitive: bool
    pseudo_free: bool
    cocycle: bool
    free_on_paths: bool
    length_bound: int
    budget: Budget
    notes: dict[str, str] = field(default_factory=dict)

    def failed(self) -> list[str]:
        return [f for f in FLAGS if not getattr(self, f)]

    @property
    def ok(self) -> bool:
        return not self.failed()

    def require(self, *flags: str) -> None:
        for f in flags or FLAGS:
            if not getattr(self, f):
                detail = self.notes.get(f, "")
                if f == "transitive":
                    raise NotTransitive(detail)
                if f == "cocycle":
                    raise CocycleConflict(detail)
                raise AssumptionFailed(f, detail)

    def banner(self) -> list[str]:
        lines = []
        for f in FLAGS:
            state = "pass" if getattr(self, f) else "FAIL"
            note = self.notes.get(f, "")
            lines.append(f"{f}: {state}" + (f" ({note})" if note else ""))
        lines.append(f"probe word length <= {self.length_bound}, "
                     f"is_unit budget max_seen={self.budget.max_seen} max_len={self.budget.max_len}")
        return lines

    def to_json(self) -> dict:
        return {"flags": {f: getattr(self, f) for f in FLAGS},
                "notes": dict(self.notes),
                "length_bound": self.length_bound,
                "budget": {"max_seen": self.budget.max_seen, "max_len": self.budget.max_len}}


def sample_points(sys: ActionSystem, cycle_len: int = 2, prefix_len: int = 1) -> list[EvPath]:
    """Eventually periodic points built from short cycles and short prefixes."""
    g = sys.graph
    out = []
    for v in range(g.n_vertices):
        for k in range(1, cycle_len + 1):
            for c in paths_of_length(g, v, k):
                if c.s != c.r:
                    continue
                for n in range(prefix_len + 1):
                    for w in range(g.n_vertices):
                        for p in paths_of_length(g, w, n):
                            if p.s == v:
                                out.append(EvPath(p, c))
    return out


def free_on_paths_probe(sys: ActionSystem, length_bound: int,
                        budget: Budget = DEFAULT_BUDGET) -> tuple[bool, str]:
    """Look for a certified non-unit loop word fixing a sampled point while its
    restriction along the point becomes a unit (a non-free germ)."""
    points = sample_points(sys)
    loops = {}
    for w in sys.reduced_words(length_bound):
        if w.d == w.t and sys.is_unit(w, budget).answer is Decision.NO:
            loops.setdefault(w.d, []).append(w)
    checked = 0
    for xi in points:
        for w in loops.get(xi.r, ()):
            try:
                img = act_point(sys, w, xi, max_passes=256)
            except PeriodicityBudgetExceeded:
                continue
            checked += 1
            if not ev_equal(img, xi):
                continue
            cur = w
            states = []
            for e in xi.first(len(xi.prefix) + 2 * len(xi.cycle)):
                _, cur = sys.act_restrict_edge(cur, e)
                states.append(cur)
            if any(sys.is_unit(s, budget).answer is Decision.YES for s in states):
                return False, f"{sys.format_word(w)} fixes a point with unit restriction"
    return True, f"{checked} (word, point) pairs"


def check_assumptions(sys: ActionSystem, c: DegreeCocycle | None, length_bound: int = 4,
                      budget: Budget = DEFAULT_BUDGET) -> PipelineAssumptions:
    notes = {}
    trans = is_transitive(sys)
    if not trans:
        notes["transitive"] = "vertices form more than one orbit"

    pf = pseudo_free_probe(sys, length_bound, budget)
    pf_ok = pf.ok and not pf.inconclusive
    if pf.violation is not None:
        w, e = pf.violation
        notes["pseudo_free"] = (f"{sys.format_word(w)} fixes {sys.graph.edge_names[e]} "
                                "with unit restriction")
    elif pf.inconclusive:
        notes["pseudo_free"] = f"{len(pf.inconclusive)} inconclusive cases"
    else:
        notes["pseudo_free"] = f"{pf.checked} cases"

    coc_ok = False
    if c is None:
        notes["cocycle"] = "no degree cocycle declared"
    else:
        rep = validate_cocycle(sys, c, length_bound, budget)
        bad = degree_zero_nonunits(sys, c, length_bound, budget)
        v0 = 0
        iso = isotropy_probe(sys, v0, length_bound, 2, budget)
        if not rep.ok:
            notes["cocycle"] = f"unit word {sys.format_word(rep.conflict)} has nonzero degree"
        elif bad:
            notes["cocycle"] = f"non-unit loop {sys.format_word(bad[0])} has degree 0"
        elif not iso.nonunits:
            notes["cocycle"] = "no non-unit loop found: isotropy is not Z"
        else:
            coc_ok = True
            notes["cocycle"] = f"{rep.checked} loops checked"

    free_ok, note = free_on_paths_probe(sys, length_bound, budget)
    notes["free_on_paths"] = note
    return PipelineAssumptions(trans, pf_ok, coc_ok, free_ok, length_bound, budget, notes)
