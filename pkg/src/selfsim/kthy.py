"""Combinatorial K-theory of the fixed-point algebra and of C*(G,E).

Elements of the k-th filtration step are modelled by formal sums of terms
``z^m i_mu (x) i_w (x) i_nu*`` with ``|mu| == |nu| == k``.  Inside the matrix
model a word ``w`` of cocycle degree ``c(w)`` behaves like ``z^c(w)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .action import (DEFAULT_BUDGET, ActionSystem, Budget, Decision, DegreeCocycle, Word,
                     is_transitive)
from .assumptions import (AssumptionFailed, NotTransitive, PipelineAssumptions,
                          check_assumptions)
from .graph import Path, concat
from .zlin import AbGroup, LocMult, colimit_const_Z, ker_coker


class NonconstantInDegree(AssumptionFailed):
    def __init__(self, detail: str = ""):
        super().__init__("constant_in_degree", detail)


class NotMonomialUnitary(ValueError):
    pass


class TermError(ValueError):
    pass


@dataclass(frozen=True)
class Term:
    m: int
    mu: Path
    word: Word
    nu: Path


def _term_key(t: Term):
    return (t.mu.r, t.mu.edges, t.nu.r, t.nu.edges, t.word.d, t.word.letters, t.m)


@dataclass(frozen=True)
class Monomial:
    """A formal integer combination of terms."""

    terms: tuple[tuple[Term, int], ...] = ()

    @classmethod
    def of(cls, terms, coeffs=None) -> "Monomial":
        counts: Counter = Counter()
        for i, t in enumerate(terms):
            counts[t] += 1 if coeffs is None else coeffs[i]
        items = [(t, n) for t, n in counts.items() if n]
        return cls(tuple(sorted(items, key=lambda tn: _term_key(tn[0]))))

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "Monomial") -> "Monomial":
        ts = [t for t, _ in self.terms] + [t for t, _ in other.terms]
        cs = [n for _, n in self.terms] + [n for _, n in other.terms]
        return Monomial.of(ts, cs)

    @property
    def rank(self) -> int:
        return sum(abs(n) for _, n in self.terms)


def make_term(sys: ActionSystem, mu: Path, word: Word, nu: Path, m: int = 0) -> Term:
    if len(mu) != len(nu):
        raise TermError("|mu| must equal |nu|")
    if word.d != nu.s or word.t != mu.s:
        raise TermError("word must run from s(nu) to s(mu)")
    return Term(m, mu, word, nu)


def unit_projection(sys: ActionSystem, v: int) -> Monomial:
    """i_v at level 0."""
    p = sys.graph.vertex_path(v)
    return Monomial.of([Term(0, p, sys.unit(v), p)])


def identity_monomial(sys: ActionSystem) -> Monomial:
    return Monomial.of([unit_projection(sys, v).terms[0][0] for v in range(sys.graph.n_vertices)])


def winding_unitary(sys: ActionSystem, v: int) -> Monomial:
    """z i_v + sum of i_w over the other vertices."""
    terms = []
    for u in range(sys.graph.n_vertices):
        p = sys.graph.vertex_path(u)
        terms.append(Term(1 if u == v else 0, p, sys.unit(u), p))
    return Monomial.of(terms)


def phi_term(sys: ActionSystem, t: Term) -> list[Term]:
    g = sys.graph
    out = []
    for x in g.edges_into[t.nu.s]:
        y, res = sys.act_restrict_edge(t.word, x)
        out.append(Term(t.m, concat(t.mu, g.path([y])), res, concat(t.nu, g.path([x]))))
    return out


def phi(sys: ActionSystem, x: Monomial) -> Monomial:
    """The embedding of level k into level k + 1."""
    ts, cs = [], []
    for t, n in x.terms:
        for t2 in phi_term(sys, t):
            ts.append(t2)
            cs.append(n)
    return Monomial.of(ts, cs)


def monomial_product(sys: ActionSystem, x: Monomial, y: Monomial) -> Monomial:
    """Product in the filtration step: i_nu* i_mu' is 1 when nu == mu' and 0 otherwise."""
    ts, cs = [], []
    for t1, n1 in x.terms:
        for t2, n2 in y.terms:
            if len(t1.nu) != len(t2.mu):
                raise TermError("factors live in different filtration steps")
            if t1.nu != t2.mu:
                continue
            ts.append(Term(t1.m + t2.m, t1.mu, sys.mul(t1.word, t2.word), t2.nu))
            cs.append(n1 * n2)
    return Monomial.of(ts, cs)


def winding(x: Monomial, c: DegreeCocycle) -> int:
    """Winding number of the determinant of a monomial unitary."""
    rows = [t.mu for t, _ in x.terms]
    cols = [t.nu for t, _ in x.terms]
    if any(n != 1 for _, n in x.terms):
        raise NotMonomialUnitary("coefficients must all be 1")
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols) or set(rows) != set(cols):
        raise NotMonomialUnitary("(mu, nu) pairs do not form a bijection of the index set")
    return sum(t.m + c(t.word) for t, _ in x.terms)


def level_multiplicity(sys: ActionSystem) -> int:
    if not is_transitive(sys):
        raise NotTransitive("vertices form more than one orbit")
    counts = {len(sys.graph.edges_into[v]) for v in range(sys.graph.n_vertices)}
    if len(counts) != 1:
        raise NonconstantInDegree(f"|vE^1| takes values {sorted(counts)}")
    return counts.pop()


@dataclass(frozen=True)
class Multipliers:
    D: int
    phi0: int
    phi1: int


def _guard(sys, c, assumptions):
    if assumptions is None:
        assumptions = check_assumptions(sys, c)
    assumptions.require("transitive", "pseudo_free", "cocycle")
    return assumptions


def multipliers(sys: ActionSystem, c: DegreeCocycle,
                assumptions: PipelineAssumptions | None = None) -> Multipliers:
    _guard(sys, c, assumptions)
    return raw_multipliers(sys, c)


def raw_multipliers(sys: ActionSystem, c: DegreeCocycle) -> Multipliers:
    """Multipliers without the pipeline scope guard (still needs transitivity)."""
    D = level_multiplicity(sys)
    ranks = {phi(sys, unit_projection(sys, v)).rank for v in range(sys.graph.n_vertices)}
    if ranks != {D}:
        raise NonconstantInDegree(f"rank of phi(i_v) takes values {sorted(ranks)}")
    phi1 = winding(phi(sys, winding_unitary(sys, 0)), c)
    return Multipliers(D, D, phi1)


def k_from_multipliers(m: Multipliers) -> tuple[AbGroup, AbGroup]:
    return colimit_const_Z(m.phi0), colimit_const_Z(m.phi1)


def k_fixed_point(sys: ActionSystem, c: DegreeCocycle,
                  assumptions: PipelineAssumptions | None = None) -> tuple[AbGroup, AbGroup]:
    return k_from_multipliers(multipliers(sys, c, assumptions))


def _one_minus(phi_: int) -> tuple[AbGroup, AbGroup]:
    """Kernel and cokernel of id - Phi on colim(Z, Phi)."""
    if phi_ == 0:
        return AbGroup.zero(), AbGroup.zero()
    return ker_coker(LocMult(phi_, 1 - phi_))


def crossed_product_k(m: Multipliers) -> tuple[AbGroup, AbGroup]:
    ker0, coker0 = _one_minus(m.phi0)
    ker1, coker1 = _one_minus(m.phi1)
    return ker1 + coker0, ker0 + coker1


def k_cuntz_pimsner(sys: ActionSystem, c: DegreeCocycle,
                    assumptions: PipelineAssumptions | None = None) -> tuple[AbGroup, AbGroup]:
    return crossed_product_k(multipliers(sys, c, assumptions))


GROUPOID_ALGEBRA_MODEL = "M_n(C(T)) model"


def k_of_groupoid_algebra(sys: ActionSystem, c: DegreeCocycle | None,
                          z_isotropy: bool = True) -> tuple[AbGroup, AbGroup]:
    """K of C*(G) for transitive G: a matrix algebra over C(T) when the isotropy
    is Z, over C when it is trivial."""
    if not is_transitive(sys):
        raise NotTransitive("vertices form more than one orbit")
    if z_isotropy:
        if c is None:
            raise AssumptionFailed("cocycle", "Z isotropy needs a declared degree cocycle")
        return AbGroup.Z(), AbGroup.Z()
    return AbGroup.Z(), AbGroup.zero()


@dataclass(frozen=True)
class IsotropyWinding:
    """Phi_1 with z realised by a loop g of the isotropy instead of a formal scalar."""

    generator: Word
    degree: int
    value: Fraction


def isotropy_generator(sys: ActionSystem, c: DegreeCocycle, v: int = 0, depth: int = 4,
                       budget: Budget = DEFAULT_BUDGET) -> Word | None:
    """The shortest certified non-unit loop at v of smallest nonzero |degree|."""
    best = None
    for w in sys.loop_words(v, depth):
        d = c(w)
        if d == 0 or sys.is_unit(w, budget).answer is not Decision.NO:
            continue
        key = (abs(d), len(w))
        if best is None or key < best[0]:
            best = (key, w if d > 0 else sys.inverse(w))
    return None if best is None else best[1]


def isotropy_winding(sys: ActionSystem, c: DegreeCocycle, v: int = 0, depth: int = 4,
                     budget: Budget = DEFAULT_BUDGET) -> IsotropyWinding | None:
    """Winding of phi(i_g + sum of the other i_w), measured in units of c(g).

    The vertex-to-vertex corrections of the identification with matrices over
    C(T) telescope along a permutation, so the winding is sum c(h) / c(g)."""
    g = isotropy_generator(sys, c, v, depth, budget)
    if g is None:
        return None
    terms = []
    for u in range(sys.graph.n_vertices):
        p = sys.graph.vertex_path(u)
        terms.append(Term(0, p, g if u == v else sys.unit(u), p))
    total = winding(phi(sys, Monomial.of(terms)), c)
    return IsotropyWinding(g, c(g), Fraction(total, c(g)))
