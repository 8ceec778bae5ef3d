"""Homology of the germ groupoid through the Z-cocycle long exact sequence.

Under the pipeline assumptions the kernel H of the degree cocycle has
H_0 = H_1 = colim(Z, D) and vanishing higher homology, the shift on the skew
product acts by 1/D, and the long exact sequence

    ... -> H_q(H) --(id - rho)--> H_q(H) -> H_q(G) -> H_{q-1}(H) -> ...

determines H_q of the germ groupoid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .action import DEFAULT_BUDGET, ActionSystem, Budget, Decision, DegreeCocycle
from .assumptions import (AssumptionFailed, PipelineAssumptions, ScopeError,
                          check_assumptions)
from .graph import Path, concat
from .kthy import (IsotropyWinding, Multipliers, crossed_product_k, isotropy_winding,
                   k_from_multipliers, k_of_groupoid_algebra, level_multiplicity,
                   raw_multipliers)
from .semigroup import ZERO, Triple, multiply, star, triple_equal
from .zlin import AbGroup, LocMult, colimit_const_Z, ker_coker

COMPUTED = "computed"
ASSUMED = "assumed-identification"
PROBED = "probe-bounded"


class NoUnitConjugatorFound(ScopeError):
    pass


class UnresolvedExtension(ScopeError):
    def __init__(self, sub: AbGroup, quotient: AbGroup):
        self.sub = sub
        self.quotient = quotient
        super().__init__(f"extension 0 -> {sub} -> H_1 -> {quotient} -> 0 is not determined")


@dataclass
class HkData:
    """H_0 and H_1 of the level-k groupoid together with the data behind them."""

    h0: AbGroup
    h1: AbGroup
    generator: str
    factorization: str
    tau: str


def _guard(sys, c, assumptions):
    if assumptions is None:
        assumptions = check_assumptions(sys, c)
    assumptions.require()
    return assumptions


def h_of_Hk(sys: ActionSystem, c: DegreeCocycle,
            assumptions: PipelineAssumptions | None = None) -> HkData:
    _guard(sys, c, assumptions)
    return HkData(
        AbGroup.Z(), AbGroup.Z(),
        generator="[chi of B(alpha, s(alpha), alpha; Z(alpha))]",
        factorization="[alpha, g, beta; xi] -> ((xi, g), (alpha, beta)): "
                      "H_k = (E^inf x| G) x R_k",
        tau="tau_k([alpha, g, beta; xi]) = g with AF kernel")


def j_k_image(sys: ActionSystem, alpha: Path, beta: Path | None = None) -> list[Triple]:
    """j_k of the bisection B(alpha, s(alpha), beta): one summand per edge x in s(beta)E^1."""
    g = sys.graph
    beta = alpha if beta is None else beta
    word = sys.unit(alpha.s)
    out = []
    for x in g.edges_into[beta.s]:
        y, res = sys.act_restrict_edge(word, x)
        out.append(Triple(concat(alpha, g.path([y])), res, concat(beta, g.path([x]))))
    return out


def inclusion_multiplier(sys: ActionSystem, alpha: Path | None = None) -> int:
    if alpha is None:
        alpha = sys.graph.vertex_path(0)
    D = len(j_k_image(sys, alpha))
    expected = level_multiplicity(sys)
    if D != expected:
        raise AssertionError(f"inclusion multiplier {D} != level multiplicity {expected}")
    return D


def h_of_H(sys: ActionSystem) -> tuple[AbGroup, AbGroup]:
    D = level_multiplicity(sys)
    return colimit_const_Z(D), colimit_const_Z(D)


@dataclass
class Conjugator:
    """U = B(alpha, s(alpha), alpha x) x {1} with x a loop edge."""

    alpha: Path
    edge: int
    U: Triple
    degree: int
    checks: dict[str, bool]


def find_conjugator(sys: ActionSystem, budget: Budget = DEFAULT_BUDGET) -> Conjugator:
    g = sys.graph
    for v in range(g.n_vertices):
        for x in g.edges_into[v]:
            if g.s[x] != v:
                continue
            alpha = g.vertex_path(v)
            ax = g.path([x])
            U = Triple(alpha, sys.unit(v), ax)
            Us = star(sys, U)
            p_alpha = Triple(alpha, sys.unit(v), alpha)
            p_ax = Triple(ax, sys.unit(v), ax)
            checks = {
                "U U* = 1_Z(alpha)": triple_equal(sys, multiply(sys, U, Us), p_alpha, budget) is Decision.YES,
                "U* U = 1_Z(alpha x)": triple_equal(sys, multiply(sys, Us, U), p_ax, budget) is Decision.YES,
                "U* 1_Z(alpha) U = 1_Z(alpha x)": triple_equal(
                    sys, multiply(sys, multiply(sys, Us, p_alpha), U), p_ax, budget) is Decision.YES,
            }
            degree = len(U.alpha) - len(U.beta)
            checks["rho(U) = -1"] = degree == -1
            if all(checks.values()):
                return Conjugator(alpha, x, U, degree, checks)
    raise NoUnitConjugatorFound("no vertex carries a loop edge, so no unit-word conjugator exists")


def rho_star(sys: ActionSystem, budget: Budget = DEFAULT_BUDGET) -> tuple[LocMult, Conjugator]:
    """The shift on H_0 of the skew product: [1_Z(alpha) x {1}] = [1_Z(alpha x) x {0}],
    and [1_Z(alpha)] = D [1_Z(alpha x)] at the next level, so rho = x(1/D)."""
    D = level_multiplicity(sys)
    conj = find_conjugator(sys, budget)
    return LocMult(D, Fraction(1, D)), conj


def _lift(f: LocMult, G: AbGroup) -> tuple[AbGroup, AbGroup]:
    if G != f.group():
        raise ValueError(f"{f} does not act on {G}")
    return ker_coker(f.one_minus())


@dataclass
class LesSolution:
    H0: AbGroup
    H1: AbGroup | None
    H2: AbGroup
    h1_sub: AbGroup
    h1_quotient: AbGroup
    tail_zero: bool = True


def les_solve(h0: AbGroup, h1: AbGroup, rho: LocMult, strict: bool = True) -> LesSolution:
    ker0, coker0 = _lift(rho, h0)
    ker1, coker1 = _lift(rho, h1)
    if coker1.is_zero():
        H1 = ker0
    elif ker0.is_zero():
        H1 = coker1
    elif ker0.is_free():
        H1 = coker1 + ker0
    else:
        if strict:
            raise UnresolvedExtension(coker1, ker0)
        H1 = None
    return LesSolution(coker0, H1, ker1, coker1, ker0)


def exactness_audit(h0: AbGroup, h1: AbGroup, sol: LesSolution) -> bool:
    """Alternating rank sum (and order product when all terms are finite) of
    0 -> H_2 -> H_1(H) -> H_1(H) -> H_1 -> H_0(H) -> H_0(H) -> H_0 -> 0."""
    if sol.H1 is None:
        return True
    seq = [sol.H2, h1, h1, sol.H1, h0, h0, sol.H0]
    if sum((-1) ** i * g.rational_rank() for i, g in enumerate(seq)) != 0:
        return False
    if all(g.is_finite() for g in seq):
        num = den = 1
        for i, g in enumerate(seq):
            if i % 2 == 0:
                num *= g.order()
            else:
                den *= g.order()
        return num == den
    return True


@dataclass
class HomologyReport:
    assumptions: PipelineAssumptions
    Hk: HkData
    inclusion: int
    H_of_H: tuple[AbGroup, AbGroup]
    rho: LocMult
    conjugator: Conjugator
    solution: LesSolution
    exact: bool
    provenance: dict[str, str] = field(default_factory=dict)


def homology_pipeline(sys: ActionSystem, c: DegreeCocycle,
                      assumptions: PipelineAssumptions | None = None,
                      budget: Budget = DEFAULT_BUDGET) -> HomologyReport:
    assumptions = _guard(sys, c, assumptions)
    hk = h_of_Hk(sys, c, assumptions)
    D = inclusion_multiplier(sys)
    hh = h_of_H(sys)
    rho, conj = rho_star(sys, budget)
    sol = les_solve(hh[0], hh[1], rho)
    prov = {"H(H_k)": ASSUMED, "inclusion": COMPUTED, "H(H)": ASSUMED,
            "rho": COMPUTED, "H(G)": COMPUTED, "assumptions": PROBED}
    return HomologyReport(assumptions, hk, D, hh, rho, conj, sol,
                          exactness_audit(hh[0], hh[1], sol), prov)


@dataclass
class PipelineReport:
    assumptions: PipelineAssumptions
    multipliers: Multipliers
    k_fixed: tuple[AbGroup, AbGroup]
    k_crossed: tuple[AbGroup, AbGroup]
    k_groupoid: tuple[AbGroup, AbGroup]
    homology: HomologyReport
    phi1_isotropy: IsotropyWinding | None = None

    def to_json(self, sys: ActionSystem) -> dict:
        h = self.homology
        pair = lambda p: [p[0].to_json(), p[1].to_json()]
        return {
            "assumptions": self.assumptions.to_json(),
            "ktheory": {
                "D": {"value": self.multipliers.D, "provenance": COMPUTED},
                "Phi0": {"value": self.multipliers.phi0, "provenance": COMPUTED},
                "Phi1": {"value": self.multipliers.phi1, "provenance": COMPUTED},
                "K_fixed_point": {"value": pair(self.k_fixed), "provenance": ASSUMED},
                "K_crossed_product": {"value": pair(self.k_crossed), "provenance": COMPUTED},
                "K_groupoid_algebra": {"value": pair(self.k_groupoid), "provenance": ASSUMED,
                                       "model": "M_n(C(T))"},
                "Phi1_isotropy_generator": isotropy_json(sys, self.phi1_isotropy),
            },
            "homology": {
                "H_Hk": {"value": [h.Hk.h0.to_json(), h.Hk.h1.to_json()], "provenance": ASSUMED},
                "inclusion_multiplier": {"value": h.inclusion, "provenance": COMPUTED},
                "H_H": {"value": pair(h.H_of_H), "provenance": ASSUMED},
                "rho_star": {"value": str(h.rho.value), "provenance": COMPUTED,
                             "conjugator": {
                                 "alpha": sys.graph.format_path(h.conjugator.alpha),
                                 "edge": sys.graph.edge_names[h.conjugator.edge],
                                 "checks": h.conjugator.checks}},
                "H_G": {"value": [h.solution.H0.to_json(),
                                  h.solution.H1.to_json() if h.solution.H1 else None,
                                  h.solution.H2.to_json()],
                        "tail_zero": h.solution.tail_zero, "provenance": COMPUTED},
                "exactness_audit": h.exact,
            },
        }


def full_pipeline(sys: ActionSystem, c: DegreeCocycle, length_bound: int = 4,
                  budget: Budget = DEFAULT_BUDGET) -> PipelineReport:
    assumptions = check_assumptions(sys, c, length_bound, budget)
    assumptions.require()
    m = raw_multipliers(sys, c)
    hom = homology_pipeline(sys, c, assumptions, budget)
    return PipelineReport(assumptions, m, k_from_multipliers(m), crossed_product_k(m),
                          k_of_groupoid_algebra(sys, c), hom,
                          isotropy_winding(sys, c, 0, length_bound, budget))


def isotropy_json(sys: ActionSystem, iw: IsotropyWinding | None) -> dict | None:
    if iw is None:
        return None
    return {"generator": sys.format_word(iw.generator), "degree": iw.degree,
            "value": str(iw.value), "provenance": COMPUTED}
