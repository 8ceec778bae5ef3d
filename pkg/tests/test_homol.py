from fractions import Fraction

import pytest

from selfsim.action import build_system
from selfsim.assumptions import NotTransitive, ScopeError, check_assumptions
from selfsim.graph import Graph
from selfsim.homol import (ASSUMED, COMPUTED, NoUnitConjugatorFound, UnresolvedExtension,
                           exactness_audit, find_conjugator, full_pipeline, h_of_H,
                           homology_pipeline, inclusion_multiplier, j_k_image, les_solve,
                           rho_star)
from selfsim.zlin import AbGroup, LocMult

from conftest import load

Z, O = AbGroup.Z(), AbGroup.zero()
Zh = AbGroup.Z_localized(2)


def test_les_cases():
    sol = les_solve(Zh, Zh, LocMult(2, Fraction(1, 2)))
    assert (sol.H0, sol.H1, sol.H2) == (O, O, O)
    sol = les_solve(Z, Z, LocMult(1, 1))
    assert (sol.H0, sol.H1, sol.H2) == (Z, Z + Z, Z)
    sol = les_solve(Z, Z, LocMult(1, -1))
    assert (sol.H0, sol.H1, sol.H2) == (AbGroup.cyclic(2), AbGroup.cyclic(2), O)
    sol = les_solve(Zh, Zh, LocMult(2, 4))
    assert (sol.H0, sol.H1, sol.H2) == (AbGroup.cyclic(3), AbGroup.cyclic(3), O)
    sol = les_solve(Zh, Zh, LocMult(2, 3))
    assert (sol.H0, sol.H1, sol.H2) == (O, O, O)  # 1 - 3 = -2 is a unit in Z[1/2]
    for h, f in [(Zh, LocMult(2, Fraction(1, 2))), (Z, LocMult(1, 1)), (Z, LocMult(1, -1)),
                 (AbGroup.Z_localized(3), LocMult(3, 3))]:
        assert exactness_audit(h, h, les_solve(h, h, f))


def test_unresolved_extension():
    with pytest.raises(UnresolvedExtension):
        les_solve(Zh, Zh, LocMult(2, 1))
    assert les_solve(Zh, Zh, LocMult(2, 1), strict=False).H1 is None


def test_exactness_audit_catches_wrong_answer():
    sol = les_solve(Z, Z, LocMult(1, -1))
    sol.H1 = Z  # off by one in rank
    assert not exactness_audit(Z, Z, sol)


def test_inclusion_and_jk(s6):
    alpha = s6.graph.parse_path("e1")
    assert len(j_k_image(s6, alpha)) == inclusion_multiplier(s6) == 2
    assert h_of_H(s6) == (Zh, Zh)


def test_conjugator(s6):
    rho, conj = rho_star(s6)
    assert rho.value == Fraction(1, 2) and conj.degree == -1
    assert s6.graph.edge_names[conj.edge] == "e1"


def test_no_loop_edge():
    g = Graph(["p", "q"], [("f", "p", "q"), ("h", "q", "p")])
    s = build_system(g, {})
    with pytest.raises(NoUnitConjugatorFound):
        find_conjugator(s)


def test_odometer_pipeline():
    s, c = load("odometer.spec")
    h = homology_pipeline(s, c)
    assert h.H_of_H == (Zh, Zh)
    assert h.solution.H0.is_zero() and h.exact
    assert h.provenance["H(H)"] == ASSUMED and h.provenance["rho"] == COMPUTED


def test_pipeline_refusals():
    s, c = load("two_orbits.spec")
    with pytest.raises(NotTransitive):
        homology_pipeline(s, c)
    s, c = load("not_pseudo_free.spec")
    a = check_assumptions(s, c)
    assert not a.ok
    with pytest.raises(ScopeError):
        a.require()


def test_report_json_stable(s6, c6):
    r1 = full_pipeline(s6, c6).to_json(s6)
    r2 = full_pipeline(s6, c6).to_json(s6)
    assert r1 == r2
    assert r1["ktheory"]["Phi1_isotropy_generator"]["value"] == "1"
