import pytest

from selfsim.action import Decision
from selfsim.germ import (GermError, NotAlongPoint, act_point, compose, ev_canonical, ev_equal,
                          extend, format_evpath, format_germ, germ_equal, germ_range, invert,
                          parse_evpath, parse_germ, rho, std_bisection_edge, unit_germ)


def G(s, text):
    return parse_germ(s, text)


def test_range_and_rho(s6):
    x = G(s6, "e3, a, e1; | e1")
    assert format_evpath(s6.graph, germ_range(s6, x)) == "e3 e2 | e1"
    assert rho(x) == 0
    assert rho(G(s6, "e3 e2, u, e1; | e1")) == 1


def test_extend_is_equal(s6):
    x = G(s6, "e3, a, e1; | e1")
    y = extend(s6, x, s6.graph.parse_path("e1"))
    assert format_germ(s6, y) == "[e3 e2, u, e1 e1; u | e1]"
    assert germ_equal(s6, x, y) is Decision.YES


def test_inverse_composes_to_unit(s6):
    x = G(s6, "e3, a, e1; | e1")
    xi = x.point
    assert germ_equal(s6, compose(s6, invert(s6, x), x), unit_germ(s6, xi)) is Decision.YES
    assert germ_equal(s6, compose(s6, x, invert(s6, x)), unit_germ(s6, germ_range(s6, x))) is Decision.YES


def test_eventually_periodic_points(s6):
    g = s6.graph
    a = parse_evpath(g, "e1 | e1")
    b = parse_evpath(g, "| e1 e1")
    assert ev_equal(ev_canonical(g, a), ev_canonical(g, b))
    w = s6.parse_word("a^-1 c b a")
    xi = parse_evpath(g, "| e1")
    # w swaps e1 and e3 at the first edge
    assert act_point(s6, w, xi).prefix.edges[:1] == (g.edge("e3"),)


def test_errors(s6):
    with pytest.raises(NotAlongPoint):
        G(s6, "e3, a, e1; e3 | e2 e3")
    with pytest.raises(GermError):
        G(s6, "e3, a, e1")
    with pytest.raises(GermError):
        parse_evpath(s6.graph, "e1")


def test_bisection_degree(s6):
    assert std_bisection_edge(s6, s6.graph.edge("e1")).degree == 1
