import pytest

from selfsim.action import Decision
from selfsim.semigroup import (ZERO, Triple, TripleError, act_on_path, format_triple,
                               idempotent, is_idempotent, multiply, parse_triple, star,
                               triple_equal)


def T(s, text):
    return parse_triple(s, text)


def test_product_cases(s6):
    g = s6.graph
    x = T(s6, "e3, a, e1")
    # beta = gamma
    assert multiply(s6, x, T(s6, "e1, u, e1")) == x
    # gamma extends beta: (e3, a, e1)(e1 e1, u, e1 e1) = (e3 a.e1, a|e1, e1 e1) = (e3 e2, u, e1 e1)
    assert multiply(s6, x, T(s6, "e1 e1, u, e1 e1")) == T(s6, "e3 e2, u, e1 e1")
    # beta extends gamma: (u, u, u)(e3, a, e1) = (e3, a, e1)
    assert multiply(s6, T(s6, "u, u, u"), x) == x
    # incomparable
    assert multiply(s6, x, T(s6, "e3, v, e3")) is ZERO
    assert multiply(s6, ZERO, x) is ZERO and multiply(s6, x, ZERO) is ZERO
    assert g.format_path(act_on_path(s6, x, g.parse_path("e1 e1")) or g.vertex_path(0)) == "e3 e2"


def test_star_and_idempotents(s6):
    x = T(s6, "e3, a, e1")
    assert star(s6, x) == T(s6, "e1, a^-1, e3")
    p = multiply(s6, x, star(s6, x))
    assert p == idempotent(s6, s6.graph.parse_path("e3"))
    assert is_idempotent(s6, p) is Decision.YES
    assert is_idempotent(s6, x) is Decision.NO


def test_equality_uses_word_problem(s6):
    x = T(s6, "e1, u, e1")
    assert triple_equal(s6, x, x) is Decision.YES
    assert triple_equal(s6, x, T(s6, "e2, u, e2")) is Decision.NO


def test_format_parse_roundtrip(s6):
    for text in ["(e3, a, e1)", "(u, u, u)", "(e2, u, e2)", "0"]:
        assert format_triple(s6, parse_triple(s6, text)) == text


def test_malformed(s6):
    with pytest.raises(TripleError):
        T(s6, "e2, a, e1")
    with pytest.raises(TripleError):
        T(s6, "e1, u")
