"""The inverse semigroup of triples (alpha, g, beta) plus zero."""

from __future__ import annotations

from dataclasses import dataclass

from .action import DEFAULT_BUDGET, ActionSystem, Budget, Decision, Word
from .graph import Path, concat, strip_prefix


class TripleError(ValueError):
    pass


@dataclass(frozen=True)
class Triple:
    alpha: Path
    word: Word
    beta: Path


class _Zero:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ZERO"

    def __reduce__(self):
        return (_Zero, ())


ZERO = _Zero()


def make_triple(alpha: Path, word: Word, beta: Path) -> Triple:
    if word.d != beta.s or word.t != alpha.s:
        raise TripleError("word must run from s(beta) to s(alpha)")
    return Triple(alpha, word, beta)


def idempotent(sys: ActionSystem, alpha: Path) -> Triple:
    """z_alpha = (alpha, s(alpha), alpha)."""
    return Triple(alpha, sys.unit(alpha.s), alpha)


def multiply(sys: ActionSystem, x, y):
    if x is ZERO or y is ZERO:
        return ZERO
    alpha, g, beta = x.alpha, x.word, x.beta
    lam, h, omega = y.alpha, y.word, y.beta
    mu = strip_prefix(beta, lam)
    if mu is not None:
        # beta = lam mu
        hinv = sys.inverse(h)
        moved, res = sys.act_restrict_path(hinv, mu)
        # h|_{h^-1 . mu} = (h^-1|_mu)^-1
        out = Triple(alpha, sys.mul(g, sys.inverse(res)), concat(omega, moved))
    else:
        mu = strip_prefix(lam, beta)
        if mu is None:
            return ZERO
        # lam = beta mu
        moved, res = sys.act_restrict_path(g, mu)
        out = Triple(concat(alpha, moved), sys.mul(res, h), omega)
    return make_triple(out.alpha, out.word, out.beta)


def star(sys: ActionSystem, x):
    if x is ZERO:
        return ZERO
    return Triple(x.beta, sys.inverse(x.word), x.alpha)


def triple_equal(sys: ActionSystem, x, y, budget: Budget = DEFAULT_BUDGET) -> Decision:
    if x is ZERO or y is ZERO:
        return Decision.YES if x is y else Decision.NO
    if x.alpha != y.alpha or x.beta != y.beta:
        return Decision.NO
    return sys.equal(x.word, y.word, budget)


def is_idempotent(sys: ActionSystem, x, budget: Budget = DEFAULT_BUDGET) -> Decision:
    return triple_equal(sys, multiply(sys, x, x), x, budget)


def act_on_path(sys: ActionSystem, x: Triple, path: Path) -> Path | None:
    """(alpha, g, beta) . beta mu = alpha (g . mu); None off the domain cylinder."""
    mu = strip_prefix(path, x.beta)
    if mu is None:
        return None
    return concat(x.alpha, sys.act_path(x.word, mu))


def format_triple(sys: ActionSystem, x) -> str:
    if x is ZERO:
        return "0"
    g = sys.graph
    return f"({g.format_path(x.alpha)}, {sys.format_word(x.word)}, {g.format_path(x.beta)})"


def parse_triple(sys: ActionSystem, text: str) -> Triple:
    """``alpha, word, beta`` with paths and words in their usual text forms; ``0`` is zero."""
    text = text.strip().strip("()")
    if text == "0":
        return ZERO
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise TripleError(f"expected 'alpha, word, beta', got {text!r}")
    g = sys.graph
    return make_triple(g.parse_path(parts[0]), sys.parse_word(parts[1]), g.parse_path(parts[2]))
