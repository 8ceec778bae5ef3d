"""Acceptance suite: one group of tests per criterion.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS/FAIL line per criterion.  Running this file directly does the same.
"""

import itertools
import random
import sys
from fractions import Fraction
from math import gcd

import pytest

from selfsim import finitegpd as fg
from selfsim.action import DegreeCocycle, Decision, orbits, pseudo_free_probe, rk_classes
from selfsim.assumptions import CocycleConflict, check_assumptions
from selfsim.cli import run, similarity_instances
from selfsim.germ import (EvPath, compose, germ_equal, germ_range, make_germ, rho)
from selfsim.graph import Path, paths_of_length
from selfsim.homol import homology_pipeline
from selfsim.kthy import (Monomial, Term, k_cuntz_pimsner, k_fixed_point, monomial_product,
                          multipliers, phi)
from selfsim.semigroup import ZERO, Triple, multiply, star, triple_equal
from selfsim.zlin import AbGroup, IntMatrix, snf

from conftest import load


def crit(n, text):
    return pytest.mark.criterion(n, text)


# -- 1 ---------------------------------------------------------------------------

INVERSE_ROWS = [
    ("a", "e2", "e1", "u"), ("a", "e6", "e3", "b^-1"),
    ("b", "e5", "e2", "a^-1"), ("b", "e4", "e6", "c^-1"),
    ("c", "e2", "e4", "a"), ("c", "e6", "e5", "b^-1"),
]


@crit(1, "inverse tables of the worked example match the reference rows exactly")
def test_c1_inverse_tables(s6):
    g = s6.graph
    derived = {}
    for i, name in enumerate(s6.gen_names):
        for f, (e, res) in s6.moves[-(i + 1)].items():
            derived[(name, g.edge_names[f])] = (g.edge_names[e], s6.format_word(res))
    expected = {(n, f): (e, w) for n, f, e, w in INVERSE_ROWS}
    assert derived == expected
    # twelve equalities: six images and six restrictions
    assert 2 * len(derived) == 12


# -- 2 ---------------------------------------------------------------------------


@crit(2, "action and restriction of a^-1 c b a on e1, e3 and of its square")
def test_c2_word_computations(s6):
    g = s6.graph
    w = s6.parse_word("a^-1 c b a")
    e1, e3 = g.edge("e1"), g.edge("e3")
    assert s6.act_edge(w, e1) == e3
    assert s6.act_edge(w, e3) == e1
    assert s6.restrict_edge(w, e1) == s6.parse_word("a")
    assert s6.restrict_edge(w, e3) == s6.parse_word("a^-1 c b")
    assert s6.restrict_path(s6.power(w, 2), g.path([e1])) == w


# -- 3 ---------------------------------------------------------------------------


@crit(3, "powers 1..8 of a^-1 c b a are certified non-units with path witnesses")
def test_c3_word_problem(s6):
    w = s6.parse_word("a^-1 c b a")
    for n in range(1, 9):
        wn = s6.power(w, n)
        chk = s6.is_unit(wn)
        assert chk.answer is Decision.NO, n
        src, img = chk.witness
        assert s6.act_path(wn, src) == img and img != src


# -- 4 ---------------------------------------------------------------------------


@crit(4, "pseudo-free probe to length 4, one orbit, R_2 one class of size 36")
def test_c4_pseudo_free_and_orbits(s6):
    rep = pseudo_free_probe(s6, 4)
    assert rep.ok and not rep.inconclusive
    assert len(orbits(s6)) == 1
    classes = rk_classes(s6, 2)
    assert len(classes) == 1
    assert len(classes[0]) == 36


# -- 5 ---------------------------------------------------------------------------


@crit(5, "K pipeline: D = Phi0 = Phi1 = 2, K(F) = Z[1/2]^2, K(C*(G,E)) = 0^2")
def test_c5_k_pipeline(s6, c6):
    m = multipliers(s6, c6)
    assert (m.D, m.phi0, m.phi1) == (2, 2, 2)
    assert k_fixed_point(s6, c6) == (AbGroup.Z_localized(2), AbGroup.Z_localized(2))
    assert k_cuntz_pimsner(s6, c6) == (AbGroup.zero(), AbGroup.zero())


# -- 6 ---------------------------------------------------------------------------


@crit(6, "homology pipeline: H(H) = Z[1/2]^2, rho = x1/2 via e1, H_0,1,2 = 0, tail 0")
def test_c6_homology_pipeline(s6, c6):
    h = homology_pipeline(s6, c6)
    assert h.H_of_H == (AbGroup.Z_localized(2), AbGroup.Z_localized(2))
    assert h.rho.value == Fraction(1, 2)
    assert s6.graph.edge_names[h.conjugator.edge] == "e1"
    assert all(h.conjugator.checks.values())
    sol = h.solution
    assert sol.H0.is_zero() and sol.H1.is_zero() and sol.H2.is_zero()
    assert sol.tail_zero and h.exact


# -- 7 ---------------------------------------------------------------------------


def _rank_mod(rows, p):
    """Rank over GF(p), or over Q when p is None."""
    m = [[Fraction(x) if p is None else x % p for x in r] for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c] if p is None else pow(m[rank][c], -1, p)
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [(a - f * b) if p is None else (a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _bar_complex_group(elements, mul, top):
    """Dense boundary matrices of the bar complex of a finite group, built
    directly from tuples (independent of the library's enumeration)."""
    mats = {}
    for n in range(1, top + 1):
        cols = list(itertools.product(elements, repeat=n))
        rows = list(itertools.product(elements, repeat=n - 1))
        index = {r: i for i, r in enumerate(rows)}
        M = [[0] * len(cols) for _ in rows]
        for j, tup in enumerate(cols):
            faces = [tup[1:]]
            for i in range(1, n):
                faces.append(tup[:i - 1] + (mul(tup[i - 1], tup[i]),) + tup[i + 1:])
            faces.append(tup[:-1])
            for i, f in enumerate(faces):
                M[index[f]][j] += (-1) ** i
        mats[n] = (M, len(rows), len(cols))
    return mats


def _mod_p_dims(mats, n_max, p):
    dims = []
    for n in range(n_max + 1):
        dim_c = mats[n + 1][1]
        r_n = _rank_mod(mats[n][0], p) if n >= 1 else 0
        r_n1 = _rank_mod(mats[n + 1][0], p)
        dims.append(dim_c - r_n - r_n1)
    return dims


def _predicted_dims(groups, p):
    """dim H_n(C; F_p) from integral homology by universal coefficients."""
    def t(g):
        return sum(1 for x in g.torsion if p is not None and x % p == 0)
    return [g.rational_rank() + t(g) + (t(groups[n - 1]) if n else 0) for n, g in enumerate(groups)]


def _all_constructed():
    Z2 = fg.cyclic_group(2)
    out = [fg.units_only(["e"]), fg.units_only(["p", "q"]), Z2, fg.cyclic_group(3),
           fg.transitive_groupoid(["1", "2", "3"], Z2)]
    out += [fg.pair_groupoid(list(range(k))) for k in range(1, 5)]
    for _, data in similarity_instances():
        if len(data.G1) <= 20:
            out += [data.G1, data.G2]
    return out


@crit(7, "chain complex identity, pair groupoids (Z,0,0,0), Z/2 = (Z, Z/2, 0, Z/2)")
def test_c7_chain_complex(tmp_path):
    for G in _all_constructed():
        assert fg.chain_complex_ok(G, 3), G


@crit(7, "chain complex identity, pair groupoids (Z,0,0,0), Z/2 = (Z, Z/2, 0, Z/2)")
def test_c7_pair_groupoids():
    for k in range(1, 5):
        assert fg.homology(fg.pair_groupoid(list(range(k))), 3) == \
            [AbGroup.Z(), AbGroup.zero(), AbGroup.zero(), AbGroup.zero()]


@crit(7, "chain complex identity, pair groupoids (Z,0,0,0), Z/2 = (Z, Z/2, 0, Z/2)")
def test_c7_z2_against_bar_complex():
    expected = [AbGroup.Z(), AbGroup.cyclic(2), AbGroup.zero(), AbGroup.cyclic(2)]
    assert fg.homology(fg.cyclic_group(2), 3) == expected
    mats = _bar_complex_group([0, 1], lambda a, b: (a + b) % 2, 4)
    for p in (None, 2, 3):
        assert _mod_p_dims(mats, 3, p) == _predicted_dims(expected, p)


# -- 8 ---------------------------------------------------------------------------


@crit(8, "both similarity statements verified elementwise; homology agrees to degree 3")
def test_c8_similarity():
    instances = similarity_instances()
    assert len([n for n, d in instances if "cocycle" in n]) >= 3
    assert len([n for n, d in instances if "cocycle" not in n]) >= 3
    for name, data in instances:
        rep = fg.similarity_check(data)
        assert rep.ok, (name, rep.witness)
        assert fg.homology(data.G1, 3) == fg.homology(data.G2, 3), name


# -- 9 ---------------------------------------------------------------------------

N_CASES = 10_000


def _random_word(s, rng, start, max_len):
    """A random reduced word with d = start (built right to left)."""
    letters = []
    cur = start
    for _ in range(rng.randint(0, max_len)):
        options = [l for l in s.letters if s.letter_d(l) == cur and (not letters or l != -letters[0])]
        if not options:
            break
        l = rng.choice(options)
        letters.insert(0, l)
        cur = s.letter_t(l)
    return s.word_from_letters(letters) if letters else s.unit(start)


def _random_path(g, rng, v, n):
    edges = []
    cur = v
    for _ in range(n):
        e = rng.choice(g.edges_into[cur])
        edges.append(e)
        cur = g.s[e]
    return g.path(edges, base=v)


@crit(9, "property suites: restriction identities, semigroup, germs, phi, SNF")
def test_c9_restriction_identities(s6):
    rng = random.Random(20240601)
    g = s6.graph
    from selfsim.graph import concat
    for _ in range(N_CASES):
        v = rng.randrange(g.n_vertices)
        gw = _random_word(s6, rng, v, 6)
        mu = _random_path(g, rng, v, rng.randint(0, 3))
        nu = _random_path(g, rng, mu.s, rng.randint(0, 3))
        # (1)
        assert s6.restrict_path(gw, concat(mu, nu)) == s6.restrict_path(s6.restrict_path(gw, mu), nu)
        # (2)
        assert s6.restrict_path(s6.unit(mu.r), mu) == s6.unit(mu.s)
        # (3)
        hw = _random_word(s6, rng, gw.t, 6)
        lhs = s6.restrict_path(s6.mul(hw, gw), mu)
        gm = s6.act_path(gw, mu)
        rhs = s6.mul(s6.restrict_path(hw, gm), s6.restrict_path(gw, mu))
        assert lhs == rhs
        # (4)
        ginv = s6.inverse(gw)
        mu2 = _random_path(g, rng, gw.t, rng.randint(0, 3))
        assert s6.restrict_path(ginv, mu2) == s6.inverse(
            s6.restrict_path(gw, s6.act_path(ginv, mu2)))
        # defining identity g.(mu nu) = (g.mu)(g|_mu . nu)
        assert s6.act_path(gw, concat(mu, nu)) == concat(
            s6.act_path(gw, mu), s6.act_path(s6.restrict_path(gw, mu), nu))


def _small_triples(s):
    g = s.graph
    paths = [p for v in range(g.n_vertices) for k in (0, 1) for p in paths_of_length(g, v, k)]
    words = [s.unit(v) for v in range(g.n_vertices)] + [s.letter_word(l) for l in s.letters]
    out = []
    for a in paths:
        for b in paths:
            for w in words:
                if w.d == b.s and w.t == a.s:
                    out.append(Triple(a, w, b))
    return out


def _teq(s, x, y):
    if x is ZERO or y is ZERO:
        return x is y
    return x == y or triple_equal(s, x, y) is Decision.YES


@crit(9, "property suites: restriction identities, semigroup, germs, phi, SNF")
def test_c9_semigroup_exhaustive(s6):
    T = _small_triples(s6) + [ZERO]
    assert len(T) ** 3 >= N_CASES
    count = 0
    for x in T:
        assert _teq(s6, star(s6, star(s6, x)), x)
        for y in T:
            xy = multiply(s6, x, y)
            assert _teq(s6, star(s6, xy), multiply(s6, star(s6, y), star(s6, x)))
            for z in T:
                assert _teq(s6, multiply(s6, xy, z), multiply(s6, x, multiply(s6, y, z)))
                count += 1
        if x is not ZERO:
            assert _teq(s6, multiply(s6, multiply(s6, x, star(s6, x)), x), x)
    assert count >= N_CASES


def _random_point(g, rng):
    loops = [p for v in range(g.n_vertices) for k in (1, 2, 3)
             for p in paths_of_length(g, v, k) if p.s == p.r]
    c = rng.choice(loops)
    pre_choices = [p for v in range(g.n_vertices) for k in (0, 1, 2)
                   for p in paths_of_length(g, v, k) if p.s == c.r]
    return EvPath(rng.choice(pre_choices), c)


def _random_germ(s, rng, xi):
    g = s.graph
    beta = g.path(xi.first(rng.randint(0, 2)), base=xi.r)
    w = _random_word(s, rng, beta.s, 3)
    alphas = [p for v in range(g.n_vertices) for k in (0, 1, 2)
              for p in paths_of_length(g, v, k) if p.s == w.t]
    return make_germ(s, rng.choice(alphas), w, beta, xi)


@crit(9, "property suites: restriction identities, semigroup, germs, phi, SNF")
def test_c9_germ_associativity_and_rho(s6):
    rng = random.Random(7)
    g = s6.graph
    for _ in range(N_CASES):
        x1 = _random_germ(s6, rng, _random_point(g, rng))
        x2 = _random_germ(s6, rng, germ_range(s6, x1))
        x3 = _random_germ(s6, rng, germ_range(s6, x2))
        a = compose(s6, x3, compose(s6, x2, x1))
        b = compose(s6, compose(s6, x3, x2), x1)
        assert germ_equal(s6, a, b) is Decision.YES
        assert rho(compose(s6, x2, x1)) == rho(x2) + rho(x1)


def _random_monomial(s, rng, k):
    g = s.graph
    terms = []
    for _ in range(rng.randint(1, 3)):
        nu = _random_path(g, rng, rng.randrange(g.n_vertices), k)
        w = _random_word(s, rng, nu.s, 3)
        mus = [p for v in range(g.n_vertices) for p in paths_of_length(g, v, k) if p.s == w.t]
        terms.append(Term(rng.randint(-2, 2), rng.choice(mus), w, nu))
    return Monomial.of(terms)


@crit(9, "property suites: restriction identities, semigroup, germs, phi, SNF")
def test_c9_phi_multiplicative(s6):
    rng = random.Random(11)
    nonzero = 0
    for i in range(N_CASES):
        k = i % 3
        x = _random_monomial(s6, rng, k)
        y = _random_monomial(s6, rng, k)
        xy = monomial_product(s6, x, y)
        nonzero += bool(xy.terms)
        assert phi(s6, xy) == monomial_product(s6, phi(s6, x), phi(s6, y))
    assert nonzero > N_CASES // 20


def _det(rows):
    m = [list(map(Fraction, r)) for r in rows]
    n, det = len(m), Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return int(det)


def _determinantal_divisors(A):
    nr, nc = len(A), len(A[0])
    out = []
    for k in range(1, min(nr, nc) + 1):
        d = 0
        for rs in itertools.combinations(range(nr), k):
            for cs in itertools.combinations(range(nc), k):
                d = gcd(d, _det([[A[i][j] for j in cs] for i in rs]))
                if d == 1:
                    break
            if d == 1:
                break
        if d == 0:
            break
        out.append(d)
    return out


@crit(9, "property suites: restriction identities, semigroup, germs, phi, SNF")
def test_c9_snf_against_minors():
    rng = random.Random(5)
    for _ in range(N_CASES):
        nr, nc = rng.randint(1, 5), rng.randint(1, 5)
        lo = rng.choice([1, 3, 9])
        rows = [[rng.randint(-lo, lo) for _ in range(nc)] for _ in range(nr)]
        if rng.random() < 0.3:  # force some low-rank and structured cases
            rows[-1] = [2 * x for x in rows[0]]
        A = IntMatrix(rows)
        F = snf(A)
        assert F.U @ A @ F.V == F.S
        assert abs(_det(F.U.tolist())) == 1 and abs(_det(F.V.tolist())) == 1
        S = F.S.tolist()
        for i in range(nr):
            for j in range(nc):
                if i != j:
                    assert S[i][j] == 0
        inv = F.invariants
        assert all(x > 0 for x in inv)
        assert all(inv[i + 1] % inv[i] == 0 for i in range(len(inv) - 1))
        dd = _determinantal_divisors(rows)
        expected = [dd[0]] + [dd[i] // dd[i - 1] for i in range(1, len(dd))] if dd else []
        assert inv == expected


# -- 10 --------------------------------------------------------------------------


@crit(10, "scope guards: non-transitive refused (exit 1), corrupted cocycle, corrupted theta")
def test_c10_non_transitive_refused(capsys):
    for cmd in ("ktheory", "homology", "report"):
        assert run([cmd, "two_orbits.spec"]) == 1
    assert "transitive" in capsys.readouterr().out


@crit(10, "scope guards: non-transitive refused (exit 1), corrupted cocycle, corrupted theta")
def test_c10_corrupted_cocycle(s6):
    bad = DegreeCocycle({0: 1, 1: 0, 2: 0})  # a^-1 c b a now has degree 0
    with pytest.raises(CocycleConflict):
        multipliers(s6, bad)
    with pytest.raises(CocycleConflict):
        homology_pipeline(s6, bad)


@crit(10, "scope guards: non-transitive refused (exit 1), corrupted cocycle, corrupted theta")
def test_c10_corrupted_theta():
    name, data = similarity_instances()[2]
    u = data.G1.units[0]
    others = [x for x in range(len(data.G1)) if data.G1.d[x] == data.theta1[u] and
              data.G1.t[x] == data.G1.t[data.theta1[u]] and x != data.theta1[u]]
    theta = dict(data.theta1)
    theta[u] = others[0] if others else data.G1.units[-1]
    rep = fg.similarity_check(fg.SimilarityData(data.G1, data.G2, data.phi, data.psi,
                                                theta, data.theta2))
    assert not rep.ok and rep.witness


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
