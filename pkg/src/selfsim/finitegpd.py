"""Explicit finite groupoids: constructions, similarity checks and homology.

Elements are interned as integers ``0..n-1`` with arbitrary hashable labels.
The product ``x * y`` is defined when ``d(x) == t(y)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Callable, Hashable, Iterable, Sequence

from .zlin import AbGroup, IntMatrix, sparse_elementary_divisors


class GroupoidError(ValueError):
    pass


class InvalidGroupoid(GroupoidError):
    pass


class InvalidHom(GroupoidError):
    pass


class InvalidAction(GroupoidError):
    pass


class EndpointMismatch(GroupoidError):
    pass


class TooManyTuples(GroupoidError):
    pass


MAX_TUPLES = 10**6


class FiniteGroupoid:
    def __init__(self, labels: Sequence[Hashable], d: Sequence[int], t: Sequence[int],
                 mul: dict[tuple[int, int], int], check: bool = True):
        self.labels = list(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise InvalidGroupoid("duplicate element labels")
        self.d = list(d)
        self.t = list(t)
        self._mul = dict(mul)
        self.units = sorted(set(self.d) | set(self.t))
        self.inv = [-1] * len(self.labels)
        if check:
            self.check_axioms()
        else:
            self._find_inverses()

    @classmethod
    def from_operations(cls, elements: Iterable[Hashable], d: Callable, t: Callable,
                        mul: Callable, check: bool = True) -> "FiniteGroupoid":
        labels = list(elements)
        index = {lab: i for i, lab in enumerate(labels)}
        try:
            dd = [index[d(x)] for x in labels]
            tt = [index[t(x)] for x in labels]
        except KeyError as exc:
            raise InvalidGroupoid(f"d or t leaves the element set: {exc}") from None
        by_t: dict[int, list[int]] = {}
        for j, tj in enumerate(tt):
            by_t.setdefault(tj, []).append(j)
        table = {}
        for i, x in enumerate(labels):
            for j in by_t.get(dd[i], ()):
                z = mul(x, labels[j])
                if z not in index:
                    raise InvalidGroupoid(f"product {x!r} * {labels[j]!r} = {z!r} is not an element")
                table[i, j] = index[z]
        return cls(labels, dd, tt, table, check=check)

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"FiniteGroupoid({len(self)} elements, {len(self.units)} units)"

    def mul(self, x: int, y: int) -> int:
        try:
            return self._mul[x, y]
        except KeyError:
            raise GroupoidError(f"{self.labels[x]!r} and {self.labels[y]!r} are not composable") from None

    def composable(self, x: int, y: int) -> bool:
        return self.d[x] == self.t[y]

    def lab_mul(self, x, y):
        return self.labels[self.mul(self.index[x], self.index[y])]

    def _find_inverses(self):
        for x in range(len(self)):
            for y in self.arrows(self.t[x], self.d[x]):
                if self._mul.get((x, y)) == self.t[x] and self._mul.get((y, x)) == self.d[x]:
                    self.inv[x] = y
                    break

    def arrows(self, source: int, target: int) -> list[int]:
        """Elements with d = source and t = target."""
        if not hasattr(self, "_hom"):
            hom: dict[tuple[int, int], list[int]] = {}
            for x in range(len(self)):
                hom.setdefault((self.d[x], self.t[x]), []).append(x)
            self._hom = hom
        return self._hom.get((source, target), [])

    def check_axioms(self) -> None:
        n = len(self)
        units = set(self.units)
        for u in units:
            if self.d[u] != u or self.t[u] != u:
                raise InvalidGroupoid(f"unit {self.labels[u]!r} has d or t different from itself")
        for x in range(n):
            for y in range(n):
                defined = (x, y) in self._mul
                if defined != (self.d[x] == self.t[y]):
                    raise InvalidGroupoid(
                        f"product of {self.labels[x]!r}, {self.labels[y]!r} defined={defined} "
                        f"but composable={self.d[x] == self.t[y]}")
                if defined:
                    z = self._mul[x, y]
                    if self.d[z] != self.d[y] or self.t[z] != self.t[x]:
                        raise InvalidGroupoid(f"d/t of {self.labels[x]!r}*{self.labels[y]!r} wrong")
        for x in range(n):
            if self._mul[self.t[x], x] != x or self._mul[x, self.d[x]] != x:
                raise InvalidGroupoid(f"units are not neutral for {self.labels[x]!r}")
        for (x, y), xy in self._mul.items():
            for z in self.arrows_into(self.d[y]):
                if self._mul[xy, z] != self._mul[x, self._mul[y, z]]:
                    raise InvalidGroupoid(
                        f"not associative at {self.labels[x]!r}, {self.labels[y]!r}, {self.labels[z]!r}")
        self._find_inverses()
        missing = [self.labels[x] for x in range(n) if self.inv[x] < 0]
        if missing:
            raise InvalidGroupoid(f"no inverse for {missing[:5]!r}")

    def arrows_into(self, unit: int) -> list[int]:
        """Elements y with t(y) == unit (the ones that can follow on the right)."""
        if not hasattr(self, "_into"):
            into: dict[int, list[int]] = {}
            for y in range(len(self)):
                into.setdefault(self.t[y], []).append(y)
            self._into = into
        return self._into.get(unit, [])


# -- standard examples --------------------------------------------------------


def group(elements: Sequence[Hashable], mul: Callable, identity: Hashable) -> FiniteGroupoid:
    return FiniteGroupoid.from_operations(elements, lambda x: identity, lambda x: identity, mul)


def cyclic_group(n: int) -> FiniteGroupoid:
    return group(list(range(n)), lambda a, b: (a + b) % n, 0)


def pair_groupoid(points: Sequence[Hashable]) -> FiniteGroupoid:
    elems = [(x, y) for x in points for y in points]
    return FiniteGroupoid.from_operations(
        elems, lambda g: (g[1], g[1]), lambda g: (g[0], g[0]), lambda g, h: (g[0], h[1]))


def units_only(points: Sequence[Hashable]) -> FiniteGroupoid:
    return FiniteGroupoid.from_operations(points, lambda x: x, lambda x: x, lambda x, y: x)


def transitive_groupoid(points: Sequence[Hashable], iso: FiniteGroupoid) -> FiniteGroupoid:
    """points x iso x points with (x, k, y)(y, k', z) = (x, kk', z); ``iso`` must be a group."""
    if len(iso.units) != 1:
        raise InvalidGroupoid("isotropy must be a group")
    e = iso.labels[iso.units[0]]
    elems = [(x, k, y) for x in points for k in iso.labels for y in points]
    return FiniteGroupoid.from_operations(
        elems, lambda g: (g[2], e, g[2]), lambda g: (g[0], e, g[0]),
        lambda g, h: (g[0], iso.lab_mul(g[1], h[1]), h[2]))


def disjoint_union(*parts: FiniteGroupoid) -> FiniteGroupoid:
    labels, d, t, mul = [], [], [], {}
    off = 0
    for k, G in enumerate(parts):
        labels += [(k, lab) for lab in G.labels]
        d += [off + x for x in G.d]
        t += [off + x for x in G.t]
        mul.update({(off + x, off + y): off + z for (x, y), z in G._mul.items()})
        off += len(G)
    return FiniteGroupoid(labels, d, t, mul)


def relabel(G: FiniteGroupoid, perm: Sequence[int]) -> FiniteGroupoid:
    """The same groupoid with element ``x`` moved to position ``perm[x]``."""
    n = len(G)
    inv = [0] * n
    for x, px in enumerate(perm):
        inv[px] = x
    labels = [G.labels[inv[i]] for i in range(n)]
    d = [perm[G.d[inv[i]]] for i in range(n)]
    t = [perm[G.t[inv[i]]] for i in range(n)]
    mul = {(perm[x], perm[y]): perm[z] for (x, y), z in G._mul.items()}
    return FiniteGroupoid(labels, d, t, mul, check=False)


# -- homomorphisms and actions ------------------------------------------------


@dataclass
class GroupoidHom:
    src: FiniteGroupoid
    dst: FiniteGroupoid
    mapping: list[int]

    @classmethod
    def from_function(cls, src: FiniteGroupoid, dst: FiniteGroupoid, f: Callable) -> "GroupoidHom":
        try:
            return cls(src, dst, [dst.index[f(x)] for x in src.labels])
        except KeyError as exc:
            raise InvalidHom(f"image {exc} is not an element of the target") from None

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def problems(self) -> list[str]:
        S, T, m = self.src, self.dst, self.mapping
        out = []
        for x in range(len(S)):
            if T.d[m[x]] != m[S.d[x]] or T.t[m[x]] != m[S.t[x]]:
                out.append(f"d/t not preserved at {S.labels[x]!r}")
        for u in S.units:
            if m[u] not in T.units:
                out.append(f"unit {S.labels[u]!r} not sent to a unit")
        for (x, y), z in S._mul.items():
            if T._mul.get((m[x], m[y])) != m[z]:
                out.append(f"product not preserved at ({S.labels[x]!r}, {S.labels[y]!r})")
                break
        return out

    def check(self) -> "GroupoidHom":
        probs = self.problems()
        if probs:
            raise InvalidHom("; ".join(probs[:3]))
        return self


def trivial_hom(G: FiniteGroupoid) -> tuple[GroupoidHom, FiniteGroupoid]:
    one = units_only(["*"])
    return GroupoidHom(G, one, [0] * len(G)), one


@dataclass
class GroupoidAction:
    """A right action of G on H with anchor p: H -> G^(0).

    ``act[(h, g)]`` is ``h . g`` for every pair with ``t(g) == p(h)``.
    """

    G: FiniteGroupoid
    H: FiniteGroupoid
    anchor: list[int]
    act: dict[tuple[int, int], int]

    @classmethod
    def from_function(cls, G: FiniteGroupoid, H: FiniteGroupoid, p: Callable,
                      act: Callable) -> "GroupoidAction":
        anchor = [G.index[p(h)] for h in H.labels]
        table = {}
        for h in range(len(H)):
            for g in range(len(G)):
                if G.t[g] == anchor[h]:
                    table[h, g] = H.index[act(H.labels[h], G.labels[g])]
        return cls(G, H, anchor, table)

    def __call__(self, h: int, g: int) -> int:
        return self.act[h, g]

    def problems(self) -> list[str]:
        G, H, p, act = self.G, self.H, self.anchor, self.act
        out = []
        for h in range(len(H)):
            if p[h] not in G.units:
                out.append(f"anchor of {H.labels[h]!r} is not a unit")
            if p[h] != p[H.t[h]] or p[h] != p[H.d[h]]:
                out.append(f"anchor not constant along {H.labels[h]!r}")
        if out:
            return out
        for (h, g), hg in act.items():
            if p[hg] != G.d[g]:
                out.append(f"(i) fails at {H.labels[h]!r}.{G.labels[g]!r}")
            for g2 in G.arrows_into(G.d[g]):
                if act[h, G.mul(g, g2)] != act[hg, g2]:
                    out.append(f"(ii) fails at {H.labels[h]!r}, {G.labels[g]!r}, {G.labels[g2]!r}")
        for (h1, h2), h12 in H._mul.items():
            for g in G.arrows_into(p[h12]):
                a, b = act[h1, g], act[h2, g]
                if H._mul.get((a, b)) != act[h12, g]:
                    out.append(f"(iii) fails at {H.labels[h1]!r}, {H.labels[h2]!r}, {G.labels[g]!r}")
        for h in range(len(H)):
            if act[h, p[h]] != h:
                out.append(f"(iv) fails at {H.labels[h]!r}")
        return out

    def check(self) -> "GroupoidAction":
        probs = self.problems()
        if probs:
            raise InvalidAction("; ".join(probs[:3]))
        return self


# -- constructions ------------------------------------------------------------------


def semidirect(action: GroupoidAction) -> tuple[FiniteGroupoid, GroupoidHom]:
    """H x| G with (h, g)(h' . g, g') = (hh', gg'), and the projection to G."""
    action.check()
    G, H, p = action.G, action.H, action.anchor
    act = action.act
    elems = [(h, g) for h in range(len(H)) for g in range(len(G)) if G.t[g] == p[h]]

    def d(x):
        h, g = x
        return (act[H.d[h], g], G.d[g])

    def t(x):
        h, g = x
        return (H.t[h], G.t[g])

    def mul(x, y):
        (h, g), (k, g2) = x, y
        return (H.mul(h, act[k, G.inv[g]]), G.mul(g, g2))

    S = FiniteGroupoid.from_operations(elems, d, t, mul)
    S.labels = [(H.labels[h], G.labels[g]) for h, g in elems]
    S.index = {lab: i for i, lab in enumerate(S.labels)}
    proj = GroupoidHom(S, G, [g for _, g in elems])
    return S, proj.check()


def skew(G: FiniteGroupoid, rho: GroupoidHom) -> FiniteGroupoid:
    """G x_rho Gamma: pairs (g, gamma) with d(gamma) = t(rho(g)),
    (g, gamma)(g', gamma rho(g)) = (gg', gamma)."""
    rho.check()
    Gam = rho.dst
    elems = [(g, c) for g in range(len(G)) for c in range(len(Gam)) if Gam.d[c] == Gam.t[rho(g)]]

    def d(x):
        g, c = x
        return (G.d[g], Gam.mul(c, rho(g)))

    def t(x):
        g, c = x
        return (G.t[g], c)

    def mul(x, y):
        (g, c), (g2, c2) = x, y
        if c2 != Gam.mul(c, rho(g)):
            return None
        return (G.mul(g, g2), c)

    # the composable pairs are exactly those with matching d/t, so mul never returns None
    K = FiniteGroupoid.from_operations(elems, d, t, mul)
    K.labels = [(G.labels[g], Gam.labels[c]) for g, c in elems]
    K.index = {lab: i for i, lab in enumerate(K.labels)}
    return K


def skew_right_action(K: FiniteGroupoid, Gam: FiniteGroupoid) -> GroupoidAction:
    """Gamma acting on G x_rho Gamma on the right: (g, gamma) . c = (g, c^-1 gamma)."""

    def p(x):
        return Gam.labels[Gam.t[Gam.index[x[1]]]]

    def act(x, c):
        g, gam = x
        ci = Gam.inv[Gam.index[c]]
        return (g, Gam.labels[Gam.mul(ci, Gam.index[gam])])

    return GroupoidAction.from_function(Gam, K, p, act).check()


# -- similarity ---------------------------------------------------------------------


@dataclass
class SimilarityData:
    """phi: G1 -> G2, psi: G2 -> G1; theta1 conjugates id_G1 to psi.phi and
    theta2 conjugates id_G2 to phi.psi (both indexed by units)."""

    G1: FiniteGroupoid
    G2: FiniteGroupoid
    phi: GroupoidHom
    psi: GroupoidHom
    theta1: dict[int, int]
    theta2: dict[int, int]
    name: str = ""


@dataclass
class SimilarityReport:
    ok: bool
    witness: str | None = None
    checked: int = 0


def _conjugation_failure(G1, G2, f1, f2, theta) -> tuple[str | None, int]:
    """First x in G1 where theta(t(x)) f1(x) != f2(x) theta(d(x)), or None."""
    checked = 0
    for x in range(len(G1)):
        a, b = theta[G1.t[x]], f1(x)
        c, e = f2(x), theta[G1.d[x]]
        checked += 1
        if not (G2.composable(a, b) and G2.composable(c, e)):
            return f"{G1.labels[x]!r}: products not defined", checked
        if G2.mul(a, b) != G2.mul(c, e):
            return f"{G1.labels[x]!r}", checked
    return None, checked


def similarity_check(data: SimilarityData) -> SimilarityReport:
    G1, G2, phi, psi = data.G1, data.G2, data.phi, data.psi
    if phi.src is not G1 or phi.dst is not G2 or psi.src is not G2 or psi.dst is not G1:
        raise EndpointMismatch("phi must map G1 -> G2 and psi G2 -> G1")
    if set(data.theta1) != set(G1.units) or set(data.theta2) != set(G2.units):
        raise EndpointMismatch("theta maps must be defined on the unit spaces")
    for name, h in (("phi", phi), ("psi", psi)):
        probs = h.problems()
        if probs:
            return SimilarityReport(False, f"{name} is not a homomorphism: {probs[0]}")
    psiphi = GroupoidHom(G1, G1, [psi(phi(x)) for x in range(len(G1))])
    phipsi = GroupoidHom(G2, G2, [phi(psi(y)) for y in range(len(G2))])
    ident1 = GroupoidHom(G1, G1, list(range(len(G1))))
    ident2 = GroupoidHom(G2, G2, list(range(len(G2))))
    bad, n1 = _conjugation_failure(G1, G1, ident1, psiphi, data.theta1)
    if bad:
        return SimilarityReport(False, f"(*) fails at {bad}", n1)
    bad, n2 = _conjugation_failure(G2, G2, ident2, phipsi, data.theta2)
    if bad:
        return SimilarityReport(False, f"(**) fails at {bad}", n1 + n2)
    return SimilarityReport(True, None, n1 + n2)


def canonical_similarity_HG(action: GroupoidAction) -> SimilarityData:
    """(H x| G) x_pi G is similar to H."""
    G, H, p, act = action.G, action.H, action.anchor, action.act
    S, pi = semidirect(action)
    K = skew(S, pi)
    # K labels: ((h_lab, g_lab), gamma_lab)

    def parts(x):
        (hl, gl), cl = K.labels[x]
        return H.index[hl], G.index[gl], G.index[cl]

    phi_map = []
    for x in range(len(K)):
        h, g, c = parts(x)
        phi_map.append(act[h, G.inv[c]])
    phi = GroupoidHom(K, H, phi_map)
    psi = GroupoidHom(H, K, [K.index[((H.labels[h], G.labels[p[h]]), G.labels[p[h]])]
                             for h in range(len(H))])
    theta1 = {}
    for u in K.units:
        x, _, c = parts(u)
        hx = act[x, G.inv[c]]
        theta1[u] = K.index[((H.labels[hx], G.labels[c]), G.labels[G.t[c]])]
    theta2 = {u: u for u in H.units}
    return SimilarityData(K, H, phi, psi, theta1, theta2, "(H x| G) x_pi G ~ H")


def canonical_similarity_Grho(G: FiniteGroupoid, rho: GroupoidHom) -> SimilarityData:
    """(G x_rho Gamma) x| Gamma is similar to G."""
    Gam = rho.dst
    X = skew(G, rho)
    act = skew_right_action(X, Gam)
    Y, _ = semidirect(act)
    # Y labels: ((g_lab, gamma_lab), gamma'_lab)
    phi = GroupoidHom(Y, G, [G.index[lab[0][0]] for lab in Y.labels])
    psi_map = []
    for g in range(len(G)):
        lab = ((G.labels[g], Gam.labels[rho(G.t[g])]), Gam.labels[rho(g)])
        psi_map.append(Y.index[lab])
    psi = GroupoidHom(G, Y, psi_map)
    theta1 = {}
    for y in Y.units:
        (ul, cl), _ = Y.labels[y]
        u = G.index[ul]
        c = Gam.index[cl]
        theta1[y] = Y.index[((ul, Gam.labels[rho(u)]), Gam.labels[Gam.inv[c]])]
    theta2 = {u: u for u in G.units}
    return SimilarityData(Y, G, phi, psi, theta1, theta2, "(G x_rho Gamma) x| Gamma ~ G")


# -- homology ---------------------------------------------------------------------


def composable_tuples(G: FiniteGroupoid, n: int) -> list[tuple[int, ...]]:
    """G^(n) in lexicographic order of element ids; G^(0) is the unit space."""
    if n == 0:
        return [(u,) for u in G.units]
    succ = [sorted(G.arrows_into(G.d[x])) for x in range(len(G))]
    out = [(x,) for x in range(len(G))]
    for _ in range(n - 1):
        size = sum(len(succ[tup[-1]]) for tup in out)
        if size > MAX_TUPLES:
            raise TooManyTuples(f"|G^({n})| exceeds {MAX_TUPLES}")
        out = [tup + (y,) for tup in out for y in succ[tup[-1]]]
    return out


def boundary_columns(G: FiniteGroupoid, n: int,
                     tuples_n: list | None = None,
                     tuples_prev: list | None = None) -> tuple[list[dict[int, int]], int]:
    """Sparse columns of delta_n : C(G^(n)) -> C(G^(n-1)) and the row count."""
    if n < 1:
        raise ValueError("n >= 1")
    cols_src = tuples_n if tuples_n is not None else composable_tuples(G, n)
    rows_src = tuples_prev if tuples_prev is not None else composable_tuples(G, n - 1)
    row = {tup: i for i, tup in enumerate(rows_src)}
    cols = []
    if n == 1:
        for (x,) in cols_src:
            col: dict[int, int] = {}
            col[row[(G.d[x],)]] = col.get(row[(G.d[x],)], 0) + 1
            col[row[(G.t[x],)]] = col.get(row[(G.t[x],)], 0) - 1
            cols.append({k: v for k, v in col.items() if v})
        return cols, len(rows_src)
    mul = G._mul
    for tup in cols_src:
        col = {}
        faces = [tup[1:]]
        for i in range(1, n):
            faces.append(tup[:i - 1] + (mul[tup[i - 1], tup[i]],) + tup[i + 1:])
        faces.append(tup[:-1])
        for i, f in enumerate(faces):
            r = row[f]
            col[r] = col.get(r, 0) + (1 if i % 2 == 0 else -1)
        cols.append({k: v for k, v in col.items() if v})
    return cols, len(rows_src)


def boundary_matrix(G: FiniteGroupoid, n: int) -> IntMatrix:
    cols, nrows = boundary_columns(G, n)
    return IntMatrix.from_columns(cols, nrows)


def sparse_compose_is_zero(a_cols: list[dict[int, int]], b_cols: list[dict[int, int]]) -> bool:
    """Whether A @ B == 0 where A, B are given by sparse columns."""
    for bc in b_cols:
        acc: dict[int, int] = {}
        for k, v in bc.items():
            for r, w in a_cols[k].items():
                acc[r] = acc.get(r, 0) + v * w
        if any(acc.values()):
            return False
    return True


def chain_complex_ok(G: FiniteGroupoid, n_max: int = 3) -> bool:
    """delta_n o delta_{n+1} == 0 for 1 <= n <= n_max."""
    tuples = [composable_tuples(G, k) for k in range(n_max + 2)]
    prev = boundary_columns(G, 1, tuples[1], tuples[0])[0]
    for n in range(1, n_max + 1):
        nxt = boundary_columns(G, n + 1, tuples[n + 1], tuples[n])[0]
        if not sparse_compose_is_zero(prev, nxt):
            return False
        prev = nxt
    return True


def homology(G: FiniteGroupoid, n_max: int = 3) -> list[AbGroup]:
    """H_0 .. H_{n_max} with integer coefficients."""
    tuples = [composable_tuples(G, k) for k in range(n_max + 2)]
    ranks = [0]
    torsion: list[list[int]] = [[]]
    for n in range(1, n_max + 2):
        cols, _ = boundary_columns(G, n, tuples[n], tuples[n - 1])
        r, tors = sparse_elementary_divisors(cols)
        ranks.append(r)
        torsion.append(tors)
    out = []
    for n in range(n_max + 1):
        free = len(tuples[n]) - ranks[n] - ranks[n + 1]
        out.append(AbGroup(free=free, torsion=tuple(torsion[n + 1])))
    return out


def isotropy_bundle_conjugation(G: FiniteGroupoid) -> GroupoidAction:
    """G acting on its isotropy bundle by h . g = g^-1 h g."""
    iso = [x for x in range(len(G)) if G.d[x] == G.t[x]]
    labels = [G.labels[x] for x in iso]
    H = FiniteGroupoid.from_operations(
        labels, lambda h: G.labels[G.d[G.index[h]]], lambda h: G.labels[G.t[G.index[h]]],
        lambda a, b: G.lab_mul(a, b))

    def p(h):
        return G.labels[G.d[G.index[h]]]

    def act(h, g):
        gi = G.index[g]
        return G.labels[G.mul(G.mul(G.inv[gi], G.index[h]), gi)]

    return GroupoidAction.from_function(G, H, p, act).check()


def unit_space_action(G: FiniteGroupoid) -> GroupoidAction:
    """G acting on its unit space: u . g = d(g) for t(g) = u."""
    H = units_only([G.labels[u] for u in G.units])
    return GroupoidAction.from_function(
        G, H, lambda u: u, lambda u, g: G.labels[G.d[G.index[g]]]).check()


def trivial_action(H: FiniteGroupoid) -> GroupoidAction:
    """The one-unit trivial group acting trivially on H."""
    G = units_only(["*"])
    return GroupoidAction.from_function(G, H, lambda h: "*", lambda h, g: h).check()
