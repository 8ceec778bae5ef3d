"""Exact integer linear algebra and abelian-group bookkeeping.

Everything here works over Python integers; there is no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class NotAChainComplex(ValueError):
    pass


class IntMatrix:
    """Dense integer matrix with an explicit shape (so 0 x n and n x 0 are distinct)."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]] = (), nrows: int | None = None,
                 ncols: int | None = None):
        data = [list(map(int, r)) for r in rows]
        if nrows is None:
            nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if len(data) == 0 and nrows:
            data = [[0] * ncols for _ in range(nrows)]
        if len(data) != nrows or any(len(r) != ncols for r in data):
            raise ValueError("inconsistent matrix dimensions")
        self.rows = data
        self.nrows = nrows
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls([[0] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[dict[int, int]], nrows: int) -> "IntMatrix":
        m = cls.zeros(nrows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                m.rows[i][j] += v
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def copy(self) -> "IntMatrix":
        return IntMatrix([r[:] for r in self.rows], self.nrows, self.ncols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
                         self.ncols, self.nrows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows]
        return IntMatrix(out, self.nrows, other.ncols)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.rows == other.rows

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.rows for v in r)

    def diagonal(self) -> list[int]:
        return [self.rows[i][i] for i in range(min(self.nrows, self.ncols))]

    def tolist(self) -> list[list[int]]:
        return [r[:] for r in self.rows]

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows!r}, {self.nrows}, {self.ncols})"


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def invariants(self) -> list[int]:
        return [d for d in self.S.diagonal() if d != 0]


def snf(A: IntMatrix) -> SmithForm:
    """Smith normal form with transforms, so that U @ A @ V == S.

    Pivoting rule: smallest absolute value in the remaining block, then row
    elimination followed by column elimination.
    """
    m, n = A.shape
    S = A.copy().rows
    U = IntMatrix.identity(m).rows
    V = IntMatrix.identity(n).rows

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        S[dst] = [a + q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for r in S:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = S[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    if S[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    if S[t][j]:
                        clean = False
            if not clean:
                # a remainder is now smaller than the pivot; move the smallest to (t, t)
                best = None
                for i in range(t, m):
                    if S[i][t] and (best is None or abs(S[i][t]) < best[0]):
                        best = (abs(S[i][t]), i, "r")
                for j in range(t + 1, n):
                    if S[t][j] and abs(S[t][j]) < best[0]:
                        best = (abs(S[t][j]), j, "c")
                if best[2] == "r":
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[1])
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
    return SmithForm(IntMatrix(U, m, m), IntMatrix(S, m, n), IntMatrix(V, n, n))


def invariant_factors(A: IntMatrix) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... (no transforms kept)."""
    S = [r[:] for r in A.rows]
    m, n = A.shape
    out = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = S[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        S[t], S[i] = S[i], S[t]
        for r in S:
            r[t], r[j] = r[j], r[t]
        while True:
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // p
                    S[i] = [a - q * b for a, b in zip(S[i], S[t])]
                    clean = clean and not S[i][t]
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // p
                    for r in S:
                        r[j] -= q * r[t]
                    clean = clean and not S[t][j]
            if clean:
                bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p), None)
                if bad is None:
                    break
                S[t] = [a + b for a, b in zip(S[t], S[bad])]
                continue
            cand = [(abs(S[i][t]), i, 0) for i in range(t, m) if S[i][t]]
            cand += [(abs(S[t][j]), j, 1) for j in range(t + 1, n) if S[t][j]]
            _, k, is_col = min(cand)
            if is_col:
                for r in S:
                    r[t], r[k] = r[k], r[t]
            else:
                S[t], S[k] = S[k], S[t]
        out.append(abs(S[t][t]))
        t += 1
    return out


def sparse_elementary_divisors(columns: Iterable[dict[int, int]]) -> tuple[int, list[int]]:
    """Rank and nontrivial elementary divisors (> 1) of a sparse integer matrix.

    Unit pivots are eliminated first (a unimodular reduction that leaves the
    elementary divisors unchanged); whatever remains is finished densely.
    """
    cols: dict[int, dict[int, int]] = {}
    rows: dict[int, set[int]] = {}
    for c, col in enumerate(columns):
        col = {r: v for r, v in col.items() if v}
        if not col:
            continue
        cols[c] = col
        for r in col:
            rows.setdefault(r, set()).add(c)
    rank = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols, key=lambda k: len(cols[k])):
            col = cols.get(c)
            if col is None:
                continue
            if not col:
                del cols[c]
                continue
            best = None
            for r, v in col.items():
                if v == 1 or v == -1:
                    w = len(rows[r])
                    if best is None or w < best[0]:
                        best = (w, r, v)
            if best is None:
                continue
            _, r, v = best
            for c2 in rows[r]:
                if c2 == c:
                    continue
                col2 = cols[c2]
                f = col2[r] * v
                for rr, vv in col.items():
                    nv = col2.get(rr, 0) - f * vv
                    if nv:
                        if rr not in col2:
                            rows[rr].add(c2)
                        col2[rr] = nv
                    elif rr in col2:
                        del col2[rr]
                        if rr != r:
                            rows[rr].discard(c2)
            for rr in col:
                if rr != r:
                    rows[rr].discard(c)
            del rows[r]
            del cols[c]
            rank += 1
            progress = True
    rest = [col for col in cols.values() if col]
    if not rest:
        return rank, []
    used = sorted({r for col in rest for r in col})
    index = {r: i for i, r in enumerate(used)}
    dense = IntMatrix.from_columns([{index[r]: v for r, v in col.items()} for col in rest], len(used))
    inv = invariant_factors(dense)
    return rank + len(inv), [d for d in inv if d > 1]


def matrix_rank(A: IntMatrix) -> int:
    return len(invariant_factors(A))


def _normalize_torsion(ns: Iterable[int]) -> tuple[int, ...]:
    vals = sorted(abs(n) for n in ns if abs(n) > 1)
    changed = True
    while changed:
        changed = False
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                a, b = vals[i], vals[j]
                if b % a:
                    g = gcd(a, b)
                    vals[i], vals[j] = g, a * b // g
                    changed = True
        vals = sorted(v for v in vals if v > 1)
    return tuple(vals)


def radical(n: int) -> int:
    """Product of the distinct primes dividing n (n >= 1)."""
    n = abs(n)
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            out *= p
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out *= n
    return out


def strip_primes_of(a: int, D: int) -> int:
    """|a| with every prime factor of D removed."""
    a = abs(a)
    if a == 0:
        return 0
    g = gcd(a, D)
    while g > 1:
        while a % g == 0:
            a //= g
        g = gcd(a, D)
    return a


@dataclass(frozen=True)
class AbGroup:
    """Z^free + Z/t1 + ... + Z[1/D1] + ...  in canonical form.

    Torsion is kept as invariant factors, localizations as radicals.
    """

    free: int = 0
    torsion: tuple[int, ...] = ()
    localized: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", _normalize_torsion(self.torsion))
        locs = []
        for D in self.localized:
            if D < 1:
                raise ValueError("localization base must be positive")
            rad = radical(D)
            if rad == 1:
                object.__setattr__(self, "free", self.free + 1)
            else:
                locs.append(rad)
        object.__setattr__(self, "localized", tuple(sorted(locs)))
        if self.free < 0:
            raise ValueError("negative rank")

    @classmethod
    def zero(cls) -> "AbGroup":
        return cls()

    @classmethod
    def Z(cls, rank: int = 1) -> "AbGroup":
        return cls(free=rank)

    @classmethod
    def cyclic(cls, n: int) -> "AbGroup":
        """Z/n, with Z/0 = Z and Z/1 = 0."""
        n = abs(n)
        return cls(free=1) if n == 0 else cls(torsion=(n,))

    @classmethod
    def Z_localized(cls, D: int) -> "AbGroup":
        return cls(localized=(D,))

    def __add__(self, other: "AbGroup") -> "AbGroup":
        return AbGroup(self.free + other.free, self.torsion + other.torsion,
                       self.localized + other.localized)

    def is_zero(self) -> bool:
        return not (self.free or self.torsion or self.localized)

    def is_free(self) -> bool:
        return not (self.torsion or self.localized)

    def rational_rank(self) -> int:
        return self.free + len(self.localized)

    def is_finite(self) -> bool:
        return self.rational_rank() == 0

    def order(self) -> int | None:
        if not self.is_finite():
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self) -> str:
        parts = []
        if self.free:
            parts.append("Z" if self.free == 1 else f"Z^{self.free}")
        parts += [f"Z/{t}" for t in self.torsion]
        parts += [f"Z[1/{D}]" for D in self.localized]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free": self.free, "torsion": list(self.torsion),
                "localized": list(self.localized), "text": str(self)}


@dataclass(frozen=True)
class LocMult:
    """Multiplication by a rational a / D^m on Z[1/D] (D = 1 means Z)."""

    base: int
    value: Fraction = field(default=Fraction(1))

    def __post_init__(self):
        if self.base < 1:
            raise ValueError("base must be >= 1")
        v = Fraction(self.value)
        object.__setattr__(self, "value", v)
        if strip_primes_of(v.denominator, self.base) != 1:
            raise ValueError(f"{v} is not an endomorphism of Z[1/{self.base}]")

    @classmethod
    def identity(cls, base: int) -> "LocMult":
        return cls(base, Fraction(1))

    def group(self) -> AbGroup:
        return colimit_const_Z(self.base)

    def __sub__(self, other: "LocMult") -> "LocMult":
        self._check(other)
        return LocMult(self.base, self.value - other.value)

    def __mul__(self, other: "LocMult") -> "LocMult":
        self._check(other)
        return LocMult(self.base, self.value * other.value)

    def _check(self, other):
        if radical(self.base) != radical(other.base):
            raise ValueError("maps live on different groups")

    def one_minus(self) -> "LocMult":
        return LocMult.identity(self.base) - self

    def __str__(self) -> str:
        return f"x({self.value})"


def colimit_const_Z(multiplier: int) -> AbGroup:
    """colim(Z --xD--> Z --xD--> ...)."""
    if multiplier < 0:
        raise ValueError("multiplier must be >= 0")
    if multiplier == 0:
        return AbGroup.zero()
    return AbGroup.Z_localized(multiplier)


def ker_coker(f: LocMult) -> tuple[AbGroup, AbGroup]:
    """Kernel and cokernel of multiplication by f.value on Z[1/f.base]."""
    G = f.group()
    if f.value == 0:
        return G, G
    a = strip_primes_of(f.value.numerator, f.base)
    return AbGroup.zero(), AbGroup.cyclic(a)


def homology_of_pair(dn: IntMatrix, dn1: IntMatrix) -> AbGroup:
    """ker(dn) / im(dn1) for C_{n+1} --dn1--> C_n --dn--> C_{n-1}."""
    if dn.ncols != dn1.nrows:
        raise NotAChainComplex(f"shapes {dn.shape} and {dn1.shape} do not compose")
    if not (dn @ dn1).is_zero():
        raise NotAChainComplex("dn @ dn1 != 0")
    inv = invariant_factors(dn1)
    free = dn.ncols - matrix_rank(dn) - len(inv)
    return AbGroup(free=free, torsion=tuple(d for d in inv if d > 1))
