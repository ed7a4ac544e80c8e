"""Exact integer linear algebra on rod direction vectors.

Everything here works on plain Python ints, so entries never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


class DimensionError(ValueError):
    pass


class NotPrimitiveError(ValueError):
    pass


class NotUnimodularError(ValueError):
    pass


def content(v: Sequence[int]) -> int:
    """gcd of the absolute values of the coordinates (0 for the zero vector)."""
    if len(v) == 0:
        raise DimensionError("content of an empty vector")
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def canonical_sign(v: Sequence[int]) -> tuple[int, ...]:
    """Flip ``v`` so that its first nonzero coordinate is positive."""
    for x in v:
        if x != 0:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def is_parallel(u: Sequence[int], v: Sequence[int]) -> bool:
    """True when two nonzero integer vectors span the same line."""
    if len(u) != len(v):
        raise DimensionError("dimension mismatch")
    n = len(u)
    return all(u[i] * v[j] == u[j] * v[i] for i in range(n) for j in range(i + 1, n))


@dataclass(frozen=True)
class PrimitiveVector:
    """Integer direction vector with coordinate gcd 1, identified up to sign."""

    coords: tuple[int, ...]

    def __init__(self, coords: Iterable[int]):
        c = tuple(int(x) for x in coords)
        if len(c) < 2:
            raise DimensionError(f"need at least 2 coordinates, got {len(c)}")
        g = content(c)
        if g == 0:
            raise NotPrimitiveError("zero vector has no direction")
        if g != 1:
            raise NotPrimitiveError(f"{c} is not primitive (gcd {g})")
        object.__setattr__(self, "coords", canonical_sign(c))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.coords) + ")"


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_x, x = x, old_x - k * x
        old_y, y = y, old_y - k * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _complete(v: list[int]) -> list[list[int]]:
    n = len(v)
    if n == 2:
        a, b = v
        g, x, y = egcd(a, b)
        assert g == 1
        # det [[y, a], [-x, b]] = y*b + x*a = 1
        return [[y, a], [-x, b]]
    a, tail = v[0], v[1:]
    d = content(tail)
    if d == 0:
        # v = (+-1, 0, ..., 0): complete the rotated vector (0, ..., 0, +-1)
        # and undo the row rotation; fix the sign of det on the first column
        w = tail + [a]
        m = _complete(w)
        rows = [m[-1]] + m[:-1]
        if n % 2 == 0:  # cyclic row shift of length n has sign (-1)^(n-1)
            for row in rows:
                row[0] = -row[0]
        return rows
    # s*d - t*a = 1
    g, s, neg_t = egcd(d, a)
    assert g == 1
    t = -neg_t
    sub = _complete([x // d for x in tail])
    first_col = [s] + [t * (x // d) for x in tail]
    rows = [[first_col[0]] + [0] * (n - 2) + [a]]
    for i in range(n - 1):
        rows.append([first_col[i + 1]] + sub[i][:-1] + [tail[i]])
    return rows


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    if any(len(row) != n for row in a):
        raise DimensionError("matrix is not square")
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
    return sign * a[-1][-1]


def integer_rank(vectors: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals of a list of integer vectors."""
    rows = [list(map(int, v)) for v in vectors if any(v)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col]
            if f:
                rows[i] = [p[col] * x - f * y for x, y in zip(rows[i], p)]
        rank += 1
    return rank


@dataclass(frozen=True)
class UnimodularMatrix:
    """Square integer matrix with determinant +1 or -1."""

    rows: tuple[tuple[int, ...], ...]

    def __init__(self, rows: Iterable[Iterable[int]]):
        r = tuple(tuple(int(x) for x in row) for row in rows)
        d = determinant(r)
        if d not in (1, -1):
            raise NotUnimodularError(f"determinant {d}, expected +-1")
        object.__setattr__(self, "rows", r)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def det(self) -> int:
        return determinant(self.rows)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.n:
            raise DimensionError(f"vector of length {len(v)} for {self.n}x{self.n} matrix")
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.rows)

    def __matmul__(self, other: "UnimodularMatrix") -> "UnimodularMatrix":
        if other.n != self.n:
            raise DimensionError("dimension mismatch")
        cols = [other.column(j) for j in range(other.n)]
        return UnimodularMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows]
        )

    @classmethod
    def identity(cls, n: int) -> "UnimodularMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])


def bezout_complete(v: Sequence[int] | PrimitiveVector) -> UnimodularMatrix:
    """Complete a primitive vector to a determinant-one integer matrix.

    The returned matrix has ``v`` as its last column.  Construction is the
    inductive one: extended Euclid on the first coordinate against the gcd
    ``d`` of the others, then recursion on the remaining coordinates divided
    by ``d``.  With the standard Euclid coefficients this gives, e.g.,
    ``(2,4,3) -> [[1,0,2],[0,-1,4],[0,-1,3]]``.
    """
    coords = [int(x) for x in v]
    if len(coords) < 2:
        raise DimensionError("bezout_complete needs dimension >= 2")
    g = content(coords)
    if g != 1:
        raise NotPrimitiveError(f"{tuple(coords)} is not primitive (gcd {g})")
    return UnimodularMatrix(_complete(coords))


def _minor(rows, i, j):
    return [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]


def unimodular_inverse(m: UnimodularMatrix | Sequence[Sequence[int]]) -> UnimodularMatrix:
    """Integer inverse via the adjugate."""
    rows = [list(r) for r in (m.rows if isinstance(m, UnimodularMatrix) else m)]
    n = len(rows)
    d = determinant(rows)
    if d not in (1, -1):
        raise NotUnimodularError(f"determinant {d}, expected +-1")
    if n == 1:
        return UnimodularMatrix([[d]])
    inv = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            # adj[j][i] = cofactor(i, j); divide by d = +-1
            inv[j][i] = (-1) ** (i + j) * determinant(_minor(rows, i, j)) * d
    return UnimodularMatrix(inv)


def transform_directions(
    m: UnimodularMatrix, dirs: Iterable[Sequence[int] | PrimitiveVector]
) -> list[PrimitiveVector]:
    """Map each direction through ``m`` and re-canonicalize its sign."""
    return [PrimitiveVector(m.apply(tuple(d))) for d in dirs]
