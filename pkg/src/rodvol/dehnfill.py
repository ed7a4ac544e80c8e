"""Nested annular Dehn filling as rewriting of direction vectors and slopes.

No triangulation is built: the direction vectors, filling coefficients and
octahedron counts carry everything the volume bounds need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence, Union

from .contfrac import ContinuedFraction, Rational, eval_cf
from .rodmodel import Geometry, StackedConfig, classify

CUSP_MERIDIAN = 2
CUSP_LONGITUDE = 1


class FillingError(ValueError):
    pass


class MeridionalSlopeError(ValueError):
    pass


def core_direction(cf: ContinuedFraction) -> tuple[int, int, int]:
    """Starting core rod: (1,0,0) for even length, (0,1,0) for odd length."""
    return (1, 0, 0) if len(cf) % 2 == 0 else (0, 1, 0)


def nested_trace(cf: ContinuedFraction) -> list[tuple[int, int, int]]:
    """Direction of the core rod after each annular filling, c_m first.

    Term c_j adds c_j times y to x when j is odd and c_j times x to y when j
    is even, so the last filling (c_1) always acts on x.  Vectors keep the
    signs produced by the recursion; the final one is (p, q, 0) with p/q the
    value of ``cf`` up to overall sign.

    >>> nested_trace(ContinuedFraction([1, 1, 2]))
    [(0, 1, 0), (2, 1, 0), (2, 3, 0), (5, 3, 0)]
    """
    x, y, _ = core_direction(cf)
    out = [(x, y, 0)]
    for j in range(len(cf), 0, -1):
        c = cf.terms[j - 1]
        if j % 2 == 1:
            x += c * y
        else:
            y += c * x
        out.append((x, y, 0))
    return out


@dataclass(frozen=True)
class FillingSlope:
    """Filling coefficient 1/ell on one filling rod.

    ``index`` is the term number j >= 2 for inner rods (``sign`` tells the
    upper rod of the pair, +1, from the lower one, -1) or ``"outermost"`` for
    the rod shared by two neighbouring sandwiches.
    """

    ell: int
    family: int
    index: Union[int, str]
    sign: int = 1

    @property
    def meridional(self) -> bool:
        return self.ell == 0

    def to_json(self) -> dict:
        return {"family": self.family, "index": self.index, "ell": self.ell}


def compose_slopes(cfs: Sequence[ContinuedFraction]) -> list[FillingSlope]:
    """Filling slopes of the merged parent, families in cyclic top-to-bottom order.

    Inner pair j of family i carries +1/c_ij and -1/c_ij.  The bottom
    outermost rod of family i-1 and the top one of family i merge into a
    single rod with slope 1/(c_i1 - c_(i-1)1), indices taken cyclically.  A
    family of length zero is an unfilled (1,0,0) core rod: it has no filling
    rods and blocks the merge, so its neighbours keep +-1/c_i1 separately.
    A zero difference is kept and flagged as meridional, not rejected.
    """
    n = len(cfs)
    slopes = []
    for i, cf in enumerate(cfs):
        if len(cf) == 0:
            continue
        prev, nxt = cfs[i - 1], cfs[(i + 1) % n]
        if len(prev) >= 1:
            slopes.append(FillingSlope(cf[0] - prev[0], i, "outermost"))
        else:
            slopes.append(FillingSlope(cf[0], i, "outermost", +1))
        for j in range(2, len(cf) + 1):
            c = cf[j - 1]
            slopes.append(FillingSlope(c, i, j, +1))
            slopes.append(FillingSlope(-c, i, j, -1))
        if len(nxt) == 0:
            slopes.append(FillingSlope(-cf[0], i, "outermost", -1))
    return slopes


def merge_count(cfs: Sequence[ContinuedFraction]) -> int:
    """Number of outermost rod pairs merged across neighbouring sandwiches."""
    n = len(cfs)
    return sum(1 for i in range(n) if len(cfs[i]) >= 1 and len(cfs[i - 1]) >= 1)


def slope_length(ell: int) -> float:
    """Cusp length of slope 1/ell: meridian 2, longitude 1, orthogonal."""
    return math.hypot(ell * CUSP_LONGITUDE, CUSP_MERIDIAN)


class TwoPiCheck(NamedTuple):
    passed: bool
    min_length: float


def two_pi_check(slopes: Sequence[FillingSlope]) -> TwoPiCheck:
    """Whether every slope is longer than 2*pi, with the shortest length."""
    if any(s.meridional for s in slopes):
        raise MeridionalSlopeError("a meridional slope 1/0 is present; check inapplicable")
    shortest = min((slope_length(s.ell) for s in slopes), default=math.inf)
    return TwoPiCheck(shortest > 2 * math.pi, shortest)


@dataclass(frozen=True)
class ParentManifold:
    """Standard parent: core rod counts by parity, filling data, octahedra.

    The volume of the parent is ``volume_units * v_oct``.
    """

    E: int
    O: int
    filling_rod_count: int
    octahedron_count: int
    slopes: tuple[FillingSlope, ...]
    cfs: tuple[ContinuedFraction, ...] = field(compare=False)
    flags: tuple[str, ...] = field(default=(), compare=False)

    @property
    def volume_units(self) -> int:
        return self.octahedron_count

    @property
    def sum_m(self) -> int:
        return sum(len(cf) for cf in self.cfs)

    def to_json(self) -> dict:
        return {
            "E": self.E,
            "O": self.O,
            "filling_rod_count": self.filling_rod_count,
            "octahedron_count": self.octahedron_count,
            "slopes": [s.to_json() for s in self.slopes],
            "volume_units": self.volume_units,
        }


def _slope_of(pq: tuple[int, int]) -> Rational:
    return Rational(pq[0], pq[1])


def check_cf_choice(stacked: StackedConfig, cf_choice: Sequence[ContinuedFraction]) -> None:
    pqs = stacked.pqs
    if len(cf_choice) != len(pqs):
        raise FillingError(f"{len(cf_choice)} continued fractions for {len(pqs)} horizontal rods")
    for i, (pq, cf) in enumerate(zip(pqs, cf_choice)):
        if eval_cf(cf) != _slope_of(pq):
            raise FillingError(f"rod {i}: {cf} evaluates to {eval_cf(cf)}, not {pq[0]}/{pq[1]}")


def parent_manifold(stacked: StackedConfig, cf_choice: Sequence[ContinuedFraction]) -> ParentManifold:
    """Standard parent of a stack with one vertical rod, for the given expansions."""
    if len(stacked.vertical) != 1:
        raise FillingError(f"need exactly one vertical rod, got {len(stacked.vertical)}")
    geometry = classify(stacked)
    if geometry.kind is not Geometry.HYPERBOLIC:
        raise FillingError(f"configuration is not hyperbolic: {geometry.reason}")
    check_cf_choice(stacked, cf_choice)
    cfs = tuple(cf_choice)
    lengths = [len(cf) for cf in cfs]
    even = sum(1 for m in lengths if m % 2 == 0)
    total = 2 * sum(lengths)
    slopes = tuple(compose_slopes(cfs))
    flags = []
    if any(m == 0 for m in lengths):
        flags.append("unfilled (1,0,0) core rod: parent does not alternate, octahedron count is the formula value")
    if sum(lengths) < 2:
        flags.append("fewer than 2 alternating horizontal rods in the parent")
    if any(s.meridional for s in slopes):
        flags.append("meridional outermost slope")
    return ParentManifold(
        E=even,
        O=len(lengths) - even,
        filling_rod_count=total,
        octahedron_count=total,
        slopes=slopes,
        cfs=cfs,
        flags=tuple(flags),
    )
