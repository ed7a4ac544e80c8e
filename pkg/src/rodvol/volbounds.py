"""Upper and lower hyperbolic-volume bounds for rod complements."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import _kernels
from .contfrac import ContinuedFraction, Rational, default_cf
from .dehnfill import FillingError, compose_slopes, parent_manifold, two_pi_check
from .intlinalg import PrimitiveVector, UnimodularMatrix, bezout_complete, unimodular_inverse
from .rodmodel import StackedConfig

V_TET = 1.0149416064096536
V_OCT = 3.6638623767088760

# rational enclosures of the constants, for comparisons that must not rely
# on floating-point tolerance
V_TET_INTERVAL = (Fraction(10149416064, 10**10), Fraction(10149416065, 10**10))
V_OCT_INTERVAL = (Fraction(36638623767, 10**10), Fraction(36638623768, 10**10))

CONSTANTS = {"v_tet": V_TET, "v_oct": V_OCT}

MIN_SLOPE_TERM = 6


class InapplicableBound(ValueError):
    pass


def intersection_functional(pq_pairs: Sequence[Sequence[int]]) -> int:
    """Sum of |p_i q_j - p_j q_i| over pairs plus sum of gcd(p_i, q_i) - 1."""
    p = [int(a) for a, _ in pq_pairs]
    q = [int(b) for _, b in pq_pairs]
    return _kernels.pair_determinant_sum(p, q) + _kernels.gcd_excess_sum(p, q)


def normalized_pq(dirs: Sequence[Sequence[int]], chosen: int,
                  completion: Optional[UnimodularMatrix] = None) -> list[tuple[int, int]]:
    """(p, q) parts of the rods not parallel to the chosen one, once it is sent to (0,0,1)."""
    if completion is None:
        completion = bezout_complete(tuple(dirs[chosen]))
    elif completion.column(completion.n - 1) != tuple(dirs[chosen]):
        raise ValueError("completion must have the chosen direction as its last column")
    inv = unimodular_inverse(completion)
    out = []
    for d in dirs:
        p, q, _ = inv.apply(tuple(d))
        if (p, q) != (0, 0):
            out.append((p, q))
    return out


def general_upper_multiplier(dirs: Sequence[Sequence[int]], chosen: int,
                             completion: Optional[UnimodularMatrix] = None) -> int:
    """Integer m with upper bound 8 * v_tet * m when ``dirs[chosen]`` becomes vertical.

    ``completion`` overrides the matrix taking (0,0,1) to the chosen direction;
    the result does not depend on it.
    """
    if len(dirs) < 3:
        raise InapplicableBound(f"need at least 3 rods, got {len(dirs)}")
    pqs = normalized_pq(dirs, chosen, completion)
    if not pqs:
        raise InapplicableBound("every rod is parallel to the chosen rod")
    return intersection_functional(pqs)


def general_upper(dirs: Sequence[Sequence[int]], chosen: int) -> float:
    return 8 * V_TET * general_upper_multiplier(dirs, chosen)


def general_lower(n: int) -> float:
    if n < 3:
        raise InapplicableBound(f"a hyperbolic rod complement has at least 3 rods, got {n}")
    return n * V_TET


def general_upper_table(dirs: Sequence[Sequence[int]]) -> list[Optional[int]]:
    """Multiplier for each choice of normalized rod (None where inapplicable)."""
    out = []
    for i in range(len(dirs)):
        try:
            out.append(general_upper_multiplier(dirs, i))
        except InapplicableBound:
            out.append(None)
    return out


def best_general_upper_multiplier(dirs: Sequence[Sequence[int]]) -> tuple[int, int]:
    """(minimum multiplier, first index attaining it)."""
    table = general_upper_table(dirs)
    candidates = [(m, i) for i, m in enumerate(table) if m is not None]
    if not candidates:
        raise InapplicableBound("no rod choice gives an applicable bound")
    return min(candidates)


def best_general_upper(dirs: Sequence[Sequence[int]]) -> tuple[float, int]:
    """Smallest general upper bound over the choice of rod, and that rod's index."""
    m, i = best_general_upper_multiplier(dirs)
    return 8 * V_TET * m, i


def orthogonal_factor(c: int) -> float:
    """(1 - 4 pi^2 / (C^2 + 4))^(3/2)."""
    return (1 - 4 * math.pi**2 / (c * c + 4)) ** 1.5


def min_filling_term(cfs: Sequence[ContinuedFraction]) -> Optional[int]:
    """C: the smallest |ell| over all filling slopes of the parent; None if none.

    In the merged case this is the minimum of |c_ij| (j >= 2) and the cyclic
    differences |c_i1 - c_(i-1)1|.
    """
    slopes = compose_slopes(cfs)
    if not slopes:
        return None
    return min(abs(s.ell) for s in slopes)


@dataclass(frozen=True)
class VolumeBounds:
    """A (lower, upper) pair with provenance.

    ``multiplier_tet`` is the v_tet multiple of the tetrahedron-based bound
    (the upper one for general bounds, the fallback lower one for orthogonal
    bounds); ``multiplier_oct`` is the v_oct multiple of the parent volume.
    """

    lower: float
    upper: float
    lower_method: str
    upper_method: str
    multiplier_tet: Optional[int] = None
    multiplier_oct: Optional[int] = None
    C: Optional[int] = None
    sum_m: Optional[int] = None
    applicable: bool = True
    notes: tuple[str, ...] = field(default=(), compare=False)
    cfs: tuple[ContinuedFraction, ...] = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "lower_method": self.lower_method,
            "upper_method": self.upper_method,
            "multiplier_tet": self.multiplier_tet,
            "multiplier_oct": self.multiplier_oct,
            "C": self.C,
            "sum_m": self.sum_m,
            "applicable": self.applicable,
        }


def general_bounds(dirs: Sequence[Sequence[int]], chosen: Optional[int] = None,
                   conditional: bool = False) -> VolumeBounds:
    """Two-sided general bound; ``chosen=None`` optimizes over the normalized rod."""
    n = len(dirs)
    notes = ["conditional on hyperbolicity"] if conditional else []
    try:
        lower, lower_method = general_lower(n), "GeneralLower"
    except InapplicableBound as exc:
        lower, lower_method = 0.0, "none"
        notes.append(str(exc))
    try:
        if chosen is None:
            mult, chosen = best_general_upper_multiplier(dirs)
        else:
            mult = general_upper_multiplier(dirs, chosen)
        upper = 8 * V_TET * mult
        upper_method = f"GeneralUpper{{rod {chosen} {PrimitiveVector(dirs[chosen])}}}"
    except InapplicableBound as exc:
        return VolumeBounds(lower, math.inf, lower_method, "none", n if n >= 3 else None,
                            applicable=False, notes=tuple(notes + [str(exc)]))
    return VolumeBounds(
        lower, upper, lower_method, upper_method,
        multiplier_tet=8 * mult,
        applicable=n >= 3,
        notes=tuple(notes),
    )


def _orthogonal_for(stacked: StackedConfig, cfs: Sequence[ContinuedFraction],
                    notes: list[str]) -> VolumeBounds:
    pqs = stacked.pqs
    k = len(pqs)
    for i in range(k):
        if k > 1 and tuple(pqs[i]) == tuple(pqs[(i + 1) % k]):
            raise FillingError(f"neighbouring rods {i} and {(i + 1) % k} have equal (p, q) {pqs[i]}")
    parent = parent_manifold(stacked, cfs)
    notes = notes + list(parent.flags)
    sum_m = parent.sum_m
    upper = V_OCT * parent.octahedron_count
    n = len(stacked)
    c = min_filling_term(cfs)
    if c is not None and c >= MIN_SLOPE_TERM:
        check = two_pi_check(parent.slopes)
        if not check.passed:
            raise AssertionError(f"C = {c} but shortest slope {check.min_length} <= 2 pi")
        lower = orthogonal_factor(c) * upper
        return VolumeBounds(lower, upper, f"OrthLower{{C={c}}}", "OrthUpper",
                            multiplier_tet=None, multiplier_oct=parent.octahedron_count,
                            C=c, sum_m=sum_m, notes=tuple(notes), cfs=tuple(cfs))
    notes.append(f"C = {c} < {MIN_SLOPE_TERM}: lower bound falls back to n * v_tet")
    return VolumeBounds(general_lower(n), upper, "GeneralLower", "OrthUpper",
                        multiplier_tet=n, multiplier_oct=parent.octahedron_count,
                        C=c, sum_m=sum_m, notes=tuple(notes), cfs=tuple(cfs))


def orthogonal_bounds(stacked: StackedConfig,
                      cf_choice: Optional[Sequence[ContinuedFraction]] = None) -> VolumeBounds:
    """Bounds from the standard parent: upper 2 v_oct sum(m_i), lower when C >= 6.

    With ``cf_choice=None`` each rod gets its default expansion (minimal at
    desk scale, nearest-integer otherwise), and the configuration with every
    (p, q) swapped to (q, p) is evaluated too; the smaller upper bound wins.
    """
    if cf_choice is not None:
        return _orthogonal_for(stacked, list(cf_choice), [])

    def choose(config):
        picks = [default_cf(Rational(p, q)) for p, q in config.pqs]
        algos = sorted({a for _, a in picks})
        return [cf for cf, _ in picks], f"cf policy: {'+'.join(algos)}"

    cfs, note = choose(stacked)
    best = _orthogonal_for(stacked, cfs, [note])
    swapped = stacked.swapped()
    s_cfs, s_note = choose(swapped)
    alt = _orthogonal_for(swapped, s_cfs, [s_note, "evaluated with p and q swapped"])
    return alt if alt.upper < best.upper else best


def tet_lower_below(n: int, mult: int, const: str) -> bool:
    """Exact check that n * v_tet < mult * const, with const "v_tet" or "v_oct".

    Uses rational enclosures of the constants; False means not proven.
    """
    if const == "v_tet":
        return n < mult
    if const == "v_oct":
        return n * V_TET_INTERVAL[1] < mult * V_OCT_INTERVAL[0]
    raise ValueError(f"unknown constant {const!r}")
