"""Finite continued fractions with signed terms, over exact rationals.

A continued fraction ``[c1; c2, ..., cm]`` has an arbitrary integer first
term and nonzero later terms.  The empty fraction ``[]`` stands for the
formal value 1/0 and has length zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable

from . import _kernels

DESK_SCALE = 10**4


class SearchExhausted(RuntimeError):
    """The minimal-length search could not finish within its limits."""


@dataclass(frozen=True)
class Rational:
    """Reduced p/q with q >= 0; q == 0 only for the formal value 1/0."""

    p: int
    q: int

    def __init__(self, p: int, q: int = 1):
        p, q = int(p), int(q)
        if p == 0 and q == 0:
            raise ZeroDivisionError("0/0 is not a rational")
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        g = gcd(p, q)
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "q", q // g)

    @classmethod
    def parse(cls, text: str) -> "Rational":
        m = re.fullmatch(r"\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?", text)
        if not m:
            raise ValueError(f"not a rational: {text!r}")
        return cls(int(m.group(1)), int(m.group(2)) if m.group(2) else 1)

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def to_fraction(self) -> Fraction:
        if self.q == 0:
            raise ZeroDivisionError("1/0 has no Fraction value")
        return Fraction(self.p, self.q)

    def __neg__(self) -> "Rational":
        return self if self.q == 0 else Rational(-self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class ContinuedFraction:
    terms: tuple[int, ...]

    def __init__(self, terms: Iterable[int] = ()):
        t = tuple(int(c) for c in terms)
        if any(c == 0 for c in t[1:]):
            raise ValueError(f"terms after the first must be nonzero: {list(t)}")
        object.__setattr__(self, "terms", t)

    @classmethod
    def parse(cls, text: str) -> "ContinuedFraction":
        """Parse ``[c1;c2,...,cm]``, ``[c1]`` or ``[]``."""
        m = re.fullmatch(r"\s*\[\s*(.*?)\s*\]\s*", text)
        if not m:
            raise ValueError(f"not a continued fraction: {text!r}")
        body = m.group(1)
        if body == "":
            return cls(())
        head, _, rest = body.partition(";")
        try:
            terms = [int(head)]
            if rest.strip():
                terms += [int(x) for x in rest.split(",")]
        except ValueError:
            raise ValueError(f"not a continued fraction: {text!r}") from None
        return cls(terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def __str__(self) -> str:
        if not self.terms:
            return "[]"
        head = str(self.terms[0])
        if len(self.terms) == 1:
            return f"[{head}]"
        return f"[{head};" + ",".join(str(c) for c in self.terms[1:]) + "]"


def cf_length(cf: ContinuedFraction) -> int:
    return len(cf.terms)


def convergents(cf: ContinuedFraction) -> list[tuple[int, int]]:
    """Unreduced convergent pairs (h_j, k_j), starting from (1, 0)."""
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    out = [(h, k)]
    for c in cf.terms:
        h_prev, h = h, c * h + h_prev
        k_prev, k = k, c * k + k_prev
        out.append((h, k))
    return out


def eval_cf(cf: ContinuedFraction) -> Rational:
    """Value of the continued fraction via the convergent recurrence.

    >>> str(eval_cf(ContinuedFraction([1, 1, 3])))
    '7/4'
    """
    h, k = convergents(cf)[-1]
    return Rational(h, k)


def euclidean_cf(x: Rational) -> ContinuedFraction:
    """Floor expansion: every term after the first is positive."""
    if x.is_infinite:
        return ContinuedFraction(())
    p, q = x.p, x.q
    terms = []
    while q != 0:
        a = p // q
        terms.append(a)
        p, q = q, p - a * q
    if len(terms) >= 2 and terms[-1] == 1:
        terms[-2] += 1
        terms.pop()
    return ContinuedFraction(terms)


def _nearest(p: int, q: int) -> int:
    # q > 0; ties round away from zero
    a, r = divmod(p, q)
    if 2 * r > q or (2 * r == q and a >= 0):
        a += 1
    return a


def nicf(x: Rational) -> ContinuedFraction:
    """Nearest-integer expansion; terms after the first have |c| >= 2."""
    if x.is_infinite:
        return ContinuedFraction(())
    p, q = x.p, x.q
    terms = []
    while q != 0:
        if q < 0:
            p, q = -p, -q
        a = _nearest(p, q)
        terms.append(a)
        p, q = q, p - a * q
    return ContinuedFraction(terms)


def minimal_cf(
    x: Rational,
    term_bound: int | None = None,
    *,
    max_length: int = 64,
    max_nodes: int = 2_000_000,
    use_numba: bool | None = None,
) -> ContinuedFraction:
    """Shortest expansion of ``x`` with later terms bounded by ``term_bound``.

    Exhaustive iterative deepening over lengths 1, 2, ... .  Admissible
    expansions have nonzero terms |c_j| <= term_bound for j >= 2 and no
    trailing 1 once the length is at least 2; the first term is free.  The
    default bound is max(|p|, q).

    Raises SearchExhausted when the node budget runs out or no expansion
    exists up to ``max_length``; it never returns a non-minimal answer.
    """
    if x.is_infinite:
        return ContinuedFraction(())
    p, q = x.p, x.q
    if term_bound is None:
        term_bound = max(abs(p), q)
    if term_bound < 1:
        raise ValueError("term_bound must be positive")
    spent = 0
    for length in range(1, max_length + 1):
        if q > _kernels.growth_bounds(term_bound, length)[length]:
            continue
        status, nodes, terms = _kernels.search_fixed_length(
            p, q, length, term_bound, max_nodes - spent, use_numba
        )
        spent += nodes
        if status == _kernels.FOUND:
            cf = ContinuedFraction(terms)
            assert eval_cf(cf) == x
            return cf
        if status == _kernels.BUDGET:
            raise SearchExhausted(
                f"node budget {max_nodes} exhausted at length {length} for {x}"
            )
    raise SearchExhausted(
        f"bound too small: no expansion of {x} with |terms| <= {term_bound} "
        f"up to length {max_length}"
    )


def expand(x: Rational, algo: str = "minimal", **kwargs) -> ContinuedFraction:
    """Dispatch on algorithm name: ``euclid``, ``nicf`` or ``minimal``."""
    if algo == "euclid":
        return euclidean_cf(x)
    if algo == "nicf":
        return nicf(x)
    if algo == "minimal":
        return minimal_cf(x, **kwargs)
    raise ValueError(f"unknown algorithm {algo!r}")


def default_cf(x: Rational) -> tuple[ContinuedFraction, str]:
    """Minimal expansion at desk scale, nearest-integer beyond it or on exhaustion.

    Returns the expansion and the name of the algorithm that produced it.
    """
    if not x.is_infinite and max(abs(x.p), x.q) > DESK_SCALE:
        return nicf(x), "nicf"
    try:
        return minimal_cf(x, max_nodes=200_000), "minimal"
    except SearchExhausted:
        return nicf(x), "nicf"
