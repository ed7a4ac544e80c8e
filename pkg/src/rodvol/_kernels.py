"""Hot inner loops, compiled with numba when available.

Set ``RODVOL_DISABLE_NUMBA=1`` to force the pure path.  The pure path runs
the same source on Python ints (so it is exact for arbitrarily large input);
the compiled path is only used when every intermediate fits comfortably in
int64.
"""

from __future__ import annotations

import os
from math import gcd

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional accelerator
    numba = None

INT64_SAFE = 2**62

USE_NUMBA = numba is not None and os.environ.get("RODVOL_DISABLE_NUMBA", "").lower() not in (
    "1",
    "true",
    "yes",
)

FOUND, NOT_FOUND, BUDGET = 1, 0, -1


def _search_fixed_length(p, q, length, bound, growth, s, cur, hi, budget):
    """Depth-first search for an expansion of p/q with exactly ``length`` terms.

    Works on the remainder sequence s[0] = p, s[1] = q,
    s[j+1] = s[j-1] - c_j * s[j], which must end with s[length] = +-1 and
    s[length+1] = 0.  ``growth[d]`` bounds |s[j]| when d terms remain, so only
    terms keeping the next remainder inside that bound are enumerated; the
    enumeration is otherwise exhaustive.  Terms after the first satisfy
    0 < |c| <= bound, and the last term is not 1 when length >= 2.

    Returns (status, nodes); on FOUND the terms are in cur[:length].
    """
    s[0] = p
    s[1] = q
    nodes = 0
    k = 0
    # level setup is duplicated inline so the body compiles under numba
    a = s[0]
    b = s[1]
    g = growth[length - 1]
    if b > 0:
        lo_k = -((g - a) // b)
        hi_k = (a + g) // b
    else:
        lo_k = -((a + g) // (-b))
        hi_k = (g - a) // (-b)
    cur[0] = lo_k - 1
    hi[0] = hi_k
    while k >= 0:
        cur[k] += 1
        c = cur[k]
        if c > hi[k]:
            k -= 1
            continue
        if k >= 1:
            if c == 0:
                continue
            if c > bound:
                k -= 1
                continue
            if c < -bound:
                cur[k] = -bound - 1
                continue
            if k == length - 1 and c == 1:
                continue
        nodes += 1
        if nodes > budget:
            return BUDGET, nodes
        nxt = s[k] - c * s[k + 1]
        s[k + 2] = nxt
        if k == length - 1:
            return FOUND, nodes
        if nxt == 0:
            continue
        k += 1
        a = s[k]
        b = s[k + 1]
        g = growth[length - k - 1]
        if b > 0:
            lo_k = -((g - a) // b)
            hi_k = (a + g) // b
        else:
            lo_k = -((a + g) // (-b))
            hi_k = (g - a) // (-b)
        cur[k] = lo_k - 1
        hi[k] = hi_k
    return NOT_FOUND, nodes


def _pair_sum_loop(p, q):
    total = 0
    n = p.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            d = p[i] * q[j] - p[j] * q[i]
            total += d if d >= 0 else -d
    return total


def _gcd_excess_loop(p, q):
    total = 0
    for i in range(p.shape[0]):
        a = p[i] if p[i] >= 0 else -p[i]
        b = q[i] if q[i] >= 0 else -q[i]
        while b != 0:
            a, b = b, a % b
        total += a - 1
    return total


if numba is not None:
    _search_fixed_length_jit = numba.njit(cache=True)(_search_fixed_length)
    _pair_sum_jit = numba.njit(cache=True)(_pair_sum_loop)
    _gcd_excess_jit = numba.njit(cache=True)(_gcd_excess_loop)
else:  # pragma: no cover
    _search_fixed_length_jit = _pair_sum_jit = _gcd_excess_jit = None


def growth_bounds(bound: int, length: int) -> list[int]:
    """Largest |remainder| from which d more terms (|c| <= bound) can finish."""
    h = [0, 1]
    while len(h) <= length:
        h.append(bound * h[-1] + h[-2])
    return h[: length + 1]


def search_fixed_length(p: int, q: int, length: int, bound: int, budget: int, use_numba=None):
    """Run the fixed-length search; returns (status, nodes, terms or None)."""
    if use_numba is None:
        use_numba = USE_NUMBA
    growth = growth_bounds(bound, length)
    fits = max(abs(p), abs(q), bound) + growth[-1] * (bound + 2) < INT64_SAFE
    if use_numba and fits and _search_fixed_length_jit is not None:
        s = np.zeros(length + 2, dtype=np.int64)
        cur = np.zeros(length, dtype=np.int64)
        hi = np.zeros(length, dtype=np.int64)
        status, nodes = _search_fixed_length_jit(
            np.int64(p), np.int64(q), length, np.int64(bound),
            np.array(growth, dtype=np.int64), s, cur, hi, budget,
        )
        terms = [int(x) for x in cur] if status == FOUND else None
    else:
        s = [0] * (length + 2)
        cur = [0] * length
        hi = [0] * length
        status, nodes = _search_fixed_length(p, q, length, bound, growth, s, cur, hi, budget)
        terms = list(cur) if status == FOUND else None
    return int(status), int(nodes), terms


def _int64_ok(values, k) -> bool:
    m = max((abs(int(x)) for x in values), default=0)
    return 2 * m * m * max(k, 1) ** 2 < INT64_SAFE


def pair_determinant_sum(p, q, use_numba=None) -> int:
    """Sum over i < j of |p_i q_j - p_j q_i|."""
    if use_numba is None:
        use_numba = USE_NUMBA
    k = len(p)
    if k < 2:
        return 0
    if not _int64_ok(list(p) + list(q), k):
        return sum(
            abs(p[i] * q[j] - p[j] * q[i]) for i in range(k) for j in range(i + 1, k)
        )
    pa = np.asarray(p, dtype=np.int64)
    qa = np.asarray(q, dtype=np.int64)
    if use_numba and _pair_sum_jit is not None:
        return int(_pair_sum_jit(pa, qa))
    dets = np.abs(np.outer(pa, qa) - np.outer(qa, pa))
    return int(np.triu(dets, 1).sum())


def gcd_excess_sum(p, q, use_numba=None) -> int:
    """Sum over i of gcd(p_i, q_i) - 1."""
    if use_numba is None:
        use_numba = USE_NUMBA
    if len(p) == 0:
        return 0
    if not _int64_ok(list(p) + list(q), 1):
        return sum(gcd(a, b) - 1 for a, b in zip(p, q))
    pa = np.asarray(p, dtype=np.int64)
    qa = np.asarray(q, dtype=np.int64)
    if use_numba and _gcd_excess_jit is not None:
        return int(_gcd_excess_jit(pa, qa))
    return int((np.gcd(pa, qa) - 1).sum())
