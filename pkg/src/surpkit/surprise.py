"""Overflow-safe evaluation of the surprise quality function.

Surprise is the negative natural log of the cumulative hypergeometric
probability of observing at least ``ell`` intracommunity links out of ``n``
links, when ``M`` of the ``F`` possible node pairs lie inside communities.
The sum is evaluated in log space: the largest term is factored out and the
remaining term ratios are summed in linear space, so values in the
thousands are representable without underflow.
"""

from __future__ import annotations

import math
import threading

import numpy as np

from surpkit.graph import Graph
from surpkit.partition import Partition

# terms whose ratio to the running maximum falls below this are dropped once
# the term sequence is decreasing (the hypergeometric pmf is unimodal)
_LOG_TRUNC = math.log(1e-18)

_table = np.zeros(2)  # ln 0!, ln 1!
_table_lock = threading.Lock()


def ln_factorial(m: int) -> float:
    """Natural log of m!, from a cumulative log table extended on demand.

    Exact cumulative summation, not a Stirling-type approximation.  Safe for
    concurrent readers; table extension is serialized.
    """
    if m < 0:
        raise ValueError("factorial of a negative number")
    global _table
    t = _table
    if m >= t.size:
        with _table_lock:
            t = _table
            if m >= t.size:
                hi = max(m + 1, 2 * t.size)
                ext = np.log(np.arange(t.size, hi, dtype=float))
                _table = np.concatenate([t, t[-1] + np.cumsum(ext)])
            t = _table
    return float(t[m])


def ln_choose(m: int, k: int) -> float:
    """Natural log of the binomial coefficient C(m, k)."""
    if k < 0 or k > m:
        raise ValueError(f"binomial C({m}, {k}) undefined")
    return ln_factorial(m) - ln_factorial(k) - ln_factorial(m - k)


def surprise(F: int, M: int, n: int, ell: int) -> float:
    """Surprise of a partition summarized by (F, M, n, ell).

    F: possible links in the graph, K*(K-1)/2.
    M: possible links inside communities, sum of c_i*(c_i-1)/2.
    n: links in the graph.
    ell: links inside communities.

    Returns -ln sum_{j=ell}^{min(M,n)} C(M,j) C(F-M,n-j) / C(F,n), always >= 0.
    """
    if not (0 <= M <= F):
        raise ValueError(f"need 0 <= M <= F, got M={M}, F={F}")
    if not (0 <= n <= F):
        raise ValueError(f"need 0 <= n <= F, got n={n}, F={F}")
    if not (0 <= ell <= min(M, n)):
        raise ValueError(f"need 0 <= ell <= min(M, n), got ell={ell}, M={M}, n={n}")
    if n - ell > F - M:
        raise ValueError(f"infeasible: n - ell = {n - ell} exceeds F - M = {F - M}")

    jmax = min(M, n)
    # log of the first term, j = ell
    lt0 = ln_choose(M, ell) + ln_choose(F - M, n - ell) - ln_choose(F, n)
    # stream the remaining terms through successive ratios
    cur = 0.0   # log(term_j / term_ell)
    mx = 0.0    # running max of cur
    acc = 1.0   # sum of exp(cur - mx)
    for j in range(ell + 1, jmax + 1):
        dlt = (
            math.log(M - j + 1)
            + math.log(n - j + 1)
            - math.log(j)
            - math.log(F - M - n + j)
        )
        cur += dlt
        if cur > mx:
            acc = acc * math.exp(mx - cur) + 1.0
            mx = cur
        else:
            rel = cur - mx
            if dlt < 0.0 and rel < _LOG_TRUNC:
                break
            acc += math.exp(rel)
    s = -(lt0 + mx + math.log(acc))
    return s if s > 0.0 else 0.0


def partition_stats(graph: Graph, partition: Partition) -> tuple[int, int, float]:
    """(M, ell, S) of a partition, recomputed from scratch."""
    if partition.K != graph.K:
        raise ValueError(
            f"partition over {partition.K} nodes does not match graph with {graph.K}"
        )
    M = partition.M
    assign = partition.assign
    ell = sum(1 for u, v in graph.edges if assign[u] == assign[v])
    return M, ell, surprise(graph.F, M, graph.n, ell)
