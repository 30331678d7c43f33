"""Leading terms of the lower bounds on inequivalent codes, and shape counts."""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Tuple

from .errors import RejectedInput


def bound_evaluate(n: int, target: str = "phelps") -> float:
    """Leading term of the count of inequivalent codes, without the (1+o(1)).

    ``phelps``: binary extended perfect codes of length 4n.
    ``mds``: quaternary isotopic propelinear MDS codes of length n.
    """
    if n < 2:
        raise RejectedInput(f"bound needs n >= 2, got {n}")
    if target == "phelps":
        return math.exp(math.pi * math.sqrt(2 * n / 3)) / (8 * n * n * math.sqrt(3))
    if target == "mds":
        k = n - 1
        return math.exp(math.pi * math.sqrt(2 * k / 3)) / (4 * k * math.sqrt(3))
    raise RejectedInput(f"unknown bound target {target!r}")


@lru_cache(maxsize=None)
def partition_count(k: int) -> int:
    """Number of partitions of k (Euler's pentagonal-number recurrence)."""
    if k < 0:
        return 0
    if k == 0:
        return 1
    total = 0
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        if g1 > k:
            break
        sign = 1 if j % 2 else -1
        total += sign * partition_count(k - g1)
        g2 = j * (3 * j + 1) // 2
        if g2 <= k:
            total += sign * partition_count(k - g2)
        j += 1
    return total


def shapes_count(n: int) -> Tuple[int, int]:
    """(cut lists, multisets of block sizes) for MDS length n."""
    if n < 2:
        raise RejectedInput(f"shapes need n >= 2, got {n}")
    return 2 ** (n - 2), partition_count(n - 1)
