"""Binary words as int bitsets, linear codes over GF(2), explicit codes.

A word of length L is an ``int``; coordinate p (1-based) is bit ``L - p``,
so the printed string reads position 1 first and numeric order equals
lexicographic order of the strings.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from .errors import RejectedInput


def check_length(word: int, length: int) -> int:
    if length <= 0:
        raise RejectedInput(f"word length must be positive, got {length}")
    if word < 0 or word >> length:
        raise RejectedInput(f"word {word:#x} does not fit in length {length}")
    return word


def word_from_str(s: str) -> int:
    s = s.strip()
    if not s or set(s) - {"0", "1"}:
        raise RejectedInput(f"not a binary string: {s!r}")
    return int(s, 2)


def word_to_str(word: int, length: int) -> str:
    return format(word, f"0{length}b")


def word_from_bits(bits: Sequence[int]) -> int:
    w = 0
    for b in bits:
        if b not in (0, 1):
            raise RejectedInput(f"not a bit: {b!r}")
        w = (w << 1) | b
    return w


def word_to_bits(word: int, length: int) -> Tuple[int, ...]:
    return tuple((word >> (length - 1 - i)) & 1 for i in range(length))


def unit(position: int, length: int) -> int:
    """Word with a single 1 at 1-based ``position``."""
    if not 1 <= position <= length:
        raise RejectedInput(f"position {position} outside 1..{length}")
    return 1 << (length - position)


def weight(word: int) -> int:
    return word.bit_count()


def distance(u: int, v: int) -> int:
    return (u ^ v).bit_count()


def gf2_rank(words: Iterable[int], length: int | None = None) -> int:
    """Dimension of the GF(2) span of ``words``."""
    basis: Dict[int, int] = {}  # leading bit -> basis vector
    for w in words:
        w = int(w)
        if length is not None:
            check_length(w, length)
        while w:
            lead = w.bit_length() - 1
            b = basis.get(lead)
            if b is None:
                basis[lead] = w
                break
            w ^= b
    return len(basis)


def gf2_nullspace(rows: Sequence[int], length: int) -> List[int]:
    """Basis of {w : popcount(w & row) even for every row}."""
    # reduced row echelon form, pivots keyed by bit index
    pivots: Dict[int, int] = {}
    for r in rows:
        r = check_length(int(r), length)
        for bit, p in pivots.items():
            if (r >> bit) & 1:
                r ^= p
        if not r:
            continue
        lead = r.bit_length() - 1
        for bit in list(pivots):
            if (pivots[bit] >> lead) & 1:
                pivots[bit] ^= r
        pivots[lead] = r
    basis = []
    for free in range(length):
        if free in pivots:
            continue
        w = 1 << free
        for bit, p in pivots.items():
            if (p >> free) & 1:
                w |= 1 << bit
        basis.append(w)
    return basis


def span(basis: Sequence[int]) -> List[int]:
    words = [0]
    for b in basis:
        words += [w ^ b for w in words]
    return sorted(words)


@dataclass(frozen=True)
class LinearCode:
    """Binary linear code given by parity-check rows."""

    length: int
    parity_checks: Tuple[int, ...]

    @property
    def dimension(self) -> int:
        return self.length - gf2_rank(self.parity_checks, self.length)

    def __contains__(self, word: int) -> bool:
        return lin_contains(self, word)

    def codewords(self) -> List[int]:
        return span(gf2_nullspace(self.parity_checks, self.length))


def extended_hamming(n: int) -> LinearCode:
    """Extended Hamming code of length ``n = 2**k``, k >= 2.

    Columns of the Hamming part are the nonzero k-bit vectors in
    lexicographic order; the overall parity bit is the last coordinate.
    """
    if n < 4 or n & (n - 1):
        raise RejectedInput(f"extended Hamming length must be a power of two >= 4, got {n}")
    k = n.bit_length() - 1
    rows = []
    for t in range(k):
        row = 0
        for c in range(1, n):
            if (c >> (k - 1 - t)) & 1:
                row |= unit(c, n)
        rows.append(row)
    rows.append((1 << n) - 1)
    return LinearCode(n, tuple(rows))


def lin_contains(code: LinearCode, word: int) -> bool:
    check_length(word, code.length)
    return all((word & row).bit_count() % 2 == 0 for row in code.parity_checks)


@dataclass(frozen=True, eq=False)
class ExplicitCode:
    """A binary code stored as a sorted array of distinct words."""

    length: int
    words: np.ndarray = field(repr=False)

    @classmethod
    def from_words(cls, length: int, words: Iterable[int]) -> "ExplicitCode":
        if not 0 < length <= 64:
            raise RejectedInput(f"explicit codes support lengths 1..64, got {length}")
        arr = np.fromiter((check_length(int(w), length) for w in words), dtype=np.uint64)
        arr = np.unique(arr)
        arr.setflags(write=False)
        return cls(length, arr)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[int]:
        return (int(w) for w in self.words)

    def __contains__(self, word: int) -> bool:
        return bool(self.contains_many(np.array([word], dtype=np.uint64))[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExplicitCode):
            return NotImplemented
        return self.length == other.length and np.array_equal(self.words, other.words)

    def contains_many(self, words: np.ndarray) -> np.ndarray:
        """Vectorized membership by binary search."""
        words = np.asarray(words, dtype=np.uint64)
        idx = np.searchsorted(self.words, words)
        idx = np.minimum(idx, len(self.words) - 1)
        return self.words[idx] == words

    def index_of(self, words: np.ndarray) -> np.ndarray:
        """Positions of ``words`` in the sorted word array; -1 where absent."""
        words = np.asarray(words, dtype=np.uint64)
        idx = np.minimum(np.searchsorted(self.words, words), len(self.words) - 1)
        return np.where(self.words[idx] == words, idx, -1)


def popcount(arr: np.ndarray) -> np.ndarray:
    return np.bitwise_count(np.asarray(arr, dtype=np.uint64)).astype(np.int64)


def min_distance(code: ExplicitCode) -> int:
    if len(code) < 2:
        raise RejectedInput("minimum distance needs at least two codewords")
    w = code.words
    best = code.length
    for i in range(len(w) - 1):
        d = int(popcount(w[i + 1:] ^ w[i]).min())
        if d < best:
            best = d
            if best == 1:
                break
    return best


def weight_distribution(code: ExplicitCode) -> Dict[int, int]:
    if len(code) == 0:
        raise RejectedInput("weight distribution of an empty code")
    return dict(sorted(Counter(popcount(code.words).tolist()).items()))
