"""Phelps concatenation of an extended Hamming code with a block-shape MDS code.

Words of length 4n are split into n consecutive 4-bit blocks.  Inside a
block, E4 element a in {1,2,3} names position a and 0 names position 4.
Every 4-bit word lies in exactly one coset ``C_a^r = C_0 + (1+r)e_0 + e_a``
of ``C_0 = {0000, 1111}``; a word is in the code iff its block labels
``a`` form an MDS codeword and its block parities ``h`` an extended
Hamming codeword.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Callable, Dict, FrozenSet, List, Sequence, Tuple

import numpy as np

from .binary import ExplicitCode, LinearCode, extended_hamming, lin_contains, check_length
from .errors import BudgetExceeded, ConsistencyError, RejectedInput
from .mds import QuasigroupShape, mds_contains, mds_enumerate, mds_kernel_characterize, random_mds_word, sigma_for_codeword
from .quat import ALL_PERMS, E4, Perm4, QuatWord, check_perm

CoordPerm = Tuple[int, ...]  # 0-based images: coordinate j moves to position images[j]

DEFAULT_BUDGET_BYTES = 512 * 2 ** 20
BYTES_PER_WORD = 16  # packed word plus sort scratch

C0 = (0b0000, 0b1111)


def _position(a: int) -> int:
    """1-based block position named by an element of E4."""
    return 4 if a == 0 else a


def e(a: int) -> int:
    """4-bit indicator of the position named by ``a``."""
    return 1 << (4 - _position(a))


def block_coset(a: int, r: int) -> FrozenSet[int]:
    if a not in E4 or r not in (0, 1):
        raise RejectedInput(f"bad coset label a={a!r}, r={r!r}")
    shift = (e(0) if r == 0 else 0) ^ e(a)
    return frozenset(c ^ shift for c in C0)


_CLASSIFY: Dict[int, Tuple[int, int]] = {
    w: (a, r) for a in E4 for r in (0, 1) for w in block_coset(a, r)
}
# one member of each coset, indexed [a][r]
_REP = tuple(tuple(min(block_coset(a, r)) for r in (0, 1)) for a in E4)


def classify_block(w: int) -> Tuple[int, int]:
    """The label (a, r) of the coset containing the 4-bit word ``w``."""
    try:
        return _CLASSIFY[w]
    except KeyError:
        raise RejectedInput(f"not a 4-bit word: {w!r}") from None


# -- coordinate permutations ------------------------------------------------------

def coord_apply(perm: CoordPerm, word: int) -> int:
    """Move the bit at position j to position perm[j]."""
    length = len(perm)
    out = 0
    for j, t in enumerate(perm):
        if (word >> (length - 1 - j)) & 1:
            out |= 1 << (length - 1 - t)
    return out


def coord_compose(p: CoordPerm, q: CoordPerm) -> CoordPerm:
    """p o q"""
    return tuple(p[j] for j in q)


def coord_inverse(p: CoordPerm) -> CoordPerm:
    inv = [0] * len(p)
    for j, t in enumerate(p):
        inv[t] = j
    return tuple(inv)


def coord_identity(length: int) -> CoordPerm:
    return tuple(range(length))


def is_involution(p: CoordPerm) -> bool:
    return coord_compose(p, p) == coord_identity(len(p))


FIXING_LAST: Tuple[CoordPerm, ...] = tuple(q + (3,) for q in permutations(range(3)))


def _satisfies(pi: CoordPerm, sigma: Perm4) -> bool:
    fix = e(sigma[0]) ^ e(0)
    for a in E4:
        for r in (0, 1):
            lhs = {w ^ fix for w in block_coset(sigma[a], r)}
            if lhs != {coord_apply(pi, w) for w in block_coset(a, r)}:
                return False
    return True


def _search_pi(sigma: Perm4) -> CoordPerm:
    found = [pi for pi in FIXING_LAST if _satisfies(pi, sigma)]
    if len(found) != 1:
        raise ConsistencyError(f"{len(found)} block permutations match sigma={sigma}")
    return found[0]


SIGMA_TO_PI: Dict[Perm4, CoordPerm] = {s: _search_pi(s) for s in ALL_PERMS}


def sigma_to_pi(sigma: Sequence[int]) -> CoordPerm:
    """The permutation of the 4 block positions induced by ``sigma``.

    It fixes position 4 and satisfies
    ``C_{sigma(a)}^r + e_{sigma(0)} + e_0 = pi(C_a^r)`` for all a, r.
    """
    return SIGMA_TO_PI[check_perm(sigma)]


_PI_ID = {p: k for k, p in enumerate(FIXING_LAST)}
# nibble images under each block permutation, [pi_id][nibble]
_NIBBLE_APPLY = np.array([[coord_apply(p, w) for w in range(16)] for p in FIXING_LAST], dtype=np.uint64)


# -- the code -------------------------------------------------------------------------

@dataclass(frozen=True)
class PhelpsCode:
    n: int
    shape: QuasigroupShape
    hamming: LinearCode

    @property
    def length(self) -> int:
        return 4 * self.n

    @property
    def size(self) -> int:
        return 2 ** (4 * self.n - (self.n.bit_length() - 1) - 3)

    def __contains__(self, w: int) -> bool:
        return phelps_contains(self, w)


def phelps_code(n: int, cuts: Sequence[int] = ()) -> PhelpsCode:
    shape = cuts if isinstance(cuts, QuasigroupShape) else QuasigroupShape(n, tuple(cuts))
    if shape.n != n:
        raise RejectedInput(f"shape is for MDS length {shape.n}, expected {n}")
    return PhelpsCode(n, shape, extended_hamming(n))


def labels(code: PhelpsCode, w: int) -> Tuple[QuatWord, Tuple[int, ...]]:
    """Block labels ``(a, h)`` of a word of length 4n."""
    check_length(w, code.length)
    a, h = [], []
    for i in range(code.n):
        ai, hi = _CLASSIFY[(w >> (4 * (code.n - 1 - i))) & 0xF]
        a.append(ai)
        h.append(hi)
    return tuple(a), tuple(h)


def _bits_to_int(bits: Sequence[int]) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | b
    return out


def phelps_contains(code: PhelpsCode, w: int) -> bool:
    if w < 0 or w >> code.length:
        raise RejectedInput(f"word does not fit in length {code.length}")
    a, h = labels(code, w)
    return lin_contains(code.hamming, _bits_to_int(h)) and mds_contains(code.shape, a)


def _require_member(code: PhelpsCode, w: int) -> Tuple[QuatWord, Tuple[int, ...]]:
    a, h = labels(code, w)
    if not (lin_contains(code.hamming, _bits_to_int(h)) and mds_contains(code.shape, a)):
        raise RejectedInput(f"{w:0{code.length}b} is not a codeword")
    return a, h


def phelps_enumerate(code: PhelpsCode, budget_bytes: int | None = DEFAULT_BUDGET_BYTES) -> ExplicitCode:
    needed = code.size * BYTES_PER_WORD
    if budget_bytes is not None and needed > budget_bytes:
        raise BudgetExceeded(f"Phelps enumeration for n={code.n}", needed, budget_bytes)
    n = code.n
    mds = np.array(mds_enumerate(code.shape, max_words=None).words, dtype=np.int64)
    hs = np.array(
        [[(h >> (n - 1 - i)) & 1 for i in range(n)] for h in code.hamming.codewords()],
        dtype=np.int64,
    )
    rep = np.array(_REP, dtype=np.uint64)
    shifts = np.array([4 * (n - 1 - i) for i in range(n)], dtype=np.uint64)
    # bases[h, a] = concatenated coset representatives
    nibbles = rep[mds[None, :, :], hs[:, None, :]] << shifts
    bases = np.bitwise_or.reduce(nibbles, axis=2).ravel()
    offsets = np.zeros(1, dtype=np.uint64)
    for s in shifts:
        offsets = np.concatenate([offsets, offsets ^ (np.uint64(0xF) << s)])
    words = (bases[:, None] ^ offsets[None, :]).ravel()
    words.sort()
    if len(words) != code.size or np.any(words[1:] == words[:-1]):
        raise ConsistencyError("enumeration produced duplicates or a wrong count")
    words.setflags(write=False)
    return ExplicitCode(code.length, words)


def random_codeword(code: PhelpsCode, rng: random.Random) -> int:
    a = random_mds_word(code.shape, rng)
    h = _hamming_words(code.hamming)[rng.randrange(2 ** code.hamming.dimension)]
    w = 0
    for i in range(code.n):
        hi = (h >> (code.n - 1 - i)) & 1
        nib = _REP[a[i]][hi] ^ (0xF if rng.getrandbits(1) else 0)
        w = (w << 4) | nib
    return w


@lru_cache(maxsize=None)
def _hamming_words(hamming: LinearCode) -> Tuple[int, ...]:
    return tuple(hamming.codewords())


# -- propelinear structure ---------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def block_pis(shape: QuasigroupShape, a: QuatWord) -> Tuple[CoordPerm, ...]:
    """Per-block permutations assigned to the class with MDS label ``a``."""
    return tuple(SIGMA_TO_PI[s] for s in sigma_for_codeword(shape, a))


def assemble(pis: Sequence[CoordPerm]) -> CoordPerm:
    out: List[int] = []
    for i, p in enumerate(pis):
        out.extend(4 * i + t for t in p)
    return tuple(out)


def pi_for_label(code: PhelpsCode, a: Sequence[int]) -> CoordPerm:
    return assemble(block_pis(code.shape, tuple(a)))


def pi_for_codeword(code: PhelpsCode, w: int) -> CoordPerm:
    a, _ = _require_member(code, w)
    return pi_for_label(code, a)


def canonical_assignment(code: PhelpsCode) -> Callable[[int], CoordPerm]:
    def assign(w: int) -> CoordPerm:
        return pi_for_codeword(code, w)

    return assign


def apply_block_perms(pis: Sequence[CoordPerm], v: int) -> int:
    n = len(pis)
    out = 0
    for i, p in enumerate(pis):
        nib = (v >> (4 * (n - 1 - i))) & 0xF
        out = (out << 4) | int(_NIBBLE_APPLY[_PI_ID[p], nib])
    return out


def star_apply(code: PhelpsCode, x: int, v: int) -> int:
    """x + pi_x(v)"""
    check_length(v, code.length)
    a, _ = _require_member(code, x)
    return x ^ apply_block_perms(block_pis(code.shape, a), v)


def phelps_kernel_contains(code: PhelpsCode, w: int) -> bool:
    a, _ = _require_member(code, w)
    return mds_kernel_characterize(code.shape, a)
