"""The alphabet E4 = {0,1,2,3} with its two group laws.

``star`` is addition in Z4.  ``oplus`` is addition in Z2 x Z2 pulled back
through the Gray map 0->(0,0), 1->(0,1), 2->(1,1), 3->(1,0).

Permutations of E4 are 4-tuples of images; a multi-permutation is a tuple
of those, one per coordinate.  Composition follows ``(p*q)(x) = p(q(x))``.
"""

from __future__ import annotations

from functools import reduce
from itertools import permutations
from typing import Iterable, List, Sequence, Tuple

from .errors import RejectedInput

Perm4 = Tuple[int, int, int, int]
MultiPerm = Tuple[Perm4, ...]
QuatWord = Tuple[int, ...]

E4 = (0, 1, 2, 3)
IDENTITY: Perm4 = (0, 1, 2, 3)
ALL_PERMS: Tuple[Perm4, ...] = tuple(permutations(E4))  # type: ignore[arg-type]

GRAY = ((0, 0), (0, 1), (1, 1), (1, 0))
_UNGRAY = {bits: a for a, bits in enumerate(GRAY)}

STAR = tuple(tuple((a + b) % 4 for b in E4) for a in E4)
OPLUS = tuple(
    tuple(_UNGRAY[(GRAY[a][0] ^ GRAY[b][0], GRAY[a][1] ^ GRAY[b][1])] for b in E4)
    for a in E4
)


def check_quat(a: int) -> int:
    if a not in (0, 1, 2, 3):
        raise RejectedInput(f"not an element of E4: {a!r}")
    return a


def check_word(word: Iterable[int], length: int | None = None) -> QuatWord:
    """Validate a quaternary word and return it as a tuple."""
    w = tuple(word)
    for a in w:
        check_quat(a)
    if length is not None and len(w) != length:
        raise RejectedInput(f"expected a word of length {length}, got {len(w)}")
    return w


def gray(a: int) -> Tuple[int, int]:
    return GRAY[check_quat(a)]


def ungray(bits: Tuple[int, int]) -> int:
    try:
        return _UNGRAY[tuple(bits)]
    except KeyError:
        raise RejectedInput(f"not a pair of bits: {bits!r}") from None


def star(a: int, b: int) -> int:
    return STAR[a][b]


def oplus(a: int, b: int) -> int:
    return OPLUS[a][b]


def star_inverse(a: int) -> int:
    return (-a) % 4


def fold_star(values: Iterable[int]) -> int:
    return reduce(star, values, 0)


def fold_oplus(values: Iterable[int]) -> int:
    return reduce(oplus, values, 0)


# -- permutations of E4 -------------------------------------------------------

def check_perm(p: Sequence[int]) -> Perm4:
    t = tuple(p)
    if sorted(t) != [0, 1, 2, 3]:
        raise RejectedInput(f"not a permutation of E4: {p!r}")
    return t  # type: ignore[return-value]


def perm_from_fn(fn) -> Perm4:
    return check_perm([fn(a) for a in E4])


def perm_compose(p: Perm4, q: Perm4) -> Perm4:
    """Return p o q, i.e. x -> p(q(x))."""
    return (p[q[0]], p[q[1]], p[q[2]], p[q[3]])


def perm_inverse(p: Perm4) -> Perm4:
    inv = [0, 0, 0, 0]
    for a, b in enumerate(p):
        inv[b] = a
    return tuple(inv)  # type: ignore[return-value]


def star_translation(b: int) -> Perm4:
    """alpha -> alpha * b"""
    return STAR[b]  # type: ignore[return-value]


def oplus_translation(b: int) -> Perm4:
    """alpha -> alpha (+) b"""
    return OPLUS[b]  # type: ignore[return-value]


def is_oplus_translation(p: Perm4) -> bool:
    return p == OPLUS[p[0]]


# -- multi-permutations ---------------------------------------------------------

def multi_compose(s: MultiPerm, t: MultiPerm) -> MultiPerm:
    if len(s) != len(t):
        raise RejectedInput(
            f"multi-permutation lengths differ: {len(s)} != {len(t)}"
        )
    return tuple(perm_compose(p, q) for p, q in zip(s, t))


def multi_inverse(s: MultiPerm) -> MultiPerm:
    return tuple(perm_inverse(p) for p in s)


def multi_apply(s: MultiPerm, word: Sequence[int]) -> QuatWord:
    if len(s) != len(word):
        raise RejectedInput(
            f"multi-permutation of length {len(s)} applied to word of length {len(word)}"
        )
    return tuple(p[a] for p, a in zip(s, word))


def multi_identity(length: int) -> MultiPerm:
    return (IDENTITY,) * length


def tau_multi(sigma: Perm4, y: Sequence[int]) -> List[Perm4]:
    """Split ``sigma`` across the coordinates of ``y``.

    Returns ``tau_s(alpha) = sigma(alpha) (+) sigma(0) (+) y_s`` for each s.
    ``y`` must (+)-sum to ``sigma(0)``.
    """
    sigma = check_perm(sigma)
    y = check_word(y)
    if not y:
        raise RejectedInput("tau_multi needs a nonempty word")
    if fold_oplus(y) != sigma[0]:
        raise RejectedInput(
            f"word {y} sums to {fold_oplus(y)} under (+), expected sigma(0)={sigma[0]}"
        )
    s0 = sigma[0]
    return [
        tuple(OPLUS[OPLUS[sigma[a]][s0]][ys] for a in E4)  # type: ignore[misc]
        for ys in y
    ]
