"""Block quasigroups of order 4 and their isotopic propelinear MDS codes.

A shape ``(n, cuts)`` splits the first ``n - 1`` coordinates into blocks
ending at each cut; the quasigroup (+)-folds every block and *-folds the
block sums.  The MDS code is ``{(x, f(x))}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import BudgetExceeded, RejectedInput
from .quat import (
    E4,
    OPLUS,
    STAR,
    MultiPerm,
    Perm4,
    QuatWord,
    check_word,
    fold_oplus,
    fold_star,
    multi_apply,
    multi_compose,
    multi_identity,
    multi_inverse,
    oplus_translation,
    star_translation,
    tau_multi,
)
from .report import VerificationReport

DEFAULT_MAX_WORDS = 4 ** 8  # n <= 9


@dataclass(frozen=True)
class QuasigroupShape:
    n: int
    cuts: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "cuts", tuple(int(c) for c in self.cuts))
        if self.n < 2:
            raise RejectedInput(f"MDS length must be at least 2, got {self.n}")
        prev = 0
        for c in self.cuts:
            if c <= prev or c > self.n - 2:
                raise RejectedInput(
                    f"cuts must be strictly increasing within 1..{self.n - 2}: {self.cuts}"
                )
            prev = c

    @property
    def m(self) -> int:
        return len(self.cuts) + 2

    @property
    def blocks(self) -> List[Tuple[int, int]]:
        """0-based half-open ranges of the blocks over the first n-1 positions."""
        bounds = (0,) + self.cuts + (self.n - 1,)
        return list(zip(bounds[:-1], bounds[1:]))

    @property
    def block_lengths(self) -> List[int]:
        return [b - a for a, b in self.blocks]

    def label(self) -> str:
        return f"{self.n}:{','.join(map(str, self.cuts))}"

    @classmethod
    def parse(cls, n: int, text: str) -> "QuasigroupShape":
        """Parse ``"1,2"`` or ``"none"`` into a shape."""
        text = text.strip()
        if text in ("none", ""):
            return cls(n, ())
        try:
            cuts = tuple(int(t) for t in text.split(","))
        except ValueError:
            raise RejectedInput(f"bad shape {text!r}") from None
        return cls(n, cuts)


def all_shapes(n: int) -> List[QuasigroupShape]:
    """Every cut list for MDS length n (2**(n-2) of them)."""
    inner = range(1, n - 1)
    out = []
    for mask in range(1 << len(inner)):
        out.append(QuasigroupShape(n, tuple(c for k, c in enumerate(inner) if mask >> k & 1)))
    return out


def partial_sums(shape: QuasigroupShape, x: Sequence[int]) -> Tuple[int, ...]:
    return tuple(fold_oplus(x[a:b]) for a, b in shape.blocks)


def eval_quasigroup(shape: QuasigroupShape, x: Sequence[int]) -> int:
    x = check_word(x, shape.n - 1)
    return fold_star(partial_sums(shape, x))


def mds_contains(shape: QuasigroupShape, w: Sequence[int]) -> bool:
    w = check_word(w, shape.n)
    return w[-1] == fold_star(partial_sums(shape, w))


@dataclass(frozen=True)
class MdsCode:
    shape: QuasigroupShape
    words: Optional[Tuple[QuatWord, ...]] = field(default=None, repr=False)

    @property
    def length(self) -> int:
        return self.shape.n

    @property
    def size(self) -> int:
        return 4 ** (self.shape.n - 1)

    def __contains__(self, w: Sequence[int]) -> bool:
        return mds_contains(self.shape, w)


def mds_enumerate(shape: QuasigroupShape, max_words: Optional[int] = DEFAULT_MAX_WORDS) -> MdsCode:
    size = 4 ** (shape.n - 1)
    if max_words is not None and size > max_words:
        raise BudgetExceeded(f"MDS enumeration for n={shape.n}", size, max_words, "words")
    blocks = shape.blocks
    words = []
    for x in product(E4, repeat=shape.n - 1):
        f = 0
        for a, b in blocks:
            s = 0
            for v in x[a:b]:
                s = OPLUS[s][v]
            f = STAR[f][s]
        words.append(x + (f,))
    return MdsCode(shape, tuple(words))


def random_mds_word(shape: QuasigroupShape, rng: random.Random) -> QuatWord:
    x = tuple(rng.randrange(4) for _ in range(shape.n - 1))
    return x + (fold_star(partial_sums(shape, x)),)


# -- isotopic propelinear structures -----------------------------------------

# (alpha * S) (+) S (+) x_p, indexed [S][x_p]
_BLOCK_PERM = tuple(
    tuple(tuple(OPLUS[OPLUS[STAR[a][s]][s]][xp] for a in E4) for xp in E4)
    for s in E4
)


def sigma_for_codeword(shape: QuasigroupShape, x: Sequence[int]) -> MultiPerm:
    """Closed-form multi-permutation of an MDS codeword.

    Position p in a block with (+)-sum S gets ``(alpha * S) (+) S (+) x_p``;
    the last position gets ``alpha * f(x)``.
    """
    x = check_word(x, shape.n)
    sums = partial_sums(shape, x)
    if x[-1] != fold_star(sums):
        raise RejectedInput(f"{x} is not a codeword of shape {shape.label()}")
    perms: List[Perm4] = []
    for (a, b), s in zip(shape.blocks, sums):
        perms.extend(_BLOCK_PERM[s][x[p]] for p in range(a, b))
    perms.append(star_translation(x[-1]))
    return tuple(perms)


@dataclass(frozen=True, eq=False)
class IsotopicStructure:
    """Codeword -> multi-permutation; coordinate permutations are all trivial."""

    shape: QuasigroupShape
    table: Optional[Dict[QuatWord, MultiPerm]] = field(default=None, repr=False)

    def sigma(self, x: Sequence[int]) -> MultiPerm:
        if self.table is not None:
            try:
                return self.table[tuple(x)]
            except KeyError:
                raise RejectedInput(f"no multi-permutation assigned to {tuple(x)}") from None
        return sigma_for_codeword(self.shape, x)

    def materialized(self, code: MdsCode) -> Dict[QuatWord, MultiPerm]:
        if self.table is not None:
            return self.table
        if code.words is None:
            raise RejectedInput("code is not materialized")
        return {w: sigma_for_codeword(self.shape, w) for w in code.words}


def closed_form_structure(shape: QuasigroupShape) -> IsotopicStructure:
    return IsotopicStructure(shape)


def base_structure(m: int, law: str) -> Tuple[MdsCode, IsotopicStructure]:
    """The codes {(x, x_1 law ... law x_{m-1})} with translation structures."""
    if m < 2:
        raise RejectedInput(f"base structure needs m >= 2, got {m}")
    if law == "star":
        fold, translate = fold_star, star_translation
        shape = QuasigroupShape(m, tuple(range(1, m - 1)))
    elif law == "oplus":
        fold, translate = fold_oplus, oplus_translation
        shape = QuasigroupShape(m, ())
    else:
        raise RejectedInput(f"law must be 'star' or 'oplus', got {law!r}")
    table = {}
    for x in product(E4, repeat=m - 1):
        w = x + (fold(x),)
        table[w] = tuple(translate(v) for v in w)
    words = tuple(sorted(table))
    return MdsCode(shape, words), IsotopicStructure(shape, table)


def expand_coordinate(
    code: MdsCode, structure: IsotopicStructure, i: int, r: int
) -> Tuple[MdsCode, IsotopicStructure]:
    """Replace coordinate ``i`` (1-based) by ``r`` coordinates summing to it."""
    n = code.length
    if not 1 <= i <= n - 1:
        raise RejectedInput(f"expanded coordinate must lie in 1..{n - 1}, got {i}")
    if r < 1:
        raise RejectedInput(f"expansion length must be >= 1, got {r}")
    if code.words is None:
        raise RejectedInput("expand_coordinate needs a materialized code")
    new_shape = QuasigroupShape(
        n + r - 1, tuple(c + r - 1 if c >= i else c for c in code.shape.cuts)
    )
    splits: Dict[int, List[QuatWord]] = {v: [] for v in E4}
    for y in product(E4, repeat=r):
        splits[fold_oplus(y)].append(y)
    table: Dict[QuatWord, MultiPerm] = {}
    for x in code.words:
        sigma = structure.sigma(x)
        head, tail = x[: i - 1], x[i:]
        shead, stail = sigma[: i - 1], sigma[i:]
        for y in splits[x[i - 1]]:
            table[head + y + tail] = shead + tuple(tau_multi(sigma[i - 1], y)) + stail
    return MdsCode(new_shape, tuple(sorted(table))), IsotopicStructure(new_shape, table)


def iterated_expansion(shape: QuasigroupShape) -> Tuple[MdsCode, IsotopicStructure]:
    """Build the shape's structure by expanding the pure-* base code block by block."""
    code, structure = base_structure(shape.m, "star")
    for j in reversed(range(shape.m - 1)):
        code, structure = expand_coordinate(code, structure, j + 1, shape.block_lengths[j])
    if code.shape != shape:
        raise AssertionError(f"expansion produced {code.shape}, expected {shape}")
    return code, structure


# -- kernels -------------------------------------------------------------------

def mds_kernel_characterize(shape: QuasigroupShape, w: Sequence[int]) -> bool:
    """Kernel membership from the block partial sums of ``w``."""
    w = check_word(w, shape.n)
    if not mds_contains(shape, w):
        raise RejectedInput(f"{w} is not a codeword of shape {shape.label()}")
    sums = partial_sums(shape, w)
    if all(s in (0, 2) for s in sums):
        return True
    return shape.m % 2 == 0 and all(s in (1, 3) for s in sums)


_OPLUS_NP = np.array(OPLUS, dtype=np.uint8)


def _encode(words: np.ndarray) -> np.ndarray:
    return (words.astype(np.int64) * (4 ** np.arange(words.shape[1] - 1, -1, -1))).sum(axis=1)


def kernel_bruteforce_quaternary(code: MdsCode) -> List[QuatWord]:
    """Codewords a with a (+) M = M."""
    if code.words is None:
        raise RejectedInput("kernel brute force needs a materialized code")
    arr = np.array(code.words, dtype=np.uint8)
    keys = np.sort(_encode(arr))
    kernel = []
    for w, row in zip(code.words, arr):
        shifted = np.sort(_encode(_OPLUS_NP[row, arr]))
        if np.array_equal(shifted, keys):
            kernel.append(w)
    return kernel


# -- distances and axiom checks ----------------------------------------------------

def quaternary_distance(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a != b for a, b in zip(u, v))


def quaternary_min_distance(words: Sequence[QuatWord]) -> int:
    arr = np.array(words, dtype=np.uint8)
    if len(arr) < 2:
        raise RejectedInput("minimum distance needs at least two codewords")
    best = arr.shape[1]
    for i in range(len(arr) - 1):
        best = min(best, int((arr[i + 1:] != arr[i]).sum(axis=1).min()))
    return best


def check_isotopic(
    code: MdsCode,
    structure: IsotopicStructure,
    mode: str = "exhaustive",
    seed: int = 0,
    trials: int = 10_000,
) -> VerificationReport:
    """Verify the isotopic propelinear axioms.

    (a) sigma_x maps the code into itself, (b) sigma_x(0) = x,
    (c) sigma_{sigma_x(y)} = sigma_x o sigma_y.
    """
    shape = code.shape
    n = shape.n
    zero = (0,) * n
    if mode == "exhaustive":
        if code.words is None:
            raise RejectedInput("exhaustive check needs a materialized code")
        words = code.words
        sig = structure.materialized(code)
        for x in words:
            if multi_apply(sig[x], zero) != x:
                return VerificationReport(False, 0, (x, zero, "sigma_x(0) != x"))
        checked = 0
        for x in words:
            sx = sig[x]
            for y in words:
                checked += 1
                z = multi_apply(sx, y)
                sz = sig.get(z)
                if sz is None:
                    return VerificationReport(False, checked, (x, y, "image not in code"))
                if sz != multi_compose(sx, sig[y]):
                    return VerificationReport(False, checked, (x, y, "sigma_z != sigma_x o sigma_y"))
        return VerificationReport(True, checked)
    if mode != "sampled":
        raise RejectedInput(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    for t in range(trials):
        x = random_mds_word(shape, rng)
        y = random_mds_word(shape, rng)
        sx = structure.sigma(x)
        bad = None
        if multi_apply(sx, zero) != x:
            bad = "sigma_x(0) != x"
        else:
            z = multi_apply(sx, y)
            if not mds_contains(shape, z):
                bad = "image not in code"
            elif structure.sigma(z) != multi_compose(sx, structure.sigma(y)):
                bad = "sigma_z != sigma_x o sigma_y"
        if bad:
            return VerificationReport(False, t + 1, (x, y, bad), "sampled", seed, trials)
    return VerificationReport(True, trials, None, "sampled", seed, trials)


def check_isotopic_group_lemmas(code: MdsCode, structure: IsotopicStructure) -> VerificationReport:
    """Identity at zero, inverses carry inverse multi-permutations."""
    if code.words is None:
        raise RejectedInput("group lemma check needs a materialized code")
    n = code.length
    zero = (0,) * n
    sig = structure.materialized(code)
    if sig.get(zero) != multi_identity(n):
        return VerificationReport(False, 1, (zero, zero, "sigma_0 is not the identity"))
    for x in code.words:
        inv = multi_inverse(sig[x])
        x_inv = multi_apply(inv, zero)
        if x_inv not in sig:
            return VerificationReport(False, 1, (x, x_inv, "inverse not in code"))
        if sig[x_inv] != inv:
            return VerificationReport(False, 1, (x, x_inv, "sigma of inverse is not the inverse"))
    return VerificationReport(True, len(code.words))


def format_quat_word(w: Iterable[int]) -> str:
    return "".join(map(str, w))
