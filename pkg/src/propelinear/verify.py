"""Verification of propelinear structures and code invariants.

Exhaustive checks run on an :class:`ExplicitCode`; sampled checks also accept
a :class:`PhelpsCode` and then rely only on its O(n) membership oracle.
An assignment is any callable (or mapping) from codeword to coordinate
permutation.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .binary import ExplicitCode, gf2_rank, popcount, weight_distribution, min_distance
from .errors import BudgetExceeded, ConsistencyError, RejectedInput
from .phelps import (
    CoordPerm,
    PhelpsCode,
    coord_apply,
    coord_compose,
    coord_identity,
    coord_inverse,
    is_involution,
    phelps_enumerate,
    random_codeword,
)
from .report import VerificationReport, merge

Assignment = Union[Callable[[int], CoordPerm], Mapping[int, CoordPerm]]
AnyCode = Union[ExplicitCode, PhelpsCode]

MAX_LUT_LENGTH = 26


def _lookup(assignment: Assignment) -> Callable[[int], CoordPerm]:
    if isinstance(assignment, Mapping):
        def get(w: int) -> CoordPerm:
            try:
                return assignment[w]
            except KeyError:
                raise RejectedInput(f"no permutation assigned to codeword {w:#x}") from None
        return get
    return assignment


def apply_to_array(perm: CoordPerm, words: np.ndarray) -> np.ndarray:
    """Vectorized :func:`coord_apply` over an array of words."""
    length = len(perm)
    words = np.asarray(words, dtype=np.uint64)
    out = np.zeros_like(words)
    one = np.uint64(1)
    for j, t in enumerate(perm):
        bit = (words >> np.uint64(length - 1 - j)) & one
        out |= bit << np.uint64(length - 1 - t)
    return out


@dataclass
class _Tabulated:
    """Assignment resolved over an explicit code: perm ids and a product table."""

    perms: List[CoordPerm]
    pid: np.ndarray  # per codeword index
    compose: np.ndarray  # [i, j] -> id of perms[i] o perms[j], -1 if not assigned anywhere


def tabulate(code: ExplicitCode, assignment: Assignment) -> _Tabulated:
    get = _lookup(assignment)
    ids: Dict[CoordPerm, int] = {}
    pid = np.empty(len(code), dtype=np.int64)
    for k, w in enumerate(code):
        p = tuple(get(w))
        if len(p) != code.length:
            raise RejectedInput(f"permutation of length {len(p)} assigned in a length-{code.length} code")
        pid[k] = ids.setdefault(p, len(ids))
    perms = list(ids)
    comp = np.full((len(perms), len(perms)), -1, dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            comp[i, j] = ids.get(coord_compose(p, q), -1)
    return _Tabulated(perms, pid, comp)


def _check_rows(
    code: ExplicitCode, tab: _Tabulated, images: List[np.ndarray], rows: range, homomorphism: bool
) -> VerificationReport:
    words = code.words
    checked = 0
    for xi in rows:
        x = words[xi]
        k = tab.pid[xi]
        zi = code.index_of(images[k] ^ x)
        bad = zi < 0
        reason = "x + pi_x(y) not in code"
        if not bad.any() and homomorphism:
            bad = tab.pid[zi] != tab.compose[k, tab.pid]
            reason = "pi_z != pi_x o pi_y"
        if bad.any():
            yi = int(np.argmax(bad))
            checked += yi + 1
            return VerificationReport(False, checked, (int(x), int(words[yi]), reason))
        checked += len(words)
    return VerificationReport(True, checked)


def _exhaustive(code: ExplicitCode, assignment: Assignment, homomorphism: bool, threads: int) -> VerificationReport:
    tab = tabulate(code, assignment)
    images = [apply_to_array(p, code.words) for p in tab.perms]
    n = len(code)
    threads = max(1, min(threads, n))
    if threads == 1:
        return _check_rows(code, tab, images, range(n), homomorphism)
    bounds = np.linspace(0, n, threads + 1).astype(int)
    chunks = [range(a, b) for a, b in zip(bounds[:-1], bounds[1:])]
    with ThreadPoolExecutor(threads) as pool:
        parts = list(pool.map(lambda r: _check_rows(code, tab, images, r, homomorphism), chunks))
    return merge(parts)


def _sampled(
    code: AnyCode, assignment: Assignment, homomorphism: bool, seed: int, trials: int
) -> VerificationReport:
    get = _lookup(assignment)
    rng = random.Random(seed)
    if isinstance(code, PhelpsCode):
        draw = lambda: random_codeword(code, rng)  # noqa: E731
    else:
        draw = lambda: int(code.words[rng.randrange(len(code))])  # noqa: E731
    for t in range(trials):
        x, y = draw(), draw()
        px = get(x)
        z = x ^ coord_apply(px, y)
        reason = None
        if z not in code:
            reason = "x + pi_x(y) not in code"
        elif homomorphism and get(z) != coord_compose(px, get(y)):
            reason = "pi_z != pi_x o pi_y"
        if reason:
            return VerificationReport(False, t + 1, (x, y, reason), "sampled", seed, trials)
    return VerificationReport(True, trials, None, "sampled", seed, trials)


def _explicit(code: AnyCode, budget_bytes: Optional[int]) -> ExplicitCode:
    if isinstance(code, PhelpsCode):
        return phelps_enumerate(code, budget_bytes)
    return code


def check_propelinear(
    code: AnyCode,
    assignment: Assignment,
    mode: str = "exhaustive",
    seed: int = 0,
    trials: int = 10_000,
    threads: int = 1,
    budget_bytes: Optional[int] = 512 * 2 ** 20,
) -> VerificationReport:
    """Check x + pi_x(y) in C and pi_{x + pi_x(y)} = pi_x o pi_y."""
    return _check(code, assignment, True, mode, seed, trials, threads, budget_bytes)


def check_transitive(
    code: AnyCode,
    assignment: Assignment,
    mode: str = "exhaustive",
    seed: int = 0,
    trials: int = 10_000,
    threads: int = 1,
    budget_bytes: Optional[int] = 512 * 2 ** 20,
) -> VerificationReport:
    """Check x + pi_x(C) = C only."""
    return _check(code, assignment, False, mode, seed, trials, threads, budget_bytes)


def _check(code, assignment, homomorphism, mode, seed, trials, threads, budget_bytes):
    if mode == "exhaustive":
        return _exhaustive(_explicit(code, budget_bytes), assignment, homomorphism, threads)
    if mode == "sampled":
        if trials < 1:
            raise RejectedInput("sampled mode needs at least one trial")
        return _sampled(code, assignment, homomorphism, seed, trials)
    raise RejectedInput(f"unknown mode {mode!r}")


# -- perfectness ---------------------------------------------------------------

def _log2_exact(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise RejectedInput(f"{n} is not a power of two")
    return n.bit_length() - 1


def check_extended_perfect(code: ExplicitCode) -> VerificationReport:
    """Size, minimum distance 4, even weights, and perfect packing after puncturing."""
    L = code.length
    k = _log2_exact(L)
    if L > MAX_LUT_LENGTH:
        raise BudgetExceeded("sphere-packing table", 2 ** (L - 1), 2 ** (MAX_LUT_LENGTH - 1), "entries")
    expected = 2 ** (L - k - 1)
    if len(code) != expected:
        return VerificationReport(False, 0, (len(code), expected, "size"))
    d = min_distance(code)
    if d != 4:
        return VerificationReport(False, 0, (d, 4, "minimum distance"))
    weights = popcount(code.words)
    if np.any(weights % 2):
        w = int(code.words[int(np.argmax(weights % 2))])
        return VerificationReport(False, 0, (w, int(weights.max()), "odd weight"))
    if len(code) * L != 2 ** (L - 1):
        return VerificationReport(False, 0, (len(code) * L, 2 ** (L - 1), "sphere count"))
    punctured = (code.words >> np.uint64(1)).astype(np.int64)
    cover = np.bincount(punctured, minlength=2 ** (L - 1))
    for j in range(L - 1):
        cover += np.bincount(punctured ^ (1 << j), minlength=2 ** (L - 1))
    if np.any(cover != 1):
        v = int(np.argmax(cover != 1))
        return VerificationReport(False, 2 ** (L - 1), (v, int(cover[v]), "packing"))
    return VerificationReport(True, 2 ** (L - 1))


# -- kernel and rank -------------------------------------------------------------------

def kernel_bruteforce_binary(code: ExplicitCode) -> Tuple[List[int], int]:
    """Codewords k with k + C = C, and the kernel's dimension."""
    kernel = [int(w) for w in code.words if code.contains_many(code.words ^ w).all()]
    dim = gf2_rank(kernel, code.length)
    if len(kernel) != 2 ** dim:
        raise ConsistencyError("kernel is not a linear subspace")
    return kernel, dim


def rank_of(code: ExplicitCode) -> int:
    return gf2_rank(code.words.tolist(), code.length)


def _echelon(vectors: Iterable[int]) -> Dict[int, int]:
    basis: Dict[int, int] = {}
    for w in vectors:
        w = int(w)
        while w:
            lead = w.bit_length() - 1
            if lead not in basis:
                basis[lead] = w
                break
            w ^= basis[lead]
    return basis


def coset_key(basis: Dict[int, int], w: int) -> int:
    """Canonical representative of ``w + span(basis)``."""
    for lead in sorted(basis, reverse=True):
        if (w >> lead) & 1:
            w ^= basis[lead]
    return w


def _kernel_basis(kernel: Sequence[int]) -> Dict[int, int]:
    kernel = [int(k) for k in kernel]
    basis = _echelon(kernel)
    if 0 not in kernel or len(set(kernel)) != 2 ** len(basis):
        raise ConsistencyError("kernel is not a subgroup under +")
    return basis


def kernel_cosets(code: ExplicitCode, kernel: Sequence[int]) -> Dict[int, List[int]]:
    basis = _kernel_basis(kernel)
    cosets: Dict[int, List[int]] = {}
    for w in code:
        cosets.setdefault(coset_key(basis, w), []).append(w)
    return cosets


def check_normalized(code: ExplicitCode, assignment: Assignment, kernel: Sequence[int]) -> VerificationReport:
    """Pass iff the assigned permutation is constant on every kernel coset."""
    get = _lookup(assignment)
    cosets = kernel_cosets(code, kernel)
    on_kernel = {get(k) for k in kernel}
    notes = {"cosets": len(cosets), "kernel_permutations": len(on_kernel)}
    checked = 0
    for rep in sorted(cosets):
        members = cosets[rep]
        first = get(members[0])
        for w in members[1:]:
            checked += 1
            if get(w) != first:
                return VerificationReport(
                    False, checked, (members[0], w, "permutation differs within a kernel coset"), notes=notes
                )
    return VerificationReport(True, checked, notes=notes)


def kernel_permutations(assignment: Assignment, kernel: Iterable[int]) -> List[CoordPerm]:
    get = _lookup(assignment)
    return sorted({get(int(k)) for k in kernel})


# -- normalized structures -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CosetAssignment:
    """A normalized assignment: one permutation per kernel coset."""

    basis: Dict[int, int]
    perms: Dict[int, CoordPerm]  # coset key -> permutation

    def __call__(self, w: int) -> CoordPerm:
        try:
            return self.perms[coset_key(self.basis, w)]
        except KeyError:
            raise RejectedInput(f"{w:#x} lies in no known coset") from None

    def signature(self) -> Tuple[Tuple[int, CoordPerm], ...]:
        return tuple(sorted(self.perms.items()))


def block_involutions(n_blocks: int) -> List[CoordPerm]:
    """Block-diagonal involutions fixing the 4th position of every block."""
    per_block = [(0, 1, 2, 3), (1, 0, 2, 3), (2, 1, 0, 3), (0, 2, 1, 3)]
    out = []
    for choice in product(per_block, repeat=n_blocks):
        out.append(tuple(4 * i + t for i, p in enumerate(choice) for t in p))
    return out


def enumerate_normalized(
    code: ExplicitCode,
    assignment: Assignment,
    kernel: Optional[Sequence[int]] = None,
    all_involutions: bool = False,
    max_search: int = 1 << 20,
) -> List[CosetAssignment]:
    """Normalized propelinear assignments on ``code``.

    Each kernel coset draws its permutation from the involutions used by
    ``assignment`` (or, with ``all_involutions``, from every block-diagonal
    involution fixing each block's last position).  Every returned
    assignment passed the exhaustive propelinearity check.
    """
    get = _lookup(assignment)
    observed = sorted({tuple(get(w)) for w in code})
    if not all(is_involution(p) for p in observed):
        raise RejectedInput("assignment uses permutations that are not involutions")
    if kernel is None:
        kernel, _ = kernel_bruteforce_binary(code)
    basis = _kernel_basis(kernel)
    reps = sorted({coset_key(basis, w) for w in code})
    if all_involutions:
        if code.length % 4:
            raise RejectedInput("block involutions need a length divisible by 4")
        candidates = block_involutions(code.length // 4)
    else:
        candidates = observed

    words = code.words
    # a coset-constant pi works for axiom (i) iff pi(C) = rep + C
    options: Dict[int, List[CoordPerm]] = {}
    for rep in reps:
        target = np.sort(words ^ np.uint64(rep))
        options[rep] = [p for p in candidates if np.array_equal(np.sort(apply_to_array(p, words)), target)]
    space = math.prod(len(v) for v in options.values())
    if space > max_search:
        raise BudgetExceeded("normalized-structure search", space, max_search, "assignments")

    # pi(K) = K for every surviving option, so axiom (ii) reduces to coset representatives
    products = {
        (x, y): {p: coset_key(basis, x ^ coord_apply(p, y)) for p in options[x]}
        for x in reps
        for y in reps
    }
    found = []
    for choice in product(*(options[r] for r in reps)):
        table = dict(zip(reps, choice))
        if all(
            table[products[x, y][table[x]]] == coord_compose(table[x], table[y])
            for x in reps
            for y in reps
        ):
            candidate = CosetAssignment(basis, table)
            if check_propelinear(code, candidate).passed:
                found.append(candidate)
    return found


# -- invariants ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantBundle:
    length: int
    size: int
    rank: int
    kernel_dim: int
    weight_distribution: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.kernel_dim <= math.log2(self.size) <= self.rank <= self.length:
            raise ConsistencyError(f"inconsistent invariants {self}")

    def lines(self) -> List[str]:
        wd = " ".join(f"{w}:{c}" for w, c in self.weight_distribution)
        return [
            f"LENGTH {self.length}",
            f"SIZE {self.size}",
            f"RANK {self.rank}",
            f"KERNEL_DIM {self.kernel_dim}",
            f"WEIGHTS {wd}",
        ]


def invariant_bundle(code: ExplicitCode) -> InvariantBundle:
    _, kdim = kernel_bruteforce_binary(code)
    return InvariantBundle(
        code.length,
        len(code),
        rank_of(code),
        kdim,
        tuple(weight_distribution(code).items()),
    )


def provably_inequivalent(a: InvariantBundle, b: InvariantBundle) -> bool:
    """Different invariant bundles imply inequivalent codes; equal bundles decide nothing."""
    return a != b


# -- group structure --------------------------------------------------------------------------

def check_group_axioms(
    code: AnyCode,
    assignment: Assignment,
    mode: str = "exhaustive",
    seed: int = 0,
    trials: int = 10_000,
) -> VerificationReport:
    """Identity, inverses with inverse permutations, cancellation and isometry of x * (.)."""
    get = _lookup(assignment)
    length = code.length
    if 0 not in code:
        return VerificationReport(False, 1, (0, 0, "zero word is not a codeword"))
    if tuple(get(0)) != coord_identity(length):
        return VerificationReport(False, 1, (0, 0, "pi_0 is not the identity"))
    rng = random.Random(seed)
    if mode == "exhaustive":
        if not isinstance(code, ExplicitCode):
            raise RejectedInput("exhaustive group check needs an explicit code")
        xs: Iterable[int] = iter(code)
    elif mode == "sampled":
        if isinstance(code, PhelpsCode):
            xs = (random_codeword(code, rng) for _ in range(trials))
        else:
            xs = (int(code.words[rng.randrange(len(code))]) for _ in range(trials))
    else:
        raise RejectedInput(f"unknown mode {mode!r}")
    checked = 1
    for x in xs:
        checked += 1
        px = get(x)
        inv = coord_inverse(px)
        x_inv = coord_apply(inv, x)
        if x_inv not in code:
            return VerificationReport(False, checked, (x, x_inv, "inverse not in code"))
        if x ^ coord_apply(px, x_inv) != 0:
            return VerificationReport(False, checked, (x, x_inv, "x * x' != 0"))
        if tuple(get(x_inv)) != inv:
            return VerificationReport(False, checked, (x, x_inv, "pi of inverse is not pi^-1"))
    # cancellation and distance compatibility on random triples
    pool = (lambda: random_codeword(code, rng)) if isinstance(code, PhelpsCode) else (
        lambda: int(code.words[rng.randrange(len(code))])
    )
    for _ in range(trials):
        checked += 1
        x = pool()
        u, v = rng.getrandbits(length), rng.getrandbits(length)
        px = get(x)
        xu, xv = x ^ coord_apply(px, u), x ^ coord_apply(px, v)
        if (xu ^ xv).bit_count() != (u ^ v).bit_count():
            return VerificationReport(False, checked, (u, v, "d(x*u, x*v) != d(u, v)"))
        if xu == xv and u != v:
            return VerificationReport(False, checked, (u, v, "left cancellation fails"))
    mode_out = "sampled" if mode == "sampled" else "exhaustive"
    return VerificationReport(True, checked, None, mode_out, seed if mode_out == "sampled" else None,
                              trials if mode_out == "sampled" else None)
