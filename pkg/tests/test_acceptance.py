"""Acceptance criteria 1-10.  Each test carries a ``criterion`` marker; the
terminal summary prints one PASS/FAIL line per criterion."""

import time
from itertools import product

import mpmath
import pytest

from propelinear.binary import ExplicitCode, extended_hamming, min_distance, weight_distribution
from propelinear.bounds import bound_evaluate, partition_count, shapes_count
from propelinear.mds import (
    all_shapes,
    check_isotopic,
    closed_form_structure,
    iterated_expansion,
    kernel_bruteforce_quaternary,
    mds_enumerate,
    mds_kernel_characterize,
    sigma_for_codeword,
    QuasigroupShape,
)
from propelinear.phelps import (
    SIGMA_TO_PI,
    canonical_assignment,
    coord_compose,
    phelps_code,
    phelps_enumerate,
    phelps_kernel_contains,
    sigma_to_pi,
)
from propelinear.quat import (
    ALL_PERMS,
    E4,
    fold_oplus,
    oplus,
    oplus_translation,
    perm_compose,
    star,
    star_inverse,
    tau_multi,
)
from propelinear.verify import (
    check_extended_perfect,
    check_normalized,
    check_propelinear,
    enumerate_normalized,
    kernel_bruteforce_binary,
    kernel_permutations,
    rank_of,
)

from .conftest import N4_SHAPES

crit = pytest.mark.criterion


@crit(1, "construction correctness, n=4")
@pytest.mark.parametrize("cuts", N4_SHAPES)
def test_c1_construction(cuts):
    t0 = time.perf_counter()
    code = phelps_enumerate(phelps_code(4, cuts))
    assert len(code) == 2048
    assert min_distance(code) == 4
    report = check_extended_perfect(code)
    assert report.passed and report.checked == 2 ** 15
    elapsed = time.perf_counter() - t0
    print(f"cuts={list(cuts)} size=2048 d=4 perfect elapsed={elapsed:.2f}s")
    assert elapsed < 10


@crit(2, "exhaustive propelinearity, n=4")
@pytest.mark.parametrize("cuts", N4_SHAPES)
def test_c2_propelinear(cuts, n4_codes):
    code, explicit, assign = n4_codes[cuts]
    t0 = time.perf_counter()
    report = check_propelinear(explicit, assign)
    elapsed = time.perf_counter() - t0
    assert report.passed and report.checked == 2048 ** 2
    print(f"cuts={list(cuts)} pairs={report.checked} elapsed={elapsed:.2f}s")
    assert elapsed < 60


@crit(3, "implicit membership scale test, n=8")
def test_c3_sampled_n8(monkeypatch):
    import propelinear.verify as verify

    def refuse(*args, **kwargs):
        raise AssertionError("enumeration attempted")

    monkeypatch.setattr(verify, "phelps_enumerate", refuse)
    code = phelps_code(8, (2, 5))
    t0 = time.perf_counter()
    report = check_propelinear(code, canonical_assignment(code), "sampled", seed=2024, trials=10_000)
    elapsed = time.perf_counter() - t0
    assert report.passed and report.trials >= 10_000
    print(f"length=32 pairs={report.trials} elapsed={elapsed:.2f}s")
    assert elapsed < 60


@crit(4, "kernel agreement, n=4")
@pytest.mark.parametrize("cuts", N4_SHAPES)
def test_c4_kernel(cuts, n4_codes):
    code, explicit, _ = n4_codes[cuts]
    n, m, logn = 4, code.shape.m, 2
    kernel, dim = kernel_bruteforce_binary(explicit)
    characterized = [int(w) for w in explicit if phelps_kernel_contains(code, int(w))]
    assert kernel == characterized
    uniform = 3 * n - (2 if m % 2 else 1) - logn
    per_block = 4 * n - m - (2 if m % 2 else 1) - logn
    print(f"cuts={list(cuts)} m={m} measured=2^{dim} per_block=2^{per_block} uniform=2^{uniform}"
          + ("" if dim == uniform else "  (uniform mismatch reported)"))
    if cuts == (1, 2):
        assert len(kernel) == 512 == 2 ** uniform
    elif cuts == ():
        assert len(kernel) == 2048
    else:
        assert dim == per_block


@crit(5, "rank, n=4")
@pytest.mark.parametrize("cuts,expected", [((1, 2), 12), ((), 11)])
def test_c5_rank(cuts, expected, n4_codes):
    hamming_rank = rank_of(ExplicitCode.from_words(16, extended_hamming(16).codewords()))
    assert hamming_rank == 11
    assert rank_of(n4_codes[cuts][1]) == expected
    if cuts:
        assert expected == hamming_rank + 1


@crit(6, "normality")
def test_c6_normality(n4_codes):
    _, ex3, as3 = n4_codes[(2,)]
    k3, _ = kernel_bruteforce_binary(ex3)
    assert check_normalized(ex3, as3, k3).passed

    _, ex4, as4 = n4_codes[(1, 2)]
    k4, _ = kernel_bruteforce_binary(ex4)
    report = check_normalized(ex4, as4, k4)
    assert not report.passed
    assert len(kernel_permutations(as4, k4)) == 2

    found = enumerate_normalized(ex4, as4, k4)
    print(f"normalized structures for cuts=[1,2]: {len(found)}")
    assert len(found) >= 4
    for f in found:
        assert check_normalized(ex4, f, k4).passed
        assert check_propelinear(ex4, f).passed


@crit(7, "algebraic lemmas, exhaustive")
def test_c7_lemmas():
    t0 = time.perf_counter()
    for phi in ALL_PERMS:
        for a, b in product(E4, E4):
            assert phi[oplus(a, b)] == oplus(oplus(phi[a], phi[b]), phi[0])
    for u2, u in product(E4, E4):
        expected = star(u2, u) if u2 in (0, 2) else star(u2, star_inverse(u))
        assert oplus(u2, u) == expected
    for u2 in E4:
        assert not all(oplus(u2, star(u, v)) == star(star(u2, star_inverse(u)), v) for u, v in product(E4, E4))
    for r in (1, 2, 3):
        for sigma in ALL_PERMS:
            for y in product(E4, repeat=r):
                if fold_oplus(y) != sigma[0]:
                    continue
                taus = tau_multi(sigma, y)
                for x in product(E4, repeat=r):
                    assert fold_oplus(t[xi] for t, xi in zip(taus, x)) == sigma[fold_oplus(x)]
    for s, t in product(ALL_PERMS, ALL_PERMS):
        assert sigma_to_pi(perm_compose(s, t)) == coord_compose(sigma_to_pi(s), sigma_to_pi(t))
    kernel = sorted(s for s, p in SIGMA_TO_PI.items() if p == (0, 1, 2, 3))
    assert kernel == sorted(oplus_translation(b) for b in E4)
    elapsed = time.perf_counter() - t0
    print(f"lemmas elapsed={elapsed:.3f}s")
    assert elapsed < 5


@crit(8, "MDS layer")
@pytest.mark.parametrize("shape", [s for n in (2, 3, 4, 5) for s in all_shapes(n)], ids=str)
def test_c8_mds_exhaustive(shape):
    code = mds_enumerate(shape)
    assert check_isotopic(code, closed_form_structure(shape)).passed
    expanded, st = iterated_expansion(shape)
    assert expanded.words == code.words
    assert all(st.table[w] == sigma_for_codeword(shape, w) for w in code.words)
    brute = kernel_bruteforce_quaternary(code)
    assert brute == [w for w in code.words if mds_kernel_characterize(shape, w)]


@crit(8, "MDS layer")
def test_c8_mds_sampled_n8():
    shape = QuasigroupShape(8, (2, 3, 6))
    report = check_isotopic(mds_enumerate(shape), closed_form_structure(shape), "sampled", seed=8, trials=10_000)
    assert report.passed


@crit(9, "weight distribution, n=4")
def test_c9_weights(n4_codes):
    checks = extended_hamming(16).parity_checks
    hist = {}
    for w in range(1 << 16):
        if all((w & row).bit_count() % 2 == 0 for row in checks):
            hist[w.bit_count()] = hist.get(w.bit_count(), 0) + 1
    reference = dict(sorted(hist.items()))
    for cuts in N4_SHAPES:
        assert weight_distribution(n4_codes[cuts][1]) == reference


@crit(10, "bound evaluator")
@pytest.mark.parametrize("n", [4, 8, 16, 64])
def test_c10_bound(n):
    mpmath.mp.dps = 60
    ref = mpmath.exp(mpmath.pi * mpmath.sqrt(mpmath.mpf(2 * n) / 3)) / (8 * n * n * mpmath.sqrt(3))
    rel = abs((mpmath.mpf(bound_evaluate(n)) - ref) / ref)
    assert rel <= 1e-9


@crit(10, "bound evaluator")
def test_c10_partitions():
    assert partition_count(10) == 42
    assert shapes_count(11)[1] == 42
    # recurrence p(k, j): partitions of k into parts <= j
    table = [[1] * 31] + [[0] * 31 for _ in range(30)]
    for k in range(1, 31):
        for j in range(1, 31):
            table[k][j] = table[k][j - 1] + (table[k - j][j] if j <= k else 0)
    assert all(partition_count(k) == table[k][k] for k in range(31))
