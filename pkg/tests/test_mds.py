import random
from itertools import product

import pytest

from propelinear.errors import BudgetExceeded, RejectedInput
from propelinear.mds import (
    QuasigroupShape,
    all_shapes,
    base_structure,
    check_isotopic,
    check_isotopic_group_lemmas,
    closed_form_structure,
    eval_quasigroup,
    expand_coordinate,
    iterated_expansion,
    kernel_bruteforce_quaternary,
    mds_contains,
    mds_enumerate,
    mds_kernel_characterize,
    partial_sums,
    quaternary_min_distance,
    sigma_for_codeword,
)
from propelinear.quat import E4, IDENTITY, oplus, oplus_translation, star, star_translation


def S(n, *cuts):
    return QuasigroupShape(n, cuts)


def test_shape_validation():
    with pytest.raises(RejectedInput):
        S(4, 2, 1)
    with pytest.raises(RejectedInput):
        S(4, 3)
    with pytest.raises(RejectedInput):
        S(4, 1, 1)
    with pytest.raises(RejectedInput):
        S(1)
    assert S(6, 2, 4).blocks == [(0, 2), (2, 4), (4, 5)]
    assert S(6, 2, 4).m == 4
    assert QuasigroupShape.parse(4, "none") == S(4)
    assert QuasigroupShape.parse(4, "1,2") == S(4, 1, 2)


def test_eval_examples():
    assert eval_quasigroup(S(4), (1, 3, 2)) == 0
    assert eval_quasigroup(S(4, 1, 2), (1, 1, 1)) == 3
    assert eval_quasigroup(S(4, 2), (1, 3, 2)) == 0
    with pytest.raises(RejectedInput):
        eval_quasigroup(S(4), (1, 2))


def test_contains_examples():
    assert mds_contains(S(4, 2), (0, 0, 0, 0))
    assert mds_contains(S(4, 2), (1, 3, 2, 0))
    assert not mds_contains(S(4, 2), (1, 3, 2, 1))
    with pytest.raises(RejectedInput):
        mds_contains(S(4, 2), (1, 3, 2))


@pytest.mark.parametrize("shape", [s for n in (2, 3, 4, 5) for s in all_shapes(n)], ids=str)
def test_quasigroup_law(shape):
    for x in product(E4, repeat=shape.n - 1):
        f = eval_quasigroup(shape, x)
        for p in range(shape.n - 1):
            for v in E4:
                if v != x[p]:
                    y = x[:p] + (v,) + x[p + 1:]
                    assert eval_quasigroup(shape, y) != f


def test_enumerate_sizes():
    code = mds_enumerate(S(2))
    assert code.words == tuple((x, x) for x in E4)
    code = mds_enumerate(S(4, 1, 2))
    assert len(code.words) == 64
    assert quaternary_min_distance(code.words) == 2
    assert list(code.words) == sorted(code.words)
    assert len(mds_enumerate(S(8, 3)).words) == 4 ** 7


def test_enumerate_budget():
    with pytest.raises(BudgetExceeded):
        mds_enumerate(S(10))
    with pytest.raises(BudgetExceeded, match="words"):
        mds_enumerate(S(5), max_words=100)


@pytest.mark.parametrize("shape", [s for n in (3, 4, 5) for s in all_shapes(n)], ids=str)
def test_min_distance_two(shape):
    code = mds_enumerate(shape)
    assert len(code.words) == 4 ** (shape.n - 1)
    assert quaternary_min_distance(code.words) == 2


def test_base_structures():
    code, st = base_structure(3, "star")
    x = (1, 2, 3)
    assert st.sigma(x)[2] == star_translation(3)
    assert x in st.table
    code, st = base_structure(3, "oplus")
    x = (1, 3, 2)
    assert st.sigma(x)[1] == oplus_translation(3)
    for law in ("star", "oplus"):
        code, st = base_structure(4, law)
        assert st.sigma((0, 0, 0, 0)) == (IDENTITY,) * 4
        assert check_isotopic(code, st).passed
    with pytest.raises(RejectedInput):
        base_structure(1, "star")


def test_expand_r1_is_identity():
    code, st = base_structure(4, "star")
    code2, st2 = expand_coordinate(code, st, 2, 1)
    assert code2.words == code.words
    assert st2.table == st.table


def test_expand_base2_star():
    code, st = base_structure(2, "star")
    code2, st2 = expand_coordinate(code, st, 1, 2)
    assert code2.length == 3 and len(code2.words) == 16
    assert code2.shape == S(3)
    assert set(code2.words) == {x + (eval_quasigroup(S(3), x),) for x in product(E4, repeat=2)}
    assert check_isotopic(code2, st2).passed


def test_expand_errors():
    code, st = base_structure(3, "star")
    with pytest.raises(RejectedInput):
        expand_coordinate(code, st, 3, 2)
    with pytest.raises(RejectedInput):
        expand_coordinate(code, st, 1, 0)


def test_expand_middle_coordinate_shape():
    code, st = base_structure(4, "star")
    code2, st2 = expand_coordinate(code, st, 2, 3)
    assert code2.shape == S(6, 1, 4)
    assert check_isotopic(code2, st2).passed


def test_sigma_examples():
    assert sigma_for_codeword(S(4, 2), (0, 0, 0, 0)) == (IDENTITY,) * 4
    sig = sigma_for_codeword(S(4, 2), (1, 3, 2, 0))
    assert sig[0] == tuple(oplus(star(a, 2), 3) for a in E4) == (1, 0, 3, 2)
    assert sig[2] == star_translation(2)
    assert sig[3] == IDENTITY
    sig = sigma_for_codeword(S(4, 1, 2), (1, 2, 3, 2))
    assert sig[1] == star_translation(2)
    with pytest.raises(RejectedInput):
        sigma_for_codeword(S(4, 2), (1, 3, 2, 1))


def test_printed_formula_breaks_zero_image():
    # without the extra block-sum term, sigma_x(0) != x when a block sum is nonzero
    shape = S(4, 2)
    x = (1, 3, 2, 0)
    s = partial_sums(shape, x)[0]
    printed = [oplus(star(0, s), x[p]) for p in (0, 1)]
    assert printed != [x[0], x[1]]
    assert [sigma_for_codeword(shape, x)[p][0] for p in (0, 1)] == [x[0], x[1]]


@pytest.mark.parametrize("shape", [s for n in (2, 3, 4, 5, 6) for s in all_shapes(n)], ids=str)
def test_closed_form_matches_iterated_expansion(shape):
    code, st = iterated_expansion(shape)
    assert code.words == mds_enumerate(shape).words
    for w in code.words:
        assert st.table[w] == sigma_for_codeword(shape, w)


@pytest.mark.parametrize("shape", [s for n in (2, 3, 4, 5) for s in all_shapes(n)], ids=str)
def test_isotopic_axioms_exhaustive(shape):
    code = mds_enumerate(shape)
    st = closed_form_structure(shape)
    report = check_isotopic(code, st)
    assert report.passed, report
    assert report.checked == len(code.words) ** 2
    assert check_isotopic_group_lemmas(code, st).passed


def test_isotopic_check_detects_bad_structure():
    shape = S(4, 1, 2)
    code = mds_enumerate(shape)
    table = closed_form_structure(shape).materialized(code)
    x = (1, 1, 0, 2)
    table[x] = tuple(oplus_translation(v) for v in x)
    bad = check_isotopic(code, type(closed_form_structure(shape))(shape, table))
    assert not bad.passed


def test_isotopic_sampled_n8():
    shape = S(8, 2, 3, 6)
    report = check_isotopic(mds_enumerate(shape), closed_form_structure(shape), "sampled", seed=3, trials=2000)
    assert report.passed and report.mode == "sampled" and report.seed == 3


def test_kernel_examples():
    shape = S(4, 1, 2)
    assert mds_kernel_characterize(shape, (0, 0, 0, 0))
    assert mds_kernel_characterize(shape, (1, 1, 1, 3))
    assert not mds_kernel_characterize(shape, (1, 2, 0, 3))
    with pytest.raises(RejectedInput):
        mds_kernel_characterize(shape, (1, 2, 0, 0))
    assert len(kernel_bruteforce_quaternary(mds_enumerate(shape))) == 16
    code = mds_enumerate(S(4))
    assert kernel_bruteforce_quaternary(code) == list(code.words)


@pytest.mark.parametrize("shape", [s for n in (2, 3, 4, 5) for s in all_shapes(n)], ids=str)
def test_kernel_characterization_exhaustive(shape):
    code = mds_enumerate(shape)
    brute = kernel_bruteforce_quaternary(code)
    assert (0,) * shape.n in brute
    assert brute == [w for w in code.words if mds_kernel_characterize(shape, w)]
    # per-block count: 2 choices of partial-sum class per block, twice for even m
    blocks = shape.block_lengths
    expected = 2 ** len(blocks) * 4 ** (sum(blocks) - len(blocks)) * (2 if shape.m % 2 == 0 else 1)
    assert len(brute) == expected


def test_kernel_characterization_agrees_with_additivity():
    # kernel iff f(a (+) a') = f(a) (+) f(a') for all a
    shape = S(5, 1, 3)
    rng = random.Random(1)
    for _ in range(40):
        a2 = tuple(rng.randrange(4) for _ in range(4))
        w = a2 + (eval_quasigroup(shape, a2),)
        additive = all(
            eval_quasigroup(shape, tuple(oplus(p, q) for p, q in zip(a, a2)))
            == oplus(eval_quasigroup(shape, a), w[-1])
            for a in product(E4, repeat=4)
        )
        assert additive == mds_kernel_characterize(shape, w)
