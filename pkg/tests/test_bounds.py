import mpmath
import pytest

from propelinear.bounds import bound_evaluate, partition_count, shapes_count
from propelinear.errors import RejectedInput
from propelinear.mds import all_shapes


def partitions_brute(k, largest=None):
    """Count partitions of k with parts <= largest by direct recursion."""
    if largest is None:
        largest = k
    if k == 0:
        return 1
    return sum(partitions_brute(k - p, p) for p in range(1, min(k, largest) + 1))


@pytest.mark.parametrize("n", [4, 8, 16, 64])
def test_phelps_bound_high_precision(n):
    mpmath.mp.dps = 50
    ref = mpmath.exp(mpmath.pi * mpmath.sqrt(mpmath.mpf(2 * n) / 3)) / (8 * n * n * mpmath.sqrt(3))
    assert abs(bound_evaluate(n) - float(ref)) <= 1e-9 * float(ref)


@pytest.mark.parametrize("n", [3, 9, 40])
def test_mds_bound_high_precision(n):
    mpmath.mp.dps = 50
    k = n - 1
    ref = mpmath.exp(mpmath.pi * mpmath.sqrt(mpmath.mpf(2 * k) / 3)) / (4 * k * mpmath.sqrt(3))
    assert abs(bound_evaluate(n, "mds") - float(ref)) <= 1e-9 * float(ref)


def test_bound_rejects():
    with pytest.raises(RejectedInput):
        bound_evaluate(1)
    with pytest.raises(RejectedInput):
        bound_evaluate(4, "ternary")


def test_partition_values():
    assert [partition_count(k) for k in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert partition_count(10) == 42
    assert shapes_count(11) == (512, 42)
    assert partition_count(100) == 190569292
    for k in range(25):
        assert partition_count(k) == partitions_brute(k)


@pytest.mark.parametrize("n", range(2, 10))
def test_shapes_count_matches_enumeration(n):
    comps, parts = shapes_count(n)
    shapes = all_shapes(n)
    assert comps == len(shapes)
    assert parts == len({tuple(sorted(s.block_lengths)) for s in shapes})


def test_bound_spot_values():
    assert bound_evaluate(16) > bound_evaluate(8)
    assert f"{bound_evaluate(4):.6g}" == "0.762512"
    mds2 = bound_evaluate(2, "mds")
    assert mds2 == pytest.approx(float(mpmath.exp(mpmath.pi * mpmath.sqrt(mpmath.mpf(2) / 3)) / (4 * mpmath.sqrt(3))), rel=1e-12)
