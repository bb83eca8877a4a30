import numpy as np
import pytest

from slagverify.arrangement import (
    Arrangement,
    GuardError,
    TorusDatum,
    check_smooth,
    common_intersection,
    slice_trace,
)


def projective_arrangement(r1=1.0, r2=1.0):
    lam = [
        [0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0],
        [0.0, 0.0, r1],
        [0.0, -r2, -r1],
        [0.0, r2, 0.0],
    ]
    torus = TorusDatum(2, 5, ((1, 1, 0, 1, 0), (1, 0, 1, 0, 1)))
    return Arrangement(torus, tuple(tuple(row) for row in lam))


def test_torus_datum_validation():
    TorusDatum(1, 2, ((1, 1),))
    TorusDatum(2, 2, ((1, 0), (0, 1)))
    with pytest.raises(ValueError):
        TorusDatum(1, 1, ((2,),))  # index 2 sublattice, not surjective
    with pytest.raises(ValueError):
        TorusDatum(2, 2, ((2, 0), (0, 1)))
    with pytest.raises(ValueError):
        TorusDatum(2, 1, ((1,), (1,)))  # rank 1, cannot surject onto Z^2


def test_single_hyperplane_solution():
    arr = Arrangement(TorusDatum(1, 1, ((1,),)), ((0.0, 2.0, -3.0),))
    res = common_intersection(arr, [0])
    assert res.kind == "point"
    assert res.dim == 0
    assert np.allclose(res.point, [[0.0, -2.0, 3.0]])


def test_common_intersection_kinds():
    arr = projective_arrangement()
    # rank-2 pair meets in a point of (R^3)^2
    res = common_intersection(arr, [0, 1])
    assert res.kind == "point" and res.dim == 0
    # parallel distinct hyperplanes (same normal e_2, different offsets)
    res = common_intersection(arr, [1, 3])
    assert res.kind == "empty"
    # a single hyperplane in n = 2 leaves a 3-dimensional family
    res = common_intersection(arr, [0])
    assert res.kind == "subspace" and res.dim == 3


def test_common_intersection_rejects_bad_index():
    arr = projective_arrangement()
    with pytest.raises(IndexError):
        common_intersection(arr, [0, 9])
    with pytest.raises(ValueError):
        common_intersection(arr, [])


def test_projective_arrangement_is_smooth():
    verdict = check_smooth(projective_arrangement())
    assert bool(verdict)
    assert verdict.witness is None


def test_smoothness_detects_triple_point():
    # collapse hyperplane 3 onto hyperplane 1: indices {1, 3} then share
    # the normal e_2 and the offset, so {0, 1, 3} has a common point
    lam = [
        [0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
    ]
    torus = TorusDatum(2, 5, ((1, 1, 0, 1, 0), (1, 0, 1, 0, 1)))
    verdict = check_smooth(Arrangement(torus, tuple(tuple(r) for r in lam)))
    assert not verdict
    tau, reason = verdict.witness
    assert reason == "n+1 hyperplanes meet"
    assert set(tau) <= {0, 1, 3}


def test_smoothness_detects_non_basis_pair():
    # normals (1, 1) and (-1, 1) span an index-2 sublattice but still meet;
    # the third column restores surjectivity and is shifted off the origin
    torus = TorusDatum(2, 3, ((1, -1, 1), (1, 1, 0)))
    lam = ((0.0, 0.0, 0.0), (0.0, 0.0, 0.0), (0.0, 1.0, 0.0))
    verdict = check_smooth(Arrangement(torus, lam))
    assert not verdict
    tau, reason = verdict.witness
    assert tau == (0, 1)
    assert reason == "non-basis subset with common point"


def test_smoothness_invariant_under_hyperplane_permutation():
    arr = projective_arrangement()
    rng = np.random.default_rng(23)
    u = np.array(arr.torus.u)
    lam = np.array(arr.lam)
    for _ in range(10):
        perm = rng.permutation(arr.d)
        torus = TorusDatum(arr.n, arr.d, tuple(tuple(int(x) for x in row)
                                               for row in u[:, perm]))
        shuffled = Arrangement(torus, tuple(tuple(v) for v in lam[perm]))
        assert bool(check_smooth(shuffled))


def test_subset_guard_trips():
    d = 5000
    torus = TorusDatum(1, d, (tuple([1] * d),))
    lam = tuple((0.0, float(k), 0.0) for k in range(d))
    arr = Arrangement(torus, lam)
    with pytest.raises(GuardError):
        check_smooth(arr)


def test_slice_trace_cases():
    arr = projective_arrangement(1.0, 1.0)
    sigma = np.array([0.0, 0.0, 1.0])
    # slice through the D1 base point
    q = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, -1.0]])
    # hyperplane 0 traces the diagonal facet x_1 + x_2 = 1
    tr = slice_trace(arr, 0, q, sigma)
    assert tr.kind == "boundary"
    assert tr.normal == (1, 1)
    assert tr.offset == pytest.approx(1.0, abs=1e-12)
    # hyperplane 2: offset r1 = 1 along sigma in the second slot
    tr = slice_trace(arr, 2, q, sigma)
    assert tr.kind == "boundary"
    assert tr.normal == (0, 1)
    assert tr.offset == pytest.approx(0.0, abs=1e-12)
    # hyperplane 4 sits at a sideways displacement, no trace on this slice
    tr = slice_trace(arr, 4, q, sigma)
    assert tr.kind == "empty"


def test_slice_trace_rejects_non_unit_sigma():
    arr = projective_arrangement()
    q = np.zeros((2, 3))
    with pytest.raises(ValueError):
        slice_trace(arr, 0, q, np.array([0.0, 0.0, 2.0]))
