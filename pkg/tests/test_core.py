import math
from fractions import Fraction

import numpy as np
import pytest

from slagverify.core import (
    AngleClass,
    Quaternion,
    cyclic_distance,
    det_int,
    int_rank,
    is_z_basis,
    moment_c2,
    quaternion_moment,
    sigma_of,
    unimodular_inverse,
)


def test_angle_normalization():
    assert AngleClass(5, 2) == AngleClass(1, 2)
    assert AngleClass(-1, 2) == AngleClass(3, 2)
    assert AngleClass(4, 2) == AngleClass(0, 1)
    assert AngleClass(6, 4) == AngleClass(3, 2)


def test_angle_arithmetic():
    # pi/3 + pi/2 = 5pi/6
    assert AngleClass(1, 3) + AngleClass(1, 2) == AngleClass(5, 6)
    # 3pi/2 + pi wraps to pi/2
    assert AngleClass(3, 2) + AngleClass(1, 1) == AngleClass(1, 2)
    assert AngleClass(1, 4) - AngleClass(1, 2) == AngleClass(7, 4)
    assert -AngleClass(1, 3) == AngleClass(5, 3)


def test_angle_associativity_exhaustive():
    grid = [AngleClass(k, d) for d in (1, 2, 3, 4) for k in range(2 * d)]
    for a in grid[:8]:
        for b in grid[::3]:
            for c in grid[::5]:
                assert (a + b) + c == a + (b + c)


def test_angle_snap():
    x = AngleClass(3, 4).radians() + 1e-12
    assert AngleClass.from_radians(x, max_den=4) == AngleClass(3, 4)
    with pytest.raises(ValueError):
        AngleClass.from_radians(1.0, max_den=6)


def test_angle_radians_and_sigma():
    th = AngleClass(1, 2)
    assert th.radians() == pytest.approx(math.pi / 2)
    assert np.allclose(sigma_of(th), [0, 0, 1], atol=1e-15)
    assert np.allclose(sigma_of(AngleClass(1, 1)), [0, -1, 0], atol=1e-15)


def test_cyclic_distance_values():
    assert cyclic_distance(1, 4, 4) == 1
    assert cyclic_distance(1, 3, 4) == 2
    assert cyclic_distance(2, 2, 6) == 0
    assert cyclic_distance(0, 5, 6) == 1


def test_cyclic_distance_triangle_exhaustive():
    for m in range(1, 11):
        for a in range(m):
            for b in range(m):
                for c in range(m):
                    assert (
                        cyclic_distance(a, c, m)
                        <= cyclic_distance(a, b, m) + cyclic_distance(b, c, m)
                    )


def test_det_int_against_numpy():
    rng = np.random.default_rng(7)
    for _ in range(100):
        n = rng.integers(1, 6)
        mat = rng.integers(-5, 6, size=(n, n))
        assert det_int(mat.tolist()) == round(np.linalg.det(mat))


def test_int_rank_against_numpy():
    rng = np.random.default_rng(11)
    for _ in range(100):
        r, c = rng.integers(1, 6, size=2)
        mat = rng.integers(-4, 5, size=(r, c))
        assert int_rank(mat.tolist()) == np.linalg.matrix_rank(mat)


def test_unimodular_inverse():
    rng = np.random.default_rng(3)
    for _ in range(50):
        n = rng.integers(1, 5)
        # random unimodular via integer row operations on the identity
        mat = np.eye(n, dtype=int)
        for _ in range(8):
            i, j = rng.integers(0, n, size=2)
            if i != j:
                mat[i] += int(rng.integers(-2, 3)) * mat[j]
        inv = np.array(unimodular_inverse(mat.tolist()))
        assert np.array_equal(mat @ inv, np.eye(n, dtype=int))
    with pytest.raises(ValueError):
        unimodular_inverse([[2, 0], [0, 1]])


def test_is_z_basis():
    assert is_z_basis([(1, 0), (0, 1)])
    assert is_z_basis([(1, 1), (0, 1)])
    assert not is_z_basis([(2, 0), (0, 1)])
    assert not is_z_basis([(1, 1), (1, 1)])


def test_is_z_basis_invariance():
    rng = np.random.default_rng(5)
    for _ in range(50):
        vecs = rng.integers(-4, 5, size=(3, 3))
        base = is_z_basis(vecs.tolist())
        perm = rng.permutation(3)
        assert is_z_basis(vecs[perm].tolist()) == base
        flip = vecs.copy()
        flip[0] = -flip[0]
        assert is_z_basis(flip.tolist()) == base


def test_quaternion_moment_basics():
    one = Quaternion(1.0)
    assert np.allclose(quaternion_moment(one), [1, 0, 0])
    rng = np.random.default_rng(13)
    for _ in range(50):
        q = Quaternion(*rng.standard_normal(4))
        mom = quaternion_moment(q)
        assert np.linalg.norm(mom) == pytest.approx(q.norm() ** 2, abs=1e-10)


def test_quaternion_multiplicative_norm():
    rng = np.random.default_rng(17)
    for _ in range(50):
        p = Quaternion(*rng.standard_normal(4))
        q = Quaternion(*rng.standard_normal(4))
        assert (p * q).norm() == pytest.approx(p.norm() * q.norm(), rel=1e-12)


def test_moment_complex_route_matches_quaternion():
    rng = np.random.default_rng(19)
    for _ in range(50):
        z = complex(*rng.standard_normal(2))
        w = complex(*rng.standard_normal(2))
        via_q = quaternion_moment(Quaternion.from_complex_pair(z, w))
        assert np.allclose(via_q, moment_c2(z, w), atol=1e-12)
