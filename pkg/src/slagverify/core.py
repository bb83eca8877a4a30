"""Exact scalar, lattice and quaternion primitives shared by every stage.

Angles that matter here are always rational multiples of pi, so they are
kept as reduced integer fractions rather than floats.  Lattice data
(integer matrices, determinants, ranks) is handled with exact integer
arithmetic; floating point only enters through the 3-vector geometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

# default tolerance for geometric comparisons in R^3 coordinates
EPS_GEOM = 1e-9
# default tolerance for eigenvalue branches / transversality checks
EPS_ANGLE = 1e-7


class DimensionError(ValueError):
    """Raised when vector or matrix shapes do not line up."""


@dataclass(frozen=True)
class AngleClass:
    """The angle (num/den)*pi, reduced, normalized into [0, 2*pi).

    Arithmetic wraps modulo 2*pi and stays exact.
    """

    num: int
    den: int = 1

    def __post_init__(self):
        if self.den == 0:
            raise ZeroDivisionError("angle denominator must be nonzero")
        f = Fraction(self.num, self.den) % 2
        object.__setattr__(self, "num", f.numerator)
        object.__setattr__(self, "den", f.denominator)

    @property
    def frac(self) -> Fraction:
        """The value divided by pi, as an exact fraction in [0, 2)."""
        return Fraction(self.num, self.den)

    @classmethod
    def from_fraction(cls, f: Fraction) -> "AngleClass":
        return cls(f.numerator, f.denominator)

    @classmethod
    def from_radians(cls, x: float, max_den: int, eps: float = EPS_GEOM) -> "AngleClass":
        """Snap a float angle to a rational multiple of pi.

        Fails unless some fraction with denominator <= max_den lands
        within eps of x (mod 2*pi).
        """
        f = Fraction(x / math.pi).limit_denominator(max_den)
        cand = cls.from_fraction(f)
        diff = (x - cand.radians()) % (2 * math.pi)
        if min(diff, 2 * math.pi - diff) > eps:
            raise ValueError(f"{x!r} is not a multiple of pi/k for k <= {max_den}")
        return cand

    def radians(self) -> float:
        return math.pi * self.num / self.den

    def cos(self) -> float:
        return math.cos(self.radians())

    def sin(self) -> float:
        return math.sin(self.radians())

    def __add__(self, other: "AngleClass") -> "AngleClass":
        return AngleClass.from_fraction(self.frac + other.frac)

    def __sub__(self, other: "AngleClass") -> "AngleClass":
        return AngleClass.from_fraction(self.frac - other.frac)

    def __neg__(self) -> "AngleClass":
        return AngleClass.from_fraction(-self.frac)

    def scale(self, k: int) -> "AngleClass":
        return AngleClass.from_fraction(self.frac * k)

    def is_zero_mod_pi(self) -> bool:
        return self.frac.denominator == 1

    def times_over_pi(self) -> Fraction:
        return self.frac

    def __str__(self):
        if self.num == 0:
            return "0"
        if self.den == 1:
            return f"{self.num}*pi" if self.num != 1 else "pi"
        head = "" if self.num == 1 else str(self.num)
        return f"{head}pi/{self.den}"


def cyclic_distance(l1: int, l2: int, m: int) -> int:
    """min_k |l1 - l2 + m*k|, the distance on Z/m."""
    if m <= 0:
        raise ValueError("modulus must be positive")
    r = (l1 - l2) % m
    return min(r, m - r)


def det_int(rows) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    a = [[int(x) for x in row] for row in rows]
    n = len(a)
    for row in a:
        if len(row) != n:
            raise DimensionError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def int_rank(rows) -> int:
    """Exact rank of an integer (or rational) matrix over Q."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, len(a)):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for i in range(len(a)):
            if i != row and a[i][col] != 0:
                c = a[i][col]
                a[i] = [x - c * y for x, y in zip(a[i], a[row])]
        row += 1
        rank += 1
        if row == len(a):
            break
    return rank


def unimodular_inverse(rows):
    """Inverse of an integer matrix with |det| = 1, as exact integers."""
    n = len(rows)
    d = det_int(rows)
    if abs(d) != 1:
        raise ValueError("matrix is not unimodular")
    # adjugate via cofactors; n is small everywhere we use this
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [rows[r][c] for c in range(n) if c != j]
                for r in range(n)
                if r != i
            ]
            adj[j][i] = ((-1) ** (i + j)) * det_int(minor)
    return [[adj[i][j] * d for j in range(n)] for i in range(n)]


def is_z_basis(vectors) -> bool:
    """Do the given n integer n-vectors form a basis of Z^n?"""
    vecs = [tuple(int(x) for x in v) for v in vectors]
    n = len(vecs)
    for v in vecs:
        if len(v) != n:
            raise DimensionError("need n vectors of length n")
    return abs(det_int(vecs)) == 1


def as_im_vector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise DimensionError(f"expected a 3-vector, got shape {arr.shape}")
    return arr


def as_flat_vector(v, n: int) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (n, 3):
        raise DimensionError(f"expected an ({n}, 3) array, got shape {arr.shape}")
    return arr


def sigma_of(theta: AngleClass) -> np.ndarray:
    """Unit vector (0, cos theta, sin theta) in the x2-x3 plane."""
    return np.array([0.0, theta.cos(), theta.sin()])


@dataclass(frozen=True)
class Quaternion:
    """w + x*i + y*j + z*k with float coefficients."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __mul__(self, o: "Quaternion") -> "Quaternion":
        return Quaternion(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        return math.sqrt(self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2)

    @classmethod
    def from_complex_pair(cls, z: complex, w: complex) -> "Quaternion":
        """Identify C^2 with H via x = z + w*j."""
        z = complex(z)
        w = complex(w)
        return cls(z.real, z.imag, w.real, w.imag)


def quaternion_moment(x: Quaternion) -> np.ndarray:
    """The imaginary part of x*i*conj(x) as a 3-vector."""
    i = Quaternion(0.0, 1.0, 0.0, 0.0)
    p = x * i * x.conjugate()
    return np.array([p.x, p.y, p.z])


def moment_c2(z: complex, w: complex) -> np.ndarray:
    """Moment of the quaternion z + w*j, directly in complex coordinates."""
    zw = z * w
    return np.array(
        [abs(z) ** 2 - abs(w) ** 2, 2.0 * zw.imag, -2.0 * zw.real]
    )
