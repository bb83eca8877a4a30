"""Hyperplane arrangements attached to torus quotient data.

The ambient space is (R^3)^n.  Hyperplane k is the solution set of
<y, u_k> + lambda_k = 0, where the pairing acts componentwise on the
three R^3 slots, u_k is the k-th column of an integer n x d matrix of
full rank, and lambda_k is a 3-vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from .core import (
    EPS_GEOM,
    DimensionError,
    as_im_vector,
    det_int,
    int_rank,
    is_z_basis,
)

# refuse blind subset sweeps beyond this many combinations
SUBSET_GUARD = 10_000_000


class GuardError(RuntimeError):
    """Raised when a combinatorial sweep would be unreasonably large."""


@dataclass(frozen=True)
class TorusDatum:
    """Integer matrix u in Hom(Z^d, Z^n), stored as n rows of length d."""

    n: int
    d: int
    u: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.u)
        object.__setattr__(self, "u", rows)
        if self.n < 1 or self.d < self.n:
            raise DimensionError("need 1 <= n <= d")
        if len(rows) != self.n or any(len(r) != self.d for r in rows):
            raise DimensionError("u must be an n x d integer matrix")
        if not self._surjective():
            raise ValueError("u does not map Z^d onto Z^n")

    def _surjective(self) -> bool:
        # onto Z^n iff the gcd of all maximal minors is 1
        g = 0
        for cols in combinations(range(self.d), self.n):
            minor = [[self.u[i][j] for j in cols] for i in range(self.n)]
            g = math.gcd(g, abs(det_int(minor)))
            if g == 1:
                return True
        return g == 1

    def column(self, k: int) -> tuple:
        return tuple(self.u[i][k] for i in range(self.n))


@dataclass(frozen=True)
class Arrangement:
    torus: TorusDatum
    lam: np.ndarray  # (d, 3) offsets

    def __post_init__(self):
        arr = np.asarray(self.lam, dtype=float)
        if arr.shape != (self.torus.d, 3):
            raise DimensionError(
                f"lambda must have shape ({self.torus.d}, 3), got {arr.shape}"
            )
        object.__setattr__(self, "lam", arr)

    @property
    def n(self) -> int:
        return self.torus.n

    @property
    def d(self) -> int:
        return self.torus.d


@dataclass(frozen=True)
class IntersectionResult:
    kind: str  # "empty" | "point" | "subspace"
    dim: int
    point: Optional[np.ndarray]  # an (n, 3) solution when one exists
    residual: float


def common_intersection(arr: Arrangement, tau, eps: float = EPS_GEOM) -> IntersectionResult:
    """Intersection of the hyperplanes indexed by tau.

    Solves <y, u_k> = -lambda_k componentwise; the three R^3 slots share
    one coefficient matrix, so consistency is a single least-squares
    residual test.  Rank is computed exactly on the integer matrix.
    """
    tau = sorted(set(int(k) for k in tau))
    if not tau:
        raise ValueError("tau must be nonempty")
    if any(k < 0 or k >= arr.d for k in tau):
        raise IndexError("hyperplane index out of range")
    u_rows = [arr.torus.column(k) for k in tau]
    b = np.array([-arr.lam[k] for k in tau])  # (|tau|, 3)
    rank = int_rank(u_rows)
    mat = np.array(u_rows, dtype=float)
    sol, *_ = np.linalg.lstsq(mat, b, rcond=None)
    resid = float(np.max(np.abs(mat @ sol - b))) if len(tau) else 0.0
    scale = max(1.0, float(np.max(np.abs(b))) if b.size else 1.0)
    if resid > eps * scale:
        return IntersectionResult("empty", -1, None, resid)
    dim = 3 * (arr.n - rank)
    kind = "point" if dim == 0 else "subspace"
    return IntersectionResult(kind, dim, sol, resid)


@dataclass(frozen=True)
class SmoothVerdict:
    smooth: bool
    witness: Optional[tuple]  # (subset, reason) for the first violation

    def __bool__(self):
        return self.smooth


def check_smooth(arr: Arrangement, eps: float = EPS_GEOM, force: bool = False) -> SmoothVerdict:
    """Smoothness test for the quotient attached to the arrangement.

    Two conditions, both checked in both directions:
      * every (n+1)-subset of hyperplanes has empty intersection;
      * an n-subset has nonempty intersection exactly when its normals
        form a Z-basis of Z^n.
    Returns the lexicographically first violating subset, if any.
    """
    n, d = arr.n, arr.d
    if not force and math.comb(d, n + 1) > SUBSET_GUARD:
        raise GuardError(
            f"C({d}, {n + 1}) subsets exceed the sweep guard; pass force=True"
        )
    if d >= n + 1:
        for tau in combinations(range(d), n + 1):
            res = common_intersection(arr, tau, eps)
            if res.kind != "empty":
                return SmoothVerdict(False, (tau, "n+1 hyperplanes meet"))
    for tau in combinations(range(d), n):
        basis = is_z_basis([arr.torus.column(k) for k in tau])
        res = common_intersection(arr, tau, eps)
        nonempty = res.kind != "empty"
        if basis and not nonempty:
            return SmoothVerdict(False, (tau, "basis subset with empty intersection"))
        if nonempty and not basis:
            return SmoothVerdict(False, (tau, "non-basis subset with common point"))
    return SmoothVerdict(True, None)


@dataclass(frozen=True)
class SliceTrace:
    kind: str  # "empty" | "boundary"
    normal: Optional[tuple]  # integer normal in slice coordinates
    offset: Optional[float]


def slice_trace(arr: Arrangement, k: int, q: np.ndarray, sigma: np.ndarray,
                eps: float = EPS_GEOM) -> SliceTrace:
    """Trace of hyperplane k on the affine slice {q + sigma (x) x : x in R^n}.

    With v := <q, u_k> + lambda_k, the slice meets the hyperplane iff v
    is parallel to sigma, and then the trace is {x : u_k . x = -v.sigma}.
    """
    sigma = as_im_vector(sigma)
    if abs(np.linalg.norm(sigma) - 1.0) > eps:
        raise ValueError("sigma must be a unit vector")
    u_k = arr.torus.column(k)
    v = np.zeros(3)
    for i in range(arr.n):
        v = v + q[i] * u_k[i]
    v = v + arr.lam[k]
    c = float(v @ sigma)
    resid = np.linalg.norm(v - c * sigma)
    scale = max(1.0, float(np.linalg.norm(v)))
    if resid > eps * scale:
        return SliceTrace("empty", None, None)
    return SliceTrace("boundary", u_k, -c)
