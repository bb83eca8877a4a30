"""Polytopes on affine slices of (R^3)^n and their intersections.

A base polytope lives in R^n as an H-representation with primitive
integer normals.  A slice polytope places a scaled copy on the affine
slice q + sigma(theta) (x) x.  Intersection classification between two
slice polytopes is the geometric heart of the verifier: the outcome is
"disjoint", a standard corner contact with an exact angle, or a
non-standard overlap (which downstream stages treat as fatal).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np
from scipy.optimize import linprog

from .core import (
    EPS_GEOM,
    AngleClass,
    as_flat_vector,
    det_int,
    sigma_of,
    unimodular_inverse,
)
from .arrangement import Arrangement, slice_trace


def _primitive(v) -> tuple:
    v = tuple(int(x) for x in v)
    g = 0
    for x in v:
        g = math.gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero normal vector")
    return tuple(x // g for x in v)


@dataclass(frozen=True)
class BasePolytope:
    """Bounded full-dimensional simple polytope {x : N x <= b} in R^n."""

    normals: tuple  # rows of integers, primitive
    offsets: tuple  # floats

    def __post_init__(self):
        norms = tuple(_primitive(row) for row in self.normals)
        offs = tuple(float(b) for b in self.offsets)
        if len(norms) != len(offs):
            raise ValueError("normals and offsets must pair up")
        if not norms:
            raise ValueError("empty H-representation")
        object.__setattr__(self, "normals", norms)
        object.__setattr__(self, "offsets", offs)

    @property
    def dim(self) -> int:
        return len(self.normals[0])

    @classmethod
    def box(cls, lo, hi) -> "BasePolytope":
        lo = [float(x) for x in lo]
        hi = [float(x) for x in hi]
        if len(lo) != len(hi) or any(l >= h for l, h in zip(lo, hi)):
            raise ValueError("box needs lo < hi per axis")
        n = len(lo)
        normals = []
        offsets = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            normals.append(tuple(e))
            offsets.append(hi[i])
            normals.append(tuple(-x for x in e))
            offsets.append(-lo[i])
        return cls(tuple(normals), tuple(offsets))

    @classmethod
    def simplex(cls, n: int) -> "BasePolytope":
        normals = []
        offsets = []
        for i in range(n):
            e = [0] * n
            e[i] = -1
            normals.append(tuple(e))
            offsets.append(0.0)
        normals.append(tuple([1] * n))
        offsets.append(1.0)
        return cls(tuple(normals), tuple(offsets))

    def contains(self, x, eps: float = EPS_GEOM) -> bool:
        x = np.asarray(x, dtype=float)
        scale = max(1.0, max(abs(b) for b in self.offsets))
        return all(
            float(np.dot(row, x)) <= b + eps * scale
            for row, b in zip(self.normals, self.offsets)
        )

    def vertices(self, eps: float = EPS_GEOM) -> np.ndarray:
        """All vertices, deduplicated and lexicographically sorted."""
        n = self.dim
        found = []
        for idx in combinations(range(len(self.normals)), n):
            mat = np.array([self.normals[i] for i in idx], dtype=float)
            if abs(np.linalg.det(mat)) < 1e-12:
                continue
            x = np.linalg.solve(mat, [self.offsets[i] for i in idx])
            if self.contains(x, eps):
                if not any(np.max(np.abs(x - v)) < 1e-7 for v in found):
                    found.append(x)
        if not found:
            raise ValueError("polytope has no vertices (empty or degenerate)")
        return np.array(sorted(found, key=tuple))

    def is_bounded(self) -> bool:
        a = np.array(self.normals, dtype=float)
        b = np.array(self.offsets, dtype=float)
        for i in range(self.dim):
            for s in (1.0, -1.0):
                c = np.zeros(self.dim)
                c[i] = -s  # maximize s * x_i
                res = linprog(c, A_ub=a, b_ub=b, bounds=[(None, None)] * self.dim,
                              method="highs")
                if res.status == 3:  # unbounded
                    return False
                if res.status != 0:
                    return False
        return True

    def validate(self, eps: float = EPS_GEOM):
        """Bounded, full-dimensional, simple, unimodular at each vertex."""
        if not self.is_bounded():
            raise ValueError("polytope is unbounded")
        verts = self.vertices(eps)
        if len(verts) < self.dim + 1:
            raise ValueError("polytope is not full-dimensional")
        rel = verts[1:] - verts[0]
        if np.linalg.matrix_rank(rel, tol=1e-9) < self.dim:
            raise ValueError("polytope is not full-dimensional")
        for v in verts:
            active = self.active_facets(v, eps)
            if len(active) != self.dim:
                raise ValueError("polytope has a non-simple vertex")
            mat = [self.normals[i] for i in active]
            if abs(det_int(mat)) != 1:
                raise ValueError("vertex normals are not unimodular")

    def active_facets(self, x, eps: float = EPS_GEOM):
        x = np.asarray(x, dtype=float)
        scale = max(1.0, max(abs(b) for b in self.offsets))
        return [
            i
            for i, (row, b) in enumerate(zip(self.normals, self.offsets))
            if abs(float(np.dot(row, x)) - b) < 10 * eps * scale
        ]

    def volume(self) -> float:
        verts = self.vertices()
        if self.dim == 1:
            return float(verts.max() - verts.min())
        from scipy.spatial import ConvexHull

        return float(ConvexHull(verts).volume)


def tangent_cone(base: BasePolytope, vertex, eps: float = EPS_GEOM):
    """Primitive integer edge generators at a simple vertex.

    Columns g_i satisfy a_j . g_i = -delta_ij scaled; concretely they
    are the columns of minus the inverse of the active normal matrix.
    Returned sorted for determinism.
    """
    active = base.active_facets(vertex, eps)
    if len(active) != base.dim:
        raise ValueError("tangent_cone needs a simple vertex")
    mat = [base.normals[i] for i in active]
    if abs(det_int(mat)) != 1:
        raise ValueError("active normals are not unimodular")
    inv = unimodular_inverse(mat)
    gens = [tuple(-inv[i][j] for i in range(base.dim)) for j in range(base.dim)]
    return tuple(sorted(gens))


@dataclass(frozen=True)
class SlicePolytope:
    """scale * base placed on the slice q + sigma(theta) (x) R^n."""

    name: str
    q: np.ndarray  # (n, 3)
    theta: AngleClass
    base: BasePolytope
    scale: float = 1.0

    def __post_init__(self):
        n = self.base.dim
        object.__setattr__(self, "q", as_flat_vector(self.q, n))
        if not self.scale > 0:
            raise ValueError("scale must be positive")

    @property
    def n(self) -> int:
        return self.base.dim

    def sigma(self) -> np.ndarray:
        return sigma_of(self.theta)

    def scaled_vertices(self) -> np.ndarray:
        return self.scale * self.base.vertices()

    def embed(self, x) -> np.ndarray:
        """Slice coordinates x in R^n to an (n, 3) ambient point."""
        x = np.asarray(x, dtype=float)
        return self.q + np.outer(x, self.sigma())

    def volume(self) -> float:
        """Euclidean n-volume of the scaled base."""
        return self.scale ** self.n * self.base.volume()

    def calibrated_volume(self) -> float:
        """n! (2 pi)^n times the euclidean volume."""
        return math.factorial(self.n) * (2 * math.pi) ** self.n * self.volume()


@dataclass(frozen=True)
class DelzantVerdict:
    ok: bool
    failures: tuple

    def __bool__(self):
        return self.ok


def check_sigma_delzant(poly: SlicePolytope, arr: Arrangement,
                        eps: float = EPS_GEOM) -> DelzantVerdict:
    """Is the slice polytope cut out by the arrangement?

    (a) every base facet lies inside the trace of some hyperplane,
    (b) no hyperplane trace meets the interior,
    (c) the base is bounded, full-dimensional, simple and unimodular.
    """
    failures = []
    try:
        poly.base.validate(eps)
    except ValueError as exc:
        return DelzantVerdict(False, ((f"base: {exc}"),))
    n = poly.n
    sigma = poly.sigma()
    traces = [slice_trace(arr, k, poly.q, sigma, eps) for k in range(arr.d)]
    verts = poly.scaled_vertices()
    scale_b = max(1.0, float(np.max(np.abs(verts))))
    # (a): facet {a.x = scale*b} must match a trace {u.x = c} with u = t*a
    for j, (a_row, b) in enumerate(zip(poly.base.normals, poly.base.offsets)):
        target = poly.scale * b
        matched = False
        for tr in traces:
            if tr.kind != "boundary":
                continue
            u = np.array(tr.normal, dtype=float)
            a_vec = np.array(a_row, dtype=float)
            # u = t * a for scalar t != 0?
            nz = int(np.argmax(np.abs(a_vec)))
            if abs(a_vec[nz]) < 0.5 or abs(u[nz]) < 0.5:
                continue
            t = u[nz] / a_vec[nz]
            if np.max(np.abs(u - t * a_vec)) > eps:
                continue
            if abs(tr.offset - t * target) <= eps * scale_b * max(1.0, abs(t)):
                matched = True
                break
        if not matched:
            failures.append(f"facet {j} lies on no hyperplane trace")
    # (b): no trace through the interior
    for k, tr in enumerate(traces):
        if tr.kind != "boundary":
            continue
        vals = verts @ np.array(tr.normal, dtype=float)
        lo, hi = float(vals.min()), float(vals.max())
        tol = eps * scale_b * max(1.0, float(np.max(np.abs(tr.normal))))
        if lo + tol < tr.offset < hi - tol:
            failures.append(f"hyperplane {k} cuts the interior")
    return DelzantVerdict(not failures, tuple(failures))


@dataclass(frozen=True)
class IntersectionRecord:
    kind: str  # "disjoint" | "standard" | "non-standard"
    point: Optional[np.ndarray] = None  # shared ambient point, (n, 3)
    angle: Optional[AngleClass] = None  # in (0, 2 pi)
    psi: Optional[tuple] = None  # unimodular normalizer, rows
    cone: Optional[tuple] = None  # common cone generators, columns
    eff_theta_a: Optional[AngleClass] = None
    eff_theta_b: Optional[AngleClass] = None
    detail: str = ""


def _is_signed_permutation(mat, sign: int) -> bool:
    """Is sign * mat a permutation matrix?"""
    n = len(mat)
    seen = set()
    for j in range(n):
        col = [sign * mat[i][j] for i in range(n)]
        ones = [i for i, x in enumerate(col) if x == 1]
        if len(ones) != 1 or any(x != 0 for i, x in enumerate(col) if i != ones[0]):
            return False
        if ones[0] in seen:
            return False
        seen.add(ones[0])
    return True


def _membership_tol(poly: SlicePolytope, eps: float) -> float:
    return eps * max(1.0, float(np.max(np.abs(poly.scaled_vertices()))))


def _parallel_branch(pa: SlicePolytope, pb: SlicePolytope, delta,
                     same_dir: bool, eps: float) -> IntersectionRecord:
    sigma = pa.sigma()
    n = pa.n
    shift = np.zeros(n)
    for i in range(n):
        s = float(delta[i] @ sigma)
        off = np.linalg.norm(delta[i] - s * sigma)
        if off > eps * max(1.0, float(np.linalg.norm(delta[i]))):
            return IntersectionRecord("disjoint", detail="parallel slices, offset apart")
        shift[i] = s
    # feasibility of {x in scaled A} and {tau*(x - shift) in scaled B}
    tau = 1.0 if same_dir else -1.0
    rows = []
    rhs = []
    for a_row, b in zip(pa.base.normals, pa.base.offsets):
        rows.append(list(a_row))
        rhs.append(pa.scale * b)
    for a_row, b in zip(pb.base.normals, pb.base.offsets):
        rows.append([tau * v for v in a_row])
        rhs.append(pb.scale * b + tau * float(np.dot(a_row, shift)))
    a_ub = np.array(rows, dtype=float)
    b_ub = np.array(rhs, dtype=float)
    res = linprog(np.zeros(n), A_ub=a_ub, b_ub=b_ub,
                  bounds=[(None, None)] * n, method="highs")
    if res.status == 2:  # infeasible
        return IntersectionRecord("disjoint", detail="parallel slices, bases disjoint")
    if res.status != 0:
        raise RuntimeError(f"feasibility solve failed with status {res.status}")
    return IntersectionRecord("non-standard",
                              detail="parallel slices overlap; corner test undecidable")


def classify_intersection(pa: SlicePolytope, pb: SlicePolytope,
                          eps: float = EPS_GEOM) -> IntersectionRecord:
    """Disjoint / standard corner contact / non-standard overlap.

    For transverse slice directions the candidate contact point is
    solved per coordinate; a standard contact needs it to be a vertex
    of both polytopes whose tangent cones match under one unimodular
    map, up to independent sign flips of the slice directions.  The
    reported angle is the exact difference of the effective directions.
    """
    if pa.n != pb.n:
        raise ValueError("polytopes live in different ranks")
    n = pa.n
    diff = pb.theta - pa.theta
    delta = pb.q - pa.q
    if diff.is_zero_mod_pi():
        return _parallel_branch(pa, pb, delta, diff.num == 0, eps)
    sa, sb = pa.sigma(), pb.sigma()
    mat = np.array([[sa[1], -sb[1]], [sa[2], -sb[2]]])
    x = np.zeros(n)
    y = np.zeros(n)
    for i in range(n):
        if abs(delta[i][0]) > eps * max(1.0, float(np.linalg.norm(delta[i]))):
            return IntersectionRecord("disjoint", detail="offsets leave the common plane")
        sol = np.linalg.solve(mat, delta[i][1:])
        x[i], y[i] = sol
    tol_a = _membership_tol(pa, eps)
    tol_b = _membership_tol(pb, eps)
    if not pa.base.contains(x / pa.scale, tol_a / pa.scale):
        return IntersectionRecord("disjoint", detail="contact candidate misses A")
    if not pb.base.contains(y / pb.scale, tol_b / pb.scale):
        return IntersectionRecord("disjoint", detail="contact candidate misses B")
    point = pa.embed(x)
    va = pa.scaled_vertices()
    vb = pb.scaled_vertices()
    ia = [k for k, v in enumerate(va) if np.max(np.abs(v - x)) < 100 * tol_a]
    ib = [k for k, v in enumerate(vb) if np.max(np.abs(v - y)) < 100 * tol_b]
    if not ia or not ib:
        return IntersectionRecord("non-standard", point=point,
                                  detail="shared point is not a vertex of both")
    ga = tangent_cone(pa.base, va[ia[0]] / pa.scale, eps)
    gb = tangent_cone(pb.base, vb[ib[0]] / pb.scale, eps)
    # columns of the generator matrices
    ga_m = [[g[i] for g in ga] for i in range(n)]
    gb_m = [[g[i] for g in gb] for i in range(n)]
    inv_a = unimodular_inverse(ga_m)
    prod = [
        [sum(inv_a[i][k] * gb_m[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    if _is_signed_permutation(prod, 1):
        eff_a, eff_b = pa.theta, pb.theta
    elif _is_signed_permutation(prod, -1):
        eff_a, eff_b = pa.theta, pb.theta + AngleClass(1, 1)
    else:
        return IntersectionRecord("non-standard", point=point,
                                  detail="tangent cones do not match under GL(n, Z)")
    angle = eff_b - eff_a
    psi = tuple(tuple(row) for row in inv_a)
    return IntersectionRecord("standard", point=point, angle=angle, psi=psi,
                              cone=ga, eff_theta_a=eff_a, eff_theta_b=eff_b)
