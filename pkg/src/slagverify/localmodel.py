"""Flat local model on C^{2n} and characterizing angles of plane pairs.

Coordinates are (z_1..z_n, w_1..w_n).  The three standard 2-forms are

    omega_1(P, Q) = sum Im(conj(P_a) Q_a)          (over all 2n slots)
    (omega_2 + i omega_3)(P, Q) = sum (P_{z_i} Q_{w_i} - P_{w_i} Q_{z_i})

and omega^tau = tau_1 omega_1 + tau_2 omega_2 + tau_3 omega_3 for tau in R^3.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import EPS_ANGLE, EPS_GEOM, AngleClass, as_im_vector, moment_c2


def hopf(alpha: complex, beta: complex, eps: float = EPS_GEOM) -> np.ndarray:
    """(|a|^2 - |b|^2, 2 Im(ab), -2 Re(ab)) for a unit pair (a, b)."""
    a, b = complex(alpha), complex(beta)
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > eps:
        raise ValueError("hopf needs |alpha|^2 + |beta|^2 = 1")
    ab = a * b
    return np.array([abs(a) ** 2 - abs(b) ** 2, 2.0 * ab.imag, -2.0 * ab.real])


def hopf_lift(y, eps: float = EPS_GEOM):
    """Some (alpha, beta) with hopf(alpha, beta) = y, for unit y."""
    y = as_im_vector(y)
    if abs(np.linalg.norm(y) - 1.0) > eps:
        raise ValueError("hopf_lift needs a unit vector")
    aa = max(0.0, (1.0 + y[0]) / 2.0)
    alpha = math.sqrt(aa)
    if alpha > eps:
        beta = complex(-y[2], y[1]) / (2.0 * alpha)
    else:
        alpha = 0.0
        beta = 1.0 + 0.0j
    return alpha, beta


def _real_stack(basis: np.ndarray) -> np.ndarray:
    return np.vstack([basis.real, basis.imag])


@dataclass(frozen=True)
class FlatSubspace:
    """A real-linear subspace of C^{2n}, stored as a complex basis matrix."""

    n: int
    basis: np.ndarray  # (2n, k) complex; columns span over R

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=complex)
        if b.ndim != 2 or b.shape[0] != 2 * self.n:
            raise ValueError(f"basis must be (2n, k), got {b.shape}")
        # orthonormalize over R so later form evaluations are scale-free;
        # SVD is rank-revealing regardless of column order
        real = _real_stack(b)
        u, s, _ = np.linalg.svd(real, full_matrices=False)
        rank = int(np.sum(s > 1e-12 * max(1.0, float(s[0]) if s.size else 1.0)))
        q = u[:, :rank]
        m = b.shape[0]
        object.__setattr__(self, "basis", q[:m] + 1j * q[m:])

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        q = _real_stack(self.basis)
        return q @ q.T

    def distance(self, other: "FlatSubspace") -> float:
        return float(np.max(np.abs(self.projector() - other.projector())))


def v_subspace(i: int, y, n: int, eps: float = EPS_GEOM) -> FlatSubspace:
    """The invariant 2-plane {(alpha z, beta conj(z))} in factor i of C^{2n}.

    (alpha, beta) is any Hopf lift of the unit vector y; the plane does
    not depend on the choice.
    """
    if not 0 <= i < n:
        raise IndexError("factor index out of range")
    alpha, beta = hopf_lift(y, eps)
    cols = np.zeros((2 * n, 2), dtype=complex)
    for col, z in enumerate((1.0 + 0j, 1j)):
        cols[i, col] = alpha * z
        cols[n + i, col] = beta * z.conjugate()
    return FlatSubspace(n, cols)


def _omega1(p: np.ndarray, q: np.ndarray) -> float:
    return float(np.vdot(p, q).imag)


def _omega23(p: np.ndarray, q: np.ndarray, n: int) -> complex:
    return complex(np.sum(p[:n] * q[n:] - p[n:] * q[:n]))


def form_value(tau, p: np.ndarray, q: np.ndarray, n: int) -> float:
    tau = as_im_vector(tau)
    c = _omega23(p, q, n)
    return float(tau[0] * _omega1(p, q) + tau[1] * c.real + tau[2] * c.imag)


def orthonormal_frame(sigma, eps: float = EPS_GEOM):
    """Complete unit sigma to a right-handed orthonormal frame of R^3."""
    sigma = as_im_vector(sigma)
    if abs(np.linalg.norm(sigma) - 1.0) > eps:
        raise ValueError("sigma must be a unit vector")
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(sigma)))] = 1.0
    s1 = axis - (axis @ sigma) * sigma
    s1 = s1 / np.linalg.norm(s1)
    s2 = np.cross(sigma, s1)
    return s1, s2


def standard_form_restriction(v: FlatSubspace, sigma, eps: float = EPS_GEOM):
    """Max absolute values of omega^sigma' and omega^sigma'' on v.

    Both vanish exactly when v is isotropic for the two forms transverse
    to sigma, which is the defining condition used throughout.
    """
    s1, s2 = orthonormal_frame(sigma, eps)
    b = v.basis
    m1 = 0.0
    m2 = 0.0
    for a in range(v.dim):
        for c in range(a + 1, v.dim):
            m1 = max(m1, abs(form_value(s1, b[:, a], b[:, c], v.n)))
            m2 = max(m2, abs(form_value(s2, b[:, a], b[:, c], v.n)))
    return m1, m2


def form_gram(v: FlatSubspace, tau) -> np.ndarray:
    """Antisymmetric matrix of omega^tau on the orthonormal basis of v."""
    g = np.zeros((v.dim, v.dim))
    for a in range(v.dim):
        for c in range(v.dim):
            g[a, c] = form_value(tau, v.basis[:, a], v.basis[:, c], v.n)
    return g


@dataclass(frozen=True)
class InvariantDecomposition:
    signs: tuple  # epsilon_i in {+1, -1} per factor
    moment_rays_checked: bool


def decompose_invariant(v: FlatSubspace, sigma, eps: float = EPS_GEOM,
                        rng_seed: int = 0) -> InvariantDecomposition:
    """Split a torus-invariant isotropic 2n-plane into factor planes.

    Each factor-i projection must agree with the invariant plane of
    sigma or of -sigma; the sign vector is returned.  The moment image
    is validated by sampling: on factor i it must lie on the ray
    epsilon_i * R_{>=0} * sigma.
    """
    sigma = as_im_vector(sigma)
    if v.dim != 2 * v.n:
        raise ValueError("decompose_invariant needs a half-dimensional subspace")
    m1, m2 = standard_form_restriction(v, sigma, eps)
    tol = math.sqrt(eps)
    if max(m1, m2) > tol:
        raise ValueError("subspace is not isotropic for the transverse forms")
    signs = []
    for i in range(v.n):
        sub = np.zeros((2, v.dim), dtype=complex)
        sub[0] = v.basis[i]
        sub[1] = v.basis[v.n + i]
        local = FlatSubspace(1, sub)
        if local.dim != 2:
            raise ValueError(f"factor {i} projection is degenerate")
        plus = v_subspace(0, sigma, 1, eps)
        minus = v_subspace(0, -sigma, 1, eps)
        dp = local.distance(plus)
        dm = local.distance(minus)
        if dp < tol and dp <= dm:
            signs.append(1)
        elif dm < tol:
            signs.append(-1)
        else:
            raise ValueError(f"factor {i} plane matches neither +sigma nor -sigma")
    rng = np.random.default_rng(rng_seed)
    for _ in range(16):
        coeff = rng.standard_normal(v.dim)
        vec = v.basis @ coeff
        for i in range(v.n):
            mom = moment_c2(vec[i], vec[v.n + i])
            r = float(mom @ sigma) * signs[i]
            off = np.linalg.norm(mom - signs[i] * r * sigma)
            scale = max(1.0, float(np.linalg.norm(mom)))
            if r < -tol * scale or off > tol * scale:
                raise ValueError("sampled moment left the expected ray")
    return InvariantDecomposition(tuple(signs), True)


@dataclass(frozen=True)
class CharacterizingAngles:
    angles: tuple  # floats, sorted, each in (0, pi)
    orientation: int  # +1 or -1, det bookkeeping with det(R) = 1
    exact: Optional[tuple] = None  # AngleClass list when known exactly

    @property
    def m(self) -> int:
        return len(self.angles)


def _check_unitary(g: np.ndarray, eps: float) -> np.ndarray:
    g = np.asarray(g, dtype=complex)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ValueError("need a square matrix")
    if np.max(np.abs(g.conj().T @ g - np.eye(g.shape[0]))) > math.sqrt(eps):
        raise ValueError("matrix is not unitary")
    return g


def _sym_unitary_eig(m: np.ndarray):
    """Real orthogonal diagonalization of a unitary symmetric matrix.

    Re(m) and Im(m) are commuting real symmetric matrices; diagonalize
    the first, then the second inside each eigenspace.
    """
    a, b = m.real, m.imag
    n = m.shape[0]
    wa, qa = np.linalg.eigh(a)
    q = np.zeros((n, n))
    col = 0
    i = 0
    while i < n:
        j = i
        while j < n and abs(wa[j] - wa[i]) < 1e-8:
            j += 1
        block = qa[:, i:j]
        sub = block.T @ b @ block
        sub = (sub + sub.T) / 2.0
        _, qb = np.linalg.eigh(sub)
        q[:, col:col + (j - i)] = block @ qb
        col += j - i
        i = j
    return q


def characterizing_angles(g_plus, g_minus, eps_angle: float = EPS_ANGLE,
                          eps: float = EPS_GEOM) -> CharacterizingAngles:
    """Angles between two Lagrangian planes given by unitary framings.

    g_plus and g_minus map the planes onto R^m.  With P = g_plus *
    g_minus^{-1}, the matrix transpose(P) P is unitary symmetric; its
    eigenvalue arguments halve to the angle list.  A zero argument means
    the planes are not transverse, which is an error.
    """
    gp = _check_unitary(g_plus, eps)
    gm = _check_unitary(g_minus, eps)
    if gp.shape != gm.shape:
        raise ValueError("framings must have equal size")
    p = gp @ gm.conj().T
    m = p.T @ p
    q = _sym_unitary_eig(m)
    diag = q.T @ m @ q
    thetas = []
    for ell in range(m.shape[0]):
        mu = complex(diag[ell, ell])
        th = cmath.phase(mu) % (2 * math.pi)
        thetas.append(th)
    order = np.argsort(thetas)
    q = q[:, order]
    thetas = [thetas[k] for k in order]
    for th in thetas:
        if th < 2 * eps_angle or th > 2 * math.pi - 2 * eps_angle:
            raise ValueError("planes are not transverse (zero characterizing angle)")
    phase = np.exp(-0.5j * np.array(thetas))
    r = p @ q @ np.diag(phase)
    if np.max(np.abs(r.imag)) > 1e-6:
        raise ValueError("orthogonality bookkeeping failed; inputs degenerate?")
    det_r = np.linalg.det(r).real
    if det_r < 0:
        q[:, 0] = -q[:, 0]
        r = p @ q @ np.diag(phase)
    orientation = 1 if np.linalg.det(q) > 0 else -1
    phis = tuple(0.5 * th for th in thetas)
    return CharacterizingAngles(phis, orientation)


def hk_block(theta: float) -> np.ndarray:
    """Unitary 2x2 framing of the invariant plane with slice angle theta."""
    e = cmath.exp(-1j * theta)
    return np.array([[-1j, e], [-1.0, 1j * e]]) / math.sqrt(2.0)


def hk_angles(theta_plus: AngleClass, theta_minus: AngleClass, n: int,
              eps_angle: float = EPS_ANGLE) -> CharacterizingAngles:
    """Characterizing angles of two invariant Lagrangians in C^{2n}.

    Builds block-diagonal framings from the 2x2 model blocks, runs the
    generic computation, and checks the closed form: the angle is
    (theta_minus - theta_plus)/2 with multiplicity 2n, exactly.
    """
    delta = theta_minus - theta_plus
    if delta.is_zero_mod_pi():
        raise ValueError("slice angles agree mod pi; model not applicable")
    gp = np.kron(np.eye(n), hk_block(theta_plus.radians()))
    gm = np.kron(np.eye(n), hk_block(theta_minus.radians()))
    numeric = characterizing_angles(gp, gm, eps_angle)
    half = AngleClass(delta.num, 2 * delta.den)
    expect = half.radians()
    if any(abs(phi - expect) > 1e-9 for phi in numeric.angles):
        raise AssertionError("closed form and numeric angles disagree")
    return CharacterizingAngles(numeric.angles, numeric.orientation,
                                exact=tuple([half] * (2 * n)))


def intersection_type(angles: CharacterizingAngles, m: int,
                      eps_angle: float = EPS_ANGLE) -> int:
    """k with sum of angles = k*pi; requires 1 <= k <= m-1."""
    if angles.m != m:
        raise ValueError(f"expected {m} angles, got {angles.m}")
    if angles.exact is not None:
        total = sum((a.frac for a in angles.exact), start=0)
        if total.denominator != 1:
            raise ValueError("exact angle sum is not an integer multiple of pi")
        k = int(total)
    else:
        s = sum(angles.angles) / math.pi
        k = round(s)
        if abs(s - k) > eps_angle * m:
            raise ValueError("angle sum is not an integer multiple of pi")
    if not 1 <= k <= m - 1:
        raise ValueError(f"intersection type {k} outside [1, {m - 1}]")
    return k


def reverse_angles(angles: CharacterizingAngles) -> CharacterizingAngles:
    """Order reversal phi -> pi - phi (swapping the roles of the planes)."""
    rev = tuple(sorted(math.pi - a for a in angles.angles))
    exact = None
    if angles.exact is not None:
        exact = tuple(sorted((AngleClass(1, 1) - a for a in angles.exact),
                             key=lambda x: x.frac))
    return CharacterizingAngles(rev, angles.orientation, exact=exact)
