"""Cohomological obstructions against the glued family staying calibrated.

Each summand carries a slice angle theta = k*pi/n, an orientation sign
epsilon = (-1)^k and a positive volume.  A full-slice direction sigma
compatible with all summands must satisfy, for every summand,
(-1)^{k - k_a} cos^n((k - k_a) pi / n) = 1, which holds exactly when
k - k_a is a multiple of n.  If no k in {1..2n} works, no member of the
family can be calibrated by any slice direction, on top of a parity
obstruction from the first Betti number (a Kaehler manifold has even b1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import AngleClass
from .quiver import SummandExpression, first_betti


@dataclass(frozen=True)
class CalibratedSummand:
    theta: AngleClass
    epsilon: int
    volume: float

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        if not self.volume > 0:
            raise ValueError("volume must be positive")

    def k_index(self, n: int) -> int:
        """k in {1..2n} with theta = k*pi/n; consistency with epsilon enforced."""
        f = self.theta.frac * n
        if f.denominator != 1:
            raise ValueError(f"angle {self.theta} is not a multiple of pi/{n}")
        k = int(f) % (2 * n)
        if k == 0:
            k = 2 * n
        if self.epsilon != (-1) ** k:
            raise ValueError("epsilon is inconsistent with the angle parity")
        return k

    @classmethod
    def from_theta(cls, theta: AngleClass, n: int, volume: float) -> "CalibratedSummand":
        f = theta.frac * n
        if f.denominator != 1:
            raise ValueError(f"angle {theta} is not a multiple of pi/{n}")
        return cls(theta, (-1) ** (int(f) % 2), volume)


def pairing_volume(theta: AngleClass, n: int, volume: float) -> complex:
    """Pairing of the n-th calibration power with the class: e^{i n theta} V."""
    f = theta.frac * n  # multiple of pi
    half = f * 2
    if half.denominator == 1:
        table = {0: 1 + 0j, 1: 1j, 2: -1 + 0j, 3: -1j}
        phase = table[int(half) % 4]
    else:
        phase = cmath.exp(1j * math.pi * float(f))
    return phase * volume


def sl_sigma_candidates(n: int) -> tuple:
    """Slice angles sigma(k*pi/n), k in {1..2n}, the only possible full
    calibrating directions (the first slot of sigma must vanish)."""
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(AngleClass(k, n) for k in range(1, 2 * n + 1))


@dataclass(frozen=True)
class HlVerdict:
    never_hl: bool
    candidates: tuple  # surviving k values in {1..2n}

    def __bool__(self):
        return self.never_hl


def hl_obstruction(summands: Sequence[CalibratedSummand], n: int,
                   eps: float = 1e-12) -> HlVerdict:
    """Which full-slice directions calibrate every summand at once?

    Direction k survives iff k - k_a in n*Z for every summand a; that is
    exactly the condition (-1)^{k-k_a} cos^n((k-k_a) pi/n) = 1, which is
    also validated numerically for every (k, summand) pair.
    """
    if not summands:
        raise ValueError("need at least one summand")
    ks = [s.k_index(n) for s in summands]
    survivors = []
    for k in range(1, 2 * n + 1):
        ok = all((k - ka) % n == 0 for ka in ks)
        # numeric cross-check of the closed-form criterion
        for ka in ks:
            val = ((-1) ** (k - ka)) * math.cos((k - ka) * math.pi / n) ** n
            if ok and abs(val - 1.0) > eps:
                raise AssertionError("divisibility and cosine criteria disagree")
            if not ok and (k - ka) % n != 0 and abs(val - 1.0) <= eps:
                raise AssertionError("cosine criterion passed for a bad pair")
        if ok:
            survivors.append(k)
    return HlVerdict(not survivors, tuple(survivors))


@dataclass(frozen=True)
class ParityVerdict:
    never_hl_by_parity: bool
    b1: int

    def __bool__(self):
        return self.never_hl_by_parity


def parity_obstruction(expr: SummandExpression) -> ParityVerdict:
    """Odd first Betti number rules out any Kaehler structure."""
    b1 = first_betti(expr)
    return ParityVerdict(b1 % 2 == 1, b1)
