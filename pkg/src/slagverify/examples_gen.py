"""Built-in example configurations.

All three families place axis-aligned products of planar segments (or
simplices) on affine slices of (R^3)^n and are designed so that the
full verification pipeline passes.
"""

from __future__ import annotations

import cmath
import math

from .core import AngleClass


def _planar(z: complex):
    return [0.0, float(z.real), float(z.imag)]


def generate_example(ex_id: int, **params) -> dict:
    if ex_id == 1:
        return _example_chain(**params)
    if ex_id == 2:
        return _example_projective(**params)
    if ex_id == 3:
        return _example_ladder(**params)
    raise ValueError(f"unknown example id {ex_id}")


def _rho_cycle(n: int, a):
    """Planar 2n-point cycle whose consecutive segments turn by (n+1)pi/n.

    For n >= 3 the points sit in pairs near the vertices of a regular
    n-gon, pushed outward by the parameters a_m > 1; n = 2 degenerates,
    so a plain rectangle with the same turning pattern is used instead.
    """
    if n == 2:
        w, h = float(a[0]), float(a[1])
        return [complex(w, h), complex(w, 0.0), 0j, complex(0.0, h)]
    bound = (1.0 - math.cos(2 * math.pi / n)) / (1.0 + math.cos(2 * math.pi / n))
    for am in a:
        if not 1.0 < am < 1.0 + bound:
            raise ValueError(
                f"need 1 < a_m < 1 + {bound:.6g} for separation at n = {n}"
            )
    v = [cmath.exp(2j * math.pi * m / n) for m in range(n + 2)]
    rho = []
    for m in range(1, n + 1):
        am = float(a[m - 1])
        rho.append(v[m - 1] + am * (v[m] - v[m - 1]))
        rho.append(v[m + 1] + am * (v[m] - v[m + 1]))
    # rotate so segment k points exactly along (n+1)k*pi/n
    theta0 = cmath.phase(rho[1] - rho[0]) - (n + 1) * math.pi / n
    spin = cmath.exp(-1j * theta0)
    return [z * spin for z in rho]


def _example_chain(n: int = 2, a=None, a_plus=None) -> dict:
    """A closed chain of 2n boxes on an arrangement of 2n^2 hyperplanes.

    Coordinates split into two groups: the second group runs the same
    planar cycle rotated by pi/n and shifted by one index, which keeps
    every box inside a single slice and makes all far pairs disjoint.
    """
    n = int(n)
    if n < 2:
        raise ValueError("chain example needs n >= 2")
    if a is None:
        a = [1.2] * n if n == 2 else None
        if a is None:
            bound = (1.0 - math.cos(2 * math.pi / n)) / (1.0 + math.cos(2 * math.pi / n))
            a = [1.0 + bound / 2.0] * n
    a = [float(x) for x in a]
    if len(a) != n:
        raise ValueError(f"need {n} shape parameters")
    if a_plus is None:
        a_plus = list(range(1, n // 2 + n % 2 + 1))
    plus = sorted(set(int(x) for x in a_plus))
    if not plus or min(plus) < 1 or max(plus) > n or len(plus) == n:
        raise ValueError("a_plus must be a proper nonempty subset of 1..n")
    zeta = _rho_cycle(n, a)
    m = 2 * n
    spin = cmath.exp(1j * math.pi / n)

    def point(k: int, alpha: int) -> complex:
        # coordinate groups: plus group uses the cycle, minus group the
        # rotated cycle shifted back by one (keeps directions parallel)
        if alpha in plus:
            return zeta[k % m]
        return zeta[(k - 1) % m] * spin

    lam = []
    u_rows = [[0] * (m * n) for _ in range(n)]
    for k in range(m):
        for alpha in range(1, n + 1):
            u_rows[alpha - 1][k * n + (alpha - 1)] = 1
            z = point(k, alpha)
            lam.append([0.0, -z.real, -z.imag])
    r = [abs(zeta[(k + 1) % m] - zeta[k]) for k in range(m)]
    polys = []
    for k in range(m):
        lo = []
        hi = []
        for alpha in range(1, n + 1):
            if alpha in plus:
                lo.append(0.0)
                hi.append(r[k])
            else:
                lo.append(-r[(k - 1) % m])
                hi.append(0.0)
        polys.append({
            "name": f"B{k + 1}",
            "q": [_planar(point(k, alpha)) for alpha in range(1, n + 1)],
            "theta": {"num": (n + 1) * (k + 1), "den": n},
            "base": {"type": "box", "lo": lo, "hi": hi},
            "scale": 1.0,
        })
    return {
        "torus": {"n": n, "d": m * n, "u": u_rows},
        "lambda": lam,
        "polytopes": polys,
        "quiver": "auto",
    }


def _example_projective(r1: float = 1.0, r2: float = 1.0) -> dict:
    """Four simplices glued in a cycle; five hyperplanes, rank 2."""
    r1, r2 = float(r1), float(r2)
    if r1 <= 0 or r2 <= 0:
        raise ValueError("scales must be positive")
    lam = [
        [0.0, 0.0, 0.0],          # shared diagonal hyperplane
        [0.0, 0.0, 0.0],
        [0.0, 0.0, r1],
        [0.0, -r2, -r1],
        [0.0, r2, 0.0],
    ]
    minus = lambda i: [-x for x in lam[i]]
    qs = [
        [minus(1), minus(2)],
        [minus(3), minus(2)],
        [minus(3), minus(4)],
        [minus(1), minus(4)],
    ]
    polys = [
        {
            "name": f"D{k}",
            "q": qs[k - 1],
            "theta": {"num": k, "den": 2},
            "base": {"type": "simplex"},
            "scale": r1 if k % 2 == 1 else r2,
        }
        for k in range(1, 5)
    ]
    return {
        "torus": {"n": 2, "d": 5, "u": [[1, 1, 0, 1, 0], [1, 0, 1, 0, 1]]},
        "lambda": lam,
        "polytopes": polys,
        "quiver": "auto",
    }


def _example_ladder(N: int = 1, a: float = 1.0, b: float = 1.0, c: float = 1.0,
                    heights=None) -> dict:
    """A ladder of N four-square cycles sharing corner boxes.

    The first factor is an a x b rectangle of four segments; the second
    factor is a row of vertical segments of height c over increasing
    base points, joined by top and bottom runs.
    """
    N = int(N)
    if N < 1:
        raise ValueError("ladder example needs N >= 1")
    a, b, c = float(a), float(b), float(c)
    if min(a, b, c) <= 0:
        raise ValueError("a, b, c must be positive")
    if heights is None:
        heights = [float(m) for m in range(N + 1)]
    heights = [float(x) for x in heights]
    if len(heights) != N + 1 or heights[0] != 0.0:
        raise ValueError("need N+1 base points starting at 0")
    if any(heights[i] >= heights[i + 1] for i in range(N)):
        raise ValueError("base points must increase strictly")
    lam = [
        [0.0, -a, 0.0],   # right-bottom corner point a
        [0.0, -a, -b],    # right-top corner a + i b
        [0.0, 0.0, -b],   # left-top corner i b
        [0.0, 0.0, 0.0],  # origin
    ]
    for am in heights:
        lam.append([0.0, -am, -c])
        lam.append([0.0, -am, 0.0])
    d = 2 * N + 6
    u_rows = [[1] * 4 + [0] * (2 * N + 2), [0] * 4 + [1] * (2 * N + 2)]
    boxes = {}

    def add(name, q1, q2, theta, lo, hi):
        entry = {
            "name": name,
            "q": [_planar(q1), _planar(q2)],
            "theta": theta,
            "base": {"type": "box", "lo": lo, "hi": hi},
            "scale": 1.0,
        }
        if name in boxes:
            assert boxes[name] == entry, f"inconsistent duplicate box {name}"
        boxes[name] = entry

    for m in range(N):
        am, am1 = heights[m], heights[m + 1]
        dm = am1 - am
        if m % 2 == 0:
            add(f"L{m}", 0j, complex(am, c), {"num": 1, "den": 2},
                [0.0, -c], [b, 0.0])
            add(f"T{m}", complex(0, b), complex(am, c), {"num": 1, "den": 1},
                [-a, -dm], [0.0, 0.0])
            add(f"R{m + 1}", complex(a, b), complex(am1, c), {"num": 3, "den": 2},
                [0.0, 0.0], [b, c])
            add(f"B{m}", 0j, complex(am, 0), {"num": 0, "den": 1},
                [0.0, 0.0], [a, dm])
        else:
            add(f"L{m + 1}", 0j, complex(am1, c), {"num": 1, "den": 2},
                [0.0, -c], [b, 0.0])
            add(f"T{m}", complex(0, b), complex(am1, 0), {"num": 1, "den": 1},
                [-a, 0.0], [0.0, dm])
            add(f"R{m}", complex(a, b), complex(am, c), {"num": 3, "den": 2},
                [0.0, 0.0], [b, c])
            add(f"B{m}", 0j, complex(am, c), {"num": 0, "den": 1},
                [0.0, 0.0], [a, dm])
    return {
        "torus": {"n": 2, "d": d, "u": u_rows},
        "lambda": lam,
        "polytopes": sorted(boxes.values(), key=lambda p: p["name"]),
        "quiver": "auto",
    }
