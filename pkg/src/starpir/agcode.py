"""One-point evaluation codes on elliptic curves over small prime fields.

Curves are short Weierstrass y^2 = x^3 + ax + b over GF(p), p > 3 prime,
with points found by exhaustive enumeration.  The only divisors used are
multiples of the point at infinity, where the function space has the
closed-form monomial basis {x^i y^j : 2i + 3j <= mult, j <= 1}; no
general divisor machinery is needed.  Duals are computed as matrix
kernels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .code import LinearCode
from .gf import field_create, is_prime


@dataclass(frozen=True)
class EllipticCurve:
    """y^2 = x^3 + ax + b over GF(p) with its affine rational points."""

    p: int
    a: int
    b: int
    affine_points: tuple[tuple[int, int], ...]

    @property
    def num_points(self) -> int:
        """Rational point count including the point at infinity."""
        return len(self.affine_points) + 1

    def __repr__(self):
        return (f"EllipticCurve(y^2 = x^3 + {self.a}x + {self.b} over GF({self.p}), "
                f"{self.num_points} points)")


def hasse_interval(p: int) -> tuple[float, float]:
    """Open interval (p + 1 - 2 sqrt(p), p + 1 + 2 sqrt(p))."""
    s = 2 * math.sqrt(p)
    return (p + 1 - s, p + 1 + s)


def curve_points(p: int, a: int, b: int) -> EllipticCurve:
    """Enumerate the rational points; rejects singular curves."""
    if not is_prime(p) or p <= 3:
        raise ValueError("need a prime p > 3")
    a %= p
    b %= p
    if (4 * a ** 3 + 27 * b ** 2) % p == 0:
        raise ValueError(f"singular curve: 4a^3 + 27b^2 = 0 over GF({p})")
    roots: dict[int, list[int]] = {}
    for y in range(p):
        roots.setdefault(y * y % p, []).append(y)
    pts = []
    for x in range(p):
        rhs = (x * x * x + a * x + b) % p
        for y in roots.get(rhs, ()):
            pts.append((x, y))
    curve = EllipticCurve(p, a, b, tuple(pts))
    lo, hi = hasse_interval(p)
    if not lo <= curve.num_points <= hi:
        raise RuntimeError("point count violates the Hasse window")  # unreachable
    return curve


def all_curves(p: int) -> Iterator[EllipticCurve]:
    """Nonsingular curves over GF(p) in lexicographic (a, b) order."""
    for a in range(p):
        for b in range(p):
            if (4 * a ** 3 + 27 * b ** 2) % p == 0:
                continue
            yield curve_points(p, a, b)


def curve_search(p: int, num_points: int) -> EllipticCurve:
    """First curve in (a, b) order with the requested point count.

    Counts strictly inside the Hasse interval are always achievable over
    a prime field, so failure inside the window is unreachable.
    """
    lo, hi = hasse_interval(p)
    if not lo < num_points < hi:
        raise ValueError(
            f"{num_points} points is outside the Hasse window ({lo:.2f}, {hi:.2f}) for p={p}")
    for curve in all_curves(p):
        if curve.num_points == num_points:
            return curve
    raise RuntimeError(f"no curve over GF({p}) with {num_points} points")


def one_point_basis(mult: int) -> list[tuple[int, int]]:
    """Monomial exponents (i, j) for x^i y^j with pole order 2i + 3j <= mult."""
    return [(i, j) for j in (0, 1) for i in range(mult // 2 + 1)
            if 2 * i + 3 * j <= mult]


def ag_one_point(curve: EllipticCurve, points: Sequence[tuple[int, int]],
                 mult: int) -> LinearCode:
    """Evaluation code of the order-mult pole space at the given affine points.

    Needs 0 < mult < n; the code has dimension exactly mult and minimum
    distance at least n - mult.
    """
    n = len(points)
    if not 0 < mult < n:
        raise ValueError("need 0 < mult < number of evaluation points")
    if len(set(points)) != n:
        raise ValueError("evaluation points must be distinct")
    pset = set(curve.affine_points)
    if any(pt not in pset for pt in points):
        raise ValueError("evaluation point not on the curve")
    basis = one_point_basis(mult)
    if len(basis) != mult:
        raise RuntimeError("pole-space basis size mismatch")  # unreachable
    F = field_create(curve.p)
    rows = []
    for i, j in basis:
        rows.append([pow(x, i, curve.p) * pow(y, j, curve.p) % curve.p
                     for (x, y) in points])
    code = LinearCode.from_generator(F, rows, n=n)
    if code.k != mult:
        raise RuntimeError("evaluation map lost rank")  # n > mult makes it injective
    return code


@dataclass(frozen=True)
class AgCandidate:
    curve: EllipticCurve
    points: tuple[tuple[int, int], ...]
    code: LinearCode


def elliptic_code_search(p: int, n: int, mult: int,
                         dual_distance: int | None = None,
                         max_candidates: int = 4096) -> AgCandidate:
    """First (curve, n-point subset) whose one-point code has the requested
    dual distance (any, if None).  Deterministic lexicographic order."""
    tried = 0
    for curve in all_curves(p):
        if len(curve.affine_points) < n:
            continue
        for subset in combinations(curve.affine_points, n):
            code = ag_one_point(curve, subset, mult)
            tried += 1
            if dual_distance is None or code.dual().min_distance() == dual_distance:
                return AgCandidate(curve, subset, code)
            if tried >= max_candidates:
                raise RuntimeError("candidate cap reached without a match")
    raise RuntimeError(f"no matching one-point code over GF({p})")
