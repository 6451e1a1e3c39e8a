"""Torus knot invariants in closed form and recognition of torus knot invariants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .intpoly import IntPoly, LaurentPoly

__all__ = [
    "TorusParams",
    "torus_alexander",
    "torus_signature",
    "identify_torus",
    "crossing_bound",
]


@dataclass(frozen=True)
class TorusParams:
    r: int
    s: int

    def __post_init__(self):
        if not abs(self.r) > self.s:
            raise ValueError(f"expected |r| > s, got ({self.r}, {self.s})")
        _check(self.r, self.s)

    def as_list(self) -> list[int]:
        return [self.r, self.s]


def _check(r: int, s: int) -> None:
    # T(r, s) = T(s, r), so the closed forms accept either order
    if abs(r) < 2 or s < 2 or gcd(abs(r), s) != 1:
        raise ValueError(f"({r}, {s}) is not a valid torus knot parameter pair")


def _tpow_minus_one(k: int) -> IntPoly:
    return IntPoly.monomial(1, k) - 1


def torus_alexander(r: int, s: int) -> LaurentPoly:
    """(t^rs - 1)(t - 1) / ((t^r - 1)(t^s - 1)), centered at t^-g."""
    _check(r, s)
    a = abs(r)
    num = _tpow_minus_one(a * s) * _tpow_minus_one(1)
    den = _tpow_minus_one(a) * _tpow_minus_one(s)
    q = num // den
    g = (a - 1) * (s - 1) // 2
    return LaurentPoly(-g, q.coeffs)


def torus_signature(r: int, s: int) -> int:
    """Signature of T(r, s) from Litherland's lattice-point count.

    With x = i/a + j/b for 1 <= i < a, 1 <= j < b, points with x in
    (1/2, 3/2) count -1 and the rest count +1. Coprimality keeps x off
    1/2, 1 and 3/2.
    """
    _check(r, s)
    a, b = abs(r), s
    half, three_half = Fraction(1, 2), Fraction(3, 2)
    total = 0
    for i in range(1, a):
        for j in range(1, b):
            x = Fraction(i, a) + Fraction(j, b)
            assert x not in (half, 1, three_half)
            total += -1 if half < x < three_half else 1
    return total if r > 0 else -total


def crossing_bound(r: int, s: int, n: int) -> bool:
    """True iff |rs| < 3n."""
    return abs(r * s) < 3 * n


def identify_torus(delta: LaurentPoly, sigma: int, n: int) -> TorusParams | None:
    """The torus knot (r, s) with these invariants among |rs| < 3n, or None.

    For each b with b^2 < 3n, the Alexander degree fixes a = 2d/(b-1) + 1;
    the candidate is accepted when the cyclotomic identity holds and the
    signature matches up to mirroring. sigma = 0 never matches since
    torus knots have nonzero signature. A pair with ab >= 3n is never
    returned: no n-crossing diagram can represent it.
    """
    dtop = delta.maxexp if not delta.is_zero() else 0
    if delta.is_zero() or dtop <= 0:
        return None
    p = IntPoly(delta.coeffs)  # t^dtop * delta, since the polynomial is centered
    if delta.minexp != -dtop:
        return None
    b = 2
    while b * b < 3 * n:
        if (2 * dtop) % (b - 1) == 0:
            a = 2 * dtop // (b - 1) + 1
            if a > b and gcd(a, b) == 1 and crossing_bound(a, b, n):
                lhs = _tpow_minus_one(a) * _tpow_minus_one(b) * p
                rhs = _tpow_minus_one(a * b) * _tpow_minus_one(1)
                if (lhs - rhs).is_zero():
                    ts = torus_signature(a, b)
                    if sigma == ts:
                        return TorusParams(a, b)
                    if sigma == -ts:
                        return TorusParams(-a, b)
        b += 1
    return None
