"""
Alexander polynomial and signature of a knot diagram.

The Alexander polynomial comes from the abelianized Fox matrix of the
Wirtinger presentation. The signature is computed by the Gordon-Litherland
formula sign(G) - mu from a Goeritz matrix; sign(G) is read off the
characteristic polynomial by Descartes' rule of signs, which is exact
because the roots of a symmetric matrix are real.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .diagram import KnotDiagram, checkerboard, wirtinger
from .intpoly import IntPoly, LaurentPoly, laurent_normalize_symmetric, poly_det, poly_gcd

__all__ = [
    "GoeritzData",
    "fox_matrix",
    "alexander",
    "goeritz",
    "sign_symmetric",
    "signature",
    "determinant",
]

_ONE = IntPoly((1,))
_T = IntPoly((0, 1))


def fox_matrix(d: KnotDiagram) -> list[list[IntPoly]]:
    """Abelianized Fox derivatives, one row per relation and one column per generator."""
    w = wirtinger(d)
    n = w.ngens
    rows = []
    for m, k, p in w.relations:
        row = [IntPoly()] * n
        row[m] = row[m] + (_ONE - _T)
        row[k] = row[k] + _T
        row[p] = row[p] - _ONE
        rows.append(row)
    return rows


def _minor(F: list[list[IntPoly]], row: int, method: str) -> IntPoly:
    M = [r[1:] for i, r in enumerate(F) if i != row]
    return poly_det(M, d=1, method=method)


def alexander(d: KnotDiagram, fast: bool = True, method: str = "auto") -> LaurentPoly:
    """Symmetric Alexander polynomial with value 1 at t = 1.

    The column of g_1 is deleted and the gcd is taken over all row
    deletions. With ``fast`` set, a single minor is accepted when it already
    normalizes (value +-1 at t = 1), since every such minor is a unit
    multiple of the gcd.
    """
    if d.is_trivial:
        return LaurentPoly(0, (1,))
    F = fox_matrix(d)
    # entries of F lie in Z[t] already, so no t-power clearing is needed
    if fast:
        m0 = _minor(F, 0, method)
        if abs(m0(1)) == 1:
            try:
                return laurent_normalize_symmetric(LaurentPoly(0, m0.coeffs))
            except ValueError:
                pass
    minors = [_minor(F, i, method) for i in range(len(F))]
    g = poly_gcd(minors)
    return laurent_normalize_symmetric(LaurentPoly(0, g.coeffs))


def determinant(delta: LaurentPoly) -> int:
    """Knot determinant |Delta(-1)|."""
    return abs(delta.poly()(-1))


@dataclass(frozen=True)
class GoeritzData:
    """Goeritz matrix G (k x k), the full matrix G' ((k+1) x (k+1)) and the correction mu."""

    G: tuple[tuple[int, ...], ...]
    full: tuple[tuple[int, ...], ...]
    mu: int


def goeritz(d: KnotDiagram, flip: bool = False) -> GoeritzData:
    cb = checkerboard(d, flip=flip)
    k1 = len(cb.white)
    windex = {r: i for i, r in enumerate(cb.white)}
    g = [[0] * k1 for _ in range(k1)]
    for c in range(d.n):
        # white corners are 0 and 2 when eta = +1 (corners 1 and 3 shaded)
        j = 0 if cb.eta[c] > 0 else 1
        w1 = windex[cb.corner_region[c][j]]
        w2 = windex[cb.corner_region[c][j + 2]]
        if w1 != w2:
            g[w1][w2] -= cb.eta[c]
            g[w2][w1] -= cb.eta[c]
    for i in range(k1):
        g[i][i] = -sum(g[i][j] for j in range(k1) if j != i)
    mu = sum(e for e, ty in zip(cb.eta, cb.types) if ty == "II")
    full = tuple(tuple(r) for r in g)
    G = tuple(tuple(r[1:]) for r in full[1:])
    return GoeritzData(G, full, mu)


def _sign_changes(seq: Sequence[int]) -> int:
    nz = [x for x in seq if x]
    return sum(1 for a, b in zip(nz, nz[1:]) if (a < 0) != (b < 0))


def charpoly(M: Sequence[Sequence[int]], method: str = "auto") -> IntPoly:
    """det(lambda I - M) as a polynomial in lambda."""
    k = len(M)
    A = [[(IntPoly((-M[i][j], 1)) if i == j else IntPoly((-M[i][j],))) for j in range(k)]
         for i in range(k)]
    return poly_det(A, d=1, method=method)


def sign_symmetric(M: Sequence[Sequence[int]], method: str = "auto") -> int:
    """Signature of a nonsingular symmetric integer matrix.

    Since all roots of the characteristic polynomial are real and nonzero,
    Descartes' rule counts them exactly: sign changes of the coefficients
    give the positive roots, those of p(-x) the negative ones.
    """
    k = len(M)
    if any(len(r) != k for r in M):
        raise ValueError("matrix is not square")
    for i in range(k):
        for j in range(i):
            if M[i][j] != M[j][i]:
                raise ValueError("matrix is not symmetric")
    if k == 0:
        return 0
    p = charpoly(M, method=method)
    a = p.coeffs
    if a[0] == 0:
        raise ValueError("matrix is singular")
    kplus = _sign_changes(a)
    kminus = _sign_changes([c if i % 2 == 0 else -c for i, c in enumerate(a)])
    return kplus - kminus


def signature(d: KnotDiagram, flip: bool = False, method: str = "auto") -> int:
    """Knot signature, normalized so the right-handed trefoil has -2."""
    if d.is_trivial:
        return 0
    gd = goeritz(d, flip=flip)
    return sign_symmetric(gd.G, method=method) - gd.mu
