"""
Exact algebra over Z[t] and Z[t, 1/t].

Dense coefficient lists (lowest degree first) backed by Python integers.
Determinants of polynomial matrices are computed by evaluating at
t = 0, 1, ..., dk, taking integer determinants and interpolating; gcds
fold pairwise primitive-remainder gcds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import sympy

__all__ = [
    "IntPoly",
    "LaurentPoly",
    "poly_det",
    "poly_gcd",
    "interpolate",
    "laurent_normalize_symmetric",
    "int_det",
    "det_mod",
    "hadamard_ok",
]


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    """Polynomial with integer coefficients, ``coeffs[i]`` multiplying t**i."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, c: int, k: int) -> IntPoly:
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def norm(self) -> int:
        """Max-norm: largest absolute coefficient."""
        return max((abs(c) for c in self.coeffs), default=0)

    def norm1(self) -> int:
        return sum(abs(c) for c in self.coeffs)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> IntPoly:
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        return IntPoly(tuple(c // g for c in self.coeffs))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = IntPoly((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> IntPoly:
        """Multiply by t**k (k >= 0)."""
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def divmod_exact(self, other: IntPoly) -> tuple[IntPoly, IntPoly]:
        """Division over Z; raises if a non-integral quotient coefficient appears."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        q = [0] * max(len(rem) - len(other.coeffs) + 1, 0)
        lc = other.lead
        dg = other.degree
        for i in range(len(rem) - 1, dg - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            if c % lc:
                raise ArithmeticError("quotient is not integral")
            f = c // lc
            q[i - dg] = f
            for j, y in enumerate(other.coeffs):
                rem[i - dg + j] -= f * y
        return IntPoly(tuple(q)), IntPoly(tuple(rem))

    def __floordiv__(self, other):
        q, r = self.divmod_exact(_as_poly(other))
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def pseudo_rem(self, other: IntPoly) -> IntPoly:
        """lc(other)^(deg self - deg other + 1) * self mod other."""
        rem = list(self.coeffs)
        dg = other.degree
        lc = other.lead
        if len(rem) - 1 < dg:
            return self
        for i in range(len(rem) - 1, dg - 1, -1):
            c = rem[i]
            rem = [lc * x for x in rem]
            for j, y in enumerate(other.coeffs):
                rem[i - dg + j] -= c * y
            rem.pop()
        return IntPoly(tuple(rem))

    def to_json(self) -> dict:
        return {"minexp": 0, "coeffs": [str(c) for c in self.coeffs]}

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        return _format_terms(0, self.coeffs, "t")


def _as_poly(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly((x,))
    raise TypeError(f"cannot treat {type(x).__name__} as IntPoly")


def _format_terms(minexp: int, coeffs: Sequence[int], var: str) -> str:
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        e = minexp + i
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            body = (f"{mag}*" if mag != 1 else "") + (var if e == 1 else f"{var}^{e}")
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for s, body in parts[1:]:
        out += f" {s} {body}"
    return out


@dataclass(frozen=True)
class LaurentPoly:
    """Laurent polynomial ``t**minexp * poly`` in canonical form."""

    minexp: int = 0
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        lo = 0
        while lo < len(c) and c[lo] == 0:
            lo += 1
        c = list(_trim(c[lo:]))
        m = self.minexp + lo if c else 0
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "minexp", m)

    @classmethod
    def from_poly(cls, p: IntPoly, shift: int = 0) -> LaurentPoly:
        return cls(shift, p.coeffs)

    @classmethod
    def from_dict(cls, terms: dict[int, int]) -> LaurentPoly:
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls(lo, tuple(terms.get(e, 0) for e in range(lo, hi + 1)))

    @property
    def maxexp(self) -> int:
        return self.minexp + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.minexp == 0 and self.coeffs == (1,)

    def poly(self) -> IntPoly:
        """The polynomial part after clearing the lowest power of t."""
        return IntPoly(self.coeffs)

    def terms(self) -> dict[int, int]:
        return {self.minexp + i: c for i, c in enumerate(self.coeffs) if c}

    def __call__(self, x):
        if self.is_zero():
            return 0
        val = IntPoly(self.coeffs)(x)
        if self.minexp >= 0:
            return val * x ** self.minexp
        return Fraction(val, 1) / Fraction(x) ** (-self.minexp)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        p = IntPoly(self.coeffs) * IntPoly(other.coeffs)
        return LaurentPoly(self.minexp + other.minexp, p.coeffs)

    def __neg__(self):
        return LaurentPoly(self.minexp, tuple(-c for c in self.coeffs))

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        t = self.terms()
        for e, c in other.terms().items():
            t[e] = t.get(e, 0) + c
        return LaurentPoly.from_dict(t)

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def to_json(self) -> dict:
        return {"minexp": self.minexp, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> LaurentPoly:
        return cls(int(obj["minexp"]), tuple(int(c) for c in obj["coeffs"]))

    def __repr__(self):
        return f"LaurentPoly({self.minexp}, {list(self.coeffs)})"

    def __str__(self):
        return _format_terms(self.minexp, self.coeffs, "t")


# ---------------------------------------------------------------------------
# integer determinants


def int_det(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    k = len(M)
    if k == 0:
        return 1
    A = [list(map(int, row)) for row in M]
    if any(len(row) != k for row in A):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for j in range(k - 1):
        if A[j][j] == 0:
            for i in range(j + 1, k):
                if A[i][j] != 0:
                    A[j], A[i] = A[i], A[j]
                    sign = -sign
                    break
            else:
                return 0
        pj = A[j][j]
        rowj = A[j]
        for i in range(j + 1, k):
            rowi = A[i]
            a = rowi[j]
            for c in range(j + 1, k):
                rowi[c] = (pj * rowi[c] - a * rowj[c]) // prev
            rowi[j] = 0
        prev = pj
    return sign * A[k - 1][k - 1]


def det_mod(rows: Sequence[dict[int, int]], k: int, modulus: int) -> int:
    """Determinant mod a prime of a sparse k x k matrix given as row dicts.

    Gaussian elimination with a Markowitz-style pivot choice (sparsest
    column, then sparsest row) to limit fill-in.
    """
    P = modulus
    R = []
    cols: list[set[int]] = [set() for _ in range(k)]
    for i, r in enumerate(rows):
        d = {}
        for j, v in r.items():
            v %= P
            if v:
                d[j] = v
                cols[j].add(i)
        R.append(d)
    if len(R) != k:
        raise ValueError("matrix is not square")
    active = set(range(k))
    det = 1
    perm = [0] * k
    for _ in range(k):
        j = min(active, key=lambda c: (len(cols[c]), c))
        if not cols[j]:
            return 0
        i = min(cols[j], key=lambda r: (len(R[r]), r))
        prow = R[i]
        piv = prow[j]
        det = det * piv % P
        inv = pow(piv, -1, P)
        perm[i] = j
        for c in prow:
            cols[c].discard(i)
        for r in list(cols[j]):
            row = R[r]
            f = row.pop(j) * inv % P
            for c, v in prow.items():
                if c == j:
                    continue
                nv = (row.get(c, 0) - f * v) % P
                if nv:
                    if c not in row:
                        cols[c].add(r)
                    row[c] = nv
                elif c in row:
                    del row[c]
                    cols[c].discard(r)
        cols[j].clear()
        active.remove(j)
    return det * _perm_sign(perm) % P


def _perm_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def hadamard_ok(value: int, k: int, d: int, C: int, i: int) -> bool:
    """Check |value| <= k^(k/2) ((d+1) C max(i,1)^d)^k exactly (squared)."""
    entry = (d + 1) * C * max(i, 1) ** d
    return value * value <= k ** k * entry ** (2 * k)


# ---------------------------------------------------------------------------
# interpolation


def interpolate(points: Sequence[tuple[int, int]]) -> IntPoly:
    """Unique polynomial of degree < len(points) through integer points.

    Raises ValueError on repeated x or when the interpolant is not integral.
    """
    xs = [int(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("repeated x value")
    ys = [Fraction(int(y)) for _, y in points]
    n = len(xs)
    # Newton divided differences
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # Horner on Newton form: p = c0 + (x-x0)(c1 + (x-x1)(...))
    acc = [Fraction(0)]
    for i in range(n - 1, -1, -1):
        # acc = acc * (x - xs[i]) + coef[i]
        new = [Fraction(0)] * (len(acc) + 1)
        for e, c in enumerate(acc):
            new[e + 1] += c
            new[e] -= c * xs[i]
        new[0] += coef[i]
        acc = new
    out = []
    for c in acc[:n]:
        if c.denominator != 1:
            raise ValueError("interpolant does not have integer coefficients")
        out.append(c.numerator)
    return IntPoly(tuple(out))


def _interpolate_mod(ys: Sequence[int], P: int) -> list[int]:
    """Coefficients mod P of the interpolant through (i, ys[i]), i = 0..n-1."""
    n = len(ys)
    coef = [y % P for y in ys]
    for j in range(1, n):
        inv = pow(j, -1, P)
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * inv % P
    acc = [0]
    for i in range(n - 1, -1, -1):
        new = [0] * (len(acc) + 1)
        for e, c in enumerate(acc):
            new[e + 1] = (new[e + 1] + c) % P
            new[e] = (new[e] - c * i) % P
        new[0] = (new[0] + coef[i]) % P
        acc = new
    return acc[:n]


@lru_cache(maxsize=64)
def _prime_above(bits: int) -> int:
    return int(sympy.nextprime(1 << bits))


# ---------------------------------------------------------------------------
# polynomial determinants


def _matrix_bounds(A) -> tuple[int, int]:
    d = max((e.degree for row in A for e in row), default=0)
    C = max((e.norm() for row in A for e in row), default=0)
    return max(d, 0), C


def poly_det(A: Sequence[Sequence[IntPoly]], d: int | None = None,
             C: int | None = None, method: str = "auto") -> IntPoly:
    """Determinant of a square matrix over Z[t].

    The matrix is evaluated at t = 0, 1, ..., d*k, the integer determinants
    are taken, and the result is rebuilt by interpolation. ``method='exact'``
    computes each integer determinant exactly (Bareiss) and interpolates
    over Q; ``method='modular'`` carries all of this out modulo one prime
    larger than twice an a priori coefficient bound for det(A), then lifts
    symmetrically. Both give the same polynomial.
    """
    A = [[_as_poly(e) for e in row] for row in A]
    k = len(A)
    if any(len(row) != k for row in A):
        raise ValueError("matrix is not square")
    if k == 0:
        return IntPoly((1,))
    d0, C0 = _matrix_bounds(A)
    if d is None:
        d = max(d0, 1)
    elif d0 > d:
        raise ValueError(f"entry of degree {d0} exceeds the bound {d}")
    if C is None:
        C = C0
    elif C0 > C:
        raise ValueError(f"entry of norm {C0} exceeds the bound {C}")
    if C0 == 0:
        return IntPoly()
    npts = d * k + 1
    if method == "auto":
        method = "exact" if k <= 10 else "modular"
    if method == "exact":
        vals = []
        for i in range(npts):
            Ai = [[e(i) for e in row] for row in A]
            v = int_det(Ai)
            assert hadamard_ok(v, k, d, C, i), "Hadamard bound violated"
            vals.append((i, v))
        return interpolate(vals)
    if method != "modular":
        raise ValueError(f"unknown method {method!r}")
    # |coefficients of det| <= prod over rows of the row's total l1 norm
    row_bound = 1
    for row in A:
        row_bound *= sum(e.norm1() for e in row)
    col_bound = 1
    for j in range(k):
        col_bound *= sum(A[i][j].norm1() for i in range(k))
    bound = min(row_bound, col_bound)
    P = _prime_above(max((2 * bound + 1).bit_length(), npts.bit_length() + 1))
    sparse = [[(j, e) for j, e in enumerate(row) if not e.is_zero()] for row in A]
    ys = []
    for i in range(npts):
        rows = [{j: e(i) % P for j, e in row} for row in sparse]
        ys.append(det_mod(rows, k, P))
    half = P // 2
    coeffs = [c - P if c > half else c for c in _interpolate_mod(ys, P)]
    return IntPoly(tuple(coeffs))


# ---------------------------------------------------------------------------
# gcd


def _gcd2(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd of two polynomials by the primitive remainder sequence."""
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    f, g = f.primitive(), g.primitive()
    if f.degree < g.degree:
        f, g = g, f
    while not g.is_zero():
        r = f.pseudo_rem(g)
        f, g = g, r.primitive()
    return f.primitive()


def _mignotte_ok(g: IntPoly, f: IntPoly) -> bool:
    # ||g|| <= (d+1)^(1/2) 2^d ||f||, squared to stay in integers
    d = f.degree
    return g.norm() ** 2 <= (d + 1) * 4 ** d * f.norm() ** 2


def poly_gcd(fs: Sequence[IntPoly]) -> IntPoly:
    """Primitive gcd (positive leading coefficient) of a list of polynomials.

    Folds g_i = gcd(g_{i-1}, f_i). Every intermediate g divides the first
    nonzero input, so its norm obeys Mignotte's bound relative to it; that
    is asserted along the way.
    """
    fs = [_as_poly(f) for f in fs]
    nonzero = [f for f in fs if not f.is_zero()]
    if not nonzero:
        raise ValueError("gcd of all-zero input")
    anchor = nonzero[0]
    g = anchor.primitive()
    for f in fs[1:]:
        g = _gcd2(g, f)
        assert _mignotte_ok(g, anchor), "Mignotte bound violated"
        if g.degree == 0:
            return IntPoly((1,))
    return g


# ---------------------------------------------------------------------------
# Laurent normalization


def laurent_normalize_symmetric(f: LaurentPoly) -> LaurentPoly:
    """Multiply by the unit +-t^k making f symmetric with value 1 at t = 1."""
    if f.is_zero():
        raise ValueError("zero polynomial cannot be normalized")
    c = f.coeffs
    v = sum(c)
    if abs(v) != 1:
        raise ValueError(f"value at t=1 is {v}, expected +-1")
    if c != c[::-1]:
        raise ValueError(f"{f} is not symmetric up to a unit")
    if (len(c) - 1) % 2:
        raise ValueError(f"{f} has odd span and cannot be made symmetric")
    half = (len(c) - 1) // 2
    return LaurentPoly(-half, tuple(v * x for x in c))
