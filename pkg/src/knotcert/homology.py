"""
Integral simplicial cohomology of a triangulation and small generating
1-cocycles.

Edges, vertices and faces are numbered by first appearance; edge classes
are oriented by their first tet edge (T, (a, b)) in sorted order, pointing
from a to b. Faces are oriented by their first side in sorted order, with
boundary [v0 v1 v2] = [v1 v2] - [v0 v2] + [v0 v1].
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .triangulation import Triangulation, face_vertices

__all__ = [
    "HomologyError",
    "CochainComplex",
    "build_complex",
    "smith_normal_form",
    "integer_kernel",
    "homology_h1",
    "generating_cocycle",
    "verify_cocycle",
    "cocycle_bound_ok",
    "pairings",
    "primitive_representative",
    "load_cocycle",
]

Matrix = list[list[int]]


class HomologyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer linear algebra


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] if Bt else [0] * cols for row in A]


def transpose(A: Matrix, ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(r) for r in zip(*A)]


@dataclass
class SNF:
    """U A V = D with U, V unimodular; Uinv and Vinv are their inverses."""

    D: Matrix
    U: Matrix
    Uinv: Matrix
    V: Matrix
    Vinv: Matrix
    diag: list[int]

    @property
    def rank(self) -> int:
        return len(self.diag)


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None) -> SNF:
    """Smith normal form with transforms; diagonal entries positive, each dividing the next."""
    r = len(A)
    c = len(A[0]) if r else (ncols or 0)
    D = [list(map(int, row)) for row in A]
    U, Uinv, V, Vinv = _identity(r), _identity(r), _identity(c), _identity(c)

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def col_swap(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def row_add(dst, src, q):
        # row_dst += q * row_src
        if q == 0:
            return
        D[dst] = [x + q * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]
        for row in Uinv:
            row[src] -= q * row[dst]

    def col_add(dst, src, q):
        # col_dst += q * col_src
        if q == 0:
            return
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vinv[src] = [x - q * y for x, y in zip(Vinv[src], Vinv[dst])]

    def row_neg(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]
        for row in Uinv:
            row[i] = -row[i]

    diag = []
    t = 0
    while t < min(r, c):
        # pivot: smallest nonzero magnitude in the remaining block
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = D[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        row_swap(t, i)
        col_swap(t, j)
        while True:
            done = True
            p = D[t][t]
            for i in range(t + 1, r):
                if D[i][t]:
                    row_add(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, c):
                if D[t][j]:
                    col_add(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        done = False
            if not done:
                # move the smallest leftover in row/column t to the pivot
                best = (abs(D[t][t]), t, t)
                for i in range(t + 1, r):
                    if D[i][t] and abs(D[i][t]) < best[0]:
                        best = (abs(D[i][t]), i, t)
                for j in range(t + 1, c):
                    if D[t][j] and abs(D[t][j]) < best[0]:
                        best = (abs(D[t][j]), t, j)
                _, i, j = best
                row_swap(t, i)
                col_swap(t, j)
                continue
            # divisibility: pivot must divide the rest of the block
            p = D[t][t]
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if D[t][t] < 0:
            row_neg(t)
        diag.append(D[t][t])
        t += 1
    return SNF(D, U, Uinv, V, Vinv, diag)


def integer_kernel(A: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """A Z-basis of {x in Z^ncols : A x = 0}."""
    if not A:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    snf = smith_normal_form(A)
    return [[snf.V[i][j] for i in range(ncols)] for j in range(snf.rank, ncols)]


def _independent_rows(rows: Sequence[Sequence[int]]) -> list[int]:
    """Indices of a maximal linearly independent subset, chosen greedily in order."""
    basis: list[tuple[int, list[Fraction]]] = []  # (pivot column, reduced row)
    chosen = []
    for idx, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for piv, b in basis:
            if v[piv]:
                f = v[piv] / b[piv]
                v = [x - f * y for x, y in zip(v, b)]
        nz = next((j for j, x in enumerate(v) if x), None)
        if nz is not None:
            basis.append((nz, v))
            chosen.append(idx)
    return chosen


# ---------------------------------------------------------------------------
# complexes


@dataclass(frozen=True)
class CochainComplex:
    """Coboundaries d0 (edges x vertices) and d1 (faces x edges)."""

    m: int
    n: int
    k: int
    d0: tuple[tuple[int, ...], ...]
    d1: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, tuple[int, int]], ...]  # representative tet edge per class

    def d1_of(self, phi: Sequence[int]) -> list[int]:
        return [sum(a * x for a, x in zip(row, phi)) for row in self.d1]

    def d0_of(self, c: Sequence[int]) -> list[int]:
        return [sum(a * x for a, x in zip(row, c)) for row in self.d0]


def build_complex(T: Triangulation) -> CochainComplex:
    if not T.edges_valid:
        raise HomologyError("an edge is identified with itself in reverse")
    vc = T.vertex_classes
    ec = T.edge_classes
    eo = T.edge_orientation
    vnum: dict[int, int] = {}
    for key in sorted(vc):
        vnum.setdefault(vc[key], len(vnum))
    enum: dict[int, int] = {}
    reps = []
    for key in sorted(ec):
        if ec[key] not in enum:
            enum[ec[key]] = len(enum)
            reps.append(key)
    m, n = len(vnum), len(enum)
    d0 = [[0] * m for _ in range(n)]
    for e, (tet, (a, b)) in enumerate(reps):
        if eo[(tet, (a, b))] < 0:
            a, b = b, a
        head, tail = vnum[vc[(tet, b)]], vnum[vc[(tet, a)]]
        d0[e][head] += 1
        d0[e][tail] -= 1
    faces = [F for F, _, _ in T.face_pairs] + list(T.boundary_faces)
    d1 = []
    for tet, f in faces:
        v0, v1, v2 = face_vertices(f)
        row = [0] * n
        for (a, b), s in (((v1, v2), 1), ((v0, v2), -1), ((v0, v1), 1)):
            key = (tet, (a, b))
            row[enum[ec[key]]] += s * eo[key]
        d1.append(row)
    comp = CochainComplex(m, n, len(faces), tuple(map(tuple, d0)), tuple(map(tuple, d1)), tuple(reps))
    for row in comp.d1:
        assert all(abs(x) <= 3 for x in row)
    prod = matmul([list(r) for r in comp.d1], [list(r) for r in comp.d0]) if comp.d1 and comp.d0 else []
    assert all(x == 0 for row in prod for x in row), "d1 d0 != 0"
    return comp


@dataclass(frozen=True)
class H1Data:
    betti: int
    torsion: tuple[int, ...]
    free_basis: tuple[tuple[int, ...], ...]  # 1-cycles over the edge basis


def homology_h1(cx: CochainComplex) -> H1Data:
    """H_1 with an explicit basis of cycles for its free part."""
    n = cx.n
    del1 = transpose([list(r) for r in cx.d0], cx.m)  # vertices x edges
    del2 = transpose([list(r) for r in cx.d1], n)  # edges x faces
    if cx.m:
        s1 = smith_normal_form(del1, n)
        r1 = s1.rank
        K = [[s1.V[i][j] for i in range(n)] for j in range(r1, n)]  # kernel columns
        Vinv = s1.Vinv
    else:
        r1 = 0
        K = [[int(i == j) for i in range(n)] for j in range(n)]
        Vinv = _identity(n)
    q = n - r1
    if cx.k and q:
        coords = matmul(Vinv, del2)  # rows r1.. are coordinates in K
        assert all(x == 0 for row in coords[:r1] for x in row)
        X = coords[r1:]
        s2 = smith_normal_form(X)
        Uinv = s2.Uinv
        torsion = tuple(d for d in s2.diag if d > 1)
        r2 = s2.rank
    else:
        Uinv = _identity(q)
        torsion = ()
        r2 = 0
    basis = []
    for i in range(r2, q):
        col = [Uinv[j][i] for j in range(q)]
        z = [sum(K[j][e] * col[j] for j in range(q)) for e in range(n)]
        basis.append(tuple(z))
    return H1Data(q - r2, torsion, tuple(basis))


def pairings(phi: Sequence[int], h1: H1Data) -> list[int]:
    return [sum(a * b for a, b in zip(phi, z)) for z in h1.free_basis]


def cocycle_bound(t: int) -> int:
    """(18t)^(6t); the norm bound is one third of this."""
    return (18 * t) ** (6 * t)


def cocycle_bound_ok(phi: Sequence[int], t: int) -> bool:
    return 3 * sum(abs(x) for x in phi) <= cocycle_bound(t)


def _solve_coboundary(cx: CochainComplex, psi: Sequence[int]) -> list[int]:
    """Integer c with d0 c = psi, via a spanning forest of the 1-skeleton."""
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(cx.m)]
    for e, row in enumerate(cx.d0):
        head = next((v for v, x in enumerate(row) if x == 1), None)
        tail = next((v for v, x in enumerate(row) if x == -1), None)
        if head is None:
            continue
        adj[tail].append((head, e, 1))
        adj[head].append((tail, e, -1))
    c: list[int | None] = [None] * cx.m
    for root in range(cx.m):
        if c[root] is not None:
            continue
        c[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, e, s in adj[u]:
                if c[w] is None:
                    c[w] = c[u] + s * psi[e]
                    queue.append(w)
    out = [int(x) for x in c]
    if cx.d0_of(out) != list(psi):
        raise HomologyError("vector is not a coboundary")
    return out


def _round_div(a: int, d: int) -> int:
    """Nearest integer to a/d (halves round up)."""
    return (2 * a + d) // (2 * d)


def _reduce(cx: CochainComplex, phi: list[int]) -> list[int]:
    """Greedy coboundary size reduction in the L1 norm."""
    cols = [[row[v] for row in cx.d0] for v in range(cx.m)]
    norm = sum(abs(x) for x in phi)
    improved = True
    while improved:
        improved = False
        for col in cols:
            for s in (1, -1):
                cand = [x + s * y for x, y in zip(phi, col)]
                cn = sum(abs(x) for x in cand)
                if cn < norm:
                    phi, norm, improved = cand, cn, True
    return phi


def generating_cocycle(T: Triangulation) -> list[int]:
    """A 1-cocycle representing a primitive class, with small L1 norm.

    When H^1 is infinite cyclic the class is a generator. The kernel vector
    of [independent rows of d1; m-1 independent coboundaries] is a cocycle
    of class d * w with w primitive; if d > 1 it is replaced by
    phi' + d0(n) with phi' any cocycle of class w and n_i the nearest
    integer to c_i / d, where d0 c = phi - d phi'.
    """
    cx = build_complex(T)
    h1 = homology_h1(cx)
    if h1.betti == 0:
        raise HomologyError("H^1 has rank 0, no generating cocycle exists")
    d1rows = [list(r) for r in cx.d1]
    sel = _independent_rows(d1rows)
    cob = [[row[v] for row in cx.d0] for v in range(cx.m)]
    csel = _independent_rows(cob)
    B = [d1rows[i] for i in sel] + [cob[i] for i in csel]
    kernel = integer_kernel(B, cx.n)
    if not kernel:
        raise HomologyError("gauge-fixed cocycle system has no kernel")
    phi = primitive_representative(cx, h1, kernel[0])
    phi = _reduce(cx, phi)
    assert not any(cx.d1_of(phi))
    pg = 0
    for p in pairings(phi, h1):
        pg = gcd(pg, p)
    assert pg == 1
    assert cocycle_bound_ok(phi, T.t), "cocycle exceeds the norm bound"
    return phi


def primitive_representative(cx: CochainComplex, h1: H1Data, x: Sequence[int]) -> list[int]:
    """Given a cocycle of class d * w with w primitive, a cocycle of class w near x / d."""
    pr = pairings(x, h1)
    d = 0
    for p in pr:
        d = gcd(d, p)
    if d == 0:
        raise HomologyError("kernel vector has trivial class")
    w = [p // d for p in pr]
    if d == 1:
        phi = list(x)
    else:
        Y = integer_kernel([list(r) for r in cx.d1], cx.n)
        P = [[sum(a * b for a, b in zip(y, z)) for y in Y] for z in h1.free_basis]
        s = smith_normal_form(P)
        yv = [sum(s.U[i][j] * w[j] for j in range(len(w))) for i in range(len(w))]
        u = [0] * len(Y)
        for i, dd in enumerate(s.diag):
            if yv[i] % dd:
                raise HomologyError("class is not reachable by an integral cocycle")
            u[i] = yv[i] // dd
        if any(yv[s.rank:]):
            raise HomologyError("class is not reachable by an integral cocycle")
        coeffs = [sum(s.V[l][i] * u[i] for i in range(len(Y))) for l in range(len(Y))]
        phi_p = [sum(coeffs[l] * Y[l][e] for l in range(len(Y))) for e in range(cx.n)]
        assert pairings(phi_p, h1) == w
        psi = [a - d * b for a, b in zip(x, phi_p)]
        c = _solve_coboundary(cx, psi)
        nvec = [_round_div(ci, d) for ci in c]
        phi = [a + b for a, b in zip(phi_p, cx.d0_of(nvec))]
    return phi


def verify_cocycle(T: Triangulation, phi: Sequence[int], claimed_primitive: bool = True) -> bool:
    """Cocycle condition, primitivity (pairings with an H_1 basis have gcd 1) and norm bound."""
    cx = build_complex(T)
    if len(phi) != cx.n:
        raise HomologyError(f"cocycle has {len(phi)} entries, complex has {cx.n} edges")
    if any(cx.d1_of(phi)):
        return False
    if not cocycle_bound_ok(phi, T.t):
        return False
    if claimed_primitive:
        g = 0
        for p in pairings(phi, homology_h1(cx)):
            g = gcd(g, p)
        if g != 1:
            return False
    return True


def load_cocycle(path: str) -> list[int]:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise HomologyError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(obj, dict) or not isinstance(obj.get("phi"), list):
        raise HomologyError("cocycle file needs a 'phi' list")
    try:
        return [int(x) for x in obj["phi"]]
    except (TypeError, ValueError):
        raise HomologyError("cocycle entries must be integers or decimal strings") from None
