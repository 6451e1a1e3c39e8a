"""Reference computations used only by the tests.

These avoid the package's own algebra: Seifert-matrix invariants go
through sympy, determinants use plain cofactor expansion, and surfaces are
handled combinatorially.
"""

from __future__ import annotations

import sympy as sp

t = sp.symbols("t")


# ---------------------------------------------------------------------------
# Seifert matrices of braid closures


def seifert_matrix(word, strands):
    """Seifert matrix of the closure's canonical Seifert surface.

    Disks are the strands, bands are the crossings. The generators are
    loops through consecutive bands of one column. Sign choices for the
    off-diagonal terms were checked against the reduced Burau formula and
    the unimodularity of V - V^T; the signature does not depend on them.
    """
    cols = {i: [] for i in range(1, strands)}
    for h, g in enumerate(word):
        cols[abs(g)].append((h, 1 if g > 0 else -1))
    gens = []
    for i in range(1, strands):
        c = cols[i]
        gens.extend((i, c[j], c[j + 1]) for j in range(len(c) - 1))
    k = len(gens)
    V = sp.zeros(k, k)
    for X, (i, (a, ea), (b, eb)) in enumerate(gens):
        for Y, (i2, (c, _ec), (d, _ed)) in enumerate(gens):
            if X == Y:
                V[X, X] = -sp.Rational(ea + eb, 2)
            elif i == i2 and b == c:
                if eb > 0:
                    V[X, Y] = 1
                else:
                    V[Y, X] = -1
            elif i2 == i + 1:
                if a < c < b < d:
                    V[X, Y] -= 1
                elif c < a < d < b:
                    V[X, Y] += 1
    return V


def _laurent_coeffs(expr):
    """(minexp, coeffs) of a Laurent polynomial in t."""
    expr = sp.expand(sp.cancel(expr))
    num, den = sp.fraction(sp.together(expr))
    dp = sp.Poly(den, t)
    if len(dp.terms()) != 1:
        raise ValueError("not a Laurent polynomial")
    (shift,), dc = dp.terms()[0]
    p = sp.Poly(num, t)
    coeffs = [int(p.coeff_monomial(t ** e) / dc) for e in range(p.degree() + 1)]
    low = next(i for i, x in enumerate(coeffs) if x)
    coeffs = coeffs[low:]
    while coeffs[-1] == 0:
        coeffs.pop()
    return low - shift, coeffs


def normalize_symmetric(expr):
    """Center a Laurent polynomial at t^0 and make its value at 1 equal to 1."""
    _, coeffs = _laurent_coeffs(expr)
    if sum(coeffs) < 0:
        coeffs = [-x for x in coeffs]
    span = len(coeffs) - 1
    assert span % 2 == 0 and coeffs == coeffs[::-1] and sum(coeffs) == 1
    return -span // 2, tuple(coeffs)


def seifert_alexander(word, strands):
    V = seifert_matrix(word, strands)
    if V.shape[0] == 0:
        return 0, (1,)
    return normalize_symmetric((V - t * V.T).det())


def seifert_signature(word, strands):
    V = seifert_matrix(word, strands)
    if V.shape[0] == 0:
        return 0
    return sturm_signature(V + V.T)


def sturm_count(f, lo, hi):
    """Distinct real roots of f in (lo, hi] by sign changes of the Sturm chain."""
    chain = sp.sturm(sp.Poly(f, t))

    def changes(x):
        vals = []
        for q in chain:
            if x == sp.oo or x == -sp.oo:
                v = q.LC() * (1 if x == sp.oo or q.degree() % 2 == 0 else -1)
            else:
                v = q.eval(x)
            if v != 0:
                vals.append(v)
        return sum(1 for u, w in zip(vals, vals[1:]) if (u > 0) != (w > 0))

    return changes(lo) - changes(hi)


def sturm_signature(M):
    """Positive minus negative eigenvalues, counted with multiplicity."""
    lam = sp.symbols("lam")
    cp = (M - lam * sp.eye(M.shape[0])).det().subs(lam, t)
    if sp.Poly(cp, t).eval(0) == 0:
        raise ValueError("singular form")
    pos = neg = 0
    for fac, mult in sp.sqf_list(sp.Poly(cp, t))[1]:
        pos += mult * sturm_count(fac.as_expr(), 0, sp.oo)
        neg += mult * sturm_count(fac.as_expr(), -sp.oo, 0)
    return pos - neg


def burau_alexander(word, strands):
    """Delta from the reduced Burau matrix: det(I - B) (1 - t) / (1 - t^s)."""
    k = strands - 1
    M = sp.eye(k)
    for g in word:
        i = abs(g) - 1
        B = sp.eye(k)
        B[i, i] = -t
        if i > 0:
            B[i, i - 1] = t
        if i < k - 1:
            B[i, i + 1] = 1
        if g < 0:
            B = B.inv()
        M = M * B
    return normalize_symmetric((sp.eye(k) - M).det() * (1 - t) / (1 - t ** strands))


# ---------------------------------------------------------------------------
# polynomial determinants


def _padd(f, g, sign=1):
    out = list(f) + [0] * max(0, len(g) - len(f))
    for i, c in enumerate(g):
        out[i] += sign * c
    while out and out[-1] == 0:
        out.pop()
    return out


def _pmul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out


def cofactor_det(A):
    """Laplace expansion along successive rows on coefficient lists (low degree first).

    Minors are memoized by their column set, so a k x k matrix costs about
    k * 2^k polynomial products. Returns [] for the zero polynomial.
    """
    k = len(A)
    P = [[_padd([], list(c)) for c in row] for row in A]
    memo = {}

    def minor(cols):
        # determinant of rows k-len(cols).. restricted to the sorted columns
        if not cols:
            return [1]
        if cols in memo:
            return memo[cols]
        r = k - len(cols)
        total = []
        for j, c in enumerate(cols):
            if P[r][c]:
                term = _pmul(P[r][c], minor(cols[:j] + cols[j + 1:]))
                total = _padd(total, term, -1 if j % 2 else 1)
        memo[cols] = total
        return total

    return minor(tuple(range(k)))


# ---------------------------------------------------------------------------
# normal arcs


def arcs_oracle(block, f):
    """Arcs on face f, keyed by corner, from the geometry of each disk type.

    A triangle at u meets the edges at u. A quad separating {x,y} from
    {z,w} meets the four edges that join the two sides; on a face it cuts
    off the face vertex that is alone on its side.
    """
    quads = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))
    fv = [v for v in range(4) if v != f]
    out = {u: 0 for u in fv}
    for u in fv:
        out[u] += block[u]
    for q, (side1, side2) in enumerate(quads):
        for u in fv:
            mine = side1 if u in side1 else side2
            partner = mine[0] if mine[1] == u else mine[1]
            if partner == f:
                out[u] += block[4 + q]
    return out


def matching_broken(T, v):
    """True if any glued face carries different arc patterns on its two sides."""
    for (A, f), (B, g, p4) in T.glue.items():
        left = arcs_oracle(v[7 * A:7 * A + 7], f)
        right = arcs_oracle(v[7 * B:7 * B + 7], g)
        if any(left[u] != right[p4[u]] for u in left):
            return True
    return False


# ---------------------------------------------------------------------------
# curves on the two-triangle torus


def trace_torus_curve(a, b, c):
    """Homology classes of the components of the normal curve (a, b, c).

    Square [0,2]^2 cut by the diagonal D from (0,0) to (2,2), left side
    glued to right (edge V) and bottom to top (edge H). In the upper
    triangle a arcs cut the corner (0,2), b arcs the corner (0,0) and c
    arcs the corner (2,2); the lower triangle carries the same counts at
    the corners (2,0), (2,2), (0,0) respectively. Returns one
    (V-intersection, H-intersection) pair per component.
    """
    d, e, f = a, b, c
    # arcs are pairs of points (edge, position); positions count from (0,0)
    arcs = []  # (triangle, p, q)
    for k in range(b):
        arcs.append(("U", ("V", k), ("D", k)))
    for k in range(a):
        arcs.append(("U", ("V", a + b - 1 - k), ("H", k)))
    for k in range(c):
        arcs.append(("U", ("H", a + c - 1 - k), ("D", b + c - 1 - k)))
    for k in range(f):
        arcs.append(("W", ("H", k), ("D", k)))
    for k in range(d):
        arcs.append(("W", ("H", d + f - 1 - k), ("V", k)))
    for k in range(e):
        arcs.append(("W", ("V", d + e - 1 - k), ("D", e + f - 1 - k)))
    at = {}
    for idx, (_, p, q) in enumerate(arcs):
        for pt in (p, q):
            at.setdefault(pt, []).append(idx)
    assert all(len(v) == 2 for v in at.values()), "points must join one arc from each side"
    seen = set()
    classes = []
    for start in range(len(arcs)):
        if start in seen:
            continue
        iv = ih = 0
        idx = start
        tri, p, q = arcs[idx]
        cur = q  # leave the start arc through q
        while True:
            seen.add(idx)
            nxt = at[cur][0] if at[cur][1] == idx else at[cur][1]
            t_from, t_to = arcs[idx][0], arcs[nxt][0]
            if cur[0] == "V":
                iv += 1 if (t_from, t_to) == ("W", "U") else -1
            elif cur[0] == "H":
                ih += 1 if (t_from, t_to) == ("U", "W") else -1
            idx = nxt
            _, p2, q2 = arcs[idx]
            cur = q2 if p2 == cur else p2
            if idx == start:
                break
        classes.append((iv, ih))
    return classes


def half_curve_nontrivial(a2, b2, c2):
    """For an even curve (2a, 2b, 2c), split as two parallel copies of (a, b, c):
    true iff the copy (a, b, c) is nonzero in H_1(torus; Z/2)."""
    iv = ih = 0
    for x, y in trace_torus_curve(a2 // 2, b2 // 2, c2 // 2):
        iv += x
        ih += y
    return iv % 2 == 1 or ih % 2 == 1


# ---------------------------------------------------------------------------
# pretzel diagrams


def pretzel_pd(twists):
    """PD text of the pretzel diagram with the given half-twist counts.

    Column i holds |twists[i]| crossings between two vertical strands; its
    top right end joins the top left end of column i+1 (cyclically, the last
    one running around the outside), and likewise at the bottom. Ports of a
    crossing in counterclockwise order are TL, BL, BR, TR; a positive twist
    puts the TL-BR strand over.
    """
    ports, edges, over_main = {}, [], {}

    def link(p, q):
        ports[p] = ports[q] = len(edges)
        edges.append((p, q))

    for i, n in enumerate(twists):
        for k in range(abs(n)):
            over_main[(i, k)] = n > 0
        for k in range(abs(n) - 1):
            link((i, k, "BL"), (i, k + 1, "TL"))
            link((i, k, "BR"), (i, k + 1, "TR"))
    m = len(twists)
    for i in range(m):
        j = (i + 1) % m
        link((i, 0, "TR"), (j, 0, "TL"))
        link((i, abs(twists[i]) - 1, "BR"), (j, abs(twists[j]) - 1, "BL"))
    partner = {"TL": "BR", "BR": "TL", "TR": "BL", "BL": "TR"}
    start = cur = (0, 0, "TL")
    order, walk = [], []
    while True:
        order.append((cur[:2], cur[2]))
        out = (cur[0], cur[1], partner[cur[2]])
        e = ports[out]
        walk.append(e)
        p, q = edges[e]
        cur = q if p == out else p
        if cur == start:
            break
    if len(walk) != len(edges):
        raise ValueError("pretzel diagram is a link")
    label = {e: i + 1 for i, e in enumerate(walk)}
    ccw = ["TL", "BL", "BR", "TR"]
    pd = []
    for ci, entry in order:
        under = ("TR", "BL") if over_main[ci] else ("TL", "BR")
        if entry in under:
            s = ccw.index(entry)
            pd.append(tuple(label[ports[(ci[0], ci[1], ccw[(s + t) % 4])]] for t in range(4)))
    return ", ".join("X(%d,%d,%d,%d)" % c for c in pd)
