"""
SL(2, F_p) representations of knot groups as certificates.

Matrices are 4-tuples ``(a, b, c, d)`` for [[a, b], [c, d]] with entries
reduced mod p. A word is a sequence of ``(generator, exponent)`` pairs.

An uncentered certificate for a diagram whose invariants look like those
of T(r, s) is a representation of its Wirtinger presentation in which
rho(mu^rs lambda) fails to commute with some generator image. For an
actual torus knot that element is central, so no certificate exists.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import sympy

from .diagram import KnotDiagram, WirtingerPresentation, wirtinger
from .invariants import alexander, signature
from .torus import TorusParams, crossing_bound, identify_torus

__all__ = [
    "Fp2Matrix",
    "CertificateError",
    "UncenteredCertificate",
    "PresentationCertificate",
    "Presentation",
    "Verdict",
    "eval_word",
    "check_relations",
    "verify_uncentered",
    "verify_nonabelian",
    "search_noncentral",
    "search_uncentered",
    "emit_variety_system",
    "PolySystem",
]

Mat = tuple[int, int, int, int]
Word = Sequence[tuple[int, int]]


class CertificateError(ValueError):
    """Structurally malformed certificate or presentation."""


@dataclass(frozen=True)
class Fp2Matrix:
    p: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("modulus must be at least 2")
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % self.p)

    @property
    def entries(self) -> Mat:
        return (self.a, self.b, self.c, self.d)

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.p

    def __matmul__(self, other: Fp2Matrix) -> Fp2Matrix:
        if other.p != self.p:
            raise ValueError("mixed moduli")
        return Fp2Matrix(self.p, *mat_mul(self.entries, other.entries, self.p))

    def inverse(self) -> Fp2Matrix:
        """Adjugate, which is the inverse for determinant-1 matrices."""
        return Fp2Matrix(self.p, self.d, -self.b, -self.c, self.a)


def mat_mul(x: Mat, y: Mat, p: int) -> Mat:
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % p, (a * f + b * h) % p,
            (c * e + d * g) % p, (c * f + d * h) % p)


def mat_inv(x: Mat, p: int) -> Mat:
    a, b, c, d = x
    return (d % p, -b % p, -c % p, a % p)


def mat_det(x: Mat, p: int) -> int:
    a, b, c, d = x
    return (a * d - b * c) % p


IDENTITY: Mat = (1, 0, 0, 1)


def _eval(mats: Sequence[Mat], word: Word, p: int) -> Mat:
    acc = IDENTITY
    for g, e in word:
        m = mats[g] if e > 0 else mat_inv(mats[g], p)
        for _ in range(abs(e)):
            acc = mat_mul(acc, m, p)
    return acc


def eval_word(mats: Sequence[Fp2Matrix], word: Word) -> Fp2Matrix:
    """Product of images along a word; inverses are adjugates."""
    if not mats:
        if word:
            raise IndexError("word uses generators but no matrices given")
        raise ValueError("need at least one matrix to fix the modulus")
    p = mats[0].p
    if any(m.p != p for m in mats):
        raise ValueError("mixed moduli")
    for g, _ in word:
        if not 0 <= g < len(mats):
            raise IndexError(f"generator index {g} out of range")
    return Fp2Matrix(p, *_eval([m.entries for m in mats], word, p))


def _commute(x: Mat, y: Mat, p: int) -> bool:
    return mat_mul(x, y, p) == mat_mul(y, x, p)


def _relations_hold(mats: Sequence[Mat], relations, p: int) -> bool:
    if any(mat_det(m, p) != 1 for m in mats):
        return False
    for m, k, q in relations:
        if mat_mul(mats[m], mats[k], p) != mat_mul(mats[q], mats[m], p):
            return False
    return True


def check_relations(mats: Sequence[Fp2Matrix], pres: WirtingerPresentation) -> bool:
    """Determinants are 1 and M_m M_k = M_p M_m for every relation (m, k, p)."""
    if len(mats) != pres.ngens:
        raise ValueError(f"{len(mats)} matrices for {pres.ngens} generators")
    if not mats:
        return True
    p = mats[0].p
    if any(m.p != p for m in mats):
        raise ValueError("mixed moduli")
    return _relations_hold([m.entries for m in mats], pres.relations, p)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    step: int | None = None
    reason: str = ""

    def to_json(self) -> dict:
        out = {"accepted": self.accepted}
        if not self.accepted:
            out["step"] = self.step
            out["reason"] = self.reason
        return out


def _parse_int(x, what: str) -> int:
    if isinstance(x, bool):
        raise CertificateError(f"{what} must be an integer")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise CertificateError(f"{what} must be an integer or decimal string, got {x!r}")


def _parse_matrices(obj, p: int) -> tuple[Mat, ...]:
    if not isinstance(obj, list):
        raise CertificateError("'matrices' must be a list")
    out = []
    for i, m in enumerate(obj):
        if not isinstance(m, list) or len(m) != 4:
            raise CertificateError(f"matrix {i + 1} must have 4 entries")
        out.append(tuple(_parse_int(v, f"matrix {i + 1} entry") % p for v in m))
    return tuple(out)


@dataclass(frozen=True)
class UncenteredCertificate:
    torus: TorusParams | None
    p: int | None = None
    matrices: tuple[Mat, ...] | None = None

    def to_json(self) -> dict:
        if self.torus is None:
            return {"torus": None}
        return {
            "torus": self.torus.as_list(),
            "p": str(self.p),
            "matrices": [[str(v) for v in m] for m in self.matrices],
        }

    @classmethod
    def from_json(cls, obj) -> UncenteredCertificate:
        if not isinstance(obj, dict) or "torus" not in obj:
            raise CertificateError("certificate must be an object with a 'torus' field")
        t = obj["torus"]
        if t is None:
            return cls(None)
        if not isinstance(t, list) or len(t) != 2:
            raise CertificateError("'torus' must be null or [r, s]")
        try:
            torus = TorusParams(_parse_int(t[0], "r"), _parse_int(t[1], "s"))
        except ValueError as exc:
            raise CertificateError(str(exc)) from None
        if "p" not in obj or "matrices" not in obj:
            raise CertificateError("certificate with a torus pair needs 'p' and 'matrices'")
        p = _parse_int(obj["p"], "p")
        if p < 2:
            raise CertificateError("p must be at least 2")
        return cls(torus, p, _parse_matrices(obj["matrices"], p))


def peripheral_word(pres: WirtingerPresentation, m: int) -> list[tuple[int, int]]:
    """mu^m followed by lambda."""
    e = 1 if m >= 0 else -1
    return [(0, e)] * abs(m) + list(pres.longitude)


def noncentral_witness(mats: Sequence[Mat], pres: WirtingerPresentation, m: int, p: int) -> int | None:
    """Index of a generator whose image fails to commute with rho(mu^m lambda)."""
    w = _eval(mats, peripheral_word(pres, m), p)
    for i, x in enumerate(mats):
        if not _commute(w, x, p):
            return i
    return None


def verify_uncentered(d: KnotDiagram, cert: UncenteredCertificate) -> Verdict:
    """Check an uncentered certificate; p is not tested for primality."""
    delta = alexander(d)
    sigma = signature(d)
    found = identify_torus(delta, sigma, d.n) if d.n >= 3 else None
    if found != cert.torus:
        want = None if found is None else found.as_list()
        got = None if cert.torus is None else cert.torus.as_list()
        return Verdict(False, 1, f"torus identification gives {want}, certificate claims {got}")
    if cert.torus is None:
        return Verdict(True)
    if not crossing_bound(cert.torus.r, cert.torus.s, d.n):
        return Verdict(False, 1, "torus pair violates |rs| < 3n")
    pres = wirtinger(d)
    p = cert.p
    mats = cert.matrices
    if len(mats) != pres.ngens:
        raise CertificateError(f"certificate has {len(mats)} matrices, diagram has {pres.ngens} generators")
    for i, x in enumerate(mats):
        if mat_det(x, p) != 1:
            return Verdict(False, 2, f"det(M_{i + 1}) != 1 mod p")
    for j, (m, k, q) in enumerate(pres.relations):
        if mat_mul(mats[m], mats[k], p) != mat_mul(mats[q], mats[m], p):
            return Verdict(False, 2, f"relation {j + 1} fails")
    rs = cert.torus.r * cert.torus.s
    if noncentral_witness(mats, pres, rs, p) is None:
        return Verdict(False, 3, "rho(mu^rs lambda) commutes with every generator image")
    return Verdict(True)


# ---------------------------------------------------------------------------
# arbitrary finite presentations


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[tuple[tuple[int, int], ...], ...]

    @classmethod
    def from_json(cls, obj) -> Presentation:
        """``{"generators": [...], "relations": [rel, ...]}``.

        A relation is a word (meaning word = 1) or ``{"lhs": w1, "rhs": w2}``.
        A word is a list of ``[generator, exponent]`` pairs, generators given
        by name or 0-based index.
        """
        if not isinstance(obj, dict) or "generators" not in obj:
            raise CertificateError("presentation needs 'generators'")
        gens = tuple(str(g) for g in obj["generators"])
        index = {g: i for i, g in enumerate(gens)}

        def word(w):
            if not isinstance(w, list):
                raise CertificateError("word must be a list of [generator, exponent] pairs")
            out = []
            for item in w:
                if not isinstance(item, list) or len(item) != 2:
                    raise CertificateError(f"bad word letter {item!r}")
                g, e = item
                if isinstance(g, str):
                    if g not in index:
                        raise CertificateError(f"unknown generator {g!r}")
                    gi = index[g]
                else:
                    gi = _parse_int(g, "generator index")
                    if not 0 <= gi < len(gens):
                        raise CertificateError(f"generator index {gi} out of range")
                out.append((gi, _parse_int(e, "exponent")))
            return out

        rels = []
        for r in obj.get("relations", []):
            if isinstance(r, dict):
                lhs, rhs = word(r.get("lhs", [])), word(r.get("rhs", []))
                rels.append(tuple(lhs + [(g, -e) for g, e in reversed(rhs)]))
            else:
                rels.append(tuple(word(r)))
        return cls(gens, tuple(rels))


@dataclass(frozen=True)
class PresentationCertificate:
    p: int
    matrices: tuple[Mat, ...]

    @classmethod
    def from_json(cls, obj) -> PresentationCertificate:
        if not isinstance(obj, dict) or "p" not in obj or "matrices" not in obj:
            raise CertificateError("certificate needs 'p' and 'matrices'")
        p = _parse_int(obj["p"], "p")
        if p < 2:
            raise CertificateError("p must be at least 2")
        return cls(p, _parse_matrices(obj["matrices"], p))

    def to_json(self) -> dict:
        return {"p": str(self.p), "matrices": [[str(v) for v in m] for m in self.matrices]}


def verify_nonabelian(pres: Presentation, cert: PresentationCertificate) -> Verdict:
    p, mats = cert.p, cert.matrices
    if len(mats) != len(pres.generators):
        raise CertificateError(f"{len(mats)} matrices for {len(pres.generators)} generators")
    for i, x in enumerate(mats):
        if mat_det(x, p) != 1:
            return Verdict(False, 4, f"det of image of {pres.generators[i]} != 1 mod p")
    for j, r in enumerate(pres.relators):
        if _eval(mats, r, p) != IDENTITY:
            return Verdict(False, 4, f"relation {j + 1} fails")
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if not _commute(mats[i], mats[j], p):
                return Verdict(True)
    return Verdict(False, 5, "all generator images commute")


# ---------------------------------------------------------------------------
# search


def _nonresidue(p: int) -> int:
    for v in range(2, p):
        if pow(v, (p - 1) // 2, p) == p - 1:
            return v
    raise ValueError(f"no quadratic nonresidue mod {p}")


def conjugacy_classes(p: int) -> list[tuple[str, Mat]]:
    """Non-central conjugacy class representatives of SL(2, p), by trace ascending."""
    out = []
    nu = _nonresidue(p)
    for tr in range(p):
        if tr == 2 % p or tr == (-2) % p:
            z = 1 if tr == 2 % p else p - 1
            out.append((f"u{tr}", (z, z, 0, z)))
            out.append((f"v{tr}", (z, z * nu % p, 0, z)))
        else:
            out.append((f"t{tr}", (0, p - 1, 1, tr)))
    return out


def class_members(p: int, rep: Mat) -> list[Mat]:
    """All matrices conjugate to ``rep`` in SL(2, p), in a fixed order."""
    a0, b0, c0, d0 = rep
    tr = (a0 + d0) % p
    if tr not in (2 % p, (-2) % p):
        out = []
        for a in range(p):
            d = (tr - a) % p
            ad1 = (a * d - 1) % p
            if ad1 == 0:
                # b = 0 with any c, or c = 0 with b != 0
                out.extend((a, 0, c, d) for c in range(p))
                out.extend((a, b, 0, d) for b in range(1, p))
            else:
                # b c = ad - 1 with b != 0
                for b in range(1, p):
                    out.append((a, b, ad1 * pow(b, -1, p) % p, d))
        return out
    z = a0
    scale = b0 * pow(z, -1, p) % p  # 1 or the nonresidue
    out = []
    seen = set()
    # z (I + scale * N(x, y)) with N(x, y) = [[-xy, x^2], [-y^2, xy]], (x, y) up to sign
    for x in range(p):
        for y in range(p):
            if x == 0 and y == 0:
                continue
            n = (-x * y, x * x, -y * y, x * y)
            m = tuple((z * ((1 if i in (0, 3) else 0) + scale * n[i])) % p for i in range(4))
            if m not in seen:
                seen.add(m)
                out.append(m)
    return out


def _propagate(assign: list, relations, p: int) -> bool:
    """Fill in generators forced by relations; False on a contradiction."""
    changed = True
    while changed:
        changed = False
        for m, k, q in relations:
            M = assign[m]
            if M is None:
                continue
            K, Q = assign[k], assign[q]
            if K is not None and Q is not None:
                if mat_mul(M, K, p) != mat_mul(Q, M, p):
                    return False
            elif K is not None:
                assign[q] = mat_mul(mat_mul(M, K, p), mat_inv(M, p), p)
                changed = True
            elif Q is not None:
                assign[k] = mat_mul(mat_mul(mat_inv(M, p), Q, p), M, p)
                changed = True
    return True


def _branch_var(assign: list, relations) -> int:
    # prefer a conjugator whose action would extend the assignment
    for m, k, q in relations:
        if assign[m] is None and (assign[k] is not None or assign[q] is not None):
            return m
    return assign.index(None)


def _search_class(pres: WirtingerPresentation, m: int, p: int, rep: Mat) -> tuple[Mat, ...] | None:
    """Depth-first search with M_1 = rep; candidates stay in rep's class.

    All Wirtinger generators are conjugate (consecutive strands are
    conjugate at each crossing), so any representation with
    rho(g_1) = rep sends every generator into rep's conjugacy class.
    """
    members = class_members(p, rep)
    rels = pres.relations
    n = pres.ngens

    def dfs(assign):
        if not _propagate(assign, rels, p):
            return None
        if all(x is not None for x in assign):
            if noncentral_witness(assign, pres, m, p) is not None:
                return tuple(assign)
            return None
        v = _branch_var(assign, rels)
        for cand in members:
            nxt = list(assign)
            nxt[v] = cand
            res = dfs(nxt)
            if res is not None:
                return res
        return None

    start = [None] * n
    start[0] = rep
    return dfs(start)


def _job(args):
    pres, m, p, rep = args
    return _search_class(pres, m, p, rep)


def _jobs_from_env() -> int:
    try:
        return max(1, int(os.environ.get("KNOTCERT_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SearchResult:
    matrices: tuple[Mat, ...] | None
    p: int | None
    primes: tuple[int, ...]


def search_noncentral(d: KnotDiagram, m: int, primes: Iterable[int], jobs: int | None = None) -> SearchResult:
    """First representation (primes ascending, classes by trace) with rho(mu^m lambda) noncentral."""
    pres = wirtinger(d)
    primes = tuple(primes)
    jobs = _jobs_from_env() if jobs is None else max(1, jobs)
    for p in primes:
        if p < 3:
            continue
        tasks = [(pres, m, p, rep) for _, rep in conjugacy_classes(p)]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                results = list(ex.map(_job, tasks))
        else:
            results = []
            for t in tasks:
                r = _job(t)
                results.append(r)
                if r is not None:
                    break
        for r in results:
            if r is not None:
                return SearchResult(r, p, primes)
    return SearchResult(None, None, primes)


def primes_up_to(P: int) -> list[int]:
    return [int(q) for q in sympy.primerange(3, P + 1)]


def search_uncentered(d: KnotDiagram, max_prime: int, primes: Iterable[int] | None = None,
                      torus: TorusParams | None = None, jobs: int | None = None) -> UncenteredCertificate | None:
    """Search for an uncentered certificate over odd primes up to ``max_prime``.

    When the diagram's invariants match no torus knot the none-certificate is
    returned. ``torus`` overrides the identified pair (for testing).
    """
    if max_prime < 2:
        raise ValueError("max_prime must be at least 2")
    if torus is None:
        torus = identify_torus(alexander(d), signature(d), d.n) if d.n >= 3 else None
        if torus is None:
            return UncenteredCertificate(None)
    ps = primes_up_to(max_prime) if primes is None else [q for q in primes if q <= max_prime]
    res = search_noncentral(d, torus.r * torus.s, ps, jobs=jobs)
    if res.matrices is None:
        return None
    return UncenteredCertificate(torus, res.p, res.matrices)


# ---------------------------------------------------------------------------
# polynomial system


class _Vars:
    """Packs exponent vectors into integers, 8 bits per variable."""

    BITS = 8

    def __init__(self, names: list[str]):
        self.names = names

    def var(self, i: int) -> int:
        return 1 << (self.BITS * i)

    def unpack(self, key: int) -> list[tuple[int, int]]:
        out = []
        i = 0
        mask = (1 << self.BITS) - 1
        while key:
            e = key & mask
            if e:
                out.append((i, e))
            key >>= self.BITS
            i += 1
        return out


Poly = dict  # packed monomial -> integer coefficient


def _padd(*ps: Poly, signs=None) -> Poly:
    out: Poly = {}
    for idx, p in enumerate(ps):
        s = 1 if signs is None else signs[idx]
        for k, v in p.items():
            nv = out.get(k, 0) + s * v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def _pmul(x: Poly, y: Poly) -> Poly:
    out: Poly = {}
    for k1, v1 in x.items():
        for k2, v2 in y.items():
            k = k1 + k2
            nv = out.get(k, 0) + v1 * v2
            if nv:
                out[k] = nv
            else:
                del out[k]
    return out


def _mmul(X, Y):
    a, b, c, d = X
    e, f, g, h = Y
    return (_padd(_pmul(a, e), _pmul(b, g)), _padd(_pmul(a, f), _pmul(b, h)),
            _padd(_pmul(c, e), _pmul(d, g)), _padd(_pmul(c, f), _pmul(d, h)))


def _msub(X, Y):
    return tuple(_padd(x, y, signs=(1, -1)) for x, y in zip(X, Y))


@dataclass(frozen=True)
class PolySystem:
    names: tuple[str, ...]
    polys: tuple[dict, ...]

    @property
    def nvars(self) -> int:
        return len(self.names)

    def _vars(self) -> _Vars:
        return _Vars(list(self.names))

    def max_degree(self) -> int:
        vs = self._vars()
        return max((sum(e for _, e in vs.unpack(k)) for p in self.polys for k in p), default=0)

    def max_coeff(self) -> int:
        return max((abs(v) for p in self.polys for v in p.values()), default=0)

    def evaluate_mod(self, values: Sequence[int], q: int) -> list[int]:
        vs = self._vars()
        out = []
        for poly in self.polys:
            acc = 0
            for k, c in poly.items():
                term = c
                for i, e in vs.unpack(k):
                    term = term * pow(values[i], e, q) % q
                acc = (acc + term) % q
            out.append(acc)
        return out

    def to_json(self) -> list:
        vs = self._vars()
        out = []
        for poly in self.polys:
            terms = [{"coeff": str(c), "monomial": [[self.names[i], e] for i, e in vs.unpack(k)]}
                     for k, c in sorted(poly.items())]
            out.append(terms)
        return out


def _var_names(n: int) -> list[str]:
    names = [f"{ch}_{i}" for i in range(1, n + 1) for ch in "abcd"]
    names += [f"t_{i}_{j}_{k}" for i in range(1, n + 1) for j in (1, 2) for k in (1, 2)]
    return names


def emit_variety_system(d: KnotDiagram, m: int) -> PolySystem:
    """Equations whose solutions are representations with rho(mu^m lambda) noncentral.

    Variables a_i, b_i, c_i, d_i (entries of M_i) and t_{i,j,k}; equations
    are det M_i = 1, the entries of M_m M_k - M_p M_m for each relation, and
    sum t_{ijk} (A M_i - M_i A)_{jk} = 1 with A = M_1^m * lambda.
    """
    n = d.n
    if n < 1:
        raise ValueError("diagram has no crossings")
    if abs(m) >= 3 * n:
        raise ValueError(f"|m| = {abs(m)} must be below 3n = {3 * n}")
    pres = wirtinger(d)
    names = _var_names(n)
    vs = _Vars(names)
    one = {0: 1}

    def v(i):
        return {vs.var(i): 1}

    M = [tuple(v(4 * i + j) for j in range(4)) for i in range(n)]
    Minv = [(x[3], {k: -c for k, c in x[1].items()}, {k: -c for k, c in x[2].items()}, x[0]) for x in M]
    polys = []
    for a, b, c, dd in M:
        polys.append(_padd(_pmul(a, dd), _pmul(b, c), one, signs=(1, -1, -1)))
    for mm, k, q in pres.relations:
        diff = _msub(_mmul(M[mm], M[k]), _mmul(M[q], M[mm]))
        polys.extend(diff)
    A = (one, {}, {}, one)
    for g, e in peripheral_word(pres, m):
        A = _mmul(A, M[g] if e > 0 else Minv[g])
    rab: Poly = {}
    for i in range(n):
        comm = _msub(_mmul(A, M[i]), _mmul(M[i], A))
        for jk in range(4):
            t = v(4 * n + 4 * i + jk)
            rab = _padd(rab, _pmul(t, comm[jk]))
    polys.append(_padd(rab, one, signs=(1, -1)))
    return PolySystem(tuple(names), tuple(polys))


def rabinowitsch_values(d: KnotDiagram, m: int, mats: Sequence[Mat], p: int) -> list[int]:
    """Full variable assignment mod p from a representation, t chosen to hit 1."""
    pres = wirtinger(d)
    n = d.n
    values = [x for mat in mats for x in mat] + [0] * (4 * n)
    A = _eval(mats, peripheral_word(pres, m), p)
    for i, x in enumerate(mats):
        comm = [(u - w) % p for u, w in zip(mat_mul(A, x, p), mat_mul(x, A, p))]
        for jk, cval in enumerate(comm):
            if cval:
                values[4 * n + 4 * i + jk] = pow(cval, -1, p)
                return values
    raise ValueError("representation makes mu^m lambda central")


def load_json(path: str):
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise CertificateError(f"{path}: invalid JSON ({exc})") from None
