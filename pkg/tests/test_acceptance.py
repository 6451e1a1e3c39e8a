"""End-to-end acceptance checks, one test per criterion.

Each test records PASS or FAIL in RESULTS; the conftest terminal summary
prints one line per criterion. Run alone with

    pytest tests/test_acceptance.py -v
"""

import random
import time
from contextlib import contextmanager
from math import gcd

import pytest

from conftest import fixture_path
from knotcert.braids import braid_closure, random_knot_diagram, torus_braid, torus_diagram
from knotcert.diagram import mirror, wirtinger
from knotcert.homology import (
    HomologyError,
    build_complex,
    cocycle_bound,
    generating_cocycle,
    homology_h1,
    verify_cocycle,
)
from knotcert.intpoly import IntPoly, interpolate, poly_det, poly_gcd
from knotcert.invariants import alexander, signature
from knotcert.normal import boundary_nontrivial, euler_char, validate_normal, vertex_link
from knotcert.repcert import (
    Fp2Matrix,
    check_relations,
    emit_variety_system,
    noncentral_witness,
    rabinowitsch_values,
    search_noncentral,
    search_uncentered,
    verify_uncentered,
)
from knotcert.torus import TorusParams, identify_torus, torus_alexander, torus_signature
from knotcert.triangulation import load_triangulation
from oracles import (
    cofactor_det,
    half_curve_nontrivial,
    matching_broken,
    seifert_alexander,
    seifert_signature,
)
from test_homology import oracle_h1

RESULTS = {}


@contextmanager
def criterion(k, title):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        RESULTS[k] = ("FAIL", title, time.perf_counter() - t0)
        raise
    RESULTS[k] = ("PASS", title, time.perf_counter() - t0)


def coprime_pairs(limit):
    return [(r, s) for s in range(2, limit) for r in range(s + 1, limit // s + 1)
            if r * s <= limit and gcd(r, s) == 1]


def test_c01_invariant_table():
    table = {
        "unknot": ([1], 2),
        "3_1": ([1, 1, 1], 2),
        "3_1 mirror": ([-1, -1, -1], 2),
        "4_1": ([1, -2, 1, -2], 3),
        "5_1": ([1] * 5, 2),
        "5_2": ([1, 1, 1, 2, -1, 2], 3),
        "T(4,3)": (torus_braid(4, 3), 3),
        "T(5,3)": (torus_braid(5, 3), 3),
    }
    with criterion(1, "invariant table matches the Seifert-matrix oracle"):
        for name, (word, s) in table.items():
            # oracle values are computed before the pipeline runs
            ref_delta = seifert_alexander(word, s)
            ref_sigma = seifert_signature(word, s)
            t0 = time.perf_counter()
            d = braid_closure(word, s)
            delta, sigma = alexander(d), signature(d)
            elapsed = time.perf_counter() - t0
            assert (delta.minexp, delta.coeffs) == ref_delta, name
            assert sigma == ref_sigma, name
            assert elapsed < 1.0, (name, elapsed)
        assert signature(torus_diagram(3, 2)) == -2
        assert alexander(braid_closure([1], 2)).is_one()


def test_c02_torus_round_trip():
    pairs = coprime_pairs(60)
    with criterion(2, f"torus round trip on {len(pairs)} pairs and mirrors"):
        t0 = time.perf_counter()
        for r, s in pairs:
            d = torus_diagram(r, s)
            md = mirror(d)
            assert r * s < 3 * d.n
            assert identify_torus(alexander(d), signature(d), d.n) == TorusParams(r, s), (r, s)
            assert identify_torus(alexander(md), signature(md), md.n) == TorusParams(-r, s), (r, s)
        assert time.perf_counter() - t0 < 60


def test_c03_signature_formula_gate():
    with criterion(3, "closed-form torus signature equals the Goeritz signature"):
        for r, s in coprime_pairs(60):
            d = torus_diagram(r, s)
            assert torus_signature(r, s) == signature(d), (r, s)
            assert torus_signature(-r, s) == signature(mirror(d)), (r, s)


def test_c04_injectivity():
    with criterion(4, "(Delta, sigma) injective over coprime rs <= 200"):
        t0 = time.perf_counter()
        seen = {}
        for r, s in coprime_pairs(200):
            for rr in (r, -r):
                delta = torus_alexander(rr, s)
                key = (delta.minexp, delta.coeffs, torus_signature(rr, s))
                assert key not in seen, ((rr, s), seen.get(key))
                seen[key] = (rr, s)
        assert time.perf_counter() - t0 < 10


def test_c05_certificate_search():
    with criterion(5, "figure-eight certificate accepted, 3_1 and T(5,2) have none"):
        t0 = time.perf_counter()
        f8 = braid_closure([1, -2, 1, -2], 3)
        cert = search_uncentered(f8, 100)
        assert cert is not None and verify_uncentered(f8, cert).accepted
        for d in (torus_diagram(3, 2), torus_diagram(5, 2)):
            for dd in (d, mirror(d)):
                assert search_uncentered(dd, 13) is None
        assert time.perf_counter() - t0 < 300


def test_c06_variety_system_audit():
    rng = random.Random(606)
    with criterion(6, "variety system shape on 25 random diagrams, certificates zero it"):
        substituted = 0
        for _ in range(25):
            s = rng.choice([2, 3, 4])
            n = rng.randint(max(s, 3), 12)
            if (n - s + 1) % 2:
                n -= 1 if n > max(s, 3) else -1
            d = random_knot_diagram(rng, n, s)
            n = d.n
            m = rng.randint(-n, n)
            system = emit_variety_system(d, m)
            assert system.nvars == 8 * n
            assert len(system.polys) == 5 * n + 1
            assert system.max_degree() <= 5 * n + 2
            assert system.max_coeff() <= 2 ** (5 * n + 1)
            found = search_noncentral(d, m, [3, 5, 7], jobs=1)
            if found.matrices is not None:
                # the checks verify_uncentered runs after the invariant step
                pres = wirtinger(d)
                assert check_relations([Fp2Matrix(found.p, *x) for x in found.matrices], pres)
                assert noncentral_witness(found.matrices, pres, m, found.p) is not None
                vals = rabinowitsch_values(d, m, found.matrices, found.p)
                assert system.evaluate_mod(vals, found.p) == [0] * len(system.polys)
                substituted += 1
        assert substituted >= 10


def test_c07_polynomial_oracles():
    rng = random.Random(707)
    with criterion(7, "poly_det, poly_gcd and interpolation against oracles (500 each)"):
        t0 = time.perf_counter()
        for _ in range(500):
            k = rng.randint(1, 6)
            A = [[IntPoly(tuple(rng.randint(-9, 9) for _ in range(rng.randint(0, 5))))
                  for _ in range(k)] for _ in range(k)]
            assert list(poly_det(A).coeffs) == cofactor_det([[e.coeffs for e in row] for row in A])
        done = 0
        while done < 500:
            h = IntPoly(tuple(rng.randint(-6, 6) for _ in range(rng.randint(2, 4))))
            if h.degree < 1:
                continue
            a, b, c = (IntPoly(tuple(rng.randint(-6, 6) for _ in range(rng.randint(1, 4)))) for _ in range(3))
            if a.is_zero() or poly_gcd([a, b, c]).degree != 0:
                continue
            assert poly_gcd([h * a, h * b, h * c]) == h.primitive()
            done += 1
        for _ in range(500):
            deg = rng.randint(0, 10)
            f = IntPoly(tuple(rng.randint(-10 ** 6, 10 ** 6) for _ in range(deg + 1)))
            xs = rng.sample(range(-50, 50), deg + 1)
            assert interpolate([(x, f(x)) for x in xs]) == f
        assert time.perf_counter() - t0 < 30


NORMAL_FIXTURES = ["ball_1tet", "solid_torus_2tet", "closed_2tet", "torus_x_interval",
                   "solid_torus_4tet", "s3_doubled_tet"]


def test_c08_normal_coordinates():
    with criterion(8, "vertex links, matching perturbations and boundary parity"):
        # vertices whose link is a closed surface
        interior = 0
        for name in NORMAL_FIXTURES:
            T = load_triangulation(fixture_path(name + ".json"))
            bnd = T.boundary_vertex_classes
            links = []
            for cls in sorted(set(T.vertex_classes.values())):
                v = vertex_link(T, cls)
                assert validate_normal(T, v).valid
                links.append(v)
                if cls not in bnd:
                    assert euler_char(T, v) == 2
                    interior += 1
            for base in links:
                for i in range(7 * T.t):
                    for delta in (1, -1):
                        w = list(base)
                        w[i] += delta
                        if matching_broken(T, w):
                            assert not validate_normal(T, w).valid
        assert interior == 5
        for a in range(11):
            for b in range(11):
                for c in range(11):
                    assert boundary_nontrivial((2 * a, 2 * b, 2 * c)) == half_curve_nontrivial(2 * a, 2 * b, 2 * c)


def test_c09_generating_cocycles():
    with criterion(9, "primitive cocycles on solid tori and T^2 x I, ball errors"):
        for name in ("solid_torus_2tet", "solid_torus_4tet", "torus_x_interval"):
            T = load_triangulation(fixture_path(name + ".json"))
            cx = build_complex(T)
            h = homology_h1(cx)
            assert (h.betti, h.torsion) == oracle_h1(cx)
            phi = generating_cocycle(T)
            assert verify_cocycle(T, phi)
            assert 3 * sum(map(abs, phi)) <= cocycle_bound(T.t)
        ball = load_triangulation(fixture_path("ball_1tet.json"))
        assert oracle_h1(build_complex(ball)) == (0, ())
        with pytest.raises(HomologyError):
            generating_cocycle(ball)


def test_c10_polynomial_scaling():
    with criterion(10, "invariant runtime grows at most 10x per doubling of n"):
        times = []
        for n in (20, 40, 80, 160):
            d = torus_diagram(n // 2, 3)
            assert d.n == n
            t0 = time.perf_counter()
            alexander(d)
            signature(d)
            times.append(time.perf_counter() - t0)
        ratios = [b / max(a, 1e-3) for a, b in zip(times, times[1:])]
        assert all(r <= 10 for r in ratios), (times, ratios)
        assert sum(times) < 300
