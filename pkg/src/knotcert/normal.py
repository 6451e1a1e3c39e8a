"""
Normal surface coordinates: validation, weights, Euler characteristic and
boundary curves.

Each tetrahedron contributes seven coordinates: the triangles at vertices
0, 1, 2, 3, then the quadrilaterals separating {01|23}, {02|13}, {03|12}.
Connectedness and orientability of the surface are not examined; a vector
reported valid may describe a disconnected or one-sided surface.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .invariants import alexander
from .triangulation import Triangulation, face_vertices

__all__ = [
    "QUADS",
    "NormalError",
    "ValidityReport",
    "validate_normal",
    "weight",
    "edge_weight",
    "check_bounds",
    "euler_char",
    "face_arcs",
    "boundary_curve",
    "boundary_nontrivial",
    "vertex_link",
    "delta_nontrivial_gate",
    "load_normal_vector",
]

# quad q separates QUADS[q][0] from QUADS[q][1]
QUADS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


class NormalError(ValueError):
    pass


def quad_index(u: int, v: int) -> int:
    """The quad type that keeps u and v on the same side."""
    pair = {u, v}
    for q, (x, y) in enumerate(QUADS):
        if pair == set(x) or pair == set(y):
            return q
    raise ValueError(f"no quad pairs {u} with {v}")


def _block(v: Sequence[int], T: int) -> Sequence[int]:
    return v[7 * T:7 * T + 7]


def face_arcs(T: Triangulation, v: Sequence[int], tet: int, f: int) -> dict[int, int]:
    """Normal arcs on face f of ``tet``, keyed by the corner they cut off."""
    b = _block(v, tet)
    return {u: b[u] + b[4 + quad_index(u, f)] for u in face_vertices(f)}


def _check_dim(T: Triangulation, v: Sequence[int]) -> None:
    if len(v) != 7 * T.t:
        raise NormalError(f"vector has {len(v)} entries, expected 7t = {7 * T.t}")


@dataclass
class ValidityReport:
    negative: list[int] = field(default_factory=list)
    matching: list[dict] = field(default_factory=list)
    quads: list[int] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not (self.negative or self.matching or self.quads)

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "negative": self.negative,
            "matching": self.matching,
            "quad_condition": self.quads,
            "note": "connectedness and orientability are not checked",
        }


def validate_normal(T: Triangulation, v: Sequence[int]) -> ValidityReport:
    """Report every negative entry, matching residual and quad conflict.

    Matching residuals are listed by glued face pair (in sorted order) and
    corner, as (left count) - (right count).
    """
    _check_dim(T, v)
    rep = ValidityReport()
    rep.negative = [i for i, x in enumerate(v) if x < 0]
    for (A, f), (B, g), p4 in T.face_pairs:
        left = face_arcs(T, v, A, f)
        right = face_arcs(T, v, B, g)
        for u in face_vertices(f):
            r = left[u] - right[p4[u]]
            if r:
                rep.matching.append({"face": [A, f], "to": [B, g], "corner": u, "residual": r})
    for tet in range(T.t):
        qs = _block(v, tet)[4:]
        if sum(1 for x in qs if x != 0) > 1:
            rep.quads.append(tet)
    return rep


def weight(v: Sequence[int]) -> int:
    """L1 norm: total number of elementary disks."""
    return sum(abs(x) for x in v)


def _tet_edge_weight(b: Sequence[int], a: int, c: int) -> int:
    # triangles at both ends, and the two quads that do not keep a and c together
    q_skip = quad_index(a, c)
    return b[a] + b[c] + sum(b[4 + q] for q in range(3) if q != q_skip)


def edge_weights(T: Triangulation, v: Sequence[int]) -> dict[int, int]:
    """Intersection count with each edge class, read from its first occurrence."""
    _check_dim(T, v)
    out: dict[int, int] = {}
    for (tet, (a, c)), cls in sorted(T.edge_classes.items()):
        if cls not in out:
            out[cls] = _tet_edge_weight(_block(v, tet), a, c)
    return out


def edge_weight(T: Triangulation, v: Sequence[int]) -> int:
    """Number of points where the surface meets the 1-skeleton."""
    return sum(edge_weights(T, v).values())


def check_bounds(T: Triangulation, v: Sequence[int]) -> bool:
    """Every coordinate at most 2^(7t-1) and L1 norm at most 7t * 2^(7t)."""
    _check_dim(T, v)
    t = T.t
    cap = 1 << max(7 * t - 1, 0)
    return all(x <= cap for x in v) and weight(v) <= 7 * t * (1 << (7 * t))


def euler_char(T: Triangulation, v: Sequence[int]) -> int:
    """V - E + F of the surface, counted cell by cell.

    F counts disks, E counts normal arcs (an arc on a glued face is shared
    by the disks on its two sides), V counts points on edge classes.
    """
    rep = validate_normal(T, v)
    if not rep.valid:
        raise NormalError("euler_char needs a valid normal vector")
    F = weight(v)
    E = 0
    for (A, f), _, _ in T.face_pairs:
        E += sum(face_arcs(T, v, A, f).values())
    for A, f in T.boundary_faces:
        E += sum(face_arcs(T, v, A, f).values())
    V = edge_weight(T, v)
    chi = V - E + F
    assert euler_char_per_disk(T, v) == chi, "cell count disagrees with per-disk count"
    return chi


def vertex_link(T: Triangulation, vertex_class: int) -> list[int]:
    """Normal vector of the link of one vertex class (triangles only)."""
    v = [0] * (7 * T.t)
    for (tet, u), cls in T.vertex_classes.items():
        if cls == vertex_class:
            v[7 * tet + u] = 1
    return v


def boundary_curve(T: Triangulation, v: Sequence[int]) -> tuple[int, int, int]:
    """Arc counts (a, b, c) of the boundary curve on a one-vertex boundary torus.

    The three counts are indexed by the boundary edge classes in increasing
    order: each is the number of arcs cutting off the corner opposite that
    edge. Both boundary triangles must give the same triple.
    """
    if not T.is_one_vertex_torus_boundary():
        raise NormalError("boundary is not a two-triangle one-vertex torus")
    rep = validate_normal(T, v)
    if not rep.valid:
        raise NormalError("boundary_curve needs a valid normal vector")
    be = T.boundary_edge_classes()
    triples = []
    for tet, f in T.boundary_faces:
        arcs = face_arcs(T, v, tet, f)
        by_edge = {}
        for corner, e in zip(face_vertices(f), be[(tet, f)]):
            by_edge[e] = arcs[corner]
        triples.append(tuple(by_edge[e] for e in sorted(by_edge)))
    if triples[0] != triples[1]:
        raise NormalError(f"boundary triangles disagree: {triples[0]} vs {triples[1]}")
    return triples[0]


def boundary_nontrivial(c: Sequence[int]) -> bool:
    """For boundary counts (2a, 2b, 2c): true iff a+b or a+c is odd.

    The counts describe two parallel copies of the curve (a, b, c), whose
    intersections with the three boundary edges are a+b, a+c and b+c. The
    test says this curve is nonzero in H_1 of the torus with Z/2
    coefficients.
    """
    if len(c) != 3 or any(x < 0 for x in c):
        raise NormalError("boundary curve must be three nonnegative counts")
    if any(x % 2 for x in c):
        raise NormalError("boundary counts of an annulus must all be even")
    a, b, cc = (x // 2 for x in c)
    return (a + b) % 2 == 1 or (a + cc) % 2 == 1


def delta_nontrivial_gate(d) -> bool:
    """True iff the Alexander polynomial is not 1 (knots with Delta = 1 slip through)."""
    return not alexander(d).is_one()


def load_normal_vector(path: str) -> list[int]:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise NormalError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(obj, dict) or not isinstance(obj.get("coords"), list):
        raise NormalError("normal vector file needs a 'coords' list")
    try:
        return [int(x) for x in obj["coords"]]
    except (TypeError, ValueError):
        raise NormalError("coordinates must be integers or decimal strings") from None


def disk_edges(tet_vertex_or_quad: int) -> list[tuple[int, int]]:
    """Tet edges met by a disk type (0-3 triangles, 4-6 quads)."""
    k = tet_vertex_or_quad
    if k < 4:
        return [tuple(sorted((k, w))) for w in range(4) if w != k]
    (x, y), (z, w) = QUADS[k - 4]
    return sorted(tuple(sorted(e)) for e in ((x, z), (x, w), (y, z), (y, w)))


def euler_char_per_disk(T: Triangulation, v: Sequence[int]):
    """Euler characteristic from local contributions, as a Fraction.

    A disk with k corners contributes 1 - k/2 (each arc is shared by at
    most two disks, boundary arcs by one) plus 1/deg for each corner,
    where deg counts disks through that point of the edge.
    """
    bnd = set(T.boundary_faces)
    ec = T.edge_classes
    # a point on an edge is a corner of one disk in each tet around that edge
    occ: dict[int, int] = {}
    for key, cls in ec.items():
        occ[cls] = occ.get(cls, 0) + 1
    total = Fraction(0)
    for tet in range(T.t):
        b = _block(v, tet)
        for k in range(7):
            if b[k] == 0:
                continue
            edges = disk_edges(k)
            sides = 0
            for f in range(4):
                in_face = [e for e in edges if f not in e]
                if len(in_face) == 2:
                    sides += Fraction(1) if (tet, f) in bnd else Fraction(1, 2)
            corners = sum(Fraction(1, occ[ec[(tet, e)]]) for e in edges)
            total += b[k] * (1 - sides + corners)
    return total
