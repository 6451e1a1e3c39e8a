"""
Triangulations given by explicit face gluings.

Face f of a tetrahedron is the face opposite vertex f. A gluing pairs
face f of tet T with face g of tet U; its ``perm`` lists the images in U
of the vertices of face f taken in increasing order. This extends to a
bijection of {0, 1, 2, 3} sending f to g.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Sequence

__all__ = ["Triangulation", "TriangulationError", "load_triangulation", "perm_sign"]

Face = tuple[int, int]  # (tet, face)


class TriangulationError(ValueError):
    pass


def perm_sign(p: Sequence[int]) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def face_vertices(f: int) -> tuple[int, int, int]:
    return tuple(v for v in range(4) if v != f)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.parity = {x: 0 for x in items}

    def find(self, x):
        par = 0
        while self.parent[x] != x:
            par ^= self.parity[x]
            x = self.parent[x]
        return x, par

    def union(self, x, y, rel=0) -> bool:
        """Merge with parity(x) ^ parity(y) = rel; False on a parity clash."""
        rx, px = self.find(x)
        ry, py = self.find(y)
        if rx == ry:
            return (px ^ py) == rel
        self.parent[ry] = rx
        self.parity[ry] = px ^ py ^ rel
        return True


@dataclass(frozen=True)
class Triangulation:
    """``glue[(T, f)] = (U, g, perm4)``, stored in both directions."""

    t: int
    glue: dict

    def __hash__(self):
        return hash((self.t, tuple(sorted(self.glue.items()))))

    @classmethod
    def from_gluings(cls, t: int, gluings) -> Triangulation:
        if t < 0:
            raise TriangulationError("tetrahedron count must be nonnegative")
        glue: dict = {}
        for g in gluings:
            try:
                T, f = (int(x) for x in g["from"])
                U, h = (int(x) for x in g["to"])
                img = [int(x) for x in g["perm"]]
            except (KeyError, TypeError, ValueError):
                raise TriangulationError(f"malformed gluing {g!r}") from None
            if not (0 <= T < t and 0 <= U < t and 0 <= f < 4 and 0 <= h < 4):
                raise TriangulationError(f"gluing {g!r} out of range")
            if len(img) != 3 or sorted(img) != list(face_vertices(h)):
                raise TriangulationError(f"perm {img} is not a bijection onto face {h} of tet {U}")
            p4 = [0] * 4
            p4[f] = h
            for v, w in zip(face_vertices(f), img):
                p4[v] = w
            p4 = tuple(p4)
            inv = [0] * 4
            for v, w in enumerate(p4):
                inv[w] = v
            inv = tuple(inv)
            if (T, f) == (U, h):
                raise TriangulationError(f"face {(T, f)} glued to itself")
            for key, val in (((T, f), (U, h, p4)), ((U, h), (T, f, inv))):
                if key in glue and glue[key] != val:
                    raise TriangulationError(f"face {key} glued twice inconsistently")
                glue[key] = val
        return cls(t, glue)

    @classmethod
    def from_json(cls, obj) -> Triangulation:
        if not isinstance(obj, dict) or "tets" not in obj:
            raise TriangulationError("triangulation needs 'tets' and 'gluings'")
        return cls.from_gluings(int(obj["tets"]), obj.get("gluings", []))

    def to_json(self) -> dict:
        out = []
        for (T, f), (U, h, p4) in sorted(self.glue.items()):
            if (T, f) < (U, h):
                out.append({"from": [T, f], "to": [U, h],
                            "perm": [p4[v] for v in face_vertices(f)]})
        return {"tets": self.t, "gluings": out}

    # -- combinatorics ----------------------------------------------------

    @cached_property
    def boundary_faces(self) -> tuple[Face, ...]:
        return tuple((T, f) for T in range(self.t) for f in range(4) if (T, f) not in self.glue)

    @cached_property
    def face_pairs(self) -> tuple[tuple[Face, Face, tuple[int, ...]], ...]:
        """Each glued pair once, from its smaller side."""
        return tuple(((T, f), (U, h), p4) for (T, f), (U, h, p4) in sorted(self.glue.items())
                     if (T, f) < (U, h))

    @cached_property
    def vertex_classes(self) -> dict[tuple[int, int], int]:
        uf = _UnionFind([(T, v) for T in range(self.t) for v in range(4)])
        for (T, f), (U, _h, p4) in self.glue.items():
            for v in face_vertices(f):
                uf.union((T, v), (U, p4[v]))
        return _number_classes(uf, [(T, v) for T in range(self.t) for v in range(4)])[0]

    @cached_property
    def _edges(self):
        items = [(T, e) for T in range(self.t) for e in combinations(range(4), 2)]
        uf = _UnionFind(items)
        valid = True
        for (T, f), (U, _h, p4) in self.glue.items():
            fv = face_vertices(f)
            for a, b in combinations(fv, 2):
                x, y = p4[a], p4[b]
                rel = 0 if x < y else 1
                if not uf.union((T, (a, b)), (U, (min(x, y), max(x, y))), rel):
                    valid = False
        classes, orient = _number_classes(uf, items)
        return classes, orient, valid

    @property
    def edge_classes(self) -> dict[tuple[int, tuple[int, int]], int]:
        """Edge class of each tet edge (T, (a, b)) with a < b."""
        return self._edges[0]

    @property
    def edge_orientation(self) -> dict[tuple[int, tuple[int, int]], int]:
        """+1 when a -> b agrees with the class orientation, else -1."""
        return self._edges[1]

    @property
    def edges_valid(self) -> bool:
        """False if some edge is identified with itself reversed."""
        return self._edges[2]

    @property
    def num_vertices(self) -> int:
        return len(set(self.vertex_classes.values()))

    @property
    def num_edges(self) -> int:
        return len(set(self.edge_classes.values()))

    @property
    def num_faces(self) -> int:
        return len(self.face_pairs) + len(self.boundary_faces)

    def orientation(self) -> list[int] | None:
        """Tet orientation signs making all gluings orientation-reversing, or None."""
        sign = [0] * self.t
        for start in range(self.t):
            if sign[start]:
                continue
            sign[start] = 1
            stack = [start]
            while stack:
                T = stack.pop()
                for f in range(4):
                    if (T, f) not in self.glue:
                        continue
                    U, _h, p4 = self.glue[(T, f)]
                    want = -sign[T] * perm_sign(p4)
                    if sign[U] == 0:
                        sign[U] = want
                        stack.append(U)
                    elif sign[U] != want:
                        return None
        return sign

    def is_orientable(self) -> bool:
        return self.orientation() is not None

    @cached_property
    def boundary_vertex_classes(self) -> frozenset[int]:
        vc = self.vertex_classes
        return frozenset(vc[(T, v)] for T, f in self.boundary_faces for v in face_vertices(f))

    def boundary_edge_classes(self) -> dict[Face, tuple[int, int, int]]:
        """Edge class opposite each corner of each boundary face, corners ascending."""
        ec = self.edge_classes
        out = {}
        for T, f in self.boundary_faces:
            fv = face_vertices(f)
            opp = []
            for v in fv:
                a, b = (w for w in fv if w != v)
                opp.append(ec[(T, (a, b))])
            out[(T, f)] = tuple(opp)
        return out

    def is_one_vertex_torus_boundary(self) -> bool:
        bf = self.boundary_faces
        if len(bf) != 2:
            return False
        if len(self.boundary_vertex_classes) != 1:
            return False
        be = self.boundary_edge_classes()
        e1, e2 = (set(be[F]) for F in bf)
        return len(e1) == 3 and e1 == e2


def _number_classes(uf: _UnionFind, items):
    roots: dict = {}
    classes = {}
    orient = {}
    for x in items:
        r, par = uf.find(x)
        if r not in roots:
            roots[r] = len(roots)
        classes[x] = roots[r]
        orient[x] = -1 if par else 1
    return classes, orient


def load_triangulation(path: str) -> Triangulation:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise TriangulationError(f"{path}: invalid JSON ({exc})") from None
    return Triangulation.from_json(obj)
