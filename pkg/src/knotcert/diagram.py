"""
Oriented knot diagrams given as PD codes.

Convention: a crossing ``X(a, b, c, d)`` lists the incoming under-strand
first and then the remaining three ends counterclockwise, so the under
strand runs a -> c. The over strand runs either d -> b (a positive
crossing) or b -> d (a negative one); which of the two is read off the
orientation of the whole diagram, not from label arithmetic.

Positions around a crossing are numbered 0..3 in that order. The corner
``(c, i)`` is the region between positions i and i+1 (indices mod 4).
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "DiagramError",
    "KnotDiagram",
    "WirtingerPresentation",
    "CheckerboardData",
    "parse_pd",
    "load_diagram",
    "wirtinger",
    "longitude_word",
    "checkerboard",
    "mirror",
]


class DiagramError(ValueError):
    """Raised for malformed or unsupported diagram input."""


Word = tuple[tuple[int, int], ...]  # (generator index, exponent +-1)

_TUPLE_RE = re.compile(r"X\s*[\(\[]([^\)\]]*)[\)\]]")


@dataclass(frozen=True)
class KnotDiagram:
    """A validated single-component oriented PD code.

    Arc labels are normalized to 1..2n in traversal order: arc k+1 is the
    arc following arc k along the orientation.
    """

    crossings: tuple[tuple[int, int, int, int], ...] = ()

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def is_trivial(self) -> bool:
        """Diagrams with at most two crossings always represent the unknot."""
        return self.n <= 2

    @cached_property
    def signs(self) -> tuple[int, ...]:
        """Crossing signs: +1 when the over strand runs d -> b."""
        out = [0] * self.n
        if self.n:
            ci, pos = 0, 2
            while True:
                ci, inpos = self.other_end(ci, pos)
                if inpos != 0:
                    out[ci] = 1 if inpos == 3 else -1
                pos = (inpos + 2) % 4
                if (ci, pos) == (0, 2):
                    break
        return tuple(out)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def to_text(self) -> str:
        return ", ".join("X(%d,%d,%d,%d)" % x for x in self.crossings)

    def to_json(self) -> dict:
        return {"pd": [list(x) for x in self.crossings]}

    @cached_property
    def _ends(self) -> dict[int, list[tuple[int, int]]]:
        ends: dict[int, list[tuple[int, int]]] = {}
        for ci, x in enumerate(self.crossings):
            for pos, lab in enumerate(x):
                ends.setdefault(lab, []).append((ci, pos))
        return ends

    def other_end(self, ci: int, pos: int) -> tuple[int, int]:
        """The endpoint at the far end of the arc leaving (ci, pos)."""
        e1, e2 = self._ends[self.crossings[ci][pos]]
        return e2 if e1 == (ci, pos) else e1


def _orient(raw: Sequence[tuple[int, int, int, int]]) -> tuple[tuple[int, int, int, int], ...]:
    """Check a raw PD code and relabel its arcs 1..2n in traversal order."""
    n = len(raw)
    if n == 0:
        return ()
    ends: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(raw):
        for pos, lab in enumerate(x):
            ends.setdefault(lab, []).append((ci, pos))
    for lab, e in ends.items():
        if len(e) != 2:
            raise DiagramError(f"arc label {lab} appears {len(e)} times, expected 2")

    def far(ci, pos):
        e1, e2 = ends[raw[ci][pos]]
        return e2 if e1 == (ci, pos) else e1

    order = []  # arc labels in traversal order
    ci, pos = 0, 2
    start = (ci, pos)
    while True:
        order.append(raw[ci][pos])
        if len(order) > 2 * n:
            raise DiagramError("traversal does not close up")
        ci, inpos = far(ci, pos)
        if inpos == 2:
            raise DiagramError(f"inconsistent orientation at crossing {ci + 1}")
        pos = (inpos + 2) % 4
        if (ci, pos) == start:
            break
        if inpos == 0 and len(order) > 2 * n:
            raise DiagramError("traversal does not close up")
    if len(order) != 2 * n or len(set(order)) != 2 * n:
        raise DiagramError("diagram has more than one component")
    k0 = order.index(min(order))
    m = 2 * n
    new = {lab: (i - k0) % m + 1 for i, lab in enumerate(order)}
    return tuple(tuple(new[lab] for lab in x) for x in raw)


def diagram_from_tuples(tuples: Iterable[Sequence[int]]) -> KnotDiagram:
    raw = []
    for x in tuples:
        x = tuple(int(v) for v in x)
        if len(x) != 4:
            raise DiagramError(f"crossing {x} does not have 4 entries")
        raw.append(x)
    return KnotDiagram(_orient(raw))


def parse_pd(text: str) -> KnotDiagram:
    """Parse ``X(a,b,c,d), X(...)`` text (or the JSON ``{"pd": ...}`` form)."""
    stripped = text.strip()
    if not stripped:
        return KnotDiagram(())
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
            tuples = obj["pd"]
        except (ValueError, KeyError, TypeError) as exc:
            raise DiagramError(f"bad JSON diagram: {exc}") from None
        if not isinstance(tuples, list):
            raise DiagramError("'pd' must be a list of 4-tuples")
        return diagram_from_tuples(tuples)
    tuples = []
    pos = 0
    for m in _TUPLE_RE.finditer(stripped):
        gap = stripped[pos:m.start()]
        if gap.strip(" \t\r\n,"):
            raise DiagramError(f"unexpected text {gap.strip()!r}")
        pos = m.end()
        parts = [p.strip() for p in m.group(1).split(",")]
        try:
            vals = [int(p) for p in parts]
        except ValueError:
            raise DiagramError(f"non-integer label in {m.group(0)!r}") from None
        tuples.append(vals)
    tail = stripped[pos:]
    if tail.strip(" \t\r\n,"):
        raise DiagramError(f"unexpected text {tail.strip()!r}")
    return diagram_from_tuples(tuples)


def load_diagram(path: str) -> KnotDiagram:
    with open(path, encoding="utf-8") as fh:
        return parse_pd(fh.read())


def mirror(d: KnotDiagram) -> KnotDiagram:
    """Swap over and under at every crossing."""
    out = []
    for (a, b, c, e), s in zip(d.crossings, d.signs):
        out.append((e, a, b, c) if s > 0 else (b, c, e, a))
    return diagram_from_tuples(out)


# ---------------------------------------------------------------------------
# Wirtinger presentation


@dataclass(frozen=True)
class WirtingerPresentation:
    """Generators 0..n-1 (g_1..g_n); relation (m, k, p) means g_m g_k g_m^-1 = g_p."""

    ngens: int
    relations: tuple[tuple[int, int, int], ...]
    meridian: Word
    longitude: Word

    def relator_words(self) -> list[Word]:
        return [((m, 1), (k, 1), (m, -1), (p, -1)) for m, k, p in self.relations]


def strands(d: KnotDiagram) -> dict[int, int]:
    """Map each arc label to its strand (0-based generator index).

    A strand is a maximal run of arcs not broken by an undercrossing;
    generator 0 is the strand containing arc 1.
    """
    n = d.n
    m = 2 * n
    under_in = {x[0] for x in d.crossings}
    out = {1: 0}
    b = 0
    for e in range(2, m + 1):
        if e - 1 in under_in:
            b += 1
        out[e] = b % n
    return out


def wirtinger(d: KnotDiagram) -> WirtingerPresentation:
    if d.n < 1:
        raise DiagramError("Wirtinger presentation needs at least one crossing")
    st = strands(d)
    rels = []
    for (a, b, c, _), s in zip(d.crossings, d.signs):
        over, x_in, x_out = st[b], st[a], st[c]
        rels.append((over, x_out, x_in) if s > 0 else (over, x_in, x_out))
    return WirtingerPresentation(d.n, tuple(rels), ((0, 1),), longitude_word(d))


def longitude_word(d: KnotDiagram) -> Word:
    """Longitude based on arc 1: over-generators met at undercrossings, then mu^-w."""
    if d.n < 1:
        raise DiagramError("longitude needs at least one crossing")
    st = strands(d)
    by_under = {x[0]: ci for ci, x in enumerate(d.crossings)}
    word = []
    for e in range(1, 2 * d.n + 1):
        ci = by_under.get(e)
        if ci is not None:
            word.append((st[d.crossings[ci][1]], d.signs[ci]))
    w = d.writhe
    word.extend([(0, -1 if w > 0 else 1)] * abs(w))
    return _free_reduce(word)


def _free_reduce(word) -> Word:
    out: list[tuple[int, int]] = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


# ---------------------------------------------------------------------------
# faces and checkerboard


@dataclass(frozen=True)
class CheckerboardData:
    """Shading of the complementary regions.

    ``regions`` lists the corners of each region; ``white`` lists the
    indices (into ``regions``) of the white regions X_0..X_k in order.
    ``corner_region[c][i]`` is the region in corner (c, i).
    """

    regions: tuple[tuple[tuple[int, int], ...], ...]
    corner_region: tuple[tuple[int, int, int, int], ...]
    shaded: tuple[bool, ...]
    white: tuple[int, ...]
    eta: tuple[int, ...]
    types: tuple[str, ...]

    def white_index(self, region: int) -> int:
        return self.white.index(region)


def faces(d: KnotDiagram) -> list[list[tuple[int, int]]]:
    """Complementary regions of the diagram as lists of corners."""
    seen = set()
    out = []
    for c0 in range(d.n):
        for i0 in range(4):
            if (c0, i0) in seen:
                continue
            face = []
            c, i = c0, i0
            while (c, i) not in seen:
                seen.add((c, i))
                face.append((c, i))
                c, i = d.other_end(c, (i + 1) % 4)
            out.append(face)
    return out


def checkerboard(d: KnotDiagram, flip: bool = False) -> CheckerboardData:
    """Canonical checkerboard coloring and per-crossing (eta, type).

    The canonical coloring has fewer white regions; on a tie the region
    containing the lowest corner is white. ``flip=True`` returns the other
    coloring.
    """
    if d.n < 1:
        raise DiagramError("checkerboard needs at least one crossing")
    fs = faces(d)
    fs.sort(key=lambda f: min(c * 4 + i for c, i in f))
    if len(fs) != d.n + 2:
        raise DiagramError(f"diagram has {len(fs)} regions, expected {d.n + 2}; not planar or disconnected")
    region = [[-1] * 4 for _ in range(d.n)]
    for r, f in enumerate(fs):
        for c, i in f:
            region[c][i] = r
    color = [-1] * len(fs)
    color[0] = 0
    adj: list[list[int]] = [[] for _ in fs]
    for c in range(d.n):
        for i in range(4):
            adj[region[c][i]].append(region[c][(i + 1) % 4])
    queue = deque([0])
    while queue:
        r = queue.popleft()
        for q in adj[r]:
            if color[q] < 0:
                color[q] = 1 - color[r]
                queue.append(q)
            elif color[q] == color[r]:
                raise DiagramError("regions admit no checkerboard coloring")
    if min(color) < 0:
        raise DiagramError("underlying graph is disconnected")
    zeros = color.count(0)
    ones = len(color) - zeros
    white_color = 0 if zeros <= ones else 1
    if flip:
        white_color = 1 - white_color
    shaded = tuple(col != white_color for col in color)
    white = tuple(r for r in range(len(fs)) if not shaded[r])
    eta, types = [], []
    for c, s in enumerate(d.signs):
        # corner 1 (positions 1 -> 2) starts at an over end and turns counterclockwise
        eta.append(1 if shaded[region[c][1]] else -1)
        between_outs = region[c][1] if s > 0 else region[c][2]
        types.append("I" if not shaded[between_outs] else "II")
    return CheckerboardData(
        regions=tuple(tuple(f) for f in fs),
        corner_region=tuple(tuple(r) for r in region),
        shaded=shaded,
        white=white,
        eta=tuple(eta),
        types=tuple(types),
    )
