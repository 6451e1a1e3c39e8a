"""PD codes for braid closures and standard torus knot diagrams."""

from __future__ import annotations

from math import gcd
from typing import Sequence

from .diagram import KnotDiagram, diagram_from_tuples

__all__ = ["braid_closure", "torus_braid", "torus_diagram", "is_knot_braid", "random_knot_diagram"]


def braid_closure(word: Sequence[int], strands: int) -> KnotDiagram:
    """Closure of a braid word; generator i > 0 is sigma_i, -i its inverse.

    Strands run upward, positions 1..strands from left to right. At a
    positive generator the strand coming from the left passes over.
    """
    pos = list(range(1, strands + 1))  # current arc label at each position
    nxt = strands + 1
    raw = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise ValueError(f"generator {g} out of range for {strands} strands")
        x, y = pos[i], pos[i + 1]
        x2, y2 = nxt, nxt + 1  # x2 continues x (now at i+1), y2 continues y (now at i)
        nxt += 2
        if g > 0:
            raw.append([y, x2, y2, x])
        else:
            raw.append([x, y, x2, y2])
        pos[i], pos[i + 1] = y2, x2
    close = {pos[j]: j + 1 for j in range(strands)}
    raw = [[close.get(v, v) for v in x] for x in raw]
    return diagram_from_tuples(raw)


def torus_braid(r: int, s: int) -> list[int]:
    """(sigma_1 ... sigma_{s-1})^|r|, inverted generators for r < 0."""
    e = 1 if r > 0 else -1
    return [e * i for _ in range(abs(r)) for i in range(1, s)]


def torus_diagram(r: int, s: int) -> KnotDiagram:
    """Standard diagram of T(r, s) with |r|(s-1) crossings."""
    if s < 2 or abs(r) < 2 or gcd(abs(r), s) != 1:
        raise ValueError(f"invalid torus parameters ({r}, {s})")
    return braid_closure(torus_braid(r, s), s)


def braid_permutation(word: Sequence[int], strands: int) -> list[int]:
    perm = list(range(strands))
    for g in word:
        i = abs(g) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return perm


def is_knot_braid(word: Sequence[int], strands: int) -> bool:
    """True when the closure has one component (the permutation is one cycle)."""
    perm = braid_permutation(word, strands)
    j, length = 0, 0
    while True:
        j = perm[j]
        length += 1
        if j == 0:
            break
    return length == strands


def random_knot_diagram(rng, crossings: int, strands: int) -> KnotDiagram:
    """Closure of a random braid word with the given crossing count and one component."""
    if strands < 2 or crossings < strands - 1:
        raise ValueError("too few crossings for a knot on this many strands")
    if (crossings - strands + 1) % 2:
        # a single cycle on s strands has parity s - 1
        raise ValueError("crossing count must have the parity of strands - 1")
    while True:
        word = [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(crossings)]
        if set(abs(g) for g in word) == set(range(1, strands)) and is_knot_braid(word, strands):
            return braid_closure(word, strands)
