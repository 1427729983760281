"""Smoothings of a diagram and the cube of resolutions.

The 0-resolution of a crossing joins slots 1-2 and 3-4; the 1-resolution
joins 1-4 and 2-3.  Circles are traced through the antipodal gluing of the
boundary; a circle is essential when it passes through the gluing an odd
number of times.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

from .diagram import ProjectiveDiagram, marked_free

MERGE = "merge"
SPLIT = "split"
ETA = "eta"

RESOLUTION_PAIRS = {0: ((0, 1), (2, 3)), 1: ((0, 3), (1, 2))}


class CubeTooLarge(RuntimeError):
    pass


def cube_limit() -> int:
    return int(os.environ.get("DOUBLEDKH_CUBE_LIMIT", "20"))


@dataclass(frozen=True)
class Circle:
    id: int  # smallest arc index on the circle; free circles get ids past the arcs
    arcs: frozenset  # arc indices
    passage_parity: int
    holds_mark: bool

    @property
    def is_essential(self) -> bool:
        return self.passage_parity == 1


@dataclass(frozen=True)
class Smoothing:
    index: int  # bit c is the resolution at crossing position c
    circles: tuple[Circle, ...]  # sorted by id
    height: int
    arc_circle: tuple[int, ...]  # arc index -> position of its circle in ``circles``

    def bits(self, n: int) -> tuple[int, ...]:
        return tuple((self.index >> c) & 1 for c in range(n))


@dataclass(frozen=True)
class SignedEdge:
    source: int
    target: int
    crossing: int  # crossing position
    kind: str
    inputs: tuple[int, ...]  # affected circle positions in the source
    outputs: tuple[int, ...]  # affected circle positions in the target
    bystanders: tuple[tuple[int, int], ...]  # (source position, target position)
    sign: int


@dataclass
class Cube:
    diagram: ProjectiveDiagram
    vertices: list[Smoothing]
    edges: list[SignedEdge]

    def edges_from(self, v: int) -> list[SignedEdge]:
        return [e for e in self.edges if e.source == v]

    def dump(self) -> str:
        n = self.diagram.n
        lines = []
        for s in self.vertices:
            bits = "".join(str(b) for b in s.bits(n))
            circ = " ".join(("*" if c.is_essential else "") + "{" + ",".join(
                self.diagram.arcs[a] for a in sorted(c.arcs)) + "}" for c in s.circles)
            lines.append(f"{bits or '-'} h={s.height}: {circ}")
        for e in self.edges:
            lines.append(f"{e.source:0{max(n, 1)}b}->{e.target:0{max(n, 1)}b} "
                         f"c={self.diagram.crossings[e.crossing].id} {e.kind} sign={e.sign:+d}")
        return "\n".join(lines)


def _index_from(idx, n: int) -> int:
    if isinstance(idx, int):
        return idx
    bits = list(idx)
    if len(bits) != n:
        raise ValueError(f"smoothing index needs {n} bits, got {len(bits)}")
    return sum(int(b) << c for c, b in enumerate(bits))


def resolve(d: ProjectiveDiagram, idx) -> Smoothing:
    """Circles of the smoothing with the given resolution bits."""
    n = d.n
    v = _index_from(idx, n)
    arcs = d.arcs
    na = len(arcs)
    parent = list(range(na))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def join(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    pos = d.arc_index
    for c, cr in enumerate(d.crossings):
        for s, t in RESOLUTION_PAIRS[(v >> c) & 1]:
            join(pos(cr.slots[s].arc), pos(cr.slots[t].arc))
    k = d.k
    for i in range(k):
        join(pos(d.boundary[i].arc), pos(d.boundary[i + k].arc))

    groups: dict[int, list[int]] = {}
    for a in range(na):
        groups.setdefault(find(a), []).append(a)
    passages: dict[int, int] = {}
    for i in range(k):
        r = find(pos(d.boundary[i].arc))
        passages[r] = passages.get(r, 0) + 1
    mark = pos(d.mark) if d.mark is not None and marked_free(d) is None else None
    circles = []
    for root in sorted(groups):
        members = frozenset(groups[root])
        circles.append(Circle(root, members, passages.get(root, 0) % 2, mark in members))
    fm = marked_free(d)
    for j in range(d.free_unknots):
        circles.append(Circle(na + j, frozenset(), 0, j == fm))
    essential = sum(c.is_essential for c in circles)
    assert essential <= 1, "two disjoint essential circles in RP^2"
    where = [0] * na
    for ci, c in enumerate(circles):
        for a in c.arcs:
            where[a] = ci
    height = bin(v).count("1") - d.n_minus
    return Smoothing(v, tuple(circles), height, tuple(where))


def edge_sign(idx, crossing: int, n: Optional[int] = None) -> int:
    """(-1) to the number of 1-bits before the changed crossing."""
    v = idx if isinstance(idx, int) else _index_from(idx, len(idx))
    if (v >> crossing) & 1:
        raise ValueError("edge must start at a 0-resolution")
    below = v & ((1 << crossing) - 1)
    return -1 if bin(below).count("1") % 2 else 1


def classify(d: ProjectiveDiagram, src: Smoothing, dst: Smoothing, crossing: int) -> SignedEdge:
    cr = d.crossings[crossing]
    pos = d.arc_index
    a = [pos(s.arc) for s in cr.slots]
    s_in = sorted({src.arc_circle[a[0]], src.arc_circle[a[2]]})
    if len(s_in) == 2:
        kind = MERGE
        outs = (dst.arc_circle[a[0]],)
    else:
        o = sorted({dst.arc_circle[a[0]], dst.arc_circle[a[1]]})
        kind = SPLIT if len(o) == 2 else ETA
        outs = tuple(o)
    affected = set(s_in)
    bys = []
    for ci, c in enumerate(src.circles):
        if ci in affected:
            continue
        if c.arcs:
            bys.append((ci, dst.arc_circle[next(iter(c.arcs))]))
        else:
            bys.append((ci, next(j for j, x in enumerate(dst.circles) if x.id == c.id)))
    return SignedEdge(src.index, dst.index, crossing, kind, tuple(s_in), outs, tuple(bys),
                      edge_sign(src.index, crossing))


def classify_edge(d: ProjectiveDiagram, idx, crossing: int) -> SignedEdge:
    v = _index_from(idx, d.n)
    if (v >> crossing) & 1:
        raise ValueError("edge must start at a 0-resolution")
    return classify(d, resolve(d, v), resolve(d, v | (1 << crossing)), crossing)


def build_cube(d: ProjectiveDiagram, limit: Optional[int] = None) -> Cube:
    limit = cube_limit() if limit is None else limit
    if d.n > limit:
        raise CubeTooLarge(f"{d.n} crossings exceeds the cube limit of {limit}")
    verts = [resolve(d, v) for v in range(1 << d.n)]
    edges = []
    for v in range(1 << d.n):
        for c in range(d.n):
            if not (v >> c) & 1:
                edges.append(classify(d, verts[v], verts[v | (1 << c)], c))
    return Cube(d, verts, edges)
