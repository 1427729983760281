"""2-colourings of diagrams, coloured smoothings and crossing parity.

A colour lives on each arc.  Passing through a crossing swaps the colour,
passing through the boundary gluing keeps it.  Colour 0 is orange and 1 is pink.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .diagram import HEAD, ArcRef, ProjectiveDiagram, link_components

ORANGE = 0
PINK = 1


@dataclass(frozen=True)
class TwoColouring:
    arcs: tuple[int, ...]  # colour per arc index
    free: tuple[int, ...] = ()  # colour per free unknot

    def swapped(self) -> "TwoColouring":
        return TwoColouring(tuple(1 - c for c in self.arcs), tuple(1 - c for c in self.free))

    def colour_of(self, d: ProjectiveDiagram, arc: str) -> int:
        return self.arcs[d.arc_index(arc)]


@dataclass(frozen=True)
class CrossingParity:
    odd: tuple[bool, ...]  # per crossing position
    odd_plus: int
    odd_minus: int
    even_plus: int
    even_minus: int


def _passes_crossing(d: ProjectiveDiagram, arc: str) -> bool:
    return d.site_of(ArcRef(arc, HEAD))[0] == "x"


def component_colour_cycle(d: ProjectiveDiagram, cycle: tuple[str, ...]):
    """Colours along a component starting from 0, or None when the colours fail to close up."""
    cols = [0]
    for a in cycle[:-1]:
        cols.append(cols[-1] ^ _passes_crossing(d, a))
    closing = cols[-1] ^ _passes_crossing(d, cycle[-1])
    return cols if closing == 0 else None


def enumerate_two_colourings(d: ProjectiveDiagram) -> list[TwoColouring]:
    comps = link_components(d)
    patterns = []
    for cyc in comps:
        cols = component_colour_cycle(d, cyc)
        if cols is None:
            return []
        patterns.append((cyc, cols))
    out = []
    na = len(d.arcs)
    for bits in product((0, 1), repeat=len(comps) + d.free_unknots):
        arr = [0] * na
        for (cyc, cols), b in zip(patterns, bits):
            for a, c in zip(cyc, cols):
                arr[d.arc_index(a)] = c ^ b
        out.append(TwoColouring(tuple(arr), tuple(bits[len(comps):])))
    return out


def is_two_colouring(d: ProjectiveDiagram, c: TwoColouring) -> bool:
    if len(c.arcs) != len(d.arcs) or len(c.free) != d.free_unknots:
        return False
    for a in d.arcs:
        nxt_site = d.site_of(ArcRef(a, HEAD))
        if nxt_site[0] == "x":
            nxt = d.crossings[nxt_site[1]].slots[(nxt_site[2] + 2) % 4].arc
            want = 1 - c.colour_of(d, a)
        else:
            nxt = d.boundary[d.antipode(nxt_site[1])].arc
            want = c.colour_of(d, a)
        if c.colour_of(d, nxt) != want:
            return False
    return True


def coloured_resolution(d: ProjectiveDiagram, c: TwoColouring, crossing: int) -> int:
    s = d.crossings[crossing].slots
    col = [c.colour_of(d, r.arc) for r in s]
    if col[0] == col[1]:
        assert col[2] == col[3] and col[0] != col[2]
        return 0
    assert col[0] == col[3] and col[1] == col[2]
    return 1


def coloured_smoothing(d: ProjectiveDiagram, c: TwoColouring) -> int:
    """Resolution bits (as an integer index) joining equal-coloured ends everywhere."""
    return sum(coloured_resolution(d, c, i) << i for i in range(d.n))


def oriented_resolution(d: ProjectiveDiagram, crossing: int) -> int:
    return 0 if d.crossings[crossing].sign > 0 else 1


def crossing_parity(d: ProjectiveDiagram, c: TwoColouring) -> CrossingParity:
    odd = tuple(coloured_resolution(d, c, i) != oriented_resolution(d, i) for i in range(d.n))
    counts = {(True, 1): 0, (True, -1): 0, (False, 1): 0, (False, -1): 0}
    for i, o in enumerate(odd):
        counts[(o, d.crossings[i].sign)] += 1
    return CrossingParity(odd, counts[(True, 1)], counts[(True, -1)],
                          counts[(False, 1)], counts[(False, -1)])


def odd_writhe(d: ProjectiveDiagram, c: TwoColouring) -> int:
    p = crossing_parity(d, c)
    return p.odd_plus - p.odd_minus


def circle_colours(d: ProjectiveDiagram, c: TwoColouring, smoothing) -> tuple[int, ...]:
    """Colour of each circle of a smoothing; raises if some circle is not monochromatic."""
    out = []
    na = len(d.arcs)
    for circ in smoothing.circles:
        if circ.arcs:
            cols = {c.arcs[a] for a in circ.arcs}
            if len(cols) != 1:
                raise ValueError("smoothing is not monochromatic for this colouring")
            out.append(cols.pop())
        else:
            out.append(c.free[circ.id - na])
    return tuple(out)
