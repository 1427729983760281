"""Diagrams from braid words, closed either in the plane or through the projective boundary.

Strands run upwards at positions 1..m.  Generator ``+p`` is a positive
crossing of strands p and p+1, ``-p`` a negative one.  The projective
closure sends the bottom endpoint at position i through the boundary to
the top endpoint at position m+1-i.
"""
from __future__ import annotations

from typing import Sequence

from .diagram import ArcRef, CrossingSite, ProjectiveDiagram, check_valid


def braid_closure(word: Sequence[int], strands: int, projective: bool = True,
                  mark: bool = False) -> ProjectiveDiagram:
    if strands < 1:
        raise ValueError("need at least one strand")
    cur = [f"b{p + 1}" for p in range(strands)]
    raw = []
    for n, g in enumerate(word):
        p = abs(g) - 1
        if not 0 <= p < strands - 1 or g == 0:
            raise ValueError(f"generator {g} out of range for {strands} strands")
        a, b = cur[p], cur[p + 1]
        na, nb = f"c{n + 1}l", f"c{n + 1}r"
        if g > 0:
            slots = [(b, "h"), (nb, "t"), (na, "t"), (a, "h")]
        else:
            slots = [(a, "h"), (b, "h"), (nb, "t"), (na, "t")]
        raw.append((f"X{n + 1}", slots))
        cur[p], cur[p + 1] = na, nb
    free = 0
    if projective:
        boundary = [(f"b{p + 1}", "t") for p in range(strands)] + [(cur[p], "h") for p in reversed(range(strands))]
        rename = {}
    else:
        boundary = []
        rename = {cur[p]: f"b{p + 1}" for p in range(strands) if cur[p] != f"b{p + 1}"}
        free = sum(1 for p in range(strands) if cur[p] == f"b{p + 1}")
    cs = tuple(CrossingSite(cid, tuple(ArcRef(rename.get(a, a), e) for a, e in slots))
               for cid, slots in raw)
    bd = tuple(ArcRef(a, e) for a, e in boundary)
    arcs = sorted({s.arc for c in cs for s in c.slots} | {s.arc for s in bd})
    d = ProjectiveDiagram(cs, bd, free, arcs[0] if (mark and arcs) else None)
    return check_valid(d)
