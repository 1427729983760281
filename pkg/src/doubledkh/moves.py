"""Reidemeister-type moves R1-R5 on projective diagrams and seeded random move scripts.

Additions edit arc ends in place: splitting an arc renames the end at its
head.  Removals splice strands straight through deleted crossings (or
deleted pairs of boundary positions) and rename each resulting chain after
its first arc.

Faces come from :func:`doubledkh.diagram.faces`, which lists darts with the
face on the left of travel.  A dart on an arc is travelled along the arc
when the dart sits at the arc's tail.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .diagram import (HEAD, TAIL, ArcRef, CrossingSite, ProjectiveDiagram, check_valid, faces, free_token,
                      marked_free)

R1, R2, R3, R4, R5 = "R1", "R2", "R3", "R4", "R5"

# Compass directions listed counterclockwise.
_CCW = ("E", "N", "W", "S")


class MoveError(ValueError):
    pass


@dataclass(frozen=True)
class Move:
    """One move.  ``site`` is a tuple of plain values naming where it applies."""

    tag: str
    direction: str  # "+" adds crossings or boundary points, "-" removes, "~" rearranges
    site: tuple

    def __str__(self) -> str:
        return f"{self.tag}{self.direction} " + " ".join(str(x) for x in self.site)


@dataclass
class MoveScript:
    moves: list = field(default_factory=list)

    def __len__(self):
        return len(self.moves)

    def __str__(self) -> str:
        return "\n".join(str(m) for m in self.moves)


# -- small helpers ------------------------------------------------------------

def _flip(end: str) -> str:
    return TAIL if end == HEAD else HEAD


class _Names:
    def __init__(self, d: ProjectiveDiagram):
        self.arcs = set(d.arcs)
        self.crossings = {c.id for c in d.crossings}

    def arc(self) -> str:
        i = 1
        while f"m{i}" in self.arcs:
            i += 1
        self.arcs.add(f"m{i}")
        return f"m{i}"

    def crossing(self) -> str:
        i = 1
        while f"R{i}" in self.crossings:
            i += 1
        self.crossings.add(f"R{i}")
        return f"R{i}"


def _rebuild(d: ProjectiveDiagram, crossings, boundary, free=None, mark=None, keep_mark=True):
    cs = tuple(c if isinstance(c, CrossingSite) else CrossingSite(c[0], tuple(c[1])) for c in crossings)
    m = d.mark if keep_mark else mark
    out = ProjectiveDiagram(cs, tuple(boundary), d.free_unknots if free is None else free, m)
    return check_valid(out)


def _replace_ref(d: ProjectiveDiagram, old: ArcRef, new: ArcRef):
    cs = [(c.id, [new if r == old else r for r in c.slots]) for c in d.crossings]
    bd = [new if r == old else r for r in d.boundary]
    return cs, bd


def _dart_arc(d: ProjectiveDiagram, dart) -> Optional[tuple]:
    """(arc, direction) carried by a dart, or None for a boundary gap."""
    (kind, key), slot = dart
    if kind == "x":
        ref = d.crossing(key).slots[slot]
    else:
        if slot != 1:
            return None
        ref = d.boundary[key]
    return ref.arc, (1 if ref.end == TAIL else -1)


def _rotate_from(dirs: dict, start: str) -> list:
    i = _CCW.index(start)
    return [dirs[_CCW[(i + s) % 4]] for s in range(4)]


def _ccw_slots(dirs: dict, order: Sequence[str], start: str) -> list:
    i = list(order).index(start)
    return [dirs[order[(i + s) % 4]] for s in range(4)]


# -- generic splice used by every removal ------------------------------------

def splice(d: ProjectiveDiagram, drop_crossings: set, drop_boundary: set) -> ProjectiveDiagram:
    """Delete crossings (strands pass straight through) and antipodal pairs of boundary positions."""
    drop_boundary = set(drop_boundary)
    for p in list(drop_boundary):
        drop_boundary.add(d.antipode(p))
    keep_x = [c for c in d.crossings if c.id not in drop_crossings]

    def removed(site):
        if site[0] == "x":
            return d.crossings[site[1]].id in drop_crossings
        return site[1] in drop_boundary

    def cont(arc):
        site = d.site_of(ArcRef(arc, HEAD))
        if site[0] == "x":
            return d.crossings[site[1]].slots[(site[2] + 2) % 4].arc
        return d.boundary[d.antipode(site[1])].arc

    chain_of: dict = {}
    head_rename: dict = {}
    for a in d.arcs:
        if removed(d.site_of(ArcRef(a, TAIL))):
            continue
        x = a
        chain_of[x] = a
        while removed(d.site_of(ArcRef(x, HEAD))):
            x = cont(x)
            chain_of[x] = a
        head_rename[x] = a
    loops = 0
    loop_mark = None
    seen = set(chain_of)
    for a in d.arcs:
        if a in seen:
            continue
        x = a
        while x not in seen:
            seen.add(x)
            if x == d.mark:
                loop_mark = free_token(d.free_unknots + loops)
            x = cont(x)
        loops += 1

    def ren(r: ArcRef) -> ArcRef:
        if r.end == HEAD:
            return ArcRef(head_rename[r.arc], HEAD)
        return r

    cs = [CrossingSite(c.id, tuple(ren(r) for r in c.slots), c.declared_sign) for c in keep_x]
    bd = [ren(r) for i, r in enumerate(d.boundary) if i not in drop_boundary]
    mark = chain_of.get(d.mark, loop_mark or d.mark) if d.mark is not None else None
    out = ProjectiveDiagram(tuple(cs), tuple(bd), d.free_unknots + loops, mark)
    return check_valid(out)


# -- R1 -----------------------------------------------------------------------

# kink types: (first pass under?, sign); slots list the roles a_in, a_out, loop_t, loop_h
_R1_LAYOUT = {
    ("under", 1): {0: "in", 2: "lt", 3: "lh", 1: "out"},
    ("under", -1): {0: "in", 2: "lt", 1: "lh", 3: "out"},
    ("over", 1): {3: "in", 1: "lt", 0: "lh", 2: "out"},
    ("over", -1): {1: "in", 3: "lt", 0: "lh", 2: "out"},
}


def r1_add(d: ProjectiveDiagram, arc: Optional[str], first: str = "under", sign: int = 1) -> ProjectiveDiagram:
    """Add a kink on ``arc``, or on a free circle when ``arc`` is None."""
    names = _Names(d)
    loop = names.arc()
    cid = names.crossing()
    layout = _R1_LAYOUT[(first, sign)]
    if arc is None:
        if d.free_unknots < 1:
            raise MoveError("no free circle to twist")
        body = names.arc()
        roles = {"in": ArcRef(body, HEAD), "out": ArcRef(body, TAIL),
                 "lt": ArcRef(loop, TAIL), "lh": ArcRef(loop, HEAD)}
        slots = [roles[layout[s]] for s in range(4)]
        cs = [(c.id, c.slots) for c in d.crossings] + [(cid, slots)]
        # the last free circle becomes the kink
        if marked_free(d) == d.free_unknots - 1:
            return _rebuild(d, cs, d.boundary, free=d.free_unknots - 1, mark=body, keep_mark=False)
        return _rebuild(d, cs, d.boundary, free=d.free_unknots - 1)
    if arc not in d.arcs:
        raise MoveError(f"unknown arc {arc}")
    tail_part = arc
    head_part = names.arc()
    cs, bd = _replace_ref(d, ArcRef(arc, HEAD), ArcRef(head_part, HEAD))
    roles = {"in": ArcRef(tail_part, HEAD), "out": ArcRef(head_part, TAIL),
             "lt": ArcRef(loop, TAIL), "lh": ArcRef(loop, HEAD)}
    cs.append((cid, [roles[layout[s]] for s in range(4)]))
    return _rebuild(d, cs, bd)


def r1_sites(d: ProjectiveDiagram) -> list[str]:
    """Crossings carrying a monogon loop."""
    out = []
    for c in d.crossings:
        for s in range(4):
            r = c.slots[s]
            if r.end == TAIL:
                for t in ((s + 1) % 4, (s + 3) % 4):
                    if c.slots[t] == ArcRef(r.arc, HEAD):
                        out.append(c.id)
    return sorted(set(out), key=lambda x: [c.id for c in d.crossings].index(x))


def r1_remove(d: ProjectiveDiagram, crossing: str) -> ProjectiveDiagram:
    if crossing not in r1_sites(d):
        raise MoveError(f"crossing {crossing} carries no kink")
    return splice(d, {crossing}, set())


# -- R2 -----------------------------------------------------------------------

def _face_list(d):
    return faces(d)


def r2_add(d: ProjectiveDiagram, face: int, dart_a: int, dart_b: int, a_over: bool = True) -> ProjectiveDiagram:
    """Push a finger of the arc at ``dart_a`` across face ``face`` over or under the arc at ``dart_b``."""
    fs = _face_list(d)
    f = fs[face]
    ia, ib = _dart_arc(d, f[dart_a]), _dart_arc(d, f[dart_b])
    if ia is None or ib is None:
        raise MoveError("R2 needs two arcs")
    (a, da), (b, db) = ia, ib
    if a == b:
        raise MoveError("R2 needs two different arcs")
    names = _Names(d)
    # pieces in travel order
    pa = [None, names.arc(), None]
    pb = [None, names.arc(), None]
    extra_a, extra_b = names.arc(), names.arc()
    if da == 1:
        pa[0], pa[2] = a, extra_a
    else:
        pa[0], pa[2] = extra_a, a
    if db == 1:
        pb[0], pb[2] = b, extra_b
    else:
        pb[0], pb[2] = extra_b, b
    cs, bd = _replace_ref(d, ArcRef(a, HEAD), ArcRef(pa[2] if da == 1 else pa[0], HEAD))
    cs2 = [(cid, [ArcRef(pb[2] if db == 1 else pb[0], HEAD) if r == ArcRef(b, HEAD) else r for r in sl])
           for cid, sl in cs]
    bd = [ArcRef(pb[2] if db == 1 else pb[0], HEAD) if r == ArcRef(b, HEAD) else r for r in bd]

    def end(piece, delta, entering):
        return ArcRef(piece, HEAD if (delta == 1) == entering else TAIL)

    # a travels east then up (x1) and back down (x2); b travels west above
    x1 = {"S": end(pa[0], da, True), "N": end(pa[1], da, False),
          "E": end(pb[1], db, True), "W": end(pb[2], db, False)}
    x2 = {"N": end(pa[1], da, True), "S": end(pa[2], da, False),
          "E": end(pb[0], db, True), "W": end(pb[1], db, False)}
    new = []
    for dirs, a_in, a_out in ((x1, "S", "N"), (x2, "N", "S")):
        if a_over:
            start = "E" if db == 1 else "W"
        else:
            start = a_in if da == 1 else a_out
        new.append((names.crossing(), _rotate_from(dirs, start)))
    return _rebuild(d, cs2 + new, bd)


def r2_candidates(d: ProjectiveDiagram) -> list[tuple]:
    out = []
    for fi, f in enumerate(_face_list(d)):
        arcs = [(i, _dart_arc(d, dart)) for i, dart in enumerate(f)]
        arcs = [(i, x) for i, x in arcs if x is not None]
        for i, (ai, _) in arcs:
            for j, (bj, _) in arcs:
                if i != j and ai != bj:
                    out.append((fi, i, j))
    return out


def r2_sites(d: ProjectiveDiagram) -> list[tuple[str, str]]:
    """Bigons whose two crossings have the same strand on top."""
    out = []
    for f in _face_list(d):
        if len(f) != 2 or any(v[0] != "x" for v, _ in f):
            continue
        (v1, s1), (v2, s2) = f
        if v1 == v2:
            continue
        x, y = d.crossing(v1[1]), d.crossing(v2[1])
        p = x.slots[s1].arc  # edge from x to y
        # slot of p at y
        sp = next(t for t in range(4) if y.slots[t].arc == p)
        if (s1 % 2) == (sp % 2):
            pair = tuple(sorted((x.id, y.id)))
            if pair not in out:
                out.append(pair)
    return out


def r2_remove(d: ProjectiveDiagram, c1: str, c2: str) -> ProjectiveDiagram:
    if tuple(sorted((c1, c2))) not in r2_sites(d):
        raise MoveError(f"{c1}, {c2} do not bound a removable bigon")
    return splice(d, {c1, c2}, set())


# -- R3 -----------------------------------------------------------------------

def _triangle(d, f):
    if len(f) != 3 or any(v[0] != "x" for v, _ in f):
        return None
    ids = [v[1] for v, _ in f]
    if len(set(ids)) != 3:
        return None
    return [(d.crossing(v[1]), s) for v, s in f]


def _r3_ok(tri) -> bool:
    # strand leaving c_i at slot s_i reaches c_{i+1} at slot s_{i+1}+1
    for i in range(3):
        ci, si = tri[i]
        _, sj = tri[(i + 1) % 3]
        if si % 2 == 1 and (sj + 1) % 2 == 1:
            return True
    return False


def r3_sites(d: ProjectiveDiagram) -> list[int]:
    return [fi for fi, f in enumerate(_face_list(d)) if (t := _triangle(d, f)) and _r3_ok(t)]


def r3(d: ProjectiveDiagram, face: int) -> ProjectiveDiagram:
    """Slide one strand of a triangle across the opposite crossing."""
    f = _face_list(d)[face]
    tri = _triangle(d, f)
    if tri is None or not _r3_ok(tri):
        raise MoveError("face is not an R3 triangle")
    names = _Names(d)
    # outer ends in ccw order around the triangle
    outer = []
    for c, s in tri:
        outer.append(c.slots[(s + 2) % 4])
        outer.append(c.slots[(s + 3) % 4])
    # the rotated picture: outer end at position j now sits where P_{j+3} was
    new_outer = [outer[(j + 3) % 6] for j in range(6)]
    inner = [names.arc() for _ in range(3)]
    new_x = []
    for i, (c, s) in enumerate(tri):
        slots = [None] * 4
        slots[(s + 2) % 4] = new_outer[2 * i]
        slots[(s + 3) % 4] = new_outer[2 * i + 1]
        new_x.append([c.id, slots, s])
    for i in range(3):
        cid, slots, s = new_x[i]
        _, nslots, ns = new_x[(i + 1) % 3]
        # strand from the outer end opposite slot s runs along inner edge i
        flows_out = slots[(s + 2) % 4].end == HEAD
        slots[s] = ArcRef(inner[i], TAIL if flows_out else HEAD)
        nslots[(ns + 1) % 4] = ArcRef(inner[i], HEAD if flows_out else TAIL)
    dropped = {c.id for c, _ in tri}
    cs = [(c.id, c.slots) for c in d.crossings if c.id not in dropped]
    for cid, slots, _ in new_x:
        # the under strand keeps slots 0 and 2 but may now run the other way
        start = 0 if slots[0].end == HEAD else 2
        cs.append((cid, [slots[(start + t) % 4] for t in range(4)]))
    inner_old = {c.slots[s].arc for c, s in tri}
    mark = d.mark
    if mark in inner_old:
        mark = None
        for c, s in tri:
            if c.slots[s].arc == d.mark:
                out_end = c.slots[(s + 2) % 4]
                mark = out_end.arc
    out = ProjectiveDiagram(tuple(CrossingSite(a, tuple(b)) for a, b in cs), d.boundary, d.free_unknots, mark)
    return check_valid(out)


# -- R4 -----------------------------------------------------------------------

def _insert_boundary(d: ProjectiveDiagram, gap: int, x1, x2, y1, y2) -> list:
    b = list(d.boundary)
    k = d.k
    g2 = (gap + k) % (2 * k)
    first, second = sorted((gap, g2))
    pair_first = (x1, x2) if first == gap else (y1, y2)
    pair_second = (y1, y2) if first == gap else (x1, x2)
    return b[:first + 1] + list(pair_first) + b[first + 1:second + 1] + list(pair_second) + b[second + 1:]


def r4_candidates(d: ProjectiveDiagram) -> list[tuple[int, int]]:
    if d.k == 0:
        return []
    out = []
    fs = _face_list(d)
    for g in range(2 * d.k):
        fi = next(i for i, f in enumerate(fs) if (("b", g), 0) in f)
        for j, dart in enumerate(fs[fi]):
            if _dart_arc(d, dart) is not None:
                out.append((g, j))
    return out


def r4_add(d: ProjectiveDiagram, gap: int, dart: int) -> ProjectiveDiagram:
    """Push a finger of an arc on the face next to boundary gap ``gap`` out through the gap."""
    if d.k == 0:
        raise MoveError("R4 needs a boundary")
    fs = _face_list(d)
    f = next(f for f in fs if (("b", gap), 0) in f)
    info = _dart_arc(d, f[dart])
    if info is None:
        raise MoveError("R4 needs an arc")
    a, da = info
    names = _Names(d)
    p0, p1, p2 = (a, names.arc(), names.arc()) if da == 1 else (names.arc(), names.arc(), a)
    head_piece = p2 if da == 1 else p0
    cs, bd_list = _replace_ref(d, ArcRef(a, HEAD), ArcRef(head_piece, HEAD))
    tmp = ProjectiveDiagram(d.crossings, tuple(bd_list), d.free_unknots, None)
    if da == 1:
        x1, x2, y1, y2 = ArcRef(p2, TAIL), ArcRef(p0, HEAD), ArcRef(p1, HEAD), ArcRef(p1, TAIL)
    else:
        x1, x2, y1, y2 = ArcRef(p2, HEAD), ArcRef(p0, TAIL), ArcRef(p1, TAIL), ArcRef(p1, HEAD)
    bd = _insert_boundary(tmp, gap, x1, x2, y1, y2)
    return _rebuild(d, cs, bd)


def r4_sites(d: ProjectiveDiagram) -> list[int]:
    """Boundary positions p such that one arc runs from p to p+1 and bounds a face with that gap."""
    out = []
    nb = len(d.boundary)
    if d.k < 2:
        return out
    fs = _face_list(d)
    for p in range(nb):
        q = (p + 1) % nb
        if d.boundary[p].arc != d.boundary[q].arc:
            continue
        f = next(f for f in fs if (("b", p), 0) in f)
        if len(f) == 2:
            out.append(p)
    return out


def r4_remove(d: ProjectiveDiagram, pos: int) -> ProjectiveDiagram:
    if pos not in r4_sites(d):
        raise MoveError(f"no boundary cap at position {pos}")
    nb = len(d.boundary)
    return splice(d, set(), {pos, (pos + 1) % nb})


# -- R5 -----------------------------------------------------------------------

def r5_sites(d: ProjectiveDiagram) -> list[int]:
    """Gaps j whose face is a triangle formed with a single crossing."""
    out = []
    if d.k < 2:  # with one antipodal pair the gap j+1 is the antipode of j
        return out
    nb = len(d.boundary)
    for f in _face_list(d):
        if len(f) != 3:
            continue
        gaps = [v[1] for v, s in f if v[0] == "b" and s == 0]
        xs = [(v, s) for v, s in f if v[0] == "x"]
        if len(gaps) == 1 and len(xs) == 1 and ((("b", (gaps[0] + 1) % nb), 1) in f):
            out.append(gaps[0])
    return sorted(out)


def r5(d: ProjectiveDiagram, gap: int) -> ProjectiveDiagram:
    """Move the crossing next to boundary gap ``gap`` through the boundary to the antipodal gap."""
    if gap not in r5_sites(d):
        raise MoveError(f"no crossing next to gap {gap}")
    nb = len(d.boundary)
    k = d.k
    f = next(f for f in _face_list(d) if (("b", gap), 0) in f)
    (_, cid), sdep = next(x for x in f if x[0][0] == "x")
    c = d.crossing(cid)
    t = (sdep + 1) % 4  # slot whose arc runs to position gap+1
    j, j1 = gap, (gap + 1) % nb
    jk, j1k = (gap + k) % nb, (gap + 1 + k) % nb
    r_a = c.slots[(t + 1) % 4]  # strand A: slot t-1 (to j) and slot t+1
    r_b = c.slots[(t + 2) % 4]  # strand B: slot t (to j+1) and slot t+2
    w_j, w_j1 = d.boundary[jk], d.boundary[j1k]
    names = _Names(d)
    a2, b2 = names.arc(), names.arc()
    bd = list(d.boundary)
    bd[j1] = r_a
    bd[j] = r_b
    bd[j1k] = ArcRef(a2, _flip(r_a.end))
    bd[jk] = ArcRef(b2, _flip(r_b.end))
    dirs = {"NE": ArcRef(b2, r_b.end), "NW": ArcRef(a2, r_a.end), "SW": w_j1, "SE": w_j}
    a_was_under = (t - 1) % 2 == 0
    # A runs NW-SE at the new crossing and is now on top exactly when it was below
    if a_was_under:
        under_dirs = ("NE", "SW")
    else:
        under_dirs = ("NW", "SE")
    start = next(x for x in under_dirs if dirs[x].end == HEAD)
    slots = _ccw_slots(dirs, ("NE", "NW", "SW", "SE"), start)
    cs = [(x.id, slots if x.id == c.id else x.slots) for x in d.crossings]
    mark = d.mark
    gone = {c.slots[(t - 1) % 4].arc, c.slots[t].arc}
    if mark in gone:
        mark = r_a.arc if mark == c.slots[(t - 1) % 4].arc else r_b.arc
    out = ProjectiveDiagram(tuple(CrossingSite(a, tuple(b)) for a, b in cs), tuple(bd), d.free_unknots, mark)
    out = check_valid(out)
    if out.crossing(c.id).sign != c.sign:
        raise AssertionError("R5 changed the crossing sign")
    return out


# -- dispatch and random scripts ---------------------------------------------

def apply_move(d: ProjectiveDiagram, m: Move) -> ProjectiveDiagram:
    s = m.site
    if m.tag == R1 and m.direction == "+":
        return r1_add(d, s[0], s[1], s[2])
    if m.tag == R1:
        return r1_remove(d, s[0])
    if m.tag == R2 and m.direction == "+":
        return r2_add(d, s[0], s[1], s[2], s[3])
    if m.tag == R2:
        return r2_remove(d, s[0], s[1])
    if m.tag == R3:
        return r3(d, s[0])
    if m.tag == R4 and m.direction == "+":
        return r4_add(d, s[0], s[1])
    if m.tag == R4:
        return r4_remove(d, s[0])
    if m.tag == R5:
        return r5(d, s[0])
    raise MoveError(f"unknown move {m}")


def apply_script(d: ProjectiveDiagram, script) -> ProjectiveDiagram:
    for m in (script.moves if isinstance(script, MoveScript) else script):
        d = apply_move(d, m)
    return d


def candidate_moves(d: ProjectiveDiagram, max_crossings: int = 12, max_boundary: int = 6) -> dict:
    """All applicable moves grouped by kind, in a deterministic order."""
    out: dict = {}
    if d.n + 1 <= max_crossings:
        r1 = [Move(R1, "+", (a, fp, sg)) for a in d.arcs for fp in ("under", "over") for sg in (1, -1)]
        r1 += [Move(R1, "+", (None, fp, sg)) for fp in ("under", "over") for sg in (1, -1)] if d.free_unknots else []
        out["R1+"] = r1
    out["R1-"] = [Move(R1, "-", (c,)) for c in r1_sites(d)]
    if d.n + 2 <= max_crossings:
        out["R2+"] = [Move(R2, "+", (f, i, j, o)) for f, i, j in r2_candidates(d) for o in (True, False)]
    out["R2-"] = [Move(R2, "-", p) for p in r2_sites(d)]
    out["R3"] = [Move(R3, "~", (f,)) for f in r3_sites(d)]
    if 0 < d.k and d.k + 2 <= max_boundary:
        out["R4+"] = [Move(R4, "+", gd) for gd in r4_candidates(d)]
    out["R4-"] = [Move(R4, "-", (p,)) for p in r4_sites(d)]
    out["R5"] = [Move(R5, "~", (g,)) for g in r5_sites(d)]
    return {k: v for k, v in out.items() if v}


def random_script(d: ProjectiveDiagram, seed: int, length: int, max_crossings: Optional[int] = None,
                  max_boundary: Optional[int] = None) -> tuple[MoveScript, ProjectiveDiagram]:
    """A reproducible script of ``length`` moves: pick a move kind uniformly, then a site."""
    rng = random.Random(seed)
    cap_x = d.n + 3 if max_crossings is None else max_crossings
    cap_b = max(d.k + 2, 4) if max_boundary is None else max_boundary
    script = MoveScript()
    cur = d
    for _ in range(length):
        cands = candidate_moves(cur, cap_x, 2 * cap_b)
        if not cands:
            break
        kind = rng.choice(sorted(cands))
        m = rng.choice(cands[kind])
        cur = apply_move(cur, m)
        script.moves.append(m)
    return script, cur


_ARITY = {("R1", "+"): 3, ("R1", "-"): 1, ("R2", "+"): 4, ("R2", "-"): 2, ("R3", "~"): 1,
          ("R4", "+"): 2, ("R4", "-"): 1, ("R5", "~"): 1}


def parse_move(text: str) -> Move:
    toks = text.split()
    if not toks:
        raise MoveError("empty move")
    head = toks[0]
    tag, direction = head[:2], head[2:] or "~"
    if (tag, direction) not in _ARITY:
        raise MoveError(f"unknown move {head!r}")
    if len(toks) - 1 != _ARITY[(tag, direction)]:
        raise MoveError(f"{head} takes {_ARITY[(tag, direction)]} arguments")
    vals = []
    for t in toks[1:]:
        if t == "None":
            vals.append(None)
        elif t in ("True", "False"):
            vals.append(t == "True")
        elif t.lstrip("-").isdigit():
            vals.append(int(t))
        else:
            vals.append(t)
    return Move(tag, direction, tuple(vals))
