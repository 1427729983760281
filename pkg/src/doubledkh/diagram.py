"""Diagrams of links in RP^3: a tangle in the disc whose boundary endpoints
are identified antipodally.

Text format (one statement per line, ``#`` starts a comment)::

    crossing <id> <s1> <s2> <s3> <s4>   # slots ccw from the incoming under-strand
    boundary <p1> ... <p2k>             # ccw; position i is glued to i+k
    unknot <n>                          # crossingless nullhomotopic circles
    mark <arc>                          # basepoint for the reduced theory
    mark o<j>                           # basepoint on the j-th free unknot
    sign <crossing-id> <+|->            # optional cross-check

Slots and boundary entries are ``<arc>:h`` (the arc arrives here) or
``<arc>:t`` (the arc leaves from here).
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional

HEAD = "h"
TAIL = "t"


class DiagramSyntaxError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


class DiagramValidationError(ValueError):
    def __init__(self, violations: list["Violation"]):
        self.violations = violations
        text = "; ".join(f"[{v.code}] {v.entity}: {v.message}" for v in violations)
        super().__init__(text)


@dataclass(frozen=True)
class Violation:
    code: str
    entity: str
    message: str


@dataclass(frozen=True, order=True)
class ArcRef:
    arc: str
    end: str  # HEAD or TAIL

    def __str__(self) -> str:
        return f"{self.arc}:{self.end}"


@dataclass(frozen=True)
class CrossingSite:
    id: str
    slots: tuple[ArcRef, ArcRef, ArcRef, ArcRef]
    declared_sign: Optional[int] = None

    @property
    def sign(self) -> int:
        """+1 when the over-strand comes in at slot 4, -1 when at slot 2."""
        return 1 if self.slots[3].end == HEAD else -1


@dataclass(frozen=True)
class ComponentInfo:
    component_id: int
    arcs: tuple[str, ...]
    boundary_passages: int  # boundary endpoints met by this component
    self_crossings: int
    mixed_crossings: int


@dataclass(frozen=True)
class ProjectiveDiagram:
    crossings: tuple[CrossingSite, ...] = ()
    boundary: tuple[ArcRef, ...] = ()
    free_unknots: int = 0
    mark: Optional[str] = None
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", _build_index(self))

    # -- basic structure -------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def k(self) -> int:
        return len(self.boundary) // 2

    @property
    def arcs(self) -> tuple[str, ...]:
        """Arc ids in canonical order."""
        return self._index["arcs"]

    def arc_index(self, arc: str) -> int:
        return self._index["arc_pos"][arc]

    def crossing(self, cid: str) -> CrossingSite:
        return self.crossings[self._index["cross_pos"][cid]]

    def site_of(self, ref: ArcRef):
        """Where an arc end sits: ("x", crossing position, slot) or ("b", position)."""
        return self._index["sites"][ref]

    def antipode(self, pos: int) -> int:
        return (pos + self.k) % (2 * self.k)

    @property
    def n_minus(self) -> int:
        return sum(1 for c in self.crossings if c.sign < 0)

    @property
    def n_plus(self) -> int:
        return sum(1 for c in self.crossings if c.sign > 0)

    def __str__(self) -> str:
        return serialize(self)


def _arc_sort_key(arc: str):
    parts = re.split(r"(\d+)", arc)
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in parts if p != "")


def free_token(j: int) -> str:
    """Name of the free unknot with index j (0-based) in marks and movies."""
    return f"o{j + 1}"


def marked_free(d: ProjectiveDiagram) -> Optional[int]:
    """Index of the marked free unknot when the mark names one as ``o<j>``."""
    m = d.mark
    if m is None or m in d._index["arc_pos"] or not re.fullmatch(r"o[1-9][0-9]*", m):
        return None
    j = int(m[1:]) - 1
    return j if j < d.free_unknots else None


def _build_index(d: ProjectiveDiagram) -> dict:
    sites: dict[ArcRef, tuple] = {}
    names = set()
    for ci, c in enumerate(d.crossings):
        for s, ref in enumerate(c.slots):
            sites.setdefault(ref, ("x", ci, s))
            names.add(ref.arc)
    for p, ref in enumerate(d.boundary):
        sites.setdefault(ref, ("b", p))
        names.add(ref.arc)
    arcs = tuple(sorted(names, key=_arc_sort_key))
    return {
        "sites": sites,
        "arcs": arcs,
        "arc_pos": {a: i for i, a in enumerate(arcs)},
        "cross_pos": {c.id: i for i, c in enumerate(d.crossings)},
    }


# -- parsing -------------------------------------------------------------

_REF = re.compile(r"^([A-Za-z0-9_.\-]+):([ht])$")
_ID = re.compile(r"^[A-Za-z0-9_.\-]+$")


def _parse_ref(tok: str, line: int, col: int) -> ArcRef:
    m = _REF.match(tok)
    if not m:
        raise DiagramSyntaxError(line, col, f"expected <arc>:h or <arc>:t, got {tok!r}")
    return ArcRef(m.group(1), m.group(2))


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", body)]
        if toks:
            yield lineno, toks


def parse_diagram(text: str, *, check: bool = True) -> ProjectiveDiagram:
    """Parse the line-oriented diagram format.

    Raises DiagramSyntaxError for malformed lines and DiagramValidationError
    when the result breaks a structural invariant (unless ``check`` is off).
    """
    crossings: list[CrossingSite] = []
    boundary: Optional[list[ArcRef]] = None
    unknots = 0
    mark = None
    signs: dict[str, tuple[int, int, int]] = {}
    for lineno, toks in _tokens(text):
        kw, kcol = toks[0]
        args = toks[1:]
        if kw == "crossing":
            if len(args) != 5:
                raise DiagramSyntaxError(lineno, kcol, "crossing needs an id and four slots")
            cid, ccol = args[0]
            if not _ID.match(cid):
                raise DiagramSyntaxError(lineno, ccol, f"bad crossing id {cid!r}")
            slots = tuple(_parse_ref(t, lineno, c) for t, c in args[1:])
            crossings.append(CrossingSite(cid, slots))
        elif kw == "boundary":
            if boundary is not None:
                raise DiagramSyntaxError(lineno, kcol, "duplicate boundary statement")
            boundary = [_parse_ref(t, lineno, c) for t, c in args]
        elif kw == "unknot":
            if len(args) != 1 or not args[0][0].isdigit():
                raise DiagramSyntaxError(lineno, kcol, "unknot needs a nonnegative count")
            unknots += int(args[0][0])
        elif kw == "mark":
            if len(args) != 1 or not _ID.match(args[0][0]):
                raise DiagramSyntaxError(lineno, kcol, "mark needs one arc id")
            if mark is not None:
                raise DiagramSyntaxError(lineno, kcol, "duplicate mark")
            mark = args[0][0]
        elif kw == "sign":
            if len(args) != 2 or args[1][0] not in ("+", "-"):
                raise DiagramSyntaxError(lineno, kcol, "sign needs a crossing id and + or -")
            signs[args[0][0]] = (1 if args[1][0] == "+" else -1, lineno, args[0][1])
        else:
            raise DiagramSyntaxError(lineno, kcol, f"unknown statement {kw!r}")

    by_id = {c.id: i for i, c in enumerate(crossings)}
    for cid, (s, lineno, col) in signs.items():
        if cid not in by_id:
            raise DiagramSyntaxError(lineno, col, f"sign for unknown crossing {cid!r}")
        i = by_id[cid]
        crossings[i] = CrossingSite(cid, crossings[i].slots, s)
    d = ProjectiveDiagram(tuple(crossings), tuple(boundary or ()), unknots, mark)
    if check:
        problems = validate(d)
        if problems:
            raise DiagramValidationError(problems)
    return d


def serialize(d: ProjectiveDiagram) -> str:
    lines = []
    for c in d.crossings:
        lines.append("crossing " + " ".join([c.id] + [str(r) for r in c.slots]))
    if d.boundary:
        lines.append("boundary " + " ".join(str(r) for r in d.boundary))
    if d.free_unknots:
        lines.append(f"unknot {d.free_unknots}")
    if d.mark is not None:
        lines.append(f"mark {d.mark}")
    for c in d.crossings:
        if c.declared_sign is not None:
            lines.append(f"sign {c.id} {'+' if c.declared_sign > 0 else '-'}")
    return "\n".join(lines) + "\n"


# -- validation ----------------------------------------------------------

def validate(d: ProjectiveDiagram) -> list[Violation]:
    """Return every broken structural invariant (empty list when valid)."""
    out: list[Violation] = []
    ids = Counter(c.id for c in d.crossings)
    for cid, cnt in ids.items():
        if cnt > 1:
            out.append(Violation("duplicate-crossing", cid, "crossing id used more than once"))

    ends = Counter()
    for c in d.crossings:
        for r in c.slots:
            ends[r] += 1
    for r in d.boundary:
        ends[r] += 1
    arcs = {r.arc for r in ends}
    for a in sorted(arcs, key=_arc_sort_key):
        h, t = ends[ArcRef(a, HEAD)], ends[ArcRef(a, TAIL)]
        if h != 1 or t != 1:
            out.append(Violation("dangling-arc", a, f"needs one head and one tail, has {h} and {t}"))

    for c in d.crossings:
        s = c.slots
        if s[0].end != HEAD or s[2].end != TAIL:
            out.append(Violation("under-orientation", c.id, "slot 1 must be a head and slot 3 a tail"))
        if (s[1].end == HEAD) == (s[3].end == HEAD):
            out.append(Violation("over-orientation", c.id, "exactly one of slots 2 and 4 must be a head"))
        elif c.declared_sign is not None and c.declared_sign != c.sign:
            out.append(Violation("sign-mismatch", c.id, f"declared {c.declared_sign:+d}, derived {c.sign:+d}"))

    nb = len(d.boundary)
    if nb % 2:
        out.append(Violation("boundary-odd", "boundary", "boundary word must have even length"))
    else:
        k = nb // 2
        for i in range(k):
            a, b = d.boundary[i], d.boundary[i + k]
            if a.end == b.end:
                out.append(Violation("antipodal", f"position {i + 1}",
                                     f"positions {i + 1} and {i + k + 1} both carry a {'head' if a.end == HEAD else 'tail'}"))

    if d.mark is not None and d.mark not in arcs and marked_free(d) is None:
        out.append(Violation("mark-unknown", d.mark, "marked arc does not occur in the diagram"))
    if d.free_unknots < 0:
        out.append(Violation("unknots", "unknot", "negative count"))

    if not out and not is_planar(d):
        out.append(Violation("nonplanar", "diagram", "the crossing data does not embed in the disc"))
    return out


def check_valid(d: ProjectiveDiagram) -> ProjectiveDiagram:
    problems = validate(d)
    if problems:
        raise DiagramValidationError(problems)
    return d


# -- planar map ----------------------------------------------------------
#
# Vertices are crossings and boundary positions; edges are arcs plus the
# boundary gaps between consecutive positions. Darts are (vertex, slot).

def _rotation_system(d: ProjectiveDiagram):
    rot: dict[tuple, list[tuple]] = {}
    twin: dict[tuple, tuple] = {}
    site_dart: dict[ArcRef, tuple] = {}
    for c in d.crossings:
        v = ("x", c.id)
        rot[v] = [(v, s) for s in range(4)]
        for s, r in enumerate(c.slots):
            site_dart[r] = (v, s)
    nb = len(d.boundary)
    for p, r in enumerate(d.boundary):
        v = ("b", p)
        # ccw at a boundary point: towards the next position, into the disc, towards the previous
        rot[v] = [(v, 0), (v, 1), (v, 2)]
        site_dart[r] = (v, 1)
    for r, dart in site_dart.items():
        other = ArcRef(r.arc, TAIL if r.end == HEAD else HEAD)
        twin[dart] = site_dart[other]
    for p in range(nb):
        q = (p + 1) % nb
        twin[(("b", p), 0)] = (("b", q), 2)
        twin[(("b", q), 2)] = (("b", p), 0)
    return rot, twin


def faces(d: ProjectiveDiagram) -> list[list[tuple]]:
    """Faces of the planar map as cyclic dart lists, each face on the left."""
    rot, twin = _rotation_system(d)
    pos = {dart: i for v, ds in rot.items() for i, dart in enumerate(ds)}
    seen = set()
    result = []
    for v in rot:
        for start in rot[v]:
            if start in seen:
                continue
            face = []
            dart = start
            while dart not in seen:
                seen.add(dart)
                face.append(dart)
                t = twin[dart]
                w = t[0]
                dart = rot[w][(pos[t] - 1) % len(rot[w])]
            result.append(face)
    return result


def is_planar(d: ProjectiveDiagram) -> bool:
    rot, twin = _rotation_system(d)
    if not rot:
        return True
    parent = {v: v for v in rot}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in twin.items():
        ra, rb = find(a[0]), find(b[0])
        if ra != rb:
            parent[ra] = rb
    V, E, F = Counter(), Counter(), Counter()
    for v in rot:
        V[find(v)] += 1
        E[find(v)] += len(rot[v])
    for f in faces(d):
        F[find(f[0][0])] += 1
    return all(V[r] - E[r] // 2 + F[r] == 2 for r in V)


# -- invariants ----------------------------------------------------------

def writhe(d: ProjectiveDiagram) -> int:
    return sum(c.sign for c in d.crossings)


def next_arc(d: ProjectiveDiagram, arc: str) -> str:
    """The arc that continues ``arc`` along the link past its head."""
    site = d.site_of(ArcRef(arc, HEAD))
    if site[0] == "x":
        c = d.crossings[site[1]]
        return c.slots[(site[2] + 2) % 4].arc
    return d.boundary[d.antipode(site[1])].arc


def link_components(d: ProjectiveDiagram) -> list[tuple[str, ...]]:
    """Oriented cycles of arcs, one per non-free component, in canonical order."""
    seen = set()
    comps = []
    for a in d.arcs:
        if a in seen:
            continue
        cyc = []
        x = a
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = next_arc(d, x)
        comps.append(tuple(cyc))
    return comps


def components(d: ProjectiveDiagram) -> list[ComponentInfo]:
    comps = link_components(d)
    owner = {a: i for i, cyc in enumerate(comps) for a in cyc}
    selfc = Counter()
    mixed = Counter()
    for c in d.crossings:
        u, o = owner[c.slots[0].arc], owner[c.slots[1].arc]
        if u == o:
            selfc[u] += 1
        else:
            mixed[u] += 1
            mixed[o] += 1
    passes = Counter(owner[r.arc] for r in d.boundary)
    info = [ComponentInfo(i, cyc, passes[i], selfc[i], mixed[i]) for i, cyc in enumerate(comps)]
    base = len(comps)
    info += [ComponentInfo(base + j, (), 0, 0, 0) for j in range(d.free_unknots)]
    return info


def component_of_arc(d: ProjectiveDiagram) -> dict[str, int]:
    return {a: i for i, cyc in enumerate(link_components(d)) for a in cyc}


def degenerate_components(d: ProjectiveDiagram) -> set[int]:
    """Components whose count of crossings shared with the rest is odd.

    Along a component the colour swaps at each crossing passage, so the
    colouring closes up exactly when the number of passages is even; self
    crossings contribute two passages each, leaving the mixed count.
    """
    return {c.component_id for c in components(d) if c.mixed_crossings % 2}


def is_local(d: ProjectiveDiagram) -> bool:
    return len(d.boundary) == 0


def is_knot(d: ProjectiveDiagram) -> bool:
    return len(components(d)) == 1


def relabel(d: ProjectiveDiagram, mapping: dict[str, str]) -> ProjectiveDiagram:
    """Rename arcs; ``mapping`` must be injective on the arcs of ``d``."""
    def r(ref: ArcRef) -> ArcRef:
        return ArcRef(mapping.get(ref.arc, ref.arc), ref.end)
    cs = tuple(CrossingSite(c.id, tuple(r(s) for s in c.slots), c.declared_sign) for c in d.crossings)
    mark = mapping.get(d.mark, d.mark) if d.mark is not None else None
    return ProjectiveDiagram(cs, tuple(r(s) for s in d.boundary), d.free_unknots, mark)


def canonical_labels(d: ProjectiveDiagram) -> ProjectiveDiagram:
    """Rename arcs to 1..N in order of first appearance and crossings to X1..Xn."""
    order: list[str] = []
    for c in d.crossings:
        for s in c.slots:
            if s.arc not in order:
                order.append(s.arc)
    for s in d.boundary:
        if s.arc not in order:
            order.append(s.arc)
    mapping = {a: str(i + 1) for i, a in enumerate(order)}
    out = relabel(d, mapping)
    cs = tuple(CrossingSite(f"X{i + 1}", c.slots, c.declared_sign) for i, c in enumerate(out.crossings))
    return ProjectiveDiagram(cs, out.boundary, out.free_unknots, out.mark)


def mirror(d: ProjectiveDiagram) -> ProjectiveDiagram:
    """Switch every crossing; slots are rotated so slot 1 is again the incoming under-strand."""
    cs = []
    for c in d.crossings:
        s = c.slots
        # the old over-strand becomes the under-strand
        start = 1 if s[1].end == HEAD else 3
        rot = tuple(s[(start + i) % 4] for i in range(4))
        sign = -c.declared_sign if c.declared_sign is not None else None
        cs.append(CrossingSite(c.id, rot, sign))
    return ProjectiveDiagram(tuple(cs), d.boundary, d.free_unknots, d.mark)


def disjoint_union(a: ProjectiveDiagram, b: ProjectiveDiagram) -> ProjectiveDiagram:
    """Place a local diagram ``b`` in a region of ``a`` (arc and crossing ids are prefixed)."""
    if b.boundary and a.boundary:
        raise ValueError("only a local diagram can be added to a diagram with boundary")
    ra = relabel(a, {x: "a" + x for x in a.arcs})
    rb = relabel(b, {x: "b" + x for x in b.arcs})
    cs = tuple(CrossingSite("a" + c.id, c.slots, c.declared_sign) for c in ra.crossings)
    cs += tuple(CrossingSite("b" + c.id, c.slots, c.declared_sign) for c in rb.crossings)
    mark = ra.mark
    if mark is None and rb.mark is not None:
        fm = marked_free(b)
        mark = rb.mark if fm is None else free_token(a.free_unknots + fm)
    return ProjectiveDiagram(cs, ra.boundary + rb.boundary, a.free_unknots + b.free_unknots, mark)


def from_parts(crossings: Iterable[tuple[str, Iterable[str]]], boundary: Iterable[str] = (),
               unknots: int = 0, mark: Optional[str] = None) -> ProjectiveDiagram:
    """Convenience constructor from strings like ``("X1", ["1:h", "4:h", "2:t", "3:t"])``."""
    def ref(s: str) -> ArcRef:
        a, e = s.rsplit(":", 1)
        return ArcRef(a, e)
    cs = tuple(CrossingSite(cid, tuple(ref(s) for s in slots)) for cid, slots in crossings)
    return ProjectiveDiagram(cs, tuple(ref(s) for s in boundary), unknots, mark)
