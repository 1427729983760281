"""Elementary cobordisms, their chain maps, movies and 2-colouring propagation.

Movie text format, one event per line (``#`` starts a comment)::

    start <bundled-name>         # or a diagram block: diagram ... end
    birth                        # new free circle, written o<N> afterwards
    death o<N>
    saddle <x> <y>               # x, y are arcs or free circles o<N>; saddle <x> alone splits o<N>
    resolve <crossing>           # saddle to the oriented resolution (bookkeeping only)
    rmove <move>                 # e.g. rmove R1+ b1 under 1
    diagram ... end              # checkpoint: must equal the current diagram up to its mark

A saddle on two arcs needs a face on which both arcs run the same way round;
it swaps their heads.  ``saddle a a`` pinches a free circle off ``a``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Optional

from .colouring import (TwoColouring, coloured_resolution, component_colour_cycle, is_two_colouring,
                        enumerate_two_colourings, oriented_resolution)
from .cube import ETA, MERGE, SPLIT, SignedEdge, resolve
from .diagram import (HEAD, TAIL, ArcRef, CrossingSite, ProjectiveDiagram, check_valid, components,
                      faces, free_token, link_components, marked_free, parse_diagram)
from .exactalg import ChainComplex, EchelonBasis, RingTag
from .exactalg.ring import normalize
from .moves import apply_move, parse_move
from .theories import TheoryTag, apply_edge, build_complex, canonical_generator, check_ring

BIRTH, DEATH, SADDLE, RESOLVE, RMOVE = "birth", "death", "saddle", "resolve", "rmove"


class InvalidEvent(ValueError):
    pass


class UnsupportedEvent(ValueError):
    pass


@dataclass(frozen=True)
class Event:
    kind: str
    args: tuple = ()

    def __str__(self) -> str:
        if self.kind == RMOVE:
            return f"rmove {self.args[0]}"
        return " ".join([self.kind] + [str(a) for a in self.args])


@dataclass
class Movie:
    start: ProjectiveDiagram
    events: list
    frames: list = field(default_factory=list)  # diagrams after each event
    checkpoints: dict = field(default_factory=dict)  # event count -> diagram

    @property
    def end(self) -> ProjectiveDiagram:
        return self.frames[-1] if self.frames else self.start

    def diagrams(self) -> list:
        return [self.start] + list(self.frames)


# -- free circle helpers -------------------------------------------------------

def _free_index(token: str, d: ProjectiveDiagram) -> Optional[int]:
    if token.startswith("o") and token[1:].isdigit():
        k = int(token[1:])
        if not 1 <= k <= d.free_unknots:
            raise InvalidEvent(f"no free circle {token}")
        return k - 1
    return None


def _with_free(d: ProjectiveDiagram, free: int) -> ProjectiveDiagram:
    return ProjectiveDiagram(d.crossings, d.boundary, free, d.mark)


def _drop_free(d: ProjectiveDiagram, k: int, into: Optional[str] = None) -> ProjectiveDiagram:
    """Remove free circle k; a mark on it moves to ``into`` (or is lost)."""
    fm = marked_free(d)
    mark = d.mark
    if fm == k:
        mark = into
    elif fm is not None and fm > k:
        mark = free_token(fm - 1)
    return ProjectiveDiagram(d.crossings, d.boundary, d.free_unknots - 1, mark)


# -- diagram-level effect of each event ---------------------------------------

def _common_face(d: ProjectiveDiagram, a: str, b: str) -> bool:
    for f in faces(d):
        seen = {}
        for (kind, key), slot in f:
            if kind == "x":
                ref = d.crossing(key).slots[slot]
            elif slot == 1:
                ref = d.boundary[key]
            else:
                continue
            seen.setdefault(ref.arc, set()).add(ref.end)
        if a in seen and b in seen and seen[a] & seen[b]:
            return True
    return False


def _swap_heads(d: ProjectiveDiagram, a: str, b: str) -> ProjectiveDiagram:
    ha, hb = ArcRef(a, HEAD), ArcRef(b, HEAD)

    def sw(r):
        return hb if r == ha else ha if r == hb else r
    cs = tuple(CrossingSite(c.id, tuple(sw(r) for r in c.slots), c.declared_sign) for c in d.crossings)
    return check_valid(ProjectiveDiagram(cs, tuple(sw(r) for r in d.boundary), d.free_unknots, d.mark))


def resolve_crossing(d: ProjectiveDiagram, cid: str) -> ProjectiveDiagram:
    """Replace a crossing by its oriented resolution."""
    c = d.crossing(cid)
    s = c.slots
    over_in = 3 if s[3].end == HEAD else 1
    turn = {s[0].arc: s[(over_in + 2) % 4].arc, s[over_in].arc: s[2].arc}

    def cont(arc):
        site = d.site_of(ArcRef(arc, HEAD))
        if site[0] == "x" and d.crossings[site[1]].id == cid:
            return turn[arc]
        if site[0] == "x":
            return d.crossings[site[1]].slots[(site[2] + 2) % 4].arc
        return d.boundary[d.antipode(site[1])].arc

    def at_c(arc, end):
        site = d.site_of(ArcRef(arc, end))
        return site[0] == "x" and d.crossings[site[1]].id == cid

    chain_of, head_rename = {}, {}
    for a in d.arcs:
        if at_c(a, TAIL):
            continue
        x = a
        chain_of[x] = a
        while at_c(x, HEAD):
            x = cont(x)
            chain_of[x] = a
        head_rename[x] = a
    # arcs left over form closed loops through the crossing only; each loop holds one or two arcs
    left = set(d.arcs) - set(chain_of)
    loops = 0
    loop_mark = None
    while left:
        x = left.pop()
        members = {x}
        y = cont(x)
        while y != x:
            left.discard(y)
            members.add(y)
            y = cont(y)
        if d.mark in members:
            loop_mark = free_token(d.free_unknots + loops)
        loops += 1

    def ren(r: ArcRef) -> ArcRef:
        return ArcRef(head_rename[r.arc], HEAD) if r.end == HEAD else r

    cs = tuple(CrossingSite(x.id, tuple(ren(r) for r in x.slots), x.declared_sign)
               for x in d.crossings if x.id != cid)
    bd = tuple(ren(r) for r in d.boundary)
    mark = chain_of.get(d.mark, loop_mark or d.mark) if d.mark is not None else None
    return check_valid(ProjectiveDiagram(cs, bd, d.free_unknots + loops, mark))


def apply_event(d: ProjectiveDiagram, e: Event) -> ProjectiveDiagram:
    if e.kind == BIRTH:
        return _with_free(d, d.free_unknots + 1)
    if e.kind == DEATH:
        k = _free_index(e.args[0], d)
        if k is None:
            raise InvalidEvent("only free circles can die")
        return _drop_free(d, k)
    if e.kind == SADDLE:
        return _saddle_diagram(d, e.args)
    if e.kind == RESOLVE:
        d.crossing(e.args[0])
        return resolve_crossing(d, e.args[0])
    if e.kind == RMOVE:
        return apply_move(d, e.args[0])
    raise InvalidEvent(f"unknown event {e.kind}")


def _saddle_form(d: ProjectiveDiagram, args: tuple) -> tuple:
    if len(args) == 1:
        k = _free_index(args[0], d)
        if k is None:
            raise InvalidEvent("a one-argument saddle splits a free circle")
        return ("split-free", k)
    x, y = args
    kx, ky = _free_index(x, d), _free_index(y, d)
    for t, kt in ((x, kx), (y, ky)):
        if kt is None and t not in d.arcs:
            raise InvalidEvent(f"unknown arc {t}")
    if kx is None and ky is None:
        if x == y:
            return ("pinch", x)
        if not _common_face(d, x, y):
            raise InvalidEvent(f"arcs {x} and {y} do not run the same way round a common face")
        return ("arcs", x, y)
    if kx is not None and ky is not None:
        if kx == ky:
            raise InvalidEvent("saddle needs two different free circles")
        return ("merge-free", min(kx, ky), max(kx, ky))
    arc, k = (x, ky) if kx is None else (y, kx)
    return ("absorb", arc, k)


def _saddle_diagram(d: ProjectiveDiagram, args: tuple) -> ProjectiveDiagram:
    form = _saddle_form(d, args)
    if form[0] == "arcs":
        return _swap_heads(d, form[1], form[2])
    if form[0] in ("pinch", "split-free"):
        return _with_free(d, d.free_unknots + 1)
    if form[0] == "absorb":
        return _drop_free(d, form[2], into=form[1])
    return _drop_free(d, form[2], into=free_token(form[1]))


# -- chain maps ----------------------------------------------------------------

@dataclass
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    entries: list  # per source basis element: {target index: coefficient}

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for x, a in vec.items():
            for y, b in self.entries[x].items():
                out[y] = out.get(y, 0) + a * b
        r = self.target.ring
        return {y: v for y, v in ((y, normalize(r, v)) for y, v in out.items()) if v}

    def then(self, other: "ChainMap") -> "ChainMap":
        """other after self."""
        return ChainMap(self.source, other.target, [other.apply(e) for e in self.entries])

    def is_chain_map(self) -> bool:
        for x in range(self.source.size):
            if self.apply(self.source.diff[x]) != self.target.apply(self.entries[x]):
                return False
        return True

    def degree_bounds(self) -> tuple:
        """(min, max) of j(target) - j(source) over nonzero entries, or None when the map is zero."""
        ds = [self.target.levels[y] - self.source.levels[x]
              for x, e in enumerate(self.entries) for y in e]
        return (min(ds), max(ds)) if ds else None

    def preserves_homological_degree(self) -> bool:
        return all(self.target.degrees[y] == self.source.degrees[x]
                   for x, e in enumerate(self.entries) for y in e)

    def is_zero(self) -> bool:
        return not any(self.entries)


def identity_map(c: ChainComplex) -> ChainMap:
    return ChainMap(c, c, [{x: 1} for x in range(c.size)])


def _index(c: ChainComplex) -> dict:
    return {k: x for x, k in enumerate(c.keys)}


def _arc_circle_count(s, d: ProjectiveDiagram) -> int:
    return len(s.circles) - d.free_unknots


def _saddle_edge(before, after, form, sb, sa) -> SignedEdge:
    ab, aa = _arc_circle_count(sb, before), _arc_circle_count(sa, after)
    pos_b = before.arc_index
    pos_a = after.arc_index

    def circ_b(arc):
        return sb.arc_circle[pos_b(arc)]

    def circ_a(arc):
        return sa.arc_circle[pos_a(arc)]

    kind_form = form[0]
    free_map: dict = {}
    nf = before.free_unknots
    if kind_form == "arcs":
        ins = {circ_b(form[1]), circ_b(form[2])}
        outs = {circ_a(form[1]), circ_a(form[2])}
        free_map = {j: j for j in range(nf)}
    elif kind_form == "pinch":
        ins = {circ_b(form[1])}
        outs = {circ_a(form[1]), aa + nf}
        free_map = {j: j for j in range(nf)}
    elif kind_form == "split-free":
        k = form[1]
        ins = {ab + k}
        outs = {aa + k, aa + nf}
        free_map = {j: j for j in range(nf) if j != k}
    elif kind_form == "absorb":
        k = form[2]
        ins = {circ_b(form[1]), ab + k}
        outs = {circ_a(form[1])}
        free_map = {j: (j if j < k else j - 1) for j in range(nf) if j != k}
    else:  # merge-free
        k, l = form[1], form[2]
        ins = {ab + k, ab + l}
        outs = {aa + k}
        free_map = {j: (j if j < l else j - 1) for j in range(nf) if j not in (k, l)}
    ins_t, outs_t = tuple(sorted(ins)), tuple(sorted(outs))
    if len(ins_t) == 2:
        kind = MERGE
    elif len(outs_t) == 2:
        kind = SPLIT
    else:
        kind = ETA
    bys = []
    for ci, c in enumerate(sb.circles):
        if ci in ins:
            continue
        if c.arcs:
            bys.append((ci, circ_a(before.arcs[next(iter(c.arcs))])))
        else:
            bys.append((ci, aa + free_map[ci - ab]))
    return SignedEdge(sb.index, sa.index, -1, kind, ins_t, outs_t, tuple(bys), 1)


def event_map(before: ProjectiveDiagram, e: Event, theory="dkh", ring=None,
              source: Optional[ChainComplex] = None) -> tuple:
    """(after diagram, chain map) for a birth, death or saddle."""
    t, r = check_ring(theory, ring)
    if e.kind in (RMOVE, RESOLVE):
        raise UnsupportedEvent(f"{e.kind} events have no chain map here")
    after = apply_event(before, e)
    src = source if source is not None else build_complex(before, t, r, check=False)
    tgt = build_complex(after, t, r, check=False)
    idx = _index(tgt)
    entries = []
    if e.kind == BIRTH:
        for (v, lab, sheet) in src.keys:
            entries.append({idx[(v, lab, sheet)]: 1})
    elif e.kind == DEATH:
        k = _free_index(e.args[0], before)
        cache = {}
        for (v, lab, sheet) in src.keys:
            if v not in cache:
                cache[v] = _arc_circle_count(resolve(before, v), before) + k
            p = cache[v]
            if (lab >> p) & 1:
                low = lab & ((1 << p) - 1)
                high = lab >> (p + 1)
                entries.append({idx[(v, low | (high << p), sheet)]: 1})
            else:
                entries.append({})
    else:
        form = _saddle_form(before, e.args)
        edges = {}
        for (v, lab, sheet) in src.keys:
            if v not in edges:
                edges[v] = _saddle_edge(before, after, form, resolve(before, v), resolve(after, v))
            out: dict = {}
            for lab2, s2, cf in apply_edge(edges[v], t, lab, sheet):
                y = idx[(v, lab2, s2)]
                val = normalize(r, out.get(y, 0) + cf)
                if val:
                    out[y] = val
                else:
                    out.pop(y, None)
            entries.append(out)
    return after, ChainMap(src, tgt, entries)


def event_degree(e: Event) -> int:
    """Filtered j-degree of the event map (its contribution to the Euler characteristic)."""
    return {BIRTH: 1, DEATH: 1, SADDLE: -1, RESOLVE: -1, RMOVE: 0}[e.kind]


def compose_movie(m: Movie, theory="dkh", ring=None) -> ChainMap:
    t, r = check_ring(theory, ring)
    for e in m.events:
        if e.kind in (RMOVE, RESOLVE):
            raise UnsupportedEvent(f"movie contains a {e.kind} event; only births, deaths and saddles compose")
    cur = build_complex(m.start, t, r, check=False)
    total = identity_map(cur)
    d = m.start
    for e in m.events:
        d, f = event_map(d, e, t, r, source=total.target)
        total = total.then(f)
    return total


# -- Euler characteristic and genus --------------------------------------------

def euler_characteristic(m: Movie) -> int:
    return sum(1 for e in m.events if e.kind in (BIRTH, DEATH)) - \
        sum(1 for e in m.events if e.kind in (SADDLE, RESOLVE))


def surface_components(m: Movie) -> Optional[int]:
    """Connected components of the cobordism surface, or None when tracking fails."""
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    counter = [0]

    def fresh():
        counter[0] += 1
        return counter[0]

    d = m.start
    tokens = [fresh() for _ in components(d)]
    for e in m.events:
        after = apply_event(d, e)
        nb_arc = len(link_components(d))
        free_b = tokens[nb_arc:]
        arc_tok = {a: tokens[i] for i, cyc in enumerate(link_components(d)) for a in cyc}
        if e.kind == BIRTH:
            tokens = tokens + [fresh()]
            d = after
            continue
        if e.kind == DEATH:
            k = _free_index(e.args[0], d)
            tokens = tokens[:nb_arc + k] + tokens[nb_arc + k + 1:]
            d = after
            continue
        new_free = list(free_b)
        if e.kind == SADDLE:
            form = _saddle_form(d, e.args)
            if form[0] == "arcs":
                union(arc_tok[form[1]], arc_tok[form[2]])
            elif form[0] == "pinch":
                new_free = free_b + [arc_tok[form[1]]]
            elif form[0] == "split-free":
                new_free = free_b + [free_b[form[1]]]
            elif form[0] == "absorb":
                union(arc_tok[form[1]], free_b[form[2]])
                new_free = free_b[:form[2]] + free_b[form[2] + 1:]
            else:
                union(free_b[form[1]], free_b[form[2]])
                new_free = free_b[:form[2]] + free_b[form[2] + 1:]
        elif e.kind == RESOLVE:
            c = d.crossing(e.args[0])
            union(arc_tok[c.slots[0].arc], arc_tok[c.slots[1].arc])
        new_tokens = []
        used_old = set()
        lc_after = link_components(after)
        for cyc in lc_after:
            olds = [arc_tok[a] for a in cyc if a in arc_tok]
            if olds:
                new_tokens.append(olds[0])
                used_old.add(find(olds[0]))
            else:
                new_tokens.append(None)
        extra_free = after.free_unknots - len(new_free)
        if e.kind in (RMOVE, RESOLVE):
            # components with no surviving arc names pair up with vanished ones, in order
            vanished = [tokens[i] for i, cyc in enumerate(link_components(d))
                        if not any(a in after.arcs for a in cyc)]
            if extra_free < 0:
                vanished = new_free[extra_free:] + vanished
                new_free = new_free[:extra_free]
            pool = list(vanished)
            for i, tok in enumerate(new_tokens):
                if tok is None:
                    if not pool:
                        return None
                    new_tokens[i] = pool.pop(0)
            while len(new_free) < after.free_unknots:
                if not pool:
                    return None
                new_free.append(pool.pop(0))
        if None in new_tokens or len(new_free) != after.free_unknots:
            return None
        tokens = new_tokens + new_free
        d = after
    # every token ever alive belongs to some piece; closed pieces (capped) count too
    roots = {find(x) for x in range(1, counter[0] + 1)}
    return len(roots)


def genus(m: Movie) -> Optional[int]:
    """Genus of a connected cobordism between knots, or None when undefined."""
    chi = euler_characteristic(m)
    if len(components(m.start)) != 1 or len(components(m.end)) != 1:
        return None
    if chi > 0 or chi % 2:
        return None
    if surface_components(m) != 1:
        return None
    return -chi // 2


# -- colouring propagation -----------------------------------------------------

def _colour_from_names(after: ProjectiveDiagram, known: dict, free: list) -> Optional[TwoColouring]:
    """Extend known arc colours along each component of ``after``."""
    arr = [None] * len(after.arcs)
    for cyc in link_components(after):
        pattern = component_colour_cycle(after, cyc)
        if pattern is None:
            return None
        ref = next((i for i, a in enumerate(cyc) if a in known), None)
        if ref is None:
            return None
        shift = known[cyc[ref]] ^ pattern[ref]
        for a, p in zip(cyc, pattern):
            arr[after.arc_index(a)] = p ^ shift
    out = TwoColouring(tuple(arr), tuple(free))
    return out if is_two_colouring(after, out) else None


def propagate_colouring(before: ProjectiveDiagram, e: Event, c: TwoColouring) -> list:
    """Colourings of the next frame that agree with ``c`` away from the event (empty when obstructed)."""
    if not is_two_colouring(before, c):
        raise ValueError("not a 2-colouring of the diagram")
    after = apply_event(before, e)
    names = {a: c.colour_of(before, a) for a in before.arcs}
    free = list(c.free)
    if e.kind == BIRTH:
        outs = [_colour_from_names(after, names, free + [col]) for col in (0, 1)]
        return [o for o in outs if o is not None]
    if e.kind == DEATH:
        k = _free_index(e.args[0], before)
        out = _colour_from_names(after, names, free[:k] + free[k + 1:])
        return [out] if out else []
    if e.kind == SADDLE:
        form = _saddle_form(before, e.args)
        if form[0] == "arcs":
            if names[form[1]] != names[form[2]]:
                return []
            nf = free
        elif form[0] == "pinch":
            nf = free + [names[form[1]]]
        elif form[0] == "split-free":
            nf = free + [free[form[1]]]
        elif form[0] == "absorb":
            if names[form[1]] != free[form[2]]:
                return []
            nf = free[:form[2]] + free[form[2] + 1:]
        else:
            if free[form[1]] != free[form[2]]:
                return []
            nf = free[:form[2]] + free[form[2] + 1:]
        out = _colour_from_names(after, names, nf)
        return [out] if out else []
    if e.kind == RESOLVE:
        ci = [x.id for x in before.crossings].index(e.args[0])
        if coloured_resolution(before, c, ci) != oriented_resolution(before, ci):
            return []
        out = _colour_from_names(after, names, free[:after.free_unknots] +
                                 [names[before.crossings[ci].slots[0].arc]] * max(0, after.free_unknots - len(free)))
        return [out] if out else []
    # Reidemeister moves: carry colours by surviving names, then fill vanished pieces
    surviving = {a: v for a, v in names.items() if a in after.arcs}
    lc_b = link_components(before)
    vanished_cols = [names[cyc[0]] for cyc in lc_b if not any(a in after.arcs for a in cyc)]
    nf = list(free)
    if after.free_unknots < len(nf):
        vanished_cols = nf[after.free_unknots:] + vanished_cols
        nf = nf[:after.free_unknots]
    pool = list(vanished_cols)
    for cyc in link_components(after):
        if not any(a in surviving for a in cyc):
            if not pool:
                return []
            surviving[cyc[0]] = pool.pop(0)
    while len(nf) < after.free_unknots:
        if not pool:
            return []
        nf.append(pool.pop(0))
    out = _colour_from_names(after, surviving, nf)
    return [out] if out else []


def movie_two_colourable(m: Movie) -> bool:
    frontier = set(enumerate_two_colourings(m.start))
    d = m.start
    for e in m.events:
        nxt = set()
        for c in frontier:
            nxt.update(propagate_colouring(d, e, c))
        d = apply_event(d, e)
        frontier = nxt
        if not frontier:
            return False
    return True


# -- parsing -------------------------------------------------------------------

class MovieSyntaxError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


def parse_movie(text: str, loader=None) -> Movie:
    if loader is None:
        from .bundled import load as loader
    start = None
    events: list = []
    checkpoints: dict = {}
    block = None
    block_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if block is not None:
            if line == "end":
                try:
                    dg = parse_diagram("\n".join(block))
                except ValueError as exc:
                    raise MovieSyntaxError(block_line, f"bad diagram block: {exc}") from None
                if start is None:
                    start = dg
                else:
                    checkpoints[len(events)] = dg
                block = None
            else:
                block.append(line)
            continue
        if not line:
            continue
        toks = line.split()
        kw = toks[0]
        if kw == "diagram":
            block, block_line = [], lineno
        elif kw == "start":
            if len(toks) != 2:
                raise MovieSyntaxError(lineno, "start needs a bundled diagram name")
            start = loader(toks[1])
        elif kw == BIRTH and len(toks) == 1:
            events.append(Event(BIRTH))
        elif kw == DEATH and len(toks) == 2:
            events.append(Event(DEATH, (toks[1],)))
        elif kw == SADDLE and len(toks) in (2, 3):
            events.append(Event(SADDLE, tuple(toks[1:])))
        elif kw == RESOLVE and len(toks) == 2:
            events.append(Event(RESOLVE, (toks[1],)))
        elif kw == RMOVE and len(toks) >= 2:
            try:
                events.append(Event(RMOVE, (parse_move(" ".join(toks[1:])),)))
            except (ValueError, IndexError) as exc:
                raise MovieSyntaxError(lineno, f"bad move: {exc}") from None
        else:
            raise MovieSyntaxError(lineno, f"cannot parse {line!r}")
    if block is not None:
        raise MovieSyntaxError(block_line, "unterminated diagram block")
    if start is None:
        raise MovieSyntaxError(1, "movie has no starting diagram")
    return build_movie(start, events, checkpoints)


def build_movie(start: ProjectiveDiagram, events, checkpoints=None) -> Movie:
    frames = []
    d = start
    checkpoints = checkpoints or {}
    for i, e in enumerate(events):
        try:
            d = apply_event(d, e)
        except (ValueError, KeyError) as exc:
            raise InvalidEvent(f"event {i + 1} ({e}): {exc}") from None
        frames.append(d)
        want = checkpoints.get(i + 1)
        if want is not None and replace(want, mark=None) != replace(d, mark=None):
            raise InvalidEvent(f"checkpoint after event {i + 1} does not match")
    return Movie(start, list(events), frames, dict(checkpoints))


# -- canonical classes under movies --------------------------------------------

def class_multiple(c: ChainComplex, v: dict, w: dict):
    """The scalar λ with [v] = λ[w] in homology over a field, or None when there is none."""
    degs = {c.degrees[x] for x in list(v) + list(w)}
    bounds = EchelonBasis(c.ring)
    for x in range(c.size):
        if c.degrees[x] + 1 in degs and c.diff[x]:
            bounds.add(c.diff[x])
    rw, _ = bounds.reduce(w)
    if not rw:
        raise ValueError("w is a boundary")
    rv, _ = bounds.reduce(v)
    if not rv:
        return 0
    k = min(rw)
    lam = normalize(c.ring, rv.get(k, 0) / rw[k]) if c.ring is not RingTag.F2 else rv.get(k, 0)
    if lam == 0:
        return None
    scaled = {y: normalize(c.ring, lam * a) for y, a in rw.items()}
    return lam if scaled == rv else None


@dataclass(frozen=True)
class CanonicalImage:
    colouring: TwoColouring
    sheet: int
    matches: tuple  # (target colouring, target sheet, nonzero scalar)


def canonical_images(m: Movie, theory) -> list:
    """Where the composite movie map sends each canonical class of the first diagram."""
    t = TheoryTag.parse(theory)
    f = compose_movie(m, t)
    out = []
    end_cols = enumerate_two_colourings(m.end)
    targets = [(c2, s2, canonical_generator(m.end, c2, s2, t).vector(f.target))
               for c2 in end_cols for s2 in (0, 1)]
    for c in enumerate_two_colourings(m.start):
        for s in (0, 1):
            img = f.apply(canonical_generator(m.start, c, s, t).vector(f.source))
            hits = []
            for c2, s2, w in targets:
                lam = class_multiple(f.target, img, w)
                if lam:
                    hits.append((c2, s2, lam))
            out.append(CanonicalImage(c, s, tuple(hits)))
    return out


def candidate_events(d: ProjectiveDiagram) -> list:
    """Every birth, death and saddle applicable to ``d``, in a fixed order."""
    out = [Event(BIRTH)]
    frees = [free_token(j) for j in range(d.free_unknots)]
    out += [Event(DEATH, (o,)) for o in frees]
    out += [Event(SADDLE, (o,)) for o in frees]
    out += [Event(SADDLE, (a, b)) for a, b in combinations(frees, 2)]
    for a in d.arcs:
        out.append(Event(SADDLE, (a, a)))
        out += [Event(SADDLE, (a, o)) for o in frees]
    for a, b in combinations(d.arcs, 2):
        if _common_face(d, a, b):
            out.append(Event(SADDLE, (a, b)))
    return out
