"""The doubled Khovanov, Lee and Bar-Natan complexes and their invariants.

A generator over a smoothing with k circles is a label word (bit c set
means v_- on circle c) together with a sheet, 0 for u and 1 for l.  Its
quantum degree is p + i + wr with p = #v_+ - #v_- - [sheet = l].
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .colouring import ORANGE, TwoColouring, circle_colours, coloured_smoothing, is_two_colouring, odd_writhe
from .cube import MERGE, SPLIT, Cube, SignedEdge, build_cube, resolve
from .diagram import ProjectiveDiagram, is_knot, is_local, writhe
from .exactalg import (ChainComplex, HomologySummary, InvariantFailure, RingTag, SparseMatrix,
                       filtration_grading, homology)
from .exactalg.ring import normalize

U, L = 0, 1
PLUS, MINUS = 0, 1


class TheoryTag(str, Enum):
    DKH = "doubled-khovanov"
    LEE = "doubled-lee"
    BN = "doubled-bar-natan"

    @classmethod
    def parse(cls, value) -> "TheoryTag":
        if isinstance(value, TheoryTag):
            return value
        aliases = {"dkh": cls.DKH, "khovanov": cls.DKH, "lee": cls.LEE, "bn": cls.BN,
                   "bar-natan": cls.BN}
        v = str(value).lower()
        for t in cls:
            if t.value == v:
                return t
        try:
            return aliases[v]
        except KeyError:
            raise ValueError(f"unknown theory {value!r}") from None

    @property
    def step(self) -> int:
        return {TheoryTag.DKH: 0, TheoryTag.LEE: 4, TheoryTag.BN: 2}[self]

    @property
    def default_ring(self) -> RingTag:
        return {TheoryTag.DKH: RingTag.Z, TheoryTag.LEE: RingTag.Q, TheoryTag.BN: RingTag.F2}[self]


class TheoryRingMismatch(ValueError):
    pass


def check_ring(theory, ring=None) -> tuple[TheoryTag, RingTag]:
    t = TheoryTag.parse(theory)
    r = t.default_ring if ring is None else RingTag.parse(ring)
    if t is TheoryTag.LEE and not r.two_invertible:
        raise TheoryRingMismatch("doubled Lee homology needs a ring in which 2 is invertible (Q)")
    if t is TheoryTag.BN and r is not RingTag.F2:
        raise TheoryRingMismatch("doubled Bar-Natan homology is defined over F2")
    return t, r


# Tables: inputs are label bits, outputs are lists of (bits, coefficient).
_MULT = {
    TheoryTag.DKH: {(0, 0): [(0, 1)], (0, 1): [(1, 1)], (1, 0): [(1, 1)], (1, 1): []},
    TheoryTag.LEE: {(0, 0): [(0, 1)], (0, 1): [(1, 1)], (1, 0): [(1, 1)], (1, 1): [(0, 1)]},
    TheoryTag.BN: {(0, 0): [(0, 1)], (0, 1): [(1, 1)], (1, 0): [(1, 1)], (1, 1): [(1, 1)]},
}
_COMULT = {
    TheoryTag.DKH: {0: [((0, 1), 1), ((1, 0), 1)], 1: [((1, 1), 1)]},
    TheoryTag.LEE: {0: [((0, 1), 1), ((1, 0), 1)], 1: [((1, 1), 1), ((0, 0), 1)]},
    TheoryTag.BN: {0: [((0, 1), 1), ((1, 0), 1), ((0, 0), 1)], 1: [((1, 1), 1)]},
}
# (sheet, label) -> [(sheet, label, coefficient)]
_ETA = {
    TheoryTag.DKH: {(U, PLUS): [(L, PLUS, 1)], (L, PLUS): [(U, MINUS, 2)],
                    (U, MINUS): [(L, MINUS, 1)], (L, MINUS): []},
    TheoryTag.LEE: {(U, PLUS): [(L, PLUS, 1)], (L, PLUS): [(U, MINUS, 2)],
                    (U, MINUS): [(L, MINUS, 1)], (L, MINUS): [(U, PLUS, 2)]},
    TheoryTag.BN: {(U, PLUS): [(L, PLUS, 1)], (L, PLUS): [(U, PLUS, 1)],
                   (U, MINUS): [(L, MINUS, 1)], (L, MINUS): [(U, MINUS, 1)]},
}


def multiplication(theory, a: int, b: int):
    return list(_MULT[TheoryTag.parse(theory)][(a, b)])


def comultiplication(theory, a: int):
    return list(_COMULT[TheoryTag.parse(theory)][a])


def eta(theory, sheet: int, label: int):
    return list(_ETA[TheoryTag.parse(theory)][(sheet, label)])


def apply_edge(e: SignedEdge, theory, labels: int, sheet: int, sheets: int = 2):
    """Image of one generator along an edge: list of (labels, sheet, coefficient)."""
    t = TheoryTag.parse(theory)
    base = 0
    for sp, tp in e.bystanders:
        if (labels >> sp) & 1:
            base |= 1 << tp
    out = []
    if e.kind == MERGE:
        a, b = (labels >> e.inputs[0]) & 1, (labels >> e.inputs[1]) & 1
        o = e.outputs[0]
        for x, cf in _MULT[t][(a, b)]:
            out.append((base | (x << o), sheet, cf * e.sign))
    elif e.kind == SPLIT:
        a = (labels >> e.inputs[0]) & 1
        o0, o1 = e.outputs
        for (x, y), cf in _COMULT[t][a]:
            out.append((base | (x << o0) | (y << o1), sheet, cf * e.sign))
    else:
        if sheets == 1:
            raise InvariantFailure("single-sheet theory met an eta edge")
        a = (labels >> e.inputs[0]) & 1
        o = e.outputs[0]
        for s2, x, cf in _ETA[t][(sheet, a)]:
            out.append((base | (x << o), s2, cf * e.sign))
    return out


def edge_block(cube: Cube, e: SignedEdge, theory, ring=None) -> SparseMatrix:
    """Matrix of one edge map between the generator lists of its two smoothings."""
    t, r = check_ring(theory, ring)
    ks, kt = len(cube.vertices[e.source].circles), len(cube.vertices[e.target].circles)
    ent: dict = {}
    for sheet in (U, L):
        for lab in range(1 << ks):
            col = lab | (sheet << ks)
            for lab2, s2, cf in apply_edge(e, t, lab, sheet):
                row = lab2 | (s2 << kt)
                ent[(row, col)] = ent.get((row, col), 0) + cf
    return SparseMatrix(2 << kt, 2 << ks, ent, r)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _marked_position(smoothing) -> Optional[int]:
    return next((p for p, c in enumerate(smoothing.circles) if c.holds_mark), None)


def build_complex(d: ProjectiveDiagram, theory="dkh", ring=None, *, reduced: bool = False,
                  sheets: int = 2, check: bool = True, limit: Optional[int] = None) -> ChainComplex:
    """Assemble the chain complex of a diagram.

    ``sheets=1`` drops the l sheet and gives the classical complexes of a
    local diagram.  ``reduced`` keeps only generators labelling the marked
    circle v_-.
    """
    t, r = check_ring(theory, ring)
    if reduced:
        if d.mark is None:
            raise ValueError("reduced complex needs a marked arc")
        if t is TheoryTag.LEE:
            raise ValueError("the marked-v_- subspace is not a subcomplex for the Lee differential")
    cube = build_cube(d, limit)
    wr = writhe(d)
    degrees, levels, keys = [], [], []
    index: dict = {}
    marks = []
    for s in cube.vertices:
        k = len(s.circles)
        m = _marked_position(s) if reduced else None
        marks.append(m)
        for sheet in range(sheets):
            for lab in range(1 << k):
                if m is not None and not (lab >> m) & 1:
                    continue
                index[(s.index, lab, sheet)] = len(keys)
                keys.append((s.index, lab, sheet))
                p = k - 2 * _popcount(lab) - sheet
                degrees.append(s.height)
                levels.append(p + s.height + wr)
    diff = [dict() for _ in keys]
    by_vertex: dict = {}
    for x, (v, lab, sheet) in enumerate(keys):
        by_vertex.setdefault(v, []).append(x)
    for e in cube.edges:
        for x in by_vertex.get(e.source, ()):
            _, lab, sheet = keys[x]
            dx = diff[x]
            for lab2, s2, cf in apply_edge(e, t, lab, sheet, sheets):
                y = index.get((e.target, lab2, s2))
                if y is None:
                    if reduced:
                        raise InvariantFailure("reduced subspace is not closed under d")
                    raise InvariantFailure("edge map leaves the chain space")
                val = normalize(r, dx.get(y, 0) + cf)
                if val:
                    dx[y] = val
                else:
                    dx.pop(y, None)
    c = ChainComplex(r, degrees, levels, diff, t.step, keys)
    if check:
        c.check()
    return c


def reduced_complex(d: ProjectiveDiagram, theory="dkh", ring=None, **kw) -> ChainComplex:
    return build_complex(d, theory, ring, reduced=True, **kw)


def dkh_homology(d: ProjectiveDiagram, ring=RingTag.Z, *, reduced: bool = False) -> HomologySummary:
    return homology(build_complex(d, TheoryTag.DKH, ring, reduced=reduced, check=False))


def lee_homology(d: ProjectiveDiagram, ring=RingTag.Q) -> HomologySummary:
    return homology(build_complex(d, TheoryTag.LEE, ring, check=False))


def bn_homology(d: ProjectiveDiagram, ring=RingTag.F2, *, reduced: bool = False) -> HomologySummary:
    return homology(build_complex(d, TheoryTag.BN, ring, reduced=reduced, check=False))


def theory_homology(d: ProjectiveDiagram, theory, ring=None, *, reduced: bool = False) -> HomologySummary:
    t, r = check_ring(theory, ring)
    return homology(build_complex(d, t, r, reduced=reduced, check=False))


@dataclass
class CanonicalChain:
    colouring: TwoColouring
    sheet: int
    theory: TheoryTag
    chain: dict  # (vertex, labels, sheet) -> coefficient
    degree: int

    def vector(self, c: ChainComplex) -> dict:
        index = {k: x for x, k in enumerate(c.keys)}
        return {index[k]: v for k, v in self.chain.items()}


def canonical_generator(d: ProjectiveDiagram, c: TwoColouring, sheet: int, theory) -> CanonicalChain:
    t = TheoryTag.parse(theory)
    if t is TheoryTag.DKH:
        raise ValueError("canonical generators exist for the Lee and Bar-Natan theories only")
    if not is_two_colouring(d, c):
        raise ValueError("not a 2-colouring of this diagram")
    if sheet not in (U, L):
        raise ValueError("sheet must be 0 (u) or 1 (l)")
    v = coloured_smoothing(d, c)
    s = resolve(d, v)
    cols = circle_colours(d, c, s)
    if t is TheoryTag.LEE:
        half = Fraction(1, 2)
        factor = {ORANGE: {PLUS: half, MINUS: half}, 1 - ORANGE: {PLUS: half, MINUS: -half}}
    else:
        factor = {ORANGE: {PLUS: 1, MINUS: 1}, 1 - ORANGE: {MINUS: 1}}
    terms = {0: 1}
    for pos, col in enumerate(cols):
        nxt = {}
        for lab, cf in terms.items():
            for bit, a in factor[col].items():
                nxt[lab | (bit << pos)] = cf * a
        terms = nxt
    ring = TheoryTag.parse(t).default_ring
    chain = {(v, lab, sheet): normalize(ring, cf) for lab, cf in terms.items() if normalize(ring, cf)}
    return CanonicalChain(c, sheet, t, chain, s.height)


class SSupportError(InvariantFailure):
    pass


def s_support(h: HomologySummary) -> list[int]:
    """Filtration gradings of a filtered homology summary, with multiplicity, descending."""
    out = []
    for (_, s), (f, _) in h.cells.items():
        out.extend([s] * f)
    return sorted(out, reverse=True)


def rasmussen(d: ProjectiveDiagram, ring=RingTag.Q) -> int:
    """Doubled Rasmussen invariant: one less than the top filtration grading."""
    r = RingTag.parse(ring)
    if r not in (RingTag.Q, RingTag.F2):
        raise ValueError("ds is computed over Q or F2")
    if not is_knot(d):
        raise ValueError("ds needs a knot diagram (exactly one component)")
    h = lee_homology(d, r) if r is RingTag.Q else bn_homology(d, r)
    return rasmussen_from(h)


def rasmussen_from(h: HomologySummary) -> int:
    """ds read off the filtered homology of a knot."""
    sup = s_support(h)
    if len(sup) != 4:
        raise SSupportError(f"expected rank 4, found s-support {sup}")
    u = sup[0] - 1
    if sup != [u + 1, u, u - 1, u - 2]:
        raise SSupportError(f"s-support {sup} is not of the form u+1, u, u-1, u-2")
    return u


def canonical_class_grading(d: ProjectiveDiagram, c: TwoColouring, sheet: int, theory) -> int:
    """Filtration grading of the class of a canonical generator."""
    t = TheoryTag.parse(theory)
    cx = build_complex(d, t, check=False)
    return filtration_grading(cx, canonical_generator(d, c, sheet, t).vector(cx))


def _require_local(d: ProjectiveDiagram):
    if not is_local(d):
        raise ValueError("classical oracle needs a local diagram")


def classical_khovanov(d: ProjectiveDiagram, ring=RingTag.Z) -> HomologySummary:
    _require_local(d)
    return homology(build_complex(d, TheoryTag.DKH, ring, sheets=1))


def classical_lee(d: ProjectiveDiagram) -> HomologySummary:
    _require_local(d)
    return homology(build_complex(d, TheoryTag.LEE, RingTag.Q, sheets=1))


def classical_rasmussen(d: ProjectiveDiagram) -> int:
    sup = s_support(classical_lee(d))
    if len(sup) != 2 or sup[0] - sup[1] != 2:
        raise SSupportError(f"classical Lee s-support {sup} is not of the form s+1, s-1")
    return sup[0] - 1


def odd_writhe_support(d: ProjectiveDiagram) -> set:
    from .colouring import enumerate_two_colourings
    return {odd_writhe(d, c) for c in enumerate_two_colourings(d)}
