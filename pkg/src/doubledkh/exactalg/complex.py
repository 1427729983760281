"""Graded and filtered chain complexes, Gaussian-elimination cancellation and homology."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

from .linalg import EchelonBasis, kernel
from .ring import RingTag, inverse, is_unit, normalize
from .snf import invariant_factors
from .sparse import SparseMatrix


class InvariantFailure(RuntimeError):
    """An internal algebraic invariant (such as d^2 = 0) does not hold."""


@dataclass
class ChainComplex:
    """Basis elements with homological degree ``degrees[x]`` and quantum level ``levels[x]``.

    ``diff[x]`` maps target basis indices to coefficients.  ``step == 0`` means the
    differential preserves levels (graded); otherwise it raises them by multiples of step.
    """

    ring: RingTag
    degrees: list
    levels: list
    diff: list
    step: int = 0
    keys: Optional[list] = None

    def __post_init__(self):
        self.ring = RingTag.parse(self.ring)

    @property
    def size(self) -> int:
        return len(self.degrees)

    @property
    def is_filtered(self) -> bool:
        return self.step > 0

    def basis(self, i: int) -> list[int]:
        return [x for x, deg in enumerate(self.degrees) if deg == i]

    def homological_degrees(self) -> list[int]:
        return sorted(set(self.degrees))

    def differential(self, i: int) -> SparseMatrix:
        """d_i as a matrix from basis(i) to basis(i+1)."""
        src, dst = self.basis(i), self.basis(i + 1)
        row = {y: r for r, y in enumerate(dst)}
        ent = {(row[y], c): v for c, x in enumerate(src) for y, v in self.diff[x].items()}
        return SparseMatrix(len(dst), len(src), ent, self.ring)

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for x, a in vec.items():
            for y, b in self.diff[x].items():
                out[y] = out.get(y, 0) + a * b
        return {y: v for y, v in ((y, normalize(self.ring, v)) for y, v in out.items()) if v}

    def check(self) -> None:
        """Raise InvariantFailure unless degrees, levels and d^2 = 0 are consistent."""
        for x, dx in enumerate(self.diff):
            for y in dx:
                if self.degrees[y] != self.degrees[x] + 1:
                    raise InvariantFailure(f"differential {x}->{y} does not raise i by 1")
                jump = self.levels[y] - self.levels[x]
                if self.step == 0 and jump != 0:
                    raise InvariantFailure(f"differential {x}->{y} changes j by {jump}")
                if self.step and (jump < 0 or jump % self.step):
                    raise InvariantFailure(f"differential {x}->{y} changes j by {jump}")
            if self.apply(dx):
                raise InvariantFailure(f"d^2 is nonzero on basis element {x}")


class GradedChainComplex(ChainComplex):
    def __init__(self, ring, degrees, levels, diff, keys=None):
        super().__init__(ring, degrees, levels, diff, 0, keys)


class FilteredChainComplex(ChainComplex):
    def __init__(self, ring, degrees, levels, diff, step, keys=None):
        if step <= 0:
            raise ValueError("filtered complexes need a positive step")
        super().__init__(ring, degrees, levels, diff, step, keys)


@dataclass
class Reduction:
    """Result of cancellation: a smaller complex plus the surviving original indices."""

    complex: ChainComplex
    kept: list  # new index -> original index
    tracked: list  # tracked vectors projected to the new basis


def cancel(c: ChainComplex, tracked=()) -> Reduction:
    """Cancel invertible level-preserving differential entries until none remain.

    Tracked vectors (dicts over original indices) are pushed through the
    projection onto the reduced complex, which preserves homology classes
    and filtration levels.
    """
    ring = c.ring
    lv = c.levels
    out = [dict(dx) for dx in c.diff]
    inn: list[dict] = [dict() for _ in range(c.size)]
    for x, dx in enumerate(out):
        for y, v in dx.items():
            inn[y][x] = v
    alive = [True] * c.size
    vecs = [dict(v) for v in tracked]

    def pick(x):
        best = None
        for y, v in out[x].items():
            if lv[y] != lv[x] or not is_unit(ring, v):
                continue
            key = (0 if v in (1, -1) else 1, y)
            if best is None or key < best[0]:
                best = (key, y)
        return None if best is None else best[1]

    def eliminate(x, y):
        cf = out[x][y]
        ci = inverse(ring, cf)
        dx = out[x]
        for z in list(inn[y]):
            if z == x:
                continue
            f = normalize(ring, -out[z][y] * ci)
            oz = out[z]
            for w, a in dx.items():
                val = normalize(ring, oz.get(w, 0) + f * a)
                if val:
                    oz[w] = val
                    inn[w][z] = val
                else:
                    oz.pop(w, None)
                    inn[w].pop(z, None)
        for k, v in enumerate(vecs):
            b = v.get(y)
            if b:
                f = normalize(ring, -b * ci)
                for w, a in dx.items():
                    val = normalize(ring, v.get(w, 0) + f * a)
                    if val:
                        v[w] = val
                    else:
                        v.pop(w, None)
            v.pop(x, None)
            v.pop(y, None)
        for w in out[x]:
            inn[w].pop(x, None)
        for w in out[y]:
            inn[w].pop(y, None)
        for z in inn[x]:
            out[z].pop(x, None)
        for z in inn[y]:
            out[z].pop(y, None)
        out[x], out[y], inn[x], inn[y] = {}, {}, {}, {}
        alive[x] = alive[y] = False

    queue = list(range(c.size))
    while queue:
        again = set()
        for x in queue:
            if not alive[x]:
                continue
            y = pick(x)
            if y is None:
                continue
            again.update(inn[y])
            again.update(inn[x])
            eliminate(x, y)
        queue = sorted(z for z in again if alive[z])

    kept = [x for x in range(c.size) if alive[x]]
    new = {x: k for k, x in enumerate(kept)}
    diff = [{new[y]: v for y, v in out[x].items()} for x in kept]
    small = ChainComplex(ring, [c.degrees[x] for x in kept], [lv[x] for x in kept], diff, c.step,
                         [c.keys[x] for x in kept] if c.keys is not None else None)
    return Reduction(small, kept, [{new[y]: v for y, v in vec.items()} for vec in vecs])


@dataclass
class HomologySummary:
    """Homology ranks.

    Graded complexes are summarised per (i, j).  Filtered complexes are
    summarised per (i, s) where s is the filtration grading of classes.
    """

    ring: RingTag
    cells: dict = field(default_factory=dict)  # (i, j) -> (free_rank, torsion tuple)
    grading: str = "quantum"  # or "filtration"

    def rank(self, i=None, j=None) -> int:
        return sum(f for (a, b), (f, _) in self.cells.items()
                   if (i is None or a == i) and (j is None or b == j))

    @property
    def total_rank(self) -> int:
        return self.rank()

    def torsion(self, i, j) -> tuple:
        return self.cells.get((i, j), (0, ()))[1]

    def all_torsion(self) -> list[int]:
        return [t for _, tors in self.cells.values() for t in tors]

    def by_degree(self) -> dict:
        out: dict = defaultdict(int)
        for (i, _), (f, _) in self.cells.items():
            out[i] += f
        return {i: r for i, r in sorted(out.items()) if r}

    def i_support(self) -> set:
        return {i for (i, _), (f, t) in self.cells.items() if f or t}

    def grid(self) -> dict:
        return {k: v for k, v in sorted(self.cells.items()) if v[0] or v[1]}

    def rows(self) -> list[dict]:
        return [{"i": i, "j": j, "free_rank": f, "torsion": list(t)}
                for (i, j), (f, t) in self.grid().items()]

    def __eq__(self, other):
        return isinstance(other, HomologySummary) and self.grading == other.grading and \
            self.grid() == other.grid()


def _blocks(c: ChainComplex):
    by: dict = defaultdict(list)
    for x in range(c.size):
        by[(c.degrees[x], c.levels[x])].append(x)
    return by


def _dense_block(c, src, dst):
    pos = {y: r for r, y in enumerate(dst)}
    m = [[0] * len(src) for _ in dst]
    for col, x in enumerate(src):
        for y, v in c.diff[x].items():
            if y in pos:
                m[pos[y]][col] = v
    return m


def _graded_homology(c: ChainComplex) -> HomologySummary:
    red = cancel(c).complex
    by = _blocks(red)
    cells = {}
    if c.ring.is_field:
        if any(red.diff):
            raise InvariantFailure("graded complex retains a differential after field cancellation")
        for key, xs in by.items():
            cells[key] = (len(xs), ())
        return HomologySummary(c.ring, cells)
    factors = {}
    for (i, j), xs in by.items():
        tgt = by.get((i + 1, j), [])
        factors[(i, j)] = invariant_factors(_dense_block(red, xs, tgt)) if tgt and any(
            red.diff[x] for x in xs) else []
    for (i, j), xs in by.items():
        inc = factors.get((i - 1, j), [])
        free = len(xs) - len(factors[(i, j)]) - len(inc)
        tors = tuple(t for t in inc if t > 1)
        cells[(i, j)] = (free, tors)
    return HomologySummary(c.ring, cells)


def _cycle_filtration(c: ChainComplex, i: int):
    """Kernel vectors of d_i found along basis(i) ordered by descending level.

    Returns (levels descending, cycles, cut) where cycles[:cut[k]] spans Z ∩ F^k.
    """
    src = sorted(c.basis(i), key=lambda x: (-c.levels[x], x))
    found = kernel([c.diff[x] for x in src], c.ring)
    # each kernel vector first appears at its largest column position
    last = [max(v) for v in found]
    vecs = [{src[p]: a for p, a in v.items()} for v in found]
    lv = sorted({c.levels[x] for x in src}, reverse=True)
    cut = {}
    for k in lv:
        n_cols = sum(1 for x in src if c.levels[x] >= k)
        cut[k] = sum(1 for p in last if p < n_cols)
    return lv, vecs, cut


def _boundaries(c: ChainComplex, i: int) -> list[dict]:
    return [c.diff[x] for x in c.basis(i - 1) if c.diff[x]]


def _filtered_homology(c: ChainComplex) -> HomologySummary:
    if not c.ring.is_field:
        raise ValueError("filtered homology is computed over fields")
    red = cancel(c).complex
    cells = {}
    for i in red.homological_degrees():
        lv, cyc, cut = _cycle_filtration(red, i)
        eb = EchelonBasis(red.ring)
        for b in _boundaries(red, i):
            eb.add(b)
        base = len(eb)
        done = 0
        prev = 0
        for k in lv:
            for v in cyc[done:cut[k]]:
                eb.add(v)
            done = cut[k]
            dim = len(eb) - base
            if dim > prev:
                cells[(i, k)] = (dim - prev, ())
            prev = dim
    return HomologySummary(c.ring, cells, "filtration")


def homology(c: ChainComplex, ring=None, check: bool = True) -> HomologySummary:
    """Homology per (i, j) for graded complexes, per (i, s) for filtered ones."""
    if ring is not None and RingTag.parse(ring) is not c.ring:
        raise ValueError(f"complex is defined over {c.ring.value}, not {RingTag.parse(ring).value}")
    if check:
        c.check()
    return _filtered_homology(c) if c.is_filtered else _graded_homology(c)


def filtration_grading(c: ChainComplex, h: dict) -> int:
    """Largest k such that the class of the cycle h has a representative in F^k."""
    h = {x: v for x, v in ((x, normalize(c.ring, v)) for x, v in h.items()) if v}
    if not h:
        raise ValueError("zero vector has no filtration grading")
    degs = {c.degrees[x] for x in h}
    if len(degs) != 1:
        raise ValueError("class must be homogeneous in homological degree")
    if c.apply(h):
        raise ValueError("vector is not a cycle")
    i = degs.pop()
    eb = EchelonBasis(c.ring)
    for b in _boundaries(c, i):
        eb.add(b)
    if eb.contains(h):
        raise ValueError("zero class has no filtration grading")
    lv, cyc, cut = _cycle_filtration(c, i)
    done = 0
    for k in lv:
        for v in cyc[done:cut[k]]:
            eb.add(v)
        done = cut[k]
        if eb.contains(h):
            return k
    raise InvariantFailure("cycle not found in its own filtration")
