"""Pages of the spectral sequence of a filtered complex.

Pages are numbered so that the homology of the associated graded complex
is E_2, and d_r raises the level by (r - 1) * step.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .complex import ChainComplex, InvariantFailure, cancel, homology
from .linalg import EchelonBasis, kernel


@dataclass
class SpectralPage:
    r: int
    ranks: dict  # (i, j) -> rank
    differential: dict = field(default_factory=dict)  # (i, j) -> rank of d_r leaving (i, j)

    @property
    def total(self) -> int:
        return sum(self.ranks.values())

    @property
    def nonzero_differential(self) -> bool:
        return any(self.differential.values())


@dataclass
class SpectralSequence:
    step: int
    pages: list  # SpectralPage objects, pages[0] is E_2
    stabilization: int  # first r with E_r = E_infinity

    @property
    def nontrivial_page_count(self) -> int:
        return 1 + sum(p.nonzero_differential for p in self.pages)

    def page(self, r: int) -> SpectralPage:
        if r < 2:
            raise ValueError("pages start at r = 2")
        return self.pages[min(r, self.stabilization) - 2]

    @property
    def e_infinity(self) -> SpectralPage:
        return self.page(self.stabilization)

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "stabilization": self.stabilization,
            "nontrivial_page_count": self.nontrivial_page_count,
            "pages": [{
                "r": p.r,
                "ranks": [{"i": i, "j": j, "rank": n} for (i, j), n in sorted(p.ranks.items()) if n],
                "differentials": [{"from": [i, j], "to": [i + 1, j + (p.r - 1) * self.step], "rank": n}
                                  for (i, j), n in sorted(p.differential.items()) if n],
            } for p in self.pages],
        }


class _Filtered:
    """Helper answering dimension queries on one residue class of levels."""

    def __init__(self, c: ChainComplex, members):
        self.c = c
        self.by_deg = defaultdict(list)
        for x in members:
            self.by_deg[c.degrees[x]].append(x)

    def cycles(self, i, k, top):
        """Basis of {x in F^k C_i : dx in F^top}."""
        c = self.c
        src = [x for x in self.by_deg.get(i, []) if c.levels[x] >= k]
        cols = [{y: v for y, v in c.diff[x].items() if c.levels[y] < top} for x in src]
        return [{src[p]: a for p, a in v.items()} for v in kernel(cols, c.ring)]

    def e_dim(self, i, k, r):
        """Conventional E_r^{i,k} for r >= 1."""
        s = self.c.step
        num = len(self.cycles(i, k, k + r * s))
        eb = EchelonBasis(self.c.ring)
        for v in self.cycles(i, k + s, k + r * s):
            eb.add(v)
        for v in self.cycles(i - 1, k - (r - 1) * s, k):
            eb.add(self.c.apply(v))
        return num - len(eb)


def spectral_pages(c: ChainComplex, check: bool = True) -> SpectralSequence:
    if not c.is_filtered:
        raise ValueError("spectral pages need a filtered complex")
    if check:
        c.check()
    red = cancel(c).complex  # filtered homotopy equivalence, same pages from E_2 on
    s = red.step
    classes = defaultdict(list)
    for x in range(red.size):
        classes[red.levels[x] % s].append(x)
    if red.size:
        span = (max(red.levels) - min(red.levels)) // s
    else:
        span = 0
    last_conv = span + 1  # conventional d_r vanishes once r * step exceeds the level range
    conv_dims = []  # conventional r = 1 .. last_conv + 1
    for r in range(1, last_conv + 2):
        dims = {}
        for members in classes.values():
            helper = _Filtered(red, members)
            for x in members:
                key = (red.degrees[x], red.levels[x])
                if key not in dims:
                    dims[key] = helper.e_dim(key[0], key[1], r)
        conv_dims.append(dims)
    pages = []
    for idx in range(len(conv_dims) - 1):
        cur, nxt = conv_dims[idx], conv_dims[idx + 1]
        jump = (idx + 1) * s
        diff = {}
        for (i, k) in sorted(cur):
            rank_in = diff.get((i - 1, k - jump), 0)
            out = cur[(i, k)] - nxt.get((i, k), 0) - rank_in
            if out < 0:
                raise InvariantFailure(f"negative differential rank at {(i, k)}")
            diff[(i, k)] = out
        pages.append(SpectralPage(idx + 2, dict(cur), diff))
    pages.append(SpectralPage(len(conv_dims) + 1, dict(conv_dims[-1]), {}))
    stab = len(pages) + 1
    while stab > 2 and not pages[stab - 3].nonzero_differential:
        stab -= 1
    pages = pages[:stab - 1]
    ss = SpectralSequence(s, pages, stab)
    _check_abutment(red, ss)
    return ss


def _check_abutment(c: ChainComplex, ss: SpectralSequence) -> None:
    h = homology(c, check=False).by_degree()
    inf = defaultdict(int)
    for (i, _), n in ss.e_infinity.ranks.items():
        inf[i] += n
    if {i: n for i, n in inf.items() if n} != h:
        raise InvariantFailure("E_infinity does not match the homology of the complex")
