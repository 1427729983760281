"""Slow reference computations used to cross-check the main engine.

Nothing here shares code with the cube, theory or elimination modules:
circles, tensor bases, signs and linear algebra are all redone naively.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product
from math import gcd

from .diagram import ProjectiveDiagram
from .exactalg import ChainComplex, RingTag


# -- integer matrices ----------------------------------------------------------

def naive_invariant_factors(m: list[list[int]]) -> list[int]:
    """Nonzero invariant factors by textbook gcd elimination."""
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    out = []
    t = 0
    while t < min(rows, cols):
        nz = [(i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        i, j = nz[0]
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            for i in range(t + 1, rows):
                while a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
            for j in range(t + 1, cols):
                while a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
            if any(a[i][t] for i in range(t + 1, rows)):
                continue
            # the pivot must divide the rest of the matrix
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % a[t][t]), None)
            if bad is not None:
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                done = False
            if done:
                break
        out.append(abs(a[t][t]))
        t += 1
    return out


def _det(m: list[list[int]]) -> int:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det)


def determinantal_invariant_factors(m: list[list[int]]) -> list[int]:
    """Invariant factors as ratios of gcds of k x k minors (small matrices only)."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    divisors = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, _det([[m[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


# -- small filtered complexes over F2 ------------------------------------------

def random_filtered_complex(rng: random.Random, dim: int, degrees=(0, 1, 2), levels=range(-3, 4)) -> ChainComplex:
    """A random filtered complex over F2, built by conjugating a split one."""
    pieces = []
    used = 0
    while used < dim:
        if dim - used >= 2 and rng.random() < 0.6:
            i = rng.choice(degrees[:-1])
            lo = rng.choice(list(levels))
            hi = rng.choice([s for s in levels if s >= lo])
            pieces.append(((i, lo), (i + 1, hi)))
            used += 2
        else:
            pieces.append(((rng.choice(degrees), rng.choice(list(levels))),))
            used += 1
    degs, levs, diff = [], [], []
    for p in pieces:
        base = len(degs)
        for (i, s) in p:
            degs.append(i)
            levs.append(s)
            diff.append({})
        if len(p) == 2:
            diff[base] = {base + 1: 1}
    n = len(degs)
    # g is unitriangular: x goes to x plus later elements of the same degree at levels at least as high
    g = [dict({x: 1}) for x in range(n)]
    for x in range(n):
        for y in range(n):
            if degs[y] == degs[x] and (levs[y], y) > (levs[x], x) and rng.random() < 0.4:
                g[x][y] = 1
    ginv = _invert_f2(g, n)
    new = []
    for x in range(n):
        # d' = g d g^-1
        v = _apply_f2(ginv, {x: 1})
        v = _apply_f2(diff, v)
        new.append(_apply_f2(g, v))
    return ChainComplex(RingTag.F2, degs, levs, new, step=1)


def _apply_f2(m: list[dict], v: dict) -> dict:
    out: dict = {}
    for x in v:
        for y in m[x]:
            out[y] = out.get(y, 0) ^ 1
    return {y: 1 for y, b in out.items() if b}


def _invert_f2(m: list[dict], n: int) -> list[dict]:
    rows = [sum(1 << y for y in m[x]) for x in range(n)]
    inv = [1 << x for x in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if (rows[r] >> c) & 1)
        rows[c], rows[p] = rows[p], rows[c]
        inv[c], inv[p] = inv[p], inv[c]
        for r in range(n):
            if r != c and (rows[r] >> c) & 1:
                rows[r] ^= rows[c]
                inv[r] ^= inv[c]
    return [{y: 1 for y in range(n) if (inv[x] >> y) & 1} for x in range(n)]


def _span_f2(vs) -> set:
    got = {0}
    for v in vs:
        got |= {g ^ v for g in got}
    return got


def _mask_level(c: ChainComplex, v: int) -> int:
    return min(c.levels[x] for x in range(c.size) if (v >> x) & 1)


def brute_class_grading(c: ChainComplex, z: dict) -> int:
    """Largest level of a representative of [z], trying every boundary."""
    zm = sum(1 << x for x in z)
    i = c.degrees[next(iter(z))]
    bounds = _span_f2([sum(1 << y for y in c.diff[x]) for x in range(c.size) if c.degrees[x] == i - 1])
    if zm in bounds:
        raise ValueError("zero class")
    return max(_mask_level(c, zm ^ b) for b in bounds)


def brute_filtered_homology(c: ChainComplex) -> dict:
    """(i, s) -> rank over F2, by listing every cycle and every boundary."""
    if c.ring is not RingTag.F2 or c.size > 14:
        raise ValueError("brute force needs a small complex over F2")
    n = c.size
    dmask = [sum(1 << y for y in c.diff[x]) for x in range(n)]
    out = {}
    for i in sorted(set(c.degrees)):
        here = [x for x in range(n) if c.degrees[x] == i]
        below = [x for x in range(n) if c.degrees[x] == i - 1]

        boundaries = _span_f2([dmask[x] for x in below])
        cycles = []
        for bits in product((0, 1), repeat=len(here)):
            vec = sum(1 << x for x, b in zip(here, bits) if b)
            img = 0
            for x, b in zip(here, bits):
                if b:
                    img ^= dmask[x]
            if img == 0:
                cycles.append(vec)

        def level(v):
            return _mask_level(c, v)

        def dim_at_least(s):
            # classes having some representative supported at levels >= s
            classes = {min(z ^ b for b in boundaries) for z in cycles
                       if z and not z in boundaries and level(z) >= s}
            return (len(classes) + 1).bit_length() - 1
        lv = sorted(set(c.levels[x] for x in here))
        for s in lv:
            r = dim_at_least(s) - dim_at_least(s + 1)
            if r:
                out[(i, s)] = r
    return out


# -- classical Khovanov and Lee for local diagrams ------------------------------

def _local_circles(d: ProjectiveDiagram, bits: tuple) -> list[frozenset]:
    arcs = sorted({r.arc for c in d.crossings for r in c.slots})
    parent = {a: a for a in arcs}

    def root(a):
        while parent[a] != a:
            a = parent[a]
        return a
    for c, b in zip(d.crossings, bits):
        pairs = ((0, 1), (2, 3)) if b == 0 else ((0, 3), (1, 2))
        for s, t in pairs:
            ra, rb = root(c.slots[s].arc), root(c.slots[t].arc)
            if ra != rb:
                parent[ra] = rb
    groups: dict = {}
    for a in arcs:
        groups.setdefault(root(a), set()).add(a)
    circles = sorted((frozenset(g) for g in groups.values()), key=lambda g: min(g))
    return circles + [frozenset({f"free{j}"}) for j in range(d.free_unknots)]


class ClassicalOracle:
    """Classical Khovanov (theory 'kh') or Lee ('lee') complex of a local diagram, built densely."""

    def __init__(self, d: ProjectiveDiagram, theory: str = "kh"):
        if d.boundary:
            raise ValueError("classical oracle needs a local diagram")
        self.d = d
        self.theory = theory
        n = d.n
        self.n_minus = sum(1 for c in d.crossings if c.slots[3].end != "h")
        self.n_plus = n - self.n_minus
        self.gens = []  # (bits, labels tuple over circles) with labels +1 / -1
        self.circles = {}
        for bits in product((0, 1), repeat=n):
            circ = _local_circles(d, bits)
            self.circles[bits] = circ
            for labs in product((1, -1), repeat=len(circ)):
                self.gens.append((bits, labs))
        self.index = {g: x for x, g in enumerate(self.gens)}

    def degree(self, g) -> int:
        return sum(g[0]) - self.n_minus

    def q(self, g) -> int:
        return sum(g[1]) + sum(g[0]) + self.n_plus - 2 * self.n_minus

    def _m(self, a, b):
        if a == 1 and b == 1:
            return {1: 1}
        if a == -1 and b == -1:
            return {1: 1} if self.theory == "lee" else {}
        return {-1: 1}

    def _delta(self, a):
        if a == 1:
            return {(1, -1): 1, (-1, 1): 1}
        out = {(-1, -1): 1}
        if self.theory == "lee":
            out[(1, 1)] = 1
        return out

    def differential(self, g) -> dict:
        bits, labs = g
        src = self.circles[bits]
        out: dict = {}
        for k, b in enumerate(bits):
            if b:
                continue
            sign = (-1) ** sum(bits[:k])
            tb = bits[:k] + (1,) + bits[k + 1:]
            dst = self.circles[tb]
            where_src = {a: i for i, c in enumerate(src) for a in c}
            where_dst = {a: i for i, c in enumerate(dst) for a in c}
            arcs_here = [r.arc for r in self.d.crossings[k].slots]
            s_in = sorted({where_src[a] for a in arcs_here})
            d_out = sorted({where_dst[a] for a in arcs_here})
            # untouched circles carry their labels across
            carry = {}
            for i, c in enumerate(src):
                if i not in s_in:
                    carry[where_dst[next(iter(c))]] = labs[i]
            if len(s_in) == 2:
                res = {(x,): v for x, v in self._m(labs[s_in[0]], labs[s_in[1]]).items()}
            else:
                res = self._delta(labs[s_in[0]])
            for vals, cf in res.items():
                new = [None] * len(dst)
                for pos, lab in carry.items():
                    new[pos] = lab
                for pos, lab in zip(d_out, vals):
                    new[pos] = lab
                key = self.index[(tb, tuple(new))]
                out[key] = out.get(key, 0) + sign * cf
        return {k: v for k, v in out.items() if v}

    def homology(self, ring: str = "Z") -> dict:
        """(i, q) -> (free rank, torsion) for Khovanov; Lee over Q only."""
        blocks: dict = {}
        for x, g in enumerate(self.gens):
            blocks.setdefault((self.degree(g), self.q(g)), []).append(x)
        out = {}
        for (i, q), xs in blocks.items():
            nxt = blocks.get((i + 1, q), [])
            prv = blocks.get((i - 1, q), [])
            d_out = self._matrix(xs, nxt)
            d_in = self._matrix(prv, xs)
            r_out = _rank_q(d_out)
            r_in = _rank_q(d_in)
            free = len(xs) - r_out - r_in
            tors = ()
            if ring == "Z" and d_in:
                tors = tuple(f for f in naive_invariant_factors(d_in) if f > 1)
            if free or tors:
                out[(i, q)] = (free, tors)
        return out

    def _matrix(self, src, dst):
        if not src or not dst:
            return []
        pos = {y: r for r, y in enumerate(dst)}
        m = [[0] * len(src) for _ in dst]
        for col, x in enumerate(src):
            for y, v in self.differential(self.gens[x]).items():
                m[pos[y]][col] = v
        return m


def _rank_q(m) -> int:
    if not m:
        return 0
    a = [[Fraction(x) for x in row] for row in m]
    r = 0
    cols = len(a[0])
    for c in range(cols):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def classical_khovanov_oracle(d: ProjectiveDiagram, ring: str = "Z") -> dict:
    return ClassicalOracle(d, "kh").homology(ring)


def classical_rasmussen_oracle(d: ProjectiveDiagram) -> int:
    """s = max(gr[s_o + s_obar], gr[s_o - s_obar]) - 1 for the orientation generators of a knot."""
    lee = ClassicalOracle(d, "lee")
    # oriented resolution: 0 at positive crossings
    bits = tuple(0 if c.slots[3].end == "h" else 1 for c in d.crossings)
    circ = lee.circles[bits]
    colour = _seifert_colours(d, bits, circ)
    gens = []
    for flip in (0, 1):
        # a = v+ + v-, b = v+ - v- (up to scale); alternate by colour
        vec = {(): Fraction(1)}
        for i in range(len(circ)):
            terms = ((1, 1), (-1, 1)) if colour[i] ^ flip == 0 else ((1, 1), (-1, -1))
            vec = {k + (lab,): v * cf for k, v in vec.items() for lab, cf in terms}
        gens.append({lee.index[(bits, k)]: v for k, v in vec.items()})
    plus = {k: gens[0].get(k, 0) + gens[1].get(k, 0) for k in set(gens[0]) | set(gens[1])}
    minus = {k: gens[0].get(k, 0) - gens[1].get(k, 0) for k in set(gens[0]) | set(gens[1])}
    return max(_class_grading(lee, plus), _class_grading(lee, minus)) - 1


def _seifert_colours(d, bits, circ) -> list[int]:
    """Colour Seifert circles by nesting depth parity using the smoothing's adjacency graph."""
    where = {a: i for i, c in enumerate(circ) for a in c}
    adj = {i: set() for i in range(len(circ))}
    for c in d.crossings:
        a, b = where[c.slots[0].arc], where[c.slots[2].arc]
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    col = {}
    for s in range(len(circ)):
        if s in col:
            continue
        col[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in col:
                    col[y] = 1 - col[x]
                    stack.append(y)
    return [col[i] for i in range(len(circ))]


def _class_grading(lee: ClassicalOracle, vec: dict) -> int:
    """Largest s with vec in F_s + boundaries, by dense rank tests over Q."""
    vec = {k: v for k, v in vec.items() if v}
    i = lee.degree(lee.gens[next(iter(vec))])
    here = [x for x, g in enumerate(lee.gens) if lee.degree(g) == i]
    below = [x for x, g in enumerate(lee.gens) if lee.degree(g) == i - 1]
    pos = {x: r for r, x in enumerate(here)}
    bounds = []
    for x in below:
        col = [0] * len(here)
        for y, v in lee.differential(lee.gens[x]).items():
            col[pos[y]] = v
        bounds.append(col)
    target = [0] * len(here)
    for k, v in vec.items():
        target[pos[k]] = v
    qs = sorted({lee.q(lee.gens[x]) for x in here}, reverse=True)
    for s in qs:
        span = bounds + [[1 if r == pos[x] else 0 for r in range(len(here))]
                         for x in here if lee.q(lee.gens[x]) >= s]
        if _rank_q(_t(span)) == _rank_q(_t(span + [target])):
            return s
    raise ValueError("vector is not in the complex")


def _t(cols):
    if not cols:
        return []
    return [list(r) for r in zip(*cols)]
