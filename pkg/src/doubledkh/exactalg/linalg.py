"""Incremental row echelon bases over Q and F2 for sparse vectors {coord: value}."""
from __future__ import annotations

from fractions import Fraction

from .ring import RingTag


def _axpy(ring, x: dict, a, y: dict) -> dict:
    """x + a*y, dropping zeros."""
    out = dict(x)
    for k, v in y.items():
        w = out.get(k, 0) + a * v
        if ring is RingTag.F2:
            w &= 1
        elif isinstance(w, Fraction) and w.denominator == 1:
            w = int(w)
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


class EchelonBasis:
    """Span of added vectors over a field, with optional combination tracking."""

    def __init__(self, ring: RingTag, track: bool = False):
        if not RingTag.parse(ring).is_field:
            raise ValueError("echelon bases need a field")
        self.ring = RingTag.parse(ring)
        self.track = track
        self.rows: dict = {}  # pivot -> (vector normalised to pivot 1, combination)

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict, comb: dict | None = None):
        """Eliminate pivot coordinates from vec, smallest first."""
        vec = dict(vec)
        comb = dict(comb or {})
        while True:
            hits = [k for k in vec if k in self.rows]
            if not hits:
                return vec, comb
            piv = min(hits)
            row, rcomb = self.rows[piv]
            a = -vec[piv]
            vec = _axpy(self.ring, vec, a, row)
            if self.track:
                comb = _axpy(self.ring, comb, a, rcomb)

    def add(self, vec: dict, comb: dict | None = None):
        """Add a vector; return (residual, combination) with residual empty if dependent."""
        vec, comb = self.reduce(vec, comb)
        if vec:
            piv = min(vec)
            inv = 1 if self.ring is RingTag.F2 else Fraction(1) / vec[piv]
            vec = _axpy(self.ring, {}, inv, vec)
            comb = _axpy(self.ring, {}, inv, comb) if self.track else comb
            self.rows[piv] = (vec, comb)
        return vec, comb

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)[0]


def rank(vectors, ring) -> int:
    b = EchelonBasis(ring)
    for v in vectors:
        b.add(v)
    return len(b)


def kernel(columns: list[dict], ring) -> list[dict]:
    """Basis of {c : sum c_k columns[k] = 0}, as dicts over column positions."""
    b = EchelonBasis(ring, track=True)
    out = []
    for k, col in enumerate(columns):
        res, comb = b.add(col, {k: 1})
        if not res:
            out.append(comb)
    return out
