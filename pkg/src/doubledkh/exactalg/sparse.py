from __future__ import annotations

from dataclasses import dataclass, field

from .ring import RingTag, normalize


@dataclass
class SparseMatrix:
    """Matrix stored as {(row, col): value} with no explicit zeros."""

    rows: int
    cols: int
    entries: dict = field(default_factory=dict)
    ring: RingTag = RingTag.Z

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            v = normalize(self.ring, v)
            if v:
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_dense(cls, rows, ring: RingTag = RingTag.Z) -> "SparseMatrix":
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        ent = {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v}
        return cls(nr, nc, ent, ring)

    @classmethod
    def identity(cls, n: int, ring: RingTag = RingTag.Z) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)}, ring)

    def to_dense(self) -> list[list]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def __getitem__(self, rc):
        return self.entries.get(rc, 0)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: dict[int, dict] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, {})[c] = v
        acc: dict = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, {}).items():
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return SparseMatrix(self.rows, other.cols, acc, self.ring)

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}, self.ring)
