"""Text, JSON and CSV output for homology grids and spectral pages."""
from __future__ import annotations

import csv
import io
import json

from .exactalg import HomologySummary, SpectralSequence

DOT = "●"
HOLLOW = "○"  # a generator in bidegree (0, 0)
EMPTY = "."
MAX_DOTS = 4


def _cell_text(i: int, j: int, free: int, torsion: tuple) -> str:
    if free <= MAX_DOTS:
        glyphs = DOT * free
        if free and (i, j) == (0, 0):
            glyphs = HOLLOW + glyphs[1:]
    else:
        glyphs = (HOLLOW if (i, j) == (0, 0) else DOT) + f"x{free}"
    tors = "".join(f"t{t}" for t in torsion)
    return (glyphs + tors) or EMPTY


def grid_text(cells: dict, row_label: str = "j") -> str:
    """Rows run down in the second grading, columns across in i."""
    live = {k: v for k, v in cells.items() if v[0] or v[1]}
    if not live:
        return "(empty)"
    i_lo, i_hi = min(k[0] for k in live), max(k[0] for k in live)
    j_lo, j_hi = min(k[1] for k in live), max(k[1] for k in live)
    cols = list(range(i_lo, i_hi + 1))
    rows = list(range(j_hi, j_lo - 1, -1))
    body = {(i, j): _cell_text(i, j, *live.get((i, j), (0, ()))) for i in cols for j in rows}
    w = max(max(len(s) for s in body.values()), max(len(str(i)) for i in cols))
    lw = max(len(f"{row_label}={j}") for j in rows)
    out = [" " * lw + " | " + " ".join(str(i).rjust(w) for i in cols) + "   <- i"]
    out.append("-" * len(out[0]))
    for j in rows:
        out.append(f"{row_label}={j}".rjust(lw) + " | " + " ".join(body[(i, j)].rjust(w) for i in cols))
    return "\n".join(out)


def homology_text(h: HomologySummary, title: str = "") -> str:
    label = "j" if h.grading == "quantum" else "s"
    head = f"{title} over {h.ring.value}, rank {h.total_rank}" if title else f"rank {h.total_rank}"
    if h.all_torsion():
        head += f", torsion {sorted(h.all_torsion())}"
    return head + "\n" + grid_text(h.cells, label)


def homology_json(h: HomologySummary, **extra) -> dict:
    out = {"ring": h.ring.value, "grading": h.grading, "total_rank": h.total_rank, "cells": h.rows()}
    out.update(extra)
    return out


def homology_csv(h: HomologySummary) -> str:
    label = "j" if h.grading == "quantum" else "s"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", label, "free_rank", "torsion"])
    for row in h.rows():
        w.writerow([row["i"], row["j"], row["free_rank"], " ".join(map(str, row["torsion"]))])
    return buf.getvalue()


def spectral_text(ss: SpectralSequence) -> str:
    parts = [f"nontrivial pages: {ss.nontrivial_page_count}, stabilises at E_{ss.stabilization}"]
    for p in ss.pages:
        parts.append(f"E_{p.r}: total rank {p.total}")
        parts.append(grid_text({k: (n, ()) for k, n in p.ranks.items()}))
        moving = {k: n for k, n in p.differential.items() if n}
        if moving:
            shift = (p.r - 1) * ss.step
            parts.append("d_{}: ".format(p.r) + ", ".join(
                f"({i},{j})->({i + 1},{j + shift}) rank {n}" for (i, j), n in sorted(moving.items())))
    return "\n".join(parts)


def spectral_csv(ss: SpectralSequence) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "i", "j", "rank", "d_rank"])
    for p in ss.pages:
        for (i, j), n in sorted(p.ranks.items()):
            if n:
                w.writerow([p.r, i, j, n, p.differential.get((i, j), 0)])
    return buf.getvalue()


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
