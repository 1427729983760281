"""Command-line interface: ``doubledkh <command> ...``.

Exit codes: 0 success, 1 a check or resource failure, 2 a usage error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bundled, render
from .cobordism import (InvalidEvent, MovieSyntaxError, UnsupportedEvent, compose_movie, euler_characteristic,
                        genus, movie_two_colourable, parse_movie)
from .colouring import enumerate_two_colourings, odd_writhe
from .cube import CubeTooLarge
from .diagram import (DiagramSyntaxError, DiagramValidationError, components, degenerate_components, is_knot,
                      parse_diagram, serialize, writhe)
from .exactalg import InvariantFailure, spectral_pages
from .moves import random_script
from .theories import (SSupportError, TheoryRingMismatch, TheoryTag, bn_homology, build_complex, lee_homology,
                       rasmussen_from, s_support, theory_homology)

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load_diagram(source: str):
    """A path to a diagram file, or the name of a bundled diagram."""
    p = Path(source)
    if p.is_file():
        return parse_diagram(p.read_text())
    name = source.removeprefix("bundled:")
    if name in bundled.NAMES or name in bundled.ALIASES:
        return bundled.load(name)
    raise bundled.MissingDiagram(f"{source!r} is neither a file nor a bundled diagram")


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_homology(a) -> int:
    d = _load_diagram(a.diagram)
    h = theory_homology(d, a.theory, a.ring, reduced=a.reduced)
    t = TheoryTag.parse(a.theory)
    if a.format == "json":
        _emit(render.dumps(render.homology_json(h, theory=t.value, reduced=a.reduced)))
    elif a.format == "csv":
        _emit(render.homology_csv(h))
    else:
        _emit(render.homology_text(h, t.value + (" reduced" if a.reduced else "")))
    return OK


def invariants_report(d) -> dict:
    cols = enumerate_two_colourings(d)
    lee, bn = lee_homology(d), bn_homology(d)
    report = {
        "components": len(components(d)),
        "writhe": writhe(d),
        "degenerate_components": sorted(degenerate_components(d)),
        "two_colourings": len(cols),
        "odd_writhes": sorted({odd_writhe(d, c) for c in cols}),
        "s_support_lee": s_support(lee),
        "s_support_bn": s_support(bn),
        "ds_Q": None,
        "ds_F2": None,
    }
    if is_knot(d):
        for key, h in (("ds_Q", lee), ("ds_F2", bn)):
            try:
                report[key] = rasmussen_from(h)
            except SSupportError:
                report[key] = None
    return report


def cmd_invariants(a) -> int:
    rep = invariants_report(_load_diagram(a.diagram))
    if a.format == "json":
        _emit(render.dumps(rep))
    else:
        width = max(len(k) for k in rep)
        _emit("\n".join(f"{k.ljust(width)}  {'undefined' if v is None else v}" for k, v in rep.items()))
    return OK


def cmd_ss(a) -> int:
    t = TheoryTag.parse(a.theory)
    if t is TheoryTag.DKH:
        raise UsageError("spectral sequences need --theory lee or bn")
    ss = spectral_pages(build_complex(_load_diagram(a.diagram), t, a.ring))
    if a.format == "json":
        _emit(render.dumps(ss.to_json()))
    elif a.format == "csv":
        _emit(render.spectral_csv(ss))
    else:
        _emit(render.spectral_text(ss))
    return OK


def cmd_moves(a) -> int:
    d = _load_diagram(a.diagram)
    script, out = random_script(d, seed=a.seed, length=a.count)
    if a.format == "json":
        _emit(render.dumps({"seed": a.seed, "moves": [str(m) for m in script.moves], "diagram": serialize(out)}))
    else:
        _emit("# moves: " + (", ".join(str(m) for m in script.moves) or "none"))
        _emit(serialize(out))
    return OK


def cmd_movie(a) -> int:
    m = parse_movie(Path(a.movie).read_text() if Path(a.movie).is_file() else bundled.movie_text(a.movie))
    g = genus(m)
    rep = {
        "events": [str(e) for e in m.events],
        "euler_characteristic": euler_characteristic(m),
        "genus": g,
        "two_colourable": movie_two_colourable(m),
    }
    if a.theory:
        f = compose_movie(m, a.theory, a.ring)
        rep["chain_map"] = f.is_chain_map()
        rep["degree_bounds"] = f.degree_bounds()
    if a.format == "json":
        _emit(render.dumps(rep))
    else:
        width = max(len(k) for k in rep)
        _emit("\n".join(f"{k.ljust(width)}  {'undefined' if v is None else v}" for k, v in rep.items()))
    return OK


def cmd_verify(a) -> int:
    from . import verify
    select = None
    if a.only:
        try:
            select = [int(x) for x in a.only.split(",")]
        except ValueError:
            raise UsageError("--only takes a comma separated list of criterion numbers") from None
        if any(n not in verify.CRITERIA for n in select):
            raise UsageError(f"criteria are numbered 1 to {len(verify.CRITERIA)}")
    # fail early on a missing bundled diagram
    for name in bundled.NAMES:
        bundled.text(name)
    if a.inject_fault == "eta":
        with verify.mutated_eta():
            results = verify.run_all(select, a.threads, echo=_emit)
    else:
        results = verify.run_all(select, a.threads, echo=_emit)
    passed = sum(r.passed for r in results)
    _emit(f"{passed}/{len(results)} checks passed")
    return OK if passed == len(results) else FAILED


def cmd_list(a) -> int:
    for name in bundled.NAMES:
        d = bundled.load(name)
        _emit(f"{name:18s} crossings {d.n:2d}  boundary pairs {d.k}  components {len(components(d))}")
    for name in bundled.MOVIES:
        _emit(f"{name} (movie)")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="doubledkh", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, theory=True, fmt=("text", "json", "csv"), default_theory="dkh"):
        if theory:
            sp.add_argument("--theory", default=default_theory, help="dkh, lee or bn")
            sp.add_argument("--ring", default=None, help="Z, Q or F2 (default depends on the theory)")
        sp.add_argument("--format", choices=fmt, default="text")
        sp.add_argument("--threads", type=int, default=1)

    h = sub.add_parser("homology", help="homology grid of a diagram")
    h.add_argument("diagram", help="diagram file or bundled name")
    h.add_argument("--reduced", action="store_true")
    common(h)
    h.set_defaults(fn=cmd_homology)

    i = sub.add_parser("invariants", help="colourings, odd writhes, s-supports and ds")
    i.add_argument("diagram")
    common(i, theory=False, fmt=("text", "json"))
    i.set_defaults(fn=cmd_invariants)

    s = sub.add_parser("ss", help="spectral sequence pages")
    s.add_argument("diagram")
    common(s, default_theory="lee")
    s.set_defaults(fn=cmd_ss)

    m = sub.add_parser("moves", help="apply a seeded random move script")
    m.add_argument("diagram")
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--count", type=int, default=10)
    common(m, theory=False, fmt=("text", "json"))
    m.set_defaults(fn=cmd_moves)

    mv = sub.add_parser("movie", help="Euler characteristic, genus and colourability of a movie")
    mv.add_argument("movie", help="movie file or bundled movie name")
    mv.add_argument("--theory", default=None, help="also compose the chain map in this theory")
    mv.add_argument("--ring", default=None)
    mv.add_argument("--format", choices=("text", "json"), default="text")
    mv.set_defaults(fn=cmd_movie)

    v = sub.add_parser("verify", help="run the acceptance suite")
    v.add_argument("--only", default=None, help="comma separated criterion numbers")
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--inject-fault", choices=("eta",), default=None, help=argparse.SUPPRESS)
    v.set_defaults(fn=cmd_verify)

    ls = sub.add_parser("list", help="bundled diagrams and movies")
    ls.set_defaults(fn=cmd_list)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if getattr(a, "threads", 1) < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return USAGE
    try:
        return a.fn(a)
    except (UsageError, TheoryRingMismatch, DiagramSyntaxError, DiagramValidationError, MovieSyntaxError,
            UnsupportedEvent, InvalidEvent, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (bundled.MissingDiagram, CubeTooLarge, InvariantFailure, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
