"""The acceptance suite, runnable from the CLI and from pytest."""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass

from . import bundled, theories
from .cobordism import (Movie, candidate_events, canonical_images, compose_movie,
                        euler_characteristic, event_map, genus, movie_two_colourable)
from .colouring import enumerate_two_colourings, odd_writhe
from .diagram import components, degenerate_components, is_knot
from .exactalg import EchelonBasis, InvariantFailure, RingTag, filtration_grading, homology, spectral_pages
from .exactalg.snf import smith_normal_form_dense
from .moves import random_script
from .oracles import (brute_class_grading, brute_filtered_homology, classical_khovanov_oracle,
                      classical_rasmussen_oracle, naive_invariant_factors, random_filtered_complex)
from .theories import (TheoryTag, bn_homology, build_complex, canonical_generator, dkh_homology,
                       lee_homology, rasmussen, rasmussen_from, s_support)

D_SQUARED_BUDGET = 120.0
INVARIANCE_BUDGET = 600.0


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d} {self.title}: {self.detail} ({self.seconds:.1f}s)"


def _map(fn, items, threads: int):
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


# -- 1: d^2 = 0 ---------------------------------------------------------------

def random_diagram(seed: int, max_crossings: int = 8):
    """A seeded diagram: a bundled start scrambled by up to 12 random moves."""
    rng = random.Random(seed)
    start = bundled.load(bundled.NAMES[seed % len(bundled.NAMES)])
    _, d = random_script(start, seed=seed, length=rng.randint(1, 12), max_crossings=max_crossings)
    return d


def _d_squared_one(d) -> str:
    for t in TheoryTag:
        try:
            build_complex(d, t, check=True)
        except InvariantFailure as exc:
            return f"{t.value}: {exc}"
    return ""


def _d_squared_seed(seed: int) -> str:
    d = random_diagram(seed)
    if d.n > 8:
        return f"seed {seed}: {d.n} crossings"
    err = _d_squared_one(d)
    return f"seed {seed}: {err}" if err else ""


def check_d_squared(count: int = 200, threads: int = 1) -> tuple:
    t0 = time.perf_counter()
    errs = [f"{n}: {e}" for n, d in bundled.table().items() if (e := _d_squared_one(d))]
    errs += [e for e in _map(_d_squared_seed, range(count), threads) if e]
    dt = time.perf_counter() - t0
    if errs:
        return False, f"{len(errs)} failures, first: {errs[0]}"
    if dt > D_SQUARED_BUDGET:
        return False, f"took {dt:.1f}s, over the {D_SQUARED_BUDGET:.0f}s budget"
    return True, f"{len(bundled.NAMES)} bundled + {count} random diagrams, three theories each"


# -- 2, 3, 4: ranks, i-support, s-support ----------------------------------------

def check_ranks() -> tuple:
    bad = []
    for name, d in bundled.table().items():
        lee, bn = lee_homology(d).total_rank, bn_homology(d).total_rank
        ncomp = len(components(d))
        if degenerate_components(d):
            want = 0
        else:
            want = 2 ** (ncomp + 1)
        if lee != want or bn != want:
            bad.append(f"{name}: Lee {lee}, BN {bn}, expected {want}")
    return not bad, "; ".join(bad) or "knots 4, degenerate link 0, other links 2^(components+1)"


def check_i_support() -> tuple:
    bad = []
    for name, d in bundled.table().items():
        want = {odd_writhe(d, c) for c in enumerate_two_colourings(d)}
        for label, h in (("Lee", lee_homology(d)), ("BN", bn_homology(d))):
            if h.i_support() != want:
                bad.append(f"{name} {label}: {sorted(h.i_support())} vs {sorted(want)}")
    return not bad, "; ".join(bad) or "matches the odd writhes of all 2-colourings"


def check_s_support_shape() -> tuple:
    bad = []
    for name, d in bundled.knots().items():
        for label, h in (("Lee", lee_homology(d)), ("BN", bn_homology(d))):
            sup = s_support(h)
            u = sup[0] - 1 if sup else None
            if sup != [u + 1, u, u - 1, u - 2]:
                bad.append(f"{name} {label}: {sup}")
    return not bad, "; ".join(bad) or f"{len(bundled.knots())} knots have s-support u+1, u, u-1, u-2"


# -- 5, 6: the 2_1 and 4_1 pins ---------------------------------------------------

def check_knot_2_1() -> tuple:
    d = bundled.load("knot_2_1")
    ds = rasmussen(d, RingTag.Q)
    support = lee_homology(d).i_support()
    tors = dkh_homology(d, RingTag.Z).all_torsion()
    ok = ds == -5 and support == {-2} and 2 in tors
    return ok, f"ds_Q = {ds}, Lee i-support {sorted(support)}, DKh(Z) torsion {sorted(tors)}"


def check_knot_4_1_pages() -> tuple:
    ss = spectral_pages(build_complex(bundled.load("knot_4_1"), TheoryTag.BN))
    n = ss.nontrivial_page_count
    return n == 2, f"nontrivial_page_count = {n}"


# -- 7: E_2 and E_infinity -------------------------------------------------------

def check_pages_vs_homology() -> tuple:
    bad = []
    for name, d in bundled.table().items():
        for t, r in ((TheoryTag.LEE, RingTag.Q), (TheoryTag.BN, RingTag.F2)):
            ss = spectral_pages(build_complex(d, t, r))
            e2 = {k: n for k, n in ss.page(2).ranks.items() if n}
            dkh = {k: f for k, (f, _) in dkh_homology(d, r).grid().items() if f}
            if e2 != dkh:
                bad.append(f"{name} {t.value}: E_2 differs from DKh over {r.value}")
            einf: dict = {}
            for (i, _), n in ss.e_infinity.ranks.items():
                einf[i] = einf.get(i, 0) + n
            einf = {i: n for i, n in einf.items() if n}
            h = homology(build_complex(d, t, r)).by_degree()
            if einf != h:
                bad.append(f"{name} {t.value}: E_inf {einf} vs H {h}")
    return not bad, "; ".join(bad) or "all bundled diagrams, Lee over Q and BN over F2"


# -- 8: local diagrams -------------------------------------------------------------

def doubled_from_classical(cl: dict) -> dict:
    """classical + classical{-1}: a class at (i, j) also appears at (i, j - 1)."""
    out: dict = {}
    for (i, j), (f, t) in cl.items():
        for jj in (j, j - 1):
            f0, t0 = out.get((i, jj), (0, ()))
            out[(i, jj)] = (f0 + f, tuple(sorted(t0 + tuple(t))))
    return out


def check_local() -> tuple:
    bad = []
    count = 0
    for name, d in bundled.local_diagrams().items():
        if d.n > 7:
            continue
        count += 1
        want = doubled_from_classical(classical_khovanov_oracle(d, "Z"))
        got = {k: (f, tuple(sorted(t))) for k, (f, t) in dkh_homology(d, RingTag.Z).grid().items()}
        if got != want:
            bad.append(f"{name}: DKh grid is not two shifted classical copies")
        if name.startswith("trefoil"):
            s = classical_rasmussen_oracle(d)
            for r in (RingTag.Q, RingTag.F2):
                ds = rasmussen(d, r)
                if ds != s:
                    bad.append(f"{name}: ds_{r.value} = {ds}, classical s = {s}")
    return not bad, "; ".join(bad) or f"{count} local diagrams; trefoil ds equal classical s"


# -- 9: invariance ----------------------------------------------------------------

def invariance_signature(d) -> tuple:
    dkh = dkh_homology(d, RingTag.Z)
    lee, bn = lee_homology(d), bn_homology(d)
    ds = (rasmussen_from(lee), rasmussen_from(bn)) if is_knot(d) else None
    return (dkh.grid(), lee.grid(), bn.grid(), tuple(s_support(lee)), tuple(s_support(bn)), ds)


def _invariance_job(job) -> str:
    name, seed, length = job
    d0 = bundled.load(name)
    ref = invariance_signature(d0)
    script, d = random_script(d0, seed=seed, length=length)
    if invariance_signature(d) != ref:
        return f"{name} seed {seed}: {script}"
    return ""


def check_invariance(scripts: int = 50, length: int = 12, threads: int = 1) -> tuple:
    t0 = time.perf_counter()
    jobs = [(name, 7919 * k + 13, length) for name in bundled.NAMES for k in range(scripts)]
    errs = [e for e in _map(_invariance_job, jobs, threads) if e]
    dt = time.perf_counter() - t0
    if errs:
        return False, f"{len(errs)} scripts changed an invariant, first: {errs[0]}"
    if dt > INVARIANCE_BUDGET:
        return False, f"took {dt:.1f}s, over the {INVARIANCE_BUDGET:.0f}s budget"
    return True, f"{len(jobs)} scripts of length {length} leave grids, torsion, s-supports and ds unchanged"


# -- 10: canonical generators ---------------------------------------------------------

def _class_rank(c, vectors) -> int:
    eb = EchelonBasis(c.ring)
    degs = {c.degrees[x] for v in vectors for x in v}
    for x in range(c.size):
        if c.degrees[x] + 1 in degs and c.diff[x]:
            eb.add(c.diff[x])
    base = len(eb)
    for v in vectors:
        eb.add(v)
    return len(eb) - base


def check_canonical() -> tuple:
    bad = []
    for name, d in bundled.table().items():
        cols = enumerate_two_colourings(d)
        if not cols:
            continue
        for t in (TheoryTag.LEE, TheoryTag.BN):
            c = build_complex(d, t, check=False)
            vecs = []
            for col in cols:
                for sheet in (0, 1):
                    g = canonical_generator(d, col, sheet, t)
                    v = g.vector(c)
                    if c.apply(v):
                        bad.append(f"{name} {t.value}: canonical chain is not a cycle")
                    if g.degree != odd_writhe(d, col):
                        bad.append(f"{name} {t.value}: degree {g.degree} vs odd writhe {odd_writhe(d, col)}")
                    vecs.append(v)
            total = homology(c).total_rank
            r = _class_rank(c, vecs)
            if r != len(vecs) or r != total:
                bad.append(f"{name} {t.value}: canonical classes span rank {r} of {total}")
    return not bad, "; ".join(bad) or "cycles in odd-writhe degrees, spanning Lee and BN homology"


# -- 11: cobordisms ---------------------------------------------------------------------

def random_event(seed: int):
    rng = random.Random(seed)
    start = bundled.load(rng.choice(bundled.NAMES))
    _, d = random_script(start, seed=seed, length=rng.randint(0, 3), max_crossings=max(start.n, 4))
    return d, rng.choice(candidate_events(d))


def _movie_degree_ok(m: Movie) -> list:
    chi = euler_characteristic(m)
    bad = []
    f = compose_movie(m, TheoryTag.DKH, RingTag.Q)
    b = f.degree_bounds()
    if b is not None and b != (chi, chi):
        bad.append(f"DKh composite has degrees {b}, chi = {chi}")
    for t in (TheoryTag.LEE, TheoryTag.BN):
        f = compose_movie(m, t)
        b = f.degree_bounds()
        if b is not None and b[0] < chi:
            bad.append(f"{t.value} composite lowers j by more than -chi: {b}")
        for col in enumerate_two_colourings(m.start):
            for sheet in (0, 1):
                v = canonical_generator(m.start, col, sheet, t).vector(f.source)
                w = f.apply(v)
                if w and f.target.apply(w) == {} and _class_rank(f.target, [w]):
                    if filtration_grading(f.target, w) < filtration_grading(f.source, v) + chi:
                        bad.append(f"{t.value}: canonical class dropped below the chi shift")
    return bad


def check_cobordisms(events: int = 50) -> tuple:
    bad = []
    for seed in range(events):
        d, e = random_event(seed)
        for t in TheoryTag:
            _, f = event_map(d, e, t)
            if not f.is_chain_map():
                bad.append(f"seed {seed} {e} {t.value}: not a chain map")
    movies = {n: bundled.load_movie(n) for n in bundled.MOVIES}
    tubes = 0
    for name, m in movies.items():
        if not name.startswith("tube"):
            continue
        tubes += 1
        if euler_characteristic(m) != 0 or not movie_two_colourable(m):
            bad.append(f"{name}: not a 2-colourable concordance")
        for t in (TheoryTag.LEE, TheoryTag.BN):
            for img in canonical_images(m, t):
                if not img.matches:
                    bad.append(f"{name} {t.value}: a canonical class is not sent to a multiple of one")
        bad += [f"{name}: {b}" for b in _movie_degree_ok(m)]
    bounded = 0
    for name, m in movies.items():
        if not is_knot(m.start) or not name.endswith("_to_unknot"):
            continue
        g = genus(m)
        if g is None or not movie_two_colourable(m):
            continue
        bounded += 1
        for r in (RingTag.Q, RingTag.F2):
            ds = rasmussen(m.start, r)
            if abs(ds) > 2 * g:
                bad.append(f"{name}: |ds_{r.value}| = {abs(ds)} exceeds 2g = {2 * g}")
    detail = f"{events} random events are chain maps; {tubes} tubes; genus bound on {bounded} colourable movies"
    return not bad, "; ".join(bad[:5]) or detail


# -- 12: oracles ----------------------------------------------------------------------

def check_oracles(matrices: int = 500, complexes: int = 200) -> tuple:
    rng = random.Random(12)
    bad = []
    for k in range(matrices):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        m = [[rng.randint(-9, 9) if rng.random() < 0.6 else 0 for _ in range(c)] for _ in range(r)]
        _, dmat, _ = smith_normal_form_dense(m)
        ours = [abs(dmat[i][i]) for i in range(min(r, c)) if dmat[i][i]]
        if ours != naive_invariant_factors(m):
            bad.append(f"matrix {k}")
    graded = 0
    for k in range(complexes):
        cx = random_filtered_complex(rng, rng.randint(1, 12))
        want = brute_filtered_homology(cx)
        got = {key: f for key, (f, _) in homology(cx).cells.items() if f}
        if got != want:
            bad.append(f"complex {k}: filtered homology")
        for x in range(cx.size):
            z = {x: 1}
            if cx.apply(z):
                continue
            try:
                want_s = brute_class_grading(cx, z)
            except ValueError:
                continue
            graded += 1
            if filtration_grading(cx, z) != want_s:
                bad.append(f"complex {k}: grading of basis cycle {x}")
    detail = f"{matrices} matrices match the gcd oracle; {complexes} complexes and {graded} class gradings match brute force"
    return not bad, "; ".join(bad[:5]) or detail


CRITERIA = {
    1: ("d^2 = 0", check_d_squared),
    2: ("Lee and BN ranks", check_ranks),
    3: ("i-support equals odd writhes", check_i_support),
    4: ("s-support shape", check_s_support_shape),
    5: ("2_1 pins", check_knot_2_1),
    6: ("4_1 Bar-Natan pages", check_knot_4_1_pages),
    7: ("E_2 and E_infinity", check_pages_vs_homology),
    8: ("local diagrams", check_local),
    9: ("move invariance", check_invariance),
    10: ("canonical generators", check_canonical),
    11: ("cobordism maps", check_cobordisms),
    12: ("SNF and filtration oracles", check_oracles),
}
THREADED = {1, 9}


def run_check(number: int, threads: int = 1) -> CheckResult:
    title, fn = CRITERIA[number]
    t0 = time.perf_counter()
    try:
        passed, detail = fn(threads=threads) if number in THREADED else fn()
    except Exception as exc:  # a crash is a failed check, reported with its message
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(number, title, passed, detail, time.perf_counter() - t0)


def run_all(select=None, threads: int = 1, echo=None) -> list:
    out = []
    for n in sorted(select or CRITERIA):
        res = run_check(n, threads)
        if echo:
            echo(res.line())
        out.append(res)
    return out


@contextmanager
def mutated_eta():
    """Fault injection: drop the u -> l term of eta on v_+ in every theory."""
    saved = {t: dict(tab) for t, tab in theories._ETA.items()}
    try:
        for t in theories._ETA:
            theories._ETA[t][(0, 0)] = []
        yield
    finally:
        for t, tab in saved.items():
            theories._ETA[t].clear()
            theories._ETA[t].update(tab)
