from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from doubledkh import bundled, theories
from doubledkh.colouring import ORANGE, PINK, TwoColouring, enumerate_two_colourings, odd_writhe
from doubledkh.cube import SignedEdge
from doubledkh.diagram import disjoint_union, parse_diagram
from doubledkh.exactalg import homology
from doubledkh.moves import r1_add, random_script
from doubledkh.theories import (TheoryRingMismatch, apply_edge, bn_homology, build_complex, canonical_generator,
                                check_ring, classical_khovanov, classical_rasmussen, comultiplication, dkh_homology,
                                eta, lee_homology, multiplication, rasmussen, reduced_complex, s_support)
from doubledkh.oracles import classical_rasmussen_oracle
from doubledkh.verify import random_diagram

U, L, PLUS, MINUS = 0, 1, 0, 1


def live(h):
    return {k: v for k, v in h.cells.items() if v[0] or v[1]}


def ranks(h):
    return {k: v[0] for k, v in h.cells.items() if v[0]}


def scripted(seed, length=5, max_crossings=6):
    start = bundled.load(bundled.NAMES[seed % len(bundled.NAMES)])
    return random_script(start, seed=seed, length=length, max_crossings=max_crossings)[1]


def test_eta_tables():
    assert eta("dkh", U, PLUS) == [(L, PLUS, 1)]
    assert eta("dkh", L, PLUS) == [(U, MINUS, 2)]
    assert eta("dkh", U, MINUS) == [(L, MINUS, 1)]
    assert eta("dkh", L, MINUS) == []
    assert eta("lee", L, MINUS) == [(U, PLUS, 2)]
    assert eta("bn", L, PLUS) == [(U, PLUS, 1)]


def test_mixed_product_is_minus():
    for t in ("dkh", "lee", "bn"):
        assert multiplication(t, PLUS, MINUS) == [(MINUS, 1)]
        assert multiplication(t, MINUS, PLUS) == [(MINUS, 1)]


def test_perturbed_products():
    assert multiplication("dkh", MINUS, MINUS) == []
    assert multiplication("lee", MINUS, MINUS) == [(PLUS, 1)]
    assert multiplication("bn", MINUS, MINUS) == [(MINUS, 1)]
    assert sorted(comultiplication("bn", PLUS)) == [((0, 0), 1), ((0, 1), 1), ((1, 0), 1)]
    assert sorted(comultiplication("lee", MINUS)) == [((0, 0), 1), ((1, 1), 1)]


def test_eta_on_two_circles():
    # sheet u, labels (+, +), eta on the second circle
    e = SignedEdge(0, 1, 0, "eta", (1,), (1,), ((0, 0),), 1)
    assert apply_edge(e, "dkh", 0b00, U) == [(0b00, L, 1)]
    # the sign of the edge multiplies the block
    e = SignedEdge(0, 1, 0, "eta", (1,), (1,), ((0, 0),), -1)
    assert apply_edge(e, "dkh", 0b01, L) == [(0b11, U, -2)]


def test_bn_comultiplication_needs_the_square_term(monkeypatch):
    # without v+ (x) v+ in Delta(v+) the Bar-Natan differential does not square to zero
    table = {k: dict(v) for k, v in theories._COMULT.items()}
    table[theories.TheoryTag.BN] = {0: [((0, 1), 1), ((1, 0), 1)], 1: [((1, 1), 1)]}
    monkeypatch.setattr(theories, "_COMULT", table)
    failures = 0
    for seed in range(20):
        c = build_complex(random_diagram(seed), "bn", check=False)
        failures += any(c.apply(c.diff[x]) for x in range(c.size))
    assert failures


def test_ring_checks():
    assert check_ring("dkh") == (theories.TheoryTag.DKH, theories.RingTag.Z)
    with pytest.raises(TheoryRingMismatch):
        check_ring("lee", "F2")
    with pytest.raises(TheoryRingMismatch):
        check_ring("lee", "Z")
    with pytest.raises(TheoryRingMismatch):
        check_ring("bn", "Q")
    with pytest.raises(ValueError):
        check_ring("jones")


def test_unknot_complex():
    c = build_complex(bundled.load("unknot"), "dkh")
    assert c.size == 4 and not any(c.diff)
    assert sorted(c.levels) == [-2, -1, 0, 1]
    c = build_complex(bundled.load("essential_circle"), "dkh")
    assert c.size == 4 and not any(c.diff)


def test_kink_matches_unknot():
    k = r1_add(bundled.load("unknot"), None)
    assert build_complex(k, "dkh").size == 12
    assert live(dkh_homology(k)) == live(dkh_homology(bundled.load("unknot")))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["dkh", "lee", "bn"]))
def test_d_squared(seed, theory):
    c = build_complex(scripted(seed), theory, check=False)
    for x in range(c.size):
        assert not c.apply(c.diff[x])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_gradings(seed):
    d = scripted(seed)
    c = build_complex(d, "dkh")
    for x in range(c.size):
        for y in c.diff[x]:
            assert c.degrees[y] == c.degrees[x] + 1
            assert c.levels[y] == c.levels[x]
    for t in ("lee", "bn"):
        c = build_complex(d, t)
        for x in range(c.size):
            for y in c.diff[x]:
                gap = c.levels[y] - c.levels[x]
                assert gap >= 0 and gap % c.step == 0


def test_reduced_unknot():
    u = bundled.load("unknot")
    assert live(dkh_homology(u, reduced=True)) == {(0, -1): (1, ()), (0, -2): (1, ())}
    assert reduced_complex(u).size == 2
    with pytest.raises(ValueError):
        reduced_complex(u, "lee")
    with pytest.raises(ValueError):
        reduced_complex(parse_diagram("unknot 1"))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["dkh", "bn"]))
def test_reduced_is_subcomplex(seed, theory):
    d = scripted(seed)
    if d.mark is None:
        return
    c = reduced_complex(d, theory)
    full = build_complex(d, theory)
    assert 2 * c.size == full.size


def test_dkh_unknot_over_q():
    assert live(dkh_homology(bundled.load("unknot"), "Q")) == {(0, j): (1, ()) for j in (1, 0, -1, -2)}


def test_knot_2_1_torsion():
    h = dkh_homology(bundled.load("knot_2_1"))
    assert 2 in h.all_torsion()
    assert h.torsion(0, -3) == (2,)


def test_union_with_free_unknot():
    for name in ("trefoil_right", "knot_2_1", "hopf_positive"):
        d = bundled.load(name)
        want = {}
        for (i, j), r in ranks(dkh_homology(d, "Q")).items():
            for q in (1, -1):
                want[(i, j + q)] = want.get((i, j + q), 0) + r
        assert ranks(dkh_homology(disjoint_union(d, bundled.load("unknot")), "Q")) == want


def test_lee_ranks():
    assert lee_homology(bundled.load("unknot")).total_rank == 4
    h = lee_homology(bundled.load("knot_2_1"))
    assert h.total_rank == 4 and h.i_support() == {-2}
    assert lee_homology(bundled.load("degenerate_link")).total_rank == 0


def test_bn_ranks():
    assert bn_homology(bundled.load("unknot")).total_rank == 4
    assert bn_homology(bundled.load("degenerate_link")).total_rank == 0
    for d in bundled.knots().values():
        h = bn_homology(d)
        assert h.total_rank == 4
        assert h.i_support() == {odd_writhe(d, c) for c in enumerate_two_colourings(d)}


def test_unknot_canonical_generators():
    u = bundled.load("unknot")
    orange, pink = TwoColouring((), (ORANGE,)), TwoColouring((), (PINK,))
    r = canonical_generator(u, orange, U, "lee")
    assert r.chain == {(0, PLUS, U): Fraction(1, 2), (0, MINUS, U): Fraction(1, 2)}
    b = canonical_generator(u, pink, U, "bn")
    assert b.chain == {(0, MINUS, U): 1}


def test_knot_2_1_canonical_generators():
    d = bundled.load("knot_2_1")
    for t in ("lee", "bn"):
        c = build_complex(d, t)
        for col in enumerate_two_colourings(d):
            for sheet in (U, L):
                g = canonical_generator(d, col, sheet, t)
                assert g.degree == -2
                assert not c.apply(g.vector(c))


def test_rasmussen():
    assert rasmussen(bundled.load("unknot")) == 0
    assert rasmussen(bundled.load("knot_2_1")) == -5
    assert rasmussen(bundled.load("knot_4_1")) == -11
    for name, s in (("trefoil_right", 2), ("trefoil_left", -2)):
        d = bundled.load(name)
        assert rasmussen(d) == s == classical_rasmussen(d) == classical_rasmussen_oracle(d)
    with pytest.raises(ValueError):
        rasmussen(bundled.load("degenerate_link"))


def test_s_support_shape():
    assert s_support(lee_homology(bundled.load("knot_2_1"))) == [-4, -5, -6, -7]


def test_classical_khovanov():
    assert live(classical_khovanov(bundled.load("unknot"))) == {(0, 1): (1, ()), (0, -1): (1, ())}
    assert live(classical_khovanov(bundled.load("trefoil_right"))) == {
        (0, 1): (1, ()), (0, 3): (1, ()), (2, 5): (1, ()), (3, 9): (1, ()), (3, 7): (0, (2,))}
    assert live(classical_khovanov(bundled.load("hopf_positive"))) == {
        (0, 0): (1, ()), (0, 2): (1, ()), (2, 4): (1, ()), (2, 6): (1, ())}
    with pytest.raises(ValueError):
        classical_khovanov(bundled.load("knot_2_1"))


def test_local_splits_as_two_copies():
    for name, d in bundled.local_diagrams().items():
        cl = live(classical_khovanov(d))
        want = {}
        for (i, j), (f, t) in cl.items():
            for jj in (j, j - 1):
                g, s = want.get((i, jj), (0, ()))
                want[(i, jj)] = (g + f, tuple(sorted(s + t)))
        got = {k: (f, tuple(sorted(t))) for k, (f, t) in live(dkh_homology(d)).items()}
        assert got == want, name


def test_graded_homology_over_all_rings():
    d = bundled.load("trefoil_right")
    assert homology(build_complex(d, "dkh", "F2")).total_rank >= homology(build_complex(d, "dkh", "Q")).total_rank
