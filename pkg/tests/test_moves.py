from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from doubledkh import bundled
from doubledkh.diagram import canonical_labels, validate
from doubledkh.moves import (MoveError, apply_move, apply_script, candidate_moves, parse_move, r1_add, r1_remove,
                             r2_add, r2_candidates, r2_sites, r2_remove, r4_add, r4_candidates, r4_sites, r5,
                             r5_sites, random_script)
from doubledkh.theories import lee_homology
from doubledkh.verify import invariance_signature


def test_r1_round_trip():
    d = bundled.load("trefoil_right")
    a = r1_add(d, "b1")
    assert a.n == 4 and validate(a) == []
    new = [c.id for c in a.crossings if c.id not in {x.id for x in d.crossings}]
    assert r1_remove(a, new[0]) == d


def test_r1_on_free_circle():
    a = r1_add(bundled.load("unknot"), None)
    assert a.n == 1 and a.free_unknots == 0
    with pytest.raises(MoveError):
        r1_add(a, None)


def test_r2_round_trip():
    d = bundled.load("trefoil_right")
    a = r2_add(d, *r2_candidates(d)[0])
    assert a.n == 5
    new = [s for s in r2_sites(a) if not set(s) & {c.id for c in d.crossings}]
    assert canonical_labels(r2_remove(a, *new[0])) == canonical_labels(d)


def test_r4_and_r5_keep_invariants():
    d = bundled.load("knot_2_1")
    sig = invariance_signature(d)
    a = r4_add(d, *r4_candidates(d)[0])
    # the strand now crosses the boundary at a point and at its antipode
    assert a.k == d.k + 2 and r4_sites(a)
    assert invariance_signature(a) == sig
    for gap in r5_sites(d):
        assert invariance_signature(r5(d, gap)) == sig


def test_no_r4_without_boundary():
    assert r4_candidates(bundled.load("trefoil_right")) == []
    assert r5_sites(bundled.load("essential_circle")) == []


def test_move_text_round_trip():
    d = bundled.load("knot_2_1")
    script, out = random_script(d, seed=7, length=10)
    again = [parse_move(str(m)) for m in script.moves]
    assert again == list(script.moves)
    assert apply_script(d, script) == out


def test_reproducible():
    d = bundled.load("knot_4_1")
    assert random_script(d, seed=11, length=12) == random_script(d, seed=11, length=12)
    assert random_script(d, seed=11, length=12)[0] != random_script(d, seed=12, length=12)[0]


def test_bad_moves():
    d = bundled.load("trefoil_right")
    with pytest.raises(MoveError):
        r1_add(d, "nope")
    with pytest.raises((MoveError, ValueError)):
        apply_move(d, parse_move("R1- X1"))
    for text in ("R9+ 1", "R1+ b1", "", "R3+ 1"):
        with pytest.raises(MoveError):
            parse_move(text)


def test_scripts_use_every_move_type():
    seen = Counter()
    for seed in range(40):
        start = bundled.load(bundled.NAMES[seed % len(bundled.NAMES)])
        script, _ = random_script(start, seed=seed, length=12)
        seen.update(m.tag for m in script.moves)
    assert set(seen) == {"R1", "R2", "R3", "R4", "R5"}


def test_candidate_limits():
    d = bundled.load("knot_4_1")
    assert all(not k.endswith("+") for k in candidate_moves(d, max_crossings=4, max_boundary=2)
               if k in ("R1+", "R2+", "R4+"))


def test_degenerate_link_stays_degenerate():
    d = bundled.load("degenerate_link")
    for seed in range(10):
        _, out = random_script(d, seed=seed, length=8, max_crossings=6)
        assert lee_homology(out).total_rank == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_moves_keep_validity_and_invariants(seed):
    start = bundled.load(bundled.NAMES[seed % len(bundled.NAMES)])
    script, out = random_script(start, seed=seed, length=6, max_crossings=7)
    assert validate(out) == []
    assert invariance_signature(out) == invariance_signature(start)
