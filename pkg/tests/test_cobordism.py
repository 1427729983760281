import pytest
from hypothesis import given, settings, strategies as st

from doubledkh import bundled
from doubledkh.cobordism import (BIRTH, DEATH, RESOLVE, SADDLE, Event, InvalidEvent, MovieSyntaxError,
                                 UnsupportedEvent, apply_event, build_movie, candidate_events, canonical_images,
                                 compose_movie, euler_characteristic, event_degree, event_map, genus,
                                 movie_two_colourable, parse_movie, propagate_colouring, resolve_crossing,
                                 surface_components)
from doubledkh.colouring import crossing_parity, enumerate_two_colourings
from doubledkh.cube import resolve
from doubledkh.diagram import parse_diagram, validate
from doubledkh.theories import build_complex, rasmussen
from doubledkh.verify import random_event


def unknots(n):
    return parse_diagram(f"unknot {n}")


def test_birth_then_death_is_zero():
    m = build_movie(unknots(1), [Event(BIRTH), Event(DEATH, ("o2",))])
    for theory in ("dkh", "lee", "bn"):
        f = compose_movie(m, theory)
        assert f.is_chain_map() and f.is_zero()


def test_empty_movie_is_identity():
    d = bundled.load("trefoil_right")
    f = compose_movie(build_movie(d, []), "dkh")
    assert f.entries == [{x: 1} for x in range(f.source.size)]


def test_merge_of_free_circles():
    after, f = event_map(unknots(2), Event(SADDLE, ("o1", "o2")), "dkh")
    assert after.free_unknots == 1
    src, tgt = f.source, f.target
    # labels (+, -) on sheet u go to - on sheet u
    x = src.keys.index((0, 0b10, 0))
    assert f.entries[x] == {tgt.keys.index((0, 0b1, 0)): 1}
    x = src.keys.index((0, 0b11, 0))
    assert f.entries[x] == {}


def test_eta_saddle():
    d = bundled.load("knot_2_1")
    e = Event(SADDLE, ("b1", "c2l"))
    after = apply_event(d, e)
    assert len(resolve(after, 0).circles) == len(resolve(d, 0).circles)
    for theory in ("dkh", "lee", "bn"):
        _, f = event_map(d, e, theory)
        assert f.is_chain_map()
    _, f = event_map(d, e, "dkh")
    assert f.degree_bounds() == (-1, -1)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_event_maps_are_chain_maps(seed):
    d, e = random_event(seed)
    for theory, ring in (("dkh", "Z"), ("dkh", "F2"), ("lee", "Q"), ("bn", "F2")):
        after, f = event_map(d, e, theory, ring)
        assert validate(after) == []
        assert f.is_chain_map() and f.preserves_homological_degree()
        bounds = f.degree_bounds()
        if bounds is None:
            continue
        if theory == "dkh":
            assert bounds == (event_degree(e), event_degree(e))
        else:
            assert bounds[0] >= event_degree(e)


def test_rmove_and_resolve_do_not_compose():
    m = bundled.load_movie("knot_2_1_to_unknot")
    with pytest.raises(UnsupportedEvent):
        compose_movie(m, "dkh")
    m = build_movie(bundled.load("trefoil_right"), [Event(RESOLVE, ("X1",))])
    with pytest.raises(UnsupportedEvent):
        compose_movie(m, "lee")


def test_resolve_crossing():
    d = resolve_crossing(bundled.load("trefoil_right"), "X1")
    assert d.n == 2 and validate(d) == []


def test_propagation_birth_and_pinch():
    d = bundled.load("trefoil_right")
    c = enumerate_two_colourings(d)[0]
    births = propagate_colouring(d, Event(BIRTH), c)
    assert len(births) == 2 and births[0] != births[1]
    assert len(propagate_colouring(d, Event(SADDLE, ("b1", "b1")), c)) == 1


def test_propagation_arcs_needs_equal_colours():
    for name in bundled.NAMES:
        d = bundled.load(name)
        for c in enumerate_two_colourings(d):
            for e in candidate_events(d):
                if e.kind != SADDLE or len(e.args) != 2 or e.args[0] == e.args[1]:
                    continue
                if any(a.startswith("o") and a not in d.arcs for a in e.args):
                    continue
                same = c.colour_of(d, e.args[0]) == c.colour_of(d, e.args[1])
                assert bool(propagate_colouring(d, e, c)) == same


def test_propagation_resolve_needs_even_crossing():
    for name in ("trefoil_right", "knot_2_1", "three_lines"):
        d = bundled.load(name)
        for c in enumerate_two_colourings(d):
            odd = crossing_parity(d, c).odd
            for pos, x in enumerate(d.crossings):
                assert bool(propagate_colouring(d, Event(RESOLVE, (x.id,)), c)) == (not odd[pos])


def test_degenerate_movies_not_colourable():
    assert not movie_two_colourable(build_movie(bundled.load("degenerate_link"), [Event(BIRTH)]))


def test_euler_characteristic_and_genus():
    expected = {
        "tube_unknot": (0, 0, True),
        "tube_knot_2_1": (0, 0, True),
        "trefoil_right_to_unknot": (-2, 1, True),
        "trefoil_left_to_unknot": (-2, 1, True),
        "knot_2_1_to_unknot": (-2, 1, False),
        "knot_4_1_to_unknot": (-4, 2, False),
    }
    for name, (chi, g, colourable) in expected.items():
        m = bundled.load_movie(name)
        assert euler_characteristic(m) == chi
        assert genus(m) == g
        assert movie_two_colourable(m) == colourable
        assert surface_components(m) == 1


def test_genus_bound_on_colourable_movies():
    for name in bundled.MOVIES:
        m = bundled.load_movie(name)
        if movie_two_colourable(m):
            assert abs(rasmussen(m.start) - rasmussen(m.end)) <= 2 * genus(m)


def test_genus_bound_forces_non_colourable():
    # a colourable movie of genus g moves ds by at most 2g
    for name in ("knot_2_1_to_unknot", "knot_4_1_to_unknot"):
        m = bundled.load_movie(name)
        assert abs(rasmussen(m.start) - rasmussen(m.end)) > 2 * genus(m)
        assert not movie_two_colourable(m)


def test_genus_undefined_for_links():
    m = build_movie(bundled.load("hopf_positive"), [Event(BIRTH)])
    assert genus(m) is None


def test_tubes_send_canonical_to_canonical():
    for name in ("tube_unknot", "tube_trefoil_right", "tube_knot_2_1"):
        m = bundled.load_movie(name)
        for theory in ("lee", "bn"):
            for img in canonical_images(m, theory):
                assert img.matches
                assert all(lam != 0 for _, _, lam in img.matches)


def test_movie_syntax_errors():
    with pytest.raises(MovieSyntaxError) as exc:
        parse_movie("start unknot\nfly\n")
    assert exc.value.line == 2
    with pytest.raises(InvalidEvent):
        parse_movie("start trefoil_right\ndeath b1\n")
    with pytest.raises(InvalidEvent):
        parse_movie("start unknot\nsaddle o1 o1\n")
    with pytest.raises(InvalidEvent):
        parse_movie("start trefoil_right\nsaddle b1 nope\n")
    with pytest.raises(InvalidEvent):
        parse_movie("start unknot\nbirth\ndiagram\nunknot 1\nend\n")


def test_movie_with_inline_start_and_checkpoint():
    m = parse_movie("diagram\nunknot 1\nend\nbirth\ndiagram\nunknot 2\nend\n")
    assert m.start.free_unknots == 1 and m.end.free_unknots == 2
    assert build_complex(m.end, "dkh").size == 8
