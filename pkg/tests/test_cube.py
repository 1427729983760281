from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from doubledkh import bundled
from doubledkh.cube import CubeTooLarge, build_cube, classify_edge, cube_limit, edge_sign, resolve
from doubledkh.moves import r1_add, random_script


def kink():
    return r1_add(bundled.load("unknot"), None)


def test_unknot_smoothing():
    s = resolve(bundled.load("unknot"), 0)
    assert len(s.circles) == 1 and not s.circles[0].is_essential


def test_essential_circle_smoothing():
    (c,) = resolve(bundled.load("essential_circle"), 0).circles
    assert c.passage_parity == 1 and c.is_essential


def test_kink_resolutions():
    d = kink()
    counts = sorted(len(resolve(d, i).circles) for i in (0, 1))
    assert counts == [1, 2]


def test_kink_edge_kind():
    d = kink()
    e = classify_edge(d, 0, 0)
    two_at_source = len(resolve(d, 0).circles) == 2
    assert e.kind == ("merge" if two_at_source else "split")


def test_eta_edge():
    # one crossing between two strands that each pass through the boundary once
    d = bundled.load("degenerate_link")
    e = classify_edge(d, 0, 0)
    assert e.kind == "eta"
    assert len(resolve(d, 0).circles) == len(resolve(d, 1).circles) == 1


def test_edge_signs():
    assert edge_sign(0, 0, 3) == 1
    assert edge_sign(0, 2, 3) == 1
    # the first crossing is resolved by 1, the second crossing sees one preceding 1
    assert edge_sign(0b01, 1, 2) == -1
    with pytest.raises(ValueError):
        edge_sign(0b01, 0, 2)


def test_edge_signs_anticommute():
    for n in range(1, 5):
        for v in range(1 << n):
            for a in range(n):
                for b in range(a + 1, n):
                    if (v >> a) & 1 or (v >> b) & 1:
                        continue
                    prod = (edge_sign(v, a, n) * edge_sign(v | 1 << a, b, n)
                            * edge_sign(v, b, n) * edge_sign(v | 1 << b, a, n))
                    assert prod == -1


def test_cube_sizes():
    c = build_cube(bundled.load("unknot"))
    assert len(c.vertices) == 1 and c.edges == []
    c = build_cube(bundled.load("knot_2_1"))
    assert len(c.vertices) == 4 and len(c.edges) == 4
    c = build_cube(bundled.load("knot_4_1"))
    assert len(c.vertices) == 16 and len(c.edges) == 32
    assert Counter(e.kind for e in c.edges) == {"merge": 28, "eta": 4}


def test_cube_limit(monkeypatch):
    monkeypatch.setenv("DOUBLEDKH_CUBE_LIMIT", "3")
    assert cube_limit() == 3
    with pytest.raises(CubeTooLarge):
        build_cube(bundled.load("knot_4_1"))
    build_cube(bundled.load("trefoil_right"))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_cube_structure(seed):
    start = bundled.load(bundled.NAMES[seed % len(bundled.NAMES)])
    d = random_script(start, seed=seed, length=5, max_crossings=6)[1]
    cube = build_cube(d)
    for s in cube.vertices:
        assert sum(c.is_essential for c in s.circles) <= 1
    for e in cube.edges:
        src, dst = cube.vertices[e.source], cube.vertices[e.target]
        delta = len(dst.circles) - len(src.circles)
        assert e.kind == {-1: "merge", 1: "split", 0: "eta"}[delta]
        for a, b in e.bystanders:
            assert src.circles[a].passage_parity == dst.circles[b].passage_parity
        assert len(e.bystanders) == len(src.circles) - len(e.inputs)
