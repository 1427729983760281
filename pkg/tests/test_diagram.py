import pytest
from hypothesis import given, settings, strategies as st

from doubledkh import bundled
from doubledkh.diagram import (DiagramSyntaxError, DiagramValidationError, canonical_labels, components,
                               degenerate_components, disjoint_union, faces, is_knot, is_local, is_planar,
                               mirror, parse_diagram, serialize, validate, writhe)
from doubledkh.moves import random_script


def codes(text):
    with pytest.raises(DiagramValidationError) as exc:
        parse_diagram(text)
    return {v.code for v in exc.value.violations}


def test_unknot_statement():
    d = parse_diagram("unknot 1")
    assert d.n == 0 and d.free_unknots == 1 and d.k == 0
    assert validate(d) == []


def test_essential_circle():
    d = parse_diagram("boundary b1:t b1:h")
    assert d.k == 1 and d.n == 0
    (c,) = components(d)
    assert c.boundary_passages == 2


def test_knot_2_1_parses():
    d = bundled.load("knot_2_1")
    assert d.n == 2 and is_knot(d)
    (c,) = components(d)
    assert c.boundary_passages == 4 and c.self_crossings == 2


def test_syntax_errors_carry_position():
    with pytest.raises(DiagramSyntaxError) as exc:
        parse_diagram("unknot 1\ncrossing X1 a:h a:x b:h b:t\n")
    assert (exc.value.line, exc.value.column) == (2, 17)
    with pytest.raises(DiagramSyntaxError) as exc:
        parse_diagram("frob 1")
    assert exc.value.line == 1
    with pytest.raises(DiagramSyntaxError):
        parse_diagram("unknot x")
    with pytest.raises(DiagramSyntaxError):
        parse_diagram("crossing X1 a:h b:t")


def test_orientation_violation():
    assert "under-orientation" in codes("crossing X1 a:h a:t b:h b:t\n")


def test_antipodal_violation():
    assert codes("boundary a:t a:h b:t b:h") == {"antipodal"}


def test_dangling_and_odd_boundary():
    assert {"dangling-arc", "boundary-odd"} <= codes("boundary a:t a:h a:h")


def test_nonplanar_rejected():
    assert "nonplanar" in codes("boundary a:h b:h a:t b:t")


def test_declared_sign_must_match():
    text = serialize(bundled.load("trefoil_right")) + "sign X1 -\n"
    assert "sign-mismatch" in codes(text)
    d = parse_diagram(text, check=False)
    assert [v.code for v in validate(d)] == ["sign-mismatch"]


def test_writhe():
    assert writhe(bundled.load("unknot")) == 0
    assert writhe(bundled.load("knot_2_1")) == -2
    assert writhe(bundled.load("trefoil_right")) == 3
    assert writhe(bundled.load("trefoil_left")) == -3


def test_components():
    (c,) = components(bundled.load("unknot"))
    assert c.boundary_passages == 0
    a, b = components(bundled.load("degenerate_link"))
    assert a.mixed_crossings == b.mixed_crossings == 1
    assert a.boundary_passages == b.boundary_passages == 2


def test_degenerate_components():
    assert degenerate_components(bundled.load("degenerate_link")) == {0, 1}
    assert degenerate_components(parse_diagram("unknot 2")) == set()
    assert degenerate_components(bundled.load("three_lines")) == set()
    for d in bundled.knots().values():
        assert degenerate_components(d) == set()


def test_is_local():
    assert is_local(bundled.load("unknot"))
    assert is_local(bundled.load("trefoil_right"))
    assert not is_local(bundled.load("essential_circle"))
    assert not is_local(bundled.load("knot_2_1"))


def test_faces_and_planarity():
    d = bundled.load("trefoil_right")
    assert is_planar(d)
    # V - E + F = 2 for a connected planar 4-valent graph
    assert len(faces(d)) == d.n + 2


def test_canonical_labels_idempotent():
    d = canonical_labels(bundled.load("trefoil_right"))
    assert canonical_labels(d) == d
    assert writhe(d) == 3


def test_disjoint_union_with_unknot():
    u = disjoint_union(bundled.load("trefoil_right"), bundled.load("unknot"))
    assert u.free_unknots == 1 and len(components(u)) == 2


def scripted(seed):
    start = bundled.load(bundled.NAMES[seed % len(bundled.NAMES)])
    return random_script(start, seed=seed, length=6, max_crossings=7)[1]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_round_trip(seed):
    d = scripted(seed)
    assert parse_diagram(serialize(d)) == d
    assert validate(d) == []


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_mirror(seed):
    d = scripted(seed)
    m = mirror(d)
    assert validate(m) == []
    assert writhe(m) == -writhe(d)
    assert mirror(m) == d
    assert len(components(m)) == len(components(d))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_passages_sum_to_boundary(seed):
    d = scripted(seed)
    assert sum(c.boundary_passages for c in components(d)) == 2 * d.k
    assert is_planar(d)
