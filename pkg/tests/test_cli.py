import json

import pytest

from doubledkh import bundled, render
from doubledkh.cli import invariants_report, main
from doubledkh.exactalg import spectral_pages
from doubledkh.theories import build_complex, dkh_homology, lee_homology


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_homology_text(capsys):
    code, out, _ = run(capsys, "homology", "unknot")
    assert code == 0
    assert out.count(render.DOT) + out.count(render.HOLLOW) == 4


def test_homology_shows_torsion(capsys):
    code, out, _ = run(capsys, "homology", "2_1")
    assert code == 0 and "t2" in out


def test_homology_json_round_trip(capsys):
    code, out, _ = run(capsys, "homology", "knot_2_1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ring"] == "Z"
    cells = {(r["i"], r["j"]): (r["free_rank"], tuple(r["torsion"])) for r in data["cells"]}
    want = {k: v for k, v in dkh_homology(bundled.load("knot_2_1")).cells.items() if v[0] or v[1]}
    assert cells == want


def test_homology_csv(capsys):
    code, out, _ = run(capsys, "homology", "trefoil_right", "--theory", "lee", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "i,s,free_rank,torsion"
    assert len(lines) == 1 + len([c for c in lee_homology(bundled.load("trefoil_right")).cells.values() if c[0]])


def test_reduced_and_file_input(capsys, tmp_path):
    p = tmp_path / "u.rp3"
    p.write_text("unknot 1\nmark o1\n")
    code, out, _ = run(capsys, "homology", str(p), "--reduced", "--format", "json")
    assert code == 0 and json.loads(out)["total_rank"] == 2


def test_degenerate_lee_is_empty(capsys):
    code, out, _ = run(capsys, "homology", "degenerate_link", "--theory", "lee")
    assert code == 0 and "(empty)" in out


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "2_1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ds_Q"] == -5 and data["odd_writhes"] == [-2]
    assert invariants_report(bundled.load("degenerate_link"))["two_colourings"] == 0


def test_spectral(capsys):
    code, out, _ = run(capsys, "ss", "4_1", "--theory", "bn", "--format", "json")
    assert code == 0
    assert json.loads(out) == spectral_pages(build_complex(bundled.load("knot_4_1"), "bn")).to_json()
    code, out, _ = run(capsys, "ss", "4_1", "--theory", "bn")
    assert "nontrivial pages: 2" in out


def test_moves_reproducible(capsys):
    _, a, _ = run(capsys, "moves", "trefoil_right", "--seed", "4", "--count", "6")
    _, b, _ = run(capsys, "moves", "trefoil_right", "--seed", "4", "--count", "6")
    assert a == b and "crossing" in a


def test_movie(capsys):
    code, out, _ = run(capsys, "movie", "trefoil_right_to_unknot", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["genus"] == 1 and data["two_colourable"]
    code, out, _ = run(capsys, "movie", "tube_unknot", "--theory", "bn", "--format", "json")
    assert json.loads(out)["chain_map"] is True


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    for name in bundled.NAMES + bundled.MOVIES:
        assert name in out


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "5,6")
    assert code == 0 and out.count("[PASS]") == 2


@pytest.mark.parametrize("argv", [
    ["homology", "unknot", "--theory", "lee", "--ring", "F2"],
    ["homology", "unknot", "--theory", "bn", "--ring", "Q"],
    ["homology", "trefoil_right", "--theory", "lee", "--reduced"],
    ["ss", "unknot", "--theory", "dkh"],
    ["verify", "--only", "99"],
    ["verify", "--only", "x"],
    ["homology", "unknot", "--threads", "0"],
    ["movie", "knot_2_1_to_unknot", "--theory", "dkh"],
    ["frobnicate"],
    [],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_bad_diagram_file(capsys, tmp_path):
    p = tmp_path / "bad.rp3"
    p.write_text("crossing X1 a:h a:t b:h b:t\n")
    code, _, err = run(capsys, "homology", str(p))
    assert code == 2 and "under-orientation" in err


def test_resource_errors(capsys, monkeypatch):
    assert run(capsys, "homology", "no_such_knot")[0] == 1
    monkeypatch.setenv("DOUBLEDKH_CUBE_LIMIT", "2")
    assert run(capsys, "homology", "4_1")[0] == 1


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0


def test_render_grid():
    assert render.grid_text({}) == "(empty)"
    text = render.grid_text({(0, 0): (1, ()), (1, 2): (6, (2,))})
    assert render.HOLLOW in text and "x6t2" in text
