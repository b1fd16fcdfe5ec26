"""Command-line dispatch, exit codes, JSON round trips, SVG determinism."""

import io
import json
from fractions import Fraction

import pytest

from air.cli import run_cli
from air.exactgeom import PointConfig
from air.infrared import StokesMatrix
from air.perv import MatrixDiagram, braid_word
from air.render import Overlay, Scene, render_svg, _dec6


def invoke(*argv):
    out, err = io.BytesIO(), io.BytesIO()
    code = run_cli(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def md(tmp_path):
    cfg = PointConfig.of([("w1", 0, 0), ("w2", 2, 1), ("w3", 1, -3)])
    d = MatrixDiagram(
        cfg, {l: 1 for l in cfg.labels},
        {l: [[Fraction(-1)]] for l in cfg.labels},
        {("w2", "w1"): [[Fraction(2)]], ("w3", "w1"): [[Fraction(5)]],
         ("w2", "w3"): [[Fraction(7)]]})
    path = tmp_path / "md.json"
    path.write_text(d.to_json())
    return d, str(path)


@pytest.fixture
def pentagon(tmp_path):
    cfg = PointConfig.of([("p1", 0, 0), ("p2", 4, 0), ("p3", 6, 3),
                          ("p4", 3, 6), ("p5", -1, 3)])
    path = tmp_path / "pentagon.json"
    path.write_text(cfg.to_json())
    return cfg, str(path)


# -- exit codes ----------------------------------------------------------------------


def test_zero_zeta_is_usage_error(md):
    _, path = md
    code, out, err = invoke("stokes", "--config", path, "--zeta", "0,0")
    assert code == 2
    assert b"usage error" in err


def test_missing_file_is_usage_error():
    code, _, err = invoke("secondary", "--config", "/no/such/file.json")
    assert code == 2


def test_domain_error_is_machine_readable(md):
    _, path = md
    code, out, err = invoke("wallcross", "--config", path, "--ray", "1,1")
    assert code == 1
    payload = json.loads(err)
    assert payload["error"] == "BadRay"
    assert "message" in payload


def test_success_exit_zero(md):
    _, path = md
    code, _, _ = invoke("stokes", "--config", path, "--zeta", "0,1")
    assert code == 0


# -- subcommands ---------------------------------------------------------------------


def test_stokes_oracle_reports_equal(md):
    _, path = md
    code, out, _ = invoke("stokes", "--config", path, "--zeta", "0,1",
                          "--oracle")
    assert code == 0
    obj = json.loads(out)
    assert obj["verdict"] == "EQUAL"
    assert obj["equal"] is True
    assert obj["stokes"] == obj["oracle"]
    assert obj["stokes"]["blocks"]["w2->w1"] == [["37"]]


def test_stokes_json_reads_back(md):
    d, path = md
    code, out, _ = invoke("stokes", "--config", path, "--zeta", "0,1")
    assert code == 0
    parsed = StokesMatrix.from_obj(json.loads(out)["stokes"])
    from air.infrared import stokes_matrix
    from air.exactgeom import Direction
    assert parsed == stokes_matrix(d, Direction.of(0, 1))


def test_secondary_pentagon(pentagon):
    _, path = pentagon
    code, out, _ = invoke("secondary", "--config", path)
    assert code == 0
    obj = json.loads(out)
    assert len(obj["vertices"]) == 5
    assert obj["dim"] == 2


def test_triangulations_pentagon(pentagon):
    _, path = pentagon
    code, out, _ = invoke("triangulations", "--config", path)
    assert json.loads(out)["count"] == 5


def test_paths_subcommand(md):
    _, path = md
    code, out, _ = invoke("paths", "--config", path, "--zeta", "0,1",
                          "--from", "w2", "--to", "w1")
    assert code == 0
    obj = json.loads(out)
    assert obj["order"] == ["w2", "w3", "w1"]
    assert obj["paths"] == [["w2", "w1"], ["w2", "w3", "w1"]]


def test_mutate_round_trip(md):
    d, path = md
    code, out, _ = invoke("mutate", "--config", path, "--word", "1,2,-1")
    assert code == 0
    got = MatrixDiagram.from_obj(json.loads(out))
    want = braid_word(d, [(1, False), (2, False), (1, True)])
    assert got.to_json() == want.to_json()


def test_mutate_inverse_word_restores(md):
    d, path = md
    code, out, _ = invoke("mutate", "--config", path, "--word", "1,-1")
    assert MatrixDiagram.from_obj(json.loads(out)).to_json() == d.to_json()


def test_trace_subcommand(md):
    _, path = md
    code, out, _ = invoke("trace", "--config", path,
                          "--subset", "w1,w2,w3")
    assert code == 0
    assert json.loads(out)["trace"] == "0"  # one boundary edge is zero


def test_lefschetz_subcommand():
    code, out, _ = invoke("lefschetz", "--coeffs", '["0","-1","0","1/3"]')
    assert code == 0
    got = MatrixDiagram.from_obj(json.loads(out))
    assert abs(got.t("w1", "w2")[0][0]) == 1
    code2, _, err = invoke("lefschetz", "--coeffs", '["0","0","0","1"]')
    assert code2 == 1
    assert json.loads(err)["error"] == "NotMorse"


def test_wallcross_subcommand(md):
    _, path = md
    code, out, _ = invoke("wallcross", "--config", path, "--ray", "2,1")
    assert code == 0
    obj = json.loads(out)
    assert set(obj) == {"after", "before", "connecting", "ray",
                        "zeta_after", "zeta_before"}


def test_verify_single_criterion():
    code, out, _ = invoke("verify", "--criteria", "2")
    assert code == 0
    assert out.decode().startswith("PASS criterion  2")


def test_format_pretty_same_object(md):
    _, path = md
    _, compact, _ = invoke("stokes", "--config", path, "--zeta", "0,1")
    _, pretty, _ = invoke("--format", "pretty", "stokes", "--config", path,
                          "--zeta", "0,1")
    assert compact != pretty
    assert json.loads(compact) == json.loads(pretty)


# -- rendering -----------------------------------------------------------------------


def scene_file(tmp_path, cfg, overlays):
    obj = {"config": cfg.to_obj(), "overlays": overlays}
    path = tmp_path / "scene.json"
    path.write_text(json.dumps(obj))
    return str(path)


def test_render_structure(tmp_path, pentagon):
    cfg, _ = pentagon
    path = scene_file(tmp_path, cfg, [
        {"kind": "hull"},
        {"kind": "path", "vertices": ["p1", "p2", "p3"]},
    ])
    code, out, _ = invoke("render", "--scene", path)
    assert code == 0
    text = out.decode()
    assert text.startswith('<?xml version="1.0"')
    assert text.count("<circle") == 5
    assert "<polyline" in text
    assert 'class="hull"' in text


def test_render_single_point(tmp_path):
    cfg = PointConfig.of([("a", 1, 2)])
    path = scene_file(tmp_path, cfg, [])
    code, out, _ = invoke("render", "--scene", path)
    assert code == 0
    assert out.decode().count("<circle") == 1


def test_render_deterministic(tmp_path, pentagon):
    cfg, _ = pentagon
    path = scene_file(tmp_path, cfg, [{"kind": "rays"}])
    outs = {invoke("render", "--scene", path)[1] for _ in range(3)}
    assert len(outs) == 1


def test_render_to_file(tmp_path, pentagon):
    cfg, _ = pentagon
    path = scene_file(tmp_path, cfg, [])
    target = tmp_path / "out.svg"
    code, out, _ = invoke("render", "--scene", path, "--out", str(target))
    assert code == 0
    assert target.read_bytes().startswith(b'<?xml')
    assert json.loads(out)["path"] == str(target)


def test_render_empty_scene_domain_error(tmp_path):
    path = tmp_path / "scene.json"
    path.write_text(json.dumps({"config": {"points": []}, "overlays": []}))
    code, _, err = invoke("render", "--scene", str(path))
    assert code == 1
    assert json.loads(err)["error"] == "EmptyScene"


def test_render_rejects_unknown_labels():
    cfg = PointConfig.of([("a", 0, 0), ("b", 1, 1)])
    with pytest.raises(ValueError):
        Scene(cfg, [Overlay("path", vertices=["a", "zzz"])])


def test_scene_round_trip(pentagon):
    cfg, _ = pentagon
    scene = Scene(cfg, [Overlay("hull"),
                        Overlay("path", vertices=["p1", "p2"])])
    again = Scene.from_json(scene.to_json())
    assert again.to_json() == scene.to_json()
    assert render_svg(again) == render_svg(scene)


def test_dec6_exact_rounding():
    assert _dec6(Fraction(1, 3)) == "0.333333"
    assert _dec6(Fraction(-1, 2)) == "-0.500000"
    assert _dec6(Fraction(2)) == "2.000000"
    assert _dec6(Fraction(1, 2 * 10 ** 6)) == "0.000000"   # ties to even
    assert _dec6(Fraction(3, 2 * 10 ** 6)) == "0.000002"
    assert _dec6(Fraction(-1, 10 ** 7)) == "0.000000"      # no negative zero

