import json

import pytest

from pierce_gldim import generators
from pierce_gldim.cli import main
from pierce_gldim.formats import from_algebra

GOLDEN = __import__("pathlib").Path(__file__).parent / "golden"


@pytest.fixture
def write(tmp_path):
    def _write(name):
        path = tmp_path / f"{name}.json"
        path.write_text(from_algebra(generators.gallery(name), name=name).dumps())
        return str(path)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_example2(capsys, write):
    code, out, _ = run(capsys, "analyze", write("example2"))
    report = json.loads(out)
    assert code == 0
    assert report["verdict"] == "infinite"
    assert report["branch"] == "smear"


def test_analyze_anick_green_with_oracle(capsys, write):
    code, out, _ = run(capsys, "analyze", write("anick_green"), "--oracle-cutoff", "8")
    report = json.loads(out)
    assert code == 0
    assert report["bound"][1] == 3
    assert report["oracle"]["value"] == 2
    assert report["consistent"] is True


def test_analyze_unknown_exits_2(capsys, write):
    code, out, _ = run(capsys, "analyze", write("example3"), "--text")
    assert code == 2
    assert out.startswith("verdict: unknown")


def test_oracle_command(capsys, write):
    code, out, _ = run(capsys, "oracle", write("anick_green"))
    assert code == 0 and json.loads(out)["gldim"] == 2
    code, out, _ = run(capsys, "oracle", write("example2"), "--cutoff", "6")
    assert code == 2
    assert json.loads(out)["period"] == [1, 1]


def test_graph_dot_matches_golden(capsys, write):
    code, out, _ = run(capsys, "graph", write("example2"), "--dot")
    assert code == 0
    assert out == (GOLDEN / "example2.dot").read_text()


def test_graph_color_and_collapse(capsys, write):
    path = write("anick_green")
    _, out, _ = run(capsys, "graph", path, "--color", "U=f0,g0")
    assert '"f0" [color=red];' in out and '"e2" [color=blue];' in out
    _, out, _ = run(capsys, "graph", path, "--color", "U=f0,g0", "--collapse")
    assert '"U" -> "e1";' in out
    code, _, err = run(capsys, "graph", path, "--color", "U=zz")
    assert code == 1 and "zz" in err


def test_graph_json(capsys, write):
    _, out, _ = run(capsys, "graph", write("k2"))
    assert json.loads(out) == {"vertices": ["e0", "e1"], "edges": [], "components": [["e0"], ["e1"]]}


def test_tor_command(capsys, write):
    path = write("example3")
    x = "S:e+S:f"
    dims = []
    for deg in range(4):
        _, out, _ = run(capsys, "tor", path, "--x", x, "--y", x, "--deg", str(deg))
        dims.append(json.loads(out)["dim"])
    assert dims == [2, 2, 1, 0]
    _, out, _ = run(capsys, "tor", path, "--x", x, "--y", x, "--deg", "2", "--reduced")
    assert json.loads(out) == {"degree": 2, "dim": 1, "method": "reduced"}
    code, _, err = run(capsys, "tor", path, "--x", "Q:e", "--y", "A", "--deg", "0")
    assert code == 1 and err.startswith("error:")


def test_gallery_command(capsys):
    _, out, _ = run(capsys, "gallery", "--list")
    assert out.split() == generators.gallery_names()
    _, out, _ = run(capsys, "gallery", "--emit", "example3")
    assert json.loads(out)["quiver"]["vertices"] == ["e", "f"]
    code, _, err = run(capsys, "gallery", "--emit", "nothing")
    assert code == 1 and "nothing" in err


def test_validate(capsys, write, tmp_path):
    code, out, _ = run(capsys, "validate", write("ladder1"))
    assert code == 0 and json.loads(out) == {"ok": True, "dim": 9, "vertices":
                                             ["e0", "f0", "g0", "e1"], "edges": 5}
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": "Q", "quiver": {"vertices": ["e"], "arrows": []}}')
    code, out, err = run(capsys, "validate", str(bad))
    assert code == 1 and out == ""
    assert "max_len" in err


def test_output_is_deterministic(capsys, write):
    path = write("ladder2")
    _, first, _ = run(capsys, "analyze", path)
    _, second, _ = run(capsys, "analyze", path)
    assert first == second


def test_missing_file(capsys):
    code, out, err = run(capsys, "analyze", "/nonexistent/file.json")
    assert code == 1 and out == "" and err.startswith("error:")
