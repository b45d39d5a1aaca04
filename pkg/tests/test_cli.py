import json

import pytest

from weylkit.cli import DETERMINISM_RUNS, main, run


def report(argv):
    code, out = run(argv)
    return code, json.loads(out) if out.startswith("{") else out


def test_root_data():
    code, data = report(["root-data", "--type", "A", "--rank", "2"])
    assert code == 0 and data["schema"] == "weylkit/1"
    assert len(data["result"]["positive_roots"]) == 3
    code, data = report(["root-data", "--type", "A", "--rank", "1"])
    assert data["result"]["weyl_order"] == 2


def test_unsupported_datum_exit_code():
    code, data = report(["root-data", "--type", "E", "--rank", "8"])
    assert code == 2 and "unsupported Cartan datum" in data["error"]["message"]


def test_demazure_outputs():
    code, data = report(["demazure", "--type", "A", "--rank", "1", "--word", "1", "--expr", "a1"])
    assert code == 0 and data["result"]["image"] == "2"
    code, data = report(["demazure", "--type", "A", "--rank", "1", "--ring", "torus", "--word", "1",
                         "--expr", "t1"])
    assert data["result"]["image"] == "(t1 - t1^-1)/Δ" and data["result"]["delta_power"] == 1
    outs = [report(["demazure", "--type", "A", "--rank", "2", "--word", w, "--expr", "a1^2*a2"])[1]["result"]["image"]
            for w in ("121", "212")]
    assert outs[0] == outs[1]
    code, data = report(["demazure", "--type", "A", "--rank", "2", "--direct", "--expr", "a1^2*a2"])
    assert data["result"]["image"] == outs[0]


def test_demazure_input_errors():
    assert run(["demazure", "--type", "A", "--rank", "1", "--word", "1", "--expr", "a1^"])[0] == 2
    assert run(["demazure", "--type", "A", "--rank", "1", "--word", "3", "--expr", "a1"])[0] == 2
    assert run(["demazure", "--type", "A", "--rank", "1"])[0] == 2


def test_centralizer_commands():
    code, data = report(["centralizer", "--group", "sl2"])
    assert code == 0
    assert data["result"]["relations"][0]["relation"] == "b^2*Z = c^2 - 4"
    code, data = report(["centralizer", "--group", "pgl2"])
    assert code == 2 and "PGL2" in data["error"]["message"]


def test_counterexample_and_ideal_compare():
    code, data = report(["counterexample"])
    assert code == 0 and data["ok"]
    code, data = report(["ideal-compare", "--type", "B", "--rank", "2"])
    assert code == 0 and data["result"]["inclusion"]["ok"]


def test_envelope_from_file(tmp_path):
    desc = {
        "ambient": "quotient", "type": "A", "rank": 1,
        "generators": ["x", "y", "z"], "relations": ["x^2 + y^2 + z^2"],
        "simple_images": [["-x", "-y", "-z"]], "structure": ["z"],
        "label": "sphere", "window": {"degree": 4, "height": 0, "delta_power": 1},
    }
    path = tmp_path / "sphere.json"
    path.write_text(json.dumps(desc))
    code, data = report(["envelope", "--presentation", str(path)])
    assert code == 0 and data["result"]["recipes"]["equal"]
    desc["relations"] = ["x^2 + y^2 + z"]
    path.write_text(json.dumps(desc))
    assert run(["envelope", "--presentation", str(path)])[0] == 2
    assert run(["envelope", "--presentation", str(tmp_path / "missing.json")])[0] == 2


def test_window_flags_validated():
    assert run(["envelope", "--ring", "torus", "--degree", "0"])[0] == 2
    assert run(["envelope", "--ring", "torus", "--delta-power", "2"])[0] == 2


def test_check_suite_exit_code():
    code, data = report(["check", "--suite", "ideals", "--type", "A", "--rank", "1"])
    assert code == 0 and all(c["ok"] for c in data["result"]["checks"])
    assert run(["check", "--suite", "nope"])[0] == 2


def test_threads_variable(monkeypatch):
    monkeypatch.setenv("WEYLKIT_THREADS", "zero")
    assert run(["root-data"])[0] == 2
    monkeypatch.setenv("WEYLKIT_THREADS", "4")
    assert run(["root-data"])[0] == 0


def test_output_file(tmp_path, capsys):
    dest = tmp_path / "out.json"
    assert main(["root-data", "--type", "G", "--rank", "2", "--output", str(dest)]) == 0
    assert json.loads(dest.read_text())["result"]["weyl_order"] == 12
    assert capsys.readouterr().out == ""


def test_text_format():
    code, out = run(["centralizer", "--group", "sl2", "--format", "text"])
    assert "relation b^2*Z = c^2 - 4: verified" in out


@pytest.mark.parametrize("argv", DETERMINISM_RUNS, ids=lambda a: a[0])
def test_byte_identical_reruns(argv):
    assert run(list(argv)) == run(list(argv))
