import json

from matroid_chow.cli import load_matroid, main
from matroid_chow.matroid import uniform


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info_and_chow(capsys):
    code, out, _ = run(capsys, "info", "--matroid", "uniform:3:2")
    assert code == 0
    assert json.loads(out)["result"]["flats_per_rank"] == [1, 3, 1]
    code, out, _ = run(capsys, "chow", "--matroid", "B3", "--variant", "plain")
    data = json.loads(out)["result"]["plain"]
    assert data["dims"] == [1, 4, 1]
    assert data["degree_alpha_top"] == "1/1"


def test_verify_dispatch_note(capsys):
    code, out, _ = run(capsys, "verify", "d2", "--matroid", "U2,3", "--element", "1",
                       "--variant", "plain")
    assert code == 0
    notes = json.loads(out)["result"]["decompositions"][0]["notes"]
    assert any("applied d1" in n for n in notes)


def test_input_errors(capsys, tmp_path):
    code, _, err = run(capsys, "info", "--matroid", '{"bases": [[1, 2]')
    assert code == 1 and "ParseError" in err and "byte offset" in err
    code, _, err = run(capsys, "info", "--matroid", '{"elements": [1, 2], "bases": [[1]]}')
    assert code == 1 and "LoopDetected" in err
    code, _, err = run(capsys, "verify", "d1", "--matroid", "B2", "--element", "7")
    assert code == 1 and "ElementNotInGroundSet" in err
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"type": "uniform", "n": 3, "d": 2}))
    assert load_matroid(str(p)) == uniform(3, 2)


def test_output_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "all", "--matroid", "U2,3", "--out", str(a)]) == 0
    assert main(["verify", "all", "--matroid", "U2,3", "--out", str(b), "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
