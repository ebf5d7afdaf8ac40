import json

import pytest

from cayley_chroma.cli import MatrixParseError, format_matrix, main, parse_matrix
from cayley_chroma.intmat import IntMatrix


def write(tmp_path, text, name="m.txt"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_parse_text_and_json():
    assert parse_matrix("1 0\n0 1\n3 4\n") == IntMatrix([[1, 0], [0, 1], [3, 4]])
    assert parse_matrix('{"matrix":[[2,3]]}') == IntMatrix([[2, 3]])
    assert parse_matrix("# comment\n\n 1 -2 # trailing\n+3 4\n") == IntMatrix([[1, -2], [3, 4]])


@pytest.mark.parametrize(
    "text",
    ["1 0\n0\n", "", "1 x\n", "1.5 2\n", '{"matrix": [[true, 1]]}', '{"matrix": [[1.0]]}', '{"rows": []}', "{bad"],
)
def test_parse_errors(text):
    with pytest.raises(MatrixParseError):
        parse_matrix(text)


def test_format_roundtrip():
    A = IntMatrix([[1, -20], [300, 0]])
    assert parse_matrix(format_matrix(A)) == A


def test_chi_main_theorem(tmp_path, capsys):
    path = write(tmp_path, "1 0\n1 0\n1 0\n1 0\n1 2\n")
    assert main(["chi", path]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "chi = 3"


def test_chi_verify(tmp_path, capsys):
    path = write(tmp_path, "1 0\n0 1\n3 4\n")
    assert main(["chi", path, "--verify"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("chi = 4\n")
    assert "verified: Confirmed(4)" in out


def test_chi_loops(tmp_path, capsys):
    path = write(tmp_path, "2 3\n")
    assert main(["chi", path]) == 2
    assert capsys.readouterr().out.splitlines()[0] == "uncolorable (loops)"


def test_chi_input_error(tmp_path, capsys):
    path = write(tmp_path, "1 0\n0\n")
    assert main(["chi", path]) == 1
    assert "ragged" in capsys.readouterr().err
    assert main(["chi", str(tmp_path / "missing.txt")]) == 1


def test_chi_rank_three(tmp_path, capsys):
    path = write(tmp_path, "2 0 0\n0 2 0\n0 0 2\n1 1 1\n")
    code = main(["chi", path, "--ball-radius", "1", "2", "--moduli", "2,3", "--budget-nodes", "20000"])
    assert code == 3
    assert capsys.readouterr().out.startswith("unsupported-exact")


def test_chi_json_is_deterministic(tmp_path, capsys):
    path = write(tmp_path, "2 1\n1 3\n")
    main(["chi", path, "--format", "json", "--certify", "--verify"])
    first = capsys.readouterr().out
    main(["chi", path, "--format", "json", "--certify", "--verify"])
    assert capsys.readouterr().out == first
    doc = json.loads(first)
    assert doc["schema"] == 1
    assert doc["result"] == {"status": "chi", "chi": 5}
    assert doc["certificate"]["type"] == "TwoByTwoCase"
    assert doc["sandwich"]["status"] == "confirmed"


def test_chi_dump_graph(tmp_path, capsys):
    path = write(tmp_path, "3 0\n1 3\n")
    out = tmp_path / "g.txt"
    main(["chi", path, "--dump-graph", str(out)])
    lines = out.read_text().splitlines()
    assert lines[0] == "9" and len(lines) == 1 + 18


def test_fuzz_is_deterministic(capsys):
    argv = ["fuzz", "--rows", "3", "--cols", "2", "--entry-bound", "2", "--count", "40", "--seed", "7"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    assert "contradictions: 0" in first


def test_fuzz_exhaustive_small(capsys):
    assert main(["fuzz", "--rows", "1", "--cols", "2", "--entry-bound", "2", "--count", "all"]) == 0
    assert capsys.readouterr().out.startswith("matrices: 25 ")
