import json
import shutil
import subprocess

import pytest

from commcoh.cli import main, parse_algebra, render_text
from commcoh.field import make_field
from commcoh.algebra import AlgebraPresentation

GF2 = make_field(1)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_algebra(tmp_path, name, algebra):
    path = tmp_path / name
    path.write_text(json.dumps(algebra.to_json()))
    return str(path)


def square_file(tmp_path):
    a = AlgebraPresentation(GF2, 3, ["x", "y", "w"], {(0, 0): {1: 1}})
    return write_algebra(tmp_path, "square.json", a)


def broken_file(tmp_path):
    # [u,u] = v together with [u,v] = u fails the Jacobi identity
    a = AlgebraPresentation(GF2, 2, ["u", "v"], {(0, 0): {1: 1}, (0, 1): {0: 1}})
    return write_algebra(tmp_path, "broken.json", a)


# ------------------------------------------------------------------
# happy paths, one per subcommand
# ------------------------------------------------------------------


def test_check_builder(capsys):
    code, out, _ = run(capsys, "check", "--algebra", "heisenberg:1")
    assert code == 0
    assert "jacobi_ok: yes" in out
    assert "is_lie: yes" in out


def test_cohomology_dims(capsys):
    code, out, _ = run(capsys, "cohomology", "--algebra", "dim2", "--max-degree", "4")
    assert code == 0
    for n in range(5):
        assert f"degree={n}" in out or f"degree: {n}" in out
    assert "dimH=3" in out


def test_cohomology_json_matches_text_run(capsys):
    argv = ["cohomology", "--algebra", "heisenberg:1", "--max-degree", "3", "--format", "json"]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert [b["dimH"] for b in payload["degrees"]] == [1, 2, 4, 6]


def test_cocycles2_lists_extensions(capsys):
    code, out, _ = run(capsys, "cocycles2", "--algebra", "heisenberg:1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["dimH"] == 4
    assert len(payload["central_extensions"]) == 4
    assert all(e["dim"] == 4 and e["splits"] is False for e in payload["central_extensions"])


def test_cupring(capsys):
    code, out, _ = run(capsys, "cupring", "--algebra", "dim2", "--max-degree", "4", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["dims"] == [1, 1, 2, 2, 3]


def test_morse_heisenberg_fast_path(capsys):
    code, out, _ = run(capsys, "morse", "--algebra", "heisenberg:1", "--max-degree", "4", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["agrees"] is True
    assert payload["reduced_dims"][:4] == [1, 2, 4, 6]
    assert "matching" not in payload  # gated behind --reps


def test_morse_reps_includes_matching(capsys):
    code, out, _ = run(
        capsys, "morse", "--algebra", "dim2", "--max-degree", "3", "--reps", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["agrees"] is True
    assert payload["matching"]
    assert payload["unmatched_labels"]


def test_sequence(capsys):
    code, out, _ = run(capsys, "sequence", "--algebra", "heisenberg:2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", "--algebra", "heisenberg:1", "--max-degree", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    row = payload["degrees"][2]
    assert row["alt_to_comm"]["rank"] == 2
    assert row["comm_to_leibniz"]["injective"] is True


def test_basechange(capsys):
    code, out, _ = run(
        capsys, "basechange", "--algebra", "dim2", "--field-degree", "2", "--max-degree", "2", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["all_match"] is True


def test_scan_lie_has_three_flavors(capsys):
    code, out, _ = run(capsys, "scan", "--algebra", "dim2", "--max-degree", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["is_lie"] is True
    assert set(payload["degrees"][0]) == {"degree", "symmetric", "tensor", "alternating"}


# ------------------------------------------------------------------
# file input and output
# ------------------------------------------------------------------


def test_algebra_from_file_and_out(capsys, tmp_path):
    path = square_file(tmp_path)
    dest = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "scan", "--algebra", path, "--max-degree", "2", "--out", str(dest), "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["is_lie"] is False
    assert "alternating" not in payload["degrees"][0]
    assert json.loads(dest.read_text()) == payload


def test_module_from_file(capsys, tmp_path):
    mod = tmp_path / "mod.json"
    # a two-dimensional module over the one-dimensional algebra, nilpotent action
    mod.write_text(json.dumps({"dim": 2, "actions": [[["0", "1"], ["0", "0"]]]}))
    code, out, _ = run(
        capsys, "cohomology", "--algebra", "abelian:1", "--module", str(mod),
        "--max-degree", "3", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert [b["dimH"] for b in payload["degrees"]] == [1, 1, 1, 1]


# ------------------------------------------------------------------
# failure modes and exit codes
# ------------------------------------------------------------------


def test_unknown_builder_exits_1(capsys):
    code, _, err = run(capsys, "cohomology", "--algebra", "nosuch:3")
    assert code == 1
    assert "unknown algebra" in err


def test_jacobi_violation_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "cohomology", "--algebra", broken_file(tmp_path))
    assert code == 2
    assert "Jacobi" in err


def test_alternating_needs_lie_exits_1(capsys, tmp_path):
    code, _, err = run(
        capsys, "cohomology", "--algebra", square_file(tmp_path), "--flavor", "alt"
    )
    assert code == 1
    assert "alternating" in err


def test_zassenhaus_f_rejects_field_degree(capsys):
    code, _, err = run(
        capsys, "cohomology", "--algebra", "zassenhaus-f:2", "--field-degree", "2"
    )
    assert code == 1
    assert "field" in err


def test_basechange_needs_extension(capsys):
    code, _, err = run(capsys, "basechange", "--algebra", "dim2", "--field-degree", "1")
    assert code == 1


def test_degree_cap_blocks(capsys):
    code, _, err = run(
        capsys, "cohomology", "--algebra", "dim2", "--max-degree", "6", "--degree-cap", "4"
    )
    assert code == 1
    assert "degree" in err.lower()


def test_missing_file_exits_1(capsys):
    code, _, err = run(capsys, "check", "--algebra", "does-not-exist.json")
    assert code == 1


def test_malformed_file_exits_1(capsys, tmp_path):
    # brackets written as a dict instead of a list of entries
    path = tmp_path / "malformed.json"
    path.write_text(json.dumps({
        "field": {"characteristic": 2, "degree": 1, "modulus": 2},
        "dim": 2,
        "basis": ["u", "v"],
        "brackets": {"0,0": {"1": "1"}},
    }))
    code, _, err = run(capsys, "check", "--algebra", str(path))
    assert code == 1
    assert "brackets" in err


def test_malformed_bracket_entry_exits_1(capsys, tmp_path):
    path = tmp_path / "badentry.json"
    path.write_text(json.dumps({
        "field": {"characteristic": 2, "degree": 1, "modulus": 2},
        "dim": 2,
        "basis": ["u", "v"],
        "brackets": [{"j": 1, "value": {"0": "1"}}],
    }))
    code, _, err = run(capsys, "check", "--algebra", str(path))
    assert code == 1
    assert "malformed" in err


# ------------------------------------------------------------------
# odds and ends
# ------------------------------------------------------------------


def test_parse_algebra_flavors_of_spelling():
    assert parse_algebra("zassenhaus_e:2", 1).dim == 3  # basis e_{-1} .. e_{2^n - 3}
    assert parse_algebra("heisenberg:2", 1).dim == 5
    with pytest.raises(ValueError):
        parse_algebra("abelian", 1)


def test_render_text_shapes():
    lines = render_text({"a": 1, "b": [1, 2], "c": {"x": True}, "d": [{"y": 2}], "e": {}})
    text = "\n".join(lines)
    assert "a: 1" in text
    assert "b: [1, 2]" in text
    assert "c: x=yes" in text
    assert "- y=2" in text
    assert "e: {}" in text


def test_console_script_installed():
    exe = shutil.which("commcoh")
    if exe is None:
        pytest.skip("package not installed with scripts on PATH")
    proc = subprocess.run(
        [exe, "cohomology", "--algebra", "dim2", "--max-degree", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "dimH" in proc.stdout
