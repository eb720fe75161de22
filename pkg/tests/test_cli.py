import json
from fractions import Fraction

import pytest

from affinetrees.cli import main
from affinetrees.harness import example4_image
from affinetrees.jsonio import mat_from_json, mat_to_json
from affinetrees.trimat import TriMat


def write_json(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def identity_json(n):
    return mat_to_json(TriMat.identity(n))


def test_embed_identity(tmp_path, capsys):
    src = write_json(tmp_path / "in.json", identity_json(3))
    code, out, _ = run_cli(capsys, "embed", "--input", src)
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 3 and payload["m"] == 3
    assert mat_from_json(payload["matrix"]) == TriMat.identity(4)


def test_embed_example_binding_all_ones(tmp_path, capsys):
    mat = TriMat([[1, 1, 1, 1], [0, 1, 1, 1], [0, 0, 1, 1], [0, 0, 0, 1]])
    src = write_json(tmp_path / "in.json", mat_to_json(mat))
    code, out, _ = run_cli(capsys, "embed", "--input", src, "--n", "4")
    assert code == 0
    payload = json.loads(out)
    expected = example4_image(*(Fraction(1),) * 6)
    assert mat_from_json(payload["matrix"]) == expected


def test_embed_with_integerize(tmp_path, capsys):
    mat = TriMat([[1, Fraction(1, 2)], [0, 1]])
    src = write_json(tmp_path / "in.json", mat_to_json(mat))
    code, out, _ = run_cli(capsys, "embed", "--input", src, "--integerize")
    assert code == 0
    payload = json.loads(out)
    assert mat_from_json(payload["integerized"]["P"]) == TriMat.diagonal([2, 1])
    assert mat_from_json(payload["integerized"]["conjugated"]) == TriMat(
        [[1, 1], [0, 1]]
    )


def test_embed_malformed_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(capsys, "embed", "--input", str(bad))
    assert code == 2
    assert "JSON" in err


def test_embed_dimension_flag_mismatch(tmp_path, capsys):
    src = write_json(tmp_path / "in.json", identity_json(3))
    code, _, err = run_cli(capsys, "embed", "--input", src, "--n", "4")
    assert code == 2


def test_embed_precondition_violation(tmp_path, capsys):
    src = write_json(
        tmp_path / "in.json", mat_to_json(TriMat([[2, 0], [0, 1]]))
    )
    code, _, err = run_cli(capsys, "embed", "--input", src)
    assert code == 3
    assert "NotUnitriangular" in err


def test_hyperbolic_subcommand(tmp_path, capsys):
    translation = TriMat([[1, 0, 1], [0, 1, 0], [0, 0, 1]])
    src = write_json(tmp_path / "t.json", mat_to_json(translation))
    code, out, _ = run_cli(capsys, "hyperbolic", "--input", src)
    assert code == 0
    assert json.loads(out) == {"essentially_hyperbolic": True}
    src = write_json(tmp_path / "id.json", identity_json(3))
    code, _, err = run_cli(capsys, "hyperbolic", "--input", src)
    assert code == 3
    assert "IdentityInput" in err


def test_integerize_subcommand(tmp_path, capsys):
    a = TriMat([[1, Fraction(1, 2)], [0, 1]])
    b = TriMat([[1, Fraction(-1, 2)], [0, 1]])
    src = write_json(tmp_path / "gens.json", [mat_to_json(a), mat_to_json(b)])
    code, out, _ = run_cli(capsys, "integerize", "--input", src)
    assert code == 0
    payload = json.loads(out)
    assert mat_from_json(payload["P"]) == TriMat.diagonal([2, 1])
    assert len(payload["conjugated"]) == 2
    # inverse closure enforced
    src = write_json(tmp_path / "open.json", [mat_to_json(a)])
    code, _, err = run_cli(capsys, "integerize", "--input", src)
    assert code == 3
    assert "NotInverseClosed" in err


def test_extend_tstar_subcommand(tmp_path, capsys):
    elem = {
        "n": 2,
        "u": {"n": 2, "entries": [["1", "1/2"], ["0", "1"]]},
        "diag_exponents": ["1", "0"],
    }
    src = write_json(tmp_path / "g.json", elem)
    code, out, _ = run_cli(capsys, "extend-tstar", "--input", src)
    assert code == 0
    payload = json.loads(out)
    assert payload["essentially_free"] is True
    mat = mat_from_json(payload["matrix"])
    assert mat.n == 4  # m + n + 1 with n=2, m=1


def test_act_identity(tmp_path, capsys):
    rep = write_json(tmp_path / "rep.json", identity_json(4))
    point = write_json(tmp_path / "p.json", ["1", "2/3", "-5"])
    code, out, _ = run_cli(capsys, "act", "--rep", rep, "--point", point)
    assert code == 0
    assert json.loads(out) == ["1", "2/3", "-5"]


def test_act_translation_power(tmp_path, capsys):
    mat = TriMat([[1, 0, 2], [0, 1, 3], [0, 0, 1]])
    rep = write_json(tmp_path / "rep.json", mat_to_json(mat))
    point = write_json(tmp_path / "p.json", ["1", "1"])
    code, out, _ = run_cli(
        capsys, "act", "--rep", rep, "--point", point, "--power", "3"
    )
    assert code == 0
    assert json.loads(out) == ["7", "10"]


def test_act_on_origin_returns_translation_column(tmp_path, capsys):
    mat = TriMat([[1, 1, 1, 1], [0, 1, 1, 1], [0, 0, 1, 1], [0, 0, 0, 1]])
    from affinetrees.embedding import embed_unitriangular

    image = embed_unitriangular(mat)
    rep = write_json(tmp_path / "rep.json", mat_to_json(image))
    point = write_json(tmp_path / "p.json", ["0"] * 6)
    code, out, _ = run_cli(capsys, "act", "--rep", rep, "--point", point)
    assert code == 0
    expected = [str(image.rows[i][6]) for i in range(6)]
    assert json.loads(out) == expected


def test_act_negative_power_inverts(tmp_path, capsys):
    mat = TriMat([[1, 0, 2], [0, 1, 3], [0, 0, 1]])
    rep = write_json(tmp_path / "rep.json", mat_to_json(mat))
    point = write_json(tmp_path / "p.json", ["2", "3"])
    code, out, _ = run_cli(
        capsys, "act", "--rep", rep, "--point", point, "--power", "-1"
    )
    assert code == 0
    assert json.loads(out) == ["0", "0"]


def test_verify_subcommand_passes(tmp_path, capsys):
    code, out, _ = run_cli(
        capsys,
        "verify",
        "--suite",
        "lsa",
        "--n",
        "4",
        "--samples",
        "5",
        "--seed",
        "1",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True


def test_verify_rejects_zero_samples(capsys):
    code, _, err = run_cli(
        capsys, "verify", "--suite", "lsa", "--n", "4", "--samples", "0", "--seed", "1"
    )
    assert code == 2


def test_verify_range_syntax(capsys):
    code, out, _ = run_cli(
        capsys,
        "verify",
        "--suite",
        "integerize",
        "--n",
        "2..3",
        "--samples",
        "2",
        "--seed",
        "0",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["config"]["n_low"] == 2 and payload["config"]["n_high"] == 3


def test_verify_deterministic_output(capsys):
    args = ["verify", "--suite", "lsa", "--n", "3", "--samples", "4", "--seed", "9"]
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_wreath_subcommand(capsys):
    code, out, _ = run_cli(
        capsys, "wreath", "--levels", "Z,Z", "--samples", "5", "--seed", "3"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert payload["levels"] == ["Z", "Z"]


def test_wreath_rejects_bad_levels(capsys):
    code, _, err = run_cli(capsys, "wreath", "--levels", "Z,X", "--samples", "3")
    assert code == 2


def test_output_file(tmp_path, capsys):
    src = write_json(tmp_path / "in.json", identity_json(2))
    dst = tmp_path / "out.json"
    code, out, _ = run_cli(
        capsys, "embed", "--input", src, "--output", str(dst)
    )
    assert code == 0
    assert out == ""
    payload = json.loads(dst.read_text())
    assert payload["m"] == 1


def test_env_refinement_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("AFFINE_MAX_REFINEMENTS", "not-a-number")
    src = write_json(tmp_path / "in.json", identity_json(2))
    code, _, err = run_cli(capsys, "embed", "--input", src)
    assert code == 2
    monkeypatch.setenv("AFFINE_MAX_REFINEMENTS", "32")
    code, _, _ = run_cli(capsys, "embed", "--input", src)
    assert code == 0
    from affinetrees import scalars

    scalars.set_default_max_refinements(scalars.DEFAULT_MAX_REFINEMENTS)
