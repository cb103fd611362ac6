import json

import pytest

from hopfcross.cli import main
from hopfcross.fields import FieldSpec
from hopfcross.problems import (
    BUILTIN_NAMES,
    DimensionMismatch,
    ParseError,
    UnknownBuiltin,
    builtin,
    emit_problem,
    parse_problem,
    parse_problem_dict,
)

Q = FieldSpec.rationals()


def minimal_problem_doc():
    return {
        "field": "q",
        "algebra": {"dim": 1, "basis_labels": ["1"], "mult": [[[1]]]},
        "hopf": {
            "dim": 1,
            "basis_labels": ["1"],
            "mult": [[[1]]],
            "comult": [[[1]]],
            "counit": [1],
            "antipode": [[1]],
        },
        "action": [[[1]]],
        "cocycle": [[[1]]],
        "options": {"cap": 3},
    }


def test_minimal_problem_parses():
    pf = parse_problem_dict(minimal_problem_doc())
    cp = pf.crossed_product()
    assert cp.e.dim == 1
    assert pf.cap == 3


def test_wrong_arity_reports_tensor():
    doc = minimal_problem_doc()
    doc["action"] = [[[1, 2]]]
    with pytest.raises(DimensionMismatch) as err:
        parse_problem_dict(doc)
    assert "action" in str(err.value)


def test_missing_section():
    doc = minimal_problem_doc()
    del doc["cocycle"]
    with pytest.raises(ParseError):
        parse_problem_dict(doc)


def test_bad_scalar_for_prime_field():
    doc = minimal_problem_doc()
    doc["field"] = "fp:5"
    doc["algebra"]["mult"] = [[["1/2"]]]
    with pytest.raises(ParseError):
        parse_problem_dict(doc)


def test_gallery_roundtrip(tmp_path):
    for name in BUILTIN_NAMES:
        pf = builtin(name)
        doc = emit_problem(pf)
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(doc))
        back = parse_problem(str(path))
        redoc = emit_problem(back)
        assert doc == redoc, name


def test_unknown_builtin():
    with pytest.raises(UnknownBuiltin):
        builtin("nope")


def test_builtin_field_override():
    pf = builtin("z2_trivial", field=Q)
    assert pf.field == Q


def test_cli_verify_pass(capsys):
    code = main(["verify", "sweedler_smash"])
    out = capsys.readouterr().out
    assert code == 0
    assert "pass" in out


def test_cli_verify_exit_codes(tmp_path, capsys):
    # input error
    assert main(["verify", "no_such_thing"]) == 2
    capsys.readouterr()
    # verification failure: corrupt the sweedler antipode
    doc = emit_problem(builtin("sweedler_smash"))
    doc["hopf"]["antipode"][2] = ["0", "0", "0", "1"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    assert main(["verify", str(path)]) == 1
    capsys.readouterr()


def test_cli_oracle_compare_z2(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code = main([
        "oracle-compare", "z2_trivial", "--max-degree", "3", "--output", str(out_path)
    ])
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["sections"]["homology"]["dims"] == [2, 2, 2, 2]
    assert doc["sections"]["homology"]["oracle_match"]
    assert doc["sections"]["cohomology"]["dims"] == [2, 2, 2, 2]
    capsys.readouterr()


def test_cli_spectral_page2(tmp_path, capsys):
    out_path = tmp_path / "spec.json"
    code = main(["spectral", "z2_trivial", "--page", "2", "--output", str(out_path)])
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["sections"]["convergence"]["passed"]
    assert doc["sections"]["page_2"]["cells"]
    capsys.readouterr()


def test_cli_deterministic_output(tmp_path, capsys):
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    assert main(["homology", "z4_as_cocycle_extension", "--output", str(p1)]) == 0
    assert main(["homology", "z4_as_cocycle_extension", "--output", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()
    capsys.readouterr()


def test_cli_e2_check_small(capsys):
    assert main(["e2-check", "klein_four", "--cap", "3"]) == 0
    capsys.readouterr()


def test_cli_resolution_check_small(capsys):
    assert main(["resolution-check", "z4_as_cocycle_extension", "--max-degree", "3"]) == 0
    capsys.readouterr()


def test_cli_tor_z2(tmp_path, capsys):
    out_path = tmp_path / "tor.json"
    assert main(["tor", "z2_trivial", "--output", str(out_path)]) == 0
    doc = json.loads(out_path.read_text())
    assert doc["sections"]["tor"]["tor_dims"] == [1, 1, 1, 1]
    capsys.readouterr()


def test_cli_cap_guard(capsys):
    assert main(["homology", "trivial", "--cap", "7"]) == 2
    capsys.readouterr()


def test_cli_field_override(capsys):
    assert main(["homology", "z2_trivial", "--field", "q", "--oracle"]) == 0
    out = capsys.readouterr().out
    assert "[2, 0, 0, 0]" in out
