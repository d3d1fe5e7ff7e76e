"""
Tests for the lambda-equiv command line interface.
"""

import json
from pathlib import Path

import pytest

from lambda_equiv.cli import (
    EXIT_FUEL,
    EXIT_INPUT,
    EXIT_OK,
    EXIT_REJECTED,
    build_parser,
    format_step_depth,
    main,
)

GOLDEN = Path(__file__).parent / "golden"

OMEGA = "(\\x. x x) (\\x. x x)"


def _golden(name: str) -> str:
    return (GOLDEN / name).read_text()


# eq


def test_eq_identity_writes_golden_certificate(tmp_path, capsys):
    cert = tmp_path / "identity.json"
    assert main(["eq", "", "\\x. x", "\\x. x", "i -> i", "--cert", str(cert)]) == EXIT_OK
    assert capsys.readouterr().out == "equal\n"
    assert cert.read_text() == _golden("identity.cert.json")


def test_eq_eta_writes_golden_certificate(tmp_path, capsys):
    cert = tmp_path / "eta.json"
    code = main(["eq", "f:i->i", "f", "\\y. f y", "i -> i", "--cert", str(cert)])
    assert code == EXIT_OK
    assert cert.read_text() == _golden("eta.cert.json")


def test_eq_not_equivalent(tmp_path, capsys):
    cert = tmp_path / "never.json"
    code = main(["eq", "", "\\x.\\y. x", "\\x.\\y. y", "i -> i -> i", "--cert", str(cert)])
    assert code == EXIT_REJECTED
    assert capsys.readouterr().out == "not equivalent\n"
    assert not cert.exists()


@pytest.mark.parametrize(
    "argv",
    [
        ["eq", "", "\\x. x", "\\x. x", "i"],
        ["eq", "", "y", "y", "i"],
        ["eq", "", "(\\x. x) (\\x. x)", "(\\x. x) (\\x. x)", "i"],
        ["eq", "x:i", "x )", "x", "i"],
        ["eq", "x:i, x:i", "x", "x", "i"],
        ["eq", "", "\\x. x", "\\x. x", "i ->"],
    ],
)
def test_eq_input_errors(argv, capsys):
    assert main(argv) == EXIT_INPUT
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("error: ")


def test_eq_out_of_fuel(capsys):
    code = main(["eq", "z:i", "(\\x. x) ((\\x. x) z)", "z", "i", "--fuel", "1"])
    assert code == EXIT_FUEL
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "--fuel" in captured.err


def test_eq_json_output(capsys):
    assert main(["eq", "", "\\x. x", "\\x. x", "i -> i", "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"] == "equal"
    assert payload["certificate"] == json.loads(_golden("identity.cert.json"))


# verify


@pytest.mark.parametrize("name", ["identity.cert.json", "eta.cert.json", "beta.cert.json"])
def test_verify_golden_certificates(name, capsys):
    assert main(["verify", str(GOLDEN / name)]) == EXIT_OK
    assert capsys.readouterr().out == "valid\n"


def test_verify_rejects_deleted_trace_step(tmp_path, capsys):
    node = json.loads(_golden("identity.cert.json"))
    node["body"]["left-trace"] = []
    cert = tmp_path / "broken.json"
    cert.write_text(json.dumps(node))
    assert main(["verify", str(cert)]) == EXIT_REJECTED
    assert capsys.readouterr().out == "invalid\n"


def test_verify_rejects_wrong_variable(tmp_path):
    node = json.loads(_golden("eta.cert.json"))
    node["body"]["paths"]["fun"]["index"] = 0
    cert = tmp_path / "broken.json"
    cert.write_text(json.dumps(node))
    assert main(["verify", str(cert)]) == EXIT_REJECTED


def test_verify_malformed_files(tmp_path, capsys):
    empty = tmp_path / "empty.json"
    empty.write_text("")
    assert main(["verify", str(empty)]) == EXIT_INPUT
    assert str(empty) in capsys.readouterr().err
    assert main(["verify", str(tmp_path / "missing.json")]) == EXIT_INPUT


def test_verify_json_output(capsys):
    assert main(["verify", str(GOLDEN / "eta.cert.json"), "--json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {"result": "valid"}


def test_verify_unparsable_inner_statement(tmp_path, capsys):
    node = json.loads(_golden("identity.cert.json"))
    node["body"]["stmt"]["left"] = ")))"
    cert = tmp_path / "broken.json"
    cert.write_text(json.dumps(node))
    assert main(["verify", str(cert)]) == EXIT_INPUT
    assert capsys.readouterr().out == ""


def test_verify_rejects_edited_inner_statement(tmp_path, capsys):
    node = json.loads(_golden("identity.cert.json"))
    node["body"]["stmt"]["right"] = "x"
    cert = tmp_path / "broken.json"
    cert.write_text(json.dumps(node))
    assert main(["verify", str(cert)]) == EXIT_REJECTED
    assert capsys.readouterr().out == "invalid\n"


@pytest.mark.parametrize("command", ["verify", "translate"])
def test_deeply_nested_file_is_malformed(command, tmp_path, capsys):
    deep = tmp_path / "deep.json"
    deep.write_text("[" * 200_000)
    assert main([command, str(deep)]) == EXIT_INPUT
    assert "nested too deeply" in capsys.readouterr().err


# translate


def test_translate_variable(capsys):
    assert main(["translate", str(GOLDEN / "var.decl.json")]) == EXIT_OK
    assert capsys.readouterr().out == _golden("var.cert.json") + "\n"


def test_translate_beta_to_file(tmp_path, capsys):
    cert = tmp_path / "beta.json"
    assert main(["translate", str(GOLDEN / "beta.decl.json"), "--cert", str(cert)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert cert.read_text() == _golden("beta.cert.json")


def test_translate_rejects_mismatched_middle(capsys):
    assert main(["translate", str(GOLDEN / "mismatch.decl.json")]) == EXIT_REJECTED
    assert capsys.readouterr().out == "invalid derivation\n"


def test_translate_malformed_file(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"rule": "dec-frob"}')
    assert main(["translate", str(broken)]) == EXIT_INPUT


def test_translate_rejects_edited_inner_statement(tmp_path, capsys):
    node = json.loads(_golden("beta.decl.json"))
    node["arg"]["stmt"] |= {"ctx": "x:i, y:i", "left": "y", "right": "y"}
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(node))
    assert main(["translate", str(broken)]) == EXIT_REJECTED
    assert capsys.readouterr().out == "invalid derivation\n"


def test_translated_certificate_verifies(tmp_path):
    cert = tmp_path / "beta.json"
    main(["translate", str(GOLDEN / "beta.decl.json"), "--cert", str(cert)])
    assert main(["verify", str(cert)]) == EXIT_OK


# whnf


def test_whnf_prints_trace(capsys):
    assert main(["whnf", "z:i", "(\\x. x) z"]) == EXIT_OK
    assert capsys.readouterr().out == "z\nbeta\n"


def test_whnf_stops_at_lambda(capsys):
    assert main(["whnf", "", "\\x. (\\y. y) x"]) == EXIT_OK
    assert capsys.readouterr().out == "\\x. (\\y. y) x\n"


def test_whnf_reduces_under_applications(capsys):
    assert main(["whnf", "f:i -> i -> i, z:i", "(\\x. f x) z z"]) == EXIT_OK
    assert capsys.readouterr().out == "f z z\napp-left^1 beta\n"


def test_whnf_out_of_fuel(capsys):
    assert main(["whnf", "", OMEGA, "--fuel", "50"]) == EXIT_FUEL
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "50" in captured.err


def test_whnf_parse_error(capsys):
    assert main(["whnf", "", "\\x."]) == EXIT_INPUT
    assert "line 1, column 4" in capsys.readouterr().err


def test_whnf_json_output(capsys):
    assert main(["whnf", "z:i", "(\\x. x) z", "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload == {"normal-form": "z", "trace": [{"depth": 0}]}


# Parser


def test_format_step_depth():
    assert format_step_depth(0) == "beta"
    assert format_step_depth(2) == "app-left^2 beta"


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_default_fuel():
    args = build_parser().parse_args(["whnf", "", "x"])
    assert args.fuel == 10_000
    assert not args.json
