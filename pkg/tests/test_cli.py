"""End-to-end command-line behavior: outputs, formats, and exit codes."""
import json

import pytest

from hilb2.cli import (
    EXIT_BAD_INPUT,
    EXIT_CAP,
    EXIT_CHECK_FAILED,
    EXIT_NONABELIAN,
    EXIT_OK,
    main,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_construct_text_z2(capsys):
    code, out, err = run(capsys, "construct", "--group", "Z2")
    assert code == EXIT_OK
    assert err == ""
    assert "|J| = 8" in out
    assert "|H| = 4" in out
    assert "sign splitting: ok" in out
    assert "fibers 8/4/4; orbit counts 2/2/2" in out
    assert "T[0] size 4 fixed yes" in out
    assert "T[1] size 4 fixed yes" in out


def test_construct_text_trivial_group(capsys):
    code, out, _ = run(capsys, "construct", "--group", "Z1")
    assert code == EXIT_OK
    assert "|J| = 2" in out
    assert "|H| = 2" in out
    assert "fibers 2/1/1; orbit counts 1/1/1" in out


def test_construct_json_z3(capsys):
    code, out, _ = run(
        capsys, "construct", "--group", "Z3", "--format", "json"
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["schema_version"] == 1
    assert payload["command"] == "construct"
    result = payload["results"][0]
    assert result["group"] == "Z3"
    assert result["group_order"] == 3
    assert result["pair_group_order"] == 18
    assert result["intermediate_group_order"] == 6
    assert result["sign_splitting_ok"] is True
    assert [f["orbit_count"] for f in result["fibers"]] == [3, 3, 3]
    assert [c["fixed"] for c in result["components"]] == [True, False, False]


def test_construct_nonabelian_group(capsys):
    code, out, err = run(capsys, "construct", "--group", "S3")
    assert code == EXIT_NONABELIAN
    assert out == ""
    assert "error:" in err


def test_construct_unknown_group(capsys):
    code, _, err = run(capsys, "construct", "--group", "Zx")
    assert code == EXIT_BAD_INPUT
    assert "error:" in err


def test_construct_cap_exceeded(capsys):
    code, out, err = run(
        capsys, "construct", "--group", "Z4", "--group-cap", "5"
    )
    assert code == EXIT_CAP
    assert out == ""
    assert "error:" in err


def test_construct_rejects_zero_cap(capsys):
    code, _, err = run(
        capsys, "construct", "--group", "Z2", "--group-cap", "0"
    )
    assert code == EXIT_BAD_INPUT
    assert "positive" in err


def test_env_cap_applies(capsys, monkeypatch):
    monkeypatch.setenv("HILB2_CAP", "5")
    code, _, _ = run(capsys, "construct", "--group", "Z4")
    assert code == EXIT_CAP
    code, _, _ = run(capsys, "construct", "--group", "Z4", "--group-cap",
                     "20000")
    assert code == EXIT_OK


def test_env_cap_must_be_integer(capsys, monkeypatch):
    monkeypatch.setenv("HILB2_CAP", "many")
    code, _, err = run(capsys, "construct", "--group", "Z2")
    assert code == EXIT_BAD_INPUT
    assert "HILB2_CAP" in err


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify", "--catalog", "cyclic-2")
    assert code == EXIT_OK
    assert "covers of Hilb2(cyclic-2)" in out
    assert "pi1^ab upstairs: Z2" in out
    assert "2 cover(s)" in out


def test_classify_json(capsys):
    code, out, _ = run(
        capsys, "classify", "--catalog", "cyclic-4", "--format", "json"
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["schema_version"] == 1
    assert len(payload["results"]) == 3
    assert all(r["type"] == "cover" for r in payload["results"])
    assert [r["degree"] for r in payload["results"]] == [1, 2, 4]


def test_classify_unknown_catalog(capsys):
    code, _, err = run(capsys, "classify", "--catalog", "mystery")
    assert code == EXIT_BAD_INPUT
    assert "error:" in err


def test_classify_infinite_abelianization(capsys):
    code, _, err = run(capsys, "classify", "--presentation", "< a | >")
    assert code == EXIT_BAD_INPUT
    assert "rank" in err


def test_classify_bad_presentation(capsys):
    code, _, err = run(capsys, "classify", "--presentation", "< a | a^ >")
    assert code == EXIT_BAD_INPUT
    assert "error:" in err


def test_hodge_text(capsys):
    code, out, _ = run(capsys, "hodge", "1,0,1")
    assert code == EXIT_OK
    assert "(1,0,1,0,1) ISV: yes" in out
    assert "surface (1,0,1) ISV: yes" in out
    code, out, _ = run(capsys, "hodge", "1,2,1")
    assert "(1,2,2,2,1) ISV: no" in out


def test_hodge_json(capsys):
    code, out, _ = run(capsys, "hodge", "1,4,1", "--format", "json")
    assert code == EXIT_OK
    result = json.loads(out)["results"][0]
    assert result["output"] == [1, 4, 7, 4, 1]
    assert result["hilb_isv"] is False


def test_hodge_bad_vectors(capsys):
    for vector in ("1,x,1", "1,0", "1,-1,1", "2,0,1"):
        code, out, err = run(capsys, "hodge", vector)
        assert code == EXIT_BAD_INPUT, vector
        assert out == ""
        assert "error:" in err


def test_missing_subcommand_is_bad_input(capsys):
    code, _, _ = run(capsys)
    assert code == EXIT_BAD_INPUT


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == EXIT_OK
    assert ", 0 failed, 0 skipped" in out
    assert "FAIL" not in out


def test_verify_inject_fault(capsys):
    code, out, _ = run(capsys, "verify", "--inject-fault")
    assert code == EXIT_CHECK_FAILED
    assert "FAIL" in out


def test_verify_tight_cap_skips(capsys):
    code, out, _ = run(capsys, "verify", "--group-cap", "4")
    assert code == EXIT_OK
    assert "skip" in out
    assert "0 failed" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--format", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["schema_version"] == 1
    assert payload["command"] == "verify"
    statuses = {r["status"] for r in payload["results"]}
    assert statuses == {"ok"}
