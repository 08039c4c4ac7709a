"""End-to-end command-line behaviour, driven through ``main(argv)``."""

import shutil
import subprocess
from importlib import resources

import pytest

from crosscap.cli import DATA_DIR_ENV, main
from crosscap.surface import SurfaceSpec, standard_registry
from crosscap.twists import TwistGenerator, derive_generators, tables_text

F_EXPRESSION = "a3^-1 a2^-1 b a1^-1 a2^-1 a3^-1 e^-1 a3 a2 a1 b^-1 a2 a3"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def packaged(name):
    return (resources.files("crosscap") / "data" / name).read_text(encoding="utf-8")


# -- verify-theorem ------------------------------------------------------


def test_verify_theorem_passes_at_genus_four(capsys):
    code, out, err = run(capsys, "verify-theorem", "--genus", "4", "--n", "1")
    assert code == 0
    assert "[PASS] registry-validation" in out
    assert "[PASS] twist-suite" in out
    assert "[PASS] key-conjugation" in out
    assert "[PASS] certificate-f" in out
    assert "[PASS] homology-smoke" in out
    assert out.rstrip().endswith("verify-theorem: PASS (genus 4, n 1)")
    assert err == ""


def test_verify_theorem_skips_absent_optional_certificates(capsys):
    code, out, _ = run(capsys, "verify-theorem", "--genus", "4", "--n", "1")
    assert code == 0
    assert "[SKIP] certificate-c: no certificate provided" in out
    assert "[SKIP] certificate-y2: no certificate provided" in out


def test_verify_theorem_structured_output_is_byte_stable(capsys):
    argv = ("verify-theorem", "--genus", "4", "--n", "1", "--format", "structured")
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    lines = out1.splitlines()
    assert lines[0] == "stage=registry-validation status=PASS"
    assert "stage=certificate-c status=SKIPPED" in lines
    assert lines[-1] == "result=PASS"


def test_verify_theorem_needs_genus_four(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify-theorem", "--genus", "3", "--n", "1"])
    assert exc.value.code == 2


def test_closed_surface_runs_note_the_capping(capsys):
    code, _, err = run(capsys, "verify-theorem", "--genus", "4", "--n", "0")
    assert code == 0
    assert "caps the free side with a disk" in err


def test_garbage_twist_table_fails_at_the_twist_stage(tmp_path, capsys):
    bad = tmp_path / "corrupted.tbl"
    bad.write_text("[a1]\nx1 -> x1 x9\n", encoding="utf-8")
    code, out, _ = run(
        capsys,
        "verify-theorem", "--genus", "6", "--n", "1", "--twist-table", str(bad),
    )
    assert code == 1
    assert "[PASS] registry-validation" in out
    assert "[FAIL] twist-suite: twist table:" in out
    assert "verify-theorem: FAIL at stage twist-suite (genus 6, n 1)" in out


def test_flipped_arrow_table_is_caught_by_the_audit(tmp_path, capsys):
    reg = standard_registry(SurfaceSpec(4, 1))
    gens = derive_generators(reg)
    b = gens["b"]
    gens["b"] = TwistGenerator(b.name, b.curve, b.auto.inverse())
    table = tmp_path / "flipped.tbl"
    table.write_text(tables_text(gens, 4), encoding="utf-8")
    code, out, _ = run(
        capsys,
        "verify-theorem", "--genus", "4", "--n", "1", "--twist-table", str(table),
    )
    assert code == 1
    assert "table-audit b" in out
    assert "was an arrow flipped without regenerating?" in out
    assert "FAIL at stage twist-suite" in out


def test_missing_explicit_registry_fails_its_stage(capsys):
    code, out, _ = run(
        capsys,
        "verify-theorem", "--genus", "4", "--n", "1",
        "--registry", "/no/such/file.txt",
    )
    assert code == 1
    assert "[FAIL] registry-validation: registry:" in out


# -- relation ------------------------------------------------------------


def test_braid_relation_reports_equal(capsys):
    code, out, _ = run(capsys, "relation", "--genus", "4", "a1 a2 a1", "a2 a1 a2")
    assert code == 0
    assert out.strip() == "EQUAL"


def test_the_f_expression_matches_its_generator(capsys):
    code, out, _ = run(capsys, "relation", "--genus", "4", "f", F_EXPRESSION)
    assert code == 0
    assert out.strip() == "EQUAL"


def test_distinct_twists_report_unequal_with_a_witness(capsys):
    code, out, _ = run(capsys, "relation", "--genus", "4", "a1", "a2")
    assert code == 1
    assert out.strip() == "UNEQUAL (images first differ at x1)"
    code, out, _ = run(
        capsys, "relation", "--genus", "4", "a1", "a2", "--format", "structured"
    )
    assert code == 1
    assert out.strip() == "result=UNEQUAL first_difference=x1"


def test_relation_parse_errors_exit_two(capsys):
    code, _, err = run(capsys, "relation", "--genus", "4", "a1", "q7 a1")
    assert code == 2
    assert "error:" in err


# -- apply-curve and homology ---------------------------------------------


def test_apply_curve_fixes_the_twisting_curve(capsys):
    code, out, _ = run(capsys, "apply-curve", "--genus", "4", "a1", "alpha_1")
    assert code == 0
    assert out.strip() == "x1 x2"


def test_apply_curve_structured_uses_commas(capsys):
    code, out, _ = run(
        capsys,
        "apply-curve", "--genus", "4",
        "a3^-1 a2^-1 b a1^-1 a2^-1 a3^-1", "epsilon",
        "--format", "structured",
    )
    assert code == 0
    assert out.strip() == "class=x2^-1,x4^-1,x4^-1,x3^-1,x4^-1,x3^-1"


def test_apply_curve_unknown_name_exits_two(capsys):
    code, _, err = run(capsys, "apply-curve", "--genus", "4", "a1", "omega")
    assert code == 2
    assert "error:" in err


def test_homology_matrix_of_the_first_twist(capsys):
    code, out, _ = run(
        capsys, "homology", "--genus", "4", "a1", "--format", "structured"
    )
    assert code == 0
    assert out.strip() == "matrix=4;2,-1,0,0;1,0,0,0;0,0,1,0;0,0,0,1"


def test_homology_of_the_empty_expression_is_the_identity(capsys):
    code, out, _ = run(
        capsys, "homology", "--genus", "4", "", "--format", "structured"
    )
    assert code == 0
    assert out.strip() == "matrix=4;1,0,0,0;0,1,0,0;0,0,1,0;0,0,0,1"


# -- complement ------------------------------------------------------------


def test_complement_of_nothing_is_the_closed_surface(capsys):
    code, out, _ = run(
        capsys,
        "complement", "--curves", "", "--genus", "4", "--format", "structured",
    )
    assert code == 0
    assert out.strip() == "chi=-2 boundaries=0 orientable=0 disk=0"


def test_complement_of_the_chain_has_a_non_disk_piece(capsys):
    code, out, _ = run(
        capsys,
        "complement", "--curves", "alpha1..alpha4", "--genus", "5",
        "--format", "structured",
    )
    assert code == 0
    assert any(line.endswith("disk=0") for line in out.splitlines())


def test_complement_after_dropping_epsilon_has_a_non_disk_piece(capsys):
    code, out, _ = run(
        capsys,
        "complement", "--curves", "X0", "--drop", "epsilon", "--genus", "5",
        "--format", "structured",
    )
    assert code == 0
    assert any(line.endswith("disk=0") for line in out.splitlines())


def test_complement_range_equals_the_spelled_out_list(capsys):
    _, ranged, _ = run(
        capsys,
        "complement", "--curves", "alpha1..alpha3", "--genus", "4",
        "--format", "structured",
    )
    _, spelled, _ = run(
        capsys,
        "complement", "--curves", "alpha_1, alpha_2, alpha_3", "--genus", "4",
        "--format", "structured",
    )
    assert ranged == spelled


def test_complement_drop_must_name_a_selected_curve(capsys):
    code, _, err = run(
        capsys,
        "complement", "--curves", "alpha1..alpha3", "--drop", "beta", "--genus", "4",
    )
    assert code == 2
    assert "not in the selected set" in err


def test_complement_x0_token_needs_rich_genus(capsys):
    code, _, err = run(capsys, "complement", "--curves", "X0", "--genus", "3")
    assert code == 2
    assert "X0 needs genus >= 4" in err


def test_complement_text_report_totals_the_surface(capsys):
    code, out, _ = run(
        capsys, "complement", "--curves", "beta", "--genus", "4", "--n", "1"
    )
    assert code == 0
    assert "total euler characteristic: -3" in out


# -- validate-data ----------------------------------------------------------


def test_validate_data_passes_on_shipped_files(capsys):
    code, out, _ = run(
        capsys, "validate-data", "--genus", "5", "--format", "structured"
    )
    assert code == 0
    assert "check=registry status=PASS" in out
    assert "check=twist-tables status=PASS" in out
    assert "check=certificates status=PASS" in out
    assert out.splitlines()[-1] == "result=PASS"


def test_validate_data_flags_a_broken_certificate_file(tmp_path, capsys):
    bad = tmp_path / "certs.txt"
    bad.write_text("f | a1 a2\n", encoding="utf-8")
    code, out, _ = run(
        capsys, "validate-data", "--genus", "4", "--certificates", str(bad)
    )
    assert code == 1
    assert "[FAIL] certificates:" in out
    assert "validate-data: FAIL" in out


# -- data resolution ---------------------------------------------------------


def test_env_data_dir_wins_over_packaged_files(tmp_path, monkeypatch, capsys):
    text = packaged("twists_g4.txt").replace(
        "[a1]\nx1 -> x1 x1 x2", "[a1]\nx1 -> x2 x1 x1"
    )
    assert "x2 x1 x1" in text
    (tmp_path / "twists_g4.txt").write_text(text, encoding="utf-8")
    monkeypatch.setenv(DATA_DIR_ENV, str(tmp_path))
    code, out, _ = run(capsys, "verify-theorem", "--genus", "4", "--n", "1")
    assert code == 1
    assert "FAIL at stage twist-suite" in out


def test_genus_without_packaged_data_derives_in_memory(capsys):
    # nothing is shipped beyond genus 10, so this exercises the fallback
    code, out, _ = run(
        capsys, "validate-data", "--genus", "11", "--format", "text"
    )
    assert code == 0
    assert "derived in memory" in out


def test_genus_below_two_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["complement", "--curves", "", "--genus", "1"])
    assert exc.value.code == 2


# -- console script -----------------------------------------------------------


def test_the_installed_entry_point_works():
    exe = shutil.which("crosscap")
    assert exe, "console script 'crosscap' is not on PATH"
    proc = subprocess.run(
        [exe, "complement", "--curves", "", "--genus", "4", "--format", "structured"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "chi=-2 boundaries=0 orientable=0 disk=0"
