import pytest

from homlie.cli import comparable, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def body(out):
    return dict(line.split(" = ", 1) for line in comparable(out))


def test_tensor_trivial_abelian(capsys):
    code, out = run(capsys, "tensor", "F.ab(2)", "F.ab(3)", "-M", "A2", "-N", "A3", "--trivial", "--format", "machine")
    b = body(out)
    assert code == 0
    assert b["dim"] == "6" and b["bracket.nonzero"] == "0"


def test_uce_not_perfect_exit_3(capsys):
    code, out = run(capsys, "uce", "F.heis3", "-a", "Q", "--format", "machine")
    assert code == 3
    assert body(out)["error"].startswith("NotPerfect")


def test_uce_sl2(capsys):
    code, out = run(capsys, "uce", "F.sl2", "-a", "sl2", "--format", "machine")
    assert code == 0 and body(out)["h2.dim"] == "0"


def test_incompatible_pair_exit_3(capsys):
    code, _ = run(capsys, "tensor", "F.perfpair", "-M", "M", "-N", "N")
    assert code == 3


def test_catalog_run_paper_failure_exit_2(capsys):
    code, out = run(capsys, "catalog", "run", "F.gh3", "--format", "machine")
    b = body(out)
    assert code == 2
    assert b["F.gh3/ncl(G*H).verdict"] == "fail"
    assert b["F.gh3/ncl(G*H).tag"] == "PAPER"


def test_catalog_run_clean_fixture(capsys):
    code, _ = run(capsys, "catalog", "run", "F.heis3")
    assert code == 0


def test_unknown_fixture_exit_4(capsys):
    code, out = run(capsys, "catalog", "show", "F.missing")
    assert code == 4 and "UnknownFixture" in out


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.hl"
    bad.write_text("algebra A { dim 2; bracket(2,2) = [0,0]; }\n")
    assert run(capsys, "validate", str(bad))[0] == 4
    assert run(capsys, "validate", str(tmp_path / "missing.hl"))[0] == 4


def test_file_source_info_and_subspace_tensor(tmp_path, capsys):
    f = tmp_path / "h.hl"
    f.write_text("algebra Q { dim 3; bracket(1,2) = [0,0,1]; }\nsubspace Z in Q { vec = [0,0,1]; }\n")
    code, out = run(capsys, "info", str(f), "-a", "Q", "--format", "machine")
    b = body(out)
    assert code == 0 and b["nilpotency_class"] == "2" and b["center"] == "span{a3}"
    code, out = run(capsys, "tensor", str(f), "-M", "Q", "-N", "Z", "--format", "machine")
    assert code == 0 and body(out)["dim"] == "3"


def test_validate_reports_witness(capsys):
    code, out = run(capsys, "validate", "F.perfpair", "--format", "machine")
    b = body(out)
    assert code == 0
    assert b["pair.M,N.compatible"] == "false"


def test_check_suites(capsys):
    code, out = run(capsys, "check", "F.sl2", "-s", "omega", "--format", "machine")
    assert code == 0 and body(out)["omega.sl2.omega_square"] == "pass"
    code, out = run(capsys, "check", "F.weak2", "--format", "machine")
    assert code == 0
    assert body(out)["bounds.M*M.solvability.NM"].startswith("pass")


def test_report_and_compare(tmp_path, capsys):
    rep = tmp_path / "r.txt"
    code, _ = run(capsys, "info", "F.nil4", "-a", "M", "--report", str(rep))
    assert code == 0
    assert rep.read_text().startswith("# homlie")
    assert run(capsys, "info", "F.nil4", "-a", "M", "--compare", str(rep))[0] == 0
    rep.write_text(rep.read_text().replace("nilpotency_class = non_nilpotent", "nilpotency_class = 3"))
    assert run(capsys, "info", "F.nil4", "-a", "M", "--compare", str(rep))[0] == 1


def test_engel_bound_flag(capsys):
    _, out = run(capsys, "info", "F.heis3", "-a", "Q", "--engel-bound", "1", "--format", "machine")
    assert body(out)["engel_class"] == "not_within_bound(K=1)"


def test_human_format_is_aligned(capsys):
    _, out = run(capsys, "catalog", "list")
    rows = comparable(out)
    assert "F.der4" in rows[0] and "=" not in rows[0].split()[1]


def test_missing_subcommand():
    with pytest.raises(SystemExit):
        main([])
