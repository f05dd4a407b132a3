from majorant_lab.cli import main


def test_rho_subcommand(capsys):
    assert main(["rho", "--poly", "1,0,1", "--modulus", "65"]) == 0
    assert capsys.readouterr().out.strip() == "4"


def test_rho_human_form(capsys):
    assert main(["rho", "--poly", "x^2+1", "--modulus", "5"]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_disc_subcommand(capsys):
    assert main(["disc", "--system", "x;x+5"]) == 0
    out = capsys.readouterr().out
    assert "D*=25" in out and "g=2" in out


def test_delta_subcommand(capsys):
    assert main(["delta", "--system", "1,0,1", "--function", "tau"]) == 0
    out = capsys.readouterr().out
    assert "delta_k1 = 2" in out


def test_lhs_subcommand(capsys):
    assert main(["lhs", "--system", "0,1", "--function", "tau",
                 "--x", "0", "--y", "10"]) == 0
    assert capsys.readouterr().out.strip() == "27"


def test_bound_subcommand(capsys):
    rc = main(["bound", "--system", "1,0,1", "--function", "tau",
               "--x", "1000", "--y", "100", "--variant", "main",
               "--mode", "float"])
    assert rc == 0
    assert "main = " in capsys.readouterr().out


def test_validation_exit_code(capsys):
    rc = main(["bound", "--system", "1,0,1", "--function", "tau",
               "--x", "1000", "--y", "5"])
    assert rc == 2
    assert "hypotheses violated" in capsys.readouterr().err


def test_ratio_subcommand(tmp_path, capsys):
    out = tmp_path / "r.csv"
    rc = main(["ratio", "--family", "shifted_pairs", "--ells", "1..3",
               "--function", "tau", "--x", "300", "--variants", "holowinsky",
               "--out", str(out)])
    assert rc == 0
    assert out.exists()


def test_ratio_spread_threshold_exit(tmp_path):
    rc = main(["ratio", "--family", "shifted_pairs", "--ells", "1..6",
               "--function", "tau", "--x", "300", "--variants", "holowinsky",
               "--max-spread", "1.000001"])
    assert rc == 3


def test_config_file_with_cli_override(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("system = 0,1\nfunction = tau\nx = 0\ny = 10\n")
    assert main(["lhs", "--config", str(cfg)]) == 0
    assert capsys.readouterr().out.strip() == "27"
    assert main(["lhs", "--config", str(cfg), "--y", "5"]) == 0
    assert capsys.readouterr().out.strip() == "10"  # tau sum over n <= 5


def test_sweep_subcommand(capsys):
    assert main(["sweep", "--x", "300", "--ells", "1..4"]) == 0
    assert "holowinsky" in capsys.readouterr().out


def test_lemmas_subcommand(capsys):
    rc = main(["lemmas", "--system", "x;x+2", "--function", "tau",
               "--z", "40", "--prime-bound", "60"])
    assert rc == 0
    assert "smooth_vs_bounded" in capsys.readouterr().out
