import json

import pytest

from groupword.cli import main
from groupword.specdsl import parse_group_spec, parse_outer_spec


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


class TestGroupSpecDSL:
    def test_families(self):
        assert parse_group_spec("sym:4").order == 24
        assert parse_group_spec("alt:5").order == 60
        assert parse_group_spec("cyc:30").order == 30
        assert parse_group_spec("dih:12").order == 12
        assert parse_group_spec("sl2:5").order == 120
        assert parse_group_spec("psl2:7").order == 168
        assert parse_group_spec("pgl2:9").order == 720
        assert parse_group_spec("pgammal2:9").order == 1440
        assert parse_group_spec("hadamard:2").order == 4
        assert parse_group_spec("ex35:2").degree == 36

    def test_compound(self):
        assert parse_group_spec("prod(alt:5,alt:5)").order == 3600
        assert parse_group_spec("regular(sym:3)").degree == 6
        assert parse_group_spec("wreath(alt:5,5,alt:5)").order == 60**6
        assert parse_group_spec("prod(prod(cyc:2,cyc:3),cyc:5)").order == 30

    def test_perm_spec(self):
        G = parse_group_spec("perm:5:(1 2);(1 2 3 4 5)")
        assert G.order == 120

    def test_bad_specs(self):
        with pytest.raises(ValueError):
            parse_group_spec("nope:3")
        with pytest.raises(ValueError):
            parse_group_spec("prod(sym:3")

    def test_outer_spec(self):
        assert parse_outer_spec("psl2:27", "1,2") == (1, 2)
        assert parse_outer_spec("alt:5", "1") == 1


class TestCLI:
    def test_lambda_sym5(self, capsys):
        code, rep = run_cli(capsys, "lambda", "--group", "sym:5")
        assert code == 0
        assert rep["result"]["lambda"] == 1

    def test_wmb_witness(self, capsys):
        code, rep = run_cli(capsys, "wmb", "--word", "x^12", "--simple", "psl2:27")
        assert code == 0
        assert rep["result"]["witness"] == [[1, 1]]

    def test_identity(self, capsys):
        code, rep = run_cli(capsys, "identity", "--word", "x^30",
                            "--group", "alt:5")
        assert code == 0 and rep["result"]["verdict"] is True

    def test_prob_identity(self, capsys):
        code, rep = run_cli(capsys, "identity", "--word", "x y x^-1 y^-1",
                            "--group", "sym:3", "--rho", "1/2")
        assert code == 0
        assert rep["result"]["verdict"] is True
        assert rep["result"]["p_max"] == {"num": "1", "den": "2"}

    def test_fibers_exact(self, capsys):
        code, rep = run_cli(capsys, "fibers", "--word", "x y x^-1 y^-1",
                            "--group", "sym:3", "--exact")
        assert code == 0
        assert rep["result"]["argmax"]["proportion"] == {"num": "1", "den": "2"}

    def test_fibers_estimate_deterministic(self, capsys):
        args = ("--seed", "11", "fibers", "--word", "x^2", "--group", "sym:5",
                "--samples", "500")
        code1, rep1 = run_cli(capsys, *args)
        code2, rep2 = run_cli(capsys, *args)
        assert code1 == code2 == 0
        assert rep1 == rep2

    def test_coset(self, capsys):
        code, rep = run_cli(capsys, "coset", "--word", "x^8",
                            "--simple", "psl2:9", "--outer", "1,1")
        assert code == 0 and rep["result"]["verdict"] is True

    def test_bad_scan(self, capsys):
        code, rep = run_cli(capsys, "bad-scan", "--exponent", "12",
                            "--catalog", "psl2:27")
        assert code == 0
        assert 12 in rep["result"]["witnessed_bad"]

    def test_perm_stats(self, capsys):
        code, rep = run_cli(capsys, "perm-stats", "--group", "sym:3")
        assert code == 0
        r = rep["result"]
        assert r["t"] == 1 and r["r"] == 2
        assert all(r["verdicts"].values())

    def test_radical_socle(self, capsys):
        code, rep = run_cli(capsys, "radical", "--group", "sl2:5")
        assert code == 0 and rep["result"]["order"] == 2
        code, rep = run_cli(capsys, "socle", "--group", "sym:4")
        assert code == 0 and rep["result"]["order"] == 4

    def test_perm_part(self, capsys):
        code, rep = run_cli(capsys, "perm-part", "--group",
                            "prod(alt:5,alt:5)")
        assert code == 0
        assert rep["result"]["order"] == 1 and rep["result"]["n_factors"] == 2

    def test_budget_exit_code(self, capsys):
        code = main(["lambda", "--group", "wreath(alt:5,5,alt:5)",
                     "--engine", "enum"])
        assert code == 2

    def test_usage_exit_code(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["lambda"])
        assert exc.value.code == 1

    def test_bad_word_exit_code(self, capsys):
        code = main(["identity", "--word", "x^0", "--group", "sym:3"])
        assert code == 1

    def test_byte_determinism(self, capsys):
        outs = []
        for t in ("1", "2", "8"):
            code = main(["--threads", t, "fibers", "--word", "x y x^-1 y^-1",
                         "--group", "alt:4", "--exact"])
            assert code == 0
            outs.append(capsys.readouterr().out)
        assert len(set(outs)) == 1

    def test_verify_paper_filtered(self, capsys):
        code = main(["verify-paper", "--filter", "fiber-exactness"])
        captured = capsys.readouterr()
        assert code == 0
        rep = json.loads(captured.out)
        assert rep["result"]["run"] == 1
        assert "PASS" in captured.err

    def test_verify_paper_empty_filter_match(self, capsys):
        code = main(["verify-paper", "--filter", "zzz-no-match"])
        rep = json.loads(capsys.readouterr().out)
        assert code == 0 and rep["result"]["run"] == 0

    def test_text_mode(self, capsys):
        code = main(["--text", "group", "--group", "sym:3"])
        out = capsys.readouterr().out
        assert code == 0 and "order: 6" in out
