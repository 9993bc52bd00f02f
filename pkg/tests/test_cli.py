"""
命令行入口测试：退出码与输出
"""
import json
import logging

import pytest

from main import main


def _run_json(capsys, argv):
    code = main(["--json"] + argv)
    report = json.loads(capsys.readouterr().out)
    assert report["exit_code"] == code
    return code, report


# ============================================================================
# 语法与证明
# ============================================================================

class TestProofCommands:
    def test_translate(self, capsys):
        code, report = _run_json(capsys, ["translate", "--to-modal", "A x P0(x)"])
        assert code == 0
        assert report["text"] == "□p0"
        assert report["data"]["output"] == "box p0"

    def test_translate_back(self, capsys):
        code, report = _run_json(capsys, ["translate", "--to-fo", "dia p1 * p0"])
        assert code == 0
        assert report["data"]["output"].startswith("E x P1(x)")

    def test_prove_refuted(self, capsys):
        code, report = _run_json(capsys, ["prove", "P0(x) |- P0(x) * P0(x)"])
        assert code == 1
        assert report["status"] == "not_derivable"

    def test_prove_with_contraction(self, capsys):
        code, report = _run_json(capsys, ["prove", "--calc", "flec", "P0(x) |- P0(x) * P0(x)"])
        assert code == 0
        assert report["data"]["derivation"]["rule"] == "c"

    def test_prove_exhausted(self, capsys):
        assert main(["prove", "--calc", "flec", "P0(x) |- P1(x)"]) == 2

    def test_interpolate(self, capsys):
        code, report = _run_json(capsys, ["interpolate", "A x P0(x) |- P0(x1)", "--gamma", "0"])
        assert code == 0
        assert report["data"]["chi"] == "e * A x P0(x)"
        assert report["data"]["md1"] <= report["data"]["md"]

    def test_interpolate_input_order(self, capsys):
        code, report = _run_json(capsys, ["interpolate", "--calc", "flew", "P1(x1), A x P0(x) |- P1(x1)", "--gamma", "1"])
        assert code == 0
        assert report["data"]["gamma"] == ["A x P0(x)"]

    def test_interpolate_bad_gamma(self, capsys):
        assert main(["interpolate", "A x P0(x) |- P0(x1)", "--gamma", "3"]) == 3

    def test_proof_file_roundtrip(self, capsys, tmp_path):
        out = tmp_path / "proof.json"
        assert main(["prove", "P0(x), P1(x) |- P0(x) * P1(x)", "--out", str(out)]) == 0
        assert main(["check-proof", str(out)]) == 0

        data = json.loads(out.read_text(encoding="utf-8"))
        data["premises"][0]["rule"] = "=>e"
        out.write_text(json.dumps(data), encoding="utf-8")
        capsys.readouterr()
        code, report = _run_json(capsys, ["check-proof", str(out)])
        assert code == 1
        assert report["status"] == "invalid"
        assert report["data"]["path"] == [0]


# ============================================================================
# 代数与后承
# ============================================================================

class TestAlgebraCommands:
    def test_check_algebra_refutes_equation(self, capsys, data_dir):
        code = main([
            "check-algebra", str(data_dir / "l3_example.json"),
            "--m-axioms", "--equation", "dia p0 * dia p0 = dia (p0*p0)",
        ])
        out = capsys.readouterr().out
        assert code == 1
        assert "p0 = 1/2" in out
        assert "□A = {0, 1}" in out

    def test_check_algebra_defaults(self, capsys):
        code, report = _run_json(capsys, ["check-algebra", "diamond"])
        assert code == 0
        assert report["status"] == "passed"
        assert report["data"]["lattice"]["passed"]
        assert "m_axioms" not in report["data"]

    def test_expansions(self, capsys):
        code, report = _run_json(capsys, ["expansions", "l3"])
        assert code == 0
        assert report["data"]["count"] == 2

    def test_expansions_written(self, capsys, tmp_path):
        assert main(["expansions", "l3", "--out-dir", str(tmp_path)]) == 0
        assert len(list(tmp_path.glob("*.json"))) == 2

    def test_consequence_holds(self, capsys):
        code, report = _run_json(capsys, ["consequence", "--gen", "l3-example", "box p0 <= p0"])
        assert code == 0
        assert report["status"] == "holds"

    def test_consequence_with_premise(self, capsys):
        argv = ["consequence", "--gen", "fle:3", "--premise", "p0 = e", "box p0 = e"]
        assert main(argv) == 0

    def test_fo_countermodel(self, capsys):
        code, report = _run_json(capsys, ["countermodel", "--mode", "fo", "--gen", "boolean", "A x P0(x) = P0(x)"])
        assert code == 1
        assert report["data"]["countermodel"]["interpretation"] == {"P0": [0, 1]}

    def test_fo_via_modal_agrees(self, capsys):
        argv = ["countermodel", "--mode", "fo", "--via-modal", "--gen", "boolean", "A x P0(x) = P0(x)"]
        assert main(argv) == 1

    def test_embed(self, capsys):
        assert main(["embed", "l3-example", "--gen", "l3", "--max-worlds", "2"]) == 1
        assert main(["embed", "l3-example", "--gen", "l3", "--max-worlds", "2", "--ops", "and,or"]) == 0

    def test_suite(self, capsys):
        assert main(["suite", "roundtrip", "--count", "20"]) == 0
        assert main(["suite", "interpolation", "--count", "10", "--calc", "flew", "--bridge-size", "1"]) == 0


# ============================================================================
# 输入错误
# ============================================================================

class TestInputErrors:
    @pytest.mark.parametrize("argv", [
        ["prove"],
        ["prove", "P0(x) |- P0(x) * "],
        ["translate", "--to-modal", "box p0"],
        ["check-algebra", "no/such/file.json"],
        ["check-proof", "no/such/proof.json"],
        ["consequence", "--gen", "nonsense:3", "box p0 <= p0"],
        ["prove", "--contractions", "0", "P0(x) |- P0(x)"],
    ])
    def test_exit_code_three(self, argv, capsys):
        assert main(argv) == 3

    def test_error_report_is_json(self, capsys):
        code, report = _run_json(capsys, ["translate", "--to-fo", "P0(x)"])
        assert code == 3
        assert "error" in report["data"]


def test_log_level_override(capsys):
    from monolat.utils.logger import logger, set_level
    try:
        assert main(["--log-level", "DEBUG", "translate", "--to-modal", "P0(x)"]) == 0
        assert logger.level == logging.DEBUG
    finally:
        set_level("INFO")
    assert main(["--log-level", "LOUD", "translate", "--to-modal", "P0(x)"]) == 3
