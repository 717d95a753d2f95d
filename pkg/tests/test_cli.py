import io
import json

from blockzeta.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestConversions:
    def test_decompose(self, capsys):
        code, out, _ = invoke(capsys, "decompose", "010100111010101")
        assert code == 0 and out.strip() == "(0; 5,2,1,7)"

    def test_word(self, capsys):
        code, out, _ = invoke(capsys, "word", "(0; 5,2,1,7)")
        assert code == 0 and out.strip() == "010100111010101"

    def test_mzv_both_ways(self, capsys):
        code, out, _ = invoke(capsys, "mzv", "z(1,3)")
        assert code == 0 and out.strip() == "011001 sign +1"
        code, out, _ = invoke(capsys, "mzv", "011001")
        assert code == 0 and out.strip() == "z(1,3) sign +1"

    def test_regularise(self, capsys):
        code, out, _ = invoke(capsys, "regularise", "0010111")
        assert code == 0
        assert out.strip() == "(6)*z(1,4) + (2)*z(2,3) + (1)*z(3,2)"

    def test_parse_error_exit_2(self, capsys):
        code, _, err = invoke(capsys, "decompose", "01x1")
        assert code == 2 and "error" in err


class TestGenerateVerify:
    def test_generate_json_schema(self, capsys):
        code, out, _ = invoke(
            capsys, "generate", "cyclic-full", "--lengths", "1,1,2,3"
        )
        assert code == 0
        data = json.loads(out)
        assert data["family"] == "cyclic-full" and data["weight"] == 5
        assert {item["term_kind"] for item in data["lhs"]} == {"word"}

    def test_pipe_generate_verify(self, capsys, monkeypatch):
        code, out, _ = invoke(
            capsys, "generate", "cyclic-full", "--lengths", "1,1,2,3"
        )
        monkeypatch.setattr("sys.stdin", io.StringIO(out))
        code, out, _ = invoke(capsys, "verify", "--digits", "30")
        assert code == 0 and "[verified]" in out

    def test_verify_family_flag(self, capsys):
        code, out, _ = invoke(
            capsys, "verify", "--family", "hoffman", "--b", "0,0,1",
            "--digits", "30", "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["status"] == "verified"

    def test_refuted_exit_1(self, capsys, monkeypatch):
        bogus = {
            "family": "cyclic-basic",
            "params": {},
            "weight": 2,
            "lhs": [
                {
                    "term_kind": "zeta",
                    "term": "z(2)",
                    "coeff_num": "1",
                    "coeff_den": "1",
                    "pi_exp": 0,
                }
            ],
            "rhs": {"num": "0", "den": "1", "pi_exp": 0},
        }
        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(bogus)))
        code, out, _ = invoke(capsys, "verify", "--digits", "20")
        assert code == 1 and "[refuted]" in out

    def test_usage_error_exit_2(self, capsys):
        assert run(["generate"]) == 2 or run(["nonsense"]) == 2


class TestKernelAndTable:
    def test_dkernel_closure(self, capsys):
        code, out, _ = invoke(
            capsys, "dkernel", "--lengths", "2,3,3", "--set", "closure"
        )
        assert code == 0 and "rational multiple of zeta(6)" in out

    def test_dkernel_cyclic_collapse_json(self, capsys):
        code, out, _ = invoke(
            capsys, "dkernel", "--lengths", "2,10,3,2", "--set", "cyclic",
            "--grade", "7", "--collapse", "--format", "json",
        )
        assert code == 0
        data = json.loads(out)
        assert data["vanishes"] is False
        assert len(data["residue"]) == 4
        assert {item["right_word"] for item in data["residue"]} == {"0101010101"}

    def test_table_row(self, capsys):
        code, out, _ = invoke(capsys, "table", "--weight", "4")
        assert code == 0
        assert "cyclic 5/3" in out and "overall 3" in out and "expected 3" in out

    def test_rank_subset_json(self, capsys):
        code, out, _ = invoke(
            capsys, "rank", "--weight", "5", "--families", "duality",
            "--format", "json",
        )
        assert code == 0
        data = json.loads(out)
        assert data["duality"] == {"init": 8, "rank": 4}
        assert "cyclic" not in data
