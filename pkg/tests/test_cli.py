import json
import shutil
import subprocess
import sys

import pytest

from chainsemi import maps
from chainsemi.cli import main, parse_range
from chainsemi.report import CLAIMS, REGISTRY, Config, expected_rstar_witness, verify
from chainsemi.families import FamilyTag
from conftest import GOLDEN, blocks

FREE_CLASS_IDS = sorted(
    maps.canonical_id(blocks(4, [[1], [2, 3], [4]], imgs))
    for imgs in ([1, 2, 3], [3, 2, 1], [2, 3, 4], [4, 3, 2])
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestEnumerate:
    def test_cp1_json(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--family", "cp", "--n", "1", "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert data["count"] == 2 and data["ids"] == [0, 1]
        assert data["schema"] == "chainsemi/1" and data["family"] == "cp" and data["n"] == 1

    def test_p2(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--family", "p", "--n", "2")
        assert code == 0 and json.loads(out)["count"] == 9

    def test_orcp3_golden(self, capsys):
        _, out, _ = run(capsys, "enumerate", "--family", "orcp", "--n", "3")
        assert json.loads(out)["count"] == GOLDEN["family_sizes"]["orcp"]["3"]

    def test_csv(self, capsys):
        _, out, _ = run(capsys, "enumerate", "--family", "oct", "--n", "2", "--format", "csv")
        lines = out.splitlines()
        assert lines[0] == "id"
        assert len(lines) == 1 + 3
        assert [int(x) for x in lines[1:]] == sorted(int(x) for x in lines[1:])

    def test_out_and_cache(self, capsys, tmp_path):
        out = tmp_path / "a.json"
        code, stdout, _ = run(
            capsys, "enumerate", "--family", "cp", "--n", "3", "--out", str(out), "--cache-dir", str(tmp_path / "c")
        )
        assert code == 0 and stdout == ""
        assert (tmp_path / "c" / "cp_3.bin").exists()
        first = out.read_bytes()
        run(capsys, "enumerate", "--family", "cp", "--n", "3", "--out", str(out), "--cache-dir", str(tmp_path / "c"))
        assert out.read_bytes() == first

    def test_budget_exit(self, capsys):
        code, _, err = run(capsys, "enumerate", "--family", "p", "--n", "7")
        assert code == 3 and "budget" in err

    def test_io_exit(self, capsys, tmp_path):
        code, _, _ = run(capsys, "enumerate", "--family", "p", "--n", "2", "--out", str(tmp_path / "no" / "x.json"))
        assert code == 4

    def test_corrupt_cache_exit(self, capsys, tmp_path):
        (tmp_path / "cp_2.bin").write_bytes(b"garbage")
        code, _, _ = run(capsys, "enumerate", "--family", "cp", "--n", "2", "--cache-dir", str(tmp_path))
        assert code == 4

    def test_bad_family(self, capsys):
        code, _, _ = run(capsys, "enumerate", "--family", "xyz", "--n", "2")
        assert code == 2


class TestClasses:
    def test_dstar_cp3(self, capsys):
        _, out, _ = run(capsys, "classes", "--family", "cp", "--n", "3", "--relation", "dstar")
        classes = json.loads(out)["classes"]
        assert len(classes) == 4
        assert sorted(c["height"] for c in classes) == [0, 1, 2, 3]
        assert sum(c["size"] for c in classes) == 50

    def test_rstar_cp4_idempotent_free(self, capsys):
        _, out, _ = run(capsys, "classes", "--family", "cp", "--n", "4", "--relation", "rstar")
        free = [c for c in json.loads(out)["classes"] if not c["has_idempotent"]]
        assert any(c["ids"] == FREE_CLASS_IDS for c in free)

    def test_lstar_ocp3_all_have_idempotent(self, capsys):
        _, out, _ = run(capsys, "classes", "--family", "ocp", "--n", "3", "--relation", "lstar")
        assert all(c["has_idempotent"] for c in json.loads(out)["classes"])

    def test_method_both_agrees(self, capsys):
        _, out, _ = run(capsys, "classes", "--family", "orcp", "--n", "3", "--relation", "hstar", "--method", "both")
        assert json.loads(out)["agree"] is True

    def test_classes_csv(self, capsys):
        code, out, _ = run(capsys, "classes", "--family", "cp", "--n", "2", "--relation", "l", "--format", "csv")
        assert code == 0 and len(out.splitlines()) > 1

    def test_unsupported_family(self, capsys):
        code, _, _ = run(capsys, "classes", "--family", "p", "--n", "2", "--relation", "lstar")
        assert code == 2

    def test_oracle_budget(self, capsys):
        code, _, _ = run(
            capsys, "classes", "--family", "cp", "--n", "5", "--relation", "lstar", "--method", "oracle"
        )
        assert code == 3


class TestVerify:
    def test_l26(self, capsys, tmp_path):
        out = tmp_path / "r.json"
        code, table, _ = run(capsys, "verify", "--claims", "L2.6", "--family", "cp", "--n", "4", "--out", str(out))
        claim = json.loads(out.read_text())["claims"][0]
        assert code == 0
        assert claim["status"] == "pass" and claim["witness"] == FREE_CLASS_IDS
        assert "L2.6" in table

    def test_thm_both(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--claims", "THM2.1.i", "--family", "orcp", "--n", "3", "--method", "both", "--quiet"
        )
        claim = json.loads(out)["claims"][0]
        assert code == 0 and claim["status"] == "pass" and claim["method"] == "both"

    def test_r31(self, capsys):
        code, out, _ = run(capsys, "verify", "--claims", "R3.1", "--family", "orcp", "--n", "3", "--quiet")
        claim = json.loads(out)["claims"][0]
        assert code == 0 and claim["status"] == "pass"
        assert claim["witness"] == [49, 41, 33]

    def test_failing_claim_exit_1(self, capsys):
        code, out, _ = run(capsys, "verify", "--claims", "L1.5", "--family", "orcp", "--n", "4", "--quiet")
        claim = json.loads(out)["claims"][0]
        assert code == 1 and claim["status"] == "fail" and claim["witness"]

    def test_hypothesis_not_met(self, capsys):
        code, out, _ = run(capsys, "verify", "--claims", "L2.6", "--family", "cp", "--n", "3", "--quiet")
        assert code == 0 and json.loads(out)["claims"][0]["status"] == "hypothesis_not_met"

    def test_skipped_budget(self, capsys):
        code, out, _ = run(capsys, "verify", "--claims", "C2.4", "--family", "cp", "--n", "4", "--quiet")
        assert code == 0 and json.loads(out)["claims"][0]["status"] == "skipped_budget"

    def test_unknown_claim(self, capsys):
        code, _, _ = run(capsys, "verify", "--claims", "X9", "--n", "2")
        assert code == 2

    def test_byte_identical_and_thread_independent(self, capsys, tmp_path):
        paths = []
        for k, threads in enumerate(["1", "1", "4"]):
            p = tmp_path / f"r{k}.json"
            run(capsys, "verify", "--n", "1-3", "--threads", threads, "--out", str(p))
            paths.append(p.read_bytes())
        assert paths[0] == paths[1] == paths[2]

    def test_timings_flag(self, capsys):
        _, out, _ = run(capsys, "verify", "--claims", "closure", "--n", "2", "--timings", "--quiet")
        assert all("runtime_ms" in c for c in json.loads(out)["claims"])
        _, out, _ = run(capsys, "verify", "--claims", "closure", "--n", "2", "--quiet")
        assert all("runtime_ms" not in c for c in json.loads(out)["claims"])

    def test_csv(self, capsys, tmp_path):
        p = tmp_path / "r.csv"
        run(capsys, "verify", "--claims", "closure", "--n", "2", "--format", "csv", "--out", str(p))
        lines = p.read_text().splitlines()
        assert lines[0].startswith("claim_id,family,n")
        assert len(lines) == 1 + 3


class TestReport:
    def test_every_claim_once_per_combination(self):
        rep = verify(ns=[1, 2])
        keys = [(c.claim_id, c.family, c.n) for c in rep.claims]
        assert len(keys) == len(set(keys)) == len(REGISTRY) * 3 * 2

    def test_failures_carry_witness(self):
        rep = verify(["L1.5"], families=["orcp"], ns=[4, 5])
        assert rep.failed
        assert all(c.witness for c in rep.failed)
        assert "reflected" in rep.failed[0].detail

    def test_spec_registry_keys_present(self):
        for key in ["THM2.1.i", "THM2.1.ii", "THM2.1.iii", "THM2.1.iv", "L2.2", "L2.3", "C2.4", "L2.5",
                    "L2.6", "R2.7", "L1.1", "L1.2", "L1.3", "L1.4", "L1.5", "R3.1", "P3.2", "L3.3",
                    "L3.4", "T3.5", "closure", "containment"]:
            assert key in CLAIMS

    def test_expected_witness_filtered(self):
        assert list(expected_rstar_witness(FamilyTag.CP)) == FREE_CLASS_IDS
        assert len(expected_rstar_witness(FamilyTag.OCP)) == 2

    def test_config_invariants(self):
        with pytest.raises(ValueError):
            Config(max_n=3, oracle_max_n=4)
        with pytest.raises(ValueError):
            Config(oracle_max_n=3, jstar_max_n=4)
        with pytest.raises(ValueError):
            Config(threads=0)
        with pytest.raises(ValueError):
            Config(method="guess")


def test_parse_range():
    assert parse_range("4") == [4]
    assert parse_range("1-3") == [1, 2, 3]
    with pytest.raises(ValueError):
        parse_range("3-1")


@pytest.mark.skipif(shutil.which("chainsemi") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["chainsemi", "enumerate", "--family", "cp", "--n", "1"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["count"] == 2


def test_module_entry():
    res = subprocess.run(
        [sys.executable, "-m", "chainsemi.cli", "enumerate", "--family", "p", "--n", "2"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and json.loads(res.stdout)["count"] == 9
