import json
import math

import pytest

from gl3trace import cli


def out(argv):
    code, rep = cli.run(argv)
    return code, rep.get("outputs"), rep


def test_rootdata():
    code, o, _ = out(["rootdata", "dump"])
    assert code == 0 and o["dual_weights"]["alpha"] == ["2/3", "-1/3", "-1/3"]


def test_verify_lemmas():
    code, o, _ = out(["verify", "lemmas", "--which", "all", "--samples", "1000", "--seed", "1"])
    assert code == 0 and o["failures"] == [] and o["passed"] is True


def test_orbit_classify():
    code, o, _ = out(["orbit", "classify", "--matrix", "1,0,0,0,2,0,0,0,3"])
    assert code == 0
    assert o["kind"] == "SplitRegular" and o["ramified"] is False


def test_orbit_batch_file(tmp_path):
    f = tmp_path / "m.txt"
    f.write_text("0,0,2,1,0,0,0,1,0\n3,1,0,0,3,1,0,0,3\n")
    code, o, _ = out(["orbit", "classify", "--file", str(f)])
    assert code == 0
    kinds = [r["kind"] for r in (o["results"] if isinstance(o, dict) else o)]
    assert kinds == ["EllipticG", "Central"]


def test_orbit_probe_and_jordan():
    code, o, _ = out(["orbit", "probe", "--a", "1,0,0,0,2,0,0,0,3", "--b", "2,0,0,0,1,0,0,0,3"])
    assert code == 0 and "equivalent" in json.dumps(o)
    code, o, _ = out(["orbit", "jordan", "--matrix", "1,1,0,0,1,0,0,0,2"])
    assert code == 0 and "1/1" not in json.dumps(o)


def test_bad_and_singular_matrix():
    assert out(["orbit", "classify", "--matrix", "1,2,3"])[0] == 2
    code, _, rep = out(["orbit", "classify", "--matrix", "1,2,3,2,4,6,0,0,1"])
    assert code == 1 and "error" in rep


def test_weights():
    code, o, _ = out(["weight", "hull", "--T", "1,0,-1"])
    assert code == 0 and o["volume"] == pytest.approx(3 * math.sqrt(3), abs=1e-9)
    code, o, _ = out(["weight", "hull", "--T", "1,0,-1", "--method", "direct"])
    assert o["volume"] == pytest.approx(3 * math.sqrt(3), abs=1e-12)
    code, o, _ = out(["weight", "cm0", "--n", "0,0,0"])
    assert o["value"] == 0.0
    code, o, _ = out(["weight", "interval", "--T", "1,0,-1"])
    assert o["length"] == "2"


def test_zeta_and_coeff():
    code, o, _ = out(["zeta", "--s", "2"])
    assert o["value"] == pytest.approx(math.pi ** 2 / 6, abs=1e-12)
    code, o, _ = out(["zeta", "--laurent", "--S", "2,3,5"])
    assert code == 0 and o["laurent"]["c0"] == pytest.approx(4 / 15, abs=1e-15)
    code, o, _ = out(["zeta", "--s", "1"])
    assert code == 1
    code, o, _ = out(["coeff", "--S", "2", "--prec", "1e-10"])
    assert code == 0 and o["config_echo"]["S"] == "{inf,2}"


def test_locint():
    code, o, _ = out(["locint", "--p", "7", "--oracle-depth", "8"])
    assert code == 0 and abs(o["difference"]) < 1e-5
    assert out(["locint", "--p", "8"])[0] == 1


def test_woi():
    code, o, _ = out(["woi", "jgmin", "--z", "1"])
    assert code == 0 and o["value"] == pytest.approx(2 * math.pi, abs=1e-8)
    assert "spec_echo" in o and "error_estimate" in o


def test_woi_forced_tolerance_failure():
    code, o, rep = out(["woi", "jm21", "--tol", "1e-30"])
    assert code != 0
    text = json.dumps(rep)
    assert "error_estimate" in text or "error" in rep


def test_unknown_command_is_usage_error():
    assert out(["frobnicate"])[0] == 2
    assert out(["zeta", "--s"])[0] == 2


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# volumes\nvol_M0 = 2\nC = 1\n")
    code, o, rep = out(["coeff", "--config", str(cfg)])
    base = out(["coeff"])[1]
    assert code == 0 and rep["config"]["vol_M0"] == 2.0
    assert o["a_M0_1"] == 2.0 and o["a_G_reg"] != base["a_G_reg"]
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense\n")
    assert out(["coeff", "--config", str(bad)])[0] == 2


def test_main_prints_sorted_json(capsys):
    assert cli.main(["zeta", "--s", "3", "--json-indent", "0"]) == 0
    text = capsys.readouterr().out.strip()
    assert "\n" not in text
    d = json.loads(text)
    assert list(d) == sorted(d)


def test_suite_subset():
    code, o, _ = out(["suite", "--only", "3,6"])
    assert code == 0 and [c["id"] for c in o["criteria"]] == [3, 6]
    assert all("seconds" not in c for c in o["criteria"])


def test_zeta_needs_s_or_laurent():
    assert out(["zeta"])[0] == 2
    assert out(["zeta", "--s", "two"])[0] == 2
