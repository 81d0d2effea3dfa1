import io as _io
import json

import pytest

from rlcelab.cli import EXIT_ATTACK_FAILED, EXIT_NOT_DISTINGUISHABLE, EXIT_OK, EXIT_USAGE, main


def run(*argv):
    out = _io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


@pytest.fixture
def desk_keys(tmp_path):
    pub, sec = tmp_path / "k.pub", tmp_path / "k.sec"
    code, text = run("keygen", "--n", 60, "--k", 30, "--w", 12, "--seed", "0a", "--pub", pub, "--sec", sec)
    assert code == EXIT_OK
    assert "public matrix 30x72" in text and "interval 12 21" in text
    return pub, sec


def test_params_command():
    assert run("params", "--preset", "id1") == (EXIT_OK, "316 354\n")
    assert run("params", "--preset", "id3")[1] == "534 592\n"
    assert run("params", "--preset", "id0") == (EXIT_NOT_DISTINGUISHABLE, "not distinguishable\n")
    code, text = run("params", "--format", "csv")
    assert code == EXIT_OK
    assert text.splitlines()[0].startswith("preset,n,k,w,t,m,ell_min,ell_max")
    assert "id5,1160,700,311,230,11,551,663,True" in text
    code, text = run("params", "--preset", "id5", "--format", "json")
    assert json.loads(text) == [{"ell_min": 551, "ell_max": 663, "distinguishable": True}]


def test_keygen_attack_verify(desk_keys, tmp_path):
    pub, sec = desk_keys
    rec, trace = tmp_path / "rec.sec", tmp_path / "trace.jsonl"
    code, text = run("attack", "--pub", pub, "--out", rec, "--trace", trace, "--seed", "01", "--format", "json")
    assert code == EXIT_OK
    row = json.loads(text)[0]
    assert row["pairs"] == 12 and row["repaired"] == 0 and row["grs_positions"] == 48
    events = [json.loads(line) for line in trace.read_text().splitlines()]
    assert events[0]["step"] == "interval" and events[-1]["step"] == "mixers"
    code, text = run("verify", "--pub", pub, "--sec", rec, "--trials", 20, "--format", "json")
    assert code == EXIT_OK and json.loads(text)[0]["successes"] == 20


def test_encrypt_decrypt(desk_keys, tmp_path):
    pub, sec = desk_keys
    ct, msg, dec = tmp_path / "c.json", tmp_path / "m.json", tmp_path / "d.json"
    assert run("encrypt", "--pub", pub, "--msg-out", msg, "--out", ct, "--seed", "07")[0] == EXIT_OK
    assert run("decrypt", "--sec", sec, "--in", ct, "--out", dec)[0] == EXIT_OK
    assert json.loads(dec.read_text())["data"] == json.loads(msg.read_text())["data"]
    ct2 = tmp_path / "c2.json"
    assert run("encrypt", "--pub", pub, "--msg", msg, "--out", ct2, "--seed", "07")[0] == EXIT_OK
    assert ct2.read_bytes() == ct.read_bytes()


def test_distinguish_table(desk_keys):
    pub, _ = desk_keys
    code, text = run("distinguish", "--pub", pub, "--trials", 3, "--seed", "02")
    assert code == EXIT_OK
    assert text.splitlines()[-1].startswith("verdict rlce-like")
    code, text = run("distinguish", "--pub", pub, "--trials", 3, "--format", "csv", "--threads", 2)
    assert len(text.splitlines()) == 4


def test_keygen_is_deterministic(tmp_path):
    paths = []
    for name in "ab":
        pub, sec = tmp_path / f"{name}.pub", tmp_path / f"{name}.sec"
        run("keygen", "--preset", "id1", "--seed", "00", "--pub", pub, "--sec", sec)
        paths.append((pub, sec))
    assert paths[0][0].read_bytes() == paths[1][0].read_bytes()
    assert paths[0][1].read_bytes() == paths[1][1].read_bytes()


def test_attack_refuses_even_presets(tmp_path):
    pub, sec = tmp_path / "p", tmp_path / "s"
    code, text = run("keygen", "--preset", "id0", "--pub", pub, "--sec", sec)
    assert code == EXIT_OK and "not distinguishable" in text
    assert run("attack", "--pub", pub, "--out", tmp_path / "r")[0] == EXIT_NOT_DISTINGUISHABLE
    assert not (tmp_path / "r").exists()


def test_degenerate_keys_and_failing_verify(tmp_path):
    pub, sec = tmp_path / "p", tmp_path / "s"
    code, _ = run("keygen", "--n", 60, "--k", 30, "--w", 12, "--degenerate", "0:c", "--degenerate", "3:d",
                  "--pub", pub, "--sec", sec)
    assert code == EXIT_OK
    rec = tmp_path / "r"
    code, text = run("attack", "--pub", pub, "--out", rec, "--format", "csv")
    assert code == EXIT_OK and text.splitlines()[1].split(",")[1] == "2"
    other_pub, other_sec = tmp_path / "p2", tmp_path / "s2"
    run("keygen", "--n", 60, "--k", 30, "--w", 12, "--seed", "ff", "--pub", other_pub, "--sec", other_sec)
    assert run("verify", "--pub", pub, "--sec", other_sec, "--trials", 3)[0] == EXIT_ATTACK_FAILED


def test_attack_budget_failure(desk_keys, tmp_path):
    pub, _ = desk_keys
    assert run("attack", "--pub", pub, "--out", tmp_path / "r", "--max-shortenings", 1)[0] == EXIT_ATTACK_FAILED


def test_usage_errors(tmp_path):
    assert run("keygen", "--n", 60, "--pub", tmp_path / "p", "--sec", tmp_path / "s")[0] == EXIT_USAGE
    assert run("verify", "--pub", tmp_path / "missing", "--sec", tmp_path / "missing")[0] == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["keygen", "--seed", "zz", "--pub", "p", "--sec", "s"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == EXIT_USAGE
