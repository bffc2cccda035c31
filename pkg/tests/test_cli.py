import json

import pytest

from ljmse.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_reduce_example_ends_at_y(capsys):
    code, out, _ = run(capsys, "reduce", "--calculus", "ljmse", "-e", "{(\\x.x) y::[]}", "--strategy", "leftmost")
    assert code == 0
    assert out.strip().splitlines()[-1].endswith("] y")


def test_reduce_json_trace(capsys):
    code, out, _ = run(capsys, "reduce", "-e", "{(\\x.x) y::[]}", "--json")
    trace = json.loads(out)
    assert [s["rule"] for s in trace["steps"]] == ["beta", "sigma", "eps"]
    assert trace["status"] == "normal"


def test_normalize_prints_final_term(capsys):
    assert run(capsys, "normalize", "-e", "{(\\x.x) y::[]}")[1].strip() == "y"


def test_translate_variable(capsys):
    code, out, _ = run(capsys, "translate", "--kind", "cgps", "-e", "y", "--abbrev")
    assert out.strip() == "\\g.\\k. y (s g) k"
    code, out, _ = run(capsys, "translate", "--kind", "cgps", "-e", "y")
    assert out.strip() == "\\g.\\k. y ((\\x. (\\y. x) (\\z. z)) g) k"


def test_translate_type(capsys):
    code, out, _ = run(capsys, "translate", "--kind", "cps", "-e", "y", "--ctx", "y : X",
                       "--emit", "type")
    assert out.strip() == "(X->Bot)->Bot"


def test_check_outputs(capsys):
    code, out, _ = run(capsys, "check", "-e", "\\x.x", "--type", "X->X", "--json")
    assert code == 0 and json.loads(out) == {"type": "X->X"}
    code, _, err = run(capsys, "check", "-e", "/\\X.y", "--ctx", "y : X", "--type", "forall X.X")
    assert code == 1 and json.loads(err)["error"]["reason"] == "clash"


def test_parse_error_is_one_json_line(capsys):
    code, out, err = run(capsys, "parse", "-e", "\\x.")
    assert code == 1
    (line,) = err.strip().splitlines()
    assert json.loads(line)["error"]["reason"] == "parse"


def test_usage_errors_exit_3(capsys):
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 3
    err = capsys.readouterr().err.strip().splitlines()[-1]
    assert json.loads(err)["error"]["reason"] == "usage"
    assert run(capsys, "verify", "--suite", "nope")[0] == 3
    assert run(capsys, "embed", "--from", "ljm", "--to", "lj", "-e", "x")[0] == 3


def test_embed_to_top(capsys):
    code, out, _ = run(capsys, "embed", "--from", "lambda", "--to", "ljmse", "-e", "t u")
    assert code == 0 and out.strip() == "{t u::(x) x []}"
    code, out, _ = run(capsys, "embed", "--from", "lambda", "-e", "t u")
    assert out.strip() == "t(u, x.x)"


def test_spectrum_calculus_input(capsys):
    code, out, _ = run(capsys, "check", "--calculus", "lj", "-e", "\\x.x(x, y.y)", "--ctx", "")
    assert code == 1
    code, out, _ = run(capsys, "normalize", "--calculus", "lj", "-e", "(\\x.x)(u, y.y)")
    assert out.strip() == "u"


def test_peaks_join(capsys):
    code, out, _ = run(capsys, "peaks", "--json", "--per-family", "1")
    rows = json.loads(out)
    assert code == 0 and all(r["joined"] for r in rows)


def test_verify_is_deterministic_and_honours_env(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("LJMSE_SEED", "4")
    args = ("verify", "--suite", "garbage,second-order", "--count", "20", "--json")
    a = run(capsys, *args)
    b = run(capsys, *args)
    assert a[0] == 0 and a[1] == b[1]
    run(capsys, *args, "--golden", str(tmp_path))
    assert (tmp_path / "garbage" / "4.json").exists()
    monkeypatch.setenv("LJMSE_SEED", "x")
    assert run(capsys, *args)[0] == 3


def test_config_file_supplies_defaults(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("suite = sn\ncount = 10\n", encoding="utf-8")
    code, out, _ = run(capsys, "--config", str(cfg), "verify")
    assert code == 0 and out.startswith("PASS sn: 60 cases")


def test_reads_input_from_file(capsys, tmp_path):
    src = tmp_path / "t.txt"
    src.write_text("{y []}", encoding="utf-8")
    assert run(capsys, "normalize", "-f", str(src))[1].strip() == "y"


def test_full_verify_seed_7(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--seed", "7")
    assert code == 0, out
