import io
import os
import subprocess
import sys

import pytest

from dbflab.cli import RunConfig, run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


def dbf(*argv, env=None):
    full = dict(os.environ, **(env or {}))
    return subprocess.run([sys.executable, "-m", "dbflab.cli", *argv], capture_output=True, text=True, env=full)


def test_eval_example():
    code, text = call("eval", "--n", "3", "--k", "0", "--j", "1")
    assert code == 0
    assert text.splitlines() == ["s[3] : 1", "s[2,1] : u1", "s[1,1,1] : u1^2"]


def test_table_dims_row():
    code, text = call("table", "dims", "--nmax", "3", "--nmin", "3", "--kmax", "3", "--jmax", "2")
    assert code == 0
    assert text.splitlines()[-1].split() == ["3", "32", "50", "74"]


def test_verify_main_exit_zero():
    code, text = call("verify", "main", "--n", "3", "--k", "1", "--j", "1")
    assert code == 0 and "STATUS match" in text


def test_en_prints_the_embedded_pairs():
    code, text = call("--format", "machine", "en", "--n", "3")
    assert code == 0 and len(text.splitlines()) == 5


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as err:
        run(["eval", "--n", "3"])
    assert err.value.code == 2
    assert "E_USAGE" in capsys.readouterr().err


def test_resource_exit_code(capsys):
    code, _ = call("verify", "main", "--n", "5", "--k", "1", "--j", "1")
    assert code == 3
    assert capsys.readouterr().err.startswith("dbf: E_RESOURCE")


def test_corrupted_cache_is_reported(tmp_path, capsys, monkeypatch):
    from dbflab import cache

    monkeypatch.setenv("DBFLAB_CACHE", str(tmp_path))  # run() exports --cache-dir

    path = cache.write("oracle", (1, 0, 2), ["garbage"], tmp_path)
    path.write_text(path.read_text() + "x")
    code, _ = call("--cache-dir", str(tmp_path), "verify", "main", "--n", "2", "--k", "1", "--j", "0")
    assert code == 2 and "E_CACHE_HASH" in capsys.readouterr().err


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(jobs=0)
    with pytest.raises(ValueError):
        RunConfig(fmt="xml")


def test_output_independent_of_parallelism(tmp_path):
    env = {"DBFLAB_CACHE": str(tmp_path)}
    one = dbf("--format", "machine", "verify", "skew", "--n", "3", "--jobs", "1", env=env)
    two = dbf("--format", "machine", "verify", "skew", "--n", "3", "--jobs", "2", env=env)
    assert one.returncode == two.returncode == 0
    assert one.stdout == two.stdout and one.stdout


def test_jit_flag_selects_numpy_fallback():
    code = "from dbflab import _jit; print(_jit.USE_NUMBA)"
    off = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                         env=dict(os.environ, DBFLAB_JIT="0"))
    assert off.stdout.strip() == "False"


def test_numpy_fallback_end_to_end(tmp_path):
    env = {"DBFLAB_JIT": "0", "DBFLAB_CACHE": str(tmp_path)}
    r = dbf("verify", "main", "--n", "3", "--k", "2", "--j", "1", env=env)
    assert r.returncode == 0, r.stderr
