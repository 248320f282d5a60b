import io
import subprocess
import sys

import pytest

from dehntwist.cli import run_command
from dehntwist.corpus import golden_dir


def run(*argv):
    out = io.StringIO()
    code = run_command(list(argv), out)
    lines = out.getvalue().splitlines()
    result = next((l for l in lines if l.startswith("RESULT ")), "")
    return code, result, out.getvalue()


def golden(name):
    return str(golden_dir() / f"{name}.sp")


def test_predict_braid():
    code, result, _ = run("predict", "goldens/braid.sp", "-n", "1")
    assert code == 0
    assert result == "RESULT I=2 m=2 ks=[1,1]"


def test_compare_exit_codes():
    assert run("compare", golden("braid"), "-n", "1")[0] == 0
    assert run("compare", golden("orientable_m2"), "-n", "-2")[1].startswith("RESULT formula=8 oracle=8 agree=true")


def test_compare_disagreement_dumps_instance(monkeypatch):
    import dehntwist.cli as cli
    monkeypatch.setattr(cli, "oracle_intersection", lambda inst, n: -1)
    code, result, text = run("compare", golden("torus_m1"), "-n", "1")
    assert code == 1
    assert "agree=false" in result
    assert "surface-pair v1" in text


def test_zero_exponent():
    code, result, text = run("oracle", golden("torus_m1"), "-n", "0")
    assert code == 0 and result.startswith("RESULT I=0")
    assert "identity" in text


def test_validate_classify_gamma():
    assert run("validate", golden("braid"))[1] == "RESULT valid=true m=2 faces=2"
    assert run("classify", golden("klein_punct"))[1] == "RESULT orientable=false genus=2 r=0 s=1 chi=0"
    assert "ks=[1,1]" in run("gamma", golden("braid"))[1]


def test_props():
    code, result, _ = run("props", golden("torus_m1"), "-j", "2", "-k", "-1")
    assert code == 0
    assert result == "RESULT ok=true inter_bounds=holds distinct_twist=holds commutation=holds braid=holds"


def test_klein_commands():
    assert run("klein", "punct", "center")[1] == "RESULT generators=[(0,0,1)]"
    assert run("klein", "hole", "center")[1] == "RESULT generators=[(0,2)]"
    assert run("klein", "punct", "centralizer")[1] == "RESULT generators=[(1,0,0),(0,0,1)]"
    assert run("klein", "hole", "centralizer")[1] == "RESULT generators=[(1,0),(0,2)]"
    assert run("klein", "punct", "mult", "1,1,0", "1,0,0")[1] == "RESULT product=(0,1,0)"
    assert run("klein", "hole", "mult", "0,1", "1,0", "(0,-1)")[1] == "RESULT product=(-1,0)"


def test_enumerate():
    assert run("enumerate", "-m", "1")[1] == "RESULT instances=7"
    code, result, _ = run("enumerate", "-m", "1", "--check", "--workers", "1")
    assert code == 0 and "violations=0" in result


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["predict", "x.sp"], ["predict", "x.sp", "-n", "one"],
                                  ["enumerate", "-m", "7"], ["klein", "free", "center"],
                                  ["klein", "punct", "mult", "1,2,0"]])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_bad_file(tmp_path):
    path = tmp_path / "bad.sp"
    path.write_text("surface-pair v1\ncrossings 1\ncap 7 Disk\n")
    assert run("validate", str(path))[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dehntwist.cli", "klein", "punct", "center"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "RESULT generators=[(0,0,1)]"
