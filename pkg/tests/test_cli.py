import io
import subprocess
import sys

import pytest

from hyperperm import htformat
from hyperperm.cli import run
from hyperperm.polytope import builtin_tensor
from hyperperm.tensor import identity_tensor, ones_tensor


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, T in [("I3", identity_tensor(3, 3)), ("J3", ones_tensor(3, 3)), ("D", builtin_tensor("D"))]:
        paths[name] = tmp_path / f"{name}.ht"
        htformat.save(T, paths[name])
    return paths


def test_per(files):
    assert call("per", files["I3"]) == (0, "1\n", "")
    assert call("per", files["I3"], "--k", 2)[1] == "0\n"
    assert call("per", files["J3"], "--k", 2)[1] == "12\n"
    assert call("per", files["J3"], "--def", "eq2")[1] == "36\n"
    assert call("per", files["J3"], "--k", 2, "--def", "eq2")[0] == 1


def test_decimal_mode(files):
    code, out, _ = call("--decimal", 6, "det", files["D"])
    lines = out.splitlines()
    assert code == 0 and lines[0] == "# decimal mode: 6 significant digits"
    C = files["D"].parent / "C.ht"
    htformat.save(builtin_tensor("C"), C)
    assert call("per", C, "--k", 2)[1] == "1/16\n"
    code, out, _ = call("--decimal", 3, "per", C, "--k", 2)
    assert out.splitlines()[1] == "0.0625"


def test_vertices_and_archive(tmp_path):
    code, out, _ = call("vertices", "--kind", "plane", "--n", 2, "--out", tmp_path / "v")
    assert code == 0
    assert out.splitlines()[0] == "6 vertices (4 zero-one, 2 half-valued)"
    files = sorted((tmp_path / "v").glob("*.ht"))
    assert len(files) == 6
    arch = htformat.load_archive(tmp_path / "v" / "vertices.vset")
    assert arch == [htformat.load(f) for f in files]
    code, out, _ = call("hull", files[-1], "--generators", tmp_path / "v")
    assert code == 0 and "in_hull: true" in out


def test_hull_membership(tmp_path, files):
    code, out, _ = call("vertices", "--kind", "line", "--n", 3, "--out", tmp_path / "L")
    assert out.startswith("66 vertices (12 zero-one, 54 half-valued)")
    gens = tmp_path / "G"
    gens.mkdir()
    for f in sorted((tmp_path / "L").glob("*.ht")):
        T = htformat.load(f)
        if T.is_zero_one():
            htformat.save(T, gens / f.name)
    code, out, _ = call("hull", files["D"], "--generators", gens)
    assert code == 0 and "generators: 12" in out and "in_hull: false" in out
    code, out, _ = call("extreme", files["D"], "--kind", "line", "--n", 3)
    assert out == "extreme: true\n"


def test_malformed_input(tmp_path):
    bad = tmp_path / "bad.ht"
    bad.write_text("ht1\norder 2\ndims 2 2\n1 0\n0 x\n")
    code, out, err = call("per", bad)
    assert code == 1 and out == ""
    assert "line 5" in err and "column 3" in err
    assert call("per", tmp_path / "missing.ht")[0] == 1
    assert call("frobnicate")[0] == 1


def test_resource_guard():
    code, _, err = call("vertices", "--kind", "line", "--n", 4)
    assert code == 2 and "resource limit" in err
    assert call("latin", "--n", 6)[0] == 2


def test_check(files):
    code, out, _ = call("check", files["I3"], "--stochastic", "plane")
    assert out == "plane-stochastic: true\nplane-permutation: true\n"
    code, out, _ = call("check", files["D"], "--stochastic", "line")
    assert out == "line-stochastic: true\nline-permutation: false\n"
    assert call("check", files["D"], "--stochastic", "cube")[0] == 1


def test_gtf_kgtf(files):
    assert call("gtf", files["J3"], "--chars", "trivial")[1] == "36\n"
    assert call("gtf", files["J3"], "--chars", "trivial", "--mode", "2per")[1] == "12\n"
    assert call("gtf", files["I3"], "--chars", "sign")[1] == "0\n"
    assert call("kgtf", files["J3"], "--k", 2, "--weight", "one")[1] == "12\n"
    assert call("kgtf", files["J3"], "--k", 2, "--weight", "bogus")[0] == 1


def test_latin_patterns_bounds_builtin(files, tmp_path):
    assert call("latin", "--n", 5, "--count-only")[1] == "latin_squares: 161280\n"
    code, out, _ = call("latin", "--n", 3)
    assert out.splitlines()[-1] == "latin_squares: 12"
    assert call("patterns", "--d", 4, "--n", 2, "--k", 2, "--count-only")[1] == "patterns: 0\n"
    code, out, _ = call("patterns", "--d", 3, "--n", 2, "--k", 2)
    assert out.splitlines()[0] == "pattern 1: 111 122 212 221"
    code, out, _ = call("bounds", files["J3"], "--which", "mb2")
    assert "status: pass" in out
    code, out, _ = call("bounds", files["I3"], "--which", "prop1")
    assert code == 0 and "certificate: none" in out
    zero = tmp_path / "Z.ht"
    htformat.save(identity_tensor(3, 3).map(lambda x: 0), zero)
    code, out, _ = call("bounds", zero, "--which", "prop1")
    assert out == "bound: zero_block\ncertificate: 1; 1 2 3; 1 2 3\nper: 0\n"
    code, out, _ = call("builtin", "--name", "D")
    assert htformat.loads(out) == builtin_tensor("D")
    code, out, _ = call("builtin", "--name", "C", "--out", tmp_path / "C.ht")
    assert htformat.load(tmp_path / "C.ht") == builtin_tensor("C")


def test_probe_output_stable():
    a = call("probe", "--conjecture", 5, "--n", 3, "--d", 3, "--samples", 10, "--seed", 3)
    b = call("probe", "--conjecture", 5, "--n", 3, "--d", 3, "--samples", 10, "--seed", 3)
    assert a == b and a[0] == 0 and "rng: random.Random(seed=3)" in a[1]


def test_workers_do_not_change_output(tmp_path):
    T = ones_tensor(4, 3)
    p = tmp_path / "J4.ht"
    htformat.save(T, p)
    outs = {call("--workers", w, "per", p, "--k", 2) for w in (1, 2)}
    assert len(outs) == 1 and outs.pop()[1] == "576\n"


def test_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "hyperperm", "per", str(files["J3"])],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "36\n"
