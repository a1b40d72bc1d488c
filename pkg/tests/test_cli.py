import io
import json
import subprocess
import sys

import pytest

from pseudocircles.cli import run
from pseudocircles.codes import parse_arrangement
from pseudocircles.families import gen_C1, gen_C2, gen_C3
from pseudocircles.geometry import format_circles, parse_circles
from pseudocircles.isomorphism import Transform, apply
from pseudocircles.pseudolines import WiringDiagram, gen_cyclic

from support import C2_CIRCLES, C3_CIRCLES


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def test_gen_worked_example():
    code, out, _ = call("gen", "--family", "c2", "--size", "5")
    assert code == 0
    assert "3: 1+ 2+ 4- 5- 5+ 4+ 2- 1-" in out.splitlines()
    assert parse_arrangement(out) == gen_C2(5)


@pytest.mark.parametrize(
    "family, build", [("c1", gen_C1), ("c2", gen_C2), ("C3", gen_C3)]
)
def test_gen_round_trips(family, build):
    for fmt in ("text", "json"):
        code, out, _ = call("gen", "--family", family, "--size", "6", "--format", fmt)
        assert code == 0 and parse_arrangement(out) == build(6)


def test_gen_other_families():
    code, out, _ = call("gen", "--family", "cyclic", "--size", "5")
    assert code == 0 and WiringDiagram.from_text(out) == gen_cyclic(5)
    code, out, _ = call("gen", "--family", "x4")
    assert code == 0 and len(parse_arrangement(out)) == 4
    a = call("gen", "--family", "random", "--size", "6", "--seed", "3")
    b = call("gen", "--family", "random", "--size", "6", "--seed", "3")
    assert a == b and a[0] == 0
    code, out, _ = call("gen", "--family", "random-circles", "--size", "4", "--seed", "1")
    assert code == 0 and len(parse_circles(out)) == 4


def test_random_families_need_a_seed():
    code, _, err = call("gen", "--family", "random", "--size", "5")
    assert code == 2 and "--seed" in err


def test_ingest(files):
    path = files("c.txt", format_circles(C2_CIRCLES))
    code, out, _ = call("ingest", "--circles", path)
    assert code == 0
    iso_code, _, _ = call("isomorphic", files("a.codes", out), files("b.codes", gen_C2(5).to_text()))
    assert iso_code == 0
    code, out, _ = call("ingest", "--circles", path, "--emit-plot-data")
    data = json.loads(out)
    assert len(data["circles"]) == 5 and len(data["crossings"]) == 40


def test_ingest_rejects_tangency(files):
    path = files("t.txt", "1 0 0 1\n2 2 0 1\n")
    code, _, err = call("ingest", "--circles", path)
    assert code == 1 and "tangency" in err


def test_validate(files):
    assert call("validate", files("ok.codes", gen_C3(4).to_text()))[:2] == (0, "ok\n")
    text = gen_C2(4).to_text().replace("3: 1+", "3: 1-")
    code, _, err = call("validate", files("broken.codes", text))
    assert code == 1 and "circle 3" in err


def test_classify(files):
    code, out, _ = call("classify", files("t.codes", gen_C1(3).to_text()))
    assert (code, out) == (0, "Krupp\n")
    code, out, _ = call("classify", files("c2.codes", gen_C2(5).to_text()))
    data = json.loads(out)
    assert data["packed"] == "NonKrupp" and len(data["triples"]) == 10
    code, out, _ = call("classify", files("c2.codes", gen_C2(5).to_text()), "--canonical")
    assert code == 0 and parse_arrangement(out) is not None


def test_isomorphic(files):
    a = files("a.codes", gen_C2(3).to_text())
    b = files("b.codes", gen_C3(3).to_text())
    code, out, _ = call("isomorphic", a, b)
    assert code == 0
    t = Transform.from_dict(json.loads(out))
    assert apply(t, gen_C2(3)) == gen_C3(3)
    code, _, err = call("isomorphic", a, files("k.codes", gen_C1(3).to_text()))
    assert code == 1 and "not isomorphic" in err


def test_restrict(files):
    code, out, _ = call("restrict", files("a.codes", gen_C2(6).to_text()), "--subset", "1,3,5")
    assert code == 0 and parse_arrangement(out).labels == (1, 3, 5)
    code, _, _ = call("restrict", files("a.codes", gen_C2(6).to_text()), "--subset", "1,9")
    assert code == 1


def test_find_unavoidable(files):
    path = files("c2.codes", gen_C2(8).to_text())
    code, out, _ = call("find-unavoidable", "--input", path, "--m", "4", "--trace")
    data = json.loads(out)
    assert code == 0 and data["family"] == "C2" and "trace" in data
    code, out, _ = call("find-unavoidable", "--input", path, "--m", "4")
    assert "trace" not in json.loads(out)
    code, _, err = call("find-unavoidable", "--input", path, "--m", "9")
    assert code == 1


def test_cyclic_and_double(files):
    w = files("w.txt", gen_cyclic(6).to_text())
    code, out, _ = call("cyclic", w)
    assert json.loads(out) == {"cyclic": True}
    code, out, _ = call("cyclic", w, "--m", "4")
    assert code == 0 and len(json.loads(out)["subset"]) == 4
    code, out, _ = call("double", w)
    assert parse_arrangement(out) == gen_C1(6)
    code, out, _ = call("double", files("c1.codes", out), "--cut")
    assert code == 0 and WiringDiagram.from_text(out).meet_order() == gen_cyclic(6).meet_order()
    code, _, _ = call("double", files("c2.codes", gen_C2(4).to_text()), "--cut")
    assert code == 1


def test_stdin(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(gen_C2(4).to_text()))
    assert call("validate", "-")[:2] == (0, "ok\n")


def test_usage_errors():
    assert call()[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("gen", "--family", "c9")[0] == 2
    assert call("--threads", "0", "gen", "--family", "c2")[0] == 2


def test_missing_file_is_a_domain_error():
    assert call("validate", "/nonexistent/file.codes")[0] == 1


def test_threads_env(monkeypatch):
    monkeypatch.setenv("ARR_THREADS", "3")
    assert call("gen", "--family", "c2", "--size", "3")[0] == 0


def test_module_entry_point_is_byte_stable(tmp_path):
    path = tmp_path / "c3.codes"
    path.write_text(gen_C3(7).to_text())
    cmd = [sys.executable, "-m", "pseudocircles", "find-unavoidable", "--input", str(path), "--m", "5", "--trace"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
    assert json.loads(first)["family"] == "C3"


def test_ingest_c3_realization(files):
    code, out, _ = call("ingest", "--circles", files("c3.txt", format_circles(C3_CIRCLES)), "--eps", "1e-3")
    assert code == 0
    assert call("isomorphic", files("a", out), files("b", gen_C3(5).to_text()))[0] == 0
