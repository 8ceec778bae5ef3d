import io
import json
import subprocess
import sys

import pytest

from selfsim.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, _ = call(*argv, "--format", "json")
    return code, json.loads(out)


def test_act_and_restrict():
    assert call_json("act", "example6.spec", "a^-1 c b a", "e1") == \
        (0, {"command": "act", "exit_code": 0, "image": "e3"})
    code, out, _ = call("restrict", "example6.spec", "a^-1 c b a", "e3")
    assert code == 0 and out.strip().endswith("a^-1 c b")


def test_is_unit_and_equal():
    code, out, _ = call("is-unit", "example6.spec", "a^-1 c b a")
    assert code == 0 and out.startswith("NO")
    code, out, _ = call("is-unit", "example6.spec", "a a^-1")
    assert code == 0 and out.startswith("YES")


def test_validate_lists_inverse_rows():
    code, doc = call_json("validate", "example6.spec")
    assert code == 0 and doc["valid"]
    inv = {(r["letter"], r["edge"]): (r["image"], r["restriction"])
           for r in doc["rows"] if r["letter"].endswith("^-1")}
    assert len(doc["rows"]) == 12 and len(inv) == 6
    assert inv[("a^-1", "e6")] == ("e3", "b^-1")
    assert inv[("c^-1", "e2")] == ("e4", "a")


def test_semigroup_and_germs():
    code, out, _ = call("sgp-mul", "example6.spec", "e3, a, e1", "e1 e1, u, e1 e1")
    assert (code, out.strip().splitlines()[0]) == (0, "(e3 e2, u, e1 e1)")
    code, out, _ = call("germ", "example6.spec", "range", "e3, a, e1; | e1")
    assert (code, out.strip().splitlines()[0]) == (0, "e3 e2 | e1")


def test_finite_homology():
    code, doc = call_json("finite-homology", "z2.gpd")
    assert code == 0
    assert [h["value"]["text"] for h in doc["homology"]] == ["Z", "Z/2", "0", "Z/2"]


def test_pipelines():
    code, doc = call_json("report", "example6.spec")
    assert code == 0
    assert doc["ktheory"]["Phi1"]["value"] == 2
    code, out, _ = call("ktheory", "example6.spec")
    assert code == 0 and "Z[1/2]" in out
    code, out, _ = call("homology", "example6.spec")
    assert code == 0


def test_report_is_byte_deterministic():
    a = call("report", "example6.spec", "--format", "json")[1]
    b = call("report", "example6.spec", "--format", "json")[1]
    assert a == b


def test_exit_codes(tmp_path):
    assert call("ktheory", "two_orbits.spec")[0] == 1
    assert call("homology", "one_loop.spec")[0] == 1
    assert call("validate", str(tmp_path / "missing.spec"))[0] == 2
    bad = tmp_path / "bad.spec"
    bad.write_text("vertices: [p\n")
    code, _, err = call("validate", str(bad))
    assert code == 2 and "line" in err
    assert call("act", "example6.spec", "zz", "e1")[0] == 2
    assert call("no-such-command")[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "selfsim", "orbits", "example6.spec"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip()
