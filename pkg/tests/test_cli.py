import io
import json
import os
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from lcsequiv import ControlSystem, FeedbackWitness, canonical_form
from lcsequiv.cli import main
from lcsequiv.fileformat import (
    DimensionError,
    ParseError,
    dumps,
    loads_system,
    loads_witness,
    system_doc,
    witness_doc,
)

from corpus import corpus, random_witness

DATA = os.path.join(os.path.dirname(__file__), "data")
FIRST = os.path.join(DATA, "example_first.json")
SECOND = os.path.join(DATA, "example_second.json")
OSCILLATOR = os.path.join(DATA, "oscillator.json")
MIXED = os.path.join(DATA, "mixed.json")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_classify_example_file():
    code, out, _ = run("classify", FIRST)
    doc = json.loads(out)
    assert code == 0
    assert doc["k"] == 1 and doc["r"] == [1, 0] and doc["p"] == [1]
    assert doc["inertia"] == {"neg": 1, "pos": 0, "zero": 0}


def test_classify_pure_ode():
    code, out, _ = run("classify", OSCILLATOR)
    doc = json.loads(out)
    assert code == 0 and doc["k"] == 0 and doc["m"] == 0
    # s^2 + 1, ascending coefficients
    assert doc["zero_part_factors"] == [["1", "0", "1"]]


def test_compare_example_pair():
    code, out, _ = run("compare", FIRST, SECOND, "--relation", "all")
    rel = json.loads(out)["relations"]
    assert code == 1
    assert rel["topological"]["verdict"] == "yes"
    assert rel["linear"]["verdict"] == "no"
    assert rel["differential"]["verdict"] == "no"
    assert rel["linear"]["failed_condition"] == "uncontrollable-similarity"


def test_compare_single_relation():
    assert run("compare", FIRST, SECOND, "--relation", "topological")[0] == 0
    assert run("compare", FIRST, SECOND, "--relation", "linear")[0] == 1


def test_compare_identical_files():
    code, out, _ = run("compare", MIXED, MIXED)
    assert code == 0
    assert all(v["verdict"] == "yes" for v in json.loads(out)["relations"].values())


def test_compare_dimension_mismatch():
    assert run("compare", FIRST, MIXED)[0] == 1
    code, _, err = run("compare", FIRST, MIXED, "--strict")
    assert code == 3 and "dimension" in err


def test_parse_errors(tmp_path):
    bad = write(tmp_path, "bad.json", '{"n": 1, "m": 0,\n "A": [["1/0"]]}')
    code, _, err = run("classify", bad)
    assert code == 2 and "line 2" in err
    assert run("classify", write(tmp_path, "junk.json", "{not json"))[0] == 2
    assert run("classify", str(tmp_path / "missing.json"))[0] == 2
    dec = write(tmp_path, "dec.json", '{"n": 1, "m": 1, "A": [[0.5]], "B": [["1"]]}')
    assert run("classify", dec)[0] == 2
    assert run("--rationalize", "10", "classify", dec)[0] == 0


def test_dimension_errors(tmp_path):
    bad = write(tmp_path, "bad.json", '{"n": 2, "m": 1, "A": [["1", "2"]], "B": [["1"], ["0"]]}')
    assert run("classify", bad)[0] == 3
    with pytest.raises(DimensionError):
        loads_system('{"n": 2, "m": 1, "A": [[1, 2], [3, 4]], "B": [[1]]}')
    with pytest.raises(ParseError):
        loads_system('{"n": 2, "m": 1, "A": [[1, 2], [3, 4]]}')


def test_witness_round_trip_through_simcheck(tmp_path):
    rng = random.Random(7)
    sys1 = corpus(seed=77, size=5)[3]
    sys2 = random_witness(rng, sys1.n, sys1.m).apply(sys1)
    p1 = write(tmp_path, "s1.json", dumps(system_doc(sys1)))
    p2 = write(tmp_path, "s2.json", dumps(system_doc(sys2)))
    wpath = str(tmp_path / "w.json")
    code, out, _ = run("compare", p1, p2, "--witness", wpath)
    assert code == 0 and json.loads(out)["witness_written"]
    w = loads_witness(open(wpath).read())
    assert w.carries(sys1, sys2)
    code, out, _ = run("simcheck", p1, p2, wpath)
    doc = json.loads(out)
    assert code == 0 and doc["pass"] and len(doc["signals"]) == 5


def test_simcheck_corrupted_witness(tmp_path):
    original = loads_system(open(MIXED).read())
    form = canonical_form(original)
    w = form.witness
    bad = FeedbackWitness(w.O, w.Q, w.L.with_entry(0, 0, w.L[0, 0] + 1))
    p1 = write(tmp_path, "s1.json", dumps(system_doc(original)))
    p2 = write(tmp_path, "s2.json", dumps(system_doc(form.system)))
    wp = write(tmp_path, "w.json", dumps(witness_doc(bad)))
    assert run("simcheck", p1, p2, wp)[0] == 1


def test_simcheck_singular_witness(tmp_path):
    wp = write(
        tmp_path,
        "w.json",
        '{"n": 2, "m": 1, "O": [[1, 1], [1, 1]], "Q": [[1]], "L": [[0, 0]]}',
    )
    code, _, err = run("simcheck", FIRST, SECOND, wp)
    assert code == 4 and "singular" in err


def test_simcheck_witness_dimension(tmp_path):
    wp = write(tmp_path, "w.json", '{"n": 1, "m": 1, "O": [[1]], "Q": [[1]], "L": [[0]]}')
    assert run("simcheck", FIRST, SECOND, wp)[0] == 3


def test_canon_output(tmp_path):
    code, out, _ = run("canon", MIXED)
    doc = json.loads(out)
    assert code == 0 and doc["k"] == 2 and doc["p"] == [1, 1]
    # the canonical file is itself a system file and carries the witness
    canon = write(tmp_path, "canon.json", out)
    original = loads_system(open(MIXED).read())
    assert loads_witness(out).carries(original, loads_system(out))
    assert run("simcheck", MIXED, canon, canon)[0] == 0
    # canonical form of a canonical form is itself
    code, again, _ = run("canon", canon)
    assert json.loads(again)["A"] == doc["A"] and json.loads(again)["B"] == doc["B"]


def test_canon_to_file(tmp_path):
    target = str(tmp_path / "c.json")
    code, out, _ = run("canon", FIRST, "--out", target)
    assert code == 0 and json.loads(out)["written"] == target
    assert loads_system(open(target).read()).A.to_rows() == [[0, 0], [0, -2]]


def test_output_is_deterministic(tmp_path, monkeypatch):
    outs = {run("canon", MIXED)[1] for _ in range(3)}
    assert len(outs) == 1
    monkeypatch.setenv("LCS_SEED", "5")
    a = run("compare", MIXED, MIXED)[1]
    b = run("compare", MIXED, MIXED)[1]
    assert a == b


def test_bad_seed(monkeypatch):
    monkeypatch.setenv("LCS_SEED", "abc")
    assert run("compare", FIRST, FIRST)[0] == 2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lcsequiv", "compare", FIRST, SECOND],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["relations"]["topological"]["verdict"] == "yes"


def test_system_file_round_trip():
    for s in corpus(seed=3, size=10):
        assert loads_system(dumps(system_doc(s))) == s
    assert loads_system('{"n": 1, "A": [["-3/4"]]}') == ControlSystem.from_rows([[Fraction(-3, 4)]], m=0)


def test_compare_reflexive_on_corpus(tmp_path):
    for idx, s in enumerate(corpus(seed=2024, size=200)):
        path = write(tmp_path, "x%d.json" % idx, dumps(system_doc(s)))
        assert run("compare", path, path)[0] == 0, idx
