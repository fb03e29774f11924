import json

import pytest

from mvspec.cli import main
from mvspec.io import (
    InputError,
    algebra_from_json,
    algebra_to_json,
    hom_to_json,
    lattice_from_json,
    lattice_to_json,
)
from mvspec.lattice import FiniteDistLattice
from mvspec.lgroups import lukasiewicz
from mvspec.mcnaughton import x_meet_rho_2x_minus_1
from mvspec.mv import product
from mvspec.verify import chain_counterexample


@pytest.fixture
def files(tmp_path):
    L2 = lukasiewicz(2)
    paths = {
        "a": tmp_path / "a.json",
        "hom": tmp_path / "hom.json",
        "nf": tmp_path / "nf.json",
        "bad": tmp_path / "bad.json",
    }
    paths["a"].write_text(json.dumps(algebra_to_json(product(L2, L2))))
    paths["hom"].write_text(json.dumps(hom_to_json(chain_counterexample())))
    paths["nf"].write_text(json.dumps(x_meet_rho_2x_minus_1().to_json()))
    oplus = [list(r) for r in L2.oplus]
    oplus[1][1] = 0
    paths["bad"].write_text(json.dumps({"size": 3, "oplus": oplus, "neg": list(L2.neg)}))
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_round_trips():
    A = product(lukasiewicz(2), lukasiewicz(1))
    assert algebra_from_json(algebra_to_json(A)) == A
    L = FiniteDistLattice.boolean(2)
    data = lattice_to_json(L)
    del data["bottom"], data["top"]
    assert lattice_from_json(data).join == L.join


def test_bad_json():
    with pytest.raises(InputError):
        algebra_from_json("{not json")
    with pytest.raises(InputError):
        algebra_from_json({"oplus": [[0]]})


def test_validate(capsys, files):
    code, out = run(capsys, "validate", files["a"])
    assert code == 0 and json.loads(out)["ok"]
    code, out = run(capsys, "validate", files["bad"])
    assert code == 1 and json.loads(out)["violations"]


def test_spec_dot(capsys, files, tmp_path):
    dot = tmp_path / "s.dot"
    code, out = run(capsys, "spec", files["a"], "--dot", dot, "--json")
    assert code == 0 and len(json.loads(out)["points"]) == 2
    assert dot.read_text().count("->") == 0


def test_ideals_and_quotient(capsys, files):
    code, out = run(capsys, "ideals", files["a"])
    assert code == 0 and len(json.loads(out)["ideals"]) == 4
    code, out = run(capsys, "quotient", files["a"], "--ideal", "0,3,6")
    assert code == 0 and json.loads(out)["quotient"]["size"] == 3
    code, _ = run(capsys, "quotient", files["a"], "--ideal", "0,4")
    assert code == 2


def test_classify(capsys, files):
    code, out = run(capsys, "classify", files["a"], "--m", "2", "--m", "4")
    report = json.loads(out)
    assert code == 0 and report["inVK"] == {"2": True, "4": True}


def test_check_closed_exit_code(capsys, files):
    code, out = run(capsys, "hom", "check-closed", files["hom"])
    report = json.loads(out)
    assert report["preserves_closed"] is False
    assert report["preserves_witness"]["prime"] == [0, 1, 2]
    # the three predicates disagree on this hom
    assert code == 1 and not report["agree"]


def test_lattice_dual(capsys, files):
    code, out = run(capsys, "lattice", "dual", files["hom"])
    assert code == 0 and json.loads(out)["dual"] == [{"prime": [0], "preimage": [0]}]


def test_functors(capsys, files):
    code, out = run(capsys, "functor", "gamma", "--group", "Z", "--unit", "3")
    assert code == 0 and json.loads(out)["size"] == 4
    code, out = run(capsys, "functor", "delta", "--group", "Z")
    assert code == 0 and json.loads(out)["sample"] == ["0", "c", "1-c", "1"]
    code, out = run(capsys, "functor", "komori", "--m", "3")
    assert code == 0 and len(json.loads(out)["primes"]) == 2
    code, out = run(capsys, "functor", "belluce", files["a"])
    assert code == 0 and json.loads(out)["size"] == 4
    code, out = run(capsys, "functor", "idc", files["a"])
    assert code == 0 and json.loads(out)["size"] == 4
    assert run(capsys, "functor", "gamma", "--group", "Z")[0] == 2


def test_mcn(capsys, files):
    code, out = run(capsys, "mcn", "eval", files["nf"], "--at", "3/4")
    assert code == 0 and json.loads(out)["value"] == "1/2"
    code, out = run(capsys, "mcn", "homog", files["nf"])
    assert json.loads(out)["locally_homogeneous"] is True
    code, out = run(capsys, "mcn", "zeroset", files["nf"])
    assert json.loads(out)["zeroset"] == "[0, 1/2]"


def test_verify_commands(capsys):
    code, out = run(capsys, "verify", "lspec", "--group", "ZxZ")
    assert code == 0 and json.loads(out)["lspec"]
    code, out = run(capsys, "verify", "--only", "")
    assert code == 0 and json.loads(out) == {"ok": True, "results": []}
    code, out = run(capsys, "verify", "open-sum", "--no-timings")
    assert code == 0 and json.loads(out)["results"][0]["verdict"] == "pass"
    code, out = run(capsys, "verify", "chain-counterexample")
    assert code == 1 and json.loads(out)["results"][0]["counterexample"]["witness"] == [0, 1, 2]
    assert run(capsys, "verify", "no-such-suite")[0] == 2


def test_usage_errors(capsys, tmp_path):
    assert main(["frobnicate"]) == 2
    assert main(["validate", str(tmp_path / "missing.json")]) == 2


def test_corpus_emit(capsys, tmp_path):
    code, out = run(capsys, "corpus", "emit", "--out", tmp_path / "c", "--max-algebra-size", "3",
                    "--max-product-size", "3", "--max-lattice-size", "3")
    assert code == 0 and (tmp_path / "c" / "manifest.json").exists()
