"""CLI contract: JSON reports, element syntax, exit codes."""

import json

import pytest

from mrdcodes.cli import main

GAB24 = {"field": {"p": 2, "lambda": 1, "n": 4}, "k": 2, "s": 1,
         "L1": "x", "L2": 0, "family": "GAB"}
GTG34 = {"field": {"p": 3, "lambda": 1, "n": 4}, "k": 2, "s": 1, "L1": "x",
         "L2": {"coeffs": ["0", "g", "0", "0"]}, "family": "GTG"}
GTG34B = {"field": {"p": 3, "lambda": 1, "n": 4}, "k": 2, "s": 1, "L1": "x",
          "L2": {"coeffs": ["0", "0", "g", "0"]}, "family": "CUSTOM"}


@pytest.fixture
def specs(tmp_path):
    paths = {}
    for name, obj in (("gab24", GAB24), ("gtg34", GTG34), ("gtg34b", GTG34B)):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(obj))
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_check_reports_and_exit(specs, capsys):
    code, rep = run(capsys, "check", specs["gab24"])
    assert code == 0
    assert rep["result"] == {"criterion": True, "min_distance": 3,
                             "is_mrd": True}
    assert rep["method"] == "norm-criterion+exhaustive"
    assert "elapsed" in rep and "inputs_echo" in rep
    assert rep["inputs_echo"]["field"]["modulus"] == [1, 1, 0, 0, 1]


def test_construct_record(specs, capsys):
    code, rep = run(capsys, "construct", specs["gtg34"])
    assert code == 0
    r = rep["result"]
    assert r["dimension_fp"] == 8
    assert r["size"] == 3**8
    assert r["fq_linear"] is True
    assert len(r["basis"]) == 8


def test_gamma_both_routes(capsys):
    code, rep = run(capsys, "gamma", "6", "1", "1", "3")
    assert code == 0
    assert rep["result"]["enumerated"] == [2, 3, 4]
    assert rep["result"]["closed_form"] == [2, 3, 4]
    assert rep["result"]["equal"] is True


def test_dual_with_closed_form(specs, capsys):
    code, rep = run(capsys, "dual", specs["gtg34"])
    assert code == 0
    assert rep["result"]["dual"]["dimension_fp"] == 8
    assert rep["result"]["closed_form_matches"] is True


def test_adjoint_shape_report(specs, capsys):
    code, rep = run(capsys, "adjoint", specs["gtg34"])
    assert code == 0
    shape = rep["result"]["shape_identification"]
    assert shape["matches"] is True
    assert shape["k_witnessed"] == 2
    assert shape["k_printed_elsewhere"] == 2


def test_nucleus_report(specs, capsys):
    code, rep = run(capsys, "nucleus", specs["gtg34"], "--kind", "right")
    assert code == 0
    r = rep["result"]
    assert r["dimension_over_p"] == 1
    assert r["subfield_degree_if_scalar"] == 1
    assert r["closed_form_matches"] is True


def test_equiv_negative_exit_one(specs, capsys):
    code, rep = run(capsys, "equiv", "--closed-form",
                    specs["gtg34"], specs["gtg34b"])
    assert code == 1
    assert rep["result"] == {"equivalent": False, "witness": None}


def test_equiv_positive_with_witness(specs, tmp_path, capsys):
    # B manufactured equivalent to gtg34 by scaling the twist coefficient
    from mrdcodes import AdditiveMap, CodeSpec, Field, LinPoly
    from mrdcodes.jsonio import codespec_from_json, codespec_to_json
    spec = codespec_from_json(GTG34)
    F = spec.field
    a, b, l, nu = F.generator, F.exp_g(5), 1, 0
    e = (nu + F.lam * l) % F.deg
    ab = F.mul(a, b)
    L = spec.L2.to_linpoly()
    theta = [0] * F.n
    for i, eta in enumerate(L.coeffs):
        if eta:
            num = F.mul(F.mul(a, F.frob_q(b, spec.sk_slot)),
                        F.frobenius(eta, e))
            theta[i] = F.div(num, F.frob_q(ab, i))
    specB = CodeSpec(F, 2, 1, AdditiveMap.identity(F),
                     LinPoly(F, theta).to_additive())
    pb = tmp_path / "b.json"
    pb.write_text(json.dumps(codespec_to_json(specB)))
    code, rep = run(capsys, "equiv", "--closed-form", specs["gtg34"], str(pb))
    assert code == 0
    assert rep["result"]["equivalent"] is True
    w = rep["result"]["witness"]
    assert w["monomial"] is not None and "nu" in w


def test_aut_count_agrees(specs, tmp_path, capsys):
    spec25 = {"field": {"p": 2, "lambda": 1, "n": 5}, "k": 2, "s": 1,
              "L1": "x", "L2": {"coeffs": ["0", "g", "0", "0", "0"]}}
    p = tmp_path / "aut.json"
    p.write_text(json.dumps(spec25))
    code, rep = run(capsys, "aut", str(p), "--count")
    assert code == 0
    r = rep["result"]
    assert r["order_closed_form"] == 775
    assert r["order"] == 775
    assert r["agree"] is True
    assert r["k_boundary"] is True  # k = 2 sits on the boundary rule


def test_input_error_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"k": 2}')
    code, rep = run(capsys, "check", str(bad))
    assert code == 2
    assert rep["error"] == "input"


def test_budget_exit_three(specs, capsys):
    code, rep = run(capsys, "--budget", "10", "check", specs["gab24"])
    assert code == 3
    assert rep["error"] == "budget"


def test_preset_violation_exit_one(tmp_path, capsys):
    # TG at q = 2 violates its norm gate for every eta
    from mrdcodes.cli import main as cli_main
    from mrdcodes import Field, preset, PresetConditionError
    import io, contextlib
    # the library surface raises; the CLI surfaces it as conditions-violated
    spec = {"field": {"p": 2, "lambda": 1, "n": 4}, "k": 2, "s": 1,
            "L1": "x", "L2": {"coeffs": ["0", "g", "0", "0"]}, "family": "TG"}
    p = tmp_path / "tg.json"
    p.write_text(json.dumps(spec))
    # construct itself succeeds (the spec record is well-formed CUSTOM-style);
    # the preset gate is exercised through the library call
    with pytest.raises(PresetConditionError):
        preset("TG", Field(2, 1, 4), 2, 1, h=1, eta=2)


def test_field_flag_override(tmp_path, capsys):
    spec = {"k": 2, "s": 1, "L1": "x", "L2": {"coeffs": ["0", "g", "0", "0"]}}
    p = tmp_path / "nofield.json"
    p.write_text(json.dumps(spec))
    code, rep = run(capsys, "--field", "3,1,4", "check", str(p))
    assert code == 0
    assert rep["inputs_echo"]["field"]["p"] == 3


def test_config_file_and_flag_precedence(tmp_path, capsys, specs):
    cfg = tmp_path / "cfg"
    cfg.write_text("format=table\nbudget=10\n")
    # flag wins over the file: budget from flag is large enough
    code = main(["--config", str(cfg), "--budget", "1000000", "--format",
                 "json", "check", specs["gab24"]])
    out = capsys.readouterr().out
    assert code == 0
    assert json.loads(out)["result"]["is_mrd"] is True
    # unknown config key is an input error
    bad = tmp_path / "badcfg"
    bad.write_text("budgetx=3\n")
    code = main(["--config", str(bad), "check", specs["gab24"]])
    assert code == 2


def test_table_format(specs, capsys):
    code = main(["--format", "table", "gamma", "6", "1", "1", "3"])
    out = capsys.readouterr().out
    assert code == 0
    assert "result.equal" in out and "True" in out
