import json
import subprocess
import sys


from berkdyn.cli import _HANDLERS, REGISTRY, main

CLI_SUBCOMMANDS = {
    "classify", "eval", "join", "hull", "retract", "tube", "exhaust", "supinf",
    "push", "orbit", "reduce", "chordal", "green-eval", "green-gaps",
    "probe-lift", "probe-equi", "harm-eval", "harm-approx", "alpha", "ev",
    "limit-demo",
}


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_registry_covers_command_list():
    assert set(REGISTRY) == CLI_SUBCOMMANDS
    assert set(_HANDLERS) == CLI_SUBCOMMANDS
    # every subcommand maps to exactly one operation, and no operation is
    # reachable from two subcommands
    ops = list(REGISTRY.values())
    assert len(set(ops)) == len(ops)


def test_classify_example(capsys):
    code, out, _ = run_cli(
        ["classify", "--prime", "2", '{"kind":"ball","a":"0","r":{"e":"-1","delta":0}}'],
        capsys,
    )
    assert code == 0
    assert json.loads(out) == {"type": "II"}


def test_green_eval_example(capsys):
    code, out, _ = run_cli(
        ["green-eval", "--prime", "2", "--map", "z^2", "--point", '["1","2"]', "--eps", "1/1024"],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == "0" and doc["n_used"] == 0 and doc["C1"] == "0"


def test_schema_error_exit_2(capsys):
    code, _, err = run_cli(
        ["classify", "--prime", "2", '{"kind":"ball","a":"0","r":{"e":"bogus"}}'],
        capsys,
    )
    assert code == 2
    assert "r.e" in err


def test_math_error_exit_3(capsys):
    # point outside the harmonic domain: module precondition, not schema
    datum = json.dumps(
        {
            "c0": "0",
            "terms": [{"c": "1", "a": "0"}],
            "tube": {"outer": {"a": "0", "r": {"e": "0"}}, "removed": [{"a": "0", "r": {"e": "-2"}}]},
        }
    )
    code, _, err = run_cli(
        ["harm-eval", "--prime", "2", "--point", '{"kind":"I","a":"0"}', datum],
        capsys,
    )
    assert code == 3
    assert "domain" in err


def test_missing_prime_exit_2(capsys, monkeypatch):
    monkeypatch.delenv("BERKDYN_PRIME", raising=False)
    code, _, err = run_cli(["classify", '{"kind":"I","a":"1"}'], capsys)
    assert code == 2 and "prime" in err


def test_env_prime_fallback(capsys, monkeypatch):
    monkeypatch.setenv("BERKDYN_PRIME", "3")
    code, out, _ = run_cli(["classify", '{"kind":"I","a":"1"}'], capsys)
    assert code == 0 and json.loads(out)["type"] == "I"


def test_nonprime_rejected(capsys):
    code, _, err = run_cli(["classify", "--prime", "4", '{"kind":"I","a":"1"}'], capsys)
    assert code == 2 and "prime" in err


def test_deterministic_output(capsys):
    args = ["orbit", "--prime", "2", "--map", "z^2+2", "--n", "3",
            '{"kind":"ball","a":"0","r":{"e":"-1","delta":0}}']
    code1, out1, _ = run_cli(args, capsys)
    code2, out2, _ = run_cli(args, capsys)
    assert code1 == code2 == 0 and out1 == out2


def test_hull_dot_output(capsys):
    pts = json.dumps(
        [
            {"kind": "ball", "a": "0", "r": {"e": "0"}},
            {"kind": "ball", "a": "0", "r": {"e": "-2"}},
            {"kind": "ball", "a": "2", "r": {"e": "-2"}},
        ]
    )
    code, out, _ = run_cli(["hull", "--prime", "2", "--format", "dot", pts], capsys)
    assert code == 0 and out.startswith("graph")
    code2, out2, _ = run_cli(["hull", "--prime", "2", pts], capsys)
    assert code2 == 0 and len(json.loads(out2)["vertices"]) == 4


def test_dot_rejected_elsewhere(capsys):
    code, _, err = run_cli(
        ["classify", "--prime", "2", "--format", "dot", '{"kind":"I","a":"1"}'], capsys
    )
    assert code == 2 and "dot" in err


def test_join_retract_tube_exhaust_pipeline(capsys):
    pts = json.dumps(
        [
            {"kind": "ball", "a": "0", "r": {"e": "0"}},
            {"kind": "ball", "a": "0", "r": {"e": "-2"}},
        ]
    )
    code, out, _ = run_cli(["tube", "--prime", "2", pts], capsys)
    assert code == 0
    tube = out
    code, out, _ = run_cli(["exhaust", "--prime", "2", "--m", "1", tube], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["X"]["outer"]["r"]["e"] == "-1/2"
    code, out, _ = run_cli(
        ["join", "--prime", "2", json.dumps([{"kind": "I", "a": "0"}, {"kind": "I", "a": "1"}])],
        capsys,
    )
    assert code == 0 and json.loads(out)["r"]["e"] == "0"
    code, out, _ = run_cli(
        ["retract", "--prime", "2", "--point", '{"kind":"ball","a":"2","r":{"e":"-3"}}', pts],
        capsys,
    )
    assert code == 0 and json.loads(out)["r"]["e"] == "-1"


def test_eval_supinf_push_reduce_chordal(capsys):
    code, out, _ = run_cli(
        ["eval", "--prime", "2", "--poly", "z^2-2",
         '{"kind":"ball","a":"0","r":{"e":"-1","delta":0}}'],
        capsys,
    )
    assert code == 0 and json.loads(out)["value"] == "-1"
    aff = json.dumps(
        {
            "outer": {"a": "0", "r": {"e": "0"}},
            "removed": [{"a": "0", "r": {"e": "-1"}}, {"a": "1", "r": {"e": "-1"}}],
        }
    )
    code, out, _ = run_cli(["supinf", "--prime", "2", "--poly", "z", aff], capsys)
    doc = json.loads(out)
    assert doc["sup"]["value"] == "0" and doc["inf"]["value"] == "-1"
    code, out, _ = run_cli(
        ["push", "--prime", "2", "--map", "z^2+2",
         '{"kind":"ball","a":"0","r":{"e":"-1","delta":0}}'],
        capsys,
    )
    assert json.loads(out) == {"kind": "ball", "a": "2", "r": {"e": "-2", "delta": 0, "zero": False}}
    code, out, _ = run_cli(["reduce", "--prime", "2", "--map", "z^2+2"], capsys)
    doc = json.loads(out)
    assert doc["good_reduction"] is True and doc["residue_map"] == "z^2"
    code, out, _ = run_cli(["chordal", "--prime", "2", '["0", "2"]'], capsys)
    assert json.loads(out)["chordal"] == "-1"


def test_probe_and_family_commands(capsys):
    code, out, _ = run_cli(
        ["probe-equi", "--prime", "2", "--map", "z^2", "--point", "0", "--depth", "4"],
        capsys,
    )
    assert code == 0 and json.loads(out)["verdict"] == "bounded"
    aff = json.dumps({"outer": {"a": "0", "r": {"e": "0"}}, "removed": []})
    code, out, _ = run_cli(
        ["probe-lift", "--prime", "2", "--map", "z^2", "--nmax", "3", aff], capsys
    )
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "bounded"
    # reports carry the certified constant and extremum witnesses
    assert doc["C1"] == "0"
    for row in doc["per_n"]:
        assert "sup_witness" in row and "inf_witness" in row
    code, out, _ = run_cli(
        ["green-gaps", "--prime", "2", "--map", "z^2", "--point", '["3","7"]', "--nmax", "4"],
        capsys,
    )
    assert code == 0 and all(r["within"] for r in json.loads(out)["gaps"])
    code, out, _ = run_cli(["alpha", "--prime", "2", "--poly", "z^2", "--delta", "2"], capsys)
    assert code == 0
    alpha_doc = out
    code, out, _ = run_cli(
        ["ev", "--prime", "2", "--z", '["2"]', "--g", "z", alpha_doc], capsys
    )
    doc = json.loads(out)
    assert doc["value"] == "-2" and doc["rigid"] is True
    code, out, _ = run_cli(["harm-approx", "--prime", "2", json.dumps(
        {
            "c0": "0",
            "terms": [{"c": "1/2", "a": "0"}],
            "tube": {"outer": {"a": "0", "r": {"e": "0"}}, "removed": [{"a": "0", "r": {"e": "-2"}}]},
        }
    )], capsys)
    assert code == 0 and json.loads(out)["C"] == "1"


def test_limit_demo_command(capsys):
    doc = {
        "family": [
            {"dims": [1, 1, 1], "coords": {"1:1": {"kind": "I", "a": str(z)}}}
            for z in (1, 2, 3, 4)
        ],
        "certs": {"1:1": {"kind": "equidistant", "r": {"e": "0"}}},
        "panel": [{"g": "z", "z": ["5"]}],
    }
    code, out, _ = run_cli(["limit-demo", "--prime", "5", json.dumps(doc)], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["alpha"]["coords"]["1:1"]["kind"] == "ball"
    assert rep["report"]["panel"][0]["agree_from"] == 0


def test_console_script_installed():
    proc = subprocess.run(
        [sys.executable, "-m", "berkdyn.cli", "--help"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "berkdyn" in proc.stdout
