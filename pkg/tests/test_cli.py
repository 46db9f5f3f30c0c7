import json
import subprocess
import sys

from fslat import algebras as A
from fslat import constructions as C
from fslat import groups as G
from fslat.cli import hasse_dot, run


def invoke(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out


def invoke_json(capsys, argv):
    code, out = invoke(capsys, argv)
    return code, json.loads(out)


def write_algebra(tmp_path, algebra, name="algebra.json"):
    path = tmp_path / name
    path.write_text(json.dumps(A.algebra_to_dict(algebra)))
    return str(path)


def test_group_subgroups(capsys):
    code, payload = invoke_json(capsys, ["group", "subgroups", "--orders", "2,2"])
    assert code == 0
    assert payload["count"] == 5
    assert len(payload["subgroups"]) == 5
    assert payload["subgroups"][0]["elements"] == [[0, 0]]


def test_build_then_validate_roundtrip(capsys, tmp_path):
    out = str(tmp_path / "m.json")
    code, _ = invoke(capsys, ["build", "maroti", "--orders", "4", "--subgroup", "0;2", "--out", out])
    assert code == 0
    code, payload = invoke_json(capsys, ["validate", "--algebra", out])
    assert code == 0 and payload["valid"]


def test_validate_reports_violation_with_exit_1(capsys, tmp_path):
    fan = C.maroti(G.make_group([2]), G.trivial_subgroup(G.make_group([2])))
    meet = [list(r) for r in fan.meet]
    meet[0][1] = 0
    broken = A.FSemilattice(fan.group, fan.carrier, meet, fan.action)
    path = write_algebra(tmp_path, broken)
    code, payload = invoke_json(capsys, ["validate", "--algebra", path])
    assert code == 1
    assert payload["valid"] is False
    assert payload["axiom"].startswith("meet-")
    assert payload["witness"] is not None


def test_byte_identical_reruns(capsys):
    argv = ["verify-bijection", "--orders", "2,3"]
    _, first = invoke(capsys, argv)
    _, second = invoke(capsys, argv)
    assert first == second


def test_verify_bijection_report(capsys):
    code, payload = invoke_json(capsys, ["verify-bijection", "--orders", "2,3"])
    assert code == 0
    assert payload["subgroup_count"] == 4
    assert payload["representative_count"] == 4
    assert payload["ok"] and payload["pairwise_distinct"]


def test_quasi_failure_exit_code_and_witness(capsys, tmp_path):
    te = C.two_element(G.make_group([2]))
    path = write_algebra(tmp_path, te)
    code, payload = invoke_json(capsys, ["quasi", "--algebra", path, "--qi", "g0(x)=x -> x = x^y"])
    assert code == 1
    assert payload["holds"] is False
    assert payload["witness"] == {"x": "1", "y": "0"}


def test_quasi_holds_exit_zero(capsys, tmp_path):
    fan = C.maroti(G.make_group([2]), G.trivial_subgroup(G.make_group([2])))
    path = write_algebra(tmp_path, fan)
    code, payload = invoke_json(capsys, ["quasi", "--algebra", path, "--qi", "g0(x)=x -> x = x^y"])
    assert code == 0 and payload["holds"]


def test_hasse_counts(capsys, tmp_path):
    fan = C.maroti(G.make_group([4]), G.subgroup_from_elements(G.make_group([4]), [(0,), (2,)]))
    path = write_algebra(tmp_path, fan)
    code, out = invoke(capsys, ["hasse", "--algebra", path])
    assert code == 0
    nodes = [line for line in out.splitlines() if line.strip().endswith('";') and "->" not in line]
    arrows = [line for line in out.splitlines() if "->" in line]
    assert len(nodes) == 3 and len(arrows) == 2

    one = A.FSemilattice(G.make_group([2]), ("e",), ((0,),), ((0,),))
    path1 = write_algebra(tmp_path, one, "one.json")
    _, out1 = invoke(capsys, ["hasse", "--algebra", path1])
    assert "->" not in out1

    a7 = C.counterexample_a7()
    path7 = write_algebra(tmp_path, a7, "a7.json")
    _, out7 = invoke(capsys, ["hasse", "--algebra", path7])
    assert sum("->" in line for line in out7.splitlines()) == 6


def test_hasse_action_arcs_and_dot_file(capsys, tmp_path):
    fan = C.maroti(G.make_group([4]), G.subgroup_from_elements(G.make_group([4]), [(0,), (2,)]))
    path = write_algebra(tmp_path, fan)
    dot = tmp_path / "fan.dot"
    code, _ = invoke(capsys, ["hasse", "--algebra", path, "--dot", str(dot), "--actions"])
    assert code == 0
    text = dot.read_text()
    assert text == hasse_dot(fan, include_actions=True)
    assert "style=dashed" in text


def test_check_minimal(capsys, tmp_path):
    a7 = C.counterexample_a7()
    path = write_algebra(tmp_path, a7)
    code, payload = invoke_json(capsys, ["check-minimal", "--algebra", path, "--generator", "a0"])
    assert code == 1
    assert payload["minimal"] is False and payload["counterexample"] == "p"

    fan = C.maroti(G.make_group([6]), G.subgroup_from_elements(G.make_group([6]), [(0,), (3,)]))
    path2 = write_algebra(tmp_path, fan, "fan.json")
    code, payload = invoke_json(capsys, ["check-minimal", "--algebra", path2])
    assert code == 0 and payload["minimal"]


def test_decompose(capsys, tmp_path):
    fan = C.maroti(G.make_group([4]), G.subgroup_from_elements(G.make_group([4]), [(0,), (2,)]))
    path = write_algebra(tmp_path, fan)
    code, payload = invoke_json(capsys, ["decompose", "--algebra", path])
    assert code == 0
    assert payload["subgroup"]["elements"] == [[0], [2]]
    assert payload["factor_size"] == 1


def test_simplicity(capsys, tmp_path):
    fan = C.maroti(G.make_group([2, 2]), G.trivial_subgroup(G.make_group([2, 2])))
    path = write_algebra(tmp_path, fan)
    code, payload = invoke_json(capsys, ["simplicity", "--algebra", path])
    assert code == 0
    assert payload["simple"] and payload["congruences"] == 2


def test_balpha(capsys):
    code, payload = invoke_json(capsys, ["balpha", "--alpha", "sqrt:2", "--beta", "sqrt:3"])
    assert code == 0
    assert payload["between"] == [3, 2]
    assert payload["report"]["separates"]
    assert payload["report"]["witness"] == [0, 0]
    assert payload["report"]["alpha"]["squares"] == {"a^2": 9, "b^2*d": 8}
    assert payload["report"]["beta"]["squares"] == {"a^2": 9, "b^2*d": 12}


def test_balpha_equal_inputs_usage_error(capsys):
    code, _ = invoke(capsys, ["balpha", "--alpha", "sqrt:2", "--beta", "sqrt:2"])
    assert code == 2


def test_usage_errors(capsys, tmp_path):
    assert run(["no-such-command"]) == 2
    assert run(["group", "subgroups"]) == 2  # missing --orders
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["validate", "--algebra", str(bad)]) == 2
    missing = tmp_path / "missing.json"
    assert run(["validate", "--algebra", str(missing)]) == 2
    capsys.readouterr()


def test_build_twisted_and_ak(capsys, tmp_path):
    code, payload = invoke_json(
        capsys,
        ["build", "twisted", "--orders", "4", "--subgroup", "0;2", "--u", "chain2"],
    )
    assert code == 0
    assert len(payload["carrier"]) == 5

    code, payload = invoke_json(capsys, ["build", "ak", "--k", "3"])
    assert code == 0
    assert payload["group"]["orders"] == [0]
    assert len(payload["carrier"]) == 4

    code, payload = invoke_json(capsys, ["build", "two-element", "--orders", "6"])
    assert code == 0 and len(payload["carrier"]) == 2


def test_build_twisted_custom_transversal(capsys):
    code, payload = invoke_json(
        capsys,
        [
            "build",
            "twisted",
            "--orders",
            "4",
            "--subgroup",
            "0;2",
            "--transversal",
            "0;3",
        ],
    )
    assert code == 0
    assert "u@3" in payload["carrier"]


def test_meta_wraps_canonical_payload(capsys):
    code, payload = invoke_json(capsys, ["group", "subgroups", "--orders", "2", "--meta"])
    assert code == 0
    assert set(payload) == {"payload", "meta"}
    assert payload["payload"]["count"] == 2


def test_module_entrypoint_subprocess():
    result = subprocess.run(
        [sys.executable, "-m", "fslat", "group", "subgroups", "--orders", "2,4"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["count"] == 8
