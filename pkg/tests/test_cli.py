import json

import pytest

from conftest import GF7, Q
from shalift.cli import BAD_INPUT, FAILED, OK, TODA, main
from shalift.formats import (certificate_from_json, certificate_to_json, dump_json, instance_from_json, instance_hash,
                             instance_to_json, load_json)
from shalift.generate import PRESETS, generate
from shalift.pipeline import strictify


def _gen(tmp_path, preset, seed=0, l=1, field="Q", name="inst.json"):
    path = tmp_path / name
    assert main(["gen", "--preset", preset, "--seed", str(seed), "--max-degree", str(l), "--field", field,
                 "--out", str(path)]) == OK
    return path


@pytest.mark.parametrize("preset", PRESETS)
@pytest.mark.parametrize("F", [Q, GF7])
def test_instance_round_trip(preset, F):
    inst = generate(preset, 2, 2, F).instance
    back = instance_from_json(json.loads(json.dumps(instance_to_json(inst))))
    assert back == inst
    assert instance_hash(back) == instance_hash(inst)


def test_certificate_round_trip():
    inst = generate("conjugated", 3, 2, GF7).instance
    cert = strictify(inst.action_input(), instance_hash=instance_hash(inst))
    back = certificate_from_json(json.loads(json.dumps(certificate_to_json(cert))))
    assert back.sha == cert.sha and back.X == cert.X and back.phi == cert.phi
    assert back.checks == cert.checks


def test_gen_is_deterministic(tmp_path):
    a = _gen(tmp_path, "conjugated", 7, 2, name="a.json")
    b = _gen(tmp_path, "conjugated", 7, 2, name="b.json")
    c = _gen(tmp_path, "conjugated", 8, 2, name="c.json")
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes() != c.read_bytes()


def test_paper_dual_pipeline(tmp_path, capsys):
    inst = _gen(tmp_path, "paper-dual")
    cert = tmp_path / "cert.json"
    assert main(["check", str(inst)]) == OK
    assert main(["strictify", str(inst), "--out", str(cert)]) == OK
    assert main(["verify", str(cert), str(inst)]) == OK
    assert main(["compare", str(cert), str(cert)]) == OK
    out = capsys.readouterr().out
    assert "certificate verified" in out and "identical lifts" in out
    data = load_json(str(cert))
    assert data["window_dims"] == [2, 6, 12]


def test_special_builder_certificate_verifies(tmp_path):
    inst = _gen(tmp_path, "conjugated", 1, 2)
    cert = tmp_path / "cert.json"
    assert main(["strictify", str(inst), "--builder", "special", "--out", str(cert)]) == OK
    assert load_json(str(cert))["notes"]
    assert main(["verify", str(cert), str(inst)]) == OK


def test_toda_break_exit_code(tmp_path, capsys):
    inst = _gen(tmp_path, "toda-break", 0, 2)
    assert main(["strictify", str(inst)]) == TODA
    assert "obstruction to m_4" in capsys.readouterr().out


def test_check_rejects_nonzero_square(tmp_path):
    inst = _gen(tmp_path, "paper-dual")
    data = load_json(str(inst))
    data["complex_T"]["components"].append({"degree": 2, "dim": 1, "action": [[["1"]]]})
    data["complex_T"]["differentials"].append({"degree": 2, "matrix": [["1"]]})
    data["complex_T"]["hi"] = 2
    for act in data["action"]:
        act["blocks"].append({"degree": 2, "matrix": [["1"]]})
    inst.write_text(json.dumps(data))
    assert main(["check", str(inst)]) == FAILED


@pytest.mark.parametrize("preset", ["strict", "conjugated"])
def test_ground_field_certificate_has_no_higher_operations(tmp_path, preset):
    g = generate(preset, 0, 2, Q, dim_a=1)
    assert g.instance.algebra.dim == 1
    inst = tmp_path / "inst.json"
    dump_json(instance_to_json(g.instance), str(inst))
    cert = tmp_path / "cert.json"
    assert main(["strictify", str(inst), "--out", str(cert)]) == OK
    assert all(int(n) < 3 for n in load_json(str(cert))["sha"])


def test_edited_m3_is_rejected(tmp_path, capsys):
    inst = _gen(tmp_path, "paper-dual")
    cert = tmp_path / "cert.json"
    assert main(["strictify", str(inst), "--out", str(cert)]) == OK
    text = cert.read_text()
    data = json.loads(text)
    blk = data["sha"]["3"]["2,2"][0]
    assert blk["matrix"] == [["1"]]
    blk["matrix"][0][0] = "2"
    cert.write_text(json.dumps(data))
    assert main(["verify", str(cert), str(inst)]) == FAILED
    assert "certificate rejected" in capsys.readouterr().out


def test_verify_against_other_instance(tmp_path):
    inst = _gen(tmp_path, "paper-dual")
    other = _gen(tmp_path, "strict", 1, name="other.json")
    cert = tmp_path / "cert.json"
    assert main(["strictify", str(inst), "--out", str(cert)]) == OK
    assert main(["verify", str(cert), str(other)]) == BAD_INPUT


@pytest.mark.parametrize("argv", [
    ["gen", "--preset", "strict", "--field", "GFp:4"],
    ["gen", "--preset", "nope"],
    ["gen", "--preset", "strict", "--max-degree", "0"],
    ["check", "/nonexistent/instance.json"],
])
def test_bad_input_exit_code(argv):
    assert main(argv) == BAD_INPUT


def test_malformed_instance(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"format": "shalift-instance", "version": 1}))
    assert main(["check", str(path)]) == BAD_INPUT
    path.write_text("{not json")
    assert main(["check", str(path)]) == BAD_INPUT
