import json
import os
from pathlib import Path

import pytest

import sok

DATA = Path(os.environ.get("SOK_TEST_DATA", Path(__file__).resolve().parents[1] / "data"))


def spec(name):
    return json.loads((DATA / name).read_text())


def test_klein_sigma_is_full():
    rec = sok.sigma(spec("klein.json"))
    assert rec["dim"] == 1
    assert rec["sigma"]["type"] == "full"


def test_dinf_is_empty():
    rec = sok.sigma(spec("dinf.json"))
    assert rec["dim"] == 0
    assert sok.omega(spec("dinf.json"))["omega"]["type"] == "empty"


def test_abelianize_dinf_presentation():
    ab = sok.abelianize(sok.extension_presentation(spec("dinf.json")))
    assert ab["rank"] == 0
    assert ab["torsion"] == ["2", "2"]


def test_thompson_degree_two_certificate():
    cert = sok.rinfty(spec("thompson_z2.json"), 2)
    assert cert["rule"] == "FiniteExtRationalPoint"


def test_reidemeister_matches_determinant():
    assert sok.reidemeister([[2, 1], [1, 1]]) == 1
    assert sok.reidemeister([[-1, 0], [0, -1]]) == 4
    assert sok.reidemeister([[1]]) is None


def test_probe_free_group_disconnected():
    report = sok.probe("F2", [1, 0], radius=5)
    assert report["verdict"] == "EvidenceDisconnected"
    assert sok.probe("Z2", ["1/2", 1])["verdict"] == "EvidenceConnected"


def test_errors_carry_codes():
    with pytest.raises(sok.SokError) as info:
        sok.lookup("Q8", 1)
    assert info.value.code == "UnknownGroup"
    with pytest.raises(sok.SokError) as info:
        sok.probe("Z2", [0, 0])
    assert info.value.code == "DegenerateCharacter"


def test_cli_in_process():
    code, out, _ = sok.run("omega", "--group", "BS(1,2)")
    assert code == 0
    assert json.loads(out)["schema_version"] == 1
    assert sok.run("nonsense")[0] == 2
