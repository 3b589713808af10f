import json
import subprocess
import sys

import pytest

from pfmirror import cli
from pfmirror.pipeline import (
    SchemaError,
    StageError,
    dumps,
    run_pipeline,
    stage_fit,
    stage_instantons,
    stage_invert,
    stage_mirror_map,
)
from reference_data import OPERATOR_INFINITY, OPERATOR_ZERO


def run_cli(*args, stdin=None):
    proc = subprocess.run([sys.executable, "-m", "pfmirror", *args], input=stdin,
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture(scope="module")
def zero_doc():
    return run_pipeline("pfaffian", "zero")


@pytest.fixture(scope="module")
def infinity_doc():
    return run_pipeline("pfaffian", "infinity", m=7)


def test_zero_document(zero_doc):
    d = zero_doc
    for key in ("model", "point", "period", "operator", "mirror_map", "yukawa_q",
                "instantons", "integrality"):
        assert key in d
    assert d["operator"]["coeffs"] == [list(p) for p in OPERATOR_ZERO]
    assert d["instantons"]["n0"] == "6"
    assert d["instantons"]["nd"][:4] == ["28", "175", "1820", "28294"]
    assert d["instantons"]["m_resolved"]["m"] == "7"
    assert len(d["instantons"]["nd"]) >= 20
    assert d["integrality"] is True
    assert all(d["checks"].values())
    assert d["leading_cofactor"] == ["9", "-6", "1"]


def test_infinity_document(infinity_doc):
    d = infinity_doc
    assert d["operator"]["coeffs"] == [list(p) for p in OPERATOR_INFINITY]
    assert d["yukawa_phi"]["weight"] == "1"
    assert d["yukawa_q"][:3] == ["2", "84", "13916"]
    res = d["instantons"]["m_resolved"]
    assert res["n0"] == "14" and res["nd"][:3] == ["588", "12103", "583884"]
    assert all(d["checks"].values())


def test_grassmannian_matches_pfaffian(zero_doc):
    gr = run_pipeline("grassmannian", "zero")
    strip = lambda d: {k: v for k, v in d.items() if k not in ("model", "model_source")}
    assert gr["model"] == "grassmannian"
    assert dumps(strip(gr)) == dumps(strip(zero_doc))


@pytest.mark.parametrize("point", ["zero", "infinity"])
def test_piped_stages_match_pipeline(point, zero_doc, infinity_doc):
    expected = dumps(zero_doc if point == "zero" else infinity_doc)
    code, out, _ = run_cli("period", "--model", "pfaffian")
    assert code == 0
    stages = [["pf-fit", "--order", "4", "--deg", "5"]]
    if point == "infinity":
        stages.append(["pf-invert", "--twist", "1"])
    stages += [["mirror-map"], ["yukawa"], ["instantons", "--m", "7"]]
    for args in stages:
        code, out, err = run_cli(*args, stdin=out)
        assert code == 0, err
    assert out == expected


def test_period_command():
    code, out, _ = run_cli("period", "--model", "pfaffian", "--order", "5", "--oracle")
    assert code == 0
    doc = json.loads(out)
    assert doc["period"] == ["1", "5", "109", "3317", "121501"]
    assert doc["checks"]["oracle"] is True


def test_kernel_command():
    assert cli.main(["kernel", "--model", "grassmannian"]) == 0
    code, out, _ = run_cli("kernel", "--model", "pfaffian", "--output", "text")
    assert code == 0
    assert "(6 generators)" in out
    gens = out.split("generators):\n")[1].splitlines()
    assert [line.split()[0] for line in gens] == ["-", "-", "+", "-", "+", "+"]


def test_instantons_constant():
    code, out, _ = run_cli("instantons", stdin='["5"]')
    assert code == 0
    doc = json.loads(out)
    assert doc["instantons"]["n0"] == "5" and doc["instantons"]["nd"] == []


def test_exit_codes(tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text('{"variables": [], "factors": []}')
    code, _, err = run_cli("kernel", "--model", str(empty))
    assert code == 3 and "no variables" in err
    code, _, _ = run_cli("pf-fit", stdin="{not json")
    assert code == 3
    code, _, err = run_cli("mirror-map", stdin='{"period": ["1"]}')
    assert code == 3 and "lacks operator" in err
    # a short series cannot pin down the operator
    code, _, err = run_cli("pf-fit", stdin='["1", "5", "109", "3317"]')
    assert code == 2 and "pf-fit" in err
    # non-integral instanton numbers are a failed check
    code, out, _ = run_cli("instantons", stdin='["0", "1", "0"]')
    assert code == 2 and json.loads(out)["integrality"] is False


def test_text_output():
    code, out, _ = run_cli("pipeline", "--model", "pfaffian", "--order", "12", "--output", "text")
    assert code == 0
    assert "D^4" in out and "n0/m = 6" in out


def test_stage_schema_errors():
    with pytest.raises(SchemaError):
        stage_fit({"nothing": 1})
    with pytest.raises(SchemaError):
        stage_mirror_map({"operator": {"coeffs": [[1]]}})
    with pytest.raises(SchemaError):
        stage_instantons(["x"])
    with pytest.raises(SchemaError):
        stage_invert({"operator": {"order": 1, "coeffs": [[0, -1], [1, -1]]},
                      "point": "infinity"})


def test_stage_error_names_stage():
    with pytest.raises(StageError, match="stage pf-fit"):
        run_pipeline("pfaffian", fit_order=1, fit_deg=1)
