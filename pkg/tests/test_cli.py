import json

import pytest
from click.testing import CliRunner

import kduncd.diagram as diagram_mod
from kduncd import basis_state, save_state, state_from_amplitudes
from kduncd.cli import main
from kduncd.plotting import CELL, MARGIN


@pytest.fixture()
def runner():
    return CliRunner()


def _marker_position(d, na, nb):
    size = 2 * MARGIN + d * CELL
    cx = MARGIN + (na - 0.5) * CELL
    cy = size - MARGIN - (nb - 0.5) * CELL
    return cx, cy


def test_diagram_command_writes_artifacts(runner, tmp_path):
    out = tmp_path / "d8.json"
    csv = tmp_path / "d8.csv"
    svg = tmp_path / "d8.svg"
    result = runner.invoke(
        main,
        ["diagram", "--d", "8", "--engine", "both", "--out", str(out),
         "--csv", str(csv), "--svg", str(svg)],
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(out.read_text())
    assert payload["d"] == 8 and payload["engine"] == "both"
    rows = csv.read_text().strip().split("\n")
    assert rows[0] == "na,nb,status"
    assert "5,2,hole" in rows
    cx, cy = _marker_position(8, 5, 2)
    assert f'<circle cx="{cx:.2f}" cy="{cy:.2f}"' in svg.read_text()


def test_diagram_command_dimension_one(runner, tmp_path):
    out = tmp_path / "d1.json"
    result = runner.invoke(main, ["diagram", "--d", "1", "--out", str(out)])
    assert result.exit_code == 0
    payload = json.loads(out.read_text())
    assert payload["points"] == [
        {"na": 1, "nb": 1, "status": "present", "rows": [], "cols": [0]}
    ]


def test_diagram_command_d10_row_two(runner, tmp_path):
    csv = tmp_path / "d10.csv"
    result = runner.invoke(main, ["diagram", "--d", "10", "--csv", str(csv)])
    assert result.exit_code == 0
    statuses = {}
    for line in csv.read_text().strip().split("\n")[1:]:
        na, nb, status = line.split(",")
        statuses[(int(na), int(nb))] = status
    present = {a for a in range(1, 11) if statuses[(a, 2)] == "present"}
    assert present == {5, 8, 9, 10}
    assert {a for a in range(5, 11) if statuses[(a, 2)] == "hole"} == {6, 7}


def test_diagram_partial_exit_codes(runner, tmp_path):
    args = ["diagram", "--d", "5", "--max-checks", "2", "--out", str(tmp_path / "p.json")]
    aborted = runner.invoke(main, args)
    assert aborted.exit_code == 3
    allowed = runner.invoke(main, args + ["--allow-partial"])
    assert allowed.exit_code == 0


def test_diagram_cache_reuse(runner, tmp_path):
    cache = tmp_path / "cache"
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for out in (out1, out2):
        result = runner.invoke(
            main, ["diagram", "--d", "6", "--cache", str(cache), "--out", str(out)]
        )
        assert result.exit_code == 0
    assert len(list(cache.glob("diagram-*.json"))) == 1
    assert out1.read_bytes() == out2.read_bytes()


def test_classify_basis_state(runner, tmp_path):
    path = tmp_path / "basis.json"
    save_state(path, basis_state(5, 2))
    result = runner.invoke(main, ["classify", str(path)])
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert report["verdict"] == "classical"
    assert report["product"] == 5
    assert report["theorem4_prediction"] == "classical"
    assert report["theorem5_flag"] is None  # silent on basis vectors
    assert report["witness"] is None


def test_classify_coset_state(runner, tmp_path):
    path = tmp_path / "coset.json"
    save_state(path, state_from_amplitudes([1, 0, 0, 1, 0, 0]))
    result = runner.invoke(main, ["classify", str(path), "--d", "6"])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["verdict"] == "classical"
    assert report["product"] == 6
    assert report["theorem4_prediction"] == "classical"
    assert report["theorem5_flag"] is False


def test_classify_nonclassical_state(runner, tmp_path):
    path = tmp_path / "three.json"
    save_state(path, state_from_amplitudes([1, 1, 1, 0]))
    result = runner.invoke(main, ["classify", str(path)])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["verdict"] == "nonclassical"
    assert report["witness"] is not None
    assert report["theorem4_prediction"] == "nonclassical"
    assert report["theorem5_flag"] is True


def test_classify_malformed_file(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    result = runner.invoke(main, ["classify", str(path)])
    assert result.exit_code == 2


def test_classify_dimension_mismatch(runner, tmp_path):
    path = tmp_path / "basis.json"
    save_state(path, basis_state(4, 0))
    result = runner.invoke(main, ["classify", str(path), "--d", "6"])
    assert result.exit_code == 2


def test_verify_t2_passes(runner):
    result = runner.invoke(main, ["verify", "T2", "--d", "2..8"])
    assert result.exit_code == 0, result.output
    assert result.output.count("PASS") == 7


def test_verify_l3_passes(runner):
    result = runner.invoke(main, ["verify", "L3", "--d", "2..6"])
    assert result.exit_code == 0, result.output


def test_verify_t4_small(runner):
    result = runner.invoke(main, ["verify", "T4", "--d", "2..5", "--samples", "50"])
    assert result.exit_code == 0, result.output


def test_verify_exits_nonzero_on_mismatch(runner, monkeypatch):
    from kduncd.verify import VerifyRow

    monkeypatch.setattr(
        "kduncd.cli.verify_suite",
        lambda *a, **kw: [VerifyRow(d=4, label="T2", passed=False, detail="forced")],
    )
    result = runner.invoke(main, ["verify", "T2", "--d", "4"])
    assert result.exit_code == 1
    assert "FAIL" in result.output


def test_engine_both_exits_nonzero_on_disagreement(runner, monkeypatch):
    monkeypatch.setattr(
        diagram_mod._RankOracle, "_compute_numeric", lambda self, rows, cols: 0
    )
    result = runner.invoke(main, ["diagram", "--d", "4", "--engine", "both"])
    assert result.exit_code == 1
    assert "disagreement" in result.output


def test_witness_command_classical(runner, tmp_path):
    out = tmp_path / "w.json"
    result = runner.invoke(
        main, ["witness", "--d", "6", "2", "3", "--seed", "1", "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert report["verdict"] == "classical"
    assert (report["n_a"], report["n_b"]) == (2, 3)
    classify = runner.invoke(main, ["classify", str(out)])
    assert json.loads(classify.output)["verdict"] == "classical"


def test_witness_command_nonclassical(runner):
    result = runner.invoke(main, ["witness", "--d", "6", "4", "4", "--seed", "2"])
    assert result.exit_code == 0
    assert json.loads(result.output)["verdict"] == "nonclassical"


def test_witness_command_hole(runner):
    result = runner.invoke(main, ["witness", "--d", "8", "5", "2"])
    assert result.exit_code == 1
    assert "hole" in result.output


def test_diagram_deterministic_small(runner, tmp_path):
    blobs = []
    for tag in ("a", "b"):
        out = tmp_path / f"{tag}.json"
        csv = tmp_path / f"{tag}.csv"
        svg = tmp_path / f"{tag}.svg"
        result = runner.invoke(
            main,
            ["diagram", "--d", "5", "--seed", "7", "--out", str(out),
             "--csv", str(csv), "--svg", str(svg)],
        )
        assert result.exit_code == 0
        blobs.append((out.read_bytes(), csv.read_bytes(), svg.read_bytes()))
    assert blobs[0] == blobs[1]
