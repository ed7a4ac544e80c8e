import json
import subprocess
import sys

import pytest

from rodvol import __version__
from rodvol.cli import main
from rodvol.volbounds import V_OCT

FOUR_RODS = {"rods": [{"direction": d} for d in ([2, 4, 3], [5, 7, 1], [9, 8, 6], [0, 0, 1])]}


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    assert code == 0, err
    report = json.loads(out)
    assert set(report) == {"command", "input_digest", "result", "version"}
    assert report["version"] == __version__
    return report["result"]


def stacked(pqs):
    n = len(pqs)
    return {
        "horizontal": [{"pq": list(pq), "z": f"{n - i}/{n + 1}"} for i, pq in enumerate(pqs)],
        "vertical": [{"xy": ["1/2", "1/2"]}],
    }


def test_classify(tmp_path, capsys):
    three = write(tmp_path, "a.json", {"rods": [{"direction": d} for d in ([1, 0, 0], [0, 1, 0], [0, 0, 1])]})
    one = write(tmp_path, "b.json", {"rods": [{"direction": [0, 0, 1]}]})
    flat = write(tmp_path, "c.json", {"rods": [{"direction": [1, 0, 0]}, {"direction": [0, 1, 0]}]})
    assert run_json(capsys, "classify", three)["type"] == "Hyperbolic"
    assert run_json(capsys, "classify", one)["type"] == "SeifertFibred"
    assert run_json(capsys, "classify", flat)["type"] == "Toroidal"
    code, out, _ = run(capsys, "classify", three)
    assert code == 0 and out.startswith("Hyperbolic")


def test_bounds_optimize(tmp_path, capsys):
    path = write(tmp_path, "r.json", FOUR_RODS)
    g = run_json(capsys, "bounds", path, "--optimize")["general"]
    assert g["table"] == [116, 114, 132, 50]
    assert g["multiplier_tet"] == 8 * 50
    assert "rod 3" in g["upper_method"]


def test_bounds_bad_upper_family(tmp_path, capsys):
    path = write(tmp_path, "n10.json", stacked([(10, 1), (0, 1)]))
    o = run_json(capsys, "bounds", path, "--cf", "[10]", "--cf", "[0]")["orthogonal"]
    assert o["multiplier_oct"] == 4
    assert o["upper"] == pytest.approx(4 * V_OCT, rel=1e-11)


def test_bounds_inf_vol_family(tmp_path, capsys):
    path = write(tmp_path, "k6.json", stacked([(53353, 8658), (0, 1)]))
    o = run_json(capsys, "bounds", path, "--cf", "[6;6,6,6,6,6]", "--cf", "[0]")["orthogonal"]
    assert o["lower"] == pytest.approx(0.0764, abs=1e-4)
    assert o["C"] == 6 and o["sum_m"] == 7


def test_bounds_seifert_flagged(tmp_path, capsys):
    path = write(tmp_path, "s.json", {"rods": [{"direction": [0, 0, 1]}] * 3})
    g = run_json(capsys, "bounds", path)["general"]
    assert g["applicable"] is False and g["upper"] == "inf"


@pytest.mark.parametrize(
    "argv, key, want",
    [
        (("cf", "7/4", "--algo", "nicf"), "cf", "[2;-4]"),
        (("cf", "7/4", "--algo", "euclid"), "cf", "[1;1,3]"),
        (("cf", "5/3", "--algo", "minimal"), "length", 2),
        (("cf", "1/0", "--algo", "minimal"), "length", 0),
    ],
)
def test_cf(capsys, argv, key, want):
    assert run_json(capsys, *argv)[key] == want


def test_cf_exhausted_is_reported(capsys):
    result = run_json(capsys, "cf", "53353/8658", "--max-nodes", "100")
    assert "budget" in result["exhausted"]


def test_trace(capsys):
    assert run_json(capsys, "trace", "5/3", "--algo", "euclid")["trace"] == [
        [0, 1, 0], [2, 1, 0], [2, 3, 0], [5, 3, 0]
    ]
    assert run_json(capsys, "trace", "[1;1,2]")["trace"][-1] == [5, 3, 0]
    assert len(run_json(capsys, "trace", "[4]")["trace"]) == 2
    assert run_json(capsys, "trace", "[]")["trace"] == [[1, 0, 0]]


def test_table_four_rods(capsys):
    rows = run_json(capsys, "table", "remark33")["rows"]
    assert [r["multiplier"] for r in rows] == [116, 114, 132, 50]
    assert [r["is_min"] for r in rows] == [False, False, False, True]


def test_table_inf_vol(capsys, tmp_path):
    rows = run_json(capsys, "table", "cor_inf_vol", "--k-min", "6", "--k-max", "8", "--jobs", "3",
                    "--output-dir", str(tmp_path))["rows"]
    assert [(r["p"], r["q"]) for r in rows] == [(53353, 8658), (927843, 129949), (18674305, 2298912)]
    assert (tmp_path / "cor_inf_vol.csv").read_text().startswith("k,p,q,")
    assert json.loads((tmp_path / "cor_inf_vol.json").read_text())["name"] == "cor_inf_vol"


def test_table_bad_upper(capsys):
    rows = run_json(capsys, "table", "cor_bad_upper")["rows"]
    assert len(rows) == 20
    assert {r["orth_upper"] for r in rows} == {rows[0]["orth_upper"]}
    assert [r["intersection"] for r in rows] == list(range(1, 21))


def test_json_is_deterministic(tmp_path, capsys):
    path = write(tmp_path, "r.json", FOUR_RODS)
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "bounds", path, "--optimize", "--json")
        outs.append(out)
    assert outs[0] == outs[1]
    code, out, _ = run(capsys, "table", "cor_inf_vol", "--k-max", "9", "--jobs", "4", "--json")
    code, again, _ = run(capsys, "table", "cor_inf_vol", "--k-max", "9", "--jobs", "1", "--json")
    assert json.loads(out)["result"] == json.loads(again)["result"]


@pytest.mark.parametrize(
    "content",
    ['{"rods":[{"direction":[2,4,2]}]}', "{", '{"horizontal":[{"pq":[1,0],"z":"2"}]}'],
)
def test_input_errors_exit_2(tmp_path, capsys, content):
    code, _, err = run(capsys, "classify", write(tmp_path, "bad.json", content))
    assert code == 2 and err.startswith("error:")


def test_other_input_errors(tmp_path, capsys):
    assert run(capsys, "classify", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "cf", "3/x")[0] == 2
    assert run(capsys, "trace", "[1;0]")[0] == 2
    assert run(capsys, "table", "cor_bad_upper", "--n-min", "5", "--n-max", "2")[0] == 2
    path = write(tmp_path, "r.json", FOUR_RODS)
    assert run(capsys, "bounds", path, "--chosen", "9")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rodvol", "cf", "7/4", "--algo", "nicf"],
        capture_output=True, text=True, check=True,
    )
    assert "[2;-4]" in proc.stdout
