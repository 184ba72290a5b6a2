import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from bandsym.band import from_dense, system_to_json
from bandsym.bench import BenchRecord, GenSpec, generate_dense_band, generate_system, read_csv, write_csv
from bandsym.cli import main

from test_bench import load_reference_timings

SVG_NS = "{http://www.w3.org/2000/svg}"


def write_system(path, sys):
    path.write_text(json.dumps(system_to_json(sys)))
    return str(path)


def test_solve_happy_path(tmp_path):
    sys_, x = generate_system(GenSpec(10, 1, seed=1))
    inp = write_system(tmp_path / "in.json", sys_)
    out = tmp_path / "out.json"
    assert main(["solve", "--input", inp, "--output", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["solution"] == [str(v) for v in x]
    assert isinstance(doc["det"], str) and doc["substituted_pivots"] == []


def test_solve_list_storage_stdout(tmp_path, capsys):
    sys_ = from_dense([[0, 1, 0], [1, 0, 0], [0, 0, 1]], 1, [1, 2, 5])
    inp = write_system(tmp_path / "in.json", sys_)
    assert main(["solve", "--input", inp, "--storage", "list"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == {"solution": ["2", "1", "5"], "det": "-1", "substituted_pivots": [1]}


def test_solve_singular(tmp_path, capsys):
    sys_ = from_dense([[1, 1, 0], [1, 1, 0], [0, 0, 1]], 1, [1, 2, 3])
    inp = write_system(tmp_path / "in.json", sys_)
    assert main(["solve", "--input", inp]) == 2
    assert "singular" in capsys.readouterr().err


def test_solve_malformed_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["solve", "--input", str(p)]) == 1


def test_solve_float_zero_pivot(tmp_path):
    sys_ = from_dense([[0, 1, 0], [1, 0, 0], [0, 0, 1]], 1, [1, 2, 5])
    inp = write_system(tmp_path / "in.json", sys_)
    assert main(["solve", "--input", inp, "--backend", "float"]) == 1


def test_solve_float_backend(tmp_path, capsys):
    sys_, x = generate_system(GenSpec(12, 2, seed=1))
    inp = write_system(tmp_path / "in.json", sys_)
    assert main(["solve", "--input", inp, "--backend", "float"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [float(v) for v in doc["solution"]] == pytest.approx([float(v) for v in x])


def test_unknown_flag_exits_1():
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--nope"])
    assert exc.value.code == 1


def test_bench_cardinality(tmp_path):
    csv_path = tmp_path / "b.csv"
    rc = main(["bench", "--sizes", "1000", "--algorithms", "td", "--storage", "fixed",
               "--reps", "3", "--csv", str(csv_path)])
    assert rc == 0
    recs = read_csv(csv_path)
    assert len(recs) == 3
    assert {r.key() for r in recs} == {("STDM", "fixed", "exact", 1000)}


def test_bench_size_gate(tmp_path):
    rc = main(["bench", "--sizes", "5", "--algorithms", "hd", "--csv", str(tmp_path / "b.csv")])
    assert rc == 1
    assert not (tmp_path / "b.csv").exists()


def test_bench_bad_algorithm(tmp_path):
    assert main(["bench", "--sizes", "50", "--algorithms", "qd", "--csv", str(tmp_path / "b.csv")]) == 1


def test_bench_cross_product_and_round_trip(tmp_path, capsys):
    csv_path = tmp_path / "b.csv"
    rc = main(["bench", "--sizes", "20,40", "--algorithms", "td,pd,hd", "--storage", "fixed", "list",
               "--reps", "2", "--seed", "9", "--csv", str(csv_path)])
    assert rc == 0
    lines = csv_path.read_text().splitlines()
    assert len(lines) == 1 + 2 * 3 * 2 * 2
    svg = tmp_path / "chart.svg"
    assert main(["report", "--csv", str(csv_path), "--alpha", "--ratios", "--svg", str(svg)]) == 0
    out = capsys.readouterr().out
    assert "alpha" in out and "HD:TD" in out
    assert len(read_csv(csv_path)) == len(lines) - 1


def _reference_csv(tmp_path, sizes):
    t = load_reference_timings()
    recs = [BenchRecord(alg, "fixed", "exact", n, 0, t[(2, "hybrilit", alg, n)])
            for alg in ("STDM", "SPDM", "SHDM") for n in sizes]
    path = tmp_path / "ref.csv"
    write_csv(path, recs)
    return path


def test_report_alpha_from_reference_table(tmp_path, capsys):
    path = _reference_csv(tmp_path, [10**3, 10**4, 10**5])
    assert main(["report", "--csv", str(path), "--alpha"]) == 0
    out = capsys.readouterr().out
    row = next(line for line in out.splitlines() if line.startswith("SHDM") and "100000" in line
               and "10000 " in line)
    assert row.split()[5] == "1.00"


def test_report_single_size_alpha(tmp_path):
    path = _reference_csv(tmp_path, [10**4])
    assert main(["report", "--csv", str(path), "--alpha"]) == 3


def test_report_unparseable_csv(tmp_path):
    p = tmp_path / "junk.csv"
    p.write_text("algorithm,storage,backend,n,rep,seconds\nSTDM,fixed,exact,ten,0,1.0\n")
    assert main(["report", "--csv", str(p)]) == 1
    assert main(["report", "--csv", str(tmp_path / "missing.csv")]) == 1


def test_report_svg_is_well_formed(tmp_path):
    path = _reference_csv(tmp_path, [10**3, 10**4, 10**5])
    svg = tmp_path / "out.svg"
    assert main(["report", "--csv", str(path), "--svg", str(svg)]) == 0
    text = svg.read_text()
    assert text.startswith("<svg")
    root = ET.fromstring(text)
    assert root.tag == SVG_NS + "svg"
    bars = [e for e in root.iter(SVG_NS + "rect") if e.get("class") == "bar"]
    assert len(bars) == 9  # 3 sizes x 3 algorithms
    texts = " ".join(e.text or "" for e in root.iter(SVG_NS + "text"))
    assert "time [s]" in texts and "N (matrix rows)" in texts


@pytest.mark.parametrize("target, w", [("pd", 2), ("td", 1)])
def test_reduce_then_solve_matches_direct(tmp_path, target, w):
    sys_, x = generate_dense_band(14, 3, seed=4)
    inp = write_system(tmp_path / "hd.json", sys_)
    reduced = tmp_path / "red.json"
    rep = tmp_path / "rep.json"
    assert main(["reduce", "--input", inp, "--to", target, "--output", str(reduced),
                 "--report", str(rep)]) == 0
    report = json.loads(rep.read_text())
    assert report["w_from"] == 3 and report["w_to"] == w and report["n"] == 14
    assert json.loads(reduced.read_text())["w"] == w

    direct, via = tmp_path / "direct.json", tmp_path / "via.json"
    assert main(["solve", "--input", inp, "--output", str(direct)]) == 0
    assert main(["solve", "--input", str(reduced), "--output", str(via)]) == 0
    assert json.loads(direct.read_text())["solution"] == json.loads(via.read_text())["solution"]


def test_reduce_pipe_into_solve(tmp_path):
    sys_, _ = generate_dense_band(12, 3, seed=2)
    inp = write_system(tmp_path / "hd.json", sys_)
    cmd = [sys.executable, "-m", "bandsym"]
    reduce = subprocess.run(cmd + ["reduce", "--input", inp, "--to", "td"],
                            capture_output=True, text=True, check=True)
    assert json.loads(reduce.stderr)["reference_ops"] == (35 * 12 - 122) + (23 * 12 - 52)
    piped = subprocess.run(cmd + ["solve", "--input", "-"], input=reduce.stdout,
                           capture_output=True, text=True, check=True)
    direct = subprocess.run(cmd + ["solve", "--input", inp], capture_output=True, text=True, check=True)
    assert json.loads(piped.stdout)["solution"] == json.loads(direct.stdout)["solution"]
