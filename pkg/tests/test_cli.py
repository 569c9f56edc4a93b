import csv
import json

import numpy as np
import pytest

from aqm import golden
from aqm.cli import EXIT_ERROR, EXIT_GOLDEN, EXIT_OK, main
from aqm.image import write_pgm
from aqm.corpus import zone_plate


@pytest.fixture
def run(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)

    def _run(*argv):
        return main([str(a) for a in argv])

    return _run


def read_int_csv(path):
    return np.loadtxt(path, delimiter=",", dtype=int)


def test_gen_4k_golden(run, tmp_path):
    assert run("gen", "--preset", "4k", "--kind", "intra", "--golden", "--output", "out") == EXIT_OK
    assert np.array_equal(read_int_csv(tmp_path / "out/qm_4k_intra_8.csv"), golden.AQM_INTRA_4K)
    assert json.loads((tmp_path / "out/qm_4k_intra_8.json").read_text()) == golden.AQM_INTRA_4K.tolist()
    manifest = json.loads((tmp_path / "out/gen.manifest.json").read_text())
    assert manifest["subcommand"] == "gen" and len(manifest["outputs"]) == 4


def test_gen_default_tables_golden(run):
    assert run("gen", "--golden", "--output", "d") == EXIT_OK
    assert run("gen", "--kind", "inter", "--golden", "--output", "d") == EXIT_OK
    assert run("gen", "--size", "32", "--golden", "--output", "d") == EXIT_OK


def test_gen_csv_format(run, tmp_path):
    assert run("gen", "--output", "d", "--format", "csv") == EXIT_OK
    text = (tmp_path / "d/fwm_default.csv").read_text().splitlines()
    first_row = text[0].split(",")
    assert len(first_row) == 8
    assert abs(float(first_row[4]) - golden.FWM_DEFAULT[0, 4]) <= 5e-5
    assert not (tmp_path / "d/fwm_default.json").exists()


def test_gen_golden_mismatch_exit_code(run, monkeypatch):
    tampered = golden.AQM_INTRA_4K.copy()
    tampered[7, 7] = 99
    monkeypatch.setattr(golden, "AQM_INTRA_4K", tampered)
    assert run("gen", "--preset", "4k", "--golden", "--output", "o") == EXIT_GOLDEN


def test_gen_golden_unavailable(run):
    assert run("gen", "--preset", "hd", "--golden", "--output", "o") == EXIT_ERROR


@pytest.mark.parametrize("geometry", ["0x0", "axb", "70000x100"])
def test_gen_bad_geometry(run, geometry):
    assert run("gen", "--geometry", geometry) == EXIT_ERROR


def test_gen_max_is_flat(run, tmp_path):
    assert run("gen", "--preset", "max", "--output", "m") == EXIT_OK
    qm = read_int_csv(tmp_path / "m/qm_max_intra_8.csv")
    assert qm[0, 0] == 16 and set(np.unique(qm)) <= {16, 17}


def test_fwm_subcommand(run, tmp_path):
    assert run("fwm", "--golden", "--output", "f") == EXIT_OK
    values = json.loads((tmp_path / "f/fwm.json").read_text())
    assert np.max(np.abs(np.array(values) - golden.FWM_DEFAULT)) <= 5e-5
    assert run("fwm", "--dis", "1024", "--output", "g") == EXIT_OK
    assert run("fwm", "--dis", "1024", "--golden", "--output", "g") == EXIT_ERROR
    assert run("fwm", "--s", "0", "--output", "g") == EXIT_ERROR


def test_simulate_default_sweep(run, tmp_path):
    assert run("simulate", "--size", "128", "--output", "r.csv") == EXIT_OK
    rows = list(csv.DictReader((tmp_path / "r.csv").open()))
    assert list(rows[0]) == ["layer", "label", "qp", "qm_source", "psnr_db", "rate_bits"]
    for source in ("default", "adaptive"):
        assert len([r for r in rows if r["qm_source"] == source]) == 12
    assert (tmp_path / "r.csv.manifest.json").exists()


def test_simulate_single_layer(run, tmp_path):
    assert run("simulate", "--size", "64", "--layers", "bl", "--qm-source", "adaptive", "--output", "r.csv") == EXIT_OK
    assert len((tmp_path / "r.csv").read_text().splitlines()) == 1 + 4


def test_simulate_is_deterministic_and_replayable(run, tmp_path):
    args = ("simulate", "--size", "64", "--corpus", "noise", "--seed", "9")
    assert run(*args, "--workers", "1", "--output", "a.csv") == EXIT_OK
    assert run(*args, "--workers", "4", "--output", "b.csv") == EXIT_OK
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    first = (tmp_path / "a.csv").read_bytes()
    (tmp_path / "a.csv").unlink()
    assert run("--replay", "a.csv.manifest.json") == EXIT_OK
    assert (tmp_path / "a.csv").read_bytes() == first


def test_simulate_from_pgm(run, tmp_path):
    write_pgm(tmp_path / "src.pgm", zone_plate(64))
    assert run("simulate", "--input", "src.pgm", "--layers", "bl,el1", "--output", "r.csv") == EXIT_OK


@pytest.mark.parametrize("layers", ["el1,bl", "BL=64x64:hd,EL=32x32:4k", "nonsense", "bl,EL=999x999:4k"])
def test_simulate_bad_layers(run, layers):
    assert run("simulate", "--size", "64", "--layers", layers, "--output", "r.csv") == EXIT_ERROR


def test_simulate_bad_source(run):
    assert run("simulate", "--size", "64", "--qm-source", "sony", "--output", "r.csv") == EXIT_ERROR


def test_pack_unpack_round_trip(run, tmp_path):
    assert run("pack", "--geometries", "hd,4k,8k", "--output", "p.aqms") == EXIT_OK
    assert run("unpack", "--input", "p.aqms", "--output", "p.json") == EXIT_OK
    doc = json.loads((tmp_path / "p.json").read_text())
    assert len(doc["layers"]) == 3 and [m["kind"] for m in doc["layers"][0]] == ["intra", "inter"]
    assert doc["layers"][1][0]["matrix"] == golden.AQM_INTRA_4K.tolist()
    assert run("pack", "--input", "p.json", "--output", "q.aqms") == EXIT_OK
    assert run("unpack", "--input", "q.aqms", "--output", "q.json") == EXIT_OK
    assert (tmp_path / "p.json").read_text() == (tmp_path / "q.json").read_text()


def test_unpack_errors(run, tmp_path, capsys):
    assert run("pack", "--geometries", "hd", "--output", "p.aqms") == EXIT_OK
    blob = (tmp_path / "p.aqms").read_bytes()
    (tmp_path / "t.aqms").write_bytes(blob[:-3])
    assert run("unpack", "--input", "t.aqms") == EXIT_ERROR
    (tmp_path / "m.aqms").write_bytes(b"JUNK" + blob[4:])
    capsys.readouterr()
    assert run("unpack", "--input", "m.aqms") == EXIT_ERROR
    assert "JUNK" in capsys.readouterr().err


def test_pack_errors(run, tmp_path):
    assert run("pack", "--output", "p.aqms") == EXIT_ERROR
    (tmp_path / "bad.json").write_text("{not json")
    assert run("pack", "--input", "bad.json") == EXIT_ERROR
    (tmp_path / "range.json").write_text(json.dumps({"layers": [[{"kind": "intra", "matrix": [[0] * 8] * 8}]]}))
    assert run("pack", "--input", "range.json") == EXIT_ERROR


def test_bdrate_plain_csv(run, tmp_path, capsys):
    (tmp_path / "a.csv").write_text("rate,psnr\n1000,30\n1800,33\n3300,36\n6000,39\n")
    (tmp_path / "b.csv").write_text("rate,psnr\n1100,30\n1980,33\n3630,36\n6600,39\n")
    capsys.readouterr()
    assert run("bdrate", "a.csv", "b.csv", "--gnuplot", "g") == EXIT_OK
    assert capsys.readouterr().out.strip() == "10.00%"
    lines = (tmp_path / "g/anchor.dat").read_text().splitlines()
    assert lines[1].split() == ["1000.000", "30.000000"]


def test_bdrate_from_report(run, tmp_path, capsys):
    assert run("simulate", "--size", "128", "--output", "r.csv") == EXIT_OK
    capsys.readouterr()
    assert run("bdrate", "r.csv", "r.csv", "--label", "EL1",
               "--anchor-source", "default", "--test-source", "adaptive") == EXIT_OK
    out = capsys.readouterr().out.strip()
    assert out.endswith("%") and float(out[:-1]) < 0
    assert run("bdrate", "r.csv", "r.csv") == EXIT_ERROR


def test_usage_errors_exit_1(run):
    assert run() == EXIT_ERROR
    assert run("frobnicate") == EXIT_ERROR
    assert run("gen", "--kind", "chroma") == EXIT_ERROR
