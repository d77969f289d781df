import json

import numpy as np
import pytest

from ksplits import presets
from ksplits.cli import main
from ksplits.data import load_labels, load_matrix, save_labels, save_matrix


@pytest.fixture
def blobs_files(tmp_path):
    ds = presets.mixture([[0, 0], [40, 0], [0, 40]], [100, 100, 100], 1.5, 3, "blobs")
    data = tmp_path / "blobs.txt"
    truth = tmp_path / "blobs-labels.txt"
    save_matrix(ds.data, data)
    save_labels(ds.truth, truth)
    return data, truth


def test_run_reports_and_writes(blobs_files, tmp_path, capsys):
    data, truth = blobs_files
    out = tmp_path / "res.json"
    assert main(["run", "--input", str(data), "--truth", str(truth), "--output", str(out)]) == 0
    line = capsys.readouterr().out.strip()
    assert "detected_k=3" in line and "ari=1.000000" in line
    doc = json.loads(out.read_text())
    assert doc["final_k"] == 3
    assert doc["wall_time"] is None
    assert len((tmp_path / "res.json.labels").read_text().splitlines()) == 300


def test_run_timing_flag(blobs_files, tmp_path):
    data, _ = blobs_files
    out = tmp_path / "res.json"
    assert main(["run", "--input", str(data), "--output", str(out), "--timing"]) == 0
    assert json.loads(out.read_text())["wall_time"] >= 0


def test_run_bad_beta(blobs_files, capsys):
    data, _ = blobs_files
    assert main(["run", "--input", str(data), "--beta", "1.5"]) == 2
    assert "(0, 1)" in capsys.readouterr().err


def test_run_bad_flag(blobs_files):
    data, _ = blobs_files
    assert main(["run", "--input", str(data), "--fine-tune", "maybe"]) == 2
    assert main(["run", "--bogus"]) == 2


def test_run_missing_file_is_runtime_error(tmp_path):
    assert main(["run", "--input", str(tmp_path / "nope.txt")]) == 1


def test_run_deterministic(blobs_files, tmp_path):
    data, _ = blobs_files
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert main(["run", "--input", str(data), "--beta", "0.05", "--output", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a.json.labels").read_bytes() == (tmp_path / "b.json.labels").read_bytes()


def test_run_with_pca(blobs_files, tmp_path, capsys):
    data, truth = blobs_files
    assert main(["run", "--input", str(data), "--truth", str(truth), "--pca-variance", "0.9"]) == 0
    assert "ari=1.000000" in capsys.readouterr().out


def test_run_pca_bad_fraction(blobs_files):
    data, _ = blobs_files
    assert main(["run", "--input", str(data), "--pca-variance", "0"]) == 2


def test_run_options_echoed(blobs_files, tmp_path):
    data, _ = blobs_files
    out = tmp_path / "r.json"
    args = ["run", "--input", str(data), "--initial-k", "2", "--jk-select", "false",
            "--fine-tune", "false", "--seed", "5", "--output", str(out)]
    assert main(args) == 0
    cfg = json.loads(out.read_text())["config"]
    assert cfg == {"beta": 0.1, "initial_k": 2, "use_jk_selection": False, "fine_tune": False,
                   "max_clusters": None, "seed": 5}


def test_seed_env_override(blobs_files, tmp_path, monkeypatch):
    data, _ = blobs_files
    monkeypatch.setenv("KSPLITS_SEED", "17")
    out = tmp_path / "r.json"
    assert main(["run", "--input", str(data), "--initial-k", "2", "--output", str(out)]) == 0
    assert json.loads(out.read_text())["config"]["seed"] == 17


def test_kmeans_best_of_ten(blobs_files, tmp_path, capsys):
    data, truth = blobs_files
    out = tmp_path / "km.json"
    assert main(["kmeans", "--input", str(data), "--k", "3", "--truth", str(truth), "--output", str(out)]) == 0
    line = capsys.readouterr().out
    assert "10R-k-means" in line
    ari = float(line.split("ari=")[1].split()[0])
    assert ari >= 0.99
    assert json.loads(out.read_text())["repeats"] == 10


def test_kmeans_single_repeat(blobs_files, capsys):
    data, _ = blobs_files
    assert main(["kmeans", "--input", str(data), "--k", "3", "--repeats", "1"]) == 0
    assert "1R-k-means" in capsys.readouterr().out


def test_kmeans_k_zero(blobs_files):
    data, _ = blobs_files
    assert main(["kmeans", "--input", str(data), "--k", "0"]) == 2


def test_kmeans_k_too_large(blobs_files):
    data, _ = blobs_files
    assert main(["kmeans", "--input", str(data), "--k", "1000"]) == 1


def test_generate_files(tmp_path):
    prefix = str(tmp_path / "g")
    assert main(["generate", "--n", "10000", "--clusters", "10", "--dim", "10", "--seed", "1",
                 "--output-prefix", prefix]) == 0
    data = load_matrix(prefix + ".txt")
    truth = load_labels(prefix + "-labels.txt")
    assert data.shape == (10000, 10)
    assert len(np.unique(truth)) == 10


def test_generate_single_cluster(tmp_path):
    prefix = str(tmp_path / "one")
    assert main(["generate", "--n", "50", "--clusters", "1", "--arrangement", "grid",
                 "--output-prefix", prefix]) == 0
    assert set(load_labels(prefix + "-labels.txt").tolist()) == {0}


def test_generate_reproducible(tmp_path):
    for name in ("a", "b"):
        assert main(["generate", "--n", "300", "--clusters", "4", "--seed", "9",
                     "--output-prefix", str(tmp_path / name)]) == 0
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()
    assert (tmp_path / "a-labels.txt").read_bytes() == (tmp_path / "b-labels.txt").read_bytes()


@pytest.mark.parametrize("args", [["--n", "5", "--clusters", "10"], ["--n", "10", "--clusters", "0"],
                                  ["--n", "10", "--clusters", "2", "--std", "-1"]])
def test_generate_invalid(tmp_path, args):
    assert main(["generate", *args, "--output-prefix", str(tmp_path / "x")]) == 2


def _write(path, labels):
    path.write_text("".join(f"{v}\n" for v in labels))
    return str(path)


def test_ari_command(tmp_path, capsys):
    a = _write(tmp_path / "a", [0, 0, 1, 1])
    b = _write(tmp_path / "b", [0, 1, 1, 1])
    c = _write(tmp_path / "c", [1, 1, 2, 2])
    assert main(["ari", a, a]) == 0
    assert main(["ari", a, b]) == 0
    assert main(["ari", a, c]) == 0
    assert capsys.readouterr().out.split() == ["1.000000", "0.000000", "1.000000"]


def test_ari_length_mismatch(tmp_path):
    a = _write(tmp_path / "a", [0, 0, 1])
    b = _write(tmp_path / "b", [0, 1])
    assert main(["ari", a, b]) == 1


def test_bench_unknown_suite(tmp_path):
    assert main(["bench", "--suite", "nope", "--output", str(tmp_path / "x.csv")]) == 2


def test_help_lists_beta_presets(capsys):
    with pytest.raises(SystemExit):
        from ksplits.cli import build_parser
        build_parser().parse_args(["run", "--help"])
    out = capsys.readouterr().out
    assert "0.01" in out and "0.95" in out
