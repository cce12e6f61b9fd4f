import json
import subprocess
import sys

import pytest

from gdwm import cli
from gdwm.metrics import PairCounts, compute_metrics
from gdwm.sweep import DEFAULT_MUS, SweepRow, mark_best, sweep, to_csv, to_table


@pytest.fixture
def corpus(tmp_path):
    rec, truth = tmp_path / "records.txt", tmp_path / "truth.txt"
    assert cli.main(["gen", "--entities", "40", "--dup-mean", "3", "--quality", "moderate", "--seed", "2",
                     "--out-records", str(rec), "--out-truth", str(truth)]) == 0
    return rec, truth


def test_run_then_eval_json(corpus, tmp_path, capsys):
    rec, truth = corpus
    links, pairs = tmp_path / "links.txt", tmp_path / "pairs.txt"
    assert cli.main(["run", "--input", str(rec), "--out", str(links), "--dump-pairs", str(pairs)]) == 0
    lines = links.read_text().splitlines()
    assert len(lines) == len(rec.read_text().splitlines())
    assert lines == sorted(lines)
    first = pairs.read_text().splitlines()[0].split(",")
    assert len(first) == 3 and len(first[2].split(".")[1]) == 6
    assert cli.main(["eval", "--links", str(links), "--truth", str(truth), "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert {"tp", "tn", "fp", "fn", "precision", "recall", "f1", "balanced_accuracy"} <= set(report)
    assert 0.0 <= report["f1"] <= 1.0


def test_tc_mode_flag(corpus, tmp_path):
    rec, _ = corpus
    for mode in ("tc", "tc-only", "gdwm"):
        assert cli.main(["run", "--input", str(rec), "--out", str(tmp_path / f"{mode}.txt"), "--mode", mode]) == 0
    assert (tmp_path / "tc.txt").read_bytes() == (tmp_path / "tc-only.txt").read_bytes()


def test_sweep_command(corpus, tmp_path, capsys):
    rec, truth = corpus
    out_csv = tmp_path / "sweep.csv"
    assert cli.main(["sweep", "--input", str(rec), "--truth", str(truth), "--csv", str(out_csv)]) == 0
    table = capsys.readouterr().out.splitlines()
    assert len(table) == 1 + 2 * 9
    rows = out_csv.read_text().splitlines()
    assert rows[0] == "mu,mode,precision,recall,f1,balanced_accuracy,seconds,best"
    assert sum(r.endswith(",*") for r in rows[1:]) == 2


def test_exit_codes(tmp_path, capsys):
    assert cli.main(["run", "--input", str(tmp_path / "missing.txt"), "--out", str(tmp_path / "o")]) == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("no-comma-line\n")
    assert cli.main(["run", "--input", str(bad), "--out", str(tmp_path / "o")]) == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["run", "--mu", "x"])
    assert exc.value.code == 1
    assert cli.main(["gen", "--entities", "-1", "--out-records", "r", "--out-truth", "t"]) == 1


def test_invariant_breach_exit_code(monkeypatch, corpus, tmp_path):
    from gdwm.errors import InvariantError

    def boom(*a, **k):
        raise InvariantError("overlapping clusters")
    monkeypatch.setattr(cli, "cluster_store", boom)
    rec, _ = corpus
    assert cli.main(["run", "--input", str(rec), "--out", str(tmp_path / "o")]) == 2


def test_module_entry_point(corpus, tmp_path):
    rec, _ = corpus
    out = tmp_path / "links.txt"
    proc = subprocess.run([sys.executable, "-m", "gdwm", "--threads", "2", "run", "--input", str(rec),
                           "--out", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert out.exists()


def _row(mu, f1, secs, mode="gdwm"):
    rep = compute_metrics(PairCounts(0, 0, 0, 0), elapsed=secs)
    rep.f1 = f1
    return SweepRow(mu, mode, rep)


def test_best_row_tie_rules():
    rows = [_row(0.3, 0.9, 2.0), _row(0.2, 0.9, 5.0), _row(0.5, 0.8, 0.1)]
    mark_best(rows)
    assert [r.best for r in rows] == [False, True, False]
    rows = [_row(0.2, 0.9, 2.0), _row(0.2, 0.9, 1.0)]
    mark_best(rows)
    assert [r.best for r in rows] == [False, True]


def test_best_row_per_mode():
    rows = [_row(0.1, 0.5, 1, "gdwm"), _row(0.2, 0.6, 1, "gdwm"), _row(0.1, 0.7, 1, "tc"), _row(0.2, 0.1, 1, "tc")]
    mark_best(rows)
    assert [(r.mode, r.mu) for r in rows if r.best] == [("gdwm", 0.2), ("tc", 0.1)]


def test_sweep_shape_and_empty(corpus):
    from gdwm.ingest import merge_sources
    from gdwm.metrics import read_truth
    rec, truth = corpus
    rs = merge_sources([rec])
    rows = sweep(rs, read_truth(truth), DEFAULT_MUS)
    assert len(DEFAULT_MUS) == 9
    assert [(r.mode, r.mu) for r in rows] == [(m, mu) for m in ("gdwm", "tc") for mu in DEFAULT_MUS]
    assert sweep(rs, read_truth(truth), []) == []
    assert to_csv([]).strip() == "mu,mode,precision,recall,f1,balanced_accuracy,seconds,best"
    assert "mu" in to_table(rows).splitlines()[0]


def test_sweep_rows_reproducible(corpus):
    from gdwm.ingest import merge_sources
    from gdwm.metrics import read_truth
    rec, truth = corpus
    rs, t = merge_sources([rec]), read_truth(truth)
    a = [(r.mu, r.mode, r.report.tp, r.report.fp, r.report.fn, r.best) for r in sweep(rs, t, [0.3, 0.6])]
    b = [(r.mu, r.mode, r.report.tp, r.report.fp, r.report.fn, r.best) for r in sweep(rs, t, [0.3, 0.6])]
    assert a == b
