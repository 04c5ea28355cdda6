"""CLI: golden-file runs on the mini corpus, staged=fused equivalence,
idempotency, exit codes."""

import filecmp
import json
import shutil
from pathlib import Path

import pytest

from detstress.cli import bundled_data_path, main

GOLDEN = Path(__file__).parent / "golden"
GRID = "typo_mixed=0.1;format_zws=0.3;syn_free=0.4"


def _mini_train() -> str:
    return str(bundled_data_path("mini_train.jsonl"))


def _mini_eval() -> str:
    return str(bundled_data_path("mini_eval.jsonl"))


def _generate(tmp_path: Path, out_name="eval_ds.jsonl", seed="7") -> Path:
    out = tmp_path / out_name
    rc = main(["--seed", seed, "generate", "--train", _mini_train(),
               "--prompts", _mini_eval(), "--out", str(out)])
    assert rc == 0
    return out


class TestGolden:
    def test_generate_matches_golden(self, tmp_path):
        out = _generate(tmp_path)
        assert out.read_bytes() == (GOLDEN / "golden_eval.jsonl").read_bytes()

    def test_eval_matches_golden(self, tmp_path):
        shutil.copy(GOLDEN / "golden_eval.jsonl", tmp_path / "eval_ds.jsonl")
        rc = main(["--seed", "7", "eval", "--dataset",
                   str(tmp_path / "eval_ds.jsonl"), "--train", _mini_train(),
                   "--grid", GRID, "--detectors", "gltr,logrank",
                   "--outdir", str(tmp_path / "out")])
        assert rc == 0
        for name in ("cells.csv", "leaderboard.csv", "plot_data.csv"):
            assert (tmp_path / "out" / name).read_bytes() == \
                (GOLDEN / name).read_bytes(), name
        attacked = tmp_path / "out" / "attacked" / "typo_mixed__p_0.1.jsonl"
        assert attacked.read_bytes() == \
            (GOLDEN / "attacked_typo_mixed__p_0.1.jsonl").read_bytes()


class TestDeterminismAndStaging:
    def test_rerun_idempotent(self, tmp_path):
        a = _generate(tmp_path, "a.jsonl")
        b = _generate(tmp_path, "b.jsonl")
        assert a.read_bytes() == b.read_bytes()

    def test_staged_equals_fused(self, tmp_path):
        ds = _generate(tmp_path)
        fused = tmp_path / "fused"
        rc = main(["--seed", "7", "eval", "--dataset", str(ds), "--train",
                   _mini_train(), "--grid", GRID, "--detectors",
                   "gltr,logrank", "--outdir", str(fused)])
        assert rc == 0

        staged = tmp_path / "staged"
        rc = main(["--seed", "7", "attack", "--dataset", str(ds), "--train",
                   _mini_train(), "--grid", GRID, "--outdir", str(staged)])
        assert rc == 0
        manifest = json.loads((staged / "manifest.json").read_text())
        rc = main(["--seed", "7", "detect", "--dataset", str(ds), "--train",
                   _mini_train(), "--detectors", "gltr,logrank",
                   "--outdir", str(staged)])
        assert rc == 0
        for cell in manifest["cells"]:
            rc = main(["--seed", "7", "detect", "--dataset", cell["file"],
                       "--train", _mini_train(), "--detectors",
                       "gltr,logrank", "--outdir", str(staged)])
            assert rc == 0
        rc = main(["--seed", "7", "eval", "--dataset", str(ds), "--train",
                   _mini_train(), "--manifest",
                   str(staged / "manifest.json"), "--detectors",
                   "gltr,logrank", "--outdir", str(staged)])
        assert rc == 0
        for name in ("cells.csv", "leaderboard.csv", "plot_data.csv"):
            assert (staged / name).read_bytes() == \
                (fused / name).read_bytes(), name

    def test_worker_count_invariance(self, tmp_path):
        ds = _generate(tmp_path)
        outs = []
        for workers in ("1", "4"):
            out = tmp_path / f"w{workers}"
            rc = main(["--seed", "7", "--workers", workers, "eval",
                       "--dataset", str(ds), "--train", _mini_train(),
                       "--grid", "typo_mixed=0.1", "--detectors",
                       "gltr,logrank", "--outdir", str(out)])
            assert rc == 0
            outs.append((out / "cells.csv").read_bytes())
        assert outs[0] == outs[1]

    def test_leaderboard_recompute_from_cells(self, tmp_path):
        rc = main(["leaderboard", "--cells", str(GOLDEN / "cells.csv"),
                   "--out", str(tmp_path / "lb.csv")])
        assert rc == 0
        assert (tmp_path / "lb.csv").read_bytes() == \
            (GOLDEN / "leaderboard.csv").read_bytes()

    def test_patch_compare(self, tmp_path):
        ds = _generate(tmp_path)
        out = tmp_path / "patch.csv"
        rc = main(["--seed", "7", "patch-compare", "--dataset", str(ds),
                   "--train", _mini_train(), "--variants", "1d",
                   "--out", str(out)])
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "detector,before_attack,after_attack,with_patch"
        assert lines[1].startswith("detectgpt-1d,")


class TestConfigFile:
    def test_config_supplies_defaults_flags_override(self, tmp_path):
        cfg = tmp_path / "run.ini"
        cfg.write_text(
            f"[run]\nseed = 7\n\n[data]\ntrain = {_mini_train()}\n"
            f"eval = {_mini_eval()}\n\n[generate]\ncount = 5\n",
            encoding="utf-8")
        out = tmp_path / "from_config.jsonl"
        rc = main(["--config", str(cfg), "generate", "--out", str(out)])
        assert rc == 0
        n_lines = len(out.read_text().splitlines())
        assert n_lines == 10  # 5 HWT + 5 MGT

        out2 = tmp_path / "override.jsonl"
        rc = main(["--config", str(cfg), "generate", "--count", "3",
                   "--out", str(out2)])
        assert rc == 0
        assert len(out2.read_text().splitlines()) == 6


class TestExitCodes:
    def test_usage_error_is_1(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 1

    def test_data_error_is_2(self, tmp_path):
        rc = main(["detect", "--dataset", str(tmp_path / "missing.jsonl"),
                   "--train", _mini_train(), "--outdir", str(tmp_path)])
        assert rc == 2

    def test_backend_error_is_3(self, tmp_path):
        ds = _generate(tmp_path)
        rc = main(["--backend-cmd", "/nonexistent/bridge", "attack",
                   "--dataset", str(ds), "--train", _mini_train(),
                   "--grid", "span=0.15", "--outdir", str(tmp_path / "o")])
        assert rc == 3
