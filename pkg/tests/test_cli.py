"""End-to-end checks of the command-line front end.

Everything goes through ``main(argv)`` directly; presets are shrunk with
``--set`` overrides so the whole file runs in a few seconds.
"""

import configparser
import csv

import numpy as np

from smcgbeam.cli import main
from smcgbeam.harness import PRESET_NAMES, config_to_sections, preset


def write_ini(path, sections):
    cp = configparser.ConfigParser()
    cp.read_dict(sections)
    with open(path, "w") as fh:
        cp.write(fh)


class TestListPresets:
    def test_prints_every_preset(self, capsys):
        assert main(["list-presets"]) == 0
        out = capsys.readouterr().out
        for name in PRESET_NAMES:
            assert name in out


class TestRun:
    def test_preset_with_overrides_writes_csv(self, tmp_path, capsys):
        rc = main(
            [
                "run", "--preset", "fig4", "--runs", "2", "--seed", "7",
                "--out", str(tmp_path),
                "--set", "scenario.m=4",
                "--set", "scenario.epochs=1:3",
                "--set", "scenario.n_snapshots=40",
            ]
        )
        assert rc == 0
        out = capsys.readouterr().out
        assert "fig4: 2 runs x 40 snapshots" in out
        assert "wrote" in out
        with open(tmp_path / "fig4.csv") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == [
            "snapshot", "algorithm", "mean_sinr_db", "mean_delta", "update_rate_cum",
        ]
        assert rows[1][0] == "1"
        assert rows[-1][0] == "40"
        assert {r[1] for r in rows[1:]} == {"smcg", "rls", "mvdr"}

    def test_config_file_and_out_env_fallback(self, tmp_path, capsys, monkeypatch):
        (cfg,) = preset("fig6", runs=1)
        sections = config_to_sections(cfg)
        sections["scenario"]["m"] = "4"
        sections["scenario"]["epochs"] = "1:3"
        sections["scenario"]["n_snapshots"] = "30"
        ini = tmp_path / "exp.ini"
        write_ini(ini, sections)
        monkeypatch.setenv("SMCGBEAM_OUT", str(tmp_path / "outdir"))
        assert main(["run", "--config", str(ini), "--runs", "1"]) == 0
        assert (tmp_path / "outdir" / "fig6.csv").exists()
        capsys.readouterr()

    def test_bad_override_exits_2(self, tmp_path, capsys):
        rc = main(
            ["run", "--preset", "fig4", "--out", str(tmp_path), "--set", "nonsense"]
        )
        assert rc == 2
        assert "error:" in capsys.readouterr().err
        assert not (tmp_path / "fig4.csv").exists()

    def test_divergence_exits_1_with_context(self, tmp_path, capsys):
        # unnormalized SG with a huge step blows up within a few snapshots
        sections = {
            "run": {"label": "boom", "runs": "1", "master_seed": "5"},
            "scenario": {
                "m": "8", "inr_db": "30.0", "epochs": "1:3", "n_snapshots": "100",
            },
            "algo:sg": {"kind": "sg", "normalized": "false", "step_size": "1000.0"},
        }
        ini = tmp_path / "boom.ini"
        write_ini(ini, sections)
        with np.errstate(all="ignore"):
            rc = main(["run", "--config", str(ini), "--out", str(tmp_path)])
        assert rc == 1
        err = capsys.readouterr().err
        assert "error:" in err
        assert "'sg'" in err


class TestComplexity:
    HEADER = [
        "m", "algorithm", "update_fraction", "projection_order",
        "additions", "multiplications",
    ]

    def test_writes_table_into_directory(self, tmp_path, capsys):
        rc = main(
            ["complexity", "--m-min", "8", "--m-max", "16", "--m-step", "8",
             "--out", str(tmp_path)]
        )
        assert rc == 0
        assert "wrote" in capsys.readouterr().out
        with open(tmp_path / "complexity.csv") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == self.HEADER
        assert {r[0] for r in rows[1:]} == {"8", "16"}

    def test_explicit_csv_path_creates_parents(self, tmp_path, capsys):
        path = tmp_path / "nested" / "ops.csv"
        rc = main(["complexity", "--m-min", "16", "--m-max", "16", "--out", str(path)])
        assert rc == 0
        capsys.readouterr()
        with open(path) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == self.HEADER
        assert all(r[0] == "16" for r in rows[1:])

    def test_default_out_is_cwd_out(self, tmp_path, monkeypatch, capsys):
        monkeypatch.delenv("SMCGBEAM_OUT", raising=False)
        monkeypatch.chdir(tmp_path)
        assert main(["complexity", "--m-min", "8", "--m-max", "8"]) == 0
        capsys.readouterr()
        assert (tmp_path / "out" / "complexity.csv").exists()

    def test_bad_m_range_exits_2(self, tmp_path, capsys):
        rc = main(
            ["complexity", "--m-min", "16", "--m-max", "8", "--out", str(tmp_path)]
        )
        assert rc == 2
        assert "error:" in capsys.readouterr().err
