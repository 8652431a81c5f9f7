#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Pruebas de la línea de comandos: códigos de salida e informes JSON.
"""

import json
from pathlib import Path

import pytest
from rich.console import Console

from msc_logic.backend.adapters.codecs import CfmYamlCodec, MscTextCodec
from msc_logic.backend.adapters.presenters import ReportPresenter
from msc_logic.backend.frameworks.config import SettingsLoader
from msc_logic.backend.frameworks.controllers import CliController
from msc_logic.backend.frameworks.external.fixtures import ladder

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
THREE_PROCESS = str(FIXTURES / "three_process.msc")


@pytest.fixture
def cli(tmp_path):
    console = Console(record=True, width=200)
    loader = SettingsLoader(environ={}, default_path=tmp_path / "none.yaml")
    return CliController(loader, ReportPresenter(console))


def _json(controller):
    return json.loads(controller.presenter.console.export_text())


def test_eval_fo_builtin_gossip(cli):
    assert cli.run(["--json", "eval-fo", "--msc", THREE_PROCESS, "--builtin", "gossip:p1,p3"]) == 0
    report = _json(cli)
    assert report["verdict"] is True
    assert report["exit_code"] == 0


def test_eval_fo_latest_with_bindings(cli):
    args = ["eval-fo", "--msc", THREE_PROCESS, "--builtin", "latest:p1"]
    assert cli.run(args + ["--bind", "x=e5", "--bind", "y=g5"]) == 0
    assert cli.run(args + ["--bind", "x=e4", "--bind", "y=g5"]) == 1


def test_eval_fo_formula_file(cli):
    assert cli.run(["eval-fo", "--msc", THREE_PROCESS, "--formula", str(FIXTURES / "gossip_p1_p3.fo")]) == 0


def test_eval_pdl_events_and_pairs(cli, tmp_path):
    loop_g5 = str(FIXTURES / "loop_g5.pdl")
    assert cli.run(["--json", "eval-pdl", "--msc", THREE_PROCESS, "--formula", loop_g5]) == 0
    assert _json(cli)["result"] == ["g5"]
    path = tmp_path / "sq.pdl"
    path.write_text("(cat (guard-> (lab sq)) next)\n", encoding="utf-8")
    assert cli.run(["eval-pdl", "--msc", THREE_PROCESS, "--formula", str(path), "--pairs"]) == 0


def test_eval_pdl_unknown_process(cli, tmp_path):
    path = tmp_path / "bad.pdl"
    path.write_text("(ex (msg p1 p9) (lab sq))\n", encoding="utf-8")
    assert cli.run(["--json", "eval-pdl", "--msc", THREE_PROCESS, "--formula", str(path)]) == 3
    assert _json(cli)["error"]["error"] == "UnknownProcess"


def test_bounded(cli):
    assert cli.run(["--json", "bounded", "--msc", THREE_PROCESS, "--B", "1"]) == 0
    assert len(_json(cli)["result"]) == 24
    assert cli.run(["bounded", "--msc", THREE_PROCESS, "--B", "4", "--forall"]) == 0
    assert cli.run(["bounded", "--msc", THREE_PROCESS, "--B", "3", "--forall"]) == 1


def test_linearize(cli):
    assert cli.run(["--json", "linearize", "--msc", THREE_PROCESS, "--B", "1"]) == 0
    word = _json(cli)["result"]
    assert len(word) == 24
    assert all(letter.startswith("(") for letter in word)


def test_translate_fo(cli):
    args = ["--json", "translate-fo", "--formula", str(FIXTURES / "latest_p1.fo"), "--processes", "p1,p2,p3"]
    code = cli.run(args)
    assert code in (0, 4)
    if code == 0:
        assert _json(cli)["inputs"]["free"] == ["x", "y"]


def test_compile_and_run(cli, tmp_path):
    msc = tmp_path / "ladder.msc"
    MscTextCodec().dump(ladder(1), msc)
    formula = tmp_path / "some_send.pdl"
    formula.write_text("(E (ex (msg p q) true))\n", encoding="utf-8")
    out = tmp_path / "some_send.cfm.yaml"
    args = ["compile", "--pdl", "--formula", str(formula), "--processes", "p,q", "--labels", "a"]
    assert cli.run(args + ["--emit-cfm", str(out)]) == 0
    assert CfmYamlCodec().load(out).size()["states"] > 0
    assert cli.run(["run-cfm", "--cfm", str(out), "--msc", str(msc)]) == 0


def test_run_cfm_rejects(cli):
    cfm = str(FIXTURES / "one_message.cfm.yaml")
    assert cli.run(["--json", "run-cfm", "--cfm", cfm, "--msc", THREE_PROCESS]) == 3
    assert _json(cli)["error"]["error"] == "IncompatibleAlphabet"


def test_validation_and_usage_errors(cli):
    assert cli.run(["bounded", "--msc", str(FIXTURES / "bad_fifo.msc"), "--B", "1"]) == 3
    assert cli.run(["bounded", "--msc", str(FIXTURES / "missing.msc"), "--B", "1"]) == 3
    assert cli.run(["bounded", "--msc", THREE_PROCESS]) == 2
    assert cli.run(["eval-fo", "--msc", THREE_PROCESS, "--builtin", "gossip:p1"]) == 2
    assert cli.run(["compile", "--pdl", "--formula", "x.pdl"]) == 2


def test_resource_limit_exit_code(cli, tmp_path):
    config = tmp_path / "tight.yaml"
    config.write_text("fo_eval_steps: 3\n", encoding="utf-8")
    args = ["--config", str(config), "--json", "eval-fo", "--msc", THREE_PROCESS, "--builtin", "gossip:p1,p3"]
    assert cli.run(args) == 4
    assert _json(cli)["error"]["stage"] == "fo-eval"


def test_difftest_small(cli, tmp_path):
    args = ["--json", "difftest", "--stage", "bounds", "--seed", "1", "--count", "3", "--max-events", "5",
            "--out", str(tmp_path / "cex")]
    assert cli.run(args) == 0
    (stage,) = _json(cli)["result"]
    assert stage["stage"] == "bounds"
