#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Pruebas de los servicios externos: generadores aleatorios, fixtures,
pruebas diferenciales, carga de configuración y presentación de informes.
"""

import json
import random

import pytest
from rich.console import Console

from msc_logic.backend.adapters.codecs import MscTextCodec
from msc_logic.backend.adapters.presenters.report_presenter import ReportPresenter
from msc_logic.backend.core.entities.errors import ValidationError
from msc_logic.backend.core.entities.report import Report
from msc_logic.backend.core.entities.settings import Settings
from msc_logic.backend.frameworks.config import SettingsLoader
from msc_logic.backend.frameworks.external.difftest_service import Counterexample, DifftestService, Stage
from msc_logic.backend.frameworks.external.fixtures import FIXTURES, three_process, write_fixtures
from msc_logic.backend.frameworks.external.random_formulas import RandomFormulaGenerator
from msc_logic.backend.frameworks.external.random_msc import RandomMscGenerator

SMALL = Settings(difftest_processes=2, seed=7)


def test_random_mscs_respect_size():
    generator = RandomMscGenerator(random.Random(11))
    for msc in generator.many(40, ("p1", "p2", "p3"), ("a", "b"), 8):
        assert 1 <= len(msc) <= 8
        assert all(s in msc.index and r in msc.index for s, r in msc.messages)


def test_random_mscs_are_reproducible():
    first = RandomMscGenerator(random.Random("x")).many(5, ("p", "q"), ("a",), 6)
    again = RandomMscGenerator(random.Random("x")).many(5, ("p", "q"), ("a",), 6)
    assert first == again


def test_random_fo_formulas_have_requested_free_variables():
    generator = RandomFormulaGenerator(random.Random(2), ("p1", "p2"), ("a", "b"))
    for _ in range(20):
        assert generator.fo_sentence(2).free_vars == ()
        assert set(generator.fo_formula(2, ["x"]).free_vars) <= {"x"}


def test_write_fixtures(tmp_path):
    written = write_fixtures(tmp_path / "msc")
    assert sorted(p.name for p in written) == sorted(f"{name}.msc" for name in FIXTURES)
    assert MscTextCodec().load(tmp_path / "msc" / "three_process.msc") == three_process()


def test_counterexample_write(tmp_path):
    example = Counterexample("pdl2cfm", 3, MscTextCodec().serialize(three_process()), "(lab sq)", "distintos")
    paths = example.write(tmp_path / "out")
    assert [p.name for p in paths] == ["pdl2cfm-3.msc", "pdl2cfm-3.formula"]
    assert MscTextCodec().load(paths[0]) == three_process()
    assert paths[1].read_text(encoding="utf-8") == "(lab sq)\n"
    assert example.to_dict()["case"] == 3


class TestDifftest:
    """Pruebas diferenciales pequeñas."""

    def test_bounds_stage(self):
        """Prueba que la etapa de acotación pasa sin contraejemplos."""
        result = DifftestService(SMALL).run(Stage.BOUNDS, count=6, max_events=6)
        (stage,) = result.stages
        assert stage.ok
        assert stage.passed + stage.skipped == 6

    def test_same_seed_same_result(self):
        """Prueba que la misma semilla reproduce el mismo resultado."""
        service = DifftestService(SMALL)
        first = service.run(Stage.FO2PDL, count=3, max_events=5).to_dict()
        again = DifftestService(SMALL).run(Stage.FO2PDL, count=3, max_events=5).to_dict()
        assert first == again
        assert first["seed"] == 7

    def test_pdl2cfm_stage(self):
        """Prueba la etapa del compilador con MSCs diminutos."""
        result = DifftestService(SMALL).run(Stage.PDL2CFM, count=3, max_events=4)
        assert result.ok
        assert [s.stage for s in result.stages] == ["pdl2cfm"]


class TestSettingsLoader:
    """Precedencia de la configuración."""

    def test_defaults_without_file(self, tmp_path):
        """Prueba los valores por defecto cuando no hay fichero."""
        loader = SettingsLoader(environ={}, default_path=tmp_path / "missing.yaml")
        assert loader.config_path() is None
        assert loader.load() == Settings()

    def test_file_environment_and_overrides(self, tmp_path):
        """Prueba fichero < entorno < línea de comandos."""
        path = tmp_path / "config.yaml"
        path.write_text("seed: 3\ndifftest_count: 10\nfo_eval_steps: 99\n", encoding="utf-8")
        loader = SettingsLoader(environ={"MSC_LOGIC_DIFFTEST_COUNT": "20"})
        settings = loader.load(path, fo_eval_steps=5, seed=None)
        assert (settings.seed, settings.difftest_count, settings.fo_eval_steps) == (3, 20, 5)

    def test_config_from_environment_variable(self, tmp_path):
        """Prueba que $MSC_LOGIC_CONFIG indica el fichero."""
        path = tmp_path / "c.yaml"
        path.write_text("seed: 12\nunknown_key: 1\n", encoding="utf-8")
        loader = SettingsLoader(environ={"MSC_LOGIC_CONFIG": str(path)}, default_path=tmp_path / "x.yaml")
        assert loader.load().seed == 12

    def test_invalid_files(self, tmp_path):
        """Prueba ficheros que no son diccionarios y valores no enteros."""
        listing = tmp_path / "list.yaml"
        listing.write_text("- 1\n- 2\n", encoding="utf-8")
        with pytest.raises(ValidationError):
            SettingsLoader(environ={}).load(listing)
        bad = tmp_path / "bad.yaml"
        bad.write_text("seed: muchos\n", encoding="utf-8")
        with pytest.raises(ValidationError):
            SettingsLoader(environ={}).load(bad)

    def test_write_default(self, tmp_path):
        """Prueba que el fichero por defecto se vuelve a leer igual."""
        loader = SettingsLoader(environ={}, default_path=tmp_path / "dir" / "config.yaml")
        path = loader.write_default()
        assert loader.load(path) == Settings()


def test_report_json_is_deterministic():
    report = Report("eval-fo", inputs={"msc": "m.msc"}, verdict=True,
                    result={"events": frozenset({"e2", "e1"})}, statistics={"steps": 4})
    presenter = ReportPresenter(Console(record=True, width=100))
    data = json.loads(presenter.to_json(report))
    assert list(data) == ["command", "inputs", "verdict", "result", "statistics", "exit_code"]
    assert data["result"]["events"] == ["e1", "e2"]
    assert presenter.to_json(report) == presenter.to_json(report)


def test_report_tables():
    console = Console(record=True, width=100)
    report = Report("bounded", verdict=False, error={"error": "ResourceLimit", "message": "fo-eval"},
                    exit_code=4)
    ReportPresenter(console).show(report)
    text = console.export_text()
    assert "bounded" in text
    assert "ResourceLimit" in text
