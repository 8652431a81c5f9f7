#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Generadores aleatorios, corpus, fixtures y pruebas diferenciales."""

from .difftest_service import DifftestResult, DifftestService, Stage
from .fixtures import three_process, four_process, ladder, write_fixtures
from .random_formulas import RandomFormulaGenerator
from .random_msc import RandomMscGenerator

__all__ = [
    "DifftestResult",
    "DifftestService",
    "RandomFormulaGenerator",
    "RandomMscGenerator",
    "Stage",
    "three_process",
    "four_process",
    "ladder",
    "write_fixtures",
]
