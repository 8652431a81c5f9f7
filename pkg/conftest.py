#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Configuración común de pytest: marca `slow` y opción --runslow."""

import pytest


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="ejecutar también las pruebas a escala de aceptación")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: prueba a escala de aceptación (requiere --runslow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="usar --runslow para ejecutarla")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
