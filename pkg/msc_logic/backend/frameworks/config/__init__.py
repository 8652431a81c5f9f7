#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Configuración de la aplicación."""

from .settings_loader import SettingsLoader

__all__ = ["SettingsLoader"]
