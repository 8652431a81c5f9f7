#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Controladores que conectan la línea de comandos con los casos de uso."""

from .cli_controller import CliController, main

__all__ = ["CliController", "main"]
