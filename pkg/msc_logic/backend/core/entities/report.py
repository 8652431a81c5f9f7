#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Módulo que define la entidad Report (Informe).

Un informe es el registro estructurado que produce cada subcomando de la
CLI; su serialización es determinista (orden de claves estable).
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional


@dataclass
class Report:
    """
    Resultado estructurado de un comando.

    Attributes:
        command: Nombre del subcomando
        inputs: Entradas relevantes (rutas, parámetros)
        verdict: Veredicto booleano, si lo hay
        result: Resultado principal (relación, fórmula, máquina, palabra...)
        statistics: Tamaños y consumo de presupuesto
        timings: Tiempos en segundos (solo si se solicitan)
        error: Error estructurado, si lo hubo
        exit_code: Código de salida asociado
    """
    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    verdict: Optional[bool] = None
    result: Any = None
    statistics: Dict[str, Any] = field(default_factory=dict)
    timings: Optional[Dict[str, float]] = None
    error: Optional[Dict[str, Any]] = None
    exit_code: int = 0

    def to_dict(self) -> Dict[str, Any]:
        """Convierte el informe a un diccionario con orden de claves fijo."""
        data: Dict[str, Any] = {
            "command": self.command,
            "inputs": self.inputs,
            "verdict": self.verdict,
            "result": self.result,
            "statistics": self.statistics,
        }
        if self.timings is not None:
            data["timings"] = self.timings
        if self.error is not None:
            data["error"] = self.error
        data["exit_code"] = self.exit_code
        return data
