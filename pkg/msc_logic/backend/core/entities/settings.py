#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Módulo que define la entidad Settings (Configuración).

Contiene los presupuestos de recursos de los evaluadores y compiladores y
los parámetros por defecto de las pruebas diferenciales.
"""

from dataclasses import dataclass, fields, replace
from typing import Any, Dict


@dataclass(frozen=True)
class Settings:
    """
    Configuración de msc_logic.

    Attributes:
        fo_eval_steps: Pasos máximos del evaluador FO
        translation_max_nodes: Nodos máximos durante la traducción FO → PDL
        run_search_max_configs: Configuraciones máximas en la búsqueda de ejecuciones
        materialize_max_states: Estados máximos al materializar una máquina
        enumerate_max_labelings: Etiquetados máximos al enumerar salidas
        difftest_count: Casos por defecto de `difftest`
        difftest_max_events: Eventos máximos de los MSC aleatorios
        difftest_processes: Procesos de los MSC aleatorios
        seed: Semilla por defecto
    """
    fo_eval_steps: int = 10_000_000
    translation_max_nodes: int = 2_000_000
    run_search_max_configs: int = 200_000
    materialize_max_states: int = 50_000
    enumerate_max_labelings: int = 100_000
    difftest_count: int = 200
    difftest_max_events: int = 8
    difftest_processes: int = 3
    seed: int = 0

    @classmethod
    def field_names(cls):
        return [f.name for f in fields(cls)]

    def to_dict(self) -> Dict[str, Any]:
        """Convierte la configuración a un diccionario."""
        return {name: getattr(self, name) for name in self.field_names()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Settings":
        """Crea una configuración a partir de un diccionario (ignora claves ajenas)."""
        known = {k: int(v) for k, v in data.items() if k in cls.field_names()}
        return cls(**known)

    def with_overrides(self, **overrides: Any) -> "Settings":
        """Copia con los valores no nulos de `overrides`."""
        return replace(self, **{k: int(v) for k, v in overrides.items() if v is not None})
