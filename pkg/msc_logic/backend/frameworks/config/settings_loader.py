#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Carga de la configuración.

Orden de precedencia (de menor a mayor): valores por defecto, fichero YAML,
variables de entorno MSC_LOGIC_<CAMPO> y opciones de la línea de comandos.
El fichero se toma de `--config`, de $MSC_LOGIC_CONFIG o, si existe, de
~/.msc_logic/config.yaml.
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

import yaml

from ...core.entities.errors import ValidationError
from ...core.entities.settings import Settings

logger = logging.getLogger(__name__)

ENV_PREFIX = "MSC_LOGIC_"
CONFIG_ENV = "MSC_LOGIC_CONFIG"
DEFAULT_CONFIG_PATH = Path.home() / ".msc_logic" / "config.yaml"


class SettingsLoader:
    """
    Construye `Settings` a partir de ficheros y del entorno.

    Attributes:
        environ: Entorno consultado (por defecto, os.environ)
        default_path: Fichero usado si no se indica otro
    """

    def __init__(self, environ: Optional[Mapping[str, str]] = None,
                 default_path: Path = DEFAULT_CONFIG_PATH):
        self.environ = os.environ if environ is None else environ
        self.default_path = default_path

    def config_path(self, explicit: Optional[Union[str, Path]] = None) -> Optional[Path]:
        """Fichero de configuración a usar, o None si no hay ninguno."""
        if explicit:
            return Path(explicit)
        if self.environ.get(CONFIG_ENV):
            return Path(self.environ[CONFIG_ENV])
        return self.default_path if self.default_path.exists() else None

    def read_file(self, path: Path) -> Dict[str, Any]:
        """
        Lee un fichero YAML de configuración.

        Raises:
            ValidationError: Si el fichero no existe o no es un diccionario YAML
        """
        try:
            data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        except OSError as exc:
            raise ValidationError(f"no se puede leer la configuración {path}: {exc}") from exc
        except yaml.YAMLError as exc:
            raise ValidationError(f"configuración YAML inválida en {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ValidationError(f"la configuración {path} debe ser un diccionario")
        return data

    def from_environment(self) -> Dict[str, Any]:
        """Valores MSC_LOGIC_<CAMPO> reconocidos."""
        found = {}
        for name in Settings.field_names():
            key = ENV_PREFIX + name.upper()
            if key in self.environ:
                found[name] = self.environ[key]
        return found

    def load(self, explicit: Optional[Union[str, Path]] = None, **overrides: Any) -> Settings:
        """
        Configuración efectiva.

        Args:
            explicit: Ruta indicada con --config
            **overrides: Valores de la línea de comandos (los None se ignoran)

        Raises:
            ValidationError: Fichero ilegible o valores no enteros
        """
        data: Dict[str, Any] = {}
        path = self.config_path(explicit)
        if path is not None:
            data.update(self.read_file(path))
            logger.debug("configuración leída de %s", path)
        unknown = sorted(k for k in data if k not in Settings.field_names())
        if unknown:
            logger.warning("claves de configuración desconocidas ignoradas: %s", ", ".join(unknown))
        data.update(self.from_environment())
        try:
            return Settings.from_dict(data).with_overrides(**overrides)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"valor de configuración inválido: {exc}") from exc

    def write_default(self, path: Optional[Path] = None) -> Path:
        """Escribe la configuración por defecto y devuelve su ruta."""
        path = path or self.default_path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(yaml.safe_dump(Settings().to_dict(), sort_keys=False), encoding="utf-8")
        return path
