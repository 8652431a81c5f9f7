#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Módulo que define la interfaz de los códecs.

Un códec traduce entre la representación textual de una entidad (MSC,
fórmula, CFM, palabra de linealización) y la entidad en memoria. Los
adaptadores concretos implementan este contrato.
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Generic, TypeVar, Union

T = TypeVar('T')


class Codec(Generic[T], ABC):
    """
    Interfaz base para todos los códecs.

    Las implementaciones deben ser deterministas: serializar dos veces la
    misma entidad produce el mismo texto.
    """

    @abstractmethod
    def parse(self, text: str) -> T:
        """
        Interpreta un texto.

        Args:
            text: Texto de entrada

        Returns:
            La entidad descrita por el texto

        Raises:
            ValidationError: Si el texto está mal formado
        """
        pass

    @abstractmethod
    def serialize(self, value: T) -> str:
        """
        Convierte una entidad a texto.

        Args:
            value: La entidad a serializar

        Returns:
            Texto que `parse` vuelve a convertir en una entidad equivalente
        """
        pass

    def load(self, path: Union[str, Path]) -> T:
        """Lee y analiza un fichero UTF-8."""
        return self.parse(Path(path).read_text(encoding="utf-8"))

    def dump(self, value: T, path: Union[str, Path]) -> None:
        """Escribe la serialización de `value` en un fichero UTF-8."""
        Path(path).write_text(self.serialize(value), encoding="utf-8")
