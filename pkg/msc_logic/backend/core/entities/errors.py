#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Módulo que define la jerarquía de errores de msc_logic.

Todos los errores del dominio heredan de MscLogicError y llevan un código
de salida que el controlador de la CLI utiliza directamente.
"""

from typing import Any, Dict, List, Optional


class MscLogicError(Exception):
    """Error base de la biblioteca."""
    exit_code = 5

    def to_dict(self) -> Dict[str, Any]:
        """Representación estructurada del error para los informes."""
        return {"error": type(self).__name__, "message": str(self)}


class ValidationError(MscLogicError):
    """Entrada inválida (MSC, fórmula, palabra, autómata...)."""
    exit_code = 3


class InternalInvariantBreach(MscLogicError):
    """Una comprobación interna de consistencia ha fallado."""
    exit_code = 5


class ResourceLimit(MscLogicError):
    """
    Se ha agotado un presupuesto configurable.

    Attributes:
        stage: Etapa en la que se agotó el presupuesto
        limit: Límite configurado
        used: Cantidad consumida al abortar
    """
    exit_code = 4

    def __init__(self, stage: str, limit: int, used: Optional[int] = None):
        self.stage = stage
        self.limit = limit
        self.used = used if used is not None else limit
        super().__init__(f"límite de recursos alcanzado en '{stage}' ({self.used} > {limit})")

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data.update({"stage": self.stage, "limit": self.limit, "used": self.used})
        return data


# --- Violaciones de invariantes de un MSC ---

class MscViolation(ValidationError):
    """Violación concreta de un invariante de MSC."""


class NonFifoChannel(MscViolation):
    """Dos mensajes del mismo canal se cruzan."""


class EventInTwoMessages(MscViolation):
    """Un evento participa en más de un mensaje."""


class CyclicDependency(MscViolation):
    """La relación → ∪ ⊳ contiene un ciclo."""


class CrossProcessProcEdge(MscViolation):
    """Un mensaje conecta dos eventos del mismo proceso."""


class UnknownProcess(MscViolation):
    """Proceso no declarado."""


class UnknownLabel(MscViolation):
    """Etiqueta no declarada."""


class UnknownEvent(MscViolation):
    """Identificador de evento no declarado."""


class DuplicateEvent(MscViolation):
    """Identificador de evento repetido."""


class EmptyMsc(MscViolation):
    """El MSC no tiene eventos, procesos o etiquetas."""


class MscValidationError(ValidationError):
    """
    Error que agrupa todas las violaciones encontradas al validar un MSC.

    Attributes:
        violations: Lista completa de violaciones
    """

    def __init__(self, violations: List[MscViolation]):
        self.violations = list(violations)
        detail = "; ".join(f"{type(v).__name__}: {v}" for v in self.violations)
        super().__init__(f"MSC inválido ({len(self.violations)} violaciones): {detail}")

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data["violations"] = [v.to_dict() for v in self.violations]
        return data


# --- Errores de formato y sintaxis ---

class MscFormatError(ValidationError):
    """Error de sintaxis en el formato de texto de MSC."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"línea {line}: {message}" if line is not None else message)


class FormulaSyntaxError(ValidationError):
    """Error de sintaxis en una fórmula (con línea y columna)."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"{message} (línea {line}, columna {column})")

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data.update({"line": self.line, "column": self.column})
        return data


class CfmFormatError(ValidationError):
    """Documento de CFM mal formado."""


class UnboundVariable(ValidationError):
    """Variable libre sin valor en la interpretación."""


class NotALinearization(ValidationError):
    """El orden dado no es una linealización del MSC."""


class MalformedWord(ValidationError):
    """Palabra de linealización que no describe ningún MSC."""


class IncompatibleAlphabet(ValidationError):
    """Procesos o alfabetos incompatibles entre máquina y MSC."""


class UnsupportedFragment(ValidationError):
    """La fórmula usa operadores fuera del fragmento admitido."""


class LoopNotAllowed(UnsupportedFragment):
    """Se encontró un Loop donde solo se admiten fórmulas sin bucles."""


class NotMinMaxShape(ValidationError):
    """El camino no tiene la forma min/max requerida."""


class NotExistsBBounded(ValidationError):
    """El MSC no es ∃B-acotado."""
