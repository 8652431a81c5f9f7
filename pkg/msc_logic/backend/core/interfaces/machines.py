#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Módulo que define la interfaz común de los autómatas comunicantes.

Los CFMs explícitos, los transductores base y las composiciones perezosas
(producto, composición, proyección) implementan el mismo contrato, de modo
que la búsqueda de ejecuciones y la materialización no distinguen entre ellos.
"""

from abc import ABC, abstractmethod
from typing import Callable, Dict, Hashable, List, Mapping, Optional, Tuple

from ..entities.msc import ProcessSet
from ..entities.transition import ActionKind, Transition

# Un rectángulo de aceptación asigna a algunos procesos un predicado sobre
# su estado final; los procesos ausentes no tienen restricción.
AcceptancePredicate = Dict[str, Callable[[Hashable], bool]]


class Machine(ABC):
    """
    Interfaz de un CFM (gamma is None) o de un transductor Σ → Γ.

    Attributes:
        processes: Conjunto de procesos
        sigma: Letras de entrada
        gamma: Letras de salida, o None para un CFM
        functional: Cierto si la construcción garantiza una única salida
    """

    processes: ProcessSet
    sigma: Tuple[Hashable, ...]
    gamma: Optional[Tuple[Hashable, ...]]
    functional: bool

    @abstractmethod
    def initial_state(self, proc: str) -> Hashable:
        """
        Estado inicial ι_p.

        Args:
            proc: Proceso

        Returns:
            El estado inicial del proceso
        """
        pass

    @abstractmethod
    def moves(self, proc: str, state: Hashable, letter: Hashable, kind: ActionKind,
              peer: Optional[str] = None, msg: Hashable = None) -> Tuple[Transition, ...]:
        """
        Transiciones posibles desde `state` al leer `letter`.

        En un transductor `letter` es la componente de entrada σ y la etiqueta
        de cada transición devuelta es el par (σ, γ).

        Args:
            proc: Proceso que ejecuta la acción
            state: Estado actual
            letter: Letra de entrada
            kind: Tipo de acción
            peer: Proceso con el que se comunica (None en acciones internas)
            msg: Mensaje exigido en una recepción (None: cualquiera)

        Returns:
            Tupla de transiciones
        """
        pass

    @abstractmethod
    def accepts_final(self, final: Mapping[str, Hashable]) -> bool:
        """
        Indica si la tupla de estados finales pertenece a Acc.

        Args:
            final: Estado final de cada proceso
        """
        pass

    @abstractmethod
    def acceptance_rectangles(self) -> List[AcceptancePredicate]:
        """Acc como unión de rectángulos de predicados."""
        pass

    @abstractmethod
    def state_bound(self, proc: str) -> int:
        """Cota superior del número de estados del proceso."""
        pass

    def is_dead(self, proc: str, state: Hashable) -> bool:
        """Cierto si desde `state` el proceso ya no puede contribuir a aceptar."""
        return False

    def final_possible(self, proc: str, state: Hashable) -> bool:
        """
        Condición necesaria para que `state` sea el estado final del proceso.

        La búsqueda de ejecuciones la usa tras el último evento de cada proceso.
        """
        return True

    def output_of(self, transition: Transition) -> Hashable:
        """Letra de salida de una transición de transductor."""
        return transition.label[1] if self.gamma is not None else None
