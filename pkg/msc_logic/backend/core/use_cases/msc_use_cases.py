#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Casos de uso sobre MSCs.

Validación, orden causal (happened-before), enumeración de linealizaciones
y comprobación de linealizaciones B-acotadas.
"""

import logging
from collections import Counter
from typing import Iterator

import networkx as nx

from ..entities.errors import NotALinearization
from ..entities.msc import EventRel, Linearization, Msc, RawMsc

logger = logging.getLogger(__name__)


class MscUseCases:
    """Operaciones del modelo de datos de MSC."""

    def validate(self, raw: RawMsc) -> Msc:
        """
        Valida una descripción cruda.

        Args:
            raw: Descripción cruda (procesos, etiquetas, eventos, mensajes)

        Returns:
            El MSC validado

        Raises:
            MscValidationError: Con la lista completa de violaciones
        """
        msc = Msc.from_raw(raw)
        logger.debug("MSC válido: %d eventos, %d mensajes", len(msc), len(msc.messages))
        return msc

    def happened_before(self, msc: Msc) -> EventRel:
        """Relación ≤ = (→ ∪ ⊳)*."""
        return EventRel(msc, msc.order.copy())

    def linearizations(self, msc: Msc) -> Iterator[Linearization]:
        """
        Enumera las extensiones lineales de ≤ sin repeticiones.

        El número de linealizaciones es exponencial: el consumidor decide
        cuántas tomar.
        """
        for order in nx.all_topological_sorts(msc.graph):
            yield Linearization(tuple(msc.ids[i] for i in order))

    def check_linearization(self, msc: Msc, lin: Linearization) -> None:
        """
        Comprueba que `lin` es una linealización de `msc`.

        Raises:
            NotALinearization: Si no es una permutación o no contiene ≤
        """
        if len(lin.order) != len(msc) or set(lin.order) != set(msc.ids):
            raise NotALinearization("el orden no es una permutación de los eventos")
        pos = lin.positions()
        for a, b in msc.graph.edges:
            if pos[msc.ids[a]] > pos[msc.ids[b]]:
                raise NotALinearization(f"{msc.ids[a]} debe preceder a {msc.ids[b]}")

    def is_b_bounded_linearization(self, msc: Msc, lin: Linearization, bound: int) -> bool:
        """
        Indica si en todo prefijo cada canal tiene como mucho `bound` envíos pendientes.

        Args:
            msc: MSC
            lin: Linealización de `msc`
            bound: Cota B ≥ 0

        Raises:
            NotALinearization: Si `lin` no linealiza `msc`
        """
        self.check_linearization(msc, lin)
        pending: Counter = Counter()
        for eid in lin.order:
            i = msc.index[eid]
            channel = msc.channel_of(i)
            if channel is None:
                continue
            if msc.is_send[i]:
                pending[channel] += 1
                if pending[channel] > bound:
                    return False
            else:
                pending[channel] -= 1
        return True
