#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Acciones y transiciones de los autómatas comunicantes.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Optional


class ActionKind(str, Enum):
    """Tipo de acción de una transición local."""
    INTERNAL = "internal"   # ⟨a⟩
    SEND = "send"           # !(a, m, q)
    RECEIVE = "receive"     # ?(a, m, q)


@dataclass(frozen=True)
class Transition:
    """
    Transición (origen, acción, destino) de un proceso.

    Attributes:
        source: Estado de origen
        kind: Tipo de acción
        label: Letra leída; en un transductor es el par (σ, γ)
        peer: Proceso destino del envío u origen de la recepción
        msg: Mensaje enviado o recibido (None en acciones internas)
        target: Estado de destino
    """
    source: Hashable
    kind: ActionKind
    label: Hashable
    peer: Optional[str]
    msg: Hashable
    target: Hashable
