#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Generador de MSCs aleatorios.

Se simula una ejecución: en cada paso un proceso hace una acción interna,
envía un mensaje o recibe el primero pendiente de un canal. Los MSCs
resultantes son siempre válidos (FIFO y acíclicos).
"""

import random
from collections import deque
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from ...core.entities.msc import Msc, RawMsc


class RandomMscGenerator:
    """
    Generador de MSCs reproducible.

    Attributes:
        rng: Fuente de aleatoriedad (random.Random con semilla)
        message_bias: Probabilidad relativa de elegir un envío o recepción
    """

    def __init__(self, rng: random.Random, message_bias: float = 0.6):
        self.rng = rng
        self.message_bias = message_bias

    def generate(self, processes: Sequence[str], labels: Sequence[Hashable],
                 max_events: int, min_events: int = 1) -> Msc:
        """
        Genera un MSC con entre `min_events` y `max_events` eventos.

        Args:
            processes: Procesos declarados (alguno puede quedar sin eventos)
            labels: Alfabeto
            max_events: Número máximo de eventos
            min_events: Número mínimo de eventos
        """
        target = self.rng.randint(max(1, min_events), max(1, max_events))
        events: Dict[str, List[Tuple[str, Hashable]]] = {p: [] for p in processes}
        messages: List[Tuple[str, str]] = []
        queues: Dict[Tuple[str, str], deque] = {
            (p, q): deque() for p in processes for q in processes if p != q
        }

        def new_event(p: str) -> str:
            eid = f"{p}_{len(events[p])}"
            events[p].append((eid, self.rng.choice(list(labels))))
            return eid

        def pending() -> int:
            return sum(len(q) for q in queues.values())

        while sum(len(v) for v in events.values()) + pending() < target:
            room = target - sum(len(v) for v in events.values()) - pending()
            waiting = [c for c, q in queues.items() if q]
            choices = ["internal"]
            if room >= 2 and len(processes) > 1:
                choices.append("send")
            if waiting:
                choices.append("receive")
            kind = self._pick(choices)
            if kind == "internal":
                new_event(self.rng.choice(list(processes)))
            elif kind == "send":
                p, q = self.rng.sample(list(processes), 2)
                queues[(p, q)].append(new_event(p))
            else:
                self._receive(self.rng.choice(waiting), queues, messages, new_event)
        while pending():
            waiting = [c for c, q in queues.items() if q]
            self._receive(self.rng.choice(waiting), queues, messages, new_event)
        return Msc.from_raw(RawMsc(list(processes), list(labels), events, messages))

    def _pick(self, choices: List[str]) -> str:
        if len(choices) == 1:
            return choices[0]
        if self.rng.random() >= self.message_bias:
            return "internal"
        return self.rng.choice(choices[1:])

    @staticmethod
    def _receive(channel: Tuple[str, str], queues, messages, new_event) -> None:
        sender = queues[channel].popleft()
        messages.append((sender, new_event(channel[1])))

    def many(self, count: int, processes: Sequence[str], labels: Sequence[Hashable],
             max_events: int, min_events: Optional[int] = None) -> List[Msc]:
        """Lista de `count` MSCs aleatorios."""
        return [self.generate(processes, labels, max_events, min_events or 1) for _ in range(count)]
