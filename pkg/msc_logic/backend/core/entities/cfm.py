#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Módulo que define los CFMs explícitos, los transductores y las ejecuciones.

Un CFM explícito enumera, por proceso, sus estados, su estado inicial y sus
transiciones; la condición de aceptación es una unión de rectángulos. Un
transductor es un CFM sobre Σ×Γ con Σ y Γ registrados por separado.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Hashable, List, Mapping, Optional, Tuple

import networkx as nx

from ..interfaces.machines import AcceptancePredicate, Machine
from .errors import CfmFormatError
from .msc import Msc, ProcessSet
from .transition import ActionKind, Transition

Rectangle = Dict[str, FrozenSet[Hashable]]


@dataclass(frozen=True, eq=False)
class Cfm(Machine):
    """
    CFM explícito.

    Attributes:
        processes: Conjunto de procesos P
        sigma: Alfabeto de entrada
        messages: Alfabeto de mensajes
        states: Estados S_p de cada proceso
        initial: Estado inicial ι_p de cada proceso
        transitions: Transiciones Δ_p de cada proceso
        acceptance: Rectángulos; un proceso ausente no tiene restricción
        gamma: Alfabeto de salida (solo transductores)
        functional: Marca de transductor funcional
    """
    processes: ProcessSet
    sigma: Tuple[Hashable, ...]
    messages: Tuple[Hashable, ...]
    states: Dict[str, Tuple[Hashable, ...]]
    initial: Dict[str, Hashable]
    transitions: Dict[str, Tuple[Transition, ...]]
    acceptance: Tuple[Rectangle, ...]
    gamma: Optional[Tuple[Hashable, ...]] = None
    functional: bool = False

    def __post_init__(self):
        problems = self.problems()
        if problems:
            raise CfmFormatError("; ".join(problems))

    def problems(self) -> List[str]:
        """Lista de invariantes violados."""
        found = []
        letters = set(self.input_alphabet)
        for p in self.processes:
            states = set(self.states.get(p, ()))
            if self.initial.get(p) not in states:
                found.append(f"proceso {p}: estado inicial ausente")
            for t in self.transitions.get(p, ()):
                if t.source not in states or t.target not in states:
                    found.append(f"proceso {p}: transición {t} fuera de S_p")
                if t.kind != ActionKind.INTERNAL and (t.peer == p or t.peer not in self.processes):
                    found.append(f"proceso {p}: interlocutor inválido en {t}")
                if t.kind != ActionKind.INTERNAL and t.msg not in self.messages:
                    found.append(f"proceso {p}: mensaje desconocido en {t}")
                if t.label not in letters:
                    found.append(f"proceso {p}: letra desconocida en {t}")
        for rect in self.acceptance:
            for p, allowed in rect.items():
                if p not in self.processes or not set(allowed) <= set(self.states.get(p, ())):
                    found.append(f"rectángulo inválido para {p}")
        return found

    @property
    def input_alphabet(self) -> Tuple[Hashable, ...]:
        """Σ para un CFM, Σ×Γ para un transductor."""
        if self.gamma is None:
            return self.sigma
        return tuple((a, b) for a in self.sigma for b in self.gamma)

    @cached_property
    def _index(self) -> Dict[Tuple, Tuple[Transition, ...]]:
        table: Dict[Tuple, List[Transition]] = {}
        for p, ts in self.transitions.items():
            for t in ts:
                letter = t.label if self.gamma is None else t.label[0]
                table.setdefault((p, t.source, letter, t.kind, t.peer), []).append(t)
        return {k: tuple(v) for k, v in table.items()}

    @cached_property
    def _live(self) -> Dict[str, FrozenSet[Hashable]]:
        live = {}
        for p in self.processes:
            g = nx.DiGraph()
            g.add_nodes_from(self.states.get(p, ()))
            g.add_edges_from((t.source, t.target) for t in self.transitions.get(p, ()))
            goals = set()
            for rect in self.acceptance:
                goals |= set(rect.get(p, self.states.get(p, ())))
            alive = set(goals)
            for s in goals:
                alive |= nx.ancestors(g, s)
            live[p] = frozenset(alive)
        return live

    def initial_state(self, proc: str) -> Hashable:
        return self.initial[proc]

    def moves(self, proc, state, letter, kind, peer=None, msg=None):
        found = self._index.get((proc, state, letter, kind, peer), ())
        if msg is None:
            return found
        return tuple(t for t in found if t.msg == msg)

    def accepts_final(self, final: Mapping[str, Hashable]) -> bool:
        return any(all(final[p] in allowed for p, allowed in rect.items())
                   for rect in self.acceptance)

    def acceptance_rectangles(self) -> List[AcceptancePredicate]:
        return [{p: allowed.__contains__ for p, allowed in rect.items()}
                for rect in self.acceptance]

    def state_bound(self, proc: str) -> int:
        return len(self.states.get(proc, ()))

    def is_dead(self, proc: str, state: Hashable) -> bool:
        return state not in self._live[proc]

    def final_possible(self, proc: str, state: Hashable) -> bool:
        return any(proc not in rect or state in rect[proc] for rect in self.acceptance)

    def size(self) -> Dict[str, int]:
        """Estadísticas de tamaño."""
        return {
            "states": sum(len(s) for s in self.states.values()),
            "transitions": sum(len(t) for t in self.transitions.values()),
            "messages": len(self.messages),
            "rectangles": len(self.acceptance),
        }


@dataclass(frozen=True, eq=False)
class Transducer(Cfm):
    """Transductor letra a letra: un CFM sobre Σ×Γ."""

    def __post_init__(self):
        if self.gamma is None:
            raise CfmFormatError("un transductor necesita alfabeto de salida")
        super().__post_init__()


@dataclass(frozen=True)
class RunAssignment:
    """
    Ejecución: una transición por evento.

    Attributes:
        transitions: Pares (id de evento, transición) en orden de eventos
    """
    transitions: Tuple[Tuple[str, Transition], ...] = field(default_factory=tuple)

    def as_dict(self) -> Dict[str, Transition]:
        return dict(self.transitions)

    def final_states(self, machine: Machine, msc: Msc) -> Dict[str, Hashable]:
        """Último estado de cada proceso (ι_p si no tiene eventos)."""
        run = self.as_dict()
        final = {}
        for p in machine.processes:
            seq = msc.proc_events.get(p, ())
            final[p] = run[msc.ids[seq[-1]]].target if seq else machine.initial_state(p)
        return final

    def check(self, machine: Machine, msc: Msc, letters: Optional[Tuple[Hashable, ...]] = None) -> List[str]:
        """
        Comprueba las cinco condiciones de ejecución y la aceptación.

        Args:
            machine: Máquina a la que pertenecen las transiciones
            msc: MSC sobre el que se ejecuta
            letters: Letra de entrada de cada evento (por defecto, su etiqueta)

        Returns:
            Lista de problemas; vacía si la ejecución es aceptadora
        """
        run = self.as_dict()
        problems = []
        if set(run) != set(msc.ids):
            return ["la ejecución no cubre exactamente los eventos"]
        letters = letters or tuple(e.label for e in msc.events)
        for p, seq in msc.proc_events.items():
            state = machine.initial_state(p)
            for i in seq:
                eid = msc.ids[i]
                t = run[eid]
                if t.source != state:
                    problems.append(f"{eid}: estado de origen {t.source!r} != {state!r}")
                j = int(msc.partner[i])
                if j < 0:
                    kind, peer = ActionKind.INTERNAL, None
                else:
                    kind = ActionKind.SEND if msc.is_send[i] else ActionKind.RECEIVE
                    peer = msc.events[j].proc
                    if t.msg != run[msc.ids[j]].msg:
                        problems.append(f"{eid}: mensaje distinto del de {msc.ids[j]}")
                if t not in machine.moves(p, state, letters[i], kind, peer, t.msg):
                    problems.append(f"{eid}: transición no permitida {t}")
                state = t.target
        if not problems and not machine.accepts_final(self.final_states(machine, msc)):
            problems.append("estados finales no aceptadores")
        return problems
