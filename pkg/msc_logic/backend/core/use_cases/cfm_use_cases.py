#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Casos de uso de los autómatas comunicantes.

La búsqueda de ejecuciones recorre los eventos del MSC en una linealización
fija (la topológica lexicográfica, que agota cada proceso antes de pasar al
siguiente siempre que puede). Cada capa guarda las configuraciones
alcanzables: estado de cada proceso y mensajes enviados aún no recibidos.
Las recepciones quedan restringidas al mensaje elegido en su envío, que
siempre es anterior.

Las máquinas funcionales compuestas se resuelven estructuralmente: el
etiquetado de un producto es el emparejamiento de los etiquetados de sus
factores y el de una composición con interior funcional es el de la
máquina externa sobre la salida interna.
"""

import logging
from collections import deque
from typing import Dict, Hashable, Iterator, List, Optional, Set, Tuple

import networkx as nx

from ..entities.cfm import Cfm, RunAssignment, Transducer
from ..entities.errors import IncompatibleAlphabet, InternalInvariantBreach, ResourceLimit
from ..entities.machines import AsCfmMachine, ComposeMachine, ProductMachine, ProjectionMachine
from ..entities.msc import Msc
from ..entities.settings import Settings
from ..entities.transition import ActionKind, Transition
from ..interfaces.machines import Machine

logger = logging.getLogger(__name__)

Labeling = Tuple[Hashable, ...]
# (estados por proceso, mensajes pendientes (índice del envío, mensaje), salidas)
Config = Tuple[Tuple[Hashable, ...], Tuple[Tuple[int, Hashable], ...], Tuple[Hashable, ...]]


class _RunSearch:
    """Búsqueda por capas de ejecuciones aceptadoras sobre un MSC fijo."""

    def __init__(self, machine: Machine, msc: Msc, letters: Labeling,
                 max_configs: int, collect_outputs: bool = False):
        self.machine = machine
        self.msc = msc
        self.letters = letters
        self.max_configs = max_configs
        self.collect_outputs = collect_outputs
        self.procs = tuple(machine.processes)
        self.slot = {p: k for k, p in enumerate(self.procs)}
        self.order = list(nx.lexicographical_topological_sort(msc.graph))
        self.last = {seq[-1] for seq in msc.proc_events.values() if seq}
        self.explored = 0
        self.history: List[Dict[Config, Tuple[Config, Transition]]] = []

    def _action(self, i: int) -> Tuple[ActionKind, Optional[str]]:
        j = int(self.msc.partner[i])
        if j < 0:
            return ActionKind.INTERNAL, None
        kind = ActionKind.SEND if self.msc.is_send[i] else ActionKind.RECEIVE
        return kind, self.msc.events[j].proc

    def run(self) -> List[Config]:
        """Devuelve las configuraciones finales aceptadoras."""
        m = self.machine
        start: Config = (tuple(m.initial_state(p) for p in self.procs), (), ())
        layer = {start: None}
        for i in self.order:
            event = self.msc.events[i]
            k = self.slot[event.proc]
            kind, peer = self._action(i)
            partner = int(self.msc.partner[i])
            closing = i in self.last
            nxt: Dict[Config, Tuple[Config, Transition]] = {}
            for config in layer:
                states, pending, outs = config
                msg = dict(pending)[partner] if kind == ActionKind.RECEIVE else None
                for t in m.moves(event.proc, states[k], self.letters[i], kind, peer, msg):
                    if m.is_dead(event.proc, t.target):
                        continue
                    if closing and not m.final_possible(event.proc, t.target):
                        continue
                    if kind == ActionKind.SEND:
                        new_pending = pending + ((i, t.msg),)
                    elif kind == ActionKind.RECEIVE:
                        new_pending = tuple(x for x in pending if x[0] != partner)
                    else:
                        new_pending = pending
                    new_outs = outs + (m.output_of(t),) if self.collect_outputs else outs
                    key = (states[:k] + (t.target,) + states[k + 1:], new_pending, new_outs)
                    if key not in nxt:
                        nxt[key] = (config, t)
                        self.explored += 1
                        if self.explored > self.max_configs:
                            raise ResourceLimit("run-search", self.max_configs, self.explored)
            self.history.append(nxt)
            layer = nxt
            if not layer:
                break
        if len(self.history) < len(self.order):
            return []
        return [c for c in layer if m.accepts_final(dict(zip(self.procs, c[0])))]

    def witness(self, final: Config) -> RunAssignment:
        """Reconstruye la ejecución que termina en `final`."""
        chosen: Dict[str, Transition] = {}
        config = final
        for step in range(len(self.order) - 1, -1, -1):
            config, t = self.history[step][config]
            chosen[self.msc.ids[self.order[step]]] = t
        return RunAssignment(tuple((eid, chosen[eid]) for eid in self.msc.ids))

    def labeling(self, final: Config) -> Labeling:
        """Salidas de `final` reordenadas por índice de evento."""
        outs = [None] * len(self.order)
        for pos, i in enumerate(self.order):
            outs[i] = final[2][pos]
        return tuple(outs)


class CfmUseCases:
    """
    Casos de uso de CFMs y transductores.

    Attributes:
        settings: Presupuestos de búsqueda, enumeración y materialización
        last_statistics: Estadísticas de la última búsqueda
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings()
        self.last_statistics: Dict[str, int] = {}

    # --- Construcciones ---

    def product(self, *machines: Machine) -> ProductMachine:
        """Producto de transductores con la misma entrada (salidas emparejadas)."""
        return ProductMachine(machines)

    def compose(self, outer: Machine, inner: Machine) -> ComposeMachine:
        """Composición relacional outer ∘ inner."""
        return ComposeMachine(outer, inner)

    def project(self, transducer: Machine) -> ProjectionMachine:
        """CFM que acepta las entradas con alguna salida."""
        return ProjectionMachine(transducer)

    def as_cfm(self, transducer: Machine) -> AsCfmMachine:
        """El transductor como CFM sobre Σ×Γ."""
        return AsCfmMachine(transducer)

    # --- Consultas ---

    def _check(self, machine: Machine, msc: Msc, letters: Labeling) -> None:
        if set(machine.processes) != set(msc.processes):
            raise IncompatibleAlphabet(
                f"procesos distintos: {list(machine.processes)} frente a {list(msc.processes)}")
        alphabet = set(machine.sigma)
        unknown = sorted({repr(a) for a in letters if a not in alphabet})
        if unknown:
            raise IncompatibleAlphabet(f"letras fuera del alfabeto de la máquina: {unknown}")

    def _search(self, machine: Machine, msc: Msc, letters: Labeling,
                collect_outputs: bool = False) -> Tuple[_RunSearch, List[Config]]:
        search = _RunSearch(machine, msc, letters, self.settings.run_search_max_configs,
                            collect_outputs)
        finals = search.run()
        self.last_statistics = {"configurations": search.explored, "accepting": len(finals)}
        logger.debug("búsqueda sobre %r: %d configuraciones, %d finales aceptadoras",
                     type(machine).__name__, search.explored, len(finals))
        return search, finals

    def find_run(self, machine: Machine, msc: Msc) -> Optional[RunAssignment]:
        """
        Busca una ejecución aceptadora (búsqueda completa).

        Un transductor se ejecuta como CFM sobre Σ×Γ: las etiquetas del MSC
        deben ser pares.

        Args:
            machine: CFM o transductor
            msc: MSC de entrada

        Returns:
            Una ejecución aceptadora, o None

        Raises:
            IncompatibleAlphabet: Si P o Σ no coinciden
            ResourceLimit: Si se supera el presupuesto de configuraciones
        """
        if machine.gamma is not None:
            machine = AsCfmMachine(machine)
        letters = tuple(e.label for e in msc.events)
        self._check(machine, msc, letters)
        search, finals = self._search(machine, msc, letters)
        if not finals:
            return None
        run = search.witness(finals[0])
        problems = run.check(machine, msc, letters)
        if problems:
            raise InternalInvariantBreach(f"testigo de ejecución rechazado: {problems}")
        return run

    def accepts(self, machine: Machine, msc: Msc) -> bool:
        """M ∈ L(A)."""
        letters = tuple(e.label for e in msc.events)
        if isinstance(machine, ProjectionMachine):
            inner = machine.transducer
            self._check(inner, msc, letters)
            return self._labeling(inner, msc, letters) is not None
        if isinstance(machine, AsCfmMachine) and machine.transducer.functional:
            self._check(machine, msc, letters)
            inner = machine.transducer
            found = self._labeling(inner, msc, tuple(a for a, _ in letters))
            return found is not None and found == tuple(b for _, b in letters)
        return self.find_run(machine, msc) is not None

    def outputs(self, transducer: Machine, msc: Msc, exhaustive: bool = False) -> Iterator[Labeling]:
        """
        Enumera los etiquetados γ con (M, M_γ) ∈ Lt(T), por índice de evento.

        Args:
            transducer: Transductor
            msc: MSC de entrada (etiquetas en Σ)
            exhaustive: Enumerar aunque el transductor se declare funcional

        Raises:
            IncompatibleAlphabet: Si la máquina no es un transductor o Σ no coincide
            ResourceLimit: Si se supera algún presupuesto
        """
        if transducer.gamma is None:
            raise IncompatibleAlphabet("solo los transductores tienen salidas")
        letters = tuple(e.label for e in msc.events)
        self._check(transducer, msc, letters)
        if transducer.functional and not exhaustive:
            found = self._labeling(transducer, msc, letters)
            if found is not None:
                yield found
            return
        search, finals = self._search(transducer, msc, letters, collect_outputs=True)
        seen: Set[Labeling] = set()
        for final in finals:
            lab = search.labeling(final)
            if lab in seen:
                continue
            seen.add(lab)
            if len(seen) > self.settings.enumerate_max_labelings:
                raise ResourceLimit("enumerate", self.settings.enumerate_max_labelings, len(seen))
            yield lab

    def output(self, transducer: Machine, msc: Msc) -> Optional[Labeling]:
        """Un etiquetado de salida (el único si el transductor es funcional)."""
        return next(self.outputs(transducer, msc), None)

    def _labeling(self, machine: Machine, msc: Msc, letters: Labeling) -> Optional[Labeling]:
        """Un etiquetado de salida para la palabra de entrada `letters`, o None."""
        if isinstance(machine, ProductMachine) and machine.functional:
            parts = []
            for c in machine.components:
                found = self._labeling(c, msc, letters)
                if found is None:
                    return None
                parts.append(found)
            return tuple(zip(*parts))
        if isinstance(machine, ComposeMachine) and machine.inner.functional:
            middle = self._labeling(machine.inner, msc, letters)
            if middle is None:
                return None
            return self._labeling(machine.outer, msc, middle)
        search, finals = self._search(machine, msc, letters)
        if not finals:
            return None
        run = search.witness(finals[0]).as_dict()
        return tuple(machine.output_of(run[eid]) for eid in msc.ids)

    def check_run(self, machine: Machine, msc: Msc, run: RunAssignment) -> List[str]:
        """Problemas de una ejecución dada (lista vacía si es aceptadora)."""
        if machine.gamma is not None:
            machine = AsCfmMachine(machine)
        return run.check(machine, msc)

    # --- Materialización ---

    def materialize(self, machine: Machine, canonical: bool = True) -> Cfm:
        """
        Construye la máquina explícita equivalente (estados alcanzables).

        Args:
            machine: Máquina perezosa o explícita
            canonical: Renombrar estados a s0, s1, ... y mensajes a m0, m1, ...

        Returns:
            Un Cfm, o un Transducer si la máquina tiene salida

        Raises:
            ResourceLimit: Si se supera materialize_max_states
        """
        budget = self.settings.materialize_max_states
        procs = tuple(machine.processes)
        states: Dict[str, List[Hashable]] = {}
        transitions: Dict[str, List[Transition]] = {}
        messages: Dict[Hashable, None] = {}
        total = 0
        for p in procs:
            start = machine.initial_state(p)
            seen = {start: None}
            queue = deque([start])
            found: List[Transition] = []
            actions = [(ActionKind.INTERNAL, None)]
            actions += [(kind, q) for q in procs if q != p
                        for kind in (ActionKind.SEND, ActionKind.RECEIVE)]
            while queue:
                s = queue.popleft()
                for letter in machine.sigma:
                    for kind, peer in actions:
                        for t in machine.moves(p, s, letter, kind, peer):
                            found.append(t)
                            if t.msg is not None:
                                messages.setdefault(t.msg)
                            if t.target not in seen:
                                seen[t.target] = None
                                queue.append(t.target)
                                total += 1
                                if total > budget:
                                    raise ResourceLimit("materialize", budget, total)
            states[p] = list(seen)
            transitions[p] = found
        acceptance = []
        for rect in machine.acceptance_rectangles():
            acceptance.append({p: frozenset(s for s in states[p] if pred(s))
                               for p, pred in rect.items()})
        if canonical:
            names = {p: {s: f"s{k}" for k, s in enumerate(states[p])} for p in procs}
            msg_names = {m: f"m{k}" for k, m in enumerate(messages)}
            states = {p: [names[p][s] for s in states[p]] for p in procs}
            transitions = {p: [Transition(names[p][t.source], t.kind, t.label, t.peer,
                                          None if t.msg is None else msg_names[t.msg],
                                          names[p][t.target]) for t in transitions[p]]
                           for p in procs}
            acceptance = [{p: frozenset(names[p][s] for s in allowed)
                           for p, allowed in rect.items()} for rect in acceptance]
            messages = dict.fromkeys(msg_names.values())
        else:
            names = {p: {s: s for s in states[p]} for p in procs}
        kwargs = dict(
            processes=machine.processes,
            sigma=tuple(machine.sigma),
            messages=tuple(messages),
            states={p: tuple(states[p]) for p in procs},
            initial={p: names[p][machine.initial_state(p)] for p in procs},
            transitions={p: tuple(dict.fromkeys(transitions[p])) for p in procs},
            acceptance=tuple(acceptance),
        )
        logger.debug("materializado %s: %d estados", type(machine).__name__, total + len(procs))
        if machine.gamma is None:
            return Cfm(**kwargs)
        return Transducer(gamma=tuple(machine.gamma), functional=machine.functional, **kwargs)
