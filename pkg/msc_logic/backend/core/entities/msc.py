#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Módulo que define las entidades de un diagrama de secuencia de mensajes (MSC).

Contiene los conjuntos de procesos y etiquetas, la descripción cruda de un MSC
(tal como la produce el códec de texto), el MSC validado con sus relaciones
derivadas, las relaciones entre eventos (matrices booleanas) y las
linealizaciones.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from .errors import (
    CrossProcessProcEdge,
    CyclicDependency,
    DuplicateEvent,
    EmptyMsc,
    EventInTwoMessages,
    MscValidationError,
    MscViolation,
    NonFifoChannel,
    UnknownEvent,
    UnknownLabel,
    UnknownProcess,
    ValidationError,
)

Channel = Tuple[str, str]


def _check_names(kind: str, names: Sequence[Hashable]) -> None:
    if not names:
        raise ValidationError(f"el conjunto de {kind} no puede estar vacío")
    if len(set(names)) != len(names):
        raise ValidationError(f"el conjunto de {kind} contiene duplicados: {list(names)}")


@dataclass(frozen=True)
class ProcessSet:
    """
    Conjunto ordenado de procesos P.

    El orden de declaración es también el orden total ⊑ usado por las cotas.

    Attributes:
        names: Nombres de los procesos en orden de declaración
    """
    names: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        _check_names("procesos", self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def index(self, name: str) -> int:
        return self.names.index(name)

    def channels(self) -> List[Channel]:
        """Pares (p, q) con p ≠ q, en orden de declaración."""
        return [(p, q) for p in self.names for q in self.names if p != q]


@dataclass(frozen=True)
class LabelSet:
    """
    Conjunto ordenado de etiquetas Σ.

    Las etiquetas pueden ser cualquier valor hashable: los alfabetos producto
    Σ×Γ de los transductores usan tuplas.

    Attributes:
        names: Etiquetas en orden de declaración
    """
    names: Tuple[Hashable, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        _check_names("etiquetas", self.names)

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def product(self, other: Iterable[Hashable]) -> "LabelSet":
        """Alfabeto producto self × other."""
        return LabelSet(tuple((a, b) for a in self.names for b in other))


@dataclass(frozen=True)
class Event:
    """Evento de un MSC: identificador, proceso y etiqueta."""
    id: str
    proc: str
    label: Hashable


@dataclass
class RawMsc:
    """
    Descripción cruda de un MSC, todavía sin validar.

    Attributes:
        processes: Procesos declarados
        labels: Etiquetas declaradas
        proc_events: Para cada proceso, la secuencia de (id, etiqueta)
        messages: Pares (emisor, receptor) de identificadores de evento
    """
    processes: List[str] = field(default_factory=list)
    labels: List[Hashable] = field(default_factory=list)
    proc_events: Dict[str, List[Tuple[str, Hashable]]] = field(default_factory=dict)
    messages: List[Tuple[str, str]] = field(default_factory=list)


@dataclass(frozen=True)
class Msc:
    """
    Diagrama de secuencia de mensajes validado.

    Los eventos se almacenan proceso a proceso en orden de declaración; los
    algoritmos internos trabajan con índices densos sobre esa secuencia.

    Attributes:
        processes: Conjunto de procesos P
        labels: Alfabeto Σ
        events: Eventos en orden (proceso, posición)
        proc_order: Para cada proceso, la secuencia de identificadores
        messages: Pares (emisor, receptor) ordenados por índice del emisor
    """
    processes: ProcessSet
    labels: LabelSet
    events: Tuple[Event, ...]
    proc_order: Tuple[Tuple[str, Tuple[str, ...]], ...]
    messages: Tuple[Tuple[str, str], ...]

    # --- Construcción ---

    @classmethod
    def from_raw(cls, raw: RawMsc) -> "Msc":
        """
        Construye un MSC validado a partir de su descripción cruda.

        Raises:
            MscValidationError: Con la lista completa de violaciones
        """
        violations = collect_violations(raw)
        if violations:
            raise MscValidationError(violations)
        return cls._build(raw)

    @classmethod
    def _build(cls, raw: RawMsc) -> "Msc":
        events = []
        order = []
        for p in raw.processes:
            seq = raw.proc_events.get(p, [])
            events.extend(Event(eid, p, label) for eid, label in seq)
            order.append((p, tuple(eid for eid, _ in seq)))
        index = {e.id: i for i, e in enumerate(events)}
        messages = tuple(sorted(((s, r) for s, r in raw.messages), key=lambda m: index[m[0]]))
        return cls(ProcessSet(tuple(raw.processes)), LabelSet(tuple(raw.labels)),
                   tuple(events), tuple(order), messages)

    @classmethod
    def from_word(cls, process: str, labels: Sequence[Hashable],
                  alphabet: Optional[Sequence[Hashable]] = None) -> "Msc":
        """
        MSC de un solo proceso identificado con la palabra de sus etiquetas.

        Args:
            process: Nombre del único proceso
            labels: Palabra de etiquetas
            alphabet: Alfabeto (por defecto, las etiquetas de la palabra)
        """
        alphabet = list(alphabet) if alphabet is not None else list(dict.fromkeys(labels))
        raw = RawMsc([process], alphabet,
                     {process: [(f"e{i}", a) for i, a in enumerate(labels)]}, [])
        return cls.from_raw(raw)

    def to_word(self) -> Tuple[Hashable, ...]:
        """Palabra de etiquetas de un MSC de un único proceso con eventos."""
        used = {e.proc for e in self.events}
        if len(used) != 1:
            raise ValidationError("solo los MSC de un proceso se identifican con palabras")
        return tuple(e.label for e in self.events)

    def to_raw(self) -> RawMsc:
        """Descripción cruda equivalente (para serializar)."""
        by_id = {e.id: e for e in self.events}
        return RawMsc(list(self.processes.names), list(self.labels.names),
                      {p: [(eid, by_id[eid].label) for eid in ids] for p, ids in self.proc_order},
                      list(self.messages))

    def relabel(self, labels: Sequence[Hashable], alphabet: Sequence[Hashable]) -> "Msc":
        """
        Copia con la misma forma y nuevas etiquetas.

        Args:
            labels: Nueva etiqueta de cada evento, por índice
            alphabet: Nuevo alfabeto
        """
        events = tuple(Event(e.id, e.proc, lab) for e, lab in zip(self.events, labels))
        return Msc(self.processes, LabelSet(tuple(alphabet)), events, self.proc_order, self.messages)

    # --- Estructura derivada (índices densos) ---

    def __len__(self) -> int:
        return len(self.events)

    @cached_property
    def index(self) -> Dict[str, int]:
        return {e.id: i for i, e in enumerate(self.events)}

    @cached_property
    def ids(self) -> Tuple[str, ...]:
        return tuple(e.id for e in self.events)

    @cached_property
    def loc(self) -> np.ndarray:
        """Índice de proceso de cada evento."""
        return np.array([self.processes.index(e.proc) for e in self.events], dtype=np.int64)

    @cached_property
    def proc_events(self) -> Dict[str, Tuple[int, ...]]:
        """Índices de los eventos de cada proceso, en orden."""
        return {p: tuple(self.index[eid] for eid in ids) for p, ids in self.proc_order}

    @cached_property
    def position(self) -> np.ndarray:
        """Posición de cada evento dentro de su proceso."""
        pos = np.zeros(len(self.events), dtype=np.int64)
        for seq in self.proc_events.values():
            for k, i in enumerate(seq):
                pos[i] = k
        return pos

    @cached_property
    def proc_next(self) -> np.ndarray:
        nxt = np.full(len(self.events), -1, dtype=np.int64)
        for seq in self.proc_events.values():
            for a, b in zip(seq, seq[1:]):
                nxt[a] = b
        return nxt

    @cached_property
    def proc_prev(self) -> np.ndarray:
        prev = np.full(len(self.events), -1, dtype=np.int64)
        for seq in self.proc_events.values():
            for a, b in zip(seq, seq[1:]):
                prev[b] = a
        return prev

    @cached_property
    def partner(self) -> np.ndarray:
        """Índice del evento emparejado por un mensaje, o -1."""
        part = np.full(len(self.events), -1, dtype=np.int64)
        for s, r in self.messages:
            part[self.index[s]] = self.index[r]
            part[self.index[r]] = self.index[s]
        return part

    @cached_property
    def is_send(self) -> np.ndarray:
        flags = np.zeros(len(self.events), dtype=bool)
        for s, _ in self.messages:
            flags[self.index[s]] = True
        return flags

    @cached_property
    def is_receive(self) -> np.ndarray:
        flags = np.zeros(len(self.events), dtype=bool)
        for _, r in self.messages:
            flags[self.index[r]] = True
        return flags

    @cached_property
    def label_index(self) -> Dict[Hashable, np.ndarray]:
        """Máscara booleana de eventos por etiqueta."""
        masks = {a: np.zeros(len(self.events), dtype=bool) for a in self.labels}
        for i, e in enumerate(self.events):
            masks.setdefault(e.label, np.zeros(len(self.events), dtype=bool))[i] = True
        return masks

    @cached_property
    def proc_mask(self) -> Dict[str, np.ndarray]:
        return {p: self.loc == k for k, p in enumerate(self.processes)}

    @cached_property
    def proc_edges(self) -> np.ndarray:
        """Matriz de la relación →."""
        n = len(self.events)
        mat = np.zeros((n, n), dtype=bool)
        for a in range(n):
            if self.proc_next[a] >= 0:
                mat[a, self.proc_next[a]] = True
        return mat

    @cached_property
    def msg_edges(self) -> np.ndarray:
        """Matriz de la relación ⊳."""
        n = len(self.events)
        mat = np.zeros((n, n), dtype=bool)
        for s, r in self.messages:
            mat[self.index[s], self.index[r]] = True
        return mat

    @cached_property
    def proc_le(self) -> np.ndarray:
        """Matriz de ≤proc."""
        same = self.loc[:, None] == self.loc[None, :]
        return same & (self.position[:, None] <= self.position[None, :])

    @cached_property
    def graph(self) -> nx.DiGraph:
        """Grafo de → ∪ ⊳ sobre índices."""
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.events)))
        for a in range(len(self.events)):
            if self.proc_next[a] >= 0:
                g.add_edge(a, int(self.proc_next[a]), kind="proc")
        for s, r in self.messages:
            g.add_edge(self.index[s], self.index[r], kind="msg")
        return g

    @cached_property
    def order(self) -> np.ndarray:
        """Matriz de ≤ = (→ ∪ ⊳)*."""
        return reflexive_transitive_closure(self.proc_edges | self.msg_edges)

    def channel_of(self, i: int) -> Optional[Channel]:
        """Canal (emisor, receptor) del mensaje en el que participa el evento i."""
        j = int(self.partner[i])
        if j < 0:
            return None
        if self.is_send[i]:
            return self.events[i].proc, self.events[j].proc
        return self.events[j].proc, self.events[i].proc


def reflexive_transitive_closure(mat: np.ndarray) -> np.ndarray:
    """Cierre reflexivo-transitivo de una matriz booleana por cuadrados sucesivos."""
    n = mat.shape[0]
    closure = mat | np.eye(n, dtype=bool)
    while True:
        step = closure | (bool_matmul(closure, closure))
        if np.array_equal(step, closure):
            return closure
        closure = step


def bool_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Producto de matrices booleanas."""
    return (a.astype(np.int64) @ b.astype(np.int64)) > 0


def collect_violations(raw: RawMsc) -> List[MscViolation]:
    """
    Devuelve todas las violaciones de invariantes de una descripción cruda.

    Args:
        raw: Descripción cruda

    Returns:
        Lista (posiblemente vacía) de violaciones, en orden de detección
    """
    found: List[MscViolation] = []
    if not raw.processes or not raw.labels:
        found.append(EmptyMsc("se requieren procesos y etiquetas"))
        return found
    if len(set(raw.processes)) != len(raw.processes):
        found.append(EmptyMsc(f"procesos duplicados: {raw.processes}"))
    if len(set(raw.labels)) != len(raw.labels):
        found.append(EmptyMsc(f"etiquetas duplicadas: {raw.labels}"))

    where: Dict[str, str] = {}
    seq_pos: Dict[str, int] = {}
    for p, seq in raw.proc_events.items():
        if p not in raw.processes:
            found.append(UnknownProcess(f"proceso '{p}' no declarado"))
            continue
        for k, (eid, label) in enumerate(seq):
            if eid in where:
                found.append(DuplicateEvent(f"evento '{eid}' declarado dos veces"))
                continue
            if label not in raw.labels:
                found.append(UnknownLabel(f"etiqueta '{label}' del evento '{eid}' no declarada"))
            where[eid] = p
            seq_pos[eid] = k
    if not where:
        found.append(EmptyMsc("el MSC no tiene eventos"))
        return found

    used: Dict[str, Tuple[str, str]] = {}
    good: List[Tuple[str, str]] = []
    for s, r in raw.messages:
        missing = [e for e in (s, r) if e not in where]
        if missing:
            found.append(UnknownEvent(f"mensaje {s}->{r}: eventos desconocidos {missing}"))
            continue
        if where[s] == where[r]:
            found.append(CrossProcessProcEdge(
                f"mensaje {s}->{r} dentro del proceso '{where[s]}'"))
            continue
        clash = [e for e in (s, r) if e in used]
        if clash:
            for e in clash:
                found.append(EventInTwoMessages(
                    f"evento '{e}' en los mensajes {used[e][0]}->{used[e][1]} y {s}->{r}"))
            continue
        used[s] = (s, r)
        used[r] = (s, r)
        good.append((s, r))

    by_channel: Dict[Channel, List[Tuple[str, str]]] = {}
    for s, r in good:
        by_channel.setdefault((where[s], where[r]), []).append((s, r))
    for (p, q), msgs in by_channel.items():
        for i, (s1, r1) in enumerate(msgs):
            for s2, r2 in msgs[i + 1:]:
                if (seq_pos[s1] < seq_pos[s2]) != (seq_pos[r1] < seq_pos[r2]):
                    found.append(NonFifoChannel(
                        f"canal ({p},{q}): mensajes {s1}->{r1} y {s2}->{r2} se cruzan"))

    g = nx.DiGraph()
    g.add_nodes_from(where)
    for seq in raw.proc_events.values():
        ids = [eid for eid, _ in seq if eid in where]
        g.add_edges_from(zip(ids, ids[1:]))
    g.add_edges_from(good)
    try:
        cycle = nx.find_cycle(g)
        found.append(CyclicDependency(
            "ciclo en → ∪ ⊳: " + " -> ".join(a for a, _ in cycle) + f" -> {cycle[0][0]}"))
    except nx.NetworkXNoCycle:
        pass
    return found


@dataclass(frozen=True, eq=False)
class EventRel:
    """
    Relación binaria sobre los eventos de un MSC fijo.

    Se almacena como matriz booleana indexada por los índices densos.

    Attributes:
        msc: MSC de referencia
        matrix: Matriz booleana n×n
    """
    msc: Msc
    matrix: np.ndarray

    @classmethod
    def from_pairs(cls, msc: Msc, pairs: Iterable[Tuple[str, str]]) -> "EventRel":
        mat = np.zeros((len(msc), len(msc)), dtype=bool)
        for e, f in pairs:
            if e not in msc.index or f not in msc.index:
                raise UnknownEvent(f"par ({e},{f}) con eventos desconocidos")
            mat[msc.index[e], msc.index[f]] = True
        return cls(msc, mat)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EventRel):
            return NotImplemented
        return self.msc == other.msc and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash((self.msc, self.matrix.tobytes()))

    def __contains__(self, pair: Tuple[str, str]) -> bool:
        e, f = pair
        return bool(self.matrix[self.msc.index[e], self.msc.index[f]])

    def __len__(self) -> int:
        return int(self.matrix.sum())

    def pairs(self) -> Set[Tuple[str, str]]:
        ids = self.msc.ids
        return {(ids[a], ids[b]) for a, b in zip(*np.nonzero(self.matrix))}

    def sorted_pairs(self) -> List[Tuple[str, str]]:
        ids = self.msc.ids
        return [(ids[a], ids[b]) for a, b in zip(*np.nonzero(self.matrix))]

    def image(self, event_id: str) -> FrozenSet[str]:
        row = self.matrix[self.msc.index[event_id]]
        return frozenset(self.msc.ids[j] for j in np.nonzero(row)[0])

    def transpose(self) -> "EventRel":
        return EventRel(self.msc, self.matrix.T.copy())

    def compose(self, other: "EventRel") -> "EventRel":
        return EventRel(self.msc, bool_matmul(self.matrix, other.matrix))

    def union(self, other: "EventRel") -> "EventRel":
        return EventRel(self.msc, self.matrix | other.matrix)

    def closure(self) -> "EventRel":
        return EventRel(self.msc, reflexive_transitive_closure(self.matrix))

    def issubset(self, other: "EventRel") -> bool:
        return not bool((self.matrix & ~other.matrix).any())


@dataclass(frozen=True)
class Linearization:
    """
    Orden total de los eventos de un MSC.

    Attributes:
        order: Permutación de los identificadores de evento
    """
    order: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))

    def positions(self) -> Dict[str, int]:
        return {e: k for k, e in enumerate(self.order)}


@dataclass(frozen=True)
class LinLetter:
    """
    Letra de Σ_lin: etiqueta y tipo del evento.

    El tipo se escribe `p` (interno), `p!q` (envío de p a q) o `q?p`
    (recepción en q desde p).
    """
    label: Hashable
    type: str

    @property
    def process(self) -> str:
        """Proceso en el que ocurre el evento."""
        for sep in ("!", "?"):
            if sep in self.type:
                return self.type.split(sep)[0]
        return self.type

    @property
    def peer(self) -> Optional[str]:
        for sep in ("!", "?"):
            if sep in self.type:
                return self.type.split(sep)[1]
        return None

    @property
    def is_send(self) -> bool:
        return "!" in self.type

    @property
    def is_receive(self) -> bool:
        return "?" in self.type
