#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Casos de uso de evaluación de PDL sin estrella sobre un MSC.

La semántica se calcula con vectores y matrices booleanas de numpy. Cada
MSC tiene su propio contexto de evaluación con tablas de memoización por
subfórmula; un contexto no debe compartirse entre hilos.
"""

import logging
from functools import reduce
from typing import Dict, FrozenSet, Optional

import numpy as np

from ..entities.errors import UnknownLabel, UnknownProcess
from ..entities.msc import EventRel, Msc, bool_matmul
from ..entities.pdl_formula import (
    E, And, At, Complement, Concat, EventFormula, Ex, Falsum, GuardLeft, GuardRight, Implies,
    Inter, Jump, Lab, LabelIn, Loop, Msg, MsgInv, Next, Not, Or, PathFormula, PdlNode, Prev,
    Sentence, SentenceNot, SentenceOr, ShapedLoop, Test, Union, Verum, labels_of, processes_of,
)
from .pdl_algebra import shaped_to_loop

logger = logging.getLogger(__name__)

MAX_CONTEXTS = 64


class PdlContext:
    """
    Contexto de evaluación confinado a un MSC.

    Attributes:
        msc: MSC sobre el que se evalúa
        events: Memo de fórmulas de evento (vector booleano por nodo)
        paths: Memo de caminos (matriz booleana por nodo)
    """

    def __init__(self, msc: Msc):
        self.msc = msc
        self.n = len(msc)
        self.events: Dict[EventFormula, np.ndarray] = {}
        self.paths: Dict[PathFormula, np.ndarray] = {}

    def _zeros(self) -> np.ndarray:
        return np.zeros(self.n, dtype=bool)

    def sentence(self, node: Sentence) -> bool:
        if isinstance(node, E):
            return bool(self.event(node.arg).any())
        if isinstance(node, SentenceOr):
            return any(self.sentence(a) for a in node.args)
        if isinstance(node, SentenceNot):
            return not self.sentence(node.arg)
        raise TypeError(f"sentencia desconocida: {node!r}")

    def event(self, node: EventFormula) -> np.ndarray:
        found = self.events.get(node)
        if found is None:
            found = self._event(node)
            found.setflags(write=False)
            self.events[node] = found
        return found

    def path(self, node: PathFormula) -> np.ndarray:
        found = self.paths.get(node)
        if found is None:
            found = self._path(node)
            found.setflags(write=False)
            self.paths[node] = found
        return found

    def _event(self, node: EventFormula) -> np.ndarray:
        m = self.msc
        if isinstance(node, Verum):
            return np.ones(self.n, dtype=bool)
        if isinstance(node, Falsum):
            return self._zeros()
        if isinstance(node, At):
            return m.proc_mask.get(node.proc, self._zeros()).copy()
        if isinstance(node, Lab):
            return m.label_index.get(node.label, self._zeros()).copy()
        if isinstance(node, LabelIn):
            return reduce(np.logical_or, (m.label_index.get(a, self._zeros()) for a in node.labels),
                          self._zeros())
        if isinstance(node, Or):
            return reduce(np.logical_or, (self.event(a) for a in node.args), self._zeros())
        if isinstance(node, And):
            return reduce(np.logical_and, (self.event(a) for a in node.args),
                          np.ones(self.n, dtype=bool))
        if isinstance(node, Not):
            return ~self.event(node.arg)
        if isinstance(node, Implies):
            return ~self.event(node.left) | self.event(node.right)
        if isinstance(node, Ex):
            return (self.path(node.path) & self.event(node.arg)[None, :]).any(axis=1)
        if isinstance(node, Loop):
            return np.diagonal(self.path(node.path)).copy()
        if isinstance(node, ShapedLoop):
            return self.event(shaped_to_loop(node)).copy()
        raise TypeError(f"fórmula de evento desconocida: {node!r}")

    def _path(self, node: PathFormula) -> np.ndarray:
        m = self.msc
        if isinstance(node, Next):
            return m.proc_edges.copy()
        if isinstance(node, Prev):
            return m.proc_edges.T.copy()
        if isinstance(node, Msg):
            return self._msg(node.src, node.dst)
        if isinstance(node, MsgInv):
            return self._msg(node.src, node.dst).T.copy()
        if isinstance(node, GuardRight):
            return self._guard_right(node.cond)
        if isinstance(node, GuardLeft):
            return self._guard_right(node.cond).T.copy()
        if isinstance(node, Jump):
            zeros = self._zeros()
            return np.outer(m.proc_mask.get(node.src, zeros), m.proc_mask.get(node.dst, zeros))
        if isinstance(node, Test):
            return np.diag(self.event(node.cond))
        if isinstance(node, Concat):
            return reduce(bool_matmul, (self.path(p) for p in node.parts))
        if isinstance(node, Union):
            return reduce(np.logical_or, (self.path(p) for p in node.parts))
        if isinstance(node, Inter):
            return reduce(np.logical_and, (self.path(p) for p in node.parts))
        if isinstance(node, Complement):
            return ~self.path(node.arg)
        raise TypeError(f"camino desconocido: {node!r}")

    def _msg(self, src: str, dst: str) -> np.ndarray:
        zeros = self._zeros()
        m = self.msc
        return m.msg_edges & m.proc_mask.get(src, zeros)[:, None] & m.proc_mask.get(dst, zeros)[None, :]

    def _guard_right(self, cond: EventFormula) -> np.ndarray:
        """→_φ: el siguiente evento siempre; se sigue avanzando mientras φ se cumpla."""
        holds = self.event(cond)
        mat = np.zeros((self.n, self.n), dtype=bool)
        for seq in self.msc.proc_events.values():
            for k, e in enumerate(seq):
                for f in seq[k + 1:]:
                    mat[e, f] = True
                    if not holds[f]:
                        break
        return mat


class PdlUseCases:
    """Evaluación directa de sentencias, fórmulas de evento y caminos."""

    def __init__(self):
        self._contexts: Dict[int, PdlContext] = {}

    def context(self, msc: Msc) -> PdlContext:
        """Contexto memoizado para `msc` (uno por MSC y por instancia)."""
        key = id(msc)
        ctx = self._contexts.get(key)
        if ctx is None or ctx.msc is not msc:
            if len(self._contexts) >= MAX_CONTEXTS:
                self._contexts.clear()
            ctx = PdlContext(msc)
            self._contexts[key] = ctx
        return ctx

    def check_symbols(self, msc: Msc, node: PdlNode) -> None:
        """
        Comprueba que la fórmula solo menciona procesos y etiquetas del MSC.

        Raises:
            UnknownProcess: Si aparece un proceso no declarado
            UnknownLabel: Si aparece una etiqueta no declarada
        """
        procs = sorted(processes_of(node) - set(msc.processes))
        if procs:
            raise UnknownProcess(f"procesos no declarados en la fórmula: {procs}")
        labels = sorted(map(repr, labels_of(node) - set(msc.labels)))
        if labels:
            raise UnknownLabel(f"etiquetas no declaradas en la fórmula: {labels}")

    def eval_sentence(self, msc: Msc, xi: Sentence) -> bool:
        """
        Decide M ⊨ ξ.

        Args:
            msc: MSC
            xi: Sentencia

        Returns:
            Valor de verdad
        """
        ctx = self.context(msc)
        result = ctx.sentence(xi)
        logger.debug("eval_sentence: %d fórmulas y %d caminos memoizados",
                     len(ctx.events), len(ctx.paths))
        return result

    def eval_event(self, msc: Msc, phi: EventFormula) -> FrozenSet[str]:
        """Identificadores de los eventos que satisfacen φ."""
        vec = self.context(msc).event(phi)
        return frozenset(msc.ids[i] for i in np.nonzero(vec)[0])

    def eval_path(self, msc: Msc, pi: PathFormula) -> EventRel:
        """Relación ⟦π⟧ sobre los eventos de `msc`."""
        return EventRel(msc, self.context(msc).path(pi).copy())

    def holds_at(self, msc: Msc, phi: EventFormula, event_id: str) -> bool:
        return bool(self.context(msc).event(phi)[msc.index[event_id]])

    def event_vector(self, msc: Msc, phi: EventFormula) -> np.ndarray:
        """Vector booleano de φ por índice de evento (solo lectura)."""
        return self.context(msc).event(phi)

    def evaluate(self, msc: Msc, node: PdlNode) -> object:
        """Evalúa cualquier clase sintáctica: bool, conjunto de eventos o relación."""
        if isinstance(node, Sentence):
            return self.eval_sentence(msc, node)
        if isinstance(node, EventFormula):
            return self.eval_event(msc, node)
        return self.eval_path(msc, node)

    def forget(self, msc: Optional[Msc] = None) -> None:
        """Libera los contextos (todos, o solo el de `msc`)."""
        if msc is None:
            self._contexts.clear()
        else:
            self._contexts.pop(id(msc), None)
