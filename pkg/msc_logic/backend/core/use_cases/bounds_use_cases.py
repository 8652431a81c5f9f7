#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Casos de uso de MSCs existencialmente acotados.

Un MSC es ∃B-acotado si alguna linealización mantiene como mucho B
mensajes pendientes por canal; equivale a que < ∪ rev_B sea acíclica, donde
rev_B une cada recepción con el B-ésimo envío posterior del mismo canal.
Se ofrecen la ruta de grafos, las fórmulas PDL y FO equivalentes, la
linealización canónica ⊏_B y las palabras de linealización.
"""

import functools
import logging
from collections import Counter, deque
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from ..entities import fo_formula as fo
from ..entities.errors import MalformedWord, MscValidationError, NotExistsBBounded, ResourceLimit
from ..entities.msc import EventRel, LinLetter, Linearization, Msc, RawMsc, reflexive_transitive_closure
from ..entities.pdl_formula import (
    FALSE, Msg, MsgInv, PathFormula, Sentence, Test, concat, ex, loop, not_, guard_right, s_not,
    some, star, union,
)
from ..entities.settings import Settings
from .fo_use_cases import fresh_name
from .msc_use_cases import MscUseCases

logger = logging.getLogger(__name__)

LinWord = Tuple[LinLetter, ...]


def _channels(processes: Sequence[str]) -> List[Tuple[str, str]]:
    return [(p, q) for p in processes for q in processes if p != q]


def rev_formula(bound: int, processes: Sequence[str]) -> PathFormula:
    """⋃_{p≠q} ⊳⁻¹_{p,q}·(→_{¬⟨⊳_{p,q}⟩}·{⟨⊳_{p,q}⟩}?)^B."""
    parts = []
    for p, q in _channels(processes):
        sends = ex(Msg(p, q))
        step = concat(guard_right(not_(sends)), Test(sends))
        parts.append(concat(MsgInv(p, q), *([step] * bound)))
    return union(*parts) if parts else Test(FALSE)


def lt_formula(bound: int, processes: Sequence[str]) -> PathFormula:
    """
    ⋃_{2≤n≤|P|} ((⊳ ∪ rev_B)·→*)^n.

    Loop lt_B se cumple en los eventos de un ciclo de < ∪ rev_B.
    """
    channels = _channels(processes)
    if not channels:
        return Test(FALSE)
    edge = union(*(Msg(p, q) for p, q in channels), rev_formula(bound, processes))
    block = concat(edge, star())
    return union(*(concat(*([block] * n)) for n in range(2, len(processes) + 1)))


def exists_b_formula(bound: int, processes: Sequence[str]) -> Sentence:
    """ξ_∃B = ¬E Loop lt_B."""
    return s_not(some(loop(lt_formula(bound, processes))))


def _strictly_proc(a: str, b: str) -> fo.FoFormula:
    return fo.conj(fo.LeProc(a, b), fo.Not(fo.Eq(a, b)))


def rev_fo(bound: int, x: str = "x", y: str = "y") -> fo.FoFormula:
    """
    rev_B(x, y) en FO: y es el B-ésimo envío del canal de x tras el envío de x.

    Los envíos intermedios z₀ <proc z₁ <proc … <proc z_B = y son consecutivos
    entre los que tienen su recepción en el proceso de x, después de x.
    """
    used = {x, y}
    names = []
    for _ in range(bound):
        names.append(fresh_name("z", used))
        used.add(names[-1])
    w = fresh_name("w", used)
    used.add(w)
    between = fresh_name("z", used)

    def matched_after(z: str) -> fo.FoFormula:
        return fo.Exists(w, fo.conj(fo.MsgEdge(z, w), fo.LeProc(x, w)))

    def consecutive(a: str, b: str) -> fo.FoFormula:
        gap = fo.conj(_strictly_proc(a, between), _strictly_proc(between, b), matched_after(between))
        return fo.conj(_strictly_proc(a, b), fo.Not(fo.Exists(between, gap)))

    chain = names + [y]
    body: fo.FoFormula = fo.conj(consecutive(chain[-2], y), matched_after(y))
    for k in range(len(chain) - 2, 0, -1):
        body = fo.Exists(chain[k], fo.conj(consecutive(chain[k - 1], chain[k]),
                                           matched_after(chain[k]), body))
    return fo.Exists(chain[0], fo.conj(fo.MsgEdge(chain[0], x), body))


def exists_b_fo_formula(bound: int, processes: Sequence[str]) -> fo.FoFormula:
    """Φ_∃B: ningún ciclo de < ∪ rev_B con 2 ≤ n ≤ 2|P| aristas."""
    def edge(a: str, b: str) -> fo.FoFormula:
        return fo.disj(fo.conj(fo.Le(a, b), fo.Not(fo.Eq(a, b))), rev_fo(bound, a, b))

    cycles = []
    for n in range(2, 2 * len(processes) + 1):
        names = [f"x{i}" for i in range(n)]
        body = edge(names[-1], names[0])
        for i in range(n - 1, 0, -1):
            body = fo.Exists(names[i], fo.conj(edge(names[i - 1], names[i]), body))
        cycles.append(fo.Not(fo.Exists(names[0], body)))
    return fo.conj(*cycles)


class BoundsUseCases:
    """
    Casos de uso de la acotación existencial.

    Attributes:
        settings: Configuración (cota de linealizaciones enumeradas)
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings()
        self.mscs = MscUseCases()

    def rev_edges(self, msc: Msc, bound: int) -> EventRel:
        """
        rev_B calculada sobre el grafo.

        Args:
            msc: MSC
            bound: Cota B ≥ 1
        """
        sends: Dict[Tuple[str, str], List[str]] = {}
        for s, _ in sorted(msc.messages, key=lambda m: int(msc.position[msc.index[m[0]]])):
            sends.setdefault(msc.channel_of(msc.index[s]), []).append(s)
        pairs = []
        for s, r in msc.messages:
            seq = sends[msc.channel_of(msc.index[s])]
            k = seq.index(s) + bound
            if k < len(seq):
                pairs.append((r, seq[k]))
        return EventRel.from_pairs(msc, pairs)

    def _extended(self, msc: Msc, bound: int) -> nx.DiGraph:
        g = msc.graph.copy()
        rev = self.rev_edges(msc, bound)
        g.add_edges_from((int(a), int(b)) for a, b in zip(*np.nonzero(rev.matrix)))
        return g

    def is_exists_b_bounded(self, msc: Msc, bound: int) -> bool:
        """Cierto si < ∪ rev_B es acíclica."""
        return nx.is_directed_acyclic_graph(self._extended(msc, bound))

    def has_b_bounded_linearization(self, msc: Msc, bound: int) -> bool:
        """
        Búsqueda directa de una linealización B-acotada (oráculo).

        Explora los prefijos (conjuntos cerrados hacia abajo) sin repetirlos.

        Raises:
            ResourceLimit: Si se superan enumerate_max_labelings prefijos
        """
        preds = [frozenset(msc.graph.predecessors(i)) for i in range(len(msc))]
        start: frozenset = frozenset()
        seen = {start}
        queue = deque([start])
        while queue:
            done = queue.popleft()
            if len(done) == len(msc):
                return True
            pending: Counter = Counter()
            for i in done:
                channel = msc.channel_of(i)
                if channel is not None:
                    pending[channel] += 1 if msc.is_send[i] else -1
            for i in range(len(msc)):
                if i in done or not preds[i] <= done:
                    continue
                channel = msc.channel_of(i)
                if channel is not None and msc.is_send[i] and pending[channel] >= bound:
                    continue
                nxt = done | {i}
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
                    if len(seen) > self.settings.enumerate_max_labelings:
                        raise ResourceLimit("bounded-search", self.settings.enumerate_max_labelings,
                                            len(seen))
        return False

    def is_forall_b_bounded(self, msc: Msc, bound: int, brute_force: bool = False) -> bool:
        """
        Cierto si todas las linealizaciones son B-acotadas.

        El peor prefijo para el k-ésimo envío de un canal es ↓s_k, que solo
        contiene las recepciones ≤ s_k. Con `brute_force` se enumeran las
        linealizaciones.

        Raises:
            ResourceLimit: Si la enumeración supera enumerate_max_labelings
        """
        if brute_force:
            for k, lin in enumerate(self.mscs.linearizations(msc)):
                if k >= self.settings.enumerate_max_labelings:
                    raise ResourceLimit("linearizations", self.settings.enumerate_max_labelings, k + 1)
                if not self.mscs.is_b_bounded_linearization(msc, lin, bound):
                    return False
            return True
        by_channel: Dict[Tuple[str, str], List[Tuple[int, int]]] = {}
        for s, r in msc.messages:
            i, j = msc.index[s], msc.index[r]
            by_channel.setdefault(msc.channel_of(i), []).append((i, j))
        for pairs in by_channel.values():
            pairs.sort(key=lambda m: int(msc.position[m[0]]))
            for k, (s, _) in enumerate(pairs, start=1):
                received = sum(1 for _, r in pairs if msc.order[r, s])
                if k - received > bound:
                    return False
        return True

    def le_b(self, msc: Msc, bound: int) -> np.ndarray:
        """Matriz de ≤_B = (≤ ∪ rev_B)*."""
        return reflexive_transitive_closure(msc.order | self.rev_edges(msc, bound).matrix)

    def canonical_linearization(self, msc: Msc, bound: int) -> Linearization:
        """
        Linealización canónica ⊏_B.

        e ⊏ f si e <_B f, o si son incomparables y el proceso mínimo de
        loc(↑e ∖ ↑f) precede al de loc(↑f ∖ ↑e) en el orden de declaración.

        Raises:
            NotExistsBBounded: Si el MSC no es ∃B-acotado
        """
        if not self.is_exists_b_bounded(msc, bound):
            raise NotExistsBBounded(f"el MSC no es ∃{bound}-acotado")
        le = self.le_b(msc, bound)

        def first_process(mask: np.ndarray) -> int:
            return int(msc.loc[mask].min())

        def compare(e: int, f: int) -> int:
            if e == f:
                return 0
            if le[e, f]:
                return -1
            if le[f, e]:
                return 1
            return -1 if first_process(le[e] & ~le[f]) < first_process(le[f] & ~le[e]) else 1

        order = sorted(range(len(msc)), key=functools.cmp_to_key(compare))
        return Linearization(tuple(msc.ids[i] for i in order))

    # --- Palabras de linealización ---

    def lin_word(self, msc: Msc, lin: Linearization) -> LinWord:
        """
        Palabra sobre Σ_lin de una linealización.

        Raises:
            NotALinearization: Si `lin` no linealiza `msc`
        """
        self.mscs.check_linearization(msc, lin)
        word = []
        for eid in lin.order:
            i = msc.index[eid]
            event = msc.events[i]
            j = int(msc.partner[i])
            if j < 0:
                kind = event.proc
            elif msc.is_send[i]:
                kind = f"{event.proc}!{msc.events[j].proc}"
            else:
                kind = f"{event.proc}?{msc.events[j].proc}"
            word.append(LinLetter(event.label, kind))
        return tuple(word)

    def msc_of_word(self, word: Sequence[LinLetter], processes: Optional[Sequence[str]] = None,
                    labels: Optional[Sequence[Hashable]] = None,
                    ids: Optional[Sequence[str]] = None) -> Msc:
        """
        Reconstruye el MSC de una palabra de linealización.

        Args:
            word: Letras (etiqueta, tipo)
            processes: Procesos declarados (por defecto, en orden de aparición)
            labels: Etiquetas declaradas (por defecto, en orden de aparición)
            ids: Identificador de cada posición (por defecto, p.k)

        Raises:
            MalformedWord: Recepción sin envío, envío sin recepción o MSC inválido
        """
        procs = list(processes) if processes is not None else []
        alphabet = list(labels) if labels is not None else []
        raw = RawMsc(procs, alphabet, {p: [] for p in procs}, [])
        queues: Dict[Tuple[str, str], deque] = {}
        for k, letter in enumerate(word):
            p = letter.process
            if p not in raw.proc_events:
                if processes is not None:
                    raise MalformedWord(f"posición {k}: proceso desconocido {p}")
                procs.append(p)
                raw.proc_events[p] = []
            if letter.label not in alphabet:
                if labels is not None:
                    raise MalformedWord(f"posición {k}: etiqueta desconocida {letter.label!r}")
                alphabet.append(letter.label)
            eid = ids[k] if ids is not None else f"{p}.{len(raw.proc_events[p])}"
            raw.proc_events[p].append((eid, letter.label))
            if letter.is_send:
                queues.setdefault((p, letter.peer), deque()).append(eid)
            elif letter.is_receive:
                queue = queues.get((letter.peer, p))
                if not queue:
                    raise MalformedWord(f"posición {k}: recepción en {p} sin envío desde {letter.peer}")
                raw.messages.append((queue.popleft(), eid))
        unmatched = sorted(f"{p}!{q}" for (p, q), queue in queues.items() if queue)
        if unmatched:
            raise MalformedWord(f"envíos sin recepción: {unmatched}")
        try:
            return self.mscs.validate(raw)
        except MscValidationError as exc:
            raise MalformedWord(str(exc)) from exc
