#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Módulo que define la biblioteca de transductores base.

Cada transductor base se describe por reglas locales (`step`) y tiene a lo
sumo cuatro estados por proceso. Las transiciones se generan bajo demanda y
se cachean por instancia; `CfmUseCases.materialize` las convierte en un
transductor explícito cuando hace falta serializarlas.
"""

import itertools
from enum import Enum
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..interfaces.machines import AcceptancePredicate, Machine
from .msc import ProcessSet
from .transition import ActionKind, Transition

BITS = (0, 1)
DUMMY = 0

# Colores de la construcción de bucles min/max: dos "sí" y dos "no".
Y1, Y2, N1, N2 = "Y1", "Y2", "N1", "N2"
COLORS = (Y1, Y2, N1, N2)
YES_COLORS = (Y1, Y2)


class BaseTransducerKind(str, Enum):
    """Tipos de transductor base."""
    PROC_TEST = "proc_test"               # p
    LABEL_TEST = "label_test"             # a (o un conjunto de etiquetas)
    NEG = "neg"                           # B_¬
    OR = "or"                             # B_∨ (aridad n)
    AND = "and"                           # B_∧ (aridad n)
    MSG_GUESS = "msg_guess"               # B_⊳
    MSG_INV_GUESS = "msg_inv_guess"       # B_⊳⁻¹
    STRICT_SINCE = "strict_since"         # B_YS
    STRICT_UNTIL = "strict_until"         # B_XU
    JUMP_BROADCAST = "jump_broadcast"     # B_jump
    IDENTITY = "identity"                 # A_Id
    COLOR_GUESS = "color_guess"           # Σ → Σ×Θ
    PROJECT_COLORS = "project_colors"     # Σ×Θ → {0,1}
    CONST_BIT = "const_bit"               # salida constante
    K_GATE = "k_gate"                     # restricción K
    LOOP_MEMORY = "loop_memory"           # autómata A de los bucles ·←⁺
    SENTENCE_TRACKER = "sentence_tracker" # aceptación de sentencias


Step = Tuple[Hashable, Hashable, Hashable]   # (salida, mensaje, destino)


class RuleTransducer(Machine):
    """
    Transductor base definido por reglas locales.

    Las subclases implementan `step`; esta clase construye y cachea las
    transiciones.
    """

    kind: BaseTransducerKind

    def __init__(self, processes: ProcessSet, sigma: Sequence[Hashable],
                 gamma: Sequence[Hashable], functional: bool = True,
                 messages: Sequence[Hashable] = (DUMMY,)):
        self.processes = processes
        self.sigma = tuple(sigma)
        self.gamma = tuple(gamma)
        self.functional = functional
        self.messages = tuple(messages)
        self._letters = frozenset(self.sigma)
        self._cache: Dict[Tuple, Tuple[Transition, ...]] = {}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.describe()})"

    def describe(self) -> str:
        return ""

    def states(self, proc: str) -> Tuple[Hashable, ...]:
        return (0,)

    def initial_state(self, proc: str) -> Hashable:
        return self.states(proc)[0]

    def step(self, proc: str, state: Hashable, letter: Hashable, kind: ActionKind,
             peer: Optional[str], msgs: Tuple[Hashable, ...]) -> Iterable[Step]:
        raise NotImplementedError

    def moves(self, proc, state, letter, kind, peer=None, msg=None):
        key = (proc, state, letter, kind, peer, msg)
        found = self._cache.get(key)
        if found is None:
            if letter not in self._letters:
                found = ()
            else:
                msgs = self.messages if msg is None else (msg,)
                found = tuple(
                    Transition(state, kind, (letter, out), peer,
                               None if kind == ActionKind.INTERNAL else m, target)
                    for out, m, target in self.step(proc, state, letter, kind, peer, msgs))
            self._cache[key] = found
        return found

    def accepts_final(self, final: Mapping[str, Hashable]) -> bool:
        return True

    def acceptance_rectangles(self) -> List[AcceptancePredicate]:
        return [{}]

    def state_bound(self, proc: str) -> int:
        return len(self.states(proc))

    @staticmethod
    def _plain(out: Hashable, state: Hashable, kind: ActionKind,
               msgs: Tuple[Hashable, ...]) -> Iterable[Step]:
        """Salida fija sin comunicación significativa (mensaje ficticio)."""
        if kind == ActionKind.INTERNAL or DUMMY in msgs:
            yield out, DUMMY, state


class ConstBit(RuleTransducer):
    """Emite siempre el mismo bit."""
    kind = BaseTransducerKind.CONST_BIT

    def __init__(self, processes: ProcessSet, sigma: Sequence[Hashable], bit: int):
        super().__init__(processes, sigma, BITS)
        self.bit = bit

    def describe(self):
        return str(self.bit)

    def step(self, proc, state, letter, kind, peer, msgs):
        return self._plain(self.bit, state, kind, msgs)


class ProcTestTransducer(RuleTransducer):
    """Emite 1 exactamente en los eventos del proceso dado."""
    kind = BaseTransducerKind.PROC_TEST

    def __init__(self, processes: ProcessSet, sigma: Sequence[Hashable], proc: str):
        super().__init__(processes, sigma, BITS)
        self.proc = proc

    def describe(self):
        return self.proc

    def step(self, proc, state, letter, kind, peer, msgs):
        return self._plain(int(proc == self.proc), state, kind, msgs)


class LabelTestTransducer(RuleTransducer):
    """Emite 1 exactamente en los eventos con etiqueta en el conjunto dado."""
    kind = BaseTransducerKind.LABEL_TEST

    def __init__(self, processes: ProcessSet, sigma: Sequence[Hashable], labels: Iterable[Hashable]):
        super().__init__(processes, sigma, BITS)
        self.labels = frozenset(labels)

    def describe(self):
        return ",".join(sorted(map(repr, self.labels)))

    def step(self, proc, state, letter, kind, peer, msgs):
        return self._plain(int(letter in self.labels), state, kind, msgs)


class Gate(RuleTransducer):
    """Puerta booleana sobre tuplas de bits (o un bit para la negación)."""

    def __init__(self, processes: ProcessSet, kind: BaseTransducerKind, arity: int = 1):
        self.kind = kind
        self.arity = arity
        if kind == BaseTransducerKind.NEG:
            sigma: Sequence[Hashable] = BITS
            self._fn: Callable[[Hashable], int] = lambda b: 1 - b
        else:
            sigma = tuple(itertools.product(BITS, repeat=arity))
            self._fn = (lambda bs: int(any(bs))) if kind == BaseTransducerKind.OR \
                else (lambda bs: int(all(bs)))
        super().__init__(processes, sigma, BITS)

    def describe(self):
        return f"{self.kind.value}/{self.arity}"

    def step(self, proc, state, letter, kind, peer, msgs):
        return self._plain(self._fn(letter), state, kind, msgs)


def neg_gate(processes: ProcessSet) -> Gate:
    return Gate(processes, BaseTransducerKind.NEG)


def or_gate(processes: ProcessSet, arity: int = 2) -> Gate:
    return Gate(processes, BaseTransducerKind.OR, arity)


def and_gate(processes: ProcessSet, arity: int = 2) -> Gate:
    return Gate(processes, BaseTransducerKind.AND, arity)


class Identity(RuleTransducer):
    """A_Id: copia la entrada en la salida."""
    kind = BaseTransducerKind.IDENTITY

    def __init__(self, processes: ProcessSet, sigma: Sequence[Hashable]):
        super().__init__(processes, sigma, sigma)

    def step(self, proc, state, letter, kind, peer, msgs):
        return self._plain(letter, state, kind, msgs)


class ColorGuess(RuleTransducer):
    """Proyección inversa Σ → Σ×Θ: adivina un color por evento."""
    kind = BaseTransducerKind.COLOR_GUESS

    def __init__(self, processes: ProcessSet, sigma: Sequence[Hashable]):
        super().__init__(processes, sigma, tuple((a, c) for a in sigma for c in COLORS),
                         functional=False)

    def step(self, proc, state, letter, kind, peer, msgs):
        for color in COLORS:
            yield from self._plain((letter, color), state, kind, msgs)


class ProjectColors(RuleTransducer):
    """Σ×Θ → {0,1}: 1 exactamente en los colores "sí"."""
    kind = BaseTransducerKind.PROJECT_COLORS

    def __init__(self, processes: ProcessSet, sigma: Sequence[Hashable]):
        super().__init__(processes, tuple((a, c) for a in sigma for c in COLORS), BITS)

    def step(self, proc, state, letter, kind, peer, msgs):
        return self._plain(int(letter[1] in YES_COLORS), state, kind, msgs)


class MsgGuess(RuleTransducer):
    """
    B_⊳ para el canal (p, q): ⟨⊳_{p,q}⟩ del bit de entrada.

    El emisor adivina el bit del receptor, lo emite y lo envía; el receptor
    comprueba que coincide con su propio bit de entrada.
    """
    kind = BaseTransducerKind.MSG_GUESS

    def __init__(self, processes: ProcessSet, src: str, dst: str):
        super().__init__(processes, BITS, BITS, messages=BITS)
        self.src = src
        self.dst = dst

    def describe(self):
        return f"{self.src},{self.dst}"

    def step(self, proc, state, letter, kind, peer, msgs):
        if kind == ActionKind.SEND and proc == self.src and peer == self.dst:
            for guess in BITS:
                if guess in msgs:
                    yield guess, guess, state
        elif kind == ActionKind.RECEIVE and proc == self.dst and peer == self.src:
            if letter in msgs:
                yield 0, letter, state
        else:
            yield from self._plain(0, state, kind, msgs)


class MsgInvGuess(RuleTransducer):
    """B_⊳⁻¹ para el canal (p, q): el emisor envía su bit y el receptor lo emite."""
    kind = BaseTransducerKind.MSG_INV_GUESS

    def __init__(self, processes: ProcessSet, src: str, dst: str):
        super().__init__(processes, BITS, BITS, messages=BITS)
        self.src = src
        self.dst = dst

    def describe(self):
        return f"{self.src},{self.dst}"

    def step(self, proc, state, letter, kind, peer, msgs):
        if kind == ActionKind.SEND and proc == self.src and peer == self.dst:
            if letter in msgs:
                yield 0, letter, state
        elif kind == ActionKind.RECEIVE and proc == self.dst and peer == self.src:
            for m in msgs:
                if m in BITS:
                    yield m, m, state
        else:
            yield from self._plain(0, state, kind, msgs)


class StrictSince(RuleTransducer):
    """
    B_YS sobre pares (b1, b2): ⟨←_{b1}⟩b2.

    El estado es el valor de salida del evento actual; tras leer (b1, b2)
    pasa a b2 ∨ (b1 ∧ estado). Determinista, dos estados.
    """
    kind = BaseTransducerKind.STRICT_SINCE

    def __init__(self, processes: ProcessSet):
        super().__init__(processes, tuple(itertools.product(BITS, repeat=2)), BITS)

    def states(self, proc):
        return (0, 1)

    def step(self, proc, state, letter, kind, peer, msgs):
        b1, b2 = letter
        if kind == ActionKind.INTERNAL or DUMMY in msgs:
            yield state, DUMMY, b2 | (b1 & state)


class StrictUntil(RuleTransducer):
    """
    B_XU sobre pares (b1, b2): ⟨→_{b1}⟩b2.

    Adivina la salida c del evento actual y verifica la predicción hecha en
    el evento anterior: ésta debe valer b2 ∨ (b1 ∧ c). Al final la última
    predicción debe ser 0 ("?" si el proceso no tuvo eventos).
    """
    kind = BaseTransducerKind.STRICT_UNTIL
    UNKNOWN = "?"

    def __init__(self, processes: ProcessSet):
        super().__init__(processes, tuple(itertools.product(BITS, repeat=2)), BITS)

    def states(self, proc):
        return (self.UNKNOWN, 0, 1)

    def step(self, proc, state, letter, kind, peer, msgs):
        b1, b2 = letter
        if kind != ActionKind.INTERNAL and DUMMY not in msgs:
            return
        for guess in BITS:
            if state == self.UNKNOWN or state == (b2 | (b1 & guess)):
                yield guess, DUMMY, guess

    def accepts_final(self, final):
        return all(s != 1 for s in final.values())

    def acceptance_rectangles(self):
        return [{p: (lambda s: s != 1) for p in self.processes}]

    def final_possible(self, proc, state):
        return state != 1


class JumpBroadcast(RuleTransducer):
    """
    B_jump para Jump(p, q): ⟨Jump(p,q)⟩ del bit de entrada.

    Los eventos de p emiten un bit adivinado en su primer evento; q recuerda
    si vio algún 1; la aceptación exige que ambos coincidan.
    """
    kind = BaseTransducerKind.JUMP_BROADCAST
    INIT = "init"

    def __init__(self, processes: ProcessSet, src: str, dst: str):
        super().__init__(processes, BITS, BITS)
        self.src = src
        self.dst = dst

    def describe(self):
        return f"{self.src},{self.dst}"

    def states(self, proc):
        if proc == self.src == self.dst:
            return (self.INIT, (0, 0), (1, 0), (1, 1))
        if proc == self.src:
            return (self.INIT, 0, 1)
        if proc == self.dst:
            return (0, 1)
        return (0,)

    def step(self, proc, state, letter, kind, peer, msgs):
        if kind != ActionKind.INTERNAL and DUMMY not in msgs:
            return
        if proc == self.src == self.dst:
            guesses = BITS if state == self.INIT else (state[0],)
            seen = letter if state == self.INIT else (state[1] | letter)
            for g in guesses:
                if not (g == 0 and seen == 1):
                    yield g, DUMMY, (g, seen)
        elif proc == self.src:
            for g in (BITS if state == self.INIT else (state,)):
                yield g, DUMMY, g
        elif proc == self.dst:
            yield 0, DUMMY, state | letter
        else:
            yield 0, DUMMY, state

    def accepts_final(self, final):
        if self.src == self.dst:
            s = final[self.src]
            return s == self.INIT or s[0] == s[1]
        return final[self.src] == self.INIT or final[self.src] == final[self.dst]

    def acceptance_rectangles(self):
        if self.src == self.dst:
            return [{self.src: lambda s: s == self.INIT or s[0] == s[1]}]
        return [{self.src: lambda s: s == self.INIT},
                {self.src: lambda s: s == 0, self.dst: lambda s: s == 0},
                {self.src: lambda s: s == 1, self.dst: lambda s: s == 1}]

    def final_possible(self, proc, state):
        if proc == self.src == self.dst:
            return state == self.INIT or state[0] == state[1]
        return True


class KGate(RuleTransducer):
    """
    Restricción K sobre ((σ, θ), b) → (σ, θ).

    Bloquea si b = 0 (la condición sobre colores falla) o si los colores "sí"
    de un proceso no alternan Y1, Y2, Y1, ... empezando por Y1.
    """
    kind = BaseTransducerKind.K_GATE

    def __init__(self, processes: ProcessSet, sigma: Sequence[Hashable]):
        colored = tuple((a, c) for a in sigma for c in COLORS)
        super().__init__(processes, tuple((x, b) for x in colored for b in BITS), colored)

    def states(self, proc):
        return (Y1, Y2)

    def step(self, proc, state, letter, kind, peer, msgs):
        (sigma_letter, color), bit = letter
        if bit == 0 or (kind != ActionKind.INTERNAL and DUMMY not in msgs):
            return
        if color in YES_COLORS:
            if color != state:
                return
            state = Y2 if color == Y1 else Y1
        yield (sigma_letter, color), DUMMY, state


class LoopMemory(RuleTransducer):
    """
    Autómata A para ψ = Loop(max π · ←⁺) sobre (b1, b2, b3, b4).

    b1 = ⟨π⟩, b2 = Loop max π, b3 = Loop min(→⁺·π⁻¹),
    b4 = Loop max(max π · →_{¬⟨π⟩}). El estado guarda la salida en el último
    evento del proceso con b1 = 1 (None si no lo hubo).
    """
    kind = BaseTransducerKind.LOOP_MEMORY

    def __init__(self, processes: ProcessSet):
        super().__init__(processes, tuple(itertools.product(BITS, repeat=4)), BITS)

    def states(self, proc):
        return (None, 0, 1)

    def step(self, proc, state, letter, kind, peer, msgs):
        if kind != ActionKind.INTERNAL and DUMMY not in msgs:
            return
        b1, b2, b3, b4 = letter
        if b1 == 0:
            yield 0, DUMMY, state
            return
        out = b3 if state != 1 else int(b3 == 1 or (b2 == 0 and b4 == 0))
        yield out, DUMMY, out


class SentenceTracker(RuleTransducer):
    """
    Recuerda por proceso qué componentes emitieron algún 1.

    La entrada es la tupla de bits de las fórmulas E φ_i; la aceptación
    evalúa la estructura booleana de la sentencia sobre el OR global de
    esos bits.
    """
    kind = BaseTransducerKind.SENTENCE_TRACKER

    def __init__(self, processes: ProcessSet, width: int, verdict: Callable[[Tuple[int, ...]], bool]):
        sigma = tuple(itertools.product(BITS, repeat=width))
        super().__init__(processes, sigma, sigma)
        self.width = width
        self.verdict = verdict

    def describe(self):
        return str(self.width)

    def states(self, proc):
        return tuple(itertools.product(BITS, repeat=self.width))

    def initial_state(self, proc):
        return (0,) * self.width

    def step(self, proc, state, letter, kind, peer, msgs):
        if kind != ActionKind.INTERNAL and DUMMY not in msgs:
            return
        yield letter, DUMMY, tuple(a | b for a, b in zip(state, letter))

    def _global(self, final: Mapping[str, Hashable]) -> Tuple[int, ...]:
        bits = [0] * self.width
        for s in final.values():
            bits = [a | b for a, b in zip(bits, s)]
        return tuple(bits)

    def accepts_final(self, final):
        return bool(self.verdict(self._global(final)))

    def acceptance_rectangles(self):
        rects: List[AcceptancePredicate] = []
        procs = list(self.processes)
        for bits in itertools.product(BITS, repeat=self.width):
            if not self.verdict(bits):
                continue
            ones = [i for i, b in enumerate(bits) if b]
            for owners in itertools.product(procs, repeat=len(ones)):
                def pred(s, p=None, bits=bits, ones=ones, owners=owners):
                    if any(s[i] for i, b in enumerate(bits) if not b):
                        return False
                    return all(s[i] for i, o in zip(ones, owners) if o == p)
                rects.append({p: (lambda s, p=p, pred=pred: pred(s, p)) for p in procs})
        return rects
