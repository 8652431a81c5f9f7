#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Módulo que define las máquinas compuestas perezosas.

El producto, la composición y las proyecciones de transductores se
representan sin construir el producto de estados: las transiciones se
calculan bajo demanda a partir de las de los componentes y se cachean.
"""

import itertools
import math
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from ..interfaces.machines import AcceptancePredicate, Machine
from .errors import IncompatibleAlphabet
from .transition import ActionKind, Transition


def _combine_rectangles(parts: Sequence[List[AcceptancePredicate]]) -> List[AcceptancePredicate]:
    """Producto de listas de rectángulos sobre estados-tupla."""
    combined = []
    for choice in itertools.product(*parts):
        rect: Dict[str, List] = {}
        for i, r in enumerate(choice):
            for p, pred in r.items():
                rect.setdefault(p, []).append((i, pred))
        combined.append({p: (lambda s, preds=tuple(preds): all(f(s[i]) for i, f in preds))
                         for p, preds in rect.items()})
    return combined


class CachedMachine(Machine):
    """Base con caché de movimientos."""

    def __init__(self):
        self._cache: Dict[Tuple, Tuple[Transition, ...]] = {}

    def moves(self, proc, state, letter, kind, peer=None, msg=None):
        key = (proc, state, letter, kind, peer, msg)
        found = self._cache.get(key)
        if found is None:
            found = tuple(dict.fromkeys(self._moves(proc, state, letter, kind, peer, msg)))
            self._cache[key] = found
        return found

    def _moves(self, proc, state, letter, kind, peer, msg):
        raise NotImplementedError


class ProductMachine(CachedMachine):
    """
    Producto A₁ × … × Aₙ de transductores con la misma entrada.

    Los estados, los mensajes y las salidas son tuplas con una componente por
    factor; la aceptación es el producto de rectángulos.
    """

    def __init__(self, components: Sequence[Machine]):
        super().__init__()
        if not components:
            raise IncompatibleAlphabet("el producto necesita al menos un componente")
        first = components[0]
        for c in components[1:]:
            if c.processes != first.processes or set(c.sigma) != set(first.sigma):
                raise IncompatibleAlphabet("los factores del producto difieren en P o Σ")
        if any(c.gamma is None for c in components):
            raise IncompatibleAlphabet("el producto solo se define entre transductores")
        self.components = tuple(components)
        self.processes = first.processes
        self.sigma = first.sigma
        self.gamma = tuple(itertools.product(*(c.gamma for c in components)))
        self.functional = all(c.functional for c in components)

    def __repr__(self):
        return f"Product({', '.join(map(repr, self.components))})"

    def initial_state(self, proc):
        return tuple(c.initial_state(proc) for c in self.components)

    def _moves(self, proc, state, letter, kind, peer, msg):
        options = []
        for i, c in enumerate(self.components):
            found = c.moves(proc, state[i], letter, kind, peer, None if msg is None else msg[i])
            if not found:
                return
            options.append(found)
        for parts in itertools.product(*options):
            yield self.combine(parts)

    def combine(self, parts: Sequence[Transition]) -> Transition:
        """Transición del producto a partir de una transición por factor."""
        head = parts[0]
        msg = None if head.kind == ActionKind.INTERNAL else tuple(t.msg for t in parts)
        return Transition(tuple(t.source for t in parts), head.kind,
                          (head.label[0], tuple(t.label[1] for t in parts)), head.peer, msg,
                          tuple(t.target for t in parts))

    def accepts_final(self, final):
        return all(c.accepts_final({p: s[i] for p, s in final.items()})
                   for i, c in enumerate(self.components))

    def acceptance_rectangles(self):
        return _combine_rectangles([c.acceptance_rectangles() for c in self.components])

    def state_bound(self, proc):
        return math.prod(c.state_bound(proc) for c in self.components)

    def is_dead(self, proc, state):
        return any(c.is_dead(proc, state[i]) for i, c in enumerate(self.components))

    def final_possible(self, proc, state):
        return all(c.final_possible(proc, state[i]) for i, c in enumerate(self.components))


class ComposeMachine(CachedMachine):
    """
    Composición A′ ∘ A: la salida de `inner` es la entrada de `outer`.

    El etiquetado intermedio se adivina dentro del producto sincronizado.
    `functional` permite declarar funcional una composición cuya unicidad de
    salida garantiza la construcción aunque el interior no sea funcional.
    """

    def __init__(self, outer: Machine, inner: Machine, functional: Optional[bool] = None):
        super().__init__()
        if inner.gamma is None or outer.gamma is None:
            raise IncompatibleAlphabet("la composición solo se define entre transductores")
        if outer.processes != inner.processes or not set(inner.gamma) <= set(outer.sigma):
            raise IncompatibleAlphabet("la salida interna no coincide con la entrada externa")
        self.outer = outer
        self.inner = inner
        self.processes = inner.processes
        self.sigma = inner.sigma
        self.gamma = outer.gamma
        self.functional = (outer.functional and inner.functional) if functional is None else functional

    def __repr__(self):
        return f"Compose({self.outer!r}, {self.inner!r})"

    def initial_state(self, proc):
        return (self.outer.initial_state(proc), self.inner.initial_state(proc))

    def _moves(self, proc, state, letter, kind, peer, msg):
        s_out, s_in = state
        m_out, m_in = (None, None) if msg is None else msg
        for ti in self.inner.moves(proc, s_in, letter, kind, peer, m_in):
            if self.inner.is_dead(proc, ti.target):
                continue
            for to in self.outer.moves(proc, s_out, ti.label[1], kind, peer, m_out):
                yield self.combine(to, ti)

    def combine(self, outer_t: Transition, inner_t: Transition) -> Transition:
        """Transición compuesta a partir de la externa y la interna."""
        msg = None if inner_t.kind == ActionKind.INTERNAL else (outer_t.msg, inner_t.msg)
        return Transition((outer_t.source, inner_t.source), inner_t.kind,
                          (inner_t.label[0], outer_t.label[1]), inner_t.peer, msg,
                          (outer_t.target, inner_t.target))

    def accepts_final(self, final):
        return (self.outer.accepts_final({p: s[0] for p, s in final.items()})
                and self.inner.accepts_final({p: s[1] for p, s in final.items()}))

    def acceptance_rectangles(self):
        return _combine_rectangles([self.outer.acceptance_rectangles(),
                                    self.inner.acceptance_rectangles()])

    def state_bound(self, proc):
        return self.outer.state_bound(proc) * self.inner.state_bound(proc)

    def is_dead(self, proc, state):
        return self.outer.is_dead(proc, state[0]) or self.inner.is_dead(proc, state[1])

    def final_possible(self, proc, state):
        return (self.outer.final_possible(proc, state[0])
                and self.inner.final_possible(proc, state[1]))


class ProjectionMachine(CachedMachine):
    """CFM sobre Σ obtenido olvidando la salida de un transductor."""

    def __init__(self, transducer: Machine):
        super().__init__()
        if transducer.gamma is None:
            raise IncompatibleAlphabet("solo se proyectan transductores")
        self.transducer = transducer
        self.processes = transducer.processes
        self.sigma = transducer.sigma
        self.gamma = None
        self.functional = False

    def __repr__(self):
        return f"Project({self.transducer!r})"

    def initial_state(self, proc):
        return self.transducer.initial_state(proc)

    def _moves(self, proc, state, letter, kind, peer, msg):
        for t in self.transducer.moves(proc, state, letter, kind, peer, msg):
            yield self.combine(t)

    @staticmethod
    def combine(t: Transition) -> Transition:
        return Transition(t.source, t.kind, t.label[0], t.peer, t.msg, t.target)

    def accepts_final(self, final):
        return self.transducer.accepts_final(final)

    def acceptance_rectangles(self):
        return self.transducer.acceptance_rectangles()

    def state_bound(self, proc):
        return self.transducer.state_bound(proc)

    def is_dead(self, proc, state):
        return self.transducer.is_dead(proc, state)

    def final_possible(self, proc, state):
        return self.transducer.final_possible(proc, state)


class AsCfmMachine(CachedMachine):
    """Un transductor visto como CFM sobre Σ×Γ."""

    def __init__(self, transducer: Machine):
        super().__init__()
        if transducer.gamma is None:
            raise IncompatibleAlphabet("solo los transductores tienen vista Σ×Γ")
        self.transducer = transducer
        self.processes = transducer.processes
        self.sigma = tuple((a, b) for a in transducer.sigma for b in transducer.gamma)
        self.gamma = None
        self.functional = False

    def __repr__(self):
        return f"AsCfm({self.transducer!r})"

    def initial_state(self, proc):
        return self.transducer.initial_state(proc)

    def _moves(self, proc, state, letter, kind, peer, msg):
        sigma_letter, gamma_letter = letter
        for t in self.transducer.moves(proc, state, sigma_letter, kind, peer, msg):
            if t.label[1] == gamma_letter:
                yield t

    def accepts_final(self, final: Mapping[str, Hashable]) -> bool:
        return self.transducer.accepts_final(final)

    def acceptance_rectangles(self):
        return self.transducer.acceptance_rectangles()

    def state_bound(self, proc):
        return self.transducer.state_bound(proc)

    def is_dead(self, proc, state):
        return self.transducer.is_dead(proc, state)

    def final_possible(self, proc, state):
        return self.transducer.final_possible(proc, state)
