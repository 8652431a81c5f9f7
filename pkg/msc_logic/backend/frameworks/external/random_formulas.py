#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Generador de fórmulas aleatorias (PDL y FO) para pruebas diferenciales.
"""

import random
from typing import Hashable, List, Sequence

from ...core.entities import fo_formula as fo
from ...core.entities import pdl_formula as pdl


class RandomFormulaGenerator:
    """
    Fórmulas aleatorias sobre un conjunto de procesos y etiquetas.

    Attributes:
        rng: Fuente de aleatoriedad con semilla
        processes: Procesos
        labels: Etiquetas
    """

    def __init__(self, rng: random.Random, processes: Sequence[str], labels: Sequence[Hashable]):
        self.rng = rng
        self.processes = list(processes)
        self.labels = list(labels)

    def _channel(self):
        return tuple(self.rng.sample(self.processes, 2))

    # --- PDL ---

    def atom_event(self) -> pdl.EventFormula:
        roll = self.rng.random()
        if roll < 0.45:
            return pdl.Lab(self.rng.choice(self.labels))
        if roll < 0.85:
            return pdl.At(self.rng.choice(self.processes))
        return pdl.TRUE

    def event(self, depth: int, loops: bool = False) -> pdl.EventFormula:
        """
        Fórmula de evento de profundidad como mucho `depth`.

        Args:
            depth: Profundidad máxima
            loops: Permitir Loop π (con π sin ∩ ni complemento)
        """
        if depth <= 0:
            return self.atom_event()
        kinds = ["atom", "not", "or", "and", "ex"] + (["loop"] if loops else [])
        kind = self.rng.choice(kinds)
        if kind == "atom":
            return self.atom_event()
        if kind == "not":
            return pdl.not_(self.event(depth - 1, loops))
        if kind in ("or", "and"):
            left, right = self.event(depth - 1, loops), self.event(depth - 1, loops)
            return pdl.or_(left, right) if kind == "or" else pdl.and_(left, right)
        if kind == "ex":
            return pdl.ex(self.path(depth - 1, loops=loops), self.event(depth - 1, loops))
        return pdl.loop(self.path(depth - 1, loops=False, union=True))

    def atom_path(self) -> pdl.PathFormula:
        if len(self.processes) < 2:
            return self.rng.choice([pdl.NEXT, pdl.PREV, pdl.plus(), pdl.minus()])
        roll = self.rng.random()
        if roll < 0.2:
            return pdl.NEXT
        if roll < 0.35:
            return pdl.PREV
        if roll < 0.55:
            return pdl.Msg(*self._channel())
        if roll < 0.7:
            return pdl.MsgInv(*self._channel())
        if roll < 0.8:
            return pdl.plus()
        if roll < 0.9:
            return pdl.minus()
        return pdl.Jump(self.rng.choice(self.processes), self.rng.choice(self.processes))

    def path(self, depth: int, loops: bool = False, union: bool = False,
             full: bool = False) -> pdl.PathFormula:
        """
        Camino de profundidad como mucho `depth`.

        Args:
            depth: Profundidad máxima
            loops: Permitir bucles en las pruebas y guardas
            union: Permitir ∪
            full: Permitir también ∩ y complemento
        """
        if depth <= 0:
            return self.atom_path()
        kinds = ["atom", "cat", "guard->", "guard<-", "test"]
        if union or full:
            kinds.append("cup")
        if full:
            kinds += ["cap", "comp"]
        kind = self.rng.choice(kinds)
        sub = depth - 1
        if kind == "atom":
            return self.atom_path()
        if kind == "cat":
            return pdl.concat(self.path(sub, loops, union, full), self.path(sub, loops, union, full))
        if kind == "guard->":
            return pdl.guard_right(self.event(sub, loops))
        if kind == "guard<-":
            return pdl.guard_left(self.event(sub, loops))
        if kind == "test":
            return pdl.concat(pdl.Test(self.event(sub, loops)), self.path(sub, loops, union, full))
        if kind == "cup":
            return pdl.union(self.path(sub, loops, union, full), self.path(sub, loops, union, full))
        if kind == "cap":
            return pdl.inter(self.path(sub, loops, union, full), self.path(sub, loops, union, full))
        return pdl.complement(self.path(sub, loops, union, full))

    def loop_free_path(self, depth: int) -> pdl.PathFormula:
        """Camino sin bucles, ∪, ∩ ni complemento."""
        return self.path(depth, loops=False, union=False, full=False)

    def sentence(self, depth: int, loops: bool = False) -> pdl.Sentence:
        roll = self.rng.random()
        if roll < 0.6 or depth <= 0:
            return pdl.some(self.event(depth, loops))
        if roll < 0.8:
            return pdl.s_not(self.sentence(depth - 1, loops))
        return pdl.s_or(self.sentence(depth - 1, loops), self.sentence(depth - 1, loops))

    # --- FO ---

    def fo_atom(self, variables: List[str]) -> fo.FoFormula:
        x = self.rng.choice(variables)
        y = self.rng.choice(variables)
        kind = self.rng.choice(["p", "a", "=", "proc-edge", "msg-edge", "le", "le-proc"])
        if kind == "p":
            return fo.ProcTest(self.rng.choice(self.processes), x)
        if kind == "a":
            return fo.LabelTest(self.rng.choice(self.labels), x)
        cls = {"=": fo.Eq, "proc-edge": fo.ProcEdge, "msg-edge": fo.MsgEdge,
               "le": fo.Le, "le-proc": fo.LeProc}[kind]
        return cls(x, y)

    def fo_formula(self, depth: int, free: Sequence[str], quantifiers: int = 2) -> fo.FoFormula:
        """
        Fórmula FO con variables libres incluidas en `free`.

        Args:
            depth: Profundidad booleana máxima
            free: Variables disponibles
            quantifiers: Profundidad de cuantificadores restante
        """
        variables = list(free)
        if depth <= 0 or not variables:
            if not variables:
                var = f"v{quantifiers}"
                return fo.Exists(var, self.fo_atom([var]))
            return self.fo_atom(variables)
        kinds = ["atom", "not", "or", "and"] + (["exists", "forall"] if quantifiers > 0 else [])
        kind = self.rng.choice(kinds)
        if kind == "atom":
            return self.fo_atom(variables)
        if kind == "not":
            return fo.Not(self.fo_formula(depth - 1, free, quantifiers))
        if kind in ("or", "and"):
            args = (self.fo_formula(depth - 1, free, quantifiers),
                    self.fo_formula(depth - 1, free, quantifiers))
            return fo.Or(args) if kind == "or" else fo.And(args)
        var = f"v{quantifiers}"
        body = self.fo_formula(depth - 1, variables + [var], quantifiers - 1)
        return fo.Exists(var, body) if kind == "exists" else fo.Forall(var, body)

    def fo_sentence(self, depth: int, quantifiers: int = 2) -> fo.FoFormula:
        var = f"v{quantifiers}"
        body = self.fo_formula(depth, [var], quantifiers - 1)
        return fo.Exists(var, body) if self.rng.random() < 0.5 else fo.Forall(var, body)
