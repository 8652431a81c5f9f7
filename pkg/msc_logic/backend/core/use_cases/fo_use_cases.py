#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Casos de uso de la lógica de primer orden.

El evaluador por fuerza bruta es el oráculo de todas las traducciones:
recorre la fórmula normalizada memoizando por (subfórmula, valores de sus
variables libres) y aborta con ResourceLimit al superar el presupuesto.
"""

import logging
from typing import Dict, Iterable, List, Mapping, Optional, Set, Tuple

from ..entities.errors import ResourceLimit, UnboundVariable
from ..entities.fo_formula import (
    And, Eq, Exists, FoFormula, Forall, Implies, Le, LabelTest, MsgEdge, Not, Or,
    ProcEdge, ProcTest, ATOMS, normalize, substitute, variable_names,
)
from ..entities.msc import Msc
from ..entities.settings import Settings

logger = logging.getLogger(__name__)

Interpretation = Mapping[str, str]
Prefix = List[Tuple[type, str]]


class _Evaluator:
    """Contexto de evaluación confinado a un MSC."""

    def __init__(self, msc: Msc, max_steps: int):
        self.msc = msc
        self.max_steps = max_steps
        self.steps = 0
        self.memo: Dict[Tuple, bool] = {}
        self.universe = range(len(msc))

    def holds(self, phi: FoFormula, env: Dict[str, int]) -> bool:
        key = (phi, tuple(env[v] for v in phi.free_vars))
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        self.steps += 1
        if self.steps > self.max_steps:
            raise ResourceLimit("fo-eval", self.max_steps, self.steps)
        value = self._compute(phi, env)
        self.memo[key] = value
        return value

    def _compute(self, phi: FoFormula, env: Dict[str, int]) -> bool:
        m = self.msc
        if isinstance(phi, ProcTest):
            return m.events[env[phi.var]].proc == phi.proc
        if isinstance(phi, LabelTest):
            return m.events[env[phi.var]].label == phi.label
        if isinstance(phi, Eq):
            return env[phi.left] == env[phi.right]
        if isinstance(phi, ProcEdge):
            return int(m.proc_next[env[phi.src]]) == env[phi.dst]
        if isinstance(phi, MsgEdge):
            return bool(m.msg_edges[env[phi.src], env[phi.dst]])
        if isinstance(phi, Le):
            return bool(m.order[env[phi.src], env[phi.dst]])
        if isinstance(phi, Not):
            return not self.holds(phi.arg, env)
        if isinstance(phi, Or):
            return any(self.holds(a, env) for a in phi.args)
        if isinstance(phi, Exists):
            inner = dict(env)
            for i in self.universe:
                inner[phi.var] = i
                if self.holds(phi.body, inner):
                    return True
            return False
        raise TypeError(f"fórmula no normalizada: {phi!r}")


class FoUseCases:
    """
    Casos de uso de FO[→,⊳,≤].

    Attributes:
        settings: Configuración (presupuesto del evaluador)
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings()

    def eval_fo(self, msc: Msc, phi: FoFormula, nu: Optional[Interpretation] = None) -> bool:
        """
        Decide M, ν ⊨ φ por recursión directa.

        Args:
            msc: MSC
            phi: Fórmula
            nu: Interpretación (variable → id de evento)

        Returns:
            Valor de verdad

        Raises:
            UnboundVariable: Si ν no cubre las variables libres
            ResourceLimit: Si se supera el presupuesto de pasos
        """
        nu = dict(nu or {})
        missing = [v for v in phi.free_vars if v not in nu]
        if missing:
            raise UnboundVariable(f"variables libres sin valor: {missing}")
        env = {}
        for v in phi.free_vars:
            if nu[v] not in msc.index:
                raise UnboundVariable(f"la variable {v} apunta a un evento inexistente: {nu[v]}")
            env[v] = msc.index[nu[v]]
        core = normalize(phi, msc.processes.names)
        evaluator = _Evaluator(msc, self.settings.fo_eval_steps)
        result = evaluator.holds(core, env)
        logger.debug("eval_fo: %d pasos", evaluator.steps)
        return result

    def satisfying(self, msc: Msc, phi: FoFormula, variables: Tuple[str, ...]) -> Set[Tuple[str, ...]]:
        """
        Todas las asignaciones de `variables` que satisfacen φ.

        Args:
            msc: MSC
            phi: Fórmula cuyas variables libres están en `variables`
            variables: Orden de las variables en las tuplas devueltas
        """
        core = normalize(phi, msc.processes.names)
        evaluator = _Evaluator(msc, self.settings.fo_eval_steps)
        found = set()

        def walk(k: int, env: Dict[str, int]) -> None:
            if k == len(variables):
                if evaluator.holds(core, env):
                    found.add(tuple(msc.ids[env[v]] for v in variables))
                return
            for i in range(len(msc)):
                env[variables[k]] = i
                walk(k + 1, env)
            del env[variables[k]]

        walk(0, {})
        return found

    def variable_count(self, phi: FoFormula) -> int:
        """Número de nombres de variable distintos (se permite reutilizarlos)."""
        return len(variable_names(phi))

    def standardize_apart(self, phi: FoFormula, reserved: Iterable[str] = ()) -> FoFormula:
        """
        Renombra las variables ligadas para que todas sean distintas entre sí
        y distintas de las libres.

        Args:
            phi: Fórmula
            reserved: Nombres adicionales que no pueden usarse como ligados
        """
        used = set(phi.free_vars) | set(reserved)
        return _rename(phi, {}, used)

    def prenex(self, phi: FoFormula) -> FoFormula:
        """
        Forma normal prenexa equivalente.

        Implicaciones y conjunciones se conservan en la matriz; la negación se
        empuja a través de los cuantificadores invirtiéndolos.
        """
        if not any(isinstance(n, (Exists, Forall)) for n in _nodes(phi)):
            return phi
        prefix, matrix = _pull(self.standardize_apart(phi))
        for quant, var in reversed(prefix):
            matrix = quant(var, matrix)
        return matrix


def _nodes(phi: FoFormula):
    yield phi
    if isinstance(phi, Not):
        yield from _nodes(phi.arg)
    elif isinstance(phi, (Or, And)):
        for a in phi.args:
            yield from _nodes(a)
    elif isinstance(phi, Implies):
        yield from _nodes(phi.left)
        yield from _nodes(phi.right)
    elif isinstance(phi, (Exists, Forall)):
        yield from _nodes(phi.body)


def fresh_name(base: str, used: Set[str]) -> str:
    """Nombre derivado de `base` que no aparece en `used`."""
    stem = base.rstrip("0123456789") or base
    k = 1
    while f"{stem}{k}" in used:
        k += 1
    return f"{stem}{k}"


def _rename(phi: FoFormula, mapping: Dict[str, str], used: Set[str]) -> FoFormula:
    if isinstance(phi, ATOMS):
        return substitute(phi, mapping)
    if isinstance(phi, Not):
        return Not(_rename(phi.arg, mapping, used))
    if isinstance(phi, (Or, And)):
        return type(phi)(tuple(_rename(a, mapping, used) for a in phi.args))
    if isinstance(phi, Implies):
        return Implies(_rename(phi.left, mapping, used), _rename(phi.right, mapping, used))
    if isinstance(phi, (Exists, Forall)):
        var = phi.var if phi.var not in used else fresh_name(phi.var, used | set(mapping.values()))
        used.add(var)
        inner = dict(mapping)
        inner[phi.var] = var
        return type(phi)(var, _rename(phi.body, inner, used))
    raise TypeError(f"fórmula FO desconocida: {phi!r}")


_DUAL = {Exists: Forall, Forall: Exists}


def _pull(phi: FoFormula) -> Tuple[Prefix, FoFormula]:
    if isinstance(phi, ATOMS):
        return [], phi
    if isinstance(phi, Not):
        prefix, matrix = _pull(phi.arg)
        return [(_DUAL[q], v) for q, v in prefix], Not(matrix)
    if isinstance(phi, (Or, And)):
        prefix: Prefix = []
        matrices = []
        for a in phi.args:
            p, m = _pull(a)
            prefix.extend(p)
            matrices.append(m)
        return prefix, type(phi)(tuple(matrices))
    if isinstance(phi, Implies):
        p1, m1 = _pull(Not(phi.left))
        p2, m2 = _pull(phi.right)
        return p1 + p2, Implies(m1.arg, m2)
    if isinstance(phi, (Exists, Forall)):
        prefix, matrix = _pull(phi.body)
        return [(type(phi), phi.var)] + prefix, matrix
    raise TypeError(f"fórmula FO desconocida: {phi!r}")

