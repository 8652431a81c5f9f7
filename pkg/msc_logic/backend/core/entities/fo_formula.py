#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Módulo que define el árbol sintáctico de FO[→,⊳,≤] sobre MSCs.

Las fórmulas son inmutables. And, Implies, Forall y LeProc son azúcar
sintáctico que `normalize` elimina antes de evaluar.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Hashable, Iterable, Sequence, Tuple

from .structural import StructuralNode


class FoFormula(StructuralNode):
    """Clase base de las fórmulas de primer orden."""

    @cached_property
    def free_vars(self) -> Tuple[str, ...]:
        """Variables libres en orden de primera aparición."""
        return _free_vars(self)


@dataclass(frozen=True, eq=False)
class ProcTest(FoFormula):
    """p(x): el evento x está en el proceso p."""
    proc: str
    var: str


@dataclass(frozen=True, eq=False)
class LabelTest(FoFormula):
    """a(x): el evento x tiene etiqueta a."""
    label: Hashable
    var: str


@dataclass(frozen=True, eq=False)
class Eq(FoFormula):
    left: str
    right: str


@dataclass(frozen=True, eq=False)
class ProcEdge(FoFormula):
    """x → y."""
    src: str
    dst: str


@dataclass(frozen=True, eq=False)
class MsgEdge(FoFormula):
    """x ⊳ y."""
    src: str
    dst: str


@dataclass(frozen=True, eq=False)
class Le(FoFormula):
    """x ≤ y (happened-before)."""
    src: str
    dst: str


@dataclass(frozen=True, eq=False)
class LeProc(FoFormula):
    """x ≤proc y (azúcar)."""
    src: str
    dst: str


@dataclass(frozen=True, eq=False)
class Not(FoFormula):
    arg: FoFormula


@dataclass(frozen=True, eq=False)
class Or(FoFormula):
    args: Tuple[FoFormula, ...]


@dataclass(frozen=True, eq=False)
class And(FoFormula):
    args: Tuple[FoFormula, ...]


@dataclass(frozen=True, eq=False)
class Implies(FoFormula):
    left: FoFormula
    right: FoFormula


@dataclass(frozen=True, eq=False)
class Exists(FoFormula):
    var: str
    body: FoFormula


@dataclass(frozen=True, eq=False)
class Forall(FoFormula):
    var: str
    body: FoFormula


ATOMS = (ProcTest, LabelTest, Eq, ProcEdge, MsgEdge, Le, LeProc)
BINARY_ATOMS = (Eq, ProcEdge, MsgEdge, Le, LeProc)


def atom_vars(phi: FoFormula) -> Tuple[str, ...]:
    """Variables de un átomo, en orden."""
    if isinstance(phi, (ProcTest, LabelTest)):
        return (phi.var,)
    if isinstance(phi, Eq):
        return (phi.left, phi.right)
    return (phi.src, phi.dst)


def _free_vars(phi: FoFormula) -> Tuple[str, ...]:
    if isinstance(phi, ATOMS):
        return tuple(dict.fromkeys(atom_vars(phi)))
    if isinstance(phi, Not):
        return phi.arg.free_vars
    if isinstance(phi, (Or, And)):
        return tuple(dict.fromkeys(v for a in phi.args for v in a.free_vars))
    if isinstance(phi, Implies):
        return tuple(dict.fromkeys(phi.left.free_vars + phi.right.free_vars))
    if isinstance(phi, (Exists, Forall)):
        return tuple(v for v in phi.body.free_vars if v != phi.var)
    raise TypeError(f"fórmula FO desconocida: {phi!r}")


def conj(*args: FoFormula) -> FoFormula:
    """Conjunción aplanada (un solo argumento se devuelve tal cual)."""
    flat = []
    for a in args:
        flat.extend(a.args if isinstance(a, And) else (a,))
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(*args: FoFormula) -> FoFormula:
    """Disyunción aplanada (un solo argumento se devuelve tal cual)."""
    flat = []
    for a in args:
        flat.extend(a.args if isinstance(a, Or) else (a,))
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def negate(phi: FoFormula) -> FoFormula:
    return phi.arg if isinstance(phi, Not) else Not(phi)


def substitute(phi: FoFormula, mapping: Dict[str, str]) -> FoFormula:
    """Renombra variables libres según `mapping` (sin captura: renombrar antes)."""
    if isinstance(phi, ProcTest):
        return ProcTest(phi.proc, mapping.get(phi.var, phi.var))
    if isinstance(phi, LabelTest):
        return LabelTest(phi.label, mapping.get(phi.var, phi.var))
    if isinstance(phi, Eq):
        return Eq(mapping.get(phi.left, phi.left), mapping.get(phi.right, phi.right))
    if isinstance(phi, BINARY_ATOMS):
        return type(phi)(mapping.get(phi.src, phi.src), mapping.get(phi.dst, phi.dst))
    if isinstance(phi, Not):
        return Not(substitute(phi.arg, mapping))
    if isinstance(phi, (Or, And)):
        return type(phi)(tuple(substitute(a, mapping) for a in phi.args))
    if isinstance(phi, Implies):
        return Implies(substitute(phi.left, mapping), substitute(phi.right, mapping))
    if isinstance(phi, (Exists, Forall)):
        inner = {k: v for k, v in mapping.items() if k != phi.var}
        return type(phi)(phi.var, substitute(phi.body, inner))
    raise TypeError(f"fórmula FO desconocida: {phi!r}")


def normalize(phi: FoFormula, processes: Sequence[str] = ()) -> FoFormula:
    """
    Reescribe a los conectivos básicos: átomos, Not, Or y Exists.

    Args:
        phi: Fórmula de entrada
        processes: Procesos del MSC, necesarios para expandir ≤proc

    Returns:
        Fórmula equivalente sin azúcar
    """
    if isinstance(phi, LeProc):
        same = Or(tuple(Not(Or((Not(ProcTest(p, phi.src)), Not(ProcTest(p, phi.dst)))))
                        for p in processes))
        return Not(Or((Not(Le(phi.src, phi.dst)), Not(same))))
    if isinstance(phi, ATOMS):
        return phi
    if isinstance(phi, Not):
        inner = normalize(phi.arg, processes)
        return inner.arg if isinstance(inner, Not) else Not(inner)
    if isinstance(phi, Or):
        return Or(tuple(normalize(a, processes) for a in phi.args))
    if isinstance(phi, And):
        return Not(Or(tuple(negate(normalize(a, processes)) for a in phi.args)))
    if isinstance(phi, Implies):
        return Or((negate(normalize(phi.left, processes)), normalize(phi.right, processes)))
    if isinstance(phi, Exists):
        return Exists(phi.var, normalize(phi.body, processes))
    if isinstance(phi, Forall):
        return Not(Exists(phi.var, negate(normalize(phi.body, processes))))
    raise TypeError(f"fórmula FO desconocida: {phi!r}")


def variable_names(phi: FoFormula) -> Tuple[str, ...]:
    """Todos los nombres de variable (libres y ligadas), sin repetición."""
    if isinstance(phi, ATOMS):
        return tuple(dict.fromkeys(atom_vars(phi)))
    if isinstance(phi, Not):
        return variable_names(phi.arg)
    if isinstance(phi, (Or, And)):
        return tuple(dict.fromkeys(v for a in phi.args for v in variable_names(a)))
    if isinstance(phi, Implies):
        return tuple(dict.fromkeys(variable_names(phi.left) + variable_names(phi.right)))
    return tuple(dict.fromkeys((phi.var,) + variable_names(phi.body)))


def big_or(args: Iterable[FoFormula]) -> FoFormula:
    args = tuple(args)
    return args[0] if len(args) == 1 else Or(args)


# --- Fórmulas de ejemplo ---

def latest(proc: str, x: str = "x", y: str = "y", z: str = "z") -> FoFormula:
    """
    latest_p(x, y): x es el último evento de p en el pasado causal de y.

    Args:
        proc: Proceso p
        x: Variable del evento de p
        y: Variable del evento observador
        z: Variable auxiliar ligada
    """
    return And((
        Le(x, y),
        ProcTest(proc, x),
        Forall(z, Implies(And((Le(z, y), ProcTest(proc, z))), Le(z, x))),
    ))


def gossip(p: str, q: str, labels: Iterable[Hashable]) -> FoFormula:
    """
    Φ_gossip^{p,q}: q conoce siempre la información más reciente de p.

    Args:
        p: Proceso observado
        q: Proceso observador
        labels: Alfabeto Σ
    """
    same_label = big_or(And((LabelTest(a, "x"), LabelTest(a, "y"))) for a in labels)
    return Forall("x", Forall("y", Implies(And((latest(p), ProcTest(q, "y"))), same_label)))
