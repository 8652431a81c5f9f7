#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Módulo que define el árbol sintáctico de PDL sin estrella sobre MSCs.

PDL tiene tres clases sintácticas: sentencias, fórmulas de evento y
fórmulas de camino. Los constructores en minúsculas (`or_`, `ex`, `concat`...)
aplican un simplificador local que solo reduce tamaño y preserva la
semántica; los tests diferenciales lo comprueban frente al evaluador.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import FrozenSet, Hashable, Iterable, Iterator, List, Optional, Tuple

from .structural import StructuralNode


class FragmentKind(str, Enum):
    """Operadores que determinan el fragmento PDL_sf[R]."""
    LOOP = "loop"               # Loop π
    UNION = "union"             # π ∪ π
    INTER = "inter"             # π ∩ π
    COMPLEMENT = "complement"   # πᶜ


class PdlNode(StructuralNode):
    """Base de todos los nodos PDL."""

    def children(self) -> Tuple["PdlNode", ...]:
        return ()

    @cached_property
    def fragment(self) -> FrozenSet[FragmentKind]:
        """Operadores de {Loop, ∪, ∩, c} que aparecen bajo este nodo."""
        tags = set(OWN_FRAGMENT.get(type(self), ()))
        for child in self.children():
            tags |= child.fragment
        return frozenset(tags)

    @cached_property
    def loop_count(self) -> int:
        """Número de subfórmulas Loop (contando repeticiones en el árbol)."""
        own = 1 if isinstance(self, (Loop, ShapedLoop)) else 0
        return own + sum(c.loop_count for c in self.children())


class Sentence(PdlNode):
    """Sentencia: combinación booleana de E φ."""


class EventFormula(PdlNode):
    """Fórmula de evento."""


class PathFormula(PdlNode):
    """Fórmula de camino."""

    @cached_property
    def deterministic(self) -> bool:
        """Cierto si cada evento tiene a lo sumo una imagen (→, ←, ⊳, ⊳⁻¹, tests)."""
        if isinstance(self, (Next, Prev, Msg, MsgInv, Test)):
            return True
        if isinstance(self, Concat):
            return all(p.deterministic for p in self.parts)
        return False


# --- Sentencias ---

@dataclass(frozen=True, eq=False)
class E(Sentence):
    """E φ: algún evento satisface φ."""
    arg: EventFormula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True, eq=False)
class SentenceOr(Sentence):
    args: Tuple[Sentence, ...]

    def children(self):
        return self.args


@dataclass(frozen=True, eq=False)
class SentenceNot(Sentence):
    arg: Sentence

    def children(self):
        return (self.arg,)


# --- Fórmulas de evento ---

@dataclass(frozen=True, eq=False)
class Verum(EventFormula):
    """true."""


@dataclass(frozen=True, eq=False)
class Falsum(EventFormula):
    """false."""


@dataclass(frozen=True, eq=False)
class At(EventFormula):
    """p: el evento está en el proceso p."""
    proc: str


@dataclass(frozen=True, eq=False)
class Lab(EventFormula):
    """a: el evento tiene etiqueta a."""
    label: Hashable


@dataclass(frozen=True, eq=False)
class LabelIn(EventFormula):
    """Disyunción de pruebas de etiqueta: la etiqueta pertenece al conjunto."""
    labels: Tuple[Hashable, ...]


@dataclass(frozen=True, eq=False)
class Or(EventFormula):
    args: Tuple[EventFormula, ...]

    def children(self):
        return self.args


@dataclass(frozen=True, eq=False)
class And(EventFormula):
    args: Tuple[EventFormula, ...]

    def children(self):
        return self.args


@dataclass(frozen=True, eq=False)
class Not(EventFormula):
    arg: EventFormula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True, eq=False)
class Implies(EventFormula):
    left: EventFormula
    right: EventFormula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=False)
class Ex(EventFormula):
    """⟨π⟩φ."""
    path: PathFormula
    arg: EventFormula

    def children(self):
        return (self.path, self.arg)


@dataclass(frozen=True, eq=False)
class Loop(EventFormula):
    """Loop π: (e, e) ∈ ⟦π⟧."""
    path: PathFormula

    def children(self):
        return (self.path,)


@dataclass(frozen=True, eq=False)
class ShapedLoop(EventFormula):
    """
    Bucle normalizado.

    Attributes:
        core: Camino π sin bucles dentro
        back: False para Loop(max π), True para Loop(max π · ←⁺)
    """
    core: PathFormula
    back: bool

    def children(self):
        return (self.core,)


# --- Fórmulas de camino ---

@dataclass(frozen=True, eq=False)
class Next(PathFormula):
    """→."""


@dataclass(frozen=True, eq=False)
class Prev(PathFormula):
    """←."""


@dataclass(frozen=True, eq=False)
class Msg(PathFormula):
    """⊳_{p,q}: del envío en p a su recepción en q."""
    src: str
    dst: str


@dataclass(frozen=True, eq=False)
class MsgInv(PathFormula):
    """⊳⁻¹_{p,q}: de la recepción en q a su envío en p."""
    src: str
    dst: str


@dataclass(frozen=True, eq=False)
class GuardRight(PathFormula):
    """→_φ: un evento posterior del proceso, con φ en todos los intermedios."""
    cond: EventFormula

    def children(self):
        return (self.cond,)


@dataclass(frozen=True, eq=False)
class GuardLeft(PathFormula):
    """←_φ."""
    cond: EventFormula

    def children(self):
        return (self.cond,)


@dataclass(frozen=True, eq=False)
class Jump(PathFormula):
    """Salto de cualquier evento de `src` a cualquier evento de `dst`."""
    src: str
    dst: str


@dataclass(frozen=True, eq=False)
class Test(PathFormula):
    """{φ}?."""
    cond: EventFormula

    def children(self):
        return (self.cond,)


@dataclass(frozen=True, eq=False)
class Concat(PathFormula):
    parts: Tuple[PathFormula, ...]

    def children(self):
        return self.parts


@dataclass(frozen=True, eq=False)
class Union(PathFormula):
    parts: Tuple[PathFormula, ...]

    def children(self):
        return self.parts


@dataclass(frozen=True, eq=False)
class Inter(PathFormula):
    parts: Tuple[PathFormula, ...]

    def children(self):
        return self.parts


@dataclass(frozen=True, eq=False)
class Complement(PathFormula):
    arg: PathFormula

    def children(self):
        return (self.arg,)


OWN_FRAGMENT = {
    Loop: (FragmentKind.LOOP,),
    ShapedLoop: (FragmentKind.LOOP,),
    Union: (FragmentKind.UNION,),
    Inter: (FragmentKind.INTER,),
    Complement: (FragmentKind.COMPLEMENT,),
}

TRUE = Verum()
FALSE = Falsum()
NEXT = Next()
PREV = Prev()


# --- Constructores con simplificación ---

def _dedup(items: Iterable) -> List:
    return list(dict.fromkeys(items))


def _label_key(label: Hashable) -> str:
    return repr(label)


def label_in(labels: Iterable[Hashable]) -> EventFormula:
    """Prueba de pertenencia a un conjunto de etiquetas."""
    labels = tuple(sorted(set(labels), key=_label_key))
    if not labels:
        return FALSE
    if len(labels) == 1:
        return Lab(labels[0])
    return LabelIn(labels)


def or_(*args: EventFormula) -> EventFormula:
    flat: List[EventFormula] = []
    for a in args:
        if isinstance(a, Or):
            flat.extend(a.args)
        else:
            flat.append(a)
    if any(isinstance(a, Verum) for a in flat):
        return TRUE
    labels = [lab for a in flat if isinstance(a, (Lab, LabelIn))
              for lab in (a.labels if isinstance(a, LabelIn) else (a.label,))]
    rest = [a for a in flat if not isinstance(a, (Falsum, Lab, LabelIn))]
    if labels:
        rest.insert(0, label_in(labels))
    rest = _dedup(rest)
    if not rest:
        return FALSE
    if len(rest) == 1:
        return rest[0]
    return Or(tuple(rest))


def and_(*args: EventFormula) -> EventFormula:
    flat: List[EventFormula] = []
    for a in args:
        if isinstance(a, And):
            flat.extend(a.args)
        else:
            flat.append(a)
    if any(isinstance(a, Falsum) for a in flat):
        return FALSE
    rest = _dedup(a for a in flat if not isinstance(a, Verum))
    if not rest:
        return TRUE
    if len(rest) == 1:
        return rest[0]
    return And(tuple(rest))


def not_(arg: EventFormula) -> EventFormula:
    if isinstance(arg, Not):
        return arg.arg
    if isinstance(arg, Verum):
        return FALSE
    if isinstance(arg, Falsum):
        return TRUE
    return Not(arg)


def implies_(left: EventFormula, right: EventFormula) -> EventFormula:
    return or_(not_(left), right)


def concat(*parts: PathFormula) -> PathFormula:
    flat: List[PathFormula] = []
    for part in parts:
        for p in (part.parts if isinstance(part, Concat) else (part,)):
            if isinstance(p, Test):
                if isinstance(p.cond, Verum):
                    continue
                if isinstance(p.cond, Falsum):
                    return Test(FALSE)
                if flat and isinstance(flat[-1], Test):
                    merged = and_(flat[-1].cond, p.cond)
                    if isinstance(merged, Falsum):
                        return Test(FALSE)
                    flat[-1] = Test(merged)
                    continue
            flat.append(p)
    if not flat:
        return Test(TRUE)
    if len(flat) == 1:
        return flat[0]
    return Concat(tuple(flat))


def union(*parts: PathFormula) -> PathFormula:
    flat: List[PathFormula] = []
    for part in parts:
        flat.extend(part.parts if isinstance(part, Union) else (part,))
    flat = _dedup(p for p in flat if not (isinstance(p, Test) and isinstance(p.cond, Falsum)))
    if not flat:
        return Test(FALSE)
    if len(flat) == 1:
        return flat[0]
    return Union(tuple(flat))


def inter(*parts: PathFormula) -> PathFormula:
    flat: List[PathFormula] = []
    for part in parts:
        flat.extend(part.parts if isinstance(part, Inter) else (part,))
    flat = _dedup(flat)
    if any(isinstance(p, Test) and isinstance(p.cond, Falsum) for p in flat):
        return Test(FALSE)
    if len(flat) == 1:
        return flat[0]
    return Inter(tuple(flat))


def complement(arg: PathFormula) -> PathFormula:
    if isinstance(arg, Complement):
        return arg.arg
    return Complement(arg)


def ex(path: PathFormula, arg: EventFormula = TRUE) -> EventFormula:
    """⟨π⟩φ con eliminación de pruebas en los extremos del camino."""
    if isinstance(arg, Falsum):
        return FALSE
    if isinstance(path, Test):
        return and_(path.cond, arg)
    if isinstance(path, Concat):
        head, tail = path.parts[0], path.parts[-1]
        if isinstance(tail, Test):
            return ex(concat(*path.parts[:-1]), and_(tail.cond, arg))
        if isinstance(head, Test):
            return and_(head.cond, ex(concat(*path.parts[1:]), arg))
    return Ex(path, arg)


def loop(path: PathFormula) -> EventFormula:
    if isinstance(path, Test):
        return path.cond
    return Loop(path)


def guard_right(cond: EventFormula) -> PathFormula:
    return GuardRight(cond)


def guard_left(cond: EventFormula) -> PathFormula:
    return GuardLeft(cond)


def plus() -> PathFormula:
    """→⁺."""
    return GuardRight(TRUE)


def minus() -> PathFormula:
    """←⁺."""
    return GuardLeft(TRUE)


def star() -> PathFormula:
    """→* = →⁺ ∪ {true}?."""
    return Union((GuardRight(TRUE), Test(TRUE)))


def some(arg: EventFormula) -> Sentence:
    return E(arg)


def s_or(*args: Sentence) -> Sentence:
    flat: List[Sentence] = []
    for a in args:
        flat.extend(a.args if isinstance(a, SentenceOr) else (a,))
    flat = _dedup(flat)
    return flat[0] if len(flat) == 1 else SentenceOr(tuple(flat))


def s_not(arg: Sentence) -> Sentence:
    return arg.arg if isinstance(arg, SentenceNot) else SentenceNot(arg)


def s_and(*args: Sentence) -> Sentence:
    return s_not(s_or(*(s_not(a) for a in args)))


# --- Recorridos ---

def iter_dag(roots: Iterable[PdlNode]) -> Iterator[PdlNode]:
    """Recorre cada subfórmula distinta una sola vez (en preorden)."""
    seen = set()
    stack = list(roots)[::-1]
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        seen.add(node)
        yield node
        stack.extend(reversed(node.children()))


def dag_size(*roots: PdlNode) -> int:
    """Número de subfórmulas distintas."""
    return sum(1 for _ in iter_dag(roots))


def processes_of(node: PdlNode) -> FrozenSet[str]:
    """Procesos mencionados explícitamente en la fórmula."""
    found = set()
    for n in iter_dag([node]):
        if isinstance(n, At):
            found.add(n.proc)
        elif isinstance(n, (Msg, MsgInv, Jump)):
            found.update((n.src, n.dst))
    return frozenset(found)


def labels_of(node: PdlNode) -> FrozenSet[Hashable]:
    found = set()
    for n in iter_dag([node]):
        if isinstance(n, Lab):
            found.add(n.label)
        elif isinstance(n, LabelIn):
            found.update(n.labels)
    return frozenset(found)


def is_loop_free(node: PdlNode) -> bool:
    return FragmentKind.LOOP not in node.fragment


def innermost_loop(node: PdlNode) -> Optional[PdlNode]:
    """Primer Loop/ShapedLoop sin bucles por debajo, en preorden."""
    for n in iter_dag([node]):
        if isinstance(n, (Loop, ShapedLoop)) and all(is_loop_free(c) for c in n.children()):
            return n
    return None
