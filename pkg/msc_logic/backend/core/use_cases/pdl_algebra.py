#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Álgebra de fórmulas PDL sin estrella.

Conversa de caminos, relación de procesos Comp(π), caminos min/max,
descomposición del complemento, traducción a FO con tres variables y
utilidades de reescritura (desazucarado, sustitución de etiquetas).
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from ..entities import fo_formula as fo
from ..entities.errors import UnsupportedFragment
from ..entities.pdl_formula import (
    And, At, Complement, Concat, E, Ex, EventFormula, Falsum, FragmentKind, GuardLeft,
    GuardRight, Implies, Inter, Jump, Lab, LabelIn, Loop, Msg, MsgInv, Next, Not, Or,
    PathFormula, PdlNode, Prev, Sentence, SentenceNot, SentenceOr, ShapedLoop, Test, Union,
    Verum, TRUE, and_, complement, concat, ex, implies_, inter, loop, minus, not_, or_, plus,
    s_not, s_or, some, union,
)


# --- Conversa ---

def converse(path: PathFormula) -> PathFormula:
    """
    Camino π⁻¹ con ⟦π⁻¹⟧ = ⟦π⟧⁻¹, en el mismo fragmento.

    Args:
        path: Camino π

    Returns:
        La conversa de π
    """
    if isinstance(path, Next):
        return Prev()
    if isinstance(path, Prev):
        return Next()
    if isinstance(path, GuardRight):
        return GuardLeft(path.cond)
    if isinstance(path, GuardLeft):
        return GuardRight(path.cond)
    if isinstance(path, Msg):
        return MsgInv(path.src, path.dst)
    if isinstance(path, MsgInv):
        return Msg(path.src, path.dst)
    if isinstance(path, Jump):
        return Jump(path.dst, path.src)
    if isinstance(path, Test):
        return path
    if isinstance(path, Concat):
        return concat(*(converse(p) for p in reversed(path.parts)))
    if isinstance(path, Union):
        return union(*(converse(p) for p in path.parts))
    if isinstance(path, Inter):
        return inter(*(converse(p) for p in path.parts))
    if isinstance(path, Complement):
        return Complement(converse(path.arg))
    raise TypeError(f"camino desconocido: {path!r}")


# --- Comp(π) ---

class CompKind(str, Enum):
    """Forma de Comp(π)."""
    EMPTY = "empty"           # ∅
    SINGLETON = "singleton"   # {(p, q)}
    IDENTITY = "identity"     # {(p, p) | p ∈ P}


@dataclass(frozen=True)
class CompRelation:
    """
    Conjunto de pares de procesos que un π-camino puede conectar.

    Attributes:
        kind: Forma de la relación
        pair: El par (p, q) si es un singleton
    """
    kind: CompKind
    pair: Optional[Tuple[str, str]] = None

    def then(self, other: "CompRelation") -> "CompRelation":
        """Comp(π₁·π₂) = Comp(π₂) ∘ Comp(π₁), siendo self = Comp(π₁)."""
        if self.kind == CompKind.EMPTY or other.kind == CompKind.EMPTY:
            return EMPTY_COMP
        if self.kind == CompKind.IDENTITY:
            return other
        if other.kind == CompKind.IDENTITY:
            return self
        if self.pair[1] == other.pair[0]:
            return CompRelation(CompKind.SINGLETON, (self.pair[0], other.pair[1]))
        return EMPTY_COMP

    def __contains__(self, pair: Tuple[str, str]) -> bool:
        if self.kind == CompKind.EMPTY:
            return False
        if self.kind == CompKind.IDENTITY:
            return pair[0] == pair[1]
        return tuple(pair) == self.pair

    def within_identity(self) -> bool:
        """Cierto si Comp(π) ⊆ id."""
        return self.kind != CompKind.SINGLETON or self.pair[0] == self.pair[1]


EMPTY_COMP = CompRelation(CompKind.EMPTY)
IDENTITY_COMP = CompRelation(CompKind.IDENTITY)


def _require_loop_fragment(path: PathFormula) -> None:
    if path.fragment - {FragmentKind.LOOP}:
        raise UnsupportedFragment(
            f"se requiere PDL_sf[Loop]; aparecen {sorted(k.value for k in path.fragment)}")


def comp_relation(path: PathFormula) -> CompRelation:
    """
    Comp(π) para un camino de PDL_sf[Loop].

    Raises:
        UnsupportedFragment: Si π usa ∪, ∩ o complemento
    """
    _require_loop_fragment(path)
    return _comp(path)


def _comp(path: PathFormula) -> CompRelation:
    if isinstance(path, (Next, Prev, GuardRight, GuardLeft, Test)):
        return IDENTITY_COMP
    if isinstance(path, Msg):
        return CompRelation(CompKind.SINGLETON, (path.src, path.dst))
    if isinstance(path, MsgInv):
        return CompRelation(CompKind.SINGLETON, (path.dst, path.src))
    if isinstance(path, Jump):
        return CompRelation(CompKind.SINGLETON, (path.src, path.dst))
    if isinstance(path, Concat):
        result = IDENTITY_COMP
        for part in path.parts:
            result = result.then(_comp(part))
        return result
    raise UnsupportedFragment(f"Comp no definido para {type(path).__name__}")


# --- min / max ---

def min_path(path: PathFormula) -> PathFormula:
    """
    Camino min π: relaciona e con el ≤proc-mínimo de ⟦π⟧(e).

    Raises:
        UnsupportedFragment: Si π usa ∪, ∩ o complemento
    """
    _require_loop_fragment(path)
    return _extreme(path, TRUE, lowest=True)


def max_path(path: PathFormula) -> PathFormula:
    """Camino max π: relaciona e con el ≤proc-máximo de ⟦π⟧(e)."""
    _require_loop_fragment(path)
    return _extreme(path, TRUE, lowest=False)


def _extreme(path: PathFormula, psi: EventFormula, lowest: bool) -> PathFormula:
    """min(π·{ψ}?) si `lowest`, max(π·{ψ}?) en otro caso."""
    if isinstance(path, (Next, Prev, Msg, MsgInv, Test)):
        return concat(path, Test(psi))
    if isinstance(path, GuardRight):
        phi = path.cond
        if lowest:
            return concat(GuardRight(and_(phi, not_(psi))), Test(psi))
        return concat(path, Test(and_(psi, or_(not_(phi), not_(ex(path, psi))))))
    if isinstance(path, GuardLeft):
        phi = path.cond
        if lowest:
            return concat(path, Test(and_(psi, or_(not_(phi), not_(ex(path, psi))))))
        return concat(GuardLeft(and_(phi, not_(psi))), Test(psi))
    if isinstance(path, Jump):
        beyond = minus() if lowest else plus()
        return concat(path, Test(and_(psi, not_(ex(beyond, psi)))))
    if isinstance(path, Concat):
        first, rest = path.parts[0], concat(*path.parts[1:])
        return concat(_extreme(first, ex(rest, psi), lowest), _extreme(rest, psi, lowest))
    raise UnsupportedFragment(f"min/max no definido para {type(path).__name__}")


def complement_decompose(path: PathFormula, processes: Sequence[str]) -> List[PathFormula]:
    """
    Caminos de PDL_sf[Loop] cuya unión es el complemento de π.

    Devuelve exactamente |P|² + 3 componentes, en este orden:
    min π·←⁺, max π·→⁺, π·→⁺·{¬⟨π⁻¹⟩}? y {¬⟨π⟩q}?·Jump(p, q)
    para cada (p, q).

    Raises:
        UnsupportedFragment: Si π usa ∪, ∩ o complemento
    """
    _require_loop_fragment(path)
    parts = [
        concat(min_path(path), minus()),
        concat(max_path(path), plus()),
        concat(path, plus(), Test(not_(ex(converse(path))))),
    ]
    for p in processes:
        for q in processes:
            parts.append(concat(Test(not_(ex(path, At(q)))), Jump(p, q)))
    return parts


# --- Reescritura genérica ---

def rebuild(node: PdlNode, children: Sequence[PdlNode]) -> PdlNode:
    """Reconstruye `node` con nuevos hijos usando los constructores simplificadores."""
    if not node.children():
        return node
    c = list(children)
    if isinstance(node, E):
        return some(c[0])
    if isinstance(node, SentenceOr):
        return s_or(*c)
    if isinstance(node, SentenceNot):
        return s_not(c[0])
    if isinstance(node, Or):
        return or_(*c)
    if isinstance(node, And):
        return and_(*c)
    if isinstance(node, Not):
        return not_(c[0])
    if isinstance(node, Implies):
        return implies_(c[0], c[1])
    if isinstance(node, Ex):
        return ex(c[0], c[1])
    if isinstance(node, Loop):
        return loop(c[0])
    if isinstance(node, ShapedLoop):
        return ShapedLoop(c[0], node.back)
    if isinstance(node, GuardRight):
        return GuardRight(c[0])
    if isinstance(node, GuardLeft):
        return GuardLeft(c[0])
    if isinstance(node, Test):
        return Test(c[0])
    if isinstance(node, Concat):
        return concat(*c)
    if isinstance(node, Union):
        return union(*c)
    if isinstance(node, Inter):
        return inter(*c)
    if isinstance(node, Complement):
        return complement(c[0])
    raise TypeError(f"nodo desconocido: {node!r}")


def rewrite(node: PdlNode, replace: Callable[[PdlNode], Optional[PdlNode]]) -> PdlNode:
    """
    Reescritura de arriba abajo: `replace` devuelve el sustituto o None.

    Las subfórmulas compartidas se reescriben una sola vez.
    """
    memo: Dict[PdlNode, PdlNode] = {}

    def go(n: PdlNode) -> PdlNode:
        done = memo.get(n)
        if done is not None:
            return done
        sub = replace(n)
        if sub is None:
            kids = n.children()
            new_kids = [go(k) for k in kids]
            sub = n if all(a is b for a, b in zip(kids, new_kids)) else rebuild(n, new_kids)
        memo[n] = sub
        return sub

    return go(node)


def relabel(node: PdlNode, mapping: Callable[[Hashable], Iterable[Hashable]]) -> PdlNode:
    """
    Sustituye cada prueba de etiqueta a por la prueba del conjunto mapping(a).

    Se usa para elevar fórmulas a alfabetos producto (Σ×Θ, Σ×{0,1}).
    """
    from ..entities.pdl_formula import label_in

    def replace(n: PdlNode) -> Optional[PdlNode]:
        if isinstance(n, Lab):
            return label_in(mapping(n.label))
        if isinstance(n, LabelIn):
            return label_in(x for a in n.labels for x in mapping(a))
        return None

    return rewrite(node, replace)


def shaped_to_loop(shaped: ShapedLoop) -> EventFormula:
    """Loop explícito equivalente a un bucle normalizado."""
    core = max_path(shaped.core)
    return Loop(concat(core, minus()) if shaped.back else core)


def desugar(node: PdlNode, processes: Sequence[str]) -> PdlNode:
    """
    Elimina true, false, And, Implies, LabelIn y los bucles normalizados.

    El resultado solo usa la gramática básica (p, a, ∨, ¬, ⟨π⟩, Loop).
    """
    verum = Or(tuple(At(p) for p in processes)) if len(processes) > 1 else At(processes[0])

    def replace(n: PdlNode) -> Optional[PdlNode]:
        if isinstance(n, Verum):
            return verum
        if isinstance(n, Falsum):
            return Not(verum)
        if isinstance(n, LabelIn):
            return Or(tuple(Lab(a) for a in n.labels))
        if isinstance(n, And):
            return Not(Or(tuple(Not(go(a)) for a in n.args)))
        if isinstance(n, Implies):
            return Or((Not(go(n.left)), go(n.right)))
        if isinstance(n, ShapedLoop):
            return go(shaped_to_loop(n))
        if isinstance(n, Ex):
            return Ex(go(n.path), go(n.arg))
        if isinstance(n, Or):
            return Or(tuple(go(a) for a in n.args))
        if isinstance(n, Not):
            return Not(go(n.arg))
        if isinstance(n, Loop):
            return Loop(go(n.path))
        return None

    def go(n: PdlNode) -> PdlNode:
        sub = replace(n)
        if sub is not None:
            return sub
        kids = n.children()
        return rebuild(n, [go(k) for k in kids]) if kids else n

    return go(node)


# --- Traducción a FO³ ---

FO_VARS = ("x", "y", "z")


def _other(*used: str) -> str:
    return next(v for v in FO_VARS if v not in used)


def pdl_to_fo(node: PdlNode, x: str = "x", y: str = "y") -> fo.FoFormula:
    """
    Fórmula FO equivalente que solo usa las variables x, y, z.

    Args:
        node: Sentencia, fórmula de evento (variable libre `x`) o camino
            (variables libres `x`, `y`)

    Returns:
        La fórmula FO³ equivalente
    """
    if isinstance(node, Sentence):
        return _sentence_fo(node)
    if isinstance(node, EventFormula):
        return _event_fo(node, x)
    return _path_fo(node, x, y)


def _sentence_fo(node: Sentence) -> fo.FoFormula:
    if isinstance(node, E):
        return fo.Exists("x", _event_fo(node.arg, "x"))
    if isinstance(node, SentenceOr):
        return fo.Or(tuple(_sentence_fo(a) for a in node.args))
    if isinstance(node, SentenceNot):
        return fo.Not(_sentence_fo(node.arg))
    raise TypeError(f"sentencia desconocida: {node!r}")


def _event_fo(node: EventFormula, v: str) -> fo.FoFormula:
    if isinstance(node, Verum):
        return fo.Eq(v, v)
    if isinstance(node, Falsum):
        return fo.Not(fo.Eq(v, v))
    if isinstance(node, At):
        return fo.ProcTest(node.proc, v)
    if isinstance(node, Lab):
        return fo.LabelTest(node.label, v)
    if isinstance(node, LabelIn):
        return fo.big_or(fo.LabelTest(a, v) for a in node.labels)
    if isinstance(node, Or):
        return fo.Or(tuple(_event_fo(a, v) for a in node.args))
    if isinstance(node, And):
        return fo.And(tuple(_event_fo(a, v) for a in node.args))
    if isinstance(node, Not):
        return fo.Not(_event_fo(node.arg, v))
    if isinstance(node, Implies):
        return fo.Implies(_event_fo(node.left, v), _event_fo(node.right, v))
    if isinstance(node, Ex):
        w = _other(v)
        return fo.Exists(w, fo.And((_path_fo(node.path, v, w), _event_fo(node.arg, w))))
    if isinstance(node, Loop):
        w = _other(v)
        return fo.Exists(w, fo.And((fo.Eq(w, v), _path_fo(node.path, v, w))))
    if isinstance(node, ShapedLoop):
        return _event_fo(shaped_to_loop(node), v)
    raise TypeError(f"fórmula de evento desconocida: {node!r}")


def _strictly_before(u: str, w: str) -> fo.FoFormula:
    return fo.And((fo.LeProc(u, w), fo.Not(fo.Eq(u, w))))


def _path_fo(node: PathFormula, u: str, w: str) -> fo.FoFormula:
    t = _other(u, w)
    if isinstance(node, Next):
        return fo.ProcEdge(u, w)
    if isinstance(node, Prev):
        return fo.ProcEdge(w, u)
    if isinstance(node, Msg):
        return fo.And((fo.MsgEdge(u, w), fo.ProcTest(node.src, u), fo.ProcTest(node.dst, w)))
    if isinstance(node, MsgInv):
        return fo.And((fo.MsgEdge(w, u), fo.ProcTest(node.src, w), fo.ProcTest(node.dst, u)))
    if isinstance(node, (GuardRight, GuardLeft)):
        lo, hi = (u, w) if isinstance(node, GuardRight) else (w, u)
        between = fo.And((_strictly_before(lo, t), _strictly_before(t, hi)))
        return fo.And((_strictly_before(lo, hi),
                       fo.Forall(t, fo.Implies(between, _event_fo(node.cond, t)))))
    if isinstance(node, Jump):
        return fo.And((fo.ProcTest(node.src, u), fo.ProcTest(node.dst, w)))
    if isinstance(node, Test):
        return fo.And((fo.Eq(u, w), _event_fo(node.cond, u)))
    if isinstance(node, Concat):
        rest = concat(*node.parts[1:])
        return fo.Exists(t, fo.And((_path_fo(node.parts[0], u, t), _path_fo(rest, t, w))))
    if isinstance(node, Union):
        return fo.Or(tuple(_path_fo(p, u, w) for p in node.parts))
    if isinstance(node, Inter):
        return fo.And(tuple(_path_fo(p, u, w) for p in node.parts))
    if isinstance(node, Complement):
        return fo.Not(_path_fo(node.arg, u, w))
    raise TypeError(f"camino desconocido: {node!r}")
