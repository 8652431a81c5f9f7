#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Casos de uso del compilador PDL sin estrella → transductores y CFMs.

El compilador procede en cuatro capas:

1. Fórmulas sin bucles: composición de transductores base siguiendo la
   estructura de la fórmula (⟨π₁·π₂⟩φ ≡ ⟨π₁⟩⟨π₂⟩φ).
2. Bucles Loop(max π) y Loop(min π): adivinar un color por evento, filtrar
   por la restricción K y proyectar los colores "sí".
3. Bucles Loop(max π · ←⁺): memoria por proceso sobre cuatro bits auxiliares.
4. Fórmulas con bucles anidados: se compila el bucle más interno, su bit se
   añade a la etiqueta y se recompila la fórmula restante sobre Σ×{0,1}.

Las sentencias se aceptan proyectando el producto de los transductores de
sus E φ compuesto con un rastreador de bits.
"""

import itertools
import logging
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from ..entities import fo_formula as fo
from ..entities.errors import LoopNotAllowed, NotMinMaxShape, UnsupportedFragment
from ..entities.machines import ComposeMachine, ProductMachine, ProjectionMachine
from ..entities.msc import ProcessSet
from ..entities.pdl_formula import (
    And, At, Complement, Concat, E, Ex, EventFormula, Falsum, FragmentKind, GuardLeft,
    GuardRight, Implies, Inter, Jump, Lab, LabelIn, Loop, Msg, MsgInv, Next, Not, Or,
    PathFormula, PdlNode, Prev, Sentence, SentenceNot, SentenceOr, ShapedLoop, Test, Union,
    Verum, FALSE, and_, concat, ex, implies_, innermost_loop, is_loop_free, iter_dag, label_in,
    not_, or_,
)
from ..entities.settings import Settings
from ..entities.transducer_library import (
    BITS, COLORS, ColorGuess, ConstBit, Identity, JumpBroadcast, KGate, LabelTestTransducer,
    LoopMemory, MsgGuess, MsgInvGuess, ProcTestTransducer, ProjectColors, SentenceTracker,
    StrictSince, StrictUntil, Y1, Y2, and_gate, neg_gate, or_gate,
)
from ..interfaces.machines import Machine
from .fo2pdl_use_cases import Fo2PdlUseCases
from .pdl_algebra import (
    CompKind, comp_relation, converse, max_path, min_path, rebuild, relabel, rewrite,
)

logger = logging.getLogger(__name__)


def path_alternatives(path: PathFormula) -> List[PathFormula]:
    """
    Caminos sin ∪ cuya unión es `path` (la concatenación distribuye).

    Raises:
        UnsupportedFragment: Si aparece ∩ o complemento fuera de las pruebas
    """
    if isinstance(path, Union):
        return [alt for part in path.parts for alt in path_alternatives(part)]
    if isinstance(path, Concat):
        choices = [path_alternatives(p) for p in path.parts]
        return [concat(*combo) for combo in itertools.product(*choices)]
    if isinstance(path, (Inter, Complement)):
        raise UnsupportedFragment(f"{type(path).__name__} no se compila a transductores")
    return [path]


class Pdl2CfmUseCases:
    """
    Compilador de PDL_sf[Loop] a transductores y CFMs.

    Attributes:
        processes: Conjunto de procesos P
        sigma: Alfabeto de entrada Σ
        settings: Configuración
    """

    def __init__(self, processes: Sequence[str], sigma: Sequence[Hashable],
                 settings: Optional[Settings] = None):
        self.processes = processes if isinstance(processes, ProcessSet) else ProcessSet(tuple(processes))
        self.sigma = tuple(sigma)
        self.settings = settings or Settings()
        self._memo: Dict[Tuple, Machine] = {}

    # --- Fórmulas sin bucles ---

    def compile_loopfree(self, phi: EventFormula, sigma: Optional[Sequence[Hashable]] = None) -> Machine:
        """
        Transductor funcional Σ → {0,1} que etiqueta cada evento con M_φ.

        Args:
            phi: Fórmula de evento sin Loop
            sigma: Alfabeto de entrada (por defecto, el del compilador)

        Raises:
            LoopNotAllowed: Si φ contiene algún Loop
        """
        if not is_loop_free(phi):
            raise LoopNotAllowed("compile_loopfree no admite bucles")
        return self._event(phi, tuple(sigma) if sigma is not None else self.sigma)

    def _event(self, phi: EventFormula, sigma: Tuple[Hashable, ...]) -> Machine:
        key = (phi, sigma)
        found = self._memo.get(key)
        if found is None:
            found = self._build_event(phi, sigma)
            self._memo[key] = found
        return found

    def _gate(self, kind: str, parts: List[Machine]) -> Machine:
        if len(parts) == 1:
            return parts[0]
        gate = or_gate(self.processes, len(parts)) if kind == "or" else and_gate(self.processes, len(parts))
        return ComposeMachine(gate, ProductMachine(parts))

    def _build_event(self, phi: EventFormula, sigma: Tuple[Hashable, ...]) -> Machine:
        P = self.processes
        if isinstance(phi, Verum):
            return ConstBit(P, sigma, 1)
        if isinstance(phi, Falsum):
            return ConstBit(P, sigma, 0)
        if isinstance(phi, At):
            return ProcTestTransducer(P, sigma, phi.proc)
        if isinstance(phi, Lab):
            return LabelTestTransducer(P, sigma, (phi.label,))
        if isinstance(phi, LabelIn):
            return LabelTestTransducer(P, sigma, phi.labels)
        if isinstance(phi, Or):
            return self._gate("or", [self._event(a, sigma) for a in phi.args])
        if isinstance(phi, And):
            return self._gate("and", [self._event(a, sigma) for a in phi.args])
        if isinstance(phi, Not):
            return ComposeMachine(neg_gate(P), self._event(phi.arg, sigma))
        if isinstance(phi, Implies):
            return self._event(or_(not_(phi.left), phi.right), sigma)
        if isinstance(phi, Ex):
            alternatives = path_alternatives(phi.path)
            if len(alternatives) > 1:
                return self._event(or_(*(ex(alt, phi.arg) for alt in alternatives)), sigma)
            return self._ex(phi.path, self._event(phi.arg, sigma), sigma)
        if isinstance(phi, (Loop, ShapedLoop)):
            raise LoopNotAllowed("bucle en una posición sin bucles")
        raise UnsupportedFragment(f"fórmula de evento desconocida: {phi!r}")

    def _ex(self, path: PathFormula, target: Machine, sigma: Tuple[Hashable, ...]) -> Machine:
        """Transductor de ⟨π⟩φ a partir del transductor de φ."""
        P = self.processes
        if isinstance(path, Concat):
            for part in reversed(path.parts):
                target = self._ex(part, target, sigma)
            return target
        if isinstance(path, Test):
            return self._gate("and", [self._event(path.cond, sigma), target])
        if isinstance(path, Next):
            return ComposeMachine(StrictUntil(P), ProductMachine([ConstBit(P, sigma, 0), target]))
        if isinstance(path, Prev):
            return ComposeMachine(StrictSince(P), ProductMachine([ConstBit(P, sigma, 0), target]))
        if isinstance(path, GuardRight):
            return ComposeMachine(StrictUntil(P), ProductMachine([self._event(path.cond, sigma), target]))
        if isinstance(path, GuardLeft):
            return ComposeMachine(StrictSince(P), ProductMachine([self._event(path.cond, sigma), target]))
        if isinstance(path, Msg):
            return ComposeMachine(MsgGuess(P, path.src, path.dst), target)
        if isinstance(path, MsgInv):
            return ComposeMachine(MsgInvGuess(P, path.src, path.dst), target)
        if isinstance(path, Jump):
            return ComposeMachine(JumpBroadcast(P, path.src, path.dst), target)
        raise UnsupportedFragment(f"camino no compilable: {type(path).__name__}")

    # --- Bucles ---

    def _loop_comp_ok(self, core: PathFormula) -> bool:
        comp = comp_relation(core)
        return comp.kind != CompKind.EMPTY and comp.within_identity()

    def compile_minmax_loop(self, core: PathFormula, lowest: bool = False,
                            sigma: Optional[Sequence[Hashable]] = None) -> Machine:
        """
        Transductor de Loop(max π) (o Loop(min π) si `lowest`).

        Se adivina un color de Θ por evento y se exige que los colores "sí"
        alternen en cada proceso y que un evento tenga color "sí" si y solo
        si su imagen por π̂ tiene su mismo color. La salida es 1 en los
        colores "sí".

        Args:
            core: Camino π sin bucles en PDL_sf[Loop]
            lowest: Usar min π en lugar de max π
            sigma: Alfabeto de entrada

        Raises:
            NotMinMaxShape: Si π contiene bucles, ∪, ∩ o complemento
        """
        sigma = tuple(sigma) if sigma is not None else self.sigma
        if not is_loop_free(core) or core.fragment:
            raise NotMinMaxShape("min/max solo se aplica a caminos sin bucles, ∪, ∩ ni complemento")
        if not self._loop_comp_ok(core):
            logger.debug("Comp(π) fuera de la identidad: bucle constante 0")
            return ConstBit(self.processes, sigma, 0)
        hat = min_path(core) if lowest else max_path(core)
        return self._color_gadget(hat, sigma)

    def _color_gadget(self, hat: PathFormula, sigma: Tuple[Hashable, ...]) -> Machine:
        P = self.processes
        colored = tuple((a, c) for a in sigma for c in COLORS)

        def color(c: str) -> EventFormula:
            return label_in((a, c) for a in sigma)

        lifted = relabel(hat, lambda a: [(a, c) for c in COLORS])
        yes = or_(color(Y1), color(Y2))
        same = or_(*(and_(color(c), ex(lifted, color(c))) for c in COLORS))
        psi = and_(implies_(yes, same), implies_(same, yes))
        checker = self._event(psi, colored)
        restrict = ComposeMachine(KGate(P, sigma), ProductMachine([Identity(P, colored), checker]))
        guessed = ComposeMachine(restrict, ColorGuess(P, sigma))
        return ComposeMachine(ProjectColors(P, sigma), guessed, functional=True)

    def _compile_back_loop(self, core: PathFormula, sigma: Tuple[Hashable, ...]) -> Machine:
        """Loop(max π · ←⁺): memoria por proceso sobre cuatro bits auxiliares."""
        P = self.processes
        if not self._loop_comp_ok(core):
            return ConstBit(P, sigma, 0)
        has_image = self._event(ex(core), sigma)
        on_max = self.compile_minmax_loop(core, sigma=sigma)
        first_back = self.compile_minmax_loop(concat(GuardRight(Verum()), converse(core)),
                                              lowest=True, sigma=sigma)
        after_max = self.compile_minmax_loop(
            concat(max_path(core), GuardRight(not_(ex(core)))), sigma=sigma)
        bits = ProductMachine([has_image, on_max, first_back, after_max])
        return ComposeMachine(LoopMemory(P), bits)

    def _compile_shaped(self, shaped: ShapedLoop, sigma: Tuple[Hashable, ...]) -> Machine:
        key = (shaped, sigma)
        found = self._memo.get(key)
        if found is None:
            if shaped.back:
                found = self._compile_back_loop(shaped.core, sigma)
            else:
                found = self.compile_minmax_loop(shaped.core, sigma=sigma)
            self._memo[key] = found
        return found

    def normalize_loops(self, phi: PdlNode) -> PdlNode:
        """
        Reescribe cada Loop como combinación de bucles normalizados.

        Loop π ≡ Loop max π ∨ (⟨π⁻¹⟩ ∧ Loop(max π·←⁺) ∧ ¬Loop(min π·←⁺)),
        con min π ≡ max(min π). Las uniones se distribuyen antes, y un camino
        determinista da directamente Loop max π.
        """
        memo: Dict[PdlNode, PdlNode] = {}

        def go(n: PdlNode) -> PdlNode:
            done = memo.get(n)
            if done is not None:
                return done
            kids = n.children()
            new_kids = [go(k) for k in kids]
            node = n if all(a is b for a, b in zip(kids, new_kids)) else rebuild(n, new_kids)
            if isinstance(node, Loop):
                node = or_(*(self._normalize_loop(alt) for alt in path_alternatives(node.path)))
            elif isinstance(node, Ex) and FragmentKind.UNION in node.path.fragment:
                node = or_(*(ex(alt, node.arg) for alt in path_alternatives(node.path)))
            memo[n] = node
            return node

        return go(phi)

    def _normalize_loop(self, path: PathFormula) -> EventFormula:
        if isinstance(path, Test):
            return path.cond
        if not self._loop_comp_ok(path):
            return FALSE
        if path.deterministic:
            return ShapedLoop(path, False)
        return or_(ShapedLoop(path, False),
                   and_(ex(converse(path)), ShapedLoop(path, True),
                        not_(ShapedLoop(min_path(path), True))))

    # --- Fórmulas generales ---

    def compile_event(self, phi: EventFormula) -> Machine:
        """
        Transductor funcional Σ → {0,1} para una fórmula de PDL_sf[Loop].

        Raises:
            UnsupportedFragment: Si aparecen ∩ o complemento en los caminos
        """
        normal = self.normalize_loops(phi)
        machine = self._compile(normal, self.sigma)
        logger.debug("compile_event: %d bucles, cota de estados %s", normal.loop_count,
                     {p: machine.state_bound(p) for p in self.processes})
        return machine

    def _compile(self, phi: EventFormula, sigma: Tuple[Hashable, ...]) -> Machine:
        target = innermost_loop(phi)
        if target is None:
            return self._event(phi, sigma)
        if not isinstance(target, ShapedLoop):
            raise UnsupportedFragment("bucle sin normalizar; use compile_event")
        loop_machine = self._compile_shaped(target, sigma)
        marked = label_in((a, 1) for a in sigma)

        def replace(n: PdlNode) -> Optional[PdlNode]:
            if n == target:
                return marked
            if isinstance(n, Lab):
                return label_in((n.label, b) for b in BITS)
            if isinstance(n, LabelIn):
                return label_in((a, b) for a in n.labels for b in BITS)
            return None

        reduced = rewrite(phi, replace)
        extended = tuple((a, b) for a in sigma for b in BITS)
        inner = ProductMachine([Identity(self.processes, sigma), loop_machine])
        return ComposeMachine(self._compile(reduced, extended), inner)

    # --- Sentencias ---

    def compile_sentence(self, xi: Sentence) -> Machine:
        """
        CFM que acepta exactamente los MSCs que satisfacen ξ.

        Cada E φᵢ distinta aporta un bit; el rastreador recuerda por proceso
        si se emitió algún 1 y la aceptación evalúa ξ sobre esos bits.
        """
        components: List[EventFormula] = []
        for n in iter_dag([xi]):
            if isinstance(n, E) and n.arg not in components:
                components.append(n.arg)
        position = {phi: k for k, phi in enumerate(components)}

        def verdict(bits: Tuple[int, ...], node: Sentence = xi) -> bool:
            if isinstance(node, E):
                return bool(bits[position[node.arg]])
            if isinstance(node, SentenceOr):
                return any(verdict(bits, a) for a in node.args)
            if isinstance(node, SentenceNot):
                return not verdict(bits, node.arg)
            raise UnsupportedFragment(f"sentencia desconocida: {node!r}")

        machines = [self.compile_event(phi) for phi in components]
        tracker = SentenceTracker(self.processes, len(machines), verdict)
        logger.debug("compile_sentence: %d componentes", len(machines))
        return ProjectionMachine(ComposeMachine(tracker, ProductMachine(machines)))

    def compile_fo_sentence(self, phi: fo.FoFormula) -> Machine:
        """CFM para una sentencia FO (vía la traducción a PDL)."""
        xi = Fo2PdlUseCases(self.processes.names, self.settings).translate_to_sentence(phi)
        return self.compile_sentence(xi)
