#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Casos de uso de la traducción FO[→,⊳,≤] → PDL sin estrella.

La traducción trabaja con DNF positivas de átomos de camino π(x, y) y
elimina cada cuantificador en su propio ámbito (sin pasar por la forma
prenexa). Cada variable lleva un proceso asignado (tipado) dentro de cada
disyunto: así ≤ se traduce por secuencias de procesos concretas y los
complementos solo necesitan la componente Jump del par tipado.

La traducción es no elemental; el tamaño total producido se controla con
`Settings.translation_max_nodes`.
"""

import itertools
import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..entities import fo_formula as fo
from ..entities.errors import (
    InternalInvariantBreach, ResourceLimit, UnboundVariable, UnsupportedFragment,
)
from ..entities.guarded_dnf import Conjunct, GuardedDnf, PathAtom
from ..entities.msc import Msc
from ..entities.pdl_formula import (
    At, EventFormula, Falsum, Jump, Lab, Msg, NEXT, PathFormula, Sentence, Test, Verum,
    TRUE, and_, concat, ex, inter, loop, minus, not_, or_, plus, s_and, s_not, s_or, some,
    union,
)
from ..entities.settings import Settings
from .fo_use_cases import FoUseCases
from .pdl_algebra import CompRelation, comp_relation, converse, max_path, min_path
from .pdl_use_cases import PdlUseCases

logger = logging.getLogger(__name__)

Dnf = List[Conjunct]
Typing = Dict[str, str]

ABSORB_LIMIT = 400


def binding_order(phi: fo.FoFormula, free: Sequence[str]) -> Dict[str, int]:
    """Orden de variables: libres primero y luego ligadas en preorden."""
    order: Dict[str, int] = {}
    for v in free:
        order.setdefault(v, len(order))

    def walk(node: fo.FoFormula) -> None:
        if isinstance(node, (fo.Exists, fo.Forall)):
            order.setdefault(node.var, len(order))
            walk(node.body)
        elif isinstance(node, fo.Not):
            walk(node.arg)
        elif isinstance(node, (fo.Or, fo.And)):
            for a in node.args:
                walk(a)
        elif isinstance(node, fo.Implies):
            walk(node.left)
            walk(node.right)

    walk(phi)
    return order


def process_sequences(processes: Sequence[str], src: str, dst: str) -> List[Tuple[str, ...]]:
    """Secuencias de procesos sin repeticiones que empiezan en `src` y acaban en `dst` ≠ `src`."""
    middle = [p for p in processes if p not in (src, dst)]
    found = []
    for k in range(len(middle) + 1):
        for chosen in itertools.permutations(middle, k):
            found.append((src,) + chosen + (dst,))
    return found


def message_chain(seq: Sequence[str]) -> PathFormula:
    """⊳_{p1,p2}·→⁺·⊳_{p2,p3}·…·⊳_{pm-1,pm}."""
    parts: List[PathFormula] = []
    for a, b in zip(seq, seq[1:]):
        if parts:
            parts.append(plus())
        parts.append(Msg(a, b))
    return concat(*parts)


class _Translator:
    """
    Sesión de traducción: orden de variables, presupuesto y memos.

    Attributes:
        processes: Procesos P
        order: Rango de cada variable (orienta los átomos)
        max_nodes: Presupuesto de átomos producidos
        used: Átomos producidos hasta ahora
    """

    def __init__(self, processes: Sequence[str], order: Dict[str, int], max_nodes: int):
        self.processes = tuple(processes)
        self.order = order
        self.max_nodes = max_nodes
        self.used = 0
        self._memo: Dict[Tuple, Dnf] = {}
        self._comp: Dict[PathFormula, CompRelation] = {}
        self._min: Dict[PathFormula, PathFormula] = {}
        self._max: Dict[PathFormula, PathFormula] = {}

    # --- Utilidades ---

    def rank(self, var: str) -> int:
        found = self.order.get(var)
        if found is None:
            found = len(self.order)
            self.order[var] = found
        return found

    def charge(self, amount: int) -> None:
        self.used += amount
        if self.used > self.max_nodes:
            raise ResourceLimit("fo2pdl", self.max_nodes, self.used)

    def comp(self, path: PathFormula) -> CompRelation:
        found = self._comp.get(path)
        if found is None:
            found = comp_relation(path)
            self._comp[path] = found
        return found

    def min_of(self, path: PathFormula) -> PathFormula:
        found = self._min.get(path)
        if found is None:
            found = path if path.deterministic else min_path(path)
            self._min[path] = found
        return found

    def max_of(self, path: PathFormula) -> PathFormula:
        found = self._max.get(path)
        if found is None:
            found = path if path.deterministic else max_path(path)
            self._max[path] = found
        return found

    # --- DNF ---

    def lit(self, path: PathFormula, u: str, v: str, tau: Optional[Typing]) -> Dnf:
        """DNF de un átomo π(u, v), orientado, plegado y podado por tipos."""
        if u == v:
            cond = loop(path)
            if isinstance(cond, Falsum):
                return []
            if isinstance(cond, Verum):
                return [()]
            return [(PathAtom(Test(cond), v, v),)]
        if self.rank(u) > self.rank(v):
            path, u, v = converse(path), v, u
        if isinstance(path, Test) and isinstance(path.cond, Falsum):
            return []
        if tau is not None and u in tau and v in tau and (tau[u], tau[v]) not in self.comp(path):
            return []
        return [(PathAtom(path, u, v),)]

    def conj(self, atoms: Iterable[PathAtom]) -> Optional[Conjunct]:
        """Conjunción canónica: una prueba por variable y átomos sin repetir; None si es falsa."""
        tests: Dict[str, List[EventFormula]] = {}
        paths: List[PathAtom] = []
        for a in atoms:
            if a.is_test:
                tests.setdefault(a.src, []).append(a.path.cond)
            else:
                paths.append(a)
        out: List[PathAtom] = []
        for var in sorted(tests, key=self.rank):
            cond = and_(*tests[var])
            if isinstance(cond, Falsum):
                return None
            if not isinstance(cond, Verum):
                out.append(PathAtom(Test(cond), var, var))
        out.extend(dict.fromkeys(paths))
        return tuple(out)

    def simplify(self, dnf: Iterable[Conjunct]) -> Dnf:
        by_set: Dict[frozenset, Conjunct] = {}
        for c in dnf:
            by_set.setdefault(frozenset(c), c)
        if frozenset() in by_set:
            return [()]
        items = list(by_set.items())
        if len(items) <= ABSORB_LIMIT:
            items = [(s, c) for s, c in items if not any(o < s for o, _ in items)]
        result = [c for _, c in items]
        if len(result) > 1 and all(len(c) == 1 and c[0].is_test for c in result) \
                and len({c[0].src for c in result}) == 1:
            var = result[0][0].src
            cond = or_(*(c[0].path.cond for c in result))
            result = [()] if isinstance(cond, Verum) else [(PathAtom(Test(cond), var, var),)]
        self.charge(len(result) + sum(len(c) for c in result))
        return result

    def product(self, *dnfs: Dnf) -> Dnf:
        result: Dnf = [()]
        for d in dnfs:
            if not d:
                return []
            step = []
            for c1 in result:
                for c2 in d:
                    c = self.conj(c1 + c2)
                    if c is not None:
                        step.append(c)
            result = self.simplify(step)
            if not result:
                return []
        return result

    def union(self, *dnfs: Dnf) -> Dnf:
        return self.simplify(c for d in dnfs for c in d)

    # --- Complementos ---

    def complement(self, path: PathFormula, u: str, v: str, tau: Typing) -> Dnf:
        """DNF de ¬π(u, v) para u ≠ v con tipos fijados."""
        if self.rank(u) > self.rank(v):
            path, u, v = converse(path), v, u
        pu, pv = tau[u], tau[v]
        if (pu, pv) not in self.comp(path):
            return [()]
        if isinstance(path, Test):
            # ¬(u = v ∧ φ(u)): eventos distintos del mismo proceso o ¬φ(u)
            return self.union(self.lit(plus(), u, v, tau), self.lit(minus(), u, v, tau),
                              self.lit(Test(not_(path.cond)), u, u, tau))
        if path.deterministic:
            parts = [concat(path, minus()), concat(path, plus())]
        else:
            parts = [concat(self.min_of(path), minus()), concat(self.max_of(path), plus()),
                     concat(path, plus(), Test(not_(ex(converse(path)))))]
        parts.append(concat(Test(not_(ex(path))), Jump(pu, pv)))
        return self.union(*(self.lit(p, u, v, tau) for p in parts))

    def negate_atom(self, atom: PathAtom, tau: Typing) -> Dnf:
        if atom.src == atom.dst:
            return self.lit(Test(not_(loop(atom.path))), atom.src, atom.src, tau)
        return self.complement(atom.path, atom.src, atom.dst, tau)

    def negate(self, dnf: Dnf, tau: Typing) -> Dnf:
        """¬⋁⋀ a = ⋀⋁ ¬a, de nuevo en DNF."""
        result: Dnf = [()]
        for conj in dnf:
            clause = self.union(*(self.negate_atom(a, tau) for a in conj))
            result = self.product(result, clause)
            if not result:
                break
        return result

    # --- Átomos FO tipados ---

    def _le(self, u: str, v: str, tau: Typing, positive: bool) -> Dnf:
        pu, pv = tau[u], tau[v]
        if pu == pv:
            if positive:
                return self.union(self.lit(Test(TRUE), u, v, tau), self.lit(plus(), u, v, tau))
            return self.lit(minus(), u, v, tau)
        groups = [message_chain(seq) for seq in process_sequences(self.processes, pu, pv)]
        if positive:
            return self.union(*(self.lit(p, u, v, tau) for c in groups
                                for p in (c, concat(plus(), c), concat(c, plus()),
                                          concat(plus(), c, plus()))))
        clauses = []
        for c in groups:
            later = concat(plus(), c)
            clauses.append(self.union(
                self.lit(concat(Test(ex(c)), self.min_of(c), minus()), u, v, tau),
                self.lit(concat(Test(not_(ex(c))), self.min_of(later), minus()), u, v, tau),
                self.lit(concat(Test(and_(not_(ex(c)), not_(ex(later)))), Jump(pu, pv)), u, v, tau),
            ))
        return self.product(*clauses)

    def _atom(self, phi: fo.FoFormula, tau: Typing, positive: bool) -> Dnf:
        yes, no = ([()], []) if positive else ([], [()])
        if isinstance(phi, fo.ProcTest):
            return yes if tau[phi.var] == phi.proc else no
        if isinstance(phi, fo.LabelTest):
            cond = Lab(phi.label) if positive else not_(Lab(phi.label))
            return self.lit(Test(cond), phi.var, phi.var, tau)
        u, v = fo.atom_vars(phi)
        same = tau[u] == tau[v]
        if isinstance(phi, fo.Eq):
            if u == v:
                return yes
            if not same:
                return no
            if positive:
                return self.lit(Test(TRUE), u, v, tau)
            return self.union(self.lit(plus(), u, v, tau), self.lit(minus(), u, v, tau))
        if isinstance(phi, fo.ProcEdge):
            if u == v or not same:
                return no
            return self.lit(NEXT, u, v, tau) if positive else self.complement(NEXT, u, v, tau)
        if isinstance(phi, fo.MsgEdge):
            if same:
                return no
            path = Msg(tau[u], tau[v])
            return self.lit(path, u, v, tau) if positive else self.complement(path, u, v, tau)
        if isinstance(phi, (fo.Le, fo.LeProc)):
            if u == v:
                return yes
            if isinstance(phi, fo.LeProc) and not same:
                return no
            return self._le(u, v, tau, positive)
        raise TypeError(f"átomo FO desconocido: {phi!r}")

    # --- Traducción recursiva ---

    def translate(self, phi: fo.FoFormula, tau: Typing, positive: bool) -> Dnf:
        """DNF equivalente a φ (o a ¬φ si no `positive`) bajo el tipado τ."""
        key = (phi, tuple(sorted(tau.items())), positive)
        found = self._memo.get(key)
        if found is None:
            found = self._translate(phi, tau, positive)
            self._memo[key] = found
        return found

    def _translate(self, phi: fo.FoFormula, tau: Typing, positive: bool) -> Dnf:
        if isinstance(phi, fo.ATOMS):
            return self._atom(phi, tau, positive)
        if isinstance(phi, fo.Not):
            return self.translate(phi.arg, tau, not positive)
        if isinstance(phi, fo.Implies):
            return self.translate(fo.Or((fo.Not(phi.left), phi.right)), tau, positive)
        if isinstance(phi, (fo.Or, fo.And)):
            parts = [self.translate(a, tau, positive) for a in phi.args]
            if isinstance(phi, fo.Or) == positive:
                return self.union(*parts)
            return self.product(*parts)
        if isinstance(phi, fo.Forall):
            return self.translate(fo.Exists(phi.var, fo.Not(phi.body)), tau, not positive)
        if isinstance(phi, fo.Exists):
            if phi.var not in phi.body.free_vars:
                return self.translate(phi.body, tau, positive)
            if not positive:
                return self.negate(self.translate(phi, tau, True), tau)
            parts: Dnf = []
            for p in self.processes:
                inner = dict(tau)
                inner[phi.var] = p
                for conj in self.translate(phi.body, inner, True):
                    parts.extend(self.eliminate(conj, phi.var, inner))
            result = self.simplify(parts)
            logger.debug("∃%s eliminado: %d disyuntos, %d átomos producidos",
                         phi.var, len(result), self.used)
            return result
        raise TypeError(f"fórmula FO desconocida: {phi!r}")

    # --- Eliminación de ∃ ---

    def _anchor(self, x: str, candidates: Iterable[str]) -> str:
        others = sorted({v for v in candidates if v != x}, key=self.rank)
        if not others:
            raise InternalInvariantBreach(f"∃{x} sin otra variable en su ámbito")
        return others[0]

    def _le_choices(self, a: PathFormula, b: PathFormula, ya: str, yb: str,
                    tau: Optional[Typing]) -> Dnf:
        """a(ya) ≤proc b(yb), con →* partido en {true}? y →⁺."""
        back = converse(b)
        return self.union(self.lit(concat(a, back), ya, yb, tau),
                          self.lit(concat(a, plus(), back), ya, yb, tau))

    def eliminate(self, conj: Conjunct, x: str, tau: Optional[Typing],
                  scope: Sequence[str] = ()) -> Dnf:
        """
        DNF equivalente a ∃x. conj en la que x ya no aparece.

        Args:
            conj: Conjunción de átomos; x es la última variable en el orden
            x: Variable cuantificada
            tau: Tipado (None para la versión sin tipos)
            scope: Otras variables del ámbito (solo sin tipos)
        """
        rest: List[PathAtom] = []
        paths: List[PathAtom] = []
        chi: EventFormula = TRUE
        for a in conj:
            if x not in (a.src, a.dst):
                rest.append(a)
            elif a.src == a.dst:
                chi = and_(chi, loop(a.path))
            elif a.dst == x:
                paths.append(a)
            else:
                raise InternalInvariantBreach(f"átomo {a} no orientado hacia {x}")
        base: Dnf = [tuple(rest)]
        if not paths:
            if tau is not None:
                anchor = self._anchor(x, tau)
                cond = ex(Jump(tau[anchor], tau[x]), chi)
            else:
                anchor = self._anchor(x, [v for a in rest for v in a.variables()] + list(scope))
                cond = or_(*(and_(At(p), ex(Jump(p, q), chi))
                             for p in self.processes for q in self.processes))
            return self.product(base, self.lit(Test(cond), anchor, anchor, tau))
        out: Dnf = []
        n = len(paths)
        for k in range(n):
            for ell in range(n):
                parts = [base]
                yk, pk = paths[k].src, paths[k].path
                yl, pl = paths[ell].src, paths[ell].path
                for j in range(n):
                    if j != k:
                        parts.append(self._le_choices(self.min_of(paths[j].path), self.min_of(pk),
                                                      paths[j].src, yk, tau))
                    if j != ell:
                        parts.append(self._le_choices(self.max_of(pl), self.max_of(paths[j].path),
                                                      yl, paths[j].src, tau))
                psi = and_(chi, *(ex(converse(paths[j].path)) for j in range(n) if j not in (k, ell)))
                if k == ell:
                    parts.append(self.lit(Test(ex(pk, psi)), yk, yk, tau))
                else:
                    parts.append(self.lit(concat(pk, Test(psi), converse(pl)), yk, yl, tau))
                out.extend(self.product(*parts))
        return self.simplify(out)


class Fo2PdlUseCases:
    """
    Compilador FO → PDL sin estrella.

    Attributes:
        processes: Procesos P sobre los que se interpretan las fórmulas
        settings: Configuración (presupuesto de la traducción)
    """

    def __init__(self, processes: Iterable[str], settings: Optional[Settings] = None):
        self.processes = tuple(processes)
        self.settings = settings or Settings()
        self.fo = FoUseCases(self.settings)
        self.pdl = PdlUseCases()

    def _session(self, phi: fo.FoFormula, free: Sequence[str]) -> _Translator:
        return _Translator(self.processes, binding_order(phi, free),
                           self.settings.translation_max_nodes)

    def translate_atomic(self, atom: fo.FoFormula) -> GuardedDnf:
        """
        Traducción sin tipos de un átomo según la tabla clásica.

        Args:
            atom: p(x), a(x), x = y, x → y, x ⊳ y o x ≤ y (también x ≤proc y)
        """
        if not isinstance(atom, fo.ATOMS):
            raise UnsupportedFragment(f"no es un átomo: {atom!r}")
        free = atom.free_vars
        tr = self._session(atom, free)
        if isinstance(atom, fo.ProcTest):
            dnf = tr.lit(Test(At(atom.proc)), atom.var, atom.var, None)
        elif isinstance(atom, fo.LabelTest):
            dnf = tr.lit(Test(Lab(atom.label)), atom.var, atom.var, None)
        else:
            u, v = fo.atom_vars(atom)
            if isinstance(atom, fo.Eq):
                dnf = [()] if u == v else tr.lit(Test(TRUE), u, v, None)
            elif isinstance(atom, fo.ProcEdge):
                dnf = tr.lit(NEXT, u, v, None)
            elif isinstance(atom, fo.MsgEdge):
                dnf = tr.union(*(tr.lit(Msg(p, q), u, v, None) for p, q in self._channels()))
            elif u == v:
                dnf = [()]
            else:
                same = [tr.lit(Test(TRUE), u, v, None), tr.lit(plus(), u, v, None)]
                cross = []
                if isinstance(atom, fo.Le):
                    for p, q in self._channels():
                        for seq in process_sequences(self.processes, p, q):
                            for c in self._le_variants(message_chain(seq)):
                                cross.append(tr.lit(c, u, v, None))
                dnf = tr.union(*same, *cross)
        return GuardedDnf(free, tuple(dnf))

    def _channels(self) -> List[Tuple[str, str]]:
        return [(p, q) for p in self.processes for q in self.processes if p != q]

    @staticmethod
    def _le_variants(core: PathFormula) -> Tuple[PathFormula, ...]:
        return (core, concat(plus(), core), concat(core, plus()), concat(plus(), core, plus()))

    def eliminate_exists(self, dnf: GuardedDnf, x: str) -> GuardedDnf:
        """
        Elimina ∃x de una DNF positiva sin tipos.

        Args:
            dnf: DNF en la que x es la última variable del orden
            x: Variable a eliminar

        Returns:
            DNF equivalente a ∃x. dnf sobre las variables restantes
        """
        scope = [v for v in dnf.variables if v != x]
        if not scope:
            return self._close(dnf, x)
        order = {v: k for k, v in enumerate(scope)}
        order[x] = len(order)
        tr = _Translator(self.processes, order, self.settings.translation_max_nodes)
        parts: Dnf = []
        for conj in dnf:
            # reorientar: x pasa a ser la última variable
            for oriented in tr.product(*(tr.lit(a.path, a.src, a.dst, None) for a in conj)):
                parts.extend(tr.eliminate(oriented, x, None, scope))
        return GuardedDnf(tuple(scope), tuple(tr.simplify(parts)), dnf.guard)

    @staticmethod
    def _close(dnf: GuardedDnf, x: str) -> GuardedDnf:
        """∃x. dnf cuando x es la única variable: la DNF sin variables con guarda E χ."""
        chis = []
        for conj in dnf:
            if any(a.src != x or a.dst != x for a in conj):
                raise InternalInvariantBreach(f"átomo ajeno a {x} en {conj}")
            chis.append(and_(*(loop(a.path) for a in conj)))
        cond = or_(*chis)
        if isinstance(cond, Falsum):
            return GuardedDnf((), ())
        guard = some(cond) if dnf.guard is None else s_and(dnf.guard, some(cond))
        return GuardedDnf((), ((),), guard)

    def _typed(self, phi: fo.FoFormula, free: Sequence[str]):
        """Pares (τ, conjunción) de la traducción de φ, con las pruebas de tipo incluidas."""
        std = self.fo.standardize_apart(phi, reserved=free)
        tr = self._session(std, free)
        for procs in itertools.product(self.processes, repeat=len(free)):
            tau = dict(zip(free, procs))
            types = tuple(PathAtom(Test(At(p)), v, v) for v, p in tau.items())
            for conj in tr.translate(std, tau, True):
                merged = tr.conj(conj + types)
                if merged is not None:
                    yield tau, merged
        logger.debug("traducción FO → PDL: %d átomos producidos", tr.used)

    def _free(self, phi: fo.FoFormula, variables: Optional[Sequence[str]], arity: int) -> Tuple[str, ...]:
        free = tuple(variables) if variables is not None else phi.free_vars
        missing = [v for v in phi.free_vars if v not in free]
        if missing:
            raise UnboundVariable(f"variables libres no declaradas: {missing}")
        if arity and len(free) != arity:
            raise UnsupportedFragment(f"se esperaban {arity} variables libres, hay {list(free)}")
        return free

    def translate_formula(self, phi: fo.FoFormula,
                          variables: Optional[Sequence[str]] = None) -> GuardedDnf:
        """
        DNF positiva de átomos de PDL_sf[Loop] equivalente a φ.

        Args:
            phi: Fórmula con al menos una variable libre
            variables: Orden de las variables libres (por defecto, el de aparición)

        Raises:
            ResourceLimit: Si la traducción supera el presupuesto
        """
        free = self._free(phi, variables, 0)
        if not free:
            raise UnsupportedFragment("la fórmula no tiene variables libres; use translate_to_sentence")
        conjuncts = [conj for _, conj in self._typed(phi, free)]
        return GuardedDnf(free, tuple(dict.fromkeys(conjuncts)))

    def translate_to_event(self, phi: fo.FoFormula, var: Optional[str] = None) -> EventFormula:
        """Fórmula de evento ⋁⋀ equivalente a φ(x)."""
        free = self._free(phi, None if var is None else (var,), 1)
        (x,) = free
        disjuncts = []
        for _, conj in self._typed(phi, free):
            if any(not (a.is_test and a.src == x) for a in conj):
                raise InternalInvariantBreach(f"quedan átomos binarios tras eliminar: {conj}")
            disjuncts.append(and_(*(a.path.cond for a in conj)))
        return or_(*disjuncts)

    def translate_to_path(self, phi: fo.FoFormula,
                          variables: Optional[Sequence[str]] = None) -> PathFormula:
        """Unión de intersecciones de caminos equivalente a φ(x, y)."""
        free = self._free(phi, variables, 2)
        x, y = free
        disjuncts = []
        for tau, conj in self._typed(phi, free):
            first: EventFormula = TRUE
            last: EventFormula = TRUE
            links: List[PathFormula] = []
            for a in conj:
                if a.is_test and a.src == x:
                    first = a.path.cond
                elif a.is_test and a.src == y:
                    last = a.path.cond
                elif (a.src, a.dst) == (x, y):
                    links.append(a.path)
                else:
                    raise InternalInvariantBreach(f"átomo inesperado en la forma final: {a}")
            head = links[0] if links else Jump(tau[x], tau[y])
            parts = [concat(Test(first), head, Test(last))] + links[1:]
            disjuncts.append(inter(*parts))
        return union(*disjuncts)

    def translate_to_sentence(self, phi: fo.FoFormula) -> Sentence:
        """Combinación booleana de E φ equivalente a la sentencia."""
        if phi.free_vars:
            raise UnboundVariable(f"la sentencia tiene variables libres: {list(phi.free_vars)}")
        return self._sentence(self.fo.standardize_apart(phi))

    def _sentence(self, phi: fo.FoFormula) -> Sentence:
        if isinstance(phi, fo.Not):
            return s_not(self._sentence(phi.arg))
        if isinstance(phi, fo.Or):
            return s_or(*(self._sentence(a) for a in phi.args))
        if isinstance(phi, fo.And):
            return s_and(*(self._sentence(a) for a in phi.args))
        if isinstance(phi, fo.Implies):
            return s_or(s_not(self._sentence(phi.left)), self._sentence(phi.right))
        if isinstance(phi, (fo.Exists, fo.Forall)):
            if phi.var not in phi.body.free_vars:
                return self._sentence(phi.body)
            if isinstance(phi, fo.Exists):
                return some(self.translate_to_event(phi.body, phi.var))
            return s_not(some(self.translate_to_event(fo.Not(phi.body), phi.var)))
        raise UnboundVariable(f"átomo sin cuantificar en una sentencia: {phi!r}")

    def holds(self, msc: Msc, dnf: GuardedDnf, nu: Dict[str, str]) -> bool:
        """Evalúa una DNF de átomos de camino bajo la interpretación ν (id de evento)."""
        if dnf.guard is not None and not self.pdl.eval_sentence(msc, dnf.guard):
            return False
        for conj in dnf:
            if all((nu[a.src], nu[a.dst]) in self.pdl.eval_path(msc, a.path) for a in conj):
                return True
        return False
