#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Pruebas unitarias para las entidades del core.

Este módulo contiene las pruebas para Msc (validación, estructura derivada,
identificación con palabras), EventRel, Linearization y los ayudantes
sintácticos de las fórmulas FO.
"""

import unittest

import pytest

from msc_logic.backend.core.entities import fo_formula as fo
from msc_logic.backend.core.entities.errors import (
    CrossProcessProcEdge,
    CyclicDependency,
    EmptyMsc,
    EventInTwoMessages,
    MscValidationError,
    NonFifoChannel,
    NotALinearization,
    UnknownLabel,
    ValidationError,
)
from msc_logic.backend.core.entities.msc import EventRel, Linearization, Msc, RawMsc
from msc_logic.backend.core.entities.settings import Settings
from msc_logic.backend.core.use_cases.msc_use_cases import MscUseCases
from msc_logic.backend.frameworks.external.fixtures import three_process, ladder


def _violations(raw):
    with pytest.raises(MscValidationError) as info:
        Msc.from_raw(raw)
    return [type(v) for v in info.value.violations]


class TestMscThreeProcess(unittest.TestCase):
    """Hechos del MSC de tres procesos de referencia."""

    def setUp(self):
        self.msc = three_process()
        self.hb = MscUseCases().happened_before(self.msc)

    def test_shape(self):
        """Prueba el número de eventos, mensajes y procesos."""
        self.assertEqual(len(self.msc), 24)
        self.assertEqual(len(self.msc.messages), 12)
        self.assertEqual(self.msc.processes.names, ("p1", "p2", "p3"))

    def test_message_edges(self):
        """Prueba e1 ⊳ f0 y e4 ⊳ g5."""
        self.assertIn(("e1", "f0"), self.msc.messages)
        self.assertIn(("e4", "g5"), self.msc.messages)

    def test_happened_before(self):
        """Prueba e2 ≤ f3 y que e2 y f1 son concurrentes."""
        self.assertIn(("e2", "f3"), self.hb)
        self.assertNotIn(("e2", "f1"), self.hb)
        self.assertNotIn(("f1", "e2"), self.hb)

    def test_order_is_reflexive(self):
        """Prueba que ≤ contiene la diagonal."""
        for eid in self.msc.ids:
            self.assertIn((eid, eid), self.hb)

    def test_channel_of(self):
        """Prueba el canal asociado a emisores, receptores y eventos internos."""
        msc = self.msc
        self.assertEqual(msc.channel_of(msc.index["e4"]), ("p1", "p3"))
        self.assertEqual(msc.channel_of(msc.index["g5"]), ("p1", "p3"))
        self.assertEqual(msc.channel_of(msc.index["f1"]), ("p2", "p3"))

    def test_to_raw_rebuilds_same_msc(self):
        """Prueba que la descripción cruda reconstruye el mismo MSC."""
        self.assertEqual(Msc.from_raw(self.msc.to_raw()), self.msc)


class TestMscValidation(unittest.TestCase):
    """Pruebas para la validación de descripciones crudas."""

    def test_non_fifo(self):
        """Prueba que dos mensajes cruzados en un canal se rechazan."""
        raw = RawMsc(["p", "q"], ["a"], {"p": [("s0", "a"), ("s1", "a")], "q": [("r0", "a"), ("r1", "a")]},
                     [("s0", "r1"), ("s1", "r0")])
        self.assertIn(NonFifoChannel, _violations(raw))

    def test_cycle(self):
        """Prueba que un ciclo en → ∪ ⊳ se rechaza."""
        raw = RawMsc(["p", "q"], ["a"], {"p": [("x0", "a"), ("x1", "a")], "q": [("y0", "a"), ("y1", "a")]},
                     [("x1", "y0"), ("y1", "x0")])
        self.assertIn(CyclicDependency, _violations(raw))

    def test_all_violations_are_reported(self):
        """Prueba que se informa de todas las violaciones a la vez."""
        raw = RawMsc(["p", "q"], ["a"], {"p": [("s0", "b"), ("s1", "a")], "q": [("r0", "a")]},
                     [("s0", "s1")])
        found = _violations(raw)
        self.assertIn(UnknownLabel, found)
        self.assertIn(CrossProcessProcEdge, found)

    def test_event_in_two_messages(self):
        """Prueba que un evento no puede participar en dos mensajes."""
        raw = RawMsc(["p", "q"], ["a"], {"p": [("s0", "a")], "q": [("r0", "a"), ("r1", "a")]},
                     [("s0", "r0"), ("s0", "r1")])
        self.assertIn(EventInTwoMessages, _violations(raw))

    def test_empty(self):
        """Prueba que un MSC sin eventos se rechaza."""
        self.assertIn(EmptyMsc, _violations(RawMsc(["p"], ["a"], {"p": []}, [])))

    def test_exit_code(self):
        """Prueba que los errores de validación salen con código 3."""
        self.assertEqual(MscValidationError([]).exit_code, 3)


class TestWordsAndLinearizations(unittest.TestCase):
    """Pruebas para palabras de un proceso y linealizaciones."""

    def test_word_identification(self):
        """Prueba la identificación de un MSC de un proceso con su palabra."""
        msc = Msc.from_word("p", ["a", "b", "a"])
        self.assertEqual(msc.to_word(), ("a", "b", "a"))
        self.assertEqual(msc.labels.names, ("a", "b"))

    def test_to_word_requires_single_process(self):
        """Prueba que to_word rechaza MSCs con varios procesos activos."""
        with self.assertRaises(ValidationError):
            three_process().to_word()

    def test_ladder_linearizations(self):
        """Prueba las dos linealizaciones de una escalera de dos mensajes."""
        msc = ladder(2)
        lins = {lin.order for lin in MscUseCases().linearizations(msc)}
        self.assertEqual(lins, {("s0", "s1", "r0", "r1"), ("s0", "r0", "s1", "r1")})

    def test_b_bounded_linearization(self):
        """Prueba el conteo de mensajes pendientes por canal."""
        msc = ladder(2)
        uc = MscUseCases()
        both_first = Linearization(("s0", "s1", "r0", "r1"))
        alternating = Linearization(("s0", "r0", "s1", "r1"))
        self.assertFalse(uc.is_b_bounded_linearization(msc, both_first, 1))
        self.assertTrue(uc.is_b_bounded_linearization(msc, both_first, 2))
        self.assertTrue(uc.is_b_bounded_linearization(msc, alternating, 1))

    def test_not_a_linearization(self):
        """Prueba que un orden que viola ≤ se rechaza."""
        with self.assertRaises(NotALinearization):
            MscUseCases().check_linearization(ladder(2), Linearization(("r0", "s0", "s1", "r1")))
        with self.assertRaises(NotALinearization):
            MscUseCases().check_linearization(ladder(2), Linearization(("s0", "s1", "r0")))


class TestEventRel(unittest.TestCase):
    """Pruebas para el álgebra de relaciones sobre eventos."""

    def setUp(self):
        self.msc = three_process()
        self.proc = EventRel(self.msc, self.msc.proc_edges)

    def test_image_and_transpose(self):
        """Prueba la imagen de → y de su traspuesta."""
        self.assertEqual(self.proc.image("e0"), frozenset({"e1"}))
        self.assertEqual(self.proc.transpose().image("e1"), frozenset({"e0"}))
        self.assertEqual(self.proc.image("e7"), frozenset())

    def test_closure_is_proc_order(self):
        """Prueba que el cierre de → es ≤proc."""
        self.assertEqual(self.proc.closure(), EventRel(self.msc, self.msc.proc_le))

    def test_from_pairs(self):
        """Prueba la construcción a partir de pares."""
        rel = EventRel.from_pairs(self.msc, [("e0", "g0"), ("e1", "f0")])
        self.assertEqual(rel.pairs(), {("e0", "g0"), ("e1", "f0")})
        self.assertTrue(rel.issubset(EventRel(self.msc, self.msc.msg_edges)))


class TestFoFormula(unittest.TestCase):
    """Pruebas para los ayudantes sintácticos de FO."""

    def test_free_vars(self):
        """Prueba las variables libres en orden de aparición."""
        phi = fo.And((fo.Le("x", "y"), fo.Exists("z", fo.MsgEdge("z", "x"))))
        self.assertEqual(phi.free_vars, ("x", "y"))
        self.assertEqual(fo.latest("p1").free_vars, ("x", "y"))
        self.assertEqual(fo.gossip("p1", "p3", ["a"]).free_vars, ())

    def test_normalize_removes_sugar(self):
        """Prueba que normalize solo deja átomos básicos, Not, Or y Exists."""
        body = fo.Implies(fo.LeProc("x", "y"), fo.LabelTest("a", "x"))
        phi = fo.normalize(fo.Forall("x", body), ["p", "q"])
        allowed = (fo.ProcTest, fo.LabelTest, fo.Eq, fo.ProcEdge, fo.MsgEdge, fo.Le, fo.Not, fo.Or, fo.Exists)
        stack = [phi]
        while stack:
            node = stack.pop()
            self.assertIsInstance(node, allowed)
            if isinstance(node, fo.Not):
                stack.append(node.arg)
            elif isinstance(node, fo.Or):
                stack.extend(node.args)
            elif isinstance(node, fo.Exists):
                stack.append(node.body)

    def test_substitute_respects_binding(self):
        """Prueba que la sustitución no toca variables ligadas."""
        phi = fo.And((fo.Le("x", "y"), fo.Exists("x", fo.Eq("x", "y"))))
        out = fo.substitute(phi, {"x": "u", "y": "v"})
        self.assertEqual(out, fo.And((fo.Le("u", "v"), fo.Exists("x", fo.Eq("x", "v")))))

    def test_structural_equality(self):
        """Prueba la igualdad y el hash estructurales."""
        self.assertEqual(fo.Le("x", "y"), fo.Le("x", "y"))
        self.assertEqual(len({fo.Le("x", "y"), fo.Le("x", "y"), fo.Le("y", "x")}), 2)


def test_settings_overrides():
    settings = Settings().with_overrides(seed=7, fo_eval_steps=None)
    assert settings.seed == 7
    assert settings.fo_eval_steps == Settings().fo_eval_steps
    assert Settings.from_dict({"seed": "3", "unknown": 1}).seed == 3
