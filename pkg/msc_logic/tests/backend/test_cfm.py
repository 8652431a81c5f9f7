#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Pruebas para CFMs explícitos, transductores base, sus construcciones
(producto, composición, proyección) y la búsqueda de ejecuciones.
"""

import unittest
from pathlib import Path

import pytest

from msc_logic.backend.adapters.codecs import CfmYamlCodec
from msc_logic.backend.core.entities.cfm import RunAssignment, Transducer
from msc_logic.backend.core.entities.errors import IncompatibleAlphabet, ResourceLimit
from msc_logic.backend.core.entities.msc import Msc
from msc_logic.backend.core.entities.settings import Settings
from msc_logic.backend.core.entities.transducer_library import (
    COLORS,
    ColorGuess,
    LabelTestTransducer,
    MsgGuess,
    ProcTestTransducer,
    StrictSince,
    neg_gate,
)
from msc_logic.backend.core.use_cases.cfm_use_cases import CfmUseCases
from msc_logic.backend.frameworks.external.fixtures import three_process, ladder

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
SMALL_CFM = (FIXTURES / "one_message.cfm.yaml").read_text(encoding="utf-8")


def _bits(msc, ids):
    return tuple(int(eid in ids) for eid in msc.ids)


class TestExplicitCfm(unittest.TestCase):
    """Búsqueda de ejecuciones sobre un CFM leído de YAML."""

    def setUp(self):
        self.cfm = CfmYamlCodec().parse(SMALL_CFM)
        self.uc = CfmUseCases()

    def test_accepts_single_message(self):
        """Prueba que el CFM acepta exactamente un mensaje de p a q."""
        self.assertTrue(self.uc.accepts(self.cfm, ladder(1)))
        self.assertFalse(self.uc.accepts(self.cfm, ladder(2)))

    def test_witness_run(self):
        """Prueba que el testigo asigna una transición por evento y es válido."""
        msc = ladder(1)
        run = self.uc.find_run(self.cfm, msc)
        self.assertIsNotNone(run)
        self.assertEqual([eid for eid, _ in run.transitions], list(msc.ids))
        self.assertEqual(self.uc.check_run(self.cfm, msc, run), [])
        self.assertEqual(self.uc.last_statistics["accepting"], 1)

    def test_check_run_reports_problems(self):
        """Prueba que una ejecución incompleta se rechaza."""
        msc = ladder(1)
        run = self.uc.find_run(self.cfm, msc)
        partial = RunAssignment(run.transitions[:1])
        self.assertNotEqual(self.uc.check_run(self.cfm, msc, partial), [])

    def test_incompatible_processes(self):
        """Prueba que P debe coincidir."""
        with self.assertRaises(IncompatibleAlphabet):
            self.uc.find_run(self.cfm, three_process())


class TestTransducers(unittest.TestCase):
    """Transductores base y sus construcciones."""

    def setUp(self):
        self.msc = three_process()
        self.procs = self.msc.processes
        self.sigma = self.msc.labels.names
        self.uc = CfmUseCases()

    def test_proc_and_label_tests(self):
        """Prueba las salidas de los transductores de prueba."""
        on_p2 = self.uc.output(ProcTestTransducer(self.procs, self.sigma, "p2"), self.msc)
        self.assertEqual(on_p2, _bits(self.msc, {f"f{k}" for k in range(8)}))
        di = self.uc.output(LabelTestTransducer(self.procs, self.sigma, ["di"]), self.msc)
        self.assertEqual(di, on_p2)

    def test_product_pairs_outputs(self):
        """Prueba que el producto empareja las salidas."""
        p1 = ProcTestTransducer(self.procs, self.sigma, "p1")
        sq = LabelTestTransducer(self.procs, self.sigma, ["sq"])
        out = self.uc.output(self.uc.product(p1, sq), self.msc)
        self.assertEqual(out, tuple(zip(self.uc.output(p1, self.msc), self.uc.output(sq, self.msc))))

    def test_compose_message_guess(self):
        """Prueba ⟨⊳_{p1,p2}⟩di como composición: se cumple en e1, e3, e5 y e7."""
        inner = LabelTestTransducer(self.procs, self.sigma, ["di"])
        machine = self.uc.compose(MsgGuess(self.procs, "p1", "p2"), inner)
        expected = _bits(self.msc, {"e1", "e3", "e5", "e7"})
        self.assertEqual(self.uc.output(machine, self.msc), expected)
        self.assertEqual(list(self.uc.outputs(machine, self.msc, exhaustive=True)), [expected])

    def test_negation(self):
        """Prueba la puerta de negación compuesta con una prueba de proceso."""
        machine = self.uc.compose(neg_gate(self.procs), ProcTestTransducer(self.procs, self.sigma, "p1"))
        out = self.uc.output(machine, self.msc)
        self.assertEqual(out, _bits(self.msc, set(self.msc.ids) - {f"e{k}" for k in range(8)}))

    def test_accepts_transducer_view(self):
        """Prueba que el transductor visto como CFM acepta la entrada con su salida."""
        test = ProcTestTransducer(self.procs, self.sigma, "p3")
        out = self.uc.output(test, self.msc)
        labeled = self.msc.relabel(list(zip((e.label for e in self.msc.events), out)),
                                   [(a, b) for a in self.sigma for b in (0, 1)])
        self.assertTrue(self.uc.accepts(self.uc.as_cfm(test), labeled))
        flipped = labeled.relabel([(a, 1 - b) for a, b in (e.label for e in labeled.events)],
                                  labeled.labels.names)
        self.assertFalse(self.uc.accepts(self.uc.as_cfm(test), flipped))

    def test_outputs_requires_transducer(self):
        """Prueba que un CFM sin salida no enumera etiquetados."""
        with self.assertRaises(IncompatibleAlphabet):
            list(self.uc.outputs(CfmYamlCodec().parse(SMALL_CFM), ladder(1)))


class TestColorings(unittest.TestCase):
    """Enumeración de etiquetados no funcionales."""

    def test_two_events_have_sixteen_colorings(self):
        """Prueba que un coloreado sobre dos eventos tiene 16 etiquetados."""
        uc = CfmUseCases()
        for msc in (Msc.from_word("p", ["a", "a"]), ladder(1)):
            guess = ColorGuess(msc.processes, ("a",))
            found = list(uc.outputs(guess, msc))
            self.assertEqual(len(found), len(COLORS) ** 2)
            self.assertEqual(len(set(found)), 16)

    def test_projection_accepts_everything(self):
        """Prueba que la proyección de un coloreado acepta cualquier MSC."""
        uc = CfmUseCases()
        msc = three_process()
        self.assertTrue(uc.accepts(uc.project(ColorGuess(msc.processes, msc.labels.names)), msc))

    def test_search_budget(self):
        """Prueba que la búsqueda respeta su presupuesto."""
        uc = CfmUseCases(Settings(run_search_max_configs=3))
        msc = ladder(1)
        with self.assertRaises(ResourceLimit) as info:
            list(uc.outputs(ColorGuess(msc.processes, ("a",)), msc))
        self.assertEqual(info.exception.stage, "run-search")

    def test_enumeration_budget(self):
        """Prueba el límite de etiquetados enumerados."""
        uc = CfmUseCases(Settings(enumerate_max_labelings=5))
        msc = ladder(1)
        with self.assertRaises(ResourceLimit) as info:
            list(uc.outputs(ColorGuess(msc.processes, ("a",)), msc))
        self.assertEqual(info.exception.stage, "enumerate")


def test_materialize_matches_lazy_machine():
    uc = CfmUseCases()
    msc = three_process()
    lazy = uc.compose(MsgGuess(msc.processes, "p1", "p2"),
                      LabelTestTransducer(msc.processes, msc.labels.names, ["di"]))
    explicit = uc.materialize(lazy)
    assert isinstance(explicit, Transducer)
    assert explicit.functional
    assert uc.output(explicit, msc) == uc.output(lazy, msc)
    text = CfmYamlCodec().serialize(explicit)
    reread = CfmYamlCodec().parse(text)
    assert uc.output(reread, msc) == uc.output(lazy, msc)


def test_materialize_budget():
    procs = three_process().processes
    with pytest.raises(ResourceLimit) as info:
        CfmUseCases(Settings(materialize_max_states=0)).materialize(StrictSince(procs))
    assert info.value.stage == "materialize"
    assert CfmUseCases().materialize(StrictSince(procs)).size()["states"] == 2 * len(procs.names)
