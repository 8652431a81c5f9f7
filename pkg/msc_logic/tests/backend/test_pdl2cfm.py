#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Pruebas del compilador de PDL sin estrella a transductores y CFMs.

Cada transductor compilado se compara con la evaluación directa de la
fórmula: su único etiquetado de salida debe ser el vector de verdad.
"""

import random
import unittest

import numpy as np
import pytest

from msc_logic.backend.core.entities import fo_formula as fo
from msc_logic.backend.core.entities import pdl_formula as pdl
from msc_logic.backend.core.entities.errors import (
    LoopNotAllowed,
    NotMinMaxShape,
    ResourceLimit,
    UnsupportedFragment,
)
from msc_logic.backend.core.entities.settings import Settings
from msc_logic.backend.core.use_cases.cfm_use_cases import CfmUseCases
from msc_logic.backend.core.use_cases.fo_use_cases import FoUseCases
from msc_logic.backend.core.use_cases.pdl2cfm_use_cases import Pdl2CfmUseCases, path_alternatives
from msc_logic.backend.core.use_cases.pdl_use_cases import PdlUseCases
from msc_logic.backend.frameworks.external.fixtures import three_process
from msc_logic.backend.frameworks.external.random_formulas import RandomFormulaGenerator
from msc_logic.backend.frameworks.external.random_msc import RandomMscGenerator

PROCESSES = ("p1", "p2", "p3")
LABELS = ("a", "b")

LOOP_PATH = pdl.concat(pdl.MsgInv("p1", "p3"), pdl.NEXT, pdl.Msg("p1", "p2"), pdl.NEXT,
                       pdl.Msg("p2", "p3"), pdl.NEXT)


def _compiled_vector(machine, msc):
    try:
        out = CfmUseCases().output(machine, msc)
    except ResourceLimit as exc:
        pytest.skip(f"presupuesto agotado en {exc.stage}")
    assert out is not None
    return np.array(out, dtype=bool)


class TestCompileThreeProcess(unittest.TestCase):
    """Fórmulas compiladas sobre el MSC de referencia."""

    def setUp(self):
        self.msc = three_process()
        self.compiler = Pdl2CfmUseCases(self.msc.processes, self.msc.labels.names)
        self.pdl = PdlUseCases()

    def test_message_guess(self):
        """Prueba que ⟨⊳_{p1,p2}⟩di se cumple en e1, e3, e5 y e7."""
        phi = pdl.ex(pdl.Msg("p1", "p2"), pdl.Lab("di"))
        out = CfmUseCases().output(self.compiler.compile_loopfree(phi), self.msc)
        marked = {eid for eid, bit in zip(self.msc.ids, out) if bit}
        self.assertEqual(marked, {"e1", "e3", "e5", "e7"})

    def test_guarded_moves(self):
        """Prueba →_φ y ←_φ frente a la evaluación directa."""
        for phi in (pdl.Ex(pdl.GuardRight(pdl.Lab("sq")), pdl.Lab("ci")),
                    pdl.Ex(pdl.GuardLeft(pdl.Lab("di")), pdl.TRUE),
                    pdl.Ex(pdl.concat(pdl.PREV, pdl.Jump("p1", "p3")), pdl.Lab("ci"))):
            expected = self.pdl.event_vector(self.msc, phi)
            got = _compiled_vector(self.compiler.compile_loopfree(phi), self.msc)
            self.assertTrue(np.array_equal(got, expected), phi)

    def test_loop_holds_only_at_g5(self):
        """Prueba el bucle de referencia compilado."""
        got = _compiled_vector(self.compiler.compile_event(pdl.Loop(LOOP_PATH)), self.msc)
        self.assertEqual({eid for eid, bit in zip(self.msc.ids, got) if bit}, {"g5"})

    def test_sentences(self):
        """Prueba la aceptación de sentencias."""
        uc = CfmUseCases()
        yes = self.compiler.compile_sentence(pdl.some(pdl.Lab("di")))
        no = self.compiler.compile_sentence(pdl.some(pdl.and_(pdl.Lab("di"), pdl.At("p1"))))
        self.assertTrue(uc.accepts(yes, self.msc))
        self.assertFalse(uc.accepts(no, self.msc))
        self.assertTrue(uc.accepts(self.compiler.compile_sentence(pdl.s_not(pdl.some(pdl.FALSE))), self.msc))

    def test_fo_sentence(self):
        """Prueba una sentencia FO compilada a través de PDL."""
        uc = CfmUseCases()
        some_di = fo.Exists("x", fo.LabelTest("di", "x"))
        none_on_p1 = fo.Exists("x", fo.And((fo.ProcTest("p1", "x"), fo.LabelTest("di", "x"))))
        self.assertTrue(uc.accepts(self.compiler.compile_fo_sentence(some_di), self.msc))
        self.assertFalse(uc.accepts(self.compiler.compile_fo_sentence(none_on_p1), self.msc))


class TestLoopNormalization(unittest.TestCase):
    """Reescritura de bucles y comprobaciones de fragmento."""

    def setUp(self):
        self.compiler = Pdl2CfmUseCases(PROCESSES, LABELS)

    def test_test_loop_is_its_condition(self):
        """Prueba Loop({φ}?) ≡ φ."""
        self.assertEqual(self.compiler.normalize_loops(pdl.Loop(pdl.Test(pdl.Lab("a")))), pdl.Lab("a"))

    def test_empty_comp_loop_is_false(self):
        """Prueba que un bucle con Comp(π) vacío es falso."""
        path = pdl.concat(pdl.Msg("p1", "p2"), pdl.Msg("p1", "p2"))
        self.assertEqual(self.compiler.normalize_loops(pdl.Loop(path)), pdl.FALSE)

    def test_deterministic_loop_is_max_loop(self):
        """Prueba que un camino determinista da directamente Loop max π."""
        self.assertEqual(self.compiler.normalize_loops(pdl.Loop(LOOP_PATH)), pdl.ShapedLoop(LOOP_PATH, False))

    def test_no_loops_remain(self):
        """Prueba que la normalización no deja Loop sin forma."""
        rng = random.Random(5)
        formulas = RandomFormulaGenerator(rng, PROCESSES, LABELS)
        for _ in range(40):
            out = self.compiler.normalize_loops(formulas.event(3, loops=True))
            self.assertFalse(any(isinstance(n, pdl.Loop) for n in pdl.iter_dag([out])))

    def test_union_distribution(self):
        """Prueba que la concatenación distribuye sobre ∪."""
        path = pdl.concat(pdl.union(pdl.NEXT, pdl.PREV), pdl.union(pdl.Msg("p1", "p2"), pdl.NEXT))
        self.assertEqual(len(path_alternatives(path)), 4)

    def test_fragment_errors(self):
        """Prueba los errores de fragmento."""
        with self.assertRaises(LoopNotAllowed):
            self.compiler.compile_loopfree(pdl.Loop(LOOP_PATH))
        with self.assertRaises(NotMinMaxShape):
            self.compiler.compile_minmax_loop(pdl.union(pdl.NEXT, pdl.PREV))
        with self.assertRaises(UnsupportedFragment):
            self.compiler.compile_event(pdl.ex(pdl.inter(pdl.NEXT, pdl.PREV)))


def _random_cases(seed, count, loops, max_events):
    rng = random.Random(seed)
    formulas = RandomFormulaGenerator(rng, PROCESSES, LABELS)
    mscs = RandomMscGenerator(rng)
    for _ in range(count):
        yield formulas.event(2, loops=loops), mscs.generate(PROCESSES, LABELS, max_events)


def _only_output(machine, msc):
    """Enumera todas las salidas y comprueba que el transductor es funcional."""
    try:
        found = list(CfmUseCases().outputs(machine, msc, exhaustive=True))
    except ResourceLimit as exc:
        pytest.skip(f"presupuesto agotado en {exc.stage}")
    assert len(found) == 1
    return np.array(found[0], dtype=bool)


@pytest.mark.parametrize("seed", range(4))
def test_loop_free_matches_evaluation(seed):
    compiler = Pdl2CfmUseCases(PROCESSES, LABELS)
    evaluator = PdlUseCases()
    for phi, msc in _random_cases(seed, 6, loops=False, max_events=6):
        expected = evaluator.event_vector(msc, phi)
        assert np.array_equal(_only_output(compiler.compile_loopfree(phi), msc), expected), phi


@pytest.mark.slow
def test_loop_free_functional_acceptance_scale():
    rng = random.Random(2000)
    generator = RandomFormulaGenerator(rng, PROCESSES, LABELS)
    formulas = [generator.event(2) for _ in range(20)]
    mscs = RandomMscGenerator(rng).many(200, PROCESSES, LABELS, 8)
    compiler = Pdl2CfmUseCases(PROCESSES, LABELS)
    evaluator = PdlUseCases()
    for phi in formulas:
        machine = compiler.compile_loopfree(phi)
        for msc in mscs:
            assert np.array_equal(_only_output(machine, msc), evaluator.event_vector(msc, phi)), phi


@pytest.mark.parametrize("seed", range(2))
def test_loops_match_evaluation(seed):
    compiler = Pdl2CfmUseCases(PROCESSES, LABELS)
    evaluator = PdlUseCases()
    for phi, msc in _random_cases(100 + seed, 3, loops=True, max_events=5):
        expected = evaluator.event_vector(msc, phi)
        assert np.array_equal(_compiled_vector(compiler.compile_event(phi), msc), expected), phi


@pytest.mark.slow
def test_random_formulas_acceptance_scale():
    compiler = Pdl2CfmUseCases(PROCESSES, LABELS)
    evaluator = PdlUseCases()
    for phi, msc in _random_cases(1000, 100, loops=True, max_events=8):
        expected = evaluator.event_vector(msc, phi)
        assert np.array_equal(_compiled_vector(compiler.compile_event(phi), msc), expected), phi


def test_materialized_loopfree_machine():
    msc = three_process()
    compiler = Pdl2CfmUseCases(msc.processes, msc.labels.names)
    phi = pdl.ex(pdl.Msg("p1", "p2"), pdl.Lab("di"))
    uc = CfmUseCases()
    explicit = uc.materialize(compiler.compile_loopfree(phi))
    assert uc.output(explicit, msc) == uc.output(compiler.compile_loopfree(phi), msc)


FO_PROCESSES = ("p1", "p2")


@pytest.mark.parametrize("seed,sentences,count", [
    (3000, 3, 10),
    pytest.param(3001, 10, 100, marks=pytest.mark.slow),
])
def test_fo_sentences_end_to_end(seed, sentences, count):
    rng = random.Random(seed)
    generator = RandomFormulaGenerator(rng, FO_PROCESSES, LABELS)
    mscs = RandomMscGenerator(rng).many(count, FO_PROCESSES, LABELS, 6)
    compiler = Pdl2CfmUseCases(FO_PROCESSES, LABELS)
    cfm, fo_uc = CfmUseCases(), FoUseCases()
    for _ in range(sentences):
        phi = generator.fo_sentence(2)
        try:
            machine = compiler.compile_fo_sentence(phi)
            verdicts = [cfm.accepts(machine, msc) for msc in mscs]
        except ResourceLimit as exc:
            pytest.skip(f"presupuesto agotado en {exc.stage}")
        assert verdicts == [fo_uc.eval_fo(msc, phi) for msc in mscs], phi


@pytest.mark.slow
def test_gossip_pipeline_under_budget():
    msc = three_process()
    settings = Settings(translation_max_nodes=200000, run_search_max_configs=100000)
    compiler = Pdl2CfmUseCases(msc.processes, msc.labels.names, settings)
    try:
        machine = compiler.compile_fo_sentence(fo.gossip("p1", "p3", msc.labels.names))
        accepted = CfmUseCases(settings).accepts(machine, msc)
    except ResourceLimit as exc:
        pytest.skip(f"gossip completo fuera de presupuesto en {exc.stage}")
    assert accepted
