#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Pruebas para la evaluación de FO[→,⊳,≤] y sus transformaciones sintácticas.
"""

import random
import unittest

import pytest

from msc_logic.backend.core.entities import fo_formula as fo
from msc_logic.backend.core.entities.errors import ResourceLimit, UnboundVariable
from msc_logic.backend.core.entities.settings import Settings
from msc_logic.backend.core.use_cases.fo_use_cases import FoUseCases, fresh_name
from msc_logic.backend.frameworks.external.fixtures import three_process
from msc_logic.backend.frameworks.external.fo_corpus import (
    CORPUS_LABELS,
    CORPUS_PROCESSES,
    fo_corpus,
    fo_sentences,
    quantifier_depth,
)
from msc_logic.backend.frameworks.external.random_msc import RandomMscGenerator


class TestFoThreeProcess(unittest.TestCase):
    """Pruebas de evaluación sobre el MSC de referencia."""

    def setUp(self):
        self.msc = three_process()
        self.uc = FoUseCases()

    def test_gossip_p1_p3(self):
        """Prueba que p3 conoce siempre la última información de p1."""
        phi = fo.gossip("p1", "p3", self.msc.labels.names)
        self.assertTrue(self.uc.eval_fo(self.msc, phi))

    def test_latest_p1(self):
        """Prueba latest_p1(e5, g5) y su falsedad para e4."""
        phi = fo.latest("p1")
        self.assertTrue(self.uc.eval_fo(self.msc, phi, {"x": "e5", "y": "g5"}))
        self.assertFalse(self.uc.eval_fo(self.msc, phi, {"x": "e4", "y": "g5"}))

    def test_satisfying_latest(self):
        """Prueba que e5 es el único último evento de p1 en el pasado de g5."""
        found = self.uc.satisfying(self.msc, fo.latest("p1"), ("x", "y"))
        self.assertEqual({x for x, y in found if y == "g5"}, {"e5"})

    def test_le_proc(self):
        """Prueba el azúcar ≤proc."""
        phi = fo.LeProc("x", "y")
        self.assertTrue(self.uc.eval_fo(self.msc, phi, {"x": "e0", "y": "e3"}))
        self.assertFalse(self.uc.eval_fo(self.msc, phi, {"x": "e3", "y": "e0"}))
        self.assertFalse(self.uc.eval_fo(self.msc, phi, {"x": "e0", "y": "g0"}))

    def test_unbound_variable(self):
        """Prueba que las variables libres sin valor se rechazan."""
        with self.assertRaises(UnboundVariable):
            self.uc.eval_fo(self.msc, fo.Le("x", "y"), {"x": "e0"})
        with self.assertRaises(UnboundVariable):
            self.uc.eval_fo(self.msc, fo.Le("x", "y"), {"x": "e0", "y": "zz"})

    def test_budget(self):
        """Prueba que el presupuesto de pasos produce ResourceLimit."""
        uc = FoUseCases(Settings(fo_eval_steps=10))
        with self.assertRaises(ResourceLimit) as info:
            uc.eval_fo(self.msc, fo.gossip("p1", "p3", self.msc.labels.names))
        self.assertEqual(info.exception.stage, "fo-eval")
        self.assertEqual(info.exception.exit_code, 4)


class TestFoTransformations(unittest.TestCase):
    """Pruebas para standardize_apart, prenex y el recuento de variables."""

    def setUp(self):
        self.uc = FoUseCases()

    def test_standardize_apart(self):
        """Prueba que las variables ligadas quedan distintas entre sí y de las libres."""
        phi = fo.And((fo.Exists("x", fo.Le("x", "y")), fo.Exists("x", fo.Le("y", "x")),
                      fo.LabelTest("a", "x")))
        out = self.uc.standardize_apart(phi)
        bound = [n.var for n in _quantifiers(out)]
        self.assertEqual(len(bound), len(set(bound)))
        self.assertNotIn("x", bound)
        self.assertEqual(out.free_vars, phi.free_vars)

    def test_variable_count(self):
        """Prueba que el recuento incluye variables libres y ligadas."""
        self.assertEqual(self.uc.variable_count(fo.latest("p1")), 3)

    def test_fresh_name(self):
        """Prueba la generación de nombres nuevos."""
        self.assertEqual(fresh_name("x", {"x", "x1"}), "x2")
        self.assertEqual(fresh_name("v3", {"v1"}), "v2")

    def test_prenex_equivalence(self):
        """Prueba que la forma prenexa es equivalente y tiene los cuantificadores delante."""
        rng = random.Random(11)
        mscs = RandomMscGenerator(rng).many(6, CORPUS_PROCESSES, CORPUS_LABELS, 7)
        for name, phi in fo_sentences(2):
            out = self.uc.prenex(phi)
            node = out
            while isinstance(node, (fo.Exists, fo.Forall)):
                node = node.body
            self.assertEqual(_quantifiers(node), [], name)
            for msc in mscs:
                self.assertEqual(self.uc.eval_fo(msc, out), self.uc.eval_fo(msc, phi), name)


def _quantifiers(phi):
    found = []
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, (fo.Exists, fo.Forall)):
            found.append(node)
            stack.append(node.body)
        elif isinstance(node, fo.Not):
            stack.append(node.arg)
        elif isinstance(node, (fo.And, fo.Or)):
            stack.extend(node.args)
        elif isinstance(node, fo.Implies):
            stack.extend((node.left, node.right))
    return found


def test_corpus_coverage():
    corpus = fo_corpus()
    assert len(corpus) >= 30
    kinds = set()
    for _, phi in corpus:
        stack = [phi]
        while stack:
            node = stack.pop()
            kinds.add(type(node))
            if isinstance(node, (fo.Exists, fo.Forall)):
                stack.append(node.body)
            elif isinstance(node, fo.Not):
                stack.append(node.arg)
            elif isinstance(node, (fo.And, fo.Or)):
                stack.extend(node.args)
            elif isinstance(node, fo.Implies):
                stack.extend((node.left, node.right))
    assert set(fo.ATOMS) <= kinds
    assert {fo.Not, fo.Exists, fo.Forall} <= kinds
    assert all(quantifier_depth(phi) <= 2 for _, phi in corpus)
    assert len(fo_sentences(2)) >= 10


@pytest.mark.parametrize("name,phi", fo_corpus()[:8])
def test_satisfying_matches_eval(name, phi):
    msc = RandomMscGenerator(random.Random(name)).generate(CORPUS_PROCESSES, CORPUS_LABELS, 6)
    uc = FoUseCases()
    free = phi.free_vars
    found = uc.satisfying(msc, phi, free)
    for x in msc.ids:
        for y in msc.ids:
            nu = dict(zip(free, (x, y)))
            expected = uc.eval_fo(msc, phi, nu)
            assert (tuple(nu[v] for v in free) in found) == expected
