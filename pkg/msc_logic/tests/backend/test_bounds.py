#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Pruebas de la acotación de canales: ∃B y ∀B, la linealización canónica
⊏_B y las palabras de linealización.
"""

import random
import unittest

import pytest

from msc_logic.backend.core.entities.errors import MalformedWord, NotExistsBBounded, ResourceLimit
from msc_logic.backend.core.entities.msc import LinLetter, Msc, RawMsc
from msc_logic.backend.core.use_cases.bounds_use_cases import (
    BoundsUseCases,
    exists_b_fo_formula,
    exists_b_formula,
    rev_fo,
)
from msc_logic.backend.core.use_cases.fo_use_cases import FoUseCases
from msc_logic.backend.core.use_cases.msc_use_cases import MscUseCases
from msc_logic.backend.core.use_cases.pdl_use_cases import PdlUseCases
from msc_logic.backend.frameworks.external.fixtures import three_process, four_process, ladder
from msc_logic.backend.frameworks.external.random_msc import RandomMscGenerator


class TestReferenceBounds(unittest.TestCase):
    """Cotas de los MSCs de referencia."""

    def setUp(self):
        self.uc = BoundsUseCases()

    def test_three_process(self):
        """Prueba que el MSC de tres procesos es ∃1, ∀4 y no ∀3-acotado."""
        msc = three_process()
        self.assertTrue(self.uc.is_exists_b_bounded(msc, 1))
        self.assertTrue(self.uc.is_forall_b_bounded(msc, 4))
        self.assertFalse(self.uc.is_forall_b_bounded(msc, 3))

    def test_ladder(self):
        """Prueba que k mensajes seguidos son ∀k y no ∀(k−1)-acotados."""
        for k in range(2, 5):
            msc = ladder(k)
            self.assertTrue(self.uc.is_forall_b_bounded(msc, k))
            self.assertFalse(self.uc.is_forall_b_bounded(msc, k - 1))
            self.assertTrue(self.uc.is_exists_b_bounded(msc, 1))

    def test_forall_brute_force_agrees(self):
        """Prueba que la enumeración de linealizaciones coincide en escaleras pequeñas."""
        for k in range(1, 4):
            msc = ladder(k)
            for bound in range(1, k + 1):
                self.assertEqual(self.uc.is_forall_b_bounded(msc, bound, brute_force=True),
                                 self.uc.is_forall_b_bounded(msc, bound))

    def test_four_process_canonical_order(self):
        """Prueba b1 ⊏_1 c1 en el MSC de cuatro procesos."""
        msc = four_process()
        self.assertTrue(self.uc.is_exists_b_bounded(msc, 1))
        order = self.uc.canonical_linearization(msc, 1).order
        self.assertLess(order.index("b1"), order.index("c1"))

    def test_canonical_linearization_is_bounded(self):
        """Prueba que ⊏_B es una linealización B-acotada."""
        mscs = MscUseCases()
        for msc in (three_process(), four_process(), ladder(3)):
            lin = self.uc.canonical_linearization(msc, 1)
            mscs.check_linearization(msc, lin)
            self.assertTrue(mscs.is_b_bounded_linearization(msc, lin, 1))

    def test_not_exists_bounded(self):
        """Prueba que sin ∃B-acotación no hay linealización canónica."""
        msc = _crossed()
        self.assertFalse(self.uc.is_exists_b_bounded(msc, 1))
        self.assertFalse(self.uc.has_b_bounded_linearization(msc, 1))
        self.assertTrue(self.uc.is_exists_b_bounded(msc, 2))
        with self.assertRaises(NotExistsBBounded):
            self.uc.canonical_linearization(msc, 1)


def _crossed():
    """p envía dos mensajes a q y q dos a p, todos antes de recibir: necesita B = 2."""
    raw = RawMsc(["p", "q"], ["a"],
                 {"p": [("s0", "a"), ("s1", "a"), ("u0", "a"), ("u1", "a")],
                  "q": [("t0", "a"), ("t1", "a"), ("r0", "a"), ("r1", "a")]},
                 [("s0", "r0"), ("s1", "r1"), ("t0", "u0"), ("t1", "u1")])
    return Msc.from_raw(raw)


class TestLinearizationWords(unittest.TestCase):
    """Palabras de linealización y reconstrucción del MSC."""

    def setUp(self):
        self.uc = BoundsUseCases()

    def test_round_trip_three_process(self):
        """Prueba que la palabra canónica reconstruye el mismo MSC."""
        msc = three_process()
        lin = self.uc.canonical_linearization(msc, 1)
        word = self.uc.lin_word(msc, lin)
        self.assertEqual(len(word), 24)
        rebuilt = self.uc.msc_of_word(word, msc.processes.names, msc.labels.names, lin.order)
        self.assertEqual(rebuilt, msc)

    def test_default_ids(self):
        """Prueba los identificadores por defecto p.k."""
        word = (LinLetter("a", "p!q"), LinLetter("b", "q?p"), LinLetter("a", "p"))
        msc = self.uc.msc_of_word(word)
        self.assertEqual(msc.ids, ("p.0", "p.1", "q.0"))
        self.assertEqual(msc.messages, (("p.0", "q.0"),))
        self.assertEqual(msc.processes.names, ("p", "q"))

    def test_malformed_words(self):
        """Prueba recepciones sin envío y envíos sin recepción."""
        with self.assertRaises(MalformedWord):
            self.uc.msc_of_word((LinLetter("a", "q?p"),))
        with self.assertRaises(MalformedWord):
            self.uc.msc_of_word((LinLetter("a", "p!q"),))
        with self.assertRaises(MalformedWord):
            self.uc.msc_of_word((LinLetter("a", "r"),), processes=["p", "q"])


class TestBoundFormulas(unittest.TestCase):
    """Fórmulas PDL y FO de la ∃B-acotación."""

    def test_rev_fo_matches_graph(self):
        """Prueba que rev_B en FO coincide con el cálculo sobre el grafo."""
        fo_uc = FoUseCases()
        uc = BoundsUseCases()
        for msc in (three_process(), _crossed(), ladder(3)):
            for bound in (1, 2):
                found = fo_uc.satisfying(msc, rev_fo(bound), ("x", "y"))
                self.assertEqual(set(found), uc.rev_edges(msc, bound).pairs())

    def test_pdl_sentence_on_references(self):
        """Prueba ξ_∃B sobre los MSCs de referencia."""
        pdl_uc = PdlUseCases()
        msc = three_process()
        self.assertTrue(pdl_uc.eval_sentence(msc, exists_b_formula(1, msc.processes.names)))
        crossed = _crossed()
        self.assertFalse(pdl_uc.eval_sentence(crossed, exists_b_formula(1, ("p", "q"))))
        self.assertTrue(pdl_uc.eval_sentence(crossed, exists_b_formula(2, ("p", "q"))))


@pytest.mark.parametrize("bound", [1, 2])
def test_three_way_agreement(bound):
    rng = random.Random(bound)
    uc = BoundsUseCases()
    pdl_uc = PdlUseCases()
    fo_uc = FoUseCases()
    mscs = RandomMscGenerator(rng).many(12, ("p", "q"), ("a",), 6)
    mscs += RandomMscGenerator(rng).many(20, ("p1", "p2", "p3"), ("a",), 7)
    for msc in mscs:
        graph = uc.is_exists_b_bounded(msc, bound)
        assert uc.has_b_bounded_linearization(msc, bound) == graph
        assert pdl_uc.eval_sentence(msc, exists_b_formula(bound, msc.processes.names)) == graph
        if len(msc.processes.names) == 2:
            assert fo_uc.eval_fo(msc, exists_b_fo_formula(bound, msc.processes.names)) == graph
        pdl_uc.forget(msc)


def test_canonical_words_round_trip():
    rng = random.Random(42)
    uc = BoundsUseCases()
    for msc in RandomMscGenerator(rng).many(30, ("p1", "p2", "p3"), ("a", "b"), 8):
        if not uc.is_exists_b_bounded(msc, 1):
            continue
        lin = uc.canonical_linearization(msc, 1)
        assert MscUseCases().is_b_bounded_linearization(msc, lin, 1)
        word = uc.lin_word(msc, lin)
        assert uc.msc_of_word(word, msc.processes.names, msc.labels.names, lin.order) == msc


def _assert_canonical(uc, msc, bound):
    """⊏_B contiene ≤_B y ordena los incomparables por el proceso mínimo de ↑e ∖ ↑f."""
    le = uc.le_b(msc, bound)
    lin = uc.canonical_linearization(msc, bound)
    assert sorted(lin.order) == sorted(msc.ids)
    pos = lin.positions()
    for i, e in enumerate(msc.ids):
        for j, f in enumerate(msc.ids):
            if i == j:
                continue
            if le[i, j]:
                assert pos[e] < pos[f]
            elif not le[j, i]:
                first = msc.loc[le[i] & ~le[j]].min() < msc.loc[le[j] & ~le[i]].min()
                assert (pos[e] < pos[f]) == first
    assert MscUseCases().is_b_bounded_linearization(msc, lin, bound)
    word = uc.lin_word(msc, lin)
    assert uc.msc_of_word(word, msc.processes.names, msc.labels.names, lin.order) == msc


@pytest.mark.slow
@pytest.mark.parametrize("bound", [1, 2])
def test_bounds_acceptance_scale(bound):
    rng = random.Random(f"bounds/{bound}")
    generator = RandomMscGenerator(rng)
    mscs = generator.many(50, ("p", "q"), ("a",), 10)
    mscs += generator.many(50, ("p1", "p2", "p3"), ("a", "b"), 10)
    uc = BoundsUseCases()
    pdl_uc = PdlUseCases()
    fo_uc = FoUseCases()
    for msc in mscs:
        graph = uc.is_exists_b_bounded(msc, bound)
        assert uc.has_b_bounded_linearization(msc, bound) == graph
        assert pdl_uc.eval_sentence(msc, exists_b_formula(bound, msc.processes.names)) == graph
        try:
            assert fo_uc.eval_fo(msc, exists_b_fo_formula(bound, msc.processes.names)) == graph
        except ResourceLimit as exc:
            pytest.skip(f"presupuesto agotado en {exc.stage}")
        if graph:
            _assert_canonical(uc, msc, bound)
        pdl_uc.forget(msc)
