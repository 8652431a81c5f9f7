#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Corpus fijo de fórmulas FO para las pruebas de la traducción FO → PDL.

Cubre todos los átomos, negaciones bajo cuantificadores y latest_p, con
profundidad de cuantificadores ≤ 2. Las fórmulas usan los procesos p1, p2,
p3 y las etiquetas a, b.
"""

from typing import List, Tuple

from ...adapters.codecs.fo_codec import FoCodec
from ...core.entities import fo_formula as fo

CORPUS_PROCESSES = ("p1", "p2", "p3")
CORPUS_LABELS = ("a", "b")

# (nombre, s-expresión) con variables libres entre x e y
_FORMULAS = [
    ("proc", "(p p1 x)"),
    ("label", "(a a x)"),
    ("eq", "(= x y)"),
    ("proc-edge", "(proc-edge x y)"),
    ("msg-edge", "(msg-edge x y)"),
    ("le", "(le x y)"),
    ("le-proc", "(le-proc x y)"),
    ("not-le", "(not (le x y))"),
    ("concurrent", "(and (not (le x y)) (not (le y x)))"),
    ("strict-le", "(and (le x y) (not (= x y)))"),
    ("send", "(exists z (msg-edge x z))"),
    ("receive-on-p2", "(and (p p2 x) (exists z (msg-edge z x)))"),
    ("internal", "(not (exists z (or (msg-edge x z) (msg-edge z x))))"),
    ("first", "(not (exists z (proc-edge z x)))"),
    ("last-b", "(and (a b x) (forall z (implies (le-proc x z) (= x z))))"),
    ("between", "(exists z (and (le x z) (le z y) (not (= z x)) (not (= z y))))"),
    ("no-a-between", "(forall z (implies (and (le-proc x z) (le-proc z y)) (not (a a z))))"),
    ("common-past", "(exists z (and (le z x) (le z y) (p p1 z)))"),
    ("common-future", "(exists z (and (le x z) (le y z)))"),
    ("sees-p2", "(exists z (and (p p2 z) (le z x)))"),
    ("blind-to-p2", "(forall z (implies (p p2 z) (not (le z x))))"),
    ("latest-p1", "(and (le x y) (p p1 x) (forall z (implies (and (le z y) (p p1 z)) (le z x))))"),
    ("msg-then-next", "(exists z (and (msg-edge x z) (proc-edge z y)))"),
    ("reply", "(exists z (exists w (and (msg-edge x z) (le-proc z w) (msg-edge w y))))"),
    ("label-flow", "(exists z (and (a a z) (le x z) (le z y)))"),
    ("all-later-b", "(forall z (implies (and (le x z) (not (= x z))) (a b z)))"),
    ("some-concurrent", "(exists z (and (not (le x z)) (not (le z x))))"),
    ("same-label", "(or (and (a a x) (a a y)) (and (a b x) (a b y)))"),
    ("proc-pair", "(and (p p1 x) (p p3 y) (le x y))"),
    ("no-receive-before", "(not (exists z (and (le-proc z x) (exists w (msg-edge w z)))))"),
    ("exists-sentence", "(exists x (and (a b x) (p p2 x)))"),
    ("forall-sentence", "(forall x (implies (p p1 x) (exists y (and (le x y) (p p2 y)))))"),
    ("no-cross-talk", "(not (exists x (exists y (and (msg-edge x y) (p p3 y)))))"),
    ("labels-total", "(forall x (or (a a x) (a b x)))"),
]


def fo_corpus() -> List[Tuple[str, fo.FoFormula]]:
    """Pares (nombre, fórmula) del corpus."""
    codec = FoCodec()
    return [(name, codec.parse(text)) for name, text in _FORMULAS]


def quantifier_depth(phi: fo.FoFormula) -> int:
    if isinstance(phi, (fo.Exists, fo.Forall)):
        return 1 + quantifier_depth(phi.body)
    if isinstance(phi, fo.Not):
        return quantifier_depth(phi.arg)
    if isinstance(phi, (fo.And, fo.Or)):
        return max(quantifier_depth(a) for a in phi.args)
    if isinstance(phi, fo.Implies):
        return max(quantifier_depth(phi.left), quantifier_depth(phi.right))
    return 0


def fo_sentences(max_depth: int = 2) -> List[Tuple[str, fo.FoFormula]]:
    """Sentencias del corpus: las fórmulas abiertas se cierran con ∃ y se filtran por profundidad."""
    sentences = []
    for name, phi in fo_corpus():
        closed = phi
        for var in reversed(phi.free_vars):
            closed = fo.Exists(var, closed)
        if quantifier_depth(closed) <= max_depth:
            sentences.append((name, closed))
    return sentences
