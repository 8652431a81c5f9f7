#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Pruebas para los códecs de texto: s-expresiones, MSC, FO, PDL, CFM en YAML
y palabras de linealización.
"""

import unittest
from pathlib import Path

import pytest

from msc_logic.backend.adapters.codecs import CfmYamlCodec, FoCodec, LinWordCodec, MscTextCodec, PdlCodec
from msc_logic.backend.adapters.codecs.sexpr import parse_sexpr, write_sexpr
from msc_logic.backend.core.entities import fo_formula as fo
from msc_logic.backend.core.entities import pdl_formula as pdl
from msc_logic.backend.core.entities.cfm import Transducer
from msc_logic.backend.core.entities.errors import (
    CfmFormatError,
    FormulaSyntaxError,
    MalformedWord,
    MscFormatError,
    MscValidationError,
    NonFifoChannel,
)
from msc_logic.backend.core.entities.msc import LinLetter
from msc_logic.backend.core.entities.transition import ActionKind
from msc_logic.backend.core.use_cases.fo_use_cases import FoUseCases
from msc_logic.backend.frameworks.external.fixtures import THREE_PROCESS, three_process

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

SMALL_CFM = (FIXTURES / "one_message.cfm.yaml").read_text(encoding="utf-8")


class TestSexpr(unittest.TestCase):
    """Pruebas del lector de s-expresiones."""

    def test_atoms_lists_and_comments(self):
        """Prueba átomos, listas anidadas y comentarios ';'."""
        text = "; comentario\n(and (le x y) ; otro\n  (p p1 x))"
        self.assertEqual(parse_sexpr(text), ["and", ["le", "x", "y"], ["p", "p1", "x"]])

    def test_quoted_atoms(self):
        """Prueba que los átomos con espacios se escriben entre comillas."""
        self.assertEqual(write_sexpr(["lab", "a b"]), '(lab "a b")')
        self.assertEqual(parse_sexpr('(lab "a b")'), ["lab", "a b"])

    def test_error_position(self):
        """Prueba que los errores llevan línea y columna."""
        with self.assertRaises(FormulaSyntaxError) as info:
            parse_sexpr("(and\n  (le x y)")
        self.assertGreaterEqual(info.exception.line, 1)
        self.assertIn("line", info.exception.to_dict())
        self.assertEqual(info.exception.exit_code, 3)


class TestMscTextCodec(unittest.TestCase):
    """Pruebas del formato de texto de MSC."""

    def setUp(self):
        self.codec = MscTextCodec()

    def test_parse_three_process(self):
        """Prueba la lectura del fichero de referencia."""
        msc = self.codec.load(FIXTURES / "three_process.msc")
        self.assertEqual(msc, three_process())
        self.assertEqual(msc.labels.names, ("sq", "ci", "di"))

    def test_serialize_is_stable(self):
        """Prueba que serializar, leer y volver a serializar da el mismo texto."""
        text = self.codec.serialize(three_process())
        self.assertEqual(self.codec.serialize(self.codec.parse(text)), text)
        self.assertTrue(text.startswith("processes: p1 p2 p3\nlabels: sq ci di\n"))

    def test_missing_header(self):
        """Prueba que falta la cabecera de etiquetas."""
        with self.assertRaises(MscFormatError):
            self.codec.parse("processes: p\nevents p: e0:a\n")

    def test_bad_line(self):
        """Prueba que una línea mal formada informa de su número."""
        with self.assertRaises(MscFormatError) as info:
            self.codec.parse("processes: p\nlabels: a\nevents p e0:a\n")
        self.assertEqual(info.exception.line, 3)

    def test_duplicate_events_line(self):
        """Prueba que los eventos de un proceso solo se declaran una vez."""
        text = THREE_PROCESS + "events p1: x0:sq\n"
        with self.assertRaises(MscFormatError):
            self.codec.parse(text)

    def test_invalid_msc(self):
        """Prueba que un canal no FIFO se rechaza tras la lectura."""
        with self.assertRaises(MscValidationError) as info:
            self.codec.load(FIXTURES / "bad_fifo.msc")
        self.assertIn(NonFifoChannel, [type(v) for v in info.exception.violations])


class TestFormulaCodecs(unittest.TestCase):
    """Pruebas de los códecs de fórmulas."""

    def test_fo_fixture(self):
        """Prueba que el fichero de gossip equivale a la fórmula predefinida."""
        phi = FoCodec().load(FIXTURES / "gossip_p1_p3.fo")
        self.assertEqual(phi.free_vars, ())
        uc = FoUseCases()
        msc = three_process()
        self.assertTrue(uc.eval_fo(msc, phi))
        self.assertEqual(uc.eval_fo(msc, phi), uc.eval_fo(msc, fo.gossip("p1", "p3", msc.labels.names)))

    def test_fo_latest_fixture(self):
        """Prueba el fichero con latest_p1(x, y)."""
        phi = FoCodec().load(FIXTURES / "latest_p1.fo")
        self.assertEqual(phi.free_vars, ("x", "y"))

    def test_fo_errors(self):
        """Prueba operadores desconocidos y aridades incorrectas."""
        codec = FoCodec()
        with self.assertRaises(FormulaSyntaxError):
            codec.parse("(until x y)")
        with self.assertRaises(FormulaSyntaxError):
            codec.parse("(le x)")
        with self.assertRaises(FormulaSyntaxError):
            codec.parse("(exists (x) (le x x))")

    def test_fo_serialize(self):
        """Prueba la escritura de una fórmula FO."""
        phi = fo.Exists("z", fo.And((fo.MsgEdge("x", "z"), fo.LeProc("z", "y"))))
        self.assertEqual(FoCodec().serialize(phi), "(exists z (and (msg-edge x z) (le-proc z y)))")

    def test_pdl_sort_detection(self):
        """Prueba que parse distingue sentencias, fórmulas de evento y caminos."""
        codec = PdlCodec()
        self.assertIsInstance(codec.parse("(not (E (lab a)))"), pdl.Sentence)
        self.assertIsInstance(codec.parse("(not (lab a))"), pdl.EventFormula)
        self.assertIsInstance(codec.parse("(cat next (msg p q))"), pdl.PathFormula)
        self.assertEqual(codec.parse("plus+"), pdl.plus())
        self.assertEqual(codec.parse("star*"), pdl.star())

    def test_pdl_fixture(self):
        """Prueba el fichero del bucle de referencia."""
        node = PdlCodec().load(FIXTURES / "loop_g5.pdl")
        self.assertIsInstance(node, pdl.Loop)
        self.assertEqual(pdl.processes_of(node), {"p1", "p2", "p3"})

    def test_pdl_serialize(self):
        """Prueba la escritura con los atajos de →⁺ y →*."""
        codec = PdlCodec()
        node = pdl.Ex(pdl.concat(pdl.plus(), pdl.Msg("p1", "p2")), pdl.Lab("a"))
        self.assertEqual(codec.serialize(node), "(ex (cat plus+ (msg p1 p2)) (lab a))")
        self.assertEqual(codec.serialize(pdl.star()), "star*")

    def test_pdl_errors(self):
        """Prueba operadores desconocidos en cada clase sintáctica."""
        codec = PdlCodec()
        with self.assertRaises(FormulaSyntaxError):
            codec.parse("(ex nowhere (lab a))")
        with self.assertRaises(FormulaSyntaxError):
            codec.parse_sentence("(lab a)")
        with self.assertRaises(FormulaSyntaxError):
            codec.parse("(msg p)")


class TestCfmYamlCodec(unittest.TestCase):
    """Pruebas del documento YAML de CFMs."""

    def test_parse_small_cfm(self):
        """Prueba la lectura de un CFM de un mensaje."""
        cfm = CfmYamlCodec().parse(SMALL_CFM)
        self.assertEqual(cfm.size(), {"states": 4, "transitions": 2, "messages": 1, "rectangles": 1})
        (t,) = cfm.transitions["p"]
        self.assertEqual((t.kind, t.peer, t.msg), (ActionKind.SEND, "q", "m0"))

    def test_serialize_is_stable(self):
        """Prueba que el orden de campos es estable."""
        codec = CfmYamlCodec()
        text = codec.serialize(codec.parse(SMALL_CFM))
        self.assertEqual(codec.serialize(codec.parse(text)), text)
        self.assertTrue(text.startswith("processes:"))

    def test_transducer_labels_are_pairs(self):
        """Prueba que un transductor lee sus letras como pares."""
        doc = SMALL_CFM.replace("messages:", "gamma: [0, 1]\nfunctional: true\nmessages:")
        doc = doc.replace("send, a,", "send, [a, 1],").replace("receive, a,", "receive, [a, 0],")
        cfm = CfmYamlCodec().parse(doc)
        self.assertIsInstance(cfm, Transducer)
        self.assertEqual(cfm.transitions["p"][0].label, ("a", 1))

    def test_errors(self):
        """Prueba documentos incompletos, mal formados o inconsistentes."""
        codec = CfmYamlCodec()
        with self.assertRaises(CfmFormatError):
            codec.parse("processes: [p]\n")
        with self.assertRaises(CfmFormatError):
            codec.parse("[1, 2")
        with self.assertRaises(CfmFormatError):
            codec.parse(SMALL_CFM.replace("[s0, send, a, q, m0, s1]", "[s0, send, a, q, m9, s1]"))


def test_linword_parse_and_errors():
    codec = LinWordCodec()
    word = codec.parse("# palabra\n(a,p!q)\n(b,q?p)\n(a,p)\n")
    assert word == (LinLetter("a", "p!q"), LinLetter("b", "q?p"), LinLetter("a", "p"))
    assert [letter.process for letter in word] == ["p", "q", "p"]
    assert codec.serialize(word) == "(a,p!q)\n(b,q?p)\n(a,p)\n"
    with pytest.raises(MalformedWord):
        codec.parse("(a p!q)\n")


def test_codec_files(tmp_path):
    path = tmp_path / "m.msc"
    MscTextCodec().dump(three_process(), path)
    assert MscTextCodec().load(path) == three_process()
