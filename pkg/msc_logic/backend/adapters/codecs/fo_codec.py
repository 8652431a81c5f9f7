#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Códec de fórmulas FO[→,⊳,≤] en s-expresiones.

Gramática: (p proc v), (a label v), (= v w), (proc-edge v w), (msg-edge v w),
(le v w), (le-proc v w), (and ...), (or ...), (not f), (implies f g),
(exists v f), (forall v f).
"""

from ...core.entities import fo_formula as fo
from ...core.entities.errors import FormulaSyntaxError
from ...core.interfaces.codecs import Codec
from .sexpr import SExpr, expect_atom, expect_list, parse_sexpr, write_sexpr

_BINARY = {
    "=": fo.Eq,
    "proc-edge": fo.ProcEdge,
    "msg-edge": fo.MsgEdge,
    "le": fo.Le,
    "le-proc": fo.LeProc,
}
_BINARY_NAMES = {cls: name for name, cls in _BINARY.items()}


class FoCodec(Codec[fo.FoFormula]):
    """Traduce entre s-expresiones y fórmulas FO."""

    def parse(self, text: str) -> fo.FoFormula:
        return self.from_sexpr(parse_sexpr(text))

    def from_sexpr(self, expr: SExpr) -> fo.FoFormula:
        """
        Construye la fórmula de una s-expresión ya analizada.

        Raises:
            FormulaSyntaxError: Operador desconocido o aridad incorrecta
        """
        if not isinstance(expr, list) or not expr or isinstance(expr[0], list):
            raise FormulaSyntaxError(f"se esperaba una fórmula FO: {write_sexpr(expr)}")
        head = expr[0]
        if head == "p":
            proc, var = expect_list(expr, head, 2)
            return fo.ProcTest(expect_atom(proc, "un proceso"), expect_atom(var, "una variable"))
        if head == "a":
            label, var = expect_list(expr, head, 2)
            return fo.LabelTest(expect_atom(label, "una etiqueta"), expect_atom(var, "una variable"))
        if head in _BINARY:
            x, y = expect_list(expr, head, 2)
            return _BINARY[head](expect_atom(x, "una variable"), expect_atom(y, "una variable"))
        if head in ("and", "or"):
            if len(expr) < 2:
                raise FormulaSyntaxError(f"'{head}' necesita al menos un argumento")
            args = tuple(self.from_sexpr(e) for e in expr[1:])
            if len(args) == 1:
                return args[0]
            return fo.And(args) if head == "and" else fo.Or(args)
        if head == "not":
            (arg,) = expect_list(expr, head, 1)
            return fo.Not(self.from_sexpr(arg))
        if head == "implies":
            left, right = expect_list(expr, head, 2)
            return fo.Implies(self.from_sexpr(left), self.from_sexpr(right))
        if head in ("exists", "forall"):
            var, body = expect_list(expr, head, 2)
            cls = fo.Exists if head == "exists" else fo.Forall
            return cls(expect_atom(var, "una variable"), self.from_sexpr(body))
        raise FormulaSyntaxError(f"operador FO desconocido '{head}'")

    def to_sexpr(self, phi: fo.FoFormula) -> SExpr:
        if isinstance(phi, fo.ProcTest):
            return ["p", phi.proc, phi.var]
        if isinstance(phi, fo.LabelTest):
            return ["a", str(phi.label), phi.var]
        if isinstance(phi, fo.Eq):
            return ["=", phi.left, phi.right]
        if type(phi) in _BINARY_NAMES:
            return [_BINARY_NAMES[type(phi)], phi.src, phi.dst]
        if isinstance(phi, (fo.And, fo.Or)):
            return ["and" if isinstance(phi, fo.And) else "or"] + [self.to_sexpr(a) for a in phi.args]
        if isinstance(phi, fo.Not):
            return ["not", self.to_sexpr(phi.arg)]
        if isinstance(phi, fo.Implies):
            return ["implies", self.to_sexpr(phi.left), self.to_sexpr(phi.right)]
        if isinstance(phi, (fo.Exists, fo.Forall)):
            return ["exists" if isinstance(phi, fo.Exists) else "forall", phi.var, self.to_sexpr(phi.body)]
        raise TypeError(f"nodo FO desconocido: {phi!r}")

    def serialize(self, value: fo.FoFormula) -> str:
        return write_sexpr(self.to_sexpr(value))
