#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Códec de fórmulas PDL en s-expresiones.

Sentencias: (E f), (or s ...), (not s).
Fórmulas de evento: (at p), (lab a), (lab-in a ...), true, false, (or ...),
(and ...), (not f), (implies f g), (ex pi f), (loop pi), (shaped-loop pi),
(shaped-loop-back pi).
Caminos: next, prev, plus+, star*, (msg p q), (msg-inv p q), (guard-> f),
(guard<- f), (jump p q), (test f), (cat pi ...), (cup pi ...), (cap pi ...),
(comp pi).

`or` y `not` aparecen en sentencias y en fórmulas de evento; `parse` decide
por el contenido: es sentencia si su primer argumento lo es.
"""

from typing import Union as TUnion

from ...core.entities import pdl_formula as pdl
from ...core.entities.errors import FormulaSyntaxError
from ...core.interfaces.codecs import Codec
from .sexpr import SExpr, expect_atom, expect_list, parse_sexpr, write_sexpr

AnyPdl = TUnion[pdl.Sentence, pdl.EventFormula, pdl.PathFormula]

_PATH_ATOMS = {"next", "prev", "plus+", "star*"}
_PATH_HEADS = {"msg", "msg-inv", "guard->", "guard<-", "jump", "test", "cat", "cup", "cap", "comp"}


def _head(expr: SExpr) -> str:
    if isinstance(expr, list):
        if not expr or isinstance(expr[0], list):
            raise FormulaSyntaxError(f"se esperaba un operador: {write_sexpr(expr)}")
        return expr[0]
    return expr


def _is_sentence(expr: SExpr) -> bool:
    head = _head(expr)
    if head == "E" and isinstance(expr, list):
        return True
    if head in ("or", "not") and isinstance(expr, list) and len(expr) > 1:
        return _is_sentence(expr[1])
    return False


def _is_path(expr: SExpr) -> bool:
    head = _head(expr)
    return head in _PATH_ATOMS if not isinstance(expr, list) else head in _PATH_HEADS


class PdlCodec(Codec[AnyPdl]):
    """Traduce entre s-expresiones y las tres clases sintácticas de PDL."""

    def parse(self, text: str) -> AnyPdl:
        expr = parse_sexpr(text)
        if _is_sentence(expr):
            return self.sentence(expr)
        if _is_path(expr):
            return self.path(expr)
        return self.event(expr)

    def parse_sentence(self, text: str) -> pdl.Sentence:
        return self.sentence(parse_sexpr(text))

    def parse_event(self, text: str) -> pdl.EventFormula:
        return self.event(parse_sexpr(text))

    def parse_path(self, text: str) -> pdl.PathFormula:
        return self.path(parse_sexpr(text))

    # --- Lectura ---

    def sentence(self, expr: SExpr) -> pdl.Sentence:
        head = _head(expr)
        if head == "E":
            (arg,) = expect_list(expr, head, 1)
            return pdl.E(self.event(arg))
        if head == "or" and isinstance(expr, list) and len(expr) > 1:
            args = tuple(self.sentence(e) for e in expr[1:])
            return args[0] if len(args) == 1 else pdl.SentenceOr(args)
        if head == "not":
            (arg,) = expect_list(expr, head, 1)
            return pdl.SentenceNot(self.sentence(arg))
        raise FormulaSyntaxError(f"se esperaba una sentencia: {write_sexpr(expr)}")

    def event(self, expr: SExpr) -> pdl.EventFormula:
        if not isinstance(expr, list):
            if expr == "true":
                return pdl.TRUE
            if expr == "false":
                return pdl.FALSE
            raise FormulaSyntaxError(f"fórmula de evento desconocida '{expr}'")
        head = _head(expr)
        if head == "at":
            (proc,) = expect_list(expr, head, 1)
            return pdl.At(expect_atom(proc, "un proceso"))
        if head == "lab":
            (label,) = expect_list(expr, head, 1)
            return pdl.Lab(expect_atom(label, "una etiqueta"))
        if head == "lab-in":
            return pdl.LabelIn(tuple(expect_atom(a, "una etiqueta") for a in expr[1:]))
        if head in ("or", "and"):
            if len(expr) < 2:
                raise FormulaSyntaxError(f"'{head}' necesita al menos un argumento")
            args = tuple(self.event(e) for e in expr[1:])
            if len(args) == 1:
                return args[0]
            return pdl.Or(args) if head == "or" else pdl.And(args)
        if head == "not":
            (arg,) = expect_list(expr, head, 1)
            return pdl.Not(self.event(arg))
        if head == "implies":
            left, right = expect_list(expr, head, 2)
            return pdl.Implies(self.event(left), self.event(right))
        if head == "ex":
            path, arg = expect_list(expr, head, 2)
            return pdl.Ex(self.path(path), self.event(arg))
        if head == "loop":
            (path,) = expect_list(expr, head, 1)
            return pdl.Loop(self.path(path))
        if head in ("shaped-loop", "shaped-loop-back"):
            (path,) = expect_list(expr, head, 1)
            return pdl.ShapedLoop(self.path(path), head == "shaped-loop-back")
        raise FormulaSyntaxError(f"operador de evento desconocido '{head}'")

    def path(self, expr: SExpr) -> pdl.PathFormula:
        if not isinstance(expr, list):
            if expr == "next":
                return pdl.NEXT
            if expr == "prev":
                return pdl.PREV
            if expr == "plus+":
                return pdl.plus()
            if expr == "star*":
                return pdl.star()
            raise FormulaSyntaxError(f"camino desconocido '{expr}'")
        head = _head(expr)
        if head in ("msg", "msg-inv", "jump"):
            src, dst = (expect_atom(e, "un proceso") for e in expect_list(expr, head, 2))
            cls = {"msg": pdl.Msg, "msg-inv": pdl.MsgInv, "jump": pdl.Jump}[head]
            return cls(src, dst)
        if head in ("guard->", "guard<-", "test"):
            (cond,) = expect_list(expr, head, 1)
            cls = {"guard->": pdl.GuardRight, "guard<-": pdl.GuardLeft, "test": pdl.Test}[head]
            return cls(self.event(cond))
        if head in ("cat", "cup", "cap"):
            if len(expr) < 2:
                raise FormulaSyntaxError(f"'{head}' necesita al menos un argumento")
            parts = tuple(self.path(e) for e in expr[1:])
            if len(parts) == 1:
                return parts[0]
            return {"cat": pdl.Concat, "cup": pdl.Union, "cap": pdl.Inter}[head](parts)
        if head == "comp":
            (arg,) = expect_list(expr, head, 1)
            return pdl.Complement(self.path(arg))
        raise FormulaSyntaxError(f"operador de camino desconocido '{head}'")

    # --- Escritura ---

    def to_sexpr(self, node: AnyPdl) -> SExpr:
        if isinstance(node, pdl.E):
            return ["E", self.to_sexpr(node.arg)]
        if isinstance(node, pdl.SentenceOr):
            return ["or"] + [self.to_sexpr(a) for a in node.args]
        if isinstance(node, pdl.SentenceNot):
            return ["not", self.to_sexpr(node.arg)]
        if isinstance(node, pdl.EventFormula):
            return self._event_sexpr(node)
        return self._path_sexpr(node)

    def _event_sexpr(self, node: pdl.EventFormula) -> SExpr:
        if isinstance(node, pdl.Verum):
            return "true"
        if isinstance(node, pdl.Falsum):
            return "false"
        if isinstance(node, pdl.At):
            return ["at", node.proc]
        if isinstance(node, pdl.Lab):
            return ["lab", str(node.label)]
        if isinstance(node, pdl.LabelIn):
            return ["lab-in"] + [str(a) for a in node.labels]
        if isinstance(node, (pdl.Or, pdl.And)):
            return ["or" if isinstance(node, pdl.Or) else "and"] + [self.to_sexpr(a) for a in node.args]
        if isinstance(node, pdl.Not):
            return ["not", self.to_sexpr(node.arg)]
        if isinstance(node, pdl.Implies):
            return ["implies", self.to_sexpr(node.left), self.to_sexpr(node.right)]
        if isinstance(node, pdl.Ex):
            return ["ex", self.to_sexpr(node.path), self.to_sexpr(node.arg)]
        if isinstance(node, pdl.Loop):
            return ["loop", self.to_sexpr(node.path)]
        if isinstance(node, pdl.ShapedLoop):
            return ["shaped-loop-back" if node.back else "shaped-loop", self.to_sexpr(node.core)]
        raise TypeError(f"fórmula de evento desconocida: {node!r}")

    def _path_sexpr(self, node: pdl.PathFormula) -> SExpr:
        if node == pdl.star():
            return "star*"
        if isinstance(node, pdl.Next):
            return "next"
        if isinstance(node, pdl.Prev):
            return "prev"
        if isinstance(node, pdl.GuardRight) and isinstance(node.cond, pdl.Verum):
            return "plus+"
        if isinstance(node, (pdl.Msg, pdl.MsgInv, pdl.Jump)):
            head = {pdl.Msg: "msg", pdl.MsgInv: "msg-inv", pdl.Jump: "jump"}[type(node)]
            return [head, node.src, node.dst]
        if isinstance(node, (pdl.GuardRight, pdl.GuardLeft, pdl.Test)):
            head = {pdl.GuardRight: "guard->", pdl.GuardLeft: "guard<-", pdl.Test: "test"}[type(node)]
            return [head, self.to_sexpr(node.cond)]
        if isinstance(node, (pdl.Concat, pdl.Union, pdl.Inter)):
            head = {pdl.Concat: "cat", pdl.Union: "cup", pdl.Inter: "cap"}[type(node)]
            return [head] + [self.to_sexpr(p) for p in node.parts]
        if isinstance(node, pdl.Complement):
            return ["comp", self.to_sexpr(node.arg)]
        raise TypeError(f"camino desconocido: {node!r}")

    def serialize(self, value: AnyPdl) -> str:
        return write_sexpr(self.to_sexpr(value))
