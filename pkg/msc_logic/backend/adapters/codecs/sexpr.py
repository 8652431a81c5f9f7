#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Lectura y escritura de s-expresiones.

Las fórmulas FO y PDL se escriben como s-expresiones. Este módulo solo
conoce la sintaxis: átomos, listas entre paréntesis y comentarios `;`.
La interpretación de cada operador es cosa de los códecs de fórmulas.
"""

from typing import List, Union

import pyparsing as pp

from ...core.entities.errors import FormulaSyntaxError

SExpr = Union[str, List["SExpr"]]

_ATOM = pp.QuotedString('"', esc_char="\\") | pp.Word(pp.printables, exclude_chars='();"')
_LPAR, _RPAR = map(pp.Suppress, "()")
_SEXPR = pp.Forward()
_SEXPR <<= _ATOM | pp.Group(_LPAR + pp.ZeroOrMore(_SEXPR) + _RPAR)
_SEXPR.ignore(pp.Suppress(pp.Regex(r";[^\n]*")))


def parse_sexpr(text: str) -> SExpr:
    """
    Analiza una única s-expresión.

    Args:
        text: Texto con exactamente una s-expresión

    Returns:
        Un átomo (str) o una lista anidada

    Raises:
        FormulaSyntaxError: Con la línea y columna del error
    """
    try:
        result = _SEXPR.parse_string(text, parse_all=True)
    except pp.ParseException as exc:
        raise FormulaSyntaxError(f"s-expresión mal formada: {exc.msg}", exc.lineno, exc.col) from exc
    return result.as_list()[0]


def _needs_quotes(atom: str) -> bool:
    return not atom or any(c.isspace() or c in '();"' for c in atom)


def write_sexpr(expr: SExpr) -> str:
    """Escribe una s-expresión en una sola línea."""
    if isinstance(expr, list):
        return "(" + " ".join(write_sexpr(e) for e in expr) + ")"
    atom = str(expr)
    if _needs_quotes(atom):
        return '"' + atom.replace("\\", "\\\\").replace('"', '\\"') + '"'
    return atom


def expect_list(expr: SExpr, head: str, arity: int) -> List[SExpr]:
    """
    Comprueba que `expr` es `(head a1 ... an)` con n = arity y devuelve los argumentos.

    Raises:
        FormulaSyntaxError: Si el número de argumentos no coincide
    """
    if not isinstance(expr, list) or len(expr) != arity + 1:
        raise FormulaSyntaxError(f"'{head}' espera {arity} argumentos: {write_sexpr(expr)}")
    return expr[1:]


def expect_atom(expr: SExpr, what: str) -> str:
    if isinstance(expr, list):
        raise FormulaSyntaxError(f"se esperaba {what}, se encontró {write_sexpr(expr)}")
    return expr
