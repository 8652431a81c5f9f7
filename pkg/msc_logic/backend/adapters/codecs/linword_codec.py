#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Códec de palabras de linealización: un par "(etiqueta,tipo)" por línea.

El tipo se escribe `p` (evento interno), `p!q` (envío) o `q?p` (recepción).
"""

from typing import Tuple

import pyparsing as pp

from ...core.entities.errors import MalformedWord
from ...core.entities.msc import LinLetter
from ...core.interfaces.codecs import Codec

_PROC = pp.Word(pp.alphanums + "_-.'")
_TYPE = pp.Combine(_PROC + pp.Optional(pp.one_of("! ?") + _PROC))
_LETTER = pp.Suppress("(") + pp.Word(pp.alphanums + "_-.'") + pp.Suppress(",") + _TYPE + pp.Suppress(")")


class LinWordCodec(Codec[Tuple[LinLetter, ...]]):
    """Lee y escribe palabras sobre Σ_lin."""

    def parse(self, text: str) -> Tuple[LinLetter, ...]:
        word = []
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                label, kind = _LETTER.parse_string(line, parse_all=True)
            except pp.ParseException as exc:
                raise MalformedWord(f"línea {number}: se esperaba (etiqueta,tipo): {line}") from exc
            word.append(LinLetter(label, kind))
        return tuple(word)

    def serialize(self, value: Tuple[LinLetter, ...]) -> str:
        return "".join(f"({letter.label},{letter.type})\n" for letter in value)
