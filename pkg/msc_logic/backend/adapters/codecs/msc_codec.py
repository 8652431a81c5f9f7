#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Códec del formato de texto de MSC.

Formato (UTF-8, por líneas, comentarios con '#')::

    processes: p1 p2 p3
    labels: sq ci di
    events p1: e0:sq e1:sq e2:ci
    msg e0 g0 ; msg e1 f0

Cada línea `events` da la secuencia completa de un proceso; las líneas
`msg` pueden repetirse y llevar varios mensajes separados por ';'.
"""

import logging
from typing import Optional, Sequence

import pyparsing as pp

from ...core.entities.errors import MscFormatError
from ...core.entities.msc import Msc, RawMsc
from ...core.interfaces.codecs import Codec
from ...core.use_cases.msc_use_cases import MscUseCases

logger = logging.getLogger(__name__)

_NAME = pp.Word(pp.alphanums + "_-.'")
_COLON = pp.Suppress(":")
_PROCESSES = pp.Keyword("processes") + _COLON + pp.Group(pp.OneOrMore(_NAME))
_LABELS = pp.Keyword("labels") + _COLON + pp.Group(pp.OneOrMore(_NAME))
_EVENTS = (pp.Keyword("events") + _NAME + _COLON
           + pp.Group(pp.ZeroOrMore(pp.Group(_NAME + _COLON + _NAME))))
_MESSAGE = pp.Group(pp.Suppress(pp.Keyword("msg")) + _NAME + _NAME)
_MESSAGES = pp.Group(pp.DelimitedList(_MESSAGE, delim=";"))("messages")
_LINE = _PROCESSES | _LABELS | _EVENTS | _MESSAGES

MESSAGES_PER_LINE = 6


class MscTextCodec(Codec[Msc]):
    """Lee y escribe MSCs en el formato de texto por líneas."""

    def __init__(self, mscs: Optional[MscUseCases] = None):
        self.mscs = mscs or MscUseCases()

    def parse_raw(self, text: str) -> RawMsc:
        """
        Analiza el texto sin validar los invariantes del MSC.

        Raises:
            MscFormatError: Línea mal formada o cabecera repetida o ausente
        """
        raw = RawMsc()
        seen = set()
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                tokens = _LINE.parse_string(line, parse_all=True)
            except pp.ParseException as exc:
                raise MscFormatError(f"línea mal formada ({exc.msg}): {line}", number) from exc
            if "messages" in tokens:
                raw.messages.extend((s, r) for s, r in tokens["messages"])
                continue
            kind = tokens[0]
            if kind == "processes" or kind == "labels":
                if kind in seen:
                    raise MscFormatError(f"'{kind}' declarado dos veces", number)
                seen.add(kind)
                if kind == "processes":
                    raw.processes = list(tokens[1])
                else:
                    raw.labels = list(tokens[1])
            else:
                proc = tokens[1]
                if proc in raw.proc_events:
                    raise MscFormatError(f"eventos de '{proc}' declarados dos veces", number)
                raw.proc_events[proc] = [(eid, label) for eid, label in tokens[2]]
        for kind in ("processes", "labels"):
            if kind not in seen:
                raise MscFormatError(f"falta la cabecera '{kind}'")
        for p in raw.processes:
            raw.proc_events.setdefault(p, [])
        logger.debug("MSC leído: %d procesos, %d mensajes", len(raw.processes), len(raw.messages))
        return raw

    def parse(self, text: str) -> Msc:
        """
        Analiza y valida un MSC.

        Raises:
            MscFormatError: Error de sintaxis
            MscValidationError: MSC inválido (todas las violaciones)
        """
        return self.mscs.validate(self.parse_raw(text))

    def serialize(self, value: Msc) -> str:
        raw = value.to_raw()
        lines = [
            "processes: " + " ".join(raw.processes),
            "labels: " + " ".join(str(a) for a in raw.labels),
        ]
        for p in raw.processes:
            events = " ".join(f"{eid}:{label}" for eid, label in raw.proc_events[p])
            lines.append(f"events {p}: {events}".rstrip())
        lines.extend(_message_lines(raw.messages))
        return "\n".join(lines) + "\n"


def _message_lines(messages: Sequence) -> list:
    return [" ; ".join(f"msg {s} {r}" for s, r in messages[k:k + MESSAGES_PER_LINE])
            for k in range(0, len(messages), MESSAGES_PER_LINE)]
