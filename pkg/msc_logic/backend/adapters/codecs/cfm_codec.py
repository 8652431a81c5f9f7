#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Códec YAML de CFMs y transductores explícitos.

Documento con orden de campos estable::

    processes: [p, q]
    sigma: [a, b]
    gamma: [0, 1]          # solo transductores
    functional: true       # solo transductores
    messages: [m0]
    states: {p: [s0, s1], q: [s0]}
    initial: {p: s0, q: s0}
    transitions:
      p:
      - [s0, send, a, q, m0, s1]
    acceptance:
    - {p: [s1]}

Las etiquetas de un transductor son pares [σ, γ]. Las listas YAML anidadas
se leen como tuplas para que estados y letras sean hashables.
"""

from enum import Enum
from typing import Any, Dict

import yaml

from ...core.entities.cfm import Cfm, Transducer
from ...core.entities.errors import CfmFormatError, ValidationError
from ...core.entities.msc import ProcessSet
from ...core.entities.transition import ActionKind, Transition
from ...core.interfaces.codecs import Codec


def _plain(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    if isinstance(value, frozenset):
        return [_plain(v) for v in sorted(value, key=repr)]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    return value


def _frozen(value: Any) -> Any:
    if isinstance(value, list):
        return tuple(_frozen(v) for v in value)
    return value


class CfmYamlCodec(Codec[Cfm]):
    """Lee y escribe CFMs y transductores en YAML."""

    def to_document(self, cfm: Cfm) -> Dict[str, Any]:
        """Diccionario serializable con el orden de campos fijo."""
        doc: Dict[str, Any] = {"processes": list(cfm.processes.names), "sigma": _plain(cfm.sigma)}
        if cfm.gamma is not None:
            doc["gamma"] = _plain(cfm.gamma)
            doc["functional"] = cfm.functional
        doc["messages"] = _plain(cfm.messages)
        doc["states"] = {p: _plain(cfm.states[p]) for p in cfm.processes}
        doc["initial"] = {p: _plain(cfm.initial[p]) for p in cfm.processes}
        doc["transitions"] = {
            p: [[_plain(t.source), t.kind.value, _plain(t.label), t.peer, _plain(t.msg), _plain(t.target)]
                for t in cfm.transitions.get(p, ())]
            for p in cfm.processes
        }
        doc["acceptance"] = [{p: _plain(allowed) for p, allowed in rect.items()} for rect in cfm.acceptance]
        return doc

    def from_document(self, doc: Any) -> Cfm:
        """
        Construye el CFM de un documento ya cargado.

        Raises:
            CfmFormatError: Campos ausentes o con forma incorrecta
        """
        if not isinstance(doc, dict):
            raise CfmFormatError("el documento CFM debe ser un diccionario")
        missing = [k for k in ("processes", "sigma", "states", "initial", "transitions", "acceptance")
                   if k not in doc]
        if missing:
            raise CfmFormatError(f"faltan campos: {missing}")
        try:
            processes = ProcessSet(tuple(doc["processes"]))
            transitions = {}
            for p, rows in (doc["transitions"] or {}).items():
                found = []
                for row in rows or ():
                    if len(row) != 6:
                        raise CfmFormatError(f"proceso {p}: transición con {len(row)} campos: {row}")
                    source, kind, label, peer, msg, target = row
                    found.append(Transition(_frozen(source), ActionKind(kind), _frozen(label), peer,
                                            _frozen(msg), _frozen(target)))
                transitions[p] = tuple(found)
            kwargs = dict(
                processes=processes,
                sigma=_frozen(list(doc["sigma"])),
                messages=_frozen(list(doc.get("messages") or [])),
                states={p: _frozen(list(s)) for p, s in doc["states"].items()},
                initial={p: _frozen(s) for p, s in doc["initial"].items()},
                transitions=transitions,
                acceptance=tuple({p: frozenset(_frozen(list(s))) for p, s in rect.items()}
                                 for rect in doc["acceptance"] or ()),
            )
        except (TypeError, ValueError, AttributeError, ValidationError) as exc:
            raise CfmFormatError(f"documento CFM mal formado: {exc}") from exc
        if doc.get("gamma") is None:
            return Cfm(**kwargs)
        return Transducer(gamma=_frozen(list(doc["gamma"])), functional=bool(doc.get("functional", False)),
                          **kwargs)

    def parse(self, text: str) -> Cfm:
        try:
            doc = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise CfmFormatError(f"YAML inválido: {exc}") from exc
        return self.from_document(doc)

    def serialize(self, value: Cfm) -> str:
        return yaml.safe_dump(self.to_document(value), sort_keys=False, allow_unicode=True,
                              default_flow_style=None)
