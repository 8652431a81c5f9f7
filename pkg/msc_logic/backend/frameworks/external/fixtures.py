#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
MSCs de referencia.

THREE_PROCESS es el MSC de tres procesos con etiquetas sq, ci y di usado como
ejemplo a lo largo de la documentación; FOUR_PROCESS es el MSC de cuatro
procesos en el que la linealización canónica ⊏_1 pone b1 antes que c1.
"""

from pathlib import Path
from typing import Dict, List

from ...adapters.codecs.msc_codec import MscTextCodec
from ...core.entities.msc import Msc, RawMsc

THREE_PROCESS = """\
# MSC de tres procesos (sq, ci, di)
processes: p1 p2 p3
labels: sq ci di
events p1: e0:sq e1:sq e2:ci e3:sq e4:sq e5:ci e6:sq e7:ci
events p2: f0:di f1:di f2:di f3:di f4:di f5:di f6:di f7:di
events p3: g0:sq g1:ci g2:ci g3:sq g4:ci g5:ci g6:sq g7:ci
msg e0 g0 ; msg e1 f0 ; msg e2 g1 ; msg f1 g2 ; msg e3 f2 ; msg f3 g3
msg e4 g5 ; msg e5 f4 ; msg f5 g4 ; msg e6 g6 ; msg e7 f6 ; msg f7 g7
"""

FOUR_PROCESS = """\
# MSC de cuatro procesos para la linealización canónica
processes: p1 p2 p3 p4
labels: a
events p1: a1:a a2:a a3:a a4:a
events p2: b1:a b2:a b3:a b4:a b5:a b6:a
events p3: c1:a c2:a c3:a c4:a c5:a
events p4: d1:a d2:a d3:a
msg a1 b1 ; msg a2 b2 ; msg a3 b4 ; msg a4 b6
msg b3 c3 ; msg b5 c5 ; msg d1 c1 ; msg d2 c2 ; msg d3 c4
"""

FIXTURES: Dict[str, str] = {"three_process": THREE_PROCESS, "four_process": FOUR_PROCESS}


def three_process() -> Msc:
    return MscTextCodec().parse(THREE_PROCESS)


def four_process() -> Msc:
    return MscTextCodec().parse(FOUR_PROCESS)


def ladder(count: int, src: str = "p", dst: str = "q", label: str = "a") -> Msc:
    """
    `count` mensajes de `src` a `dst`, todos enviados antes de la primera recepción.

    Es ∀B-acotado exactamente para B ≥ count.
    """
    raw = RawMsc([src, dst], [label],
                 {src: [(f"s{k}", label) for k in range(count)],
                  dst: [(f"r{k}", label) for k in range(count)]},
                 [(f"s{k}", f"r{k}") for k in range(count)])
    return Msc.from_raw(raw)


def chain(processes: List[str], label: str = "a") -> Msc:
    """Un único mensaje entre cada par de procesos consecutivos (orden total)."""
    events = {p: [] for p in processes}
    messages = []
    for k, (p, q) in enumerate(zip(processes, processes[1:])):
        events[p].append((f"s{k}", label))
        events[q].append((f"r{k}", label))
        messages.append((f"s{k}", f"r{k}"))
    return Msc.from_raw(RawMsc(list(processes), [label], events, messages))


def write_fixtures(directory: Path) -> List[Path]:
    """Escribe los ficheros .msc de referencia en `directory`."""
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in FIXTURES.items():
        path = directory / f"{name}.msc"
        path.write_text(text, encoding="utf-8")
        written.append(path)
    return written
