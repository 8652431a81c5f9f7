#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Presentación de informes.

Un informe se emite como JSON determinista (para CI) o como tablas de rich
para lectura humana. La presentación nunca modifica el informe.
"""

import json
from typing import Any, Optional

from rich.console import Console
from rich.markup import escape
from rich.table import Table

from ...core.entities.report import Report

_VERDICT_STYLE = {True: "bold green", False: "bold red", None: "dim"}


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((_jsonable(v) for v in value), key=repr)
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


class ReportPresenter:
    """
    Convierte informes en texto.

    Attributes:
        console: Consola de rich donde se escribe
    """

    def __init__(self, console: Optional[Console] = None):
        self.console = console or Console()

    def to_json(self, report: Report) -> str:
        """JSON con orden de claves fijo y sin espacios finales."""
        return json.dumps(_jsonable(report.to_dict()), ensure_ascii=False, indent=2)

    def show_json(self, report: Report) -> None:
        self.console.out(self.to_json(report), highlight=False)

    def show(self, report: Report) -> None:
        """Muestra el informe como tablas."""
        data = _jsonable(report.to_dict())
        title = f"msc_logic {report.command}"
        table = Table(title=title, show_header=True, header_style="bold")
        table.add_column("Campo")
        table.add_column("Valor", overflow="fold")
        for key, value in data.get("inputs", {}).items():
            table.add_row(f"entrada: {key}", escape(str(value)))
        if report.verdict is not None:
            table.add_row("veredicto", f"[{_VERDICT_STYLE[report.verdict]}]{report.verdict}[/]")
        if report.error is not None:
            message = escape(str(report.error.get("message")))
            table.add_row("error", f"[bold red]{report.error.get('error')}[/]: {message}")
        self.console.print(table)
        if report.result is not None:
            self._show_result(data["result"])
        if report.statistics:
            stats = Table(title="estadísticas", show_header=False)
            for key, value in data["statistics"].items():
                stats.add_row(key, escape(str(value)))
            self.console.print(stats)
        if report.timings:
            times = Table(title="tiempos (s)", show_header=False)
            for key, value in report.timings.items():
                times.add_row(key, f"{value:.4f}")
            self.console.print(times)

    def _show_result(self, result: Any) -> None:
        if isinstance(result, list) and result and all(isinstance(r, list) for r in result):
            table = Table(title="resultado", show_header=False)
            for row in result:
                table.add_row(*(escape(str(c)) for c in row))
            self.console.print(table)
        elif isinstance(result, list):
            shown = ", ".join(str(r) for r in result) or "∅"
            self.console.print("resultado:", escape(shown), highlight=False)
        else:
            self.console.print(f"resultado: {result}", highlight=False, markup=False)
