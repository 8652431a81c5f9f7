#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Controlador de la línea de comandos.

Cada subcomando lee sus entradas con los códecs, llama a los casos de uso y
construye un Report que el presentador emite como tablas o como JSON. Los
errores del dominio se convierten en un informe de error con el código de
salida de su clase.
"""

import argparse
import logging
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Sequence

from rich.console import Console
from rich.logging import RichHandler

from ...adapters.codecs import CfmYamlCodec, FoCodec, LinWordCodec, MscTextCodec, PdlCodec
from ...adapters.presenters import ReportPresenter
from ...core.entities import fo_formula as fo
from ...core.entities import pdl_formula as pdl
from ...core.entities.errors import MscLogicError, ValidationError
from ...core.entities.msc import Msc
from ...core.entities.report import Report
from ...core.entities.settings import Settings
from ...core.interfaces.codecs import Codec
from ...core.use_cases.bounds_use_cases import BoundsUseCases
from ...core.use_cases.cfm_use_cases import CfmUseCases
from ...core.use_cases.fo2pdl_use_cases import Fo2PdlUseCases
from ...core.use_cases.fo_use_cases import FoUseCases
from ...core.use_cases.pdl2cfm_use_cases import Pdl2CfmUseCases
from ...core.use_cases.pdl_use_cases import PdlUseCases
from ..config import SettingsLoader
from ..external.difftest_service import DifftestService, Stage

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 5


def _split(value: str) -> List[str]:
    return [v for v in value.replace(",", " ").split() if v]


class CliController:
    """
    Orquesta los subcomandos de msc_logic.

    Attributes:
        loader: Cargador de configuración
        presenter: Presentador de informes
    """

    def __init__(self, loader: Optional[SettingsLoader] = None,
                 presenter: Optional[ReportPresenter] = None):
        self.loader = loader or SettingsLoader()
        self.presenter = presenter or ReportPresenter()
        self.settings = Settings()
        self.parser = self.build_parser()
        self._timings: Optional[Dict[str, float]] = None

    # --- Argumentos ---

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="msc_logic",
            description="Lógica sobre MSCs: FO, PDL sin estrella, autómatas comunicantes y acotación",
        )
        parser.add_argument("--config", help="Fichero YAML de configuración")
        parser.add_argument("--json", action="store_true", help="Emitir el informe en JSON")
        parser.add_argument("--verbose", "-v", action="store_true", help="Registro en nivel DEBUG")
        parser.add_argument("--timings", action="store_true", help="Incluir tiempos en el informe")
        sub = parser.add_subparsers(dest="command", metavar="COMANDO")
        sub.required = True

        cmd = sub.add_parser("eval-fo", help="Evalúa una fórmula FO sobre un MSC")
        cmd.add_argument("--msc", required=True, help="Fichero .msc")
        source = cmd.add_mutually_exclusive_group(required=True)
        source.add_argument("--formula", help="Fichero con la fórmula FO (s-expresión)")
        source.add_argument("--builtin", help="Fórmula predefinida: gossip:P,Q o latest:P")
        cmd.add_argument("--bind", action="append", default=[], metavar="VAR=EVENTO",
                         help="Valor de una variable libre (repetible)")

        cmd = sub.add_parser("eval-pdl", help="Evalúa una fórmula PDL sobre un MSC")
        cmd.add_argument("--msc", required=True)
        cmd.add_argument("--formula", required=True, help="Fichero con la fórmula PDL")
        where = cmd.add_mutually_exclusive_group()
        where.add_argument("--at", metavar="EVENTO", help="Evaluar en un evento")
        where.add_argument("--pairs", action="store_true", help="Listar los pares de un camino")

        cmd = sub.add_parser("translate-fo", help="Traduce FO a PDL sin estrella")
        cmd.add_argument("--formula", required=True)
        cmd.add_argument("--processes", required=True, help="Procesos, separados por comas")
        cmd.add_argument("--budget", type=int, help="Nodos máximos de la traducción")

        cmd = sub.add_parser("compile", help="Compila una fórmula a un CFM")
        cmd.add_argument("--formula", required=True)
        logic = cmd.add_mutually_exclusive_group(required=True)
        logic.add_argument("--fo", action="store_true", help="La fórmula es una sentencia FO")
        logic.add_argument("--pdl", action="store_true", help="La fórmula es PDL (sentencia o evento)")
        cmd.add_argument("--msc", help="Tomar procesos y etiquetas de este MSC")
        cmd.add_argument("--processes", help="Procesos, separados por comas")
        cmd.add_argument("--labels", help="Etiquetas, separadas por comas")
        cmd.add_argument("--emit-cfm", metavar="RUTA", help="Escribir el CFM materializado en YAML")

        cmd = sub.add_parser("run-cfm", help="Busca una ejecución aceptadora")
        cmd.add_argument("--cfm", required=True, help="Fichero YAML del CFM")
        cmd.add_argument("--msc", required=True)

        cmd = sub.add_parser("bounded", help="∃B / ∀B-acotación de un MSC")
        cmd.add_argument("--msc", required=True)
        cmd.add_argument("--B", dest="bound", type=int, required=True, help="Cota B")
        cmd.add_argument("--forall", action="store_true", help="Comprobar ∀B en lugar de ∃B")
        cmd.add_argument("--brute-force", action="store_true", help="Enumerar linealizaciones (∀B)")

        cmd = sub.add_parser("linearize", help="Palabra de la linealización canónica")
        cmd.add_argument("--msc", required=True)
        cmd.add_argument("--B", dest="bound", type=int, required=True)

        cmd = sub.add_parser("difftest", help="Pruebas diferenciales aleatorias")
        cmd.add_argument("--seed", type=int)
        cmd.add_argument("--count", type=int)
        cmd.add_argument("--max-events", type=int)
        cmd.add_argument("--stage", choices=[s.value for s in Stage], default=Stage.ALL.value)
        cmd.add_argument("--out", metavar="DIR", help="Directorio para el contraejemplo")
        return parser

    # --- Ejecución ---

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """
        Ejecuta la CLI.

        Args:
            argv: Argumentos (por defecto, sys.argv[1:])

        Returns:
            Código de salida
        """
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as exc:
            return EXIT_OK if exc.code in (None, 0) else EXIT_USAGE
        self.configure_logging(args.verbose)
        self._timings = {} if args.timings else None
        handlers: Dict[str, Callable[[argparse.Namespace], Report]] = {
            "eval-fo": self.eval_fo,
            "eval-pdl": self.eval_pdl,
            "translate-fo": self.translate_fo,
            "compile": self.compile,
            "run-cfm": self.run_cfm,
            "bounded": self.bounded,
            "linearize": self.linearize,
            "difftest": self.difftest,
        }
        try:
            self.settings = self.loader.load(args.config)
            with self._timed("total"):
                report = handlers[args.command](args)
        except _UsageError as exc:
            self.parser.print_usage()
            logger.error("%s", exc)
            return EXIT_USAGE
        except MscLogicError as exc:
            logger.debug("error del dominio", exc_info=True)
            report = Report(args.command, error=exc.to_dict(), exit_code=exc.exit_code)
        except Exception as exc:
            logger.exception("error inesperado en %s", args.command)
            report = Report(args.command, error={"error": type(exc).__name__, "message": str(exc)},
                            exit_code=EXIT_INTERNAL)
        else:
            report.exit_code = EXIT_FALSE if report.verdict is False else EXIT_OK
            report.timings = self._timings
        if args.json:
            self.presenter.show_json(report)
        else:
            self.presenter.show(report)
        return report.exit_code

    @staticmethod
    def configure_logging(verbose: bool) -> None:
        """Instala RichHandler (stderr) en el registrador raíz."""
        logging.basicConfig(
            level=logging.DEBUG if verbose else logging.WARNING,
            format="%(message)s",
            handlers=[RichHandler(console=Console(stderr=True), show_path=verbose)],
            force=True,
        )

    @contextmanager
    def _timed(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            if self._timings is not None:
                self._timings[name] = round(time.perf_counter() - start, 6)

    def _read(self, codec: Codec, path: str, what: str):
        with self._timed(f"parse {what}"):
            try:
                return codec.load(path)
            except OSError as exc:
                raise ValidationError(f"no se puede leer {path}: {exc}") from exc

    # --- Subcomandos ---

    def eval_fo(self, args: argparse.Namespace) -> Report:
        msc: Msc = self._read(MscTextCodec(), args.msc, "msc")
        if args.formula:
            phi = self._read(FoCodec(), args.formula, "formula")
        else:
            phi = self._builtin(args.builtin, msc)
        nu = {}
        for item in args.bind:
            var, sep, event = item.partition("=")
            if not sep or not var or not event:
                raise _UsageError(f"--bind espera VAR=EVENTO: {item}")
            nu[var.strip()] = event.strip()
        uc = FoUseCases(self.settings)
        with self._timed("evaluate"):
            verdict = uc.eval_fo(msc, phi, nu)
        inputs = {"msc": args.msc, "formula": args.formula or args.builtin, "bind": nu}
        return Report("eval-fo", inputs, verdict=verdict,
                      statistics={"events": len(msc), "variables": len(fo.variable_names(phi))})

    @staticmethod
    def _builtin(name_and_args: str, msc: Msc) -> fo.FoFormula:
        name, _, params = name_and_args.partition(":")
        procs = _split(params)
        if name == "gossip" and len(procs) == 2:
            return fo.gossip(procs[0], procs[1], msc.labels.names)
        if name == "latest" and len(procs) == 1:
            return fo.latest(procs[0])
        raise _UsageError(f"fórmula predefinida desconocida: {name_and_args}")

    def eval_pdl(self, args: argparse.Namespace) -> Report:
        msc: Msc = self._read(MscTextCodec(), args.msc, "msc")
        node = self._read(PdlCodec(), args.formula, "formula")
        uc = PdlUseCases()
        uc.check_symbols(msc, node)
        inputs = {"msc": args.msc, "formula": args.formula}
        stats = {"events": len(msc), "dag_size": pdl.dag_size(node)}
        order = msc.index.__getitem__
        with self._timed("evaluate"):
            if isinstance(node, pdl.Sentence):
                return Report("eval-pdl", inputs, verdict=uc.eval_sentence(msc, node), statistics=stats)
            if args.at is not None:
                inputs["at"] = args.at
                if args.at not in msc.index:
                    raise ValidationError(f"evento desconocido: {args.at}")
            if isinstance(node, pdl.EventFormula):
                if args.at is not None:
                    return Report("eval-pdl", inputs, verdict=uc.holds_at(msc, node, args.at),
                                  statistics=stats)
                events = sorted(uc.eval_event(msc, node), key=order)
                return Report("eval-pdl", inputs, result=events, statistics=stats)
            rel = uc.eval_path(msc, node)
            if args.at is not None:
                return Report("eval-pdl", inputs, result=sorted(rel.image(args.at), key=order),
                              statistics=stats)
            stats["pairs"] = len(rel)
            return Report("eval-pdl", inputs, result=[list(p) for p in rel.sorted_pairs()],
                          statistics=stats)

    def translate_fo(self, args: argparse.Namespace) -> Report:
        phi = self._read(FoCodec(), args.formula, "formula")
        settings = self.settings.with_overrides(translation_max_nodes=args.budget)
        uc = Fo2PdlUseCases(_split(args.processes), settings)
        free = phi.free_vars
        with self._timed("translate"):
            if not free:
                out = uc.translate_to_sentence(phi)
            elif len(free) == 1:
                out = uc.translate_to_event(phi)
            else:
                out = uc.translate_to_path(phi)
        inputs = {"formula": args.formula, "processes": args.processes, "free": list(free)}
        return Report("translate-fo", inputs, result=PdlCodec().serialize(out),
                      statistics={"dag_size": pdl.dag_size(out)})

    def compile(self, args: argparse.Namespace) -> Report:
        if args.msc:
            msc: Msc = self._read(MscTextCodec(), args.msc, "msc")
            processes, labels = list(msc.processes.names), list(msc.labels.names)
        elif args.processes and args.labels:
            processes, labels = _split(args.processes), _split(args.labels)
        else:
            raise _UsageError("compile necesita --msc o bien --processes y --labels")
        compiler = Pdl2CfmUseCases(processes, labels, self.settings)
        with self._timed("compile"):
            if args.fo:
                phi = self._read(FoCodec(), args.formula, "formula")
                machine = compiler.compile_fo_sentence(phi)
            else:
                node = self._read(PdlCodec(), args.formula, "formula")
                if isinstance(node, pdl.Sentence):
                    machine = compiler.compile_sentence(node)
                elif isinstance(node, pdl.EventFormula):
                    machine = compiler.compile_event(node)
                else:
                    raise ValidationError("solo se compilan sentencias y fórmulas de evento")
        with self._timed("materialize"):
            cfm = CfmUseCases(self.settings).materialize(machine)
        if args.emit_cfm:
            CfmYamlCodec().dump(cfm, args.emit_cfm)
        inputs = {"formula": args.formula, "logic": "fo" if args.fo else "pdl",
                  "processes": processes, "labels": [str(a) for a in labels]}
        return Report("compile", inputs, result=args.emit_cfm, statistics=cfm.size())

    def run_cfm(self, args: argparse.Namespace) -> Report:
        cfm = self._read(CfmYamlCodec(), args.cfm, "cfm")
        msc: Msc = self._read(MscTextCodec(), args.msc, "msc")
        uc = CfmUseCases(self.settings)
        with self._timed("search"):
            run = uc.find_run(cfm, msc)
        witness = None
        if run is not None:
            witness = [[eid, t.source, t.kind.value, t.label, t.peer, t.msg, t.target]
                       for eid, t in run.transitions]
        return Report("run-cfm", {"cfm": args.cfm, "msc": args.msc}, verdict=run is not None,
                      result=witness, statistics=dict(uc.last_statistics))

    def bounded(self, args: argparse.Namespace) -> Report:
        msc: Msc = self._read(MscTextCodec(), args.msc, "msc")
        uc = BoundsUseCases(self.settings)
        inputs = {"msc": args.msc, "B": args.bound, "mode": "forall" if args.forall else "exists"}
        with self._timed("decide"):
            if args.forall:
                verdict = uc.is_forall_b_bounded(msc, args.bound, brute_force=args.brute_force)
                return Report("bounded", inputs, verdict=verdict)
            verdict = uc.is_exists_b_bounded(msc, args.bound)
            witness = list(uc.canonical_linearization(msc, args.bound).order) if verdict else None
        return Report("bounded", inputs, verdict=verdict, result=witness)

    def linearize(self, args: argparse.Namespace) -> Report:
        msc: Msc = self._read(MscTextCodec(), args.msc, "msc")
        uc = BoundsUseCases(self.settings)
        with self._timed("linearize"):
            lin = uc.canonical_linearization(msc, args.bound)
            word = uc.lin_word(msc, lin)
        return Report("linearize", {"msc": args.msc, "B": args.bound},
                      result=LinWordCodec().serialize(word).splitlines(),
                      statistics={"events": len(msc)})

    def difftest(self, args: argparse.Namespace) -> Report:
        service = DifftestService(self.settings)
        out_dir = Path(args.out) if args.out else None
        with self._timed("difftest"):
            outcome = service.run(Stage(args.stage), args.seed, args.count, args.max_events, out_dir)
        inputs = {"stage": args.stage, "seed": outcome.seed, "count": outcome.count,
                  "max_events": args.max_events if args.max_events is not None
                  else self.settings.difftest_max_events}
        return Report("difftest", inputs, verdict=outcome.ok, result=outcome.to_dict()["stages"])


class _UsageError(Exception):
    """Combinación de opciones inválida (código 2)."""


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Punto de entrada de la CLI."""
    return CliController().run(argv)
