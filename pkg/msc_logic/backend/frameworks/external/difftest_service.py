#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Servicio de pruebas diferenciales.

Cada etapa compara una construcción con un oráculo directo sobre casos
aleatorios reproducibles:

- fo2pdl: evaluación FO frente a la evaluación de la traducción a PDL.
- pdl2cfm: etiquetado del transductor compilado frente a la evaluación PDL.
- bounds: acotación por grafo, por ξ_∃B, por Φ_∃B y por búsqueda directa,
  más las comprobaciones de la linealización canónica.

Los casos que agotan un presupuesto se cuentan como omitidos. El primer
contraejemplo se guarda como fixture reproducible.
"""

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

from ...adapters.codecs.fo_codec import FoCodec
from ...adapters.codecs.msc_codec import MscTextCodec
from ...adapters.codecs.pdl_codec import PdlCodec
from ...core.entities.errors import NotALinearization, ResourceLimit
from ...core.entities.msc import Msc
from ...core.entities.settings import Settings
from ...core.use_cases.bounds_use_cases import BoundsUseCases, exists_b_fo_formula, exists_b_formula
from ...core.use_cases.cfm_use_cases import CfmUseCases
from ...core.use_cases.fo2pdl_use_cases import Fo2PdlUseCases
from ...core.use_cases.fo_use_cases import FoUseCases
from ...core.use_cases.msc_use_cases import MscUseCases
from ...core.use_cases.pdl2cfm_use_cases import Pdl2CfmUseCases
from ...core.use_cases.pdl_use_cases import PdlUseCases
from .random_formulas import RandomFormulaGenerator
from .random_msc import RandomMscGenerator

logger = logging.getLogger(__name__)

LABELS = ("a", "b")


class Stage(str, Enum):
    """Etapas de la prueba diferencial."""
    FO2PDL = "fo2pdl"    # FO → PDL
    PDL2CFM = "pdl2cfm"  # PDL → transductores
    BOUNDS = "bounds"    # ∃B-acotación
    ALL = "all"          # todas


@dataclass
class Counterexample:
    """Caso en el que la construcción y el oráculo discrepan."""
    stage: str
    case: int
    msc_text: str
    formula_text: Optional[str]
    detail: str

    def to_dict(self) -> Dict[str, Any]:
        return {"stage": self.stage, "case": self.case, "detail": self.detail,
                "msc": self.msc_text, "formula": self.formula_text}

    def write(self, directory: Path) -> List[Path]:
        """Escribe el MSC (y la fórmula, si la hay) en `directory`."""
        directory.mkdir(parents=True, exist_ok=True)
        stem = directory / f"{self.stage}-{self.case}"
        written = [stem.with_suffix(".msc")]
        written[0].write_text(self.msc_text, encoding="utf-8")
        if self.formula_text is not None:
            written.append(stem.with_suffix(".formula"))
            written[1].write_text(self.formula_text + "\n", encoding="utf-8")
        return written


@dataclass
class StageResult:
    """Resumen de una etapa."""
    stage: str
    passed: int = 0
    skipped: int = 0
    counterexample: Optional[Counterexample] = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"stage": self.stage, "passed": self.passed, "skipped": self.skipped,
                                "ok": self.ok}
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample.to_dict()
        return data


@dataclass
class DifftestResult:
    """Resultado de todas las etapas ejecutadas."""
    seed: int
    count: int
    stages: List[StageResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.stages)

    def to_dict(self) -> Dict[str, Any]:
        return {"seed": self.seed, "count": self.count, "stages": [s.to_dict() for s in self.stages]}


class DifftestService:
    """
    Ejecuta las pruebas diferenciales.

    Attributes:
        settings: Configuración (presupuestos, número de procesos)
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings()
        self.msc_codec = MscTextCodec()
        self.fo_codec = FoCodec()
        self.pdl_codec = PdlCodec()
        self.fo = FoUseCases(self.settings)
        self.pdl = PdlUseCases()
        self.cfm = CfmUseCases(self.settings)
        self.bounds = BoundsUseCases(self.settings)
        self.mscs = MscUseCases()

    @property
    def processes(self) -> Tuple[str, ...]:
        return tuple(f"p{k + 1}" for k in range(max(1, self.settings.difftest_processes)))

    def run(self, stage: Stage, seed: Optional[int] = None, count: Optional[int] = None,
            max_events: Optional[int] = None, out_dir: Optional[Path] = None) -> DifftestResult:
        """
        Ejecuta una etapa (o todas).

        Args:
            stage: Etapa a ejecutar
            seed: Semilla (por defecto, la de la configuración)
            count: Casos por etapa
            max_events: Eventos máximos por MSC
            out_dir: Directorio donde guardar el contraejemplo
        """
        seed = self.settings.seed if seed is None else seed
        count = self.settings.difftest_count if count is None else count
        max_events = self.settings.difftest_max_events if max_events is None else max_events
        stages = [Stage.FO2PDL, Stage.PDL2CFM, Stage.BOUNDS] if stage == Stage.ALL else [Stage(stage)]
        result = DifftestResult(seed, count)
        checks: Dict[Stage, Callable[[random.Random, Msc], Optional[Tuple[Optional[str], str]]]] = {
            Stage.FO2PDL: self._check_fo2pdl,
            Stage.PDL2CFM: self._check_pdl2cfm,
            Stage.BOUNDS: self._check_bounds,
        }
        for current in stages:
            summary = StageResult(current.value)
            for case in range(count):
                rng = random.Random(f"{seed}/{current.value}/{case}")
                msc = RandomMscGenerator(rng).generate(self.processes, LABELS, max_events)
                try:
                    failure = checks[current](rng, msc)
                except ResourceLimit as exc:
                    logger.warning("caso %s/%d omitido: %s", current.value, case, exc)
                    summary.skipped += 1
                    continue
                finally:
                    self.pdl.forget(msc)
                if failure is None:
                    summary.passed += 1
                    continue
                formula_text, detail = failure
                summary.counterexample = Counterexample(current.value, case, self.msc_codec.serialize(msc),
                                                        formula_text, detail)
                if out_dir is not None:
                    summary.counterexample.write(Path(out_dir))
                logger.warning("contraejemplo en %s, caso %d: %s", current.value, case, detail)
                break
            result.stages.append(summary)
        return result

    # --- Etapas ---

    def _check_fo2pdl(self, rng: random.Random, msc: Msc) -> Optional[Tuple[str, str]]:
        generator = RandomFormulaGenerator(rng, self.processes, LABELS)
        free = ["x", "y"][:rng.randint(0, 2)]
        phi = generator.fo_formula(2, free) if free else generator.fo_sentence(2)
        text = self.fo_codec.serialize(phi)
        fo2pdl = Fo2PdlUseCases(self.processes, self.settings)
        variables = phi.free_vars
        if not variables:
            expected = self.fo.eval_fo(msc, phi)
            got = self.pdl.eval_sentence(msc, fo2pdl.translate_to_sentence(phi))
        elif len(variables) == 1:
            expected = {t[0] for t in self.fo.satisfying(msc, phi, variables)}
            got = set(self.pdl.eval_event(msc, fo2pdl.translate_to_event(phi)))
        else:
            expected = self.fo.satisfying(msc, phi, variables)
            got = self.pdl.eval_path(msc, fo2pdl.translate_to_path(phi, variables)).pairs()
        if expected != got:
            return text, f"FO da {_show(expected)}, la traducción da {_show(got)}"
        return None

    def _check_pdl2cfm(self, rng: random.Random, msc: Msc) -> Optional[Tuple[str, str]]:
        generator = RandomFormulaGenerator(rng, self.processes, LABELS)
        phi = generator.event(2, loops=rng.random() < 0.3)
        text = self.pdl_codec.serialize(phi)
        compiler = Pdl2CfmUseCases(self.processes, LABELS, self.settings)
        machine = compiler.compile_event(phi)
        labeling = self.cfm.output(machine, msc)
        expected = tuple(int(b) for b in self.pdl.event_vector(msc, phi))
        if labeling is None or tuple(labeling) != expected:
            return text, f"etiquetado {labeling}, esperado {expected}"
        return None

    def _check_bounds(self, rng: random.Random, msc: Msc) -> Optional[Tuple[Optional[str], str]]:
        bound = rng.choice((1, 2))
        graph = self.bounds.is_exists_b_bounded(msc, bound)
        verdicts = {
            "grafo": graph,
            "ξ": self.pdl.eval_sentence(msc, exists_b_formula(bound, msc.processes.names)),
            "Φ": self.fo.eval_fo(msc, exists_b_fo_formula(bound, msc.processes.names)),
            "búsqueda": self.bounds.has_b_bounded_linearization(msc, bound),
        }
        if len(set(verdicts.values())) > 1:
            return None, f"B={bound}: veredictos distintos {verdicts}"
        if not graph:
            return None
        lin = self.bounds.canonical_linearization(msc, bound)
        try:
            if not self.mscs.is_b_bounded_linearization(msc, lin, bound):
                return None, f"B={bound}: la linealización canónica no es B-acotada"
        except NotALinearization as exc:
            return None, f"B={bound}: la linealización canónica no linealiza el MSC: {exc}"
        word = self.bounds.lin_word(msc, lin)
        back = self.bounds.msc_of_word(word, msc.processes.names, msc.labels.names, ids=lin.order)
        if back != msc:
            return None, f"B={bound}: la palabra de linealización no reconstruye el MSC"
        return None


def _show(value: Any) -> str:
    if isinstance(value, (set, frozenset)):
        return "{" + ", ".join(sorted(map(str, value))) + "}"
    return str(value)
