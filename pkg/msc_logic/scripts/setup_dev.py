#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Script de configuración inicial para el entorno de desarrollo de msc_logic.

Crea el directorio de datos, escribe la configuración por defecto y, si se
solicita, los MSCs de ejemplo y algunas fórmulas de muestra.
"""

import argparse
import os
import sys
from pathlib import Path

# Asegurar que el directorio raíz del proyecto esté en el path
sys.path.insert(0, os.path.abspath(os.path.dirname(os.path.dirname(__file__))))

from backend.frameworks.config import SettingsLoader  # noqa: E402
from backend.frameworks.external.fixtures import write_fixtures  # noqa: E402

SAMPLE_FORMULAS = {
    "gossip_p1_p3.fo": (
        "(forall x (forall y (implies (and (le x y) (p p1 x)"
        " (forall z (implies (and (le z y) (p p1 z)) (le z x))) (p p3 y))"
        " (or (and (a sq x) (a sq y)) (and (a ci x) (a ci y)) (and (a di x) (a di y))))))\n"
    ),
    "loop_g5.pdl": "(loop (cat (msg-inv p1 p3) next (msg p1 p2) next (msg p2 p3) next))\n",
    "some_di.pdl": "(E (lab di))\n",
}


def setup_directories(base: Path) -> Path:
    """Crea los directorios de datos."""
    print("Configurando directorios de datos...")
    base.mkdir(parents=True, exist_ok=True)
    (base / "fixtures").mkdir(exist_ok=True)
    (base / "counterexamples").mkdir(exist_ok=True)
    print(f"Directorios creados en: {base}")
    return base


def setup_config(base: Path, force: bool = False) -> Path:
    """Escribe config.yaml con los presupuestos por defecto (sin sobrescribir salvo `force`)."""
    path = base / "config.yaml"
    if path.exists() and not force:
        print(f"Configuración existente conservada: {path}")
        return path
    SettingsLoader().write_default(path)
    print(f"Configuración por defecto creada: {path}")
    return path


def create_sample_data(base: Path) -> None:
    """Escribe los MSCs de referencia y fórmulas de muestra."""
    print("Creando datos de ejemplo...")
    target = base / "fixtures"
    for path in write_fixtures(target):
        print(f"  {path}")
    for name, text in SAMPLE_FORMULAS.items():
        path = target / name
        path.write_text(text, encoding="utf-8")
        print(f"  {path}")


def main():
    """Función principal del script de configuración."""
    parser = argparse.ArgumentParser(description="Configuración del entorno de desarrollo de msc_logic")
    parser.add_argument("--data-dir", default=str(Path.home() / ".msc_logic"), help="Directorio de datos")
    parser.add_argument("--with-examples", action="store_true", help="Crear MSCs y fórmulas de ejemplo")
    parser.add_argument("--force", action="store_true", help="Sobrescribir la configuración existente")
    args = parser.parse_args()

    print("=== Configuración del entorno de desarrollo de msc_logic ===")

    try:
        base = setup_directories(Path(args.data_dir))
        setup_config(base, args.force)
        if args.with_examples:
            create_sample_data(base)

        print("\n¡Configuración completada con éxito!")
        print("\nPara probar la instalación:")
        print(f"  python main.py bounded --msc {base / 'fixtures' / 'three_process.msc'} --B 1")
        return 0
    except OSError as e:
        print(f"Error durante la configuración: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
