#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
msc_logic - Lógica y autómatas sobre diagramas de secuencia de mensajes

Punto de entrada principal: delega en el controlador de la línea de comandos.

Ejemplo:
    python main.py eval-fo --msc tests/fixtures/three_process.msc --builtin gossip:p1,p3
"""

import os
import sys

# Asegurar que el directorio del proyecto esté en el path
sys.path.insert(0, os.path.abspath(os.path.dirname(__file__)))

from backend.frameworks.controllers import main as run_cli  # noqa: E402


def main(argv=None):
    """Función principal: devuelve el código de salida de la CLI."""
    try:
        return run_cli(argv)
    except KeyboardInterrupt:
        print("\nEjecución interrumpida por el usuario.", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
