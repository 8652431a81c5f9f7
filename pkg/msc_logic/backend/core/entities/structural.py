#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Base común para los árboles sintácticos inmutables (FO y PDL).

Los nodos son dataclasses congeladas con igualdad estructural y hash
cacheado, de modo que se pueden usar como claves de memoización aunque
las fórmulas sean muy grandes y compartan subárboles.
"""

from dataclasses import fields
from typing import Any, ClassVar, Dict, Tuple


class StructuralNode:
    """Nodo con igualdad estructural y hash cacheado."""

    _field_cache: ClassVar[Dict[type, Tuple[str, ...]]] = {}

    def _key(self) -> Tuple[Any, ...]:
        cls = type(self)
        names = StructuralNode._field_cache.get(cls)
        if names is None:
            names = tuple(f.name for f in fields(self))
            StructuralNode._field_cache[cls] = names
        return tuple(getattr(self, n) for n in names)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(self) is not type(other):
            return False
        return hash(self) == hash(other) and self._key() == other._key()

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        cached = self.__dict__.get("_hash")
        if cached is None:
            cached = hash((type(self).__name__,) + self._key())
            object.__setattr__(self, "_hash", cached)
        return cached
