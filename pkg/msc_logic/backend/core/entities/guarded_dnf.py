#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Módulo que define los átomos de camino y las DNF positivas que produce la
traducción FO → PDL.
"""

from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from .pdl_formula import PathFormula, Sentence, Test


@dataclass(frozen=True)
class PathAtom:
    """
    Átomo π(src, dst): el par (ν(src), ν(dst)) pertenece a ⟦π⟧.

    Attributes:
        path: Camino de PDL_sf[Loop]
        src: Variable de origen
        dst: Variable de destino
    """
    path: PathFormula
    src: str
    dst: str

    @property
    def is_test(self) -> bool:
        """Cierto para los átomos {φ}?(v, v), que equivalen a φ(v)."""
        return self.src == self.dst and isinstance(self.path, Test)

    def variables(self) -> Tuple[str, ...]:
        return (self.src,) if self.src == self.dst else (self.src, self.dst)


Conjunct = Tuple[PathAtom, ...]


@dataclass(frozen=True)
class GuardedDnf:
    """
    Disyunción de conjunciones de átomos de camino (solo positivos).

    La DNF vacía es falsa; una conjunción vacía es verdadera. Si hay
    `guard`, la DNF equivale a guard ∧ ⋁⋀ (así se representa ∃x cuando x
    era la única variable).

    Attributes:
        variables: Variables libres en el orden usado para orientar los átomos
        disjuncts: Conjunciones
        guard: Sentencia que acompaña a la disyunción
    """
    variables: Tuple[str, ...]
    disjuncts: Tuple[Conjunct, ...]
    guard: Optional[Sentence] = None

    def __iter__(self) -> Iterator[Conjunct]:
        return iter(self.disjuncts)

    def __len__(self) -> int:
        return len(self.disjuncts)

    @property
    def is_false(self) -> bool:
        return not self.disjuncts

    @property
    def is_true(self) -> bool:
        return self.guard is None and any(not c for c in self.disjuncts)

    def atoms(self) -> Iterator[PathAtom]:
        for conj in self.disjuncts:
            yield from conj

    def size(self) -> int:
        """Número total de átomos."""
        return sum(len(c) for c in self.disjuncts)
