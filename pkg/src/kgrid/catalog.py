"""The finite factor catalog swept by the experiment scripts and the
acceptance checks: all rectangular factors up to 4x4, rank-one factors up to
dimension 6, symplectic 5..7, hermitian 2..6 and spin 4..9."""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Iterator

from .cartan import CartanDescriptor, TripleSpec


def catalog_descriptors() -> tuple:
    out = [CartanDescriptor("I", (n, m))
           for n in range(1, 5) for m in range(1, 5)]
    out += [CartanDescriptor("I", (1, n)) for n in (5, 6)]
    out += [CartanDescriptor("II", (n,)) for n in range(5, 8)]
    out += [CartanDescriptor("III", (n,)) for n in range(2, 7)]
    out += [CartanDescriptor("IV", (d,)) for d in range(4, 10)]
    return tuple(out)


def catalog_multisets(max_factors: int = 3) -> Iterator[TripleSpec]:
    descriptors = catalog_descriptors()
    for size in range(1, max_factors + 1):
        for combo in combinations_with_replacement(descriptors, size):
            yield TripleSpec(combo)
