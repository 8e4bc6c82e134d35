"""Null-homology, homologous-pair and independence queries over annotations."""

from __future__ import annotations

from typing import Sequence

from .annotate import AnnotationIndex, annotate_cycle
from .complex import Chain
from .z2core import column_rank_profile


def is_null_homologous(idx: AnnotationIndex, z: Chain) -> bool:
    return annotate_cycle(idx, z) == 0


def are_homologous(idx: AnnotationIndex, z1: Chain, z2: Chain) -> bool:
    if z1.dim != z2.dim:
        raise ValueError(f"cycles have different dimensions ({z1.dim} and {z2.dim})")
    return annotate_cycle(idx, z1) == annotate_cycle(idx, z2)


def block_earliest_basis(columns: Sequence[int], g: int) -> list[int]:
    """Earliest basis of a ``g``-row matrix given as packed columns.

    Columns are consumed in blocks of ``g``.  The running index set ``J`` is
    replaced, block by block, by the earliest basis of ``[A_J | A_block]``,
    so every elimination involves at most ``2g`` columns.  Once ``|J| = g``
    no later column can enter and the scan stops.
    """
    if g <= 0:
        return []
    chosen: list[int] = []
    for start in range(0, len(columns), g):
        if len(chosen) == g:
            break
        candidates = chosen + list(range(start, min(start + g, len(columns))))
        profile = column_rank_profile(columns[j] for j in candidates)
        chosen = [candidates[t] for t in profile]
    return chosen


def max_independent_subset(idx: AnnotationIndex, cycles: Sequence[Chain]) -> list[int]:
    """Indices of the earliest homology-independent subset of ``cycles``."""
    anns = [annotate_cycle(idx, z) for z in cycles]
    return block_earliest_basis(anns, idx.g)
