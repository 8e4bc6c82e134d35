"""Brute-force references for tests.

Everything here works from the boundary matrices alone (row-reduced echelon
forms and exhaustive enumeration) and never touches the annotation,
basis or covering-graph code.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complex import Chain, SimplicialComplex
from .errors import CapacityError
from .z2core import iter_bits, transpose_bits

ENUMERATION_CAP = 20


def _rref(rows: list[int]) -> dict[int, int]:
    """Fully reduced row echelon form keyed by pivot (highest) bit."""
    pivots: dict[int, int] = {}
    for r in rows:
        for bit, prow in pivots.items():
            if (r >> bit) & 1:
                r ^= prow
        if not r:
            continue
        lead = r.bit_length() - 1
        for bit in list(pivots):
            if (pivots[bit] >> lead) & 1:
                pivots[bit] ^= r
        pivots[lead] = r
    return pivots


def nullspace(columns: list[int], n_rows: int) -> list[int]:
    """Basis of ``{x : sum of columns selected by x = 0}`` as packed vectors."""
    n = len(columns)
    rows = transpose_bits(columns, n_rows)
    pivots = _rref(rows)
    pivot_cols = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_cols:
            continue
        x = 1 << free
        for bit, prow in pivots.items():
            if (prow >> free) & 1:
                x |= 1 << bit
        basis.append(x)
    return basis


def cycle_space_basis(k: SimplicialComplex, p: int) -> list[int]:
    if p == 0:
        return [1 << i for i in range(k.count(0))]
    return nullspace(k.boundary_columns(p), k.count(p - 1))


class ClassOracle:
    """Canonical representatives of ``Z_p / B_p``.

    The boundary space is held in fully reduced echelon form, so reducing a
    cycle against it gives a representative that is identical for exactly
    the homologous cycles.  The reduction is linear.
    """

    def __init__(self, k: SimplicialComplex, p: int):
        self.k = k
        self.p = p
        self._pivots = _rref(list(k.boundary_columns(p + 1)))

    def canonical(self, members: int) -> int:
        for bit, prow in self._pivots.items():
            if (members >> bit) & 1:
                members ^= prow
        return members

    def same_class(self, z1: Chain, z2: Chain) -> bool:
        return self.canonical(z1.members ^ z2.members) == 0


def enumerate_cycles(k: SimplicialComplex, p: int, cap: int = ENUMERATION_CAP) -> list[Chain]:
    """Every ``p``-cycle, in Gray-code order of a kernel basis."""
    return [Chain(p, m) for m in _enumerate_members(cycle_space_basis(k, p), cap)]


def _enumerate_members(basis: list[int], cap: int) -> list[int]:
    if len(basis) > cap:
        raise CapacityError(f"cycle space has dimension {len(basis)} > {cap}")
    out = [0]
    cur = 0
    for i in range(1, 1 << len(basis)):
        cur ^= basis[(i & -i).bit_length() - 1]
        out.append(cur)
    return out


def brute_class(k: SimplicialComplex, p: int, z: Chain) -> int:
    """Canonical class id of ``z`` (0 for null-homologous cycles)."""
    return ClassOracle(k, p).canonical(z.members)


@dataclass(frozen=True)
class CycleTable:
    """All cycles of a complex with weights and canonical class ids."""

    members: tuple[int, ...]
    weights: tuple[float, ...]
    classes: tuple[int, ...]


def cycle_table(k: SimplicialComplex, p: int = 1, cap: int = ENUMERATION_CAP) -> CycleTable:
    basis = cycle_space_basis(k, p)
    oracle = ClassOracle(k, p)
    canon = [oracle.canonical(b) for b in basis]
    members = _enumerate_members(basis, cap)
    classes = [0]
    cur = 0
    for i in range(1, len(members)):
        cur ^= canon[(i & -i).bit_length() - 1]
        classes.append(cur)
    w = k.weights[p]
    weights = [sum((w[j] for j in iter_bits(m)), 0.0) for m in members]
    return CycleTable(tuple(members), tuple(weights), tuple(classes))


def brute_shortest_per_class(k: SimplicialComplex, p: int = 1, table: CycleTable | None = None) -> dict[int, float]:
    """Minimum cycle weight of every homology class, keyed by class id."""
    table = table or cycle_table(k, p)
    best: dict[int, float] = {}
    for w, c in zip(table.weights, table.classes):
        if c not in best or w < best[c]:
            best[c] = w
    return best


def brute_shortest_per_class_witness(k: SimplicialComplex, p: int = 1, table: CycleTable | None = None) -> dict[int, tuple[float, Chain]]:
    table = table or cycle_table(k, p)
    best: dict[int, tuple[float, int]] = {}
    for m, w, c in zip(table.members, table.weights, table.classes):
        if c not in best or (w, m) < best[c]:
            best[c] = (w, m)
    return {c: (w, Chain(p, m)) for c, (w, m) in best.items()}


def brute_shortest_basis(k: SimplicialComplex, p: int = 1, table: CycleTable | None = None) -> float:
    """Total weight of a shortest homology basis by greedy over all cycles."""
    table = table or cycle_table(k, p)
    order = sorted(range(len(table.members)), key=lambda i: table.weights[i])
    kept: dict[int, int] = {}
    total = 0.0
    for i in order:
        c = table.classes[i]
        while c:
            prow = kept.get(c.bit_length() - 1)
            if prow is None:
                break
            c ^= prow
        if c:
            kept[c.bit_length() - 1] = c
            total += table.weights[i]
    return total


def brute_betti(k: SimplicialComplex, p: int) -> int:
    """Betti number as log2 of the number of distinct classes."""
    table = cycle_table(k, p)
    return len(set(table.classes)).bit_length() - 1


def greedy_earliest_basis(columns: list[int]) -> list[int]:
    """Earliest basis by the rank-increase test: keep ``j`` iff
    ``rank(columns[:j+1]) > rank(columns[:j])``, ranks from scratch via RREF."""
    kept = []
    prev_rank = 0
    for j in range(len(columns)):
        r = len(_rref(list(columns[: j + 1])))
        if r > prev_rank:
            kept.append(j)
        prev_rank = r
    return kept
