"""Exact linear algebra over Z2 on bit-packed matrices.

Rows (and, internally, columns) are packed into Python ints: bit ``j`` of a
row int is the entry in column ``j``.  XOR of two ints is a word-parallel row
operation, so elimination runs at word speed without any native extension.

The column-oriented kernels (:func:`reduce_columns` and friends) work on plain
lists of column ints and are what the homology code calls directly; the
:class:`Z2Matrix` wrappers exist for the matrix-level API.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class Z2Error(ValueError):
    """Raised for dimension mismatches and unsolvable systems."""


class SingularMatrixError(Z2Error):
    def __init__(self, rank: int, size: int):
        super().__init__(f"matrix is singular: rank {rank} < {size}")
        self.rank = rank
        self.size = size


class InconsistentSystemError(Z2Error):
    def __init__(self, column: int):
        super().__init__(f"target column {column} is not in the span of the basis")
        self.column = column


def iter_bits(x: int) -> Iterator[int]:
    """Yield the indices of set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def bits_from_indices(indices: Iterable[int]) -> int:
    x = 0
    for i in indices:
        x ^= 1 << i
    return x


def transpose_bits(vectors: Sequence[int], length: int) -> list[int]:
    """Transpose a list of packed vectors into ``length`` packed vectors."""
    out = [0] * length
    for i, v in enumerate(vectors):
        bit = 1 << i
        for j in iter_bits(v):
            out[j] |= bit
    return out


@dataclass(frozen=True)
class Z2Matrix:
    """Immutable ``rows x cols`` matrix over Z2, stored row-major.

    ``data[i]`` packs row ``i``; bits at positions ``>= cols`` are always zero.
    Build instances with the ``from_*``/``zeros``/``identity`` constructors.
    """

    rows: int
    cols: int
    data: tuple[int, ...]
    _columns: list[int] | None = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise Z2Error("matrix dimensions must be non-negative")
        if len(self.data) != self.rows:
            raise Z2Error(f"expected {self.rows} rows, got {len(self.data)}")
        limit = 1 << self.cols
        for r in self.data:
            if r < 0 or r >= limit:
                raise Z2Error("row has bits outside the column range")

    # -- construction -----------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Z2Matrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "Z2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows: int, cols: int, data: Iterable[int]) -> "Z2Matrix":
        return cls(rows, cols, tuple(data))

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[int]) -> "Z2Matrix":
        m = cls(rows, len(columns), tuple(transpose_bits(columns, rows)))
        object.__setattr__(m, "_columns", list(columns))
        return m

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "Z2Matrix":
        """Build from a nested list of 0/1 entries (row-major)."""
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        data = []
        for row in entries:
            if len(row) != cols:
                raise Z2Error("ragged rows")
            data.append(bits_from_indices(j for j, v in enumerate(row) if v & 1))
        return cls(rows, cols, tuple(data))

    @classmethod
    def from_numpy(cls, array) -> "Z2Matrix":
        import numpy as np

        a = np.asarray(array, dtype=np.uint8) & 1
        if a.ndim != 2:
            raise Z2Error("expected a 2-d array")
        return cls.from_lists(a.tolist())

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return (self.data[i] >> j) & 1

    def columns(self) -> list[int]:
        """Column ints (bit ``i`` = row ``i``); computed once and cached."""
        if self._columns is None:
            object.__setattr__(self, "_columns", transpose_bits(self.data, self.cols))
        return list(self._columns)

    def column(self, j: int) -> int:
        if not 0 <= j < self.cols:
            raise IndexError(j)
        if self._columns is not None:
            return self._columns[j]
        bit = 1 << j
        return bits_from_indices(i for i, r in enumerate(self.data) if r & bit)

    def transpose(self) -> "Z2Matrix":
        return Z2Matrix.from_rows(self.cols, self.rows, self.columns())

    def select_columns(self, indices: Sequence[int]) -> "Z2Matrix":
        cols = self.columns()
        return Z2Matrix.from_columns(self.rows, [cols[j] for j in indices])

    def hstack(self, other: "Z2Matrix") -> "Z2Matrix":
        if self.rows != other.rows:
            raise Z2Error("hstack needs equal row counts")
        shift = self.cols
        return Z2Matrix(
            self.rows,
            self.cols + other.cols,
            tuple(a | (b << shift) for a, b in zip(self.data, other.data)),
        )

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.data]

    def to_numpy(self):
        import numpy as np

        return np.array(self.to_lists(), dtype=np.uint8).reshape(self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(self.data)

    def __matmul__(self, other: "Z2Matrix") -> "Z2Matrix":
        return mat_mul(self, other)

    def __add__(self, other: "Z2Matrix") -> "Z2Matrix":
        if self.shape != other.shape:
            raise Z2Error(f"shape mismatch {self.shape} vs {other.shape}")
        return Z2Matrix(self.rows, self.cols, tuple(a ^ b for a, b in zip(self.data, other.data)))

    def __str__(self) -> str:
        return "\n".join("".join(str((r >> j) & 1) for j in range(self.cols)) for r in self.data)


# ---------------------------------------------------------------------------
# Multiplication (Four Russians)
# ---------------------------------------------------------------------------

_M4R_BITS = 8


def mat_mul(a: Z2Matrix, b: Z2Matrix) -> Z2Matrix:
    """Exact product ``a @ b`` over Z2.

    Rows of ``b`` are grouped in chunks of 8; for each chunk all 256 XOR
    combinations are tabulated once (method of Four Russians), so each output
    row costs ``a.cols / 8`` table lookups instead of ``a.cols`` row XORs.
    """
    if a.cols != b.rows:
        raise Z2Error(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    if a.rows == 0 or b.cols == 0 or a.cols == 0:
        return Z2Matrix.zeros(a.rows, b.cols)
    k = _M4R_BITS
    mask = (1 << k) - 1
    tables = []
    for start in range(0, b.rows, k):
        chunk = b.data[start:start + k]
        table = [0] * (1 << len(chunk))
        for i, row in enumerate(chunk):
            step = 1 << i
            for t in range(step):
                table[step + t] = table[t] ^ row
        tables.append(table)
    out = []
    for r in a.data:
        acc = 0
        c = 0
        while r:
            part = r & mask
            if part:
                acc ^= tables[c][part]
            r >>= k
            c += 1
        out.append(acc)
    return Z2Matrix(a.rows, b.cols, tuple(out))


# ---------------------------------------------------------------------------
# Column reduction kernel
# ---------------------------------------------------------------------------


class ColumnReducer:
    """Incremental left-to-right column reduction.

    Columns are fed one at a time.  Each is reduced against the stored pivot
    columns (keyed by their highest set bit); a column that survives becomes a
    new pivot and is an earliest-basis column.  ``track=True`` additionally
    keeps, for every stored pivot, its coordinates in the basis accepted so
    far (bit ``t`` = the ``t``-th accepted column), which gives the
    coordinates of every later column for free.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self._pivot: dict[int, int] = {}
        self._coords: dict[int, int] = {}
        self.rank = 0

    def reduce(self, col: int) -> tuple[int, int]:
        """Return ``(residue, coords)`` without modifying the reducer."""
        pivot = self._pivot
        coords = 0
        if self.track:
            cmap = self._coords
            while col:
                low = col.bit_length() - 1
                p = pivot.get(low)
                if p is None:
                    break
                col ^= p
                coords ^= cmap[low]
        else:
            while col:
                p = pivot.get(col.bit_length() - 1)
                if p is None:
                    break
                col ^= p
        return col, coords

    def add(self, col: int, unit: int | None = None) -> tuple[bool, int]:
        """Feed the next column.

        Returns ``(independent, coords)``.  If the column is independent of the
        ones before it, it joins the basis at position ``self.rank - 1`` and
        ``coords`` is ``unit`` (by default the unit vector at that position);
        otherwise ``coords`` expresses the column in the current basis.

        Passing an explicit ``unit`` lets callers track a projection of the
        coordinates, e.g. ``unit=0`` for basis columns whose coordinates are
        not of interest.
        """
        residue, coords = self.reduce(col)
        if residue == 0:
            return False, coords
        if unit is None:
            unit = 1 << self.rank
        low = residue.bit_length() - 1
        self._pivot[low] = residue
        if self.track:
            self._coords[low] = coords ^ unit
        self.rank += 1
        return True, unit


def reduce_columns(columns: Iterable[int], track: bool = False) -> tuple[list[int], list[int]]:
    """Reduce columns left to right.

    Returns ``(basis_indices, coords)`` where ``coords[j]`` packs the
    coordinates of column ``j`` in the earliest basis (bit ``t`` refers to
    ``basis_indices[t]``).  ``coords`` is empty unless ``track`` is set.
    """
    red = ColumnReducer(track=track)
    basis: list[int] = []
    coords: list[int] = []
    for j, col in enumerate(columns):
        independent, c = red.add(col)
        if independent:
            basis.append(j)
        if track:
            coords.append(c)
    return basis, coords


def column_rank_profile(columns: Iterable[int]) -> list[int]:
    return reduce_columns(columns)[0]


# ---------------------------------------------------------------------------
# Matrix-level operations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoordinateDecomposition:
    """``A P = B_opt [I_r | R]`` with ``P`` kept as an index vector.

    ``permutation`` lists the columns of ``A`` in the order of ``A P``: the
    earliest-basis columns first, then the remaining columns in their
    original order.  Column ``i`` of ``remainder`` holds the coordinates of
    ``A[:, permutation[rank + i]]`` in the basis.
    """

    basis_indices: tuple[int, ...]
    permutation: tuple[int, ...]
    remainder: Z2Matrix
    rank: int

    @property
    def non_basis_indices(self) -> tuple[int, ...]:
        return self.permutation[self.rank:]

    def coordinates(self, j: int) -> int:
        """Packed coordinates of column ``j`` of ``A`` in the earliest basis."""
        pos = self.permutation.index(j)
        if pos < self.rank:
            return 1 << pos
        return self.remainder.column(pos - self.rank)


def earliest_basis(a: Z2Matrix) -> list[int]:
    """Indices of the lexicographically earliest column basis of ``a``."""
    return column_rank_profile(a.columns())


def rank(a: Z2Matrix) -> int:
    return len(earliest_basis(a))


def coordinate_decomposition(a: Z2Matrix) -> CoordinateDecomposition:
    basis, coords = reduce_columns(a.columns(), track=True)
    in_basis = set(basis)
    rest = [j for j in range(a.cols) if j not in in_basis]
    r = len(basis)
    remainder = Z2Matrix.from_columns(r, [coords[j] for j in rest])
    return CoordinateDecomposition(tuple(basis), tuple(basis + rest), remainder, r)


def express_in_basis(basis: Z2Matrix, targets: Z2Matrix) -> Z2Matrix:
    """Solve ``basis @ X = targets`` for ``X``.

    ``basis`` must have full column rank.  Raises
    :class:`InconsistentSystemError` naming the first target column outside
    the column space.
    """
    if basis.rows != targets.rows:
        raise Z2Error("basis and targets must have the same number of rows")
    red = ColumnReducer(track=True)
    for j, col in enumerate(basis.columns()):
        independent, _ = red.add(col)
        if not independent:
            raise Z2Error(f"basis column {j} is dependent; basis must have full column rank")
    out = []
    for j, col in enumerate(targets.columns()):
        residue, coords = red.reduce(col)
        if residue:
            raise InconsistentSystemError(j)
        out.append(coords)
    return Z2Matrix.from_columns(basis.cols, out)


def in_column_space(a: Z2Matrix, v: Z2Matrix | int) -> bool:
    """True iff ``v`` (a column matrix or packed column int) lies in span(a)."""
    if isinstance(v, Z2Matrix):
        if v.cols != 1 or v.rows != a.rows:
            raise Z2Error("v must be a column vector with a.rows entries")
        v = v.column(0)
    red = ColumnReducer()
    for col in a.columns():
        red.add(col)
    return red.reduce(v)[0] == 0


def inverse(a: Z2Matrix) -> Z2Matrix:
    """Inverse by Gauss-Jordan elimination on ``[A | I]``."""
    if a.rows != a.cols:
        raise Z2Error(f"cannot invert a non-square {a.rows}x{a.cols} matrix")
    n = a.rows
    left = list(a.data)
    right = [1 << i for i in range(n)]
    r = 0
    for c in range(n):
        bit = 1 << c
        piv = next((i for i in range(r, n) if left[i] & bit), None)
        if piv is None:
            continue
        left[r], left[piv] = left[piv], left[r]
        right[r], right[piv] = right[piv], right[r]
        lr, rr = left[r], right[r]
        for i in range(n):
            if i != r and left[i] & bit:
                left[i] ^= lr
                right[i] ^= rr
        r += 1
    if r < n:
        raise SingularMatrixError(r, n)
    return Z2Matrix(n, n, tuple(right))
