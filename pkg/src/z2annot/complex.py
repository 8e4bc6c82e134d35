"""Weighted simplicial complexes, chains and boundary matrices over Z2."""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .z2core import ColumnReducer, Z2Matrix, bits_from_indices, iter_bits

Simplex = tuple[int, ...]

DEFAULT_WEIGHT = 1.0


class ComplexError(ValueError):
    """Malformed or invalid complex/cycle input."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Chain:
    """A Z2 chain of ``dim``-simplices, packed as a bit set over simplex ids."""

    dim: int
    members: int = 0

    @classmethod
    def from_ids(cls, dim: int, ids: Iterable[int]) -> "Chain":
        return cls(dim, bits_from_indices(ids))

    def ids(self) -> list[int]:
        return list(iter_bits(self.members))

    def __len__(self) -> int:
        return self.members.bit_count()

    def __bool__(self) -> bool:
        return self.members != 0

    def __contains__(self, sid: int) -> bool:
        return (self.members >> sid) & 1 == 1

    def __add__(self, other: "Chain") -> "Chain":
        if self.dim != other.dim:
            raise ValueError(f"cannot add a {self.dim}-chain and a {other.dim}-chain")
        return Chain(self.dim, self.members ^ other.members)

    __xor__ = __add__


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """Finite weighted simplicial complex with per-dimension simplex ids.

    ``simplices[p][i]`` is the sorted vertex tuple of the ``p``-simplex with
    id ``i`` and ``weights[p][i]`` its weight.  Use :func:`build_complex` or
    :func:`parse_complex` rather than the constructor; they validate closure
    and connectivity.
    """

    simplices: tuple[tuple[Simplex, ...], ...]
    weights: tuple[tuple[float, ...], ...]
    index: tuple[dict[Simplex, int], ...] = field(repr=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def count(self, p: int) -> int:
        if 0 <= p <= self.dim:
            return len(self.simplices[p])
        return 0

    @property
    def vertices(self) -> list[int]:
        """Vertex labels, indexed by 0-simplex id."""
        return [s[0] for s in self.simplices[0]]

    def id_of(self, simplex: Sequence[int]) -> int:
        s = tuple(sorted(simplex))
        return self.index[len(s) - 1][s]

    def weight(self, chain: Chain) -> float:
        w = self.weights[chain.dim]
        return sum((w[i] for i in chain.ids()), 0.0)

    def chain(self, simplices: Iterable[Sequence[int]]) -> Chain:
        """Chain from vertex tuples (all of one dimension)."""
        ids = []
        dim = None
        for s in simplices:
            s = tuple(sorted(s))
            if dim is None:
                dim = len(s) - 1
            elif len(s) - 1 != dim:
                raise ComplexError("mixed simplex dimensions in chain")
            ids.append(self.index[dim][s])
        members = 0
        for i in ids:
            members ^= 1 << i
        return Chain(dim if dim is not None else 1, members)

    def boundary_columns(self, p: int) -> list[int]:
        """Packed columns of the boundary matrix of dimension ``p``.

        For ``p > dim`` this is the empty list; for ``p == 0`` every column
        is zero.
        """
        key = ("bd", p)
        if key not in self._cache:
            if p > self.dim:
                cols: list[int] = []
            elif p == 0:
                cols = [0] * self.count(0)
            else:
                face_index = self.index[p - 1]
                cols = []
                for s in self.simplices[p]:
                    c = 0
                    for face in itertools.combinations(s, p):
                        c |= 1 << face_index[face]
                    cols.append(c)
            self._cache[key] = cols
        return self._cache[key]

    def boundary_rank(self, p: int) -> int:
        key = ("rank", p)
        if key not in self._cache:
            red = ColumnReducer()
            for col in self.boundary_columns(p):
                red.add(col)
            self._cache[key] = red.rank
        return self._cache[key]

    def edge_endpoints(self) -> list[tuple[int, int]]:
        """Endpoints of each edge as 0-simplex ids."""
        v = self.index[0]
        return [(v[(a,)], v[(b,)]) for a, b in self.simplices[1]] if self.dim >= 1 else []

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """``adj[u]`` = list of ``(neighbour, edge id)`` sorted by neighbour label."""
        if "adj" not in self._cache:
            labels = self.vertices
            adj: list[list[tuple[int, int]]] = [[] for _ in labels]
            for e, (a, b) in enumerate(self.edge_endpoints()):
                adj[a].append((b, e))
                adj[b].append((a, e))
            for nbrs in adj:
                nbrs.sort(key=lambda t: labels[t[0]])
            self._cache["adj"] = adj
        return self._cache["adj"]

    def serialize(self) -> str:
        lines = []
        for p, group in enumerate(self.simplices):
            for s, w in zip(group, self.weights[p]):
                lines.append(" ".join(map(str, s)) + f" w={w!r}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.simplices == other.simplices and self.weights == other.weights

    def __hash__(self) -> int:
        return hash((self.simplices, self.weights))


# ---------------------------------------------------------------------------
# Construction and parsing
# ---------------------------------------------------------------------------


def build_complex(
    simplices: Iterable[Sequence[int] | tuple[Sequence[int], float]],
    *,
    largest_component: bool = False,
    _lines: Sequence[int] | None = None,
) -> SimplicialComplex:
    """Build a complex from explicit simplices, adding implied faces.

    Items are vertex sequences or ``(vertices, weight)`` pairs.  Explicit
    simplices keep their input order; implied faces get weight 1.0 and are
    appended after the explicit ones of their dimension in lexicographic
    order.
    """
    explicit: dict[Simplex, float] = {}
    order: list[Simplex] = []
    for n, item in enumerate(simplices):
        line = _lines[n] if _lines is not None else None
        if isinstance(item, tuple) and len(item) == 2 and not isinstance(item[0], int):
            verts, w = item
        else:
            verts, w = item, DEFAULT_WEIGHT
        s = tuple(sorted(int(v) for v in verts))
        if not s:
            raise ComplexError("empty simplex", line)
        if len(set(s)) != len(s):
            raise ComplexError(f"repeated vertex in simplex {s}", line)
        w = float(w)
        if not w >= 0 or w == float("inf"):
            raise ComplexError(f"weight must be a finite non-negative number, got {w}", line)
        if s in explicit:
            if explicit[s] != w:
                raise ComplexError(f"duplicate simplex {s} with conflicting weight", line)
            continue
        explicit[s] = w
        order.append(s)

    if not order:
        raise ComplexError("complex is empty")
    dim = max(len(s) for s in order) - 1
    groups: list[list[Simplex]] = [[] for _ in range(dim + 1)]
    for s in order:
        groups[len(s) - 1].append(s)
    implied: list[set[Simplex]] = [set() for _ in range(dim + 1)]
    for p in range(dim, 0, -1):
        for s in itertools.chain(groups[p], implied[p]):
            for face in itertools.combinations(s, p):
                if face not in explicit:
                    implied[p - 1].add(face)
    for p in range(dim + 1):
        groups[p].extend(sorted(implied[p]))

    if largest_component:
        groups = _restrict_to_largest_component(groups)
    elif not _is_connected(groups):
        raise ComplexError("1-skeleton is disconnected (use --largest-component to keep the largest part)")

    while groups and not groups[-1]:
        groups.pop()
    simplices_t = tuple(tuple(g) for g in groups)
    weights_t = tuple(tuple(explicit.get(s, DEFAULT_WEIGHT) for s in g) for g in groups)
    index_t = tuple({s: i for i, s in enumerate(g)} for g in groups)
    return SimplicialComplex(simplices_t, weights_t, index_t)


def _components(groups: list[list[Simplex]]) -> list[set[int]]:
    adj: dict[int, list[int]] = {s[0]: [] for s in groups[0]}
    if len(groups) > 1:
        for a, b in groups[1]:
            adj[a].append(b)
            adj[b].append(a)
    seen: set[int] = set()
    comps = []
    for v in sorted(adj):
        if v in seen:
            continue
        comp = {v}
        seen.add(v)
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for x in adj[u]:
                if x not in seen:
                    seen.add(x)
                    comp.add(x)
                    queue.append(x)
        comps.append(comp)
    return comps


def _is_connected(groups: list[list[Simplex]]) -> bool:
    return len(_components(groups)) <= 1


def _restrict_to_largest_component(groups: list[list[Simplex]]) -> list[list[Simplex]]:
    comps = _components(groups)
    # largest by vertex count; ties go to the component holding the smallest label
    keep = max(comps, key=lambda c: (len(c), -min(c)))
    return [[s for s in g if s[0] in keep] for g in groups]


_WEIGHT_RE = re.compile(r"^w=(.+)$")


def _parse_simplex_line(raw: str, lineno: int) -> tuple[Simplex, float | None] | None:
    text = raw.split("#", 1)[0].strip()
    if not text:
        return None
    tokens = text.split()
    weight = None
    m = _WEIGHT_RE.match(tokens[-1])
    if m:
        try:
            weight = float(m.group(1))
        except ValueError:
            raise ComplexError(f"bad weight {tokens[-1]!r}", lineno) from None
        tokens = tokens[:-1]
    if not tokens:
        raise ComplexError("weight without vertices", lineno)
    try:
        verts = tuple(int(t) for t in tokens)
    except ValueError:
        raise ComplexError(f"vertex ids must be integers: {text!r}", lineno) from None
    if any(v < 0 for v in verts):
        raise ComplexError("vertex ids must be non-negative", lineno)
    return verts, weight


def parse_complex(text: str, *, largest_component: bool = False) -> SimplicialComplex:
    """Parse the line-per-simplex complex format.

    Each non-blank line lists the vertex ids of one simplex, optionally
    followed by ``w=<float>``.  ``#`` starts a comment.
    """
    items = []
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parsed = _parse_simplex_line(raw, lineno)
        if parsed is None:
            continue
        verts, w = parsed
        items.append((verts, DEFAULT_WEIGHT if w is None else w))
        lines.append(lineno)
    return build_complex(items, largest_component=largest_component, _lines=lines)


def read_complex(path: str, *, largest_component: bool = False) -> SimplicialComplex:
    with open(path, encoding="utf-8") as fh:
        return parse_complex(fh.read(), largest_component=largest_component)


def parse_chain(text: str, k: SimplicialComplex, dim: int | None = None) -> Chain:
    """Parse a cycle file: one simplex per line, all of the same dimension.

    Repeated simplices cancel (Z2 coefficients).  An empty file gives the
    empty chain of dimension ``dim`` (default 1).
    """
    members = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parsed = _parse_simplex_line(raw, lineno)
        if parsed is None:
            continue
        verts, _ = parsed
        s = tuple(sorted(verts))
        if len(set(s)) != len(s):
            raise ComplexError(f"repeated vertex in simplex {s}", lineno)
        d = len(s) - 1
        if dim is None:
            dim = d
        elif d != dim:
            raise ComplexError(f"expected a {dim}-simplex, got {s}", lineno)
        if d > k.dim or s not in k.index[d]:
            raise ComplexError(f"simplex {s} is not in the complex", lineno)
        members ^= 1 << k.index[d][s]
    return Chain(1 if dim is None else dim, members)


def read_chain(path: str, k: SimplicialComplex, dim: int | None = None) -> Chain:
    with open(path, encoding="utf-8") as fh:
        return parse_chain(fh.read(), k, dim)


def format_chain(k: SimplicialComplex, chain: Chain) -> str:
    return "".join(" ".join(map(str, k.simplices[chain.dim][i])) + "\n" for i in chain.ids())


# ---------------------------------------------------------------------------
# Homology basics
# ---------------------------------------------------------------------------


def boundary_matrix(k: SimplicialComplex, p: int) -> Z2Matrix:
    if not 1 <= p <= k.dim:
        raise ValueError(f"boundary dimension {p} out of range 1..{k.dim}")
    return Z2Matrix.from_columns(k.count(p - 1), k.boundary_columns(p))


def boundary(k: SimplicialComplex, chain: Chain) -> Chain:
    cols = k.boundary_columns(chain.dim)
    acc = 0
    for i in chain.ids():
        acc ^= cols[i]
    return Chain(chain.dim - 1, acc)


def is_cycle(k: SimplicialComplex, z: Chain) -> bool:
    if z.dim < 0 or z.dim > k.dim:
        raise ValueError(f"chain dimension {z.dim} out of range")
    if z.members >> k.count(z.dim):
        raise ValueError("chain refers to simplices outside the complex")
    if z.dim == 0:
        return True
    return boundary(k, z).members == 0


def betti(k: SimplicialComplex, p: int) -> int:
    if not 0 <= p <= k.dim:
        raise ValueError(f"dimension {p} out of range 0..{k.dim}")
    rank_p = k.boundary_rank(p) if p > 0 else 0
    return k.count(p) - rank_p - k.boundary_rank(p + 1)
