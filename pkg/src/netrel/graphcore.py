"""Labeled simple graphs, F2 incidence matrices and cut-set weight tallies.

Vertices are 0-based internally and 1-based in the text format. Edge labels
are positions in ``LabeledGraph.edges``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .exceptions import CapacityError, GraphFormatError, PreconditionError

DEFAULT_IOW_MAX_K = 24
DEFAULT_CUTSET_MAX_K = 20

Edge = Tuple[int, int]


class DisjointSet:
    """Union-find over ``0..size-1`` with path halving and union by size."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.size = [1] * size
        self.n_sets = size

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        """Merge the sets of x and y; False if they were already together."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        self.n_sets -= 1
        return True


@dataclass(frozen=True)
class LabeledGraph:
    """Simple graph on ``k`` vertices with labeled edges (0-based endpoints, i < j)."""

    k: int
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise PreconditionError(f"need at least 2 vertices, got k={self.k!r}")
        normalized = []
        seen = set()
        for pos, (a, b) in enumerate(self.edges):
            a, b = int(a), int(b)
            if a == b:
                raise PreconditionError(f"edge {pos} is a self-loop on vertex {a}")
            if a > b:
                a, b = b, a
            if a < 0 or b >= self.k:
                raise PreconditionError(f"edge {pos} ({a}, {b}) outside vertex range 0..{self.k - 1}")
            if (a, b) in seen:
                raise PreconditionError(f"edge {pos} ({a}, {b}) duplicates an earlier edge")
            seen.add((a, b))
            normalized.append((a, b))
        max_edges = self.k * (self.k - 1) // 2
        if not 1 <= len(normalized) <= max_edges:
            raise PreconditionError(f"edge count must be in [1, {max_edges}], got {len(normalized)}")
        object.__setattr__(self, "edges", tuple(normalized))

    @classmethod
    def from_pairs(cls, k: int, pairs: Iterable[Sequence[int]], one_based: bool = False) -> "LabeledGraph":
        shift = 1 if one_based else 0
        return cls(k, tuple((a - shift, b - shift) for a, b in pairs))

    @property
    def n(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class F2Matrix:
    """Dense matrix over F2; ``rows[i]`` is an int whose bit j is entry (i, j)."""

    nrows: int
    ncols: int
    rows: Tuple[int, ...]

    def __getitem__(self, ij):
        i, j = ij
        return (self.rows[i] >> j) & 1

    def column(self, j: int) -> int:
        """Column j as a bit-packed int over the row index."""
        return sum(((r >> j) & 1) << i for i, r in enumerate(self.rows))

    def left_multiply(self, m: int) -> int:
        """Product m * M over F2 for a bit-packed row vector m."""
        c = 0
        i = 0
        while m:
            if m & 1:
                c ^= self.rows[i]
            m >>= 1
            i += 1
        return c

    def to_lists(self) -> List[List[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]


@dataclass(frozen=True)
class IOWeightTable:
    """``entries[u][v]`` counts row vectors m of weight u whose image m*M has weight v."""

    entries: Tuple[Tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.entries) - 1

    @property
    def n(self) -> int:
        return len(self.entries[0]) - 1

    def __getitem__(self, uv):
        u, v = uv
        return self.entries[u][v]

    def total(self) -> int:
        return sum(map(sum, self.entries))

    def column_sums(self) -> List[int]:
        return [sum(row[v] for row in self.entries) for v in range(self.n + 1)]


def incidence_matrix(g: LabeledGraph) -> F2Matrix:
    rows = [0] * g.k
    for j, (a, b) in enumerate(g.edges):
        rows[a] |= 1 << j
        rows[b] |= 1 << j
    return F2Matrix(g.k, g.n, tuple(rows))


def f2_rank(m: F2Matrix) -> int:
    """Rank over F2 by Gaussian elimination on bit-packed rows."""
    # basis keyed by leading bit; each row is reduced against it
    basis = {}
    for r in m.rows:
        while r:
            top = r.bit_length() - 1
            pivot = basis.get(top)
            if pivot is None:
                basis[top] = r
                break
            r ^= pivot
    return len(basis)


def component_count(g: LabeledGraph) -> int:
    ds = DisjointSet(g.k)
    for a, b in g.edges:
        ds.union(a, b)
    return ds.n_sets


def is_connected(g: LabeledGraph) -> bool:
    return component_count(g) == 1


def io_weight_table(g: LabeledGraph, max_k: int = DEFAULT_IOW_MAX_K) -> IOWeightTable:
    """Tally (weight(m), weight(m*M)) over all 2**k row vectors m."""
    if g.k > max_k:
        raise CapacityError(f"io_weight_table enumerates 2**k vectors; k={g.k} exceeds cap {max_k}")
    rows = incidence_matrix(g).rows
    table = [[0] * (g.n + 1) for _ in range(g.k + 1)]
    # Gray-code walk: consecutive m differ in one bit, so c changes by one row
    c = 0
    m = 0
    table[0][0] = 1
    for step in range(1, 1 << g.k):
        bit = (step & -step).bit_length() - 1
        m ^= 1 << bit
        c ^= rows[bit]
        table[m.bit_count()][c.bit_count()] += 1
    return IOWeightTable(tuple(tuple(r) for r in table))


def cut_weight_distribution(g: LabeledGraph, max_k: int = DEFAULT_IOW_MAX_K) -> Tuple[int, ...]:
    """B_v for a connected graph, as half the column sums of the IO weight table."""
    if not is_connected(g):
        raise PreconditionError("cut_weight_distribution requires a connected graph")
    sums = io_weight_table(g, max_k).column_sums()
    assert all(s % 2 == 0 for s in sums)
    return tuple(s // 2 for s in sums)


def cutset_oracle(g: LabeledGraph, max_k: int = DEFAULT_CUTSET_MAX_K) -> Tuple[int, ...]:
    """B_v by listing the bridging edge set of every vertex bipartition."""
    if g.k > max_k:
        raise CapacityError(f"cutset_oracle enumerates 2**(k-1) bipartitions; k={g.k} exceeds cap {max_k}")
    # vertex k-1 is pinned to the second side so each unordered bipartition appears once
    cutsets = set()
    for side in range(1 << (g.k - 1)):
        mask = 0
        for j, (a, b) in enumerate(g.edges):
            if ((side >> a) & 1) != ((side >> b) & 1):
                mask |= 1 << j
        cutsets.add(mask)
    counts = [0] * (g.n + 1)
    for mask in cutsets:
        counts[mask.bit_count()] += 1
    return tuple(counts)


def null_space_size(g: LabeledGraph) -> int:
    """T(G) = |{m : m*M = 0}| = 2**(k - rank)."""
    return 1 << (g.k - f2_rank(incidence_matrix(g)))


def parse_graph(text: str) -> LabeledGraph:
    """Read the ``k n`` header plus ``n`` lines of 1-based ``i j`` pairs.

    Blank lines and ``#`` comments are ignored.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body.split()))
    if not lines:
        raise GraphFormatError("empty graph file")
    lineno, header = lines[0]
    if len(header) != 2:
        raise GraphFormatError(f"expected header 'k n', got {' '.join(header)!r}", lineno)
    k, n = _parse_ints(header, lineno)
    if k < 2:
        raise GraphFormatError(f"k must be at least 2, got {k}", lineno)
    if not 1 <= n <= k * (k - 1) // 2:
        raise GraphFormatError(f"n must be in [1, {k * (k - 1) // 2}], got {n}", lineno)
    body = lines[1:]
    if len(body) != n:
        last = body[-1][0] if body else lineno
        raise GraphFormatError(f"header announces {n} edges but {len(body)} edge lines follow", last)
    seen = {}
    pairs = []
    for lineno, fields in body:
        if len(fields) != 2:
            raise GraphFormatError(f"expected 'i j', got {' '.join(fields)!r}", lineno)
        i, j = _parse_ints(fields, lineno)
        if i == j:
            raise GraphFormatError(f"self-loop {i} {j}", lineno)
        if not (1 <= i <= k and 1 <= j <= k):
            raise GraphFormatError(f"vertex out of range 1..{k} in {i} {j}", lineno)
        if i > j:
            raise GraphFormatError(f"endpoints must satisfy i < j, got {i} {j}", lineno)
        if (i, j) in seen:
            raise GraphFormatError(f"duplicate edge {i} {j} (first on line {seen[(i, j)]})", lineno)
        seen[(i, j)] = lineno
        pairs.append((i, j))
    return LabeledGraph.from_pairs(k, pairs, one_based=True)


def _parse_ints(fields, lineno):
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise GraphFormatError(f"non-integer field in {' '.join(fields)!r}", lineno) from None


def format_graph(g: LabeledGraph) -> str:
    out = [f"{g.k} {g.n}"]
    out.extend(f"{a + 1} {b + 1}" for a, b in g.edges)
    return "\n".join(out) + "\n"
