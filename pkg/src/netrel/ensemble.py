"""Ensemble averages over uniformly drawn simple graphs with k vertices and n edges.

Closed forms (average input-output weight table, bounds on the unconnected
probability and on the expected failure probability) sit next to exhaustive
enumerations and a Monte Carlo estimator that check them.

Every quantity averaged here (connectivity, incidence rank, IO weight tallies,
failure polynomials) is invariant under relabeling edges, so exhaustive scans
walk the C(C(k,2), n) edge sets once each instead of all n! orderings.
Edge sets are visited in colex order and split into fixed index ranges, so
the tallies do not depend on the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from . import _bitconn
from .exactmath import EpsPolynomial, Rational, RationalLike, as_rational, bernstein_sum, binom
from .exceptions import CapacityError, DomainError
from .graphcore import LabeledGraph, f2_rank, incidence_matrix, io_weight_table, is_connected
from .reliability import DEFAULT_ENUM_MAX_EDGES, failure_profile_enum

DEFAULT_MAX_EDGE_SETS = 10 ** 7
DEFAULT_IOW_MAX_EDGE_SETS = 10 ** 5
CHUNK_EDGE_SETS = 2048
MC_BLOCK_TRIALS = 1 << 14
RNG_ALGORITHM = "numpy.PCG64/SeedSequence(seed, block)"

# subset table rows per numpy batch in the failure scan
_BATCH_CELLS = 1 << 22


@dataclass(frozen=True)
class EnsembleParams:
    k: int
    n: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise DomainError(f"k must be an integer >= 2, got {self.k!r}")
        top = self.k * (self.k - 1) // 2
        if not isinstance(self.n, int) or not 1 <= self.n <= top:
            raise DomainError(f"n must be an integer in [1, {top}] for k={self.k}, got {self.n!r}")

    @property
    def pairs(self) -> int:
        """C(k, 2), the number of possible edges."""
        return self.k * (self.k - 1) // 2

    @property
    def edge_sets(self) -> int:
        """C(C(k,2), n), the number of distinct edge sets."""
        return binom(self.pairs, self.n)


@dataclass(frozen=True)
class ExpectedIOWeightTable:
    entries: Tuple[Tuple[Rational, ...], ...]

    def __getitem__(self, uv):
        u, v = uv
        return self.entries[u][v]

    def column_sums(self) -> List[Rational]:
        return [sum((row[v] for row in self.entries), Rational(0)) for v in range(len(self.entries[0]))]


@dataclass(frozen=True)
class McEstimate:
    mean: float
    stderr: float
    trials: int
    seed: int
    failures: int = 0
    rng: str = RNG_ALGORITHM

    def zscore(self, reference) -> float:
        if self.stderr == 0:
            return 0.0 if float(reference) == self.mean else math.inf
        return (self.mean - float(reference)) / self.stderr


# ---------------------------------------------------------------- closed forms

def _cut_pairs(k: int, u: int) -> int:
    return u * (k - u)


def match_probability(p: EnsembleParams, u: int, v: int) -> Rational:
    """Probability that a fixed weight-u row vector maps onto a fixed weight-v cut vector."""
    if not 0 <= u <= p.k or not 0 <= v <= p.n:
        raise DomainError(f"need 0 <= u <= {p.k} and 0 <= v <= {p.n}, got u={u}, v={v}")
    c = _cut_pairs(p.k, u)
    return Rational(binom(c, v) * binom(p.pairs - c, p.n - v), binom(p.n, v) * p.edge_sets)


def expected_iow(p: EnsembleParams) -> ExpectedIOWeightTable:
    rows = []
    for u in range(p.k + 1):
        c = _cut_pairs(p.k, u)
        rows.append(tuple(
            Rational(binom(p.k, u) * binom(c, v) * binom(p.pairs - c, p.n - v), p.edge_sets)
            for v in range(p.n + 1)
        ))
    return ExpectedIOWeightTable(tuple(rows))


def expected_t(p: EnsembleParams) -> Rational:
    """Average size of the left null space of the incidence matrix."""
    total = sum(binom(p.k, u) * binom(p.pairs - _cut_pairs(p.k, u), p.n) for u in range(p.k + 1))
    return Rational(total, p.edge_sets)


def pu_upper(p: EnsembleParams) -> Rational:
    """Upper bound on P_U from E[T] >= 2 + 2 P_U. Not clamped; may exceed 1."""
    return expected_t(p) / 2 - 1


def pu_lower_raw(p: EnsembleParams) -> Rational:
    """Isolated-vertex lower bound on P_U, before flooring; can be negative."""
    k, n = p.k, p.n
    inner = binom(binom(k - 1, 2), n) - (k - 1) * binom(binom(k - 2, 2), n)
    return Rational(k * inner, p.edge_sets)


def pu_lower(p: EnsembleParams, floor: bool = True) -> Rational:
    raw = pu_lower_raw(p)
    return max(raw, Rational(0)) if floor else raw


def epf_upper(p: EnsembleParams) -> EpsPolynomial:
    """Upper bound on E[P_f] as a polynomial; its constant term is :func:`pu_upper`."""
    coeffs = [pu_upper(p)]
    for v in range(1, p.n + 1):
        s = sum(binom(p.k, u) * binom(_cut_pairs(p.k, u), v) * binom(p.pairs - _cut_pairs(p.k, u), p.n - v)
                for u in range(p.k + 1))
        coeffs.append(Rational(s, 2 * p.edge_sets))
    return EpsPolynomial(coeffs)


def epf_lower(p: EnsembleParams, floor: bool = True) -> EpsPolynomial:
    """Lower bound on E[P_f]: average cut weights times eps^v (1-eps)^(n-v), plus half the P_U lower bound."""
    weights = [Rational(0)] + expected_iow(p).column_sums()[1:]
    weights = [w / 2 for w in weights]
    return bernstein_sum(weights, p.n) + pu_lower(p, floor=floor) / 2


# ---------------------------------------------------------- exhaustive scans

def _check_cap(p: EnsembleParams, max_sets: int) -> None:
    if p.edge_sets > max_sets:
        raise CapacityError(f"ensemble ({p.k},{p.n}) has {p.edge_sets} edge sets; cap is {max_sets}")


def _run_chunks(fn: Callable, p: EnsembleParams, workers: int, chunk: int = CHUNK_EDGE_SETS):
    """Apply fn(k, n, start, stop) over fixed colex rank ranges and sum the integer tallies."""
    total = p.edge_sets
    starts = list(range(0, total, chunk))
    stops = [min(s + chunk, total) for s in starts]
    ks, ns = [p.k] * len(starts), [p.n] * len(starts)
    if workers > 1 and len(starts) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(fn, ks, ns, starts, stops))
    else:
        parts = [fn(*args) for args in zip(ks, ns, starts, stops)]
    acc = np.zeros_like(parts[0], dtype=object)
    for part in parts:
        acc = acc + np.asarray(part, dtype=object)
    return acc


def _graph(k: int, pairs, comb) -> LabeledGraph:
    return LabeledGraph(k, tuple(pairs[c] for c in comb))


def _failure_chunk(k: int, n: int, start: int, stop: int) -> List[int]:
    """Summed N_0..N_n over the chunk, then the unconnected count in the last slot."""
    K = k * (k - 1) // 2
    out = np.zeros(n + 2, dtype=np.int64)
    if _bitconn.has_table(k):
        table = _bitconn.connectivity_table(k)
        dtype = np.uint32 if K <= 32 else np.uint64
        failed = n - _bitconn.popcounts(n)
        combos = _bitconn.colex_block(K, n, start, stop)
        batch = max(1, _BATCH_CELLS >> n)
        for lo in range(0, len(combos), batch):
            weights = (np.ones(1, dtype=dtype) << combos[lo:lo + batch].astype(dtype))
            survivors = _bitconn.subset_unions(weights)
            disconnected = ~table[survivors]
            per_subset = disconnected.sum(axis=0)
            np.add.at(out, failed, per_subset.astype(np.int64))
            # the full survivor set is the drawn graph itself
            out[n + 1] += int(disconnected[:, -1].sum())
    else:
        pairs = _bitconn.complete_pairs(k)
        for comb in _bitconn.iter_colex(K, n, start, stop):
            g = _graph(k, pairs, comb)
            prof = failure_profile_enum(g, max_edges=DEFAULT_ENUM_MAX_EDGES)
            out[:n + 1] += prof.counts
            out[n + 1] += prof.counts[0]
    return out.tolist()


def _rank_chunk(k: int, n: int, start: int, stop: int) -> List[int]:
    K = k * (k - 1) // 2
    pairs = _bitconn.complete_pairs(k)
    hist = [0] * (k + 1)
    for comb in _bitconn.iter_colex(K, n, start, stop):
        hist[f2_rank(incidence_matrix(_graph(k, pairs, comb)))] += 1
    return hist


def _iow_chunk(k: int, n: int, start: int, stop: int) -> List[List[int]]:
    K = k * (k - 1) // 2
    pairs = _bitconn.complete_pairs(k)
    acc = np.zeros((k + 1, n + 1), dtype=np.int64)
    for comb in _bitconn.iter_colex(K, n, start, stop):
        acc += np.array(io_weight_table(_graph(k, pairs, comb)).entries, dtype=np.int64)
    return acc.tolist()


@dataclass(frozen=True)
class FailureTally:
    """Exhaustive ensemble totals: sum over edge sets of N_j, and the unconnected count."""

    params: EnsembleParams
    counts: Tuple[int, ...]
    unconnected: int

    def polynomial(self) -> EpsPolynomial:
        total = self.params.edge_sets
        return bernstein_sum([Rational(c, total) for c in self.counts], self.params.n)

    def pu(self) -> Rational:
        return Rational(self.unconnected, self.params.edge_sets)


def failure_tally(p: EnsembleParams, workers: int = 1, max_sets: int = DEFAULT_MAX_EDGE_SETS) -> FailureTally:
    _check_cap(p, max_sets)
    if p.n > DEFAULT_ENUM_MAX_EDGES:
        raise CapacityError(f"per-graph subset enumeration capped at n={DEFAULT_ENUM_MAX_EDGES}")
    acc = _run_chunks(_failure_chunk, p, workers)
    return FailureTally(p, tuple(int(c) for c in acc[:-1]), int(acc[-1]))


def epf_exact(p: EnsembleParams, workers: int = 1, max_sets: int = DEFAULT_MAX_EDGE_SETS) -> EpsPolynomial:
    """E[P_f] as an exact polynomial, averaging N_j over every edge set."""
    return failure_tally(p, workers, max_sets).polynomial()


def pu_exact(p: EnsembleParams, workers: int = 1, max_sets: int = DEFAULT_MAX_EDGE_SETS) -> Rational:
    """Fraction of edge sets that leave the graph unconnected."""
    _check_cap(p, max_sets)
    acc = _run_chunks(_unconnected_chunk, p, workers)
    return Rational(int(acc[0]), p.edge_sets)


def _unconnected_chunk(k: int, n: int, start: int, stop: int) -> List[int]:
    K = k * (k - 1) // 2
    if not _bitconn.has_table(k):
        pairs = _bitconn.complete_pairs(k)
        return [sum(not is_connected(_graph(k, pairs, c)) for c in _bitconn.iter_colex(K, n, start, stop))]
    combos = _bitconn.colex_block(K, n, start, stop)
    dtype = np.uint32 if K <= 32 else np.uint64
    masks = np.bitwise_or.reduce(np.ones(1, dtype=dtype) << combos.astype(dtype), axis=1)
    return [int((~_bitconn.connectivity_table(k)[masks]).sum())]


def rank_distribution(p: EnsembleParams, workers: int = 1, max_sets: int = DEFAULT_MAX_EDGE_SETS) -> List[Rational]:
    """``out[i]`` is the probability the incidence matrix has rank k - i; ``out[0]`` is always 0."""
    _check_cap(p, max_sets)
    hist = _run_chunks(_rank_chunk, p, workers)
    return [Rational(int(hist[p.k - i]), p.edge_sets) for i in range(p.k)]


def average_io_weight_table(p: EnsembleParams, workers: int = 1,
                            max_sets: int = DEFAULT_IOW_MAX_EDGE_SETS) -> ExpectedIOWeightTable:
    """Entrywise mean of the IO weight table over every edge set."""
    _check_cap(p, max_sets)
    acc = _run_chunks(_iow_chunk, p, workers)
    return ExpectedIOWeightTable(tuple(
        tuple(Rational(int(x), p.edge_sets) for x in row) for row in acc
    ))


# ---------------------------------------------------------------- Monte Carlo

def _mc_block(k: int, n: int, eps: float, seed: int, block: int, trials: int) -> int:
    """Number of failed trials in one independently seeded block."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(block,))))
    K = k * (k - 1) // 2
    rows = np.arange(trials)
    perm = np.tile(np.arange(K, dtype=np.int64), (trials, 1))
    # partial Fisher-Yates: the first n slots become a uniform n-subset
    for i in range(n):
        j = i + rng.integers(0, K - i, size=trials)
        tmp = perm[rows, i].copy()
        perm[rows, i] = perm[rows, j]
        perm[rows, j] = tmp
    chosen = perm[:, :n]
    survive = rng.random((trials, n)) >= eps
    dtype = np.uint32 if K <= 32 else np.uint64
    bits = np.where(survive, np.ones(1, dtype=dtype) << chosen.astype(dtype), dtype(0))
    masks = np.bitwise_or.reduce(bits, axis=1)
    # a survivor subgraph of an unconnected draw is itself unconnected
    if _bitconn.has_table(k):
        connected = _bitconn.connectivity_table(k)[masks]
    else:
        connected = _bitconn.survivors_connected(k, _bitconn.complete_pairs(k), masks)
    return int((~connected).sum())


def epf_montecarlo(p: EnsembleParams, eps: RationalLike, trials: int, seed: int,
                   workers: int = 1) -> McEstimate:
    """Sample (graph, failure pattern) pairs and report the failure frequency.

    Trials are split into fixed blocks of ``MC_BLOCK_TRIALS``; block b draws
    from its own stream seeded by ``(seed, b)``, so results do not depend on
    ``workers``.
    """
    eps = as_rational(eps)
    if not 0 < eps < 1:
        raise DomainError(f"eps must lie strictly in (0, 1), got {eps}")
    if not isinstance(trials, int) or trials < 1:
        raise DomainError(f"trials must be a positive integer, got {trials!r}")
    if not isinstance(seed, int) or not 0 <= seed < 1 << 64:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    sizes = [MC_BLOCK_TRIALS] * (trials // MC_BLOCK_TRIALS)
    if trials % MC_BLOCK_TRIALS:
        sizes.append(trials % MC_BLOCK_TRIALS)
    args = [(p.k, p.n, float(eps), seed, b, m) for b, m in enumerate(sizes)]
    if workers > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_mc_block, *zip(*args)))
    else:
        parts = [_mc_block(*a) for a in args]
    failures = sum(parts)
    mean = failures / trials
    if trials > 1:
        var = (failures - failures * failures / trials) / (trials - 1)
        stderr = math.sqrt(max(var, 0.0) / trials)
    else:
        stderr = 0.0
    return McEstimate(mean, stderr, trials, seed, failures)


# ---------------------------------------------------------------- bound curves

def log_grid(lo: RationalLike, hi: RationalLike, points: int, log: bool = True) -> List[Rational]:
    """Grid points rounded to 12 significant digits and held as exact decimals."""
    lo_f, hi_f = float(as_rational(lo)), float(as_rational(hi))
    if points < 1:
        raise DomainError("a grid needs at least one point")
    if points == 1:
        values = [lo_f]
    elif log:
        if lo_f <= 0:
            raise DomainError("log grid needs a positive lower end")
        a, b = math.log10(lo_f), math.log10(hi_f)
        values = [10 ** (a + (b - a) * i / (points - 1)) for i in range(points)]
        values[0], values[-1] = lo_f, hi_f
    else:
        values = [lo_f + (hi_f - lo_f) * i / (points - 1) for i in range(points)]
    return [Rational(Decimal(f"{x:.12g}")) for x in values]


def default_grid() -> List[Rational]:
    """60 log-spaced points from 1e-6 to 0.5."""
    return log_grid(Rational(1, 10 ** 6), Rational(1, 2), 60)


@dataclass(frozen=True)
class BoundRow:
    eps: Rational
    lower: Optional[Rational] = None
    exact: Optional[Rational] = None
    upper: Optional[Rational] = None
    mc: Optional[float] = None
    mc_stderr: Optional[float] = None


@dataclass
class BoundCurve:
    k: int
    n: int
    rows: List[BoundRow]
    exact_method: Optional[str] = None
    meta: dict = field(default_factory=dict)


COLUMNS = ("lower", "exact", "mc", "upper")


def bound_curve(p: EnsembleParams, grid: Sequence[RationalLike], columns: Sequence[str] = ("lower", "exact", "upper"),
                trials: int = 10 ** 4, seed: int = 0, workers: int = 1, clamp: bool = False,
                max_sets: int = DEFAULT_MAX_EDGE_SETS) -> BoundCurve:
    """Evaluate the requested columns on every grid point.

    All Monte Carlo points share ``seed`` (common random numbers), which keeps
    the sampled curve monotone in eps.
    """
    unknown = set(columns) - set(COLUMNS)
    if unknown:
        raise DomainError(f"unknown columns: {sorted(unknown)}")
    if not columns:
        raise DomainError("no columns requested")
    grid = [as_rational(e) for e in grid]
    lower = epf_lower(p) if "lower" in columns else None
    upper = epf_upper(p) if "upper" in columns else None
    exact = epf_exact(p, workers=workers, max_sets=max_sets) if "exact" in columns else None
    rows = []
    for eps in grid:
        up = None
        if upper is not None:
            up = upper(eps)
            if clamp:
                up = min(up, Rational(1))
        mc = None
        if "mc" in columns:
            mc = epf_montecarlo(p, eps, trials, seed, workers=workers)
        rows.append(BoundRow(
            eps=eps,
            lower=lower(eps) if lower is not None else None,
            exact=exact(eps) if exact is not None else None,
            upper=up,
            mc=mc.mean if mc else None,
            mc_stderr=mc.stderr if mc else None,
        ))
    raw_lower = pu_lower_raw(p)
    meta = {
        "k": p.k,
        "n": p.n,
        "edge_sets": p.edge_sets,
        "max_edge_sets": max_sets,
        "max_graph_edges": DEFAULT_ENUM_MAX_EDGES,
        "pu_lower_raw": raw_lower,
        "pu_lower_floored": raw_lower < 0,
        "upper_clamped": clamp,
    }
    if "mc" in columns:
        meta.update(seed=seed, trials=trials, rng=RNG_ALGORITHM, mc_block_trials=MC_BLOCK_TRIALS)
    method = "exhaustive edge-set enumeration x survivor-subset enumeration" if exact is not None else None
    return BoundCurve(p.k, p.n, rows, method, meta)
