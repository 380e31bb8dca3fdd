"""Bit-parallel connectivity over many edge subsets at once, and colex edge-set enumeration.

An edge subset is an integer mask over a fixed edge list. Connectivity of many
masks is decided together by growing the set of vertices reachable from
vertex 0 until it stops changing.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from .exactmath import binom

# 2**24 masks is a 16 MiB table; covers every ensemble with k <= 7
TABLE_MAX_PAIRS = 24


def complete_pairs(k: int) -> List[Tuple[int, int]]:
    """All vertex pairs of K_k in colex order: index(i, j) = j(j-1)/2 + i."""
    return [(i, j) for j in range(k) for i in range(j)]


def _mask_dtype(nbits: int):
    return np.uint32 if nbits <= 32 else np.uint64


def survivors_connected(k: int, edges: Sequence[Tuple[int, int]], masks: np.ndarray) -> np.ndarray:
    """Boolean array: does the spanning subgraph with edge set ``masks[t]`` connect all k vertices?"""
    if k > 64:
        raise ValueError("bit-parallel connectivity supports at most 64 vertices")
    masks = np.asarray(masks)
    reach = np.ones(masks.shape, dtype=np.uint64)
    alive = [((masks >> np.array(e, dtype=masks.dtype)) & 1).astype(bool) for e in range(len(edges))]
    ends = [(np.uint64(a), np.uint64(b), np.uint64((1 << a) | (1 << b))) for a, b in edges]
    one = np.uint64(1)
    while True:
        before = reach.copy()
        for live, (a, b, both) in zip(alive, ends):
            hit = live & ((((reach >> a) | (reach >> b)) & one) != 0)
            reach[hit] |= both
        if np.array_equal(before, reach):
            break
    full = np.uint64((1 << k) - 1) if k < 64 else np.uint64(0xFFFFFFFFFFFFFFFF)
    return reach == full


@lru_cache(maxsize=4)
def connectivity_table(k: int) -> np.ndarray:
    """``table[mask]`` is True iff the subgraph of K_k with edge mask ``mask`` is connected."""
    pairs = complete_pairs(k)
    if len(pairs) > TABLE_MAX_PAIRS:
        raise ValueError(f"K_{k} has {len(pairs)} pairs; table limited to {TABLE_MAX_PAIRS}")
    masks = np.arange(1 << len(pairs), dtype=_mask_dtype(len(pairs)))
    table = survivors_connected(k, pairs, masks)
    table.setflags(write=False)
    return table


def has_table(k: int) -> bool:
    return k * (k - 1) // 2 <= TABLE_MAX_PAIRS


@lru_cache(maxsize=8)
def popcounts(nbits: int) -> np.ndarray:
    x = np.arange(1 << nbits, dtype=np.int64)
    out = np.zeros(1 << nbits, dtype=np.int64)
    for b in range(nbits):
        out += (x >> b) & 1
    return out


def subset_unions(weights: np.ndarray) -> np.ndarray:
    """For rows of per-edge bit weights (B, n), all 2**n subset ORs (B, 2**n).

    Column s holds the OR of weights[:, e] over the bits e set in s.
    """
    out = np.zeros((weights.shape[0], 1), dtype=weights.dtype)
    for e in range(weights.shape[1]):
        out = np.concatenate([out, out | weights[:, e:e + 1]], axis=1)
    return out


# colex order over n-subsets {c_1 < ... < c_n} of range(K): rank = sum_i C(c_i, i)

def colex_unrank(rank: int, K: int, n: int) -> List[int]:
    comb = []
    for i in range(n, 0, -1):
        c = i - 1
        while binom(c + 1, i) <= rank:
            c += 1
        rank -= binom(c, i)
        comb.append(c)
    comb.reverse()
    if comb and comb[-1] >= K:
        raise IndexError("rank beyond the number of combinations")
    return comb


def colex_rank(comb: Sequence[int]) -> int:
    return sum(binom(c, i) for i, c in enumerate(sorted(comb), start=1))


def colex_next(comb: List[int], K: int) -> bool:
    """Advance ``comb`` in place; False once the last combination has been passed."""
    n = len(comb)
    for i in range(n):
        limit = comb[i + 1] if i + 1 < n else K
        if comb[i] + 1 < limit:
            comb[i] += 1
            for t in range(i):
                comb[t] = t
            return True
    return False


def colex_block(K: int, n: int, start: int, stop: int) -> np.ndarray:
    """Combinations with colex ranks in [start, stop) as an int array of shape (stop - start, n)."""
    out = np.empty((max(stop - start, 0), n), dtype=np.int64)
    if stop <= start:
        return out
    comb = colex_unrank(start, K, n)
    for r in range(stop - start):
        out[r] = comb
        if r + 1 < stop - start:
            colex_next(comb, K)
    return out


def iter_colex(K: int, n: int, start: int, stop: int) -> Iterator[Tuple[int, ...]]:
    if stop <= start:
        return
    comb = colex_unrank(start, K, n)
    for _ in range(stop - start):
        yield tuple(comb)
        colex_next(comb, K)
