"""Exact network failure polynomials of single graphs.

Two independent routes produce the same polynomial in eps:

* :func:`failure_profile_enum` counts, for every failure-set size j, the
  subsets whose removal disconnects the graph (N_j) and expands
  ``sum_j N_j eps**j (1 - eps)**(n - j)``;
* :func:`failure_profile_pivotal` conditions on one edge at a time
  (contract on survival, delete on failure).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np

from . import _bitconn
from .exactmath import EpsPolynomial, Rational, RationalLike, as_rational, bernstein_sum, binom, poly_eval
from .exceptions import CapacityError, DomainError
from .graphcore import DisjointSet, LabeledGraph, is_connected

DEFAULT_ENUM_MAX_EDGES = 24

_ONE = EpsPolynomial([1])
_ZERO = EpsPolynomial()
_EPS = EpsPolynomial.eps()


class BoundaryEpsWarning(UserWarning):
    """eps was exactly 0 or 1, outside the open interval the model assumes."""


@dataclass(frozen=True)
class FailureProfile:
    n: int
    counts: Tuple[int, ...]
    polynomial: EpsPolynomial

    def normalized(self) -> List[Rational]:
        """N_j / C(n, j): the probability that a uniform j-subset of failures disconnects."""
        return [Rational(c, binom(self.n, j)) for j, c in enumerate(self.counts)]


def failure_profile_enum(g: LabeledGraph, max_edges: int = DEFAULT_ENUM_MAX_EDGES) -> FailureProfile:
    if g.n > max_edges:
        raise CapacityError(f"subset enumeration visits 2**n sets; n={g.n} exceeds cap {max_edges}")
    n = g.n
    if not is_connected(g):
        counts = tuple(binom(n, j) for j in range(n + 1))
    else:
        survivors = np.arange(1 << n, dtype=np.uint32 if n <= 31 else np.uint64)
        connected = _bitconn.survivors_connected(g.k, g.edges, survivors)
        failed = n - _bitconn.popcounts(n)[~connected]
        counts = tuple(int(c) for c in np.bincount(failed, minlength=n + 1))
    return FailureProfile(n, counts, bernstein_sum(counts, n))


# Contraction state: vertex count plus edges (label, a, b, failure polynomial),
# sorted by label, simple (no loops, parallels merged).
_CEdge = Tuple[int, int, int, EpsPolynomial]


def failure_profile_pivotal(g: LabeledGraph) -> EpsPolynomial:
    """1 - R(G), with R from recursive edge conditioning on the lowest label.

    Parallel edges created by a contraction are merged into one edge whose
    failure polynomial is the product of theirs. No memoization, so cost
    doubles per edge in the worst case.
    """
    edges = [(j, a, b, _EPS) for j, (a, b) in enumerate(g.edges)]
    return _ONE - _reliability(g.k, edges)


def _reliability(nv: int, edges: List[_CEdge]) -> EpsPolynomial:
    if nv == 1:
        return _ONE
    ds = DisjointSet(nv)
    for _, a, b, _p in edges:
        ds.union(a, b)
    if ds.n_sets > 1:
        return _ZERO
    if len(edges) == nv - 1:
        # a spanning tree survives only if every edge does
        out = _ONE
        for *_, p in edges:
            out = out * (_ONE - p)
        return out
    _, a, b, p = edges[0]
    rest = edges[1:]
    deleted = _reliability(nv, rest)
    contracted = _reliability(nv - 1, _contract(rest, a, b))
    return (_ONE - p) * contracted + p * deleted


def _contract(edges: List[_CEdge], a: int, b: int) -> List[_CEdge]:
    """Merge vertex b into a (a < b); vertices above b shift down by one."""

    def relabel(x):
        if x == b:
            x = a
        return x - 1 if x > b else x

    merged: Dict[Tuple[int, int], List] = {}
    for label, x, y, p in edges:
        x, y = relabel(x), relabel(y)
        if x == y:
            continue
        key = (x, y) if x < y else (y, x)
        if key in merged:
            slot = merged[key]
            slot[0] = min(slot[0], label)
            slot[1] = slot[1] * p
        else:
            merged[key] = [label, p]
    return sorted((label, x, y, p) for (x, y), (label, p) in merged.items())


@lru_cache(maxsize=4096)
def failure_polynomial(g: LabeledGraph) -> EpsPolynomial:
    """Cached failure polynomial; subset enumeration when affordable, else pivotal decomposition."""
    if g.n <= DEFAULT_ENUM_MAX_EDGES:
        return failure_profile_enum(g).polynomial
    return failure_profile_pivotal(g)


def check_eps(eps: RationalLike) -> Rational:
    eps = as_rational(eps)
    if eps < 0 or eps > 1:
        raise DomainError(f"eps must lie in [0, 1], got {eps}")
    if eps == 0 or eps == 1:
        warnings.warn(f"eps={eps} is on the boundary of (0, 1)", BoundaryEpsWarning, stacklevel=3)
    return eps


def eval_failure(g: LabeledGraph, eps: RationalLike) -> Rational:
    """P_f(G, eps) as an exact rational."""
    return poly_eval(failure_polynomial(g), check_eps(eps))
