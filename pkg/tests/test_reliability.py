import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from netrel.exactmath import EpsPolynomial, binom
from netrel.exceptions import CapacityError, DomainError
from netrel.graphcore import LabeledGraph, cut_weight_distribution
from netrel.reliability import (
    BoundaryEpsWarning, eval_failure, failure_polynomial, failure_profile_enum, failure_profile_pivotal,
)

from conftest import EDGE2, K3, PATH3, TWO_EDGES4, ensemble_graphs, random_connected_graphs
from oracles import all_pairs, pf_bruteforce, pf_coeffs_bruteforce


@st.composite
def graphs(draw, max_k=6, max_n=9):
    k = draw(st.integers(min_value=2, max_value=max_k))
    pairs = all_pairs(k)
    n = draw(st.integers(min_value=1, max_value=min(len(pairs), max_n)))
    return LabeledGraph(k, tuple(draw(st.permutations(pairs))[:n]))


def test_enum_examples():
    prof = failure_profile_enum(EDGE2)
    assert prof.counts == (0, 1)
    assert prof.polynomial == EpsPolynomial.eps()
    prof = failure_profile_enum(K3)
    assert prof.counts == (0, 0, 3, 1)
    assert prof.polynomial == EpsPolynomial([0, 0, 3, -2])
    assert failure_profile_enum(PATH3).polynomial == EpsPolynomial([0, 2, -1])


def test_enum_unconnected_graph_is_certain_failure():
    prof = failure_profile_enum(TWO_EDGES4)
    assert prof.counts == (1, 2, 1)
    assert prof.polynomial == EpsPolynomial([1])


def test_enum_cap():
    with pytest.raises(CapacityError):
        failure_profile_enum(K3, max_edges=2)


def test_pivotal_examples():
    assert failure_profile_pivotal(EDGE2) == EpsPolynomial.eps()
    assert failure_profile_pivotal(K3) == EpsPolynomial([0, 0, 3, -2])
    assert failure_profile_pivotal(TWO_EDGES4) == EpsPolynomial([1])


def test_pivotal_k4_complete():
    g = LabeledGraph(4, tuple(all_pairs(4)))
    assert list(failure_profile_pivotal(g).coeffs) == pf_coeffs_bruteforce(4, g.edges)


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_both_routes_match_definition(g):
    expect = pf_coeffs_bruteforce(g.k, g.edges)
    assert list(failure_profile_enum(g).polynomial.coeffs) == expect
    assert list(failure_profile_pivotal(g).coeffs) == expect


def test_pivotal_equals_enum_on_random_connected_graphs():
    for g in random_connected_graphs(150, seed=11):
        assert failure_profile_pivotal(g) == failure_profile_enum(g).polynomial


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_profile_invariants(g):
    prof = failure_profile_enum(g)
    n = g.n
    assert all(0 <= c <= binom(n, j) for j, c in enumerate(prof.counts))
    assert prof.counts[n] == 1
    assert prof.counts[0] == (0 if pf_bruteforce(g.k, g.edges, Fraction(1, 3)) < 1 else 1)
    ratios = prof.normalized()
    assert all(a <= b for a, b in zip(ratios, ratios[1:]))


def test_eval_failure_examples():
    assert eval_failure(K3, Fraction(1, 2)) == Fraction(1, 2)
    assert eval_failure(K3, "0.5") == Fraction(1, 2)
    for g in ensemble_graphs(4, 4):
        with pytest.warns(BoundaryEpsWarning):
            assert eval_failure(g, 1) == 1
        if failure_profile_enum(g).counts[0] == 0:
            assert failure_polynomial(g).coeff(0) == 0


def test_eval_failure_domain():
    with pytest.raises(DomainError):
        eval_failure(K3, Fraction(3, 2))
    with pytest.raises(DomainError):
        eval_failure(K3, -1)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        eval_failure(K3, Fraction(1, 3))


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=8), st.sampled_from([Fraction(1, 10), Fraction(1, 100), Fraction(1, 3), Fraction(7, 9)]))
def test_eval_matches_pointwise_bruteforce(g, eps):
    assert eval_failure(g, eps) == pf_bruteforce(g.k, g.edges, eps)


def test_cutset_bound_inequalities():
    # P_f <= sum_v B_v eps^v and P_f >= sum_v B_v eps^v (1-eps)^(n-v), v >= 1
    for g in random_connected_graphs(120, seed=4, max_k=6, max_n=10):
        b = cut_weight_distribution(g)
        n = g.n
        for eps in (Fraction(1, 10), Fraction(1, 100), Fraction(1, 2)):
            pf = eval_failure(g, eps)
            upper = sum(b[v] * eps ** v for v in range(1, n + 1))
            lower = sum(b[v] * eps ** v * (1 - eps) ** (n - v) for v in range(1, n + 1))
            if eps != Fraction(1, 2):
                assert pf <= upper
            assert pf >= lower


def test_eval_monotone_in_eps():
    grid = [Fraction(i, 101) for i in range(1, 101)]
    for g in random_connected_graphs(20, seed=8):
        values = [eval_failure(g, e) for e in grid]
        assert all(a <= b for a, b in zip(values, values[1:]))
        assert all(0 <= x <= 1 for x in values)
