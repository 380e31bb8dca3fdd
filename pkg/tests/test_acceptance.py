"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line through conftest.record before asserting,
so the terminal summary lists every criterion even when one of them fails.
"""
import io
from fractions import Fraction

import pytest

from netrel.cli import main
from netrel.ensemble import (
    EnsembleParams, average_io_weight_table, default_grid, epf_exact, epf_lower, epf_montecarlo, epf_upper,
    expected_iow, expected_t, pu_exact, pu_upper, rank_distribution,
)
from netrel.graphcore import cut_weight_distribution, cutset_oracle, is_connected
from netrel.reliability import failure_profile_enum, failure_profile_pivotal

from conftest import ensemble_graphs, random_connected_graphs, record
from oracles import expected_failure_coeffs_by_counting, pu_by_counting

SMALL_SET = [(3, 3), (4, 3), (4, 5), (5, 6)]


def test_criterion_1_pu_anchors():
    p612, p712 = EnsembleParams(6, 12), EnsembleParams(7, 12)
    exact612, upper612 = pu_exact(p612), pu_upper(p612)
    value = pu_exact(p712)
    err = abs(float(value) - 0.0108)
    ok = exact612 == 0 and upper612 == 0 and err <= 5e-5 and value == pu_by_counting(7, 12)
    record(1, ok, f"pu_exact(6,12)={exact612} pu_upper(6,12)={upper612} "
                  f"pu_exact(7,12)={value}={float(value):.6f} |diff|={err:.2e} (tol 5e-5)")
    assert ok


def test_criterion_2_six_twelve_sandwich():
    p = EnsembleParams(6, 12)
    exact, lower, upper = epf_exact(p), epf_lower(p), epf_upper(p)
    grid = default_grid()
    violations = [e for e in grid if not lower(e) <= exact(e) <= upper(e)]
    eps = Fraction(1, 1000)
    gap = (upper(eps) - lower(eps)) / upper(eps)
    ok = not violations and gap <= Fraction(5, 100)
    record(2, ok, f"sandwich violations={len(violations)}/{len(grid)} "
                  f"relative gap at 1e-3={float(gap):.4%} (tol 5%)")
    assert ok


@pytest.mark.slow
def test_criterion_3_seven_twelve_floor():
    p = EnsembleParams(7, 12)
    poly = epf_exact(p)
    counted = list(poly.coeffs) == expected_failure_coeffs_by_counting(7, 12)
    pu = pu_exact(p)
    points = [Fraction(1, 10 ** e) for e in (1, 2, 3, 4, 6)]
    values = [poly(e) for e in points]
    monotone = all(a > b for a, b in zip(values, values[1:]))
    rel = abs(values[-1] - pu) / pu
    ok = counted and monotone and rel <= Fraction(1, 100)
    shown = " ".join(f"{float(v):.6g}" for v in values)
    record(3, ok, f"E[P_f] at 1e-1..1e-6: {shown}; monotone={monotone} "
                  f"relative distance to P_U at 1e-6={float(rel):.2e} (tol 1%)")
    assert ok


def test_criterion_4_pivotal_equals_enumeration():
    graphs = random_connected_graphs(500, seed=2024, max_k=6, max_n=10)
    graphs += list(ensemble_graphs(4, 3)) + list(ensemble_graphs(5, 6))
    mismatches = sum(failure_profile_pivotal(g) != failure_profile_enum(g).polynomial for g in graphs)
    ok = mismatches == 0
    record(4, ok, f"{len(graphs)} graphs, mismatches={mismatches}")
    assert ok


def test_criterion_5_cut_weights_match_bipartitions():
    checked = mismatches = 0
    for k, n in [(4, 3), (5, 5), (6, 7)]:
        for g in ensemble_graphs(k, n):
            if is_connected(g):
                checked += 1
                mismatches += cut_weight_distribution(g) != cutset_oracle(g)
    ok = checked > 0 and mismatches == 0
    record(5, ok, f"{checked} connected graphs, mismatches={mismatches}")
    assert ok


def test_criterion_6_expected_io_weights():
    bad = []
    for k, n in SMALL_SET:
        p = EnsembleParams(k, n)
        if average_io_weight_table(p).entries != expected_iow(p).entries:
            bad.append((k, n))
    ok = not bad
    record(6, ok, f"ensembles {SMALL_SET}, mismatching={bad}")
    assert ok


def test_criterion_7_null_space_chain():
    bad = []
    for k, n in SMALL_SET:
        p = EnsembleParams(k, n)
        dist = rank_distribution(p)
        et = expected_t(p)
        from_ranks = sum(2 ** i * pi for i, pi in enumerate(dist))
        if et != from_ranks or et < 2 + 2 * pu_exact(p):
            bad.append((k, n))
    ok = not bad
    record(7, ok, f"ensembles {SMALL_SET}, failing={bad}")
    assert ok


def test_criterion_8_monte_carlo_calibration():
    p = EnsembleParams(5, 6)
    eps = Fraction(1, 10)
    ref = epf_exact(p)(eps)
    zs = [epf_montecarlo(p, eps, trials=100_000, seed=seed).zscore(ref) for seed in range(40)]
    inside = sum(abs(z) <= 4 for z in zs)
    ok = inside >= 38
    record(8, ok, f"{inside}/40 seeds with |z| <= 4 (need 38), max |z|={max(map(abs, zs)):.2f}")
    assert ok


def test_criterion_9_worker_determinism(tmp_path):
    outputs = {}
    for workers in (1, 8):
        path = tmp_path / f"w{workers}.csv"
        code = main(["sweep", "--k", "6", "--n", "8", "--grid", "1e-4:0.5:7:log",
                     "--columns", "lower,exact,mc,upper", "--trials", "50000", "--seed", "99",
                     "--workers", str(workers), "--out", str(path)], out=io.StringIO())
        assert code == 0
        outputs[workers] = (path.read_bytes(), (tmp_path / f"w{workers}.csv.meta").read_bytes())
    csv_same = outputs[1][0] == outputs[8][0]
    meta_rest = [[ln for ln in o[1].splitlines() if not ln.startswith(b"workers=")] for o in outputs.values()]
    ok = csv_same and meta_rest[0] == meta_rest[1]
    record(9, ok, f"CSV byte-identical at workers 1 and 8: {csv_same} ({len(outputs[1][0])} bytes)")
    assert ok
