import random
from fractions import Fraction
from itertools import combinations

import pytest

from toricgm.factorization import (FACTORS, LIMIT_ONLY, OUTSIDE, classify,
                                   in_variety_kernel_oracle,
                                   in_variety_via_basis, is_A_feasible,
                                   is_facial_lp, is_facial_via_basis,
                                   limit_sequence)
from toricgm.models import Distribution, monomial_map
from toricgm.toric import compute_toric_basis

from fixtures import (FOUR_CYCLE_QUARTICS, FOUR_CYCLE_SIXTEEN, IDX4,
                      MOUSSOURIS_SUPPORT, four_cycle_matrix)


def moussouris_distribution():
    vals = [Fraction(0)] * 16
    for s in MOUSSOURIS_SUPPORT:
        vals[IDX4[s]] = Fraction(1, 8)
    return Distribution(vals)


def swap_support_distribution():
    vals = [Fraction(0)] * 16
    for s in ("0100", "0111", "1001", "1010"):
        vals[IDX4[s]] = Fraction(1, 4)
    return Distribution(vals)


@pytest.fixture(scope="module")
def four_cycle_basis():
    return compute_toric_basis(four_cycle_matrix())


def test_full_support_feasible_and_facial():
    A = four_cycle_matrix()
    ok, witness = is_A_feasible(A, range(16))
    assert ok and witness is None
    facial, cert = is_facial_lp(A, range(16))
    assert facial and all(x == 0 for x in cert.c)


def test_moussouris_support_not_feasible():
    A = four_cycle_matrix()
    F = [IDX4[s] for s in MOUSSOURIS_SUPPORT]
    ok, witness = is_A_feasible(A, F)
    assert not ok and witness is not None
    from toricgm.factorization import covered_rows
    assert covered_rows(A, F) == frozenset(range(16))


def test_moussouris_support_is_facial_both_routes():
    A = four_cycle_matrix()
    F = [IDX4[s] for s in MOUSSOURIS_SUPPORT]
    facial, cert = is_facial_lp(A, F)
    assert facial
    assert is_facial_via_basis(FOUR_CYCLE_SIXTEEN, F)


def test_swap_support_not_facial(four_cycle_basis):
    A = four_cycle_matrix()
    F = [IDX4[s] for s in ("0100", "0111", "1001", "1010")]
    assert not is_facial_via_basis(four_cycle_basis, F)
    facial, _ = is_facial_lp(A, F)
    assert not facial


def test_moussouris_in_variety(four_cycle_basis):
    P = moussouris_distribution()
    member, failed = in_variety_via_basis(P, FOUR_CYCLE_SIXTEEN)
    assert member and failed is None
    member, _ = in_variety_via_basis(P, four_cycle_basis)
    assert member
    assert in_variety_kernel_oracle(four_cycle_matrix(), P)


def test_swap_point_fails_exactly_one_printed_generator():
    P = swap_support_distribution()
    failing = [name for name, b in FOUR_CYCLE_QUARTICS.items()
               if b.evaluate(P.values) != 0]
    assert failing == ["f12diff"]
    assert FOUR_CYCLE_QUARTICS["f12diff"].evaluate(P.values) == Fraction(1, 256)
    member, failed = in_variety_via_basis(P, FOUR_CYCLE_SIXTEEN)
    assert not member and failed == FOUR_CYCLE_QUARTICS["f12diff"]


def test_classify_three_fixtures(four_cycle_basis):
    A = four_cycle_matrix()
    verdict = classify(A, four_cycle_basis, moussouris_distribution())
    assert verdict.kind == LIMIT_ONLY
    assert verdict.covered_rows == frozenset(range(16))
    verdict = classify(A, FOUR_CYCLE_SIXTEEN, swap_support_distribution())
    assert verdict.kind == OUTSIDE
    assert verdict.failed_binomial == FOUR_CYCLE_QUARTICS["f12diff"]
    rng = random.Random(4)
    t = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(16)]
    P = monomial_map(A, t).normalized()
    assert classify(A, four_cycle_basis, P).kind == FACTORS


def test_classify_scale_invariant(four_cycle_basis):
    A = four_cycle_matrix()
    P = moussouris_distribution()
    assert classify(A, four_cycle_basis, P.scaled(Fraction(7, 3))).kind == \
        classify(A, four_cycle_basis, P).kind


def test_kernel_oracle_agrees_with_basis(four_cycle_basis):
    A = four_cycle_matrix()
    rng = random.Random(12)
    points = [moussouris_distribution(), swap_support_distribution()]
    for _ in range(4):
        t = [Fraction(rng.randint(0, 5), rng.randint(1, 5)) for _ in range(16)]
        points.append(monomial_map(A, t))
    # perturbed image point
    t = [Fraction(rng.randint(1, 5), rng.randint(1, 5)) for _ in range(16)]
    vals = list(monomial_map(A, t).values)
    vals[3] += Fraction(1, 1000)
    points.append(Distribution(vals))
    for P in points:
        member, _ = in_variety_via_basis(P, four_cycle_basis)
        assert member == in_variety_kernel_oracle(A, P)


def test_facial_routes_agree_exhaustively_small():
    # all supports of the three-chain model (m = 8)
    from fixtures import three_chain
    from toricgm.graphs import build_graph_matrix
    A = build_graph_matrix(three_chain())
    basis = compute_toric_basis(A)
    for r in range(9):
        for F in combinations(range(8), r):
            lp, _ = is_facial_lp(A, F)
            assert lp == is_facial_via_basis(basis, F)


def test_feasible_implies_facial_on_image_supports():
    A = four_cycle_matrix()
    rng = random.Random(3)
    for _ in range(6):
        t = [Fraction(rng.randint(0, 4), rng.randint(1, 4)) for _ in range(16)]
        P = monomial_map(A, t)
        F = sorted(P.support)
        ok, _ = is_A_feasible(A, F)
        assert ok  # images always have feasible support
        facial, _ = is_facial_lp(A, F)
        assert facial


def test_limit_sequence_moussouris(four_cycle_basis):
    A = four_cycle_matrix()
    P = moussouris_distribution()
    prev = None
    for eps in (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)):
        t_eps, P_eps = limit_sequence(A, P, eps)
        assert all(x >= 0 for x in t_eps)
        member, _ = in_variety_via_basis(P_eps, four_cycle_basis, tol=1e-9)
        assert member
        dev = max(abs(a - float(b)) for a, b in zip(P_eps.values, P.values))
        assert dev <= 10 * float(eps)
        if prev is not None:
            assert dev < prev
        prev = dev


def test_limit_sequence_factors_point_exact_zeros():
    A = four_cycle_matrix()
    rng = random.Random(8)
    t = [Fraction(rng.randint(1, 6)) for _ in range(16)]
    t[0] = Fraction(0)  # kill one clique level: support shrinks, stays feasible
    P = monomial_map(A, t)
    _, P_eps = limit_sequence(A, P, Fraction(1, 2))
    for j in range(16):
        if j not in P.support:
            assert P_eps.values[j] == 0.0
        else:
            assert abs(P_eps.values[j] - float(P.values[j])) <= \
                1e-8 * float(P.values[j])


def test_limit_sequence_epsilon_one_consistency():
    A = four_cycle_matrix()
    P = moussouris_distribution()
    t1, P1 = limit_sequence(A, P, Fraction(1))
    recomputed = monomial_map(A, [Fraction(x).limit_denominator(10**12)
                                  for x in t1])
    assert max(abs(a - float(b))
               for a, b in zip(P1.values, recomputed.values)) < 1e-9


def test_limit_sequence_rejects_outside_point():
    A = four_cycle_matrix()
    with pytest.raises(ValueError, match="not in variety"):
        limit_sequence(A, swap_support_distribution(), Fraction(1, 10))


def test_empty_support_convention():
    A = four_cycle_matrix()
    zero = Distribution([Fraction(0)] * 16)
    ok, _ = is_A_feasible(A, zero.support)
    assert ok  # no column of a graph model has empty support
    basis = FOUR_CYCLE_SIXTEEN
    member, _ = in_variety_via_basis(zero, basis)
    assert member
