"""Rate/distance bound calculator tests.

The Zyablov optimizer is checked against a dense brute-force grid built on an
independent bisection inverse of the binary entropy function.
"""

from __future__ import annotations

import math

import pytest

from subspacecodes import (
    barg_lower,
    barg_upper,
    binary_entropy,
    blokh_zyablov_rate,
    gv_binary_delta,
    random_coding_rate,
    shannon_lower,
    zyablov_delta,
)
from subspacecodes.errors import DomainError


def _h(x: float) -> float:
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def _h_inverse(y: float) -> float:
    lo, hi = 0.0, 0.5
    for _ in range(80):
        mid = (lo + hi) / 2.0
        if _h(mid) < y:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def _zyablov_oracle(rate: float, points: int = 20000) -> float:
    best = 0.0
    for i in range(1, points):
        r = rate + (1.0 - rate) * i / points
        if r >= 1.0:
            break
        best = max(best, _h_inverse(1.0 - r) * (1.0 - rate / r))
    return best


def test_packing_lower_bound_values():
    assert barg_lower(4, 0.5, 2) == pytest.approx(4.0 * math.log(2.0), abs=1e-12)
    assert barg_lower(4, 0.5, 2) == pytest.approx(2.772588722239781, abs=1e-12)
    assert barg_lower(1, 1.0, 1) == pytest.approx(0.0, abs=1e-15)
    assert barg_lower(3, 0.2, 1) == pytest.approx(-0.5 * 3 * math.log(0.2), abs=1e-12)


def test_packing_upper_bound_values():
    expected = -0.5 * math.log(1.0 - math.sqrt(0.5))
    assert barg_upper(1, 1.0, 1) == pytest.approx(expected, abs=1e-12)
    assert barg_upper(1, 1.0, 1) == pytest.approx(0.613973588649758, abs=1e-12)
    assert barg_upper(2, 0.3, 2) == pytest.approx(5.100925187318982, abs=1e-10)


def test_lower_is_below_upper_on_a_dense_grid():
    for m in (1, 2, 4, 8):
        for beta in (1, 2):
            for i in range(1, 1000):
                delta = i / 1000.0
                assert barg_lower(m, delta, beta) < barg_upper(m, delta, beta)


def test_bounds_decrease_in_delta():
    prev_lo, prev_hi = math.inf, math.inf
    for i in range(1, 200):
        delta = i / 200.0
        lo = barg_lower(2, delta, 2)
        hi = barg_upper(2, delta, 2)
        assert lo <= prev_lo + 1e-15
        assert hi <= prev_hi + 1e-15
        prev_lo, prev_hi = lo, hi


def test_shannon_and_random_coding_relations():
    assert shannon_lower(math.exp(-2.0)) == pytest.approx(1.0, abs=1e-12)
    assert shannon_lower(0.3) == pytest.approx(barg_lower(1, 0.3, 1), abs=1e-15)
    got = random_coding_rate(3, 0.2, 2, 0.01)
    assert got == pytest.approx(-0.25 * 2 * 3 * math.log(0.2) - 0.01, abs=1e-12)
    assert got == pytest.approx(barg_lower(3, 0.2, 2) / 2.0 - 0.01, abs=1e-12)


def test_domain_validation():
    with pytest.raises(DomainError):
        barg_lower(2, 0.0, 1)
    with pytest.raises(DomainError):
        barg_lower(2, 1.5, 1)  # lower bound needs delta <= 1
    barg_upper(2, 1.5, 1)      # upper bound allows delta up to 2
    with pytest.raises(DomainError):
        barg_upper(2, 2.5, 1)
    with pytest.raises(DomainError):
        barg_lower(0, 0.5, 1)
    with pytest.raises(DomainError):
        barg_lower(2, 0.5, 3)
    with pytest.raises(DomainError):
        shannon_lower(0.0)
    with pytest.raises(DomainError):
        gv_binary_delta(-0.1)
    with pytest.raises(DomainError):
        zyablov_delta(1.2)
    with pytest.raises(DomainError):
        blokh_zyablov_rate(-0.5)


def test_binary_entropy_values():
    assert binary_entropy(0.5) == pytest.approx(1.0, abs=1e-15)
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.11) == pytest.approx(0.499915958164528, abs=1e-12)
    assert binary_entropy(0.25) == pytest.approx(_h(0.25), abs=1e-12)


def test_gv_radius_inverts_the_entropy():
    assert gv_binary_delta(0.5) == pytest.approx(0.1100278644385071, abs=1e-9)
    assert gv_binary_delta(0.0) == pytest.approx(0.5)
    assert gv_binary_delta(1.0) == pytest.approx(0.0)
    for rate in (0.05, 0.2, 0.35, 0.6, 0.85, 0.99):
        delta = gv_binary_delta(rate)
        assert binary_entropy(delta) == pytest.approx(1.0 - rate, abs=1e-10)
        assert delta == pytest.approx(_h_inverse(1.0 - rate), abs=1e-10)


def test_zyablov_matches_brute_force_grid():
    for rate in (0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9):
        assert zyablov_delta(rate) == pytest.approx(_zyablov_oracle(rate), abs=1e-6)
    assert zyablov_delta(0.3) == pytest.approx(0.044011306391724785, abs=1e-9)


def test_zyablov_edges_and_monotonicity():
    assert zyablov_delta(1.0) == pytest.approx(0.0, abs=1e-12)
    vals = [zyablov_delta(r / 40.0) for r in range(1, 40)]
    assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))
    # always below the plain GV radius at the same rate
    for rate in (0.1, 0.4, 0.8):
        assert zyablov_delta(rate) < gv_binary_delta(rate)


def test_concatenation_bound_exceeds_single_level():
    # invert the single-level trade-off by bisection, then require the
    # two-level integral form to give at least that much rate
    def zyablov_rate(delta):
        lo, hi = 0.0, 1.0
        for _ in range(60):
            mid = (lo + hi) / 2.0
            if zyablov_delta(mid) > delta:
                lo = mid
            else:
                hi = mid
        return lo

    for delta in (0.02, 0.05, 0.1, 0.2, 0.3, 0.4):
        assert blokh_zyablov_rate(delta) >= zyablov_rate(delta) - 1e-9


def test_concatenation_bound_values_and_edges():
    assert blokh_zyablov_rate(0.1) == pytest.approx(0.25240559405542273, abs=1e-8)
    assert blokh_zyablov_rate(0.3) == pytest.approx(0.01983930521807399, abs=1e-8)
    assert blokh_zyablov_rate(0.5) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(DomainError):
        blokh_zyablov_rate(0.6)
    vals = [blokh_zyablov_rate(d / 20.0) for d in range(1, 10)]
    assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))
