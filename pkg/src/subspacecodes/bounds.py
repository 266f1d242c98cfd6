"""Closed-form rate and distance bounds.

Subspace-code rates are in nats per ambient dimension; the binary-code
quantities (entropy, Gilbert-Varshamov, Zyablov, Blokh-Zyablov) follow the
usual bits convention.  Conversion between the two is left to callers.
"""

from __future__ import annotations

import math

from scipy.integrate import quad

from .errors import DomainError


def barg_lower(m: int, delta: float, beta: int) -> float:
    """Achievable-rate side of the sphere-packing pair: -(1/2) beta m ln(delta)."""
    _check_m_beta(m, beta)
    if not 0.0 < delta <= 1.0:
        raise DomainError("delta must lie in (0, 1]")
    return -0.5 * beta * m * math.log(delta)

def barg_upper(m: int, delta: float, beta: int) -> float:
    """Converse side: -beta m ln( sqrt(1 - sqrt(1 - delta/2)) ).

    The formula's domain is 0 < delta <= 2; callers interested in the
    packing regime restrict to delta <= 1, where it strictly dominates
    barg_lower.
    """
    _check_m_beta(m, beta)
    if not 0.0 < delta <= 2.0:
        raise DomainError("delta must lie in (0, 2]")
    inner = 1.0 - math.sqrt(1.0 - delta / 2.0)
    return -beta * m * math.log(math.sqrt(inner))


def shannon_lower(delta: float) -> float:
    """Line-packing (m = 1) rate floor -(1/2) ln(delta), delta = sin^2(theta)."""
    if not 0.0 < delta <= 1.0:
        raise DomainError("delta must lie in (0, 1]")
    return -0.5 * math.log(delta)


def random_coding_rate(m: int, delta: float, beta: int, eps: float) -> float:
    """Rate -(1/4) beta m ln(delta) - eps achieved by a uniform random ensemble."""
    _check_m_beta(m, beta)
    if not 0.0 < delta <= 1.0:
        raise DomainError("delta must lie in (0, 1]")
    if eps < 0:
        raise DomainError("eps must be nonnegative")
    return -0.25 * beta * m * math.log(delta) - eps


def _check_m_beta(m: int, beta: int) -> None:
    if m < 1:
        raise DomainError("dimension m must be at least 1")
    if beta not in (1, 2):
        raise DomainError("beta must be 1 (real) or 2 (complex)")


# ---------------------------------------------------------------------------
# binary-code side (bits)


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2 (1-x), with h(0) = h(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise DomainError("entropy argument must lie in [0, 1]")
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def gv_binary_delta(rate: float) -> float:
    """Gilbert-Varshamov distance h^{-1}(1 - rate) on [0, 1/2], by bisection.

    rate = 0 gives 1/2 and rate = 1 gives 0; the inverse is resolved to 1e-12.
    """
    if not 0.0 <= rate <= 1.0:
        raise DomainError("rate must lie in [0, 1]")
    target = 1.0 - rate
    if target <= 0.0:
        return 0.0
    if target >= 1.0:
        return 0.5
    lo, hi = 0.0, 0.5
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if binary_entropy(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def zyablov_delta(rate: float) -> float:
    """Zyablov concatenation trade-off:

        max over x in [rate, 1] of  delta_GV(x) (1 - rate / x),

    located with a coarse grid and refined by golden-section search to 1e-9.
    """
    if not 0.0 < rate <= 1.0:
        raise DomainError("rate must lie in (0, 1]")
    if rate == 1.0:
        return 0.0

    def objective(x: float) -> float:
        return gv_binary_delta(x) * (1.0 - rate / x)

    grid_points = 512
    xs = [rate + (1.0 - rate) * i / grid_points for i in range(grid_points + 1)]
    vals = [objective(x) for x in xs]
    i_best = max(range(len(vals)), key=vals.__getitem__)
    lo = xs[max(i_best - 1, 0)]
    hi = xs[min(i_best + 1, len(xs) - 1)]
    # golden-section search on the bracketed unimodal stretch
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = objective(c), objective(d)
    while b - a > 1e-9:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = objective(d)
    best = max(vals[i_best], objective(0.5 * (a + b)))
    return max(best, 0.0)


def blokh_zyablov_rate(delta: float) -> float:
    """Multilevel concatenation rate

        1 - h(delta) - delta * integral_0^{1 - h(delta)} dx / delta_GV(x),

    evaluated by adaptive quadrature to 1e-8 and clipped at zero.
    """
    if not 0.0 < delta <= 0.5:
        raise DomainError("delta must lie in (0, 1/2]")
    upper = 1.0 - binary_entropy(delta)
    if upper <= 0.0:
        return 0.0
    integral, _ = quad(lambda x: 1.0 / gv_binary_delta(x), 0.0, upper,
                       epsabs=1e-8, epsrel=1e-10, limit=200)
    return max(1.0 - binary_entropy(delta) - delta * integral, 0.0)
