"""Minimum distance decoder tests."""

from __future__ import annotations

import math

import numpy as np
import pytest

from subspacecodes import (
    NoisyChannelSpec,
    OperatorChannelSpec,
    Subspace,
    SubspaceCode,
    apply_noisy_operator_channel,
    apply_operator_channel,
    decode,
    distance,
    guarantee_chordal,
    guarantee_noiseless,
    guarantee_noisy,
    random_ensemble_code,
    random_subspace,
    rotate,
)
from subspacecodes.errors import EmptyCode


def _orthogonal_planes(n=12, m=3):
    eye = np.eye(n)
    return SubspaceCode([Subspace(eye[i * m : (i + 1) * m]) for i in range(n // m)])


def test_decode_picks_the_nearest_codeword():
    code = _orthogonal_planes()
    rng = np.random.default_rng(0)
    for idx in range(4):
        received = rotate(code.codewords[idx], 0.4, rng)
        out = decode(code, received)
        assert out.codeword_index == idx
        assert out.unique
        assert out.distance_to_received == pytest.approx(
            distance(code.codewords[idx], received), abs=1e-12
        )
        assert out.runner_up_distance >= out.distance_to_received


def test_decode_brute_force_agreement():
    rng = np.random.default_rng(1)
    code = random_ensemble_code(8, 2, 15, rng)
    for _ in range(25):
        received = random_subspace(8, int(rng.integers(1, 4)), rng)
        out = decode(code, received)
        dists = [distance(c, received) for c in code.codewords]
        assert out.codeword_index == int(np.argmin(dists))
        assert out.distance_to_received == pytest.approx(min(dists), abs=1e-10)
        second = sorted(dists)[1]
        assert out.runner_up_distance == pytest.approx(second, abs=1e-10)


def test_decode_tie_goes_to_the_lowest_index():
    U = Subspace(np.eye(2, 6))
    code = SubspaceCode([U, U, Subspace(np.eye(6)[2:4])])
    out = decode(code, U)
    assert out.codeword_index == 0
    assert not out.unique
    assert out.runner_up_distance == pytest.approx(0.0, abs=1e-12)


def test_decode_single_codeword_is_trivially_unique():
    U = Subspace(np.eye(2, 6))
    out = decode(SubspaceCode([U]), U)
    assert out.codeword_index == 0
    assert out.unique
    assert out.runner_up_distance == math.inf


def test_decode_empty_code_raises():
    with pytest.raises(EmptyCode):
        decode(SubspaceCode([]), Subspace(np.eye(1, 4)))


def test_noiseless_guarantee_threshold():
    assert guarantee_noiseless(6.0, 1, 1)       # 2*2 < 6
    assert not guarantee_noiseless(6.0, 2, 1)   # 2*3 = 6, strict
    assert guarantee_noiseless(6.0, 0, 0)
    assert not guarantee_noiseless(0.0, 0, 0)
    with pytest.raises(ValueError):
        guarantee_noiseless(6.0, -1, 0)


def test_chordal_guarantee_threshold():
    # 4(sqrt(rho)+sqrt(t))^2 < d_min
    assert guarantee_chordal(6.0, 0, 1)
    assert not guarantee_chordal(6.0, 1, 1)  # 4*4 = 16
    assert guarantee_chordal(4.1, 1, 0)
    assert not guarantee_chordal(4.0, 1, 0)  # exactly 4, strict


def test_noisy_guarantee_reduces_to_noiseless():
    for d_min in (1.0, 3.0, 6.0, 8.5):
        for rho in range(3):
            for t in range(3):
                assert guarantee_noisy(d_min, rho, t, 0.0, 0) == guarantee_noiseless(
                    d_min, rho, t
                )


def test_noisy_guarantee_frozen_cases():
    # rho + t + (sqrt(rho+t+delta) + sqrt(delta) + 2 sqrt(r_d))^2 < d_min
    val = 1 + (math.sqrt(1.05) + math.sqrt(0.05)) ** 2
    assert val < 2.6 and guarantee_noisy(2.6, 1, 0, 0.05, 0)
    assert not guarantee_noisy(2.5, 1, 0, 0.05, 0)
    assert guarantee_noisy(6.0, 0, 0, 0.04, 1)
    assert not guarantee_noisy(6.0, 0, 0, 0.2, 1)
    with pytest.raises(ValueError):
        guarantee_noisy(6.0, 0, 0, -0.1, 0)
    with pytest.raises(ValueError):
        guarantee_noisy(6.0, 0, 0, 0.1, -1)


def test_guarantees_are_monotone():
    grid = [0.0, 0.05, 0.2, 0.8]
    for rho in range(3):
        for t in range(3):
            for i, delta in enumerate(grid[:-1]):
                for r_d in range(2):
                    # shrinking any impairment never turns success into failure
                    if guarantee_noisy(5.0, rho + 1, t, delta, r_d):
                        assert guarantee_noisy(5.0, rho, t, delta, r_d)
                    if guarantee_noisy(5.0, rho, t + 1, delta, r_d):
                        assert guarantee_noisy(5.0, rho, t, delta, r_d)
                    if guarantee_noisy(5.0, rho, t, grid[i + 1], r_d):
                        assert guarantee_noisy(5.0, rho, t, delta, r_d)
                    if guarantee_noisy(5.0, rho, t, delta, r_d + 1):
                        assert guarantee_noisy(5.0, rho, t, delta, r_d)


def test_guaranteed_plain_channel_decoding_always_succeeds():
    code = _orthogonal_planes()  # pairwise distance exactly 6
    rng = np.random.default_rng(2)
    for _ in range(200):
        tx = int(rng.integers(4))
        k = int(rng.integers(1, 4))
        t = int(rng.integers(0, 3))
        rho = 3 - k
        if not guarantee_noiseless(6.0, rho, t):
            continue
        V, rho_out, _ = apply_operator_channel(code.codewords[tx], OperatorChannelSpec(k, t), rng)
        assert rho_out == rho
        out = decode(code, V)
        assert out.codeword_index == tx


def test_guaranteed_noisy_decoding_always_succeeds():
    code = _orthogonal_planes()
    rng = np.random.default_rng(3)
    cases = [(2, 0, 0.05, 0), (3, 1, 0.10, 0), (3, 0, 0.04, 1)]
    for k, t, delta, r_d in cases:
        assert guarantee_noisy(6.0, 3 - k, t, delta, r_d)
        spec = NoisyChannelSpec(OperatorChannelSpec(k, t), rotation=delta, noise_dim=r_d)
        for _ in range(60):
            tx = int(rng.integers(4))
            V = apply_noisy_operator_channel(code.codewords[tx], spec, rng)
            assert decode(code, V).codeword_index == tx
