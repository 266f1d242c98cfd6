"""Operator channels on subspaces, the matrix channel behind them, and
perturbation bounds for recovering a row space from a noisy matrix.

The operator channel keeps a random k-dimensional part of the transmitted
subspace and adds a random error subspace drawn inside its orthogonal
complement.  The noisy extension additionally rotates the result by a
bounded amount and attaches an extra noise subspace.  The matrix channel is
the physical-layer model Y = H X + G E + N whose row space feeds the
subspace decoder; rq_factorize and the perturbation bounds quantify how far
the row space of a perturbed matrix can drift.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (DimensionOverflow, PreconditionViolated, RankDeficient)
from .subspaces import (TOL_RANK, Subspace, complement, direct_sum, distance,
                        orthonormalize)


@dataclass(frozen=True)
class OperatorChannelSpec:
    """Erasure/error parameters: keep a k-dimensional part, add t error dimensions."""
    k: int
    t: int = 0

    def __post_init__(self):
        if self.k < 0 or self.t < 0:
            raise ValueError("channel parameters must be nonnegative")


@dataclass(frozen=True)
class NoisyChannelSpec:
    """Operator channel followed by a bounded rotation and r_d noise dimensions."""
    base: OperatorChannelSpec
    rotation: float = 0.0   # distance budget for the rotation step
    noise_dim: int = 0      # r_d, dimensions of the attached noise subspace

    def __post_init__(self):
        if self.rotation < 0:
            raise ValueError("rotation budget must be nonnegative")
        if self.noise_dim < 0:
            raise ValueError("noise dimension must be nonnegative")


def _gaussian(rng: np.random.Generator, shape, complex_field: bool) -> np.ndarray:
    g = rng.standard_normal(shape)
    if complex_field:
        g = g + 1j * rng.standard_normal(shape)
    return g


def erase(U: Subspace, k: int, rng: np.random.Generator) -> Subspace:
    """Uniformly random k-dimensional subspace of U; U itself when dim(U) <= k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if U.dim <= k:
        return U
    if k == 0:
        return Subspace.zero(U.ambient_dim, U.is_complex)
    coeff = _gaussian(rng, (k, U.dim), U.is_complex)
    kept = orthonormalize(coeff @ U.basis)
    if kept.dim != k:  # Gaussian coefficients are full rank almost surely
        raise RuntimeError("rank-deficient coefficient draw")
    return kept


def random_error_subspace(U: Subspace, t: int, rng: np.random.Generator) -> Subspace:
    """Uniformly random t-dimensional subspace of U-perp, so E intersects U trivially."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return Subspace.zero(U.ambient_dim, U.is_complex)
    if U.dim + t > U.ambient_dim:
        raise DimensionOverflow(
            f"cannot fit {t} error dimensions next to a {U.dim}-dimensional subspace "
            f"in ambient dimension {U.ambient_dim}")
    comp = complement(U)
    coeff = _gaussian(rng, (t, comp.dim), U.is_complex)
    err = orthonormalize(coeff @ comp.basis)
    if err.dim != t:
        raise RuntimeError("rank-deficient coefficient draw")
    return err


def apply_operator_channel(U: Subspace, spec: OperatorChannelSpec,
                           rng: np.random.Generator):
    """One channel use: V = erase(U, k) (+) E with E drawn inside U-perp.

    Returns (V, rho, t) where rho = max(0, dim U - k) is the number of
    dimensions actually erased; d(U, V) <= rho + t holds for every draw.
    """
    kept = erase(U, spec.k, rng)
    err = random_error_subspace(U, spec.t, rng)
    out = direct_sum(kept, err)
    rho = max(0, U.dim - spec.k)
    return out, rho, spec.t


def rotate(U: Subspace, budget: float, rng: np.random.Generator) -> Subspace:
    """Random same-dimension subspace within distance ``budget`` of U.

    Perturbs the basis along a fixed Gaussian direction and bisects the step
    size, aiming for a realized distance in [0.9 budget, budget]; the
    realized distance never exceeds the budget.  budget = 0 returns U.
    """
    if budget < 0:
        raise ValueError("rotation budget must be nonnegative")
    if budget == 0 or U.dim == 0:
        return U
    g = _gaussian(rng, U.basis.shape, U.is_complex)

    def candidate(s: float):
        V = orthonormalize(U.basis + s * g)
        return V, distance(U, V)

    best = U  # distance 0, always admissible
    best_d = 0.0
    lo, hi = 0.0, 1.0
    d_hi = 0.0
    for _ in range(60):  # expand until the band is bracketed
        V, d_hi = candidate(hi)
        if d_hi >= 0.9 * budget:
            break
        if V.dim == U.dim and d_hi > best_d:
            best, best_d = V, d_hi
        lo, hi = hi, 2.0 * hi
    else:
        return best  # budget not reachable along this direction
    if d_hi <= budget and V.dim == U.dim:
        return V
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        V, d = candidate(mid)
        if V.dim == U.dim and 0.9 * budget <= d <= budget:
            return V
        if d < 0.9 * budget:
            if V.dim == U.dim and d > best_d:
                best, best_d = V, d
            lo = mid
        else:
            hi = mid
    return best


def apply_noisy_operator_channel(U: Subspace, spec: NoisyChannelSpec,
                                 rng: np.random.Generator) -> Subspace:
    """Noisy channel use: rotate(erase(U, k) (+) E, budget) (+) F.

    F has exactly spec.noise_dim dimensions and is drawn inside the
    complement of the rotated subspace.  With rotation = 0 and noise_dim = 0
    this reduces to the plain operator channel.
    """
    base, _, _ = apply_operator_channel(U, spec.base, rng)
    rotated = rotate(base, spec.rotation, rng)
    extra = random_error_subspace(rotated, spec.noise_dim, rng)
    return direct_sum(rotated, extra)


# ---------------------------------------------------------------------------
# matrix channel


@dataclass(frozen=True, eq=False)
class MatrixChannelSpec:
    """Y = H X + G E + N with l observations of an m-row input.

    H (l x m), G (l x t) and the interference E (t x n) default to fresh
    standard complex Gaussian draws; each may be pinned to an explicit array,
    and ``identity_h`` forces H to the identity regardless of the seed.
    noise_sigma scales the additive Gaussian noise N.
    """
    l: int
    m: int
    t: int = 0
    noise_sigma: float = 0.0
    identity_h: bool = False
    h: np.ndarray | None = None
    g: np.ndarray | None = None
    interference: np.ndarray | None = None

    def __post_init__(self):
        if self.l < 1 or self.m < 1 or self.t < 0:
            raise ValueError("invalid matrix channel shape")
        if self.noise_sigma < 0:
            raise ValueError("noise level must be nonnegative")


def _standard_complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def apply_matrix_channel(X, spec: MatrixChannelSpec, rng: np.random.Generator):
    """Sample one use of Y = H X + G E + N.

    Returns (Y, A) with A = H X + G E the noiseless part.  Components are
    drawn in the fixed order H, G, E, N; pinned components are skipped in
    the stream.  The order is part of the reproducibility contract.
    """
    X = np.asarray(X, dtype=complex)
    if X.ndim != 2 or X.shape[0] != spec.m:
        raise ValueError(f"input must have {spec.m} rows")
    n = X.shape[1]
    if spec.identity_h:
        H = np.eye(spec.l, spec.m, dtype=complex)
    elif spec.h is not None:
        H = np.asarray(spec.h, dtype=complex)
        if H.shape != (spec.l, spec.m):
            raise ValueError("pinned H has the wrong shape")
    else:
        H = _standard_complex_gaussian(rng, (spec.l, spec.m))
    A = H @ X
    if spec.t > 0:
        if spec.g is not None:
            G = np.asarray(spec.g, dtype=complex)
            if G.shape != (spec.l, spec.t):
                raise ValueError("pinned G has the wrong shape")
        else:
            G = _standard_complex_gaussian(rng, (spec.l, spec.t))
        if spec.interference is not None:
            E = np.asarray(spec.interference, dtype=complex)
            if E.shape != (spec.t, n):
                raise ValueError("pinned interference has the wrong shape")
        else:
            E = _standard_complex_gaussian(rng, (spec.t, n))
        A = A + G @ E
    if spec.noise_sigma > 0:
        Y = A + spec.noise_sigma * _standard_complex_gaussian(rng, (spec.l, n))
    else:
        Y = A.copy()
    return Y, A


# ---------------------------------------------------------------------------
# RQ factorization and row-space perturbation bounds


def _numerical_rank(s: np.ndarray) -> int:
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.count_nonzero(s > TOL_RANK * s[0]))


def rq_factorize(A):
    """Factor A (l x n, full row rank) as A = R Q.

    R is l x l upper triangular with real positive diagonal and Q has
    orthonormal rows; computed as the column/row-reversed QR factorization
    of the flipped matrix.
    """
    A = np.asarray(A)
    if not np.issubdtype(A.dtype, np.inexact):
        A = A.astype(float)
    if A.ndim != 2:
        raise ValueError("need a 2-d matrix")
    l, n = A.shape
    if l > n:
        raise RankDeficient(f"{l} rows cannot be independent in {n} columns")
    s = np.linalg.svd(A, compute_uv=False)
    if _numerical_rank(s) < l:
        raise RankDeficient("matrix is not of full row rank")
    flipped = np.flipud(A).conj().T            # n x l
    qt, rt = np.linalg.qr(flipped)             # reduced QR
    R = np.flipud(np.fliplr(rt.conj().T))      # upper triangular again
    Q = np.flipud(qt.conj().T)
    # rotate the phases so the diagonal of R is real and positive
    diag = np.diagonal(R).copy()
    phase = diag / np.abs(diag)
    R = R * phase.conj()[np.newaxis, :]
    Q = Q * phase[:, np.newaxis]
    return R, Q


def perturbation_bound(A, N):
    """Row-space drift bound for a full-row-rank A under perturbation N.

    Returns (eps, bound) with d(<A>, <A + N>) <= bound = 2 eps + eps^2 and

        eps = ((1 + sqrt 2) kappa(A) / (1 - ||A+||_2 ||N||_2) * ||N||_F / ||A||_2)^2.

    PreconditionViolated when ||A+||_2 ||N||_2 >= 1; RankDeficient when A is
    not of full row rank.
    """
    A = np.asarray(A)
    N = np.asarray(N)
    if A.shape != N.shape:
        raise ValueError("A and N must share a shape")
    l = A.shape[0]
    s = np.linalg.svd(A, compute_uv=False)
    if _numerical_rank(s) < l or l > A.shape[1]:
        raise RankDeficient("matrix is not of full row rank")
    norm_a = float(s[0])
    pinv_norm = 1.0 / float(s[l - 1])
    norm_n_2 = float(np.linalg.norm(N, 2)) if N.size else 0.0
    if pinv_norm * norm_n_2 >= 1.0:
        raise PreconditionViolated(
            f"||A+||_2 ||N||_2 = {pinv_norm * norm_n_2:.6g} >= 1")
    kappa = norm_a * pinv_norm
    norm_n_f = float(np.linalg.norm(N))
    eps = ((1.0 + np.sqrt(2.0)) * kappa / (1.0 - pinv_norm * norm_n_2)
           * norm_n_f / norm_a) ** 2
    return eps, 2.0 * eps + eps ** 2


def _greedy_independent_rows(A, target_rank: int) -> list[int]:
    """Lexicographically first row subset reaching the numerical rank of A."""
    picked: list[int] = []
    rank = 0
    for i in range(A.shape[0]):
        trial = A[picked + [i], :]
        s = np.linalg.svd(trial, compute_uv=False)
        r = _numerical_rank(s)
        if r > rank:
            picked.append(i)
            rank = r
        if rank == target_rank:
            break
    return picked


def general_perturbation_bound(A, N):
    """Row-space drift bound without the full-rank assumption.

    Splits off r_d = l - rank(A) dependent rows, applies the full-rank bound
    to the lexicographically first independent row subset (with the norms of
    the whole perturbation N), and returns

        (r_d, delta, (sqrt(r_d) + sqrt(delta))^2)

    where delta = 2 eps + eps^2.
    """
    A = np.asarray(A)
    N = np.asarray(N)
    if A.shape != N.shape:
        raise ValueError("A and N must share a shape")
    l = A.shape[0]
    s = np.linalg.svd(A, compute_uv=False)
    rank = _numerical_rank(s)
    r_d = l - rank
    if rank == 0:
        raise RankDeficient("zero matrix has no row space to track")
    rows = _greedy_independent_rows(A, rank)
    A1 = A[rows, :]
    s1 = np.linalg.svd(A1, compute_uv=False)
    norm_a1 = float(s1[0])
    pinv_norm = 1.0 / float(s1[rank - 1])
    norm_n_2 = float(np.linalg.norm(N, 2)) if N.size else 0.0
    if pinv_norm * norm_n_2 >= 1.0:
        raise PreconditionViolated(
            f"||A1+||_2 ||N||_2 = {pinv_norm * norm_n_2:.6g} >= 1")
    kappa = norm_a1 * pinv_norm
    norm_n_f = float(np.linalg.norm(N))
    eps = ((1.0 + np.sqrt(2.0)) * kappa / (1.0 - pinv_norm * norm_n_2)
           * norm_n_f / norm_a1) ** 2
    delta = 2.0 * eps + eps ** 2
    total = (np.sqrt(r_d) + np.sqrt(delta)) ** 2
    return r_d, delta, float(total)
