"""Real and complex subspace arithmetic on orthonormal row bases.

A subspace of R^n or C^n is stored as an (m, n) basis matrix with
orthonormal rows; m = 0 encodes the zero subspace.  The central quantity is
the squared projection distance

    d(U, V) = ||P_U - P_V||_F^2 = tr((P_U - P_V)^2),

where P_U = Z^H Z for an orthonormal basis Z.  It equals twice the squared
chordal distance, is defined for subspaces of unequal dimension, and is a
2-relaxed quasimetric on the set of all subspaces of a fixed ambient space.
"""

from __future__ import annotations

import numpy as np

from .errors import AmbientMismatch, DimensionMismatch, NontrivialIntersection

# Orthonormality defect tolerated in a stored basis.
TOL_ORTH = 1e-10
# Singular values below TOL_RANK * sigma_max count as zero.
TOL_RANK = 1e-9
# Subspaces closer than this (in d) count as equal.
TOL_EQUAL = 1e-9


class Subspace:
    """An m-dimensional subspace of an n-dimensional ambient space.

    The basis is an (m, n) array with orthonormal rows, real for an ambient
    space over R and complex over C.  Instances are immutable; the projection
    matrix is computed once on first use and cached.
    """

    __slots__ = ("_basis", "_projection")

    def __init__(self, basis, validate: bool = True):
        basis = np.asarray(basis)
        if basis.ndim == 1:
            basis = basis[np.newaxis, :]
        if basis.ndim != 2:
            raise ValueError("basis must be a vector or a 2-d matrix")
        if not np.issubdtype(basis.dtype, np.inexact):
            basis = basis.astype(float)
        m, n = basis.shape
        if m > n:
            raise ValueError(f"{m} orthonormal rows cannot fit in ambient dimension {n}")
        if validate and m > 0:
            defect = basis @ basis.conj().T - np.eye(m)
            if np.max(np.abs(defect)) > TOL_ORTH:
                raise ValueError("rows are not orthonormal; use orthonormalize()")
        basis = basis.copy()
        basis.setflags(write=False)
        self._basis = basis
        self._projection = None

    @classmethod
    def zero(cls, ambient_dim: int, complex_field: bool = True) -> "Subspace":
        """The zero subspace {0}, encoded as an empty (0, n) basis."""
        dtype = complex if complex_field else float
        return cls(np.zeros((0, ambient_dim), dtype=dtype), validate=False)

    @classmethod
    def full(cls, ambient_dim: int, complex_field: bool = True) -> "Subspace":
        """The whole ambient space."""
        dtype = complex if complex_field else float
        return cls(np.eye(ambient_dim, dtype=dtype), validate=False)

    @property
    def basis(self) -> np.ndarray:
        return self._basis

    @property
    def ambient_dim(self) -> int:
        return self._basis.shape[1]

    @property
    def dim(self) -> int:
        return self._basis.shape[0]

    @property
    def is_complex(self) -> bool:
        return bool(np.issubdtype(self._basis.dtype, np.complexfloating))

    @property
    def beta(self) -> int:
        """Field parameter: 1 for a real ambient space, 2 for a complex one."""
        return 2 if self.is_complex else 1

    @property
    def projection(self) -> np.ndarray:
        """The n x n orthogonal projection onto this subspace (Hermitian, idempotent)."""
        if self._projection is None:
            proj = self._basis.conj().T @ self._basis
            proj.setflags(write=False)
            self._projection = proj
        return self._projection

    def __repr__(self) -> str:
        letter = "C" if self.is_complex else "R"
        return f"Subspace(dim={self.dim}, ambient={letter}^{self.ambient_dim})"


def _as_float_matrix(raw) -> np.ndarray:
    raw = np.asarray(raw)
    if raw.ndim == 1:
        raw = raw[np.newaxis, :]
    if raw.ndim != 2:
        raise ValueError("expected a vector or a 2-d matrix")
    if not np.issubdtype(raw.dtype, np.inexact):
        raw = raw.astype(float)
    return raw


def _check_same_ambient(U: Subspace, V: Subspace) -> None:
    if U.ambient_dim != V.ambient_dim:
        raise AmbientMismatch(
            f"ambient dimensions differ: {U.ambient_dim} vs {V.ambient_dim}")


def orthonormalize(raw) -> Subspace:
    """Row space of ``raw`` as a Subspace with an orthonormal basis.

    The dimension is the numerical rank: singular values above TOL_RANK
    times the largest one.  A zero (or empty) matrix gives the zero subspace.
    """
    raw = _as_float_matrix(raw)
    rows, n = raw.shape
    if rows == 0 or not np.any(raw):
        return Subspace(np.zeros((0, n), dtype=raw.dtype), validate=False)
    _, s, vh = np.linalg.svd(raw, full_matrices=False)
    rank = int(np.count_nonzero(s > TOL_RANK * s[0]))
    # rows of vh are orthonormal by construction
    return Subspace(vh[:rank], validate=False)


def projection_of(U: Subspace) -> np.ndarray:
    """Orthogonal projection matrix P_U = Z^H Z."""
    return U.projection


def distance(U: Subspace, V: Subspace) -> float:
    """Squared projection distance ||P_U - P_V||_F^2.

    Symmetric, zero exactly on equal subspaces, defined for any dimensions,
    and equal to 2 * chordal_distance(U, V)**2.
    """
    _check_same_ambient(U, V)
    diff = U.projection - V.projection
    return float(np.real(np.vdot(diff, diff)))


def distance_via_gram(U: Subspace, V: Subspace) -> float:
    """Distance through the basis cross-Gram matrix: 2 (m - ||Z T^H||_F^2).

    Valid for equal-dimension subspaces only; agrees with distance() to
    numerical precision and is cheaper for small m.
    """
    _check_same_ambient(U, V)
    if U.dim != V.dim:
        raise DimensionMismatch(
            f"gram route needs equal dimensions, got {U.dim} and {V.dim}")
    cross = U.basis @ V.basis.conj().T
    return float(2.0 * (U.dim - np.real(np.vdot(cross, cross))))


def chordal_distance(U: Subspace, V: Subspace) -> float:
    """Chordal distance (1/sqrt 2) ||P_U - P_V||_F = sqrt(sum_i sin^2 theta_i)."""
    return float(np.sqrt(distance(U, V) / 2.0))


def principal_angles(U: Subspace, V: Subspace) -> np.ndarray:
    """Canonical angles between equal-dimension subspaces, ascending in [0, pi/2].

    The cosines are the singular values of Z T^H, clamped to [0, 1] before
    arccos so roundoff cannot push them outside the domain.
    """
    _check_same_ambient(U, V)
    if U.dim != V.dim:
        raise DimensionMismatch(
            f"principal angles need equal dimensions, got {U.dim} and {V.dim}")
    if U.dim == 0:
        return np.zeros(0)
    s = np.linalg.svd(U.basis @ V.basis.conj().T, compute_uv=False)
    return np.arccos(np.clip(s, 0.0, 1.0))


def complement(U: Subspace) -> Subspace:
    """Orthogonal complement U-perp; satisfies P_{U-perp} = I - P_U."""
    n = U.ambient_dim
    if U.dim == 0:
        return Subspace.full(n, U.is_complex)
    if U.dim == n:
        return Subspace.zero(n, U.is_complex)
    _, _, vh = np.linalg.svd(U.basis, full_matrices=True)
    return Subspace(vh[U.dim:], validate=False)


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    """Smallest subspace containing both operands (row space of stacked bases)."""
    _check_same_ambient(U, V)
    if U.dim == 0 and V.dim == 0:
        return Subspace.zero(U.ambient_dim, U.is_complex or V.is_complex)
    return orthonormalize(np.vstack([U.basis, V.basis]))


def direct_sum(U: Subspace, V: Subspace) -> Subspace:
    """Sum of two subspaces required to intersect trivially."""
    total = subspace_sum(U, V)
    if total.dim != U.dim + V.dim:
        raise NontrivialIntersection(
            f"dim(U + V) = {total.dim} < {U.dim} + {V.dim}: intersection is nontrivial")
    return total


def random_subspace(n: int, m: int, rng: np.random.Generator,
                    complex_field: bool = True) -> Subspace:
    """Uniformly random m-dimensional subspace (row space of a Gaussian matrix)."""
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    if m == 0:
        return Subspace.zero(n, complex_field)
    g = rng.standard_normal((m, n))
    if complex_field:
        g = g + 1j * rng.standard_normal((m, n))
    out = orthonormalize(g)
    if out.dim != m:  # Gaussian matrices are full rank almost surely
        raise RuntimeError("sampled a rank-deficient Gaussian matrix")
    return out


def random_unitary(n: int, rng: np.random.Generator,
                   complex_field: bool = True) -> np.ndarray:
    """Haar-distributed unitary (orthogonal when real) n x n matrix."""
    g = rng.standard_normal((n, n))
    if complex_field:
        g = g + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def same_subspace(U: Subspace, V: Subspace) -> bool:
    """Equality up to numerical tolerance: distance below TOL_EQUAL."""
    return distance(U, V) < TOL_EQUAL
