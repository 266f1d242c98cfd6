"""Analog subspace code constructions and exact parameter evaluation.

Covers character-polynomial (CP) line codes built from additive character
evaluations of sparse polynomials over GF(q), line packings obtained from
binary codebooks, uniform random ensembles, codeword-wise dual codes, a
complex-to-real doubling map, exhaustive minimum-distance search with
caching, and a JSON on-disk format.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (AmbientMismatch, CapExceeded, DimensionMismatch, DomainError, LengthMismatch,
                     RetryLimitExceeded, SizeOverflow)
from .finitefield import LOG_TABLE_MAX_Q, FiniteField, is_prime
from .subspaces import (TOL_EQUAL, Subspace, complement, distance,
                        random_subspace)

DEFAULT_SIZE_CAP = 10 ** 6
DEFAULT_SEARCH_CAP = 10 ** 4


class SubspaceCode:
    """A finite list of distinct subspaces sharing one ambient space."""

    def __init__(self, codewords):
        codewords = tuple(codewords)
        if codewords:
            n = codewords[0].ambient_dim
            for w in codewords:
                if w.ambient_dim != n:
                    raise AmbientMismatch("codewords live in different ambient spaces")
        self._codewords = codewords
        self._min_distance = None
        self._min_pair = None
        self._stacked = None

    @property
    def codewords(self) -> tuple[Subspace, ...]:
        return self._codewords

    def __len__(self) -> int:
        return len(self._codewords)

    def __iter__(self):
        return iter(self._codewords)

    def __getitem__(self, i) -> Subspace:
        return self._codewords[i]

    @property
    def ambient_dim(self) -> int:
        if not self._codewords:
            raise ValueError("empty code has no ambient dimension")
        return self._codewords[0].ambient_dim

    @property
    def max_dim(self) -> int:
        return max(w.dim for w in self._codewords)

    @property
    def is_constant_dimension(self) -> bool:
        dims = {w.dim for w in self._codewords}
        return len(dims) == 1

    def distances_to(self, received: Subspace) -> np.ndarray:
        """Distance from every codeword to ``received``.

        Constant-dimension codes use one stacked matrix product via
        d(U, V) = dim U + dim V - 2 ||Z_U Z_V^H||_F^2, which agrees with
        distance() to numerical precision.
        """
        if not self._codewords:
            return np.zeros(0)
        if received.ambient_dim != self.ambient_dim:
            raise AmbientMismatch("received subspace has the wrong ambient dimension")
        if self.is_constant_dimension and received.dim > 0:
            m = self._codewords[0].dim
            if self._stacked is None:
                self._stacked = np.concatenate(
                    [np.asarray(w.basis, dtype=complex) for w in self._codewords])
            cross = self._stacked @ received.basis.conj().T
            overlap = np.abs(cross) ** 2
            overlap = overlap.reshape(len(self._codewords), m * received.dim).sum(axis=1)
            return m + received.dim - 2.0 * overlap
        return np.array([distance(w, received) for w in self._codewords])


def min_distance_exhaustive(code: SubspaceCode, cap: int = DEFAULT_SEARCH_CAP):
    """Exact minimum pairwise distance and the achieving index pair.

    Visits all M(M-1)/2 unordered pairs with the projection-space distance;
    the result is cached on the code object.  Raises CapExceeded if the code
    has more than ``cap`` codewords.
    """
    if code._min_distance is not None:
        return code._min_distance, code._min_pair
    M = len(code)
    if M < 2:
        raise ValueError("minimum distance needs at least two codewords")
    if M > cap:
        raise CapExceeded(f"{M} codewords exceed the exhaustive search cap {cap}")
    best = math.inf
    pair = (0, 1)
    for i in range(M):
        for j in range(i + 1, M):
            d = distance(code[i], code[j])
            if d < best:
                best = d
                pair = (i, j)
    code._min_distance = float(best)
    code._min_pair = pair
    return code._min_distance, pair


@dataclass(frozen=True)
class CodeParameters:
    """Summary invariants of a code: n, l, M, d_min and their normalized forms."""
    ambient_dim: int
    max_dim: int
    size: int
    min_distance: float
    normalized_weight: float        # l / n
    rate: float                     # ln(M) / n, nats per dimension
    normalized_min_distance: float  # d_min / (2 l)


def code_parameters(code: SubspaceCode, cap: int = DEFAULT_SEARCH_CAP) -> CodeParameters:
    d_min, _ = min_distance_exhaustive(code, cap)
    n = code.ambient_dim
    l = code.max_dim
    M = len(code)
    return CodeParameters(
        ambient_dim=n,
        max_dim=l,
        size=M,
        min_distance=d_min,
        normalized_weight=l / n,
        rate=math.log(M) / n,
        normalized_min_distance=d_min / (2.0 * l),
    )


# ---------------------------------------------------------------------------
# character-polynomial codes


@dataclass(frozen=True)
class CPCodeSpec:
    """Parameters of a character-polynomial line code over GF(q).

    Codewords are the lines spanned by (1/sqrt n) (chi(f(a_1)), ..., chi(f(a_n)))
    where f ranges over polynomials whose monomial degrees lie in [1, k] and
    are not divisible by the field characteristic, n = q - 1, and the
    evaluation points a_i are the nonzero field elements in increasing
    integer encoding.  chi is the additive character with the given index.
    """
    field: FiniteField
    k: int
    character_index: int = 1
    size_cap: int = DEFAULT_SIZE_CAP

    def __post_init__(self):
        if not 1 <= self.k < self.field.q:
            raise ValueError(f"need 1 <= k < q, got k = {self.k}, q = {self.field.q}")
        if self.character_index % self.field.q == 0:
            raise ValueError("character index must be nonzero")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.field.q - 1

    @property
    def evaluation_points(self) -> tuple[int, ...]:
        return tuple(range(1, self.field.q))


def cp_monomial_set(spec: CPCodeSpec) -> list[int]:
    """Degrees in [1, k] coprime to the characteristic; size ceil(k(p-1)/p)."""
    p = spec.field.p
    return [i for i in range(1, spec.k + 1) if i % p != 0]


def cp_construct(spec: CPCodeSpec) -> SubspaceCode:
    """Build the CP code as a SubspaceCode of q^|monomials| distinct lines.

    Polynomials are enumerated by coefficient tuples over the monomial set in
    lexicographic encoding order, so the construction is fully deterministic;
    the all-zero polynomial comes first and maps to the line of the all-ones
    vector.
    """
    field = spec.field
    q = field.q
    if q > LOG_TABLE_MAX_Q:
        raise SizeOverflow(f"construction enumerates all of GF(q); needs q <= {LOG_TABLE_MAX_Q}")
    mons = cp_monomial_set(spec)
    size = q ** len(mons)
    if size > spec.size_cap:
        raise SizeOverflow(f"code size {size} exceeds the cap {spec.size_cap}")
    n = q - 1
    pts = np.arange(1, q, dtype=np.int64)
    powmat = [field.pow_vec(pts, d) for d in mons]
    roots = field.character_roots
    trace = field.trace_table
    chi = np.full(n, spec.character_index % q, dtype=np.int64)
    scale = 1.0 / math.sqrt(n)
    words = []
    for coeff in itertools.product(range(q), repeat=len(mons)):
        acc = np.zeros(n, dtype=np.int64)
        for c, row in zip(coeff, powmat):
            if c:
                acc = field.add_vec(acc, field.mul_vec(np.full(n, c, dtype=np.int64), row))
        vec = roots[trace[field.mul_vec(chi, acc)]] * scale
        words.append(Subspace(vec[np.newaxis, :], validate=False))
    return SubspaceCode(words)


def cp_distance_bound(spec: CPCodeSpec) -> float:
    """Provable lower bound on the normalized minimum distance:
    1 - ((k-1) sqrt(q) + 1)^2 / n^2."""
    n = spec.n
    return 1.0 - ((spec.k - 1) * math.sqrt(spec.q) + 1.0) ** 2 / n ** 2


def cp_simplified_bound(q: int, rate: float) -> float:
    """Asymptotic form of the CP distance bound: 1 - q R^2 / (ln q)^2."""
    if not is_prime(q):
        raise DomainError(f"simplified bound assumes prime q, got {q}")
    if rate <= 0:
        raise DomainError("rate must be positive")
    return 1.0 - q * rate ** 2 / math.log(q) ** 2


def cp_max_k_for_delta(q: int, delta_target: float) -> int:
    """Largest k < q whose CP distance bound at n = q - 1 still meets the target.

    Returns 0 when even k = 1 falls short.  The bound is strictly decreasing
    in k, so the scan stops at the first failure.
    """
    if not is_prime(q):
        raise DomainError(f"expected prime q, got {q}")
    if not 0.0 < delta_target <= 1.0:
        raise DomainError("delta target must lie in (0, 1]")
    n = q - 1
    sq = math.sqrt(q)
    best = 0
    for k in range(1, q):
        bound = 1.0 - ((k - 1) * sq + 1.0) ** 2 / n ** 2
        if bound >= delta_target:
            best = k
        else:
            break
    return best


# ---------------------------------------------------------------------------
# other constructions


def binary_to_lines(codebook, length: int | None = None) -> SubspaceCode:
    """Map binary words to the lines of their +-1 images (0 -> +1, 1 -> -1).

    Complementary words span the same line and collapse to a single
    codeword.  Words may be strings like "0110" or integer sequences.
    """
    words = []
    for w in codebook:
        if isinstance(w, str):
            bits = tuple(int(ch) for ch in w)
        else:
            bits = tuple(int(b) for b in w)
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"non-binary word {w!r}")
        words.append(bits)
    if not words:
        raise ValueError("empty codebook")
    if length is None:
        length = len(words[0])
    seen = set()
    lines = []
    scale = 1.0 / math.sqrt(length)
    for bits in words:
        if len(bits) != length:
            raise LengthMismatch(f"word of length {len(bits)}, expected {length}")
        # exactly one of a word and its complement starts with 0
        canon = bits if bits[0] == 0 else tuple(1 - b for b in bits)
        if canon in seen:
            continue
        seen.add(canon)
        vec = scale * np.array([1.0 if b == 0 else -1.0 for b in canon])
        lines.append(Subspace(vec[np.newaxis, :], validate=False))
    return SubspaceCode(lines)


def line_delta_from_hamming(gamma: float) -> float:
    """Normalized line distance of +-1 images of binary words at normalized
    Hamming distance gamma: 1 - (1 - 2 gamma)^2."""
    if not 0.0 <= gamma <= 1.0:
        raise DomainError("normalized Hamming distance must lie in [0, 1]")
    return 1.0 - (1.0 - 2.0 * gamma) ** 2


def random_ensemble_code(n: int, m: int, M: int, rng: np.random.Generator,
                         complex_field: bool = True,
                         max_retries: int = 50) -> SubspaceCode:
    """M independent uniform m-dimensional subspaces of an n-dimensional space.

    Draws that duplicate an already accepted codeword (distance below the
    equality tolerance) are regenerated; RetryLimitExceeded after
    ``max_retries`` rejected draws for a single slot.
    """
    if M < 2:
        raise ValueError("an ensemble needs at least two codewords")
    if not 0 < m <= n:
        raise ValueError(f"need 0 < m <= n, got m = {m}, n = {n}")
    words: list[Subspace] = []
    for _ in range(M):
        for _ in range(max_retries):
            cand = random_subspace(n, m, rng, complex_field)
            if all(distance(cand, w) > TOL_EQUAL for w in words):
                words.append(cand)
                break
        else:
            raise RetryLimitExceeded(
                f"could not draw {M} distinct subspaces with m = {m}, n = {n}")
    return SubspaceCode(words)


def dual_code(code: SubspaceCode) -> SubspaceCode:
    """Codeword-wise orthogonal complements; preserves pairwise distances."""
    return SubspaceCode([complement(w) for w in code])


def complex_to_real_double(code: SubspaceCode) -> SubspaceCode:
    """Double each complex basis Z into the real basis [[Re Z, Im Z], [-Im Z, Re Z]].

    Sends G_{m,n}(C) into G_{2m,2n}(R), doubling the ambient and codeword
    dimensions and every pairwise distance, so the code size and normalized
    minimum distance are preserved.
    """
    if not code.is_constant_dimension:
        raise DimensionMismatch("doubling map expects a constant-dimension code")
    words = []
    for w in code:
        z = np.asarray(w.basis, dtype=complex)
        re, im = z.real, z.imag
        doubled = np.block([[re, im], [-im, re]])
        words.append(Subspace(doubled))
    return SubspaceCode(words)


# ---------------------------------------------------------------------------
# JSON on-disk format


def code_to_dict(code: SubspaceCode) -> dict:
    """Portable form: {"beta": 1|2, "n": int, "codewords": [[ [re, im], ... ]]}.

    Each codeword is its basis flattened row-major into [re, im] pairs; the
    row count is recovered from the ambient dimension.
    """
    if len(code) == 0:
        raise ValueError("refusing to serialize an empty code")
    beta = code[0].beta
    if any(w.beta != beta for w in code):
        raise ValueError("mixed real/complex codewords")
    n = code.ambient_dim
    words = []
    for w in code:
        flat = np.asarray(w.basis, dtype=complex).reshape(-1)
        words.append([[float(z.real), float(z.imag)] for z in flat])
    return {"beta": beta, "n": n, "codewords": words}


def dict_to_code(data: dict) -> SubspaceCode:
    beta = int(data["beta"])
    if beta not in (1, 2):
        raise ValueError(f"beta must be 1 or 2, got {beta}")
    n = int(data["n"])
    words = []
    for pairs in data["codewords"]:
        flat = np.array([complex(re, im) for re, im in pairs])
        if flat.size % n != 0:
            raise ValueError("codeword length is not a multiple of the ambient dimension")
        basis = flat.reshape(-1, n)
        if beta == 1:
            if np.max(np.abs(basis.imag), initial=0.0) > 0:
                raise ValueError("real code (beta = 1) with nonzero imaginary parts")
            basis = basis.real
        # orthonormality is re-validated on load
        words.append(Subspace(basis, validate=True))
    return SubspaceCode(words)


def save_code(code: SubspaceCode, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(code_to_dict(code), fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


def load_code(path) -> SubspaceCode:
    with open(path, "r", encoding="utf-8") as fh:
        return dict_to_code(json.load(fh))
