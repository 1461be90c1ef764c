"""Sign matrices witnessing projective/injective gaps for l_inf local norms.

For a real matrix M the ratio |M|_1 / ||M||_{inf->1} equals the projective over
injective ratio of M viewed in l_1 (x) l_1. Sylvester Hadamard matrices push it
up to sqrt(n); Khintchine's inequality caps it at sqrt(2n) for n rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .norms import inf_to_one

_H2 = np.array([[1, 1], [-1, 1]], dtype=np.int64)
BRUTE_FORCE_MAX = 16


def hadamard(k: int) -> np.ndarray:
    """The 2^k x 2^k Sylvester matrix, the k-fold Kronecker power of [[1, 1], [-1, 1]]."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    H = np.ones((1, 1), dtype=np.int64)
    for _ in range(k):
        H = np.kron(H, _H2)
    return H


def is_partial_hadamard(H) -> bool:
    """Entries in {-1, +1} and H H^T = m * identity for an n x m matrix."""
    H = np.asarray(H)
    if not np.all(np.abs(H) == 1):
        return False
    return bool(np.array_equal(H @ H.T, H.shape[1] * np.eye(H.shape[0], dtype=H.dtype)))


def sign_ratio(M) -> float:
    """|M|_1 / ||M||_{inf->1} by exhaustive sign enumeration."""
    M = np.asarray(M, dtype=float)
    return float(np.abs(M).sum() / inf_to_one(M))


@dataclass(frozen=True)
class WitnessRatio:
    n: int
    m: int
    n_prime: int
    ratio_lower: float
    method: str


def _largest_power_of_two_at_most(n: int) -> int:
    return 1 << (n.bit_length() - 1)


def hadamard_witness_ratio(n: int, m: int, strict: bool = False) -> WitnessRatio:
    """Lower bound on max |M|_1 / ||M||_{inf->1} over n x m matrices, from a Hadamard block.

    The default uses the largest Sylvester matrix that fits, giving at least
    sqrt(n/2). With ``strict=True`` and enough columns, the first n rows of a
    Sylvester matrix of size n' >= n are used instead, giving at least sqrt(n).
    """
    if n < 1 or m < 1:
        raise ValueError("dimensions must be positive")
    if n > m:
        raise ValueError(f"need n <= m, got n={n}, m={m}")
    if strict:
        size = 1 << (n - 1).bit_length()
        if size > m:
            raise ValueError(f"strict witness needs m >= {size} columns, got {m}")
        W = hadamard(size.bit_length() - 1)[:n]
        ratio = sign_ratio(W)
        if ratio < np.sqrt(n) - 1e-12:
            raise AssertionError("partial Hadamard witness below sqrt(n)")
        return WitnessRatio(n, m, size, ratio, "partial-hadamard-brute-force")
    size = _largest_power_of_two_at_most(n)
    if size <= BRUTE_FORCE_MAX:
        ratio = sign_ratio(hadamard(size.bit_length() - 1))
        method = "brute-force"
    else:
        # s^T H t <= |s|_2 |t|_2 ||H||_op = size^(3/2), so the ratio is at least sqrt(size)
        ratio = float(size * size / size ** 1.5)
        method = "analytic"
    if ratio < np.sqrt(n / 2) - 1e-12:
        raise AssertionError("Hadamard witness below sqrt(n/2)")
    return WitnessRatio(n, m, size, ratio, method)


@dataclass(frozen=True)
class KhintchineReport:
    n: int
    m: int
    samples: int
    bound: float
    max_ratio: float
    violations: int


def khintchine_upper_check(n: int, m: int, samples: int, seed: int) -> KhintchineReport:
    """Sample Gaussian and random-sign n x m matrices; every ratio must stay below sqrt(2n)."""
    if n > m:
        raise ValueError(f"need n <= m, got n={n}, m={m}")
    rng = np.random.default_rng(seed)
    bound = float(np.sqrt(2 * n))
    worst, bad = 0.0, 0
    for i in range(samples):
        if i % 2 == 0:
            M = rng.standard_normal((n, m))
        else:
            M = rng.choice([-1.0, 1.0], size=(n, m))
        r = sign_ratio(M)
        worst = max(worst, r)
        if r > bound + 1e-9:
            bad += 1
    return KhintchineReport(n, m, samples, bound, worst, bad)
