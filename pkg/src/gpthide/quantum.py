"""Quantum bipartite machinery: the Werner class, twirling, teleportation, and
product-state extremization.

Operators on C^n (x) C^n are dense complex (n^2, n^2) arrays with the first
tensor factor as the slow index.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass
from itertools import combinations

import numpy as np

from .errors import DimensionError

EXACT_TOL = 1e-12


# --- fixed operators -------------------------------------------------------

def flip_operator(n: int) -> np.ndarray:
    """F |a b> = |b a>."""
    F = np.zeros((n * n, n * n))
    for a in range(n):
        for b in range(n):
            F[b * n + a, a * n + b] = 1.0
    return F


def sym_proj(n: int) -> np.ndarray:
    """Normalized symmetric Werner state (1 + F) / (n (n + 1))."""
    return (np.eye(n * n) + flip_operator(n)) / (n * (n + 1))


def antisym_proj(n: int) -> np.ndarray:
    """Normalized antisymmetric Werner state (1 - F) / (n (n - 1))."""
    return (np.eye(n * n) - flip_operator(n)) / (n * (n - 1))


def maximally_entangled(n: int) -> np.ndarray:
    """Projector onto sum_i |ii> / sqrt(n)."""
    phi = np.eye(n).reshape(n * n) / np.sqrt(n)
    return np.outer(phi, phi)


def is_hermitian(M, tol: float = EXACT_TOL) -> bool:
    M = np.asarray(M)
    return M.ndim == 2 and M.shape[0] == M.shape[1] and bool(np.abs(M - M.conj().T).max() <= tol)


def local_dim(X) -> int:
    N = np.asarray(X).shape[0]
    n = int(round(np.sqrt(N)))
    if n * n != N or np.asarray(X).shape != (N, N):
        raise DimensionError(f"operator of shape {np.asarray(X).shape} is not on C^n (x) C^n")
    return n


def partial_transpose(X, dims: tuple[int, int], sys: int = 1) -> np.ndarray:
    nA, nB = dims
    T = np.asarray(X).reshape(nA, nB, nA, nB)
    T = T.transpose(2, 1, 0, 3) if sys == 0 else T.transpose(0, 3, 2, 1)
    return T.reshape(nA * nB, nA * nB)


# --- Werner class ----------------------------------------------------------

@dataclass(frozen=True)
class WernerClassOperator:
    """alpha * rho_S + beta * rho_A on C^n (x) C^n."""

    n: int
    alpha: float
    beta: float

    @property
    def a(self) -> float:
        """Coefficient of the identity."""
        n = self.n
        return self.alpha / (n * (n + 1)) + self.beta / (n * (n - 1))

    @property
    def b(self) -> float:
        """Coefficient of the flip."""
        n = self.n
        return self.alpha / (n * (n + 1)) - self.beta / (n * (n - 1))

    @classmethod
    def from_identity_flip(cls, n: int, a: float, b: float) -> "WernerClassOperator":
        return cls(n, n * (n + 1) * (a + b) / 2, n * (n - 1) * (a - b) / 2)

    def matrix(self) -> np.ndarray:
        return self.a * np.eye(self.n ** 2) + self.b * flip_operator(self.n)

    @property
    def trace(self) -> float:
        return self.alpha + self.beta


def twirl(X, dims: tuple[int, int] | None = None) -> WernerClassOperator:
    """Average of (U (x) U) X (U (x) U)^dagger over the unitary group, in closed form.

    The result is the unique a 1 + b F with the same Tr[X] and Tr[F X].
    """
    X = np.asarray(X)
    if dims is not None and dims[0] != dims[1]:
        raise DimensionError("twirl needs equal local dimensions")
    n = local_dim(X)
    tr = float(np.real(np.trace(X)))
    trF = float(np.real(np.trace(flip_operator(n) @ X)))
    a = (tr - trF / n) / (n * n - 1)
    b = (trF - tr / n) / (n * n - 1)
    return WernerClassOperator.from_identity_flip(n, a, b)


def as_werner(X, tol: float = 1e-10) -> WernerClassOperator | None:
    """The Werner-class operator equal to X, or None if X is not in the class."""
    if isinstance(X, WernerClassOperator):
        return X
    X = np.asarray(X)
    try:
        w = twirl(X)
    except DimensionError:
        return None
    scale = max(1.0, np.abs(X).max())
    return w if np.abs(w.matrix() - X).max() <= tol * scale else None


# measurement polytopes for E = a 1 + b F, as rows (c_a, c_b): 0 <= c_a a + c_b b <= 1
def measurement_polytope(kind: str, n: int) -> list[tuple[float, float]]:
    if kind == "standard":
        return [(1.0, 1.0), (1.0, -1.0)]
    if kind == "separable":
        return [(1.0, -1.0), (1.0, float(n))]
    if kind == "witness":
        return [(1.0, 0.0), (1.0, 1.0)]
    raise ValueError(f"unknown polytope {kind!r}")


def polytope_vertices(rows: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Vertices of {(a, b) : 0 <= r . (a, b) <= 1 for every row r} by pairwise line intersection."""
    lines = [(np.array(r), level) for r in rows for level in (0.0, 1.0)]
    out = []
    for (r1, l1), (r2, l2) in combinations(lines, 2):
        A = np.array([r1, r2])
        if abs(np.linalg.det(A)) < 1e-14:
            continue
        p = np.linalg.solve(A, [l1, l2])
        if all(-1e-12 <= np.dot(r, p) <= 1 + 1e-12 for r, _ in lines):
            if not any(np.allclose(p, q, atol=1e-12) for q in out):
                out.append(p)
    return [tuple(map(float, p)) for p in out]


def werner_vertex_oracle(n: int, alpha: float, beta: float, kind: str) -> float:
    """max |Tr E X| + |Tr (1 - E) X| over the vertices of a Werner measurement polytope."""
    tr, trF = alpha + beta, alpha - beta
    best = 0.0
    for a, b in polytope_vertices(measurement_polytope(kind, n)):
        p = a * tr + b * trF
        best = max(best, abs(p) + abs(tr - p))
    return best


@dataclass(frozen=True)
class WernerNorms:
    trace: float
    sep: float
    w: float


def werner_class_norms(n: int, alpha: float, beta: float, check: bool = True) -> WernerNorms:
    """Trace, separable-measurement and witness-theory norms of alpha rho_S + beta rho_A."""
    if n < 2:
        raise ValueError("n must be at least 2")
    out = WernerNorms(
        trace=abs(alpha) + abs(beta),
        sep=2 / (n + 1) * abs(alpha) + abs((n - 1) / (n + 1) * alpha + beta),
        w=abs(alpha - beta) + 2 * abs(beta),
    )
    if check:
        tol = EXACT_TOL * max(1.0, abs(alpha) + abs(beta))
        for value, kind in ((out.trace, "standard"), (out.sep, "separable"), (out.w, "witness")):
            oracle = werner_vertex_oracle(n, alpha, beta, kind)
            if abs(value - oracle) > tol:
                raise AssertionError(f"{kind} closed form {value} disagrees with vertex oracle {oracle}")
    return out


@dataclass(frozen=True)
class WernerRatios:
    n: int
    qm_sep: float
    w_sep: float
    grid_qm_sep: float
    grid_w_sep: float


def werner_class_ratios(n: int, grid: int = 100_000) -> WernerRatios:
    """Maximal trace/sep and w/sep ratios over the Werner class.

    Exact values come from the known maximizers; a dense angular grid over the
    (alpha, beta) circle is kept as a cross-check.
    """
    qm = werner_class_norms(n, (n + 1) / n, -(n - 1) / n)
    w = werner_class_norms(n, (n + 1) / (2 * n - 1), -(n - 1) / (2 * n - 1))
    theta = np.linspace(0, 2 * np.pi, grid, endpoint=False)
    al, be = np.cos(theta), np.sin(theta)
    tr = np.abs(al) + np.abs(be)
    sep = 2 / (n + 1) * np.abs(al) + np.abs((n - 1) / (n + 1) * al + be)
    ww = np.abs(al - be) + 2 * np.abs(be)
    return WernerRatios(
        n=n,
        qm_sep=qm.trace / qm.sep,
        w_sep=w.w / w.sep,
        grid_qm_sep=float((tr / sep).max()),
        grid_w_sep=float((ww / sep).max()),
    )


@dataclass(frozen=True)
class BalancedRatio:
    n: int
    r_tilde: float
    r: float
    sandwich_ok: bool


def balanced_ratio_werner(n: int) -> BalancedRatio:
    """Ratio on the traceless Werner line versus the full Werner class, both against SEP."""
    traceless = werner_class_norms(n, 1.0, -1.0)
    r_tilde = traceless.trace / traceless.sep
    r = werner_class_ratios(n, grid=1000).qm_sep
    return BalancedRatio(n, r_tilde, r, bool(r_tilde <= r + 1e-12 and r <= 2 * r_tilde + 1 + 1e-12))


def equiprobability_bound(p: float) -> float:
    """Upper bound 1/|2p - 1| on the hiding ratio forced by unequal priors p, 1 - p."""
    return float("inf") if p == 0.5 else 1.0 / abs(2 * p - 1)


# --- teleportation ---------------------------------------------------------

def heisenberg_weyl(n: int, p: int, q: int) -> np.ndarray:
    """U(p, q) = X(p) Z(q) with X(p)|k> = |k + p mod n>, Z(q)|k> = exp(2 pi i q k / n)|k>."""
    if not (0 <= p < n and 0 <= q < n):
        raise ValueError(f"indices must lie in [0, {n}), got p={p}, q={q}")
    X = np.roll(np.eye(n), p, axis=0)
    Z = np.diag(np.exp(2j * np.pi * q * np.arange(n) / n))
    return X @ Z


def embed_with_phi(X, n: int) -> np.ndarray:
    """X_AB (x) Phi_A'B' reordered to the system order A A' B B'."""
    X = np.asarray(X)
    phi = maximally_entangled(n)
    T = np.kron(X, phi).reshape([n] * 8)  # A B A' B' | A B A' B'
    T = T.transpose(0, 2, 1, 3, 4, 6, 5, 7)
    return T.reshape(n ** 4, n ** 4)


def teleport(n: int, X_joint) -> np.ndarray:
    """Apply the one-way teleportation map to an operator on A A' B B'.

    Every Bell-basis outcome on A A' is corrected by U(p, q) on B'. The output
    lives on B' B (in that order), so that X_AB (x) Phi_A'B' is sent to X.
    """
    X = np.asarray(X_joint)
    if X.shape != (n ** 4, n ** 4):
        raise DimensionError(f"expected an operator on four systems of dimension {n}")
    T = X.reshape([n] * 8)  # a a' b b' | x x' c c'
    phi = maximally_entangled(n)
    out = np.zeros((n * n, n * n), dtype=complex)
    for p in range(n):
        for q in range(n):
            U = heisenberg_weyl(n, p, q)
            UA = np.kron(U, np.eye(n))
            P = (UA @ phi @ UA.conj().T).reshape(n, n, n, n)  # x x' | a a'
            R = np.einsum("ijbdklce,klij->bdce", T, P).reshape(n * n, n * n)  # B B'
            V = np.kron(np.eye(n), U)
            out += V @ R @ V.conj().T
    # reorder B B' -> B' B
    return out.reshape(n, n, n, n).transpose(1, 0, 3, 2).reshape(n * n, n * n)


# --- isotropic states ------------------------------------------------------

@dataclass(frozen=True)
class IsotropicReport:
    n: int
    pt_min_eigenvalue: float
    phi_pt_min_eigenvalue: float
    label: str = "PPT (equivalent to separability for isotropic states)"


def isotropic_robustness_check(n: int) -> IsotropicReport:
    """Partial-transpose spectrum of Phi/n + (1 - 1/n) sigma with sigma = (1 - Phi)/(n^2 - 1)."""
    if not 2 <= n <= 6:
        raise ValueError("n must lie in 2..6")
    phi = maximally_entangled(n)
    sigma = (np.eye(n * n) - phi) / (n * n - 1)
    mix = phi / n + (n - 1) / n * sigma
    ev = np.linalg.eigvalsh(partial_transpose(mix, (n, n)))
    ev_phi = np.linalg.eigvalsh(partial_transpose(phi, (n, n)))
    return IsotropicReport(n, float(ev.min()), float(ev_phi.min()))


# --- product-state extremization ---------------------------------------------

def _top_eigvec(M: np.ndarray, lowest: bool = False) -> tuple[float, np.ndarray]:
    w, V = np.linalg.eigh(M)
    i = 0 if lowest else -1
    return float(w[i]), V[:, i]


def _random_unit(rng, n: int) -> np.ndarray:
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def alternating_product_extremum(
    reduce_a, reduce_b, nA: int, nB: int, restarts: int, seed: int, lowest: bool, tol: float = 1e-8,
    max_iter: int = 500,
):
    """Extremize <alpha beta| X |alpha beta> over product unit vectors by alternating eigenvector steps.

    ``reduce_a(beta)`` returns the nA x nA matrix <beta|X|beta> acting on A,
    ``reduce_b(alpha)`` the analogous nB x nB matrix. Restart seeds are
    derived from ``seed`` so the result is deterministic.
    """
    best_val, best = None, None
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        beta = _random_unit(rng, nB)
        prev = None
        for _ in range(max_iter):
            _, alpha = _top_eigvec(reduce_a(beta), lowest)
            val, beta = _top_eigvec(reduce_b(alpha), lowest)
            if prev is not None and abs(val - prev) <= tol:
                break
            prev = val
        if best_val is None or (val < best_val if lowest else val > best_val):
            best_val, best = val, (alpha, beta)
    return best_val, best[0], best[1]


def dense_reducers(X, nA: int, nB: int):
    T = np.asarray(X).reshape(nA, nB, nA, nB)

    def reduce_a(beta):
        return np.einsum("b,abcd,d->ac", beta.conj(), T, beta)

    def reduce_b(alpha):
        return np.einsum("a,abcd,c->bd", alpha.conj(), T, alpha)

    return reduce_a, reduce_b


def min_product_expectation(X, nA: int, nB: int, restarts: int = 32, seed: int = 0):
    """Heuristic minimum of <alpha beta|X|alpha beta>; returns (value, alpha, beta)."""
    ra, rb = dense_reducers(X, nA, nB)
    val, a, b = alternating_product_extremum(ra, rb, nA, nB, restarts, seed, lowest=True)
    # report the exact expectation of the returned product vector
    v = np.kron(a, b)
    return float(np.real(v.conj() @ np.asarray(X) @ v)), a, b


# --- random subspaces ------------------------------------------------------

@dataclass(frozen=True)
class SubspaceRecord:
    n: int
    k: int
    delta: float
    seed: int
    witness_bound: float
    overlap_estimate: float
    runtime_ms: float
    nominal_bound: float
    reference_scaling: float
    heuristic: bool = True

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def haar_isometry(rng, N: int, k: int) -> np.ndarray:
    Z = rng.standard_normal((N, k)) + 1j * rng.standard_normal((N, k))
    Q, R = np.linalg.qr(Z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def max_product_overlap(Q: np.ndarray, n: int, restarts: int = 64, seed: int = 0) -> float:
    """Heuristic max of <alpha beta|Pi|alpha beta> for Pi = Q Q^dagger on C^n (x) C^n."""
    k = Q.shape[1]
    T = Q.reshape(n, n, k)
    Ta = np.ascontiguousarray(T.transpose(0, 2, 1)).reshape(n * k, n)  # (a c) x b
    Tb = np.ascontiguousarray(T.transpose(1, 2, 0)).reshape(n * k, n)  # (b c) x a

    def reduce_a(beta):
        M = (Ta @ beta.conj()).reshape(n, k)
        return M @ M.conj().T

    def reduce_b(alpha):
        M = (Tb @ alpha.conj()).reshape(n, k)
        return M @ M.conj().T

    val, _, _ = alternating_product_extremum(reduce_a, reduce_b, n, n, restarts, seed, lowest=False)
    return val


def witness_value(n: int, k: int) -> float:
    """|Tr[X Y]| for X = Pi/sqrt(k), Y = 1 - (n^2/k) Pi, with Pi any rank-k projector."""
    return (n * n - k) / np.sqrt(k)


def random_subspace_experiment(
    n: int, delta: float, trials: int, seed: int, restarts: int = 64
) -> list[SubspaceRecord]:
    """Lower bounds on the witness-theory norm of a normalized random projector.

    X = Pi / sqrt(k) has Hilbert-Schmidt norm 1. The witness Y = 1 - c Pi is
    admissible when |<alpha beta|Y|alpha beta>| <= 1 on product vectors, i.e.
    c <= 2 / max overlap. The overlap maximum is estimated heuristically, so
    the reported bound is heuristic too.
    """
    k = int(round(n ** (1 + 2 * delta)))
    if k > n * n:
        raise ValueError(f"subspace dimension {k} exceeds n^2 = {n * n}")
    if k < 1:
        raise ValueError("subspace dimension must be positive")
    records = []
    for t in range(trials):
        start = time.perf_counter()
        trial_seed = int(np.random.default_rng([seed, t]).integers(2 ** 63))
        rng = np.random.default_rng(trial_seed)
        Q = haar_isometry(rng, n * n, k)
        overlap = max_product_overlap(Q, n, restarts=restarts, seed=trial_seed)
        c = min(n * n / k, 2.0 / overlap)
        bound = max(0.0, np.sqrt(k) * (c - 1.0))
        records.append(
            SubspaceRecord(
                n=n,
                k=k,
                delta=delta,
                seed=trial_seed,
                witness_bound=float(bound),
                overlap_estimate=float(overlap),
                runtime_ms=(time.perf_counter() - start) * 1e3,
                nominal_bound=float(witness_value(n, k)),
                reference_scaling=float(n ** (1.5 - delta)),
            )
        )
    return records


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log y against log x."""
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])
