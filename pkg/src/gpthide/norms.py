"""Base and order-unit norms, the matrix-norm zoo, and injective/projective tensor norms."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .errors import DimensionError, EnumerationLimitError, SolverError, UnsupportedNormError
from .local_norms import (
    ENUMERATION_LIMIT,
    EllInf,
    EllOne,
    Euclidean,
    LocalNorm,
    PolytopeByVertices,
    sign_vectors,
)
from .lp import solve_lp
from .models import GptModel, IceCream, Psd, Simplex, is_polyhedral, vec_to_herm

SIGN_ENUMERATION_MAX_ROWS = 22
_CHUNK_BITS = 15
_FULL_LP_MAX_PAIRS = 20000


# --- single-system norms ---------------------------------------------------

def _unit_is_e0(model: GptModel) -> bool:
    return model.unit[0] == 1.0 and not np.any(model.unit[1:])


def _psd_weights(model: GptModel):
    W = vec_to_herm(model.unit)
    n = W.shape[0]
    if np.allclose(W, np.eye(n), atol=1e-14):
        return None
    w, V = np.linalg.eigh(W)
    return V, w


def base_norm(model: GptModel, x) -> float:
    """Norm with unit ball conv(states U -states); equals u(x) on the cone."""
    x = model.check(x)
    cone = model.cone
    if isinstance(cone, Simplex):
        return float(model.unit @ np.abs(x))
    if isinstance(cone, Psd):
        X = vec_to_herm(x)
        wts = _psd_weights(model)
        if wts is not None:
            V, w = wts
            R = V @ np.diag(np.sqrt(w)) @ V.conj().T
            X = R @ X @ R
        return float(np.abs(np.linalg.eigvalsh(X)).sum())
    if isinstance(cone, IceCream) and _unit_is_e0(model):
        return max(abs(x[0]), cone.local_norm(x[1:]))
    if is_polyhedral(cone):
        G = cone.generators()
        w = G @ model.unit
        k = len(G)
        # x = G^T (lam - mu), minimize sum u(g)(lam + mu)
        res = solve_lp(np.concatenate([w, w]), A_eq=np.hstack([G.T, -G.T]), b_eq=x)
        return float(res.fun)
    raise UnsupportedNormError(f"no base norm routine for {model!r}")


def order_unit_norm(model: GptModel, f) -> float:
    """min{t >= 0 : -t u <= f <= t u} in the dual order."""
    f = model.check(f)
    cone = model.cone
    if isinstance(cone, Simplex):
        return float(np.max(np.abs(f) / model.unit))
    if isinstance(cone, Psd):
        F = vec_to_herm(f)
        wts = _psd_weights(model)
        if wts is not None:
            V, w = wts
            R = V @ np.diag(1 / np.sqrt(w)) @ V.conj().T
            F = R @ F @ R
        return float(np.abs(np.linalg.eigvalsh(F)).max())
    if isinstance(cone, IceCream) and _unit_is_e0(model):
        return abs(f[0]) + cone.local_norm.dual()(f[1:])
    if is_polyhedral(cone):
        G = cone.generators()
        return float(np.max(np.abs(G @ f) / (G @ model.unit)))
    raise UnsupportedNormError(f"no order-unit norm routine for {model!r}")


# --- matrix norms ----------------------------------------------------------

def _iter_sign_chunks(k: int) -> Iterator[np.ndarray]:
    """Sign vectors in {+1} x {-1,+1}^(k-1), in blocks."""
    free = k - 1
    tail_bits = min(free, _CHUNK_BITS)
    tail = sign_vectors(tail_bits)
    for head in range(2 ** (free - tail_bits)):
        hbits = (head >> np.arange(free - tail_bits)) & 1
        hsigns = 1.0 - 2.0 * hbits
        block = np.empty((len(tail), k))
        block[:, 0] = 1.0
        block[:, 1 : 1 + free - tail_bits] = hsigns
        block[:, 1 + free - tail_bits :] = tail
        yield block


def inf_to_one(M, witness: bool = False):
    """max of s^T M t over sign vectors s, t.

    The sign vectors of the smaller side are enumerated; the other side is
    optimized in closed form.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise DimensionError("expected a matrix")
    flipped = M.shape[0] > M.shape[1]
    A = M.T if flipped else M
    k = A.shape[0]
    if k > SIGN_ENUMERATION_MAX_ROWS:
        raise EnumerationLimitError(
            f"enumeration limit: {k} rows on the smaller side exceed {SIGN_ENUMERATION_MAX_ROWS}"
        )
    if k == 0 or A.shape[1] == 0:
        best, s = 0.0, np.ones(k)
    else:
        best, s = -np.inf, None
        for block in _iter_sign_chunks(k):
            vals = np.abs(block @ A).sum(axis=1)
            i = int(np.argmax(vals))
            if vals[i] > best:
                best, s = float(vals[i]), block[i].copy()
    if not witness:
        return best
    t = np.where(s @ A >= 0, 1.0, -1.0)
    return (best, t, s) if flipped else (best, s, t)


@dataclass(frozen=True)
class MatrixNorms:
    trace: float
    operator: float
    entrywise_one: float
    entrywise_max: float
    inf_to_one: float


def matrix_norms(M) -> MatrixNorms:
    M = np.asarray(M, dtype=float)
    sv = np.linalg.svd(M, compute_uv=False)
    return MatrixNorms(
        trace=float(sv.sum()),
        operator=float(sv[0]) if sv.size else 0.0,
        entrywise_one=float(np.abs(M).sum()),
        entrywise_max=float(np.abs(M).max()) if M.size else 0.0,
        inf_to_one=inf_to_one(M),
    )


# --- tensor norms ----------------------------------------------------------

def _rowwise(norm: LocalNorm, Y: np.ndarray) -> np.ndarray:
    if isinstance(norm, Euclidean):
        return np.linalg.norm(Y, axis=1)
    if isinstance(norm, EllOne):
        return np.abs(Y).sum(axis=1)
    if isinstance(norm, EllInf):
        return np.abs(Y).max(axis=1)
    if isinstance(norm, PolytopeByVertices):
        return np.maximum((Y @ norm.facets.T).max(axis=1), 0.0)
    return np.array([norm(y) for y in Y])


def _vertex_blocks(norm: LocalNorm) -> Iterator[np.ndarray]:
    """Half of the extreme points of the unit ball (one from each +/- pair), in blocks."""
    if isinstance(norm, EllInf):
        if norm.dim - 1 > SIGN_ENUMERATION_MAX_ROWS:
            raise EnumerationLimitError("enumeration limit: more than 2^22 cube vertices")
        yield from _iter_sign_chunks(norm.dim)
    else:
        yield norm.vertices(half=True)


def _half_vertex_count(norm: LocalNorm) -> int:
    return norm.vertex_count() // 2


def _check_shape(normA: LocalNorm, normB: LocalNorm, X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.shape != (normA.dim, normB.dim):
        raise DimensionError(f"tensor shape {X.shape} does not match norms ({normA.dim}, {normB.dim})")
    return X


def injective_norm(normA: LocalNorm, normB: LocalNorm, X, witness: bool = False):
    """max (f (x) g)(X) over f, g in the dual unit balls.

    With ``witness=True`` also returns the maximizing pair (f, g).
    """
    X = _check_shape(normA, normB, X)
    if not (normA.polytopal or normB.polytopal):
        if not (isinstance(normA, Euclidean) and isinstance(normB, Euclidean)):
            raise UnsupportedNormError(f"no injective norm routine for {normA!r} x {normB!r}")
        U, s, Vt = np.linalg.svd(X)
        if not witness:
            return float(s[0]) if s.size else 0.0
        return float(s[0]), U[:, 0], Vt[0]
    # enumerate the dual-ball vertices of one polytopal side, solve the other exactly
    swap = not normA.polytopal or (
        normB.polytopal and _half_vertex_count(normB.dual()) < _half_vertex_count(normA.dual())
    )
    P, Q, Y = (normB, normA, X.T) if swap else (normA, normB, X)
    best, f_best = -np.inf, None
    for block in _vertex_blocks(P.dual()):
        vals = _rowwise(Q, block @ Y)
        i = int(np.argmax(vals))
        if vals[i] > best:
            best, f_best = float(vals[i]), block[i].copy()
    if not witness:
        return best
    _, g_best = Q.dual().support(f_best @ Y)
    return (best, g_best, f_best) if swap else (best, f_best, g_best)


def _is_closed_projective(normA: LocalNorm, normB: LocalNorm) -> bool:
    both_euclid = isinstance(normA, Euclidean) and isinstance(normB, Euclidean)
    return both_euclid or isinstance(normA, EllOne) or isinstance(normB, EllOne)


def _projective_closed(normA, normB, X) -> float:
    if isinstance(normA, Euclidean) and isinstance(normB, Euclidean):
        return float(np.linalg.svd(X, compute_uv=False).sum())
    if isinstance(normA, EllOne):
        return float(_rowwise(normB, X).sum())
    return float(_rowwise(normA, X.T).sum())


def projective_norm(normA: LocalNorm, normB: LocalNorm, X, method: str = "auto") -> float:
    """min sum |x_i| |y_i| over decompositions X = sum x_i (x) y_i.

    ``method="auto"`` uses a closed form when one exists (Euclidean pair: trace
    norm; an l1 factor: sum of norms of the slices) and the dual program
    otherwise. ``method="program"`` always solves the dual program.
    """
    X = _check_shape(normA, normB, X)
    if method not in ("auto", "program"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto" and _is_closed_projective(normA, normB):
        return _projective_closed(normA, normB, X)
    return projective_certificate(normA, normB, X)[0]


def projective_certificate(normA: LocalNorm, normB: LocalNorm, X) -> tuple[float, np.ndarray]:
    """Solve max <F, X> subject to the injective norm of F w.r.t. the dual norms being <= 1.

    Returns the optimal value and the optimal F, a norming functional for X.
    """
    X = _check_shape(normA, normB, X)
    if normA.polytopal and normB.polytopal:
        solve = _projective_lp
    elif isinstance(normA, Euclidean) or isinstance(normB, Euclidean):
        solve = _projective_conic
    else:
        raise UnsupportedNormError(f"unsupported norm pair {normA!r} x {normB!r}")
    # solver tolerances are absolute, so work at unit scale
    scale = float(np.abs(X).max()) if X.size else 0.0
    if scale == 0.0:
        return 0.0, np.zeros_like(X)
    value, F = solve(normA, normB, X / scale)
    return value * scale, F


def _pair_rows(VA: np.ndarray, VB: np.ndarray) -> np.ndarray:
    return np.einsum("ia,jb->ijab", VA, VB).reshape(len(VA) * len(VB), -1)


def _projective_lp(normA, normB, X) -> tuple[float, np.ndarray]:
    dA, dB = X.shape
    c = -X.ravel()
    free = [(None, None)] * X.size
    pairs = _half_vertex_count(normA) * normB.vertex_count()
    if pairs <= _FULL_LP_MAX_PAIRS:
        rows = _pair_rows(normA.vertices(half=True), normB.vertices())
        res = solve_lp(c, A_ub=rows, b_ub=np.ones(len(rows)), bounds=free)
        return float(-res.fun), res.x.reshape(dA, dB)
    # cutting planes with an exact separation oracle over the extreme points
    VA = normA.vertices(half=True) if normA.vertex_count() < 4 * max(dA, 1) else _spanning(normA)
    VB = normB.vertices() if normB.vertex_count() < 4 * max(dB, 1) else _spanning(normB, full=True)
    rows = _pair_rows(VA, VB)
    dualA, dualB = normA.dual(), normB.dual()
    for _ in range(10000):
        res = solve_lp(c, A_ub=rows, b_ub=np.ones(len(rows)), bounds=free)
        F = res.x.reshape(dA, dB)
        val, x, y = injective_norm(dualA, dualB, F, witness=True)
        if val <= 1 + 1e-10:
            return float(-res.fun), F
        new = np.vstack([np.outer(x, y).ravel(), -np.outer(x, y).ravel()])
        rows = np.vstack([rows, new])
    raise SolverError("cutting-plane projective norm did not converge")


def _spanning(norm: LocalNorm, full: bool = False) -> np.ndarray:
    """A few extreme points of the unit ball that span the space (plus negatives if ``full``)."""
    picked = []
    for k in range(norm.dim):
        _, v = norm.support(np.eye(norm.dim)[k])
        picked.append(v)
    for block in _vertex_blocks(norm):
        for v in block:
            if np.linalg.matrix_rank(np.vstack(picked + [v])) > np.linalg.matrix_rank(np.vstack(picked)):
                picked.append(v)
        break
    V = np.array(picked)
    return np.vstack([V, -V]) if full else V


def _projective_conic(normA, normB, X) -> tuple[float, np.ndarray]:
    import cvxpy as cp

    dA, dB = X.shape
    F = cp.Variable((dA, dB))
    if isinstance(normA, Euclidean) and isinstance(normB, Euclidean):
        cons = [cp.sigma_max(F) <= 1]
    elif isinstance(normB, Euclidean):
        VA = normA.vertices(half=True)
        cons = [cp.norm(VA @ F, 2, axis=1) <= 1]
    else:
        VB = normB.vertices(half=True)
        cons = [cp.norm(F @ VB.T, 2, axis=0) <= 1]
    prob = cp.Problem(cp.Maximize(cp.sum(cp.multiply(F, X))), cons)
    with warnings.catch_warnings():
        # near-degenerate optima are reported as inaccurate at these tolerances
        warnings.simplefilter("ignore", UserWarning)
        prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-10, tol_gap_rel=1e-10, tol_feas=1e-10)
    if prob.status not in ("optimal", "optimal_inaccurate"):
        raise SolverError(f"conic projective norm failed: {prob.status}")
    return float(prob.value), np.asarray(F.value)


# --- checks built on the tensor norms --------------------------------------

@dataclass(frozen=True)
class AuerbachReport:
    samples: int
    bound: int
    max_ratio: float
    violations: int


def auerbach_ratio_check(normA: LocalNorm, normB: LocalNorm, samples: int, seed: int) -> AuerbachReport:
    """Sample Gaussian tensors and compare projective <= min(dA, dB) * injective."""
    rng = np.random.default_rng(seed)
    bound = min(normA.dim, normB.dim)
    worst, bad = 0.0, 0
    for _ in range(samples):
        X = rng.standard_normal((normA.dim, normB.dim))
        p = projective_norm(normA, normB, X)
        e = injective_norm(normA, normB, X)
        worst = max(worst, p / e)
        if p > bound * e + 1e-9:
            bad += 1
    return AuerbachReport(samples, bound, worst, bad)


def maximize_over_unit_ball(
    c: np.ndarray,
    oracle: Callable[[np.ndarray], tuple[float, np.ndarray]],
    tol: float = 1e-9,
    max_iter: int = 2000,
) -> float:
    """max <c, x> over {x : N(x) <= 1}, given N only through ``oracle(x) -> (N(x), subgradient)``.

    A cutting-plane method stabilized by a box trust region. Each oracle call
    adds the cut <g, x> <= 1, valid because a norm equals <g, x> at x and is
    bounded below by <g, .> elsewhere. Terminates finitely for polyhedral N.
    """
    c = np.asarray(c, dtype=float).ravel()
    n = c.size
    val, g = oracle(c)
    centre = c / val
    best = float(c @ centre)
    cuts = [np.asarray(g).ravel()]
    delta = 1.0
    for _ in range(max_iter):
        bounds = list(zip(centre - delta, centre + delta))
        res = solve_lp(-c, A_ub=np.array(cuts), b_ub=np.ones(len(cuts)), bounds=bounds)
        x = res.x
        model = -res.fun
        nx, g = oracle(x)
        cuts.append(np.asarray(g).ravel())
        cand = float(c @ x) / nx if nx > 0 else -np.inf
        interior = np.all(np.abs(x - centre) < delta * (1 - 1e-9))
        if model - max(best, cand) <= tol * max(1.0, abs(best)):
            if interior:
                return max(best, cand)
            delta *= 2.0
        elif cand > best + 0.1 * (model - best):
            centre, best = x / nx, cand
            delta *= 2.0
        else:
            delta *= 0.5
        delta = min(max(delta, 1e-12), 1e6)
    raise SolverError("unit-ball maximization did not converge")


def numeric_dual_of_projective(normA: LocalNorm, normB: LocalNorm, G, tol: float | None = None) -> float:
    """Dual norm of the projective norm at G, using projective norm values and certificates only.

    Cutting planes converge finitely for polytopes; with a curved factor the
    default stopping gap is relaxed to 1e-7.
    """
    G = _check_shape(normA, normB, G)
    if tol is None:
        tol = 1e-9 if normA.polytopal and normB.polytopal else 1e-7
    shape = G.shape

    def oracle(x):
        X = x.reshape(shape)
        val, F = projective_certificate(normA, normB, X)
        return val, F.ravel()

    return maximize_over_unit_ball(G.ravel(), oracle, tol=tol)
