"""Bipartite composites: minimal/maximal tensor products, separability on tractable
classes, and the norms used to quantify data hiding.

Exact answers are given only for three classes of input:

* ``central``: both locals centrally symmetric and X free of cross terms,
  i.e. X = X00 u*(x)u* + lift(M);
* ``werner``: both locals quantum of equal dimension and X = a 1 + b F;
* ``polyhedral``: both cones polyhedral with a moderate number of generator pairs.

Anything else raises ``IntractableClassError``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import quantum
from .errors import DimensionError, IntractableClassError, UnsupportedNormError
from .hadamard import hadamard_witness_ratio
from .local_norms import EllInf, EllOne, Euclidean, LocalNorm, PolytopeByVertices
from .lp import conic_residual, solve_lp
from .models import (
    DEFAULT_TOL,
    GptModel,
    IceCream,
    Psd,
    Simplex,
    is_centrally_symmetric,
    is_polyhedral,
)
from .norms import injective_norm, projective_norm

MAX_GENERATOR_PAIRS = 4096


class Rule(Enum):
    MIN = "min"
    MAX = "max"
    NATIVE = "native"


@dataclass(frozen=True, eq=False)
class CompositeModel:
    A: GptModel
    B: GptModel
    rule: Rule = Rule.MIN

    def __post_init__(self):
        if self.rule is Rule.NATIVE and not (isinstance(self.A.cone, Psd) and isinstance(self.B.cone, Psd)):
            raise ValueError("the native quantum rule needs quantum locals")

    @property
    def shape(self) -> tuple[int, int]:
        return self.A.dim, self.B.dim

    @property
    def unit(self) -> np.ndarray:
        return np.outer(self.A.unit, self.B.unit)


@dataclass(frozen=True)
class MembershipResult:
    contains: bool
    exact: bool
    certificate: object = None

    def __bool__(self):
        return self.contains


# --- lifted matrices -------------------------------------------------------

def lift_matrix(M) -> np.ndarray:
    """Embed M into the block of V_A (x) V_B orthogonal to u_* on either side."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    out = np.zeros((M.shape[0] + 1, M.shape[1] + 1))
    out[1:, 1:] = M
    return out


def bar_project(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or min(X.shape) < 1:
        raise DimensionError("expected a matrix")
    return X[1:, 1:].copy()


def local_norm(model: GptModel) -> LocalNorm:
    if not is_centrally_symmetric(model):
        raise UnsupportedNormError(f"{model!r} is not centrally symmetric")
    return model.cone.local_norm


def base_norm_as_local_norm(model: GptModel) -> LocalNorm | None:
    """The single-system base norm as a polytopal norm on R^d, when it is one."""
    cone = model.cone
    if isinstance(cone, Simplex) and np.all(model.unit == 1.0):
        return EllOne(model.dim)
    if is_centrally_symmetric(model) and isinstance(cone.local_norm, EllInf):
        return EllInf(model.dim)
    if is_polyhedral(cone):
        G = cone.generators()
        states = G / (G @ model.unit)[:, None]
        return PolytopeByVertices(np.vstack([states, -states]))
    return None


# --- classification --------------------------------------------------------

def _classify(composite: CompositeModel, X, tol: float = 1e-12):
    """Return (kind, payload) for the first tractable class X belongs to."""
    A, B = composite.A, composite.B
    if isinstance(A.cone, Psd) and isinstance(B.cone, Psd):
        if A.cone.n == B.cone.n:
            w = quantum.as_werner(X)
            if w is not None:
                return "werner", w
        raise IntractableClassError(
            "intractable class: quantum input outside the Werner class a*1 + b*F"
        )
    X = np.asarray(X, dtype=float)
    if X.shape != composite.shape:
        raise DimensionError(f"tensor shape {X.shape} does not match composite {composite.shape}")
    if is_centrally_symmetric(A) and is_centrally_symmetric(B):
        scale = max(1.0, np.abs(X).max())
        if np.abs(X[1:, 0]).max(initial=0) <= tol * scale and np.abs(X[0, 1:]).max(initial=0) <= tol * scale:
            return "central", X
    if is_polyhedral(A.cone) and is_polyhedral(B.cone):
        pairs = len(A.cone.generators()) * len(B.cone.generators())
        if pairs <= MAX_GENERATOR_PAIRS:
            return "polyhedral", X
    raise IntractableClassError(
        "intractable class: input is neither a cross-term-free tensor over centrally symmetric "
        "locals, a Werner-class operator, nor over small polyhedral cones"
    )


def _pair_products(GA: np.ndarray, GB: np.ndarray) -> np.ndarray:
    return np.einsum("ia,jb->ijab", GA, GB).reshape(len(GA) * len(GB), -1)


# --- cones -----------------------------------------------------------------

def sep_cone_contains(composite: CompositeModel, X, tol: float = DEFAULT_TOL, dual: bool = False) -> bool:
    """Membership in conv(C_A (x) C_B), or in conv(C_A* (x) C_B*) when ``dual``."""
    kind, payload = _classify(composite, X)
    if kind == "central":
        nA, nB = local_norm(composite.A), local_norm(composite.B)
        if dual:
            nA, nB = nA.dual(), nB.dual()
        return bool(payload[0, 0] + tol >= projective_norm(nA, nB, bar_project(payload)))
    if kind == "werner":
        w, n = payload, payload.n
        return bool(w.a - w.b >= -tol and w.a + n * w.b >= -tol)
    GA = composite.A.cone.dual_generators() if dual else composite.A.cone.generators()
    GB = composite.B.cone.dual_generators() if dual else composite.B.cone.generators()
    return conic_residual(_pair_products(GA, GB), payload.ravel()) <= tol


def max_cone_contains(
    composite: CompositeModel, X, tol: float = DEFAULT_TOL, restarts: int = 32, seed: int = 0
) -> MembershipResult:
    """Membership in {Z : (f (x) g)(Z) >= 0 for all f in C_A*, g in C_B*}.

    Exact for polyhedral and cross-term-free centrally symmetric inputs. For
    quantum locals this is block positivity, decided heuristically: a reported
    violation comes with a product vector certificate and is exact, while a
    pass after the restarts is not certified.
    """
    A, B = composite.A, composite.B
    if isinstance(A.cone, Psd) and isinstance(B.cone, Psd):
        nA, nB = A.cone.n, B.cone.n
        X = np.asarray(X)
        if X.shape != (nA * nB, nA * nB):
            raise DimensionError("operator shape does not match the quantum locals")
        val, alpha, beta = quantum.min_product_expectation(X, nA, nB, restarts=restarts, seed=seed)
        if val < -tol:
            return MembershipResult(False, True, (alpha, beta))
        return MembershipResult(True, False, None)
    X = np.asarray(X, dtype=float)
    if X.shape != composite.shape:
        raise DimensionError(f"tensor shape {X.shape} does not match composite {composite.shape}")
    if is_centrally_symmetric(A) and is_centrally_symmetric(B):
        scale = max(1.0, np.abs(X).max())
        if np.abs(X[1:, 0]).max(initial=0) <= 1e-12 * scale and np.abs(X[0, 1:]).max(initial=0) <= 1e-12 * scale:
            val, f, g = injective_norm(local_norm(A), local_norm(B), bar_project(X), witness=True)
            if X[0, 0] + tol >= val:
                return MembershipResult(True, True, None)
            fA = np.concatenate([[1.0], -f])
            gB = np.concatenate([[1.0], g])
            return MembershipResult(False, True, (fA, gB))
    if is_polyhedral(A.cone) and is_polyhedral(B.cone):
        FA, FB = A.cone.dual_generators(), B.cone.dual_generators()
        vals = FA @ X @ FB.T
        i, j = np.unravel_index(np.argmin(vals), vals.shape)
        if vals[i, j] >= -tol:
            return MembershipResult(True, True, None)
        return MembershipResult(False, True, (FA[i], FB[j]))
    raise UnsupportedNormError("maximal tensor product membership needs polyhedral or quantum locals")


# --- norms -----------------------------------------------------------------

def min_base_norm(composite: CompositeModel, X, method: str = "auto") -> float:
    """Base norm of the minimal tensor product: the projective norm w.r.t. the local base norms."""
    kind, payload = _classify(composite, X)
    if kind == "werner":
        return quantum.werner_class_norms(payload.n, payload.alpha, payload.beta).w
    if kind == "central":
        nA, nB = local_norm(composite.A), local_norm(composite.B)
        return max(abs(payload[0, 0]), projective_norm(nA, nB, bar_project(payload), method=method))
    bA, bB = base_norm_as_local_norm(composite.A), base_norm_as_local_norm(composite.B)
    return projective_norm(bA, bB, payload, method=method)


def _sep_effect_lp(composite: CompositeModel, X: np.ndarray) -> float:
    """max over separable two-outcome measurements (E, U - E) of |E(X)| + |(U - E)(X)|.

    Two outcomes suffice: any measurement can be coarse grained by the sign of
    its outcomes without changing the sum.
    """
    P = _pair_products(composite.A.cone.dual_generators(), composite.B.cone.dual_generators())
    U = composite.unit.ravel()
    px = P @ X.ravel()
    total = float(U @ X.ravel())
    k = len(P)
    # E = P^T mu, U - E = P^T nu with mu, nu >= 0
    A_eq = np.hstack([P.T, P.T])
    best = abs(total)
    for sign in (1.0, -1.0):
        res = solve_lp(np.concatenate([-sign * px, np.zeros(k)]), A_eq=A_eq, b_eq=U)
        e = float(px @ res.x[:k])
        best = max(best, abs(e) + abs(total - e))
    return best


def sep_norm(composite: CompositeModel, X) -> float:
    """Distinguishability norm against measurements with separable effects."""
    kind, payload = _classify(composite, X)
    if kind == "werner":
        return quantum.werner_class_norms(payload.n, payload.alpha, payload.beta).sep
    if kind == "central":
        nA, nB = local_norm(composite.A), local_norm(composite.B)
        return max(abs(payload[0, 0]), injective_norm(nA, nB, bar_project(payload)))
    return _sep_effect_lp(composite, payload)


def max_base_norm(composite: CompositeModel, X) -> float:
    """Base norm of the maximal tensor product, whose effects are exactly the separable ones."""
    return sep_norm(composite, X)


def composite_base_norm(composite: CompositeModel, X) -> float:
    """Base norm of the composite under its own composition rule."""
    if composite.rule is Rule.MIN:
        return min_base_norm(composite, X)
    if composite.rule is Rule.MAX:
        return max_base_norm(composite, X)
    X = np.asarray(X)
    return float(np.abs(np.linalg.eigvalsh(X)).sum())


# --- restricted ratio ------------------------------------------------------

@dataclass(frozen=True)
class RestrictedRatio:
    """Bounds on max |M|_pi / |M|_eps and the resulting sandwich for R(SEP), R(LO)."""

    lower: float
    upper: float
    exact: bool
    witness: str
    guaranteed_lower: float
    sep_lower: float
    lo_upper: float


def _as_local(x) -> LocalNorm:
    if isinstance(x, LocalNorm):
        return x
    return local_norm(x)


def restricted_ratio(centrA, centrB) -> RestrictedRatio:
    """Maximal projective over injective ratio on cross-term-free tensors."""
    nA, nB = _as_local(centrA), _as_local(centrB)
    k = min(nA.dim, nB.dim)
    if k == 1:
        lower = upper = 1.0
        exact, witness = True, "rank-one"
    elif isinstance(nA, Euclidean) and isinstance(nB, Euclidean):
        I = np.eye(nA.dim, nB.dim)
        lower = projective_norm(nA, nB, I) / injective_norm(nA, nB, I)
        upper = float(k)
        exact, witness = abs(lower - upper) <= 1e-12, "identity"
        lower = upper if exact else lower
    elif type(nA) is type(nB) and isinstance(nA, (EllInf, EllOne)):
        # the ratio is the same for a pair and its dual pair
        n, m = sorted((nA.dim, nB.dim))
        lower = hadamard_witness_ratio(n, m).ratio_lower
        upper = float(np.sqrt(2 * k))
        exact, witness = False, "hadamard"
        return RestrictedRatio(lower, upper, exact, witness, float(np.sqrt(k / 2)), lower, upper + 2)
    else:
        raise UnsupportedNormError(f"no restricted ratio bounds for {nA!r} x {nB!r}")
    return RestrictedRatio(lower, upper, exact, witness, lower, lower, upper + 2)
