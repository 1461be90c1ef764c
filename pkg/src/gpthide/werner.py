"""Completely symmetric models and their Werner lines.

Every model here has a one-dimensional invariant part spanned by u_* and an
irreducible complement V_0 carrying a scalar product. Invariant bipartite
tensors are a U_* + b E, and the group average of any tensor X is

    U(X) U_* + E_*(X) / (d - 1) E,

so no group element is ever built. Eight constants govern the geometry:
m+-, m+-* (extremal scalar products over local state and effect sections) and
k+-, k+-* (how far the Werner line stays inside the bipartite cone and its dual).
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from functools import cached_property

import numpy as np

from . import quantum
from .errors import BracketError, DimensionError
from .local_norms import EllInf, Euclidean, sign_vectors
from .norms import injective_norm, projective_norm

CATALOG_IDS = ("classical", "quantum-native", "quantum-wtheory", "spherical-min", "cubic-min")
CLI_FAMILIES = {
    "classical": "classical",
    "quantum": "quantum-native",
    "wtheory": "quantum-wtheory",
    "spherical": "spherical-min",
    "cubic": "cubic-min",
}
BISECTION_TOL = 1e-12
BISECTION_MAX_ITER = 200


@dataclass(frozen=True)
class SymmetricConstants:
    d: int
    m_plus: float
    m_minus: float
    m_plus_star: float
    m_minus_star: float
    k_plus: float
    k_minus: float
    k_plus_star: float
    k_minus_star: float

    def violations(self, tol: float = 1e-9) -> list[str]:
        """Names of the structural identities that fail; empty when all hold."""
        out = []
        for f in fields(self):
            if f.name != "d" and getattr(self, f.name) < -tol:
                out.append(f"{f.name} negative")
        d1 = self.d - 1
        if self.m_minus > self.m_plus + tol:
            out.append("m_minus > m_plus")
        if self.m_minus_star > self.m_plus_star + tol:
            out.append("m_minus_star > m_plus_star")
        if abs(self.k_plus_star * self.k_minus - 1 / d1) > tol:
            out.append("k_plus_star * k_minus != 1/(d-1)")
        if abs(self.k_minus_star * self.k_plus - 1 / d1) > tol:
            out.append("k_minus_star * k_plus != 1/(d-1)")
        for name, p in (("m_plus * m_minus_star", self.m_plus * self.m_minus_star),
                        ("m_minus * m_plus_star", self.m_minus * self.m_plus_star)):
            if not 1 - tol <= p <= d1 + tol:
                out.append(f"{name} outside [1, d-1]")
        if self.k_plus < self.m_plus / d1 - tol or self.k_minus < self.m_minus / d1 - tol:
            out.append("k below the separable bound m/(d-1)")
        return out

    def max_deviation(self, other: "SymmetricConstants") -> float:
        return max(abs(getattr(self, f.name) - getattr(other, f.name)) for f in fields(self))


def _constants(d, m_plus, m_minus, m_plus_star, m_minus_star, k_plus, k_minus) -> SymmetricConstants:
    # the starred k follow from k+-* k-+ = 1/(d-1)
    d1 = d - 1
    return SymmetricConstants(
        d, m_plus, m_minus, m_plus_star, m_minus_star,
        k_plus, k_minus, 1 / (d1 * k_minus), 1 / (d1 * k_plus),
    )


def catalog_constants(model_id: str, dim: int) -> SymmetricConstants:
    """Closed-form constants.

    ``dim`` is the local dimension d for classical, spherical and cubic models
    and the Hilbert space dimension n for the quantum ones (d = n^2).
    """
    if model_id == "classical":
        d = dim
        return _constants(d, (d - 1) / d, 1 / d, d * (d - 1), d, 1 / d, 1 / (d * (d - 1)))
    if model_id in ("quantum-native", "quantum-wtheory"):
        n = dim
        d = n * n
        k_minus = 1 / (n * (n - 1)) if model_id == "quantum-native" else 1 / (n * (n * n - 1))
        return _constants(d, (n - 1) / n, 1 / n, n * (n - 1), n, 1 / (n * (n + 1)), k_minus)
    if model_id == "spherical-min":
        d = dim
        return _constants(d, 1.0, 1.0, 1.0, 1.0, 1 / (d - 1), 1 / (d - 1))
    if model_id == "cubic-min":
        d = dim
        return _constants(d, d - 1.0, d - 1.0, 1.0, 1.0, 1.0, 1.0)
    raise ValueError(f"unknown symmetric model {model_id!r}; expected one of {CATALOG_IDS}")


# --- explicit models -------------------------------------------------------

@dataclass(frozen=True)
class SymmetricModel:
    """A catalog model with explicit invariant tensors and bipartite cone tests.

    Bipartite tensors are d x d real matrices, except for the quantum models
    where they are n^2 x n^2 operators.
    """

    model_id: str
    size: int

    def __post_init__(self):
        if self.model_id not in CATALOG_IDS:
            raise ValueError(f"unknown symmetric model {self.model_id!r}")
        if self.size < 2 or (self.model_id in ("spherical-min", "cubic-min") and self.size < 3):
            raise ValueError(f"size {self.size} too small for {self.model_id}")

    @property
    def is_quantum(self) -> bool:
        return self.model_id.startswith("quantum")

    @property
    def d(self) -> int:
        return self.size ** 2 if self.is_quantum else self.size

    # invariant tensors
    def U_star(self) -> np.ndarray:
        if self.is_quantum:
            n = self.size
            return np.eye(n * n) / (n * n)
        if self.model_id == "classical":
            return np.full((self.d, self.d), 1.0 / self.d ** 2)
        out = np.zeros((self.d, self.d))
        out[0, 0] = 1.0
        return out

    def E(self) -> np.ndarray:
        if self.is_quantum:
            n = self.size
            return quantum.flip_operator(n) - np.eye(n * n) / n
        if self.model_id == "classical":
            return np.eye(self.d) - 1.0 / self.d
        out = np.eye(self.d)
        out[0, 0] = 0.0
        return out

    def tensor(self, a: float, b: float) -> np.ndarray:
        return a * self.U_star() + b * self.E()

    # invariant functionals
    def _check(self, X) -> np.ndarray:
        X = np.asarray(X)
        side = self.size ** 2 if self.is_quantum else self.d
        if X.shape != (side, side):
            raise DimensionError(f"expected a {side}x{side} tensor, got {X.shape}")
        return X

    def U(self, X) -> float:
        X = self._check(X)
        if self.is_quantum:
            return float(np.trace(X).real)
        if self.model_id == "classical":
            return float(X.sum())
        return float(X[0, 0])

    def E_star(self, X) -> float:
        X = self._check(X)
        if self.is_quantum:
            return float(np.trace(self.E() @ X).real)
        if self.model_id == "classical":
            return float(np.trace(X) - X.sum() / self.d)
        return float(np.trace(X) - X[0, 0])

    # bipartite cones restricted to the Werner line
    def werner_in_cone(self, a: float, b: float, tol: float = 0.0) -> bool:
        """Is a U_* + b E in the bipartite state cone?"""
        if self.model_id == "classical":
            return bool(self.tensor(a, b).min() >= -tol)
        if self.model_id == "quantum-native":
            return bool(np.linalg.eigvalsh(self.tensor(a, b)).min() >= -tol)
        if self.model_id == "quantum-wtheory":
            n = self.size
            c1, cF = a / n**2 - b / n, b
            return c1 - cF >= -tol and c1 + n * cF >= -tol
        return a + tol >= abs(b) * self._identity_norms[0]

    def werner_in_dual_cone(self, alpha: float, beta: float, tol: float = 0.0) -> bool:
        """Is alpha U + beta E_* in the dual of the bipartite cone?"""
        if self.model_id == "classical":
            T = alpha * np.ones((self.d, self.d)) + beta * (np.eye(self.d) - 1.0 / self.d)
            return bool(T.min() >= -tol)
        n = self.size
        if self.model_id == "quantum-native":
            T = alpha * np.eye(n * n) + beta * self.E()
            return bool(np.linalg.eigvalsh(T).min() >= -tol)
        if self.model_id == "quantum-wtheory":
            # block positivity of c1 1 + cF F: c1 + cF |<x|y>|^2 >= 0 on [0, 1]
            c1, cF = alpha - beta / n, beta
            return c1 >= -tol and c1 + cF >= -tol
        # dual of the minimal product: product-positive against the local cones
        return alpha + tol >= abs(beta) * self._identity_norms[1]

    @cached_property
    def _identity_norms(self) -> tuple[float, float]:
        """Projective norm of the identity and injective norm w.r.t. the dual local norms."""
        local = Euclidean(self.d - 1) if self.model_id == "spherical-min" else EllInf(self.d - 1)
        eye = np.eye(self.d - 1)
        return projective_norm(local, local, eye), injective_norm(local.dual(), local.dual(), eye)


def model_from_cli_id(model_id: str) -> SymmetricModel:
    """``classical:d``, ``quantum:n``, ``wtheory:n``, ``spherical:d`` or ``cubic:n`` (d = n + 1)."""
    try:
        family, size = model_id.split(":")
        size = int(size)
    except ValueError:
        raise ValueError(f"malformed model id {model_id!r}; expected family:size") from None
    if family not in CLI_FAMILIES:
        raise ValueError(f"unknown model family {family!r}")
    if family == "cubic":
        size += 1
    return SymmetricModel(CLI_FAMILIES[family], size)


# --- numerical derivation --------------------------------------------------

def _section_vertices(model: SymmetricModel, dual: bool) -> np.ndarray | None:
    """Vertices of {v in V_0 : u_* + v in C} (or the effect section), when polytopal.

    Coordinates are chosen so that the relevant scalar product is the dot product.
    """
    d = model.d
    if model.model_id == "classical":
        # states u/d + v >= 0, effects 1 + f >= 0, both with zero sum
        scale = 1.0 if dual else 1.0 / d
        return scale * (d * np.eye(d) - 1.0)
    if model.model_id == "cubic-min":
        if dual:
            return np.vstack([np.eye(d - 1), -np.eye(d - 1)])
        return sign_vectors(d - 1)
    return None


def _section_lmo(model: SymmetricModel, dual: bool):
    """Linear maximization oracle over the state (or effect) section."""
    if model.model_id == "spherical-min":
        def lmo(g):
            nrm = np.linalg.norm(g)
            return g / nrm if nrm > 0 else np.eye(len(g))[0]
        return lmo
    n = model.size
    scale = float(n) if dual else 1.0

    def lmo(G):
        # effect section is n * (state section): 1 + X >= 0 with tr X = 0
        _, vecs = np.linalg.eigh(G)
        top = vecs[:, -1]
        return scale * (np.outer(top, top.conj()) - np.eye(n) / n)
    return lmo


def _dot(x, y) -> float:
    return float(np.real(np.vdot(x, y)))


def _random_start(model: SymmetricModel, rng) -> np.ndarray:
    if model.model_id == "spherical-min":
        return rng.standard_normal(model.d - 1)
    n = model.size
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return G + G.conj().T


def _ascent(model: SymmetricModel, dual: bool, pair: bool, restarts: int, seed: int) -> float:
    """Monotone LMO ascent for max <v, v> or max -<v, w> over the section."""
    lmo = _section_lmo(model, dual)
    rng = np.random.default_rng(seed)
    best = -np.inf
    for _ in range(restarts):
        v = lmo(_random_start(model, rng))
        w = lmo(-v) if pair else v
        val = -_dot(v, w) if pair else _dot(v, v)
        for _ in range(100):
            if pair:
                w = lmo(-v)
                v = lmo(-w)
                new = -_dot(v, w)
            else:
                v = lmo(v)
                new = _dot(v, v)
            if new <= val + 1e-15:
                val = max(val, new)
                break
            val = new
        best = max(best, val)
    return best


def _m_constants(model: SymmetricModel, dual: bool, seed: int) -> tuple[float, float]:
    V = _section_vertices(model, dual)
    if V is not None:
        G = V @ V.T
        # convex quadratic and bilinear maxima sit on vertices; w = -v' ranges over -V
        return float(np.diag(G).max()), float((-G).max())
    return _ascent(model, dual, False, 16, seed), _ascent(model, dual, True, 16, seed + 1)


def _bisect_edge(inside, label: str) -> float:
    """max {k >= 0 : inside(k)} for a predicate true on an interval [0, k_max]."""
    if not inside(0.0):
        raise BracketError(f"{label}: the invariant point itself is outside the cone")
    lo, hi = 0.0, 1.0
    for _ in range(64):
        if not inside(hi):
            break
        lo, hi = hi, 2 * hi
    else:
        raise BracketError(f"{label}: no upper bracket found, the E direction may be miscomputed")
    for _ in range(BISECTION_MAX_ITER):
        if hi - lo <= BISECTION_TOL * max(1.0, hi):
            return (lo + hi) / 2
        mid = (lo + hi) / 2
        if inside(mid):
            lo = mid
        else:
            hi = mid
    raise BracketError(f"{label}: bisection did not converge within {BISECTION_MAX_ITER} steps")


def derive_constants_numerically(model: SymmetricModel, seed: int = 0) -> SymmetricConstants:
    """Recompute every constant from the cones alone.

    m+- and m+-* maximize the scalar product over the local sections (vertex
    enumeration for polytopes, eigenvector ascent otherwise); k+- and k+-* come
    from bisection along the Werner line in the bipartite cone and its dual.
    """
    m_plus, m_minus = _m_constants(model, False, seed)
    m_plus_star, m_minus_star = _m_constants(model, True, seed + 7)
    k_plus = _bisect_edge(lambda k: model.werner_in_cone(1.0, k), "k_plus")
    k_minus = _bisect_edge(lambda k: model.werner_in_cone(1.0, -k), "k_minus")
    k_plus_star = _bisect_edge(lambda k: model.werner_in_dual_cone(1.0, k), "k_plus_star")
    k_minus_star = _bisect_edge(lambda k: model.werner_in_dual_cone(1.0, -k), "k_minus_star")
    return SymmetricConstants(
        model.d, m_plus, m_minus, m_plus_star, m_minus_star, k_plus, k_minus, k_plus_star, k_minus_star
    )


def constants_for(model: SymmetricModel) -> SymmetricConstants:
    return catalog_constants(model.model_id, model.size)


# --- Werner line -----------------------------------------------------------

@dataclass(frozen=True)
class WernerCoordinates:
    a: float
    b: float
    d: int


def haar_projector_apply(model: SymmetricModel, X) -> WernerCoordinates:
    """Coordinates of the group average of X: a = U(X), b = E_*(X) / (d - 1)."""
    return WernerCoordinates(model.U(X), model.E_star(X) / (model.d - 1), model.d)


@dataclass(frozen=True)
class WernerLineNorms:
    base: float
    sep: float


def werner_line_norms(c: SymmetricConstants, a: float, b: float) -> WernerLineNorms:
    base = max(abs(a), abs(2 * b + a * (c.k_minus - c.k_plus)) / (c.k_plus + c.k_minus))
    mp, mm = c.m_plus_star, c.m_minus_star
    sep = max(abs(a), abs(2 * b * mp * mm + a * (mm - mp)) / (mp + mm))
    return WernerLineNorms(float(base), float(sep))


@dataclass(frozen=True)
class WernerHidingRatio:
    value: float
    a: float
    b: float


def werner_hiding_ratio(c: SymmetricConstants) -> WernerHidingRatio:
    """max of base / sep over the Werner plane, with a maximizing ray (a, b) = (1, +-1/m-+*)."""
    s = c.k_plus + c.k_minus
    t_minus = 1 / c.m_plus_star - c.k_minus   # attained at b = -a / m+*
    t_plus = 1 / c.m_minus_star - c.k_plus    # attained at b = +a / m-*
    if t_plus >= t_minus:
        return WernerHidingRatio(1 + 2 * t_plus / s, 1.0, 1 / c.m_minus_star)
    return WernerHidingRatio(1 + 2 * t_minus / s, 1.0, -1 / c.m_plus_star)


def werner_ratio_grid(c: SymmetricConstants, points: int = 100_000) -> float:
    """Brute-force max of base / sep over rays in the (a, b) plane."""
    theta = np.linspace(0.0, np.pi, points, endpoint=False)
    best = 0.0
    for a, b in zip(np.cos(theta), np.sin(theta)):
        n = werner_line_norms(c, a, b)
        best = max(best, n.base / n.sep)
    return best


def dual_werner_polytope(c: SymmetricConstants, variant: str = "allowed") -> list[tuple[float, float]]:
    """Vertices of the (alpha, beta) region of two-outcome measurements
    (alpha U + beta E_*, (1 - alpha) U - beta E_*) on the Werner line."""
    if variant == "allowed":
        kp, km = c.k_plus_star, c.k_minus_star
    elif variant == "separable":
        kp, km = c.m_plus_star / (c.d - 1), c.m_minus_star / (c.d - 1)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    s = kp + km
    return [(0.0, 0.0), (1.0, 0.0), (km / s, kp * km / s), (kp / s, -kp * km / s)]
