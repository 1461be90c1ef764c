"""Single-system GPTs: ordered vector spaces (V, C, u), membership tests and the model catalog.

Vectors of every model are real arrays of length ``dim``. Quantum models use
coordinates with respect to a fixed Hilbert-Schmidt orthonormal basis of the
Hermitian matrices, so the pairing of an effect and a state is a plain dot
product in every model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence, Union

import numpy as np
from scipy.spatial import ConvexHull

from .errors import DimensionError
from .local_norms import EllInf, EllOne, Euclidean, LocalNorm
from .lp import conic_residual, solve_lp

DEFAULT_TOL = 1e-9


# --- Hermitian coordinates -------------------------------------------------

@lru_cache(maxsize=None)
def _hermitian_basis(n: int) -> np.ndarray:
    basis = []
    for j in range(n):
        b = np.zeros((n, n), dtype=complex)
        b[j, j] = 1.0
        basis.append(b)
    r = 1 / np.sqrt(2)
    for j in range(n):
        for k in range(j + 1, n):
            b = np.zeros((n, n), dtype=complex)
            b[j, k] = b[k, j] = r
            basis.append(b)
            b = np.zeros((n, n), dtype=complex)
            b[j, k], b[k, j] = 1j * r, -1j * r
            basis.append(b)
    out = np.array(basis)
    out.setflags(write=False)
    return out


def hermitian_basis(n: int) -> np.ndarray:
    """Orthonormal basis of the n x n Hermitian matrices, shape (n^2, n, n).

    The first n elements are the diagonal matrix units, so the trace functional
    has coordinates (1, ..., 1, 0, ..., 0).
    """
    return _hermitian_basis(n)


def herm_to_vec(H) -> np.ndarray:
    H = np.asarray(H)
    n = H.shape[0]
    B = hermitian_basis(n)
    return np.real(np.einsum("kij,ji->k", B, H))


def vec_to_herm(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    n = int(round(np.sqrt(v.size)))
    if n * n != v.size:
        raise DimensionError(f"length {v.size} is not a perfect square")
    return np.einsum("k,kij->ij", v, hermitian_basis(n))


def operator_to_tensor(X, nA: int, nB: int) -> np.ndarray:
    """Coordinates X_ij = Tr[(B_i (x) B_j) X] of a Hermitian operator on C^nA (x) C^nB."""
    X = np.asarray(X).reshape(nA, nB, nA, nB)
    BA, BB = hermitian_basis(nA), hermitian_basis(nB)
    return np.real(np.einsum("iac,jbd,cdab->ij", BA, BB, X))


def tensor_to_operator(T, nA: int, nB: int) -> np.ndarray:
    T = np.asarray(T, dtype=float)
    if T.shape != (nA * nA, nB * nB):
        raise DimensionError(f"expected shape {(nA * nA, nB * nB)}, got {T.shape}")
    BA, BB = hermitian_basis(nA), hermitian_basis(nB)
    X = np.einsum("ij,iac,jbd->abcd", T, BA, BB)
    return X.reshape(nA * nB, nA * nB)


# --- cone geometry ---------------------------------------------------------

def strictly_positive_functional(generators: np.ndarray) -> tuple[np.ndarray, float]:
    """Return h with min_i h(g_i) maximal subject to |h|_inf <= 1, and that minimum."""
    G = np.asarray(generators, dtype=float)
    k, d = G.shape
    # maximize t s.t. G h >= t
    c = np.zeros(d + 1)
    c[-1] = -1.0
    A_ub = np.hstack([-G, np.ones((k, 1))])
    bounds = [(-1, 1)] * d + [(None, None)]
    res = solve_lp(c, A_ub=A_ub, b_ub=np.zeros(k), bounds=bounds)
    return res.x[:d], float(res.x[-1])


def cone_facets(generators) -> np.ndarray:
    """Facet functionals (unit length rows) of the pointed cone spanned by ``generators``.

    Applied to facet functionals instead, it returns the extreme rays of the cone
    they cut out, since both are the facets of the respective dual cone.
    """
    G = np.atleast_2d(np.asarray(generators, dtype=float))
    d = G.shape[1]
    h, t = strictly_positive_functional(G)
    if t <= 1e-12:
        raise ValueError("generators do not span a pointed cone")
    if d == 1:
        return np.sign(G[:1])
    P = G / (G @ h)[:, None]
    hn = h / np.linalg.norm(h)
    # orthonormal basis of the complement of h
    Q = np.linalg.svd(np.eye(d) - np.outer(hn, hn))[0][:, : d - 1]
    centre = P.mean(axis=0)
    q = (P - centre) @ Q
    if d == 2:
        lo, hi = q[:, 0].min(), q[:, 0].max()
        raw = [Q[:, 0] - (centre @ Q[:, 0] + lo) * h, -Q[:, 0] + (centre @ Q[:, 0] + hi) * h]
    else:
        hull = ConvexHull(q)
        raw = []
        for eq in hull.equations:
            nrm, off = eq[:-1], eq[-1]
            # on the section: nrm . Q^T (x - centre) + off <= 0
            a = -(Q @ nrm) + (nrm @ (Q.T @ centre) - off) * h
            raw.append(a)
    raw = np.array(raw)
    raw /= np.linalg.norm(raw, axis=1)[:, None]
    return np.unique(np.round(raw, 12), axis=0)


# --- cone descriptors ------------------------------------------------------

@dataclass(frozen=True)
class Simplex:
    """The positive orthant R^d_+."""

    dim: int

    def contains(self, x, tol=DEFAULT_TOL) -> bool:
        return bool(np.min(x) >= -tol)

    def dual_contains(self, f, tol=DEFAULT_TOL) -> bool:
        return bool(np.min(f) >= -tol)

    def generators(self) -> np.ndarray:
        return np.eye(self.dim)

    def dual_generators(self) -> np.ndarray:
        return np.eye(self.dim)


@dataclass(frozen=True)
class IceCream:
    """{x : x0 >= |x_bar|} for a norm |.| on R^(d-1)."""

    local_norm: LocalNorm

    @property
    def dim(self) -> int:
        return self.local_norm.dim + 1

    def contains(self, x, tol=DEFAULT_TOL) -> bool:
        return bool(x[0] + tol >= self.local_norm(x[1:]))

    def dual_contains(self, f, tol=DEFAULT_TOL) -> bool:
        return bool(f[0] + tol >= self.local_norm.dual()(f[1:]))

    def generators(self) -> np.ndarray:
        v = self.local_norm.vertices()
        return np.hstack([np.ones((len(v), 1)), v])

    def dual_generators(self) -> np.ndarray:
        w = self.local_norm.dual().vertices()
        return np.hstack([np.ones((len(w), 1)), w])


@dataclass(frozen=True)
class Psd:
    """Positive semidefinite n x n Hermitian matrices, in Hermitian coordinates."""

    n: int

    @property
    def dim(self) -> int:
        return self.n * self.n

    def contains(self, x, tol=DEFAULT_TOL) -> bool:
        return bool(np.linalg.eigvalsh(vec_to_herm(x)).min() >= -tol)

    def dual_contains(self, f, tol=DEFAULT_TOL) -> bool:
        return self.contains(f, tol)


@dataclass(frozen=True, eq=False)
class PolyhedralByGenerators:
    rays: np.ndarray
    _facets: list = field(default_factory=list, repr=False)

    @property
    def dim(self) -> int:
        return np.atleast_2d(self.rays).shape[1]

    def contains(self, x, tol=DEFAULT_TOL) -> bool:
        return conic_residual(self.rays, x) <= tol

    def dual_contains(self, f, tol=DEFAULT_TOL) -> bool:
        return bool((np.atleast_2d(self.rays) @ f).min() >= -tol)

    def generators(self) -> np.ndarray:
        return np.atleast_2d(np.asarray(self.rays, dtype=float))

    def dual_generators(self) -> np.ndarray:
        if not self._facets:
            self._facets.append(cone_facets(self.rays))
        return self._facets[0]


@dataclass(frozen=True, eq=False)
class PolyhedralByFacets:
    """{x : h(x) >= 0 for every row h of ``facets``}."""

    facets: np.ndarray
    _rays: list = field(default_factory=list, repr=False)

    @property
    def dim(self) -> int:
        return np.atleast_2d(self.facets).shape[1]

    def contains(self, x, tol=DEFAULT_TOL) -> bool:
        return bool((np.atleast_2d(self.facets) @ x).min() >= -tol)

    def dual_contains(self, f, tol=DEFAULT_TOL) -> bool:
        return conic_residual(self.facets, f) <= tol

    def generators(self) -> np.ndarray:
        if not self._rays:
            self._rays.append(cone_facets(self.facets))
        return self._rays[0]

    def dual_generators(self) -> np.ndarray:
        return np.atleast_2d(np.asarray(self.facets, dtype=float))


Cone = Union[Simplex, IceCream, Psd, PolyhedralByGenerators, PolyhedralByFacets]


def is_polyhedral(cone: Cone) -> bool:
    if isinstance(cone, IceCream):
        return cone.local_norm.polytopal
    return isinstance(cone, (Simplex, PolyhedralByGenerators, PolyhedralByFacets))


def same_cone(a: Cone, b: Cone, tol=1e-9) -> bool:
    """Cross-check two polyhedral descriptions: each one's generators lie in the other."""
    return all(b.contains(g, tol) for g in a.generators()) and all(
        a.contains(g, tol) for g in b.generators()
    )


# --- models ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GptModel:
    """A GPT (V, C, u) with V = R^dim."""

    dim: int
    cone: Cone
    unit: np.ndarray
    name: str = ""

    def __post_init__(self):
        unit = np.asarray(self.unit, dtype=float)
        object.__setattr__(self, "unit", unit)
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if unit.shape != (self.dim,):
            raise DimensionError(f"unit has shape {unit.shape}, expected ({self.dim},)")
        if self.cone.dim != self.dim:
            raise DimensionError(f"cone lives in dimension {self.cone.dim}, model in {self.dim}")
        _validate(self)

    def __repr__(self):
        return f"GptModel({self.name or type(self.cone).__name__}, dim={self.dim})"

    def check(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise DimensionError(f"expected a vector of length {self.dim}, got shape {x.shape}")
        return x

    def is_state(self, x, tol=DEFAULT_TOL) -> bool:
        x = self.check(x)
        return cone_contains(self, x, tol) and abs(self.unit @ x - 1) <= tol


def _validate(model: GptModel) -> None:
    cone, u = model.cone, model.unit
    if isinstance(cone, Psd):
        if np.linalg.eigvalsh(vec_to_herm(u)).min() <= 0:
            raise ValueError("unit must be positive definite")
        return
    if isinstance(cone, IceCream):
        if u[0] <= cone.local_norm.dual()(u[1:]):
            raise ValueError("unit must lie in the interior of the dual cone")
        return
    G = cone.generators()
    if np.linalg.matrix_rank(G) < model.dim:
        raise ValueError("cone is not generating")
    if isinstance(cone, PolyhedralByGenerators):
        _, t = strictly_positive_functional(G)
        if t <= 1e-12:
            raise ValueError("cone is not salient")
    if (G @ u).min() <= 0:
        raise ValueError("unit must be strictly positive on every generator")


@dataclass(frozen=True, eq=False)
class GptVector:
    model: GptModel
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", self.model.check(self.coords))

    def is_state(self, tol=DEFAULT_TOL) -> bool:
        return self.model.is_state(self.coords, tol)


def make_classical(d: int) -> GptModel:
    if d < 2:
        raise ValueError("dimension must be at least 2")
    return GptModel(d, Simplex(d), np.ones(d), name=f"classical:{d}")


def make_quantum(n: int) -> GptModel:
    if n < 2:
        raise ValueError("dimension must be at least 2")
    return GptModel(n * n, Psd(n), herm_to_vec(np.eye(n)), name=f"quantum:{n}")


def make_centrally_symmetric(local_norm: LocalNorm, name: str = "") -> GptModel:
    d = local_norm.dim + 1
    unit = np.zeros(d)
    unit[0] = 1.0
    return GptModel(d, IceCream(local_norm), unit, name=name)


def make_spherical(d: int) -> GptModel:
    if d < 2:
        raise ValueError("dimension must be at least 2")
    return make_centrally_symmetric(Euclidean(d - 1), name=f"spherical:{d}")


def make_cubic(n: int) -> GptModel:
    """The model whose normalized states form the n-dimensional hypercube (dimension n + 1)."""
    if n < 2:
        raise ValueError("dimension must be at least 2")
    return make_centrally_symmetric(EllInf(n), name=f"cubic:{n}")


def make_gbit() -> GptModel:
    """The square bit: normalized states |x| + |y| <= 1, a rotated copy of cubic:2."""
    return make_centrally_symmetric(EllOne(2), name="gbit")


_CATALOG = {
    "classical": make_classical,
    "quantum": make_quantum,
    "spherical": make_spherical,
    "cubic": make_cubic,
}


def parse_model_id(model_id: str) -> tuple[str, int]:
    try:
        family, size = model_id.split(":")
        return family.strip(), int(size)
    except ValueError:
        raise ValueError(f"malformed model id {model_id!r}; expected family:size") from None


def model_from_id(model_id: str) -> GptModel:
    family, size = parse_model_id(model_id)
    if family not in _CATALOG:
        raise ValueError(f"unknown model family {family!r}")
    return _CATALOG[family](size)


def is_centrally_symmetric(model: GptModel) -> bool:
    e0 = np.zeros(model.dim)
    e0[0] = 1.0
    return isinstance(model.cone, IceCream) and np.array_equal(model.unit, e0)


# --- membership and measurements -------------------------------------------

def cone_contains(model: GptModel, x, tol=DEFAULT_TOL) -> bool:
    return model.cone.contains(model.check(x), tol)


def dual_cone_contains(model: GptModel, f, tol=DEFAULT_TOL) -> bool:
    return model.cone.dual_contains(model.check(f), tol)


@dataclass(frozen=True)
class MeasurementCheck:
    ok: bool
    reason: str

    def __bool__(self):
        return self.ok


def is_measurement(model: GptModel, effects: Sequence, tol=DEFAULT_TOL) -> MeasurementCheck:
    """Check that every effect lies in [0, u] and that the effects add up to u."""
    if len(effects) == 0:
        return MeasurementCheck(False, "empty")
    total = np.zeros(model.dim)
    for i, e in enumerate(effects):
        e = np.asarray(e, dtype=float)
        if e.shape != (model.dim,):
            return MeasurementCheck(False, f"dimension:{i}")
        if not model.cone.dual_contains(e, tol):
            return MeasurementCheck(False, f"not-positive:{i}")
        if not model.cone.dual_contains(model.unit - e, tol):
            return MeasurementCheck(False, f"exceeds-unit:{i}")
        total += e
    scale = max(1.0, np.abs(model.unit).max())
    if np.abs(total - model.unit).max() > max(tol, 1e-12) * scale:
        return MeasurementCheck(False, "sum-mismatch")
    return MeasurementCheck(True, "ok")


def coarse_grain(effects: Sequence, partition: Sequence[Sequence[int]]) -> list[np.ndarray]:
    return [np.sum([np.asarray(effects[i], dtype=float) for i in block], axis=0) for block in partition]


def single_measurement_ratio(epsilon):
    """Hiding ratio of the classical bit against the lone measurement ((eps, 0), (1 - eps, 1))."""
    if not 0 < epsilon <= 1:
        raise ValueError("epsilon must lie in (0, 1]")
    return (2 - epsilon) / epsilon
