"""Norms on R^k used as local norms of centrally symmetric models and tensor factors.

Every norm knows its dual, can evaluate the support function of its unit ball
(which is the dual norm together with a maximizer), and, when the unit ball is
a polytope, can list the extreme points.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull

from .errors import DimensionError, EnumerationLimitError, UnsupportedNormError

ENUMERATION_LIMIT = 2 ** 22


def sign_vectors(k: int, half: bool = False) -> np.ndarray:
    """All vectors in {-1, +1}^k as rows.

    With ``half=True`` only those with first entry +1 are returned, which is
    enough whenever the objective is invariant under s -> -s.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if half and k == 0:
        return np.ones((1, 0))
    free = k - 1 if half else k
    if 2 ** free > ENUMERATION_LIMIT:
        raise EnumerationLimitError(f"enumeration limit: 2^{free} sign vectors exceed 2^22")
    bits = (np.arange(2 ** free)[:, None] >> np.arange(free)) & 1
    signs = 1.0 - 2.0 * bits
    if half:
        signs = np.hstack([np.ones((signs.shape[0], 1)), signs])
    return signs


def _check_vector(x, dim: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (dim,):
        raise DimensionError(f"expected a vector of length {dim}, got shape {x.shape}")
    return x


class LocalNorm:
    """Common interface. Subclasses are immutable."""

    dim: int
    polytopal: bool = False

    def __call__(self, x) -> float:
        raise NotImplementedError

    def dual(self) -> "LocalNorm":
        raise NotImplementedError

    def support(self, g) -> tuple[float, np.ndarray]:
        """Return ``max <g, x>`` over the unit ball and a maximizing extreme point."""
        raise NotImplementedError

    def vertices(self, half: bool = False) -> np.ndarray:
        """Extreme points of the unit ball, one per row."""
        raise UnsupportedNormError(f"{self!r} has no finite extreme-point set")

    def vertex_count(self) -> int:
        raise UnsupportedNormError(f"{self!r} has no finite extreme-point set")


@dataclass(frozen=True)
class Euclidean(LocalNorm):
    dim: int

    def __call__(self, x) -> float:
        return float(np.linalg.norm(_check_vector(x, self.dim)))

    def dual(self) -> "Euclidean":
        return self

    def support(self, g):
        g = _check_vector(g, self.dim)
        r = np.linalg.norm(g)
        if r == 0:
            x = np.zeros(self.dim)
            if self.dim:
                x[0] = 1.0
            return 0.0, x
        return float(r), g / r


@dataclass(frozen=True)
class EllOne(LocalNorm):
    dim: int
    polytopal = True

    def __call__(self, x) -> float:
        return float(np.abs(_check_vector(x, self.dim)).sum())

    def dual(self) -> "EllInf":
        return EllInf(self.dim)

    def support(self, g):
        g = _check_vector(g, self.dim)
        i = int(np.argmax(np.abs(g)))
        x = np.zeros(self.dim)
        x[i] = 1.0 if g[i] >= 0 else -1.0
        return float(abs(g[i])), x

    def vertices(self, half=False):
        eye = np.eye(self.dim)
        return eye if half else np.vstack([eye, -eye])

    def vertex_count(self):
        return 2 * self.dim


@dataclass(frozen=True)
class EllInf(LocalNorm):
    dim: int
    polytopal = True

    def __call__(self, x) -> float:
        x = _check_vector(x, self.dim)
        return float(np.abs(x).max()) if self.dim else 0.0

    def dual(self) -> EllOne:
        return EllOne(self.dim)

    def support(self, g):
        g = _check_vector(g, self.dim)
        x = np.where(g >= 0, 1.0, -1.0)
        return float(np.abs(g).sum()), x

    def vertices(self, half=False):
        return sign_vectors(self.dim, half=half)

    def vertex_count(self):
        return 2 ** self.dim


@dataclass(frozen=True, eq=False)
class PolytopeByVertices(LocalNorm):
    """Norm whose unit ball is the convex hull of a symmetric vertex list."""

    points: np.ndarray
    dim: int = field(init=False)
    facets: np.ndarray = field(init=False, repr=False)
    polytopal = True

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        k = pts.shape[1]
        for p in pts:
            if not np.any(np.all(np.abs(pts + p) <= 1e-12, axis=1)):
                raise ValueError("vertex list must be closed under negation")
        if np.linalg.matrix_rank(pts) < k:
            raise ValueError("unit ball must be full-dimensional")
        if k == 1:
            r = np.abs(pts).max()
            facets = np.array([[1.0 / r], [-1.0 / r]])
            verts = np.array([[r], [-r]])
        else:
            hull = ConvexHull(pts)
            normals, offsets = hull.equations[:, :-1], hull.equations[:, -1]
            facets = normals / -offsets[:, None]
            facets = np.unique(np.round(facets, 12), axis=0)
            verts = pts[np.unique(hull.vertices)]
        object.__setattr__(self, "points", verts)
        object.__setattr__(self, "dim", k)
        object.__setattr__(self, "facets", facets)

    def __repr__(self):
        return f"PolytopeByVertices(dim={self.dim}, vertices={len(self.points)})"

    def __call__(self, x) -> float:
        return float(max(0.0, (self.facets @ _check_vector(x, self.dim)).max()))

    def dual(self) -> "PolytopeByVertices":
        return PolytopeByVertices(self.facets)

    def support(self, g):
        vals = self.points @ _check_vector(g, self.dim)
        i = int(np.argmax(vals))
        return float(vals[i]), self.points[i].copy()

    def vertices(self, half=False):
        if not half:
            return self.points.copy()
        keep = []
        for p in self.points:
            if not any(np.allclose(p, -q, atol=1e-12) for q in keep):
                keep.append(p)
        return np.array(keep)

    def vertex_count(self):
        return len(self.points)
