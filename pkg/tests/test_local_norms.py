import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gpthide.errors import DimensionError, UnsupportedNormError
from gpthide.local_norms import EllInf, EllOne, Euclidean, PolytopeByVertices, sign_vectors

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
HEXAGON = PolytopeByVertices(
    np.array([[np.cos(t), np.sin(t)] for t in np.arange(6) * np.pi / 3])
)
NORMS = [Euclidean(3), EllOne(3), EllInf(3)]


def vec(k):
    return arrays(np.float64, k, elements=finite)


@pytest.mark.parametrize("norm", NORMS, ids=repr)
@given(x=vec(3), y=vec(3), c=finite)
def test_norm_axioms(norm, x, y, c):
    assert norm(x) >= 0
    assert norm(c * x) == pytest.approx(abs(c) * norm(x), rel=1e-12, abs=1e-12)
    assert norm(x + y) <= norm(x) + norm(y) + 1e-9


@pytest.mark.parametrize("norm", NORMS + [HEXAGON], ids=repr)
@given(data=st.data())
def test_support_is_the_dual_norm(norm, data):
    g = data.draw(vec(norm.dim))
    value, x = norm.support(g)
    assert value == pytest.approx(norm.dual()(g), rel=1e-9, abs=1e-12)
    assert g @ x == pytest.approx(value, rel=1e-9, abs=1e-12)
    if np.any(g):
        assert norm(x) == pytest.approx(1.0)


@given(x=vec(2), g=vec(2))
def test_pairing_inequality_for_polytope(x, g):
    assert abs(g @ x) <= HEXAGON(x) * HEXAGON.dual()(g) + 1e-9


def test_square_polytope_matches_ell_inf():
    square = PolytopeByVertices(sign_vectors(2))
    rng = np.random.default_rng(0)
    for x in rng.standard_normal((50, 2)):
        assert square(x) == pytest.approx(EllInf(2)(x))
        assert square.dual()(x) == pytest.approx(EllOne(2)(x))


def test_polytope_validation():
    with pytest.raises(ValueError, match="negation"):
        PolytopeByVertices(np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]]))
    with pytest.raises(ValueError, match="full-dimensional"):
        PolytopeByVertices(np.array([[1.0, 1.0], [-1.0, -1.0]]))


def test_vertex_sets():
    assert len(EllInf(4).vertices()) == 16
    assert len(EllInf(4).vertices(half=True)) == 8
    assert EllOne(3).vertex_count() == 6
    assert len(HEXAGON.vertices(half=True)) == 3
    with pytest.raises(UnsupportedNormError):
        Euclidean(2).vertices()


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        EllOne(3)(np.ones(2))
