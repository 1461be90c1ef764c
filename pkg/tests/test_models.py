import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gpthide.errors import DimensionError
from gpthide.local_norms import EllInf, sign_vectors
from gpthide.models import (
    GptModel,
    PolyhedralByFacets,
    PolyhedralByGenerators,
    cone_contains,
    cone_facets,
    coarse_grain,
    dual_cone_contains,
    herm_to_vec,
    hermitian_basis,
    is_centrally_symmetric,
    is_measurement,
    make_classical,
    make_cubic,
    make_gbit,
    make_quantum,
    make_spherical,
    model_from_id,
    operator_to_tensor,
    same_cone,
    single_measurement_ratio,
    tensor_to_operator,
    vec_to_herm,
)
from oracles import random_hermitian

finite = st.floats(-5, 5, allow_nan=False, allow_infinity=False)
SQUARE_RAYS = np.hstack([np.ones((4, 1)), sign_vectors(2)])


def test_catalog_dimensions():
    assert make_classical(3).dim == 3
    assert make_quantum(3).dim == 9
    assert make_spherical(4).dim == 4
    assert make_cubic(3).dim == 4
    assert model_from_id("quantum:2").dim == 4
    with pytest.raises(ValueError, match="unknown"):
        model_from_id("hexagon:3")
    with pytest.raises(ValueError, match="malformed"):
        model_from_id("classical")


def test_state_examples():
    assert make_classical(3).is_state([0.2, 0.3, 0.5])
    assert not make_classical(3).is_state([0.5, 0.6, -0.1])
    assert make_spherical(3).is_state([1, 0.6, 0.8])
    assert not cone_contains(make_spherical(3), [1, 1.0001, 0])
    # the hypercube model contains the corner region the square bit cuts off
    assert make_cubic(2).is_state([1, 0.8, 0.8])
    assert not make_gbit().is_state([1, 0.8, 0.8])
    assert make_gbit().is_state([1, 0.6, 0.3])


def test_quantum_states_are_density_matrices():
    Q = make_quantum(2)
    assert Q.is_state(herm_to_vec(np.diag([0.5, 0.5])))
    assert not Q.is_state(herm_to_vec(np.diag([1.5, -0.5])))
    plus = np.full((2, 2), 0.5)
    assert Q.is_state(herm_to_vec(plus))


def test_dual_cone_examples():
    cubic = make_cubic(2)
    assert not dual_cone_contains(cubic, [1, 0.6, 0.6])
    assert dual_cone_contains(cubic, [1, 0.5, 0.5])
    assert dual_cone_contains(make_spherical(3), [1, 0.6, 0.8])


def test_unit_must_be_interior():
    with pytest.raises(ValueError):
        GptModel(3, PolyhedralByGenerators(SQUARE_RAYS), np.array([1.0, 1.0, 0.0]))
    with pytest.raises(DimensionError):
        GptModel(3, PolyhedralByGenerators(SQUARE_RAYS), np.ones(2))


def test_generator_and_facet_descriptions_agree():
    by_gen = PolyhedralByGenerators(SQUARE_RAYS)
    by_facet = PolyhedralByFacets(cone_facets(SQUARE_RAYS))
    assert same_cone(by_gen, by_facet)
    assert len(by_facet.facets) == 4
    cubic = make_cubic(2).cone
    rng = np.random.default_rng(1)
    for x in rng.standard_normal((100, 3)):
        assert by_gen.contains(x) == by_facet.contains(x) == cubic.contains(x)
        assert by_gen.dual_contains(x) == by_facet.dual_contains(x) == cubic.dual_contains(x)


@given(arrays(np.float64, 4, elements=finite), arrays(np.float64, 4, elements=finite))
def test_polyhedral_cones_are_convex_cones(x, y):
    cone = make_classical(4).cone
    if cone.contains(x) and cone.contains(y):
        assert cone.contains(2.5 * x + 0.5 * y)


def test_hermitian_coordinates():
    B = hermitian_basis(3)
    gram = np.real(np.einsum("aij,bji->ab", B, B))
    assert np.allclose(gram, np.eye(9))
    rng = np.random.default_rng(2)
    H = random_hermitian(rng, 3)
    assert np.allclose(vec_to_herm(herm_to_vec(H)), H)
    K = random_hermitian(rng, 3)
    assert herm_to_vec(H) @ herm_to_vec(K) == pytest.approx(np.trace(H @ K).real)


def test_operator_tensor_round_trip():
    rng = np.random.default_rng(3)
    X = random_hermitian(rng, 6)
    T = operator_to_tensor(X, 2, 3)
    assert T.shape == (4, 9)
    assert np.allclose(tensor_to_operator(T, 2, 3), X)
    a, b = random_hermitian(rng, 2), random_hermitian(rng, 3)
    assert herm_to_vec(a) @ T @ herm_to_vec(b) == pytest.approx(np.trace(np.kron(a, b) @ X).real)


def test_measurement_examples():
    C = make_classical(2)
    assert is_measurement(C, [[1, 0], [0, 1]])
    assert is_measurement(C, [[0.5, 0.5], [0.5, 0.5]])
    assert is_measurement(C, [[1, 0], [0, 0.9]]).reason == "sum-mismatch"
    assert is_measurement(C, [[1.2, 0], [-0.2, 1]]).reason == "exceeds-unit:0"
    assert not is_measurement(C, [])
    S = make_spherical(3)
    half = np.array([0.5, 0.5, 0.0])
    assert is_measurement(S, [half, S.unit - half])
    assert not is_measurement(S, [[0.5, 0.6, 0.0], [0.5, -0.6, 0.0]])


def test_coarse_graining_keeps_measurements():
    S = make_spherical(3)
    angles = np.arange(5) * 2 * np.pi / 5
    effects = [np.array([1, np.cos(t), np.sin(t)]) / 5 for t in angles]
    assert is_measurement(S, effects)
    merged = coarse_grain(effects, [[0, 2], [1, 3, 4]])
    assert is_measurement(S, merged)


@pytest.mark.parametrize("eps, ratio", [(1.0, 1.0), (0.1, 19.0), (0.01, 199.0)])
def test_single_measurement_ratio(eps, ratio):
    assert single_measurement_ratio(eps) == pytest.approx(ratio)


def test_single_measurement_ratio_domain():
    with pytest.raises(ValueError):
        single_measurement_ratio(0.0)


def test_central_symmetry_detection():
    assert is_centrally_symmetric(make_cubic(3))
    assert not is_centrally_symmetric(make_classical(3))
    assert isinstance(make_cubic(3).cone.local_norm, EllInf)
