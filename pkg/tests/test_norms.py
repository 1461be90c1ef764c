import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gpthide.errors import DimensionError, EnumerationLimitError
from gpthide.hadamard import hadamard
from gpthide.local_norms import EllInf, EllOne, Euclidean, PolytopeByVertices
from gpthide.models import (
    GptModel,
    PolyhedralByGenerators,
    herm_to_vec,
    make_classical,
    make_cubic,
    make_quantum,
    make_spherical,
)
from gpthide.norms import (
    auerbach_ratio_check,
    base_norm,
    injective_norm,
    inf_to_one,
    matrix_norms,
    numeric_dual_of_projective,
    order_unit_norm,
    projective_certificate,
    projective_norm,
)
from oracles import brute_inf_to_one, brute_injective, decomposition_base_norm, primal_projective

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
H2 = hadamard(1).astype(float)
HEXAGON = PolytopeByVertices(np.array([[np.cos(t), np.sin(t)] for t in np.arange(6) * np.pi / 3]))


def test_base_norm_examples():
    assert base_norm(make_classical(3), [1, -2, 0.5]) == pytest.approx(3.5)
    assert base_norm(make_spherical(4), [0.3, 0.1, 0.2, 0.2]) == pytest.approx(0.3)
    assert base_norm(make_quantum(2), herm_to_vec(np.diag([1.0, -1.0]))) == pytest.approx(2.0)


def test_order_unit_examples():
    assert order_unit_norm(make_classical(3), [1, -2, 0.5]) == pytest.approx(2.0)
    assert order_unit_norm(make_quantum(2), herm_to_vec(np.diag([3.0, -1.0]))) == pytest.approx(3.0)
    assert order_unit_norm(make_cubic(2), [0.5, 1.0, -1.0]) == pytest.approx(2.5)


@given(arrays(np.float64, 3, elements=finite))
def test_polyhedral_base_norm_matches_decomposition(x):
    rays = np.array([[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1]], dtype=float)
    model = GptModel(3, PolyhedralByGenerators(rays), np.array([1.0, 0.0, 0.0]))
    lp = base_norm(model, x)
    assert lp == pytest.approx(decomposition_base_norm(rays, model.unit, x), abs=1e-9)
    assert lp == pytest.approx(base_norm(make_cubic(2), x), abs=1e-9)


@given(arrays(np.float64, 3, elements=finite), arrays(np.float64, 3, elements=finite))
def test_base_and_order_unit_norms_are_dual(x, f):
    for model in (make_classical(3), make_spherical(3), make_cubic(2)):
        assert abs(f @ x) <= base_norm(model, x) * order_unit_norm(model, f) + 1e-9


def test_base_norm_is_unit_on_states():
    rng = np.random.default_rng(4)
    model = make_cubic(3)
    for _ in range(20):
        x = np.concatenate([[1.0], rng.uniform(-1, 1, 3)])
        assert base_norm(model, x) == pytest.approx(1.0)


def test_matrix_norm_examples():
    n = matrix_norms(np.eye(2))
    assert (n.trace, n.operator, n.entrywise_one, n.inf_to_one) == pytest.approx((2, 1, 2, 2))
    assert inf_to_one(H2) == pytest.approx(2.0)
    assert inf_to_one(hadamard(2)) == pytest.approx(8.0)


@given(arrays(np.float64, st.tuples(st.integers(1, 4), st.integers(1, 5)), elements=finite))
def test_inf_to_one_matches_brute_force(M):
    value, s, t = inf_to_one(M, witness=True)
    assert value == pytest.approx(brute_inf_to_one(M), abs=1e-9)
    assert s @ M @ t == pytest.approx(value, abs=1e-9)


def test_inf_to_one_enumeration_limit():
    with pytest.raises(EnumerationLimitError, match="enumeration limit"):
        inf_to_one(np.ones((23, 23)))
    assert inf_to_one(np.ones((2, 40))) == pytest.approx(80.0)


def test_tensor_norm_examples():
    assert injective_norm(EllOne(2), EllOne(2), H2) == pytest.approx(2.0)
    assert projective_norm(Euclidean(2), Euclidean(2), np.eye(2)) == pytest.approx(2.0)
    assert projective_norm(EllOne(2), EllOne(2), H2) == pytest.approx(4.0)
    assert projective_norm(EllInf(2), EllInf(2), H2) == pytest.approx(2.0)
    assert injective_norm(Euclidean(3), Euclidean(3), np.eye(3)) == pytest.approx(1.0)


POLY_PAIRS = [(EllOne(2), EllInf(3)), (EllInf(3), EllInf(2)), (HEXAGON, EllOne(2)), (HEXAGON, HEXAGON)]


@pytest.mark.parametrize("pair", POLY_PAIRS, ids=lambda p: f"{p[0]!r}x{p[1]!r}")
@given(data=st.data())
def test_projective_matches_primal_decomposition(pair, data):
    A, B = pair
    X = data.draw(arrays(np.float64, (A.dim, B.dim), elements=finite))
    expected = primal_projective(A.vertices(half=True), B.vertices(half=True), X)
    assert projective_norm(A, B, X) == pytest.approx(expected, rel=1e-8, abs=1e-9)


@pytest.mark.parametrize("pair", POLY_PAIRS, ids=lambda p: f"{p[0]!r}x{p[1]!r}")
@given(data=st.data())
def test_injective_matches_vertex_enumeration(pair, data):
    A, B = pair
    X = data.draw(arrays(np.float64, (A.dim, B.dim), elements=finite))
    expected = brute_injective(A.dual().vertices(), B.dual().vertices(), X)
    assert injective_norm(A, B, X) == pytest.approx(expected, rel=1e-9, abs=1e-12)


@given(arrays(np.float64, (2, 3), elements=finite))
def test_euclidean_factors_use_conic_program(X):
    A, B = Euclidean(2), EllInf(3)
    p = projective_norm(A, B, X)
    assert p == pytest.approx(projective_norm(A, B, X, method="program"), rel=1e-7, abs=1e-8)
    assert injective_norm(A, B, X) <= p + 1e-8
    assert p <= 2 * injective_norm(A, B, X) + 1e-7


@given(arrays(np.float64, 3, elements=finite), arrays(np.float64, 2, elements=finite))
def test_simple_tensors_are_cross_norm(a, b):
    A, B = EllInf(3), HEXAGON
    X = np.outer(a, b)
    expected = A(a) * B(b)
    assert projective_norm(A, B, X) == pytest.approx(expected, rel=1e-8, abs=1e-9)
    assert injective_norm(A, B, X) == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_projective_certificate_is_dual_feasible():
    rng = np.random.default_rng(5)
    A, B = EllOne(3), HEXAGON
    for _ in range(5):
        X = rng.standard_normal((3, 2))
        value, F = projective_certificate(A, B, X)
        assert np.sum(F * X) == pytest.approx(value, rel=1e-8)
        assert injective_norm(A.dual(), B.dual(), F) <= 1 + 1e-8


def test_duality_between_tensor_norms():
    rng = np.random.default_rng(6)
    A, B = EllOne(2), EllInf(2)
    G = rng.standard_normal((2, 2))
    assert numeric_dual_of_projective(A, B, G) == pytest.approx(injective_norm(A.dual(), B.dual(), G), rel=1e-7)


def test_auerbach_bound():
    report = auerbach_ratio_check(Euclidean(3), Euclidean(3), samples=10, seed=0)
    assert report.violations == 0 and report.max_ratio <= 3
    assert projective_norm(Euclidean(3), Euclidean(3), np.eye(3)) / injective_norm(
        Euclidean(3), Euclidean(3), np.eye(3)
    ) == pytest.approx(3.0)


def test_shape_errors():
    with pytest.raises(DimensionError):
        projective_norm(EllOne(2), EllOne(3), np.eye(2))
    with pytest.raises(DimensionError):
        base_norm(make_classical(3), [1, 2])
