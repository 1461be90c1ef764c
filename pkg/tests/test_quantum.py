import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gpthide.errors import DimensionError
from gpthide.quantum import (
    WernerClassOperator,
    antisym_proj,
    as_werner,
    balanced_ratio_werner,
    embed_with_phi,
    equiprobability_bound,
    flip_operator,
    heisenberg_weyl,
    isotropic_robustness_check,
    loglog_slope,
    max_product_overlap,
    maximally_entangled,
    min_product_expectation,
    partial_transpose,
    random_subspace_experiment,
    sym_proj,
    teleport,
    twirl,
    werner_class_norms,
    werner_class_ratios,
    witness_value,
)
from oracles import haar_unitary, random_density, random_hermitian, trace_norm, werner_norm_lp

coef = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def test_flip_and_werner_states():
    F = flip_operator(2)
    assert np.allclose(F @ F, np.eye(4))
    assert np.trace(F) == pytest.approx(2)
    rho_s, rho_a = sym_proj(3), antisym_proj(3)
    assert np.trace(rho_s) == pytest.approx(1) and np.trace(rho_a) == pytest.approx(1)
    assert np.allclose(6 * rho_s + 3 * rho_a, np.eye(9))
    assert np.allclose(rho_s @ rho_a, 0)
    assert np.allclose(6 * rho_s @ rho_s, rho_s)


def test_flip_swaps_factors():
    rng = np.random.default_rng(0)
    a, b = rng.standard_normal(3), rng.standard_normal(3)
    assert np.allclose(flip_operator(3) @ np.kron(a, b), np.kron(b, a))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_twirl_is_invariant_under_local_unitaries(n):
    rng = np.random.default_rng(n)
    X = random_hermitian(rng, n * n)
    U = haar_unitary(rng, n)
    UU = np.kron(U, U)
    w1, w2 = twirl(X), twirl(UU @ X @ UU.conj().T)
    assert w1.a == pytest.approx(w2.a) and w1.b == pytest.approx(w2.b)
    # trace and flip expectation are preserved, and twirling twice changes nothing
    W = w1.matrix()
    assert np.trace(W).real == pytest.approx(np.trace(X).real)
    assert np.trace(flip_operator(n) @ W).real == pytest.approx(np.trace(flip_operator(n) @ X).real)
    assert as_werner(W) is not None
    assert twirl(W).alpha == pytest.approx(w1.alpha)


def test_twirl_of_states_is_a_state():
    rng = np.random.default_rng(7)
    rho = random_density(rng, 9)
    w = twirl(rho)
    assert w.alpha >= -1e-12 and w.beta >= -1e-12
    assert w.trace == pytest.approx(1.0)


def test_twirl_rejects_unequal_dims():
    with pytest.raises(DimensionError):
        twirl(np.eye(6), dims=(2, 3))


def test_werner_parametrizations_agree():
    w = WernerClassOperator(3, 0.7, -0.2)
    assert np.allclose(w.matrix(), 0.7 * sym_proj(3) - 0.2 * antisym_proj(3))
    v = WernerClassOperator.from_identity_flip(3, w.a, w.b)
    assert (v.alpha, v.beta) == pytest.approx((0.7, -0.2))
    assert as_werner(np.diag([1.0, 0, 0, 0])) is None


@pytest.mark.parametrize("n", [2, 3, 5])
@given(alpha=coef, beta=coef)
def test_werner_norms_match_lp_oracle(n, alpha, beta):
    w = werner_class_norms(n, alpha, beta, check=False)
    tol = 1e-9 * max(1.0, abs(alpha) + abs(beta))
    assert w.trace == pytest.approx(werner_norm_lp(n, alpha, beta, "standard"), abs=tol)
    assert w.sep == pytest.approx(werner_norm_lp(n, alpha, beta, "separable"), abs=tol)
    assert w.w == pytest.approx(werner_norm_lp(n, alpha, beta, "witness"), abs=tol)
    assert w.sep <= w.trace + tol and w.sep <= w.w + tol


@pytest.mark.parametrize("n", [2, 3])
def test_trace_norm_matches_spectrum(n):
    w = WernerClassOperator(n, 0.3, -1.1)
    assert werner_class_norms(n, w.alpha, w.beta).trace == pytest.approx(trace_norm(w.matrix()))


def test_werner_norm_examples():
    w = werner_class_norms(2, 1.0, -1.0)
    assert (w.trace, w.sep, w.w) == pytest.approx((2.0, 4 / 3, 4.0))
    with pytest.raises(ValueError):
        werner_class_norms(1, 1.0, 0.0)


@pytest.mark.parametrize("n", range(2, 9))
def test_werner_ratios(n):
    r = werner_class_ratios(n, grid=20_000)
    assert r.qm_sep == pytest.approx(n)
    assert r.w_sep == pytest.approx(2 * n - 1)
    assert r.grid_qm_sep <= r.qm_sep + 1e-9
    assert r.grid_qm_sep == pytest.approx(r.qm_sep, rel=1e-3)
    assert r.grid_w_sep == pytest.approx(r.w_sep, rel=1e-3)


@pytest.mark.parametrize("n", [2, 3, 6])
def test_balanced_ratio_sandwich(n):
    b = balanced_ratio_werner(n)
    assert b.sandwich_ok
    assert b.r_tilde <= b.r + 1e-12


def test_equiprobability_bound():
    assert equiprobability_bound(0.75) == pytest.approx(2.0)
    assert equiprobability_bound(0.5) == float("inf")


def test_heisenberg_weyl_basis():
    n = 3
    U = [heisenberg_weyl(n, p, q) for p in range(n) for q in range(n)]
    gram = np.array([[np.trace(a.conj().T @ b) for b in U] for a in U])
    assert np.allclose(gram, n * np.eye(n * n))
    with pytest.raises(ValueError):
        heisenberg_weyl(3, 3, 0)


@pytest.mark.parametrize("n", [2, 3])
def test_teleportation_recovers_input(n):
    rng = np.random.default_rng(11)
    X = random_hermitian(rng, n * n)
    assert np.allclose(teleport(n, embed_with_phi(X, n)), X, atol=1e-12)


def test_teleport_shape_check():
    with pytest.raises(DimensionError):
        teleport(2, np.eye(4))


@pytest.mark.parametrize("n", range(2, 7))
def test_isotropic_threshold_is_ppt(n):
    rep = isotropic_robustness_check(n)
    assert rep.pt_min_eigenvalue >= -1e-12
    assert rep.phi_pt_min_eigenvalue == pytest.approx(-1 / n)


def test_partial_transpose_of_flip_is_unnormalized_phi():
    n = 3
    assert np.allclose(partial_transpose(flip_operator(n), (n, n)), n * maximally_entangled(n))


def test_product_minimum_certificates():
    n = 3
    val, a, b = min_product_expectation(flip_operator(n), n, n, restarts=8)
    assert val >= -1e-9  # the flip is block positive
    val, a, b = min_product_expectation(-maximally_entangled(n), n, n, restarts=8)
    v = np.kron(a, b)
    assert val == pytest.approx(np.real(v.conj() @ (-maximally_entangled(n)) @ v))
    assert val == pytest.approx(-1 / n, abs=1e-8)


def test_max_product_overlap_limits():
    n = 3
    full = np.eye(n * n, dtype=complex)
    assert max_product_overlap(full, n, restarts=4) == pytest.approx(1.0)
    anti = np.linalg.eigh(antisym_proj(n))[1][:, -3:]  # the antisymmetric subspace
    assert max_product_overlap(anti, n, restarts=16) == pytest.approx(0.5, abs=1e-6)


def test_random_subspace_records_are_deterministic():
    r1 = random_subspace_experiment(6, 0.25, trials=2, seed=5, restarts=8)
    r2 = random_subspace_experiment(6, 0.25, trials=2, seed=5, restarts=8)
    assert [r.witness_bound for r in r1] == [r.witness_bound for r in r2]
    rec = r1[0]
    assert rec.k == round(6 ** 1.5)
    assert 0 <= rec.witness_bound <= rec.nominal_bound + 1e-9
    assert rec.nominal_bound == pytest.approx(witness_value(6, rec.k))
    assert set(json.loads(rec.to_json())) >= {"n", "k", "delta", "seed", "witness_bound", "heuristic"}
    with pytest.raises(ValueError):
        random_subspace_experiment(2, 1.0, trials=1, seed=0)


def test_loglog_slope():
    xs = np.array([1.0, 2.0, 4.0, 8.0])
    assert loglog_slope(xs, 3 * xs ** 1.5) == pytest.approx(1.5)
