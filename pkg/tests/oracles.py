"""Reference computations that share no code with the package.

Each one takes the slow, obvious route: full enumeration or the primal LP
where the package uses a closed form, a dual program or a vertex formula.
"""

import itertools

import numpy as np
from scipy.optimize import linprog

TIGHT = {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}


def brute_inf_to_one(M):
    M = np.asarray(M, dtype=float)
    best = 0.0
    for s in itertools.product((-1.0, 1.0), repeat=M.shape[0]):
        for t in itertools.product((-1.0, 1.0), repeat=M.shape[1]):
            best = max(best, float(np.array(s) @ M @ np.array(t)))
    return best


def brute_injective(dual_vertices_a, dual_vertices_b, X):
    """max |f^T X g| over extreme points of the two dual unit balls."""
    vals = np.asarray(dual_vertices_a) @ np.asarray(X) @ np.asarray(dual_vertices_b).T
    return float(np.abs(vals).max())


def primal_projective(vertices_a, vertices_b, X):
    """min sum |lambda_ij| with X = sum lambda_ij a_i b_j^T over unit-ball extreme points."""
    X = np.asarray(X, dtype=float)
    scale = np.abs(X).max()
    if scale == 0:
        return 0.0
    X = X / scale  # keeps tiny inputs above the solver's feasibility tolerance
    cols = [np.outer(a, b).ravel() for a in vertices_a for b in vertices_b]
    A = np.array(cols).T
    k = A.shape[1]
    res = linprog(np.ones(2 * k), A_eq=np.hstack([A, -A]), b_eq=X.ravel(), bounds=(0, None), method="highs", options=TIGHT)
    assert res.status == 0, res.message
    return float(res.fun) * scale


def decomposition_base_norm(generators, unit, x):
    """min u(p) + u(n) over x = p - n with p, n in the cone spanned by ``generators``."""
    G = np.asarray(generators, dtype=float)
    w = G @ np.asarray(unit, dtype=float)
    res = linprog(np.concatenate([w, w]), A_eq=np.hstack([G.T, -G.T]), b_eq=np.asarray(x, dtype=float),
                  bounds=(0, None), method="highs", options=TIGHT)
    assert res.status == 0, res.message
    return float(res.fun)


def werner_norm_lp(n, alpha, beta, kind):
    """max |p| + |tr - p| over the (a, b) measurement polygon, p = Tr[(a 1 + b F) X].

    |p| + |tr - p| is convex in p, so the two extreme values of p suffice.
    """
    scale = max(abs(alpha), abs(beta))
    if scale == 0:
        return 0.0
    tr, trF = (alpha + beta) / scale, (alpha - beta) / scale
    rows = {
        "standard": [(1.0, 1.0), (1.0, -1.0)],
        "separable": [(1.0, -1.0), (1.0, float(n))],
        "witness": [(1.0, 0.0), (1.0, 1.0)],
    }[kind]
    A = np.array(rows)
    A_ub = np.vstack([A, -A])
    b_ub = np.concatenate([np.ones(len(A)), np.zeros(len(A))])
    best = 0.0
    for sign in (1.0, -1.0):
        res = linprog(-sign * np.array([tr, trF]), A_ub=A_ub, b_ub=b_ub, bounds=(None, None), method="highs", options=TIGHT)
        assert res.status == 0, res.message
        p = float(np.array([tr, trF]) @ res.x)
        best = max(best, abs(p) + abs(tr - p))
    return best * scale


def trace_norm(X):
    return float(np.abs(np.linalg.eigvalsh(X)).sum())


def haar_unitary(rng, n):
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_hermitian(rng, n):
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (G + G.conj().T) / 2


def random_density(rng, n, rank=None):
    rank = rank or n
    G = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real
