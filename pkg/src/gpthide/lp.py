"""Thin wrappers around scipy's HiGHS linear programming interface."""

from __future__ import annotations

import numpy as np
from scipy.optimize import linprog

from .errors import SolverError

# HiGHS defaults to 1e-7, which is visible in norm values
_HIGHS_OPTIONS = {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}


def solve_lp(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, bounds=(0, None)):
    """Minimize ``c @ x``; return the scipy result, raising on anything but optimality."""
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=bounds, method="highs", options=_HIGHS_OPTIONS)
    if res.status != 0:
        raise SolverError(f"LP not solved to optimality: {res.message}")
    return res


def conic_residual(generators: np.ndarray, x: np.ndarray) -> float:
    """Smallest l1 distance from ``x`` to the cone spanned by the rows of ``generators``."""
    G = np.asarray(generators, dtype=float)
    x = np.asarray(x, dtype=float)
    k, d = G.shape
    # variables: lambda (k), slack+ (d), slack- (d)
    c = np.concatenate([np.zeros(k), np.ones(2 * d)])
    A_eq = np.hstack([G.T, np.eye(d), -np.eye(d)])
    res = solve_lp(c, A_eq=A_eq, b_eq=x)
    return float(res.fun)
