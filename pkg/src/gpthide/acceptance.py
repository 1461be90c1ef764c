"""The acceptance suite: twelve criteria, each a list of numeric checks.

Shared by ``gpthide verify`` and the test suite so that both report the same
measured values.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import quantum, werner
from .composites import CompositeModel, lift_matrix, min_base_norm, restricted_ratio, sep_norm
from .hadamard import hadamard_witness_ratio, khintchine_upper_check
from .local_norms import EllInf, EllOne, Euclidean
from .models import make_spherical
from .norms import injective_norm, numeric_dual_of_projective, projective_norm

DEFAULT_SEED = 2017


@dataclass(frozen=True)
class Check:
    """One measured quantity compared against an expectation.

    ``relation`` is "eq" (|measured - expected| <= tol), "le" or "ge".
    """

    id: str
    reference: str
    expected: float
    measured: float
    tol: float
    relation: str = "eq"

    @property
    def passed(self) -> bool:
        m, e, t = self.measured, self.expected, self.tol
        if self.relation == "eq":
            return bool(abs(m - e) <= t)
        if self.relation == "le":
            return bool(m <= e + t)
        return bool(m >= e - t)

    def with_tol(self, tol: float) -> "Check":
        return Check(self.id, self.reference, self.expected, self.measured, tol, self.relation)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["expected"], out["measured"] = float(self.expected), float(self.measured)
        out["pass"] = self.passed
        return out


@dataclass(frozen=True)
class CriterionResult:
    number: int
    key: str
    title: str
    checks: list[Check]
    heuristic: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tag = " [heuristic]" if self.heuristic else ""
        bad = [c.id for c in self.checks if not c.passed]
        tail = f" failing: {', '.join(bad)}" if bad else ""
        return f"{status} criterion {self.number:2d} {self.key}{tag}: {len(self.checks)} checks{tail}"


def _max(values) -> float:
    return float(max(values, default=0.0))


# --- criteria --------------------------------------------------------------

def werner_closed_forms(seed: int) -> CriterionResult:
    checks = []
    rng = np.random.default_rng(seed)
    for n in range(2, 7):
        worst = 0.0
        for alpha, beta in rng.standard_normal((1000, 2)):
            closed = quantum.werner_class_norms(n, alpha, beta, check=False)
            scale = max(1.0, abs(alpha) + abs(beta))
            for value, kind in ((closed.trace, "standard"), (closed.sep, "separable"), (closed.w, "witness")):
                worst = max(worst, abs(value - quantum.werner_vertex_oracle(n, alpha, beta, kind)) / scale)
        checks.append(Check(f"closed-vs-oracle n={n}", "Werner-class norms, closed form vs vertex oracle",
                            0.0, worst, 1e-12))
        qm = quantum.werner_class_norms(n, (n + 1) / n, -(n - 1) / n)
        checks.append(Check(f"hiding pair trace n={n}", "optimal Werner pair, trace norm", 2.0, qm.trace, 1e-12))
        checks.append(Check(f"hiding pair sep n={n}", "optimal Werner pair, SEP norm", 2 / n, qm.sep, 1e-12))
        w = quantum.werner_class_norms(n, (n + 1) / (2 * n - 1), -(n - 1) / (2 * n - 1))
        checks.append(Check(f"W pair w n={n}", "optimal W-theory pair, witness norm", 2.0, w.w, 1e-12))
        checks.append(Check(f"W pair sep n={n}", "optimal W-theory pair, SEP norm", 2 / (2 * n - 1), w.sep, 1e-12))
    return CriterionResult(1, "werner-closed-forms", "Werner-class closed forms", checks)


def werner_ratios(seed: int) -> CriterionResult:
    checks = []
    for n in range(2, 9):
        r = quantum.werner_class_ratios(n)
        checks.append(Check(f"qm/sep n={n}", "Werner-class trace/SEP ratio", n, r.qm_sep, 1e-12))
        checks.append(Check(f"w/sep n={n}", "Werner-class witness/SEP ratio", 2 * n - 1, r.w_sep, 1e-12))
        rel = max(abs(r.grid_qm_sep - r.qm_sep) / r.qm_sep, abs(r.grid_w_sep - r.w_sep) / r.w_sep)
        checks.append(Check(f"grid n={n}", "1e5-point angular grid vs closed form (relative)", 0.0, rel, 1e-3))
    return CriterionResult(2, "werner-ratios", "Werner-class data hiding ratios", checks)


CATALOG_RANGES = {
    "classical": range(2, 7),
    "quantum-native": range(2, 5),
    "quantum-wtheory": range(2, 5),
    "spherical-min": range(3, 9),
    "cubic-min": range(3, 9),
}


def _expected_werner_ratio(model_id: str, size: int) -> float:
    return {
        "classical": 1.0,
        "quantum-native": float(size),
        "quantum-wtheory": 2.0 * size - 1,
        "spherical-min": size - 1.0,
        "cubic-min": 1.0,
    }[model_id]


def symmetric_catalog(seed: int) -> CriterionResult:
    checks = []
    for model_id, sizes in CATALOG_RANGES.items():
        for size in sizes:
            c = werner.catalog_constants(model_id, size)
            numeric = werner.derive_constants_numerically(werner.SymmetricModel(model_id, size), seed=seed)
            checks.append(Check(f"{model_id}:{size} constants", "numeric constants vs closed form",
                                0.0, c.max_deviation(numeric), 1e-9))
            checks.append(Check(f"{model_id}:{size} ratio", "Werner hiding ratio",
                                _expected_werner_ratio(model_id, size), werner.werner_hiding_ratio(c).value, 1e-12))
    return CriterionResult(3, "symmetric-catalog", "Symmetric-model catalog", checks)


def _identity_residual(c: werner.SymmetricConstants) -> float:
    d1 = c.d - 1
    res = [abs(c.k_plus_star * c.k_minus - 1 / d1), abs(c.k_minus_star * c.k_plus - 1 / d1)]
    for p in (c.m_plus * c.m_minus_star, c.m_minus * c.m_plus_star):
        res.append(max(0.0, 1 - p, p - d1))
    return max(res)


def constant_identities(seed: int) -> CriterionResult:
    checks = []
    for model_id, sizes in CATALOG_RANGES.items():
        for size in sizes:
            c = werner.catalog_constants(model_id, size)
            numeric = werner.derive_constants_numerically(werner.SymmetricModel(model_id, size), seed=seed)
            checks.append(Check(f"{model_id}:{size}", "k+-* k-+ = 1/(d-1) and 1 <= m+- m-+* <= d-1",
                                0.0, max(_identity_residual(c), _identity_residual(numeric)), 1e-9))
    return CriterionResult(4, "constant-identities", "Constant identities", checks)


def spherical_norms(seed: int) -> CriterionResult:
    checks = []
    rng = np.random.default_rng(seed)
    for dA in (3, 4):
        for dB in (3, 4):
            comp = CompositeModel(make_spherical(dA), make_spherical(dB))
            base_dev = sep_dev = 0.0
            for _ in range(200):
                M = rng.standard_normal((dA - 1, dB - 1))
                X = lift_matrix(M)
                sv = np.linalg.svd(M, compute_uv=False)
                base_dev = max(base_dev, abs(min_base_norm(comp, X, method="program") - sv.sum()))
                sep_dev = max(sep_dev, abs(sep_norm(comp, X) - sv.max()))
            checks.append(Check(f"base dA={dA} dB={dB}", "min-tensor base norm of lifted M = trace norm",
                                0.0, base_dev, 1e-6))
            checks.append(Check(f"sep dA={dA} dB={dB}", "SEP norm of lifted M = operator norm", 0.0, sep_dev, 1e-6))
            r = restricted_ratio(make_spherical(dA), make_spherical(dB))
            checks.append(Check(f"ratio dA={dA} dB={dB}", "restricted ratio at the identity",
                                min(dA, dB) - 1, r.lower, 0.0))
    return CriterionResult(5, "spherical-norms", "Spherical model norms", checks)


NORM_PAIRS = (
    (Euclidean(3), Euclidean(3)),
    (Euclidean(2), EllInf(3)),
    (EllOne(3), EllInf(2)),
    (EllInf(3), EllInf(3)),
)


def tensor_norm_laws(seed: int) -> CriterionResult:
    checks = []
    rng = np.random.default_rng(seed)
    for A, B in NORM_PAIRS:
        label = f"{type(A).__name__}{A.dim}x{type(B).__name__}{B.dim}"
        order_bad = factor_bad = 0
        simple_dev = 0.0
        for i in range(1000):
            X = rng.standard_normal((A.dim, B.dim))
            eps, pi = injective_norm(A, B, X), projective_norm(A, B, X)
            order_bad += eps > pi * (1 + 1e-9)
            factor_bad += pi > min(A.dim, B.dim) * eps * (1 + 1e-9)
            if i < 200:
                x, y = rng.standard_normal(A.dim), rng.standard_normal(B.dim)
                T = np.outer(x, y)
                ref = A(x) * B(y)
                simple_dev = max(simple_dev, abs(injective_norm(A, B, T) - ref) / ref,
                                 abs(projective_norm(A, B, T) - ref) / ref)
        checks.append(Check(f"eps<=pi {label}", "injective <= projective, violations", 0, order_bad, 0.0))
        checks.append(Check(f"pi<=min(d)eps {label}", "projective <= min(dA,dB) injective, violations",
                            0, factor_bad, 0.0))
        checks.append(Check(f"simple {label}", "eps = pi = |x||y| on simple tensors (relative)",
                            0.0, simple_dev, 1e-9))
        dual_dev = 0.0
        for _ in range(3):
            G = rng.standard_normal((A.dim, B.dim))
            num = numeric_dual_of_projective(A, B, G)
            dual_dev = max(dual_dev, abs(num - injective_norm(A.dual(), B.dual(), G)) / max(1.0, num))
        checks.append(Check(f"duality {label}", "dual of projective = injective of dual norms", 0.0, dual_dev, 1e-6))
    return CriterionResult(6, "tensor-norm-laws", "Tensor-norm laws", checks)


def cubic_sandwich(seed: int) -> CriterionResult:
    checks = []
    for n in (2, 4, 8, 16):
        w = hadamard_witness_ratio(n, n)
        checks.append(Check(f"witness>=sqrt(n) n={n}", "Hadamard witness ratio at least sqrt(n)",
                            math.sqrt(n), w.ratio_lower, 1e-12, "ge"))
        checks.append(Check(f"witness>=sqrt(n/2) n={n}", "Hadamard witness above sqrt(n/2)",
                            math.sqrt(n / 2), w.ratio_lower, 0.0, "ge"))
        if n <= 10:
            k = khintchine_upper_check(n, n, samples=1000, seed=seed + n)
            checks.append(Check(f"khintchine n={n}", "sampled ratio at most sqrt(2n)", k.bound, k.max_ratio, 1e-9, "le"))
    return CriterionResult(7, "cubic-sandwich", "Cubic model sandwich", checks)


def _random_hermitian(rng, N: int) -> np.ndarray:
    G = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
    return (G + G.conj().T) / 2


def teleportation(seed: int) -> CriterionResult:
    checks = []
    rng = np.random.default_rng(seed)
    for n in (2, 3):
        err = 0.0
        for _ in range(20):
            X = _random_hermitian(rng, n * n)
            err = max(err, np.abs(quantum.teleport(n, quantum.embed_with_phi(X, n)) - X).max())
        checks.append(Check(f"teleport n={n}", "tau(X (x) Phi) = X, max entry error", 0.0, float(err), 1e-12))
        uerr = _max(
            np.abs(U @ U.conj().T - np.eye(n)).max()
            for U in (quantum.heisenberg_weyl(n, p, q) for p in range(n) for q in range(n))
        )
        checks.append(Check(f"unitary n={n}", "U(p,q) unitary, max entry error", 0.0, uerr, 1e-12))
    return CriterionResult(8, "teleportation", "Teleportation identity", checks)


def isotropic(seed: int) -> CriterionResult:
    checks = [
        Check(f"ppt n={n}", "partial-transpose minimum eigenvalue of the isotropic mixture",
              0.0, quantum.isotropic_robustness_check(n).pt_min_eigenvalue, 1e-10)
        for n in range(2, 7)
    ]
    return CriterionResult(9, "isotropic", "Isotropic robustness", checks,
                           notes=["PPT (equivalent to separability for isotropic states)"])


def balanced_ratio(seed: int) -> CriterionResult:
    checks = []
    for n in range(2, 9):
        b = quantum.balanced_ratio_werner(n)
        checks.append(Check(f"R~<=R n={n}", "balanced ratio at most the full ratio", b.r, b.r_tilde, 1e-12, "le"))
        checks.append(Check(f"R<=2R~+1 n={n}", "full ratio at most twice the balanced plus one",
                            2 * b.r_tilde + 1, b.r, 1e-12, "le"))
    b2 = quantum.balanced_ratio_werner(2)
    checks.append(Check("R~ n=2", "balanced ratio, n=2", 1.5, b2.r_tilde, 1e-12))
    checks.append(Check("R n=2", "full ratio, n=2", 2.0, b2.r, 1e-12))
    return CriterionResult(10, "balanced-ratio", "Balanced ratios", checks)


SUBSPACE_DIMS = (16, 24, 32, 48)


def random_subspace(seed: int) -> CriterionResult:
    records = [quantum.random_subspace_experiment(n, 0.25, trials=1, seed=seed)[0] for n in SUBSPACE_DIMS]
    slope = quantum.loglog_slope([r.n for r in records], [r.witness_bound for r in records])
    checks = [Check("loglog slope", "witness lower bound grows super-linearly in n", 1.0, slope, 0.0, "ge")]
    notes = [f"n={r.n} k={r.k} bound={r.witness_bound:.6g} overlap={r.overlap_estimate:.6g}" for r in records]
    return CriterionResult(11, "random-subspace", "Random-subspace witness bounds", checks, heuristic=True, notes=notes)


def sep_norm_ledger(seed: int) -> CriterionResult:
    checks = []
    for n in range(2, 9):
        oracle = quantum.werner_vertex_oracle(n, 1.0, -1.0, "separable")
        checks.append(Check(f"sep(rhoS-rhoA) n={n}", "vertex oracle value 4/(n+1)", 4 / (n + 1), oracle, 1e-12))
    notes = ["the value is the norm of the difference; the matching bias, half of it, is 2/(n+1)"]
    return CriterionResult(12, "sep-norm-ledger", "SEP norm of rhoS - rhoA", checks, notes=notes)


CRITERIA: tuple[Callable[[int], CriterionResult], ...] = (
    werner_closed_forms,
    werner_ratios,
    symmetric_catalog,
    constant_identities,
    spherical_norms,
    tensor_norm_laws,
    cubic_sandwich,
    teleportation,
    isotropic,
    balanced_ratio,
    random_subspace,
    sep_norm_ledger,
)
CRITERION_KEYS = (
    "werner-closed-forms",
    "werner-ratios",
    "symmetric-catalog",
    "constant-identities",
    "spherical-norms",
    "tensor-norm-laws",
    "cubic-sandwich",
    "teleportation",
    "isotropic",
    "balanced-ratio",
    "random-subspace",
    "sep-norm-ledger",
)


def select(only: str | None) -> list[int]:
    """Criterion numbers matching a comma-separated filter of numbers or key substrings."""
    if not only:
        return list(range(1, len(CRITERIA) + 1))
    picked = set()
    for token in (t.strip() for t in only.split(",") if t.strip()):
        if token.isdigit() and 1 <= int(token) <= len(CRITERIA):
            picked.add(int(token))
            continue
        hits = [i + 1 for i, key in enumerate(CRITERION_KEYS) if token in key]
        if not hits:
            raise ValueError(f"no acceptance criterion matches {token!r}")
        picked.update(hits)
    return sorted(picked)


def run_criterion(number: int, seed: int = DEFAULT_SEED, tolerance: float | None = None) -> CriterionResult:
    result = CRITERIA[number - 1](seed)
    if tolerance is not None:
        result = CriterionResult(result.number, result.key, result.title,
                                 [c.with_tol(tolerance) for c in result.checks], result.heuristic, result.notes)
    return result


def run_suite(only: str | None = None, seed: int = DEFAULT_SEED, tolerance: float | None = None):
    return [run_criterion(i, seed, tolerance) for i in select(only)]
