"""
Random subspaces and the witness norm
=====================================

A Haar-random projector onto k = n^(1 + 2 delta) dimensions has small overlap
with every product vector. That overlap bounds an entanglement witness, which
in turn lower-bounds the witness-theory norm. The overlap maximum is found by
alternating eigenvector steps from many random starts, so the bound is
heuristic. Takes about a minute.
"""

from gpthide.quantum import loglog_slope, random_subspace_experiment

SEED = 2017
records = []
for n in (8, 16, 24, 32):
    rec = random_subspace_experiment(n, 0.25, trials=1, seed=SEED)[0]
    records.append(rec)
    print(f"n={rec.n:3d} k={rec.k:4d}  overlap {rec.overlap_estimate:.4f}  "
          f"bound {rec.witness_bound:8.3f}  n^(5/4) {rec.reference_scaling:8.3f}  {rec.runtime_ms:7.0f} ms")

print(f"\nlog-log slope of the bound: {loglog_slope([r.n for r in records], [r.witness_bound for r in records]):.3f}")
