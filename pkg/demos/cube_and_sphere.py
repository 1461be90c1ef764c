"""
Restricted ratios for spheres and cubes
=======================================

For centrally symmetric models and tensors without cross terms the hiding
ratio reduces to the largest projective/injective ratio of the local norms.
Spheres give the exact value d - 1; cubes sit between sqrt(n/2) and sqrt(2n),
with Sylvester Hadamard matrices as witnesses.
"""

import numpy as np

from gpthide.composites import CompositeModel, lift_matrix, min_base_norm, restricted_ratio, sep_norm
from gpthide.hadamard import hadamard, khintchine_upper_check, sign_ratio
from gpthide.models import make_cubic, make_spherical

# The identity on the spherical model: global norm d - 1, separable norm 1.
for d in (3, 4, 6):
    comp = CompositeModel(make_spherical(d), make_spherical(d))
    X = lift_matrix(np.eye(d - 1))
    print(f"sphere d={d}: base {min_base_norm(comp, X):.6f}  sep {sep_norm(comp, X):.6f}")

# Hadamard witnesses for the cube.
print()
for k in range(1, 5):
    H = hadamard(k)
    n = len(H)
    r = restricted_ratio(make_cubic(n), make_cubic(n))
    print(f"cube n={n:2d}: witness {sign_ratio(H):.4f}  sqrt(n/2) {r.guaranteed_lower:.4f}  sqrt(2n) {r.upper:.4f}")

# Random matrices never beat sqrt(2n).
rep = khintchine_upper_check(6, 6, samples=200, seed=1)
print(f"\nrandom 6x6: max ratio {rep.max_ratio:.4f} below {rep.bound:.4f}, violations {rep.violations}")
