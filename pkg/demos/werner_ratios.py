"""
Werner-class hiding ratios
==========================

How much better can a global measurement tell two Werner-class states apart
than any measurement with separable effects? On the line alpha*rho_S + beta*rho_A
every norm has a closed form, so the whole question fits in a few lines.
"""

import numpy as np

from gpthide.quantum import werner_class_norms, werner_class_ratios

# The symmetric and antisymmetric Werner states, as a difference.
for n in (2, 3, 5):
    w = werner_class_norms(n, 1.0, -1.0)
    print(f"n={n}: trace {w.trace:.4f}  sep {w.sep:.4f}  witness {w.w:.4f}")

# The best ratios over the whole class, from the known maximizers,
# and the same numbers recovered by a brute-force angular grid.
print()
print(" n   trace/sep   grid     w/sep   grid")
for n in range(2, 9):
    r = werner_class_ratios(n, grid=100_000)
    print(f"{n:2d}   {r.qm_sep:8.4f} {r.grid_qm_sep:8.4f}  {r.w_sep:7.4f} {r.grid_w_sep:7.4f}")

# The quantum ratio grows like n, the witness-theory ratio like 2n - 1.
ns = np.arange(2, 9)
print("\nfits:", np.polyfit(ns, [werner_class_ratios(n, grid=1000).qm_sep for n in ns], 1).round(6))
