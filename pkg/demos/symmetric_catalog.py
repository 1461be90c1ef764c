"""
Symmetric models and their Werner lines
=======================================

Five families of completely symmetric models, each summarized by eight
constants. The constants are recomputed here from the cones alone and
compared with the closed-form catalog, then turned into hiding ratios.
"""

from gpthide.werner import (
    SymmetricModel,
    catalog_constants,
    derive_constants_numerically,
    werner_hiding_ratio,
)

cases = [("classical", 4), ("quantum-native", 3), ("quantum-wtheory", 3), ("spherical-min", 5), ("cubic-min", 5)]

print(f"{'model':16s} {'d':>3s} {'k+':>8s} {'k-':>8s} {'m+*':>6s} {'m-*':>6s} {'ratio':>6s} {'dev':>8s}")
for model_id, size in cases:
    model = SymmetricModel(model_id, size)
    exact = catalog_constants(model_id, size)
    numeric = derive_constants_numerically(model)
    r = werner_hiding_ratio(exact)
    print(f"{model_id:16s} {exact.d:3d} {exact.k_plus:8.4f} {exact.k_minus:8.4f} "
          f"{exact.m_plus_star:6.2f} {exact.m_minus_star:6.2f} {r.value:6.2f} {exact.max_deviation(numeric):8.1e}")

# The maximizing direction in the (a, b) plane for the spherical model.
r = werner_hiding_ratio(catalog_constants("spherical-min", 5))
print(f"\nspherical d=5 maximizer: a={r.a}, b={r.b}")
