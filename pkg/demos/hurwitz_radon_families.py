"""
Hurwitz-Radon families
======================

Build families of unitaries that square to ``-I`` and pairwise
anticommute, and look at the smallest dimension that holds ``d - 1`` of
them.
"""

import numpy as np

from qmask.hurwitz_radon import build_hr, extend_by_doubling, kappa, kappa_real, pauli_hr, verify_hr_relations

# %%
# The Pauli matrices times ``i`` are the smallest nontrivial example.
hr = pauli_hr()
for u in hr:
    print(np.round(u, 3))
print(verify_hr_relations(hr).passed)

# %%
# Doubling adds two members and doubles the dimension.
wide = extend_by_doubling(extend_by_doubling(hr))
print(wide.count, wide.dim, max(verify_hr_relations(wide).deviations.values()))

# %%
# Minimal dimensions. The real-orthogonal column is twice the complex one
# except when ``d`` is 0, 1 or 7 mod 8.
print(" d  complex  real")
for d in range(2, 18):
    print(f"{d:2d}  {kappa(d):7d}  {kappa_real(d):4d}")

# %%
# Asking for too many members in too small a space fails loudly.
try:
    build_hr(4, 2)
except ValueError as exc:
    print("refused:", exc)
