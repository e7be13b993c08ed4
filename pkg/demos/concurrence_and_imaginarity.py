"""
Concurrence against imaginarity
===============================

For a real-state masker, the more imaginary the input the less entangled
the output. For qubits the pattern breaks.
"""

import numpy as np

from qmask.info_measures import concurrence_curve, robustness_of_imaginarity
from qmask.masking import canonical_real_masker, counterexample_d2
from qmask.repro import maskcon_points

mk = canonical_real_masker(5)
p = mk.purity

# %%
# Sampled points sit on the closed-form curve.
pts = sorted(maskcon_points(mk, 200, seed=0))
gap = max(abs(c - concurrence_curve(p, x)) for x, c in pts)
print(f"purity {p}, largest gap to the curve {gap:.1e}")
for x, c in pts[::40]:
    print(f"  imaginarity {x:.3f}  concurrence {c:.4f}")

# %%
# A maximally imaginary input.
psi = np.array([1, 1j, 0, 0, 0]) / np.sqrt(2)
rho = np.outer(psi, psi.conj())
print(robustness_of_imaginarity(rho), concurrence_curve(p, 1.0))

# %%
# Qubit inputs admit a masker whose output beats the bound real inputs reach.
ce = counterexample_d2()
print(f"output {ce.concurrence_out:.6f} > bound {ce.bound:.6f}")
