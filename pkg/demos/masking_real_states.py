"""
Masking real states
===================

A masker spreads a state over two parties so that neither party alone
learns anything. Here the input set is every real state of a ``d`` level
system.
"""

import numpy as np

from qmask.info_measures import concurrence_pure, entropy_of_entanglement
from qmask.linalg import hs_norm, make_rng
from qmask.masking import canonical_real_masker, magic_basis_masker, marginals, non_real_sampler, state_sampler, verify_masker

# %%
# A qutrit masker lives on two qubits.
mk = canonical_real_masker(3)
print(mk.shape, mk.purity)

# %%
# Both marginals stay put for real inputs...
rep = verify_masker(mk, state_sampler(3, "mixed-real"), n=500)
print("real:", rep.is_masker, rep.max_dev_a, rep.max_dev_b)

# %%
# ...and move as soon as the input has an imaginary part.
rep = verify_masker(mk, non_real_sampler(3), n=50)
print("complex:", rep.is_masker, round(max(rep.max_dev_a, rep.max_dev_b), 3))

# %%
# How much entanglement the encoding costs, in ebits, for a few sizes.
for d in (2, 3, 5, 9):
    for real in (False, True):
        m = canonical_real_masker(d, real=real)
        print(d, "real" if real else "complex", m.shape, round(entropy_of_entanglement(m.column(0), m.shape), 6))

# %%
# Two-qubit magic basis: the output concurrence of a complex input is
# ``|sum_j c_j^2|``, so real inputs give maximally entangled outputs.
magic = magic_basis_masker()
c = make_rng(1).standard_normal(4) + 1j * make_rng(2).standard_normal(4)
c /= np.linalg.norm(c)
print(concurrence_pure(magic.isometry @ c, magic.shape), abs(np.sum(c**2)))
a, b = marginals(magic, np.outer(c.real, c.real) / np.sum(c.real**2))
print(hs_norm(a - np.eye(2) / 2), hs_norm(b - np.eye(2) / 2))
