"""
Which state sets can be hidden
==============================

Informational completeness, designs, a set hidden from one side only, and
phase-state families.
"""

import numpy as np

from qmask.ic_sets import (
    computational_basis,
    cube_root_phase_states,
    hidable_set_sampler,
    hidable_witness,
    is_informationally_complete,
    is_weighted_2_design,
    mub_complete,
    phase_extension_experiment,
    separating_observable,
    sic_qubit,
    triple_product,
)
from qmask.linalg import hs_norm
from qmask.masking import magic_basis_masker, marginals

# %%
# SIC and complete MUB sets are 2-designs and span every observable.
for name, s in (("sic", sic_qubit()), ("mub2", mub_complete(2)), ("mub3", mub_complete(3))):
    print(name, is_informationally_complete(s), is_weighted_2_design(s))

# %%
# A basis leaves room for an observable it cannot see.
basis = computational_basis(3)
q = separating_observable(basis)
print(np.round(q, 3))
print(max(abs(np.trace(q @ r)) for r in basis.states))

# %%
# The magic-basis masker hides a larger-than-real set from A, but B notices.
mk = magic_basis_masker()
half = np.eye(2) / 2
dev_a = max(hs_norm(marginals(mk, hidable_set_sampler(0, i))[0] - half) for i in range(300))
_, wb = marginals(mk, hidable_witness())
print(f"A drift {dev_a:.1e}, witness B drift {hs_norm(wb - half):.4f}")

# %%
# Triple products of three phase states: real only for balanced qubits.
for c2 in ([0.5, 0.5], [0.3, 0.7], [1 / 3] * 3):
    print(c2, np.round(triple_product(*cube_root_phase_states(np.sqrt(c2))), 4))

# %%
# A state outside the phase family whose marginals the diagonal masker
# leaves untouched.
f = phase_extension_experiment(np.full(4, 0.5))
print(f.correlation_rank, f.extreme_correlation, f.marginal_deviation)
