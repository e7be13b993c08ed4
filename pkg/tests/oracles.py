"""
Reference computations written independently of the library: plain loops
and closed forms, no shared helpers.
"""

import numpy as np


def partial_trace_loops(rho, dim_a, dim_b, keep="A"):
    rho = np.asarray(rho, dtype=complex)
    if keep == "A":
        out = np.zeros((dim_a, dim_a), dtype=complex)
        for i in range(dim_a):
            for j in range(dim_a):
                out[i, j] = sum(rho[i * dim_b + b, j * dim_b + b] for b in range(dim_b))
        return out
    out = np.zeros((dim_b, dim_b), dtype=complex)
    for i in range(dim_b):
        for j in range(dim_b):
            out[i, j] = sum(rho[a * dim_b + i, a * dim_b + j] for a in range(dim_a))
    return out


def radon_hurwitz_number(n):
    """Number of real-orthogonal HR matrices (plus identity) in dimension ``n``: ``rho(n)``."""
    k = 0
    while n % 2 == 0:
        n //= 2
        k += 1
    a, b = divmod(k, 4)
    return 8 * a + 2**b


def min_real_dim(d):
    """Smallest power of two carrying ``d - 1`` real-orthogonal HR matrices."""
    n = 1
    while radon_hurwitz_number(n) < d:
        n *= 2
    return n


def min_complex_dim(d):
    """Smallest ``2^k`` with ``2k + 1 >= d - 1`` (anticommuting Clifford generators)."""
    k = 0
    while 2 * k + 1 < d - 1:
        k += 1
    return 2**k


def purity(m):
    return float(np.real(np.trace(m @ m)))


def concurrence_loops(psi, dim_a, dim_b):
    psi = np.asarray(psi, dtype=complex)
    rho = np.outer(psi, psi.conj())
    return float(np.sqrt(max(0.0, 2 * (1 - purity(partial_trace_loops(rho, dim_a, dim_b, "A"))))))


def trace_norm_eigvals(m):
    """Trace norm of a normal matrix from its (general) eigenvalues."""
    return float(np.sum(np.abs(np.linalg.eigvals(m))))


def frame_potential(kets, weights=None):
    kets = np.asarray(kets, dtype=complex)
    n = len(kets)
    w = np.ones(n) / n if weights is None else np.asarray(weights) / np.sum(weights)
    g = np.abs(kets.conj() @ kets.T) ** 2
    return float(w @ (g**2) @ w)


def design_frame_potential(d):
    return 2.0 / (d * (d + 1))


def anticommutator_defect(mats):
    n = mats[0].shape[0]
    worst = 0.0
    for j, u in enumerate(mats):
        for k, v in enumerate(mats):
            want = -2 * np.eye(n) if j == k else np.zeros((n, n))
            worst = max(worst, np.max(np.abs(u @ v + v @ u - want)))
    return worst


def haar_ket(rng, d, real=False):
    v = rng.standard_normal(d) if real else rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return (v / np.linalg.norm(v)).astype(complex)
