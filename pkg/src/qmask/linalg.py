"""
Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` arrays. Bipartite index convention is fixed
everywhere: the composite basis index is ``i = a * dim_b + b`` (A-major), so
``np.kron(a, b)`` puts ``a`` on subsystem A.
"""

from __future__ import annotations

from typing import Literal, NamedTuple, Sequence

import numpy as np

TOL_NORM = 1e-9
TOL_HERM = 1e-9
TOL_PSD = 1e-9
TOL_EIG = 1e-10
TOL_MAJOR = 1e-9

# Largest composite dimension any constructor will build.
MAX_DIM = 4096

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

Side = Literal["A", "B"]
StateKind = Literal["pure-complex", "pure-real", "mixed-complex", "mixed-real"]


class DimensionLimitError(ValueError):
    """Raised when an operation would exceed :data:`MAX_DIM`."""


class BipartiteShape(NamedTuple):
    dim_a: int
    dim_b: int

    @property
    def total(self) -> int:
        return self.dim_a * self.dim_b


def as_shape(shape) -> BipartiteShape:
    dim_a, dim_b = (int(x) for x in shape)
    if dim_a < 1 or dim_b < 1:
        raise ValueError(f"subsystem dimensions must be >= 1, got {shape}")
    return BipartiteShape(dim_a, dim_b)


def check_dim(n: int) -> None:
    if n > MAX_DIM:
        raise DimensionLimitError(f"dimension {n} exceeds the limit {MAX_DIM}")


# --------------------------------------------------------------------------
# validation helpers


def is_hermitian(h: np.ndarray, tol: float = TOL_HERM) -> bool:
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        return False
    return bool(np.max(np.abs(h - h.conj().T), initial=0.0) <= tol)


def validate_ket(psi, tol: float = TOL_NORM) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if not np.all(np.isfinite(psi)):
        raise ValueError("ket has non-finite amplitudes")
    if abs(np.vdot(psi, psi).real - 1.0) > tol:
        raise ValueError("ket is not normalized")
    return psi


def validate_density_matrix(
    rho,
    tol_herm: float = TOL_HERM,
    tol_psd: float = TOL_PSD,
    tol_norm: float = TOL_NORM,
) -> np.ndarray:
    """Return ``rho`` as a complex array, raising ``ValueError`` if it is not a state."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise ValueError("density matrix has non-finite entries")
    if not is_hermitian(rho, tol_herm):
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol_norm:
        raise ValueError("density matrix does not have unit trace")
    if np.linalg.eigvalsh(rho)[0] < -tol_psd:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def is_real_matrix(m: np.ndarray, tol: float = 0.0) -> bool:
    return bool(np.max(np.abs(np.imag(m)), initial=0.0) <= tol)


def ket_to_dm(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(psi, psi.conj())


# --------------------------------------------------------------------------
# products and partial traces


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product with ``a`` as the first (A) factor."""
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    b = np.atleast_2d(np.asarray(b, dtype=complex))
    check_dim(a.shape[0] * b.shape[0])
    check_dim(a.shape[1] * b.shape[1])
    return np.kron(a, b)


def kron_all(*factors) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for f in factors:
        out = tensor_product(out, f)
    return out


def partial_trace(rho, shape, keep: Side = "A") -> np.ndarray:
    """
    Reduced density matrix of a bipartite operator.

    Parameters
    ----------
    rho : (dA*dB, dA*dB) array
    shape : (dA, dB)
    keep : "A" or "B"
        The subsystem that survives.
    """
    dim_a, dim_b = as_shape(shape)
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim_a * dim_b, dim_a * dim_b):
        raise ValueError(f"operator of shape {rho.shape} does not match {dim_a}x{dim_b}")
    t = rho.reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == "A":
        return np.einsum("ibjb->ij", t)
    if keep == "B":
        return np.einsum("aiaj->ij", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def ket_marginal(psi, shape, keep: Side = "A") -> np.ndarray:
    """Reduced state of a bipartite pure state without forming ``|psi><psi|``."""
    dim_a, dim_b = as_shape(shape)
    x = np.asarray(psi, dtype=complex).reshape(dim_a, dim_b)
    if keep == "A":
        return x @ x.conj().T
    if keep == "B":
        return x.T @ x.conj()
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


# --------------------------------------------------------------------------
# eigensolvers


def _round_robin_pairs(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    # Each round pairs every index once; n-1 rounds cover all pairs (circle method).
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        p, q = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                p.append(min(a, b))
                q.append(max(a, b))
        rounds.append((np.array(p, dtype=int), np.array(q, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigh(h, tol: float = 1e-12, max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """
    Cyclic complex Jacobi eigensolver for a Hermitian matrix.

    Rotations are applied in round-robin order, one batch of disjoint pivots
    at a time. Sweeps stop once the off-diagonal Frobenius norm falls below
    ``tol * ||h||_F``.

    Returns eigenvalues in ascending order and the matching unitary
    eigenvector matrix (columns).
    """
    a = np.array(h, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("jacobi_eigh needs a square matrix")
    if not is_hermitian(a, TOL_HERM * max(1.0, np.linalg.norm(a))):
        raise ValueError("jacobi_eigh needs a Hermitian matrix")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    if n < 2 or scale == 0.0:
        return _sorted_eig(np.real(np.diag(a)), v)
    rounds = _round_robin_pairs(n)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol * scale:
            break
        for p, q in rounds:
            apq = a[p, q]
            mag = np.abs(apq)
            active = mag > 1e-300
            if not np.any(active):
                continue
            p, q, apq, mag = p[active], q[active], apq[active], mag[active]
            phase = apq / mag
            app, aqq = a[p, p].real, a[q, q].real
            theta = 0.5 * np.arctan2(2.0 * mag, aqq - app)
            c, s = np.cos(theta), np.sin(theta)
            # Column rotation J: [p, q] block = [[c, s*phase], [-s*conj(phase), c]]
            jpp, jpq = c, s * phase
            jqp, jqq = -s * phase.conj(), c
            ap, aq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = ap * jpp + aq * jqp
            a[:, q] = ap * jpq + aq * jqq
            ap, aq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = np.conj(jpp)[:, None] * ap + np.conj(jqp)[:, None] * aq
            a[q, :] = np.conj(jpq)[:, None] * ap + np.conj(jqq)[:, None] * aq
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = vp * jpp + vq * jqp
            v[:, q] = vp * jpq + vq * jqq
    else:
        raise np.linalg.LinAlgError("Jacobi sweeps did not converge")
    return _sorted_eig(np.real(np.diag(a)), v)


def _sorted_eig(w: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eig(h, method: Literal["lapack", "jacobi"] = "lapack", tol: float = TOL_HERM):
    """
    Eigendecomposition of a Hermitian matrix.

    Eigenvalues are returned ascending with eigenvectors as columns.
    ``method="jacobi"`` uses :func:`jacobi_eigh` instead of LAPACK.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    if not is_hermitian(h, tol * max(1.0, np.linalg.norm(h))):
        raise ValueError("matrix is not Hermitian")
    if method == "jacobi":
        return jacobi_eigh(h)
    if method != "lapack":
        raise ValueError(f"unknown method {method!r}")
    w, v = np.linalg.eigh(0.5 * (h + h.conj().T))
    return w, v


def psd_power(tau, alpha: float) -> np.ndarray:
    """``tau ** alpha`` for a positive semidefinite ``tau`` (negative round-off clipped)."""
    w, v = hermitian_eig(tau)
    w = np.clip(w, 0.0, None)
    return (v * w**alpha) @ v.conj().T


# --------------------------------------------------------------------------
# norms and spectra


def schatten_1_norm(m) -> float:
    """Trace norm; Hermitian input goes through the eigenvalues, which keeps tiny ones accurate."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("Schatten 1-norm needs a square matrix")
    if is_hermitian(m, tol=1e-13):
        return float(np.sum(np.abs(hermitian_eig((m + m.conj().T) / 2)[0])))
    return float(np.sum(singular_values(m)))


def hs_norm(m) -> float:
    """Hilbert-Schmidt (Frobenius) norm."""
    return float(np.linalg.norm(np.asarray(m, dtype=complex)))


def singular_values(m) -> np.ndarray:
    """Singular values, descending."""
    return np.linalg.svd(np.asarray(m, dtype=complex), compute_uv=False)


def schmidt_coefficients(psi, shape) -> np.ndarray:
    """Schmidt coefficients of a bipartite ket, descending (length ``min(dA, dB)``)."""
    dim_a, dim_b = as_shape(shape)
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.size != dim_a * dim_b:
        raise ValueError(f"ket of length {psi.size} does not match {dim_a}x{dim_b}")
    return singular_values(psi.reshape(dim_a, dim_b))


def majorizes(p: Sequence[float], q: Sequence[float], tol: float = TOL_MAJOR, tol_norm: float = TOL_NORM) -> bool:
    """True iff ``p`` majorizes ``q`` (every descending partial sum of p >= that of q)."""
    p = np.asarray(p, dtype=float).ravel()
    q = np.asarray(q, dtype=float).ravel()
    if np.any(p < -tol) or np.any(q < -tol):
        raise ValueError("majorization needs nonnegative vectors")
    if abs(p.sum() - q.sum()) > tol_norm:
        raise ValueError(f"sums differ: {p.sum()} vs {q.sum()}")
    n = max(p.size, q.size)
    p = np.sort(np.pad(p, (0, n - p.size)))[::-1]
    q = np.sort(np.pad(q, (0, n - q.size)))[::-1]
    return bool(np.all(np.cumsum(p) >= np.cumsum(q) - tol))


# --------------------------------------------------------------------------
# random states


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Counter-based (Philox) generator keyed by ``seed`` and an optional stream index."""
    mask = (1 << 64) - 1
    entropy = [int(seed) & mask] + [int(s) & mask for s in stream]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def random_ket(dim: int, rng: np.random.Generator, real: bool = False) -> np.ndarray:
    if real:
        psi = rng.standard_normal(dim).astype(complex)
    else:
        psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return psi / np.linalg.norm(psi)


def random_state(dim: int, kind: StateKind = "pure-complex", seed: int = 0, *stream: int) -> np.ndarray:
    """
    Seeded random density matrix.

    Pure states are Haar distributed (on the real sphere for ``pure-real``).
    Mixed states are ``G G^dag / tr`` with a square Gaussian ``G``; the
    sampler makes no claim about which measure that induces.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    check_dim(dim)
    rng = make_rng(seed, *stream)
    if kind in ("pure-complex", "pure-real"):
        return ket_to_dm(random_ket(dim, rng, real=kind == "pure-real"))
    if kind == "mixed-complex":
        g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    elif kind == "mixed-real":
        g = rng.standard_normal((dim, dim)).astype(complex)
    else:
        raise ValueError(f"unknown state kind {kind!r}")
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (g + g.conj().T)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_isometry(dim_in: int, dim_out: int, rng: np.random.Generator) -> np.ndarray:
    return random_unitary(dim_out, rng)[:, :dim_in]


def random_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))
