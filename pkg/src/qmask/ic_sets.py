"""
Finite state sets: informational completeness, Bloch geometry, 2-designs,
standard fixtures, and the phase-state obstructions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .linalg import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    IDENTITY_2,
    TOL_NORM,
    hermitian_eig,
    hs_norm,
    ket_to_dm,
    make_rng,
    random_state,
    validate_density_matrix,
)
from .masking import marginals, phase_masker

GRAM_REL_TOL = 1e-8
HIDABLE_PAIRS = (((0, 1), (2, 3), 1.0), ((0, 2), (1, 3), -1.0), ((0, 3), (1, 2), 1.0))


@dataclass(frozen=True, eq=False)
class StateSet:
    """A finite list of density matrices of one dimension, optionally weighted."""

    dim: int
    states: tuple
    weights: tuple | None = None

    def __post_init__(self):
        states = tuple(validate_density_matrix(s) for s in self.states)
        if not states:
            raise ValueError("state set is empty")
        if any(s.shape != (self.dim, self.dim) for s in states):
            raise ValueError(f"all states must be {self.dim}x{self.dim}")
        object.__setattr__(self, "states", states)
        if self.weights is not None:
            w = tuple(float(x) for x in self.weights)
            if len(w) != len(states) or any(x <= 0 for x in w):
                raise ValueError("weights must be strictly positive, one per state")
            object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return len(self.states)

    @classmethod
    def from_kets(cls, kets, weights=None) -> "StateSet":
        dms = [ket_to_dm(k) for k in kets]
        return cls(dms[0].shape[0], tuple(dms), None if weights is None else tuple(weights))


# --------------------------------------------------------------------------
# real coordinates on Hermitian matrices


def hermitian_basis(dim: int) -> np.ndarray:
    """
    Orthonormal (Hilbert-Schmidt) basis of Hermitian ``dim x dim`` matrices.

    Element 0 is ``I/sqrt(dim)``; the rest are traceless (generalized
    Gell-Mann matrices, normalized).
    """
    basis = [np.eye(dim, dtype=complex) / np.sqrt(dim)]
    for j in range(dim):
        for k in range(j + 1, dim):
            s = np.zeros((dim, dim), dtype=complex)
            s[j, k] = s[k, j] = 1 / np.sqrt(2)
            a = np.zeros((dim, dim), dtype=complex)
            a[j, k], a[k, j] = -1j / np.sqrt(2), 1j / np.sqrt(2)
            basis += [s, a]
    for l in range(1, dim):
        diag = np.zeros(dim)
        diag[:l] = 1
        diag[l] = -l
        basis.append(np.diag(diag / np.sqrt(l * (l + 1))).astype(complex))
    return np.array(basis)


def hermitian_coordinates(states, dim: int) -> np.ndarray:
    """Rows are the real coordinates of each state in :func:`hermitian_basis`."""
    basis = hermitian_basis(dim)
    return np.real(np.einsum("kij,nji->nk", basis, np.asarray(states)))


def bloch_vector(rho) -> np.ndarray:
    """Generalized Bloch vector: coordinates on the traceless part of the basis (length ``d^2 - 1``)."""
    rho = np.asarray(rho, dtype=complex)
    return hermitian_coordinates([rho], rho.shape[0])[0, 1:]


def _rank(gram: np.ndarray, tol: float) -> int:
    w = np.linalg.eigvalsh(gram)
    top = max(w.max(initial=0.0), 0.0)
    if top == 0.0:
        return 0
    return int(np.sum(w > tol * top))


def is_informationally_complete(state_set: StateSet, tol: float = GRAM_REL_TOL) -> tuple[bool, int]:
    """Span dimension of the set (rank of the ``tr(rho_i rho_j)`` Gram matrix) and whether it is ``d^2``."""
    st = np.asarray(state_set.states)
    gram = np.real(np.einsum("nij,mji->nm", st, st))
    span = _rank(gram, tol)
    return span == state_set.dim**2, span


def bloch_affine_dimension(state_set: StateSet, tol: float = GRAM_REL_TOL) -> int:
    """Affine dimension of the Bloch vectors (0 for a single state)."""
    r = np.array([bloch_vector(s) for s in state_set.states])
    centered = r - r.mean(axis=0)
    if len(r) < 2 or not np.any(centered):
        return 0
    sv = np.linalg.svd(centered, compute_uv=False)
    return int(np.sum(sv > np.sqrt(tol) * max(sv[0], 1.0)))


def qubit_disk_test(state_set: StateSet, tol: float = GRAM_REL_TOL) -> bool:
    """True iff the qubit Bloch vectors lie in a common plane (so in a disk of the ball)."""
    if state_set.dim != 2:
        raise ValueError("disk test is only defined for qubits")
    return bloch_affine_dimension(state_set, tol) <= 2


def separating_observable(state_set: StateSet, tol: float = GRAM_REL_TOL) -> np.ndarray | None:
    """
    A Hermitian ``Q`` with ``||Q||_hs = 1`` and ``tr(Q rho) = 0`` for every
    state in the set, or None when the set is informationally complete.
    """
    dim = state_set.dim
    coords = hermitian_coordinates(state_set.states, dim)
    _, sv, vt = np.linalg.svd(coords, full_matrices=True)
    rank = int(np.sum(sv > tol * max(sv[0], 1.0)))
    if rank == dim**2:
        return None
    q = vt[rank]
    return np.einsum("k,kij->ij", q / np.linalg.norm(q), hermitian_basis(dim))


# --------------------------------------------------------------------------
# designs


def symmetric_projector(dim: int) -> np.ndarray:
    swap = np.zeros((dim * dim, dim * dim))
    for i in range(dim):
        for j in range(dim):
            swap[i * dim + j, j * dim + i] = 1.0
    return 0.5 * (np.eye(dim * dim) + swap)


def is_weighted_2_design(state_set: StateSet, tol: float = 1e-12) -> tuple[bool, float]:
    """
    Compare ``sum_j w_j rho_j (x) rho_j`` (weights normalized) with the
    normalized symmetric projector; returns (passes, hs deviation).
    """
    for s in state_set.states:
        if abs(np.real(np.trace(s @ s)) - 1.0) > TOL_NORM:
            raise ValueError("2-design test needs pure states")
    n = len(state_set)
    w = np.ones(n) / n if state_set.weights is None else np.asarray(state_set.weights) / sum(state_set.weights)
    d = state_set.dim
    frame = sum(wj * np.kron(s, s) for wj, s in zip(w, state_set.states))
    target = symmetric_projector(d) / (d * (d + 1) / 2)
    dev = hs_norm(frame - target)
    return dev <= tol, dev


# --------------------------------------------------------------------------
# fixtures


def bloch_state(r) -> np.ndarray:
    x, y, z = r
    return 0.5 * (IDENTITY_2 + x * SIGMA_X + y * SIGMA_Y + z * SIGMA_Z)


def sic_qubit() -> StateSet:
    """Tetrahedral qubit SIC: Bloch vectors ``(1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1)`` over ``sqrt(3)``."""
    verts = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / np.sqrt(3)
    return StateSet(2, tuple(bloch_state(v) for v in verts))


def mub_bases(dim: int) -> list[np.ndarray]:
    """Complete MUB sets as a list of unitary matrices (columns are the basis kets)."""
    if dim == 2:
        bases = [hermitian_eig(p)[1] for p in (SIGMA_Z, SIGMA_X, SIGMA_Y)]
        return [b[:, ::-1] for b in bases]
    if dim == 3:
        omega = np.exp(2j * np.pi / 3)
        j = np.arange(3)
        bases = [np.eye(3, dtype=complex)]
        for k in range(3):
            bases.append(np.array([omega ** (k * j**2 + a * j) for a in range(3)]).T / np.sqrt(3))
        return bases
    raise ValueError("complete MUB fixtures exist here for d = 2 and 3 only")


def mub_complete(dim: int) -> StateSet:
    """All ``d(d+1)`` states of a complete MUB set."""
    return StateSet.from_kets([b[:, a] for b in mub_bases(dim) for a in range(dim)])


def computational_basis(dim: int) -> StateSet:
    return StateSet.from_kets(list(np.eye(dim, dtype=complex)))


def real_symmetric_basis(dim: int) -> StateSet:
    """Real density matrices spanning the real symmetric matrices (``d(d+1)/2`` of them)."""
    kets = list(np.eye(dim, dtype=complex))
    for j in range(dim):
        for k in range(j + 1, dim):
            v = np.zeros(dim, dtype=complex)
            v[j] = v[k] = 1 / np.sqrt(2)
            kets.append(v)
    return StateSet.from_kets(kets)


# --------------------------------------------------------------------------
# a set that is hidable from one side but not maskable


def hidable_constraint_violation(rho) -> float:
    """Largest violation of the three imaginary-part pairings that define the one-sided hidable set."""
    im = np.imag(np.asarray(rho))
    return max(abs(im[p] - sign * im[q]) for p, q, sign in HIDABLE_PAIRS)


def hidable_project(rho) -> np.ndarray:
    """Force the pairings by averaging, then mix with ``I/4`` just enough to restore positivity."""
    rho = np.array(rho, dtype=complex)
    im = rho.imag.copy()
    for p, q, sign in HIDABLE_PAIRS:
        x = 0.5 * (im[p] + sign * im[q])
        im[p], im[q] = x, sign * x
        im[p[::-1]], im[q[::-1]] = -x, -sign * x
    out = rho.real + 1j * im
    e_min = hermitian_eig(out)[0][0]
    if e_min < 0:
        lam = -e_min / (0.25 - e_min)
        out = (1 - lam) * out + lam * np.eye(4) / 4
    return out / np.real(np.trace(out))


def hidable_set_sampler(seed: int, *stream: int, kind: str = "mixed-complex") -> np.ndarray:
    """Random member of the one-sided hidable set in ``d = 4``."""
    return hidable_project(random_state(4, kind, seed, *stream))


# name used by the command-line contract
sec6_set_sampler = hidable_set_sampler


def hidable_witness() -> np.ndarray:
    """``I/4`` with ``Im rho_01 = Im rho_23 = 1/8``: the B marginal of its magic-basis image moves."""
    rho = np.eye(4, dtype=complex) / 4
    for j, k in ((0, 1), (2, 3)):
        rho[j, k], rho[k, j] = 1j / 8, -1j / 8
    return rho


# --------------------------------------------------------------------------
# phase-state families


def _check_amplitudes(c) -> np.ndarray:
    c = np.asarray(c, dtype=float)
    if np.any(c <= 0):
        raise ValueError("amplitude profile must be strictly positive")
    if abs(np.sum(c**2) - 1.0) > TOL_NORM:
        raise ValueError("amplitude profile must be normalized")
    return c


def phase_ket(c, phases) -> np.ndarray:
    c = _check_amplitudes(c)
    return c * np.exp(1j * np.asarray(phases, dtype=float))


def phase_set_sampler(c, seed: int, *stream: int) -> np.ndarray:
    """Ket ``sum_j c_j e^{i phi_j}|j>`` with uniform random phases."""
    c = _check_amplitudes(c)
    rng = make_rng(seed, *stream)
    return phase_ket(c, rng.uniform(0.0, 2 * np.pi, c.size))


def triple_product(r1, r2, r3) -> complex:
    """``tr(rho_1 rho_2 rho_3)``."""
    r1, r2, r3 = (np.asarray(r, dtype=complex) for r in (r1, r2, r3))
    if not r1.shape == r2.shape == r3.shape:
        raise ValueError("triple product needs equal dimensions")
    return complex(np.trace(r1 @ r2 @ r3))


def cube_root_phase_states(c) -> list[np.ndarray]:
    """The three states whose first amplitude carries phase ``e^{2 pi i k/3}``, ``k = 0, 1, 2``."""
    c = _check_amplitudes(c)
    out = []
    for k in range(3):
        phases = np.zeros(c.size)
        phases[0] = 2 * np.pi * k / 3
        out.append(ket_to_dm(phase_ket(c, phases)))
    return out


def triple_product_closed_form(c0_sq: float) -> complex:
    """``(c0^2 omega + 1 - c0^2)^3`` with ``omega = e^{2 pi i/3}``."""
    return complex((c0_sq * np.exp(2j * np.pi / 3) + 1 - c0_sq) ** 3)


class ObstructionReport(NamedTuple):
    dim_prime: int
    grid_step_deg: float
    min_max_violation: float
    argmin_deg: tuple[float, float]


def _abs_cos_deg(a: np.ndarray) -> np.ndarray:
    # reduce to [0, 90] first so that multiples of 60 degrees hit 0.5 cleanly
    r = np.mod(a, 180.0)
    r = np.where(r > 90.0, 180.0 - r, r)
    return np.cos(np.deg2rad(r))


def real_to_phase_obstruction(dim_prime: int, step_deg: float = 1.0) -> ObstructionReport:
    """
    Embedding real states of dimension >= 3 into a phase family needs
    ``cos(beta) = cos(gamma) = cos(beta - gamma) = 0`` for the phases of two
    images relative to a third. Scan a grid and report the smallest possible
    largest ``|cos|`` (0 would mean the constraints are satisfiable).
    """
    if dim_prime < 3:
        raise ValueError("the obstruction concerns dimension >= 3; dimension 2 embeds")
    grid = np.arange(0.0, 360.0, step_deg)
    beta, gamma = np.meshgrid(grid, grid, indexing="ij")
    worst = np.maximum(np.maximum(_abs_cos_deg(beta), _abs_cos_deg(gamma)), _abs_cos_deg(beta - gamma))
    idx = np.unravel_index(np.argmin(worst), worst.shape)
    return ObstructionReport(dim_prime, step_deg, float(worst[idx]), (float(grid[idx[0]]), float(grid[idx[1]])))


# --------------------------------------------------------------------------
# extending a phase family without disturbing the diagonal masker


class ExtensionFinding(NamedTuple):
    state: np.ndarray
    correlation_rank: int
    extreme_correlation: bool
    marginal_deviation: float


def qubit_sic_kets() -> np.ndarray:
    """Rows are kets of the tetrahedral qubit SIC."""
    return np.array([hermitian_eig(s)[1][:, -1] for s in sic_qubit().states])


def correlation_extreme(vectors: np.ndarray, tol: float = 1e-9) -> bool:
    """
    Whether the Gram matrix of the unit vectors (rows) is an extreme point of
    the unit-diagonal PSD matrices: true iff the projectors onto the vectors
    span all Hermitian matrices on their span.
    """
    v = np.asarray(vectors, dtype=complex)
    r = np.linalg.matrix_rank(v, tol)
    _, _, vh = np.linalg.svd(v)
    coords = v @ vh[:r].conj().T
    projs = np.array([np.outer(x, x.conj()) for x in coords])
    span = np.linalg.matrix_rank(hermitian_coordinates(projs, r), tol)
    return span == r * r


def phase_extension_experiment(c) -> ExtensionFinding:
    """
    Build ``rho = D C D`` with ``D = diag(c)`` and ``C`` the Gram matrix of
    unit vectors in ``C^2`` (the qubit SIC kets, then repeats). ``C`` has rank
    2, so ``rho`` has the phase family's diagonal; when ``C`` is extreme among
    unit-diagonal PSD matrices the state is outside the convex hull of the
    phase family. Reports the state, the rank, the extremality flag and the
    change in the diagonal masker's marginals.
    """
    c = _check_amplitudes(c)
    d = c.size
    if d < 2:
        raise ValueError("need d >= 2")
    sic = qubit_sic_kets()
    vecs = np.array([sic[j % 4] for j in range(d)])
    corr = vecs.conj() @ vecs.T
    rho = np.diag(c) @ corr @ np.diag(c)
    mk = phase_masker(d, c)
    dev = max(hs_norm(a - b) for a, b in zip(marginals(mk, rho), (mk.tau_a, mk.tau_b)))
    rank = int(np.linalg.matrix_rank(corr, 1e-9))
    return ExtensionFinding(rho, rank, correlation_extreme(vecs), dev)


def sample_phase_states(c, n: int, seed: int) -> StateSet:
    return StateSet.from_kets([phase_set_sampler(c, seed, i) for i in range(n)])


def sample_states(dim: int, n: int, seed: int, kind: str = "pure-complex") -> StateSet:
    return StateSet(dim, tuple(random_state(dim, kind, seed, i) for i in range(n)))


def as_state_set(states: Sequence, weights=None) -> StateSet:
    st = [np.asarray(s, dtype=complex) for s in states]
    return StateSet(st[0].shape[0], tuple(st), weights)
