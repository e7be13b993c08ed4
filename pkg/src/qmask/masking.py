"""
Maskers: isometries ``M: C^d -> C^dA (x) C^dB`` whose two marginals do not
depend on the input state (within some set of states).

Builders here cover the canonical real masker ``|j> -> (U_j (x) I)|Phi>``, the
two-qubit magic basis, spectrum-targeted maskers, the qubit complex masker
and the diagonal ``|j> -> |jj>`` phase masker.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .hurwitz_radon import (
    HRDimensionError,
    HRSet,
    build_hr,
    direct_sum,
    kappa,
    kappa_real,
    kappa_tilde,
    pauli_hr,
    quartic_trace_prediction,
    verify_hr_relations,
)
from .linalg import (
    BipartiteShape,
    Side,
    as_shape,
    check_dim,
    hermitian_eig,
    hs_norm,
    ket_marginal,
    partial_trace,
    random_state,
)

TOL_ISO = 1e-9
SPECTRUM_REL_TOL = 1e-8
SPECTRUM_ZERO = 1e-10

Sampler = Callable[[int, int], np.ndarray]


class NotAMaskerError(ValueError):
    """An isometry failed a structural masker property (HR extraction, rank, ...)."""


def group_spectrum(eigenvalues, rel_tol: float = SPECTRUM_REL_TOL, zero: float = SPECTRUM_ZERO):
    """Group nonzero eigenvalues into ``[(value, multiplicity), ...]``, descending."""
    w = np.sort(np.asarray(eigenvalues, dtype=float))[::-1]
    w = w[w > zero]
    groups: list[list[float]] = []
    for x in w:
        if groups and abs(groups[-1][0] - x) <= rel_tol * max(abs(x), groups[-1][0]):
            groups[-1].append(x)
        else:
            groups.append([x])
    return [(float(np.mean(g)), len(g)) for g in groups]


@dataclass(frozen=True, eq=False)
class Masker:
    """
    An isometry together with its fixed marginals.

    ``tau_a`` and ``tau_b`` are the marginals of ``M |r><r| M^dag`` for the
    reference input ``r`` (``|0>`` unless given). ``hr`` / ``hr_b`` hold the
    generating families ``U_j`` (on A) and ``V_j`` (on B) with
    ``M|j> = (U_j (x) I) M|0> = (I (x) V_j) M|0>`` when the builder knows them.
    """

    isometry: np.ndarray
    shape: BipartiteShape
    hr: HRSet | None = None
    hr_b: HRSet | None = None
    reference: np.ndarray | None = None
    label: str = ""
    tau_a: np.ndarray = field(init=False, repr=False)
    tau_b: np.ndarray = field(init=False, repr=False)
    spectrum: list[tuple[float, int]] = field(init=False)
    purity: float = field(init=False)

    def __post_init__(self):
        shape = as_shape(self.shape)
        m = np.array(self.isometry, dtype=complex)
        check_dim(shape.total)
        if m.ndim != 2 or m.shape[0] != shape.total:
            raise ValueError(f"isometry of shape {m.shape} does not map into {shape.dim_a}x{shape.dim_b}")
        d = m.shape[1]
        if d < 2:
            raise ValueError("maskers need input dimension d >= 2")
        dev = hs_norm(m.conj().T @ m - np.eye(d))
        if dev > TOL_ISO:
            raise ValueError(f"not an isometry: ||M^dag M - I|| = {dev:.3e}")
        ref = np.eye(d, dtype=complex)[0] if self.reference is None else np.asarray(self.reference, dtype=complex)
        ref = ref / np.linalg.norm(ref)
        m.setflags(write=False)
        out = m @ ref
        tau_a = ket_marginal(out, shape, "A")
        tau_b = ket_marginal(out, shape, "B")
        spec = group_spectrum(hermitian_eig(tau_a)[0])
        object.__setattr__(self, "isometry", m)
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "reference", ref)
        object.__setattr__(self, "tau_a", tau_a)
        object.__setattr__(self, "tau_b", tau_b)
        object.__setattr__(self, "spectrum", spec)
        object.__setattr__(self, "purity", float(np.real(np.trace(tau_a @ tau_a))))

    @property
    def input_dim(self) -> int:
        return self.isometry.shape[1]

    def column(self, j: int) -> np.ndarray:
        return self.isometry[:, j]

    def amplitudes(self, j: int) -> np.ndarray:
        """``M|j>`` as a ``dA x dB`` amplitude matrix."""
        return self.isometry[:, j].reshape(self.shape)


def _from_columns(columns, shape, **kw) -> Masker:
    return Masker(np.stack([np.asarray(c, dtype=complex).reshape(-1) for c in columns], axis=1), shape, **kw)


def masker_from_hr(psi0, hr: HRSet, shape, label: str = "") -> Masker:
    """
    ``|j> -> (U_j (x) I)|Psi_0>`` with ``U_0 = I``.

    ``psi0`` must have a diagonal amplitude matrix commuting with every
    ``U_j``; then ``V_j = U_j^T`` on B.
    """
    shape = as_shape(shape)
    x0 = np.asarray(psi0, dtype=complex).reshape(shape)
    cols = [u @ x0 for u in hr.with_identity()]
    return _from_columns(cols, shape, hr=hr, hr_b=hr.transpose(), label=label)


# --------------------------------------------------------------------------
# builders


def canonical_real_masker(d: int, m: int | None = None, real: bool = False) -> Masker:
    """
    The canonical masker for real states: ``|j> -> (U_j (x) I)|Phi>`` with
    ``|Phi>`` maximally entangled in ``m x m`` and ``U_j`` traceless HR.

    ``m`` defaults to the smallest allowed value (``kappa_tilde(d)`` or
    ``kappa_real(d)``). Both marginals are ``I/m``.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    need = kappa_real(d) if real else kappa(d)
    if m is None:
        m = kappa_real(d) if real else kappa_tilde(d)
    if m % 2 or m % need:
        raise HRDimensionError(f"m must be even and divisible by {need} for d={d}, got m={m}")
    hr = build_hr(d - 1, m, real=real)
    phi = np.eye(m, dtype=complex).reshape(-1) / np.sqrt(m)
    return masker_from_hr(phi, hr, (m, m), label=f"canonical(d={d},m={m}{',real' if real else ''})")


MAGIC_BASIS = np.array(
    [
        [1, 0, 0, 1],
        [0, 1j, 1j, 0],
        [0, 1, -1, 0],
        [1j, 0, 0, -1j],
    ],
    dtype=complex,
) / np.sqrt(2)


def magic_basis_masker() -> Masker:
    """``|j> -> |Phi_j>``, the two-qubit magic basis (rows of :data:`MAGIC_BASIS`)."""
    return _from_columns(MAGIC_BASIS, (2, 2), hr=pauli_hr(), hr_b=pauli_hr().transpose(), label="magic")


def masker_from_spectrum(d: int, spectrum: Sequence[tuple[float, int]], real: bool = False) -> Masker:
    """
    A masker whose masking spectrum is exactly ``spectrum``.

    Each eigenvalue block of size ``m_o`` gets its own family of ``d-1`` HR
    matrices; their direct sum commutes with ``tau_A``. For ``d = 2`` without
    ``real`` every multiplicity has to be even (balanced ``+-i`` blocks); use
    :func:`qubit_complex_masker` for the general qubit case.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    spectrum = [(float(lam), int(mult)) for lam, mult in spectrum]
    if any(lam <= 0 or mult < 1 for lam, mult in spectrum):
        raise ValueError("spectrum needs positive eigenvalues and multiplicities")
    total = sum(lam * mult for lam, mult in spectrum)
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"sum of lambda*m must be 1, got {total}")
    need = kappa_real(d) if real else kappa(d)
    if d == 2 and not real:
        need = 2
    bad = [mult for _, mult in spectrum if mult % need]
    if bad:
        raise HRDimensionError(f"multiplicities {bad} are not divisible by {need} (d={d})")
    blocks = [build_hr(d - 1, mult, real=real) for _, mult in spectrum]
    hr = direct_sum(blocks)
    mu = np.concatenate([np.full(mult, lam) for lam, mult in spectrum])
    psi0 = np.diag(np.sqrt(mu)).astype(complex).reshape(-1)
    n = hr.dim
    return masker_from_hr(psi0, hr, (n, n), label=f"spectrum(d={d})")


def balancing_signs(mu: Sequence[float], tol: float = 1e-9) -> tuple[int, ...] | None:
    """A +-1 vector ``v`` with ``sum v_l mu_l = 0``, or None (brute force)."""
    mu = np.asarray(mu, dtype=float)
    if mu.size > 20:
        raise ValueError("sign search is exponential; pass signs explicitly")
    for tail in product((1, -1), repeat=mu.size - 1):
        v = np.array((1,) + tail)
        if abs(v @ mu) <= tol:
            return tuple(int(x) for x in v)
    return None


def qubit_complex_masker(mu: Sequence[float], signs: Sequence[int] | None = None, tol: float = 1e-9) -> Masker:
    """
    ``d = 2`` masker ``|0> -> sum_l sqrt(mu_l)|ll>``, ``|1> -> i sum_l v_l sqrt(mu_l)|ll>``.

    Needs ``sum_l v_l mu_l = 0``; when ``signs`` is None a balancing vector is
    searched for.
    """
    mu = np.asarray(mu, dtype=float)
    if np.any(mu <= 0) or abs(mu.sum() - 1.0) > tol:
        raise ValueError("mu must be positive and sum to 1")
    if signs is None:
        signs = balancing_signs(mu, tol)
        if signs is None:
            raise ValueError(f"no +-1 vector balances mu={mu.tolist()}")
    v = np.asarray(signs, dtype=float)
    if v.shape != mu.shape or not np.all(np.abs(v) == 1):
        raise ValueError("signs must be a +-1 vector matching mu")
    if abs(v @ mu) > tol:
        raise ValueError(f"sum v_l mu_l = {v @ mu} != 0")
    n = mu.size
    u = np.diag(1j * v)
    hr = HRSet(n, (u,), False)
    psi0 = np.diag(np.sqrt(mu)).astype(complex).reshape(-1)
    return masker_from_hr(psi0, hr, (n, n), label="qubit-complex")


def phase_masker(d: int, c: Sequence[float] | None = None) -> Masker:
    """
    The diagonal embedding ``|j> -> |jj>``.

    It masks every phase family ``{sum_j c_j e^{i phi_j}|j>}``; pass ``c`` to
    make the reference state (and so ``tau_A = tau_B = diag(c^2)``) match.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    cols = []
    for j in range(d):
        x = np.zeros((d, d), dtype=complex)
        x[j, j] = 1.0
        cols.append(x)
    ref = None if c is None else np.asarray(c, dtype=complex)
    return _from_columns(cols, (d, d), reference=ref, label=f"phase(d={d})")


def reframe(masker: Masker, basis) -> Masker:
    """The masker precomposed with a unitary change of input basis (``M W``)."""
    w = np.asarray(basis, dtype=complex)
    return Masker(masker.isometry @ w, masker.shape, label=f"{masker.label}*W")


def counterexample_masker() -> Masker:
    return qubit_complex_masker([0.25, 0.25, 0.5], [1, 1, -1])


class Counterexample(NamedTuple):
    masker: Masker
    psi: np.ndarray
    output: np.ndarray
    concurrence_out: float
    bound: float


def counterexample_d2() -> Counterexample:
    """
    The qubit masker with purity 3/8 and an input whose image
    ``(|00> + |11> - |22>)/sqrt(3)`` has concurrence ``2/sqrt(3)``, above the
    ``sqrt(2(1 - purity)) = sqrt(5)/2`` bound that holds for ``d >= 3``.
    """
    mk = counterexample_masker()
    r2 = np.sqrt(2.0)
    psi = np.array([np.sqrt(6 * (3 - 2 * r2)), -1j * np.sqrt(6 * (3 + 2 * r2))]) / 6
    out = mk.isometry @ psi
    rho_a = ket_marginal(out, mk.shape, "A")
    conc = float(np.sqrt(max(0.0, 2 * (1 - np.real(np.trace(rho_a @ rho_a))))))
    bound = float(np.sqrt(2 * (1 - mk.purity)))
    return Counterexample(mk, psi, out, conc, bound)


# --------------------------------------------------------------------------
# applying and verifying


def apply(masker: Masker, rho) -> np.ndarray:
    """``M rho M^dag``."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (masker.input_dim, masker.input_dim):
        raise ValueError(f"state of shape {rho.shape} does not match input dim {masker.input_dim}")
    m = masker.isometry
    return m @ rho @ m.conj().T


def marginals(masker: Masker, rho) -> tuple[np.ndarray, np.ndarray]:
    out = apply(masker, rho)
    return partial_trace(out, masker.shape, "A"), partial_trace(out, masker.shape, "B")


@dataclass
class MaskReport:
    checked_states: int
    max_dev_a: float
    max_dev_b: float
    is_masker: bool
    is_partial_masker_a: bool
    witness_state: np.ndarray | None = field(default=None, repr=False)
    tol: float = 1e-9


def verify_masker(masker: Masker, sampler: Sampler, n: int = 1000, tol: float = 1e-9, seed: int = 0) -> MaskReport:
    """
    Sample ``n`` states and measure how far each marginal of ``M(rho)``
    moves from ``tau_A`` / ``tau_B`` (Hilbert-Schmidt norm).

    ``sampler(index, seed)`` must be a pure function returning a density
    matrix, so reports are reproducible. The state with the largest
    deviation is kept as ``witness_state``.
    """
    worst_a = worst_b = 0.0
    witness, worst = None, -1.0
    for i in range(n):
        rho = sampler(i, seed)
        rho_a, rho_b = marginals(masker, rho)
        da, db = hs_norm(rho_a - masker.tau_a), hs_norm(rho_b - masker.tau_b)
        worst_a, worst_b = max(worst_a, da), max(worst_b, db)
        if max(da, db) > worst:
            worst, witness = max(da, db), rho
    hides_a = worst_a <= tol
    return MaskReport(n, worst_a, worst_b, hides_a and worst_b <= tol, hides_a, witness, tol)


def state_sampler(dim: int, kind: str = "pure-real") -> Sampler:
    """Sampler over :func:`~qmask.linalg.random_state` kinds, keyed by (seed, index)."""

    def sample(index: int, seed: int) -> np.ndarray:
        return random_state(dim, kind, seed, index)

    return sample


def non_real_sampler(dim: int, min_imag: float = 1e-2) -> Sampler:
    """Pure complex states, redrawn until some entry has ``|Im rho_jk| >= min_imag``."""

    def sample(index: int, seed: int) -> np.ndarray:
        attempt = 0
        while True:
            rho = random_state(dim, "pure-complex", seed, index, attempt)
            if np.max(np.abs(rho.imag)) >= min_imag:
                return rho
            attempt += 1

    return sample


# --------------------------------------------------------------------------
# closed-form marginals


def _side_family(masker: Masker, side: Side) -> tuple[HRSet, np.ndarray]:
    hr = masker.hr if side == "A" else masker.hr_b
    tau = masker.tau_a if side == "A" else masker.tau_b
    if hr is None:
        raise NotAMaskerError("masker carries no HR family; run extract_hr first")
    if hr.count != masker.input_dim - 1:
        raise NotAMaskerError("HR family size does not match the input dimension")
    if not np.allclose(masker.reference, np.eye(masker.input_dim)[0]):
        raise NotAMaskerError("closed-form marginals assume the reference input |0>")
    return hr, tau


def reduced_state_fast(masker: Masker, rho, side: Side = "A") -> np.ndarray:
    """
    Marginal of ``M(rho)`` without forming the composite state::

        rho_A = tau_A + sum_{j<k} (rho_kj - rho_jk) U_j U_k tau_A
    """
    hr, tau = _side_family(masker, side)
    rho = np.asarray(rho, dtype=complex)
    us = hr.with_identity()
    out = tau.copy()
    d = masker.input_dim
    for j in range(d):
        for k in range(j + 1, d):
            coef = rho[k, j] - rho[j, k]
            if coef != 0:
                out = out + coef * (us[j] @ us[k] @ tau)
    return out


def predicted_marginal_purity(masker: Masker, rho, side: Side = "A") -> float:
    """
    ``tr(rho_A^2)`` from the HR trace identities, valid for ``d >= 3``.

    For ``d = 4`` this includes the term proportional to
    ``tr(U_1 U_2 U_3 tau^2)``, which is why only the sum over both sides is
    basis independent there.
    """
    d = masker.input_dim
    if d < 3:
        raise ValueError("the purity identity needs d >= 3")
    hr, tau = _side_family(masker, side)
    rho = np.asarray(rho, dtype=complex)
    tau2 = tau @ tau
    wp = np.trace(tau2)
    s = hr.count
    tr_triple = np.trace(hr[0] @ hr[1] @ hr[2] @ tau2) if s == 3 else 0.0
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    coef = {p: rho[p[1], p[0]] - rho[p[0], p[1]] for p in pairs}
    total = wp
    for p in pairs:
        if coef[p] == 0:
            continue
        for q in pairs:
            if coef[q] != 0:
                total = total + coef[p] * coef[q] * quartic_trace_prediction(*p, *q, s, wp, tr_triple)
    return float(np.real(total))


# --------------------------------------------------------------------------
# recovering the HR structure


class HRExtraction(NamedTuple):
    """Families recovered from a masker, expressed on the supports of ``tau_A`` / ``tau_B``."""

    hr_a: HRSet
    hr_b: HRSet
    tau_a: np.ndarray
    tau_b: np.ndarray
    frame_a: np.ndarray
    frame_b: np.ndarray


def _support(tau, zero: float) -> np.ndarray:
    w, v = hermitian_eig(tau)
    keep = w > zero
    if np.all(keep):
        return np.eye(tau.shape[0], dtype=complex)
    return v[:, keep]


def local_unitary(x1: np.ndarray, x2: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """The unique ``U`` with ``X2 = U X1`` when ``X1 X1^dag = tau`` is invertible: ``X2 X1^dag tau^-1``."""
    return x2 @ x1.conj().T @ np.linalg.inv(tau)


def extract_hr(masker: Masker, tol: float = 1e-9, zero: float = SPECTRUM_ZERO) -> HRExtraction:
    """
    Recover ``U_j`` and ``V_j`` with ``M|j> = (U_j (x) I) M|0> = (I (x) V_j) M|0>``.

    Both marginals are first restricted to their supports. Raises
    :class:`NotAMaskerError` if the recovered families are not HR, do not
    commute with the marginals, or have ``tr(U_j tau_A) != 0``; any of these
    means ``M`` does not mask the real states.
    """
    x = [masker.amplitudes(j) for j in range(masker.input_dim)]
    tau_a_full = x[0] @ x[0].conj().T
    tau_b_full = x[0].T @ x[0].conj()
    pa, pb = _support(tau_a_full, zero), _support(tau_b_full, zero)
    xr = [pa.conj().T @ xj @ pb.conj() for xj in x]
    tau_a = xr[0] @ xr[0].conj().T
    tau_b = xr[0].T @ xr[0].conj()
    for xj in xr[1:]:
        if hs_norm(xj @ xj.conj().T - tau_a) > tol or hs_norm(xj.T @ xj.conj() - tau_b) > tol:
            raise NotAMaskerError("basis images do not share the marginals of M|0>")
    us = [local_unitary(xr[0], xj, tau_a) for xj in xr[1:]]
    vs = [local_unitary(xr[0].T, xj.T, tau_b) for xj in xr[1:]]
    hr_a = HRSet(tau_a.shape[0], tuple(us), False)
    hr_b = HRSet(tau_b.shape[0], tuple(vs), False)
    for fam, tau, name in ((hr_a, tau_a, "A"), (hr_b, tau_b, "B")):
        rep = verify_hr_relations(fam, tol=tol * max(1, fam.dim))
        bad = [k for k in rep.failures if k != "tracelessness"]
        if bad:
            raise NotAMaskerError(f"side {name}: recovered family violates {bad}")
        for u in fam:
            if hs_norm(u @ tau - tau @ u) > tol or abs(np.trace(u @ tau)) > tol:
                raise NotAMaskerError(f"side {name}: recovered unitary fails the commutation/trace conditions")
    return HRExtraction(hr_a, hr_b, tau_a, tau_b, pa, pb)


def side_conditions(ext: HRExtraction) -> dict[str, float]:
    """Max commutator norm and max ``|tr(U tau)|`` for both recovered families."""
    out = {}
    for fam, tau, name in ((ext.hr_a, ext.tau_a, "a"), (ext.hr_b, ext.tau_b, "b")):
        out[f"commutator_{name}"] = max((hs_norm(u @ tau - tau @ u) for u in fam), default=0.0)
        out[f"trace_{name}"] = max((abs(np.trace(u @ tau)) for u in fam), default=0.0)
    return out
