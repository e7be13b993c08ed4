"""
Hurwitz-Radon (HR) matrix families.

A family ``{U_1, ..., U_s}`` of ``m x m`` unitaries is HR when
``U_j U_k + U_k U_j = -2 delta_jk I``. Families are built from the Pauli
triple by doubling and composition, or from the real-orthogonal bases in
dimensions 2, 4 and 8.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    check_dim,
    hs_norm,
    is_hermitian,
    kron_all,
    make_rng,
    psd_power,
)

TOL_HR = 1e-10

I2 = IDENTITY_2
ISX, ISY, ISZ = 1j * SIGMA_X, 1j * SIGMA_Y, 1j * SIGMA_Z


class HRDimensionError(ValueError):
    """The requested dimension cannot carry the requested number of HR matrices."""


@dataclass(frozen=True)
class HRSet:
    """
    An immutable family of HR matrices.

    ``real_orthogonal`` is set structurally by the constructors, never by
    inspecting entries.
    """

    dim: int
    matrices: tuple[np.ndarray, ...] = ()
    real_orthogonal: bool = False

    def __post_init__(self):
        mats = tuple(np.array(u, dtype=complex) for u in self.matrices)
        for u in mats:
            if u.shape != (self.dim, self.dim):
                raise ValueError(f"matrix of shape {u.shape} in an HR set of dim {self.dim}")
            u.setflags(write=False)
        object.__setattr__(self, "matrices", mats)

    @property
    def count(self) -> int:
        return len(self.matrices)

    def __len__(self) -> int:
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)

    def __getitem__(self, j):
        return self.matrices[j]

    def with_identity(self) -> list[np.ndarray]:
        """``[I, U_1, ..., U_s]``: the family with ``U_0 = I`` prepended."""
        return [np.eye(self.dim, dtype=complex), *self.matrices]

    def subset(self, count: int) -> "HRSet":
        if count > self.count:
            raise ValueError(f"cannot take {count} of {self.count} matrices")
        return HRSet(self.dim, self.matrices[:count], self.real_orthogonal)

    def pad(self, factor: int) -> "HRSet":
        """Tensor every matrix with ``I_factor`` (on the right)."""
        if factor == 1:
            return self
        check_dim(self.dim * factor)
        eye = np.eye(factor)
        return HRSet(self.dim * factor, tuple(np.kron(u, eye) for u in self.matrices), self.real_orthogonal)

    def transpose(self) -> "HRSet":
        return HRSet(self.dim, tuple(u.T for u in self.matrices), self.real_orthogonal)


def empty_hr(dim: int = 1) -> HRSet:
    return HRSet(dim, (), True)


def direct_sum(blocks: list[HRSet]) -> HRSet:
    """Block-diagonal family ``U_j = (+)_o V_{o,j}``; all blocks need the same count."""
    counts = {b.count for b in blocks}
    if len(counts) != 1:
        raise ValueError("direct sum needs families of equal size")
    (s,) = counts
    dim = sum(b.dim for b in blocks)
    check_dim(dim)
    mats = []
    for j in range(s):
        u = np.zeros((dim, dim), dtype=complex)
        off = 0
        for b in blocks:
            u[off : off + b.dim, off : off + b.dim] = b.matrices[j]
            off += b.dim
        mats.append(u)
    return HRSet(dim, tuple(mats), all(b.real_orthogonal for b in blocks))


# --------------------------------------------------------------------------
# dimension functions


def kappa(d: int) -> int:
    """Smallest dimension carrying ``d - 1`` HR unitaries: ``2**floor((d-1)/2)``."""
    if d < 2:
        raise ValueError("kappa is defined for d >= 2")
    return 2 ** ((d - 1) // 2)


def kappa_real(d: int) -> int:
    """Smallest dimension carrying ``d - 1`` real-orthogonal HR matrices."""
    k = kappa(d)
    return k if d % 8 in (0, 1, 7) else 2 * k


def kappa_tilde(d: int) -> int:
    return max(kappa(d), 2)


# --------------------------------------------------------------------------
# constructions


def pauli_hr() -> HRSet:
    return HRSet(2, (ISX, ISY, ISZ), False)


def extend_by_doubling(base: HRSet) -> HRSet:
    """``s`` HR matrices in dim ``m`` -> ``s + 2`` in dim ``2m``."""
    check_dim(2 * base.dim)
    eye = np.eye(base.dim)
    mats = [np.kron(u, SIGMA_Z) for u in base.matrices]
    mats += [np.kron(eye, ISX), np.kron(eye, ISY)]
    return HRSet(2 * base.dim, tuple(mats), False)


def compose(u: HRSet, v: HRSet) -> HRSet:
    """
    Combine ``r`` HR matrices in dim ``m1`` with ``s`` in dim ``m2`` into
    ``r + s + 1`` HR matrices in dim ``2 m1 m2``.

    ``u`` may be empty in dim 1. The result is real orthogonal when both
    inputs are, since the Pauli padding (sigma_z, sigma_x, i sigma_y) is real.
    """
    check_dim(2 * u.dim * v.dim)
    e1, e2 = np.eye(u.dim), np.eye(v.dim)
    mats = [kron_all(uj, e2, SIGMA_Z) for uj in u.matrices]
    mats += [kron_all(e1, vj, SIGMA_X) for vj in v.matrices]
    mats.append(kron_all(e1, e2, ISY))
    return HRSet(2 * u.dim * v.dim, tuple(mats), u.real_orthogonal and v.real_orthogonal)


def real_orthogonal_base(dim: int) -> HRSet:
    """The maximal real-orthogonal families in dimensions 2, 4 and 8 (1, 3 and 7 matrices)."""
    if dim == 2:
        mats = [ISY]
    elif dim == 4:
        mats = [np.kron(ISY, SIGMA_Z), np.kron(ISY, SIGMA_X), np.kron(I2, ISY)]
    elif dim == 8:
        mats = [
            kron_all(SIGMA_X, ISY, I2),
            kron_all(SIGMA_X, SIGMA_Z, ISY),
            kron_all(SIGMA_X, SIGMA_X, ISY),
            kron_all(ISY, I2, I2),
            kron_all(SIGMA_Z, I2, ISY),
            kron_all(SIGMA_Z, ISY, SIGMA_Z),
            kron_all(SIGMA_Z, ISY, SIGMA_X),
        ]
    else:
        raise ValueError(f"no real-orthogonal base family in dimension {dim}; use 2, 4 or 8")
    # entries are exactly real by construction; drop the zero imaginary parts
    return HRSet(dim, tuple(np.real(m).astype(complex) for m in mats), True)


def _complex_minimal(count: int) -> HRSet:
    """``count`` complex HR matrices in dimension ``kappa(count + 1)``."""
    if count == 0:
        return empty_hr(1)
    if count == 1:
        return HRSet(1, (np.array([[1j]]),), False)
    fam = pauli_hr()
    while fam.count < count:
        fam = extend_by_doubling(fam)
    return fam.subset(count)


def _real_minimal(count: int) -> HRSet:
    """``count`` real-orthogonal HR matrices in dimension ``kappa_real(count + 1)``."""
    if count == 0:
        return empty_hr(1)
    m = kappa_real(count + 1)
    a = m.bit_length() - 1
    k, c = divmod(a, 4)
    fam = empty_hr(1) if c == 0 else real_orthogonal_base(2**c)
    base8 = real_orthogonal_base(8)
    for _ in range(k):
        fam = compose(fam, base8)
    assert fam.dim == m and fam.count >= count
    return fam.subset(count)


def build_hr(count: int, dim: int, real: bool = False) -> HRSet:
    """
    Exactly ``count`` traceless HR matrices in dimension ``dim``.

    The minimal family is padded with an identity factor up to ``dim``.
    A single complex matrix is returned in the balanced form
    ``diag(i I, -i I)``, which needs ``dim`` even to be traceless; for odd
    ``dim`` the only option is ``i I``.

    Raises
    ------
    HRDimensionError
        If ``dim`` is not divisible by ``kappa(count+1)`` (``kappa_real`` when
        ``real``).
    """
    if count < 0 or dim < 1:
        raise ValueError("count must be >= 0 and dim >= 1")
    check_dim(dim)
    if count == 0:
        return empty_hr(dim)
    need = kappa_real(count + 1) if real else kappa(count + 1)
    if dim % need:
        kind = "real-orthogonal" if real else "unitary"
        raise HRDimensionError(f"{count} {kind} HR matrices need a dimension divisible by {need}, got {dim}")
    if count == 1 and not real and dim % 2 == 0:
        return HRSet(2, (ISZ,), False).pad(dim // 2)
    fam = _real_minimal(count) if real else _complex_minimal(count)
    return fam.pad(dim // fam.dim)


# --------------------------------------------------------------------------
# verification


@dataclass
class HRReport:
    """Max deviation per relation; ``passed`` iff every deviation is within ``tol``."""

    deviations: dict[str, float]
    tol: float
    passed: bool
    failures: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


def _report(devs: dict[str, float], tol: float) -> HRReport:
    failures = [k for k, v in devs.items() if not v <= tol]
    return HRReport(devs, tol, not failures, failures)


def verify_hr_relations(hr: HRSet, tol: float = TOL_HR) -> HRReport:
    """
    Check the defining anticommutators and their consequences.

    Reported relations: ``anticommutator``, ``unitarity``,
    ``anti_hermiticity``, ``hs_orthogonality`` and, when ``s >= 2``,
    ``tracelessness``. All deviations are absolute Hilbert-Schmidt norms
    (or absolute trace values).
    """
    m = hr.dim
    eye = np.eye(m)
    mats = hr.matrices
    devs = {"anticommutator": 0.0, "unitarity": 0.0, "anti_hermiticity": 0.0, "hs_orthogonality": 0.0}
    for j, uj in enumerate(mats):
        devs["unitarity"] = max(devs["unitarity"], hs_norm(uj.conj().T @ uj - eye))
        devs["anti_hermiticity"] = max(devs["anti_hermiticity"], hs_norm(uj.conj().T + uj))
        for k in range(j, len(mats)):
            uk = mats[k]
            target = -2.0 * eye if j == k else 0.0
            devs["anticommutator"] = max(devs["anticommutator"], hs_norm(uj @ uk + uk @ uj - target))
            overlap = np.trace(uj.conj().T @ uk) - (m if j == k else 0.0)
            devs["hs_orthogonality"] = max(devs["hs_orthogonality"], abs(overlap))
    if len(mats) >= 2:
        devs["tracelessness"] = max(abs(np.trace(u)) for u in mats)
    return _report(devs, tol)


@dataclass
class UnitarityReport:
    trials: int
    max_deviation: float
    identity_exact: bool
    complex_witness_deviation: float | None
    tol: float
    passed: bool


def verify_linear_combination_unitarity(hr: HRSet, trials: int = 100, seed: int = 0, tol: float = TOL_HR) -> UnitarityReport:
    """
    Sample real vectors ``c`` over ``{I, U_1, ..., U_s}`` and check
    ``U(c)^dag U(c) = |c|^2 I``.

    For nonempty families the complex vector ``(1, i, 0, ...)/sqrt(2)`` is
    also evaluated; it must *fail*, witnessing that the coefficients have to
    be real.
    """
    basis = np.array(hr.with_identity())
    eye = np.eye(hr.dim)
    rng = make_rng(seed)
    worst = 0.0
    for _ in range(trials):
        c = rng.standard_normal(len(basis))
        c /= np.linalg.norm(c)
        u = np.tensordot(c, basis, axes=1)
        worst = max(worst, hs_norm(u.conj().T @ u - eye))
    e0 = np.zeros(len(basis))
    e0[0] = 1.0
    identity_exact = bool(np.array_equal(np.tensordot(e0, basis, axes=1), eye))
    witness = None
    if hr.count >= 1:
        c = np.zeros(len(basis), dtype=complex)
        c[0], c[1] = 1 / np.sqrt(2), 1j / np.sqrt(2)
        u = np.tensordot(c, basis, axes=1)
        witness = hs_norm(u.conj().T @ u - eye)
    passed = worst <= tol and identity_exact and (witness is None or witness > tol)
    return UnitarityReport(trials, worst, identity_exact, witness, tol, passed)


def levi_civita(a: int, b: int, c: int) -> int:
    """Sign of ``(a, b, c)`` as a permutation of ``(1, 2, 3)``; 0 otherwise."""
    if sorted((a, b, c)) != [1, 2, 3]:
        return 0
    perm = (a, b, c)
    inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def quartic_trace_prediction(j, k, jp, kp, s, tr_tau, tr_triple) -> complex:
    """Closed-form value of ``tr(U_j U_k U_j' U_k' tau^alpha)`` for ``j<k``, ``j'<k'``."""
    value = -tr_tau if (j == jp and k == kp) else 0.0
    if s == 3:
        corr = (levi_civita(k, jp, kp) if j == 0 else 0) + (levi_civita(j, k, kp) if jp == 0 else 0)
        value = value + corr * tr_triple
    return value


@dataclass
class TraceIdentityReport:
    s: int
    quadratic_max_deviation: float
    quartic_max_deviation: float
    triple_trace: complex
    correction_terms: int
    tol: float
    passed: bool


def verify_trace_identities(hr: HRSet, tau=None, alpha: float = 1.0, tol: float = TOL_HR) -> TraceIdentityReport:
    """
    Check the trace identities for an HR family commuting with ``tau``.

    With ``U_0 = I`` and all index pairs ``0 <= j < k <= s``::

        tr(U_j U_k tau^a) = 0
        tr(U_j U_k U_j' U_k' tau^a) = -tr(tau^a) d_jj' d_kk'
                                      [+ (d_{j=0} eps_{k j' k'} + d_{j'=0} eps_{j k k'}) tr(U_1 U_2 U_3 tau^a), s = 3]

    ``correction_terms`` counts quartic entries where the ``s = 3`` term is
    nonzero, so tests can confirm it was exercised.
    """
    s = hr.count
    if s < 2:
        raise ValueError("the trace identities need at least two HR matrices")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    m = hr.dim
    tau = np.eye(m, dtype=complex) if tau is None else np.asarray(tau, dtype=complex)
    if not is_hermitian(tau, tol):
        raise ValueError("tau must be Hermitian")
    for u in hr.matrices:
        if hs_norm(u @ tau - tau @ u) > tol * max(1.0, hs_norm(tau)):
            raise ValueError("tau does not commute with the HR family")
    tau_a = psd_power(tau, alpha)
    us = hr.with_identity()
    tr_tau = np.trace(tau_a)
    tr_triple = np.trace(us[1] @ us[2] @ us[3] @ tau_a) if s == 3 else 0.0
    pairs = [(j, k) for j in range(s + 1) for k in range(j + 1, s + 1)]
    products = {(j, k): us[j] @ us[k] for j, k in pairs}
    quad = max(abs(np.trace(p @ tau_a)) for p in products.values())
    quart = 0.0
    corrections = 0
    for j, k in pairs:
        left = products[(j, k)]
        for jp, kp in pairs:
            got = np.trace(left @ products[(jp, kp)] @ tau_a)
            want = quartic_trace_prediction(j, k, jp, kp, s, tr_tau, tr_triple)
            quart = max(quart, abs(got - want))
            if s == 3 and ((j == 0 and levi_civita(k, jp, kp)) or (jp == 0 and levi_civita(j, k, kp))):
                corrections += 1
    passed = quad <= tol and quart <= tol
    return TraceIdentityReport(s, float(quad), float(quart), complex(tr_triple), corrections, tol, passed)

