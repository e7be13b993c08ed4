"""
Entanglement and imaginarity quantifiers for pure bipartite outputs of maskers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .hurwitz_radon import kappa_real, kappa_tilde
from .linalg import (
    TOL_NORM,
    hermitian_eig,
    hs_norm,
    ket_marginal,
    majorizes,
    partial_trace,
    schatten_1_norm,
    schmidt_coefficients,
    validate_density_matrix,
    validate_ket,
)
from .masking import Masker, apply

TOL_PURE = 1e-9


def _purity(rho) -> float:
    return float(np.real(np.vdot(rho, rho)))


def linear_entropy(p) -> float:
    """
    ``(sum p)^2 - sum p^2`` evaluated as ``2 sum_{i<j} p_i p_j``.

    The pairwise form keeps full relative accuracy for nearly pure spectra,
    where ``1 - sum p^2`` cancels to a few ulps.
    """
    p = np.sort(np.clip(np.asarray(p, dtype=float), 0.0, None))[::-1]
    tails = np.cumsum(p[::-1])[::-1]
    return float(2.0 * np.sum(p[:-1] * tails[1:]))


def concurrence_from_marginal(rho_a) -> float:
    """``sqrt(2 (1 - tr rho_A^2))`` from the spectrum of a unit-trace marginal."""
    return float(np.sqrt(2.0 * linear_entropy(hermitian_eig(rho_a)[0])))


def concurrence_pure(psi, shape) -> float:
    """``sqrt(2 (1 - tr rho_A^2))`` for a normalized bipartite ket."""
    psi = validate_ket(psi)
    return concurrence_from_marginal(ket_marginal(psi, shape, "A"))


def concurrence_from_schmidt(psi, shape) -> float:
    """Same quantity from the Schmidt coefficients (singular values of the amplitude matrix)."""
    s = schmidt_coefficients(validate_ket(psi), shape)
    return float(np.sqrt(2.0 * linear_entropy(s**2)))


def entropy_of_entanglement(psi, shape) -> float:
    """Von Neumann entropy (bits) of either marginal of a pure state."""
    s = schmidt_coefficients(validate_ket(psi), shape)
    p = np.clip(s**2, 0.0, 1.0)
    p = p[p > 0]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def robustness_of_imaginarity(rho) -> float:
    """Half the trace norm of ``rho - rho^T`` (computational basis)."""
    rho = validate_density_matrix(rho)
    return 0.5 * schatten_1_norm(rho - rho.T)


def is_pure(rho, tol: float = TOL_PURE) -> bool:
    return abs(_purity(rho) - 1.0) <= tol


def dominant_ket(rho) -> np.ndarray:
    _, v = hermitian_eig(rho)
    return v[:, -1]


# --------------------------------------------------------------------------
# closed forms


class EntanglementRow(NamedTuple):
    d: int
    e_c: int
    e_c_real: int
    concurrence: float
    concurrence_real: float


def masking_entanglement_table(d_max: int) -> list[EntanglementRow]:
    """
    Minimal entanglement cost (bits) and concurrence of masking all real
    states of dimension ``d``, complex and real-orthogonal variants.
    """
    if d_max < 2:
        raise ValueError("d_max must be >= 2")
    rows = []
    for d in range(2, d_max + 1):
        kt, kr = kappa_tilde(d), kappa_real(d)
        rows.append(
            EntanglementRow(
                d,
                int(round(np.log2(kt))),
                int(round(np.log2(kr))),
                float(np.sqrt(2 * (1 - 1 / kt))),
                float(np.sqrt(2 * (1 - 1 / kr))),
            )
        )
    return rows


def concurrence_curve(purity: float, roi) -> np.ndarray:
    """``sqrt(2 - 2 p - 2 p x^2)``: output concurrence against imaginarity ``x``."""
    x = np.asarray(roi, dtype=float)
    r = 2 - 2 * purity - 2 * purity * x**2
    # rounding in the purity leaves ~1e-16 where the radicand is exactly 0
    return np.sqrt(np.where(r < 1e-14, 0.0, r))


# --------------------------------------------------------------------------
# identity checks on masker outputs


class ConcurrenceRoI(NamedTuple):
    lhs: float
    rhs: float
    deviation: float


def _require_d3(masker: Masker) -> None:
    if masker.input_dim < 3:
        raise ValueError("the identity does not hold for d = 2 (explicit counterexample exists)")


def concurrence_roi_check(masker: Masker, rho) -> ConcurrenceRoI:
    """
    Compare the concurrence of ``M(rho)`` computed by partial trace with the
    closed form in the masking purity and the robustness of imaginarity.
    """
    _require_d3(masker)
    rho = validate_density_matrix(rho)
    if not is_pure(rho):
        raise ValueError("rho must be pure")
    out = apply(masker, rho)
    lhs = concurrence_from_marginal(partial_trace(out, masker.shape, "A"))
    rhs = float(concurrence_curve(masker.purity, robustness_of_imaginarity(rho)))
    return ConcurrenceRoI(lhs, rhs, abs(lhs - rhs))


@dataclass
class ConcurrenceBoundReport:
    """Concurrence of a masker output against its purity-based upper bounds."""

    pure: bool
    concurrence: float | None
    side_bound: float
    purity_bound: float
    slack: float
    holds: bool
    pure_identity_deviation: float | None


def concurrence_bound_check(masker: Masker, rho, tol: float = 1e-10) -> ConcurrenceBoundReport:
    """
    Check ``C <= sqrt(2(1 - min tr rho_X^2)) <= sqrt(2(1 - purity))``.

    For pure inputs the concurrence is evaluated and compared with the
    closed form; the slack is ``sqrt(2(1 - purity)) - C`` (zero iff ``rho``
    is real). For mixed inputs only the marginal chain is checked and the
    slack refers to the marginal bound.
    """
    _require_d3(masker)
    rho = validate_density_matrix(rho)
    out = apply(masker, rho)
    side_bound = min(concurrence_from_marginal(partial_trace(out, masker.shape, s)) for s in "AB")
    purity_bound = float(np.sqrt(max(0.0, 2 * (1 - masker.purity))))
    holds = side_bound <= purity_bound + tol
    pure = is_pure(rho)
    if pure:
        conc = concurrence_pure(masker.isometry @ dominant_ket(rho), masker.shape)
        holds = holds and conc <= side_bound + tol
        dev = concurrence_roi_check(masker, rho).deviation
        return ConcurrenceBoundReport(True, conc, side_bound, purity_bound, purity_bound - conc, holds, dev)
    return ConcurrenceBoundReport(False, None, side_bound, purity_bound, purity_bound - side_bound, holds, None)


class PuritySandwich(NamedTuple):
    lower: float
    value: float
    upper: float

    @property
    def holds(self) -> bool:
        return self.lower - 1e-12 <= self.value <= self.upper + 1e-12


def purity_sandwich(masker: Masker, rho) -> PuritySandwich:
    """``2p(1 + 2 I^2 / d) <= tr rho_A^2 + tr rho_B^2 <= 2p(1 + I^2)`` with ``I`` the imaginarity."""
    _require_d3(masker)
    out = apply(masker, rho)
    total = _purity(partial_trace(out, masker.shape, "A")) + _purity(partial_trace(out, masker.shape, "B"))
    ir2 = robustness_of_imaginarity(rho) ** 2
    p, d = masker.purity, masker.input_dim
    return PuritySandwich(2 * p * (1 + 2 * ir2 / d), total, 2 * p * (1 + ir2))


def purity_sum_prediction(masker: Masker, rho) -> float:
    """``p (2 + ||rho - rho^T||_hs^2)``, the predicted ``tr rho_A^2 + tr rho_B^2``."""
    rho = np.asarray(rho, dtype=complex)
    return masker.purity * (2 + hs_norm(rho - rho.T) ** 2)


def marginal_majorizes_fixed(masker: Masker, rho, side: str = "A", tol: float = 1e-9) -> bool:
    """True when the spectrum of the marginal of ``M(rho)`` majorizes that of the fixed marginal."""
    out = apply(masker, rho)
    marg = partial_trace(out, masker.shape, side)
    tau = masker.tau_a if side == "A" else masker.tau_b
    spec_m = np.clip(hermitian_eig(marg)[0], 0, None)
    spec_t = np.clip(hermitian_eig(tau)[0], 0, None)
    return majorizes(spec_m, spec_t, tol=tol, tol_norm=max(TOL_NORM, 1e-8))
