import numpy as np
import pytest

from qmask.info_measures import (
    concurrence_bound_check,
    concurrence_curve,
    concurrence_from_schmidt,
    concurrence_pure,
    concurrence_roi_check,
    entropy_of_entanglement,
    marginal_majorizes_fixed,
    masking_entanglement_table,
    purity_sandwich,
    purity_sum_prediction,
    robustness_of_imaginarity,
)
from qmask.linalg import SIGMA_Y, hs_norm, ket_to_dm, make_rng, random_orthogonal, random_state
from qmask.masking import canonical_real_masker, counterexample_masker, marginals

from oracles import concurrence_loops, trace_norm_eigvals

PHI_PLUS = np.array([1, 0, 0, 1]) / np.sqrt(2)


def test_concurrence_examples():
    assert concurrence_pure(PHI_PLUS, (2, 2)) == pytest.approx(1.0)
    assert concurrence_pure(np.kron([1, 0], [1, 0]), (2, 2)) == 0.0
    ghz3 = np.zeros(9)
    ghz3[[0, 4, 8]] = np.array([1, 1, -1]) / np.sqrt(3)
    assert concurrence_pure(ghz3, (3, 3)) == pytest.approx(2 / np.sqrt(3), abs=1e-14)
    with pytest.raises(ValueError):
        concurrence_pure([1, 1, 0, 0], (2, 2))


def test_concurrence_two_paths():
    rng = make_rng(2)
    for _ in range(50):
        v = rng.standard_normal(12) + 1j * rng.standard_normal(12)
        v /= np.linalg.norm(v)
        c = concurrence_pure(v, (3, 4))
        assert c**2 == pytest.approx(concurrence_from_schmidt(v, (3, 4)) ** 2, abs=1e-10)
        assert c == pytest.approx(concurrence_loops(v, 3, 4), abs=1e-12)


def test_entropy_examples():
    assert entropy_of_entanglement(PHI_PLUS, (2, 2)) == pytest.approx(1.0)
    assert entropy_of_entanglement(np.kron([0, 1], [1, 0]), (2, 2)) == 0.0
    max4 = np.eye(4).reshape(-1) / 2
    assert entropy_of_entanglement(max4, (4, 4)) == pytest.approx(2.0)


def test_robustness_examples():
    assert robustness_of_imaginarity(random_state(3, "mixed-real", 1)) == 0.0
    assert robustness_of_imaginarity((np.eye(2) + SIGMA_Y) / 2) == pytest.approx(1.0)
    for i in range(20):
        rho = random_state(4, "pure-complex", 3, i)
        a = rho - rho.T
        assert robustness_of_imaginarity(rho) == pytest.approx(hs_norm(a) / np.sqrt(2), abs=1e-10)
        assert robustness_of_imaginarity(rho) == pytest.approx(0.5 * trace_norm_eigvals(a), abs=1e-10)


def test_pure_trace_norm_is_sqrt2_hs():
    for i in range(20):
        rho = random_state(5, "pure-complex", 4, i)
        a = rho - rho.T
        assert trace_norm_eigvals(a) == pytest.approx(np.sqrt(2) * hs_norm(a), abs=1e-9)
        assert hs_norm(a) ** 2 == pytest.approx(2 * (np.trace(rho @ rho) - np.trace(rho @ rho.T)).real, abs=1e-12)


def test_robustness_orthogonal_invariance_and_range():
    rng = make_rng(5)
    for i in range(50):
        rho = random_state(4, "mixed-complex", 6, i)
        o = random_orthogonal(4, rng)
        r = robustness_of_imaginarity(rho)
        assert robustness_of_imaginarity(o @ rho @ o.T) == pytest.approx(r, abs=1e-10)
        assert -1e-15 <= r <= 1 + 1e-12


def test_entanglement_table_examples():
    rows = {r.d: r for r in masking_entanglement_table(17)}
    assert rows[2].e_c == 1 and rows[2].e_c_real == 1
    assert (rows[5].e_c, rows[5].e_c_real) == (2, 3)
    assert (rows[7].e_c, rows[7].e_c_real) == (3, 3)
    assert (rows[9].e_c, rows[9].e_c_real) == (4, 4)
    assert rows[3].concurrence == pytest.approx(1.0)
    with pytest.raises(ValueError):
        masking_entanglement_table(1)


def test_entanglement_table_shape():
    rows = masking_entanglement_table(33)
    for a, b in zip(rows, rows[1:]):
        assert b.e_c >= a.e_c and b.e_c_real >= a.e_c_real
    for r in rows:
        assert r.e_c_real - r.e_c == (0 if r.d % 8 in (0, 1, 7) else 1) or r.d == 2


def test_concurrence_roi_real_saturates():
    mk = canonical_real_masker(3)
    rho = random_state(3, "pure-real", 1)
    res = concurrence_roi_check(mk, rho)
    assert res.lhs == pytest.approx(np.sqrt(2 * (1 - mk.purity)), abs=1e-12)
    assert res.deviation < 1e-12


def test_concurrence_roi_maximal_imaginarity():
    mk = canonical_real_masker(3)
    psi = np.array([1, 1j, 0]) / np.sqrt(2)
    res = concurrence_roi_check(mk, ket_to_dm(psi))
    assert res.deviation < 1e-9
    assert res.rhs == pytest.approx(0.0, abs=1e-12)


def test_concurrence_roi_d5():
    mk = canonical_real_masker(5)
    worst = max(concurrence_roi_check(mk, random_state(5, "pure-complex", 7, i)).deviation for i in range(200))
    assert worst < 1e-8


def test_concurrence_roi_refusals():
    with pytest.raises(ValueError):
        concurrence_roi_check(counterexample_masker(), random_state(2, "pure-complex", 1))
    with pytest.raises(ValueError):
        concurrence_roi_check(canonical_real_masker(3), random_state(3, "mixed-complex", 1))
    with pytest.raises(ValueError):
        concurrence_bound_check(counterexample_masker(), random_state(2, "pure-complex", 1))


def test_concurrence_bound_check():
    mk = canonical_real_masker(3)
    rep = concurrence_bound_check(mk, random_state(3, "pure-real", 2))
    assert rep.holds and rep.slack == pytest.approx(0.0, abs=1e-12)
    rep = concurrence_bound_check(mk, ket_to_dm(np.array([1, 1j, 0]) / np.sqrt(2)))
    assert rep.holds and rep.slack > 0.5
    rep = concurrence_bound_check(mk, random_state(3, "mixed-real", 3))
    assert rep.holds and not rep.pure


@pytest.mark.parametrize("d", [3, 4, 5])
def test_purity_sandwich(d):
    mk = canonical_real_masker(d)
    for i in range(100):
        rho = random_state(d, "mixed-complex", 8, i)
        assert purity_sandwich(mk, rho).holds
        a, b = marginals(mk, rho)
        total = np.trace(a @ a).real + np.trace(b @ b).real
        assert total == pytest.approx(purity_sum_prediction(mk, rho), abs=1e-9)
        assert marginal_majorizes_fixed(mk, rho)


def test_concurrence_curve_endpoints():
    assert concurrence_curve(0.5, 0.0) == pytest.approx(1.0)
    assert concurrence_curve(0.5, 1.0) == 0.0
    assert concurrence_curve(0.25, 1.0) == pytest.approx(1.0)


@pytest.mark.parametrize("d", [2, 3, 5, 6])
def test_entanglement_same_for_every_real_input(d):
    mk = canonical_real_masker(d)
    e0 = entropy_of_entanglement(mk.column(0), mk.shape)
    c0 = concurrence_pure(mk.column(0), mk.shape)
    for i in range(20):
        rho = random_state(d, "pure-real", 9, i)
        psi = mk.isometry @ np.linalg.eigh(rho)[1][:, -1]
        assert entropy_of_entanglement(psi, mk.shape) == pytest.approx(e0, abs=1e-10)
        assert concurrence_pure(psi, mk.shape) == pytest.approx(c0, abs=1e-12)
