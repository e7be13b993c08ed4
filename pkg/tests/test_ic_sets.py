import numpy as np
import pytest

from qmask.ic_sets import (
    StateSet,
    bloch_affine_dimension,
    bloch_state,
    computational_basis,
    correlation_extreme,
    cube_root_phase_states,
    hermitian_basis,
    is_informationally_complete,
    is_weighted_2_design,
    mub_bases,
    mub_complete,
    phase_extension_experiment,
    phase_ket,
    phase_set_sampler,
    qubit_disk_test,
    qubit_sic_kets,
    real_symmetric_basis,
    real_to_phase_obstruction,
    sample_states,
    hidable_constraint_violation,
    hidable_set_sampler,
    hidable_witness,
    separating_observable,
    sic_qubit,
    triple_product,
    triple_product_closed_form,
)
from qmask.linalg import hs_norm, ket_to_dm, make_rng, random_isometry, random_state, validate_density_matrix
from qmask.masking import magic_basis_masker, marginals, phase_masker

from oracles import design_frame_potential, frame_potential


def _kets(state_set):
    return np.array([np.linalg.eigh(s)[1][:, -1] for s in state_set.states])


def test_hermitian_basis_orthonormal():
    for d in (2, 3, 4):
        b = hermitian_basis(d)
        gram = np.real(np.einsum("aij,bji->ab", b, b))
        np.testing.assert_allclose(gram, np.eye(d * d), atol=1e-14)
        assert all(abs(np.trace(g)) < 1e-14 for g in b[1:])


def test_ic_examples():
    assert is_informationally_complete(sic_qubit()) == (True, 4)
    assert is_informationally_complete(computational_basis(2)) == (False, 2)
    assert is_informationally_complete(real_symmetric_basis(3)) == (False, 6)
    assert is_informationally_complete(mub_complete(3)) == (True, 9)


def test_affine_dimension_examples():
    assert bloch_affine_dimension(StateSet(2, (np.eye(2) / 2,))) == 0
    circle = StateSet(2, tuple(bloch_state((np.cos(t), np.sin(t), 0)) for t in np.linspace(0, 6, 7)))
    assert bloch_affine_dimension(circle) == 2
    assert bloch_affine_dimension(sic_qubit()) == 3


def test_disk_examples():
    equator = StateSet(2, tuple(bloch_state((np.cos(t), np.sin(t), 0)) for t in (0.1, 1.0, 2.0, 4.0)))
    assert qubit_disk_test(equator)
    assert not qubit_disk_test(sic_qubit())
    for seed in range(10):
        assert qubit_disk_test(sample_states(2, 3, seed))
    with pytest.raises(ValueError):
        qubit_disk_test(computational_basis(3))


def test_design_examples():
    ok, dev = is_weighted_2_design(sic_qubit())
    assert ok and dev < 1e-12
    ok, dev = is_weighted_2_design(mub_complete(2))
    assert ok and dev < 1e-12
    ok, dev = is_weighted_2_design(mub_complete(3))
    assert ok and dev < 1e-12
    ok, dev = is_weighted_2_design(computational_basis(2))
    assert not ok and dev > 0.1
    with pytest.raises(ValueError):
        is_weighted_2_design(StateSet(2, (np.eye(2) / 2,)))


def test_design_matches_frame_potential():
    for s in (sic_qubit(), mub_complete(2), mub_complete(3)):
        assert frame_potential(_kets(s)) == pytest.approx(design_frame_potential(s.dim), abs=1e-14)
    assert frame_potential(_kets(computational_basis(3))) > design_frame_potential(3) + 0.1


def test_weighted_design():
    s = mub_complete(2)
    ok, _ = is_weighted_2_design(StateSet(2, s.states, tuple([2.0] * 6)))
    assert ok
    ok, _ = is_weighted_2_design(StateSet(2, s.states, (1, 1, 1, 1, 1, 3)))
    assert not ok


def test_fixture_fidelities():
    kets = _kets(sic_qubit())
    f = np.abs(kets.conj() @ kets.T) ** 2
    np.testing.assert_allclose(f[~np.eye(4, dtype=bool)], 1 / 3, atol=1e-12)
    bases = mub_bases(3)
    assert len(bases) == 4
    for i, a in enumerate(bases):
        np.testing.assert_allclose(a.conj().T @ a, np.eye(3), atol=1e-12)
        for b in bases[i + 1 :]:
            np.testing.assert_allclose(np.abs(a.conj().T @ b) ** 2, 1 / 3, atol=1e-12)
    b2 = mub_bases(2)
    sx = np.array([[0, 1], [1, 0]])
    assert np.allclose(np.abs(b2[1].conj().T @ sx @ b2[1]), np.eye(2))
    with pytest.raises(ValueError):
        mub_complete(4)


def test_designs_are_ic():
    for s in (sic_qubit(), mub_complete(2), mub_complete(3)):
        assert is_weighted_2_design(s)[0] and is_informationally_complete(s)[0]


def test_separating_observable():
    assert separating_observable(sic_qubit()) is None
    for s in (computational_basis(2), computational_basis(3), real_symmetric_basis(3), sample_states(3, 5, 1)):
        q = separating_observable(s)
        np.testing.assert_allclose(q, q.conj().T, atol=1e-15)
        assert hs_norm(q) == pytest.approx(1.0)
        assert max(abs(np.trace(q @ r)) for r in s.states) <= 1e-10


def test_ic_affine_consistency():
    for s in (sic_qubit(), mub_complete(2), mub_complete(3), computational_basis(3), real_symmetric_basis(3)):
        ic, _ = is_informationally_complete(s)
        assert ic == (bloch_affine_dimension(s) == s.dim**2 - 1)


def test_hidable_members():
    for i in range(200):
        rho = hidable_set_sampler(1, i)
        validate_density_matrix(rho)
        assert hidable_constraint_violation(rho) <= 1e-12
    for i in range(20):
        assert hidable_constraint_violation(random_state(4, "mixed-real", 2, i)) == 0.0


def test_hidable_sampler_hides_a_side():
    mk = magic_basis_masker()
    for i in range(200):
        a, _ = marginals(mk, hidable_set_sampler(3, i))
        np.testing.assert_allclose(a, np.eye(2) / 2, atol=1e-10)


def test_hidable_witness():
    w = hidable_witness()
    validate_density_matrix(w)
    assert hidable_constraint_violation(w) == 0.0
    assert w[0, 1].imag == pytest.approx(1 / 8) and w[2, 3].imag == pytest.approx(1 / 8)
    a, b = marginals(magic_basis_masker(), w)
    np.testing.assert_allclose(a, np.eye(2) / 2, atol=1e-15)
    assert hs_norm(b - np.eye(2) / 2) == pytest.approx(np.sqrt(2) / 4)


def test_phase_sampler():
    c = np.array([0.6, 0.8])
    np.testing.assert_array_equal(phase_ket(c, [0, 0]), c)
    for i in range(20):
        np.testing.assert_allclose(np.abs(phase_set_sampler(c, 0, i)), c, atol=1e-15)
    c3 = np.array([0.5, 0.5, np.sqrt(0.5)])
    mk = phase_masker(3, c3)
    for i in range(500):
        a, b = marginals(mk, ket_to_dm(phase_set_sampler(c3, 4, i)))
        np.testing.assert_allclose(a, mk.tau_a, atol=1e-10)
    with pytest.raises(ValueError):
        phase_set_sampler([1.0, 0.0], 0)
    with pytest.raises(ValueError):
        phase_set_sampler([0.5, 0.5], 0)


def test_triple_product_examples():
    rho = random_state(3, "pure-complex", 1)
    assert triple_product(rho, rho, rho) == pytest.approx(1.0)
    c = np.sqrt([1 / 3] * 3)
    tp = triple_product(*cube_root_phase_states(c))
    want = (np.exp(2j * np.pi / 3) / 3 + 2 / 3) ** 3
    assert tp == pytest.approx(want, abs=1e-14)
    assert abs(tp.imag) > 0.1
    c2 = np.sqrt([0.5, 0.5])
    tp = triple_product(*cube_root_phase_states(c2))
    assert tp == pytest.approx((np.exp(2j * np.pi / 3) / 2 + 0.5) ** 3, abs=1e-14)
    assert abs(tp.imag) <= 1e-12
    with pytest.raises(ValueError):
        triple_product(np.eye(2), np.eye(2), np.eye(3))


def test_triple_product_isometry_invariance():
    rng = make_rng(7)
    for i in range(20):
        rs = [random_state(3, "mixed-complex", 8, i, k) for k in range(3)]
        s = random_isometry(3, 5, rng)
        moved = [s @ r @ s.conj().T for r in rs]
        assert abs(triple_product(*rs) - triple_product(*moved)) <= 1e-10


def test_triple_product_closed_form():
    for c0 in (0.1, 0.2, 1 / 3, 0.5):
        c = np.sqrt([c0, 1 - c0])
        assert triple_product(*cube_root_phase_states(c)) == pytest.approx(triple_product_closed_form(c0), abs=1e-14)


def test_obstruction_grid():
    rep = real_to_phase_obstruction(3)
    assert rep.min_max_violation >= 0.5
    assert rep.min_max_violation == pytest.approx(0.5, abs=1e-12)
    assert real_to_phase_obstruction(5) == real_to_phase_obstruction(5)
    with pytest.raises(ValueError):
        real_to_phase_obstruction(2)


def test_correlation_extremality():
    assert correlation_extreme(qubit_sic_kets())
    assert not correlation_extreme(qubit_sic_kets()[:3])
    basis = np.eye(2, dtype=complex)
    assert correlation_extreme(np.array([basis[0], basis[0]]))


@pytest.mark.parametrize("d", [4, 5, 6])
def test_phase_extension_experiment(d):
    c = np.sqrt(np.arange(1, d + 1) / np.sum(np.arange(1, d + 1)))
    f = phase_extension_experiment(c)
    validate_density_matrix(f.state)
    np.testing.assert_allclose(np.diag(f.state).real, c**2, atol=1e-15)
    assert f.correlation_rank == 2
    assert f.marginal_deviation <= 1e-12
    assert f.extreme_correlation


def test_phase_extension_d3_not_extreme():
    assert not phase_extension_experiment(np.sqrt([1 / 3] * 3)).extreme_correlation


def test_state_set_validation():
    with pytest.raises(ValueError):
        StateSet(2, ())
    with pytest.raises(ValueError):
        StateSet(2, (np.eye(3) / 3,))
    with pytest.raises(ValueError):
        StateSet(2, (np.eye(2) / 2,), (0.0,))
