import json

import numpy as np
import pytest

from qmask import serialization as ser
from qmask.hurwitz_radon import build_hr, verify_hr_relations
from qmask.ic_sets import StateSet, mub_complete
from qmask.linalg import make_rng, random_state
from qmask.masking import canonical_real_masker, magic_basis_masker, phase_masker, qubit_complex_masker


def test_matrix_round_trip_is_exact():
    m = make_rng(1).standard_normal((3, 4)) + 1j * make_rng(2).standard_normal((3, 4))
    text = ser.dumps(ser.matrix_to_json(m))
    back = ser.matrix_from_json(json.loads(text))
    np.testing.assert_array_equal(back, m)


def test_matrix_json_errors():
    with pytest.raises(ValueError):
        ser.matrix_from_json({"rows": 2, "cols": 2, "entries": [[1, 0]]})
    with pytest.raises(ValueError):
        ser.matrix_from_json({"rows": 2})


def test_hrset_round_trip():
    hr = build_hr(4, 8, real=True)
    back = ser.hrset_from_json(json.loads(ser.dumps(ser.hrset_to_json(hr))))
    assert back.count == hr.count and back.real_orthogonal
    for a, b in zip(hr, back):
        np.testing.assert_array_equal(a, b)
    assert verify_hr_relations(back).passed


@pytest.mark.parametrize(
    "mk",
    [canonical_real_masker(3), magic_basis_masker(), qubit_complex_masker([0.25, 0.25, 0.5]), phase_masker(3, np.sqrt([0.2, 0.3, 0.5]))],
    ids=["canonical3", "magic", "qubit", "phase3"],
)
def test_masker_round_trip(mk):
    obj = ser.masker_to_json(mk)
    back = ser.masker_from_json(json.loads(ser.dumps(obj)))
    np.testing.assert_array_equal(back.isometry, mk.isometry)
    assert back.shape == mk.shape and back.label == mk.label
    np.testing.assert_array_equal(back.reference, mk.reference)
    assert ser.masker_to_json(back) == obj


def test_stateset_round_trip_and_kets():
    s = mub_complete(3)
    back = ser.stateset_from_json(json.loads(ser.dumps(ser.stateset_to_json(s))))
    assert back.dim == 3 and len(back.states) == 12
    w = StateSet(2, (np.eye(2) / 2, np.diag([1.0, 0.0])), (1.0, 2.0))
    assert ser.stateset_from_json(ser.stateset_to_json(w)).weights == (1.0, 2.0)
    ket = np.array([[1.0], [1j]]) / np.sqrt(2)
    rho = ser.state_from_json(ser.matrix_to_json(ket))
    np.testing.assert_allclose(rho, np.array([[1, -1j], [1j, 1]]) / 2)


def test_save_load(tmp_path):
    rho = random_state(3, "mixed-complex", 4)
    path = tmp_path / "rho.json"
    ser.save_json(ser.matrix_to_json(rho), path)
    np.testing.assert_array_equal(ser.state_from_json(ser.load_json(path)), rho)


def test_no_nan_allowed():
    with pytest.raises(ValueError):
        ser.dumps(ser.matrix_to_json(np.array([[np.nan]])))
