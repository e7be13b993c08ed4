"""
JSON encodings for matrices, HR families, maskers and state sets.

A matrix is ``{"rows": r, "cols": c, "entries": [[re, im], ...]}`` in
row-major order. Floats go through ``repr``, which round-trips doubles
exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .hurwitz_radon import HRSet
from .ic_sets import StateSet
from .linalg import BipartiteShape
from .masking import Masker


def matrix_to_json(m) -> dict:
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    flat = m.reshape(-1)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in flat],
    }


def matrix_from_json(obj) -> np.ndarray:
    try:
        rows, cols, entries = int(obj["rows"]), int(obj["cols"]), obj["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError("matrix JSON needs rows, cols and entries") from exc
    if len(entries) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
    arr = np.array([complex(re, im) for re, im in entries], dtype=complex)
    return arr.reshape(rows, cols)


def vector_from_json(obj) -> np.ndarray:
    return matrix_from_json(obj).reshape(-1)


def hrset_to_json(hr: HRSet) -> dict:
    return {
        "dim": hr.dim,
        "count": hr.count,
        "real_orthogonal": bool(hr.real_orthogonal),
        "matrices": [matrix_to_json(u) for u in hr],
    }


def hrset_from_json(obj) -> HRSet:
    mats = tuple(matrix_from_json(m) for m in obj["matrices"])
    return HRSet(int(obj["dim"]), mats, bool(obj.get("real_orthogonal", False)))


def masker_to_json(mk: Masker) -> dict:
    out = {
        "d": mk.input_dim,
        "dA": mk.shape.dim_a,
        "dB": mk.shape.dim_b,
        "isometry": matrix_to_json(mk.isometry),
        "spectrum": [[lam, mult] for lam, mult in mk.spectrum],
        "purity": mk.purity,
        "hr": None if mk.hr is None else hrset_to_json(mk.hr),
    }
    if mk.hr_b is not None:
        out["hr_b"] = hrset_to_json(mk.hr_b)
    if not np.allclose(mk.reference, np.eye(mk.input_dim)[0]):
        out["reference"] = matrix_to_json(mk.reference.reshape(-1, 1))
    if mk.label:
        out["label"] = mk.label
    return out


def masker_from_json(obj) -> Masker:
    hr = obj.get("hr")
    hr_b = obj.get("hr_b")
    ref = obj.get("reference")
    return Masker(
        matrix_from_json(obj["isometry"]),
        BipartiteShape(int(obj["dA"]), int(obj["dB"])),
        hr=None if hr is None else hrset_from_json(hr),
        hr_b=None if hr_b is None else hrset_from_json(hr_b),
        reference=None if ref is None else vector_from_json(ref),
        label=obj.get("label", ""),
    )


def stateset_to_json(s: StateSet) -> dict:
    return {
        "dim": s.dim,
        "weights": None if s.weights is None else list(s.weights),
        "states": [matrix_to_json(r) for r in s.states],
    }


def stateset_from_json(obj) -> StateSet:
    w = obj.get("weights")
    return StateSet(int(obj["dim"]), tuple(matrix_from_json(m) for m in obj["states"]), None if w is None else tuple(w))


def state_from_json(obj) -> np.ndarray:
    """A density matrix, or a ket (single column or row) turned into one."""
    m = matrix_from_json(obj)
    if m.shape[0] == m.shape[1] and m.shape[0] > 1:
        return m
    v = m.reshape(-1)
    return np.outer(v, v.conj())


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=False)


def load_json(path) -> dict:
    return json.loads(Path(path).read_text())


def save_json(obj, path) -> None:
    Path(path).write_text(dumps(obj) + "\n")
