"""
Reproduction reports: each one recomputes a published number or table and
records it as a list of claims with expected value, observed value and
tolerance.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import time
from dataclasses import dataclass, field
from typing import Any, Literal

import numpy as np

from .hurwitz_radon import kappa, kappa_real, kappa_tilde
from .ic_sets import hidable_set_sampler, hidable_witness
from .info_measures import (
    concurrence_curve,
    concurrence_pure,
    entropy_of_entanglement,
    masking_entanglement_table,
    robustness_of_imaginarity,
)
from .linalg import hs_norm, random_state
from .masking import (
    Masker,
    canonical_real_masker,
    counterexample_d2,
    magic_basis_masker,
    marginals,
)

ClaimKind = Literal["eq", "le", "ge", "bool"]

BOTT_RATIOS_2_TO_17 = (2, 2, 2, 2, 2, 1, 1, 1, 2, 2, 2, 2, 2, 1, 1, 1)


@dataclass
class Claim:
    """
    One checked statement.

    ``eq``: ``|expected - observed| <= tolerance``; ``le``: ``observed <=
    expected + tolerance``; ``ge``: ``observed >= expected - tolerance``;
    ``bool``: ``observed`` is true.
    """

    description: str
    expected: Any
    observed: Any
    tolerance: float = 0.0
    kind: ClaimKind = "eq"
    passed: bool = field(init=False)

    def __post_init__(self):
        e, o, t = self.expected, self.observed, self.tolerance
        if self.kind == "bool":
            ok = bool(o) == bool(e)
        elif self.kind == "eq":
            ok = abs(e - o) <= t
        elif self.kind == "le":
            ok = o <= e + t
        elif self.kind == "ge":
            ok = o >= e - t
        else:
            raise ValueError(f"unknown claim kind {self.kind!r}")
        self.passed = bool(ok)

    def as_dict(self) -> dict:
        return {
            "description": self.description,
            "kind": self.kind,
            "expected": _plain(self.expected),
            "observed": _plain(self.observed),
            "tolerance": float(self.tolerance),
            "pass": self.passed,
        }


@dataclass
class ReproReport:
    name: str
    claims: list[Claim] = field(default_factory=list)
    columns: list[str] = field(default_factory=list)
    rows: list[list] = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def add(self, *args, **kw) -> Claim:
        c = Claim(*args, **kw)
        self.claims.append(c)
        return c

    def as_dict(self, timing: bool = False) -> dict:
        out = {"name": self.name, "pass": self.passed, "claims": [c.as_dict() for c in self.claims]}
        if self.columns:
            out["columns"] = list(self.columns)
            out["rows"] = [[_plain(x) for x in r] for r in self.rows]
        if self.extra:
            out["extra"] = _plain(self.extra)
        if timing:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.as_dict(timing), indent=2, allow_nan=False)

    def to_csv(self) -> str:
        """Claims table, then (after a blank line) the data table if there is one."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["description", "kind", "expected", "observed", "tolerance", "pass"])
        for c in self.claims:
            w.writerow([c.description, c.kind, _cell(c.expected), _cell(c.observed), _cell(c.tolerance), c.passed])
        if self.columns:
            w.writerow([])
            w.writerow(self.columns)
            for r in self.rows:
                w.writerow([_cell(x) for x in r])
        return buf.getvalue()


def _plain(x):
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    return x


def _cell(x) -> str:
    x = _plain(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def timed(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kw):
        t0 = time.perf_counter()
        rep = fn(*args, **kw)
        rep.wall_time = time.perf_counter() - t0
        return rep

    return wrapper


# --------------------------------------------------------------------------


@timed
def repro_entmask(d_max: int = 17, check_up_to: int = 6) -> ReproReport:
    """
    Entanglement cost table; rows up to ``check_up_to`` are rebuilt as
    minimal maskers and the entropy of ``M|0>`` compared with the table.
    """
    if d_max < 2:
        raise ValueError("d_max must be >= 2")
    rep = ReproReport("entmask", columns=["d", "E_C", "E_C_real", "C", "C_real"])
    for row in masking_entanglement_table(d_max):
        rep.rows.append(list(row))
        if row.d > check_up_to:
            continue
        for real, expected in ((False, row.e_c), (True, row.e_c_real)):
            mk = canonical_real_masker(row.d, real=real)
            ent = entropy_of_entanglement(mk.column(0), mk.shape)
            tag = "real" if real else "complex"
            rep.add(f"d={row.d} {tag}: entropy of M|0> is an integer", 0.0, abs(ent - round(ent)), 1e-10)
            rep.add(f"d={row.d} {tag}: entropy of M|0> equals cost", expected, int(round(ent)), 0)
    return rep


def maskcon_points(mk: Masker, n: int, seed: int) -> list[tuple[float, float]]:
    pts = []
    for i in range(n):
        rho = random_state(mk.input_dim, "pure-complex", seed, i)
        _, v = np.linalg.eigh(rho)
        pts.append((robustness_of_imaginarity(rho), concurrence_pure(mk.isometry @ v[:, -1], mk.shape)))
    return pts


@timed
def repro_maskcon(d: int = 3, n: int = 200, seed: int = 0, masker: Masker | None = None) -> ReproReport:
    """Output concurrence against input imaginarity, compared with the closed-form curve."""
    mk = canonical_real_masker(d) if masker is None else masker
    d = mk.input_dim
    if d < 3:
        raise ValueError("the concurrence curve needs d >= 3")
    p = mk.purity
    rep = ReproReport("maskcon", columns=["roi", "concurrence", "curve"], extra={"d": d, "purity": p})
    pts = sorted(maskcon_points(mk, n, seed))
    for x, c in pts:
        rep.rows.append([x, c, float(concurrence_curve(p, x))])
    dev = max(abs(c - cv) for _, c, cv in rep.rows)
    rep.add("max |C - curve| over samples", 0.0, dev, 1e-8)
    real_rho = random_state(d, "pure-real", seed, n)
    _, v = np.linalg.eigh(real_rho)
    c0 = concurrence_pure(mk.isometry @ v[:, -1], mk.shape)
    rep.add("real input reaches sqrt(2 - 2p)", float(np.sqrt(2 - 2 * p)), c0, 1e-10)
    # compared squared: sqrt amplifies rounding in p when 2 - 4p is near 0
    rep.add("curve at imaginarity 1 squared is 2 - 4p", max(0.0, 2 - 4 * p), float(concurrence_curve(p, 1.0)) ** 2, 1e-12)
    mono = all(b[1] <= a[1] + 1e-10 for a, b in zip(rep.rows, rep.rows[1:]))
    rep.add("concurrence nonincreasing in imaginarity", True, mono, kind="bool")
    return rep


@timed
def repro_counterexample_d2() -> ReproReport:
    """The qubit masker whose output beats the ``d >= 3`` concurrence bound."""
    ce = counterexample_d2()
    rep = ReproReport("counterexample-d2", extra={"purity": ce.masker.purity})
    rep.add("output concurrence 2/sqrt(3)", 1.1547005383792517, ce.concurrence_out, 1e-12)
    rep.add("bound sqrt(2(1 - purity)) = sqrt(5)/2", 1.118033988749895, ce.bound, 1e-12)
    rep.add("purity 3/8", 0.375, ce.masker.purity, 1e-12)
    target = np.zeros(9)
    target[[0, 4, 8]] = np.array([1, 1, -1]) / np.sqrt(3)
    rep.add("M|psi> = (|00> + |11> - |22>)/sqrt(3)", 0.0, float(np.max(np.abs(ce.output - target))), 1e-12)
    rep.add("concurrence exceeds the bound", True, ce.concurrence_out > ce.bound, kind="bool")
    return rep


@timed
def repro_hide_not_mask(n: int = 1000, seed: int = 0) -> ReproReport:
    """The magic-basis masker keeps the A marginal of a larger set at ``I/2`` but not the B marginal."""
    mk = magic_basis_masker()
    half = np.eye(2) / 2
    dev_a = dev_b = 0.0
    for i in range(n):
        ra, rb = marginals(mk, hidable_set_sampler(seed, i))
        dev_a, dev_b = max(dev_a, hs_norm(ra - half)), max(dev_b, hs_norm(rb - half))
    wa, wb = marginals(mk, hidable_witness())
    rep = ReproReport("hide-not-mask", extra={"n": n, "max_sample_dev_b": dev_b})
    rep.add(f"A marginal is I/2 on {n} samples", 1e-9, dev_a, 0.0, kind="le")
    rep.add("witness keeps A marginal at I/2", 1e-9, hs_norm(wa - half), 0.0, kind="le")
    rep.add("witness moves the B marginal", 0.05, hs_norm(wb - half), 0.0, kind="ge")
    return rep


@timed
def repro_bott(d_max: int = 17) -> ReproReport:
    """Ratio of real to complex minimal HR dimensions, period 8 in ``d``."""
    if d_max < 2:
        raise ValueError("d_max must be >= 2")
    rep = ReproReport("bott", columns=["d", "kappa", "kappa_real", "kappa_tilde", "ratio"])
    ratios = []
    for d in range(2, d_max + 1):
        r = kappa_real(d) // kappa(d)
        ratios.append(r)
        rep.rows.append([d, kappa(d), kappa_real(d), kappa_tilde(d), r])
    periodic = all(ratios[i] == ratios[i + 8] for i in range(len(ratios) - 8))
    rep.add("ratio sequence has period 8", True, periodic, kind="bool")
    k = min(len(ratios), len(BOTT_RATIOS_2_TO_17))
    rep.add("ratios for d = 2..17", True, tuple(ratios[:k]) == BOTT_RATIOS_2_TO_17[:k], kind="bool")
    return rep


REPRO = {
    "entmask": repro_entmask,
    "maskcon": repro_maskcon,
    "counterexample-d2": repro_counterexample_d2,
    "hide-not-mask": repro_hide_not_mask,
    "bott": repro_bott,
}
