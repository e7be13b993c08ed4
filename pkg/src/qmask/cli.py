"""
Command-line front end.

Exit codes: 0 success, 1 a checked claim failed, 2 usage or input error,
3 numeric guard (dimension cap or overflow).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import serialization as ser
from .hurwitz_radon import build_hr, kappa, kappa_real, kappa_tilde, verify_hr_relations
from .ic_sets import (
    bloch_affine_dimension,
    computational_basis,
    cube_root_phase_states,
    is_informationally_complete,
    is_weighted_2_design,
    mub_complete,
    phase_extension_experiment,
    phase_set_sampler,
    qubit_disk_test,
    real_to_phase_obstruction,
    hidable_set_sampler,
    separating_observable,
    sic_qubit,
    triple_product,
)
from .info_measures import masking_entanglement_table, robustness_of_imaginarity
from .linalg import DimensionLimitError, ket_to_dm
from .masking import (
    Masker,
    NotAMaskerError,
    canonical_real_masker,
    extract_hr,
    magic_basis_masker,
    masker_from_spectrum,
    non_real_sampler,
    phase_masker,
    qubit_complex_masker,
    side_conditions,
    state_sampler,
    verify_masker,
)
from .repro import (
    ReproReport,
    repro_bott,
    repro_counterexample_d2,
    repro_entmask,
    repro_hide_not_mask,
    repro_maskcon,
)

DEFAULTS = {"seed": 0, "tol": 1e-9, "format": "json", "out": None, "timing": False}
CONFIG_TYPES = {"seed": int, "tol": float, "format": str, "out": str, "n": int, "timing": lambda s: s.lower() in ("1", "true", "yes")}


class UsageError(Exception):
    pass


def read_config(path) -> dict:
    """``key = value`` lines; ``#`` starts a comment; keys mirror the long flags."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_TYPES:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = CONFIG_TYPES[key](value)
    return out


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.replace(",", " ").split()]


def _spectrum(text: str) -> list[tuple[float, int]]:
    """``"0.25:2,0.125:4"`` -> ``[(0.25, 2), (0.125, 4)]``; fractions like ``1/4`` allowed."""
    out = []
    for item in text.split(","):
        lam, mult = item.split(":")
        num = lam.split("/")
        value = float(num[0]) / float(num[1]) if len(num) == 2 else float(lam)
        out.append((value, int(mult)))
    return out


# --------------------------------------------------------------------------
# command bodies; each returns a ReproReport or a plain JSON-able object


def cmd_hr_gen(a, cfg):
    return ser.hrset_to_json(build_hr(a.count, a.dim, real=a.real))


def cmd_hr_verify(a, cfg):
    hr = ser.hrset_from_json(ser.load_json(a.file))
    res = verify_hr_relations(hr, tol=cfg["tol"])
    rep = ReproReport("hr-verify", extra={"dim": hr.dim, "count": hr.count})
    for key, dev in res.deviations.items():
        rep.add(f"{key} deviation", 0.0, dev, cfg["tol"])
    return rep


def cmd_hr_kappa(a, cfg):
    rep = ReproReport("kappa", columns=["d", "kappa", "kappa_real", "kappa_tilde"])
    for d in range(2, a.max_d + 1):
        rep.rows.append([d, kappa(d), kappa_real(d), kappa_tilde(d)])
    return rep


def cmd_mask_build(a, cfg):
    kind = a.kind
    if kind == "canonical":
        mk = canonical_real_masker(_need(a.d, "--d"), a.m, real=a.real)
    elif kind == "magic":
        mk = magic_basis_masker()
    elif kind == "spectrum":
        mk = masker_from_spectrum(_need(a.d, "--d"), _spectrum(_need(a.spectrum, "--spectrum")), real=a.real)
    elif kind == "qubit":
        signs = None if a.signs is None else [int(s) for s in _floats(a.signs)]
        mk = qubit_complex_masker(_floats(_need(a.mu, "--mu")), signs)
    else:
        c = None if a.c is None else _floats(a.c)
        d = len(c) if c is not None else _need(a.d, "--d")
        mk = phase_masker(d, c)
    return ser.masker_to_json(mk)


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required here")
    return value


def _sampler(name: str, d: int, a):
    if name == "real":
        return state_sampler(d, "mixed-real" if a.mixed else "pure-real")
    if name == "complex":
        return non_real_sampler(d)
    if name == "phase":
        c = np.asarray(_floats(_need(a.c, "--c")))
        if c.size != d:
            raise UsageError("--c must have one entry per input dimension")
        return lambda i, seed: ket_to_dm(phase_set_sampler(c, seed, i))
    if d != 4:
        raise UsageError("the hidable set lives in dimension 4")
    return lambda i, seed: hidable_set_sampler(seed, i)


def cmd_mask_verify(a, cfg):
    mk = ser.masker_from_json(ser.load_json(a.masker))
    if a.set == "phase" and a.c is not None:
        mk = Masker(mk.isometry, mk.shape, reference=np.asarray(_floats(a.c)), label=mk.label)
    n = a.n if a.n is not None else cfg.get("n", 1000)
    r = verify_masker(mk, _sampler(a.set, mk.input_dim, a), n=n, tol=cfg["tol"], seed=cfg["seed"])
    rep = ReproReport(
        "mask-verify",
        extra={"set": a.set, "checked_states": r.checked_states, "max_dev_a": r.max_dev_a, "max_dev_b": r.max_dev_b,
               "is_masker": r.is_masker, "is_partial_masker_a": r.is_partial_masker_a},
    )
    if a.expect == "masker":
        rep.add("both marginals fixed", True, r.is_masker, kind="bool")
    elif a.expect == "partial-a":
        rep.add("A marginal fixed", True, r.is_partial_masker_a, kind="bool")
        rep.add("B marginal moves", False, r.is_masker, kind="bool")
    else:
        rep.add("some marginal moves", False, r.is_masker, kind="bool")
    if r.witness_state is not None and not r.is_masker:
        rep.extra["witness_state"] = ser.matrix_to_json(r.witness_state)
    return rep


def cmd_mask_extract(a, cfg):
    mk = ser.masker_from_json(ser.load_json(a.masker))
    ext = extract_hr(mk, tol=cfg["tol"])
    return {
        "hr_a": ser.hrset_to_json(ext.hr_a),
        "hr_b": ser.hrset_to_json(ext.hr_b),
        "tau_a": ser.matrix_to_json(ext.tau_a),
        "tau_b": ser.matrix_to_json(ext.tau_b),
        "conditions": side_conditions(ext),
    }


def cmd_measure_roi(a, cfg):
    rho = ser.state_from_json(ser.load_json(a.state))
    rep = ReproReport("roi", columns=["quantity", "value"])
    rep.rows.append(["robustness_of_imaginarity", robustness_of_imaginarity(rho)])
    return rep


def cmd_measure_table(a, cfg):
    rep = ReproReport("entanglement-table", columns=["d", "E_C", "E_C_real", "C", "C_real"])
    rep.rows = [list(r) for r in masking_entanglement_table(a.max_d)]
    return rep


def cmd_measure_maskcon(a, cfg):
    mk = None if a.masker is None else ser.masker_from_json(ser.load_json(a.masker))
    n = a.n if a.n is not None else cfg.get("n", 200)
    return repro_maskcon(d=a.d, n=n, seed=cfg["seed"], masker=mk)


def _load_set(path):
    return ser.stateset_from_json(ser.load_json(path))


def cmd_ic_check(a, cfg):
    s = _load_set(a.set)
    ic, span = is_informationally_complete(s)
    rep = ReproReport("ic-check", columns=["quantity", "value"])
    rep.rows += [["informationally_complete", ic], ["span_dim", span], ["bloch_affine_dim", bloch_affine_dimension(s)]]
    q = separating_observable(s)
    if q is not None:
        rep.rows.append(["separator_max_overlap", max(abs(np.trace(q @ r)) for r in s.states)])
        rep.extra["separating_observable"] = ser.matrix_to_json(q)
    return rep


def cmd_ic_design(a, cfg):
    if a.t != 2:
        raise UsageError("only t = 2 is supported")
    ok, dev = is_weighted_2_design(_load_set(a.set), tol=a.design_tol)
    rep = ReproReport("ic-design")
    rep.add("deviation from the symmetric projector", 0.0, dev, a.design_tol)
    return rep


def cmd_ic_disk(a, cfg):
    s = _load_set(a.set)
    rep = ReproReport("ic-disk", columns=["quantity", "value"])
    rep.rows += [["in_disk", qubit_disk_test(s)], ["bloch_affine_dim", bloch_affine_dimension(s)]]
    return rep


FIXTURES = {"sic2": sic_qubit, "mub2": lambda: mub_complete(2), "mub3": lambda: mub_complete(3),
            "basis2": lambda: computational_basis(2), "basis3": lambda: computational_basis(3)}


def cmd_ic_fixtures(a, cfg):
    return ser.stateset_to_json(FIXTURES[a.name]())


def cmd_ic_triple(a, cfg):
    c = np.sqrt(np.asarray(_floats(a.c_squared)))
    tp = triple_product(*cube_root_phase_states(c))
    rep = ReproReport("triple-product", columns=["quantity", "value"])
    rep.rows += [["real", tp.real], ["imag", tp.imag]]
    return rep


def cmd_ic_obstruction(a, cfg):
    r = real_to_phase_obstruction(a.dim_prime, a.step)
    rep = ReproReport("real-to-phase", extra={"argmin_deg": list(r.argmin_deg)})
    rep.add("min over grid of max |cos|", 0.5, r.min_max_violation, 1e-12, kind="ge")
    return rep


def cmd_ic_extend(a, cfg):
    c = np.asarray(_floats(a.c))
    f = phase_extension_experiment(c / np.linalg.norm(c))
    rep = ReproReport(
        "phase-extension",
        columns=["quantity", "value"],
        extra={"state": ser.matrix_to_json(f.state)},
    )
    rep.rows += [
        ["correlation_rank", f.correlation_rank],
        ["extreme_correlation", f.extreme_correlation],
        ["marginal_deviation", f.marginal_deviation],
    ]
    return rep


def cmd_repro(a, cfg):
    which = a.which
    if which == "entmask":
        return repro_entmask(a.max_d)
    if which == "maskcon":
        n = a.n if a.n is not None else cfg.get("n", 200)
        return repro_maskcon(a.d, n, cfg["seed"])
    if which == "counterexample-d2":
        return repro_counterexample_d2()
    if which == "hide-not-mask":
        n = a.n if a.n is not None else cfg.get("n", 1000)
        return repro_hide_not_mask(n, cfg["seed"])
    return repro_bott(a.max_d)


# --------------------------------------------------------------------------
# parser


def _globals_parser(suppress: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS if suppress else None)
    p.add_argument("--seed", type=int, help="master seed (default 0)")
    p.add_argument("--tol", type=float, help="verification tolerance (default 1e-9)")
    p.add_argument("--format", choices=["json", "csv"], help="output format for reports (default json)")
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--config", help="key=value file; flags override it")
    p.add_argument("--timing", action="store_true", help="include wall time in JSON reports")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _globals_parser(suppress=True)
    parser = argparse.ArgumentParser(prog="qmask", description="Masking of quantum information: constructions and checks.", parents=[common])
    groups = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    hr = groups.add_parser("hr", help="Hurwitz-Radon families").add_subparsers(dest="cmd", required=True)
    p = leaf(hr, "gen", cmd_hr_gen, "build a traceless HR family")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--real", action="store_true")
    p = leaf(hr, "verify", cmd_hr_verify, "check the HR relations of a family file")
    p.add_argument("file")
    p = leaf(hr, "kappa", cmd_hr_kappa, "minimal dimensions table")
    p.add_argument("--max-d", type=int, default=17)

    mask = groups.add_parser("mask", help="maskers").add_subparsers(dest="cmd", required=True)
    p = leaf(mask, "build", cmd_mask_build, "construct a masker")
    p.add_argument("--kind", choices=["canonical", "magic", "spectrum", "qubit", "phase"], required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--real", action="store_true", help="use real-orthogonal HR matrices")
    p.add_argument("--spectrum", help="eigenvalue:multiplicity list, e.g. 1/4:2,1/8:4")
    p.add_argument("--mu", help="qubit masker weights, e.g. 0.25,0.25,0.5")
    p.add_argument("--signs", help="balancing signs, e.g. 1,1,-1")
    p.add_argument("--c", help="phase amplitudes")
    p = leaf(mask, "verify", cmd_mask_verify, "sample a state set and measure marginal drift")
    p.add_argument("masker")
    p.add_argument("--set", choices=["real", "complex", "phase", "hidable", "sec6"], default="real",
                   help="sec6 is an alias of hidable")
    p.add_argument("--n", type=int)
    p.add_argument("--c", help="phase amplitudes for --set phase")
    p.add_argument("--mixed", action="store_true", help="mixed instead of pure real states")
    p.add_argument("--expect", choices=["masker", "partial-a", "not-masker"], default="masker")
    p = leaf(mask, "extract-hr", cmd_mask_extract, "recover the HR families of a masker")
    p.add_argument("masker")

    meas = groups.add_parser("measure", help="entanglement and imaginarity").add_subparsers(dest="cmd", required=True)
    p = leaf(meas, "roi", cmd_measure_roi, "robustness of imaginarity of a state file")
    p.add_argument("state")
    p = leaf(meas, "table", cmd_measure_table, "entanglement cost of masking real states")
    p.add_argument("--max-d", type=int, default=17)
    p = leaf(meas, "maskcon", cmd_measure_maskcon, "concurrence against imaginarity")
    p.add_argument("--masker")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--n", type=int)

    ic = groups.add_parser("ic", help="state sets").add_subparsers(dest="cmd", required=True)
    p = leaf(ic, "check", cmd_ic_check, "span, affine dimension, separating observable")
    p.add_argument("set")
    p = leaf(ic, "design", cmd_ic_design, "weighted 2-design test")
    p.add_argument("set")
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--design-tol", type=float, default=1e-12)
    p = leaf(ic, "disk", cmd_ic_disk, "qubit disk test")
    p.add_argument("set")
    p = leaf(ic, "fixtures", cmd_ic_fixtures, "emit a fixture set")
    p.add_argument("--name", choices=sorted(FIXTURES), required=True)
    p = leaf(ic, "triple", cmd_ic_triple, "triple product of the cube-root phase states")
    p.add_argument("--c-squared", required=True, help="squared amplitudes, summing to 1")
    p = leaf(ic, "obstruction", cmd_ic_obstruction, "cosine grid for embedding real states into phase states")
    p.add_argument("--dim-prime", type=int, default=3)
    p.add_argument("--step", type=float, default=1.0)
    p = leaf(ic, "extend", cmd_ic_extend, "look for states outside the phase hull that the diagonal masker still hides")
    p.add_argument("--c", required=True)

    rep = groups.add_parser("repro", help="recompute published values")
    rsub = rep.add_subparsers(dest="which", required=True)
    for name in ("entmask", "maskcon", "counterexample-d2", "hide-not-mask", "bott"):
        p = leaf(rsub, name, cmd_repro, f"{name} report")
        if name in ("entmask", "bott"):
            p.add_argument("--max-d", type=int, default=17)
        if name == "maskcon":
            p.add_argument("--d", type=int, default=3)
        if name in ("maskcon", "hide-not-mask"):
            p.add_argument("--n", type=int)
    return parser


def resolve_config(args) -> dict:
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(read_config(args.config))
    for key in ("seed", "tol", "format", "out", "timing"):
        if hasattr(args, key):
            cfg[key] = getattr(args, key)
    if cfg["tol"] <= 0:
        raise UsageError("--tol must be positive")
    if cfg.get("n", 1) < 1:
        raise UsageError("n must be >= 1")
    return cfg


def render(result, cfg) -> str:
    if isinstance(result, ReproReport):
        if cfg["format"] == "csv":
            return result.to_csv()
        return result.to_json(cfg["timing"]) + "\n"
    return json.dumps(result, indent=2, allow_nan=False) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        result = args.fn(args, cfg)
    except (DimensionLimitError, OverflowError, FloatingPointError) as exc:
        print(f"qmask: numeric guard: {exc}", file=sys.stderr)
        return 3
    except NotAMaskerError as exc:
        print(f"qmask: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ValueError, KeyError, OSError) as exc:
        print(f"qmask: {exc}", file=sys.stderr)
        return 2
    text = render(result, cfg)
    if cfg["out"]:
        Path(cfg["out"]).write_text(text)
    else:
        sys.stdout.write(text)
    if isinstance(result, ReproReport) and not result.passed:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
