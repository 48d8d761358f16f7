"""Command-line front end.

    subordkit verify-theorem --id T4.8 --alpha1 4.7 --alpha2 0.01
    subordkit find-threshold --id T4.4
    subordkit check-function --coeffs f.json --alpha1 4.7 --alpha2 0.01 --domain exp
    subordkit emit-boundary --domain crescent --samples 1024 --output crescent.csv
    subordkit falsify --id T4.8 --alpha1 4.7 --alpha2 0.01 --trials 10000 --seed 42

Exit status: 0 on PASS / success, 1 on a certified FAIL, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import admissibility as adm
from . import domains as dom
from . import report
from . import subordination as sub
from .errors import SubordkitError
from .series import DEFAULT_ORDER, TaylorSeries

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

COROLLARY_ITEMS = {3: "(i)", 4: "(ii)", 5: "(iii)", 6: "(iv)", 7: "(v)", 8: "(vi)"}


class UsageError(Exception):
    pass


def _theorem(cfg) -> adm.TheoremSpec:
    try:
        return adm.get_theorem(cfg.id, cfg.C, cfg.D)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _coefficients(cfg, order: int | None = None) -> adm.OperatorCoefficients:
    a3 = cfg.alpha3 or 0.0
    if order == 3 and a3 <= 0:
        raise UsageError("third-order theorems need --alpha3 > 0")
    if order == 2 and a3 != 0:
        raise UsageError("second-order theorems take no --alpha3")
    try:
        return adm.OperatorCoefficients(cfg.alpha1, cfg.alpha2, a3)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _grid(cfg) -> adm.GridSpec:
    if cfg.n_theta < 8:
        raise UsageError("--n-theta must be at least 8")
    return adm.GridSpec(n_theta=cfg.n_theta)


def _check_mk(spec, cfg):
    if spec.order == 3:
        try:
            adm.check_order(3, cfg.m, cfg.k)
        except SubordkitError as exc:
            raise UsageError(str(exc)) from None


# --------------------------------------------------------------------------
# commands


def cmd_verify_theorem(cfg):
    spec = _theorem(cfg)
    c = _coefficients(cfg, spec.order)
    _check_mk(spec, cfg)
    rep = adm.verify_exclusion(spec, c, _grid(cfg), cfg.m, cfg.k)
    code = EXIT_FAIL if rep.status == "FAIL" else EXIT_OK
    return rep.to_dict(), code


def cmd_find_threshold(cfg):
    spec = _theorem(cfg)
    _check_mk(spec, cfg)
    if cfg.alpha2 <= 0:
        raise UsageError("--alpha2 must be positive")
    alpha3 = cfg.alpha3 if cfg.alpha3 is not None else 0.01
    if spec.order == 3 and alpha3 <= 0:
        raise UsageError("third-order theorems need --alpha3 > 0")
    out = adm.find_threshold(spec, cfg.alpha2, alpha3, cfg.m, cfg.k, _grid(cfg), lo=0.0, hi=20.0,
                             containment=not cfg.no_containment)
    return out, EXIT_OK


def load_coefficients(path: str, order: int = DEFAULT_ORDER) -> TaylorSeries:
    """Read ``{"class": "A", "coeffs": [[re, im], ...]}`` (index = degree)."""
    try:
        raw = json.loads(Path(path).read_text())
        if raw.get("class") != "A":
            raise ValueError('top-level "class" must be "A"')
        pairs = raw["coeffs"]
        coeffs = [complex(float(re), float(im)) for re, im in pairs]
    except (OSError, ValueError, KeyError, TypeError, AttributeError) as exc:
        raise UsageError(f"malformed coefficient file {path}: {exc}") from None
    f = TaylorSeries.from_coeffs(coeffs, max(order, len(coeffs) - 1))
    if not f.is_class_a():
        raise UsageError("coefficients are not normalised (need c0 = 0, c1 = 1)")
    return f


def cmd_check_function(cfg):
    f = load_coefficients(cfg.coeffs)
    c = _coefficients(cfg)
    order = c.order
    try:
        domain = dom.TargetDomain.named(cfg.domain, cfg.C, cfg.D)
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    p = sub.starlike_p(f)
    result = {
        "degree": int(np.flatnonzero(np.abs(f.coeffs) > 0).max()),
        "working_order": f.order,
        "in_S_e": sub.classify_starlike_exp(f),
        "domain": domain.label,
        "order": order,
    }
    if order == 2:
        operator = sub.Y_f(f, c)
        result["Y_f_subordinate"] = sub.is_subordinate(operator, domain)
    else:
        operator = sub.chi_f_direct(f, c)
        result["chi_f_subordinate"] = sub.is_subordinate(operator, domain)
        result["chi_f_printed_discrepancy"] = sub.chi_f_discrepancy(f, c)
    result["p_first_coefficients"] = [[z.real, z.imag] for z in p.coeffs[:4]]

    conditions = []
    section = 4 if order == 2 else 5
    for num, kind in adm.THEOREM_DOMAINS.items():
        if kind == "janowski" and (cfg.C is None or cfg.D is None):
            continue
        spec = adm.get_theorem(f"T{section}.{num}", cfg.C, cfg.D)
        alpha_ok = adm.threshold_holds(spec, c, cfg.m, cfg.k) if order == 3 else adm.threshold_holds(spec, c)
        sub_ok = sub.is_subordinate(operator, spec.domain)
        conditions.append({
            "item": COROLLARY_ITEMS.get(num, kind),
            "theorem": spec.id,
            "domain": spec.domain.label,
            "alpha_condition": alpha_ok,
            "operator_subordinate": sub_ok,
            "implies_S_e": alpha_ok and sub_ok,
        })
    result["corollary_conditions"] = conditions
    return result, EXIT_OK


def _write(path: Path, text: str):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


def cmd_emit_boundary(cfg):
    if cfg.samples < 64:
        raise UsageError("--samples must be at least 64")
    if not cfg.output:
        raise UsageError("emit-boundary needs --output PATH")
    try:
        domain = dom.TargetDomain.named(cfg.domain, cfg.C, cfg.D)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    n = cfg.samples
    theta = 2 * np.pi * np.arange(n) / n
    values = dom.boundary_samples(domain, n)
    out = Path(cfg.output)
    _write(out, report.boundary_csv(theta, values))
    result = {
        "domain": domain.label,
        "samples": n,
        "files": {"boundary": str(out)},
        "max_abs_minus_one": float(np.max(np.abs(values - 1))),
    }
    if domain.kind == "crescent":
        for name, centre in (("C1", 1.0), ("C2", -1.0)):
            circle = centre + math.sqrt(2) * np.exp(1j * theta)
            path = out.with_name(f"{out.stem}_{name}{out.suffix or '.csv'}")
            _write(path, report.boundary_csv(theta, circle))
            result["files"][name] = str(path)
            result[f"{name}_radius_max_error"] = float(np.max(np.abs(np.abs(circle - centre) - math.sqrt(2))))
    return result, EXIT_OK


def cmd_falsify(cfg):
    spec = _theorem(cfg)
    c = _coefficients(cfg, spec.order)
    _check_mk(spec, cfg)
    if cfg.trials < 1:
        raise UsageError("--trials must be positive")
    rep = sub.falsify_implication(spec, c, cfg.trials, cfg.seed, cfg.m, cfg.k)
    code = EXIT_FAIL if rep.violations and not rep.advisory else EXIT_OK
    return rep.to_dict(), code


# --------------------------------------------------------------------------
# argument parsing


def _add_alphas(p, required=True):
    p.add_argument("--alpha1", type=float, required=required)
    p.add_argument("--alpha2", type=float, required=required)
    p.add_argument("--alpha3", type=float, default=None)


def _add_janowski(p):
    p.add_argument("--C", type=float, default=None, help="janowski C (needs -1 < D < C <= 1)")
    p.add_argument("--D", type=float, default=None, help="janowski D")


def _add_mk(p):
    p.add_argument("--m", type=float, default=2.0, help="third-order parameter m (k >= m >= 2)")
    p.add_argument("--k", type=float, default=2.0, help="third-order parameter k")


def _add_common(p):
    p.add_argument("--output", default=None, help="write the report here as well as to stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--omit-timing", action="store_true",
                   help="report wall_time_ms as null so output is byte-reproducible")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subordkit", description=__doc__.split("\n\n")[0])
    cmds = parser.add_subparsers(dest="command", required=True)

    p = cmds.add_parser("verify-theorem", help="certify a theorem's admissibility exclusion")
    p.add_argument("--id", required=True)
    _add_alphas(p)
    _add_janowski(p)
    _add_mk(p)
    p.add_argument("--n-theta", type=int, default=1024)
    _add_common(p)
    p.set_defaults(func=cmd_verify_theorem)

    p = cmds.add_parser("find-threshold", help="bisect for the empirical threshold on alpha1 - alpha2")
    p.add_argument("--id", required=True)
    p.add_argument("--alpha2", type=float, default=0.01)
    p.add_argument("--alpha3", type=float, default=None)
    _add_janowski(p)
    _add_mk(p)
    p.add_argument("--n-theta", type=int, default=1024)
    p.add_argument("--no-containment", action="store_true", help="skip the containment bisection")
    _add_common(p)
    p.set_defaults(func=cmd_find_threshold)

    p = cmds.add_parser("check-function", help="classify f and test the corollary conditions")
    p.add_argument("--coeffs", required=True, help='JSON file {"class": "A", "coeffs": [[re, im], ...]}')
    _add_alphas(p)
    p.add_argument("--domain", default="exp", choices=dom.DOMAIN_IDS)
    _add_janowski(p)
    _add_mk(p)
    _add_common(p)
    p.set_defaults(func=cmd_check_function)

    p = cmds.add_parser("emit-boundary", help="write boundary samples of a target domain as CSV")
    p.add_argument("--domain", required=True, choices=dom.DOMAIN_IDS)
    p.add_argument("--samples", type=int, default=1024)
    _add_janowski(p)
    p.add_argument("--output", default=None, help="CSV path (crescent also writes _C1/_C2 files)")
    p.add_argument("--omit-timing", action="store_true")
    p.set_defaults(func=cmd_emit_boundary, format="json")

    p = cmds.add_parser("falsify", help="random search for counterexamples to an implication")
    p.add_argument("--id", required=True)
    _add_alphas(p)
    _add_janowski(p)
    _add_mk(p)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=cmd_falsify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    cfg = parser.parse_args(argv)
    config = {k: v for k, v in vars(cfg).items() if k != "func"}
    start = time.perf_counter()
    try:
        result, code = cfg.func(cfg)
    except (UsageError, SubordkitError, ValueError) as exc:
        print(f"subordkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = None if cfg.omit_timing else (time.perf_counter() - start) * 1e3
    env = report.envelope(cfg.command, config, result, elapsed)
    text = report.to_key_value_csv(env) if cfg.format == "csv" else report.to_json(env)
    sys.stdout.write(text)
    if cfg.output and cfg.command != "emit-boundary":
        try:
            _write(Path(cfg.output), text)
        except UsageError as exc:
            print(f"subordkit: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    return code


if __name__ == "__main__":
    raise SystemExit(main())
