"""Admissibility geometry for q(z) = exp(z) and numerical exclusion certificates.

On the unit circle zeta = e^{i theta} the dominant q(z) = e^z gives

    |q'(zeta)|                    = exp(cos theta)  (b)
    Re(zeta q''(zeta) / q'(zeta)) = cos theta       (l)
    Re(zeta^2 q'''(zeta)/q'(zeta)) = cos 2 theta    (hq)

An operator ``xi = 1 + a1 s + a2 t + a3 u`` is admissible for a target Omega
when ``xi`` avoids Omega at every boundary configuration (r, s, t, u).  The
sweep in :func:`verify_exclusion` samples those configurations and checks
both the reduced modulus inequality and direct membership.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from ._accel import thread_cap
from .domains import TargetDomain, contains, solve_r0
from .errors import ParameterOrder

E = math.e
PASS_TOL = 1e-9

THEOREM_DOMAINS = {
    1: "janowski",
    2: "sqrt1pz",
    3: "sigmoid",
    4: "crescent",
    5: "sine",
    6: "cardioid",
    7: "arcsinh",
    8: "exp",
}
THEOREM_IDS = tuple(f"T{sec}.{n}" for sec in (4, 5) for n in THEOREM_DOMAINS)


@dataclass(frozen=True)
class BaseQuantities:
    b: float
    l: float
    hq: float
    theta: float


def base_quantities(theta: float) -> BaseQuantities:
    theta = math.fmod(theta, 2 * math.pi)
    if theta < 0:
        theta += 2 * math.pi
    c = math.cos(theta)
    return BaseQuantities(math.exp(c), c, math.cos(2 * theta), theta)


def base_arrays(theta):
    """Vectorised ``(b, l, hq)`` for an array of angles."""
    theta = np.asarray(theta, dtype=np.float64)
    c = np.cos(theta)
    return np.exp(c), c, np.cos(2 * theta)


@dataclass(frozen=True)
class OperatorCoefficients:
    alpha1: float
    alpha2: float
    alpha3: float = 0.0

    def __post_init__(self):
        if not (self.alpha1 > 0 and self.alpha2 > 0):
            raise ValueError("alpha1 and alpha2 must be positive")
        if not self.alpha3 >= 0:
            raise ValueError("alpha3 must be non-negative")

    @property
    def order(self) -> int:
        return 3 if self.alpha3 > 0 else 2

    def as_tuple(self):
        return (self.alpha1, self.alpha2, self.alpha3)


def check_order(order: int, m: float, k: float | None) -> None:
    if order == 2:
        if m < 1:
            raise ParameterOrder(f"second order needs m >= 1, got m={m}")
    elif order == 3:
        if k is None or not (k >= m >= 2):
            raise ParameterOrder(f"third order needs k >= m >= 2, got m={m}, k={k}")
    else:
        raise ValueError("order must be 2 or 3")


@dataclass(frozen=True)
class AdmissibilityPoint:
    theta: float
    m: float
    k: float | None
    r: complex
    s: complex
    t: complex
    u: complex | None

    @property
    def order(self) -> int:
        return 2 if self.u is None else 3


def make_point(theta: float, m: float, k: float | None = None, t_slack: float = 0.0,
               t_imag: float = 0.0, u_slack: float = 0.0, u_imag: float = 0.0,
               order: int = 2) -> AdmissibilityPoint:
    """Boundary configuration for q = e^z; zero slacks give the constraint-boundary point."""
    check_order(order, m, k)
    if t_slack < 0 or u_slack < 0:
        raise ValueError("slacks must be non-negative")
    bq = base_quantities(theta)
    zeta = complex(math.cos(theta), math.sin(theta))
    r = np.exp(zeta)
    s = m * zeta * r
    t = s * complex(m * (1 + bq.l) - 1 + t_slack, t_imag)
    u = None
    if order == 3:
        u = s * complex(m * m * bq.hq + 3 * m * (k - 1) * bq.l + u_slack, u_imag)
    return AdmissibilityPoint(theta, m, k if order == 3 else None, complex(r), complex(s), complex(t),
                              None if u is None else complex(u))


def xi_value(c: OperatorCoefficients, pt: AdmissibilityPoint) -> complex:
    if (c.alpha3 > 0) != (pt.order == 3):
        raise ValueError("operator order and admissibility point order differ")
    out = 1 + c.alpha1 * pt.s + c.alpha2 * pt.t
    if pt.u is not None:
        out += c.alpha3 * pt.u
    return out


def proof_lower_bound(c: OperatorCoefficients, theta: float, m: float, k: float | None = None) -> float:
    """``m a1 b (1 + (a2/a1)(m l + m - 1) + (a3/a1)(m^2 hq + 3m(k-1) l))``.

    This is the bound on ``|a1 s + a2 t + a3 u|`` before relaxing m to 1 and b to 1/e.
    """
    check_order(c.order, m, k)
    bq = base_quantities(theta)
    inner = 1 + (c.alpha2 / c.alpha1) * (m * bq.l + m - 1)
    if c.order == 3:
        inner += (c.alpha3 / c.alpha1) * (m * m * bq.hq + 3 * m * (k - 1) * bq.l)
    return m * c.alpha1 * bq.b * inner


# --------------------------------------------------------------------------
# Theorems


@dataclass(frozen=True)
class TheoremSpec:
    id: str
    domain: TargetDomain
    order: int

    @property
    def proof_constant(self) -> float:
        return self.domain.proof_constant

    def reduced_gap(self, c: OperatorCoefficients, m: float = 2.0, k: float = 2.0) -> float:
        """``a1 - a2`` (second order) or ``a1 - a2 - m^2 a3 - 3m(k-1) a3`` (third order)."""
        d = c.alpha1 - c.alpha2
        if self.order == 3:
            d -= (m * m + 3 * m * (k - 1)) * c.alpha3
        return d

    @property
    def minimal_gap(self) -> float:
        """Smallest positive reduced gap meeting the hypothesis: ``e`` times the proof constant."""
        return E * self.proof_constant

    def threshold(self, c: OperatorCoefficients, m: float = 2.0, k: float = 2.0) -> bool:
        return threshold_holds(self, c, m, k)

    def coefficients_at(self, excess: float = 0.0, alpha2: float = 0.01, alpha3: float = 0.01,
                        m: float = 2.0, k: float = 2.0) -> OperatorCoefficients:
        """Coefficients whose reduced gap equals ``minimal_gap + excess``."""
        if self.order == 2:
            return OperatorCoefficients(self.minimal_gap + excess + alpha2, alpha2, 0.0)
        load = (m * m + 3 * m * (k - 1)) * alpha3
        return OperatorCoefficients(self.minimal_gap + excess + alpha2 + load, alpha2, alpha3)


def get_theorem(theorem_id: str, C: float | None = None, D: float | None = None) -> TheoremSpec:
    """Look up ``T4.1`` .. ``T4.8`` (second order) or ``T5.1`` .. ``T5.8`` (third order)."""
    tid = theorem_id.strip().upper()
    try:
        sec, num = tid.lstrip("T").split(".")
        sec, num = int(sec), int(num)
        kind = THEOREM_DOMAINS[num]
        if sec not in (4, 5):
            raise ValueError
    except (ValueError, KeyError):
        raise ValueError(f"unknown theorem id {theorem_id!r}; expected one of {THEOREM_IDS}") from None
    if kind == "janowski":
        if C is None or D is None:
            raise ValueError(f"{tid} needs C and D")
        domain = TargetDomain.janowski(C, D)
    else:
        domain = TargetDomain.named(kind)
    return TheoremSpec(f"T{sec}.{num}", domain, 2 if sec == 4 else 3)


def threshold_holds(spec: TheoremSpec, c: OperatorCoefficients, m: float = 2.0, k: float = 2.0) -> bool:
    """The theorem's hypothesis on the coefficients, as stated, with exact constants."""
    if spec.order == 3:
        check_order(3, m, k)
    a1, a2 = c.alpha1, c.alpha2
    d = spec.reduced_gap(c, m, k)
    kind = spec.domain.kind
    if kind == "janowski":
        C, D = spec.domain.C, spec.domain.D
        return d * (1 - D * D) >= E * (C - D) * (1 + abs(D))
    if kind == "sqrt1pz":
        if spec.order == 2:
            return a1 * a1 - 2 * a1 * a2 + a2 * a2 - 2 * E * a1 + 2 * E * a2 >= E * E
        return d * (d - 2 * E) >= E * E
    if kind == "sigmoid":
        return d >= E * solve_r0()
    if kind == "crescent":
        return d >= math.sqrt(2) * E
    if kind == "sine":
        return d >= E * math.sinh(1)
    if kind == "cardioid":
        return d >= E * E
    if kind == "arcsinh":
        return 2 * d >= math.pi * E
    return d >= E * (E - 1)


# --------------------------------------------------------------------------
# Grid sweeps


@dataclass(frozen=True)
class GridSpec:
    n_theta: int = 1024
    m_values: tuple | None = None
    imag_values: tuple = (0.0, 1.0, -1.0, 10.0, -10.0)
    slack_values: tuple = (0.0, 1.0, 10.0)

    def ms(self, order: int) -> tuple:
        if self.m_values is not None:
            return tuple(self.m_values)
        return (1.0, 1.5, 2.0, 4.0, 8.0) if order == 2 else (2.0, 3.0, 4.0, 8.0)

    @staticmethod
    def ks(m: float) -> tuple:
        return (m, m + 1.0, 2.0 * m)


@dataclass
class ExclusionReport:
    theorem: str
    domain: str
    order: int
    coefficients: tuple
    threshold_holds: bool
    status: str
    samples: int
    min_margin: float
    argmin: dict
    containment_hits: int
    min_modulus: float
    proof_constant: float
    pairs: list = field(default_factory=list)
    skipped_pairs: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def to_dict(self) -> dict:
        return asdict(self)


def _margin(kind: str, const: float, modulus: np.ndarray) -> np.ndarray:
    if kind == "sqrt1pz":
        return modulus * (modulus - 2) - 1
    return modulus - const


def _sweep_pair(spec, c, grid, theta, m, k):
    """Min margin, its location, and containment hits over one (m, k) pair."""
    b, l, hq = base_arrays(theta)
    zeta = np.exp(1j * theta)
    s = m * zeta * np.exp(zeta)
    abs_s = m * b
    imag = np.asarray(grid.imag_values, dtype=np.float64)
    slack = np.asarray(grid.slack_values, dtype=np.float64)
    third = spec.order == 3
    u_imag = imag if third else np.zeros(1)
    u_slack = slack if third else np.zeros(1)

    # axes: theta, t_imag, t_slack, u_imag, u_slack
    S = abs_s[:, None, None, None, None]
    t_factor = (m * (1 + l) - 1)[:, None, None, None, None] \
        + slack[None, None, :, None, None] * S + 1j * imag[None, :, None, None, None] * S
    factor = c.alpha1 + c.alpha2 * t_factor
    if third:
        W = (m * m * hq + 3 * m * (k - 1) * l)[:, None, None, None, None]
        u_factor = W + u_slack[None, None, None, None, :] * S + 1j * u_imag[None, None, None, :, None] * S
        factor = factor + c.alpha3 * u_factor
    w = s[:, None, None, None, None] * factor
    modulus = np.abs(w)
    margin = _margin(spec.domain.kind, spec.proof_constant, modulus)
    hits = int(np.count_nonzero(contains(spec.domain, 1 + w)))

    idx = np.unravel_index(int(np.argmin(margin)), margin.shape)
    i_th, i_ti, i_ts, i_ui, i_us = idx
    sc = float(abs_s[i_th])
    where = {
        "theta": float(theta[i_th]),
        "m": float(m),
        "k": float(k) if third else None,
        "t_slack": float(slack[i_ts] * sc),
        "t_imag": float(imag[i_ti] * sc),
        "u_slack": float(u_slack[i_us] * sc) if third else None,
        "u_imag": float(u_imag[i_ui] * sc) if third else None,
    }
    return float(margin[idx]), where, hits, int(margin.size), float(modulus.min())


def _pairs(spec, c, grid, m, k, filter_by_threshold):
    if spec.order == 2:
        return [(mm, None) for mm in grid.ms(2)], []
    check_order(3, m, k)
    candidates = [(mm, kk) for mm in grid.ms(3) for kk in grid.ks(mm)]
    if (m, k) not in candidates:
        candidates.insert(0, (m, k))
    if not filter_by_threshold:
        return [(m, k)], []
    keep = [p for p in candidates if p == (m, k) or threshold_holds(spec, c, *p)]
    skipped = [p for p in candidates if p not in keep]
    return keep, skipped


def _sweep(spec, c, grid, pairs):
    theta = 2 * np.pi * np.arange(grid.n_theta) / grid.n_theta
    workers = min(thread_cap(), len(pairs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda p: _sweep_pair(spec, c, grid, theta, *p), pairs))
    else:
        parts = [_sweep_pair(spec, c, grid, theta, *p) for p in pairs]
    best = min(parts, key=lambda part: part[0])
    hits = sum(part[2] for part in parts)
    samples = sum(part[3] for part in parts)
    min_mod = min(part[4] for part in parts)
    return best[0], best[1], hits, samples, min_mod


def verify_exclusion(spec: TheoremSpec, c: OperatorCoefficients, grid: GridSpec | None = None,
                     m: float = 2.0, k: float = 2.0) -> ExclusionReport:
    """Sample admissibility configurations and certify ``xi`` avoids Omega.

    Second order sweeps every grid ``m``.  Third order sweeps the grid pairs
    ``k >= m >= 2`` on which the hypothesis holds, always including the
    caller's ``(m, k)``; the hypothesis depends on ``(m, k)`` so pairs where it
    fails are listed in ``skipped_pairs`` instead of being certified.
    """
    if (c.order == 3) != (spec.order == 3):
        raise ValueError(f"{spec.id} is order {spec.order} but coefficients are order {c.order}")
    grid = grid or GridSpec()
    holds = threshold_holds(spec, c, m, k)
    pairs, skipped = _pairs(spec, c, grid, m, k, filter_by_threshold=True)
    margin, where, hits, samples, min_mod = _sweep(spec, c, grid, pairs)
    if not holds:
        status = "ADVISORY"
    elif margin >= -PASS_TOL and hits == 0:
        status = "PASS"
    else:
        status = "FAIL"
    return ExclusionReport(
        theorem=spec.id,
        domain=spec.domain.label,
        order=spec.order,
        coefficients=c.as_tuple(),
        threshold_holds=holds,
        status=status,
        samples=samples,
        min_margin=margin,
        argmin=where,
        containment_hits=hits,
        min_modulus=min_mod,
        proof_constant=spec.proof_constant,
        pairs=[list(p) for p in pairs],
        skipped_pairs=[list(p) for p in skipped],
    )


def estimate_min_gap(spec: TheoremSpec, c: OperatorCoefficients, grid: GridSpec | None = None,
                     m: float = 2.0, k: float = 2.0) -> float:
    """Minimum exclusion margin over the grid, hypothesis ignored (third order uses ``(m, k)`` only)."""
    grid = grid or GridSpec()
    pairs, _ = _pairs(spec, c, grid, m, k, filter_by_threshold=False)
    return _sweep(spec, c, grid, pairs)[0]


def count_containment(spec: TheoremSpec, c: OperatorCoefficients, grid: GridSpec | None = None,
                      m: float = 2.0, k: float = 2.0) -> int:
    """Number of sampled ``xi`` values that land inside Omega."""
    grid = grid or GridSpec()
    pairs, _ = _pairs(spec, c, grid, m, k, filter_by_threshold=False)
    return _sweep(spec, c, grid, pairs)[2]


def _bisect(pred, lo, hi, tol):
    """Smallest x in [lo, hi] with pred(x) true, assuming pred is monotone; ``None`` if pred(hi) fails."""
    if not pred(hi):
        return None
    if pred(lo):
        return lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def find_threshold(spec: TheoremSpec, alpha2: float = 0.01, alpha3: float = 0.01,
                   m: float = 2.0, k: float = 2.0, grid: GridSpec | None = None,
                   lo: float = 0.0, hi: float = 20.0, tol: float = 1e-9,
                   containment: bool = True, containment_tol: float = 1e-6) -> dict:
    """Bisect on the reduced gap for the smallest value whose sampled margin is non-negative.

    With ``containment`` also bisect for the smallest gap at which no sampled
    ``xi`` enters Omega, which shows how much room the modulus argument leaves.
    """
    grid = grid or GridSpec()
    load = (m * m + 3 * m * (k - 1)) * alpha3 if spec.order == 3 else 0.0
    a3 = alpha3 if spec.order == 3 else 0.0

    def coeffs(d):
        return OperatorCoefficients(d + alpha2 + load, alpha2, a3)

    gap_threshold = _bisect(lambda d: estimate_min_gap(spec, coeffs(d), grid, m, k) >= 0.0, lo, hi, tol)
    out = {
        "theorem": spec.id,
        "domain": spec.domain.label,
        "bracket": [lo, hi],
        "alpha2": alpha2,
        "alpha3": a3,
        "m": m if spec.order == 3 else None,
        "k": k if spec.order == 3 else None,
        "empirical_gap_threshold": gap_threshold,
        "proof_threshold": spec.minimal_gap,
        "containment_threshold": None,
    }
    if containment:
        out["containment_threshold"] = _bisect(
            lambda d: count_containment(spec, coeffs(d), grid, m, k) == 0, lo, hi, containment_tol)
    return out
