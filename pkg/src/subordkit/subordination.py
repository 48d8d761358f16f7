"""Numerical subordination tests, counterexample search, and the corollary identities.

Subordination ``p < h`` for univalent ``h`` reduces to ``p(0) = h(0)`` and
``p(D) in h(D)``; we test image containment on the nested circles
``|z| in {0.5, 0.9, rho_max}``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import kernels
from .admissibility import OperatorCoefficients, TheoremSpec, threshold_holds
from .domains import TargetDomain, contains
from .errors import CenterMismatch, IdentityMismatch
from .series import (TaylorSeries, circle_points, divide, eval_on_circle, shift_down,
                     z_pow_derivative)

E = math.e
EXP_DOMAIN = TargetDomain.named("exp")
DEFAULT_RHO_MAX = 0.995
DEFAULT_SAMPLES = 256
IDENTITY_TOL = 1e-10


def _radii(rho_max: float) -> tuple:
    if not 0.9 <= rho_max <= 0.999:
        raise ValueError("rho_max must lie in [0.9, 0.999]")
    return (0.5, 0.9, rho_max)


def is_subordinate(p: TaylorSeries, d: TargetDomain, rho_max: float = DEFAULT_RHO_MAX,
                   n: int = DEFAULT_SAMPLES) -> bool:
    if n < 256:
        raise ValueError("need at least 256 samples per circle")
    if abs(p.coeffs[0] - 1.0) > 1e-9:
        raise CenterMismatch(f"p(0) = {p.coeffs[0]} but h(0) = 1")
    for rho in _radii(rho_max):
        if not np.all(contains(d, eval_on_circle(p, rho, n))):
            return False
    return True


def failing_circles(p: TaylorSeries, d: TargetDomain, radii, n: int = DEFAULT_SAMPLES) -> list:
    """Radii whose sampled image leaves Omega (no early exit)."""
    return [rho for rho in radii if not np.all(contains(d, eval_on_circle(p, rho, n)))]


def _operator_weights(c: OperatorCoefficients, order: int) -> np.ndarray:
    j = np.arange(order + 1, dtype=np.float64)
    return c.alpha1 * j + c.alpha2 * j * (j - 1) + c.alpha3 * j * (j - 1) * (j - 2)


def lhs_operator(p: TaylorSeries, c: OperatorCoefficients) -> TaylorSeries:
    """``1 + a1 z p' + a2 z^2 p'' + a3 z^3 p'''``."""
    out = TaylorSeries.constant(1.0, p.order) + c.alpha1 * z_pow_derivative(p, 1) \
        + c.alpha2 * z_pow_derivative(p, 2)
    if c.alpha3:
        out = out + c.alpha3 * z_pow_derivative(p, 3)
    return out


def third_order_side_condition(p: TaylorSeries, m: float, rho: float = 0.999, n: int = 1024) -> bool:
    """Sufficient check of ``|z p'(z) e^zeta| <= m``: worst ``|e^zeta|`` on the circle is e."""
    if not p.in_h1n(2):
        raise ValueError("side condition applies to p in H[1, n] with n >= 2")
    return E * float(np.max(np.abs(eval_on_circle(z_pow_derivative(p, 1), rho, n)))) <= m


# --------------------------------------------------------------------------
# Counterexample search


@dataclass
class ImplicationReport:
    theorem: str
    domain: str
    coefficients: tuple
    trials: int
    hypothesis_hits: int
    violations: int
    worst_margin: float | None
    seed: int
    advisory: bool
    side_condition_rejections: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def random_p_coeffs(rng: np.random.Generator, trials: int, degree: int = 8, first: int = 1,
                    scale: float = 0.3, spread: float = 1e-2) -> np.ndarray:
    """Rows ``1 + sum_{j=first}^{degree} c_j z^j``.

    ``c_j`` is standard complex Gaussian times ``scale * lam / j^2``, where each
    row draws one ``lam`` log-uniformly from ``[spread, 1]``.  Large operator
    coefficients push most unit-scale rows outside the hypothesis, and the
    spread keeps some rows landing near the boundary of Omega.
    """
    out = np.zeros((trials, degree + 1), dtype=np.complex128)
    out[:, 0] = 1.0
    j = np.arange(first, degree + 1)
    g = (rng.standard_normal((trials, j.size)) + 1j * rng.standard_normal((trials, j.size))) / math.sqrt(2)
    lam = spread ** rng.random(trials) if spread < 1 else np.ones(trials)
    out[:, first:] = g * (scale / j**2) * lam[:, None]
    return out


def _rows_inside(coeffs: np.ndarray, d: TargetDomain, radii, n: int) -> np.ndarray:
    """Per row: does the polynomial map every sampled circle into Omega?"""
    alive = np.ones(coeffs.shape[0], dtype=bool)
    for rho in radii:
        idx = np.flatnonzero(alive)
        if idx.size == 0:
            break
        vals = kernels.horner(np.ascontiguousarray(coeffs[idx]), circle_points(rho, n))
        alive[idx] = contains(d, vals).all(axis=1)
    return alive


def _exp_margin(coeffs: np.ndarray, radii, n: int) -> np.ndarray:
    """Per row ``min (1 - |log p|)`` over the sampled circles; negative means p leaves Delta_e."""
    z = np.concatenate([circle_points(rho, n) for rho in radii])
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.abs(np.log(kernels.horner(np.ascontiguousarray(coeffs), z)))
    vals = np.where(np.isfinite(vals), vals, np.inf)
    return 1.0 - vals.max(axis=1)


def falsify_implication(spec: TheoremSpec, c: OperatorCoefficients, trials: int = 10_000,
                        seed: int = 0, m: float = 2.0, k: float = 2.0, degree: int = 8,
                        scale: float = 0.3, spread: float = 1e-2, rho_max: float = DEFAULT_RHO_MAX,
                        n: int = DEFAULT_SAMPLES, batch: int = 2048) -> ImplicationReport:
    """Random search for p with ``LHS(p) < h`` but ``p`` not subordinate to ``e^z``.

    Third-order trials draw p from H[1, 2] and discard those failing the side
    condition.  A report with ``advisory=True`` was run outside the theorem's
    hypothesis, so violations there are not counterexamples.
    """
    if (c.order == 3) != (spec.order == 3):
        raise ValueError(f"{spec.id} is order {spec.order} but coefficients are order {c.order}")
    radii = _radii(rho_max)
    rng = np.random.default_rng(seed)
    first = 2 if spec.order == 3 else 1
    weights = _operator_weights(c, degree)
    hits = violations = rejected = 0
    worst = math.inf
    side_z = circle_points(0.999, 1024)
    j = np.arange(degree + 1)

    for lo in range(0, trials, batch):
        p = random_p_coeffs(rng, min(batch, trials - lo), degree, first, scale, spread)
        if spec.order == 3:
            zp = kernels.horner(np.ascontiguousarray(p * j), side_z)
            ok = E * np.abs(zp).max(axis=1) <= m
            rejected += int(np.count_nonzero(~ok))
            p = p[ok]
        lhs = p * weights
        lhs[:, 0] = 1.0
        hit = _rows_inside(lhs, spec.domain, radii, n)
        hits += int(np.count_nonzero(hit))
        if np.any(hit):
            margin = _exp_margin(p[hit], radii, n)
            inside = _rows_inside(p[hit], EXP_DOMAIN, radii, n)
            violations += int(np.count_nonzero(~inside))
            worst = min(worst, float(margin.min()))

    return ImplicationReport(
        theorem=spec.id,
        domain=spec.domain.label,
        coefficients=c.as_tuple(),
        trials=trials,
        hypothesis_hits=hits,
        violations=violations,
        worst_margin=None if math.isinf(worst) else worst,
        seed=seed,
        advisory=not threshold_holds(spec, c, m, k),
        side_condition_rejections=rejected,
    )


# --------------------------------------------------------------------------
# Starlike quantities and the corollary expressions


@dataclass(frozen=True)
class StarlikeQuantities:
    A1: TaylorSeries
    A2: TaylorSeries
    A3: TaylorSeries
    A4: TaylorSeries


def _check_class_a(f: TaylorSeries) -> None:
    if not f.is_class_a():
        raise ValueError("f must be normalised: f(0) = 0, f'(0) = 1")
    if f.order < 2:
        raise ValueError("f needs truncation order >= 2")


def starlike_quantities(f: TaylorSeries) -> StarlikeQuantities:
    """``A_j = z^j f^{(j)} / f`` with the common factor z cancelled before dividing."""
    _check_class_a(f)
    g = shift_down(f)
    a = [divide(shift_down(z_pow_derivative(f, j)), g) for j in (1, 2, 3, 4)]
    return StarlikeQuantities(*a)


def starlike_p(f: TaylorSeries) -> TaylorSeries:
    """``p = z f' / f``."""
    return starlike_quantities(f).A1


def y_f_printed(f: TaylorSeries, c: OperatorCoefficients) -> TaylorSeries:
    q = starlike_quantities(f)
    A1, A2, A3 = q.A1, q.A2, q.A3
    one = TaylorSeries.constant(1.0, A1.order)
    return (one + c.alpha1 * (A2 - A1 * A1 + A1)
            + c.alpha2 * (A3 + 2 * A2 + 2 * A1 ** 3 - 2 * A1 * A1 - 3 * A1 * A2))


def Y_f(f: TaylorSeries, c: OperatorCoefficients) -> TaylorSeries:
    """The second-order corollary expression, audited against the direct operator.

    Raises :class:`IdentityMismatch` if the closed form and ``lhs_operator(zf'/f)``
    disagree beyond ``1e-10`` (relative to coefficient size, floored at 1).
    """
    if c.alpha3:
        raise ValueError("Y_f is the second-order expression; alpha3 must be 0")
    printed = y_f_printed(f, c)
    direct = lhs_operator(starlike_p(f), c)
    diff = np.abs(printed.coeffs - direct.coeffs)
    scale = np.maximum(1.0, np.abs(direct.coeffs))
    if np.any(diff > IDENTITY_TOL * scale):
        raise IdentityMismatch(f"Y_f differs from the direct operator by {diff.max():.3g}")
    return printed


def chi_f_direct(f: TaylorSeries, c: OperatorCoefficients) -> TaylorSeries:
    """Third-order operator applied to ``p = z f'/f``: the authoritative chi_f."""
    return lhs_operator(starlike_p(f), c)


def chi_f_printed(f: TaylorSeries, c: OperatorCoefficients) -> TaylorSeries:
    """The third-order corollary expression exactly as printed, ``(6 A1)^4`` included."""
    q = starlike_quantities(f)
    A1, A2, A3, A4 = q.A1, q.A2, q.A3, q.A4
    a1, a2, a3 = c.as_tuple()
    one = TaylorSeries.constant(1.0, A1.order)
    return (one + a1 * A1 + (a1 + 2 * a2) * (A2 - A1 * A1)
            + (a2 + 3 * a3) * (2 * A1 ** 3 - 3 * A1 * A2 + 3 * A3)
            + a3 * (A4 - 3 * A2 * A2 - (6 * A1) ** 4 - 4 * A1 * A3 + 12 * A1 * A1 * A2))


def chi_f_discrepancy(f: TaylorSeries, c: OperatorCoefficients) -> dict:
    """Coefficientwise comparison of the printed chi_f with the direct operator."""
    printed = chi_f_printed(f, c)
    direct = chi_f_direct(f, c)
    diff = printed.coeffs - direct.coeffs
    differing = np.flatnonzero(np.abs(diff) > IDENTITY_TOL * np.maximum(1.0, np.abs(direct.coeffs)))
    c0 = OperatorCoefficients(c.alpha1, c.alpha2, 0.0)
    y = y_f_printed(f, c0)
    y_limit = float(np.max(np.abs(chi_f_direct(f, c0).coeffs - y.coeffs)))
    return {
        "max_abs_diff": float(np.max(np.abs(diff))),
        "constant_term_diff": [float(diff[0].real), float(diff[0].imag)],
        "first_differing_degree": int(differing[0]) if differing.size else None,
        "direct_alpha3_zero_vs_Y_f": y_limit,
    }


def classify_starlike_exp(f: TaylorSeries, rho_max: float = DEFAULT_RHO_MAX,
                          n: int = DEFAULT_SAMPLES) -> bool:
    """Membership of f in S*_e: ``z f'/f`` subordinate to ``e^z``."""
    _check_class_a(f)
    return is_subordinate(starlike_p(f), EXP_DOMAIN, rho_max, n)
