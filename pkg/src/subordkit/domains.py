"""Target domains Omega = h(D) and the log-lemma helpers.

Every domain map h satisfies h(0) = 1.  Membership predicates work on numpy
arrays and treat points within ``BOUNDARY_TOL`` of the boundary as outside,
the conservative choice when certifying that a value avoids Omega.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .errors import BoundaryBand, BranchCut, TooCloseToBoundary

E = math.e
BOUNDARY_TOL = 1e-12
LEMMA_BAND = 1e-6
CARDIOID_SAMPLES = 4096

DOMAIN_IDS = ("janowski", "sqrt1pz", "sigmoid", "crescent", "sine", "cardioid", "arcsinh", "exp")

# Domains whose literal set from the closed-form predicate is larger than h(D).
# ``strict`` restricts to the half-plane Re w > 0 that contains h(D).
_STRICT_DEFAULT = {"sqrt1pz": False, "crescent": True}


@dataclass(frozen=True)
class TargetDomain:
    kind: str
    C: float | None = None
    D: float | None = None
    strict: bool = False

    def __post_init__(self):
        if self.kind not in DOMAIN_IDS:
            raise ValueError(f"unknown domain {self.kind!r}; expected one of {DOMAIN_IDS}")
        if self.kind == "janowski":
            if self.C is None or self.D is None:
                raise ValueError("janowski domain needs C and D")
            if not (-1.0 < self.D < self.C <= 1.0):
                raise ValueError(f"janowski needs -1 < D < C <= 1, got C={self.C}, D={self.D}")

    @classmethod
    def named(cls, kind: str, C: float | None = None, D: float | None = None,
              strict: bool | None = None) -> "TargetDomain":
        if strict is None:
            strict = _STRICT_DEFAULT.get(kind, False)
        if kind != "janowski":
            C = D = None
        return cls(kind, C, D, strict)

    @classmethod
    def janowski(cls, C: float, D: float) -> "TargetDomain":
        return cls("janowski", float(C), float(D))

    @property
    def label(self) -> str:
        if self.kind == "janowski":
            return f"janowski(C={self.C:g}, D={self.D:g})"
        return self.kind

    @property
    def center(self) -> complex:
        if self.kind == "janowski":
            return complex((1 - self.C * self.D) / (1 - self.D**2))
        return 1.0 + 0j

    @property
    def radius(self) -> float | None:
        """Radius of the disk Omega for janowski, ``None`` otherwise."""
        if self.kind == "janowski":
            return (self.C - self.D) / (1 - self.D**2)
        return None

    @property
    def proof_constant(self) -> float:
        """Lower bound the exclusion argument needs on ``|alpha1 s + alpha2 t + alpha3 u|``."""
        k = self.kind
        if k == "janowski":
            return (self.C - self.D) * (1 + abs(self.D)) / (1 - self.D**2)
        if k == "sqrt1pz":
            return 1 + math.sqrt(2)
        if k == "sigmoid":
            return solve_r0()
        if k == "crescent":
            return math.sqrt(2)
        if k == "sine":
            return math.sinh(1)
        if k == "cardioid":
            return E
        if k == "arcsinh":
            return math.pi / 2
        return E - 1


def _h(kind, C, D, z):
    if kind == "janowski":
        return (1 + C * z) / (1 + D * z)
    if kind == "sqrt1pz":
        return np.sqrt(1 + z)
    if kind == "sigmoid":
        return 2 / (1 + np.exp(-z))
    if kind == "crescent":
        return z + np.sqrt(1 + z * z)
    if kind == "sine":
        return 1 + np.sin(z)
    if kind == "cardioid":
        return 1 + z * np.exp(z)
    if kind == "arcsinh":
        return 1 + np.arcsinh(z)
    return np.exp(z)


def h_value(d: TargetDomain, z):
    """The domain map h evaluated at points of the closed disk."""
    z = np.asarray(z, dtype=np.complex128)
    out = _h(d.kind, d.C, d.D, z)
    return complex(out) if out.ndim == 0 else out


def boundary_point(d: TargetDomain, theta):
    """``h(exp(i theta))`` with principal branches.

    Raises :class:`BranchCut` for the square-root map at theta = pi, where
    ``1 + z`` vanishes.
    """
    theta = np.asarray(theta, dtype=np.float64)
    if d.kind == "sqrt1pz":
        reduced = np.mod(theta, 2 * np.pi)
        if np.any(np.abs(reduced - np.pi) <= 1e-12):
            raise BranchCut("sqrt(1+z) has its branch point at theta = pi")
    return h_value(d, np.exp(1j * theta))


def boundary_samples(d: TargetDomain, n: int) -> np.ndarray:
    theta = 2 * np.pi * np.arange(n) / n
    if d.kind == "sqrt1pz" and n % 2 == 0:
        theta[n // 2] = np.nextafter(np.pi, 0.0)
    return boundary_point(d, theta)


@lru_cache(maxsize=8)
def _cardioid_polyline(n: int):
    b = boundary_samples(TargetDomain.named("cardioid"), n)
    bx = np.ascontiguousarray(b.real)
    by = np.ascontiguousarray(b.imag)
    # distance from 1 to the polyline edges bounds an inscribed disk
    p0 = b - 1.0
    p1 = np.roll(b, -1) - 1.0
    seg = p1 - p0
    t = np.clip(-(p0.real * seg.real + p0.imag * seg.imag) / np.abs(seg) ** 2, 0.0, 1.0)
    r_in = float(np.min(np.abs(p0 + t * seg)))
    r_out = float(np.max(np.abs(p0)))
    bx.flags.writeable = False
    by.flags.writeable = False
    return bx, by, r_in, r_out


def _cardioid_contains(w: np.ndarray, n: int) -> np.ndarray:
    bx, by, r_in, r_out = _cardioid_polyline(n)
    dist = np.abs(w - 1.0)
    out = dist < r_in - BOUNDARY_TOL
    unsure = ~out & (dist <= r_out + BOUNDARY_TOL) & np.isfinite(w)
    if np.any(unsure):
        wu = w[unsure]
        out[unsure] = kernels.crossing_winding(bx, by, np.ascontiguousarray(wu.real),
                                               np.ascontiguousarray(wu.imag)) == 1
    return out


def contains(d: TargetDomain, w, cardioid_samples: int = CARDIOID_SAMPLES):
    """True where ``w`` lies strictly inside Omega."""
    w_arr = np.asarray(w, dtype=np.complex128)
    flat = w_arr.ravel()
    tol = BOUNDARY_TOL
    k = d.kind
    with np.errstate(all="ignore"):
        if k == "janowski":
            out = np.abs(flat - d.center) < d.radius - tol
        elif k == "sqrt1pz":
            out = np.abs(flat * flat - 1) < 1 - tol
            if d.strict:
                out &= flat.real > 0
        elif k == "sigmoid":
            out = np.abs(np.log(flat / (2 - flat))) < 1 - tol
        elif k == "crescent":
            out = np.abs(flat * flat - 1) < 2 * np.abs(flat) - tol
            if d.strict:
                out &= flat.real > 0
        elif k == "sine":
            a = np.arcsin(flat - 1)
            out = (np.abs(a) < 1 - tol) & (np.abs(a.real) <= np.pi / 2)
        elif k == "arcsinh":
            v = flat - 1
            out = (np.abs(v.imag) < np.pi / 2) & (np.abs(np.sinh(v)) < 1 - tol)
        elif k == "exp":
            out = np.abs(np.log(flat)) < 1 - tol
        else:
            out = _cardioid_contains(flat, cardioid_samples)
    out = out & np.isfinite(flat)
    if w_arr.ndim == 0:
        return bool(out[0])
    return out.reshape(w_arr.shape)


def winding_membership(boundary, w, tol: float = 1e-6, proximity: float = 1e-9) -> bool:
    """Membership via the total argument change of ``boundary - w``.

    ``boundary`` is a closed curve sampled counter-clockwise (at least 256
    points, last point not repeated).  Raises :class:`TooCloseToBoundary` when
    ``w`` is within ``proximity`` of a sample.
    """
    b = np.asarray(boundary, dtype=np.complex128)
    if b.shape[0] < 256:
        raise ValueError("winding membership needs at least 256 boundary samples")
    w = complex(w)
    total, nearest = kernels.argument_change(
        np.ascontiguousarray(b.real), np.ascontiguousarray(b.imag),
        np.array([w.real]), np.array([w.imag]))
    if nearest[0] <= proximity:
        raise TooCloseToBoundary(f"probe {w} is {nearest[0]:.3g} from a boundary sample")
    return bool(abs(total[0] - 2 * np.pi) <= tol)


_ENCLOSING_KINDS = ("sine", "cardioid", "arcsinh", "exp", "crescent")


def enclosing_radius(d: TargetDomain, n: int = 4096) -> float:
    """Largest sampled ``|h(e^{i theta}) - 1|``: radius of the smallest disk about 1 holding Omega."""
    if n < 1024:
        raise ValueError("enclosing_radius needs n >= 1024")
    if d.kind not in _ENCLOSING_KINDS:
        raise ValueError(f"enclosing_radius is defined for {_ENCLOSING_KINDS}")
    return float(np.max(np.abs(boundary_samples(d, n) - 1)))


# --------------------------------------------------------------------------
# Lemma helpers


def log_lemma_check(z: complex) -> tuple[float, bool, bool]:
    """Evaluate both sides of the claim ``|log(1+z)| >= 1  <=>  |z| >= e - 1``.

    Returns ``(|log(1+z)|, predicted, actual)`` with ``predicted = |z| >= e-1``
    and ``actual = |log(1+z)| >= 1``.
    """
    z = complex(z)
    if abs(abs(z) - (E - 1)) <= LEMMA_BAND:
        raise BoundaryBand(f"|z| = {abs(z)!r} is inside the band around e - 1")
    w = 1 + z
    lhs = math.inf if w == 0 else abs(cmath.log(w))
    return lhs, abs(z) >= E - 1, lhs >= 1


def log_lemma_batch(z):
    """Vectorised :func:`log_lemma_check`; band points come back masked out.

    Returns ``(lhs, predicted, actual, valid)`` arrays.
    """
    z = np.asarray(z, dtype=np.complex128)
    valid = np.abs(np.abs(z) - (E - 1)) > LEMMA_BAND
    with np.errstate(divide="ignore"):
        lhs = np.abs(np.log(1 + z))
    return lhs, np.abs(z) >= E - 1, lhs >= 1, valid


def mobius_log_min(R: float, n: int = 4096) -> float:
    """Minimum of ``|log((1+z)/(1-z))|`` over ``n`` samples of ``|z| = R``."""
    if not 0.0 < R < 1.0:
        raise ValueError("R must lie in (0, 1)")
    if n < 4096:
        raise ValueError("mobius_log_min needs n >= 4096")
    z = R * np.exp(2j * np.pi * np.arange(n) / n)
    return float(np.min(np.abs(np.log((1 + z) / (1 - z)))))


_COT1 = math.cos(1) / math.sin(1)


def r0_residual(r: float) -> float:
    return r * r + 2 * _COT1 * r - 1


@lru_cache(maxsize=None)
def solve_r0(tol: float = 1e-6) -> float:
    """Positive root of ``r**2 + 2 cot(1) r - 1``, bracketed on [0, 1]."""
    if not 0.0 < tol <= 1e-6:
        raise ValueError("tol must lie in (0, 1e-6]")
    # Brent converges far past ``tol``; asking for 1e-15 keeps the residual at rounding level.
    return brentq(r0_residual, 0.0, 1.0, xtol=min(tol, 1e-15), rtol=4 * np.finfo(float).eps)


def r0_closed_form() -> float:
    """``-cot(1) + csc(1)``, the quadratic-formula root."""
    return -_COT1 + 1 / math.sin(1)
