"""Truncated power series about the origin.

A :class:`TaylorSeries` holds complex coefficients ``c_0 .. c_N``.  Every
binary operation truncates to the smaller of the two operand orders, so an
answer never claims more accuracy than its inputs carry.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernels
from .errors import NearZeroLeadingCoefficient

DEFAULT_ORDER = 32
DIVISION_GUARD = 1e-12


@dataclass(frozen=True, eq=False)
class TaylorSeries:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).ravel()
        if c.shape[0] < 2:
            raise ValueError("a TaylorSeries needs order N >= 1 (at least two coefficients)")
        if not np.all(np.isfinite(c)):
            raise ValueError("non-finite coefficient")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    # -- construction ------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[complex], order: int | None = None) -> "TaylorSeries":
        """Build a series from the leading coefficients of an exact polynomial.

        With ``order`` given, missing higher coefficients are zero (the input is
        taken as exact) and any beyond ``order`` are dropped.
        """
        c = np.asarray(list(coeffs), dtype=np.complex128)
        if order is None:
            order = max(1, c.shape[0] - 1)
        out = np.zeros(order + 1, dtype=np.complex128)
        n = min(order + 1, c.shape[0])
        out[:n] = c[:n]
        return cls(out)

    @classmethod
    def constant(cls, value: complex, order: int = DEFAULT_ORDER) -> "TaylorSeries":
        return cls.from_coeffs([value], order)

    @classmethod
    def identity(cls, order: int = DEFAULT_ORDER) -> "TaylorSeries":
        return cls.from_coeffs([0.0, 1.0], order)

    @classmethod
    def exp_series(cls, scale: complex = 1.0, order: int = DEFAULT_ORDER) -> "TaylorSeries":
        """Series of ``exp(scale * z)``."""
        return cls([scale**k / math.factorial(k) for k in range(order + 1)])

    @classmethod
    def geometric(cls, order: int = DEFAULT_ORDER) -> "TaylorSeries":
        """Series of ``1/(1 - z)``."""
        return cls(np.ones(order + 1))

    # -- basic properties --------------------------------------------------

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    def truncate(self, order: int) -> "TaylorSeries":
        if order > self.order:
            raise ValueError(f"cannot raise truncation order {self.order} to {order}")
        return TaylorSeries(self.coeffs[: order + 1])

    def is_class_a(self, tol: float = 1e-12) -> bool:
        return abs(self.coeffs[0]) <= tol and abs(self.coeffs[1] - 1.0) <= tol

    def in_h1n(self, n: int, tol: float = 1e-12) -> bool:
        """Membership in H[1, n]: c_0 = 1 and c_j = 0 for 1 <= j < n."""
        if abs(self.coeffs[0] - 1.0) > tol:
            return False
        return bool(np.all(np.abs(self.coeffs[1:n]) <= tol))

    def allclose(self, other: "TaylorSeries", tol: float) -> bool:
        n = min(self.order, other.order) + 1
        return bool(np.all(np.abs(self.coeffs[:n] - other.coeffs[:n]) <= tol))

    def __repr__(self):
        return f"TaylorSeries(order={self.order}, coeffs={self.coeffs[:6]}{'...' if self.order > 5 else ''})"

    # -- arithmetic --------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, TaylorSeries):
            n = min(self.order, other.order) + 1
            return self.coeffs[:n], other.coeffs[:n]
        return None

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            c = self.coeffs.copy()
            c[0] += other
            return TaylorSeries(c)
        return TaylorSeries(pair[0] + pair[1])

    __radd__ = __add__

    def __neg__(self):
        return TaylorSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TaylorSeries):
            return multiply(self, other)
        return TaylorSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TaylorSeries):
            return divide(self, other)
        return TaylorSeries(self.coeffs / other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = TaylorSeries.constant(1.0, self.order)
        for _ in range(k):
            out = multiply(out, self)
        return out

    def __call__(self, z):
        return evaluate(self, z)


def multiply(a: TaylorSeries, b: TaylorSeries) -> TaylorSeries:
    """Cauchy product truncated to ``min(a.order, b.order)``."""
    n = min(a.order, b.order) + 1
    return TaylorSeries(np.convolve(a.coeffs[:n], b.coeffs[:n])[:n])


def divide(a: TaylorSeries, b: TaylorSeries) -> TaylorSeries:
    """Quotient ``q`` with ``q * b == a`` to truncation order.

    Raises :class:`NearZeroLeadingCoefficient` if ``|b_0| <= 1e-12``.
    """
    b0 = b.coeffs[0]
    if abs(b0) <= DIVISION_GUARD:
        raise NearZeroLeadingCoefficient(f"|b_0| = {abs(b0):.3g} is below the division guard")
    n = min(a.order, b.order) + 1
    ac, bc = a.coeffs[:n], b.coeffs[:n]
    q = np.zeros(n, dtype=np.complex128)
    for k in range(n):
        # q_k b_0 = a_k - sum_{j<k} q_j b_{k-j}
        q[k] = (ac[k] - np.dot(q[:k], bc[k:0:-1])) / b0
    return TaylorSeries(q)


def z_derivative(a: TaylorSeries) -> TaylorSeries:
    """Series of ``z * a'(z)``: coefficient k becomes ``k * c_k``."""
    return TaylorSeries(np.arange(a.order + 1) * a.coeffs)


def z_pow_derivative(a: TaylorSeries, j: int) -> TaylorSeries:
    """Series of ``z**j * a^{(j)}(z)``.

    Coefficient k is the falling factorial ``k (k-1) ... (k-j+1)`` times ``c_k``,
    which vanishes for ``k < j``.
    """
    if j < 0:
        raise ValueError("derivative order must be non-negative")
    k = np.arange(a.order + 1, dtype=np.float64)
    falling = np.ones_like(k)
    for i in range(j):
        falling *= k - i
    return TaylorSeries(falling * a.coeffs)


def shift_down(a: TaylorSeries) -> TaylorSeries:
    """Divide by ``z`` a series whose constant term is zero; the order drops by one."""
    if abs(a.coeffs[0]) > DIVISION_GUARD:
        raise ValueError("series has a nonzero constant term; z does not divide it")
    return TaylorSeries(a.coeffs[1:])


def evaluate(a: TaylorSeries, z):
    """Horner evaluation of the truncated polynomial at ``z`` (scalar or array)."""
    z_arr = np.asarray(z, dtype=np.complex128)
    flat = kernels.horner(a.coeffs[None, :], z_arr.ravel())[0]
    if z_arr.ndim == 0:
        return complex(flat[0])
    return flat.reshape(z_arr.shape)


def circle_points(rho: float, n: int) -> np.ndarray:
    return rho * np.exp(2j * np.pi * np.arange(n) / n)


def eval_on_circle(a: TaylorSeries, rho: float, n: int) -> np.ndarray:
    """Values ``a(rho * exp(2 pi i k / n))`` for ``k = 0 .. n-1``."""
    if not 0.0 < rho < 1.0:
        raise ValueError("radius must lie in (0, 1)")
    if n < 8:
        raise ValueError("need at least 8 samples on the circle")
    return evaluate(a, circle_points(rho, n))
