"""Numerical evaluation of eta, gamma2, gamma3 and j on the upper half-plane.

gamma2 = E4/eta^8 and gamma3 = E6/eta^12 with the normalized Eisenstein
series E4, E6, so gamma2^3 = j and gamma3^2 = j - 1728.  Points are moved
into the standard fundamental domain before summing the q-series; the
characters picked up along the way are
    gamma2(tau + 1) = exp(-2 pi i/3) gamma2(tau),   gamma2(-1/tau) = gamma2(tau),
    gamma3(tau + 1) = -gamma3(tau),                 gamma3(-1/tau) = -gamma3(tau).
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp

from .errors import InvalidArgument

__all__ = ["WeberValues", "eta", "j_invariant", "reduce_tau", "to_mpc", "weber_values"]

MIN_PREC = 64


def to_mpc(tau):
    """Convert at the current working precision; exact inputs
    (objects with ``x``, ``y``, ``m`` meaning x + y*sqrt(m), m < 0, or
    a ``value`` attribute holding one) are converted without rounding first."""
    if hasattr(tau, "value") and not isinstance(tau, mpmath.mpc):
        tau = tau.value
    if hasattr(tau, "m") and hasattr(tau, "x"):
        if tau.m >= 0:
            raise InvalidArgument("tau must be imaginary quadratic")
        re = mpmath.mpf(tau.x.numerator) / tau.x.denominator
        im = mpmath.mpf(tau.y.numerator) / tau.y.denominator * mpmath.sqrt(-tau.m)
        return mpmath.mpc(re, im)
    return mpmath.mpc(tau)


def _check(tau, prec: int):
    if prec < MIN_PREC:
        raise InvalidArgument(f"precision must be at least {MIN_PREC} bits")
    tau = to_mpc(tau)
    if tau.imag <= 0:
        raise InvalidArgument("tau must lie in the upper half-plane")
    return tau


def _guard(prec: int) -> int:
    return 32 + prec.bit_length()


def reduce_tau(tau):
    """Move tau into the fundamental domain.

    Returns (tau', n_t, n_s): tau was carried to tau' by n_t translations
    (counted with sign) and n_s inversions, so that
    gamma2(tau) = exp(-2 pi i n_t/3) gamma2(tau') and
    gamma3(tau) = (-1)^(n_t + n_s) gamma3(tau').
    """
    n_t = n_s = 0
    for _ in range(10_000):
        n = int(mpmath.nint(tau.real))
        if n:
            tau -= n
            n_t += n
        if abs(tau) < 1 - mpmath.mpf(2) ** (-mp.prec + 8):
            tau = -1 / tau
            n_s += 1
        else:
            return tau, n_t, n_s
    raise AssertionError("reduction did not terminate")


def _eta_series(tau):
    # eta(tau) = q^(1/24) * sum_k (-1)^k q^(k(3k-1)/2), k over Z
    q = mpmath.exp(2j * mp.pi * tau)
    eps = mpmath.mpf(2) ** (-mp.prec)
    total = mpmath.mpc(1)
    k = 1
    while True:
        t1 = q ** (k * (3 * k - 1) // 2)
        t2 = q ** (k * (3 * k + 1) // 2)
        term = (t1 + t2) * (-1) ** k
        total += term
        if abs(t1) < eps:
            break
        k += 1
    return mpmath.exp(2j * mp.pi * tau / 24) * total


def eta(tau, prec: int = 256):
    """Dedekind eta, summed directly at tau (no reduction)."""
    with mpmath.workprec(prec + _guard(prec)):
        tau = _check(tau, prec)
        if tau.imag < mpmath.mpf("0.05"):
            raise InvalidArgument("Im tau too small for direct eta summation")
        val = _eta_series(tau)
    with mpmath.workprec(prec):
        return +val


def _eisenstein(q, weight: int):
    # Lambert series: E_k = 1 + c * sum n^(k-1) q^n / (1 - q^n)
    c = 240 if weight == 4 else -504
    e = weight - 1
    eps = mpmath.mpf(2) ** (-mp.prec)
    total = mpmath.mpc(0)
    n, qn = 1, q
    while True:
        term = mpmath.mpf(n) ** e * qn / (1 - qn)
        total += term
        if abs(term) < eps:
            break
        n += 1
        qn *= q
    return 1 + c * total


@dataclass(frozen=True)
class WeberValues:
    eta: mpmath.mpc
    gamma2: mpmath.mpc
    gamma3: mpmath.mpc
    j: mpmath.mpc
    prec: int = 256

    def residuals(self) -> tuple:
        """|gamma2^3 - j| and |gamma3^2 - (j - 1728)|, evaluated at the stored precision."""
        with mpmath.workprec(self.prec):
            return abs(self.gamma2 ** 3 - self.j), abs(self.gamma3 ** 2 - (self.j - 1728))


def weber_values(tau, prec: int = 256) -> WeberValues:
    """(eta, gamma2, gamma3, j) at tau, carrying the characters through reduction."""
    with mpmath.workprec(prec + _guard(prec) + 32):
        t0 = _check(tau, prec)
        t, n_t, n_s = reduce_tau(t0)
        q = mpmath.exp(2j * mp.pi * t)
        e = _eta_series(t)
        e4 = _eisenstein(q, 4)
        e6 = _eisenstein(q, 6)
        e8 = e ** 8
        g2 = e4 / e8
        g3 = e6 / (e8 * e ** 4)
        j = e4 ** 3 / (e8 ** 3)
        g2 *= mpmath.exp(-2j * mp.pi * (n_t % 3) / 3)
        if (n_t + n_s) % 2:
            g3 = -g3
        eta_direct = _eta_series(t0) if t0.imag >= mpmath.mpf("0.05") else mpmath.nan
    with mpmath.workprec(prec):
        return WeberValues(+eta_direct, +g2, +g3, +j, prec)


def j_invariant(tau, prec: int = 256):
    return weber_values(tau, prec).j
