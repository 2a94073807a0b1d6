"""Modified Bessel function of the first kind: scaled values and ratios.

The evaluators downstream only ever need the exponentially scaled form
Itilde_mu(z) = exp(-z) I_mu(z), which stays inside [0, 1], and the neighbor
ratio I_{mu+1}(z)/I_mu(z).  Raw I values are exposed wrapped in LogScaled so
they cannot overflow on the way out.

All routines accept real (not just integer) order >= 0 and argument >= 0.
"""

from __future__ import annotations

import math
from math import fsum

from .errors import ConvergenceError, DomainError
from .logscale import LogScaled, exp_clipped

# Modified Lentz parameters for the ratio continued fraction.
_LENTZ_TINY = 1e-30
_LENTZ_TOL = 1e-15
_LENTZ_MAX_ITER = 10_000

# The plain-float series path is used while exp(arg) and the power/gamma
# prefactor stay comfortably inside double range; beyond that a log-space
# accumulation takes over (slightly less accurate, never overflows).
_LINEAR_MAX_ARG = 700.0
_LINEAR_MAX_ORDER = 20_000.0

_SERIES_CUTOFF = 5e-18
_SERIES_MAX_TERMS = 100_000


def _validate(order: float, arg: float) -> None:
    if not order >= 0.0 or math.isinf(order):
        raise DomainError(f"Bessel order must be finite and >= 0, got {order!r}")
    if not arg >= 0.0 or math.isinf(arg):
        raise DomainError(f"Bessel argument must be finite and >= 0, got {arg!r}")


def _power_over_gamma(order: float, arg: float) -> float:
    """(arg/2)**order / Gamma(order+1) as a plain float product.

    The integer part of the order is handled by a running product, so no
    large log is ever exponentiated; progressive underflow to 0.0 is fine
    because Itilde <= this prefactor.
    """
    half = 0.5 * arg
    m = int(order)
    f = order - m
    if f > 0.0:
        p = half**f / math.gamma(f + 1.0)
    else:
        p = 1.0
    for k in range(1, m + 1):
        p *= half / (f + k)
    return p


def _series_sum(order: float, arg: float) -> float:
    """sum_n (arg^2/4)^n / (n! (order+1)_n), the series with its n=0 term 1."""
    q = arg * arg * 0.25
    term = 1.0
    total = 1.0
    n = 0
    while n < _SERIES_MAX_TERMS:
        n += 1
        term *= q / (n * (order + n))
        total += term
        if term < total * _SERIES_CUTOFF:
            return total
    raise ConvergenceError(
        f"Bessel series did not converge for order={order}, arg={arg}")


def _log_series(order: float, arg: float) -> float:
    """ln I_order(arg) by log-space term collection (no overflow anywhere)."""
    q = arg * arg * 0.25
    lt = order * math.log(0.5 * arg) - math.lgamma(order + 1.0)
    logs = [lt]
    peak = lt
    n = 0
    while n < _SERIES_MAX_TERMS:
        n += 1
        lt += math.log(q / (n * (order + n)))
        logs.append(lt)
        peak = max(peak, lt)
        if q < n * (order + n) and lt < peak + math.log(_SERIES_CUTOFF):
            break
    else:
        raise ConvergenceError(
            f"Bessel series did not converge for order={order}, arg={arg}")
    return peak + math.log(fsum(math.exp(v - peak) for v in logs))


def bessel_i_scaled(order: float, arg: float) -> float:
    """Exponentially scaled modified Bessel function exp(-z) I_order(z).

    Bounded by [0, 1]; finite for every valid input, however large z gets.
    """
    _validate(order, arg)
    if arg == 0.0:
        return 1.0 if order == 0.0 else 0.0
    if arg <= _LINEAR_MAX_ARG and order <= _LINEAR_MAX_ORDER:
        p = _power_over_gamma(order, arg)
        if p == 0.0:
            # Itilde <= prefactor (the series sum times exp(-z) is <= 1).
            return 0.0
        return math.exp(-arg) * p * _series_sum(order, arg)
    return exp_clipped(_log_series(order, arg) - arg)


def log_bessel_i_scaled(order: float, arg: float) -> float:
    """ln(exp(-z) I_order(z)); -inf where the value is an exact zero."""
    _validate(order, arg)
    if arg == 0.0:
        return 0.0 if order == 0.0 else -math.inf
    s = bessel_i_scaled(order, arg)
    if s > 0.0:
        return math.log(s)
    return _log_series(order, arg) - arg


def bessel_i(order: float, arg: float) -> LogScaled:
    """I_order(arg) in log-scaled form.

    exp(log_magnitude) agrees with bessel_i_scaled * exp(arg) wherever both
    stay inside double range.
    """
    _validate(order, arg)
    if arg == 0.0:
        if order == 0.0:
            return LogScaled(1, 0.0)
        return LogScaled(0, -math.inf)
    s = bessel_i_scaled(order, arg)
    if s > 0.0:
        return LogScaled(1, arg + math.log(s))
    return LogScaled(1, _log_series(order, arg))


def bessel_ratio(order: float, arg: float) -> float:
    """I_{order+1}(arg) / I_order(arg) by continued fraction.

    Uses the modified Lentz algorithm on

        r = 1 / (2(order+1)/z + 1 / (2(order+2)/z + ...))

    which follows from the three-term recurrence of I.  The value lies in
    [0, 1), tends to z/(2(order+1)) as z -> 0, and arg == 0 returns exactly 0.
    """
    _validate(order, arg)
    if arg == 0.0:
        return 0.0
    f = _LENTZ_TINY
    c = f
    d = 0.0
    for j in range(1, _LENTZ_MAX_ITER + 1):
        b = 2.0 * (order + j) / arg
        d = b + d
        if d == 0.0:
            d = _LENTZ_TINY
        c = b + 1.0 / c
        if c == 0.0:
            c = _LENTZ_TINY
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < _LENTZ_TOL:
            return f
    raise ConvergenceError(
        f"Bessel ratio continued fraction stalled for order={order}, arg={arg}")
