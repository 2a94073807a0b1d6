"""Moments of the partial non-central chi-squared distribution.

The eta-th moment (Nuttall Q-function)

    Q_{eta,mu}(x, y) = x^{(1-mu)/2} int_y^inf t^{eta+(mu-1)/2}
                       e^{-t-x} I_{mu-1}(2 sqrt(x t)) dt

is evaluated three independent ways:

* ``nuttall_q_series`` - the expansion in incomplete gamma function ratios,
      e^{-x} sum_n x^n/n! * Gamma(eta+mu+n)/Gamma(mu+n) * Q_{eta+mu+n}(y),
  with every per-term factor produced incrementally (one multiply for the
  Poisson weight, one for the gamma ratio, one forward recurrence step for
  the Q factor).
* ``nuttall_q_ladder`` - the inhomogeneous recurrence in mu, written with the
  scaled Bessel function so the forcing term never forms e^{-x-y} I_mu
  directly.  All right-hand terms are positive, hence stable forward.
* ``nuttall_q_homogeneous`` - the three-term recurrence whose coefficient is
  a Bessel-function ratio, so no raw Bessel magnitudes appear at all.

``consistency_deviation`` rearranges the recurrence into a ratio whose
distance from 1 measures the joint accuracy of everything above; it is the
library's internal accuracy metric.

The series accepts real eta >= 0.  Both recurrences couple eta to eta-1 down
to the Marcum base case and therefore require integer eta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import fsum

from .bessel import bessel_i_scaled, bessel_ratio
from .errors import ConvergenceError, DomainError
from .incgamma import _gamma_ratio_parts, gamma_ratio_q, q_forward_step
from .logscale import exp_clipped

DEFAULT_TOL = 1e-14
DEFAULT_MAX_TERMS = 2000

_TOL_MIN = 1e-15
_TOL_MAX = 1e-6
# Consecutive below-tolerance terms required before the series may stop.
_QUIET_TERMS = 3
# Running-term scale that triggers a renormalization of the partial sums.
_FOLD_LIMIT = 1e250


def _require_finite(name: str, v: float) -> None:
    if not math.isfinite(v):
        raise DomainError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class MomentQuery:
    """Parameter 4-tuple (eta, mu, x, y) for one moment evaluation.

    eta: moment order, >= 0 (integer required by the recurrence methods);
    mu:  degrees-of-freedom parameter, > 0;
    x:   non-centrality, >= 0;
    y:   lower integration limit, >= 0.
    """

    eta: float
    mu: float
    x: float
    y: float

    def __post_init__(self) -> None:
        for name in ("eta", "mu", "x", "y"):
            _require_finite(name, getattr(self, name))
        if self.eta < 0.0:
            raise DomainError(f"eta must be >= 0, got {self.eta!r}")
        if self.mu <= 0.0:
            raise DomainError(f"mu must be > 0, got {self.mu!r}")
        if self.x < 0.0:
            raise DomainError(f"x must be >= 0, got {self.x!r}")
        if self.y < 0.0:
            raise DomainError(f"y must be >= 0, got {self.y!r}")


@dataclass(frozen=True)
class SeriesOutcome:
    """Series value plus convergence metadata."""

    value: float
    terms_used: int
    est_error: float
    converged: bool


@dataclass(frozen=True)
class RecurrenceTable:
    """Grid of Q_{e, mu_start+m} values built by the inhomogeneous ladder.

    Row e=0 holds Marcum Q values (in [0, 1]); ``seed_method`` records how
    the boundary row and column were produced.
    """

    eta_max: int
    mu_start: float
    n_cols: int
    values: tuple[tuple[float, ...], ...]
    seed_method: str

    def entry(self, eta: int, col: int) -> float:
        return self.values[eta][col]


def _validate_tol(tol: float, max_terms: int) -> None:
    if not (_TOL_MIN <= tol <= _TOL_MAX):
        raise DomainError(f"tol must lie in [{_TOL_MIN}, {_TOL_MAX}], got {tol!r}")
    if max_terms < 1:
        raise DomainError(f"max_terms must be >= 1, got {max_terms!r}")


def nuttall_q_series(q: MomentQuery, tol: float = DEFAULT_TOL,
                     max_terms: int = DEFAULT_MAX_TERMS) -> SeriesOutcome:
    """Evaluate Q_{eta,mu}(x, y) by the incomplete-gamma-ratio expansion.

    The Q_{eta+mu+n}(y) factors come from one direct evaluation at n=0
    followed by a forward recurrence step per term; term magnitudes are
    accumulated against a floating log offset and materialized exactly once
    at the end.  Termination requires the per-term contribution to stay
    below ``tol`` for three consecutive terms after the term peak near
    n ~ x has been passed.  A non-converged outcome is reported explicitly,
    never returned as a silent value.
    """
    _validate_tol(tol, max_terms)
    eta, mu, x, y = q.eta, q.mu, q.x, q.y

    mant, offset = _gamma_ratio_parts(eta, mu)

    if eta == 0.0 and y == 0.0:
        # Integral over the whole half-line: exactly 1.
        return SeriesOutcome(1.0, 1, 0.0, True)
    if x == 0.0:
        # Only the n=0 term survives: Gamma(eta+mu, y) / Gamma(mu).
        q0 = gamma_ratio_q(eta + mu, y) if y > 0.0 else 1.0
        value = mant * q0 * exp_clipped(offset)
        if eta == 0.0:
            value = min(value, 1.0)
        return SeriesOutcome(value, 1, 1e-16, True)

    q_cur = gamma_ratio_q(eta + mu, y) if y > 0.0 else 1.0
    u = 1.0       # running x^n/n! * ratio-growth, relative to the n=0 term
    shift = 0.0   # log of what has been folded out of u and items
    items = [q_cur]
    running = q_cur
    n = 0  # index of the newest term in items
    quiet = 0
    converged = False
    contrib = math.inf

    while True:
        last = items[-1]
        contrib = last / running if running > 0.0 else 0.0
        if contrib <= tol:
            quiet += 1
            if quiet >= _QUIET_TERMS and n > x:
                converged = True
                break
        else:
            quiet = 0
        if n + 1 >= max_terms:
            break
        u *= x * (eta + mu + n) / ((n + 1.0) * (mu + n))
        if y > 0.0:
            q_cur = q_forward_step(q_cur, eta + mu + n, y)
        n += 1
        if u > _FOLD_LIMIT:
            scale = 1.0 / u
            shift += math.log(u)
            items = [it * scale for it in items]
            running *= scale
            u = 1.0
        items.append(u * q_cur)
        running += u * q_cur

    total = fsum(items)
    value = total * mant * exp_clipped(offset + shift - x)
    if eta == 0.0:
        value = min(value, 1.0)
    est_error = max(contrib, 1e-16)
    return SeriesOutcome(value, n + 1, est_error, converged)


def marcum_q(mu: float, x: float, y: float, tol: float = DEFAULT_TOL,
             max_terms: int = DEFAULT_MAX_TERMS) -> float:
    """Generalized Marcum Q-function: the moment of order eta = 0.

    Shares the series code path bit for bit.  The complementary cumulative
    P is available as 1 - marcum_q; no separate algorithm exists for it.
    """
    out = nuttall_q_series(MomentQuery(0.0, mu, x, y), tol, max_terms)
    if not out.converged:
        raise ConvergenceError(
            f"Marcum Q series did not converge for mu={mu}, x={x}, y={y}")
    return out.value


def _require_integer_eta(eta: float, what: str) -> int:
    if not float(eta).is_integer():
        raise DomainError(f"{what} requires integer eta, got {eta!r}")
    return int(eta)


def _inhom_term(eta: float, mu: float, x: float, y: float,
                i_scaled: float) -> float:
    """(y/x)^{mu/2} y^eta e^{-(sqrt x - sqrt y)^2} Itilde_mu(2 sqrt(xy)).

    ``i_scaled`` is the caller-supplied scaled Bessel value Itilde_mu.
    The raw e^{-x-y} I_mu product is never formed; the plain-float product
    is used while each factor stays in range, log space otherwise.
    """
    if y == 0.0:
        return 0.0
    l_pow = 0.5 * mu * (math.log(y) - math.log(x))
    l_y = eta * math.log(y) if eta > 0.0 else 0.0
    l_exp = -((math.sqrt(x) - math.sqrt(y)) ** 2)
    if i_scaled > 0.0 and abs(l_pow) < 680.0 and abs(l_y) < 680.0 \
            and l_pow + l_y + l_exp + math.log(i_scaled) < 700.0:
        return ((y / x) ** (0.5 * mu)) * (y**eta if eta > 0.0 else 1.0) \
            * math.exp(l_exp) * i_scaled
    log_i = math.log(i_scaled) if i_scaled > 0.0 else -math.inf
    return exp_clipped(l_pow + l_y + l_exp + log_i)


def nuttall_q_ladder(eta_max: int, mu_start: float, n_cols: int,
                     x: float, y: float, tol: float = DEFAULT_TOL,
                     max_terms: int = DEFAULT_MAX_TERMS) -> RecurrenceTable:
    """Build the table Q_{e, mu_start+m} by the scaled inhomogeneous ladder.

        Q_{eta,mu+1} = Q_{eta,mu} + eta Q_{eta-1,mu+1}
                       + (y/x)^{mu/2} y^eta e^{-(sqrt x - sqrt y)^2}
                         Itilde_mu(2 sqrt(xy))

    Row e=0 is seeded by marcum_q, column m=0 of each later row by the
    series; every right-hand term is positive, so filling left to right and
    bottom to top is stable.  x = 0 is rejected (the forcing term divides
    by x^{mu/2}); the series path must be used there instead.
    """
    eta_max = _require_integer_eta(eta_max, "ladder")
    if eta_max < 0:
        raise DomainError(f"eta_max must be >= 0, got {eta_max!r}")
    if n_cols < 1:
        raise DomainError(f"n_cols must be >= 1, got {n_cols!r}")
    if not mu_start > 0.0:
        raise DomainError(f"mu_start must be > 0, got {mu_start!r}")
    if x == 0.0:
        raise DomainError("ladder is undefined at x = 0; use the series path")
    _require_finite("x", x)
    _require_finite("y", y)
    if x < 0.0 or y < 0.0:
        raise DomainError("x and y must be >= 0")

    z = 2.0 * math.sqrt(x * y)
    i_scaled = [bessel_i_scaled(mu_start + m, z) for m in range(n_cols - 1)]

    rows = [[marcum_q(mu_start + m, x, y, tol, max_terms)
             for m in range(n_cols)]]
    for e in range(1, eta_max + 1):
        prev = rows[-1]
        seed = nuttall_q_series(MomentQuery(e, mu_start, x, y), tol, max_terms)
        if not seed.converged:
            raise ConvergenceError(
                f"ladder seed series did not converge at eta={e}, mu={mu_start}")
        row = [seed.value]
        for m in range(1, n_cols):
            t = _inhom_term(e, mu_start + m - 1.0, x, y, i_scaled[m - 1])
            row.append(row[m - 1] + e * prev[m] + t)
        rows.append(row)
    return RecurrenceTable(eta_max, mu_start, n_cols,
                           tuple(tuple(r) for r in rows),
                           "row0:marcum_q,col0:series")


def nuttall_q_homogeneous(eta: int, prev_row: list[float], seed0: float,
                          seed1: float, x: float, y: float, mu_start: float,
                          n_cols: int) -> list[float]:
    """Fill one eta row by the homogeneous three-term recurrence.

        Q_{eta,mu+2} = (1+c) Q_{eta,mu+1} - c Q_{eta,mu}
                       + eta Q_{eta-1,mu+2} - eta c Q_{eta-1,mu+1},
        c = sqrt(y/x) I_{mu+1}(2 sqrt(xy)) / I_mu(2 sqrt(xy))

    The coefficients come from bessel_ratio, so no raw Bessel magnitudes
    appear.  ``prev_row`` holds Q_{eta-1, mu_start+m}; ``seed0``/``seed1``
    are Q_{eta, mu_start} and Q_{eta, mu_start+1}.
    """
    eta = _require_integer_eta(eta, "homogeneous recurrence")
    if eta < 1:
        raise DomainError(f"homogeneous recurrence requires eta >= 1, got {eta!r}")
    if x == 0.0:
        raise DomainError("homogeneous recurrence is undefined at x = 0")
    if not x > 0.0 or not y >= 0.0:
        raise DomainError("x must be > 0 and y >= 0")
    if not mu_start > 0.0:
        raise DomainError(f"mu_start must be > 0, got {mu_start!r}")
    if n_cols < 1:
        raise DomainError(f"n_cols must be >= 1, got {n_cols!r}")
    if len(prev_row) != n_cols:
        raise DomainError(
            f"prev_row has {len(prev_row)} entries, expected n_cols={n_cols}")

    out = [seed0]
    if n_cols == 1:
        return out
    out.append(seed1)
    root = math.sqrt(y / x)
    z = 2.0 * math.sqrt(x * y)
    for m in range(2, n_cols):
        c = root * bessel_ratio(mu_start + m - 2.0, z)
        out.append((1.0 + c) * out[m - 1] - c * out[m - 2]
                   + eta * prev_row[m] - eta * c * prev_row[m - 1])
    return out


def consistency_deviation(q: MomentQuery, tol: float = DEFAULT_TOL,
                          max_terms: int = DEFAULT_MAX_TERMS) -> float:
    """Distance from 1 of the rearranged-recurrence ratio.

        | 1 - Q_{eta,mu+1} / (Q_{eta,mu} + eta Q_{eta-1,mu+1} + T) |

    with T the scaled-Bessel forcing term.  All four constituents are
    produced by the series path; the result is the library's internal
    accuracy metric (expected at or below ~1e-12 over the working region).
    """
    eta = _require_integer_eta(q.eta, "consistency check")
    if eta < 1:
        raise DomainError(f"consistency check requires eta >= 1, got {eta!r}")
    if q.x == 0.0:
        raise DomainError("consistency check is undefined at x = 0")
    mu, x, y = q.mu, q.x, q.y

    def _value(e: float, m: float) -> float:
        out = nuttall_q_series(MomentQuery(e, m, x, y), tol, max_terms)
        if not out.converged:
            raise ConvergenceError(
                f"series did not converge at eta={e}, mu={m}, x={x}, y={y}")
        return out.value

    num = _value(eta, mu + 1.0)
    t = _inhom_term(eta, mu, x, y, bessel_i_scaled(mu, 2.0 * math.sqrt(x * y)))
    den = _value(eta, mu) + eta * _value(eta - 1.0, mu + 1.0) + t
    return abs(1.0 - num / den)
