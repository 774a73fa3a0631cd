"""Classical measures and their three-term recurrence coefficients.

The monic orthogonal polynomials of a measure satisfy

    p_{k+1}(x) = (x - alpha_k) p_k(x) - beta_k p_{k-1}(x),

with ``beta_0`` the total mass of the measure.  Closed forms are available
for the Jacobi, generalized Laguerre and Hermite families, which are the
only ones supported here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ParameterError

JACOBI = "jacobi"
LAGUERRE = "laguerre"
HERMITE = "hermite"

FAMILIES = (JACOBI, LAGUERRE, HERMITE)


@dataclass(frozen=True)
class Measure:
    """A classical weight function ``w`` with ``dmu(x) = w(x) dx``.

    Use the :meth:`jacobi`, :meth:`laguerre` and :meth:`hermite` constructors
    rather than filling the fields by hand.  ``beta`` is only meaningful for
    the Jacobi family, ``alpha`` is unused for Hermite.
    """

    family: str
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown measure family {self.family!r}")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        if self.family == JACOBI:
            if not (self.alpha > -1 and self.beta > -1):
                raise ParameterError(
                    f"Jacobi parameters must exceed -1, got ({self.alpha}, {self.beta})")
        elif self.family == LAGUERRE:
            if not self.alpha > -1:
                raise ParameterError(f"Laguerre parameter must exceed -1, got {self.alpha}")
            object.__setattr__(self, "beta", 0.0)
        else:
            object.__setattr__(self, "alpha", 0.0)
            object.__setattr__(self, "beta", 0.0)

    @classmethod
    def jacobi(cls, alpha=0.0, beta=0.0):
        return cls(JACOBI, alpha, beta)

    @classmethod
    def laguerre(cls, alpha=0.0):
        return cls(LAGUERRE, alpha)

    @classmethod
    def hermite(cls):
        return cls(HERMITE)

    @property
    def domain(self):
        if self.family == JACOBI:
            return (-1.0, 1.0)
        if self.family == LAGUERRE:
            return (0.0, math.inf)
        return (-math.inf, math.inf)

    @property
    def is_symmetric(self):
        """True when the measure is even about the origin."""
        return self.family == HERMITE or (self.family == JACOBI and self.alpha == self.beta)

    def weight(self, x):
        """Evaluate the weight function ``w(x)``; zero outside the domain."""
        x = np.asarray(x, dtype=float)
        lo, hi = self.domain
        inside = (x >= lo) & (x <= hi)
        with np.errstate(divide="ignore", invalid="ignore"):
            if self.family == JACOBI:
                w = (1.0 - x) ** self.alpha * (1.0 + x) ** self.beta
            elif self.family == LAGUERRE:
                w = x ** self.alpha * np.exp(-x)
            else:
                w = np.exp(-x * x)
        return np.where(inside, w, 0.0)

    def contains(self, y):
        lo, hi = self.domain
        y = np.asarray(y, dtype=float)
        return (y >= lo) & (y <= hi)

    def __str__(self):
        if self.family == JACOBI:
            return f"Jacobi({self.alpha:g}, {self.beta:g})"
        if self.family == LAGUERRE:
            return f"Laguerre({self.alpha:g})"
        return "Hermite"


@dataclass(frozen=True)
class RecurrenceTable:
    """First ``n`` recurrence coefficients of a measure.

    ``alpha`` holds alpha_0..alpha_{n-1}; ``beta`` holds beta_1..beta_{n-1}
    (beta_0 is kept apart in ``beta0``).
    """

    alpha: np.ndarray
    beta: np.ndarray
    beta0: float

    @property
    def n(self):
        return len(self.alpha)

    def b(self, k):
        """beta_k for 0 <= k < n."""
        return self.beta0 if k == 0 else float(self.beta[k - 1])


@dataclass(frozen=True)
class ThetaPair:
    """Mixing coefficients of the Gauss and G* rules in the weighted average."""

    theta1: float
    theta2: float

    def __iter__(self):
        yield self.theta1
        yield self.theta2


def _jacobi(a, b, n):
    k = np.arange(n, dtype=float)
    s = a + b
    alpha = np.empty(n)
    # k = 0 is written in reduced form; the generic expression is 0/0 when a + b = 0.
    alpha[0] = (b - a) / (s + 2.0)
    kk = k[1:]
    alpha[1:] = (b * b - a * a) / ((2 * kk + s) * (2 * kk + s + 2))
    if a == b:
        alpha[:] = 0.0

    beta0 = 2.0 ** (s + 1) * math.gamma(a + 1) * math.gamma(b + 1) / math.gamma(s + 2)

    beta = np.empty(max(n - 1, 0))
    if n > 1:
        # k = 1 with the common factor (1 + a + b) cancelled.
        beta[0] = 4.0 * (1 + a) * (1 + b) / ((2 + s) ** 2 * (3 + s))
        kk = np.arange(2, n, dtype=float)
        t = 2 * kk + s
        beta[1:] = 4 * kk * (kk + a) * (kk + b) * (kk + s) / (t * t * (t * t - 1))
    return alpha, beta, beta0


def _laguerre(a, n):
    k = np.arange(n, dtype=float)
    alpha = 2 * k + a + 1
    kk = np.arange(1, n, dtype=float)
    beta = kk * (kk + a)
    return alpha, beta, math.gamma(1 + a)


def _hermite(n):
    kk = np.arange(1, n, dtype=float)
    return np.zeros(n), kk / 2.0, math.sqrt(math.pi)


def recurrence_table(measure, n):
    """Return the first ``n`` recurrence coefficients of ``measure``.

    Every coefficient is evaluated from its closed form, independently of
    the others.

    >>> t = recurrence_table(Measure.laguerre(0.0), 2)
    >>> t.alpha.tolist(), t.beta.tolist(), t.beta0
    ([1.0, 3.0], [1.0], 1.0)
    """
    n = int(n)
    if n < 1:
        raise ParameterError(f"table length must be positive, got {n}")
    if measure.family == JACOBI:
        alpha, beta, beta0 = _jacobi(measure.alpha, measure.beta, n)
    elif measure.family == LAGUERRE:
        alpha, beta, beta0 = _laguerre(measure.alpha, n)
    else:
        alpha, beta, beta0 = _hermite(n)
    alpha.setflags(write=False)
    beta.setflags(write=False)
    return RecurrenceTable(alpha, beta, beta0)


def theta_pair(measure, m):
    """Weights ``(beta_{m+1}, beta_m) / (beta_m + beta_{m+1})``."""
    if m < 1:
        raise ParameterError(f"m must be positive, got {m}")
    t = recurrence_table(measure, m + 2)
    bm, bm1 = t.b(m), t.b(m + 1)
    return ThetaPair(bm1 / (bm + bm1), bm / (bm + bm1))


def norm2_monic(measure, m):
    """Squared norm of the monic orthogonal polynomial p_m, beta_0 * ... * beta_m."""
    t = recurrence_table(measure, m + 1)
    return t.beta0 * float(np.prod(t.beta[:m]))
