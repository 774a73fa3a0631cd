"""Symmetric tridiagonal matrices built from recurrence tables, and their
eigenvalues together with the first components of the eigenvectors.

The eigen-solver is the implicit-shift QL iteration, accumulating only the
first row of the product of plane rotations.  That row is all Golub-Welsch
needs, so the cost is O(n^2) instead of the O(n^3) of a full eigh.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from .exceptions import NumericalError, ParameterError

_EPS = sys.float_info.epsilon
MAX_SWEEPS = 50


@dataclass(frozen=True)
class SymTridiagonal:
    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=float)
        e = np.asarray(self.offdiag, dtype=float)
        if d.ndim != 1 or e.ndim != 1 or len(e) != max(len(d) - 1, 0):
            raise ValueError(f"bad shapes: diag {d.shape}, offdiag {e.shape}")
        if len(d) == 0:
            raise ValueError("empty matrix")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def n(self):
        return len(self.diag)

    def toarray(self):
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


@dataclass(frozen=True)
class EigenFirstComponents:
    """Ascending eigenvalues and squared first eigenvector components."""

    values: np.ndarray
    firstcomp2: np.ndarray


def _need(table, n, what):
    if table.n < n:
        raise ParameterError(f"{what} needs {n} recurrence coefficients, table has {table.n}")


def build_gauss_matrix(table, m):
    """Jacobi matrix J_m."""
    _need(table, m, "J_m")
    return SymTridiagonal(np.array(table.alpha[:m]), np.sqrt(table.beta[:m - 1]))


def build_antigauss_matrix(table, m):
    """J_m bordered by alpha_m with last coupling sqrt(2 beta_m)."""
    _need(table, m + 1, "anti-Gauss matrix")
    off = np.sqrt(table.beta[:m]).copy()
    off[-1] = math.sqrt(2.0 * table.b(m))
    return SymTridiagonal(np.array(table.alpha[:m + 1]), off)


def build_gstar_matrix(table, m):
    """J_m bordered by alpha_m with last coupling sqrt(beta_m + beta_{m+1})."""
    _need(table, m + 2, "G* matrix")
    off = np.sqrt(table.beta[:m]).copy()
    off[-1] = math.sqrt(table.b(m) + table.b(m + 1))
    return SymTridiagonal(np.array(table.alpha[:m + 1]), off)


def build_hat_matrix(table, m):
    """Order 2m+1 matrix: J_m, then alpha_m, then J_m with rows and columns reversed."""
    _need(table, m + 2, "weighted averaged matrix")
    a = np.asarray(table.alpha[:m])
    sb = np.sqrt(table.beta[:m - 1])
    diag = np.concatenate([a, [table.alpha[m]], a[::-1]])
    off = np.concatenate([sb, [math.sqrt(table.b(m)), math.sqrt(table.b(m + 1))], sb[::-1]])
    return SymTridiagonal(diag, off)


def eigen_first_components(T):
    """Eigenvalues of ``T`` (ascending) and squared first eigenvector components.

    Raises NumericalError when an eigenvalue fails to converge within
    ``MAX_SWEEPS`` QL sweeps.
    """
    n = T.n
    d = [float(v) for v in T.diag]
    e = [float(v) for v in T.offdiag] + [0.0]
    z = [0.0] * n
    z[0] = 1.0

    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= _EPS * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            if sweeps == MAX_SWEEPS:
                raise NumericalError(f"QL iteration did not converge for eigenvalue {l}")
            sweeps += 1

            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    # underflow: split the problem and restart
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
                i -= 1
            else:
                d[l] -= p
                e[l] = g
                e[m] = 0.0

    values = np.array(d)
    comps = np.array(z) ** 2
    order = np.argsort(values, kind="stable")
    return EigenFirstComponents(values[order], comps[order])
