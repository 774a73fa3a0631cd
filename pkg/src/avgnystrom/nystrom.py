"""Weighted Nystrom discretizations of

    f(y) + int k(x, y) f(x) dmu(x) = g(y)

in the space C_u of functions with ``f*u`` continuous and bounded.  The
unknowns are the weighted nodal values ``a_j = (f u)(x_j)``, so every
system has the form ``(I + D Phi D^{-1}) a = D g`` with
``Phi[i, j] = lambda_j k(x_j, x_i)`` and ``D = diag(u(x_i))``.

Kernels and right-hand sides are plain callables acting elementwise on
numpy arrays; ``kernel(x, y)`` must broadcast.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
import scipy.linalg

from . import rules
from .exceptions import AssemblyError, DomainError, EvaluationError, ParameterError, SolverError
from .measures import JACOBI, ThetaPair, theta_pair


@dataclass(frozen=True)
class SpaceWeight:
    """u(x) = (1 - x)^gamma (1 + x)^delta on [-1, 1]; gamma = delta = 0 is u = 1."""

    gamma: float = 0.0
    delta: float = 0.0

    def __post_init__(self):
        if self.gamma < 0 or self.delta < 0:
            raise ParameterError("gamma and delta must be nonnegative")

    @property
    def is_unit(self):
        return self.gamma == 0 and self.delta == 0

    def check_against(self, measure):
        """Require gamma < alpha + 1 and delta < beta + 1 for a Jacobi measure."""
        if self.is_unit:
            return
        if measure.family != JACOBI:
            raise ParameterError("Jacobi-type space weights need a Jacobi measure")
        if not (self.gamma < measure.alpha + 1 and self.delta < measure.beta + 1):
            raise ParameterError(
                f"space weight ({self.gamma}, {self.delta}) violates gamma < alpha + 1, "
                f"delta < beta + 1 for {measure}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.is_unit:
            return np.ones_like(x)
        return (1.0 - x) ** self.gamma * (1.0 + x) ** self.delta


@dataclass(frozen=True)
class FredholmProblem:
    kernel: Callable
    rhs: Callable
    measure: object
    weight: SpaceWeight = field(default_factory=SpaceWeight)
    exact: Optional[Callable] = None
    name: str = ""

    def __post_init__(self):
        self.weight.check_against(self.measure)


@dataclass(frozen=True)
class AssembledSystem:
    matrix: np.ndarray
    rhs: np.ndarray
    nodes: np.ndarray
    weights: np.ndarray
    u: np.ndarray

    @property
    def n(self):
        return len(self.rhs)


def _finite(values, what, points):
    bad = ~np.isfinite(values)
    if np.any(bad):
        idx = np.argwhere(bad)[0]
        raise EvaluationError(f"{what} is not finite near x = {points[idx[-1]]!r}")
    return values


def kernel_matrix(problem, xs, ys):
    """K[i, j] = k(xs[j], ys[i])."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    with np.errstate(all="ignore"):
        K = np.broadcast_to(problem.kernel(xs[None, :], ys[:, None]), (len(ys), len(xs)))
    return _finite(np.array(K, dtype=float), "kernel", xs)


def _weighted_rhs(problem, y, uy):
    with np.errstate(all="ignore"):
        g = np.broadcast_to(np.asarray(problem.rhs(y), dtype=float), y.shape)
    return _finite(g, "right-hand side", y) * uy


def _u_at(problem, x):
    ux = problem.weight(x)
    if np.any(ux == 0) or not np.all(np.isfinite(ux)):
        raise AssemblyError("space weight vanishes at a quadrature node")
    return ux


def assemble(problem, rule):
    """Build ``I + D Phi D^{-1}`` and ``D g`` for the nodes and weights of ``rule``."""
    x, w = rule.nodes, rule.weights
    if not rule.internal:
        if not np.all(problem.measure.contains(x)):
            raise AssemblyError(f"{rule.kind} rule has nodes outside the domain of {problem.measure}")
    u = _u_at(problem, x)
    K = kernel_matrix(problem, x, x)
    A = K * (w / u)[None, :] * u[:, None]
    A[np.diag_indices_from(A)] += 1.0
    return AssembledSystem(A, _weighted_rhs(problem, x, u), x, w, u)


def lu_factor(matrix):
    """LU with partial pivoting; SolverError when a pivot is zero to working precision."""
    lu, piv = scipy.linalg.lu_factor(matrix, check_finite=True)
    pivots = np.abs(np.diag(lu))
    scale = np.max(np.abs(matrix)) if matrix.size else 1.0
    if np.any(pivots <= np.finfo(float).eps * scale * len(pivots)):
        raise SolverError("matrix is singular to working precision; increase m")
    return lu, piv


def solve_direct(system):
    lu = lu_factor(system.matrix)
    return scipy.linalg.lu_solve(lu, system.rhs)


def condition_infinity(system):
    """Infinity-norm condition number, with the inverse formed from the LU factors."""
    A = system.matrix if isinstance(system, AssembledSystem) else np.asarray(system, dtype=float)
    inv = scipy.linalg.lu_solve(lu_factor(A), np.eye(len(A)))
    return float(np.linalg.norm(A, np.inf) * np.linalg.norm(inv, np.inf))


@dataclass(frozen=True)
class Component:
    nodes: np.ndarray
    weights: np.ndarray
    coef: np.ndarray
    u: np.ndarray


@dataclass(frozen=True, eq=False)
class NystromInterpolant:
    """Weighted Nystrom interpolant

        (f u)(y) = (g u)(y) - u(y) sum_c sum_j w_cj / u(x_cj) k(x_cj, y) a_cj,

    summed over one or two components.  Mixing coefficients, when present,
    are already folded into the component weights ``w_cj``.
    """

    components: tuple
    problem: FredholmProblem
    label: str
    mixing: Optional[ThetaPair] = None

    def _points(self, y):
        y = np.asarray(y, dtype=float)
        if not np.all(self.problem.measure.contains(y)):
            raise DomainError(f"evaluation point outside the domain of {self.problem.measure}")
        return y

    def weighted(self, y):
        """(f u)(y)."""
        y = self._points(y)
        flat = np.atleast_1d(y).ravel()
        uy = self.problem.weight(flat)
        total = np.zeros_like(flat)
        for c in self.components:
            K = kernel_matrix(self.problem, c.nodes, flat)
            total += K @ (c.weights / c.u * c.coef)
        out = _weighted_rhs(self.problem, flat, uy) - uy * total
        return out.reshape(y.shape) if y.ndim else float(out[0])

    def __call__(self, y):
        """f(y)."""
        y = self._points(y)
        return self.weighted(y) / self.problem.weight(y)

    def evaluate(self, y):
        """Both ``(f u)(y)`` and ``f(y)``."""
        fu = self.weighted(y)
        return fu, fu / self.problem.weight(np.asarray(y, dtype=float))

    @property
    def nodes(self):
        return np.concatenate([c.nodes for c in self.components])

    @property
    def coefficients(self):
        return np.concatenate([c.coef for c in self.components])


def interpolant_from_rule(problem, rule, label):
    system = assemble(problem, rule)
    coef = solve_direct(system)
    comp = Component(system.nodes, system.weights, coef, system.u)
    return NystromInterpolant((comp,), problem, label)


def interpolant_gauss(problem, m):
    return interpolant_from_rule(problem, rules.gauss_rule(problem.measure, m), "G")


def interpolant_antigauss(problem, m):
    return interpolant_from_rule(problem, rules.antigauss_rule(problem.measure, m), "antigauss")


def interpolant_gstar(problem, m):
    return interpolant_from_rule(problem, rules.gstar_rule(problem.measure, m), "gstar")


def _mix(problem, first, second, theta, label):
    a, b = first.components[0], second.components[0]
    comps = (
        Component(a.nodes, theta.theta1 * a.weights, a.coef, a.u),
        Component(b.nodes, theta.theta2 * b.weights, b.coef, b.u),
    )
    return NystromInterpolant(comps, problem, label, theta)


def interpolant_averaged(problem, m, full_system=False):
    """Averaged interpolant.

    By default the mean of the Gauss and anti-Gauss interpolants, i.e. two
    systems of orders m and m+1.  With ``full_system=True`` a single system
    is assembled with all 2m+1 nodes of the averaged rule instead.
    """
    if full_system:
        return interpolant_from_rule(problem, rules.averaged_rule(problem.measure, m), "averaged")
    return _mix(problem, interpolant_gauss(problem, m), interpolant_antigauss(problem, m),
                ThetaPair(0.5, 0.5), "averaged")


def interpolant_hat1(problem, m, method="split"):
    rule = rules.weighted_averaged_rule(problem.measure, m, method)
    return interpolant_from_rule(problem, rule, "hat1")


def interpolant_hat2(problem, m):
    """theta1 * (Gauss interpolant) + theta2 * (G* interpolant)."""
    return _mix(problem, interpolant_gauss(problem, m), interpolant_gstar(problem, m),
                theta_pair(problem.measure, m), "hat2")


def eval_grid(measure, grid_size=1000):
    """``grid_size`` equispaced points strictly inside [-1, 1]."""
    if measure.family != JACOBI:
        raise ParameterError("uniform error grids are only defined on [-1, 1]")
    return np.linspace(-1.0, 1.0, grid_size + 2)[1:-1]


def uniform_error(interp, reference, grid_size=1000):
    """max |(f_approx - f_ref) u| over the open-interval grid."""
    y = eval_grid(interp.problem.measure, grid_size)
    u = interp.problem.weight(y)
    ref = np.asarray(reference(y), dtype=float)
    return float(np.max(np.abs((interp(y) - ref) * u)))


def estimate_gauss_error(problem, m, grid_size=1000):
    """Estimate the weighted error of the Gauss interpolant by its distance
    to the weighted averaged one, max |(f_hat1 - f_G) u| on the grid."""
    y = eval_grid(problem.measure, grid_size)
    diff = interpolant_hat1(problem, m).weighted(y) - interpolant_gauss(problem, m).weighted(y)
    return float(np.max(np.abs(diff)))
