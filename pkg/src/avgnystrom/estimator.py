"""scikit-learn style front end to the Nystrom solvers."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from . import nystrom, rules
from .iterative import IterationConfig, build_block_system, interpolant_iterative
from .nystrom import FredholmProblem

DIRECT_METHODS = ("G", "antigauss", "gstar", "averaged", "hat1", "hat2")
ITERATIVE_METHODS = ("iter1", "iter2", "iter3")
METHODS = DIRECT_METHODS + ITERATIVE_METHODS

_RULE_OF = {
    "G": rules.GAUSS,
    "antigauss": rules.ANTIGAUSS,
    "gstar": rules.GSTAR,
}


class NystromSolver(BaseEstimator):
    """Solve a second-kind Fredholm equation with a Gauss-type Nystrom method.

    Parameters
    ----------
    m : int
        Order of the underlying Gauss rule.
    method : str
        One of ``G``, ``antigauss``, ``gstar``, ``averaged`` (mean of the Gauss
        and anti-Gauss interpolants), ``hat1`` (direct solve with the
        weighted averaged rule), ``hat2`` (theta-mix of the Gauss and G*
        interpolants) or ``iter1``/``iter2``/``iter3`` (block iterations for
        the ``hat1`` system).
    tol, max_iter : float, int
        Stopping rule of the iterative methods.
    rule_method : {"split", "eigen"}
        How the weighted averaged rule is built for ``hat1``.
    parallel : bool
        Use the previous ``b`` in the second half-step of the iterations.
    divergence_factor : float or None
        Early abort threshold for diverging iterations.

    Attributes
    ----------
    interpolant_ : NystromInterpolant
    n_iter_ : int
        Iterations used (0 for direct methods).
    converged_ : bool
    condition_ : float or None
        Infinity-norm condition number of the solved (or iterated) system.
    """

    def __init__(self, m=8, method="hat1", tol=1e-15, max_iter=100, rule_method="split",
                 parallel=False, divergence_factor=1e6):
        self.m = m
        self.method = method
        self.tol = tol
        self.max_iter = max_iter
        self.rule_method = rule_method
        self.parallel = parallel
        self.divergence_factor = divergence_factor

    def _validate_params(self):
        if not isinstance(self.m, (int, np.integer)) or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m!r}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")

    def fit(self, problem, y=None):
        if not isinstance(problem, FredholmProblem):
            raise TypeError("fit expects a FredholmProblem")
        self._validate_params()
        m, meth = int(self.m), self.method
        self.n_iter_ = 0
        self.converged_ = True
        self.condition_ = None
        self.iteration_result_ = None

        if meth in _RULE_OF:
            rule = rules.make_rule(_RULE_OF[meth], problem.measure, m)
            system = nystrom.assemble(problem, rule)
            self.condition_ = nystrom.condition_infinity(system)
            self.interpolant_ = nystrom.interpolant_from_rule(problem, rule, meth)
        elif meth == "hat1":
            rule = rules.weighted_averaged_rule(problem.measure, m, self.rule_method)
            system = nystrom.assemble(problem, rule)
            self.condition_ = nystrom.condition_infinity(system)
            self.interpolant_ = nystrom.interpolant_from_rule(problem, rule, "hat1")
        elif meth == "hat2":
            self.interpolant_ = nystrom.interpolant_hat2(problem, m)
        elif meth == "averaged":
            self.interpolant_ = nystrom.interpolant_averaged(problem, m)
        else:
            cfg = IterationConfig(meth, self.tol, self.max_iter, self.parallel,
                                  divergence_factor=self.divergence_factor)
            self.interpolant_, res = interpolant_iterative(problem, m, cfg)
            self.condition_ = nystrom.condition_infinity(build_block_system(problem, m).full_matrix())
            self.n_iter_ = res.iterations
            self.converged_ = res.converged
            self.iteration_result_ = res
        self.problem_ = problem
        return self

    def _points(self, y):
        y = np.asarray(y, dtype=float)
        flat = check_array(np.atleast_1d(y).reshape(-1), ensure_2d=False, dtype=float)
        return flat, y.shape

    def predict(self, y):
        """Approximate solution f at the points ``y``."""
        check_is_fitted(self, "interpolant_")
        flat, shape = self._points(y)
        out = self.interpolant_(flat)
        return out.reshape(shape) if shape else float(out[0])

    def predict_weighted(self, y):
        """(f u)(y), the quantity controlled in the weighted norm."""
        check_is_fitted(self, "interpolant_")
        flat, shape = self._points(y)
        out = self.interpolant_.weighted(flat)
        return out.reshape(shape) if shape else float(out[0])

    def error(self, reference, grid_size=1000):
        """Weighted uniform distance to ``reference`` on an interior grid."""
        check_is_fitted(self, "interpolant_")
        return nystrom.uniform_error(self.interpolant_, reference, grid_size)
