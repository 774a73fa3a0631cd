"""Built-in integrals and integral equations used by the CLI and the tests."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from . import rules
from .measures import Measure
from .nystrom import FredholmProblem, SpaceWeight, interpolant_gauss

REFERENCE_M = 512


@dataclass(frozen=True)
class Integral:
    name: str
    integrand: Callable
    measure: Measure
    exact: Optional[float] = None
    reference_nodes: Optional[int] = None

    def value(self):
        """Exact value when known, else the Gauss rule with ``reference_nodes`` nodes."""
        if self.exact is not None:
            return self.exact
        return _gauss_reference(self.name)


def _i1(x):
    return x * np.exp(x) * np.cos(x + 1.0)


def _i2(x):
    return 1.0 / ((x - 2.0) ** 2 + 4.0)


INTEGRALS = {
    "I1": Integral("I1", _i1, Measure.jacobi(0.0, 0.0),
                   exact=(1.0 + np.e ** 2 * np.cos(2.0)) / (2.0 * np.e)),
    "I2": Integral("I2", _i2, Measure.laguerre(0.5), reference_nodes=1024),
    "I3": Integral("I3", np.cosh, Measure.hermite(), reference_nodes=512),
}


@lru_cache(maxsize=None)
def _gauss_reference(name):
    it = INTEGRALS[name]
    return rules.apply(rules.gauss_rule(it.measure, it.reference_nodes), it.integrand)


# Example 1: exact solution cos(3y)
_C1 = (8 * np.cos(2.0) - 4 * np.cos(4.0) - 4 * np.sin(2.0) + np.sin(4.0)) / 32.0


def _k1(x, y):
    return 0.5 * x * np.exp(y) * np.sin(x + y)


def _g1(y):
    return _C1 * np.exp(y) * np.cos(y) + np.cos(3 * y)


def _f1(y):
    return np.cos(3 * y)


def _k2(x, y):
    return np.exp(x + y) / (1.0 + x * x + 3.0 * y * y)


def _g2(y):
    return np.abs(y + 1.0) ** 1.5


def _k3(x, y):
    return (y + 3.0) * np.abs(np.cos(3.0 + x)) ** 2.5


def _g3(y):
    return np.log1p(y * y)


_EQUATIONS = {
    "EX1": (_k1, _g1, Measure.jacobi(0.0, 0.0), _f1),
    "EX2": (_k2, _g2, Measure.jacobi(0.25, 0.25), None),
    "EX3": (_k3, _g3, Measure.jacobi(-0.25, 0.8), None),
}

PROBLEM_IDS = tuple(INTEGRALS) + tuple(_EQUATIONS)


def equation(name, gamma=0.0, delta=0.0):
    """FredholmProblem for EX1, EX2 or EX3 in the space weighted by (gamma, delta)."""
    try:
        k, g, mu, exact = _EQUATIONS[name]
    except KeyError:
        raise KeyError(f"unknown equation {name!r}; expected one of {tuple(_EQUATIONS)}") from None
    return FredholmProblem(k, g, mu, SpaceWeight(gamma, delta), exact, name)


@lru_cache(maxsize=None)
def _reference_interpolant(name):
    return interpolant_gauss(equation(name), REFERENCE_M)


def reference_solution(name):
    """Callable giving the exact solution, or the 512-node Gauss-Nystrom one.

    The reference is always computed in the unweighted space.
    """
    k, g, mu, exact = _EQUATIONS[name]
    if exact is not None:
        return exact
    return _reference_interpolant(name)
