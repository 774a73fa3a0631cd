"""Gauss, anti-Gauss, G*, averaged and weighted averaged quadrature rules.

All rules are computed from the recurrence coefficients of the measure via
the Golub-Welsch eigenproblem: nodes are the eigenvalues of a symmetric
tridiagonal matrix, weights are ``beta_0`` times the squared first
eigenvector components.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import symtrid
from .exceptions import EvaluationError, NumericalError, ParameterError
from .measures import norm2_monic, recurrence_table, theta_pair

GAUSS = "gauss"
ANTIGAUSS = "antigauss"
GSTAR = "gstar"
AVERAGED = "averaged"
WEIGHTED_AVERAGED = "weighted-averaged"

KINDS = (GAUSS, ANTIGAUSS, GSTAR, AVERAGED, WEIGHTED_AVERAGED)

# relative spacing below which two merged nodes are treated as coincident
_COINCIDENCE = 1e-13
_ENDPOINT_ULPS = 8


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes (ascending) and weights of a rule for ``measure``.

    ``m`` is the order of the underlying Gauss rule, so an anti-Gauss rule
    has ``m + 1`` nodes and the averaged rules ``2m + 1``.  ``internal`` is
    False when some node falls outside the domain of the measure; such rules
    are legal and simply flagged.
    """

    kind: str
    nodes: np.ndarray
    weights: np.ndarray
    measure: object
    m: int
    internal: bool = field(init=False)

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if nodes.shape != weights.shape:
            raise ValueError("nodes and weights differ in length")
        if np.any(np.diff(nodes) <= 0):
            raise NumericalError(f"{self.kind} nodes are not strictly increasing")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "internal", bool(np.all(self.measure.contains(nodes))))

    def __len__(self):
        return len(self.nodes)

    def __call__(self, f):
        return apply(self, f)

    def __repr__(self):
        return (f"QuadratureRule(kind={self.kind!r}, n={len(self)}, m={self.m}, "
                f"measure={self.measure})")


@dataclass(frozen=True)
class ErrorEstimate:
    gauss_value: float
    refined_value: float
    estimate: float


def _check_m(m):
    if int(m) != m or m < 1:
        raise ParameterError(f"m must be a positive integer, got {m!r}")
    return int(m)


def _snap(nodes, measure):
    # nodes that belong on a finite endpoint can land a few ulps outside
    nodes = nodes.copy()
    for end in measure.domain:
        if np.isfinite(end):
            near = np.abs(nodes - end) <= _ENDPOINT_ULPS * np.finfo(float).eps * max(1.0, abs(end))
            nodes[near] = end
    return nodes


def _from_matrix(kind, T, measure, m, beta0):
    eig = symtrid.eigen_first_components(T)
    return QuadratureRule(kind, _snap(eig.values, measure), beta0 * eig.firstcomp2, measure, m)


def _merge(kind, measure, m, parts):
    nodes = np.concatenate([r.nodes for r, _ in parts])
    weights = np.concatenate([s * r.weights for r, s in parts])
    order = np.argsort(nodes, kind="stable")
    nodes, weights = nodes[order], weights[order]
    gaps = np.diff(nodes)
    scale = np.maximum(1.0, np.abs(nodes[1:]))
    if np.any(gaps <= _COINCIDENCE * scale):
        raise NumericalError(f"coincident nodes while merging the {kind} rule (m={m})")
    return QuadratureRule(kind, nodes, weights, measure, m)


@lru_cache(maxsize=256)
def gauss_rule(measure, m):
    """m-point Gauss rule, exact on polynomials of degree 2m - 1."""
    m = _check_m(m)
    t = recurrence_table(measure, m)
    return _from_matrix(GAUSS, symtrid.build_gauss_matrix(t, m), measure, m, t.beta0)


@lru_cache(maxsize=256)
def antigauss_rule(measure, m):
    """(m+1)-point anti-Gauss rule; its nodes may leave the domain."""
    m = _check_m(m)
    t = recurrence_table(measure, m + 1)
    return _from_matrix(ANTIGAUSS, symtrid.build_antigauss_matrix(t, m), measure, m, t.beta0)


@lru_cache(maxsize=256)
def gstar_rule(measure, m):
    """(m+1)-point rule G* whose nodes interlace with the Gauss nodes."""
    m = _check_m(m)
    t = recurrence_table(measure, m + 2)
    return _from_matrix(GSTAR, symtrid.build_gstar_matrix(t, m), measure, m, t.beta0)


@lru_cache(maxsize=256)
def averaged_rule(measure, m):
    """(2m+1)-point mean of the Gauss and anti-Gauss rules."""
    m = _check_m(m)
    return _merge(AVERAGED, measure, m,
                  [(gauss_rule(measure, m), 0.5), (antigauss_rule(measure, m), 0.5)])


@lru_cache(maxsize=256)
def weighted_averaged_rule(measure, m, method="split"):
    """(2m+1)-point weighted averaged rule.

    ``method="split"`` combines the Gauss rule and G* with the weights of
    :func:`~avgnystrom.measures.theta_pair`; ``method="eigen"`` diagonalizes
    the order 2m+1 structured matrix directly.  Both yield the same rule up
    to rounding.
    """
    m = _check_m(m)
    if method == "split":
        th = theta_pair(measure, m)
        return _merge(WEIGHTED_AVERAGED, measure, m,
                      [(gauss_rule(measure, m), th.theta1), (gstar_rule(measure, m), th.theta2)])
    if method == "eigen":
        t = recurrence_table(measure, m + 2)
        return _from_matrix(WEIGHTED_AVERAGED, symtrid.build_hat_matrix(t, m), measure, m, t.beta0)
    raise ValueError(f"unknown method {method!r}, expected 'split' or 'eigen'")


_BUILDERS = {
    GAUSS: gauss_rule,
    ANTIGAUSS: antigauss_rule,
    GSTAR: gstar_rule,
    AVERAGED: averaged_rule,
    WEIGHTED_AVERAGED: weighted_averaged_rule,
}


def make_rule(kind, measure, m):
    try:
        builder = _BUILDERS[kind]
    except KeyError:
        raise ValueError(f"unknown rule kind {kind!r}; expected one of {KINDS}") from None
    return builder(measure, m)


def apply(rule, f):
    """Sum of ``weights * f(nodes)``.

    ``f`` is called once on the whole node array; scalar-only callables are
    evaluated node by node as a fallback.
    """
    x = rule.nodes
    try:
        vals = np.asarray(f(x), dtype=float)
        if vals.shape != x.shape:
            vals = np.broadcast_to(vals, x.shape)
    except (TypeError, ValueError):
        vals = np.array([float(f(xi)) for xi in x])
    bad = ~np.isfinite(vals)
    if np.any(bad):
        raise EvaluationError(f"integrand is not finite at node {x[np.argmax(bad)]!r}")
    return float(np.dot(rule.weights, vals))


def error_estimate(measure, m, f, refined=WEIGHTED_AVERAGED):
    """Estimate ``I(f) - G_m(f)`` by ``refined(f) - G_m(f)``.

    For the weighted averaged rule the difference is formed directly as
    ``theta2 * (G*(f) - G_m(f))`` rather than by subtracting two nearly
    equal sums.
    """
    g = apply(gauss_rule(measure, m), f)
    if refined == AVERAGED:
        est = 0.5 * (apply(antigauss_rule(measure, m), f) - g)
    elif refined == WEIGHTED_AVERAGED:
        est = theta_pair(measure, m).theta2 * (apply(gstar_rule(measure, m), f) - g)
    else:
        raise ValueError(f"refined must be {AVERAGED!r} or {WEIGHTED_AVERAGED!r}")
    return ErrorEstimate(g, g + est, est)


def monic_eval(measure, k, x):
    """Evaluate the monic orthogonal polynomial p_k at ``x`` by recurrence."""
    x = np.asarray(x, dtype=float)
    t = recurrence_table(measure, max(k, 1))
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    for j in range(k):
        p, p_prev = (x - t.alpha[j]) * p - (t.b(j) if j else 0.0) * p_prev, p
    return p


def gstar_weights_formula(measure, m):
    """Weights of G* from its nodes through the closed-form expression

        lambda*_k = (beta_m + beta_{m+1}) / beta_m * ||p_m||^2 / q'(x*_k),

    where ``q = p_m * p*_{m+1}`` and ``p*_{m+1}`` is the monic polynomial
    vanishing at the G* nodes.  Serves as an independent check on the
    eigenvector-based weights.
    """
    m = _check_m(m)
    x = gstar_rule(measure, m).nodes
    t = recurrence_table(measure, m + 2)
    bm, bm1 = t.b(m), t.b(m + 1)
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    dpstar = np.prod(diff, axis=1)
    qprime = monic_eval(measure, m, x) * dpstar
    if np.any(qprime == 0) or not np.all(np.isfinite(qprime)):
        raise NumericalError("vanishing derivative in G* weight formula")
    return (bm + bm1) / bm * norm2_monic(measure, m) / qprime


@dataclass(frozen=True)
class StieltjesBound:
    k: int
    lower: float
    value: float
    upper: float
    holds: bool


def markov_stieltjes_check(measure, m, cumulative, slack=1e-14):
    """Check the partial-sum bracketing of the cumulative measure at G* nodes.

    ``cumulative(x)`` must return the measure of ``(-inf, x]``.  For each
    node ``x*_k`` the report says whether

        sum_{i<k} lambda*_i <= cumulative(x*_k) <= sum_{i<=k} lambda*_i

    holds up to ``slack * beta_0``.
    """
    rule = gstar_rule(measure, m)
    partial = np.concatenate([[0.0], np.cumsum(rule.weights)])
    tol = slack * float(np.sum(rule.weights))
    report = []
    for k, xk in enumerate(rule.nodes, start=1):
        v = float(cumulative(xk))
        lo, hi = float(partial[k - 1]), float(partial[k])
        report.append(StieltjesBound(k, lo, v, hi, lo - tol <= v <= hi + tol))
    return report


def stability_sum(rule, u):
    """sum_k lambda_k / u(x_k), the norm of the rule on the weighted space."""
    return float(np.sum(rule.weights / np.asarray(u(rule.nodes), dtype=float)))
