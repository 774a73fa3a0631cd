"""Stationary block iterations for the weighted averaged Nystrom system.

Ordering the Gauss nodes before the G* nodes, the (2m+1)-order system
splits into

    [ I + Phi11    Phi12    ] [b]   [gG]
    [ Phi21     I + Phi22   ] [c] = [g*]

with ``b`` the weighted values at the Gauss nodes and ``c`` those at the
G* nodes.  Three schemes are offered:

``iter1``  block Gauss-Seidel, one LU of each diagonal block;
``iter2``  LU of ``I + Phi11`` only, explicit update of ``c``;
``iter3``  Richardson-type, matrix-vector products only.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import rules
from .measures import ThetaPair, theta_pair
from .nystrom import (Component, NystromInterpolant, _u_at, _weighted_rhs, assemble,
                      kernel_matrix, lu_factor)

SCHEMES = ("iter1", "iter2", "iter3")


@dataclass(frozen=True)
class IterationConfig:
    scheme: str = "iter1"
    tol: float = 1e-15
    max_iter: int = 100
    parallel: bool = False
    # initial b: "gauss" = Gauss-Nystrom solution, "rhs" = gG
    start: str = "gauss"
    # abort once an update is this many times larger than the first one; None disables
    divergence_factor: float | None = 1e6

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; expected one of {SCHEMES}")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")
        if self.start not in ("gauss", "rhs"):
            raise ValueError(f"start must be 'gauss' or 'rhs', got {self.start!r}")


@dataclass(frozen=True)
class BlockSystem:
    Phi11: np.ndarray
    Phi12: np.ndarray
    Phi21: np.ndarray
    Phi22: np.ndarray
    gG: np.ndarray
    gstar: np.ndarray
    theta: ThetaPair
    gauss: object
    gstar_rule: object
    uG: np.ndarray
    ustar: np.ndarray
    b0: np.ndarray
    c0: np.ndarray

    @property
    def m(self):
        return len(self.gG)

    def full_matrix(self):
        m = self.m
        top = np.hstack([np.eye(m) + self.Phi11, self.Phi12])
        bottom = np.hstack([self.Phi21, np.eye(m + 1) + self.Phi22])
        return np.vstack([top, bottom])

    def full_rhs(self):
        return np.concatenate([self.gG, self.gstar])


@dataclass
class IterationResult:
    b: np.ndarray
    c: np.ndarray
    iterations: int
    converged: bool
    history: list = field(default_factory=list)
    diverged: bool = False


def _block(problem, xs, ws, us, ys, uy, scale):
    return scale * kernel_matrix(problem, xs, ys) * (ws / us)[None, :] * uy[:, None]


def build_block_system(problem, m):
    """Blocks of the weighted averaged system, Gauss nodes first.

    Entries carry the same ``u(x_i) / u(x_j)`` scaling as the full system,
    so the block matrix is a row and column permutation of it.  ``b0`` and
    ``c0`` solve the standalone Gauss and G* Nystrom systems and serve as
    starting guesses.
    """
    mu = problem.measure
    G = rules.gauss_rule(mu, m)
    S = rules.gstar_rule(mu, m)
    th = theta_pair(mu, m)
    uG = _u_at(problem, G.nodes)
    uS = _u_at(problem, S.nodes)
    t1, t2 = th.theta1, th.theta2
    gG = _weighted_rhs(problem, G.nodes, uG)
    gS = _weighted_rhs(problem, S.nodes, uS)
    b0 = scipy.linalg.lu_solve(lu_factor(assemble(problem, G).matrix), gG)
    c0 = scipy.linalg.lu_solve(lu_factor(assemble(problem, S).matrix), gS)
    return BlockSystem(
        Phi11=_block(problem, G.nodes, G.weights, uG, G.nodes, uG, t1),
        Phi12=_block(problem, S.nodes, S.weights, uS, G.nodes, uG, t2),
        Phi21=_block(problem, G.nodes, G.weights, uG, S.nodes, uS, t1),
        Phi22=_block(problem, S.nodes, S.weights, uS, S.nodes, uS, t2),
        gG=gG, gstar=gS,
        theta=th, gauss=G, gstar_rule=S, uG=uG, ustar=uS, b0=b0, c0=c0,
    )


def iterate(system, config=None):
    """Run the scheme in ``config`` from ``c = c0`` and ``b = b0`` (or ``gG``).

    Only iter3 really depends on the starting ``b``; the other two schemes
    overwrite it in their first half-step, except in the parallel variant.
    Stops when both 2-norm updates drop below ``config.tol``; the reported
    iteration count is the number of completed (b, c) updates.
    """
    cfg = config or IterationConfig()
    s = system
    m = s.m
    lu11 = lu_factor(np.eye(m) + s.Phi11) if cfg.scheme in ("iter1", "iter2") else None
    lu22 = lu_factor(np.eye(m + 1) + s.Phi22) if cfg.scheme == "iter1" else None

    b = (s.b0 if cfg.start == "gauss" else s.gG).copy()
    c = s.c0.copy()
    history = []
    first = None
    for k in range(1, cfg.max_iter + 1):
        rb = s.gG - s.Phi12 @ c
        if cfg.scheme == "iter3":
            b_new = rb - s.Phi11 @ b
        else:
            b_new = scipy.linalg.lu_solve(lu11, rb)
        b_used = b if cfg.parallel else b_new
        rc = s.gstar - s.Phi21 @ b_used
        if cfg.scheme == "iter1":
            c_new = scipy.linalg.lu_solve(lu22, rc)
        else:
            c_new = rc - s.Phi22 @ c

        db = float(np.linalg.norm(b_new - b))
        dc = float(np.linalg.norm(c_new - c))
        b, c = b_new, c_new
        history.append((db, dc))
        if db < cfg.tol and dc < cfg.tol:
            return IterationResult(b, c, k, True, history)
        if not (np.isfinite(db) and np.isfinite(dc)):
            return IterationResult(b, c, k, False, history, diverged=True)
        size = max(db, dc)
        if first is None:
            first = size
        elif cfg.divergence_factor is not None and size > cfg.divergence_factor * max(first, cfg.tol):
            return IterationResult(b, c, k, False, history, diverged=True)
    return IterationResult(b, c, cfg.max_iter, False, history)


def interpolant_iterative(problem, m, config=None):
    """Iterated weighted averaged interpolant; returns ``(interpolant, result)``."""
    cfg = config or IterationConfig()
    s = build_block_system(problem, m)
    res = iterate(s, cfg)
    G, S = s.gauss, s.gstar_rule
    comps = (
        Component(G.nodes, s.theta.theta1 * G.weights, res.b, s.uG),
        Component(S.nodes, s.theta.theta2 * S.weights, res.c, s.ustar),
    )
    label = {"iter1": "hat3", "iter2": "hat4", "iter3": "hat5"}[cfg.scheme]
    return NystromInterpolant(comps, problem, label, s.theta), res
