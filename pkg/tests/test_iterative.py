import numpy as np
import pytest
import scipy.linalg

from avgnystrom import nystrom, problems, rules
from avgnystrom.iterative import (SCHEMES, IterationConfig, build_block_system, interpolant_iterative,
                                  iterate)
from avgnystrom.measures import Measure
from avgnystrom.nystrom import FredholmProblem

LEGENDRE = Measure.jacobi(0, 0)


def smooth_problem(measure=LEGENDRE):
    return FredholmProblem(lambda x, y: 0.2 * np.cos(x * y), np.exp, measure)


@pytest.mark.parametrize("eq,gamma", [("EX1", 0.0), ("EX2", 0.0), ("EX2", 1.24), ("EX3", 0.5)])
@pytest.mark.parametrize("m", [2, 5, 9])
def test_block_matrix_is_permuted_hat1_system(eq, gamma, m):
    prob = problems.equation(eq, gamma, gamma * (eq == "EX2"))
    bs = build_block_system(prob, m)
    full = nystrom.assemble(prob, rules.weighted_averaged_rule(prob.measure, m))
    nodes = np.concatenate([bs.gauss.nodes, bs.gstar_rule.nodes])
    perm = np.argsort(nodes, kind="stable")
    np.testing.assert_allclose(nodes[perm], full.nodes, atol=1e-15)
    P = bs.full_matrix()[np.ix_(perm, perm)]
    np.testing.assert_allclose(P, full.matrix, atol=1e-13)
    np.testing.assert_allclose(bs.full_rhs()[perm], full.rhs, atol=1e-13)


@pytest.mark.parametrize("scheme", SCHEMES)
@pytest.mark.parametrize("parallel", [False, True])
def test_converges_to_direct_solution(scheme, parallel):
    prob = smooth_problem()
    m = 6
    bs = build_block_system(prob, m)
    tol = 1e-14
    res = iterate(bs, IterationConfig(scheme, tol, 200, parallel))
    assert res.converged and not res.diverged
    direct = scipy.linalg.solve(bs.full_matrix(), bs.full_rhs())
    np.testing.assert_allclose(np.concatenate([res.b, res.c]), direct, atol=10 * tol)


@pytest.mark.parametrize("scheme", SCHEMES)
def test_fixed_point_residual(scheme):
    prob = problems.equation("EX1")
    bs = build_block_system(prob, 6)
    res = iterate(bs, IterationConfig(scheme, 1e-15))
    assert res.converged
    x = np.concatenate([res.b, res.c])
    r = bs.full_matrix() @ x - bs.full_rhs()
    assert np.linalg.norm(r, np.inf) < 1e-13


def test_iterative_interpolant_matches_hat1():
    prob = problems.equation("EX1")
    y = np.linspace(-0.95, 0.95, 23)
    hat1 = nystrom.interpolant_hat1(prob, 6)(y)
    for scheme in SCHEMES:
        f, res = interpolant_iterative(prob, 6, IterationConfig(scheme))
        assert res.converged
        np.testing.assert_allclose(f(y), hat1, atol=1e-13)
        assert f.label == {"iter1": "hat3", "iter2": "hat4", "iter3": "hat5"}[scheme]


@pytest.mark.parametrize("m", [2, 4, 6, 8])
def test_count_ordering(m):
    prob = problems.equation("EX1")
    bs = build_block_system(prob, m)
    n = [iterate(bs, IterationConfig(s)).iterations for s in SCHEMES]
    assert n[0] <= n[1] <= n[2]


def test_zero_kernel_converges_immediately():
    prob = FredholmProblem(lambda x, y: 0 * x * y, np.cos, LEGENDRE)
    for s in SCHEMES:
        res = iterate(build_block_system(prob, 4), IterationConfig(s))
        assert res.converged and res.iterations == 1
        np.testing.assert_allclose(res.c, np.cos(rules.gstar_rule(LEGENDRE, 4).nodes), atol=1e-15)


def test_gauss_block_norm_bound():
    # the Gauss block is at most theta1 times the kernel-weighted rule sum
    prob = smooth_problem()
    for m in (2, 8, 32):
        bs = build_block_system(prob, m)
        bound = bs.theta.theta1 * 0.2 * bs.gauss.weights.sum()
        assert np.linalg.norm(bs.Phi11, np.inf) <= bound * (1 + 1e-13)


def test_divergence_guard_and_cap():
    prob = problems.equation("EX3")
    bs = build_block_system(prob, 4)
    guarded = iterate(bs, IterationConfig("iter3", 1e-12, 100))
    assert guarded.diverged and not guarded.converged and guarded.iterations < 100
    capped = iterate(bs, IterationConfig("iter3", 1e-12, 100, divergence_factor=None))
    assert not capped.converged and capped.iterations == 100
    assert len(capped.history) == 100


def test_rhs_start_option():
    bs = build_block_system(smooth_problem(), 5)
    a = iterate(bs, IterationConfig("iter3", 1e-14, start="rhs"))
    b = iterate(bs, IterationConfig("iter3", 1e-14))
    assert a.converged and b.converged
    np.testing.assert_allclose(a.b, b.b, atol=1e-13)


@pytest.mark.parametrize("kwargs", [
    {"scheme": "iter4"}, {"tol": 0.0}, {"max_iter": 0}, {"start": "zero"},
])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        IterationConfig(**kwargs)
