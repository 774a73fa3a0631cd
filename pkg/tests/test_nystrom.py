import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from avgnystrom import nystrom, problems, rules
from avgnystrom.exceptions import AssemblyError, DomainError, ParameterError
from avgnystrom.experiments import signed_errors
from avgnystrom.measures import Measure
from avgnystrom.nystrom import FredholmProblem, SpaceWeight

LEGENDRE = Measure.jacobi(0, 0)
BUILDERS = {
    "G": nystrom.interpolant_gauss,
    "antigauss": nystrom.interpolant_antigauss,
    "gstar": nystrom.interpolant_gstar,
    "averaged": nystrom.interpolant_averaged,
    "hat1": nystrom.interpolant_hat1,
    "hat2": nystrom.interpolant_hat2,
}
SINGLE_SYSTEM = ("G", "antigauss", "gstar", "hat1")


def zero_kernel(x, y):
    return 0.0 * x * y


@pytest.mark.parametrize("name", BUILDERS)
def test_zero_kernel_returns_rhs(name):
    prob = FredholmProblem(zero_kernel, np.sin, Measure.jacobi(0.25, 0.25), SpaceWeight(0.5, 0.5))
    f = BUILDERS[name](prob, 4)
    y = np.linspace(-0.99, 0.99, 31)
    np.testing.assert_allclose(f(y), np.sin(y), atol=1e-15)
    if name in SINGLE_SYSTEM:
        x = f.nodes
        np.testing.assert_allclose(f.coefficients, np.sin(x) * prob.weight(x), atol=1e-15)


def test_zero_kernel_identity_matrix():
    prob = FredholmProblem(zero_kernel, np.cos, LEGENDRE)
    sys_ = nystrom.assemble(prob, rules.gauss_rule(LEGENDRE, 5))
    np.testing.assert_array_equal(sys_.matrix, np.eye(5))
    assert nystrom.condition_infinity(sys_) == pytest.approx(1.0)


def test_condition_examples():
    assert nystrom.condition_infinity(np.eye(4)) == pytest.approx(1.0)
    assert nystrom.condition_infinity(np.diag([1.0, 2.0])) == pytest.approx(2.0)


def test_unit_weight_is_plain_nystrom():
    prob = problems.equation("EX2")
    rule = rules.gauss_rule(prob.measure, 6)
    s = nystrom.assemble(prob, rule)
    x, w = rule.nodes, rule.weights
    K = prob.kernel(x[None, :], x[:, None])
    np.testing.assert_allclose(s.matrix, np.eye(6) + K * w[None, :], rtol=1e-15)
    np.testing.assert_allclose(s.rhs, prob.rhs(x), rtol=1e-15)


@pytest.mark.parametrize("gamma", [0.0, 0.5, 1.24])
def test_weighting_is_a_similarity(gamma):
    # the weighted unknowns are u(x_i) times the unweighted ones
    plain = problems.equation("EX2")
    weighted = problems.equation("EX2", gamma, gamma)
    for name in SINGLE_SYSTEM:
        a = BUILDERS[name](plain, 8)
        b = BUILDERS[name](weighted, 8)
        np.testing.assert_allclose(b.coefficients, a.coefficients * weighted.weight(a.nodes),
                                   rtol=1e-12, atol=1e-14)
        y = np.linspace(-0.9, 0.9, 17)
        np.testing.assert_allclose(b(y), a(y), rtol=1e-12)


@pytest.mark.parametrize("name", SINGLE_SYSTEM)
@pytest.mark.parametrize("eq", ["EX1", "EX2", "EX3"])
def test_interpolant_collocates(name, eq):
    prob = problems.equation(eq, *(0.5, 0.5) if eq == "EX2" else (0.0, 0.0))
    f = BUILDERS[name](prob, 6)
    np.testing.assert_allclose(f.weighted(f.nodes), f.coefficients, rtol=1e-12, atol=1e-14)


@pytest.mark.parametrize("m", [2, 3, 6, 12])
def test_chebyshev_hat2_is_averaged(m):
    prob = FredholmProblem(lambda x, y: np.exp(x * y) / 3, np.cos, Measure.jacobi(-0.5, -0.5))
    y = np.linspace(-0.99, 0.99, 41)
    np.testing.assert_allclose(nystrom.interpolant_hat2(prob, m)(y),
                               nystrom.interpolant_averaged(prob, m)(y), atol=1e-13)


@pytest.mark.parametrize("m", [4, 6, 8])
def test_hat1_beats_gauss(m):
    prob = problems.equation("EX1")
    ref = problems.reference_solution("EX1")
    e_hat = nystrom.uniform_error(nystrom.interpolant_hat1(prob, m), ref)
    e_g = nystrom.uniform_error(nystrom.interpolant_gauss(prob, m), ref)
    assert e_hat < e_g


def test_gauss_error_estimate_tracks_error():
    prob = problems.equation("EX1")
    ref = problems.reference_solution("EX1")
    for m in (2, 4, 6):
        err = nystrom.uniform_error(nystrom.interpolant_gauss(prob, m), ref)
        est = nystrom.estimate_gauss_error(prob, m)
        assert 0.2 * err < est < 5 * err


def test_full_system_averaged_variant():
    prob = problems.equation("EX1")
    ref = problems.reference_solution("EX1")
    full = nystrom.interpolant_averaged(prob, 4, full_system=True)
    assert len(full.nodes) == 9
    assert nystrom.uniform_error(full, ref) < 1e-5


@pytest.mark.parametrize("name", ["hat1", "hat2", "G"])
def test_condition_bounded(name):
    prob = problems.equation("EX1")
    rule_of = {"hat1": lambda m: rules.weighted_averaged_rule(LEGENDRE, m),
               "hat2": lambda m: rules.gstar_rule(LEGENDRE, m),
               "G": lambda m: rules.gauss_rule(LEGENDRE, m)}[name]
    c8 = nystrom.condition_infinity(nystrom.assemble(prob, rule_of(8)))
    c64 = nystrom.condition_infinity(nystrom.assemble(prob, rule_of(64)))
    assert c64 <= 2 * c8


def test_gauss_and_gstar_errors_have_opposite_signs():
    r = signed_errors("EX1", 2, 200)
    g, a, s = (np.array(r.column(c)) for c in ("G", "antigauss", "gstar"))
    assert np.all(g * s < 0) and np.all(g * a < 0)
    r = signed_errors("EX2", 2, 200)
    g, s = np.array(r.column("G")), np.array(r.column("gstar"))
    assert np.mean(g * s < 0) > 0.85


def test_domain_error():
    f = nystrom.interpolant_gauss(problems.equation("EX1"), 4)
    with pytest.raises(DomainError):
        f(1.5)
    with pytest.raises(DomainError):
        f.weighted(np.array([0.0, -1.01]))


def test_scalar_and_array_evaluation():
    f = nystrom.interpolant_hat1(problems.equation("EX1"), 4)
    y = np.array([[0.1, 0.2], [0.3, 0.4]])
    out = f(y)
    assert out.shape == (2, 2)
    assert f(0.3) == pytest.approx(out[1, 0], rel=1e-15)
    fu, fv = f.evaluate(y)
    np.testing.assert_allclose(fu, fv)  # u = 1


@pytest.mark.parametrize("gamma,delta", [(-0.1, 0.0), (0.0, -1.0)])
def test_space_weight_nonnegative(gamma, delta):
    with pytest.raises(ParameterError):
        SpaceWeight(gamma, delta)


def test_space_weight_must_fit_measure():
    with pytest.raises(ParameterError):
        problems.equation("EX3", 0.8, 0.0)  # gamma must stay below alpha + 1 = 0.75
    with pytest.raises(ParameterError):
        FredholmProblem(zero_kernel, np.cos, Measure.hermite(), SpaceWeight(0.5, 0.5))
    problems.equation("EX2", 1.24, 1.24)


def test_out_of_domain_rule_rejected():
    mu = Measure.laguerre(0.5)
    rule = rules.gstar_rule(mu, 2)
    assert not rule.internal
    with pytest.raises(AssemblyError):
        nystrom.assemble(FredholmProblem(zero_kernel, np.cos, mu), rule)


def test_error_grid_only_on_interval():
    with pytest.raises(ParameterError):
        nystrom.eval_grid(Measure.hermite())
    y = nystrom.eval_grid(LEGENDRE, 10)
    assert len(y) == 10 and y[0] > -1 and y[-1] < 1


@settings(max_examples=25, deadline=None)
@given(c=st.floats(-0.4, 0.4), m=st.integers(1, 10))
def test_degenerate_kernel_solved_exactly(c, m):
    # k(x, y) = c is rank one; with polynomial data the solution is known
    prob = FredholmProblem(lambda x, y: c + 0 * x * y, lambda y: y * y, LEGENDRE)
    exact_shift = c * (2 / 3) / (1 + 2 * c)
    f = nystrom.interpolant_hat1(prob, m)
    y = np.linspace(-0.9, 0.9, 7)
    np.testing.assert_allclose(f(y), y * y - exact_shift, atol=1e-13)
