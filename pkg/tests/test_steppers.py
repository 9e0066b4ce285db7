import numpy as np
import pytest

from ligi.actions import (
    SO3_ON_S2,
    FrozenFieldProblem,
    TranslationAction,
)
from ligi.errors import FixedPointDivergence
from ligi.liealg import SO3, GroupOps
from ligi.problems import (
    DuffingParams,
    duffing_problem,
    free_rigid_body_s2,
    pca_gradient_problem,
    random_orthonormal,
    StiefelFlowProblem,
)
from ligi.steppers import (
    HEUN2,
    KUTTA4,
    ButcherTableau,
    cf4_step,
    convergence_study,
    exponential_euler_step,
    heun_step,
    integrate,
    lie_euler_isotropy_step,
    lie_euler_step,
    rkmk4_step,
    rkmk_step,
)
from oracles import classical_rk_step, fit_slope

FRB = free_rigid_body_s2(1.0, 5.0, 60.0)
Y0_S2 = np.array([np.cos(1.1), 0.0, np.sin(1.1)])
H_SWEEP = [0.1 * 2.0 ** -j for j in range(6)]

ALL_STEPS = [
    ("lie_euler", lie_euler_step, {}),
    ("heun_rkmk", heun_step, {"variant": "rkmk"}),
    ("heun_cg_left", heun_step, {"variant": "cg_left"}),
    ("heun_cg_right", heun_step, {"variant": "cg_right"}),
    ("rkmk_kutta", rkmk_step, {"tableau": KUTTA4}),
    ("rkmk4", rkmk4_step, {}),
    ("cf4", cf4_step, {}),
]


def constant_field_problem(action, xi):
    return FrozenFieldProblem(action=action, coefficient_map=lambda m: xi)


# ---------------------------------------------------------------------------
# Tableaus
# ---------------------------------------------------------------------------

def test_tableau_weights_must_sum_to_one():
    with pytest.raises(ValueError):
        ButcherTableau(a=[[0.0]], b=[0.9])


def test_tableau_row_sums():
    assert np.allclose(KUTTA4.c, [0.0, 0.5, 0.5, 1.0])
    assert np.allclose(KUTTA4.b, [1 / 6, 1 / 3, 1 / 3, 1 / 6])
    assert np.allclose(KUTTA4.a[1:, :3],
                       [[0.5, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 1.0]])
    assert KUTTA4.explicit
    assert not ButcherTableau(a=[[0.5]], b=[1.0]).explicit


# ---------------------------------------------------------------------------
# Constant-field exactness and trivial cases
# ---------------------------------------------------------------------------

def test_lie_euler_zero_field():
    problem = constant_field_problem(SO3_ON_S2, np.zeros(3))
    assert np.allclose(lie_euler_step(problem, Y0_S2, 0.1), Y0_S2, atol=1e-15)


def test_lie_euler_equilibrium_axis():
    p0 = np.array([1.0, 0.0, 0.0])
    assert np.allclose(lie_euler_step(FRB, p0, 0.3), p0, atol=1e-15)


@pytest.mark.parametrize("name,step,kwargs", ALL_STEPS,
                         ids=[n for n, _, _ in ALL_STEPS])
def test_constant_field_exactness(name, step, kwargs, rng):
    xi = rng.normal(size=3) * 0.8
    problem = constant_field_problem(SO3_ON_S2, xi)
    h = 0.37
    expected = SO3_ON_S2.apply(SO3.exp(h * xi), Y0_S2)
    assert np.allclose(step(problem, Y0_S2, h, **kwargs), expected, atol=1e-13)


def test_heun_variants_coincide_for_constant_field(rng):
    xi = rng.normal(size=3)
    problem = constant_field_problem(SO3_ON_S2, xi)
    outs = [heun_step(problem, Y0_S2, 0.2, variant=v)
            for v in ("rkmk", "cg_left", "cg_right")]
    for o in outs[1:]:
        assert np.allclose(o, outs[0], atol=1e-14)


# ---------------------------------------------------------------------------
# Abelian reduction: bit-level agreement with classical Runge-Kutta
# ---------------------------------------------------------------------------

def _polynomial_problem():
    def field(y):
        return np.array([y[1] * y[2], -y[0] + 0.1 * y[2] ** 2, 0.5 * y[0] * y[1]])

    return FrozenFieldProblem(action=TranslationAction(3),
                              coefficient_map=field), field


def test_abelian_reduction_all_schemes(rng):
    problem, field = _polynomial_problem()
    y = rng.normal(size=3)
    h = 0.05
    classical = {
        "heun_rkmk": classical_rk_step(field, y, h, HEUN2.a, HEUN2.b),
        "heun_cg_left": classical_rk_step(field, y, h, HEUN2.a, HEUN2.b),
        "heun_cg_right": classical_rk_step(field, y, h, HEUN2.a, HEUN2.b),
        "rkmk_kutta": classical_rk_step(field, y, h, KUTTA4.a, KUTTA4.b),
        "rkmk4": classical_rk_step(field, y, h, KUTTA4.a, KUTTA4.b),
        "cf4": classical_rk_step(field, y, h, KUTTA4.a, KUTTA4.b),
        "lie_euler": y + h * field(y),
    }
    for name, step, kwargs in ALL_STEPS:
        out = step(problem, y, h, **kwargs)
        assert np.max(np.abs(out - classical[name])) < 1e-14, name


# ---------------------------------------------------------------------------
# Isotropy-shifted Lie-Euler
# ---------------------------------------------------------------------------

def test_isotropy_step_alpha_zero_matches_plain():
    out0 = lie_euler_isotropy_step(FRB, Y0_S2, 0.1, alpha=0.0)
    assert np.array_equal(out0, lie_euler_step(FRB, Y0_S2, 0.1))


def test_isotropy_sweep_stays_on_sphere():
    # Terminal points move continuously with alpha and stay on the sphere.
    outs = []
    for alpha in np.linspace(0.0, 25.0, 26):
        out = lie_euler_isotropy_step(FRB, Y0_S2, 0.2, alpha=alpha)
        assert abs(np.linalg.norm(out) - 1.0) < 1e-13
        outs.append(out)
    gaps = [np.linalg.norm(b - a) for a, b in zip(outs, outs[1:])]
    assert max(gaps) < 0.25
    assert np.linalg.norm(outs[-1] - outs[0]) > 1e-3  # alpha does change the step


# ---------------------------------------------------------------------------
# Orders on the free rigid body
# ---------------------------------------------------------------------------

def test_rigid_body_orders():
    expected = {
        "lie_euler": (1.0, 0.2),
        "heun_rkmk": (2.0, 0.2),
        "heun_cg_left": (2.0, 0.2),
        "heun_cg_right": (2.0, 0.2),
        "rkmk_kutta": (4.0, 0.3),
        "rkmk4": (4.0, 0.3),
        "cf4": (4.0, 0.3),
    }
    for name, step, kwargs in ALL_STEPS:
        slope, _ = convergence_study(FRB, step, Y0_S2, 2.0, H_SWEEP, **kwargs)
        order, tol = expected[name]
        assert abs(slope - order) <= tol, (name, slope)


def test_rkmk4_agrees_with_generic_kutta_to_h5():
    # Same tableau, different dexpinv treatment: difference is O(h^5).
    errs = []
    for h in (0.2, 0.1, 0.05):
        a = rkmk4_step(FRB, Y0_S2, h)
        b = rkmk_step(FRB, Y0_S2, h, tableau=KUTTA4, series_order=4)
        errs.append(np.linalg.norm(a - b))
    slope = fit_slope([0.2, 0.1, 0.05], errs)
    assert slope >= 4.5


def test_rkmk_implicit_tableau_fixed_point():
    # Implicit midpoint as a 1-stage tableau; second order, solved by
    # fixed-point iteration.
    midpoint = ButcherTableau(a=[[0.5]], b=[1.0])
    slope, _ = convergence_study(FRB, rkmk_step, Y0_S2, 1.0, H_SWEEP[:4],
                                 tableau=midpoint, series_order=4)
    assert abs(slope - 2.0) < 0.3


def test_rkmk_implicit_divergence_reports_h():
    # Contraction factor ~0.9: iterates stay bounded but cannot reach the
    # tolerance within the allowed iterations.
    midpoint = ButcherTableau(a=[[0.5]], b=[1.0])
    problem = FrozenFieldProblem(
        action=SO3_ON_S2,
        coefficient_map=lambda m: 8.0 * np.array([m[1], m[2], m[0]]))
    with pytest.raises(FixedPointDivergence) as err:
        rkmk_step(problem, Y0_S2, 0.225, tableau=midpoint, max_iter=10)
    assert err.value.h == 0.225


def test_cf4_exponential_count():
    # Counting through a proxy group: the scheme needs five exponentials.
    calls = {"exp": 0}

    class CountingGroup(GroupOps):
        dim = 3

        def bracket(self, a, b):
            return SO3.bracket(a, b)

        def exp(self, xi):
            calls["exp"] += 1
            return SO3.exp(xi)

        def mul(self, a, b):
            return SO3.mul(a, b)

        def identity(self):
            return SO3.identity()

    class CountingAction(type(SO3_ON_S2)):
        group = CountingGroup()

    problem = FrozenFieldProblem(action=CountingAction(),
                                 coefficient_map=FRB.coefficient_map)
    cf4_step(problem, Y0_S2, 0.1)
    assert calls["exp"] == 5


def test_cf4_and_rkmk4_agree_to_h4(rng):
    errs = []
    hs = (0.2, 0.1, 0.05)
    for h in hs:
        a = rkmk4_step(FRB, Y0_S2, h)
        b = cf4_step(FRB, Y0_S2, h)
        errs.append(np.linalg.norm(a - b))
    assert fit_slope(hs, errs) >= 3.5  # both are O(h^5) from the flow


# ---------------------------------------------------------------------------
# Orbit preservation
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name,step,kwargs", ALL_STEPS,
                         ids=[n for n, _, _ in ALL_STEPS])
def test_sphere_norm_preserved(name, step, kwargs):
    y = Y0_S2
    for _ in range(100):
        y = step(FRB, y, 0.05, **kwargs)
        assert abs(np.linalg.norm(y) - 1.0) < 1e-13


def test_stiefel_orthonormality_preserved():
    flow = StiefelFlowProblem(np.diag([5.0, 4.0, 3.0, 2.0, 1.0, 0.5]), k=2)
    problem = pca_gradient_problem(flow)
    Q = random_orthonormal(6, 2, 7)
    for _ in range(50):
        Q = cf4_step(problem, Q, 0.05)
        assert np.linalg.norm(Q.T @ Q - np.eye(2)) < 1e-12


# ---------------------------------------------------------------------------
# Exponential Euler
# ---------------------------------------------------------------------------

def test_exponential_euler_zero_linear_part(rng):
    u = rng.normal(size=3)
    N = lambda v: np.array([1.0, -2.0, 0.5])
    out = exponential_euler_step(np.zeros((3, 3)), N, u, 0.1)
    assert np.allclose(out, u + 0.1 * N(u), atol=1e-14)


def test_exponential_euler_pure_linear(rng):
    from oracles import taylor_expm
    L = rng.normal(size=(3, 3))
    u = rng.normal(size=3)
    out = exponential_euler_step(L, lambda v: np.zeros(3), u, 0.3)
    assert np.allclose(out, taylor_expm(0.3 * L) @ u, atol=1e-12)


def test_exponential_euler_scalar_phi_value():
    out = exponential_euler_step(np.array([[1.0]]), lambda v: np.array([1.0]),
                                 np.array([0.0]), 1.0)
    assert abs(out[0] - (np.e - 1.0)) < 1e-13


# ---------------------------------------------------------------------------
# Trajectories and convergence studies
# ---------------------------------------------------------------------------

def test_integrate_zero_steps():
    traj = integrate(FRB, rkmk4_step, Y0_S2, 0.1, 0)
    assert len(traj) == 1
    assert np.array_equal(traj.final, Y0_S2)
    assert traj.invariants["norm"].shape == (1,)


def test_integrate_records_invariants():
    traj = integrate(FRB, rkmk4_step, Y0_S2, 0.05, 20)
    assert len(traj) == 21
    assert np.all(np.diff(traj.times) > 0)
    assert np.max(np.abs(traj.invariants["norm"] - 1.0)) < 1e-13


def test_convergence_study_requires_decreasing_h():
    with pytest.raises(ValueError):
        convergence_study(FRB, lie_euler_step, Y0_S2, 1.0, [0.1, 0.1])


def test_duffing_linear_lie_euler_exact_any_h():
    # With b = 0 the oscillation coefficient matrix is constant, so the
    # frozen flow is the exact flow for any step size.
    problem = duffing_problem(DuffingParams(1.0, 0.0), "sl2")
    y = np.array([0.75, 0.75])
    h, n = 0.7, 12
    for _ in range(n):
        y = lie_euler_step(problem, y, h)
    t = h * n
    exact = np.array([0.75 * np.cos(t) + 0.75 * np.sin(t),
                      0.75 * np.cos(t) - 0.75 * np.sin(t)])
    assert np.allclose(y, exact, atol=1e-12)
