"""Stepping schemes built on group actions.

All steppers advance a point by composing exact flows of frozen vector
fields, so any invariant of the group orbits (norms, orthonormality) is
preserved by construction.  On the translation action every scheme reduces
to its classical Runge-Kutta counterpart.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .actions import FrozenFieldProblem
from .errors import FixedPointDivergence
from .liealg import affine_exp


@dataclass(frozen=True)
class ButcherTableau:
    """Runge-Kutta coefficients (a, b, c) with c defaulting to row sums."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray = None

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.a, dtype=float))
        b = np.asarray(self.b, dtype=float)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if abs(b.sum() - 1.0) > 1e-14:
            raise ValueError(f"tableau weights must sum to 1, got {b.sum()!r}")
        c = self.c if self.c is not None else a.sum(axis=1)
        object.__setattr__(self, "c", np.asarray(c, dtype=float))

    @property
    def stages(self):
        return len(self.b)

    @property
    def explicit(self):
        return np.allclose(np.triu(self.a), 0.0)


KUTTA4 = ButcherTableau(
    a=[[0.0, 0.0, 0.0, 0.0],
       [0.5, 0.0, 0.0, 0.0],
       [0.0, 0.5, 0.0, 0.0],
       [0.0, 0.0, 1.0, 0.0]],
    b=[1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0],
)

HEUN2 = ButcherTableau(a=[[0.0, 0.0], [1.0, 0.0]], b=[0.5, 0.5])


# ---------------------------------------------------------------------------
# Single steps
# ---------------------------------------------------------------------------

def lie_euler_step(problem: FrozenFieldProblem, y, h):
    """Flow of the field frozen at y for time h."""
    act = problem.action
    return act.apply(act.exp(h * problem.coefficient_map(y)), y)


def lie_euler_isotropy_step(problem: FrozenFieldProblem, y, h, alpha=0.0):
    """Lie-Euler on S^2 with the coefficient shifted along the isotropy.

    Replacing f(y) by f(y) + alpha*y leaves the field at y unchanged but
    changes the numerical update; alpha tunes that freedom.
    """
    act = problem.action
    xi = problem.coefficient_map(y) + alpha * np.asarray(y, float)
    return act.apply(act.exp(h * xi), y)


def heun_step(problem: FrozenFieldProblem, y, h, variant="rkmk"):
    """Second-order Heun scheme in one of its three group interpretations.

    variant selects the update from the stage values k1 = f(y),
    k2 = f(exp(h k1) . y):

    * "rkmk":     exp(h/2 (k1 + k2)) . y
    * "cg_left":  exp(h/2 k1) . exp(h/2 k2) . y
    * "cg_right": exp(h/2 k2) . exp(h/2 k1) . y
    """
    act = problem.action
    f = problem.coefficient_map
    k1 = f(y)
    k2 = f(act.apply(act.exp(h * k1), y))
    if variant == "rkmk":
        return act.apply(act.exp(0.5 * h * (k1 + k2)), y)
    if variant == "cg_left":
        return act.apply(act.exp(0.5 * h * k1), act.apply(act.exp(0.5 * h * k2), y))
    if variant == "cg_right":
        return act.apply(act.exp(0.5 * h * k2), act.apply(act.exp(0.5 * h * k1), y))
    raise ValueError(f"unknown Heun variant {variant!r}")


def rkmk_step(problem: FrozenFieldProblem, y, h, tableau: ButcherTableau = KUTTA4,
              series_order=4, tol=1e-12, max_iter=100):
    """Runge-Kutta method run in the Lie algebra with dexpinv corrections.

    Stage equations k_i = dexpinv_{u_i}(f(exp(u_i) . y)), u_i = h sum_j a_ij k_j,
    update y1 = exp(h sum_i b_i k_i) . y.  Implicit tableaus are solved by
    fixed-point iteration on the stage vector.
    """
    act = problem.action
    group = act.group
    f = problem.coefficient_map
    a, b, s = tableau.a, tableau.b, tableau.stages

    def stage(stages, i):
        u = h * sum(a[i, j] * stages[j] for j in range(s) if a[i, j] != 0.0)
        if isinstance(u, float):  # all-zero row
            return f(y)
        return group.dexpinv(u, f(act.apply(group.exp(u), y)), series_order)

    if tableau.explicit:
        stages = []
        for i in range(s):
            stages.append(stage(stages, i))
    else:
        stages = [f(y)] * s
        for it in range(max_iter):
            new = [stage(stages, i) for i in range(s)]
            delta = max(np.max(np.abs(new[i] - stages[i])) for i in range(s))
            stages = new
            if delta < tol:
                break
        else:
            raise FixedPointDivergence(
                "implicit tableau stages did not converge", h=h, residual=delta)

    v = h * sum(b[i] * stages[i] for i in range(s))
    return act.apply(group.exp(v), y)


def rkmk4_step(problem: FrozenFieldProblem, y, h):
    """Fourth-order scheme with dexpinv replaced by its optimal Lie polynomials."""
    act = problem.action
    group = act.group
    f = problem.coefficient_map
    k1 = h * np.asarray(f(y), float)
    k2 = h * np.asarray(f(act.apply(group.exp(0.5 * k1), y)), float)
    k3 = h * np.asarray(
        f(act.apply(group.exp(0.5 * k2 - 0.125 * group.bracket(k1, k2)), y)), float)
    k4 = h * np.asarray(f(act.apply(group.exp(k3), y)), float)
    v = (k1 + 2.0 * k2 + 2.0 * k3 + k4 - 0.5 * group.bracket(k1, k4)) / 6.0
    return act.apply(group.exp(v), y)


def cf4_step(problem: FrozenFieldProblem, y, h):
    """Commutator-free fourth-order scheme (five exponentials per step)."""
    act = problem.action
    group = act.group
    f = problem.coefficient_map
    k1 = h * np.asarray(f(y), float)
    y2 = act.apply(group.exp(0.5 * k1), y)
    k2 = h * np.asarray(f(y2), float)
    k3 = h * np.asarray(f(act.apply(group.exp(0.5 * k2), y)), float)
    k4 = h * np.asarray(f(act.apply(group.exp(k3 - 0.5 * k1), y2)), float)
    y_half = act.apply(group.exp((3.0 * k1 + 2.0 * k2 + 2.0 * k3 - k4) / 12.0), y)
    return act.apply(group.exp((-k1 + 2.0 * k2 + 2.0 * k3 + 3.0 * k4) / 12.0), y_half)


def exponential_euler_step(L, N, u, h):
    """One step of exp(hL) u + h phi(hL) N(u), built via the affine exponential."""
    A, b = affine_exp(h, L, N(u))
    return A @ np.asarray(u, float) + b


# ---------------------------------------------------------------------------
# Trajectories and convergence studies
# ---------------------------------------------------------------------------

@dataclass
class Trajectory:
    """Time-stamped states plus invariant diagnostics."""

    times: np.ndarray
    states: list
    invariants: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.times)

    @property
    def final(self):
        return self.states[-1]


def integrate(problem: FrozenFieldProblem, step: Callable, y0, h, n_steps,
              **step_kwargs) -> Trajectory:
    """Run a constant-step scheme, recording states and invariants."""
    times = np.arange(n_steps + 1) * float(h)
    states = [y0]
    names = [name for name, _ in problem.invariants]
    values = {name: [fn(y0)] for name, fn in problem.invariants}
    y = y0
    for _ in range(n_steps):
        y = step(problem, y, h, **step_kwargs)
        states.append(y)
        for name, fn in problem.invariants:
            values[name].append(fn(y))
    return Trajectory(times, states, {n: np.asarray(values[n]) for n in names})


def state_distance(a, b):
    """Euclidean distance between two states of the same layout."""
    if isinstance(a, tuple):
        return float(np.sqrt(sum(state_distance(x, y) ** 2 for x, y in zip(a, b))))
    return float(np.linalg.norm(np.asarray(a, float) - np.asarray(b, float)))


def convergence_study(problem: FrozenFieldProblem, step: Callable, y0, T, h_list,
                      reference_step: Optional[Callable] = None,
                      reference_refinement=20, **step_kwargs):
    """Empirical order of a scheme against a fine reference trajectory.

    Returns (slope, errors): the least-squares slope of log error against
    log h and the terminal-state errors for each step size.  The reference
    is the fourth-order scheme run at h_min / reference_refinement.
    """
    h_list = list(h_list)
    if any(h2 >= h1 for h1, h2 in zip(h_list, h_list[1:])):
        raise ValueError("h_list must be strictly decreasing")
    if reference_step is None:
        reference_step = rkmk4_step
    h_ref = h_list[-1] / reference_refinement
    n_ref = int(round(T / h_ref))
    y_ref = y0
    for _ in range(n_ref):
        y_ref = reference_step(problem, y_ref, T / n_ref)

    errors = []
    for h in h_list:
        n = int(round(T / h))
        y = y0
        for _ in range(n):
            y = step(problem, y, T / n, **step_kwargs)
        errors.append(state_distance(y, y_ref))
    slope = float(np.polyfit(np.log(h_list), np.log(errors), 1)[0])
    return slope, errors
