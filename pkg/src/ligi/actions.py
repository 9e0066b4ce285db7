"""Transitive group actions and the frozen-coefficient problem abstraction.

An ODE on a manifold M is presented as a coefficient map f: M -> g together
with an action of G on M; the vector field is m -> generator(f(m), m), and
every integrator in the package advances the state through exact flows
act(exp(.), m) of the frozen fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ActionMismatch
from .liealg import (
    GroupOps,
    S3,
    SL2,
    SO3,
    AffineOps,
    TorusOps,
    TranslationOps,
    cross3,
    son_ops,
)


class GroupAction:
    """Left action of a Lie group on a manifold, with exact generators."""

    name = "action"
    group: GroupOps = None

    def apply(self, g, m):
        raise NotImplementedError

    def generator(self, xi, m):
        """Tangent vector of the one-parameter orbit t -> exp(t xi) . m at 0."""
        raise NotImplementedError

    def exp(self, xi):
        return self.group.exp(xi)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class SphereRotationAction(GroupAction):
    """SO(3) acting on the unit sphere by matrix-vector multiplication."""

    name = "so3_on_s2"
    group = SO3

    def apply(self, g, m):
        m = np.asarray(m, float)
        if m.shape != (3,):
            raise ActionMismatch("points on S^2 are 3-vectors")
        return g @ m

    def generator(self, xi, m):
        return cross3(np.asarray(xi, float), np.asarray(m, float))


class MatrixLinearAction(GroupAction):
    """A matrix group acting linearly on column vectors or on n x k frames."""

    def __init__(self, group: GroupOps, name):
        self.group = group
        self.name = name

    def apply(self, g, m):
        return g @ np.asarray(m, float)

    def generator(self, xi, m):
        return np.asarray(xi, float) @ np.asarray(m, float)


class HomogeneousPlanarAction(GroupAction):
    """Affine-type subgroups in homogeneous 3x3 form acting on R^2."""

    def __init__(self, name="se2_on_r2"):
        self.group = AffineOps(2)
        self.name = name

    @staticmethod
    def _lift(m):
        m = np.asarray(m, float)
        if m.shape != (2,):
            raise ActionMismatch("points are 2-vectors")
        return np.array([m[0], m[1], 1.0])

    def apply(self, g, m):
        return (g @ self._lift(m))[:2]

    def generator(self, xi, m):
        return (np.asarray(xi, float) @ self._lift(m))[:2]


class AffineAction(GroupAction):
    """The affine group of R^n acting by x -> A x + b (homogeneous form)."""

    def __init__(self, n):
        self.group = AffineOps(n)
        self.n = n
        self.name = f"affine_on_r{n}"

    def _lift(self, m):
        m = np.asarray(m, float)
        if m.shape != (self.n,):
            raise ActionMismatch(f"points are {self.n}-vectors")
        return np.append(m, 1.0)

    def apply(self, g, m):
        return (g @ self._lift(m))[: self.n]

    def generator(self, xi, m):
        return (np.asarray(xi, float) @ self._lift(m))[: self.n]


class TranslationAction(GroupAction):
    """(R^n, +) acting on itself; integrators reduce to their classical forms."""

    def __init__(self, n):
        self.group = TranslationOps(n)
        self.n = n
        self.name = f"translation_r{n}"

    def apply(self, g, m):
        return np.asarray(m, float) + g

    def generator(self, xi, m):
        return np.asarray(xi, float)


class LeftMultiplicationAction(GroupAction):
    """A group acting on itself by left multiplication.

    The coefficient map is then the right-trivialised vector field:
    generator(xi, m) = d/dt exp(t xi) . m at t = 0.
    """

    def __init__(self, group: GroupOps, name):
        self.group = group
        self.name = name

    def apply(self, g, m):
        return self.group.mul(g, m)

    def generator(self, xi, m):
        # Derivative of left translation along the one-parameter subgroup;
        # for matrix-like representations this is plain multiplication.
        if self.group is S3:
            w = np.asarray(xi, float)
            return quat_mul_tangent(w, m)
        return np.asarray(xi, float) @ np.asarray(m, float)


def quat_mul_tangent(w, q):
    """Product (0, w) . q in R^4 without renormalisation (a tangent vector)."""
    q = np.asarray(q, float)
    out = np.empty(4)
    out[0] = -w @ q[1:]
    out[1:] = q[0] * w + cross3(w, q[1:])
    return out


class CoadjointAction(GroupAction):
    """g . mu = coAd(g^{-1}, mu); orbits are the coadjoint orbits."""

    def __init__(self, group: GroupOps, name="coadjoint"):
        self.group = group
        self.name = name

    def apply(self, g, mu):
        return self.group.coAd(self.group.inv(g), mu)

    def generator(self, xi, mu):
        return -self.group.coad(xi, mu)


class TorusAction(GroupAction):
    """SO(2) x SO(2) acting componentwise on pairs of unit 2-vectors.

    Points are arrays of shape (2, 2): rows are the two circle components.
    """

    name = "torus"
    group = TorusOps()

    def apply(self, g, m):
        m = np.asarray(m, float)
        if m.shape != (2, 2):
            raise ActionMismatch("torus points are (2, 2) arrays")
        return np.stack([g[0] @ m[0], g[1] @ m[1]])

    def generator(self, xi, m):
        m = np.asarray(m, float)
        rot = np.array([[0.0, -1.0], [1.0, 0.0]])
        return np.stack([xi[0] * (rot @ m[0]), xi[1] * (rot @ m[1])])


SO3_ON_S2 = SphereRotationAction()
SL2_ON_R2 = MatrixLinearAction(SL2, "sl2_on_r2")
SE2_ON_R2 = HomogeneousPlanarAction()
TORUS = TorusAction()
QUAT_LEFT = LeftMultiplicationAction(S3, "s3_left")
SO3_COADJOINT = CoadjointAction(SO3)


def stiefel_action(n):
    """SO(n) acting on the Stiefel manifold St(n, k) by left multiplication."""
    return MatrixLinearAction(son_ops(n), f"so{n}_on_stiefel")


@dataclass(frozen=True)
class FrozenFieldProblem:
    """An ODE written as a coefficient map into a Lie algebra plus an action.

    Attributes:
        action: the group action supplying flows and generators.
        coefficient_map: f with vector field F(m) = generator(f(m), m).
        invariants: named first integrals, recorded along trajectories.
        reference_field: optional independent form of F, for consistency
            checks of the coefficient map.
    """

    action: GroupAction
    coefficient_map: Callable
    invariants: tuple = ()
    reference_field: Optional[Callable] = None

    def field(self, m):
        """The problem vector field at m."""
        return self.action.generator(self.coefficient_map(m), m)

    def frozen_field(self, p):
        """The field with coefficients frozen at p (a map over all of M)."""
        xi = self.coefficient_map(p)
        return lambda m: self.action.generator(xi, m)

    def invariant_values(self, m):
        return {name: fn(m) for name, fn in self.invariants}


def act(action: GroupAction, g, m):
    """Apply a group element to a point."""
    return action.apply(g, m)


def generator(action: GroupAction, xi, m):
    """Evaluate the infinitesimal generator of the action."""
    return action.generator(xi, m)
