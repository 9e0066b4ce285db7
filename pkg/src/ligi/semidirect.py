"""The semidirect product G x| g* acting on the trivialised cotangent bundle.

Group elements are pairs (g, mu) with g in the base group and mu in the dual
of its algebra; the product is

    (g1, mu1) (g2, mu2) = (g1 g2, mu1 + coAd(g1^{-1}, mu2)).

Algebra elements are stored as flat arrays concatenating the base algebra
coordinates xi with the dual coordinates nu, so the generic commutator series
in :mod:`ligi.liealg` apply unchanged.  The exponential's fibre component is
the t = 1 solution of mu' = nu - coad(xi, mu), mu(0) = 0, which in closed
form is (dexp_{-xi})^* nu.
"""

from __future__ import annotations

import numpy as np

from .liealg import GroupOps


class CotangentOps(GroupOps):
    """Group operations on G x| g* built over a base group's operations."""

    def __init__(self, base: GroupOps):
        self.base = base
        self.dim = 2 * base.dim

    # element packing ------------------------------------------------------
    def split(self, x):
        x = np.asarray(x, dtype=float)
        return x[: self.base.dim], x[self.base.dim:]

    def join(self, xi, nu):
        return np.concatenate([np.asarray(xi, float), np.asarray(nu, float)])

    # algebra ----------------------------------------------------------------
    def bracket(self, a, b):
        xi1, nu1 = self.split(a)
        xi2, nu2 = self.split(b)
        return self.join(
            self.base.bracket(xi1, xi2),
            self.base.coad(xi2, nu1) - self.base.coad(xi1, nu2),
        )

    # group ------------------------------------------------------------------
    def exp(self, x):
        xi, nu = self.split(x)
        return self.base.exp(xi), self.base.dual_dexp(-xi, nu)

    def mul(self, a, b):
        g1, mu1 = a
        g2, mu2 = b
        return self.base.mul(g1, g2), mu1 + self.base.coAd(self.base.inv(g1), mu2)

    def inv(self, a):
        g, mu = a
        return self.base.inv(g), -self.base.coAd(g, mu)

    def identity(self):
        return self.base.identity(), np.zeros(self.base.dim)

    def Ad(self, a, x):
        g, mu = a
        xi, nu = self.split(x)
        lifted = nu + self.base.coad(xi, self.base.coAd(g, mu))
        return self.join(
            self.base.Ad(g, xi),
            self.base.coAd(self.base.inv(g), lifted),
        )


def state_distance(ops: CotangentOps, a, b):
    """Scale-aware distance between two (g, mu) states.

    The momentum difference is measured relative to its magnitude so the
    metric stays meaningful when ||mu|| is large.
    """
    g1, mu1 = a
    g2, mu2 = b
    scale = max(1.0, float(np.linalg.norm(mu1)))
    return float(
        np.linalg.norm(np.asarray(g1) - np.asarray(g2))
        + np.linalg.norm(mu1 - mu2) / scale
    )
