"""Lie algebra and Lie group primitives.

Conventions used throughout the package:

* so(3) algebra elements are coordinate 3-vectors ``v``; ``hat(v)`` is the
  corresponding skew matrix and group elements are 3x3 rotation matrices.
* Unit quaternions are arrays ``(q0, q1, q2, q3)``.  The algebra of pure
  quaternions is identified with R^3 through the vector part, scaled so that
  ``quat_exp(w)`` covers the rotation ``expm_so3(hat(2 w))``; the bracket in
  these coordinates is ``2 cross(w1, w2)``.
* Dual (momentum) values carry the same coordinates as the algebra and pair
  with it by the Euclidean dot product (Frobenius for matrix algebras).
* Affine transformations of R^n are stored as (n+1)x(n+1) homogeneous
  matrices, both on the group and on the algebra side.

Everything here is a pure function of immutable arrays; nothing mutates its
arguments.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.linalg
from scipy.special import bernoulli

from .errors import (
    AlgebraMismatch,
    AngleNearPi,
    LogNearAntipode,
    SingularResolvent,
)

# Norm below which closed forms switch to truncated Taylor series.
SMALL_ANGLE = 1e-4

# Default truncation order for commutator series on generic algebras.
SERIES_ORDER = 12

_MAX_SERIES_ORDER = 24
# Bernoulli numbers over factorials, B_k / k!, with the B_1 = -1/2 convention.
_BERNOULLI_OVER_FACT = bernoulli(_MAX_SERIES_ORDER) / np.array(
    [math.factorial(k) for k in range(_MAX_SERIES_ORDER + 1)]
)


# ---------------------------------------------------------------------------
# so(3) and SO(3)
# ---------------------------------------------------------------------------

def cross3(a, b):
    """Cross product of 3-vectors without np.cross dispatch overhead."""
    out = np.empty(3)
    out[0] = a[1] * b[2] - a[2] * b[1]
    out[1] = a[2] * b[0] - a[0] * b[2]
    out[2] = a[0] * b[1] - a[1] * b[0]
    return out


def hat(v):
    """Map a 3-vector to the skew matrix with hat(v) @ x == cross(v, x)."""
    v = np.asarray(v, dtype=float)
    return np.array([
        [0.0, -v[2], v[1]],
        [v[2], 0.0, -v[0]],
        [-v[1], v[0], 0.0],
    ])


def vee(A):
    """Inverse of :func:`hat`."""
    A = np.asarray(A, dtype=float)
    return np.array([A[2, 1], A[0, 2], A[1, 0]])


def _rotation_coeffs(theta2):
    """Coefficients (sin t / t, (1 - cos t) / t^2) with a series branch."""
    if theta2 < SMALL_ANGLE ** 2:
        c1 = 1.0 - theta2 / 6.0 * (1.0 - theta2 / 20.0)
        c2 = 0.5 - theta2 / 24.0 * (1.0 - theta2 / 30.0)
    else:
        theta = math.sqrt(theta2)
        c1 = math.sin(theta) / theta
        c2 = (1.0 - math.cos(theta)) / theta2
    return c1, c2


def rotation_from_vector(v):
    """Rotation about axis v by angle |v| (closed form on so(3))."""
    v = np.asarray(v, dtype=float)
    c1, c2 = _rotation_coeffs(float(v @ v))
    V = hat(v)
    return np.eye(3) + c1 * V + c2 * (V @ V)


def expm_so3(A):
    """Exponential of a skew 3x3 matrix by the closed Rodrigues form.

    I + (sin a / a) A + ((1 - cos a) / a^2) A^2 with a^2 = ||A||_F^2 / 2.
    """
    return rotation_from_vector(vee(A))


def logm_so3(R):
    """Principal logarithm of a rotation matrix, as a skew matrix.

    Raises:
        AngleNearPi: when trace(R) <= -1 + 1e-6, i.e. the rotation angle is
            within about 1e-3 of pi and the log is ill-conditioned.
    """
    R = np.asarray(R, dtype=float)
    tr = float(np.trace(R))
    if tr <= -1.0 + 1e-6:
        raise AngleNearPi(f"rotation angle too close to pi (trace={tr!r})")
    cos_theta = min(1.0, max(-1.0, (tr - 1.0) / 2.0))
    theta = math.acos(cos_theta)
    if theta < SMALL_ANGLE:
        t2 = theta * theta
        coeff = 0.5 * (1.0 + t2 / 6.0 * (1.0 + 7.0 * t2 / 60.0))
    else:
        coeff = theta / (2.0 * math.sin(theta))
    return coeff * (R - R.T)


def log_so3_vector(R):
    """vee(logm_so3(R))."""
    return vee(logm_so3(R))


def _dexp_coeffs(theta):
    """Coefficients a, b with dexp_v = I + a ad_v + b ad_v^2 on so(3)."""
    if theta < SMALL_ANGLE:
        t2 = theta * theta
        a = 0.5 - t2 / 24.0 * (1.0 - t2 / 30.0)
        b = 1.0 / 6.0 - t2 / 120.0 * (1.0 - t2 / 42.0)
    else:
        t2 = theta * theta
        a = (1.0 - math.cos(theta)) / t2
        b = (theta - math.sin(theta)) / (t2 * theta)
    return a, b


def _dexpinv_coeff(theta):
    """c(t) with dexpinv_v = I - ad_v / 2 + c ad_v^2 on so(3).

    c(t) = (1 - (t/2) cot(t/2)) / t^2, finite on [0, 2 pi).
    """
    if theta >= 2.0 * math.pi:
        raise ValueError(f"dexpinv closed form needs |v| < 2*pi, got {theta!r}")
    if theta < SMALL_ANGLE:
        t2 = theta * theta
        return 1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0
    half = 0.5 * theta
    return (1.0 - half / math.tan(half)) / (theta * theta)


def dexp_so3_exact(sigma, v):
    """dexp_sigma(v) on so(3) in vector coordinates, closed form."""
    sigma = np.asarray(sigma, dtype=float)
    v = np.asarray(v, dtype=float)
    a, b = _dexp_coeffs(math.sqrt(sigma @ sigma))
    sv = cross3(sigma, v)
    return v + a * sv + b * cross3(sigma, sv)


def dexpinv_so3_exact(sigma, v):
    """Inverse differential of exp on so(3), closed form.

    v - cross(sigma, v)/2 + c(|sigma|) cross(sigma, cross(sigma, v)),
    valid for |sigma| < 2 pi.
    """
    sigma = np.asarray(sigma, dtype=float)
    v = np.asarray(v, dtype=float)
    c = _dexpinv_coeff(math.sqrt(sigma @ sigma))
    sv = cross3(sigma, v)
    return v - 0.5 * sv + c * cross3(sigma, sv)


def dual_dexp_so3_exact(sigma, mu):
    """(dexp_sigma)^* mu on so(3)^*: transpose of the dexp matrix."""
    sigma = np.asarray(sigma, dtype=float)
    mu = np.asarray(mu, dtype=float)
    a, b = _dexp_coeffs(math.sqrt(sigma @ sigma))
    ms = cross3(mu, sigma)
    return mu + a * ms + b * cross3(ms, sigma)


def dual_dexpinv_so3_exact(sigma, mu):
    """(dexpinv_sigma)^* mu on so(3)^*."""
    sigma = np.asarray(sigma, dtype=float)
    mu = np.asarray(mu, dtype=float)
    c = _dexpinv_coeff(math.sqrt(sigma @ sigma))
    ms = cross3(mu, sigma)
    return mu - 0.5 * ms + c * cross3(ms, sigma)


# ---------------------------------------------------------------------------
# Unit quaternions
# ---------------------------------------------------------------------------

QUAT_IDENTITY = np.array([1.0, 0.0, 0.0, 0.0])


def quat_mul(p, q):
    """Quaternion product, renormalised to unit length."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    out = np.empty(4)
    out[0] = p[0] * q[0] - p[1:] @ q[1:]
    out[1:] = p[0] * q[1:] + q[0] * p[1:] + np.cross(p[1:], q[1:])
    return out / np.linalg.norm(out)


def quat_conj(q):
    """Conjugate (= inverse for unit quaternions)."""
    q = np.asarray(q, dtype=float)
    return np.array([q[0], -q[1], -q[2], -q[3]])


def quat_exp(w):
    """Exponential of a pure quaternion given by its vector part.

    quat_exp(w) = (cos|w|, sin|w| w/|w|); it covers the rotation
    expm_so3(hat(2 w)).
    """
    w = np.asarray(w, dtype=float)
    theta2 = float(w @ w)
    if theta2 < SMALL_ANGLE ** 2:
        s = 1.0 - theta2 / 6.0 * (1.0 - theta2 / 20.0)
        c = 1.0 - theta2 / 2.0 * (1.0 - theta2 / 12.0)
    else:
        theta = math.sqrt(theta2)
        s = math.sin(theta) / theta
        c = math.cos(theta)
    q = np.concatenate(([c], s * w))
    return q / np.linalg.norm(q)


def quat_log(q):
    """Principal logarithm of a unit quaternion, as a vector in R^3.

    Raises:
        LogNearAntipode: when q0 <= -1 + 1e-9.
    """
    q = np.asarray(q, dtype=float)
    if q[0] <= -1.0 + 1e-9:
        raise LogNearAntipode(f"quaternion too close to -identity (q0={q[0]!r})")
    nv = float(np.linalg.norm(q[1:]))
    if nv < 1e-9:
        # q0 ~ +1 here; the antipode was excluded above.
        return q[1:] / q[0]
    theta = math.atan2(nv, q[0])
    return (theta / nv) * q[1:]


def euler_rodrigues(q):
    """Double cover S^3 -> SO(3): I + 2 q0 hat(q) + 2 hat(q)^2."""
    q = np.asarray(q, dtype=float)
    Q = hat(q[1:])
    return np.eye(3) + 2.0 * q[0] * Q + 2.0 * (Q @ Q)


# ---------------------------------------------------------------------------
# Cayley transform, phi function, affine exponential
# ---------------------------------------------------------------------------

def cayley(xi):
    """(I - xi/2)^{-1} (I + xi/2); maps so(n) into the orthogonal group."""
    xi = np.asarray(xi, dtype=float)
    n = xi.shape[0]
    try:
        return np.linalg.solve(np.eye(n) - 0.5 * xi, np.eye(n) + 0.5 * xi)
    except np.linalg.LinAlgError as exc:
        raise SingularResolvent(f"I - xi/2 is singular: {exc}") from exc


def phi1(Z):
    """The entire function phi(z) = (exp(z) - 1)/z evaluated at a matrix.

    A truncated series is used for small ||Z||; otherwise Z phi = exp(Z) - I
    is solved directly, falling back on the block-matrix identity
    expm([[Z, I], [0, 0]]) = [[exp(Z), phi(Z)], [0, I]] when Z is singular.
    """
    Z = np.atleast_2d(np.asarray(Z, dtype=float))
    n = Z.shape[0]
    if np.linalg.norm(Z) < SMALL_ANGLE:
        Z2 = Z @ Z
        return np.eye(n) + Z / 2.0 + Z2 / 6.0 + (Z2 @ Z) / 24.0
    W = scipy.linalg.expm(Z) - np.eye(n)
    try:
        phi = np.linalg.solve(Z, W)
        if np.linalg.norm(Z @ phi - W) <= 1e-10 * max(1.0, np.linalg.norm(W)):
            return phi
    except np.linalg.LinAlgError:
        pass
    block = np.zeros((2 * n, 2 * n))
    block[:n, :n] = Z
    block[:n, n:] = np.eye(n)
    return scipy.linalg.expm(block)[:n, n:]


def affine_exp(t, L, b):
    """One-parameter subgroup of the affine group.

    exp(t (L, b)) = (expm(t L), phi(t L) t b); returns the pair (A, c).
    """
    L = np.atleast_2d(np.asarray(L, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    tL = t * L
    return scipy.linalg.expm(tL), phi1(tL) @ (t * b)


def affine_to_homogeneous(A, b):
    """Pack (A, b) into the (n+1)x(n+1) homogeneous representation."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    n = A.shape[0]
    H = np.zeros((n + 1, n + 1))
    H[:n, :n] = A
    H[:n, n] = b
    H[n, n] = 1.0
    return H


def homogeneous_to_affine(H):
    """Unpack the homogeneous representation into the pair (A, b)."""
    H = np.asarray(H, dtype=float)
    n = H.shape[0] - 1
    return H[:n, :n].copy(), H[:n, n].copy()


# ---------------------------------------------------------------------------
# Commutator series: dexp, dexpinv and their duals on a generic algebra
# ---------------------------------------------------------------------------

def dexp_series(ops, sigma, v, order):
    """Truncated dexp_sigma(v) = sum_{k<=order} ad_sigma^k v / (k+1)!."""
    w = np.asarray(v, dtype=float)
    out = w
    fact = 1.0
    for k in range(1, order + 1):
        w = ops.bracket(sigma, w)
        fact *= k + 1
        out = out + w / fact
    return out


def dexpinv_series(ops, sigma, v, order):
    """Truncated inverse of dexp: coefficients are Bernoulli numbers B_k/k!."""
    if order > _MAX_SERIES_ORDER:
        raise ValueError(f"series order limited to {_MAX_SERIES_ORDER}")
    w = np.asarray(v, dtype=float)
    out = w
    for k in range(1, order + 1):
        w = ops.bracket(sigma, w)
        c = _BERNOULLI_OVER_FACT[k]
        if c != 0.0:
            out = out + c * w
    return out


def dual_dexp_series(ops, sigma, mu, order):
    """(dexp_sigma)^* mu: the dexp series with ad replaced by its dual."""
    w = np.asarray(mu, dtype=float)
    out = w
    fact = 1.0
    for k in range(1, order + 1):
        w = ops.coad(sigma, w)
        fact *= k + 1
        out = out + w / fact
    return out


def dual_dexpinv_series(ops, sigma, mu, order):
    """(dexpinv_sigma)^* mu via the transposed Bernoulli series."""
    if order > _MAX_SERIES_ORDER:
        raise ValueError(f"series order limited to {_MAX_SERIES_ORDER}")
    w = np.asarray(mu, dtype=float)
    out = w
    for k in range(1, order + 1):
        w = ops.coad(sigma, w)
        c = _BERNOULLI_OVER_FACT[k]
        if c != 0.0:
            out = out + c * w
    return out


# ---------------------------------------------------------------------------
# Group operation bundles
# ---------------------------------------------------------------------------

class GroupOps:
    """Operations of a Lie group and its algebra on plain array elements.

    Subclasses fix the element representations and provide bracket, exp and
    the (co)adjoint maps; the dexp family defaults to truncated commutator
    series and is overridden with closed forms where those exist.
    """

    dim = None  # algebra dimension
    series_order = SERIES_ORDER

    # algebra ------------------------------------------------------------
    def bracket(self, a, b):
        raise NotImplementedError

    def coad(self, xi, mu):
        """ad* map: <coad(xi, mu), eta> = <mu, bracket(xi, eta)>."""
        raise NotImplementedError

    def pair(self, mu, xi):
        """Duality pairing: dot product of coordinates."""
        return float(np.vdot(np.asarray(mu, float), np.asarray(xi, float)))

    def basis(self):
        """A basis of the algebra (coordinate unit vectors by default)."""
        return [e for e in np.eye(self.dim)]

    # group --------------------------------------------------------------
    def exp(self, xi):
        raise NotImplementedError

    def log(self, g):
        raise NotImplementedError

    def mul(self, g1, g2):
        raise NotImplementedError

    def inv(self, g):
        raise NotImplementedError

    def identity(self):
        raise NotImplementedError

    def Ad(self, g, xi):
        raise NotImplementedError

    def coAd(self, g, mu):
        """Ad* map: <coAd(g, mu), xi> = <mu, Ad(g, xi)>."""
        raise NotImplementedError

    # dexp family ----------------------------------------------------------
    def dexp(self, sigma, v, order=None):
        return dexp_series(self, sigma, v, order or self.series_order)

    def dexpinv(self, sigma, v, order=None):
        return dexpinv_series(self, sigma, v, order or self.series_order)

    def dual_dexp(self, sigma, mu, order=None):
        return dual_dexp_series(self, sigma, mu, order or self.series_order)

    def dual_dexpinv(self, sigma, mu, order=None):
        return dual_dexpinv_series(self, sigma, mu, order or self.series_order)


def _check_same_shape(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise AlgebraMismatch(f"shapes {a.shape} and {b.shape} differ")
    return a.astype(float), b.astype(float)


class So3Ops(GroupOps):
    """SO(3) with algebra elements as 3-vectors and rotations as 3x3 arrays."""

    dim = 3

    def bracket(self, a, b):
        a, b = _check_same_shape(a, b)
        return cross3(a, b)

    def coad(self, xi, mu):
        return cross3(np.asarray(mu, float), np.asarray(xi, float))

    def exp(self, xi):
        return rotation_from_vector(xi)

    def log(self, g):
        return log_so3_vector(g)

    def mul(self, g1, g2):
        return g1 @ g2

    def inv(self, g):
        return np.asarray(g).T

    def identity(self):
        return np.eye(3)

    def Ad(self, g, xi):
        return g @ np.asarray(xi, float)

    def coAd(self, g, mu):
        return np.asarray(g).T @ np.asarray(mu, float)

    def dexp(self, sigma, v, order=None):
        return dexp_so3_exact(sigma, v)

    def dexpinv(self, sigma, v, order=None):
        return dexpinv_so3_exact(sigma, v)

    def dual_dexp(self, sigma, mu, order=None):
        return dual_dexp_so3_exact(sigma, mu)

    def dual_dexpinv(self, sigma, mu, order=None):
        return dual_dexpinv_so3_exact(sigma, mu)


class QuatOps(GroupOps):
    """Unit quaternions S^3 with the pure-quaternion algebra as 3-vectors.

    The identification with R^3 is such that exp covers the double rotation,
    so ad_w = hat(2 w) and the closed so(3) forms apply with argument 2 sigma.
    """

    dim = 3

    def bracket(self, a, b):
        a, b = _check_same_shape(a, b)
        return 2.0 * cross3(a, b)

    def coad(self, xi, mu):
        return 2.0 * cross3(np.asarray(mu, float), np.asarray(xi, float))

    def exp(self, xi):
        return quat_exp(xi)

    def log(self, g):
        return quat_log(g)

    def mul(self, g1, g2):
        return quat_mul(g1, g2)

    def inv(self, g):
        return quat_conj(g)

    def identity(self):
        return QUAT_IDENTITY.copy()

    def Ad(self, g, xi):
        return euler_rodrigues(g) @ np.asarray(xi, float)

    def coAd(self, g, mu):
        return euler_rodrigues(g).T @ np.asarray(mu, float)

    def dexp(self, sigma, v, order=None):
        return dexp_so3_exact(2.0 * np.asarray(sigma, float), v)

    def dexpinv(self, sigma, v, order=None):
        return dexpinv_so3_exact(2.0 * np.asarray(sigma, float), v)

    def dual_dexp(self, sigma, mu, order=None):
        return dual_dexp_so3_exact(2.0 * np.asarray(sigma, float), mu)

    def dual_dexpinv(self, sigma, mu, order=None):
        return dual_dexpinv_so3_exact(2.0 * np.asarray(sigma, float), mu)


class MatrixOps(GroupOps):
    """Matrix Lie group with algebra and group elements as n x n arrays.

    kind selects the flavour: "so" (skew algebra, orthogonal group),
    "sl" (traceless algebra) or "gl".
    """

    def __init__(self, n, kind="gl"):
        if kind not in ("so", "sl", "gl"):
            raise ValueError(f"unknown matrix algebra kind {kind!r}")
        self.n = n
        self.kind = kind
        self.dim = {"so": n * (n - 1) // 2, "sl": n * n - 1, "gl": n * n}[kind]

    def bracket(self, a, b):
        a, b = _check_same_shape(a, b)
        if a.ndim != 2 or a.shape[0] != self.n:
            raise AlgebraMismatch(f"expected {self.n}x{self.n} matrices")
        return a @ b - b @ a

    def coad(self, xi, mu):
        xi = np.asarray(xi, float)
        mu = np.asarray(mu, float)
        return xi.T @ mu - mu @ xi.T

    def basis(self):
        n = self.n
        if self.kind == "so":
            out = []
            for i in range(n):
                for j in range(i + 1, n):
                    E = np.zeros((n, n))
                    E[i, j] = 1.0
                    E[j, i] = -1.0
                    out.append(E)
            return out
        raise NotImplementedError("basis only provided for the skew kind")

    def exp(self, xi):
        xi = np.asarray(xi, float)
        if self.kind == "so" and self.n == 3:
            return expm_so3(xi)
        return scipy.linalg.expm(xi)

    def log(self, g):
        if self.kind == "so" and self.n == 3:
            return logm_so3(g)
        raise NotImplementedError("log only provided for SO(3)")

    def mul(self, g1, g2):
        return g1 @ g2

    def inv(self, g):
        g = np.asarray(g, float)
        if self.kind == "so":
            return g.T
        return np.linalg.inv(g)

    def identity(self):
        return np.eye(self.n)

    def Ad(self, g, xi):
        return g @ np.asarray(xi, float) @ self.inv(g)

    def coAd(self, g, mu):
        g = np.asarray(g, float)
        return g.T @ np.asarray(mu, float) @ self.inv(g).T


class TranslationOps(GroupOps):
    """(R^n, +): the abelian group underlying classical integrators."""

    def __init__(self, n):
        self.n = n
        self.dim = n

    def bracket(self, a, b):
        a, b = _check_same_shape(a, b)
        return np.zeros_like(a)

    def coad(self, xi, mu):
        return np.zeros_like(np.asarray(mu, float))

    def exp(self, xi):
        return np.asarray(xi, dtype=float)

    def log(self, g):
        return np.asarray(g, dtype=float)

    def mul(self, g1, g2):
        return g1 + g2

    def inv(self, g):
        return -np.asarray(g, float)

    def identity(self):
        return np.zeros(self.n)

    def Ad(self, g, xi):
        return np.asarray(xi, float)

    def coAd(self, g, mu):
        return np.asarray(mu, float)


def planar_rotation(alpha):
    c, s = math.cos(alpha), math.sin(alpha)
    return np.array([[c, -s], [s, c]])


class TorusOps(GroupOps):
    """SO(2) x SO(2): group elements are stacked pairs of 2x2 rotations.

    Algebra coordinates are the pair of angles (a, b); the group is abelian.
    """

    dim = 2

    def bracket(self, a, b):
        a, b = _check_same_shape(a, b)
        return np.zeros(2)

    def coad(self, xi, mu):
        return np.zeros(2)

    def exp(self, xi):
        return np.stack([planar_rotation(xi[0]), planar_rotation(xi[1])])

    def mul(self, g1, g2):
        return np.stack([g1[0] @ g2[0], g1[1] @ g2[1]])

    def inv(self, g):
        return np.stack([g[0].T, g[1].T])

    def identity(self):
        return np.stack([np.eye(2), np.eye(2)])

    def Ad(self, g, xi):
        return np.asarray(xi, float)

    def coAd(self, g, mu):
        return np.asarray(mu, float)


class AffineOps(GroupOps):
    """Affine group GL(n) x R^n in homogeneous (n+1)x(n+1) form.

    Algebra elements are homogeneous matrices with zero last row, so the
    bracket is the plain matrix commutator; the exponential uses the closed
    (expm, phi) formula.
    """

    def __init__(self, n):
        self.n = n
        self.dim = n * n + n

    def bracket(self, a, b):
        a, b = _check_same_shape(a, b)
        return a @ b - b @ a

    def exp(self, xi):
        xi = np.asarray(xi, float)
        L = xi[: self.n, : self.n]
        c = xi[: self.n, self.n]
        A, b = affine_exp(1.0, L, c)
        return affine_to_homogeneous(A, b)

    def mul(self, g1, g2):
        return g1 @ g2

    def inv(self, g):
        A, b = homogeneous_to_affine(g)
        Ainv = np.linalg.inv(A)
        return affine_to_homogeneous(Ainv, -Ainv @ b)

    def identity(self):
        return np.eye(self.n + 1)

    def Ad(self, g, xi):
        return g @ np.asarray(xi, float) @ self.inv(g)


SO3 = So3Ops()
S3 = QuatOps()
SL2 = MatrixOps(2, kind="sl")
SO3_MATRIX = MatrixOps(3, kind="so")


def son_ops(n):
    """SO(n) operation bundle (matrix representation)."""
    return MatrixOps(n, kind="so")
