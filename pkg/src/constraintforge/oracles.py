"""
Independent finite-difference oracles.

Everything here deliberately avoids the spectral machinery: derivatives are
plain centered differences, evaluated either on a fine latitude-longitude
patch of the sphere (away from the poles) or on local Cartesian stencils.
These routines are used in tests to cross-check the coefficient-space
operators and the assembled extensions.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "SphereFDOracle",
    "fd_divergence_oracle",
    "fd_scalar_curvature_oracle",
    "richardson_order",
]


def _d1_matrix(n, h):
    """Dense 6th-order centered first-derivative matrix; lower-order one-sided
    rows at the ends (comparisons must window those away)."""
    D = np.zeros((n, n))
    c = np.array([-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0]) / (60.0 * h)
    for i in range(3, n - 3):
        D[i, i - 3:i + 4] = c
    fwd = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / (12.0 * h)
    mid = np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / (12.0 * h)
    c4 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / (12.0 * h)
    D[0, :5] = fwd
    D[1, :5] = mid
    D[2, :5] = c4
    D[n - 3, n - 5:] = -c4[::-1]
    D[n - 2, n - 5:] = -mid[::-1]
    D[n - 1, n - 5:] = -fwd[::-1]
    return D


def _d1_matrix_periodic(n, h):
    """Circulant 6th-order first-derivative matrix for periodic data."""
    D = np.zeros((n, n))
    c = np.array([-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0]) / (60.0 * h)
    for i in range(n):
        for k, off in enumerate(range(-3, 4)):
            D[i, (i + off) % n] += c[k]
    return D


class SphereFDOracle:
    """Finite-difference sphere calculus on an interior lat-long window.

    Operators are evaluated on a uniform (theta, phi) grid restricted to
    theta in (margin, pi - margin); comparisons against spectral results are
    pointwise on the window, so no pole treatment is needed.
    """

    def __init__(self, ntheta=280, nphi=560, margin=0.55):
        self.theta = np.linspace(margin, np.pi - margin, ntheta)
        self.phi = 2.0 * np.pi * np.arange(nphi) / nphi
        self.ht = self.theta[1] - self.theta[0]
        self.hp = self.phi[1] - self.phi[0]
        self._dt = _d1_matrix(ntheta, self.ht)
        self._dp = _d1_matrix_periodic(nphi, self.hp)
        tt, pp = np.meshgrid(self.theta, self.phi, indexing="ij")
        self.tt, self.pp = tt, pp
        self.sin = np.sin(tt)
        self.cot = np.cos(tt) / np.sin(tt)

    def dtheta(self, f):
        return self._dt @ f

    def dphi(self, f):
        return f @ self._dp.T

    # unit-sphere operators on orthonormal-frame components; divide by the
    # appropriate power of r for S_r
    def grad(self, f):
        return self.dtheta(f), self.dphi(f) / self.sin

    def div(self, xt, xp):
        return self.dtheta(xt) + self.cot * xt + self.dphi(xp) / self.sin

    def curl(self, xt, xp):
        return self.dtheta(xp) + self.cot * xp - self.dphi(xt) / self.sin

    def laplacian(self, f):
        gt, gp = self.grad(f)
        return self.div(gt, gp)

    def covariant_derivative(self, comps):
        """Covariant derivative of a tangent tensor in the orthonormal frame.

        `comps` has shape (2,)*rank + grid; returns shape (2,)*(rank+1) + grid
        with the new (differentiation) index first.  The only nonzero frame
        connection coefficients on the unit sphere are
        nabla_{e_phi} e_theta = cot * e_phi,  nabla_{e_phi} e_phi = -cot * e_theta.
        """
        comps = np.asarray(comps)
        rank = comps.ndim - 2
        out = np.zeros((2,) + comps.shape)
        for idx in np.ndindex(*((2,) * rank)):
            out[(0,) + idx] = self.dtheta(comps[idx])
            out[(1,) + idx] = self.dphi(comps[idx]) / self.sin
            # connection corrections, only for the phi direction
            for slot in range(rank):
                d = idx[slot]
                other = idx[:slot] + (1 - d,) + idx[slot + 1:]
                # omega_phi^phi_theta = +cot, omega_phi^theta_phi = -cot
                sign = 1.0 if d == 0 else -1.0
                out[(1,) + idx] -= sign * self.cot * comps[other]
        return out

    def rough_laplacian(self, comps):
        """Trace of the second covariant derivative, any tensor rank."""
        dd = self.covariant_derivative(self.covariant_derivative(comps))
        return dd[0, 0] + dd[1, 1]

    def vector_laplacian(self, xt, xp):
        """Rough Laplacian of a tangent vectorfield (frame components)."""
        lap = self.rough_laplacian(np.stack([xt, xp]))
        return lap[0], lap[1]

    def tensor_laplacian(self, vp, vx):
        """Rough Laplacian of a tracefree symmetric 2-tensor, as (plus, cross)."""
        comps = np.stack([np.stack([vp, vx]), np.stack([vx, -vp])])
        lap = self.rough_laplacian(comps)
        return lap[0, 0], lap[0, 1]

    def div_tensor(self, vp, vx):
        """Divergence of a tracefree symmetric 2-tensor given as (plus, cross)."""
        # (div V)_theta = d_theta V_tt + (1/s) d_phi V_tp + 2 cot V_tt
        # (div V)_phi   = d_theta V_tp + (1/s) d_phi V_pp + 2 cot V_tp
        # with V_tt = vp, V_tp = vx, V_pp = -vp on the unit sphere.
        dt_vp = self.dtheta(vp)
        dt_vx = self.dtheta(vx)
        out_t = dt_vp + self.dphi(vx) / self.sin + 2.0 * self.cot * vp
        out_p = dt_vx - self.dphi(vp) / self.sin + 2.0 * self.cot * vx
        return out_t, out_p

    def dual_vector(self, xt, xp):
        return xp, -xt

    def dual_tensor(self, vp, vx):
        return vx, -vp

    def window(self, f, pad=12):
        """Trim one-sided-stencil rows before comparing."""
        return f[pad:-pad, :]


# ---------------------------------------------------------------------------
# Cartesian stencil oracles
# ---------------------------------------------------------------------------


def fd_divergence_oracle(tensor_sampler, points, h):
    """Second-order flat divergence d^i k_ij at the given points.

    tensor_sampler(points) must return an (n, 3, 3) array of symmetric
    components; returns an (n, 3) array.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    n = points.shape[0]
    out = np.zeros((n, 3))
    for i in range(3):
        dp = points.copy()
        dm = points.copy()
        dp[:, i] += h
        dm[:, i] -= h
        diff = (tensor_sampler(dp) - tensor_sampler(dm)) / (2.0 * h)
        out += diff[:, i, :]
    return out


def _christoffel_fd(metric_sampler, points, h):
    """Christoffel symbols and inverse metric by centered differences."""
    points = np.atleast_2d(points)
    n = points.shape[0]
    g0 = metric_sampler(points)
    dg = np.zeros((n, 3, 3, 3))          # dg[:, k, i, j] = d_k g_ij
    for k in range(3):
        dp = points.copy()
        dm = points.copy()
        dp[:, k] += h
        dm[:, k] -= h
        dg[:, k] = (metric_sampler(dp) - metric_sampler(dm)) / (2.0 * h)
    ginv = np.linalg.inv(g0)
    gam = 0.5 * (np.einsum("nkl,nilj->nkij", ginv, dg.transpose(0, 2, 1, 3))
                 + np.einsum("nkl,njli->nkij", ginv, dg.transpose(0, 2, 1, 3))
                 - np.einsum("nkl,nlij->nkij", ginv, dg))
    return g0, ginv, dg, gam


def fd_metric_divergence_oracle(metric_sampler, tensor_sampler, points, h):
    """(Div_g V)_j = g^{ab}(d_a V_bj - Gam^c_ab V_cj - Gam^c_aj V_bc), by FD."""
    points = np.atleast_2d(points)
    n = points.shape[0]
    _, ginv, _, gam = _christoffel_fd(metric_sampler, points, h)
    dV = np.zeros((n, 3, 3, 3))
    for k in range(3):
        dp = points.copy()
        dm = points.copy()
        dp[:, k] += h
        dm[:, k] -= h
        dV[:, k] = (tensor_sampler(dp) - tensor_sampler(dm)) / (2.0 * h)
    V = tensor_sampler(points)
    term = (np.einsum("nab,nabj->nj", ginv, dV)
            - np.einsum("nab,ncab,ncj->nj", ginv, gam, V)
            - np.einsum("nab,ncaj,nbc->nj", ginv, gam, V))
    return term


def fd_scalar_curvature_oracle(metric_sampler, points, h):
    """Scalar curvature of a Riemannian metric by nested centered differences.

    R = g^{ij}(d_k Gam^k_ij - d_i Gam^k_kj + Gam^k_kl Gam^l_ij
               - Gam^k_il Gam^l_kj); second-order accurate in h.
    """
    points = np.atleast_2d(points)
    n = points.shape[0]
    _, ginv, _, gam0 = _christoffel_fd(metric_sampler, points, h)
    dgam = np.zeros((n, 3, 3, 3, 3))      # dgam[:, k, c, i, j] = d_k Gam^c_ij
    for k in range(3):
        dp = points.copy()
        dm = points.copy()
        dp[:, k] += h
        dm[:, k] -= h
        _, _, _, gp = _christoffel_fd(metric_sampler, dp, h)
        _, _, _, gm = _christoffel_fd(metric_sampler, dm, h)
        dgam[:, k] = (gp - gm) / (2.0 * h)
    ricci = (np.einsum("nkkij->nij", dgam)
             - np.einsum("nikkj->nij", dgam)
             + np.einsum("nkkl,nlij->nij", gam0, gam0)
             - np.einsum("nkil,nlkj->nij", gam0, gam0))
    return np.einsum("nij,nij->n", ginv, ricci)


def richardson_order(errors, hs):
    """Least-squares slope of log(err) against log(h)."""
    return float(np.polyfit(np.log(np.asarray(hs, float)),
                            np.log(np.asarray(errors, float)), 1)[0])
