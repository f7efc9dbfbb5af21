"""
Hodge-Fourier calculus on round spheres S_r.

Three orthonormal families on (S_r, round metric), all real-valued:

* scalars   Y(l,m),            l >= 0,
* vectors   E(l,m), H(l,m),    l >= 1,
* tracefree symmetric 2-tensors  psi(l,m), phi(l,m),  l >= 2.

Normalisation: each family is orthonormal in L^2(S_r), which forces the
radial scaling Y(l,m)(r) = Ytilde(l,m)/r with Ytilde orthonormal on the
unit sphere.  Coefficients of a field f are

    f^(lm)(r) = integral over S_r of ( Y(l,m) * f ),

i.e. coefficient = r * (unit-sphere inner product of the orthonormal-frame
components with the unit-sphere tables).  All operators below act on these
coefficients; first-order sphere operators are diagonal:

    div  E(l,m) =  sqrt(l(l+1))/r * Y(l,m)        curl E(l,m) = 0
    div  H(l,m) =  0                              curl H(l,m) = sqrt(l(l+1))/r * Y(l,m)
    div  psi(l,m) = sqrt(l(l+1)/2 - 1)/r * E(l,m) etc.

Vector and tensor fields on grids are stored as orthonormal-frame components
(e_theta, e_phi); tracefree tensors as the pair (V_plus, V_cross) =
(V_theta_theta, V_theta_phi), whose pointwise inner product carries a
factor 2:  V.W = 2*(V_plus*W_plus + V_cross*W_cross).

The orientation of the sphere volume form is the outward-normal right-hand
convention, eps(e_theta, e_phi) = +1.  With it, the Hodge duals are
*E = -H, *H = E, *psi = -phi, *phi = psi (pinned by tests against a direct
grid evaluation of eps_AB X^B).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

__all__ = [
    "SphereBasis",
    "SphereScalarModes",
    "SphereVectorModes",
    "SphereTensorModes",
    "scalar_mode_index",
    "mode_degrees",
    "d1_apply",
    "d1_adjoint",
    "d1_inverse",
    "d2_apply",
    "d2_adjoint",
    "d2_inverse",
    "hodge_dual_vector",
    "hodge_dual_tensor",
    "sphere_gradient",
    "sphere_laplacian",
]


class BandLimitError(ValueError):
    """Sampling grid cannot resolve the requested maximal degree."""


class ModeRangeError(ValueError):
    """Input carries low modes outside the operator's range."""


# ---------------------------------------------------------------------------
# normalised associated Legendre tables
# ---------------------------------------------------------------------------


def _legendre_tables(lmax, x):
    """Orthonormalised associated Legendre N_l^m(x) with first and second
    x-derivatives, for 0 <= m <= l <= lmax.

    N_l^m = sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) P_l^m (Condon-Shortley phase
    included), so that the real harmonics built from them are orthonormal on
    the unit sphere.  Returns arrays of shape (lmax+1, lmax+1, len(x)).
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    s2 = 1.0 - x * x                      # sin^2 theta, positive off poles
    N = np.zeros((lmax + 1, lmax + 1, n))
    N[0, 0] = np.sqrt(1.0 / (4.0 * np.pi))
    for m in range(1, lmax + 1):
        # diagonal recurrence, includes (-1)^m
        N[m, m] = -np.sqrt((2 * m + 1) / (2.0 * m)) * np.sqrt(s2) * N[m - 1, m - 1]
    for m in range(lmax):
        N[m + 1, m] = x * np.sqrt(2 * m + 3.0) * N[m, m]
    for m in range(lmax + 1):
        for l in range(m + 2, lmax + 1):
            a = np.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
            b = np.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1.0) ** 2 - 1.0))
            N[l, m] = a * (x * N[l - 1, m] - b * N[l - 2, m])

    dN = np.zeros_like(N)
    d2N = np.zeros_like(N)
    for m in range(lmax + 1):
        for l in range(max(m, 1), lmax + 1):
            if l > m:
                c = np.sqrt((l * l - m * m) * (2 * l + 1.0) / (2 * l - 1.0))
                dN[l, m] = (c * N[l - 1, m] - l * x * N[l, m]) / s2
            else:
                dN[l, m] = -l * x * N[l, m] / s2
            # Legendre ODE gives the second derivative in closed form
            d2N[l, m] = (2.0 * x * dN[l, m]
                         - (l * (l + 1.0) - m * m / s2) * N[l, m]) / s2
    return N, dN, d2N


def scalar_mode_index(l, m):
    """Flat index of scalar mode (l, m) in the l-ascending, m-ascending order."""
    return l * l + l + m


def mode_degrees(lmax, lmin=0):
    """(l, m) arrays for all modes with lmin <= l <= lmax."""
    ls, ms = [], []
    for l in range(lmin, lmax + 1):
        for m in range(-l, l + 1):
            ls.append(l)
            ms.append(m)
    return np.array(ls), np.array(ms)


# ---------------------------------------------------------------------------
# single-shell coefficient containers
# ---------------------------------------------------------------------------


@dataclass
class SphereScalarModes:
    """Coefficients f^(lm)(r) of a scalar on S_r, modes l = 0..lmax."""

    coeffs: np.ndarray
    r: float
    lmax: int

    def norm2(self):
        return float(np.sum(self.coeffs ** 2))

    def copy(self):
        return replace(self, coeffs=self.coeffs.copy())


@dataclass
class SphereVectorModes:
    """E/H coefficients of an S_r-tangent vectorfield, modes l = 1..lmax."""

    e: np.ndarray
    h: np.ndarray
    r: float
    lmax: int

    def norm2(self):
        return float(np.sum(self.e ** 2) + np.sum(self.h ** 2))

    def copy(self):
        return replace(self, e=self.e.copy(), h=self.h.copy())


@dataclass
class SphereTensorModes:
    """psi/phi coefficients of a tracefree symmetric 2-tensor, l = 2..lmax."""

    psi: np.ndarray
    phi: np.ndarray
    r: float
    lmax: int

    def norm2(self):
        return float(np.sum(self.psi ** 2) + np.sum(self.phi ** 2))

    def copy(self):
        return replace(self, psi=self.psi.copy(), phi=self.phi.copy())


# ---------------------------------------------------------------------------
# basis with quadrature grid and transforms
# ---------------------------------------------------------------------------


@dataclass
class SphereBasis:
    """Quadrature grid and basis tables for degrees l <= lmax.

    Gauss-Legendre nodes in cos(theta) x uniform phi, exact for products of
    two basis elements.  Tables are stored (theta-part, trig-kind) separable
    to keep memory small at padded resolutions.
    """

    lmax: int
    ntheta: int = 0
    nphi: int = 0
    # filled in __post_init__
    theta: np.ndarray = field(default=None, repr=False)
    phi: np.ndarray = field(default=None, repr=False)
    wtheta: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if self.ntheta == 0:
            self.ntheta = self.lmax + 1
        if self.nphi == 0:
            self.nphi = 2 * self.lmax + 1
        if self.ntheta < self.lmax + 1 or self.nphi < 2 * self.lmax + 1:
            raise BandLimitError(
                f"grid {self.ntheta}x{self.nphi} too coarse for lmax={self.lmax}")
        x, w = np.polynomial.legendre.leggauss(self.ntheta)
        order = np.argsort(-x)             # theta ascending
        x, w = x[order], w[order]
        self.theta = np.arccos(x)
        self.wtheta = w
        self.phi = 2.0 * np.pi * np.arange(self.nphi) / self.nphi
        self.wphi = 2.0 * np.pi / self.nphi

        ls, ms = mode_degrees(self.lmax)
        self.ls, self.ms = ls, ms
        self.nmodes_scalar = ls.size
        self.nmodes_vector = ls.size - 1
        self.nmodes_tensor = ls.size - 4

        self._build_theta_tables(x)
        # trig tables: cos(m phi), sin(m phi) for m = 0..lmax
        mgrid = np.arange(self.lmax + 1)[:, None] * self.phi[None, :]
        self._cos = np.cos(mgrid)
        self._sin = np.sin(mgrid)

    # -- table assembly ----------------------------------------------------

    def _build_theta_tables(self, x):
        lmax = self.lmax
        N, dNdx, d2Ndx2 = _legendre_tables(lmax, x)
        sin_t = np.sqrt(1.0 - x * x)
        cos_t = x
        # theta-derivatives from x-derivatives
        dNdt = -sin_t * dNdx
        d2Ndt2 = -cos_t * dNdx + sin_t ** 2 * d2Ndx2

        n = self.nmodes_scalar
        nt = self.ntheta
        # per-scalar-mode theta parts; the trig factor is cos(|m| phi) for
        # m >= 0 modes and sin(|m| phi) for m < 0 modes
        self.tab_y = np.zeros((n, nt))      # theta part of Ytilde
        self.tab_dy = np.zeros((n, nt))     # theta part of d_theta Ytilde
        self.tab_py = np.zeros((n, nt))     # theta part of (1/s) d_phi Ytilde (flipped trig)
        self.tab_dy2 = np.zeros((n, nt))    # theta part of d^2_theta Ytilde
        self.tab_dpy = np.zeros((n, nt))    # theta part of d_theta[(1/s) d_phi Ytilde]
        self.mabs = np.abs(self.ms)
        # parity: +1 for cos-type (m >= 0), -1 for sin-type (m < 0)
        self.parity = np.where(self.ms >= 0, 1.0, -1.0)

        for k in range(n):
            l, m = self.ls[k], self.ms[k]
            mu = abs(m)
            scale = 1.0 if m == 0 else np.sqrt(2.0)
            a0 = scale * N[l, mu]
            a1 = scale * dNdt[l, mu]
            a2 = scale * d2Ndt2[l, mu]
            self.tab_y[k] = a0
            self.tab_dy[k] = a1
            self.tab_dy2[k] = a2
            p = self.parity[k]
            # (1/s) d_phi Ytilde = -p * mu * (a0/s) * (flipped trig)
            self.tab_py[k] = -p * mu * a0 / sin_t
            self.tab_dpy[k] = -p * mu * (a1 / sin_t - a0 * cos_t / sin_t ** 2)

        # vector tables (frame components on the unit sphere)
        mu1 = (self.ls * (self.ls + 1.0))            # l(l+1), 0 at l=0
        with np.errstate(divide="ignore", invalid="ignore"):
            inv_sq1 = np.where(mu1 > 0, 1.0 / np.sqrt(np.where(mu1 > 0, mu1, 1.0)), 0.0)
        self.tab_e_th = -self.tab_dy * inv_sq1[:, None]          # trig t
        self.tab_e_ph = -self.tab_py * inv_sq1[:, None]          # trig flipped
        self.tab_h_th = self.tab_py * inv_sq1[:, None]           # trig flipped
        self.tab_h_ph = -self.tab_dy * inv_sq1[:, None]          # trig t

        # tensor tables: psi = -(1/(2 sqrt(mu2))) (P(E), Q(E)),
        # with P, Q the plus/cross parts of the conformal Killing operator
        cot = (cos_t / sin_t)[None, :]
        pm = (self.parity * self.mabs)[:, None]
        P_E = (-self.tab_dy2 + cot * self.tab_dy
               + pm * self.tab_py / sin_t[None, :]) * inv_sq1[:, None]   # trig t
        Q_E = (-self.tab_dpy + cot * self.tab_py
               + pm * self.tab_dy / sin_t[None, :]) * inv_sq1[:, None]   # trig flipped
        mu2 = 0.5 * mu1 - 1.0                                            # positive for l >= 2
        with np.errstate(divide="ignore", invalid="ignore"):
            inv_sq2 = np.where(mu2 > 0, 1.0 / np.sqrt(np.where(mu2 > 0, mu2, 1.0)), 0.0)
        self.tab_psi_p = -0.5 * P_E * inv_sq2[:, None]           # trig t
        self.tab_psi_x = -0.5 * Q_E * inv_sq2[:, None]           # trig flipped
        # phi(l,m) tables follow from phi = -(*psi):
        # phi_plus = -psi_cross part (trig flipped), phi_cross = +psi_plus part (trig t)
        self.tab_phi_p = -self.tab_psi_x                         # trig flipped
        self.tab_phi_x = self.tab_psi_p                          # trig t

    # -- phi contraction helpers --------------------------------------------

    def _phi_moments(self, samples):
        """Return (Gc, Gs): Gc[m, i] = wphi * sum_j samples[i,j] cos(m phi_j)."""
        gc = self.wphi * samples @ self._cos.T
        gs = self.wphi * samples @ self._sin.T
        return gc.T, gs.T

    def _contract(self, theta_tab, moments_t, moments_tbar, flipped):
        """Quadrature contraction of separable tables against phi moments."""
        gc, gs = moments_t, moments_tbar
        out = np.zeros(theta_tab.shape[0])
        wt = self.wtheta
        for k in range(theta_tab.shape[0]):
            mu = self.mabs[k]
            if not flipped:
                mom = gc[mu] if self.parity[k] > 0 else gs[mu]
            else:
                mom = gs[mu] if self.parity[k] > 0 else gc[mu]
            out[k] = np.dot(wt * theta_tab[k], mom)
        return out

    def _synthesize(self, theta_tab, coeffs, flipped):
        """Sum_k coeffs[k] * theta_tab[k](theta) x trig_k(phi) on the grid."""
        nt, nphi = self.ntheta, self.nphi
        # accumulate per (mu, kind) to keep it a pair of small matmuls
        acc_cos = np.zeros((self.lmax + 1, nt))
        acc_sin = np.zeros((self.lmax + 1, nt))
        for k in range(theta_tab.shape[0]):
            c = coeffs[k]
            if c == 0.0:
                continue
            mu = self.mabs[k]
            cos_kind = (self.parity[k] > 0) != flipped
            if cos_kind:
                acc_cos[mu] += c * theta_tab[k]
            else:
                acc_sin[mu] += c * theta_tab[k]
        return acc_cos.T @ self._cos + acc_sin.T @ self._sin

    # -- scalar transforms ---------------------------------------------------

    def scalar_transform(self, samples, r):
        """Coefficients f^(lm)(r) from samples on the S_r quadrature grid."""
        samples = np.asarray(samples, dtype=float)
        if samples.shape != (self.ntheta, self.nphi):
            raise BandLimitError(
                f"expected grid {(self.ntheta, self.nphi)}, got {samples.shape}")
        gc, gs = self._phi_moments(samples)
        coeffs = r * self._contract(self.tab_y, gc, gs, flipped=False)
        return SphereScalarModes(coeffs=coeffs, r=float(r), lmax=self.lmax)

    def inverse_scalar_transform(self, modes):
        """Grid samples of the scalar with coefficients `modes` on S_r."""
        return self._synthesize(self.tab_y, modes.coeffs, flipped=False) / modes.r

    # -- vector transforms ---------------------------------------------------

    def vector_transform(self, comp_theta, comp_phi, r):
        """E/H coefficients from orthonormal-frame components on the grid."""
        gct, gst = self._phi_moments(np.asarray(comp_theta, dtype=float))
        gcp, gsp = self._phi_moments(np.asarray(comp_phi, dtype=float))
        e = (self._contract(self.tab_e_th, gct, gst, flipped=False)
             + self._contract(self.tab_e_ph, gcp, gsp, flipped=True))
        h = (self._contract(self.tab_h_th, gct, gst, flipped=True)
             + self._contract(self.tab_h_ph, gcp, gsp, flipped=False))
        return SphereVectorModes(e=r * e[1:], h=r * h[1:], r=float(r), lmax=self.lmax)

    def inverse_vector_transform(self, modes):
        """Orthonormal-frame components (theta, phi) of the vector on S_r."""
        e = np.concatenate([[0.0], modes.e])
        h = np.concatenate([[0.0], modes.h])
        ct = self._synthesize(self.tab_e_th, e, False) + self._synthesize(self.tab_h_th, h, True)
        cp = self._synthesize(self.tab_e_ph, e, True) + self._synthesize(self.tab_h_ph, h, False)
        return ct / modes.r, cp / modes.r

    # -- tensor transforms ---------------------------------------------------

    def tensor_transform(self, comp_plus, comp_cross, r):
        """psi/phi coefficients from frame components (V_plus, V_cross)."""
        gcp, gsp = self._phi_moments(np.asarray(comp_plus, dtype=float))
        gcx, gsx = self._phi_moments(np.asarray(comp_cross, dtype=float))
        psi = 2.0 * (self._contract(self.tab_psi_p, gcp, gsp, flipped=False)
                     + self._contract(self.tab_psi_x, gcx, gsx, flipped=True))
        phi_ = 2.0 * (self._contract(self.tab_phi_p, gcp, gsp, flipped=True)
                      + self._contract(self.tab_phi_x, gcx, gsx, flipped=False))
        return SphereTensorModes(psi=r * psi[4:], phi=r * phi_[4:],
                                 r=float(r), lmax=self.lmax)

    def inverse_tensor_transform(self, modes):
        """Frame components (V_plus, V_cross) of the tensor on S_r."""
        psi = np.concatenate([np.zeros(4), modes.psi])
        phi_ = np.concatenate([np.zeros(4), modes.phi])
        vp = self._synthesize(self.tab_psi_p, psi, False) + self._synthesize(self.tab_phi_p, phi_, True)
        vx = self._synthesize(self.tab_psi_x, psi, True) + self._synthesize(self.tab_phi_x, phi_, False)
        return vp / modes.r, vx / modes.r

    # -- quadrature ----------------------------------------------------------

    def integrate(self, samples):
        """Quadrature of samples over the unit sphere."""
        return float(np.sum(self.wtheta[:, None] * samples) * self.wphi)

    def integrate_shell(self, samples, r):
        """Quadrature over S_r of pointwise samples."""
        return r * r * self.integrate(samples)

    # -- scattered-point evaluation tables ------------------------------------

    def point_tables(self, theta, phi, needs=("y",)):
        """Basis tables at scattered points, dict of (nmodes_scalar, npts) arrays.

        Points too close to the polar axis are nudged off it; the nudge is
        O(1e-7) and below every oracle tolerance used in this package.
        """
        groups = {"e_th": ("e_th", "e_ph"), "h_th": ("h_th", "h_ph"),
                  "psi_p": ("psi_p", "psi_x", "phi_p", "phi_x")}
        expanded = []
        for key in needs:
            expanded.extend(groups.get(key, (key,)))
        needs = tuple(dict.fromkeys(expanded))
        theta = np.array(theta, dtype=float)
        eps = 1e-7
        theta = np.clip(theta, eps, np.pi - eps)
        phi = np.asarray(phi, dtype=float)
        x = np.cos(theta)
        N, dNdx, d2Ndx2 = _legendre_tables(self.lmax, x)
        sin_t, cos_t = np.sin(theta), np.cos(theta)
        dNdt = -sin_t * dNdx
        d2Ndt2 = -cos_t * dNdx + sin_t ** 2 * d2Ndx2
        n, npts = self.nmodes_scalar, theta.size
        out = {key: np.zeros((n, npts)) for key in needs}
        mu1 = self.ls * (self.ls + 1.0)
        mu2 = 0.5 * mu1 - 1.0
        for k in range(n):
            l, m = self.ls[k], self.ms[k]
            mu = abs(m)
            scale = 1.0 if m == 0 else np.sqrt(2.0)
            p = 1.0 if m >= 0 else -1.0
            trig = np.cos(mu * phi) if m >= 0 else np.sin(mu * phi)
            trig_f = np.sin(mu * phi) if m >= 0 else np.cos(mu * phi)
            a0 = scale * N[l, mu]
            a1 = scale * dNdt[l, mu]
            py = -p * mu * a0 / sin_t
            if "y" in needs:
                out["y"][k] = a0 * trig
            if l >= 1 and ("e_th" in needs or "h_th" in needs):
                isq1 = 1.0 / np.sqrt(mu1[k])
                if "e_th" in needs:
                    out["e_th"][k] = -a1 * trig * isq1
                    out["e_ph"][k] = -py * trig_f * isq1
                if "h_th" in needs:
                    out["h_th"][k] = py * trig_f * isq1
                    out["h_ph"][k] = -a1 * trig * isq1
            if l >= 2 and "psi_p" in needs:
                isq1 = 1.0 / np.sqrt(mu1[k])
                isq2 = 1.0 / np.sqrt(mu2[k])
                a2 = scale * d2Ndt2[l, mu]
                dpy = -p * mu * (a1 / sin_t - a0 * cos_t / sin_t ** 2)
                cot = cos_t / sin_t
                pe = (-a2 + cot * a1 + p * mu * py / sin_t) * isq1
                qe = (-dpy + cot * py + p * mu * a1 / sin_t) * isq1
                out["psi_p"][k] = -0.5 * pe * isq2 * trig
                out["psi_x"][k] = -0.5 * qe * isq2 * trig_f
                out["phi_p"][k] = 0.5 * qe * isq2 * trig_f
                out["phi_x"][k] = -0.5 * pe * isq2 * trig
        return out


# ---------------------------------------------------------------------------
# diagonal first-order operators on coefficients
# ---------------------------------------------------------------------------


def _sqrt_mu1(lmax):
    ls, _ = mode_degrees(lmax, lmin=1)
    return np.sqrt(ls * (ls + 1.0))


def _sqrt_mu2(lmax):
    ls, _ = mode_degrees(lmax, lmin=2)
    return np.sqrt(0.5 * ls * (ls + 1.0) - 1.0)


def d1_apply(x: SphereVectorModes):
    """(div X, curl X) of a tangent vectorfield, as scalar coefficients."""
    fac = _sqrt_mu1(x.lmax) / x.r
    div = np.concatenate([[0.0], fac * x.e])
    curl = np.concatenate([[0.0], fac * x.h])
    return (SphereScalarModes(div, x.r, x.lmax),
            SphereScalarModes(curl, x.r, x.lmax))


def d1_adjoint(f: SphereScalarModes, f_star: SphereScalarModes):
    """Adjoint of d1: (f, f*) -> -grad f + dual grad f*, a vectorfield."""
    fac = _sqrt_mu1(f.lmax) / f.r
    return SphereVectorModes(e=fac * f.coeffs[1:], h=fac * f_star.coeffs[1:],
                             r=f.r, lmax=f.lmax)


def d1_inverse(f: SphereScalarModes, f_star: SphereScalarModes, tol=1e-10):
    """Vectorfield X with div X = f, curl X = f*; requires no l=0 content."""
    scale = max(np.sqrt(f.norm2() + f_star.norm2()), 1e-300)
    if abs(f.coeffs[0]) > tol * scale or abs(f_star.coeffs[0]) > tol * scale:
        raise ModeRangeError("d1_inverse: nonzero l=0 content in the data")
    fac = f.r / _sqrt_mu1(f.lmax)
    return SphereVectorModes(e=fac * f.coeffs[1:], h=fac * f_star.coeffs[1:],
                             r=f.r, lmax=f.lmax)


def d2_apply(v: SphereTensorModes):
    """div V of a tracefree symmetric 2-tensor, as a vectorfield."""
    fac = _sqrt_mu2(v.lmax) / v.r
    nvec = (v.lmax + 1) ** 2 - 1
    e = np.zeros(nvec)
    h = np.zeros(nvec)
    e[3:] = fac * v.psi
    h[3:] = fac * v.phi
    return SphereVectorModes(e=e, h=h, r=v.r, lmax=v.lmax)


def d2_adjoint(x: SphereVectorModes):
    """Adjoint of d2: F -> -(1/2) conformal-Killing derivative of F.

    Annihilates exactly the l=1 modes (conformal Killing fields).
    """
    fac = _sqrt_mu2(x.lmax) / x.r
    return SphereTensorModes(psi=fac * x.e[3:], phi=fac * x.h[3:],
                             r=x.r, lmax=x.lmax)


def d2_inverse(x: SphereVectorModes, tol=1e-10):
    """Tracefree tensor V with div V = X; requires no l<=1 content in X."""
    scale = max(np.sqrt(x.norm2()), 1e-300)
    low = np.sqrt(np.sum(x.e[:3] ** 2) + np.sum(x.h[:3] ** 2))
    if low > tol * scale:
        raise ModeRangeError("d2_inverse: nonzero l=1 content in the data")
    fac = x.r / _sqrt_mu2(x.lmax)
    return SphereTensorModes(psi=fac * x.e[3:], phi=fac * x.h[3:],
                             r=x.r, lmax=x.lmax)


def hodge_dual_vector(x: SphereVectorModes):
    """Left Hodge dual *X; in coefficients (E, H) -> (H, -E)."""
    return SphereVectorModes(e=x.h.copy(), h=-x.e.copy(), r=x.r, lmax=x.lmax)


def hodge_dual_tensor(v: SphereTensorModes):
    """Left Hodge dual *V; in coefficients (psi, phi) -> (phi, -psi)."""
    return SphereTensorModes(psi=v.phi.copy(), phi=-v.psi.copy(), r=v.r, lmax=v.lmax)


def sphere_gradient(f: SphereScalarModes):
    """Tangential gradient of a scalar: (grad f)_E = -sqrt(l(l+1))/r f."""
    fac = _sqrt_mu1(f.lmax) / f.r
    return SphereVectorModes(e=-fac * f.coeffs[1:], h=np.zeros(f.coeffs.size - 1),
                             r=f.r, lmax=f.lmax)


def sphere_laplacian(f: SphereScalarModes):
    """Laplace-Beltrami of a scalar: -l(l+1)/r^2 diagonal."""
    ls, _ = mode_degrees(f.lmax)
    return SphereScalarModes(coeffs=-ls * (ls + 1.0) / f.r ** 2 * f.coeffs,
                             r=f.r, lmax=f.lmax)
