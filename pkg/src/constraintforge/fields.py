"""
Mode fields over radial grids on the exterior region r >= 1.

A ModeField stores, per radial node, the L^2(S_r)-orthonormal coefficients of
a scalar / tangent-vector / tracefree-tensor field (the same convention as
the single-shell containers in `hodge`).  Because the basis scales like 1/r,
the coefficient c(r) and the amplitude profile a(r) = c(r)/r (the component
against the r-independent unit-sphere basis) differ by one power of r:

    coefficient rule   (nabla_N f)^(lm) = d_r f^(lm) - f^(lm)/r,
    amplitude rule     amp(nabla_N f)   = d_r amp(f).

Radial ODEs stated for "fields" act on amplitudes; norms and the cutoff
integral identities use coefficients.  Both accessors are provided and each
routine says which one it consumes.

The exterior grid is uniform in the mapped coordinate s = 1 - 1/r; radial
quadrature evaluates weights r^a analytically at 5-point Gauss-Legendre
nodes per interval, so growing and decaying weights are both integrated to
(near) machine precision relative accuracy, with only the O(h^4) local
interpolation of grid data as an error source.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace

import numpy as np

from .hodge import SphereBasis, SphereScalarModes, SphereTensorModes, SphereVectorModes, mode_degrees

__all__ = [
    "RadialGrid",
    "ModeField",
    "KDecomp",
    "SigmaDecomp",
    "WeightOrder",
    "nabla_N",
    "weighted_norm",
    "boundary_trace",
    "kdecomp_to_cartesian",
    "vector_to_cartesian",
    "radial_decompose_tensor",
    "radial_decompose_vector",
    "polar_frames",
]


class DomainError(ValueError):
    """Evaluation point outside the field's domain."""


def _fd4_matrix(n, h):
    """4th-order first-derivative matrix on a uniform grid (dense)."""
    D = np.zeros((n, n))
    c = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / (12.0 * h)
    for i in range(2, n - 2):
        D[i, i - 2:i + 3] = c
    D[0, :5] = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / (12.0 * h)
    D[1, :5] = np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / (12.0 * h)
    D[n - 2, n - 5:] = -np.array([-3.0, -10.0, 18.0, -6.0, 1.0])[::-1] / (12.0 * h)
    D[n - 1, n - 5:] = -np.array([-25.0, 48.0, -36.0, 16.0, -3.0])[::-1] / (12.0 * h)
    return D


_GL5_X, _GL5_W = np.polynomial.legendre.leggauss(5)


@dataclass
class RadialGrid:
    """Radial nodes with high-order quadrature and differentiation.

    kind="exterior": nodes r in [1, rmax], uniform in s = 1 - 1/r.
    kind="ball":     nodes r in [0, 1], uniform in r (for interior solves).
    """

    nnodes: int = 800
    rmax: float = 50.0
    kind: str = "exterior"

    def __post_init__(self):
        n = self.nnodes
        if self.kind == "exterior":
            smax = 1.0 - 1.0 / self.rmax
            self.s = np.linspace(0.0, smax, n)
            self.r = 1.0 / (1.0 - self.s)
            self.hs = self.s[1] - self.s[0]
            # d/dr = (1-s)^2 d/ds
            self.deriv_matrix = (1.0 - self.s)[:, None] ** 2 * _fd4_matrix(n, self.hs)
        elif self.kind == "ball":
            self.s = np.linspace(0.0, 1.0, n)
            self.r = self.s.copy()
            self.hs = self.s[1] - self.s[0]
            self.deriv_matrix = _fd4_matrix(n, self.hs)
        else:
            raise ValueError(f"unknown grid kind {self.kind!r}")
        self._build_quadrature()

    def _build_quadrature(self):
        s = self.s
        n = self.nnodes
        # 5-point GL nodes per interval in the mapped coordinate
        mid = 0.5 * (s[:-1] + s[1:])
        half = 0.5 * (s[1:] - s[:-1])
        self._gl_s = mid[:, None] + half[:, None] * _GL5_X[None, :]
        self._gl_w = half[:, None] * _GL5_W[None, :]
        if self.kind == "exterior":
            self._gl_r = 1.0 / (1.0 - self._gl_s)
            self._gl_drds = self._gl_r ** 2
        else:
            self._gl_r = self._gl_s
            self._gl_drds = np.ones_like(self._gl_s)
        # cubic interpolation of nodal data to the GL points: for interval j
        # use nodes j-1..j+2 (clamped); precompute Lagrange weights
        base = np.clip(np.arange(n - 1) - 1, 0, n - 4)
        self._interp_base = base
        w = np.zeros((n - 1, 5, 4))
        for j in range(n - 1):
            xs = s[base[j]:base[j] + 4]
            for q in range(5):
                t = self._gl_s[j, q]
                for p in range(4):
                    num = 1.0
                    for pp in range(4):
                        if pp != p:
                            num *= (t - xs[pp]) / (xs[p] - xs[pp])
                    w[j, q, p] = num
        self._interp_w = w

    # -- data interpolation to GL points ------------------------------------

    def _data_at_gl(self, values):
        idx = self._interp_base
        stacked = np.stack([values[idx + p] for p in range(4)], axis=-1)
        return np.einsum("jqp,jp->jq", self._interp_w, stacked)

    # -- integrals -----------------------------------------------------------

    def integrate(self, values, weight_exponent=0.0):
        """integral over [r0, rmax] of r^a * f(r) dr for nodal data f."""
        vals = self._data_at_gl(np.asarray(values, dtype=float))
        w = self._gl_r ** weight_exponent * self._gl_drds
        return float(np.sum(self._gl_w * w * vals))

    def cumulative_integral(self, values, weight_exponent=0.0):
        """Nodal profile of r -> integral_{r0}^{r} (r')^a f(r') dr'."""
        vals = self._data_at_gl(np.asarray(values, dtype=float))
        w = self._gl_r ** weight_exponent * self._gl_drds
        parts = np.sum(self._gl_w * w * vals, axis=1)
        out = np.zeros(self.nnodes)
        out[1:] = np.cumsum(parts)
        return out

    def integrate_callable(self, func, weight_exponent=0.0):
        """Same as `integrate` but evaluates func(r) exactly at GL points."""
        vals = func(self._gl_r)
        w = self._gl_r ** weight_exponent * self._gl_drds
        return float(np.sum(self._gl_w * w * vals))

    def cumulative_callable(self, func, weight_exponent=0.0):
        vals = func(self._gl_r)
        w = self._gl_r ** weight_exponent * self._gl_drds
        parts = np.sum(self._gl_w * w * vals, axis=1)
        out = np.zeros(self.nnodes)
        out[1:] = np.cumsum(parts)
        return out

    def derivative(self, values):
        return np.asarray(values, dtype=float) @ self.deriv_matrix.T

    def tail_exponent(self, values):
        """Crude power-law fit of the far tail, for truncation-error logging."""
        v = np.abs(np.asarray(values, dtype=float)) + 1e-300
        j1, j2 = int(0.8 * self.nnodes), self.nnodes - 1
        return float(np.log(v[j2] / v[j1]) / np.log(self.r[j2] / self.r[j1]))

    def interpolation_weights(self, rq):
        """(indices, weights) for cubic interpolation of nodal data at rq."""
        rq = np.asarray(rq, dtype=float)
        if self.kind == "exterior":
            sq = 1.0 - 1.0 / rq
        else:
            sq = rq
        j = np.clip(np.searchsorted(self.s, sq) - 1, 0, self.nnodes - 2)
        base = np.clip(j - 1, 0, self.nnodes - 4)
        w = np.ones((rq.size, 4))
        for p in range(4):
            for pp in range(4):
                if pp != p:
                    xp = self.s[base + p]
                    xpp = self.s[base + pp]
                    w[:, p] *= (sq - xpp) / (xp - xpp)
        return base, w


# ---------------------------------------------------------------------------
# mode fields
# ---------------------------------------------------------------------------

_RANK_CHANNELS = {"scalar": ("c",), "vector": ("e", "h"), "tensor": ("psi", "phi")}
_RANK_LMIN = {"scalar": 0, "vector": 1, "tensor": 2}


@dataclass
class ModeField:
    """Coefficients over a radial grid; data shape (nmodes, nnodes) per channel."""

    rank: str
    lmax: int
    grid: RadialGrid
    data: dict = dc_field(default_factory=dict)
    deriv: dict | None = None           # same shapes; analytic when available

    @classmethod
    def zeros(cls, rank, lmax, grid):
        lmin = _RANK_LMIN[rank]
        nmodes = (lmax + 1) ** 2 - lmin ** 2
        data = {ch: np.zeros((nmodes, grid.nnodes)) for ch in _RANK_CHANNELS[rank]}
        return cls(rank=rank, lmax=lmax, grid=grid, data=data)

    @classmethod
    def from_coeff_profiles(cls, rank, lmax, grid, profiles, derivs=None):
        """profiles: dict channel -> (nmodes, nnodes) coefficient arrays."""
        f = cls.zeros(rank, lmax, grid)
        for ch, arr in profiles.items():
            f.data[ch] = np.array(arr, dtype=float)
        if derivs is not None:
            f.deriv = {ch: np.array(arr, dtype=float) for ch, arr in derivs.items()}
        return f

    # -- structure -----------------------------------------------------------

    @property
    def channels(self):
        return _RANK_CHANNELS[self.rank]

    @property
    def nmodes(self):
        return self.data[self.channels[0]].shape[0]

    def degrees(self):
        return mode_degrees(self.lmax, lmin=_RANK_LMIN[self.rank])

    def copy(self):
        d = {ch: v.copy() for ch, v in self.data.items()}
        dd = None if self.deriv is None else {ch: v.copy() for ch, v in self.deriv.items()}
        return ModeField(self.rank, self.lmax, self.grid, d, dd)

    # -- derivative access -----------------------------------------------------

    def derivative(self, channel=None):
        """d_r of the coefficient profiles (stored if available, else FD)."""
        if channel is None:
            channel = self.channels[0]
        if self.deriv is not None and channel in self.deriv:
            return self.deriv[channel]
        return self.grid.derivative(self.data[channel])

    def amp(self, channel=None):
        """Amplitude profiles coeff/r."""
        if channel is None:
            channel = self.channels[0]
        return self.data[channel] / self.grid.r[None, :]

    def shell(self, j):
        """Single-shell container at node j."""
        r = float(self.grid.r[j])
        if self.rank == "scalar":
            return SphereScalarModes(self.data["c"][:, j].copy(), r, self.lmax)
        if self.rank == "vector":
            return SphereVectorModes(self.data["e"][:, j].copy(),
                                     self.data["h"][:, j].copy(), r, self.lmax)
        return SphereTensorModes(self.data["psi"][:, j].copy(),
                                 self.data["phi"][:, j].copy(), r, self.lmax)

    # -- algebra ---------------------------------------------------------------

    def _binary(self, other, op):
        out = self.copy()
        for ch in self.channels:
            out.data[ch] = op(self.data[ch], other.data[ch])
        if self.deriv is not None and other.deriv is not None:
            out.deriv = {ch: op(self.deriv[ch], other.deriv[ch]) for ch in self.channels}
        else:
            out.deriv = None
        return out

    def __add__(self, other):
        return self._binary(other, np.add)

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __mul__(self, a):
        out = self.copy()
        for ch in self.channels:
            out.data[ch] = a * self.data[ch]
        if out.deriv is not None:
            out.deriv = {ch: a * v for ch, v in out.deriv.items()}
        return out

    __rmul__ = __mul__

    def l2_profile(self):
        """sqrt(sum over modes of coeff^2) per node, a cheap size gauge."""
        tot = np.zeros(self.grid.nnodes)
        for ch in self.channels:
            tot += np.sum(self.data[ch] ** 2, axis=0)
        return np.sqrt(tot)


@dataclass
class WeightOrder:
    """Derivative count w and weight exponent delta of a weighted norm."""

    w: int
    delta: float

    def __post_init__(self):
        if self.w < 0:
            raise ValueError("derivative count must be nonnegative")


@dataclass
class KDecomp:
    """Radial decomposition of a symmetric 2-tensor: normal-normal scalar
    (delta), mixed vector (eps), and tracefree tangential part (eta).

    For tensors tracefree w.r.t. the Euclidean metric the tangential trace is
    -delta; a separate channel stores it otherwise.
    """

    delta: ModeField
    eps: ModeField
    eta: ModeField
    tangential_trace: ModeField | None = None

    def copy(self):
        return KDecomp(self.delta.copy(), self.eps.copy(), self.eta.copy(),
                       None if self.tangential_trace is None else self.tangential_trace.copy())

    def _lincomb(self, other, a, b):
        tt = None
        if self.tangential_trace is not None or other.tangential_trace is not None:
            ts = self.trace_field()
            to = other.trace_field()
            tt = a * ts + b * to
        return KDecomp(a * self.delta + b * other.delta,
                       a * self.eps + b * other.eps,
                       a * self.eta + b * other.eta, tt)

    def __add__(self, other):
        return self._lincomb(other, 1.0, 1.0)

    def __sub__(self, other):
        return self._lincomb(other, 1.0, -1.0)

    def __mul__(self, a):
        tt = None if self.tangential_trace is None else a * self.tangential_trace
        return KDecomp(a * self.delta, a * self.eps, a * self.eta, tt)

    __rmul__ = __mul__

    def trace_field(self):
        """Tangential trace as a scalar ModeField (defaults to -delta)."""
        if self.tangential_trace is not None:
            return self.tangential_trace
        return -1.0 * self.delta


@dataclass
class SigmaDecomp:
    """Curl-side bookkeeping: sigma_NN, *sigma_N (vector), *(sigma-hat) (tensor)."""

    sigma_nn: ModeField
    dual_sigma_n: ModeField
    dual_sigma_tt: ModeField


# ---------------------------------------------------------------------------
# radial calculus
# ---------------------------------------------------------------------------


def nabla_N(f: ModeField) -> ModeField:
    """Projected radial derivative; coefficients map to d_r c - c/r."""
    out = ModeField.zeros(f.rank, f.lmax, f.grid)
    rinv = 1.0 / f.grid.r[None, :]
    for ch in f.channels:
        out.data[ch] = f.derivative(ch) - f.data[ch] * rinv
    return out


def weighted_norm(f: ModeField, order: WeightOrder) -> float:
    """Spectral surrogate of the weighted Sobolev norm on the exterior.

    norm^2 = sum over modes and n1+n2 <= w of
       int r^(-2 delta - 3 + 2(n1+n2)) (l(l+1)/r^2)^n1 ((nabla_N)^n2 c)^2 dr,
    with the flat-space weight (1+r) replaced by r (equivalent on r >= 1).
    """
    w, delta = order.w, order.delta
    grid = f.grid
    ls, _ = f.degrees()
    mu = (ls * (ls + 1.0))[:, None]
    r = grid.r[None, :]
    total = 0.0
    for ch in f.channels:
        radial = [f.data[ch]]
        cur = f.data[ch]
        dcur = f.derivative(ch)
        for _n in range(w):
            cur = dcur - cur / r
            radial.append(cur)
            dcur = grid.derivative(cur)
        for n2 in range(w + 1):
            for n1 in range(w + 1 - n2):
                vals = (mu / r ** 2) ** n1 * radial[n2] ** 2
                expo = -2.0 * delta - 3.0 + 2.0 * (n1 + n2)
                total += grid.integrate(np.sum(vals, axis=0), weight_exponent=expo)
    return float(np.sqrt(total))


def boundary_trace(f: ModeField, derivative_order: int = 0):
    """Per-mode coefficient values of d_r^n at the inner boundary r = r0."""
    out = {}
    for ch in f.channels:
        vals = f.data[ch]
        for _ in range(derivative_order):
            vals = f.grid.derivative(vals)
        out[ch] = vals[:, 0].copy()
    if f.rank == "scalar":
        return out["c"]
    return out


# ---------------------------------------------------------------------------
# Cartesian bridges
# ---------------------------------------------------------------------------


def polar_frames(points):
    """(r, theta, phi) and the orthonormal polar frame at Cartesian points."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
    r = np.sqrt(x * x + y * y + z * z)
    rho = np.sqrt(x * x + y * y)
    theta = np.arctan2(rho, z)
    phi = np.arctan2(y, x)
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    e_r = np.stack([st * cp, st * sp, ct], axis=1)
    e_t = np.stack([ct * cp, ct * sp, -st], axis=1)
    e_p = np.stack([-sp, cp, np.zeros_like(sp)], axis=1)
    return r, theta, phi, e_r, e_t, e_p


def _interp_coeffs(f: ModeField, rq):
    base, w = f.grid.interpolation_weights(rq)
    out = {}
    for ch in f.channels:
        d = f.data[ch]
        out[ch] = sum(d[:, base + p] * w[None, :, p] for p in range(4))
    return out


def _check_domain(f, r):
    if f.grid.kind == "exterior" and np.any(r < f.grid.r[0] - 1e-12):
        raise DomainError("point inside the excised ball r < 1")
    if np.any(r > f.grid.r[-1] + 1e-12):
        raise DomainError("point beyond the radial grid")


def vector_to_cartesian(normal: ModeField, tangent: ModeField, points, basis=None):
    """Cartesian components of N * normal + tangent at the given points."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    r, theta, phi, e_r, e_t, e_p = polar_frames(pts)
    _check_domain(tangent, r)
    if basis is None:
        basis = SphereBasis(tangent.lmax)
    tabs = basis.point_tables(theta, phi, needs=("y", "e_th", "h_th"))
    cn = _interp_coeffs(normal, r)["c"]
    ctang = _interp_coeffs(tangent, r)
    vn = np.sum(cn * tabs["y"], axis=0) / r
    e = np.concatenate([np.zeros((1, pts.shape[0])), ctang["e"]])
    h = np.concatenate([np.zeros((1, pts.shape[0])), ctang["h"]])
    vt = np.sum(e * tabs["e_th"] + h * tabs["h_th"], axis=0) / r
    vp = np.sum(e * tabs["e_ph"] + h * tabs["h_ph"], axis=0) / r
    return vn[:, None] * e_r + vt[:, None] * e_t + vp[:, None] * e_p


def kdecomp_to_cartesian(k: KDecomp, points, basis=None):
    """Symmetric 3x3 Cartesian components of the decomposed tensor.

    Assembles [[delta, eps], [eps, eta + (trace/2) gamma]] in the polar frame
    and rotates; the tangential trace defaults to -delta (flat-tracefree).
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    r, theta, phi, e_r, e_t, e_p = polar_frames(pts)
    _check_domain(k.delta, r)
    if basis is None:
        basis = SphereBasis(k.delta.lmax)
    n = pts.shape[0]
    tabs = basis.point_tables(theta, phi, needs=("y", "e_th", "h_th", "psi_p"))

    cd = _interp_coeffs(k.delta, r)["c"]
    delta = np.sum(cd * tabs["y"], axis=0) / r
    if k.tangential_trace is not None:
        ctr = _interp_coeffs(k.tangential_trace, r)["c"]
        trace = np.sum(ctr * tabs["y"], axis=0) / r
    else:
        trace = -delta

    ce = _interp_coeffs(k.eps, r)
    e = np.concatenate([np.zeros((1, n)), ce["e"]])
    h = np.concatenate([np.zeros((1, n)), ce["h"]])
    et = np.sum(e * tabs["e_th"] + h * tabs["h_th"], axis=0) / r
    ep = np.sum(e * tabs["e_ph"] + h * tabs["h_ph"], axis=0) / r

    ct = _interp_coeffs(k.eta, r)
    psi = np.concatenate([np.zeros((4, n)), ct["psi"]])
    phi_ = np.concatenate([np.zeros((4, n)), ct["phi"]])
    vpl = np.sum(psi * tabs["psi_p"] + phi_ * tabs["phi_p"], axis=0) / r
    vx = np.sum(psi * tabs["psi_x"] + phi_ * tabs["phi_x"], axis=0) / r

    frame = np.zeros((n, 3, 3))
    frame[:, 0, 0] = delta
    frame[:, 0, 1] = frame[:, 1, 0] = et
    frame[:, 0, 2] = frame[:, 2, 0] = ep
    frame[:, 1, 1] = vpl + 0.5 * trace
    frame[:, 2, 2] = -vpl + 0.5 * trace
    frame[:, 1, 2] = frame[:, 2, 1] = vx
    rot = np.stack([e_r, e_t, e_p], axis=2)      # columns are frame vectors
    return np.einsum("nia,nab,njb->nij", rot, frame, rot)


def radial_decompose_vector(sampler, grid: RadialGrid, basis: SphereBasis):
    """Decompose a Cartesian vector sampler into (normal scalar, tangent vector)."""
    lmax = basis.lmax
    fn = ModeField.zeros("scalar", lmax, grid)
    ft = ModeField.zeros("vector", lmax, grid)
    tt, pp = np.meshgrid(basis.theta, basis.phi, indexing="ij")
    st, ct = np.sin(tt).ravel(), np.cos(tt).ravel()
    sp, cp = np.sin(pp).ravel(), np.cos(pp).ravel()
    e_r = np.stack([st * cp, st * sp, ct], axis=1)
    e_t = np.stack([ct * cp, ct * sp, -st], axis=1)
    e_p = np.stack([-sp, cp, np.zeros_like(sp)], axis=1)
    shape = tt.shape
    for j, r in enumerate(grid.r):
        pts = r * e_r
        v = sampler(pts)
        vn = np.einsum("ni,ni->n", v, e_r).reshape(shape)
        vt = np.einsum("ni,ni->n", v, e_t).reshape(shape)
        vp = np.einsum("ni,ni->n", v, e_p).reshape(shape)
        sm = basis.scalar_transform(vn, r)
        vm = basis.vector_transform(vt, vp, r)
        fn.data["c"][:, j] = sm.coeffs
        ft.data["e"][:, j] = vm.e
        ft.data["h"][:, j] = vm.h
    return fn, ft


def radial_decompose_tensor(sampler, grid: RadialGrid, basis: SphereBasis):
    """Decompose a Cartesian symmetric-tensor sampler into a KDecomp.

    Returns the full decomposition including the tangential-trace channel;
    callers may drop it when the tensor is known to be flat-tracefree.
    """
    lmax = basis.lmax
    kd = KDecomp(ModeField.zeros("scalar", lmax, grid),
                 ModeField.zeros("vector", lmax, grid),
                 ModeField.zeros("tensor", lmax, grid),
                 ModeField.zeros("scalar", lmax, grid))
    tt, pp = np.meshgrid(basis.theta, basis.phi, indexing="ij")
    st, ct = np.sin(tt).ravel(), np.cos(tt).ravel()
    sp, cp = np.sin(pp).ravel(), np.cos(pp).ravel()
    e_r = np.stack([st * cp, st * sp, ct], axis=1)
    e_t = np.stack([ct * cp, ct * sp, -st], axis=1)
    e_p = np.stack([-sp, cp, np.zeros_like(sp)], axis=1)
    shape = tt.shape
    for j, r in enumerate(grid.r):
        pts = r * e_r
        V = sampler(pts)
        vrr = np.einsum("ni,nij,nj->n", e_r, V, e_r).reshape(shape)
        vrt = np.einsum("ni,nij,nj->n", e_r, V, e_t).reshape(shape)
        vrp = np.einsum("ni,nij,nj->n", e_r, V, e_p).reshape(shape)
        vtt = np.einsum("ni,nij,nj->n", e_t, V, e_t).reshape(shape)
        vtp = np.einsum("ni,nij,nj->n", e_t, V, e_p).reshape(shape)
        vpp = np.einsum("ni,nij,nj->n", e_p, V, e_p).reshape(shape)
        sm = basis.scalar_transform(vrr, r)
        vm = basis.vector_transform(vrt, vrp, r)
        tm = basis.tensor_transform(0.5 * (vtt - vpp), vtp, r)
        trm = basis.scalar_transform(vtt + vpp, r)
        kd.delta.data["c"][:, j] = sm.coeffs
        kd.eps.data["e"][:, j] = vm.e
        kd.eps.data["h"][:, j] = vm.h
        kd.eta.data["psi"][:, j] = tm.psi
        kd.eta.data["phi"][:, j] = tm.phi
        kd.tangential_trace.data["c"][:, j] = trm.coeffs
    return kd
