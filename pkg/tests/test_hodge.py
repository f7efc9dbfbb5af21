"""Tests for the sphere Hodge-Fourier calculus."""

import numpy as np
import pytest

from constraintforge.hodge import (
    BandLimitError,
    ModeRangeError,
    SphereBasis,
    SphereScalarModes,
    SphereTensorModes,
    SphereVectorModes,
    d1_adjoint,
    d1_apply,
    d1_inverse,
    d2_adjoint,
    d2_apply,
    d2_inverse,
    hodge_dual_tensor,
    hodge_dual_vector,
    mode_degrees,
    scalar_mode_index,
    sphere_laplacian,
)
from constraintforge.oracles import SphereFDOracle

LMAX = 6


@pytest.fixture(scope="module")
def basis():
    return SphereBasis(LMAX)


@pytest.fixture(scope="module")
def oracle():
    return SphereFDOracle()


def random_scalar(basis, rng, r=1.0):
    return SphereScalarModes(rng.standard_normal(basis.nmodes_scalar), r, basis.lmax)


def random_vector(basis, rng, r=1.0):
    return SphereVectorModes(rng.standard_normal(basis.nmodes_vector),
                             rng.standard_normal(basis.nmodes_vector), r, basis.lmax)


def random_tensor(basis, rng, r=1.0):
    return SphereTensorModes(rng.standard_normal(basis.nmodes_tensor),
                             rng.standard_normal(basis.nmodes_tensor), r, basis.lmax)


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------


def test_constant_field_coefficient(basis):
    # f == 1 on S_r picks out the (0,0) coefficient sqrt(4 pi) * r
    r = 3.0
    ones = np.ones((basis.ntheta, basis.nphi))
    modes = basis.scalar_transform(ones, r)
    assert abs(modes.coeffs[0] - np.sqrt(4.0 * np.pi) * r) < 1e-12
    assert np.abs(modes.coeffs[1:]).max() < 1e-12


def test_single_harmonic_roundtrip(basis):
    r = 1.8
    c = np.zeros(basis.nmodes_scalar)
    c[scalar_mode_index(2, 1)] = 1.0
    samples = basis.inverse_scalar_transform(SphereScalarModes(c, r, LMAX))
    back = basis.scalar_transform(samples, r)
    assert np.abs(back.coeffs - c).max() < 1e-13


def test_parseval_scalar(basis):
    rng = np.random.default_rng(1)
    r = 2.4
    f = random_scalar(basis, rng, r)
    samples = basis.inverse_scalar_transform(f)
    quad = basis.integrate_shell(samples ** 2, r)
    assert abs(quad - f.norm2()) < 1e-10 * f.norm2()


def test_parseval_vector_tensor(basis):
    rng = np.random.default_rng(2)
    r = 1.3
    x = random_vector(basis, rng, r)
    ct, cp = basis.inverse_vector_transform(x)
    quad = basis.integrate_shell(ct ** 2 + cp ** 2, r)
    assert abs(quad - x.norm2()) < 1e-10 * x.norm2()
    v = random_tensor(basis, rng, r)
    vp, vx = basis.inverse_tensor_transform(v)
    quad = basis.integrate_shell(2.0 * (vp ** 2 + vx ** 2), r)
    assert abs(quad - v.norm2()) < 1e-10 * v.norm2()


def test_grid_too_coarse_rejected():
    with pytest.raises(BandLimitError):
        SphereBasis(8, ntheta=6)


# ---------------------------------------------------------------------------
# d1 / d2 diagonal relations
# ---------------------------------------------------------------------------


def test_d1_on_basis_vector(basis):
    e = np.zeros(basis.nmodes_vector)
    e[scalar_mode_index(2, 0) - 1] = 1.0
    x = SphereVectorModes(e, np.zeros_like(e), 1.0, LMAX)
    div, curl = d1_apply(x)
    assert abs(div.coeffs[scalar_mode_index(2, 0)] - np.sqrt(6.0)) < 1e-14
    assert np.abs(curl.coeffs).max() == 0.0


def test_d1_zero(basis):
    x = SphereVectorModes(np.zeros(basis.nmodes_vector),
                          np.zeros(basis.nmodes_vector), 1.0, LMAX)
    div, curl = d1_apply(x)
    assert div.norm2() == 0.0 and curl.norm2() == 0.0


def test_d1_adjoint_composition(basis):
    # d1 d1* = -lap: on (Y^(lm), 0) the first slot returns l(l+1)/r^2 Y^(lm)
    r = 1.6
    for (l, m) in [(1, 0), (3, -2), (5, 4)]:
        f = SphereScalarModes(np.zeros(basis.nmodes_scalar), r, LMAX)
        f.coeffs[scalar_mode_index(l, m)] = 1.0
        zero = SphereScalarModes(np.zeros(basis.nmodes_scalar), r, LMAX)
        div, curl = d1_apply(d1_adjoint(f, zero))
        assert abs(div.coeffs[scalar_mode_index(l, m)] - l * (l + 1) / r ** 2) < 1e-13
        assert np.abs(curl.coeffs).max() < 1e-15


def test_gradient_of_constant_vanishes(basis):
    c = np.zeros(basis.nmodes_scalar)
    c[0] = 2.5
    f = SphereScalarModes(c, 1.0, LMAX)
    x = d1_adjoint(f, f)
    assert x.norm2() == 0.0


def test_d2_on_basis_tensor():
    b = SphereBasis(4)
    psi = np.zeros(b.nmodes_tensor)
    psi[scalar_mode_index(2, 0) - 4] = 1.0
    v = SphereTensorModes(psi, np.zeros_like(psi), 2.0, 4)
    f = d2_apply(v)
    assert abs(f.e[scalar_mode_index(2, 0) - 1] - np.sqrt(2.0) / 2.0) < 1e-14
    assert np.abs(f.h).max() == 0.0


def test_d2_adjoint_kills_conformal_killing(basis):
    # the l=1 vector modes span the conformal Killing fields
    for m in (-1, 0, 1):
        e = np.zeros(basis.nmodes_vector)
        e[scalar_mode_index(1, m) - 1] = 1.0
        v = d2_adjoint(SphereVectorModes(e, np.zeros_like(e), 1.0, LMAX))
        assert v.norm2() == 0.0
        v = d2_adjoint(SphereVectorModes(np.zeros_like(e), e, 1.0, LMAX))
        assert v.norm2() == 0.0


def test_hodge_system_energy_identities(basis):
    # H1:  int |grad X|^2 + |X|^2/r^2 = int f^2 + f*^2, exact in modes
    # H2:  int |grad V|^2 + 2|V|^2/r^2 = 2 int |div V|^2
    rng = np.random.default_rng(3)
    r = 2.2
    ls_v, _ = mode_degrees(LMAX, lmin=1)
    ls_t, _ = mode_degrees(LMAX, lmin=2)
    for _ in range(5):
        x = random_vector(basis, rng, r)
        f, fstar = d1_apply(x)
        lhs = np.sum((ls_v * (ls_v + 1.0) - 1.0) / r ** 2 * (x.e ** 2 + x.h ** 2))
        lhs += np.sum(1.0 / r ** 2 * (x.e ** 2 + x.h ** 2))
        assert abs(lhs - (f.norm2() + fstar.norm2())) < 1e-12 * lhs

        v = random_tensor(basis, rng, r)
        g = d2_apply(v)
        lhs = np.sum((ls_t * (ls_t + 1.0) - 4.0) / r ** 2 * (v.psi ** 2 + v.phi ** 2))
        lhs += np.sum(2.0 / r ** 2 * (v.psi ** 2 + v.phi ** 2))
        assert abs(lhs - 2.0 * g.norm2()) < 1e-12 * lhs


def test_operator_compositions_lemma_relations(basis):
    # d1 d1* = -lap, d1* d1 = -lap + 1/r^2, d2 d2* = -lap/2 - 1/(2r^2),
    # d2* d2 = -lap/2 + 1/r^2, coefficientwise
    rng = np.random.default_rng(4)
    r = 1.9
    ls_s, _ = mode_degrees(LMAX)
    ls_v, _ = mode_degrees(LMAX, lmin=1)
    ls_t, _ = mode_degrees(LMAX, lmin=2)

    f = random_scalar(basis, rng, r)
    fs = random_scalar(basis, rng, r)
    div, curl = d1_apply(d1_adjoint(f, fs))
    assert np.abs(div.coeffs - ls_s * (ls_s + 1.0) / r ** 2 * f.coeffs)[1:].max() < 1e-12
    assert np.abs(curl.coeffs - ls_s * (ls_s + 1.0) / r ** 2 * fs.coeffs)[1:].max() < 1e-12

    x = random_vector(basis, rng, r)
    y = d1_adjoint(*d1_apply(x))
    lam = (ls_v * (ls_v + 1.0) - 1.0) / r ** 2          # -lap on vectors
    assert np.abs(y.e - (lam + 1.0 / r ** 2) * x.e).max() < 1e-12
    assert np.abs(y.h - (lam + 1.0 / r ** 2) * x.h).max() < 1e-12

    w = d2_apply(d2_adjoint(x))
    lam = (ls_v * (ls_v + 1.0) - 1.0) / r ** 2
    expect = 0.5 * lam - 0.5 / r ** 2
    expect[:3] = 0.0                                    # l=1 kernel of d2*
    assert np.abs(w.e - expect * x.e).max() < 1e-12
    assert np.abs(w.h - expect * x.h).max() < 1e-12

    v = random_tensor(basis, rng, r)
    u = d2_adjoint(d2_apply(v))
    lam = (ls_t * (ls_t + 1.0) - 4.0) / r ** 2          # -lap on 2-tensors
    assert np.abs(u.psi - (0.5 * lam + 1.0 / r ** 2) * v.psi).max() < 1e-12
    assert np.abs(u.phi - (0.5 * lam + 1.0 / r ** 2) * v.phi).max() < 1e-12


# ---------------------------------------------------------------------------
# inverses
# ---------------------------------------------------------------------------


def test_d1_inverse_basis_case(basis):
    f = SphereScalarModes(np.zeros(basis.nmodes_scalar), 1.0, LMAX)
    f.coeffs[scalar_mode_index(2, 0)] = np.sqrt(6.0)
    zero = SphereScalarModes(np.zeros(basis.nmodes_scalar), 1.0, LMAX)
    x = d1_inverse(f, zero)
    expect = np.zeros(basis.nmodes_vector)
    expect[scalar_mode_index(2, 0) - 1] = 1.0
    assert np.abs(x.e - expect).max() < 1e-14
    assert np.abs(x.h).max() == 0.0


def test_d1_inverse_zero(basis):
    zero = SphereScalarModes(np.zeros(basis.nmodes_scalar), 1.0, LMAX)
    x = d1_inverse(zero, zero)
    assert x.norm2() == 0.0


def test_inverse_roundtrips(basis):
    rng = np.random.default_rng(5)
    r = 3.1
    f = random_scalar(basis, rng, r)
    fs = random_scalar(basis, rng, r)
    f.coeffs[0] = 0.0
    fs.coeffs[0] = 0.0
    div, curl = d1_apply(d1_inverse(f, fs))
    assert np.abs(div.coeffs - f.coeffs).max() < 1e-12
    assert np.abs(curl.coeffs - fs.coeffs).max() < 1e-12

    x = random_vector(basis, rng, r)
    x.e[:3] = 0.0
    x.h[:3] = 0.0
    y = d2_apply(d2_inverse(x))
    assert np.abs(y.e - x.e).max() < 1e-12
    assert np.abs(y.h - x.h).max() < 1e-12


def test_inverse_rejects_low_modes(basis):
    f = SphereScalarModes(np.ones(basis.nmodes_scalar), 1.0, LMAX)
    with pytest.raises(ModeRangeError):
        d1_inverse(f, f)
    x = SphereVectorModes(np.ones(basis.nmodes_vector),
                          np.ones(basis.nmodes_vector), 1.0, LMAX)
    with pytest.raises(ModeRangeError):
        d2_inverse(x)


def test_d1_inverse_channel_purity(basis):
    # pure-E data inverts to pure-E vector; pure div data to curl-free field
    rng = np.random.default_rng(6)
    f = random_scalar(basis, rng)
    f.coeffs[0] = 0.0
    zero = SphereScalarModes(np.zeros(basis.nmodes_scalar), 1.0, LMAX)
    x = d1_inverse(f, zero)
    assert np.abs(x.h).max() == 0.0
    v = d2_inverse(SphereVectorModes(np.concatenate([np.zeros(3), rng.standard_normal(basis.nmodes_tensor)]),
                                     np.zeros(basis.nmodes_vector), 1.0, LMAX))
    assert np.abs(v.phi).max() == 0.0


# ---------------------------------------------------------------------------
# Hodge duals
# ---------------------------------------------------------------------------


def test_dual_involution(basis):
    rng = np.random.default_rng(7)
    x = random_vector(basis, rng)
    xx = hodge_dual_vector(hodge_dual_vector(x))
    assert np.abs(xx.e + x.e).max() == 0.0
    assert np.abs(xx.h + x.h).max() == 0.0
    v = random_tensor(basis, rng)
    vv = hodge_dual_tensor(hodge_dual_tensor(v))
    assert np.abs(vv.psi + v.psi).max() == 0.0
    assert np.abs(vv.phi + v.phi).max() == 0.0


def test_dual_of_zero(basis):
    x = SphereVectorModes(np.zeros(basis.nmodes_vector),
                          np.zeros(basis.nmodes_vector), 1.0, LMAX)
    assert hodge_dual_vector(x).norm2() == 0.0


def test_dual_sign_pinned_by_grid(basis, oracle):
    # brute-force eps_AB E^B against the H table fixes *E = -H, *psi = -phi
    tt, pp = oracle.tt.ravel(), oracle.pp.ravel()
    tabs = basis.point_tables(tt, pp, needs=("e_th", "h_th", "psi_p"))
    shape = oracle.tt.shape
    k = scalar_mode_index(3, 2)
    et, ep = tabs["e_th"][k].reshape(shape), tabs["e_ph"][k].reshape(shape)
    st, sp_ = oracle.dual_vector(et, ep)
    assert np.abs(st + tabs["h_th"][k].reshape(shape)).max() < 1e-12
    assert np.abs(sp_ + tabs["h_ph"][k].reshape(shape)).max() < 1e-12
    vp, vx = tabs["psi_p"][k].reshape(shape), tabs["psi_x"][k].reshape(shape)
    dp_, dx = oracle.dual_tensor(vp, vx)
    assert np.abs(dp_ + tabs["phi_p"][k].reshape(shape)).max() < 1e-12
    assert np.abs(dx + tabs["phi_x"][k].reshape(shape)).max() < 1e-12


# ---------------------------------------------------------------------------
# grid oracle comparisons
# ---------------------------------------------------------------------------


def _synthesize_vector_on_oracle(basis, oracle, x, tabs):
    e = np.concatenate([[0.0], x.e])
    h = np.concatenate([[0.0], x.h])
    shape = oracle.tt.shape
    ct = ((e @ tabs["e_th"] + h @ tabs["h_th"]) / x.r).reshape(shape)
    cp = ((e @ tabs["e_ph"] + h @ tabs["h_ph"]) / x.r).reshape(shape)
    return ct, cp


def test_d1_matches_grid_oracle(basis, oracle):
    rng = np.random.default_rng(8)
    r = 1.4
    low = SphereBasis(4)
    x = SphereVectorModes(rng.standard_normal(low.nmodes_vector),
                          rng.standard_normal(low.nmodes_vector), r, 4)
    tabs = low.point_tables(oracle.tt.ravel(), oracle.pp.ravel(), needs=("y", "e_th", "h_th"))
    ct, cp = _synthesize_vector_on_oracle(low, oracle, x, tabs)
    div_fd = oracle.div(ct, cp) / r
    curl_fd = oracle.curl(ct, cp) / r
    f, fstar = d1_apply(x)
    shape = oracle.tt.shape
    div_sp = (f.coeffs @ tabs["y"] / r).reshape(shape)
    curl_sp = (fstar.coeffs @ tabs["y"] / r).reshape(shape)
    scale = np.abs(div_fd).max()
    assert np.abs(oracle.window(div_fd - div_sp)).max() < 1e-6 * scale
    assert np.abs(oracle.window(curl_fd - curl_sp)).max() < 1e-6 * scale


def test_d1_adjoint_matches_grid_oracle(basis, oracle):
    rng = np.random.default_rng(9)
    low = SphereBasis(4)
    r = 2.0
    f = SphereScalarModes(rng.standard_normal(low.nmodes_scalar), r, 4)
    fs = SphereScalarModes(rng.standard_normal(low.nmodes_scalar), r, 4)
    tabs = low.point_tables(oracle.tt.ravel(), oracle.pp.ravel(), needs=("y", "e_th", "h_th"))
    shape = oracle.tt.shape
    fgrid = (f.coeffs @ tabs["y"] / r).reshape(shape)
    fsgrid = (fs.coeffs @ tabs["y"] / r).reshape(shape)
    gt, gp = oracle.grad(fgrid)
    dt, dp = oracle.grad(fsgrid)
    st, sp_ = oracle.dual_vector(dt, dp)
    xt_fd = (-gt + st) / r
    xp_fd = (-gp + sp_) / r
    x = d1_adjoint(f, fs)
    ct, cp = _synthesize_vector_on_oracle(low, oracle, x, tabs)
    scale = max(np.abs(xt_fd).max(), np.abs(xp_fd).max())
    assert np.abs(oracle.window(xt_fd - ct)).max() < 1e-6 * scale
    assert np.abs(oracle.window(xp_fd - cp)).max() < 1e-6 * scale


def test_eigenvalue_relations_vs_grid_oracle(basis, oracle):
    shape = oracle.tt.shape
    low = SphereBasis(4)
    tabs = low.point_tables(oracle.tt.ravel(), oracle.pp.ravel(),
                            needs=("y", "e_th", "h_th", "psi_p"))
    for (l, m) in [(1, 0), (2, -1), (3, 3), (4, -2)]:
        k = scalar_mode_index(l, m)
        et, ep = tabs["e_th"][k].reshape(shape), tabs["e_ph"][k].reshape(shape)
        lt, lp = oracle.vector_laplacian(et, ep)
        scale = max(np.abs(et).max(), np.abs(ep).max())
        lam = 1.0 - l * (l + 1.0)
        assert np.abs(oracle.window(lt - lam * et)).max() < 1e-6 * scale
        assert np.abs(oracle.window(lp - lam * ep)).max() < 1e-6 * scale
        if l >= 2:
            vp, vx = tabs["psi_p"][k].reshape(shape), tabs["psi_x"][k].reshape(shape)
            ltp, ltx = oracle.tensor_laplacian(vp, vx)
            scale = max(np.abs(vp).max(), np.abs(vx).max())
            lam = 4.0 - l * (l + 1.0)
            assert np.abs(oracle.window(ltp - lam * vp)).max() < 1e-6 * scale
            assert np.abs(oracle.window(ltx - lam * vx)).max() < 1e-6 * scale


def test_scalar_laplacian_diagonal(basis):
    rng = np.random.default_rng(10)
    f = random_scalar(basis, rng, 2.0)
    lap = sphere_laplacian(f)
    ls, _ = mode_degrees(LMAX)
    assert np.abs(lap.coeffs + ls * (ls + 1.0) / 4.0 * f.coeffs).max() < 1e-14
