"""Regenerate the frozen reference constants used by the test suite.

Evaluates the core formulas independently at 50 decimal digits (mpmath),
so the double-precision library can be checked against down-rounded
literals. Run: python tools/freeze_reference_values.py
"""

from __future__ import annotations

import mpmath as mp

mp.mp.dps = 50

C0 = mp.mpf("299792458")
ETA0 = mp.mpf("376.730313668")
EPS_SLAB_A = mp.mpc("3.9", "-0.08")      # lossy slab of the bundled scenario
EPS_SLAB_B = mp.mpc("2.1", "-0.0006")    # low-loss slab of the bundled scenario


def state(eps, f, sin_t):
    """(k, eta, cos_theta) in a medium for transverse slowness sin_t (vacuum-referenced)."""
    k0 = 2 * mp.pi * f / C0
    n = mp.sqrt(eps)
    k = k0 * n
    eta = ETA0 / n
    s = sin_t / n
    c = mp.sqrt(1 - s * s)
    if mp.re(c) < 0 or (mp.re(c) == 0 and mp.im(k * c) > 0):
        c = -c
    return k, eta, c


def chain(eps_layers, lengths, f, theta1, rho_t_of_last):
    """Gamma and the unnormalized segment product for an air-fronted stack."""
    sin_t = mp.sin(theta1)  # incident air: vacuum-referenced slowness
    k1, e1, c1 = 2 * mp.pi * f / C0, ETA0, mp.cos(theta1)
    prev = (k1, e1, c1)
    m = mp.matrix([[1, 0], [0, 1]])
    states = []
    for eps, ell in zip(eps_layers, lengths):
        k, eta, c = state(eps, f, sin_t)
        n1 = prev[1] * prev[2]
        n2 = eta * c
        rho = (n2 - n1) / (n2 + n1)
        z = mp.e ** (-1j * k * ell * c)
        seg = mp.matrix([[1 / z, rho * z], [rho / z, z]])
        m = m * seg
        states.append((k, eta, c))
        prev = (k, eta, c)
    rho_t = rho_t_of_last(prev)
    gamma = (m[1, 0] + m[1, 1] * rho_t) / (m[0, 0] + m[0, 1] * rho_t)
    return gamma, m, rho_t, states


def pec(_last):
    return mp.mpc(-1)


def fmt(name, z):
    print(f"{name} = complex({mp.nstr(mp.re(z), 17)}, {mp.nstr(mp.im(z), 17)})")


def main():
    # --- interface coefficient, air -> lossy slab, normal incidence
    n = mp.sqrt(EPS_SLAB_A)
    rho = (1 / n - 1) / (1 / n + 1)  # (eta2 - eta1)/(eta2 + eta1) with eta = ETA0/n
    fmt("RHO_AIR_TO_LOSSY_SLAB", rho)

    # --- refraction angle, air -> eps_r = 4 at 60 degrees
    th = mp.asin(mp.sin(mp.pi / 3) / 2)
    print(f"THETA_IN_EPS4_AT_60DEG = {mp.nstr(th, 17)}  # rad, = {mp.nstr(th * 180 / mp.pi, 12)} deg")

    # --- propagation factor, lossy slab, 60 mm, 10 GHz, normal incidence
    f = mp.mpf("10e9")
    k = 2 * mp.pi * f / C0 * mp.sqrt(EPS_SLAB_A)
    z = mp.e ** (-1j * k * mp.mpf("0.06"))
    fmt("Z_LOSSY_SLAB_60MM_10GHZ", z)
    print(f"ABS_Z_LOSSY_SLAB_60MM_10GHZ = {mp.nstr(abs(z), 17)}")

    # --- bundled scenario at 10 GHz, normal incidence
    theta1 = mp.mpf(0)
    actual_eps = [mp.mpc(1), EPS_SLAB_A, mp.mpc(1)]
    actual_len = [mp.mpf("0.120"), mp.mpf("0.060"), mp.mpf("0.120")]
    target_eps = [mp.mpc(1), EPS_SLAB_B, mp.mpc(1)]
    target_len = [mp.mpf("0.060"), mp.mpf("0.120"), mp.mpf("0.120")]

    g_o, m_f, rho4f, _ = chain(actual_eps, actual_len, f, theta1, pec)
    fmt("GAMMA_ACTUAL_10GHZ_NORMAL", g_o)

    def open_into_air(last):
        k, eta, c = last
        n1 = eta * c
        # air half-space at the same transverse slowness (zero here)
        s = mp.sin(theta1)
        c_air = mp.sqrt(1 - s * s)
        n2 = ETA0 * c_air
        return (n2 - n1) / (n2 + n1)

    g_i, m_t, rho4t, _ = chain(target_eps, target_len, f, theta1, open_into_air)
    fmt("GAMMA_TARGET_10GHZ_NORMAL", g_i)

    # --- reflective synthesis: invert Gamma(rho) = (m21 + m22 rho)/(m11 + m12 rho) = g_i
    rho4m = (g_i * m_f[0, 0] - m_f[1, 0]) / (m_f[1, 1] - g_i * m_f[0, 1])
    fmt("RHO_4M_10GHZ_NORMAL", rho4m)
    eta_m_norm = (1 + rho4m) / (1 - rho4m)
    fmt("ETA_M_NORM_10GHZ_NORMAL", eta_m_norm)

    # --- transmissive synthesis: unknown first-interface coefficient
    # w = M2 * M3 * [1; rho4f]; Gamma(r) = (r w1 / Z1 ... ) derived on the spot:
    # M1(r) = [[1/Z1, r Z1], [r/Z1, Z1]] (tau factors cancel in the ratio)
    k1 = 2 * mp.pi * f / C0
    z1 = mp.e ** (-1j * k1 * actual_len[0])
    # segment matrices for layers 2,3 of the actual stack (interfaces 2,3)
    sin_t = mp.sin(theta1)
    prev = (k1, ETA0, mp.cos(theta1))
    st2 = state(actual_eps[1], f, sin_t)
    st3 = state(actual_eps[2], f, sin_t)
    n1 = prev[1] * prev[2]
    n2 = st2[1] * st2[2]
    n3 = st3[1] * st3[2]
    # interface n sits between layer n-1 and layer n
    rho_2 = (n2 - n1) / (n2 + n1)
    rho_3 = (n3 - n2) / (n3 + n2)
    z2 = mp.e ** (-1j * st2[0] * actual_len[1] * st2[2])
    z3 = mp.e ** (-1j * st3[0] * actual_len[2] * st3[2])
    m2 = mp.matrix([[1 / z2, rho_2 * z2], [rho_2 / z2, z2]])
    m3 = mp.matrix([[1 / z3, rho_3 * z3], [rho_3 / z3, z3]])
    w = (m2 * m3) * mp.matrix([[1], [rho4f]])
    w1, w2 = w[0], w[1]
    rho1m = (g_i * w1 / z1 - z1 * w2) / (w1 / z1 - g_i * z1 * w2)
    fmt("RHO_1M_10GHZ_NORMAL", rho1m)
    chi_e = rho1m / (1j * (k1 / (2 * mp.cos(theta1))) * (1 - rho1m))
    fmt("CHI_E_10GHZ_NORMAL", chi_e)

    # sanity: substituting rho1m back must reproduce g_i
    m1m = mp.matrix([[1 / z1, rho1m * z1], [rho1m / z1, z1]])
    mm = m1m * m2 * m3
    g_back = (mm[1, 0] + mm[1, 1] * rho4f) / (mm[0, 0] + mm[0, 1] * rho4f)
    assert abs(g_back - g_i) < mp.mpf("1e-40"), g_back - g_i

    # sanity: substituting rho4m as termination of the actual chain reproduces g_i
    g_sub = (m_f[1, 0] + m_f[1, 1] * rho4m) / (m_f[0, 0] + m_f[0, 1] * rho4m)
    assert abs(g_sub - g_i) < mp.mpf("1e-40"), g_sub - g_i


if __name__ == "__main__":
    main()
