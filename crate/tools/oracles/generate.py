#!/usr/bin/env python3
"""Arbitrary-precision reference values for the weyl-bianchi test suites.

Every value here is computed with mpmath at 50 significant digits from the
defining series / integral representation of the quantity, written without
reference to the Rust implementation. Output goes to
crates/core/data/oracles.json, which the test and validation code embeds.

Run:  python3 tools/oracles/generate.py
"""
import json
import os

import mpmath as mp

mp.mp.dps = 50
I = mp.mpc(0, 1)


def c(z):
    z = mp.mpc(z)
    return [float(z.real), float(z.imag)]


def bessel_series(nu, x):
    """J_nu(x) from the ascending series, summed until terms drop below 1e-60."""
    nu = mp.mpc(nu)
    half = mp.mpf(x) / 2
    total = mp.mpc(0)
    m = 0
    while True:
        term = (-1) ** m * half ** (nu + 2 * m) / (mp.factorial(m) * mp.gamma(nu + m + 1))
        total += term
        if m > 10 and abs(term) < mp.mpf(10) ** -60 * max(abs(total), 1):
            break
        m += 1
    return total


def kummer_series(a, b, z):
    a, b, z = mp.mpc(a), mp.mpc(b), mp.mpc(z)
    total = mp.mpc(1)
    term = mp.mpc(1)
    n = 0
    while True:
        term *= (a + n) * z / ((b + n) * (n + 1))
        total += term
        n += 1
        if n > 10 and abs(term) < mp.mpf(10) ** -60 * max(abs(total), 1):
            break
        if term == 0:
            break
    return total


def whittaker_connection(k, m, z):
    """W_{k,m}(z) via the two-term Kummer connection formula, principal branches."""
    k, m, z = mp.mpc(k), mp.mpc(m), mp.mpc(z)

    def big_m(mm):
        return mp.exp(-z / 2) * mp.exp((mp.mpf(1) / 2 + mm) * mp.log(z)) * kummer_series(
            mp.mpf(1) / 2 + mm - k, 1 + 2 * mm, z
        )

    return mp.gamma(-2 * m) / mp.gamma(mp.mpf(1) / 2 - m - k) * big_m(m) + mp.gamma(
        2 * m
    ) / mp.gamma(mp.mpf(1) / 2 + m - k) * big_m(-m)


def dyson_i2(mu, nu, k, s):
    """I_2(s;1) at t_A = 0 by nested Gauss-Legendre quadrature in w = sigma^delta."""
    k1, k2, k3 = [mp.mpf(v) for v in k]
    delta = (1 - mp.mpf(nu)) / mu
    kappa = mp.sqrt(k1 ** 2 + k2 ** 2)
    coup = kappa * mp.mpf(s) ** delta / mu
    a = 2 * k3 * s / mu

    def inner(sig1):
        # int_0^sig1 sigma^(delta-1) e^{+i a sigma} dsigma = (1/delta) int_0^{sig1^delta} e^{i a w^(1/delta)} dw
        return mp.quad(lambda w: mp.exp(I * a * w ** (1 / delta)), [0, sig1 ** delta]) / delta

    outer = mp.quad(
        lambda w: mp.exp(-I * a * w ** (1 / delta)) * inner(w ** (1 / delta)), [0, 1]
    ) / delta
    return coup ** 2 * outer


def closed_form(mu, nu, k, t_a, t, panels=40):
    """Matrix elements K11, K12 of the Bessel closed-form propagator (t_tilde_A = 0)."""
    mu, nu, t_a, t = mp.mpf(mu), mp.mpf(nu), mp.mpf(t_a), mp.mpf(t)
    k1, k2, k3 = [mp.mpf(v) for v in k]
    kp = k2 + I * k1
    delta = (1 - nu) / mu
    kappa = mp.sqrt(k1 ** 2 + k2 ** 2)
    s = t ** mu
    sigma_a = (t_a / t) ** mu
    x = kappa * s ** delta / (mu * (1 - delta))
    lam = mp.mpf(1) / 2 + I * k3 * s / (mu * (1 - delta))
    lc = mp.conj(lam)
    jm, jp = mp.besselj(-lam, x), mp.besselj(lam, x)
    z0 = jm * mp.besselj(-lc, x) + jp * mp.besselj(lc, x)

    def integrands(w):
        z = 1 - w ** (1 / delta)
        big_x = x * mp.exp((1 - delta) * z)
        r = jm * mp.besselj(lam, big_x) - jp * mp.besselj(-lam, big_x)
        zz = jm * mp.besselj(-lc, big_x) + jp * mp.besselj(lc, big_x)
        v = I * mp.exp((1 - delta) * lc * z) * r / z0
        u = mp.exp((1 - delta) * lam * z) * zz / z0
        return v / delta, u / delta

    lo = sigma_a ** delta
    pts = [lo + (1 - lo) * mp.mpf(i) / panels for i in range(panels + 1)]
    iv = mp.quad(lambda w: integrands(w)[0], pts)
    iu = mp.quad(lambda w: integrands(w)[1], pts)
    k11 = 1 + I * (1 - delta) * x * iv
    k12 = kp / kappa * (1 - delta) * x * mp.exp(-2 * I * k3 * s / mu) * iu
    return k11, k12


def stiff_phi(k, t, j):
    k1, k2, k3 = [mp.mpf(v) for v in k]
    t = mp.mpf(t)
    kp, km = k2 + I * k1, k2 - I * k1
    eta = (k1 ** 2 + k2 ** 2) / (2 * k3)
    sg = mp.sign(k3)
    quarter = mp.mpf(1) / 4

    def pw(z, p):
        return mp.exp(p * mp.log(z))

    def w(kk, z):
        return whittaker_connection(kk, quarter, z)

    if j == 1:
        z = 2 * I * k3 * t
        p1 = pw(-2 * I * k3 * t, -quarter) * mp.exp(-I * k3 * t) * w(-quarter - I * eta, z)
        p2 = (
            mp.sqrt(-2 * I * k3) / kp * pw(-2 * I * k3 * t, -3 * quarter) * mp.exp(I * k3 * t)
            * (I * eta * w(-quarter - I * eta, z) - w(3 * quarter - I * eta, z))
        )
    else:
        z = -2 * I * k3 * t
        p1 = pw(-2 * I * k3 * t, -quarter) * mp.exp(-I * k3 * t) * w(quarter + I * eta, z)
        p2 = (
            I * km * sg / mp.sqrt(2 * I * k3) * pw(-2 * I * k3 * t, -3 * quarter) * mp.exp(I * k3 * t)
            * (w(quarter + I * eta, z) + (I * eta - mp.mpf(1) / 2) * w(-3 * quarter + I * eta, z))
        )
    return p1, p2


def main():
    out = {}

    out["gamma"] = [
        {"z": c(z), "value": c(mp.gamma(z))}
        for z in [mp.mpc(0.5, 1), mp.mpc(1.5, -3), mp.mpc(-2.3, 0.7), mp.mpc(7.25, 12.5), mp.mpc(0.25, -0.5)]
    ]

    bessel_cases = [
        (mp.mpc(0.5, 1), 1.0),
        (mp.mpc(-0.5, -1), 1.0),
        (mp.mpc(0.5, 3), 4.0),
        (mp.mpc(-0.5, 3), 4.0),
        (mp.mpc(2.25, -1.5), 10.0),
        (mp.mpc(0.5, 0.25), 30.0),
        (mp.mpc(-0.5, 0.25), 45.0),
        (mp.mpc(0.5, 12), 60.0),
        (mp.mpc(0.5, 2), 80.0),
    ]
    out["bessel_j"] = [
        {"order": c(nu), "x": x, "value": c(bessel_series(nu, x))} for nu, x in bessel_cases
    ]

    kummer_cases = [
        (mp.mpc(-0.25, 0), mp.mpc(1.5, 0), mp.mpc(0, 2)),
        (mp.mpc(0.25, -0.5), mp.mpc(1.5, 0), mp.mpc(0, -10)),
        (mp.mpc(0.75, 0.3), mp.mpc(0.5, 0), mp.mpc(0, 30)),
        (mp.mpc(1.1, 0), mp.mpc(2.5, 0.5), mp.mpc(-3, 1)),
    ]
    out["kummer_m"] = [
        {"a": c(a), "b": c(b), "z": c(z), "value": c(kummer_series(a, b, z))} for a, b, z in kummer_cases
    ]

    whit_cases = [
        (mp.mpc(-0.25, -0.5), mp.mpc(0.25, 0), mp.mpc(0, 2)),
        (mp.mpc(0.75, -0.5), mp.mpc(0.25, 0), mp.mpc(0, 2)),
        (mp.mpc(0.25, 0.125), mp.mpc(0.25, 0), mp.mpc(0, -20)),
        (mp.mpc(-0.75, 0.125), mp.mpc(0.25, 0), mp.mpc(0, -40)),
        (mp.mpc(-0.25, -1.0), mp.mpc(0.25, 0), mp.mpc(0, 60)),
        (mp.mpc(0.3, 0.2), mp.mpc(0.25, 0), mp.mpc(2.5, 1)),
    ]
    out["whittaker_w"] = [
        {"k": c(k), "m": c(m), "z": c(z), "value": c(whittaker_connection(k, m, z))} for k, m, z in whit_cases
    ]

    out["dyson_i2"] = [
        {"mu": 1.0, "nu": 0.5, "k": [1.0, 0.0, 1.0], "s": 0.5, "value": c(dyson_i2(1.0, 0.5, (1.0, 0.0, 1.0), 0.5))}
    ]

    closed_cases = [
        (1.0, 0.5, (1.0, 0.0, 1.0), 0.0, 0.5),
        (1.0, 0.5, (0.3, 0.7, -0.8), 0.0, 2.0),
        (0.7, 0.4, (0.5, 0.2, 0.6), 0.3, 1.7),
        (1.0, 0.5, (1.0, 1.0, 2.0), 0.0, 50.0),
    ]
    out["closed_propagator"] = []
    for mu, nu, k, ta, t in closed_cases:
        k11, k12 = closed_form(mu, nu, k, ta, t, panels=200 if t > 10 else 40)
        out["closed_propagator"].append(
            {"mu": mu, "nu": nu, "k": list(k), "t_a": ta, "t": t, "k11": c(k11), "k12": c(k12)}
        )

    out["stiff"] = []
    for k in [(0.3, 0.4, 1.0), (0.3, 0.4, -1.0), (1.0, 0.5, 0.7)]:
        for t in [0.05, 1.3, 20.0]:
            for j in (1, 2):
                p1, p2 = stiff_phi(k, t, j)
                out["stiff"].append({"k": list(k), "t": t, "j": j, "phi1": c(p1), "phi2": c(p2)})

    here = os.path.dirname(os.path.abspath(__file__))
    path = os.path.join(here, "..", "..", "crates", "core", "data", "oracles.json")
    with open(path, "w") as f:
        json.dump(out, f, indent=1)
        f.write("\n")
    print("wrote", os.path.normpath(path))


if __name__ == "__main__":
    main()
