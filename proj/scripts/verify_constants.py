#!/usr/bin/env python3
"""Recompute the analytic reference values asserted by the test suite.

Runs every closed-form quantity at 50 significant digits with mpmath and
prints them as JSON. The C++ tests freeze these numbers as literals; rerun
this script whenever a frozen value looks suspicious.

Usage: python3 scripts/verify_constants.py
"""

import json

import mpmath as mp

mp.mp.dps = 50


def d(x):
    """Render an mpmath value with enough digits to round-trip a double."""
    return mp.nstr(x, 20)


out = {}

# --- cubic subproblem closed forms -----------------------------------------
# g=(1,0), H=I, sigma=1: secular equation lambda^2 + lambda = 1.
lam = (mp.sqrt(5) - 1) / 2
out["secular_root_identity"] = d(lam)
# model decrease at s = (-lam, 0): lam - lam^2/2 - lam^3/3
out["model_decrease_identity"] = d(lam - lam**2 / 2 - lam**3 / 3)
out["sigma_s3_over6_identity"] = d(lam**3 / 6)
# model gradient example: g=(1,0), H=I, sigma=1, s=(-0.5,0)
out["model_gradient_half"] = d(mp.mpf(1) - mp.mpf("0.5") - mp.mpf("0.25"))
# hard case diag(-1,1), g=0: decrease = 1/6
out["hard_case_decrease"] = d(mp.mpf(1) / 6)

# --- sarc_step worked example (phi = x^2/2, x0 = 1, sigma = 1) --------------
x_plus = 1 - lam
true_dec = mp.mpf(1) / 2 - x_plus**2 / 2
model_dec = lam - lam**2 / 2 - lam**3 / 3
out["sarc_step_x_plus"] = d(x_plus)
out["sarc_step_true_decrease"] = d(true_dec)
out["sarc_step_rho"] = d((true_dec + 2 * mp.mpf("1e-8")) / model_dec)

# --- chi-square quantiles ----------------------------------------------------
def chi2_quantile(dof, q):
    lo, hi = mp.mpf(0), mp.mpf(dof) * 4 + 100
    while mp.gammainc(mp.mpf(dof) / 2, 0, hi / 2, regularized=True) < q:
        hi *= 2
    for _ in range(300):
        mid = (lo + hi) / 2
        if mp.gammainc(mp.mpf(dof) / 2, 0, mid / 2, regularized=True) < q:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


for dof in (1, 2, 3, 5, 10, 55):
    for q in ("0.9", "0.95", "0.975"):
        out[f"chi2_quantile_{dof}_{q}"] = d(chi2_quantile(dof, mp.mpf(q)))

# SFO calibration example: n=2, delta1=0.05, kappa_g*mu1 = 0.1
out["sfo_tau_example"] = d(mp.mpf("0.1") / mp.sqrt(-2 * mp.log(mp.mpf("0.05"))))

# --- analysis formulas --------------------------------------------------------
def sigma_bar(kg, kH, L, LH, theta):
    return (2 * kg + kH + L + LH) / (1 - theta / 3)


out["sigma_bar_1_1_1_1_05"] = d(sigma_bar(*map(mp.mpf, (1, 1, 1, 1, "0.5"))))
out["sigma_bar_2_1_1_1_03"] = d(sigma_bar(*map(mp.mpf, (2, 1, 1, 1, "0.3"))))

def eps_floor(mu, eta, theta, sigma_min, sbar, p, epsfp):
    term1 = (1 + (1 - theta / 3) * sbar / sigma_min) * mu / (1 - eta)
    term2 = ((2 - theta / 3) * sbar / (1 - eta)) * (
        24 * epsfp / ((p - mp.mpf(1) / 2) * theta * sigma_min)
    ) ** (mp.mpf(2) / 3)
    return max(term1, term2)


out["eps_floor_example"] = d(
    eps_floor(mp.mpf(0), mp.mpf("0.5"), mp.mpf("0.5"), mp.mpf(1), mp.mpf(6),
              mp.mpf("0.9"), mp.mpf("1e-6")))

def reliability(d1, d2, u, K):
    return 1 - d1 - d2 - mp.exp(-min(u**2 / (2 * K**2), u / (2 * K)))


out["reliability_u4K"] = d(reliability(mp.mpf("0.05"), mp.mpf("0.05"), mp.mpf(4), mp.mpf(1)))
out["reliability_u2K"] = d(reliability(mp.mpf("0.05"), mp.mpf("0.05"), mp.mpf(2), mp.mpf(1)))

def h_of_alpha(alpha, theta, eta, sigma_min, alpha_bar, eps):
    return (theta / 6) * (1 - eta) ** mp.mpf("1.5") * sigma_min * (
        1 / alpha + (1 - theta / 3) / alpha_bar) ** mp.mpf("-1.5") * eps ** mp.mpf("1.5")


out["h_example"] = d(
    h_of_alpha(mp.mpf(1) / 6, mp.mpf("0.5"), mp.mpf("0.5"), mp.mpf(1),
               mp.mpf(1) / 6, mp.mpf("0.1")))

# tail bound worked example: p=0.7647, p_hat=0.6, s=K, t=200
p, phat, t = mp.mpf("0.7647"), mp.mpf("0.6"), mp.mpf(200)
out["tail_bound_example"] = d(
    1 - mp.exp(-((p - phat) ** 2 / (2 * p**2)) * t)
    - mp.exp(-min(t / 8, t / 4)))

# --- problem family constants --------------------------------------------------
# nonconvex_sum_sin: per-coordinate minimum of t^2/2 + sin(t)
t_star = mp.findroot(lambda t: t + mp.cos(t), mp.mpf("-0.74"))
out["sum_sin_argmin_1d"] = d(t_star)
out["sum_sin_phi_star_1d"] = d(t_star**2 / 2 + mp.sin(t_star))

# laplace zeroth: declared parameters for b = 0.01
out["laplace_b001_lambda"] = d(1 / mp.mpf("0.01"))

print(json.dumps(out, indent=2))
