#!/usr/bin/env python3
"""Independent arithmetic for the frozen expected values in the unit tests.

Uses only mpmath at 30 digits and CODATA 2018 constants typed in by hand, so
nothing here shares a code path with the C++ library.
"""
from mpmath import mp, mpf, pi, sqrt, log, erf, quad, e as euler

mp.dps = 30

HBARC_MEV_FM = mpf("197.3269804")
M_E_KEV = mpf("510.99895000")
M_P_KEV = mpf("938272.08816")
Q_E = mpf("1.602176634e-19")
N_A = mpf("6.02214076e23")

hbarc_kev_m = HBARC_MEV_FM * mpf(1000) * mpf("1e-15")
a_inv_kev = mpf("1e-7") / hbarc_kev_m
print("1e-7 m in 1/keV              :", mp.nstr(a_inv_kev, 12))

alpha_adler = 1 / mpf("137.04")
rate = alpha_adler / pi * mpf("1e-16") / (a_inv_kev**2 * M_E_KEV**2 * 11)
print("rate density 11 keV, 1e-16   :", mp.nstr(rate, 12))
print("(m_e/m_p)^2                  :", mp.nstr((M_E_KEV / M_P_KEV) ** 2, 12))

print("electrons 2 kg Ge, 4/atom    :", mp.nstr(mpf(2000) / mpf("72.63") * N_A * 4, 12))
print("new electrons 40 A, 1 s      :", mp.nstr(40 / Q_E, 12))

print("fwhm_to_sigma(0.320)         :", mp.nstr(mpf("0.320") / (2 * sqrt(2 * log(2))), 15))

print("110 ln(5.5/4.5)              :", mp.nstr(110 * log(mpf("5.5") / mpf("4.5")), 15))

print("RS signal bound (1000,980)   :", mp.nstr(20 + 3 * sqrt(mpf(1000) + 980), 15))

# Half-Gaussian 90% quantile: solve erf(u/sqrt2) = 0.9.
u = mp.findroot(lambda x: erf(x / sqrt(2)) - mpf("0.9"), 1.6)
print("half-gaussian q90 / sigma    :", mp.nstr(u, 15))
# Truncated gaussian, alpha_hat = -1 sigma, cl 0.9, by quadrature.
g = lambda x: mp.exp(-(x + 1) ** 2 / 2)
norm = quad(g, [0, mp.inf])
u2 = mp.findroot(lambda t: quad(g, [0, t]) / norm - mpf("0.9"), 1.0)
print("trunc q90 at ahat=-1 sigma=1 :", mp.nstr(u2, 15))
g3 = lambda x: mp.exp(-(x - 0.5) ** 2 / 2)
norm3 = quad(g3, [0, mp.inf])
u3 = mp.findroot(lambda t: quad(g3, [0, t]) / norm3 - mpf("0.95"), 2.0)
print("trunc q95 at ahat=0.5 sigma=1:", mp.nstr(u3, 15))

# Fraction of a 0.320 keV FWHM gaussian at 7.729 keV inside [7.249, 8.209].
s = mpf("0.320") / (2 * sqrt(2 * log(2)))
frac = (erf(mpf("0.48") / (s * sqrt(2))))
print("roi fraction +-0.48 keV      :", mp.nstr(frac, 15))
