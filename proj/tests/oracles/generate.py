"""Regenerates tests/oracle_values.hpp from mpmath at 40 digits."""
import mpmath as mp

mp.mp.dps = 40
out = []


def c(name, v):
    v = mp.mpc(v)
    out.append(f"inline const cplx {name}{{{mp.nstr(v.real, 20)}, {mp.nstr(v.imag, 20)}}};")


def vec(name, vs):
    body = ", ".join(f"cplx{{{mp.nstr(mp.mpc(v).real, 20)}, {mp.nstr(mp.mpc(v).imag, 20)}}}" for v in vs)
    out.append(f"inline const std::vector<cplx> {name}{{{body}}};")


def lower_gamma(a, x):
    return mp.gammainc(a, 0, x)


# special functions
c("gamma_03_07i", mp.gamma(mp.mpc(0.3, 0.7)))
c("gamma_m25_1i", mp.gamma(mp.mpc(-2.5, 1)))
c("gamma_7_3", mp.gamma(7.3))
c("lgamma_04_03i__2_m1i", lower_gamma(mp.mpc(0.4, 0.3), mp.mpc(2, -1)))
c("lgamma_25__01", lower_gamma(2.5, 0.1))
c("lgamma_05__1", lower_gamma(0.5, 1))
c("lgamma_12__m3", lower_gamma(1.2, mp.mpc(-3, 0.5)))


def ml(beta, x):
    return mp.nsum(lambda k: mp.mpc(x) ** k / mp.gamma(k + beta), [0, mp.inf])


c("ml_25__m13", ml(2.5, -1.3))
c("ml_15__2i", ml(1.5, mp.mpc(0, 2)))
c("ml_3__m50", mp.hyp1f1(1, 3, -50) / mp.gamma(3))
c("ml_2__m3_4i", mp.hyp1f1(1, 2, mp.mpc(-3, 4)) / mp.gamma(2))

for tag, s in (("03", mp.mpf("0.3")), ("c", mp.mpc("0.4", "0.2"))):
    four = mp.power(4, s)
    c(f"c_sigma_{tag}", mp.gamma(-s) / (four * mp.gamma(s)))
    c(f"d_sigma_{tag}", 2 * mp.gamma(s + 0.5) / (mp.sqrt(mp.pi) * mp.gamma(s)))
    c(f"kappa_sigma_{tag}", 2 * mp.gamma(0.5 - s) / (four * mp.sqrt(mp.pi) * mp.gamma(s)))


# kernels
def b(s, z, t):
    return z ** (2 * s) / (mp.power(4, s) * mp.gamma(s)) * mp.exp(-z**2 / (4 * t)) / t ** (1 + s)


def B(s, z, t):
    return t ** (s - 1) * mp.exp(-z**2 / (4 * t)) / mp.gamma(s)


s0, z0, t0 = mp.mpf("0.3"), mp.mpc(1, 0.2), mp.mpf("0.7")
c("b_03_1p02i_07", b(s0, z0, t0))
c("B_03_1p02i_07", B(s0, z0, t0))
c("Bmh_03_1_1e6", mp.expm1(-mp.mpf(1) / (4 * mp.mpf(10) ** 6)) / (mp.gamma(s0) * mp.mpf(10) ** (6 * (1 - s0))))
s1, z1, t1 = mp.mpf("0.4"), mp.mpc(0.9, 0.1), mp.mpf("0.6")
c("b_dt2_04_09p01i_06", mp.diff(lambda t: b(s1, z1, t), t1, 2))
c("B_dt3_04_09p01i_06", mp.diff(lambda t: B(s1, z1, t), t1, 3))
c("b_dz2_04_09p01i_06", mp.diff(lambda x: b(s1, z1 + x, t1), 0, 2))
c("B_dz1_04_09p01i_06", mp.diff(lambda x: B(s1, z1 + x, t1), 0, 1))
zc, tc = mp.mpc(1, 0.2), mp.mpf("1.5")
c("poisson_03", zc ** (2 * s0) / (zc**2 + tc**2) ** (s0 + 0.5))
c("cosfrac_03", (zc**2 + tc**2) ** (s0 - 0.5) - tc ** (2 * s0 - 1))
c("coslog", mp.log(tc**2 / (zc**2 + tc**2)))

# Weyl calculus: W^{-beta} phi(s) = int_s^inf (t-s)^{beta-1} phi(t) dt / Gamma(beta); W^alpha = -d/ds W^{-(1-alpha)}
half = mp.mpf("0.5")
c("weyl_int_b03_1__05_at04", mp.quad(lambda u: u ** (half - 1) * b(s0, 1, 0.4 + u), [0, 1, mp.inf]) / mp.gamma(half))
db = lambda t: mp.diff(lambda x: b(half, 1, x), t)
c("weyl_der_b05_1__07_at05", mp.quad(lambda u: u ** (-0.7) * (-db(0.5 + u)), [0, 1, mp.inf]) / mp.gamma(0.3))
c("sobolev_b05_1__1", mp.quad(lambda t: abs(db(t)) * t, [0, mp.mpf(1) / 6, 1, mp.inf]))


# operators / families
def lap_eigs(n):
    vals = [2 * mp.cos(k * mp.pi / (n + 1)) - 2 for k in range(1, n + 1)]
    vecs = [[mp.sqrt(mp.mpf(2) / (n + 1)) * mp.sin(j * k * mp.pi / (n + 1)) for j in range(1, n + 1)] for k in range(1, n + 1)]
    return vals, vecs


def lap_apply(n, g, f):
    vals, vecs = lap_eigs(n)
    res = [mp.mpc(0)] * n
    for lam, v in zip(vals, vecs):
        coef = mp.fsum(v[j] * f[j] for j in range(n)) * g(lam)
        res = [res[j] + coef * v[j] for j in range(n)]
    return res


f8 = [mp.cos(j) + half for j in range(1, 9)]
c("int_exp_m1p2i_15_08", mp.quad(lambda s: (0.8 - s) ** 0.5 * mp.exp(mp.mpc(-1, 2) * s), [0, 0.8]) / mp.gamma(1.5))
c("int_cos_m4_15_12", mp.quad(lambda s: (1.2 - s) ** 0.5 * mp.cos(2 * s), [0, 1.2]) / mp.gamma(1.5))
vec("heat_L3_05", lap_apply(3, lambda l: mp.exp(0.5 * l), [1, 2, 3]))
for tag, s in (("025", mp.mpf("0.25")), ("05", half), ("075", mp.mpf("0.75")), ("03", s0), ("c", mp.mpc("0.4", "0.2"))):
    vec(f"power_L8_{tag}", lap_apply(8, lambda l, s=s: (-l) ** s, f8))
vec("shifted_L8_05_04", lap_apply(8, lambda l: (half - l) ** mp.mpf("-0.4"), f8))
fa = [mp.mpc(1, 1), 2, -1, mp.mpc(0, 0.5)]
vec("power_airy_05", [(-mp.mpc(0, q**3)) ** half * fv for q, fv in zip([-2, -1, 1, 2], fa)])
vec("power_airy_03", [(-mp.mpc(0, q**3)) ** s0 * fv for q, fv in zip([-2, -1, 1, 2], fa)])


# extension: scalar solution for -A = mu is (2/Gamma(s)) (sqrt(mu) z / 2)^s K_s(sqrt(mu) z)
def ext(mu, s, z):
    w = mp.sqrt(mu) * z
    return 2 / mp.gamma(s) * (w / 2) ** s * mp.besselk(s, w)


def ext_d(mu, s, z):
    return mp.diff(lambda x: ext(mu, s, z + x), 0)


zz = mp.mpc(0.7, 0.2)
vec("ext_L8_03_z", lap_apply(8, lambda l: ext(-l, s0, zz), f8))
sc = mp.mpc("0.4", "0.2")
vec("ext_L8_c_z", lap_apply(8, lambda l: ext(-l, sc, zz), f8))
vec("ext_L8_03_der_z", lap_apply(8, lambda l: ext_d(-l, s0, zz), f8))
c("ext_scalar_025_1", ext(1, mp.mpf("0.25"), 1))
vals, _ = lap_eigs(8)
fr = [mp.mpc(mp.cos(j), mp.sin(2 * j)) for j in range(1, 9)]
for tag, y in (("025", mp.mpf("0.25")), ("05", half)):
    vec(f"rot_L8_03_{tag}", [ext(-mp.mpc(0, 1) * l, s0, y) * fv for l, fv in zip(vals, fr)])

print("#pragma once\n\n// Generated by tests/oracles/generate.py (mpmath, 40 digits); do not edit.\n")
print("#include <vector>\n\n#include \"fracext/complex.hpp\"\n\nnamespace oracle {\n\nusing fracext::cplx;\n")
print("\n".join(out))
print("\n}  // namespace oracle")
