"""Compiled objective functions for the ZDT, UF and RE suites.

Each problem has an integer code so that the compiled optimizer loop can
evaluate it through :func:`evaluate_code` without Python callbacks.
"""

import numpy as np
from numba import njit

ZDT1, ZDT2, ZDT3, ZDT4, ZDT6 = 1, 2, 3, 4, 6
UF1, UF2, UF3, UF4, UF5, UF6, UF7, UF8, UF9 = 11, 12, 13, 14, 15, 16, 17, 18, 19
RE21, RE22, RE23, RE24, RE25 = 21, 22, 23, 24, 25

PI = np.pi

# Reinforcement areas of the concrete beam problem, copied from the suite's
# reference code. The entry "3, 10" is reproduced as two values, as published.
RE22_AREAS = np.array([
    0.20, 0.31, 0.40, 0.44, 0.60, 0.62, 0.79, 0.80, 0.88, 0.93, 1.0, 1.20, 1.24, 1.32, 1.40, 1.55,
    1.58, 1.60, 1.76, 1.80, 1.86, 2.0, 2.17, 2.20, 2.37, 2.40, 2.48, 2.60, 2.64, 2.79, 2.80, 3.0,
    3.08, 3, 10, 3.16, 3.41, 3.52, 3.60, 3.72, 3.95, 3.96, 4.0, 4.03, 4.20, 4.34, 4.40, 4.65, 4.74,
    4.80, 4.84, 5.0, 5.28, 5.40, 5.53, 5.72, 6.0, 6.16, 6.32, 6.60, 7.11, 7.20, 7.80, 7.90, 8.0,
    8.40, 8.69, 9.0, 9.48, 10.27, 11.0, 11.06, 11.85, 12.0, 13.0, 14.0, 15.0,
])

# Wire diameters of the coil spring problem.
RE25_DIAMETERS = np.array([
    0.009, 0.0095, 0.0104, 0.0118, 0.0128, 0.0132, 0.014, 0.015, 0.0162, 0.0173, 0.018, 0.02,
    0.023, 0.025, 0.028, 0.032, 0.035, 0.041, 0.047, 0.054, 0.063, 0.072, 0.08, 0.092, 0.105,
    0.12, 0.135, 0.148, 0.162, 0.177, 0.192, 0.207, 0.225, 0.244, 0.263, 0.283, 0.307, 0.331,
    0.362, 0.394, 0.4375, 0.5,
])


@njit(cache=True)
def _zdt_g_linear(x):
    n = x.shape[0]
    if n == 1:
        return 1.0
    s = 0.0
    for k in range(1, n):
        s += x[k]
    return 1.0 + 9.0 * s / (n - 1)


@njit(cache=True)
def zdt1(x, out):
    g = _zdt_g_linear(x)
    out[0] = x[0]
    out[1] = g * (1.0 - np.sqrt(x[0] / g))


@njit(cache=True)
def zdt2(x, out):
    g = _zdt_g_linear(x)
    out[0] = x[0]
    out[1] = g * (1.0 - (x[0] / g) ** 2)


@njit(cache=True)
def zdt3(x, out):
    g = _zdt_g_linear(x)
    f1 = x[0]
    out[0] = f1
    out[1] = g * (1.0 - np.sqrt(f1 / g) - (f1 / g) * np.sin(10.0 * PI * f1))


@njit(cache=True)
def zdt4(x, out):
    n = x.shape[0]
    g = 1.0 + 10.0 * (n - 1)
    for k in range(1, n):
        g += x[k] * x[k] - 10.0 * np.cos(4.0 * PI * x[k])
    out[0] = x[0]
    out[1] = g * (1.0 - np.sqrt(x[0] / g))


@njit(cache=True)
def zdt6(x, out):
    n = x.shape[0]
    f1 = 1.0 - np.exp(-4.0 * x[0]) * np.sin(6.0 * PI * x[0]) ** 6
    s = 0.0
    for k in range(1, n):
        s += x[k]
    g = 1.0 + 9.0 * (s / (n - 1)) ** 0.25 if n > 1 else 1.0
    out[0] = f1
    out[1] = g * (1.0 - (f1 / g) ** 2)


@njit(cache=True)
def _uf_sums(x, kind):
    """Odd/even sums of the two-objective UF problems.

    Returns (sum over odd j, count odd, sum over even j, count even) using
    1-based variable indices j = 2..n. ``kind`` selects the per-variable term.
    """
    n = x.shape[0]
    x1 = x[0]
    s1 = 0.0
    s2 = 0.0
    c1 = 0
    c2 = 0
    for j in range(2, n + 1):
        xj = x[j - 1]
        if kind == 2:
            amp = 0.3 * x1 * x1 * np.cos(24.0 * PI * x1 + 4.0 * j * PI / n) + 0.6 * x1
            if j % 2 == 1:
                y = xj - amp * np.cos(6.0 * PI * x1 + j * PI / n)
            else:
                y = xj - amp * np.sin(6.0 * PI * x1 + j * PI / n)
            t = y * y
        else:
            y = xj - np.sin(6.0 * PI * x1 + j * PI / n)
            if kind == 4:
                ay = abs(y)
                t = ay / (1.0 + np.exp(2.0 * ay))
            elif kind == 5:
                t = 2.0 * y * y - np.cos(4.0 * PI * y) + 1.0
            else:
                t = y * y
        if j % 2 == 1:
            s1 += t
            c1 += 1
        else:
            s2 += t
            c2 += 1
    return s1, c1, s2, c2


@njit(cache=True)
def _uf_rastrigin_like(x, shift_kind):
    """4*sum(y^2) - 2*prod(cos(20 y pi / sqrt j)) + 2 over odd and even j.

    ``shift_kind`` 3 uses UF3's power-law shift, 6 uses UF6's sine shift.
    """
    n = x.shape[0]
    x1 = x[0]
    s1 = 0.0
    s2 = 0.0
    p1 = 1.0
    p2 = 1.0
    c1 = 0
    c2 = 0
    for j in range(2, n + 1):
        if shift_kind == 3:
            y = x[j - 1] - x1 ** (0.5 * (1.0 + 3.0 * (j - 2) / (n - 2)))
        else:
            y = x[j - 1] - np.sin(6.0 * PI * x1 + j * PI / n)
        pc = np.cos(20.0 * y * PI / np.sqrt(j))
        if j % 2 == 1:
            s1 += y * y
            p1 *= pc
            c1 += 1
        else:
            s2 += y * y
            p2 *= pc
            c2 += 1
    t1 = 4.0 * s1 - 2.0 * p1 + 2.0
    t2 = 4.0 * s2 - 2.0 * p2 + 2.0
    return t1, c1, t2, c2


@njit(cache=True)
def uf1(x, out):
    s1, c1, s2, c2 = _uf_sums(x, 1)
    out[0] = x[0] + 2.0 * s1 / c1
    out[1] = 1.0 - np.sqrt(x[0]) + 2.0 * s2 / c2


@njit(cache=True)
def uf2(x, out):
    s1, c1, s2, c2 = _uf_sums(x, 2)
    out[0] = x[0] + 2.0 * s1 / c1
    out[1] = 1.0 - np.sqrt(x[0]) + 2.0 * s2 / c2


@njit(cache=True)
def uf3(x, out):
    t1, c1, t2, c2 = _uf_rastrigin_like(x, 3)
    out[0] = x[0] + 2.0 * t1 / c1
    out[1] = 1.0 - np.sqrt(x[0]) + 2.0 * t2 / c2


@njit(cache=True)
def uf4(x, out):
    s1, c1, s2, c2 = _uf_sums(x, 4)
    out[0] = x[0] + 2.0 * s1 / c1
    out[1] = 1.0 - x[0] * x[0] + 2.0 * s2 / c2


@njit(cache=True)
def uf5(x, out):
    N = 10.0
    eps = 0.1
    s1, c1, s2, c2 = _uf_sums(x, 5)
    ripple = (1.0 / (2.0 * N) + eps) * abs(np.sin(2.0 * N * PI * x[0]))
    out[0] = x[0] + ripple + 2.0 * s1 / c1
    out[1] = 1.0 - x[0] + ripple + 2.0 * s2 / c2


@njit(cache=True)
def uf6(x, out):
    N = 2.0
    eps = 0.1
    t1, c1, t2, c2 = _uf_rastrigin_like(x, 6)
    gap = max(0.0, 2.0 * (1.0 / (2.0 * N) + eps) * np.sin(2.0 * N * PI * x[0]))
    out[0] = x[0] + gap + 2.0 * t1 / c1
    out[1] = 1.0 - x[0] + gap + 2.0 * t2 / c2


@njit(cache=True)
def uf7(x, out):
    s1, c1, s2, c2 = _uf_sums(x, 1)
    r = x[0] ** 0.2
    out[0] = r + 2.0 * s1 / c1
    out[1] = 1.0 - r + 2.0 * s2 / c2


@njit(cache=True)
def _uf_three_sums(x):
    n = x.shape[0]
    x1 = x[0]
    x2 = x[1]
    s = np.zeros(3)
    c = np.zeros(3)
    for j in range(3, n + 1):
        y = x[j - 1] - 2.0 * x2 * np.sin(2.0 * PI * x1 + j * PI / n)
        # j-1 divisible by 3 -> first group, j-2 -> second, j -> third
        g = (j - 1) % 3
        s[g] += y * y
        c[g] += 1.0
    return s[0] / c[0], s[1] / c[1], s[2] / c[2]


@njit(cache=True)
def uf8(x, out):
    m1, m2, m3 = _uf_three_sums(x)
    a = 0.5 * PI * x[0]
    b = 0.5 * PI * x[1]
    out[0] = np.cos(a) * np.cos(b) + 2.0 * m1
    out[1] = np.cos(a) * np.sin(b) + 2.0 * m2
    out[2] = np.sin(a) + 2.0 * m3


@njit(cache=True)
def uf9(x, out):
    eps = 0.1
    m1, m2, m3 = _uf_three_sums(x)
    bump = max(0.0, (1.0 + eps) * (1.0 - 4.0 * (2.0 * x[0] - 1.0) ** 2))
    out[0] = 0.5 * (bump + 2.0 * x[0]) * x[1] + 2.0 * m1
    out[1] = 0.5 * (bump - 2.0 * x[0] + 2.0) * x[1] + 2.0 * m2
    out[2] = 1.0 - x[1] + 2.0 * m3


@njit(cache=True)
def _round_half_even(v):
    r = np.floor(v)
    diff = v - r
    if diff > 0.5:
        return r + 1.0
    if diff < 0.5:
        return r
    return r if r % 2.0 == 0.0 else r + 1.0


@njit(cache=True)
def _nearest(values, v):
    best = 0
    for i in range(1, values.shape[0]):
        if abs(values[i] - v) < abs(values[best] - v):
            best = i
    return values[best]


@njit(cache=True)
def re21(x, out):
    F = 10.0
    E = 2.0e5
    L = 200.0
    out[0] = L * (2.0 * x[0] + np.sqrt(2.0) * x[1] + np.sqrt(x[2]) + x[3])
    out[1] = (F * L / E) * (2.0 / x[0] + 2.0 * np.sqrt(2.0) / x[1] - 2.0 * np.sqrt(2.0) / x[2] + 2.0 / x[3])


@njit(cache=True)
def re22(x, out):
    x1 = _nearest(RE22_AREAS, x[0])
    # the published lower bound of x2 is 0, where the formula divides by zero
    x2 = max(x[1], 1e-12)
    x3 = x[2]
    out[0] = 29.4 * x1 + 0.6 * x2 * x3
    g1 = x1 * x3 - 7.735 * (x1 * x1) / x2 - 180.0
    g2 = 4.0 - x3 / x2
    out[1] = (-g1 if g1 < 0 else 0.0) + (-g2 if g2 < 0 else 0.0)


@njit(cache=True)
def re23(x, out):
    x1 = 0.0625 * _round_half_even(x[0])
    x2 = 0.0625 * _round_half_even(x[1])
    x3 = x[2]
    x4 = x[3]
    out[0] = 0.6224 * x1 * x3 * x4 + 1.7781 * x2 * x3 * x3 + 3.1661 * x1 * x1 * x4 + 19.84 * x1 * x1 * x3
    g1 = x1 - 0.0193 * x3
    g2 = x2 - 0.00954 * x3
    g3 = PI * x3 * x3 * x4 + (4.0 / 3.0) * PI * x3 * x3 * x3 - 1296000.0
    v = 0.0
    for g in (g1, g2, g3):
        if g < 0:
            v -= g
    out[1] = v


@njit(cache=True)
def re24(x, out):
    x1 = x[0]
    x2 = x[1]
    out[0] = x1 + 120.0 * x2
    E = 700000.0
    sigma_b_max = 700.0
    tau_max = 450.0
    delta_max = 1.5
    sigma_k = E * x1 * x1 / 100.0
    sigma_b = 4500.0 / (x1 * x2)
    tau = 1800.0 / x2
    delta = 56.2 * 10000.0 / (E * x1 * x2 * x2)
    v = 0.0
    for g in (1.0 - sigma_b / sigma_b_max, 1.0 - tau / tau_max, 1.0 - delta / delta_max, 1.0 - sigma_b / sigma_k):
        if g < 0:
            v -= g
    out[1] = v


@njit(cache=True)
def re25(x, out):
    x1 = _round_half_even(x[0])
    x2 = x[1]
    x3 = _nearest(RE25_DIAMETERS, x[2])
    out[0] = PI * PI * x2 * x3 * x3 * (x1 + 2.0) / 4.0
    Cf = (4.0 * (x2 / x3) - 1.0) / (4.0 * (x2 / x3) - 4.0) + 0.615 * x3 / x2
    Fmax = 1000.0
    S = 189000.0
    G = 11.5e6
    K = G * x3**4 / (8.0 * x1 * x2**3)
    lmax = 14.0
    lf = Fmax / K + 1.05 * (x1 + 2.0) * x3
    Fp = 300.0
    sigmaP = Fp / K
    sigmaPM = 6.0
    sigmaW = 1.25
    gs = (
        -(8.0 * Cf * Fmax * x2) / (PI * x3**3) + S,
        -lf + lmax,
        -3.0 + x2 / x3,
        -sigmaP + sigmaPM,
        -sigmaP - (Fmax - Fp) / K - 1.05 * (x1 + 2.0) * x3 + lf,
        sigmaW - (Fmax - Fp) / K,
    )
    v = 0.0
    for g in gs:
        if g < 0:
            v -= g
    out[1] = v


@njit(cache=True)
def evaluate_code(code, x, out):
    if code == ZDT1:
        zdt1(x, out)
    elif code == ZDT2:
        zdt2(x, out)
    elif code == ZDT3:
        zdt3(x, out)
    elif code == ZDT4:
        zdt4(x, out)
    elif code == ZDT6:
        zdt6(x, out)
    elif code == UF1:
        uf1(x, out)
    elif code == UF2:
        uf2(x, out)
    elif code == UF3:
        uf3(x, out)
    elif code == UF4:
        uf4(x, out)
    elif code == UF5:
        uf5(x, out)
    elif code == UF6:
        uf6(x, out)
    elif code == UF7:
        uf7(x, out)
    elif code == UF8:
        uf8(x, out)
    elif code == UF9:
        uf9(x, out)
    elif code == RE21:
        re21(x, out)
    elif code == RE22:
        re22(x, out)
    elif code == RE23:
        re23(x, out)
    elif code == RE24:
        re24(x, out)
    elif code == RE25:
        re25(x, out)
    else:
        raise ValueError("unknown problem code")


@njit(cache=True)
def evaluate_batch(code, X, m):
    F = np.empty((X.shape[0], m))
    for i in range(X.shape[0]):
        evaluate_code(code, X[i], F[i])
    return F
