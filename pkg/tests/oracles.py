"""Independent reference implementations used as test oracles.

Written straight from the published problem definitions and indicator
definitions, in plain vectorized numpy, without importing the package.
"""

from itertools import combinations

import numpy as np

PI = np.pi


# ---------------------------------------------------------------------------
# problems


def zdt(name, x):
    x = np.asarray(x, dtype=float)
    n = len(x)
    f1 = x[0]
    if name in ("zdt1", "zdt2", "zdt3"):
        g = 1 + 9 * x[1:].sum() / (n - 1)
        h = {
            "zdt1": 1 - np.sqrt(f1 / g),
            "zdt2": 1 - (f1 / g) ** 2,
            "zdt3": 1 - np.sqrt(f1 / g) - (f1 / g) * np.sin(10 * PI * f1),
        }[name]
        return np.array([f1, g * h])
    if name == "zdt4":
        g = 1 + 10 * (n - 1) + np.sum(x[1:] ** 2 - 10 * np.cos(4 * PI * x[1:]))
        return np.array([f1, g * (1 - np.sqrt(f1 / g))])
    if name == "zdt6":
        f1 = 1 - np.exp(-4 * x[0]) * np.sin(6 * PI * x[0]) ** 6
        g = 1 + 9 * (x[1:].sum() / (n - 1)) ** 0.25
        return np.array([f1, g * (1 - (f1 / g) ** 2)])
    raise KeyError(name)


def _split2(n):
    j = np.arange(2, n + 1)  # 1-based indices of the tail
    return j[j % 2 == 1], j[j % 2 == 0]


def uf(name, x):
    """CEC 2009 unconstrained test problems UF1-UF9."""
    x = np.asarray(x, dtype=float)
    n = len(x)
    x1 = x[0]
    if name in ("uf8", "uf9"):
        j = np.arange(3, n + 1)
        J = [j[(j - 1) % 3 == 0], j[(j - 2) % 3 == 0], j[j % 3 == 0]]
        y = {k: x[k - 1] - 2 * x[1] * np.sin(2 * PI * x1 + k * PI / n) for k in j}
        s = [2 * np.mean([y[k] ** 2 for k in Jk]) for Jk in J]
        if name == "uf8":
            return np.array([
                np.cos(0.5 * PI * x1) * np.cos(0.5 * PI * x[1]) + s[0],
                np.cos(0.5 * PI * x1) * np.sin(0.5 * PI * x[1]) + s[1],
                np.sin(0.5 * PI * x1) + s[2],
            ])
        eps = 0.1
        t = max(0.0, (1 + eps) * (1 - 4 * (2 * x1 - 1) ** 2))
        return np.array([
            0.5 * (t + 2 * x1) * x[1] + s[0],
            0.5 * (t - 2 * x1 + 2) * x[1] + s[1],
            1 - x[1] + s[2],
        ])

    J1, J2 = _split2(n)

    def y_sin(k):
        return x[k - 1] - np.sin(6 * PI * x1 + k * PI / n)

    if name in ("uf1", "uf4", "uf5", "uf7"):
        y1 = np.array([y_sin(k) for k in J1])
        y2 = np.array([y_sin(k) for k in J2])
    if name == "uf1":
        return np.array([x1 + 2 * np.mean(y1**2), 1 - np.sqrt(x1) + 2 * np.mean(y2**2)])
    if name == "uf2":
        def y2f(k, trig):
            a = 0.3 * x1**2 * np.cos(24 * PI * x1 + 4 * k * PI / n) + 0.6 * x1
            return x[k - 1] - a * trig(6 * PI * x1 + k * PI / n)

        ya = np.array([y2f(k, np.cos) for k in J1])
        yb = np.array([y2f(k, np.sin) for k in J2])
        return np.array([x1 + 2 * np.mean(ya**2), 1 - np.sqrt(x1) + 2 * np.mean(yb**2)])
    if name in ("uf3", "uf6"):
        def y3(k):
            return x[k - 1] - x1 ** (0.5 * (1 + 3 * (k - 2) / (n - 2)))

        def term(J):
            y = np.array([y3(k) for k in J])
            if name == "uf6":
                y = np.array([x[k - 1] - np.sin(6 * PI * x1 + k * PI / n) for k in J])
            return 2 / len(J) * (4 * np.sum(y**2) - 2 * np.prod(np.cos(20 * y * PI / np.sqrt(J))) + 2)

        if name == "uf3":
            return np.array([x1 + term(J1), 1 - np.sqrt(x1) + term(J2)])
        N, eps = 2, 0.1
        extra = max(0.0, 2 * (1 / (2 * N) + eps) * np.sin(2 * N * PI * x1))
        return np.array([x1 + extra + term(J1), 1 - x1 + extra + term(J2)])
    if name == "uf4":
        def h(t):
            return np.abs(t) / (1 + np.exp(2 * np.abs(t)))

        return np.array([x1 + 2 * np.mean(h(y1)), 1 - x1**2 + 2 * np.mean(h(y2))])
    if name == "uf5":
        N, eps = 10, 0.1

        def h(t):
            return 2 * t**2 - np.cos(4 * PI * t) + 1

        extra = (1 / (2 * N) + eps) * abs(np.sin(2 * N * PI * x1))
        return np.array([x1 + extra + 2 * np.mean(h(y1)), 1 - x1 + extra + 2 * np.mean(h(y2))])
    if name == "uf7":
        r = x1**0.2
        return np.array([r + 2 * np.mean(y1**2), 1 - r + 2 * np.mean(y2**2)])
    raise KeyError(name)


def re21(x):
    F, E, L = 10.0, 2e5, 200.0
    x1, x2, x3, x4 = x
    return np.array([
        L * (2 * x1 + np.sqrt(2) * x2 + np.sqrt(x3) + x4),
        F * L / E * (2 / x1 + 2 * np.sqrt(2) / x2 - 2 * np.sqrt(2) / x3 + 2 / x4),
    ])


def re24(x):
    x1, x2 = x
    E, sb_max, tau_max, delta_max = 7e5, 700.0, 450.0, 1.5
    sb = 4500 / (x1 * x2)
    sk = E * x1**2 / 100
    tau = 1800 / x2
    delta = 56.2e4 / (E * x1 * x2**2)
    g = np.array([1 - sb / sb_max, 1 - tau / tau_max, 1 - delta / delta_max, 1 - sb / sk])
    return np.array([x1 + 120 * x2, -np.minimum(g, 0).sum()])


# ---------------------------------------------------------------------------
# indicators


def hv_grid_2d(P, ref, G=4000):
    """Count midpoints of a G x G grid over [min, ref] that some point dominates."""
    P = np.asarray(P, dtype=float)
    P = P[np.all(P < ref, axis=1)]
    if len(P) == 0:
        return 0.0
    lo = P.min(axis=0)
    xs = lo[0] + (np.arange(G) + 0.5) * (ref[0] - lo[0]) / G
    ys = lo[1] + (np.arange(G) + 0.5) * (ref[1] - lo[1]) / G
    # lowest f2 among points with f1 <= column midpoint
    covered = P[:, 0][None, :] <= xs[:, None]
    floor = np.where(covered, P[:, 1][None, :], np.inf).min(axis=1)
    counts = (ys[None, :] >= floor[:, None]).sum()
    return counts * (ref[0] - lo[0]) * (ref[1] - lo[1]) / G**2


def hv_grid_3d(P, ref, h):
    """Exact for points on a lattice of step ``h`` (midpoint counting)."""
    P = np.asarray(P, dtype=float)
    n = [int(round(r / h)) for r in ref]
    axes = [(np.arange(k) + 0.5) * h for k in n]
    X, Y, Z = np.meshgrid(*axes, indexing="ij")
    mask = np.zeros(X.shape, dtype=bool)
    for p in P:
        mask |= (X >= p[0]) & (Y >= p[1]) & (Z >= p[2])
    return mask.sum() * h**3


def hv_inclusion_exclusion(P, ref):
    P = np.asarray(P, dtype=float)
    P = P[np.all(P < ref, axis=1)]
    total = 0.0
    for k in range(1, len(P) + 1):
        for idx in combinations(range(len(P)), k):
            corner = P[list(idx)].max(axis=0)
            total += (-1) ** (k + 1) * np.prod(np.asarray(ref) - corner)
    return total


def igd_definition(A, R):
    A = np.asarray(A, dtype=float)
    R = np.asarray(R, dtype=float)
    return float(np.mean([min(np.linalg.norm(a - r) for a in A) for r in R]))


def nondominated_brute(F):
    F = np.asarray(F)
    keep = []
    for i, a in enumerate(F):
        dominated = False
        for j, b in enumerate(F):
            if j != i and np.all(b <= a) and np.any(b < a):
                dominated = True
                break
        keep.append(not dominated)
    return np.array(keep)


# ---------------------------------------------------------------------------
# statistics


def ranksum_exact(a, b):
    """Two-sided exact rank-sum p-value by enumerating all rank assignments (no ties)."""
    a = list(a)
    b = list(b)
    pooled = sorted(a + b)
    ranks = {v: i + 1 for i, v in enumerate(pooled)}
    w = sum(ranks[v] for v in a)
    n = len(pooled)
    sums = [sum(c) for c in combinations(range(1, n + 1), len(a))]
    total = len(sums)
    lower = sum(s <= w for s in sums) / total
    upper = sum(s >= w for s in sums) / total
    return min(1.0, 2 * min(lower, upper))


# ---------------------------------------------------------------------------
# operators (hand-coded from the textbook formulas, same draw order as documented)


def sbx_first_child(p1, p2, eta, lower, upper, rng):
    c = np.empty(len(p1))
    for k in range(len(p1)):
        u = rng.random()
        beta = (2 * u) ** (1 / (eta + 1)) if u <= 0.5 else (1 / (2 - 2 * u)) ** (1 / (eta + 1))
        if rng.random() < 0.5:
            beta = -beta
        if rng.random() < 0.5:
            beta = 1.0
        c[k] = 0.5 * ((1 + beta) * p1[k] + (1 - beta) * p2[k])
    return np.clip(c, lower, upper)


def de_rand_1(xi, xj, xk, F, CR, incumbent, lower, upper, rng):
    d = len(xi)
    jrand = rng.integers(0, d)
    v = np.array(incumbent, dtype=float)
    for k in range(d):
        if rng.random() < CR or k == jrand:
            v[k] = xi[k] + F * (xj[k] - xk[k])
    return np.clip(v, lower, upper)


def lo_child(parents, w, theta, dim_prob, incumbent, lower, upper, rng):
    l = len(parents)
    noisy = np.array([w[i] + theta * rng.standard_normal() for i in range(l)])
    child = np.array(incumbent, dtype=float)
    for k in range(parents.shape[1]):
        if rng.random() < dim_prob:
            child[k] = noisy @ parents[:, k]
    return np.clip(child, lower, upper)
