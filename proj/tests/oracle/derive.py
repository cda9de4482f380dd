"""Independent reference values for the regression suites.

Uses only numpy/scipy/mpmath on the reduced dispersion formulas; shares no
code with the C++ solver. The printed JSON is what the tests freeze.

    python3 tests/oracle/derive.py > tests/oracle/reference.json
"""

import json

import mpmath as mp
import numpy as np
from scipy.optimize import brentq

PI = np.pi
mp.mp.dps = 60


def phi(k, ell):
    r = (k**4 + 2 * k * k + 5) / (4 * (k * k + 1))
    return np.cos(k * ell) * np.cos(k * PI) - r * np.sin(k * ell) * np.sin(k * PI)


def f_mp(kap, ell):
    kap, ell = mp.mpf(kap), mp.mpf(ell)
    q = (kap**2 - 3) ** 2 / (4 * (kap**2 - 1))
    return mp.cosh(kap * (mp.pi - ell)) - q * mp.sinh(kap * ell) * mp.sinh(kap * mp.pi)


def positive_bands(ell, k_max, h=1e-5):
    """Sublevel set |phi| <= 1 on [0, k_max] from a dense scan plus brentq."""
    bands = []
    chunk = 2_000_000
    start = None
    k0 = 0.0
    prev_in = True  # phi(0) = 1
    start = 0.0
    while k0 < k_max:
        k = np.minimum(k0 + h * np.arange(1, chunk + 1), k_max)
        v = phi(k, ell)
        inside = np.abs(v) <= 1
        flips = np.nonzero(inside[1:] != inside[:-1])[0]
        first = [] if inside[0] == prev_in else [-1]
        for i in first + list(flips):
            a = k0 if i < 0 else k[i]
            b = k[i + 1]
            va = phi(a, ell)
            level = 1.0 if (va > 1 or phi(b, ell) > 1) else -1.0
            x = brentq(lambda t: phi(t, ell) - level, a, b, xtol=1e-15)
            if start is None:
                start = x
            else:
                bands.append((start, x))
                start = None
        prev_in = inside[-1]
        k0 = k[-1]
        if k[-1] >= k_max:
            break
    if start is not None:
        bands.append((start, k_max))
    return [(a * a, b * b) for a, b in bands]


def measure(ell, K):
    bands = positive_bands(ell, np.sqrt(K))
    m = sum(min(b, K) - max(a, 0.0) for a, b in bands if b > 0 and a < K)
    gaps = len(bands) - 1 + (1 if bands[-1][1] < K else 0)
    return m / K, len(bands), gaps


def mp_bisect(g, a, b, iters=200):
    a, b = mp.mpf(a), mp.mpf(b)
    ga = mp.sign(g(a))
    if ga == 0:
        return a
    for _ in range(iters):
        m = (a + b) / 2
        gm = mp.sign(g(m))
        if gm == 0:
            return m
        if gm == ga:
            a = m
        else:
            b = m
    return (a + b) / 2


def f_scaled(kap, ell):
    """(f_l / (sinh(k l) sinh(k pi)), 1 / (sinh(k l) sinh(k pi))) in double precision."""
    q = (kap**2 - 3) ** 2 / (4 * (kap**2 - 1))
    ss = np.sinh(kap * ell) * np.sinh(kap * PI)
    return np.cosh(kap * (PI - ell)) / ss - q, 1.0 / ss


def negative_edges(ell, kap_max=8.0, n=2_000_000):
    """All kappa in (1, kap_max) with f = +-1: float scan, 60-digit refinement."""
    ks = np.linspace(1 + 1e-9, kap_max, n)
    base, inv = f_scaled(ks, ell)
    out = []
    for level in (1, -1):
        s = np.sign(base - level * inv)
        for i in np.nonzero(s[1:] != s[:-1])[0]:
            r = mp_bisect(lambda t: f_mp(t, ell) - level, ks[i], ks[i + 1])
            out.append((float(r), level))
    return sorted(out)


def first_edge_above_one(ell, level):
    """Smallest kappa > 1 with f_l = level (upper band, small l)."""
    ks = 1 + np.logspace(-9, 0, 20000)
    prev = None
    for x in ks:
        s = mp.sign(f_mp(x, ell) - level)
        if prev is not None and s != prev[1]:
            return float(mp_bisect(lambda t: f_mp(t, ell) - level, prev[0], x))
        prev = (x, s)
    raise RuntimeError("no edge")


def lower_edge_theta0(ell):
    """Unique kappa > sqrt 3 with f_l = 1 (lower band edge at theta = 0)."""
    a = mp.sqrt(3)
    b = mp.mpf(2)
    while f_mp(b, ell) > 1:
        b *= 2
    return float(mp_bisect(lambda t: f_mp(t, ell) - 1, a, b))


def dispersion_roots(ell, level, k_lo, k_hi, h=1e-6):
    k = np.arange(k_lo + h, k_hi, h)
    v = phi(k, ell) - level
    idx = np.nonzero(np.sign(v[1:]) != np.sign(v[:-1]))[0]
    return [brentq(lambda t: phi(t, ell) - level, k[i], k[i + 1], xtol=1e-15) for i in idx]


def hausdorff(ell, e_max):
    bands = positive_bands(ell, np.sqrt(e_max))
    pts = sorted([(a, min(b, e_max)) for a, b in bands] + [(n * n, n * n) for n in range(0, 6)])
    d = pts[0][0]
    reach = pts[0][1]
    for a, b in pts:
        if a > reach:
            d = max(d, 0.5 * (a - reach))
        reach = max(reach, b)
    return max(d, e_max - reach)


def gap_window(ell, width=10.0, limit=1e4):
    bands = positive_bands(ell, np.sqrt(limit))
    K = 0.0
    while K + width <= limit:
        cov = sum(max(0.0, min(b, K + width) - max(a, K)) for a, b in bands)
        if 1 - cov / width > 0.5:
            return K, 1 - cov / width
        K += width
    return None


def main():
    ref = {}
    ref["measure"] = {}
    for ell in (0.5, 1.0, PI):
        for K in (1e2, 1e3, 1e4):
            frac, nb, ng = measure(ell, K)
            ref["measure"][f"{ell:.6g}/{K:g}"] = {"fraction": frac, "bands": nb, "gaps": ng}

    ref["negative_edges"] = {}
    for ell in (0.5, 1.0, 2.0, 5.0, PI, 10.0, 20.0):
        ref["negative_edges"][f"{ell:.6g}"] = negative_edges(ell)

    small = {}
    for ell in (1e-3, 5e-4):
        lo = first_edge_above_one(ell, 1)  # theta = 0 edge, largest kappa of the upper band
        hi = first_edge_above_one(ell, -1)
        small[f"{ell:g}"] = {"kappa_theta0": lo, "kappa_thetapi": hi,
                             "e_lower_edge": -lo * lo, "width": lo * lo - hi * hi}
    for ell in (1e-3, 1e-4):
        small[f"{ell:g}"] = dict(small.get(f"{ell:g}", {}), lower_kappa_theta0=lower_edge_theta0(ell))
    ref["small_l"] = small

    ref["dispersion_l1_theta0_0_4"] = dispersion_roots(1.0, 1.0, 0.0, 4.0)
    ref["hausdorff_25"] = {f"{ell:g}": hausdorff(ell, 25.0) for ell in (0.1, 0.03, 0.01)}
    ref["gap_window"] = {f"{ell:g}": gap_window(ell) for ell in (0.1, 0.03, 0.01)}
    print(json.dumps(ref, indent=1))


if __name__ == "__main__":
    main()
