#!/usr/bin/env python3
"""Independent numpy re-computation of the golden numbers pinned in the tests.

Usage: golden.py [majorant|delta|supscan|exceptional|aconst|all]
"""
import math
import sys

import numpy as np

N = 10**6
X2 = 1000


def splitmix(seed):
    mask = (1 << 64) - 1
    state = seed
    while True:
        state = (state + 0x9E3779B97F4A7C15) & mask
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        z ^= z >> 31
        yield (z >> 11) * 2.0**-53


def factor(q):
    out = {}
    p = 2
    while p * p <= q:
        while q % p == 0:
            out[p] = out.get(p, 0) + 1
            q //= p
        p += 1
    if q > 1:
        out[q] = out.get(q, 0) + 1
    return out


def omega(q, k):
    r = 1.0
    for p, e in factor(q).items():
        u, v = divmod(e, k)
        if v == 0:  # e = k·u with v taken in 1..k
            u, v = u - 1, k
        r *= k * p ** (-u - 0.5) if v == 1 else p ** (-u - 1.0)
    return r


def complete_sums(q, k, units_only=False):
    """S_k(q,a) for every a in 0..q-1 from the residue histogram."""
    xs = np.arange(1, q + 1, dtype=object)
    if units_only:
        xs = [x for x in xs if math.gcd(int(x), q) == 1]
    hist = np.zeros(q)
    for x in xs:
        hist[pow(int(x), k, q)] += 1
    a = np.arange(q)[:, None]
    r = np.arange(q)[None, :]
    return np.exp(2j * np.pi * ((a * r) % q) / q) @ hist


def majorant():
    best = (0.0, None)
    for k in range(2, 15):
        for q in range(1, 513):
            s = np.abs(complete_sums(q, k))
            units = [a for a in range(1, q + 1) if math.gcd(a, q) == 1]
            m = max(s[a % q] for a in units) / (q * omega(q, k))
            if m > best[0]:
                best = (m, (q, k))
    return best


def weight(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = (t > 0.5) & (t < 1.0)
    d = 1.0 / 16 - (t[inside] - 0.75) ** 2
    out[inside] = np.exp(-1.0 / d)
    return out


GL_T, GL_W = np.polynomial.legendre.leggauss(200)


def v2(beta, panels=100):
    """X ∫_{1/2}^1 w(t) e(X² β t²) dt by composite Gauss-Legendre."""
    edges = np.linspace(0.5, 1.0, panels + 1)
    mid = (edges[:-1] + edges[1:]) / 2
    h = edges[1] - edges[0]
    t = (mid[:, None] + h / 2 * GL_T[None, :]).ravel()
    w = np.tile(GL_W * h / 2, panels)
    return X2 * np.sum(w * weight(t) * np.exp(2j * np.pi * (X2 * X2 * beta) * t * t))


XS = np.arange(500, 1001)
WX = weight(XS / X2)
SQ = (XS.astype(np.int64) ** 2)


def F2(alpha):
    # x² α mod 1 in two pieces to keep the phase accurate
    frac = (SQ * alpha) % 1.0
    return np.sum(WX * np.exp(2j * np.pi * frac))


def arcs(Q):
    out = []
    for q in range(1, int(Q) + 1):
        for a in range(1, q + 1):
            if math.gcd(a, q) == 1:
                out.append((q, a, a / q, Q / (q * N)))
    return out


def delta(seed=0x5EED, samples=1000, Q=100.0):
    arc_list = arcs(Q)
    rng = splitmix(seed)
    s2 = {}
    best = 0.0
    for _ in range(samples):
        q, a, c, h = arc_list[int(next(rng) * len(arc_list))]
        beta = (2 * next(rng) - 1) * h
        if q not in s2:
            s2[q] = complete_sums(q, 2)
        star = s2[q][a % q] / q * v2(beta)
        best = max(best, abs(F2(c + beta) - star) / math.sqrt(Q))
    return best


def supscan(Q=50.0, grid=100000):
    lo = N ** -0.5
    alpha = lo + (np.arange(grid) + 0.5) / grid
    minor = np.ones(grid, dtype=bool)
    for q in range(1, int(Q) + 1):
        h = Q / (q * N)
        # Closed arcs with endpoints a/q ± h rounded to doubles.
        for a in np.round(alpha * q) + np.array([[-1], [0], [1]]):
            c = a / q
            minor &= ~((c - h <= alpha) & (alpha <= c + h))
    sup = 0.0
    for al in alpha[minor]:
        sup = max(sup, abs(F2(al)))
    F0 = WX.sum()
    return sup / (F0 * Q**-0.5), int(minor.sum())


def theorem_bits(limit):
    reach = np.zeros(limit + 1, dtype=bool)
    reach[0] = True
    for k in range(2, 15):
        nxt = np.zeros_like(reach)
        x = 1
        while x**k <= limit:
            s = x**k
            nxt[s:] |= reach[: limit + 1 - s]
            x += 1
        reach = nxt
    return reach


def exceptional(limit=N):
    reach = theorem_bits(limit)
    bad = np.nonzero(~reach[1:])[0] + 1
    return int(bad.max()), int(bad.size)


def a_const(n=N, pmax=200):
    deg_full = [2, 3, 4, 12, 13, 14]
    deg_units = list(range(5, 12))
    best = (0.0, None)
    for p in range(2, pmax + 1):
        if factor(p) != {p: 1}:
            continue
        prod = np.ones(p, dtype=complex)
        for k in deg_full:
            prod *= complete_sums(p, k) / p
        for k in deg_units:
            prod *= complete_sums(p, k, units_only=True) / (p - 1)
        a = np.arange(1, p)
        A = np.sum(prod[a] * np.exp(-2j * np.pi * ((a * n) % p) / p)).real
        c = abs(A) * p**3.5
        if c > best[0]:
            best = (c, p)
    return best


if __name__ == "__main__":
    which = sys.argv[1] if len(sys.argv) > 1 else "all"
    if which in ("majorant", "all"):
        print("majorant", repr(majorant()))
    if which in ("delta", "all"):
        print("delta", repr(delta()))
    if which in ("supscan", "all"):
        print("supscan", repr(supscan()))
    if which in ("exceptional", "all"):
        print("exceptional", repr(exceptional()))
    if which in ("aconst", "all"):
        print("aconst", repr(a_const()))
