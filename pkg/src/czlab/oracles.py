"""Brute-force references for the fast paths, written from the definitions.

Plain loops, no shared helpers with the fast code beyond ``GridFunction``.
Only meant for small grids (N <= 64).
"""
from __future__ import annotations

import math

import numpy as np


def _intervals(n: int, dyadic: bool):
    if dyadic:
        size = n
        while size >= 1:
            for a in range(0, n, size):
                yield a, size
            size //= 2
    else:
        for a in range(n):
            for b in range(a + 1, n + 1):
                yield a, b - a


def maximal(a, dyadic: bool = False) -> np.ndarray:
    a = np.abs(np.asarray(a, dtype=float))
    n = a.size
    out = np.zeros(n)
    for s, ln in _intervals(n, dyadic):
        avg = sum(a[s:s + ln]) / ln
        for i in range(s, s + ln):
            out[i] = max(out[i], avg)
    return out


def square(a) -> np.ndarray:
    """S_d from the parent/child average differences, cube by cube."""
    a = np.asarray(a, dtype=float)
    n = a.size
    acc = np.zeros(n)
    size = n // 2
    while size >= 1:
        for s in range(0, n, size):
            ps = (s // (2 * size)) * 2 * size
            d = sum(a[s:s + size]) / size - sum(a[ps:ps + 2 * size]) / (2 * size)
            acc[s:s + size] += d * d
        size //= 2
    return np.sqrt(acc)


def rearrangement(v, s_cells: int) -> float:
    """f*(s): the smallest t with #{|v| > t} <= s."""
    a = np.abs(np.asarray(v, dtype=float))
    for t in sorted(set(a.tolist()) | {0.0}):
        if np.count_nonzero(a > t) <= s_cells:
            return float(t)
    return float(a.max())


def oscillation(v, lam: float) -> float:
    """inf over c of ((v - c))*(lam n); the infimum sits at a midpoint of two samples."""
    v = np.asarray(v, dtype=float)
    n = v.size
    s = math.floor(lam * n + 1e-9)
    best = math.inf
    for x in v:
        for y in v:
            best = min(best, rearrangement(v - 0.5 * (x + y), s))
    return best


def local_sharp(a, lam: float) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    n = a.size
    out = np.zeros(n)
    for s, ln in _intervals(n, True):
        w = oscillation(a[s:s + ln], lam)
        for i in range(s, s + ln):
            out[i] = max(out[i], w)
    return out


def median(v) -> float:
    """Smallest sample m with |{v > m}| <= n/2 and |{v < m}| <= n/2."""
    v = np.asarray(v, dtype=float)
    n = v.size
    for m in sorted(v.tolist()):
        if 2 * np.count_nonzero(v > m) <= n and 2 * np.count_nonzero(v < m) <= n:
            return float(m)
    raise AssertionError("no median")


def sharp(a, delta: float, dyadic: bool = True) -> np.ndarray:
    """M#_delta with the inner infimum over sample values (exact for delta <= 1)."""
    a = np.asarray(a, dtype=float)
    n = a.size
    out = np.zeros(n)
    for s, ln in _intervals(n, dyadic):
        seg = a[s:s + ln]
        best = min(float(np.mean(np.abs(seg - c) ** delta)) for c in seg) ** (1.0 / delta)
        for i in range(s, s + ln):
            out[i] = max(out[i], best)
    return out


def hilbert(a, dmin: int = 1) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    n = a.size
    out = np.zeros(n)
    for i in range(n):
        for j in range(n):
            if abs(i - j) >= dmin:
                out[i] += a[j] / (math.pi * (i - j))
    return out


def hilbert_maximal(a) -> np.ndarray:
    n = len(a)
    return np.max(np.abs(np.stack([hilbert(a, d) for d in range(1, n + 1)])), axis=0)


def commutator(b, f, k: int = 1, dmin: int = 1) -> np.ndarray:
    b, f = np.asarray(b, dtype=float), np.asarray(f, dtype=float)
    n = b.size
    out = np.zeros(n)
    for i in range(n):
        for j in range(n):
            if abs(i - j) >= dmin:
                out[i] += (b[i] - b[j]) ** k * f[j] / (math.pi * (i - j))
    return out


def ap_constant(w, p: float, dyadic: bool = False) -> float:
    w = np.asarray(w, dtype=float)
    pp = p / (p - 1.0)
    best = 0.0
    for s, ln in _intervals(w.size, dyadic):
        seg = w[s:s + ln]
        best = max(best, float(np.mean(seg)) * float(np.mean(seg ** (1.0 - pp))) ** (p - 1.0))
    return best


def bmo(b, dyadic: bool = False) -> float:
    b = np.asarray(b, dtype=float)
    best = 0.0
    for s, ln in _intervals(b.size, dyadic):
        seg = b[s:s + ln]
        best = max(best, float(np.mean(np.abs(seg - np.mean(seg)))))
    return best
