"""Pure-numpy fallback for the kernels in ``_nb``.

Vectorised along one axis with a Python loop over the other; slower than the
compiled path at large N but free of the numba dependency.
"""
import math

import numpy as np

_CHUNK = 1 << 20


def interval_maximal(a):
    a = np.asarray(a, dtype=float)
    n = a.size
    P = np.concatenate(([0.0], np.cumsum(a)))
    out = np.zeros(n)
    for i in range(n):
        avgs = (P[i + 1:] - P[i]) / np.arange(1, n - i + 1)
        suffix = np.maximum.accumulate(avgs[::-1])[::-1]
        np.maximum(out[i:], suffix, out=out[i:])
    return out


def multilinear_interval_maximal(A):
    A = np.asarray(A, dtype=float)
    m, n = A.shape
    P = np.concatenate((np.zeros((m, 1)), np.cumsum(A, axis=1)), axis=1)
    out = np.zeros(n)
    for i in range(n):
        lens = np.arange(1, n - i + 1)
        prod = np.prod((P[:, i + 1:] - P[:, i:i + 1]) / lens, axis=0)
        suffix = np.maximum.accumulate(prod[::-1])[::-1]
        np.maximum(out[i:], suffix, out=out[i:])
    return out


def spread_max(vals, starts, lengths, n):
    out = np.full(n, -np.inf)
    for s in np.unique(lengths):
        sel = lengths == s
        idx = (starts[sel][:, None] + np.arange(s)).ravel()
        np.maximum.at(out, idx, np.repeat(vals[sel], s))
    return out


def family_oscillation(values, starts, lengths, keep):
    res = np.empty(starts.size)
    for s in np.unique(lengths):
        sel = np.flatnonzero(lengths == s)
        m = int(keep[sel[0]])
        v = np.sort(values[starts[sel][:, None] + np.arange(s)], axis=1)
        widths = v[:, m - 1:] - v[:, :s - m + 1]
        res[sel] = 0.5 * widths.min(axis=1)
    return res


def _power_sums(v, cs, delta):
    out = np.empty(cs.size)
    step = max(1, _CHUNK // max(v.size, 1))
    for a in range(0, cs.size, step):
        d = np.abs(v[None, :] - cs[a:a + step, None])
        if delta == 0.5:
            d = np.sqrt(d)
        elif delta != 1.0:
            d = d ** delta
        out[a:a + step] = d.sum(axis=1)
    return out


def _sharp_one(v, delta, tol):
    s = v.size
    v = np.sort(v)
    if v[0] == v[-1]:
        return 0.0
    if delta == 1.0:
        c = v[(s + 1) // 2 - 1]
        return float(np.abs(v - c).sum() / s)
    if delta < 1.0:
        cs = np.unique(v)
        return float((_power_sums(v, cs, delta).min() / s) ** (1.0 / delta))
    g = 0.5 * (math.sqrt(5.0) - 1.0)
    lo, hi = float(v[0]), float(v[-1])
    obj = lambda c: float(np.sum(np.abs(v - c) ** delta))
    x1, x2 = hi - g * (hi - lo), lo + g * (hi - lo)
    f1, f2 = obj(x1), obj(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - g * (hi - lo)
            f1 = obj(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + g * (hi - lo)
            f2 = obj(x2)
    best = min(f1, f2, obj(0.5 * (lo + hi)))
    return (best / s) ** (1.0 / delta)


def family_sharp(values, starts, lengths, delta, tol):
    res = np.empty(starts.size)
    for t in range(starts.size):
        res[t] = _sharp_one(values[starts[t]:starts[t] + lengths[t]], delta, tol)
    return res


def toeplitz_apply(u, ker, radius):
    n = u.size
    r = min(radius, n - 1)
    kr = ker[n - 1 - r:n + r]
    return np.convolve(u, kr)[r:r + n]


def hilbert_maximal(f):
    f = np.asarray(f, dtype=float)
    n = f.size
    inv = np.zeros(n)
    inv[1:] = 1.0 / (math.pi * np.arange(1, n))
    out = np.empty(n)
    for i in range(n):
        contrib = np.zeros(n)
        contrib[1:i + 1] += f[i - 1::-1] if i > 0 else 0.0
        contrib[1:n - i] -= f[i + 1:]
        contrib *= inv
        tails = np.cumsum(contrib[::-1])[::-1]
        out[i] = np.abs(tails[1:]).max() if n > 1 else 0.0
    return out


def kernel_commutator(b, f, k, dmin):
    b = np.asarray(b, dtype=float)
    f = np.asarray(f, dtype=float)
    n = f.size
    out = np.empty(n)
    step = max(1, _CHUNK // n)
    j = np.arange(n)
    for a in range(0, n, step):
        i = np.arange(a, min(n, a + step))
        d = (i[:, None] - j[None, :]).astype(float)
        with np.errstate(divide="ignore"):
            K = np.where(np.abs(d) >= dmin, 1.0 / (math.pi * d), 0.0)
        if k:
            K = K * (b[i][:, None] - b[None, :]) ** k
        out[i] = K @ f
    return out


def interval_ap(w, p):
    w = np.asarray(w, dtype=float)
    n = w.size
    pp = p / (p - 1.0)
    P1 = np.concatenate(([0.0], np.cumsum(w)))
    P2 = np.concatenate(([0.0], np.cumsum(w ** (1.0 - pp))))
    best = 0.0
    for i in range(n):
        lens = np.arange(1, n - i + 1)
        v = (P1[i + 1:] - P1[i]) / lens * ((P2[i + 1:] - P2[i]) / lens) ** (p - 1.0)
        best = max(best, float(v.max()))
    return best


def interval_bmo(b):
    b = np.asarray(b, dtype=float)
    n = b.size
    best = 0.0
    for s in range(1, n + 1):
        seg = b[np.arange(n - s + 1)[:, None] + np.arange(s)]
        dev = np.abs(seg - seg.mean(axis=1, keepdims=True)).mean(axis=1)
        best = max(best, float(dev.max()))
    return best
