"""numba implementations of the O(N^2) inner loops.

Signatures mirror ``_np`` exactly; ``czlab.kernels`` picks one of the two.
"""
import math

import numpy as np
from numba import njit

_params = {"cache": True, "fastmath": False}


@njit(**_params)
def interval_maximal(a):
    n = a.size
    P = np.zeros(n + 1)
    for i in range(n):
        P[i + 1] = P[i] + a[i]
    out = np.zeros(n)
    for i in range(n):
        best = -np.inf
        for j in range(n - 1, i - 1, -1):
            v = (P[j + 1] - P[i]) / (j + 1 - i)
            if v > best:
                best = v
            if best > out[j]:
                out[j] = best
    return out


@njit(**_params)
def multilinear_interval_maximal(A):
    m, n = A.shape
    P = np.zeros((m, n + 1))
    for r in range(m):
        for i in range(n):
            P[r, i + 1] = P[r, i] + A[r, i]
    out = np.zeros(n)
    for i in range(n):
        best = -np.inf
        for j in range(n - 1, i - 1, -1):
            inv = 1.0 / (j + 1 - i)
            v = 1.0
            for r in range(m):
                v *= (P[r, j + 1] - P[r, i]) * inv
            if v > best:
                best = v
            if best > out[j]:
                out[j] = best
    return out


@njit(**_params)
def spread_max(vals, starts, lengths, n):
    out = np.full(n, -np.inf)
    for t in range(vals.size):
        v = vals[t]
        for x in range(starts[t], starts[t] + lengths[t]):
            if v > out[x]:
                out[x] = v
    return out


@njit(**_params)
def family_oscillation(values, starts, lengths, keep):
    res = np.empty(starts.size)
    for t in range(starts.size):
        s = lengths[t]
        m = keep[t]
        v = np.sort(values[starts[t]:starts[t] + s])
        best = np.inf
        for i in range(s - m + 1):
            w = v[i + m - 1] - v[i]
            if w < best:
                best = w
        res[t] = 0.5 * best
    return res


@njit(**_params)
def _power_sum(v, c, delta):
    acc = 0.0
    if delta == 0.5:
        for x in v:
            acc += math.sqrt(abs(x - c))
    elif delta == 1.0:
        for x in v:
            acc += abs(x - c)
    else:
        for x in v:
            acc += abs(x - c) ** delta
    return acc


@njit(**_params)
def _sharp_one(v, delta, tol):
    s = v.size
    v = np.sort(v)
    if v[0] == v[s - 1]:
        return 0.0
    if delta == 1.0:
        c = v[(s + 1) // 2 - 1]
        return _power_sum(v, c, 1.0) / s
    if delta < 1.0:
        best = np.inf
        prev = np.nan
        for i in range(s):
            c = v[i]
            if c == prev:
                continue
            prev = c
            acc = _power_sum(v, c, delta)
            if acc < best:
                best = acc
        return (best / s) ** (1.0 / delta)
    g = 0.5 * (math.sqrt(5.0) - 1.0)
    lo = v[0]
    hi = v[s - 1]
    x1 = hi - g * (hi - lo)
    x2 = lo + g * (hi - lo)
    f1 = _power_sum(v, x1, delta)
    f2 = _power_sum(v, x2, delta)
    while hi - lo > tol:
        if f1 <= f2:
            hi = x2
            x2 = x1
            f2 = f1
            x1 = hi - g * (hi - lo)
            f1 = _power_sum(v, x1, delta)
        else:
            lo = x1
            x1 = x2
            f1 = f2
            x2 = lo + g * (hi - lo)
            f2 = _power_sum(v, x2, delta)
    best = min(f1, f2, _power_sum(v, 0.5 * (lo + hi), delta))
    return (best / s) ** (1.0 / delta)


@njit(**_params)
def family_sharp(values, starts, lengths, delta, tol):
    res = np.empty(starts.size)
    for t in range(starts.size):
        res[t] = _sharp_one(values[starts[t]:starts[t] + lengths[t]].copy(), delta, tol)
    return res


@njit(**_params)
def toeplitz_apply(u, ker, radius):
    n = u.size
    out = np.zeros(n)
    for i in range(n):
        lo = max(0, i - radius)
        hi = min(n, i + radius + 1)
        acc = 0.0
        for j in range(lo, hi):
            acc += u[j] * ker[i - j + n - 1]
        out[i] = acc
    return out


@njit(**_params)
def hilbert_maximal(f):
    n = f.size
    inv = np.zeros(n)
    for d in range(1, n):
        inv[d] = 1.0 / (math.pi * d)
    out = np.empty(n)
    for i in range(n):
        s = 0.0
        best = 0.0
        for d in range(n - 1, 0, -1):
            t = 0.0
            if i - d >= 0:
                t += f[i - d]
            if i + d < n:
                t -= f[i + d]
            s += t * inv[d]
            a = abs(s)
            if a > best:
                best = a
        out[i] = best
    return out


@njit(**_params)
def kernel_commutator(b, f, k, dmin):
    n = f.size
    out = np.zeros(n)
    for i in range(n):
        acc = 0.0
        for j in range(n):
            d = i - j
            if abs(d) < dmin:
                continue
            diff = b[i] - b[j]
            p = 1.0
            for _ in range(k):
                p *= diff
            acc += p * f[j] / (math.pi * d)
        out[i] = acc
    return out


@njit(**_params)
def interval_ap(w, p):
    n = w.size
    pp = p / (p - 1.0)
    P1 = np.zeros(n + 1)
    P2 = np.zeros(n + 1)
    for i in range(n):
        P1[i + 1] = P1[i] + w[i]
        P2[i + 1] = P2[i] + w[i] ** (1.0 - pp)
    best = 0.0
    for i in range(n):
        for j in range(i, n):
            ln = j + 1 - i
            v = (P1[j + 1] - P1[i]) / ln * ((P2[j + 1] - P2[i]) / ln) ** (p - 1.0)
            if v > best:
                best = v
    return best


@njit(**_params)
def interval_bmo(b):
    # for each left end, Fenwick trees over value ranks give the count and
    # sum of the samples below the running mean in O(log n)
    n = b.size
    order = np.argsort(b, kind="mergesort")
    vals = b[order]
    rank = np.empty(n, np.int64)
    for r in range(n):
        rank[order[r]] = r
    cnt = np.zeros(n + 1)
    sm = np.zeros(n + 1)
    best = 0.0
    for i in range(n):
        cnt[:] = 0.0
        sm[:] = 0.0
        acc = 0.0
        for j in range(i, n):
            acc += b[j]
            k = rank[j] + 1
            while k <= n:
                cnt[k] += 1.0
                sm[k] += b[j]
                k += k & (-k)
            ln = j + 1 - i
            avg = acc / ln
            k = np.searchsorted(vals, avg, side="right")
            c_le = 0.0
            s_le = 0.0
            while k > 0:
                c_le += cnt[k]
                s_le += sm[k]
                k -= k & (-k)
            dev = (avg * c_le - s_le + (acc - s_le) - avg * (ln - c_le)) / ln
            if dev > best:
                best = dev
    return best
