"""Seeded test-function corpus.

Every generator draws from ``numpy.random.Generator(PCG64)`` seeded with
``(seed, member tag)`` through ``SeedSequence``; the stream is part of the
corpus version, so bumping either changes ``CORPUS_VERSION``.

Members built on the coarse grid (level ``COARSE``) are resolution
independent: refining ``L`` only subdivides cells.
"""
from __future__ import annotations

import zlib

import numpy as np

from .dyadic import GridFunction
from .errors import DomainError
from .maximal import MultiArg, VectorGridFunction

CORPUS_VERSION = "czlab-corpus-1/pcg64"
COARSE = 6


def rng_for(seed: int, tag: str) -> np.random.Generator:
    ss = np.random.SeedSequence([int(seed), zlib.crc32(tag.encode())])
    return np.random.Generator(np.random.PCG64(ss))


def _upsample(coarse: np.ndarray, L: int) -> np.ndarray:
    if L < int(np.log2(coarse.size)):
        raise DomainError(f"resolution {L} is below the corpus coarse level")
    return np.repeat(coarse, (1 << L) // coarse.size)


def haar_sum(seed: int, L: int, depth: int | None = None, decay: float = 0.0) -> GridFunction:
    """Random Haar coefficients on levels 0..depth-1 (default L-2), scaled 2^(-decay k)."""
    rng = rng_for(seed, "haar")
    depth = L - 2 if depth is None else depth
    n = 1 << L
    v = np.zeros(n)
    for k in range(depth):
        c = rng.normal(size=1 << k) * 2.0 ** (-decay * k)
        h = np.repeat(np.stack([c, -c], axis=1).ravel(), n >> (k + 1))
        v += h
    return GridFunction(v)


def spikes(seed: int, L: int, count: int = 3, coarse: int = COARSE) -> GridFunction:
    rng = rng_for(seed, "spikes")
    c = np.zeros(1 << coarse)
    idx = rng.choice(c.size, size=count, replace=False)
    c[idx] = rng.uniform(1.0, 4.0, size=count) * c.size
    return GridFunction(_upsample(c, L))


def indicators(seed: int, L: int, count: int = 3, coarse: int = COARSE) -> GridFunction:
    """Sum of signed indicators of random coarse intervals."""
    rng = rng_for(seed, "indicators")
    m = 1 << coarse
    c = np.zeros(m)
    for _ in range(count):
        a, b = np.sort(rng.choice(m + 1, size=2, replace=False))
        c[a:b] += rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0)
    if not c.any():
        c[rng.integers(m)] = 1.0
    return GridFunction(_upsample(c, L))


def coarse_haar(seed: int, L: int, coarse: int = COARSE) -> GridFunction:
    g = haar_sum(seed, coarse, depth=coarse, decay=0.0)
    return GridFunction(_upsample(g.samples, L))


def lerner_member(seed: int, L: int) -> GridFunction:
    """Mixed corpus used for the decomposition suite."""
    kind = seed % 4
    if kind == 0:
        return haar_sum(seed, L)
    if kind == 1:
        return spikes(seed, L)
    if kind == 2:
        return indicators(seed, L)
    rng = rng_for(seed, "noise")
    return GridFunction(rng.standard_cauchy(1 << L))


def resolution_free(seed: int, L: int) -> GridFunction:
    """Coarse-grid members, identical as functions for every L >= COARSE."""
    kind = seed % 3
    if kind == 0:
        return coarse_haar(seed, L)
    if kind == 1:
        return indicators(seed, L)
    return spikes(seed, L)


def smooth_bump(seed: int, L: int) -> GridFunction:
    rng = rng_for(seed, "bump")
    k = int(rng.integers(1, 4))
    ph = rng.uniform(0, 2 * np.pi)
    return GridFunction.from_callable(
        lambda x: np.sin(np.pi * x) ** 2 * (1.0 + 0.5 * np.cos(2 * np.pi * k * x + ph)), L)


def lacunary_chain(seed: int, L: int, x0: float | None = None, stop: int = 2,
                   magnitudes: bool = False) -> GridFunction:
    """Haar functions of the dyadic cubes shrinking to one point, alternating signs.

    The partial sums build a dyadic martingale whose square function grows
    like the square root of the depth while the maximal function stays
    bounded: the extremal case for square-function level sets.  With
    ``magnitudes`` each level gets a coefficient drawn from U(0.5, 1.5).
    """
    rng = rng_for(seed, "chain")
    n = 1 << L
    pos = int(rng.integers(n)) if x0 is None else int(x0 * n)
    v = np.zeros(n)
    for k in range(L - stop):
        size = n >> k
        start = (pos // size) * size
        half = size // 2
        s = 1.0 if (pos - start) < half else -1.0
        eps = 1.0 if k % 2 == 0 else -1.0
        c = rng.uniform(0.5, 1.5) if magnitudes else 1.0
        v[start:start + half] += c * eps * s
        v[start + half:start + size] -= c * eps * s
    return GridFunction(v)


def chain_vector(seed: int, L: int, J: int = 3) -> VectorGridFunction:
    """J independent random-magnitude chains."""
    return VectorGridFunction(tuple(lacunary_chain(1000 * seed + j, L, magnitudes=True)
                                    for j in range(J)))


def log_symbol(L: int, x0: float = 0.5) -> GridFunction:
    """b(x) = log|x - x0| sampled at midpoints; x0 on a cell boundary keeps it finite."""
    return GridFunction.from_callable(lambda x: np.log(np.abs(x - x0)), L)


def symmetric_log(seed: int, L: int) -> GridFunction:
    """log|x - 1/2| plus a seeded multiple of cos(2 pi x), even about 1/2."""
    d = rng_for(seed, "symlog").uniform(0.0, 0.25)
    return GridFunction.from_callable(lambda x: np.log(np.abs(x - 0.5)) + d * np.cos(2 * np.pi * x), L)


def odd_profile(seed: int, L: int, bins: int = 32) -> GridFunction:
    """sign(x - 1/2) h(|x - 1/2|) with h piecewise constant, values in [0.5, 1.5].

    Paired with b = log|x - 1/2| this drives the commutator through every
    scale around the singular point of b.
    """
    h = rng_for(seed, "odd").uniform(0.5, 1.5, bins)
    x = GridFunction.from_callable(lambda x: x, L).samples
    d = np.abs(x - 0.5)
    return GridFunction(np.sign(x - 0.5) * h[np.minimum((d * 2 * bins).astype(int), bins - 1)])


def scale_annuli(seed: int, L: int, shrink: int = 2) -> VectorGridFunction:
    """Indicators of I_k minus I_{k+1} for a nested chain of intervals.

    Each I_{k+1} has 2^-shrink times the length of I_k and sits at a random
    offset inside it.
    """
    rng = rng_for(seed, "annuli")
    n = 1 << L
    comps = []
    a, size = 0, n
    while size >= (1 << shrink):
        sub = size >> shrink
        off = a + int(rng.integers(0, size - sub + 1))
        v = np.zeros(n)
        v[a:a + size] = 1.0
        v[off:off + sub] = 0.0
        comps.append(GridFunction(v))
        a, size = off, sub
    return VectorGridFunction(tuple(comps))


def bump_train(seed: int, L: int, count: int = 40) -> GridFunction:
    """Positive indicator bumps with log-uniform widths and heights."""
    rng = rng_for(seed, "bumps")
    n = 1 << L
    v = np.zeros(n)
    for _ in range(count):
        w = int(2 ** rng.uniform(1, 7))
        a = int(rng.integers(0, n - w))
        v[a:a + w] += np.exp(rng.uniform(0, 4))
    return GridFunction(v)


def vector_member(seed: int, L: int, J: int = 4) -> VectorGridFunction:
    rng = rng_for(seed, "vector")
    comps = tuple(indicators(int(rng.integers(1 << 30)), L) for _ in range(J))
    return VectorGridFunction(comps)


def multi_member(seed: int, L: int) -> MultiArg:
    return MultiArg((resolution_free(seed, L), smooth_bump(seed, L)))
