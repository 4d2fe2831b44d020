"""Sparse median-oscillation decomposition on a dyadic cube.

Stopping rule, applied to a cube Q (starting from Q0):

    Omega(Q) = {x in Q : |f(x) - m_f(Q)| > 2 w_{1/4}(f; Q)}

has measure at most |Q|/4.  The next generation inside Q consists of the
maximal proper dyadic subcubes P with |P ∩ Omega(Q)| >= |P|/2; their total
measure is at most 2|Omega(Q)| <= |Q|/2.  Every cell of Omega(Q) is covered
because a single cell meeting Omega is fully inside it.

For x in a chain Q0 ⊃ Q^1 ⊃ ... ⊃ Q^K one gets
    |m(Q^k) - m(Q^k^)| <= 2 w_{1/8}(Q^k^)        (Q^k is half of its parent)
    |m(Q^k^) - m(Q^{k-1})| <= 2 w_{1/4}(Q^{k-1})  (Q^k^ is mostly outside Omega)
    w_{1/4}(Q^k) <= w_{1/8}(Q^k^)
which sums to the pointwise bound with constants 4 and 4.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .dyadic import ROOT, CellSet, DyadicIndex, GridFunction
from .errors import InvalidCubeError, ShapeError
from .rearrangement import local_sharp_maximal, lower_median, oscillation_values

THRESHOLD_FACTOR = 2.0
THRESHOLD_LAMBDA = 0.25
SUM_LAMBDA = 0.125
SHARP_LAMBDA = 0.25


@dataclass
class SparseFamily:
    root: DyadicIndex
    resolution: int
    levels: list = field(default_factory=list)

    def __post_init__(self):
        self.levels = [sorted(gen) for gen in self.levels if gen]

    @property
    def cubes(self) -> list:
        return [Q for gen in self.levels for Q in gen]

    def __len__(self):
        return sum(len(g) for g in self.levels)

    @property
    def omega(self) -> list:
        out = []
        for gen in self.levels:
            m = np.zeros(1 << self.resolution, dtype=bool)
            for Q in gen:
                m[Q.cells(self.resolution)] = True
            out.append(CellSet(m))
        return out

    @property
    def ejk(self) -> list:
        """E_j^k = Q_j^k minus Omega_{k+1}, listed per generation."""
        om = self.omega
        out = []
        for k, gen in enumerate(self.levels):
            nxt = om[k + 1] if k + 1 < len(om) else CellSet.empty(self.resolution)
            out.append([CellSet.of_cube(Q, self.resolution) - nxt for Q in gen])
        return out

    def to_json(self) -> str:
        return json.dumps({"root": self.root.as_pair(), "resolution": self.resolution,
                           "levels": [[Q.as_pair() for Q in gen] for gen in self.levels]})

    @classmethod
    def from_json(cls, text: str) -> SparseFamily:
        d = json.loads(text)
        return cls(DyadicIndex(*d["root"]), int(d["resolution"]),
                   [[DyadicIndex(*p) for p in gen] for gen in d["levels"]])


def _select(mask: np.ndarray, Q: DyadicIndex, L: int) -> list:
    """Maximal proper dyadic subcubes of Q at least half covered by ``mask``."""
    n = mask.size
    covered = np.zeros(n, dtype=bool)
    picked = []
    for k in range(1, L - Q.level + 1):
        size = n >> k
        counts = mask.reshape(1 << k, size).sum(axis=1)
        free = ~covered.reshape(1 << k, size).any(axis=1)
        for j in np.flatnonzero((2 * counts >= size) & free):
            picked.append(DyadicIndex(Q.level + k, (Q.position << k) + int(j)))
            covered[j * size:(j + 1) * size] = True
    return picked


def _exceptional(vals: np.ndarray) -> np.ndarray:
    m = lower_median(vals)
    w = oscillation_values(vals, THRESHOLD_LAMBDA)
    return np.abs(vals - m) > THRESHOLD_FACTOR * w


def lerner_decompose(f: GridFunction, Q0: DyadicIndex = ROOT) -> SparseFamily:
    L = f.resolution
    if Q0.level > L:
        raise InvalidCubeError(f"cube level {Q0.level} exceeds resolution {L}")
    levels = []
    current = [Q0]
    while current:
        nxt = []
        for Q in current:
            if Q.level == L:
                continue
            vals = f.restrict(Q)
            nxt.extend(_select(_exceptional(vals), Q, L))
        if nxt:
            levels.append(nxt)
        current = nxt
    return SparseFamily(Q0, L, levels)


@dataclass
class Check:
    name: str
    passed: bool
    worst: float
    detail: str = ""


@dataclass
class FamilyReport:
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list:
        return [c.name for c in self.checks if not c.passed]


def verify_family(f: GridFunction, fam: SparseFamily) -> FamilyReport:
    """Exact cell-count checks of the structural properties."""
    L = fam.resolution
    if f.resolution != L:
        raise ShapeError("family and function resolutions differ")
    root = CellSet.of_cube(fam.root, L)
    checks = []

    inside = all(fam.root.contains(Q) and Q != fam.root for Q in fam.cubes)
    checks.append(Check("inside_root", inside, 0.0))

    overlap = 0
    for gen in fam.levels:
        cnt = np.zeros(1 << L, dtype=np.int64)
        for Q in gen:
            cnt[Q.cells(L)] += 1
        overlap = max(overlap, int(cnt.max()))
    checks.append(Check("disjoint_per_level", overlap <= 1, float(overlap)))

    om = fam.omega
    nested = all(om[k + 1].issubset(om[k]) for k in range(len(om) - 1))
    nested = nested and all(o.issubset(root) for o in om)
    checks.append(Check("nested_omega", nested, 0.0))

    worst_iv, ok_iv = 0.0, True
    for k, gen in enumerate(fam.levels):
        if k + 1 >= len(om):
            break
        for Q in gen:
            inner = int(om[k + 1].membership[Q.cells(L)].sum())
            size = 1 << (L - Q.level)
            worst_iv = max(worst_iv, inner / size)
            ok_iv &= 2 * inner <= size
    checks.append(Check("half_density", ok_iv, worst_iv))

    worst_e, ok_e = 0.0, True
    used = np.zeros(1 << L, dtype=np.int64)
    for gen, es in zip(fam.levels, fam.ejk):
        for Q, E in zip(gen, es):
            size = 1 << (L - Q.level)
            worst_e = max(worst_e, size / max(E.count, 1e-300))
            ok_e &= size <= 2 * E.count
            used += E.membership
    checks.append(Check("E_half_measure", ok_e, worst_e))
    checks.append(Check("E_disjoint", int(used.max(initial=0)) <= 1, float(used.max(initial=0))))
    return FamilyReport(checks)


@dataclass
class BoundReport:
    max_excess: float
    violations: int
    tol: float
    slack: np.ndarray

    @property
    def ok(self) -> bool:
        return self.violations == 0


def sparse_sum(f: GridFunction, fam: SparseFamily, lam: float = SUM_LAMBDA) -> np.ndarray:
    """sum over the family of w_lam(f; parent(Q)) on the cells of Q."""
    out = np.zeros(f.n)
    for Q in fam.cubes:
        out[Q.cells(f.resolution)] += oscillation_values(f.restrict(Q.parent), lam)
    return out


def pointwise_bound_check(f: GridFunction, Q0: DyadicIndex, fam: SparseFamily,
                          c1: float = 4.0, c2: float = 4.0) -> BoundReport:
    """|f - m_f(Q0)| <= c1 M#_{1/4;Q0} f + c2 sum w_{1/8}(f; Q^) chi_Q on Q0."""
    sl = Q0.cells(f.resolution)
    lhs = np.abs(f.samples[sl] - lower_median(f.samples[sl]))
    rhs = (c1 * local_sharp_maximal(f, Q0, SHARP_LAMBDA).samples[sl]
           + c2 * sparse_sum(f, fam)[sl])
    tol = 1e-12 * max(1.0, float(np.abs(f.samples[sl]).max()))
    excess = lhs - rhs
    return BoundReport(float(excess.max()), int((excess > tol).sum()), tol, rhs - lhs)
