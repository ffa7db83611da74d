"""Window counts and the exact diameter identity.

For a normalized Sidon set A (min 0, max a_k) and a window length T, the
window counts are A_j = |A ∩ [j-T, j)| for j = 1 .. N with N = a_k + T.
From these come

* V(A, T) = sum_j (A_j - kT/N)^2, an exact rational,
* S(A, T) = sum of (T - r) over 1 <= r < T with r not a difference of A,

and the identity

    diam(A) = k^2 T^2 / (T(T + k - 1) - (2S + V)) - T

which holds exactly for every Sidon set and every T >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt

import numpy as np

from .core import SidonError, SidonSet, diff_mask, normalize, positive_differences
from .exact import ceil_tau_k32

__all__ = [
    "DegenerateDenominator",
    "InvalidLevel",
    "EmptyU3",
    "ZeroVariance",
    "WindowProfile",
    "UPartition",
    "TrimmedSet",
    "window_profile",
    "v_statistic",
    "s_statistic",
    "et_identity_check",
    "et_lower_bound",
    "et_default_T",
    "best_et_bound",
    "pair_count_check",
    "u_partition",
    "trim",
    "edge_variance_fraction",
    "tau_window",
]


class DegenerateDenominator(SidonError):
    pass


class InvalidLevel(SidonError):
    pass


class EmptyU3(SidonError):
    pass


class ZeroVariance(SidonError):
    pass


def _as_set(s) -> SidonSet:
    return s if isinstance(s, SidonSet) else normalize(s)


@dataclass(frozen=True)
class WindowProfile:
    k: int
    T: int
    diameter: int
    counts: np.ndarray = field(repr=False)  # counts[j-1] = A_j

    @property
    def N(self) -> int:
        return self.diameter + self.T

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def mean(self) -> Fraction:
        return Fraction(self.k * self.T, self.N)

    def __getitem__(self, j: int) -> int:
        """A_j for 1 <= j <= N; A_{-j} = A_{N+1-j} for negative j."""
        if j == 0 or abs(j) > self.N:
            raise IndexError(j)
        return int(self.counts[j - 1] if j > 0 else self.counts[self.N + j])

    def square_sum(self) -> int:
        return int(np.dot(self.counts, self.counts))


def window_profile(s: SidonSet, T: int) -> WindowProfile:
    """A_j = |A ∩ [j-T, j)| for j = 1 .. diam + T."""
    s = _as_set(s)
    if T < 1:
        raise SidonError("T must be >= 1")
    a = s.as_array()
    N = s.diameter + T
    j = np.arange(1, N + 1, dtype=np.int64)
    counts = np.searchsorted(a, j, side="left") - np.searchsorted(a, j - T, side="left")
    return WindowProfile(s.k, T, s.diameter, counts.astype(np.int64))


def v_statistic(profile: WindowProfile) -> Fraction:
    """V = sum (A_j - kT/N)^2 = (N sum A_j^2 - (kT)^2) / N, exactly."""
    kT = profile.k * profile.T
    return Fraction(profile.N * profile.square_sum() - kT * kT, profile.N)


def s_statistic(s: SidonSet, T: int) -> int:
    """Sum of (T - r) over 1 <= r <= T-1 missing from the difference set."""
    s = _as_set(s)
    if T < 1:
        raise SidonError("T must be >= 1")
    if T == 1:
        return 0
    mask = diff_mask(s, T - 1)
    r = np.arange(1, T, dtype=np.int64)
    return int((T - r)[~mask.bits[1:]].sum())


def et_identity_check(s: SidonSet, T: int) -> Fraction:
    """diam - (k^2 T^2 / (T(T+k-1) - (2S+V)) - T); zero for every Sidon set."""
    s = _as_set(s)
    if s.k < 1:
        raise SidonError("identity needs k >= 1")
    prof = window_profile(s, T)
    V = v_statistic(prof)
    S = s_statistic(s, T)
    k = s.k
    denom = T * (T + k - 1) - (2 * S + V)
    if denom == 0:
        raise DegenerateDenominator(f"T(T+k-1) = 2S+V for k={k}, T={T}")
    return s.diameter - (Fraction(k * k * T * T) / denom - T)


def pair_count_check(s: SidonSet, T: int) -> tuple[int, int]:
    """(sum_j C(A_j, 2), sum_{r in A-A, r<T} (T - r)); equal for Sidon sets.

    Each pair at distance r < T lies together in exactly T - r windows.
    """
    s = _as_set(s)
    prof = window_profile(s, T)
    vals, mult = np.unique(prof.counts, return_counts=True)
    lhs = sum(comb(int(v), 2) * int(m) for v, m in zip(vals, mult))
    d = positive_differences(s.elements, T - 1)
    rhs = int((T - d).sum()) if len(d) else 0
    return lhs, rhs


def et_lower_bound(k: int, T: int) -> Fraction:
    """k^2 T / (T + k - 1) - T.  Not clipped: for k = 1 this is 1 - T."""
    if k < 1 or T < 1:
        raise SidonError("k and T must be >= 1")
    return Fraction(k * k * T, T + k - 1) - T


def et_default_T(k: int) -> int:
    """T = k^(3/2) - k + eps with eps in (0, 1], i.e. floor(k^(3/2)) - k + 1."""
    return isqrt(k**3) - k + 1


def best_et_bound(k: int, radius: int = 10, lo: int | None = None, hi: int | None = None) -> tuple[int, Fraction]:
    """Maximize the inequality over integer T near the default choice.

    With ``lo``/``hi`` the whole range [lo, hi] is scanned instead.
    Ties go to the smallest T.
    """
    if lo is None:
        t0 = et_default_T(k)
        lo, hi = max(1, t0 - radius), t0 + radius
    best = None
    for T in range(lo, hi + 1):
        v = et_lower_bound(k, T)
        if best is None or v > best[1]:
            best = (T, v)
    return best


def tau_window(k: int, tau: Fraction) -> int:
    """T = ceil(tau k^(3/2)) via integer square roots."""
    return ceil_tau_k32(Fraction(tau), k)


@dataclass(frozen=True)
class UPartition:
    """Classification of j in [1, T] by the symmetrized count (A_j + A_{-j})/2."""

    T: int
    alpha: Fraction
    beta: Fraction
    mean: Fraction
    sym_sums: np.ndarray = field(repr=False)  # A_j + A_{-j}, j = 1..T
    labels: np.ndarray = field(repr=False)  # class 1..5 per j

    @property
    def sizes(self) -> tuple[int, int, int, int, int]:
        return tuple(int(np.count_nonzero(self.labels == i)) for i in range(1, 6))

    @property
    def u(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self.T) for n in self.sizes)

    @property
    def x(self) -> Fraction:
        u = self.u
        return u[1] + u[3]

    @property
    def y(self) -> Fraction:
        u = self.u
        return u[0] + u[4]

    def members(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.labels == i) + 1

    def max_of(self, i: int) -> int | None:
        m = self.members(i)
        return int(m[-1]) if len(m) else None

    @property
    def z(self) -> int | None:
        return self.max_of(3)

    def symmetrized(self) -> list[Fraction]:
        return [Fraction(int(v), 2) for v in self.sym_sums]


def u_partition(s: SidonSet, T: int, alpha, beta, profile: WindowProfile | None = None) -> UPartition:
    """Five-way split of [1, T] at levels (1 -+ alpha) and (1 -+ alpha*beta) times the mean.

    Each class is a half-open range (lower, upper] of the symmetrized count,
    so a value exactly at (1+alpha*beta) * mean lands in U3.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if not (0 < alpha < 1 and 0 < beta < 1):
        raise InvalidLevel(f"alpha and beta must lie in (0, 1); got {alpha}, {beta}")
    s = _as_set(s)
    prof = profile if profile is not None else window_profile(s, T)
    if prof.T != T:
        raise SidonError("profile computed for a different T")
    mean = prof.mean
    c = prof.counts
    sym = c[:T] + c[::-1][:T]
    # v/2 <= level*mean  <=>  v <= floor(2*level*mean) for integer v
    cuts = [
        (2 * lvl * mean).__floor__()
        for lvl in (1 - alpha, 1 - alpha * beta, 1 + alpha * beta, 1 + alpha)
    ]
    labels = 1 + np.searchsorted(np.asarray(cuts, dtype=np.int64), sym, side="left")
    return UPartition(T, alpha, beta, mean, sym.astype(np.int64), labels.astype(np.int8))


@dataclass(frozen=True)
class TrimmedSet:
    """The middle M = A ∩ (z, a_k - z) plus the edge fragments."""

    k: int
    z: int
    middle: tuple[int, ...]  # original coordinates
    L1: tuple[int, ...]
    L2: tuple[int, ...]
    R1: tuple[int, ...]
    R2: tuple[int, ...]
    left_cut: tuple[int, ...]  # A ∩ [0, z]
    right_cut: tuple[int, ...]  # A ∩ [a_k - z, a_k]

    @property
    def removed(self) -> int:
        """k - |M|; the trimming loss mu*sqrt(k)."""
        return self.k - len(self.middle)

    @property
    def mu_squared(self) -> Fraction:
        return Fraction(self.removed**2, self.k)

    def mu_at_most(self, bound) -> bool:
        """removed <= bound * sqrt(k), exactly."""
        bound = Fraction(bound)
        if bound < 0:
            return False
        return self.removed**2 * bound.denominator**2 <= bound.numerator**2 * self.k

    def middle_set(self) -> SidonSet:
        return normalize(self.middle)


def trim(s: SidonSet, partition: UPartition) -> TrimmedSet:
    s = _as_set(s)
    z = partition.z
    if z is None:
        raise EmptyU3("U3 is empty; nothing to trim at")
    ak = s.diameter
    el = s.elements
    elset = set(el)

    def pick(points) -> tuple[int, ...]:
        return tuple(sorted(p for p in points if p in elset))

    U1 = partition.members(1).tolist()
    U2 = partition.members(2).tolist()
    L1 = pick(j - 1 for j in U1)
    L2 = pick(j - 1 for j in U2)
    R1 = pick(ak + 1 - j for j in U1)
    R2 = pick(ak + 1 - j for j in U2)
    middle = tuple(a for a in el if z < a < ak - z)
    parts = [set(middle), set(L1), set(L2), set(R1), set(R2)]
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if parts[i] & parts[j]:
                raise SidonError("trim fragments overlap; T is too large for this diameter")
    left_cut = tuple(a for a in el if a <= z)
    right_cut = tuple(a for a in el if a >= ak - z)
    return TrimmedSet(s.k, z, middle, L1, L2, R1, R2, left_cut, right_cut)


def edge_variance_fraction(s: SidonSet, T: int) -> Fraction:
    """Share of V coming from the edge windows j <= T and j > a_k.

    The two edge ranges mirror each other under j -> N + 1 - j.
    """
    s = _as_set(s)
    prof = window_profile(s, T)
    V = v_statistic(prof)
    if V == 0:
        raise ZeroVariance("V = 0; edge fraction undefined")
    N, kT = prof.N, s.k * T
    j = np.arange(1, N + 1)
    edge = (j <= T) | (j > s.diameter)
    a = prof.counts[edge]
    # sum over edge of (A N - kT)^2, expanded so int64 never overflows
    sq = int(np.dot(a, a))
    lin = int(a.sum())
    scaled = N * N * sq - 2 * N * kT * lin + int(edge.sum()) * kT * kT
    return Fraction(scaled, N * N) / V
