"""Exact evaluators for the diameter bounds.

Everything here is Fraction arithmetic.  The secondary-term coefficient
b in  diam >= k^2 - b k^(3/2)  comes out of a two-case argument with five
parameters (tau, alpha, beta, delta, tau2):

* variance case:  b <= tau + 1/tau - 2 alpha^2 beta^2 delta tau
* smalls case:    b <= max over the triangle x, y >= 0, y + beta^2 x <= beta^2 delta
                  of  tau tau2 - 2 tau (1-x-y) + 2 mu + 1/(tau tau2) - 2 tau w / tau2^2,
                  with mu = 2 (1 + alpha beta) tau and w the linear form from w_eval.

The smalls expression is linear in (x, y), so the maximum is taken over
the three vertices exactly.  ``delta_formula`` returns the delta that makes
the variance case equal to the value at vertex (x, y) = (delta, 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt

from .core import SidonError, SidonSet, normalize, positive_differences, theorem1_holds
from .exact import render_decimal, sqrt_bracket
from .windows import (
    TrimmedSet,
    UPartition,
    s_statistic,
    u_partition,
    v_statistic,
    window_profile,
)

__all__ = [
    "InvalidParams",
    "SingularDenominator",
    "VertexOutsideRegion",
    "Theorem1Bound",
    "theorem1_bound",
    "theorem2_r2_check",
    "toy_bound",
    "toy_variance_constant",
    "BfrParams",
    "REFERENCE_PARAMS",
    "REFERENCE_BOUND",
    "delta_formula",
    "variance_bound",
    "w_coefficients",
    "w_eval",
    "smalls_expression",
    "smalls_vertices",
    "smalls_closed_form",
    "smalls_bound",
    "BoundReport",
    "combined_bound",
    "ideal_tau2_squared",
    "claim1_variance_certificate",
    "claim3_middle_check",
    "claim4_difference_counts",
    "claim5_smalls_certificate",
]


class InvalidParams(SidonError):
    pass


class SingularDenominator(SidonError):
    pass


class VertexOutsideRegion(SidonError):
    pass


# --- lower bound: s_k >= k^2 - 2k^(3/2) + k + sqrt(k) - 1 ----------

@dataclass(frozen=True)
class Theorem1Bound:
    """k^2 + k - 1 - (2k - 1) sqrt(k), kept symbolic for exact comparison."""

    k: int

    @property
    def rational_part(self) -> int:
        return self.k * self.k + self.k - 1

    @property
    def sqrt_coefficient(self) -> int:
        return -(2 * self.k - 1)

    def holds(self, diameter: int) -> bool:
        """diameter >= bound, exactly."""
        return theorem1_holds(self.k, diameter)

    def ceil(self) -> int:
        """Smallest integer diameter that satisfies the bound."""
        k = self.k
        d = max(0, self.rational_part - (2 * k - 1) * (isqrt(k) + 1))
        while not self.holds(d):
            d += 1
        return d

    def bracket(self, scale: int = 10**12) -> tuple[Fraction, Fraction]:
        lo, hi = sqrt_bracket(self.k, scale)
        c = 2 * self.k - 1
        return self.rational_part - c * hi, self.rational_part - c * lo

    def __float__(self) -> float:
        return self.rational_part - (2 * self.k - 1) * self.k**0.5

    def decimal(self, places: int = 6) -> str:
        lo, hi = self.bracket(10 ** (places + 6))
        return render_decimal((lo + hi) / 2, places)


def theorem1_bound(k: int) -> Theorem1Bound:
    if k < 1:
        raise SidonError("k must be >= 1")
    return Theorem1Bound(k)


def _r2_cap(n: int) -> int:
    """Largest integer k with k < sqrt(n) + n^(1/4) + 1/2.

    The right side is never a half-integer except when n is a fourth power,
    where it is an integer plus 1/2; brackets are refined until decisive.
    """
    scale = 10**6
    while True:
        s_lo, s_hi = sqrt_bracket(n, scale)
        r = isqrt(isqrt(n * scale**4))  # floor(n^(1/4) * scale)
        f_lo, f_hi = Fraction(r, scale), Fraction(r + 1, scale)
        lo = s_lo + f_lo + Fraction(1, 2)
        hi = s_hi + f_hi + Fraction(1, 2)
        k_lo = -((-lo.numerator) // lo.denominator) - 1  # largest int < lo
        k_hi = -((-hi.numerator) // hi.denominator) - 1
        if k_lo == k_hi:
            return k_lo
        rt = isqrt(n)
        r4 = isqrt(rt)
        if r4**4 == n:
            x = Fraction(2 * rt + 2 * r4 + 1, 2)
            return -((-x.numerator) // x.denominator) - 1
        scale *= 10**6


def theorem2_r2_check(n: int) -> int:
    """Upper bound on R_2(n), the largest Sidon subset of {1..n}.

    Both the inversion of the s_k lower bound and the cap
    R_2(n) < n^(1/2) + n^(1/4) + 1/2 are computed; the cap must not be
    smaller than the inversion.
    """
    if n < 1:
        raise SidonError("n must be >= 1")
    # bound(k) is increasing in k; largest k with bound(k) <= n - 1
    k = 1
    while Theorem1Bound(k + 1).holds(n - 1):
        k += 1
    cap = _r2_cap(n)
    if k > cap:
        raise AssertionError(f"inconsistent R_2 bounds at n={n}: {k} > {cap}")
    return min(k, cap)


# --- the toy argument ---------------------------------------------------------

def toy_bound(u1=Fraction(1, 16), u2=Fraction(15, 16)) -> Fraction:
    """(6734/729) u1 - 2 u2 + 6361/1944, at the extremal (1/16, 15/16) by default."""
    return Fraction(6734, 729) * Fraction(u1) - 2 * Fraction(u2) + Fraction(6361, 1944)


def toy_variance_constant() -> Fraction:
    return 2 - Fraction(1, 648)


# --- five-parameter argument ---------------------------------------------------

@dataclass(frozen=True)
class BfrParams:
    tau: Fraction
    alpha: Fraction
    beta: Fraction
    delta: Fraction
    tau2: Fraction

    def __post_init__(self):
        for name in ("tau", "alpha", "beta", "delta", "tau2"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        problems = self.problems()
        if problems:
            raise InvalidParams("; ".join(problems))

    def problems(self) -> list[str]:
        out = []
        if not self.tau > 0:
            out.append("tau must be > 0")
        if not 0 < self.alpha < 1:
            out.append("alpha must be in (0,1)")
        if not 0 < self.beta < 1:
            out.append("beta must be in (0,1)")
        if not 0 < self.delta < Fraction(1, 2):
            out.append("delta must be in (0,1/2)")
        if not self.tau2 > 0:
            out.append("tau2 must be > 0")
        return out

    @classmethod
    def with_derived_delta(cls, tau, alpha, beta, tau2) -> "BfrParams":
        return cls(tau, alpha, beta, delta_formula(tau, alpha, beta, tau2), tau2)

    def as_tuple(self) -> tuple[Fraction, ...]:
        return (self.tau, self.alpha, self.beta, self.delta, self.tau2)


REFERENCE_PARAMS = BfrParams(
    tau=Fraction(59, 58),
    alpha=Fraction(80, 319),
    beta=Fraction(195, 356),
    delta=Fraction(398773753333438270, 2448810518987915261),
    tau2=Fraction(51, 223),
)
REFERENCE_BOUND = Fraction(3869247756486775922024264545, 1940405707787319054606925942)


def delta_formula(tau, alpha, beta, tau2) -> Fraction:
    t, a, b, t2 = (Fraction(v) for v in (tau, alpha, beta, tau2))
    num = -t2 * (
        -2 * a**2 * b**2 * t**2
        + 4 * a * b * t**2 * t2
        + 4 * a * b * t**2
        + t**2 * t2**2
        + t**2 * t2
        - 2 * t**2
        - t2
        + 1
    )
    den = 2 * t**2 * (a**2 * b**2 * t2**2 + a**2 * b**2 - a**2 - 2 * a * b + 2 * a + t2**2)
    if den == 0:
        raise SingularDenominator("delta formula denominator vanishes")
    return num / den


def variance_bound(params: BfrParams) -> Fraction:
    t, a, b, d = params.tau, params.alpha, params.beta, params.delta
    return t + 1 / t - 2 * a**2 * b**2 * d * t


def w_coefficients(tau, alpha, beta, tau2) -> tuple[Fraction, Fraction, Fraction]:
    """(constant, y-coefficient, x-coefficient) of the linear form w."""
    a, b, t2 = Fraction(alpha), Fraction(beta), Fraction(tau2)
    const = t2 * (1 - a * b) ** 2
    ycoef = -(1 - a) * (1 + a - 2 * a * b)
    xcoef = -a * (1 - b) * (2 - a - a * b)
    return const, ycoef, xcoef


def w_eval(tau, alpha, beta, tau2, x, y) -> Fraction:
    c, cy, cx = w_coefficients(tau, alpha, beta, tau2)
    return c + cy * Fraction(y) + cx * Fraction(x)


def smalls_expression(params: BfrParams, x, y, mu=None) -> Fraction:
    """Right side of the smalls-case bound at a point (x, y)."""
    t, a, b, t2 = params.tau, params.alpha, params.beta, params.tau2
    x, y = Fraction(x), Fraction(y)
    if mu is None:
        mu = 2 * (1 + a * b) * t
    w = w_eval(t, a, b, t2, x, y)
    return t * t2 - 2 * t * (1 - x - y) + 2 * Fraction(mu) + 1 / (t * t2) - 2 * t * w / t2**2


def smalls_vertices(params: BfrParams) -> dict[tuple[Fraction, Fraction], Fraction]:
    """Smalls expression at the vertices (0,0), (delta,0), (0,beta^2 delta)."""
    d, b = params.delta, params.beta
    verts = [(Fraction(0), Fraction(0)), (d, Fraction(0)), (Fraction(0), b * b * d)]
    return {v: smalls_expression(params, *v) for v in verts}


def smalls_closed_form(params: BfrParams) -> Fraction:
    """The printed closed form; equals the smalls expression at (0, beta^2 delta)."""
    t, a, b, d, t2 = params.as_tuple()
    inner = (
        2 * t2**2 * (2 * a * b + b**2 * d + 1)
        + 2 * (a - 1) * b**2 * d * (a * (2 * b - 1) - 1)
        - 2 * t2 * (a * b - 1) ** 2
        + t2**3
    )
    return (t**2 * inner + t2) / (t * t2**2)


def smalls_bound(params: BfrParams) -> Fraction:
    """Maximum of the smalls expression over the feasible triangle.

    Raises VertexOutsideRegion unless tau2 > x + y on the whole triangle,
    i.e. tau2 > delta.
    """
    if not params.tau2 > params.delta:
        raise VertexOutsideRegion(
            f"tau2={params.tau2} must exceed max(x+y)=delta={params.delta}"
        )
    verts = smalls_vertices(params)
    top = (Fraction(0), params.beta**2 * params.delta)
    closed = smalls_closed_form(params)
    if closed != verts[top]:
        raise AssertionError("closed form disagrees with the vertex evaluation")
    return max(verts.values())


def ideal_tau2_squared(alpha, beta) -> Fraction:
    """tau2^2 at which the two nonzero vertices tie (the smalls form then depends on y + beta^2 x only)."""
    a, b = Fraction(alpha), Fraction(beta)
    num = -2 * a**2 * b**3 + 2 * a**2 * b**2 - a**2 + 2 * a * b**3 - 2 * a * b + 2 * a - b**2
    return num / (b**2 - 1)


@dataclass(frozen=True)
class BoundReport:
    params: BfrParams
    variance: Fraction
    smalls: Fraction
    smalls_vertex: tuple[Fraction, Fraction]
    closed_form: Fraction
    w: tuple[Fraction, Fraction, Fraction]
    mu_bound: Fraction

    @property
    def combined(self) -> Fraction:
        return max(self.variance, self.smalls)

    @property
    def r2_coefficient(self) -> Fraction:
        """Coefficient c in R_2(n) < n^(1/2) + c n^(1/4)."""
        return self.combined / 2

    @property
    def balanced(self) -> bool:
        return self.variance == self.smalls

    def decimal(self, places: int = 12) -> str:
        return render_decimal(self.combined, places)


def combined_bound(params: BfrParams) -> BoundReport:
    var = variance_bound(params)
    verts = smalls_vertices(params)
    smalls = smalls_bound(params)
    vertex = min(v for v, val in verts.items() if val == smalls)
    t, a, b, t2 = params.tau, params.alpha, params.beta, params.tau2
    return BoundReport(
        params=params,
        variance=var,
        smalls=smalls,
        smalls_vertex=vertex,
        closed_form=smalls_closed_form(params),
        w=w_coefficients(t, a, b, t2),
        mu_bound=2 * (1 + a * b) * t,
    )


# --- per-instance certificates on concrete Sidon sets -----------------------------

@dataclass(frozen=True)
class Claim1Certificate:
    hypothesis: bool  # y + beta^2 x >= beta^2 delta
    chain_applicable: bool  # T <= diameter, so the two edge ranges are disjoint
    holds: bool
    V: Fraction
    v_lower: Fraction  # 2 alpha^2 mean^2 T (y + beta^2 x)
    edge_sum: Fraction
    sym_sum: Fraction
    tau_form_applicable: bool  # mean^2 >= tau^2 k
    x: Fraction
    y: Fraction


def claim1_variance_certificate(s: SidonSet, T: int, params: BfrParams, partition: UPartition | None = None) -> Claim1Certificate:
    """Check V >= edge sum >= symmetrized sum >= level sum on measured data."""
    s = s if isinstance(s, SidonSet) else normalize(s)
    prof = window_profile(s, T)
    part = partition or u_partition(s, T, params.alpha, params.beta, profile=prof)
    a, b, d, tau = params.alpha, params.beta, params.delta, params.tau
    x, y = part.x, part.y
    hyp = y + b * b * x >= b * b * d
    V = v_statistic(prof)
    mean = prof.mean
    c = prof.counts
    chain_ok = T <= s.diameter
    N, kT = prof.N, s.k * T
    # squared deviations in units of 1/N^2 (and 1/(2N)^2 for the halves)
    dev = [int(v) * N - kT for v in c[:T].tolist() + c[::-1][:T].tolist()]
    edge = Fraction(sum(e * e for e in dev), N * N)
    sym_dev = [int(v) * N - 2 * kT for v in part.sym_sums.tolist()]
    sym = Fraction(sum(e * e for e in sym_dev), 2 * N * N)
    sizes = part.sizes
    level = 2 * a * a * mean**2 * (sizes[0] + sizes[4]) + 2 * a * a * b * b * mean**2 * (sizes[1] + sizes[3])
    holds = chain_ok and V >= edge >= sym >= level
    if hyp:
        holds = holds and level >= 2 * a * a * b * b * d * mean**2 * T
    tau_ok = mean**2 >= tau**2 * s.k
    return Claim1Certificate(hyp, chain_ok, holds, V, level, edge, sym, tau_ok, x, y)


def claim3_middle_check(trimmed: TrimmedSet, partition: UPartition) -> bool:
    """|M| >= k - 2 (1 + alpha beta) mean - 2, exactly."""
    a, b = partition.alpha, partition.beta
    return len(trimmed.middle) >= trimmed.k - 2 * (1 + a * b) * partition.mean - 2


@dataclass(frozen=True)
class DifferenceCounts:
    pairs: tuple[int, int, int]  # C(|L1|,2)+C(|R1|,2), same for L2/R2, for L1∪L2 / R1∪R2
    distinct: tuple[int, int, int]  # |(L-L) ∪ (R-R)| from difference masks
    max_diff: tuple[int, int, int]
    caps: tuple[Fraction, Fraction, Fraction]  # yT, xT, (x+y)T

    @property
    def ok(self) -> bool:
        return self.pairs == self.distinct and all(m < c or m == 0 for m, c in zip(self.max_diff, self.caps))


def _distinct_diffs(*parts) -> tuple[int, int]:
    seen: set[int] = set()
    top = 0
    for part in parts:
        d = positive_differences(part)
        seen.update(d.tolist())
        if len(d):
            top = max(top, int(d.max()))
    return len(seen), top


def claim4_difference_counts(trimmed: TrimmedSet, partition: UPartition) -> DifferenceCounts:
    """Exact counts of the fragment differences and their size caps."""
    L1, L2, R1, R2 = trimmed.L1, trimmed.L2, trimmed.R1, trimmed.R2
    L12 = tuple(sorted(L1 + L2))
    R12 = tuple(sorted(R1 + R2))
    pairs = (
        comb(len(L1), 2) + comb(len(R1), 2),
        comb(len(L2), 2) + comb(len(R2), 2),
        comb(len(L12), 2) + comb(len(R12), 2),
    )
    d1, m1 = _distinct_diffs(L1, R1)
    d2, m2 = _distinct_diffs(L2, R2)
    d3, m3 = _distinct_diffs(L12, R12)
    T = partition.T
    x, y = partition.x, partition.y
    return DifferenceCounts(pairs, (d1, d2, d3), (m1, m2, m3), (y * T, x * T, (x + y) * T))


@dataclass(frozen=True)
class Claim5Certificate:
    S_middle: int
    fragment_lower: int
    holds: bool


def claim5_smalls_certificate(trimmed: TrimmedSet, T2: int) -> Claim5Certificate:
    """S(M, T2) >= sum of (T2 - r) over fragment differences r < T2.

    Fragment pairs are pairs of the ambient Sidon set outside M, so their
    differences are missing from M - M.
    """
    if T2 < 1:
        raise SidonError("T2 must be >= 1")
    M = trimmed.middle_set() if trimmed.middle else SidonSet(())
    S = s_statistic(M, T2) if M.k else sum(T2 - r for r in range(1, T2))
    L12 = tuple(sorted(trimmed.L1 + trimmed.L2))
    R12 = tuple(sorted(trimmed.R1 + trimmed.R2))
    rs = set(positive_differences(L12, T2 - 1).tolist()) | set(positive_differences(R12, T2 - 1).tolist())
    lower = sum(T2 - r for r in rs)
    return Claim5Certificate(S, lower, S >= lower)
