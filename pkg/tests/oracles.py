"""Brute-force reference implementations, written independently of sidonkit."""

from fractions import Fraction
from itertools import combinations


def sidon(xs):
    xs = list(xs)
    if len(set(xs)) != len(xs):
        return False
    d = [abs(a - b) for a, b in combinations(xs, 2)]
    return len(d) == len(set(d))


def counts(xs, T):
    xs = [a - min(xs) for a in xs]
    N = max(xs) + T
    return [sum(1 for a in xs if j - T <= a < j) for j in range(1, N + 1)]


def V(xs, T):
    c = counts(xs, T)
    N, kT = len(c), len(xs) * T
    # scaled integers: V N^2 = sum (A_j N - kT)^2
    return Fraction(sum((a * N - kT) ** 2 for a in c), N * N)


def S(xs, T):
    diffs = {abs(a - b) for a, b in combinations(xs, 2)}
    return sum(T - r for r in range(1, T) if r not in diffs)


def identity_rhs(xs, T):
    k = len(xs)
    return Fraction(k * k * T * T) / (T * (T + k - 1) - (2 * S(xs, T) + V(xs, T))) - T


def modular_sidon(res, m):
    d = [(a - b) % m for a in res for b in res if a != b]
    return len(d) == len(set(d))


def perfect(res, m):
    d = sorted((a - b) % m for a in res for b in res if a != b)
    return d == list(range(1, m))


def min_diameter(k):
    """Smallest d admitting a k-subset {0 < ... < d} that is Sidon."""
    if k == 1:
        return 0
    d = k - 1
    while True:
        for mid in combinations(range(1, d), k - 2):
            if sidon((0, *mid, d)):
                return d
        d += 1


def primitive_root(p):
    for g in range(1, p):
        x, seen = 1, set()
        for _ in range(p - 1):
            x = x * g % p
            seen.add(x)
        if len(seen) == p - 1:
            return g


def greedy_sidon_subset(xs):
    """Keep elements (in the given order) that preserve the Sidon property."""
    out = []
    for a in xs:
        if a not in out and sidon(out + [a]):
            out.append(a)
    return sorted(out)
