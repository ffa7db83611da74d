"""Small finite fields GF(p^n) for the modular Sidon constructions.

Elements are ints in [0, q): the base-p digits are the coefficients of the
polynomial representative, lowest degree first.  That integer order is
also the order used to pick the "smallest" primitive element.
Polynomials over GF(p) are coefficient lists, lowest degree first, with no
trailing zeros (``[]`` is the zero polynomial).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import SidonError

__all__ = [
    "NotPrimePower",
    "NotPrime",
    "is_prime",
    "prime_power",
    "prime_factors",
    "is_irreducible",
    "smallest_irreducible",
    "FieldSpec",
    "GF",
    "find_primitive_element",
]


class NotPrimePower(SidonError):
    pass


class NotPrime(SidonError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, n) with q = p**n, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    n, r = 0, q
    while r % p == 0:
        r //= p
        n += 1
    if r != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, n


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over GF(p) -------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = list(a)
    df = len(f) - 1
    inv = pow(f[-1], -1, p)
    while len(a) - 1 >= df and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_powmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(base, f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin-style test: gcd(f, x^(p^i) - x) = 1 for i <= deg/2."""
    f = _trim(list(f))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(n // 2):
        h = _poly_powmod(h, p, f, p)
        g = _poly_gcd(f, _poly_sub(h, x, p), p)
        if len(g) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Monic degree-n irreducible, smallest in lexicographic coefficient order."""
    for low in range(p**n):
        coeffs = [(low // p**i) % p for i in range(n)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # cannot happen


# --- fields ------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    p: int
    n: int
    modulus: tuple[int, ...]  # monic, lowest degree first

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if len(self.modulus) != self.n + 1 or self.modulus[-1] != 1:
            raise SidonError("modulus must be monic of degree n")
        if not is_irreducible(list(self.modulus), self.p):
            raise SidonError(f"modulus {self.modulus} is reducible over GF({self.p})")

    @property
    def q(self) -> int:
        return self.p**self.n

    @classmethod
    def default(cls, p: int, n: int = 1) -> "FieldSpec":
        return cls(p, n, smallest_irreducible(p, n))


class GF:
    """Arithmetic in GF(p^n) on integer-encoded elements."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p, self.n, self.q = spec.p, spec.n, spec.q
        self._mod = list(spec.modulus)
        if self.p == 2:
            self._modint = sum(c << i for i, c in enumerate(spec.modulus))

    @classmethod
    def of_order(cls, q: int) -> "GF":
        p, n = prime_power(q)
        return cls(FieldSpec.default(p, n))

    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        while a:
            out.append(a % p)
            a //= p
        return out

    def from_digits(self, d) -> int:
        v = 0
        for c in reversed(list(d)):
            v = v * self.p + c
        return v

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        da, db = self.digits(a), self.digits(b)
        n = max(len(da), len(db))
        da += [0] * (n - len(da))
        db += [0] * (n - len(db))
        return self.from_digits((x + y) % self.p for x, y in zip(da, db))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.from_digits((-c) % self.p for c in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> self.n & 1:
                    a ^= self._modint
            return r
        prod = _poly_mul(self.digits(a), self.digits(b), self.p)
        return self.from_digits(_poly_mod(prod, self._mod, self.p))

    def pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def order(self, a: int) -> int:
        if a == 0:
            raise SidonError("0 has no multiplicative order")
        n = self.q - 1
        for r in prime_factors(self.q - 1):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    def is_primitive(self, a: int) -> bool:
        if a == 0:
            return False
        return all(self.pow(a, (self.q - 1) // r) != 1 for r in prime_factors(self.q - 1))

    def subfield(self, order: int) -> frozenset[int]:
        """The unique subfield with ``order`` elements, as a set of encodings."""
        if (self.q - 1) % (order - 1):
            raise SidonError(f"GF({self.q}) has no subfield of order {order}")
        g = find_primitive_element(self)
        h = self.pow(g, (self.q - 1) // (order - 1))
        out, x = {0}, 1
        for _ in range(order - 1):
            out.add(x)
            x = self.mul(x, h)
        return frozenset(out)


def find_primitive_element(field: GF | FieldSpec) -> int:
    """Smallest (by integer encoding) element of multiplicative order q - 1."""
    F = field if isinstance(field, GF) else GF(field)
    return _primitive_cached(F.spec)


@lru_cache(maxsize=None)
def _primitive_cached(spec: FieldSpec) -> int:
    F = GF(spec)
    for a in range(1, F.q):
        if F.is_primitive(a):
            return a
    raise AssertionError("multiplicative group is cyclic")  # cannot happen
