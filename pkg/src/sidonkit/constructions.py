"""Singer, Bose and Ruzsa modular Sidon sets.

=========  ==========  =============  ===============================
name       size        modulus        field
=========  ==========  =============  ===============================
singer     q + 1       q^2 + q + 1    GF(q^3), perfect difference set
bose       q           q^2 - 1        GF(q^2)
ruzsa      p - 1       p^2 - p        GF(p), CRT
=========  ==========  =============  ===============================

Every construction re-verifies its output and raises ConstructionFailed
rather than return an unverified set.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .core import SidonError, SidonSet, is_modular_sidon, normalize
from .fields import GF, FieldSpec, NotPrime, find_primitive_element, is_prime, prime_power, smallest_irreducible

__all__ = [
    "CapExceeded",
    "ConstructionFailed",
    "NotCoprime",
    "ModularSidonSet",
    "singer",
    "bose",
    "ruzsa",
    "construct",
    "is_perfect_difference_set",
    "prime_powers",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 512


class CapExceeded(SidonError):
    pass


class ConstructionFailed(SidonError):
    pass


class NotCoprime(SidonError):
    pass


@dataclass(frozen=True)
class ModularSidonSet:
    residues: tuple[int, ...]  # sorted, distinct, in [0, m)
    m: int
    construction: str = ""
    q: int = 0
    generator: int | None = None
    modulus_poly: tuple[int, ...] | None = None

    def __post_init__(self):
        if list(self.residues) != sorted(set(self.residues)):
            raise SidonError("residues must be sorted and distinct")
        if self.residues and not (0 <= self.residues[0] and self.residues[-1] < self.m):
            raise SidonError("residues out of range")

    def __len__(self) -> int:
        return len(self.residues)

    def dilate(self, c: int) -> "ModularSidonSet":
        if gcd(c, self.m) != 1:
            raise NotCoprime(f"gcd({c}, {self.m}) != 1")
        res = tuple(sorted(c * a % self.m for a in self.residues))
        return ModularSidonSet(res, self.m, self.construction, self.q, self.generator, self.modulus_poly)

    def translate(self, t: int) -> "ModularSidonSet":
        res = tuple(sorted((a + t) % self.m for a in self.residues))
        return ModularSidonSet(res, self.m, self.construction, self.q, self.generator, self.modulus_poly)

    def canonical(self) -> tuple[int, ...]:
        """Lexicographically smallest translate of the set or of its negation."""
        m = self.m
        best = None
        for sign in (1, -1):
            vals = sorted(sign * a % m for a in self.residues)
            for a in vals:
                cand = tuple(sorted((v - a) % m for v in vals))
                if best is None or cand < best:
                    best = cand
        return best or ()

    def lift(self) -> SidonSet:
        """The residues read as integers; still Sidon."""
        return normalize(self.residues)

    def provenance(self) -> str:
        return f"{self.construction} q={self.q} m={self.m}"


def is_perfect_difference_set(residues, m: int) -> bool:
    """Every nonzero residue mod m is an ordered difference exactly once."""
    arr = np.asarray(list(residues), dtype=np.int64)
    n = len(arr)
    if n * (n - 1) != m - 1:
        return False
    d = (arr[:, None] - arr[None, :]) % m
    d = d[~np.eye(n, dtype=bool)]
    hits = np.bincount(d, minlength=m)
    return bool(hits[0] == 0 and np.all(hits[1:] == 1))


def _check_cap(q: int, cap: int):
    if q > cap:
        raise CapExceeded(f"q={q} exceeds cap {cap}")


def _field(p: int, degree: int, modulus) -> GF:
    poly = tuple(modulus) if modulus is not None else smallest_irreducible(p, degree)
    spec = FieldSpec(p, degree, poly)
    return GF(spec)


def _generator(F: GF, generator: int | None) -> int:
    if generator is None:
        return find_primitive_element(F)
    if not F.is_primitive(generator):
        raise SidonError(f"{generator} is not a primitive element of GF({F.q})")
    return generator


def _verified(res: list[int], m: int, size: int, name: str, **prov) -> ModularSidonSet:
    res = sorted(set(res))
    if len(res) != size:
        raise ConstructionFailed(f"{name}: expected {size} residues, got {len(res)}")
    if not is_modular_sidon(res, m):
        raise ConstructionFailed(f"{name}: output is not Sidon mod {m}")
    return ModularSidonSet(tuple(res), m, name, **prov)


def singer(q: int, modulus=None, generator: int | None = None, cap: int = DEFAULT_CAP) -> ModularSidonSet:
    """Perfect difference set of size q+1 modulo q^2+q+1.

    Logs, modulo q^2+q+1, of the nonzero points of the plane spanned by 1
    and g inside GF(q^3).  ``modulus`` is a degree-3n polynomial over
    GF(p) defining GF(q^3) directly; GF(q) is found as its subfield.
    """
    p, n = prime_power(q)
    _check_cap(q, cap)
    F = _field(p, 3 * n, modulus)
    g = _generator(F, generator)
    m = q * q + q + 1
    sub = F.subfield(q)
    plane = {F.add(a, F.mul(b, g)) for a in sub for b in sub}
    plane.discard(0)
    res, h = [], 1
    for i in range(m):
        if h in plane:
            res.append(i)
        h = F.mul(h, g)
    out = _verified(res, m, q + 1, "singer", q=q, generator=g, modulus_poly=F.spec.modulus)
    if not is_perfect_difference_set(out.residues, m):
        raise ConstructionFailed(f"singer q={q}: not a perfect difference set")
    return out


def bose(q: int, modulus=None, generator: int | None = None, cap: int = DEFAULT_CAP) -> ModularSidonSet:
    """{a in [0, q^2-1) : g^a - g lies in GF(q)} for g primitive in GF(q^2)."""
    p, n = prime_power(q)
    _check_cap(q, cap)
    F = _field(p, 2 * n, modulus)
    g = _generator(F, generator)
    m = q * q - 1
    sub = F.subfield(q)
    res, h = [], 1
    for a in range(m):
        if F.sub(h, g) in sub:
            res.append(a)
        h = F.mul(h, g)
    return _verified(res, m, q, "bose", q=q, generator=g, modulus_poly=F.spec.modulus)


def ruzsa(p: int, generator: int | None = None, cap: int = DEFAULT_CAP) -> ModularSidonSet:
    """x_i = CRT(i mod p-1, g^i mod p) for i = 1 .. p-1, modulo p^2 - p."""
    if not is_prime(p) or p == 2:
        raise NotPrime(f"ruzsa needs an odd prime, got {p}")
    _check_cap(p, cap)
    F = GF(FieldSpec(p, 1, (0, 1)))
    g = _generator(F, generator)
    m = p * p - p
    e1 = p  # ≡ 1 mod p-1, ≡ 0 mod p
    e2 = (p - 1) ** 2 % m  # ≡ 0 mod p-1, ≡ 1 mod p
    res = [(i * e1 + pow(g, i, p) * e2) % m for i in range(1, p)]
    return _verified(res, m, p - 1, "ruzsa", q=p, generator=g)


CONSTRUCTIONS = {"singer": singer, "bose": bose, "ruzsa": ruzsa}


def construct(name: str, q: int, **kw) -> ModularSidonSet:
    try:
        fn = CONSTRUCTIONS[name]
    except KeyError:
        raise SidonError(f"unknown construction {name!r}") from None
    return fn(q, **kw)


def prime_powers(lo: int, hi: int) -> list[int]:
    out = []
    for q in range(max(lo, 2), hi + 1):
        try:
            prime_power(q)
        except SidonError:
            continue
        out.append(q)
    return out
