"""Exact-arithmetic helpers: rational parsing/rendering and sqrt brackets."""

from __future__ import annotations

from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from math import isqrt

__all__ = ["parse_fraction", "render_decimal", "render_exact", "sqrt_bracket", "ceil_sqrt", "ceil_tau_k32", "sqrt_ratio_decimal"]


def parse_fraction(text: str) -> Fraction:
    """Parse "59/58", "0.25" or "3" into an exact Fraction."""
    return Fraction(text.strip())


def render_decimal(value: Fraction | int, places: int = 12) -> str:
    """Fixed-point rendering with round-half-even; exact for rationals."""
    value = Fraction(value)
    scaled = value * 10**places
    q, r = divmod(scaled.numerator, scaled.denominator)
    twice = 2 * r
    if twice > scaled.denominator or (twice == scaled.denominator and q % 2 == 1):
        q += 1
    sign = "-" if q < 0 else ""
    q = abs(q)
    if places == 0:
        return f"{sign}{q}"
    digits = str(q).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def render_exact(value: Fraction | int) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def sqrt_bracket(n: int, scale: int = 1) -> tuple[Fraction, Fraction]:
    """Rationals lo <= sqrt(n) < hi with hi - lo = 1/scale."""
    if n < 0:
        raise ValueError("negative radicand")
    s = isqrt(n * scale * scale)
    return Fraction(s, scale), Fraction(s + 1, scale)


def ceil_sqrt(n: int) -> int:
    s = isqrt(n)
    return s if s * s == n else s + 1


def ceil_tau_k32(tau: Fraction, k: int) -> int:
    """ceil(tau * k^(3/2)) exactly: smallest integer T with T >= tau*sqrt(k^3)."""
    tau = Fraction(tau)
    if tau <= 0:
        raise ValueError("tau must be positive")
    # T >= p/q sqrt(k^3)  <=>  (qT)^2 >= p^2 k^3
    p, q = tau.numerator, tau.denominator
    t = isqrt(p * p * k**3) // q
    while (q * t) ** 2 < p * p * k**3:
        t += 1
    while t > 0 and (q * (t - 1)) ** 2 >= p * p * k**3:
        t -= 1
    return t


def sqrt_ratio_decimal(num: int, den: int, k: int, places: int = 6) -> str:
    """Render num*sqrt(k)/den to ``places`` decimals, round-half-even.

    Uses an integer square root with guard digits; exact when k is a square.
    """
    r = isqrt(k)
    if r * r == k:
        return render_decimal(Fraction(num * r, den), places)
    guard = 12
    s = isqrt(k * 10 ** (2 * (places + guard)))  # floor(sqrt(k) * 10^(places+guard))
    # irrational value, so it never lands on a rounding tie
    with localcontext() as ctx:
        ctx.prec = 80
        v = Decimal(num * s) / Decimal(den) / Decimal(10) ** (places + guard)
        # floor(sqrt) under-approximates |v| by < |num|/den * 10^-(places+guard)
        if num < 0:
            v -= Decimal(-num) / Decimal(den) / Decimal(10) ** (places + guard) / 2
        else:
            v += Decimal(num) / Decimal(den) / Decimal(10) ** (places + guard) / 2
        return str(v.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))
