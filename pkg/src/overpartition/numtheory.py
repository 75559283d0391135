"""Exact integer number theory: Jacobi symbols, CRT, factorization of odd
moduli, square roots modulo odd prime powers, and the Dedekind/Salié sums
used as test oracles by the exponential-sum evaluator.

Everything here is exact (integers and Fractions) except salie_sum, which is
a numeric oracle and says so.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import gmpy2


# ---------------------------------------------------------------------------
# smallest-prime-factor sieve, grown on demand
#
# factorize_odd is called for every odd k up to ~10^5 in a single series
# evaluation, so factoring must be table-driven in that range.  The sieve is
# built under a lock and only replaced wholesale, so concurrent readers are
# safe once they grab a reference.

_spf_lock = threading.Lock()
_spf: list[int] = [0, 1]


def _spf_table(limit: int) -> list[int]:
    global _spf
    table = _spf
    if limit < len(table):
        return table
    with _spf_lock:
        table = _spf
        if limit < len(table):
            return table
        size = max(limit + 1, 2 * len(table), 1 << 10)
        new = list(range(size))
        for p in range(2, math.isqrt(size - 1) + 1):
            if new[p] == p:  # p prime
                for multiple in range(p * p, size, p):
                    if new[multiple] == multiple:
                        new[multiple] = p
        _spf = new
        return new


@dataclass(frozen=True)
class PrimePowerFactorization:
    """Ordered prime-power decomposition of an odd positive integer."""

    factors: tuple[tuple[int, int], ...]  # (p, alpha), ascending in p
    value: int

    def __post_init__(self):
        prod = 1
        for p, alpha in self.factors:
            prod *= p ** alpha
        if prod != self.value:
            raise ValueError(f"factors do not multiply to {self.value}")


def factorize_odd(k: int) -> PrimePowerFactorization:
    """Factor an odd positive integer into prime powers."""
    if k < 1 or k % 2 == 0:
        raise ValueError(f"modulus must be odd and positive, got {k}")
    table = _spf_table(k) if k < 1 << 20 else _spf_table(1 << 20)
    factors = []
    rest = k
    if rest < len(table):
        while rest > 1:
            p = table[rest]
            alpha = 0
            while rest % p == 0:
                rest //= p
                alpha += 1
            factors.append((p, alpha))
    else:
        # trial division; k never exceeds the truncation point of the series,
        # so sqrt(k) stays tiny
        p = 3
        while p * p <= rest:
            if rest % p == 0:
                alpha = 0
                while rest % p == 0:
                    rest //= p
                    alpha += 1
                factors.append((p, alpha))
            p += 2
        if rest > 1:
            factors.append((rest, 1))
    factors.sort()
    return PrimePowerFactorization(tuple(factors), k)


def jacobi(a: int, k: int) -> int:
    """Jacobi symbol (a|k) for odd positive k; (a|1) = 1."""
    if k < 1 or k % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive k, got {k}")
    return int(gmpy2.jacobi(a, k))


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """The residue mod m1*m2 that is r1 mod m1 and r2 mod m2."""
    if math.gcd(m1, m2) != 1:
        raise ValueError(f"moduli {m1}, {m2} are not coprime")
    # lift r1 by a multiple of m1 that fixes the residue mod m2
    t = ((r2 - r1) * pow(m1, -1, m2)) % m2
    return (r1 + m1 * t) % (m1 * m2)


def _sqrt_mod_prime(a: int, p: int) -> int | None:
    """A square root of a modulo an odd prime p, or None for a non-residue."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    if p % 8 == 5:
        s = pow(a, (p + 3) // 8, p)
        if s * s % p != a:
            s = s * pow(2, (p - 1) // 4, p) % p
        return s
    # Tonelli-Shanks for p = 1 (mod 8)
    q, e = p - 1, 0
    while q % 2 == 0:
        q //= 2
        e += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    c = pow(z, q, p)
    s = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = e
    while t != 1:
        order = 0
        t2 = t
        while t2 != 1:
            t2 = t2 * t2 % p
            order += 1
        b = pow(c, 1 << (m - order - 1), p)
        s = s * b % p
        c = b * b % p
        t = t * c % p
        m = order
    return s


def sqrt_mod_prime_power(a: int, p: int, alpha: int) -> int | None:
    """The smaller square root of a modulo p^alpha (odd p, gcd(a,p)=1),
    or None if a is a non-residue mod p."""
    if a % p == 0:
        raise ValueError(f"{a} is divisible by {p}; callers handle that case")
    s = _sqrt_mod_prime(a, p)
    if s is None:
        return None
    # Hensel: s -> (s + a/s)/2 doubles the exponent each round
    e = 1
    while e < alpha:
        e = min(2 * e, alpha)
        q = p ** e
        s = (s + a * pow(s, -1, q)) * pow(2, -1, q) % q
    q = p ** alpha
    return min(s, q - s)


def dedekind_sum(h: int, k: int) -> Fraction:
    """Exact Dedekind sum s(h,k), by direct summation over r = 1..k-1.

    The sawtooth terms are collected in a single integer pass:
    s(h,k) = sum_r (r/k)((hr mod k)/k - 1/2) = (4T - k^2(k-1)) / (4k^2)
    with T = sum_r r*(hr mod k).  One exact division at the end, no
    per-term rationals.  Oracle; performance is irrelevant beyond that.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if math.gcd(h, k) != 1:
        raise ValueError(f"gcd({h},{k}) > 1")
    T = 0
    for r in range(1, k):
        T += r * (h * r % k)
    return Fraction(4 * T - k * k * (k - 1), 4 * k * k)


def salie_sum(a: int, k: int, precision: int = 64):
    """Numeric Salié sum S(a,k) over units mod k, as a gmpy2.mpc.

    Direct summation at the requested precision; test oracle only.  The
    k = 1 sum has the single summand 1.
    """
    if k < 1 or k % 2 == 0:
        raise ValueError(f"Salié sum needs odd positive k, got {k}")
    ctx = gmpy2.context(precision=precision + 10)
    if k == 1:
        return gmpy2.mpc(1, 0, precision=precision + 10)
    two_pi = ctx.mul(ctx.const_pi(), gmpy2.mpfr(2))
    re = gmpy2.mpfr(0, precision + 10)
    im = gmpy2.mpfr(0, precision + 10)
    for h in range(1, k):
        if math.gcd(h, k) != 1:
            continue
        hinv = pow(h, -1, k)
        t = (a * h + hinv) % k  # exact reduction before any rounding
        angle = ctx.div(ctx.mul(two_pi, gmpy2.mpfr(t)), gmpy2.mpfr(k))
        sign = jacobi(h, k)
        if sign == 1:
            re = ctx.add(re, ctx.cos(angle))
            im = ctx.add(im, ctx.sin(angle))
        else:
            re = ctx.sub(re, ctx.cos(angle))
            im = ctx.sub(im, ctx.sin(angle))
    return gmpy2.mpc(re, im, precision=precision + 10)
