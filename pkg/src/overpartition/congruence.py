"""Congruence hunting: which prime moduli force p(Q^3 n) = 0 (mod ell^j)?

A prime Q with Q = -1 (mod 16 ell^j) is a candidate.  For each candidate
the hunt checks a finite list of three-term congruences up to a Sturm-type
bound; if none fails, every count at arguments Q^3 n (n coprime to ell*Q
with (n|ell) = -1) is divisible by ell^j.  A failed check yields a witness
and the candidate is discarded.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from . import recurrence, series
from .numtheory import jacobi


def base_weight(ell: int) -> int:
    """Weight step attached to ell: 24 at ell = 3, else ell^2 - 1."""
    _require_odd_prime(ell)
    return 24 if ell == 3 else ell * ell - 1


def cusp_order(c: int, ell: int) -> Fraction:
    """Vanishing order contributed by a cusp denominator c | 16*ell^2
    (with ell^2 not dividing c).  Exact positive rational."""
    _require_odd_prime(ell)
    if c <= 0 or (16 * ell * ell) % c != 0 or c % (ell * ell) == 0:
        raise ValueError(f"c={c} is not an admissible cusp denominator for {ell}")
    prefactor = Fraction(16, math.gcd(c * c, 16))
    if ell == 3:
        branch = Fraction(10) if c % ell else Fraction(1)
    else:
        branch = Fraction(ell ** 4 - 1, 24) if c % ell else Fraction(ell * ell - 1, 24)
    return prefactor * branch


def lift_exponent(ell: int, j: int) -> int:
    """The smallest beta >= j-1 with ell^beta clearing every cusp order.

    Orders depend only on the cusp denominator, so scanning divisors of
    16*ell^2 (excluding multiples of ell^2) covers all cusps; repeats in
    the real cusp list cannot change a maximum.
    """
    _require_odd_prime(ell)
    if j < 1:
        raise ValueError(f"j must be >= 1, got {j}")
    beta = j - 1
    base = 16 * ell * ell
    for c in range(1, base + 1):
        if base % c or c % (ell * ell) == 0:
            continue
        f = cusp_order(c, ell)
        if f >= 1:
            continue  # ceil(-log) <= 0 <= j-1: cannot raise the max
        # smallest integer t with ell^t >= 1/f, computed exactly
        t = 1
        while Fraction(ell) ** t < 1 / f:
            t += 1
        beta = max(beta, t)
    return beta


def candidate_primes(ell: int, j: int, q_max: int) -> list[int]:
    """All primes Q <= q_max with Q = -1 (mod 16*ell^j), ascending."""
    _require_odd_prime(ell)
    if j < 1:
        raise ValueError(f"j must be >= 1, got {j}")
    step = 16 * ell ** j
    return [q for q in range(step - 1, q_max + 1, step) if gmpy2.is_prime(q)]


@dataclass(frozen=True)
class CongruenceParams:
    """Derived parameters for one (ell, j, Q) hunt."""

    ell: int
    j: int
    q: int
    beta: int
    kappa: int
    delta: int
    n0: int

    @classmethod
    def for_candidate(cls, ell: int, j: int, q: int) -> "CongruenceParams":
        if q < 2 or not gmpy2.is_prime(q) or (q + 1) % (16 * ell ** j) != 0:
            raise ValueError(f"Q={q} is not a candidate for ell={ell}, j={j}")
        beta = lift_exponent(ell, j)
        kappa = -1 + ell ** beta * base_weight(ell)
        if kappa % 2 != 1 or kappa < 23:
            raise AssertionError(f"kappa={kappa} out of expected shape")
        delta = -1 if (kappa - 1) // 2 % 2 else 1
        n0 = kappa * (ell + 1) // 2 + 1
        return cls(ell, j, q, beta, kappa, delta, n0)


@dataclass(frozen=True)
class HuntRecord:
    """Outcome of one hunt: either every check passed (interesting) or the
    smallest failing n is recorded as the witness."""

    ell: int
    j: int
    q: int
    interesting: bool
    witness_n: int | None
    n0: int
    kappa: int
    checked_terms: int
    elapsed_ms: int


def hunt(ell: int, j: int, q: int) -> HuntRecord:
    """Run the finite congruence check for one candidate.

    For each n up to the bound with (-n|ell) = -1, tests
    count(n*Q^2) + (delta*n | Q) * Q^((kappa-3)/2) * count(n) = 0 (mod ell^j).
    The count(n/Q^2) term of the full criterion is identically zero here
    because n <= n0 < Q^2 (asserted), and non-integer arguments count 0.
    """
    started = time.monotonic()
    params = CongruenceParams.for_candidate(ell, j, q)
    if params.n0 >= q * q:
        raise AssertionError(
            f"Sturm bound {params.n0} >= Q^2; the dropped term would matter"
        )
    modulus = ell ** j
    q_power = pow(q, (params.kappa - 3) // 2, modulus)
    interesting = True
    witness = None
    checked = 0
    for n in range(1, params.n0 + 1):
        if jacobi(-n, ell) != -1:
            continue
        checked += 1
        small = recurrence.cached_value(n) % modulus
        big = series.overpartition_mod(n * q * q, modulus)
        lhs = (big + jacobi(params.delta * n, q) * q_power * small) % modulus
        if lhs != 0:
            interesting = False
            witness = n
            break
    elapsed_ms = int((time.monotonic() - started) * 1000)
    return HuntRecord(
        ell, j, q, interesting, witness, params.n0, params.kappa, checked, elapsed_ms
    )


@dataclass(frozen=True)
class SampleCheck:
    n: int
    argument: int
    residue: int

    @property
    def ok(self) -> bool:
        return self.residue == 0


def valid_samples(ell: int, q: int, count: int) -> list[int]:
    """The first `count` n >= 1 coprime to ell*q with (n|ell) = -1."""
    out = []
    n = 1
    while len(out) < count:
        if math.gcd(n, ell * q) == 1 and jacobi(n, ell) == -1:
            out.append(n)
        n += 1
    return out


def verify_congruence(ell: int, j: int, q: int, n_samples: list[int]) -> list[SampleCheck]:
    """Check count(Q^3 n) = 0 (mod ell^j) at the given sample points.

    Samples must be coprime to ell*Q with (n|ell) = -1; anything else is
    rejected, since the congruence says nothing about it.
    """
    params = CongruenceParams.for_candidate(ell, j, q)  # validates (ell, j, q)
    modulus = ell ** params.j
    checks = []
    for n in n_samples:
        if n < 1 or math.gcd(n, ell * q) != 1:
            raise ValueError(f"sample n={n} is not coprime to {ell * q}")
        if jacobi(n, ell) != -1:
            raise ValueError(f"sample n={n} has (n|{ell}) != -1")
        argument = q ** 3 * n
        checks.append(SampleCheck(n, argument, series.overpartition_mod(argument, modulus)))
    return checks


def _require_odd_prime(ell: int) -> None:
    if ell < 3 or not gmpy2.is_prime(ell):
        raise ValueError(f"ell must be an odd prime, got {ell}")
