"""The Kloosterman-like exponential sums attached to each series index k.

Three independent routes to the same value:

* exp_sum_plan / PlanBuilder: multiplicative evaluation through prime-power
  closed forms.  Produces a TermPlan holding exact integer data (cosine
  angles as rationals), deferring all floating point to the caller, so one
  plan can be evaluated at any precision.
* exp_sum_direct: the defining sum over units mod k, phases assembled from
  exact Dedekind sums.  Slow; test oracle.
* exp_sum_via_salie: the Salié-sum representation.  Slow; second oracle.

The closed forms make every sum real: the value is sqrt(k) times a product
of 2*cos(pi * 4*theta/q) factors, one per prime power q of k whose twisted
residue -n_q is a nonzero square.  The sqrt(k) cancels against the 1/sqrt(k)
in the series, which is why plans never store it numerically.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from . import numtheory
from .precision import GUARD_BITS, cos_pi_rational, sqrt


class FactorKind(enum.Enum):
    SQRT_Q = "sqrt_q"   # p | n, alpha = 1: contributes sqrt(q)
    ZERO = "zero"       # p | n with alpha > 1, or -n a non-residue
    COSINE = "cosine"   # contributes 2*sqrt(q)*cos(4*theta*pi/q)


@dataclass(frozen=True)
class PrimePowerValue:
    """Classified value of the sum at one prime power q = p^alpha."""

    kind: FactorKind
    q: int
    theta: int | None = None  # only for COSINE; (4*theta)^2 = -n (mod q)


@dataclass(frozen=True)
class TermPlan:
    """Exact description of the k-th term's exponential-sum factor.

    cosine_angles holds the rationals 4*theta/q; the term's numeric factor
    is the product of 2*cos(pi*angle) over them (empty product = 1).
    cosine_modulus is the product of the COSINE prime powers, recording
    symbolically which part of sqrt(k) did not cancel into sqrt(q) factors.
    """

    k: int
    is_zero: bool
    cosine_angles: tuple[Fraction, ...] = ()
    cosine_modulus: int = 1

    @property
    def m_k(self) -> int:
        return len(self.cosine_angles)

    def canonical_angles(self) -> tuple[Fraction, ...]:
        """Angles normalized so both square roots of -n give equal plans."""
        out = []
        for a in self.cosine_angles:
            t = a % 2
            out.append(min(t, 2 - t))
        return tuple(sorted(out))

    def cosine_product(self, bits: int):
        """The product of 2*cos(pi*angle) factors as an mpfr."""
        ctx = gmpy2.context(precision=bits + GUARD_BITS)
        acc = gmpy2.mpfr(1, bits + GUARD_BITS)
        for a in self.cosine_angles:
            c = cos_pi_rational(a.numerator, a.denominator, bits)
            acc = ctx.mul(acc, ctx.mul(gmpy2.mpfr(2), c))
        return acc

    def numeric_value(self, bits: int):
        """sqrt(k) * cosine product: the sum's actual value, for tests."""
        if self.is_zero:
            return gmpy2.mpfr(0, bits)
        ctx = gmpy2.context(precision=bits + GUARD_BITS)
        return ctx.mul(sqrt(self.k, bits), self.cosine_product(bits))


def classify_prime_power(p: int, alpha: int, n: int) -> PrimePowerValue:
    """Value class of the sum at q = p^alpha for the (twisted) argument n."""
    q = p ** alpha
    if n % p == 0:
        if alpha == 1:
            return PrimePowerValue(FactorKind.SQRT_Q, q)
        return PrimePowerValue(FactorKind.ZERO, q)
    s = numtheory.sqrt_mod_prime_power((-n) % q, p, alpha)
    if s is None:
        return PrimePowerValue(FactorKind.ZERO, q)
    theta = s * pow(4, -1, q) % q
    return PrimePowerValue(FactorKind.COSINE, q, theta)


def _plan_from_values(k: int, values: list[PrimePowerValue]) -> TermPlan:
    angles = []
    cos_mod = 1
    for v in values:
        if v.kind is FactorKind.COSINE:
            angles.append(Fraction(4 * v.theta, v.q))
            cos_mod *= v.q
    return TermPlan(k, False, tuple(angles), cos_mod)


def exp_sum_plan(k: int, n: int) -> TermPlan:
    """TermPlan for index k via the multiplicative recursion.

    Walks the prime powers k1 of k, splitting the argument by CRT each
    round: with k2 the remaining cofactor, the current argument n3 is
    replaced on the k1 side by n1 = n3 * (k2^2)^{-1} and carried forward as
    n2 = n3 * (k1^2)^{-1}.  A ZERO factor ends the walk immediately.
    """
    if k < 1 or k % 2 == 0:
        raise ValueError(f"index must be odd and positive, got {k}")
    fact = numtheory.factorize_odd(k)
    values = []
    n3 = n
    k2 = k
    for p, alpha in fact.factors:
        k1 = p ** alpha
        k2 //= k1
        n1 = n3 * pow(k2 * k2, -1, k1) % k1
        value = classify_prime_power(p, alpha, n1)
        if value.kind is FactorKind.ZERO:
            return TermPlan(k, True)
        values.append(value)
        if k2 > 1:
            n3 = n3 * pow(k1 * k1, -1, k2) % k2
    return _plan_from_values(k, values)


class PlanBuilder:
    """Bulk TermPlan factory for a fixed series argument n.

    For every k the twisted residue n_q at a factor q = p^alpha satisfies
    n_q = n * c^2 (mod q) for some unit c, so whether p divides it and
    whether -n_q is a square mod p do not depend on k.  That makes three
    things cacheable per (n, p, alpha): the divides/residue/non-residue
    status, the lifted square root s of -n mod q, and u = s/4 mod q.  A
    plan for k then costs one modular inverse per factor:
    theta = u * (k/q)^{-1} (mod q).

    Equivalent to exp_sum_plan(k, n) up to the (irrelevant, cosine-even)
    choice of square root; the test suite compares canonicalized plans.
    """

    _DIVIDES = 0
    _RESIDUE = 1
    _NONRESIDUE = 2

    def __init__(self, n: int):
        self.n = n
        self._status: dict[int, int] = {}
        self._u: dict[tuple[int, int], int] = {}

    def _prime_status(self, p: int) -> int:
        st = self._status.get(p)
        if st is None:
            if self.n % p == 0:
                st = self._DIVIDES
            elif pow((-self.n) % p, (p - 1) // 2, p) == 1:
                st = self._RESIDUE
            else:
                st = self._NONRESIDUE
            self._status[p] = st
        return st

    def _u_for(self, p: int, alpha: int) -> int:
        key = (p, alpha)
        u = self._u.get(key)
        if u is None:
            q = p ** alpha
            s = numtheory.sqrt_mod_prime_power((-self.n) % q, p, alpha)
            u = s * pow(4, -1, q) % q
            self._u[key] = u
        return u

    def plan(self, k: int) -> TermPlan:
        if k == 1:
            return TermPlan(1, False)
        fact = numtheory.factorize_odd(k)
        angles = []
        cos_mod = 1
        for p, alpha in fact.factors:
            st = self._prime_status(p)
            if st == self._DIVIDES:
                if alpha > 1:
                    return TermPlan(k, True)
                continue  # sqrt(q) factor, cancels symbolically
            if st == self._NONRESIDUE:
                return TermPlan(k, True)
            q = p ** alpha
            theta = self._u_for(p, alpha)
            cofactor = k // q
            if cofactor > 1:
                theta = theta * pow(cofactor, -1, q) % q
            angles.append(Fraction(4 * theta, q))
            cos_mod *= q
        return TermPlan(k, False, tuple(angles), cos_mod)


def exp_sum_direct(k: int, n: int, precision: int = 64):
    """The defining sum over units mod k, as a gmpy2.mpc.  Test oracle.

    Each summand is e^{pi*i*phi} with phi = 2 s(h,k) - s(2h,k) - 2nh/k
    collected exactly as a Fraction and reduced mod 2 before any floating
    point, so phases carry no accumulated error.
    """
    if k < 1 or k % 2 == 0:
        raise ValueError(f"index must be odd and positive, got {k}")
    if k == 1:
        return gmpy2.mpc(1, 0, precision=precision + GUARD_BITS)
    work = precision + GUARD_BITS
    ctx = gmpy2.context(precision=work)
    pi_val = ctx.const_pi()
    re = gmpy2.mpfr(0, work)
    im = gmpy2.mpfr(0, work)
    for h in range(k):
        if math.gcd(h, k) != 1:
            continue
        phi = (
            2 * numtheory.dedekind_sum(h, k)
            - numtheory.dedekind_sum(2 * h % k, k)
            - Fraction(2 * n * h, k)
        ) % 2
        angle = ctx.div(
            ctx.mul(pi_val, gmpy2.mpfr(phi.numerator, work)),
            gmpy2.mpfr(phi.denominator, work),
        )
        re = ctx.add(re, ctx.cos(angle))
        im = ctx.add(im, ctx.sin(angle))
    return gmpy2.mpc(re, im, precision=work)


def exp_sum_via_salie(k: int, n: int, precision: int = 64):
    """eps_k * S(-n/16, k): the Salié representation.  Second oracle."""
    if k < 1 or k % 2 == 0:
        raise ValueError(f"index must be odd and positive, got {k}")
    if k == 1:
        return gmpy2.mpc(1, 0, precision=precision + GUARD_BITS)
    a = (-pow(16, -1, k) * n) % k
    s = numtheory.salie_sum(a, k, precision)
    if k % 4 == 1:
        return s
    # eps_k = -i for k = 3 (mod 4); negate under an explicit context, since
    # bare unary minus would round the component to the thread default.
    ctx = gmpy2.context(precision=precision + GUARD_BITS)
    return gmpy2.mpc(s.imag, ctx.minus(s.real), precision=precision + GUARD_BITS)
