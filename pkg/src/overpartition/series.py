"""The convergent-series engine for overpartition counts.

Truncating the series at N = ceil(sqrt(n)) leaves a tail below 1/4 (for
n > 784), and evaluating the k-th term with term_precision(n, k, m_k) bits
keeps each term's rounding error below 1/(4N).  The float sum of terms is
then within 1/2 of the true integer, so rounding to the nearest integer is
exact.  The modular variant never materializes the integer: it tracks the
running floor modulo 2m plus a 64-bit fractional carry, and repairs the
final residue using the fact that the count is even.

Arguments at or below SMALL_LIMIT go to the recurrence table instead; the
per-term precision bound is only proved beyond that range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from . import recurrence
from .expsum import PlanBuilder, TermPlan
from .precision import GUARD_BITS, hyperbolic_kernel

SMALL_LIMIT = 2000
_LOG2E = math.log2(math.e)


def ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


@dataclass(frozen=True)
class SeriesConfig:
    """Shape of one series evaluation."""

    n: int
    trunc: int           # number of terms: odd k = 1, 3, ..., <= trunc
    guard_bits: int = GUARD_BITS

    @classmethod
    def for_target(cls, n: int) -> "SeriesConfig":
        if n <= SMALL_LIMIT:
            raise ValueError(f"series path needs n > {SMALL_LIMIT}, got {n}")
        return cls(n, ceil_sqrt(n))


def tail_bound(n: int, trunc: int, bits: int = 64):
    """Upper bound for the dropped tail after the term k = trunc.

    The closed form is a near-cancellation: the two hyperbolic terms and
    the linear term agree to leading order once trunc is large, so the
    bracket is evaluated at roughly doubled precision before rounding to
    the requested size.
    """
    if n < 1 or trunc < 1:
        raise ValueError(f"need n >= 1 and trunc >= 1, got n={n}, trunc={trunc}")
    work = 2 * bits + 64
    ctx = gmpy2.context(precision=work)
    nf = gmpy2.mpfr(n, work)
    np1 = gmpy2.mpfr(trunc + 1, work)
    pi_val = ctx.const_pi()
    root = ctx.sqrt(nf)
    x = ctx.div(ctx.mul(pi_val, root), np1)
    ex = ctx.exp(x)
    emx = ctx.div(gmpy2.mpfr(1), ex)
    cosh = ctx.div(ctx.add(ex, emx), gmpy2.mpfr(2))
    sinh = ctx.div(ctx.sub(ex, emx), gmpy2.mpfr(2))
    bracket = ctx.sub(
        ctx.add(ctx.mul(x, cosh), ctx.mul(gmpy2.mpfr(2 * trunc + 1), sinh)),
        ctx.mul(ctx.mul(gmpy2.mpfr(2), pi_val), root),
    )
    ratio = ctx.div(np1, nf)
    ratio_32 = ctx.mul(ratio, ctx.sqrt(ratio))
    value = ctx.div(ctx.mul(ratio_32, bracket), ctx.mul(gmpy2.mpfr(4), pi_val))
    return gmpy2.mpfr(value, bits)


def term_precision(n: int, k: int, m_k: int) -> int:
    """Bits needed so the k-th term's error stays below 1/(4N).

    The log argument can go non-positive for tiny cosine counts near the
    truncation edge; it is clamped at 2, which only raises the budget.
    The epsilon keeps a float that lands a hair under an integer from
    shaving off the last bit.
    """
    if k < 1 or m_k < 0:
        raise ValueError(f"bad term shape k={k}, m_k={m_k}")
    ratio = math.pi * math.sqrt(n) / k
    log_arg = max(10.0 * ratio + 7.0 * (2 * m_k - 4), 2.0)
    first = -0.5 * math.log2(n) + ratio * _LOG2E + m_k + math.log2(log_arg)
    second = 0.5 * math.log2(n) + 5.0
    return max(11, math.ceil(max(first, second) + 1e-9))


def term_value(n: int, k: int, plan: TermPlan, bits: int, c=None):
    """The k-th summand at the given precision: kernel times cosines over 4n.

    c, if given, is pi*sqrt(n) precomputed at >= bits+guard precision; the
    engine shares one high-precision copy across all terms.
    """
    if plan.is_zero:
        raise ValueError(f"term k={k} is zero; callers skip it")
    if plan.k != k:
        raise ValueError(f"plan is for k={plan.k}, not {k}")
    work = bits + GUARD_BITS
    ctx = gmpy2.context(precision=work)
    if c is None:
        c = ctx.mul(ctx.const_pi(), ctx.sqrt(gmpy2.mpfr(n, work)))
    x = ctx.div(gmpy2.mpfr(c, work), gmpy2.mpfr(k))
    value = ctx.mul(hyperbolic_kernel(x, bits), plan.cosine_product(bits))
    return ctx.div(value, gmpy2.mpfr(4 * n, work))


def _series_state(n: int):
    """Shared setup for both summation loops."""
    cfg = SeriesConfig.for_target(n)
    r1 = term_precision(n, 1, 0)
    work = r1 + GUARD_BITS
    ctx = gmpy2.context(precision=work)
    c = ctx.mul(ctx.const_pi(), ctx.sqrt(gmpy2.mpfr(n, work)))
    return cfg, r1, c


def _nonzero_terms(n: int, trunc: int, c):
    """Yield (k, evaluated term) for the non-zero odd-index terms."""
    builder = PlanBuilder(n)
    for k in range(1, trunc + 1, 2):
        plan = builder.plan(k)
        if plan.is_zero:
            continue
        bits = term_precision(n, k, plan.m_k)
        yield k, term_value(n, k, plan, bits, c)


def exact_value_and_margin(n: int) -> tuple[int, float]:
    """The exact count and the distance of the float sum from it.

    The margin is guaranteed below 1/2; observing it below 0.26 is the
    health check the engine enforces (a larger value means the precision
    budget is broken somewhere, not that the input is bad).
    """
    if n < 0:
        raise ValueError(f"argument must be non-negative, got {n}")
    if n <= SMALL_LIMIT:
        return recurrence.cached_value(n), 0.0
    cfg, r1, c = _series_state(n)
    acc_bits = r1 + GUARD_BITS
    ctx = gmpy2.context(precision=acc_bits)
    total = gmpy2.mpfr(0, acc_bits)
    for _, t in _nonzero_terms(n, cfg.trunc, c):
        total = ctx.add(total, t)
    num, den = total.as_integer_ratio()
    floor_val = num // den
    frac = Fraction(num - floor_val * den, den)
    margin = float(min(frac, 1 - frac))
    if margin >= 0.26:
        raise ArithmeticError(
            f"rounding margin {margin} at n={n}; precision budget is broken"
        )
    return floor_val + (1 if 2 * frac > 1 else 0), margin


def overpartition(n: int) -> int:
    """Number of overpartitions of n, exactly."""
    return exact_value_and_margin(n)[0]


def overpartition_mod(n: int, m: int) -> int:
    """The count modulo an odd m >= 3, without building the big integer.

    Per term, the integer part goes into an accumulator mod 2m and the
    fractional part into a 64-bit carry b; whenever b exceeds 1 the unit
    moves into the accumulator.  The combined rounding slack plus series
    tail stays inside one unit, and counts are even, so an odd accumulator
    is off by exactly one.
    """
    if m < 3 or m % 2 == 0:
        raise ValueError(f"modulus must be odd and >= 3, got {m}")
    if n < 0:
        raise ValueError(f"argument must be non-negative, got {n}")
    if n <= SMALL_LIMIT:
        return recurrence.cached_value(n) % m
    cfg, r1, c = _series_state(n)
    two_m = 2 * m
    acc = 0
    ctx64 = gmpy2.context(precision=64)
    b = gmpy2.mpfr(0, 64)
    for _, t in _nonzero_terms(n, cfg.trunc, c):
        num, den = t.as_integer_ratio()  # den is a power of two
        a_k = num // den
        b_k = gmpy2.mpfr(gmpy2.mpq(num - a_k * den, den), 64)
        b = ctx64.add(b, b_k)
        if b > 1:
            b = ctx64.sub(b, gmpy2.mpfr(1))
            a_k += 1
        acc = (acc + a_k) % two_m
    if acc % 2 == 1:
        acc += 1
    return acc % m


def nonzero_fraction(n: int) -> float:
    """Fraction of odd indices up to the truncation point with non-zero
    terms; a sparsity gauge (composite indices mostly vanish)."""
    cfg = SeriesConfig.for_target(n)
    builder = PlanBuilder(n)
    total = 0
    nonzero = 0
    for k in range(1, cfg.trunc + 1, 2):
        total += 1
        if not builder.plan(k).is_zero:
            nonzero += 1
    return nonzero / total
