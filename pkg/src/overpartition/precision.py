"""Arbitrary-precision binary floats for the series engine.

Thin layer over gmpy2/MPFR.  Every public function takes the target
precision in bits and does its work in a context of that precision plus a
fixed 10-bit guard; MPFR rounds every operation correctly, so each step
contributes at most one unit roundoff, which is what the engine's error
budget assumes.  No ambient global precision is ever set.
"""

from __future__ import annotations

import gmpy2

GUARD_BITS = 10


def _ctx(bits: int) -> gmpy2.context:
    return gmpy2.context(precision=bits + GUARD_BITS)


def to_bits(value, bits: int):
    """Round a value to an mpfr with the given significand size."""
    return gmpy2.mpfr(value, bits)


def pi(bits: int):
    """Pi, correct to the requested precision."""
    if bits < 2:
        raise ValueError(f"need at least 2 bits, got {bits}")
    return gmpy2.context(precision=bits).const_pi()


def exp(x, bits: int):
    return _ctx(bits).exp(gmpy2.mpfr(x, bits + GUARD_BITS))


def sqrt(x, bits: int):
    return _ctx(bits).sqrt(gmpy2.mpfr(x, bits + GUARD_BITS))


def hyperbolic_kernel(x, bits: int):
    """cosh(x) - sinh(x)/x for x > 0.

    Evaluated as (e^x (1 - 1/x) + e^-x (1 + 1/x)) / 2, i.e. through exp
    only.  For x >= 1 both terms are non-negative, so there is no
    cancellation; the naive cosh - sinh/x form loses ~x*log2(e) bits and is
    never used.  For x < 1 the value is ~x^2/3 while the summands are ~1,
    so the working precision is raised by the bits the subtraction eats.
    """
    work = bits + GUARD_BITS
    xf = gmpy2.mpfr(x, work)
    if xf <= 0:
        raise ValueError(f"kernel needs x > 0, got {x}")
    if xf < 1:
        # ~ -2*log2(x) bits cancel between the two summands
        work += 2 * (1 - int(gmpy2.floor(gmpy2.log2(xf)))) + 4
        xf = gmpy2.mpfr(x, work)
    ctx = gmpy2.context(precision=work)
    ex = ctx.exp(xf)
    inv_x = ctx.div(gmpy2.mpfr(1), xf)
    pos = ctx.mul(ex, ctx.sub(gmpy2.mpfr(1), inv_x))
    neg = ctx.mul(ctx.div(gmpy2.mpfr(1), ex), ctx.add(gmpy2.mpfr(1), inv_x))
    return gmpy2.mpfr(ctx.div(ctx.add(pos, neg), gmpy2.mpfr(2)), bits)


def cos_pi_rational(num: int, den: int, bits: int):
    """cos(pi * num/den), with the angle reduced exactly as a rational first.

    Reduction maps the angle into [0, pi/2] in integer arithmetic, so the
    only rounding happens in the final multiply and cosine.  Right angles
    and integer multiples of pi come out exact.
    """
    if den < 1:
        raise ValueError(f"denominator must be positive, got {den}")
    t = num % (2 * den)          # angle/pi in [0, 2)
    if t > den:
        t = 2 * den - t          # cos(2pi - a) = cos(a); now in [0, 1]
    sign = 1
    if 2 * t > den:
        t = den - t              # cos(pi - a) = -cos(a); now in [0, 1/2]
        sign = -1
    if t == 0:
        return gmpy2.mpfr(sign, bits)
    if 2 * t == den:
        return gmpy2.mpfr(0, bits)
    ctx = _ctx(bits)
    angle = ctx.div(ctx.mul(ctx.const_pi(), gmpy2.mpfr(t)), gmpy2.mpfr(den))
    value = ctx.cos(angle)
    if sign == -1:
        # gmpy2's unary minus rounds to the *thread* context (53 bits by
        # default), not to the operand's precision; negate under ctx.
        value = ctx.minus(value)
    return gmpy2.mpfr(value, bits)
