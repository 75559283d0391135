"""Float layer: precision contracts, exact angle reduction, cancellation
control.  mpmath is the independent reference throughout."""

import math
import random
from fractions import Fraction

import gmpy2
import mpmath
import pytest

from overpartition import precision


def as_mp(x):
    """Exact mpfr -> mpmath conversion (must run under enough workprec)."""
    num, den = x.as_integer_ratio()
    return mpmath.mpf(num) / mpmath.mpf(den)


def test_to_bits_sets_significand_size():
    assert precision.to_bits(math.pi, 200).precision == 200
    assert precision.to_bits(1, 24).precision == 24


def test_pi_matches_reference():
    with mpmath.workprec(420):
        err = abs(as_mp(precision.pi(300)) - mpmath.pi)
        assert err < mpmath.mpf(2) ** -298
    with pytest.raises(ValueError):
        precision.pi(1)


def test_exp_and_sqrt_match_reference():
    rng = random.Random(13)
    with mpmath.workprec(420):
        for _ in range(40):
            x = rng.uniform(0.01, 40.0)
            got = as_mp(precision.exp(x, 300))
            ref = mpmath.exp(mpmath.mpf(x))
            assert abs(got - ref) < abs(ref) * mpmath.mpf(2) ** -295, f"exp({x})"
            got = as_mp(precision.sqrt(x, 300))
            ref = mpmath.sqrt(mpmath.mpf(x))
            assert abs(got - ref) < abs(ref) * mpmath.mpf(2) ** -295, f"sqrt({x})"


@pytest.mark.parametrize("x", [1e-8, 1e-3, 0.37, 0.999, 1.0, 2.0, 10.0, 300.0])
def test_hyperbolic_kernel_matches_reference(x):
    got = precision.hyperbolic_kernel(x, 256)
    assert got.precision == 256
    with mpmath.workprec(600):
        xm = mpmath.mpf(x)
        ref = mpmath.cosh(xm) - mpmath.sinh(xm) / xm
        # relative comparison: the value is ~x^2/3 near zero, and any
        # missed cancellation guard would show up as a ~2^-200 error here
        assert abs(as_mp(got) - ref) < abs(ref) * mpmath.mpf(2) ** -250, f"kernel({x})"


def test_hyperbolic_kernel_rejects_nonpositive():
    with pytest.raises(ValueError):
        precision.hyperbolic_kernel(0, 64)
    with pytest.raises(ValueError):
        precision.hyperbolic_kernel(-2.5, 64)


def test_cos_pi_rational_exact_points():
    for den in (1, 2, 3, 7, 360):
        assert precision.cos_pi_rational(0, den, 64) == 1
        assert precision.cos_pi_rational(2 * den, den, 64) == 1
        assert precision.cos_pi_rational(den, den, 64) == -1
        assert precision.cos_pi_rational(-3 * den, den, 64) == -1
    assert precision.cos_pi_rational(1, 2, 64) == 0
    assert precision.cos_pi_rational(3, 2, 64) == 0
    assert precision.cos_pi_rational(25, 50, 64) == 0


def test_cos_pi_rational_symmetries_are_ulp_exact():
    # periodicity, evenness and supplement reduce to the same integer
    # angle, so the results must be bit-identical, not just close
    rng = random.Random(17)
    for _ in range(200):
        den = rng.randrange(1, 5000)
        num = rng.randrange(-4 * den, 4 * den)
        base = precision.cos_pi_rational(num, den, 128)
        assert precision.cos_pi_rational(num + 2 * den, den, 128) == base
        assert precision.cos_pi_rational(-num, den, 128) == base
        flipped = precision.cos_pi_rational(den - num, den, 128)
        assert flipped == precision.cos_pi_rational(den + num, den, 128)


def test_cos_pi_rational_matches_reference():
    rng = random.Random(19)
    with mpmath.workprec(450):
        tol = mpmath.mpf(2) ** -315
        for _ in range(150):
            den = rng.randrange(1, 10**6)
            num = rng.randrange(0, 2 * den)
            got = precision.cos_pi_rational(num, den, 320)
            assert got.precision == 320
            ref = mpmath.cospi(mpmath.mpf(num) / den)
            assert abs(as_mp(got) - ref) < tol, f"cos(pi*{num}/{den})"


def test_cos_pi_rational_obtuse_angles_keep_full_precision():
    # the negative branch must negate under the working context; a bare
    # unary minus silently rounds the result to the 53-bit thread default,
    # which once corrupted every obtuse cosine factor in the series
    cases = [(2, 3), (5, 7), (4999, 9973), (617, 1000), (99, 100)]
    with mpmath.workprec(450):
        tol = mpmath.mpf(2) ** -315
        for num, den in cases:
            t = Fraction(num, den) % 2
            assert Fraction(1, 2) < min(t, 2 - t) < 1, "case is not obtuse"
            got = precision.cos_pi_rational(num, den, 320)
            assert float(got) < 0
            err = abs(as_mp(got) - mpmath.cospi(mpmath.mpf(num) / den))
            assert err < tol, f"obtuse cos(pi*{num}/{den}) error {err}"


def test_cos_pi_rational_rejects_bad_denominator():
    with pytest.raises(ValueError):
        precision.cos_pi_rational(1, 0, 64)
    with pytest.raises(ValueError):
        precision.cos_pi_rational(1, -3, 64)


def test_result_precisions_follow_contract():
    # engine error budgets assume these exact significand sizes
    assert precision.exp(1, 64).precision == 64 + precision.GUARD_BITS
    assert precision.sqrt(2, 64).precision == 64 + precision.GUARD_BITS
    assert precision.hyperbolic_kernel(3.0, 77).precision == 77
    assert precision.cos_pi_rational(1, 3, 90).precision == 90
