"""Invariant suites runnable from the CLI, at desk scale.

Each suite raises AssertionError on the first violated property and
returns the number of checks it performed.  They are intentionally
redundant with the unit tests: this is the self-contained health check a
user can run on an installed package without a test harness.
"""

from __future__ import annotations

import math
import random

import gmpy2

from . import expsum, numtheory, recurrence, series


def recurrence_identities() -> int:
    checks = 0
    rec = recurrence.recursion_table(500)
    prod = recurrence.product_expansion_table(500)
    assert rec.values == prod.values, "recursion and product expansion disagree"
    checks += 501
    assert rec.values[0] == 1
    for n in range(1, 501):
        assert rec.values[n] % 2 == 0, f"value at {n} is odd"
        assert rec.values[n] > rec.values[n - 1] or n == 1, f"not increasing at {n}"
    checks += 500
    b = recurrence.theta_coefficients(200)
    for n in range(201):
        conv = sum(rec.values[n - k] * b[k] for k in range(n + 1))
        assert conv == (1 if n == 0 else 0), f"convolution identity fails at {n}"
    checks += 201
    return checks


def dedekind_congruences() -> int:
    checks = 0
    for k in range(1, 61):
        for h in range(k):
            if math.gcd(h, k) != 1:
                continue
            s = numtheory.dedekind_sum(h, k)
            six = 6 * k * s
            assert six.denominator == 1, f"6k*s(h,k) not integral at ({h},{k})"
            checks += 1
            if k % 2 == 1:
                twelve = 12 * k * s
                assert twelve.denominator == 1
                lhs = int(twelve) % 8
                rhs = (k + 1 - 2 * numtheory.jacobi(h, k)) % 8
                assert lhs == rhs, f"mod-8 congruence fails at ({h},{k})"
                checks += 1
            assert numtheory.dedekind_sum(h + k, k) == s, f"shift invariance at ({h},{k})"
            checks += 1
    return checks


def expsum_triple_agreement() -> int:
    """Plan route, defining sum, and Salié route agree at working precision.

    The tolerance is 2^-200 against 256-bit values, not a float epsilon: a
    route that silently rounds through double precision must fail here.
    """
    checks = 0
    bits = 256
    ctx = gmpy2.context(precision=bits)
    tol = 2.0**-200
    for k in range(1, 100, 2):
        for n in range(1, 61):
            plan_val = expsum.exp_sum_plan(k, n).numeric_value(bits)
            direct = expsum.exp_sum_direct(k, n, bits)
            salie = expsum.exp_sum_via_salie(k, n, bits)
            assert abs(float(direct.imag)) < tol, f"direct sum not real at ({k},{n})"
            assert abs(float(ctx.sub(plan_val, direct.real))) < tol, (
                f"plan vs direct at ({k},{n})"
            )
            assert abs(float(ctx.sub(direct.real, salie.real))) < tol, (
                f"direct vs salie at ({k},{n})"
            )
            assert abs(float(plan_val)) <= k + tol, f"trivial bound fails at ({k},{n})"
            checks += 4
    return checks


def multiplicativity() -> int:
    """Coprime split: value(k1*k2, n) = value(k1, n1) * value(k2, n2) where
    n1, n2 satisfy k2^2*n1 = n (mod k1) and k1^2*n2 = n (mod k2)."""
    checks = 0
    bits = 256
    ctx = gmpy2.context(precision=bits)
    for k1 in range(3, 46, 2):
        for k2 in range(k1 + 2, 46, 2):
            if math.gcd(k1, k2) != 1:
                continue
            for n in range(1, 31, 7):
                n1 = n * pow(k2 * k2, -1, k1) % k1
                n2 = n * pow(k1 * k1, -1, k2) % k2
                whole = expsum.exp_sum_plan(k1 * k2, n).numeric_value(bits)
                split = ctx.mul(
                    expsum.exp_sum_plan(k1, n1).numeric_value(bits),
                    expsum.exp_sum_plan(k2, n2).numeric_value(bits),
                )
                assert abs(float(ctx.sub(whole, split))) < 2.0**-200, (
                    f"split fails at ({k1},{k2},{n})"
                )
                checks += 1
    return checks


def root_choice_invariance() -> int:
    """Replacing theta by q - theta leaves the cosine factor unchanged."""
    from .precision import cos_pi_rational

    rng = random.Random(20240815)
    checks = 0
    while checks < 100:
        p = rng.choice([3, 5, 7, 11, 13, 17, 19, 23])
        alpha = rng.randint(1, 3)
        n = rng.randint(1, 10**6)
        if n % p == 0:
            continue
        value = expsum.classify_prime_power(p, alpha, n)
        if value.kind is not expsum.FactorKind.COSINE:
            continue
        q = value.q
        a = cos_pi_rational(4 * value.theta, q, 64)
        b = cos_pi_rational(4 * (q - value.theta), q, 64)
        assert a == b, f"cosine differs between roots at (p^a={q}, n={n})"
        checks += 1
    return checks


def fastpath_plan_equality() -> int:
    """The bulk per-argument plan builder matches the one-shot recursion."""
    rng = random.Random(987654321)
    checks = 0
    for _ in range(60):
        n = rng.randint(1, 10**7)
        builder = expsum.PlanBuilder(n)
        for _ in range(25):
            k = rng.randrange(1, 4000, 2)
            a = builder.plan(k)
            b = expsum.exp_sum_plan(k, n)
            assert a.is_zero == b.is_zero, f"zero flag differs at (k={k}, n={n})"
            assert a.canonical_angles() == b.canonical_angles(), (
                f"plans differ at (k={k}, n={n})"
            )
            assert a.cosine_modulus == b.cosine_modulus
            checks += 3
    return checks


def series_margin_and_agreement() -> int:
    """Exact path equals the recurrence where they overlap, parity holds,
    and the pre-rounding sum stays well clear of the half-way point."""
    checks = 0
    table = recurrence.recursion_table(4000).values
    for n in range(2001, 4001):
        value, margin = series.exact_value_and_margin(n)
        assert margin < 0.26, f"margin {margin} at n={n}"
        assert value % 2 == 0, f"parity fails at n={n}"
        if n <= 2200:
            assert value == table[n], f"exact vs recurrence differ at n={n}"
        checks += 3
    return checks


SUITES = [
    ("recurrence identities", recurrence_identities),
    ("dedekind congruences", dedekind_congruences),
    ("exponential-sum triple agreement", expsum_triple_agreement),
    ("multiplicativity split", multiplicativity),
    ("root-choice invariance", root_choice_invariance),
    ("fast-path plan equality", fastpath_plan_equality),
    ("series margin and oracle agreement", series_margin_and_agreement),
]
