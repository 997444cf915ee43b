from fractions import Fraction
from math import gcd, prod

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sievelab.classical import IntervalSpec, interval_sample, interval_system
from sievelab.core import sifted_measure
from sievelab.instances import random_instance
from sievelab.small_sieve import bonferroni_coeffs, sandwich_bounds, sieve_sum

PRIMES = [2, 3, 5]


@pytest.fixture
def instance():
    return interval_sample(IntervalSpec(0, 30), PRIMES), interval_system(PRIMES)


def divisor_sums(coeffs, N):
    """sum_{d | n} lambda_d for n = 1..N, with d as integers."""
    lam = {prod(d): v for d, v in coeffs.table.items()}
    return [sum(v for d, v in lam.items() if n % d == 0) for n in range(1, N + 1)]


def test_coefficients_examples():
    c0 = bonferroni_coeffs(PRIMES, 0)
    assert c0.table == {(): 1} and c0.side == "upper"
    full = bonferroni_coeffs(PRIMES)
    assert full.side == "exact"
    sums = divisor_sums(full, 30)
    assert all(sums[n - 1] == (gcd(n, 30) == 1) for n in range(1, 31))
    c1 = bonferroni_coeffs(PRIMES, 1)
    assert c1.side == "lower"
    assert divisor_sums(c1, 30)[29] == -2
    with pytest.raises(ValueError):
        bonferroni_coeffs(PRIMES, -1)


@pytest.mark.parametrize("k", range(0, 4))
def test_axioms_up_to_product(k):
    c = bonferroni_coeffs(PRIMES, k)
    sums = divisor_sums(c, 30)
    assert sums[0] == 1
    # only n sharing a sieving prime constrain lambda; for gcd(n, 30) = 1 the sum is lambda_1
    rest = [s for n, s in enumerate(sums, start=1) if gcd(n, 30) > 1]
    if c.side == "upper":
        assert all(s >= 0 for s in rest)
    elif c.side == "lower":
        assert all(s <= 0 for s in rest)


def test_sandwich_examples(instance):
    sample, system = instance
    full = bonferroni_coeffs(PRIMES)
    assert sieve_sum(sample, system, full)["value"] == 8
    assert sum(1 for n in range(1, 31) if gcd(n, 30) == 1) == 8
    b = sandwich_bounds(sample, system, bonferroni_coeffs(PRIMES, 0), bonferroni_coeffs(PRIMES, 1))
    assert (b["lower"], b["exact"], b["upper"]) == (-1, 8, 30)
    assert b["holds"]


def test_bonferroni_monotone(instance):
    sample, system = instance
    val = lambda k: sieve_sum(sample, system, bonferroni_coeffs(PRIMES, k))["value"]
    assert val(0) >= val(2)
    assert val(1) <= val(3)


def test_main_term_split(instance):
    sample, system = instance
    s = sieve_sum(sample, system, bonferroni_coeffs(PRIMES))
    assert s["V"] == Fraction(1, 2) * Fraction(2, 3) * Fraction(4, 5)
    assert s["main"] == 8
    assert s["R"] == 0


@settings(max_examples=60)
@given(st.integers(0, 2 ** 32 - 1), st.integers(0, 5))
def test_sandwich_random(seed, k):
    sample, system = random_instance(np.random.default_rng(seed), max_labels=4, max_items=20)
    labels = system.labels
    kk = min(k, len(labels))
    up = bonferroni_coeffs(labels, kk if kk % 2 == 0 else kk + 1)
    lo = bonferroni_coeffs(labels, kk if kk % 2 == 1 else kk + 1)
    b = sandwich_bounds(sample, system, up, lo)
    assert b["holds"]
    full = bonferroni_coeffs(labels)
    assert sieve_sum(sample, system, full)["value"] == sifted_measure(sample, system)
