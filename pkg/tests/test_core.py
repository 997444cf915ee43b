from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sievelab.classical import IntervalSpec, character_basis, interval_sample, interval_system
from sievelab.core import (GramDelta, OrthonormalBasisSpec, SieveSupport, SieveSystem,
                           SiftableSample, binary_event_system, compute_H, dual_variance_check,
                           gram_delta, independent_sample, large_sieve_check, row_sum_delta_bound,
                           sifted_measure, standard_basis)
from sievelab.instances import random_instance


def coprime_system(primes):
    return interval_system(primes)


def test_H_examples():
    system = coprime_system([2, 3])
    assert compute_H(system, SieveSupport.power_set([2, 3])) == 3
    assert compute_H(system, SieveSupport([frozenset()])) == 1
    assert compute_H(system, SieveSupport.singletons([2, 3])) == Fraction(5, 2)


def test_full_omega_rejected():
    with pytest.raises(ValueError):
        SieveSystem((2,), {2: (0, 1)}, {2: {0: Fraction(1), 1: Fraction(0)}}, {2: {0}})


def test_sifted_examples():
    primes = [2, 3, 5]
    system = coprime_system(primes)
    sample = interval_sample(IntervalSpec(0, 30), primes)
    assert sifted_measure(sample, system) == 8
    assert sifted_measure(sample, system, labels=()) == 30
    half = SieveSystem((2,), {2: (0, 1)}, {2: {0: Fraction(1, 2), 1: Fraction(1, 2)}}, {2: {0}})
    small = SiftableSample(range(1, 5), [1] * 4, {2: [n % 2 for n in range(1, 5)]})
    assert sifted_measure(small, half) == 2


def test_support_validation():
    system = coprime_system([2, 3])
    with pytest.raises(ValueError):
        gram_delta(interval_sample(IntervalSpec(0, 5), [2, 3]), system,
                   SieveSupport([frozenset(), frozenset([2, 3])]))
    with pytest.raises(ValueError):
        gram_delta(interval_sample(IntervalSpec(0, 5), [2, 3]), system,
                   SieveSupport([frozenset([2])]))


def test_system_validation():
    with pytest.raises(ValueError):
        SieveSystem((2,), {2: (0, 1)}, {2: {0: Fraction(1, 3), 1: Fraction(1, 3)}}, {2: {0}})
    with pytest.raises(ValueError):
        SieveSystem((2,), {2: (0, 1)}, {2: {0: Fraction(0), 1: Fraction(1)}}, {2: {0}})


def test_basis_validation():
    system = coprime_system([3])
    bad = OrthonormalBasisSpec({3: np.ones((3, 3))})
    with pytest.raises(ValueError):
        gram_delta(interval_sample(IntervalSpec(0, 6), [3]), system,
                   SieveSupport.singletons([3]), bad)


def test_empty_support_delta_is_mass():
    system = coprime_system([2, 3])
    sample = interval_sample(IntervalSpec(0, 7), [2, 3])
    gd = gram_delta(sample, system, SieveSupport([frozenset()]))
    assert gd.matrix.shape == (1, 1)
    assert gd.delta == pytest.approx(7)
    assert row_sum_delta_bound(gd) == pytest.approx(7)


def test_row_sum_diagonal():
    gd = GramDelta([], np.diag([2.0, 5.0]).astype(complex), 5.0)
    assert row_sum_delta_bound(gd) == 5.0


def test_character_instance_within_bound():
    primes = [2, 3]
    system = coprime_system(primes)
    sample = interval_sample(IntervalSpec(0, 10), primes)
    support = SieveSupport.products_up_to(primes, 3)
    gd = gram_delta(sample, system, support, character_basis(primes))
    assert gd.delta <= 18 + 1e-9
    assert row_sum_delta_bound(gd) >= gd.delta - 1e-9


def test_binary_basis():
    _, basis = binary_event_system([Fraction(1, 2)])
    assert np.allclose(basis.tables[0][1], [-1, 1])
    system, basis = binary_event_system([Fraction(1, 3)])
    nu = np.array([2 / 3, 1 / 3])
    phi = basis.tables[0][1]
    assert abs(np.sum(nu * phi)) < 1e-12
    assert abs(np.sum(nu * abs(phi) ** 2) - 1) < 1e-12
    with pytest.raises(ValueError):
        binary_event_system([Fraction(0)])


def test_two_fair_events():
    probs = [Fraction(1, 2)] * 2
    system, basis = binary_event_system(probs)
    sample = SiftableSample(range(4), [1] * 4, {0: [0, 0, 1, 1], 1: [0, 1, 0, 1]})
    sample = SiftableSample(range(4), [Fraction(1, 4)] * 4, sample.values)
    check = large_sieve_check(sample, system, SieveSupport.power_set([0, 1]), basis)
    assert check.bound == pytest.approx(0.25, abs=1e-12)
    assert check.sifted == Fraction(1, 4)


def test_dual_examples():
    primes = [2, 3]
    system = coprime_system(primes)
    sample = interval_sample(IntervalSpec(0, 6), primes)
    c = dual_variance_check(sample, system, character_basis(primes))
    assert c.P == Fraction(5, 6)
    assert c.lhs == Fraction(17, 6)
    assert c.Q == Fraction(17, 36)
    assert c.holds
    single = SieveSystem(("a",), {"a": (0, 1)}, {"a": {0: Fraction(1, 2), 1: Fraction(1, 2)}},
                         {"a": set()})
    c = dual_variance_check(SiftableSample([0], [1], {"a": [0]}), single)
    assert c.lhs == 0 and c.holds


def random_support(rng, labels):
    subs = {frozenset()} | {frozenset([l]) for l in labels}
    for r in range(2, len(labels) + 1):
        for m in combinations(labels, r):
            if rng.random() < 0.5:
                subs.add(frozenset(m))
    return SieveSupport(tuple(subs))


seeds = st.integers(0, 2 ** 32 - 1)


@settings(max_examples=120)
@given(seeds)
def test_sieve_inequality_random(seed):
    rng = np.random.default_rng(seed)
    sample, system = random_instance(rng, max_labels=3, max_size=5, max_items=50)
    support = random_support(rng, system.labels)
    gd = gram_delta(sample, system, support)
    h = compute_H(system, support)
    assert float(sifted_measure(sample, system, system.order(support.primes))) <= gd.delta / float(h) + 1e-9
    eig = np.linalg.eigvalsh(gd.matrix)
    assert eig[0] >= -1e-9 * max(gd.delta, 1)
    assert np.allclose(gd.matrix, gd.matrix.conj().T)
    assert row_sum_delta_bound(gd) >= gd.delta - 1e-9
    assert gd.delta >= float(sample.total_mass) - 1e-9


@settings(max_examples=60)
@given(seeds)
def test_full_power_set_H_is_product(seed):
    rng = np.random.default_rng(seed)
    _, system = random_instance(rng, max_labels=4, max_size=5)
    expected = Fraction(1)
    for l in system.labels:
        expected /= 1 - system.nu_omega(l)
    assert compute_H(system, SieveSupport.power_set(system.labels)) == expected


@settings(max_examples=100)
@given(seeds)
def test_dual_inequality_random(seed):
    sample, system = random_instance(np.random.default_rng(seed), max_items=30)
    assert dual_variance_check(sample, system).holds


@settings(max_examples=40)
@given(st.lists(st.fractions(min_value=Fraction(1, 20), max_value=Fraction(19, 20),
                             max_denominator=20), min_size=1, max_size=4))
def test_independent_events_uncorrelated(probs):
    system, basis = binary_event_system(probs)
    sample = independent_sample(probs)
    gd = gram_delta(sample, system, SieveSupport.singletons(system.labels), basis)
    off = gd.matrix[1:, 1:] - np.diag(np.diag(gd.matrix[1:, 1:]))
    assert np.max(np.abs(off), initial=0) < 1e-12
    assert abs(gd.delta - 1) < 1e-9


def test_standard_basis_orthonormal():
    sample, system = random_instance(np.random.default_rng(3))
    standard_basis(system).validate(system)


def test_zero_density_off_omega_allowed():
    system = SieveSystem((5,), {5: (0, 1, 2)}, {5: {0: Fraction(1, 2), 1: Fraction(1, 2)}}, {5: {0}})
    basis = standard_basis(system)
    assert basis.tables[5].shape == (2, 3)
    sample = SiftableSample(range(4), [1, 1, 1, 2], {5: [0, 1, 1, 0]})
    assert large_sieve_check(sample, system, SieveSupport.singletons([5])).holds


def test_zero_density_bound_fails_for_items_on_null_points():
    # items 1, 2, 3 mod 3 with nu(0) = 0, Omega = {1}: sifted {2, 3} has mass 2,
    # but the character Gram gives Delta = 3 and H = 2
    from sievelab.classical import zero_density_system
    system, basis = zero_density_system([3], {3: {1}})
    sample = interval_sample(IntervalSpec(0, 3), [3])
    check = large_sieve_check(sample, system, SieveSupport.singletons([3]), basis)
    assert check.sifted == 2 and check.H == 2
    assert check.delta == pytest.approx(3)
    assert not check.holds
    coprime = SiftableSample([1, 2], [1, 1], {3: [1, 2]})
    assert large_sieve_check(coprime, system, SieveSupport.singletons([3]), basis).holds
