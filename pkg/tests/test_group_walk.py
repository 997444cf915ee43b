from fractions import Fraction
from itertools import product

import numpy as np
import pytest
import sympy

from sievelab.errors import ComputeGateError
from sievelab.group_walk import (WalkConfig, _choices, cayley_operator, cayley_spectrum,
                                 coupon_and_transition_times, elementary_generators,
                                 generator_matrix, harmonic_expectation, reducible_table,
                                 run_reducibility_experiment, wilson_interval)

T = sympy.symbols("T")


def test_generators():
    gens = elementary_generators(3)
    assert len(gens) == 12
    mats = {generator_matrix(3, g).tobytes() for g in gens}
    for g in gens:
        inv = np.round(np.linalg.inv(generator_matrix(3, g))).astype(np.int64)
        assert inv.tobytes() in mats


def sympy_flags(config):
    """Reducibility flags by direct sympy matrix products and factorisation."""
    gens = config.generators
    rows = []
    for chunk in _choices(config):
        for row in chunk:
            x = sympy.eye(config.n)
            flags = [True]
            for c in row:
                x = x * sympy.Matrix(generator_matrix(config.n, gens[int(c)]).tolist())
                assert x.det() == 1
                poly = sympy.Poly(x.charpoly(T).as_expr(), T)
                flags.append(not poly.is_irreducible)
            rows.append(flags)
    return np.array(rows)


@pytest.mark.parametrize("n,steps", [(2, 12), (3, 10), (4, 8)])
def test_flags_match_sympy(n, steps):
    config = WalkConfig(n, steps, 25, seed=7)
    assert np.array_equal(reducible_table(config), sympy_flags(config))


def test_first_steps_reducible():
    rows = run_reducibility_experiment(WalkConfig(2, 3, 200, seed=1))
    assert rows[0]["reducible_frequency"] == 1.0
    assert rows[1]["reducible_frequency"] == 1.0


def test_deterministic_and_thread_independent():
    cfg = WalkConfig(3, 20, 2500, seed=11)
    a = run_reducibility_experiment(cfg, threads=1)
    b = run_reducibility_experiment(cfg, threads=4)
    assert a == b
    c = run_reducibility_experiment(WalkConfig(3, 20, 2500, seed=12))
    assert a != c


def test_long_walk_overflow_path_matches_bigint():
    # entries overflow int64 quickly at n = 2 with long walks; both paths must agree
    cfg = WalkConfig(2, 120, 20, seed=3)
    flags = reducible_table(cfg)
    assert flags.shape == (20, 121)
    assert flags[:, 0].all()


def test_budget_gate():
    with pytest.raises(ComputeGateError) as exc:
        reducible_table(WalkConfig(6, 10 ** 4, 10 ** 4, seed=0))
    assert exc.value.gate == "walk-budget"


def test_wilson():
    lo, hi = wilson_interval(50, 100)
    assert lo < 0.5 < hi
    assert wilson_interval(0, 10)[0] == pytest.approx(0, abs=1e-12)
    assert wilson_interval(10, 10)[1] == pytest.approx(1)


def test_harmonic():
    assert harmonic_expectation(3) == Fraction(11, 2)


def test_coupon_times():
    r = coupon_and_transition_times(3, 2000, seed=5)
    assert abs(r["mean_t"] - 5.5) <= 3 * r["se_t"]
    assert r["pathwise_tau_ge_t"]
    assert r["censored_t"] == 0


def sl2_elements(ell):
    return [m for m in product(range(ell), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % ell == 1]


def naive_operator(ell):
    elems = sl2_elements(ell)
    pos = {m: k for k, m in enumerate(elems)}
    gens = [(1, 1, 0, 1), (1, ell - 1, 0, 1), (1, 0, 1, 1), (1, 0, ell - 1, 1)]
    m = np.zeros((len(elems), len(elems)))
    for k, (a, b, c, d) in enumerate(elems):
        for (e, f, g, h) in gens:
            prod_ = ((a * e + b * g) % ell, (a * f + b * h) % ell,
                     (c * e + d * g) % ell, (c * f + d * h) % ell)
            m[k, pos[prod_]] += 0.25
    return m


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_cayley_spectrum_vs_naive(ell):
    s = cayley_spectrum(2, ell)
    ref = np.linalg.eigvalsh(naive_operator(ell))
    assert np.allclose(np.sort(s.eigenvalues), ref, atol=1e-9)
    assert s.multiplicity_one == 1
    assert s.order == ell * (ell * ell - 1)
    assert 0 < s.rho < 1
    assert np.all(np.abs(s.eigenvalues) <= 1 + 1e-12)


def test_operator_stochastic():
    m = cayley_operator(2, 5)
    assert np.allclose(m.sum(axis=1), 1)
    assert np.allclose(m, m.T)


def test_sl2_f2_bipartite():
    s = cayley_spectrum(2, 2)
    assert s.bipartite and s.order == 6
    assert s.rho == pytest.approx(1)


def test_cayley_gate():
    with pytest.raises(ComputeGateError) as exc:
        cayley_spectrum(2, 23)
    assert exc.value.gate == "cayley-size"


def test_config_validation():
    with pytest.raises(ValueError):
        WalkConfig(1, 3, 3, 0)
