from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sievelab.errors import ComputeGateError
from sievelab.finite_groups import (CENSUS_PREDICATES, MatrixGroupSpec, density_report,
                                    charpolys_q_symplectic, enumerate_group, group_order,
                                    is_q_symplectic, is_square, literal_display_identity,
                                    local_density, multiplicators, paper_bound,
                                    q_symplectic_census, q_symplectic_poly, symplectic_form)


def gl2(ell):
    """All invertible 2x2 matrices as tuples (a, b, c, d)."""
    return [m for m in product(range(ell), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % ell]


def squares(ell):
    return {x * x % ell for x in range(ell)}


def brute(ell, pred, det=None):
    return sum(1 for m in gl2(ell) if (det is None or (m[0] * m[3] - m[1] * m[2]) % ell == det)
               and pred(m))


@pytest.mark.parametrize("fam,deg,ell", [("SL", 2, 3), ("SL", 2, 5), ("GL", 2, 3),
                                         ("Sp", 2, 5), ("CSp", 2, 3), ("SL", 3, 3),
                                         ("Sp", 4, 3)])
def test_enumeration_matches_order(fam, deg, ell):
    spec = MatrixGroupSpec(fam, deg, ell)
    mats = enumerate_group(spec)
    assert len(mats) == group_order(spec)
    flat = {m.tobytes() for m in mats % ell}
    assert len(flat) == len(mats)
    if fam in ("Sp", "CSp"):
        j = symplectic_form(deg // 2)
        ms = multiplicators(mats, ell)
        for m, q in zip(mats[:2000], ms[:2000]):
            assert np.array_equal((m.T @ j @ m) % ell, (q * j) % ell)
        if fam == "Sp":
            assert set(ms.tolist()) == {1}
    elif fam == "SL":
        assert all(round(np.linalg.det(m)) % ell == 1 for m in mats[:500])


def test_orders():
    assert group_order(MatrixGroupSpec("SL", 2, 3)) == 24
    assert group_order(MatrixGroupSpec("Sp", 4, 3)) == 51840


def test_sp2_equals_sl2():
    for ell in (3, 5, 7):
        a = {m.tobytes() for m in enumerate_group(MatrixGroupSpec("Sp", 2, ell))}
        b = {m.tobytes() for m in enumerate_group(MatrixGroupSpec("SL", 2, ell))}
        assert a == b


def test_order_gate():
    with pytest.raises(ComputeGateError) as exc:
        enumerate_group(MatrixGroupSpec("SL", 4, 5))
    assert exc.value.gate == "group-order"


def test_spec_validation():
    with pytest.raises(ValueError):
        MatrixGroupSpec("SL", 2, 2)
    with pytest.raises(ValueError):
        MatrixGroupSpec("Sp", 3, 3)
    with pytest.raises(ValueError):
        MatrixGroupSpec("SO", 2, 3)


def test_density_examples():
    sl23 = MatrixGroupSpec("SL", 2, 3)
    assert local_density(sl23, 1) == Fraction(1, 4)
    assert local_density(sl23, 2) == Fraction(3, 8)
    csp = MatrixGroupSpec("CSp", 2, 5)
    d3 = local_density(csp, 3, fiber=1)
    assert d3 >= Fraction(5, 12)
    with pytest.raises(ValueError):
        local_density(sl23, 7)


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_rank_one_densities_vs_brute_force(ell):
    sq = squares(ell)
    sl = MatrixGroupSpec("SL", 2, ell)
    csp = MatrixGroupSpec("CSp", 2, ell)
    order = ell * (ell ** 2 - 1)
    irr = lambda m: ((m[0] + m[3]) ** 2 - 4) % ell not in sq
    assert local_density(sl, 1) == Fraction(brute(ell, irr, 1), order)
    nonsq = lambda m: m[0] % ell not in sq
    assert local_density(sl, 2) == Fraction(brute(ell, nonsq, 1), order)
    for q in range(1, ell):
        dm1 = lambda m: ((m[0] - 1) * (m[3] - 1) - m[1] * m[2]) % ell
        trs = lambda m: (q + 1 - m[0] - m[3]) % ell
        assert local_density(csp, 3, q) == Fraction(brute(ell, lambda m: dm1(m) in sq, q), order)
        assert local_density(csp, 4, q) == Fraction(brute(ell, lambda m: trs(m) in sq, q), order)
        assert local_density(csp, 5, q) == Fraction(brute(ell, lambda m: dm1(m) == 0, q), order)
        assert local_density(csp, 6, q) == Fraction(brute(ell, lambda m: trs(m) == 0, q), order)


@pytest.mark.parametrize("ell", [3, 5, 7, 11])
def test_bounds_hold_rank_one(ell):
    for fam in ("SL", "CSp"):
        spec = MatrixGroupSpec(fam, 2, ell)
        fibers = range(1, ell) if fam == "CSp" else [None]
        for part in range(1, 7):
            if fam == "SL" and part >= 3:
                fibers_p = [1]
            else:
                fibers_p = fibers if part >= 3 else [None]
            for q in fibers_p:
                assert density_report(spec, part, q)["satisfied"], (fam, ell, part, q)


def test_bound_values():
    spec = MatrixGroupSpec("CSp", 4, 3)
    assert paper_bound(3, spec) == (">=", Fraction(1, 2) * Fraction(3, 4) ** 2)
    assert paper_bound(5, spec) == ("<=", Fraction(3, 4))
    assert paper_bound(5, MatrixGroupSpec("CSp", 2, 5)) == ("<=", Fraction(1, 4))


@pytest.mark.slow
def test_bounds_hold_genus_two():
    for fam in ("Sp", "CSp"):
        spec = MatrixGroupSpec(fam, 4, 3)
        fibers = (1, 2) if fam == "CSp" else (1,)
        for part in range(1, 7):
            for q in (fibers if part >= 3 else [None]):
                assert density_report(spec, part, q)["satisfied"], (fam, part, q)


def test_charpolys_q_symplectic():
    for spec in (MatrixGroupSpec("CSp", 2, 5), MatrixGroupSpec("CSp", 4, 3)):
        assert charpolys_q_symplectic(enumerate_group(spec), spec.ell)


def test_literal_display_fails_for_nontrivial_multiplicator():
    # x^2 - 3x + 2 over F_5 is the charpoly of diag(1, 2): multiplicator q = 2
    f = [1, -3 % 5, 2]
    assert is_q_symplectic(f, 2, 5)
    assert not literal_display_identity(f, 2, 5)
    assert literal_display_identity([1, 1, 1], 1, 5)


@settings(max_examples=60)
@given(st.sampled_from([3, 5, 7, 11]), st.integers(1, 3), st.data())
def test_census_polys_are_q_symplectic(ell, g, data):
    q = data.draw(st.integers(1, ell - 1))
    a = data.draw(st.lists(st.integers(0, ell - 1), min_size=g, max_size=g))
    f = q_symplectic_poly(a, q, ell)
    assert f[0] == 1 and f[-1] == pow(q, g, ell)
    assert is_q_symplectic(f, q, ell)


@pytest.mark.parametrize("g,ell", [(1, 5), (1, 7), (2, 3), (2, 5)])
def test_census_square_count(g, ell):
    for q in range(1, ell):
        count, total = q_symplectic_census(ell, g, q, "f1_square")
        assert total == ell ** g
        assert count == (ell ** g + ell ** (g - 1)) // 2


def test_census_examples():
    assert q_symplectic_census(5, 1, 2, "f1_square") == (3, 5)
    assert q_symplectic_census(5, 1, 2, "f1_zero")[0] == 1
    assert q_symplectic_census(3, 2, 2, "a1_eq_q1")[1] == 9
    for ell, g in ((5, 1), (3, 2)):
        for q in range(1, ell):
            assert q_symplectic_census(ell, g, q, "f1_zero")[0] == ell ** (g - 1)
    with pytest.raises(ValueError):
        q_symplectic_census(5, 1, 1, "nope")
    assert set(CENSUS_PREDICATES) >= {"f1_square", "f1_zero"}


def test_is_square():
    assert is_square(0, 7) and is_square(2, 7) and not is_square(3, 7)
