import numpy as np
import pytest

from sievelab import kernels
from sievelab.finite_groups import MatrixGroupSpec, enumerate_group
from sievelab.group_walk import WalkConfig, _choices, _gen_arrays
from sievelab.polys import find_irreducible

py = kernels.get_backend("python")
backends = [py] + ([kernels.BACKENDS["cython"]] if "cython" in kernels.BACKENDS else [])


def test_backend_selected():
    assert kernels.BACKEND in kernels.BACKENDS


@pytest.mark.skipif("cython" not in kernels.BACKENDS, reason="extension not built")
def test_compiled_matches_python():
    cy = kernels.BACKENDS["cython"]
    gens = np.array([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], dtype=np.int64)
    a, b = py.group_closure(gens, 5, 200), cy.group_closure(gens, 5, 200)
    assert np.array_equal(a, b) and len(a) == 120
    mats = enumerate_group(MatrixGroupSpec("CSp", 2, 5))
    assert np.array_equal(py.charpoly_mod_p(mats, 5), cy.charpoly_mod_p(mats, 5))
    for n, steps in ((2, 80), (3, 40), (5, 25)):
        ch = _choices(WalkConfig(n, steps, 60, seed=n))[0]
        gi, gj, gs = _gen_arrays(n)
        ra, rb = py.walk_charpolys(ch, gi, gj, gs, n), cy.walk_charpolys(ch, gi, gj, gs, n)
        assert np.array_equal(ra[0], rb[0]) and np.array_equal(ra[1], rb[1])
    for r in (1, 2, 3):
        mod = find_irreducible(7, r)
        args = ([1, 0, 3], 7, r, mod, [0, 1, 5, 6])
        assert np.array_equal(py.fiber_counts(*args), cy.fiber_counts(*args))
    for ell in (5, 7, 11, 101):
        assert py.ec_point_order((0, 0, -1, -1, 0), 0, 0, ell, 2 * ell + 3) == \
            cy.ec_point_order((0, 0, -1, -1, 0), 0, 0, ell, 2 * ell + 3)


@pytest.mark.parametrize("mod", backends, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_closure_gate(mod):
    gens = np.array([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], dtype=np.int64)
    with pytest.raises(OverflowError):
        mod.group_closure(gens, 7, 100)


@pytest.mark.parametrize("mod", backends, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_walk_overflow_flag(mod):
    ch = np.zeros((1, 200), dtype=np.int32)  # E_01(+1) and E_10(+1) alternating
    ch[0, 1::2] = 2  # entries grow like Fibonacci numbers
    gi, gj, gs = _gen_arrays(2)
    coeffs, overflow = mod.walk_charpolys(ch, gi, gj, gs, 2)
    assert overflow[0] == 1
    assert coeffs[0, 0].tolist() == [1, -2, 1]
