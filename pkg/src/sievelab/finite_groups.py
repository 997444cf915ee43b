"""Exhaustive enumeration of small linear and symplectic groups over F_l,
exact local densities and q-symplectic polynomial counts."""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import prod

import numpy as np

from . import kernels
from .errors import ComputeGateError
from .polys import is_irreducible_mod_p

ORDER_GATE = 10 ** 7
FAMILIES = ("SL", "GL", "Sp", "CSp")
PARTS = {
    1: "irreducible_charpoly",
    2: "entry_nonsquare",
    3: "det_minus_one_square",
    4: "trace_shift_square",
    5: "det_minus_one_zero",
    6: "trace_shift_zero",
}


def _is_prime(n):
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


@dataclass(frozen=True)
class MatrixGroupSpec:
    family: str
    degree: int
    ell: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError("family must be one of %s" % (FAMILIES,))
        if not _is_prime(self.ell) or self.ell < 3:
            raise ValueError("ell must be an odd prime")
        if self.degree < 1 or (self.family in ("Sp", "CSp") and self.degree % 2):
            raise ValueError("bad degree %d for %s" % (self.degree, self.family))

    @property
    def genus(self):
        return self.degree // 2


def sp_order(g, ell):
    return ell ** (g * g) * prod(ell ** (2 * i) - 1 for i in range(1, g + 1))


def group_order(spec):
    n, l = spec.degree, spec.ell
    gl = prod(l ** n - l ** i for i in range(n))
    if spec.family == "GL":
        return gl
    if spec.family == "SL":
        return gl // (l - 1)
    sp = sp_order(spec.genus, l)
    return sp if spec.family == "Sp" else sp * (l - 1)


def symplectic_form(g):
    j = np.zeros((2 * g, 2 * g), dtype=np.int64)
    j[:g, g:] = np.eye(g, dtype=np.int64)
    j[g:, :g] = -np.eye(g, dtype=np.int64)
    return j


def _canonical(mats, ell):
    d = mats.shape[1]
    flat = mats.reshape(len(mats), d * d)
    order = np.lexsort(flat.T[::-1])
    return mats[order]


def _all_vectors(ell, d):
    return np.array(list(product(range(ell), repeat=d)), dtype=np.int64)


def _det_int(m):
    return int(round(np.linalg.det(m.astype(float))))


def _row_completion(d, ell, target):
    """Matrices with rows chosen one by one; the last row fixes det (== target, or != 0)."""
    vecs = _all_vectors(ell, d)
    partials = [np.zeros((0, d), dtype=np.int64)]
    for k in range(d - 1):
        nxt = []
        coeffs = _all_vectors(ell, k) if k else np.zeros((1, 0), dtype=np.int64)
        weights = ell ** np.arange(d - 1, -1, -1)
        for rows in partials:
            span = set(((coeffs @ rows) % ell @ weights).tolist())
            codes = vecs @ weights
            for v in vecs[~np.isin(codes, list(span))]:
                nxt.append(np.vstack([rows, v]))
        partials = nxt
    out = []
    for rows in partials:
        cof = np.array([(-1) ** (d - 1 + j) * _det_int(np.delete(rows, j, axis=1))
                        for j in range(d)], dtype=np.int64)
        dets = (vecs @ cof) % ell
        sel = dets == target if target is not None else dets != 0
        for v in vecs[sel]:
            out.append(np.vstack([rows, v]))
    return np.array(out, dtype=np.int64).reshape(-1, d, d)


def _sp_generators(g, ell):
    gens = []
    syms = []
    for i in range(g):
        s = np.zeros((g, g), dtype=np.int64)
        s[i, i] = 1
        syms.append(s)
        for j in range(i + 1, g):
            s = np.zeros((g, g), dtype=np.int64)
            s[i, j] = s[j, i] = 1
            syms.append(s)
    eye = np.eye(g, dtype=np.int64)
    zero = np.zeros((g, g), dtype=np.int64)
    for s in syms:
        gens.append(np.block([[eye, s], [zero, eye]]))
        gens.append(np.block([[eye, zero], [s, eye]]))
    return np.array(gens) % ell


def multiplicator(m, ell):
    """m(g) with g^T J g = m(g) J, or None if g preserves the form only up to nothing."""
    m = np.asarray(m, dtype=np.int64)
    g = m.shape[0] // 2
    j = symplectic_form(g)
    lhs = (m.T @ j @ m) % ell
    c = int(lhs[0, g])
    return c if np.array_equal(lhs, (c * j) % ell) else None


def enumerate_group(spec):
    """All elements (array of shape (order, d, d), entries in [0, l)), each exactly once."""
    return _enumerate_cached(spec)


@lru_cache(maxsize=16)
def _enumerate_cached(spec):
    order = group_order(spec)
    if order > ORDER_GATE:
        raise ComputeGateError("group-order", "|G| = %d exceeds %d" % (order, ORDER_GATE))
    d, l = spec.degree, spec.ell
    fam = spec.family
    if fam == "Sp" and d == 2:
        fam = "SL"
    if fam == "SL":
        mats = _row_completion(d, l, 1)
    elif fam == "GL":
        mats = _row_completion(d, l, None)
    elif fam == "CSp" and d == 2:
        mats = _row_completion(2, l, None)
    else:
        g = spec.genus
        sp = kernels.group_closure(_sp_generators(g, l), l, order)
        if fam == "Sp":
            mats = sp
        else:
            parts = []
            for mval in range(1, l):
                dm = np.diag([1] * g + [mval] * g).astype(np.int64)
                parts.append((sp @ dm) % l)
            mats = np.concatenate(parts)
    mats = _canonical(mats % l, l)
    if len(mats) != order:
        raise AssertionError("enumerated %d elements, expected %d" % (len(mats), order))
    mats.setflags(write=False)
    return mats


def iter_group(spec):
    yield from enumerate_group(spec)


def multiplicators(mats, ell):
    """Vectorised m(g) for an array of symplectic-similitude matrices."""
    g = mats.shape[1] // 2
    j = symplectic_form(g)
    lhs = np.einsum("kji,jl,klm->kim", mats, j, mats) % ell
    return lhs[:, 0, g]


def is_square(a, ell):
    """Euler's criterion; 0 counts as a square."""
    a %= ell
    return a == 0 or pow(a, (ell - 1) // 2, ell) == 1


def _square_table(ell):
    t = np.zeros(ell, dtype=bool)
    t[(np.arange(ell) ** 2) % ell] = True
    return t


def is_q_symplectic(f, q, ell):
    """f = [c_0=1, c_1, ..., c_2g] (constant term first) with q^g T^2g f(1/(qT)) = f(T)."""
    f = [int(c) % ell for c in f]
    n = len(f) - 1
    if n % 2 or f[0] != 1:
        return False
    g = n // 2
    for j in range(n + 1):
        # coefficient of T^j on the left is q^(g - (2g - j)) c_{2g-j} = q^(j-g) c_{2g-j}
        e = j - g
        factor = pow(q, e, ell) if e >= 0 else pow(pow(q, -e, ell), ell - 2, ell)
        if (factor * f[n - j]) % ell != f[j]:
            return False
    return True


def literal_display_identity(f, q, ell):
    """(qT)^2g f(1/(qT)) == f(T) taken literally (holds only when q^g = 1)."""
    f = [int(c) % ell for c in f]
    n = len(f) - 1
    return all((pow(q, n - j, ell) * f[n - j]) % ell == f[j] for j in range(n + 1))


def q_symplectic_poly(a, q, ell):
    """[1, a_1, ..., a_g, q a_{g-1}, ..., q^{g-1} a_1, q^g] reduced mod l."""
    g = len(a)
    coeffs = [1] + [int(x) % ell for x in a]
    full = [0] * (2 * g + 1)
    full[:g + 1] = coeffs
    for j in range(g + 1, 2 * g + 1):
        full[j] = pow(q, j - g, ell) * coeffs[2 * g - j] % ell
    return full


CENSUS_PREDICATES = ("f1_square", "q1_minus_a1_square", "f1_zero", "a1_eq_q1")


def q_symplectic_census(ell, g, q, predicate):
    """(count, total) of q-symplectic polynomials over F_l satisfying ``predicate``."""
    if predicate not in CENSUS_PREDICATES:
        raise ValueError("unknown predicate %r" % (predicate,))
    q %= ell
    if q == 0:
        raise ValueError("q must be a unit")
    count = total = 0
    for a in product(range(ell), repeat=g):
        f = q_symplectic_poly(a, q, ell)
        total += 1
        f1 = sum(f) % ell
        if predicate == "f1_square":
            ok = is_square(f1, ell)
        elif predicate == "q1_minus_a1_square":
            ok = is_square(q + 1 - f[1], ell)
        elif predicate == "f1_zero":
            ok = f1 == 0
        else:
            ok = (f[1] - q - 1) % ell == 0
        count += ok
    return count, total


def _irreducible_flags(cps, ell):
    cache = {}
    out = np.zeros(len(cps), dtype=bool)
    for k, row in enumerate(map(tuple, cps.tolist())):
        if row not in cache:
            cache[row] = is_irreducible_mod_p(list(row), ell)
        out[k] = cache[row]
    return out


def paper_bound(part, spec):
    """Reference threshold for each part: ('>=', value) or ('<=', value)."""
    l, g = spec.ell, max(1, spec.genus)
    if part == 1:
        if spec.family in ("SL", "GL"):
            return (">=", Fraction(1, 2 * spec.degree))
        return (">=", Fraction(1, 4 * g))
    if part == 2:
        return (">=", Fraction(1, 4))
    if part in (3, 4):
        return (">=", Fraction(1, 2) * Fraction(l, l + 1) ** g)
    if part in (5, 6):
        return ("<=", min(Fraction(1), Fraction(l ** (g - 1), (l - 1) ** g)))
    raise ValueError("unknown part %r" % (part,))


def local_density(spec, part, fiber=None, entry=(0, 0), mats=None):
    """Exact density for one part of the local-density statement.

    Parts 1-2 count the whole group (divisor |G|) unless a CSp fiber is given;
    parts 3-6 count the fiber m(g) = q of CSp (or Sp itself for q = 1), divisor |Sp|.
    """
    if part not in PARTS:
        raise ValueError("unknown predicate id %r" % (part,))
    l, d = spec.ell, spec.degree
    if mats is None:
        mats = enumerate_group(spec)
    if part >= 3 and spec.family not in ("Sp", "CSp") and not (spec.family == "SL" and d == 2):
        raise ValueError("parts 3-6 need a symplectic family")
    if part >= 3 and fiber is None:
        fiber = 1
    if fiber is not None:
        q = fiber % l
        if q == 0:
            raise ValueError("fiber must be a unit mod l")
        if spec.family == "CSp":
            mats = mats[multiplicators(mats, l) == q]
        elif q != 1:
            raise ValueError("only the fiber q = 1 exists outside CSp")
        divisor = sp_order(max(1, d // 2), l)
    else:
        q = 1
        divisor = len(mats)
    cps = kernels.charpoly_mod_p(mats, l)  # det(T - g), leading first
    sq = _square_table(l)
    if part == 1:
        hits = _irreducible_flags(cps, l)
    elif part == 2:
        i, j = entry
        v = mats[:, i, j] % l
        hits = (v != 0) & ~sq[v]
    elif part in (3, 5):
        det_g_minus_1 = ((-1) ** d * cps.sum(axis=1)) % l
        hits = sq[det_g_minus_1] if part == 3 else det_g_minus_1 == 0
    else:
        tr = np.trace(mats, axis1=1, axis2=2)
        val = (q + 1 - tr) % l
        hits = sq[val] if part == 4 else val == 0
    return Fraction(int(hits.sum()), divisor)


def charpolys_q_symplectic(mats, ell):
    """True when det(1 - T g) is q-symplectic for q = m(g), for every CSp element."""
    cps = kernels.charpoly_mod_p(mats, ell)
    ms = multiplicators(mats, ell)
    seen = {}
    for row, q in zip(map(tuple, cps.tolist()), ms.tolist()):
        key = (row, q)
        if key not in seen:
            # det(1 - T g), constant term first, equals det(T - g), leading term first
            seen[key] = is_q_symplectic(list(row), q, ell)
        if not seen[key]:
            return False
    return True


def _divisor(spec, part, fiber):
    if part >= 3 or fiber is not None:
        return sp_order(max(1, spec.degree // 2), spec.ell)
    return group_order(spec)


def density_report(spec, part, fiber=None, entry=(0, 0)):
    dens = local_density(spec, part, fiber, entry)
    op, bound = paper_bound(part, spec)
    ok = dens >= bound if op == ">=" else dens <= bound
    return {
        "family": spec.family, "degree": spec.degree, "ell": spec.ell, "part": part,
        "predicate": PARTS[part], "fiber": fiber,
        "order": group_order(spec), "count": int(dens * _divisor(spec, part, fiber)),
        "density_num": dens.numerator, "density_den": dens.denominator,
        "paper_bound": {"op": op, "value": bound}, "satisfied": bool(ok),
    }
