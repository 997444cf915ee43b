"""The hyperelliptic family C_t : y^2 = f(x)(x - t) over F_q: point counts,
zeta numerators, Jacobian orders and the square census."""
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from . import kernels
from .errors import ComputeGateError
from .polys import find_irreducible, is_squarefree_mod_p, poly_eval

CENSUS_GATE = 10 ** 8  # q * q^g field evaluations


def _is_prime(n):
    return n > 1 and all(n % d for d in range(2, isqrt(n) + 1))


@dataclass(frozen=True)
class FamilySpec:
    """q prime >= 5 and f monic squarefree over F_q of even degree 2g (leading coefficient first)."""
    q: int
    f: tuple

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(int(c) % self.q for c in self.f))
        if not _is_prime(self.q) or self.q < 5:
            raise ValueError("q must be a prime >= 5")
        if self.f[0] != 1:
            raise ValueError("f must be monic")
        deg = len(self.f) - 1
        if deg < 2 or deg % 2:
            raise ValueError("deg f must be even and >= 2")
        if not is_squarefree_mod_p(list(self.f), self.q):
            raise ValueError("f must be squarefree over F_q")

    @property
    def g(self):
        return (len(self.f) - 1) // 2

    def excluded(self):
        return [t for t in range(self.q) if poly_eval(self.f, t, self.q) == 0]


def _counts(spec, ts, r):
    return kernels.fiber_counts(list(spec.f), spec.q, r, find_irreducible(spec.q, r), list(ts))


def point_count(spec, t, r=1):
    """|C_t(F_{q^r})|: sum over x of (1 + chi(f(x)(x - t))) plus one point at infinity."""
    t %= spec.q
    if poly_eval(spec.f, t, spec.q) == 0:
        raise ValueError("excluded fiber: f(t) = 0")
    if r < 1:
        raise ValueError("r must be >= 1")
    return int(_counts(spec, [t], r)[0])


@dataclass
class ZetaNumerator:
    q: int
    g: int
    coeffs: tuple  # constant term first, degree 2g
    traces: tuple  # a_r = q^r + 1 - |C(F_{q^r})|, r = 1..g

    def __call__(self, x):
        return sum(c * x ** k for k, c in enumerate(self.coeffs))


def numerator_from_counts(q, g, counts):
    """P(T) from |C(F_{q^r})|, r = 1..g, by Newton's identities and the functional equation."""
    if len(counts) != g:
        raise ValueError("need g counts")
    s = [q ** r + 1 - n for r, n in enumerate(counts, start=1)]  # power sums of the roots
    e = [1]
    for k in range(1, g + 1):
        acc = sum((-1) ** (i - 1) * e[k - i] * s[i - 1] for i in range(1, k + 1))
        if acc % k:
            raise ArithmeticError("inconsistent counts (non-integral coefficient)")
        e.append(acc // k)
    c = [(-1) ** k * e[k] for k in range(g + 1)]
    full = c + [q ** (g - k) * c[k] for k in range(g - 1, -1, -1)]
    return ZetaNumerator(q, g, tuple(full), tuple(s))


def zeta_numerator(spec, t):
    counts = [point_count(spec, t, r) for r in range(1, spec.g + 1)]
    return numerator_from_counts(spec.q, spec.g, counts)


def is_q_symplectic_int(coeffs, q):
    """c_0 = 1 and c_j = q^(j-g) c_{2g-j} for j >= g (the functional equation over Z)."""
    n = len(coeffs) - 1
    if n % 2 or coeffs[0] != 1:
        return False
    g = n // 2
    return all(coeffs[j] == q ** (j - g) * coeffs[n - j] for j in range(g, n + 1))


def predicted_count(P, r):
    """|C(F_{q^r})| implied by P, via power sums of its reciprocal roots."""
    q, g = P.q, P.g
    e = [(-1) ** k * P.coeffs[k] for k in range(2 * g + 1)]
    s = []
    for k in range(1, r + 1):
        acc = (-1) ** (k - 1) * k * (e[k] if k <= 2 * g else 0)
        for i in range(1, k):
            acc += (-1) ** (k - i - 1) * (e[k - i] if k - i <= 2 * g else 0) * s[i - 1]
        s.append(acc)
    return q ** r + 1 - s[r - 1]


def jacobian_order(P):
    val = P(1)
    if val <= 0:
        raise AssertionError("non-positive Jacobian order")
    return val


def weil_a1_bound(q, g):
    """floor(2 g sqrt q)."""
    return isqrt(4 * g * g * q)


def is_square(n):
    return n >= 0 and isqrt(n) ** 2 == n


def census_rows(spec, ts=None):
    q, g = spec.q, spec.g
    if q * q ** g > CENSUS_GATE:
        raise ComputeGateError("census-size", "q * q^g = %d exceeds %d" % (q * q ** g, CENSUS_GATE))
    bad = set(spec.excluded())
    ts = [t for t in (range(q) if ts is None else ts) if t % q not in bad]
    per_r = [_counts(spec, ts, r) for r in range(1, g + 1)]
    rows = []
    for k, t in enumerate(ts):
        counts = [int(c[k]) for c in per_r]
        P = numerator_from_counts(q, g, counts)
        J = jacobian_order(P)
        rows.append({"t": t, "counts": counts, "a": list(P.traces), "P": list(P.coeffs),
                     "J_order": J, "C_sq": is_square(counts[0]), "J_sq": is_square(J)})
    return rows


def square_census(spec):
    rows = census_rows(spec)
    n = len(rows)
    return {
        "q": spec.q, "g": spec.g, "fibers": n, "excluded": len(spec.excluded()),
        "fraction_C_square": Fraction(sum(r["C_sq"] for r in rows), n),
        "fraction_J_square": Fraction(sum(r["J_sq"] for r in rows), n),
    }
