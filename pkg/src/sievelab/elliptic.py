"""Elliptic curves over Q in long Weierstrass form, denominators of multiples,
reduction orders and elliptic divisibility sequences."""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, inf, isqrt, log, prod

from . import kernels
from .classical import primes_up_to

OMEGA_INFINITY = inf  # omega of the identity (denominator "zero")


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""
    a1: int = 0
    a2: int = 0
    a3: int = 0
    a4: int = 0
    a6: int = 0

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValueError("singular curve (discriminant 0)")

    @property
    def coeffs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def discriminant(self):
        a1, a2, a3, a4, a6 = self.coeffs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def contains(self, P):
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        a1, a2, a3, a4, a6 = self.coeffs
        return y * y + a1 * x * y + a3 * y == x ** 3 + a2 * x * x + a4 * x + a6


@dataclass(frozen=True)
class CurvePoint:
    x: Fraction = None
    y: Fraction = None

    @property
    def is_infinity(self):
        return self.x is None

    @classmethod
    def affine(cls, x, y):
        return cls(Fraction(x), Fraction(y))


INFINITY = CurvePoint()


def _check(curve, *points):
    for P in points:
        if not curve.contains(P):
            raise ValueError("point %r is not on the curve" % (P,))


def point_neg(curve, P):
    if P.is_infinity:
        return P
    return CurvePoint(P.x, -P.y - curve.a1 * P.x - curve.a3)


def _add(curve, P, Q):
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    a1, a2, a3, a4, a6 = curve.coeffs
    if P.x == Q.x:
        if P.y + Q.y + a1 * Q.x + a3 == 0:
            return INFINITY
        lam = (3 * P.x * P.x + 2 * a2 * P.x + a4 - a1 * P.y) / (2 * P.y + a1 * P.x + a3)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    nu = P.y - lam * P.x
    x3 = lam * lam + a1 * lam - a2 - P.x - Q.x
    y3 = -(lam + a1) * x3 - nu - a3
    return CurvePoint(x3, y3)


def point_add(curve, P, Q):
    _check(curve, P, Q)
    return _add(curve, P, Q)


def point_mul(curve, P, n):
    """n P by double-and-add (negative n allowed)."""
    _check(curve, P)
    if n < 0:
        return point_mul(curve, point_neg(curve, P), -n)
    acc, base = INFINITY, P
    while n:
        if n & 1:
            acc = _add(curve, acc, base)
        base = _add(curve, base, base)
        n >>= 1
    return acc


def multiples(curve, P, N):
    """[P, 2P, ..., NP] by repeated addition."""
    _check(curve, P)
    out, cur = [], INFINITY
    for _ in range(N):
        cur = _add(curve, cur, P)
        out.append(cur)
    return out


def normalized_form(P):
    """(a, b, d) with x = a/d^2, y = b/d^3, gcd(a, d) = gcd(b, d) = 1."""
    if P.is_infinity:
        raise ValueError("the point at infinity has no affine form")
    dx, dy = P.x.denominator, P.y.denominator
    d = isqrt(dx)
    if d * d != dx or d ** 3 != dy:
        raise AssertionError("denominators %d, %d are not d^2, d^3" % (dx, dy))
    return P.x.numerator, P.y.numerator, d


@lru_cache(maxsize=4)
def _prime_chunks(bound, size=2000):
    ps = primes_up_to(bound)
    return [(ps[i:i + size], prod(ps[i:i + size])) for i in range(0, len(ps), size)]


def omega_trial(n, bound=10 ** 6):
    """(distinct primes <= bound dividing n, cofactor > 1 left over)."""
    n = abs(n)
    if n == 0:
        return OMEGA_INFINITY, False
    found = 0
    for ps, pr in _prime_chunks(bound):
        if n == 1:
            break
        g = gcd(n, pr)
        if g == 1:
            continue
        for p in ps:
            if g % p == 0:
                found += 1
                while n % p == 0:
                    n //= p
    return found, n > 1


def denominator_and_omega(P, bound=10 ** 6):
    """(d, omega, cofactor_flag); omega counts primes <= bound only (a lower bound if flagged)."""
    if P.is_infinity:
        return 0, OMEGA_INFINITY, False
    _, _, d = normalized_form(P)
    w, flag = omega_trial(d, bound)
    return d, w, flag


def eds_discriminant(w2, w3, w4):
    return (w4 * w2 ** 15 - w3 ** 3 * w2 ** 12 + 3 * w4 ** 2 * w2 ** 10
            - 20 * w4 * w3 ** 3 * w2 ** 7 + 4 * w4 ** 3 * w2 ** 5 + 16 * w3 ** 6 * w2 ** 4
            + 8 * w4 ** 2 * w3 ** 3 * w2 ** 2 + w4 ** 4)


@dataclass
class EdsState:
    W: list

    def __getitem__(self, n):
        return self.W[n]


def eds_extend(w2, w3, w4, N):
    """W_0..W_N with W_k W_{k-4} = W_{k-1} W_{k-3} W_2^2 - W_3 W_{k-2}^2."""
    if w2 * w3 == 0:
        raise ValueError("need W2 W3 != 0")
    if w4 % w2:
        raise ValueError("need W2 | W4")
    if eds_discriminant(w2, w3, w4) == 0:
        raise ValueError("discriminant condition fails")
    W = [0, 1, w2, w3, w4][:N + 1]
    for k in range(5, N + 1):
        num = W[k - 1] * W[k - 3] * w2 * w2 - w3 * W[k - 2] ** 2
        den = W[k - 4]
        if den == 0 or num % den:
            raise ArithmeticError("inexact division at n = %d" % k)
        W.append(num // den)
    return EdsState(W)


def reduce_point(curve, P, ell):
    """(x, y) mod l, or None when P reduces to the identity."""
    if P.is_infinity:
        return None
    a, b, d = normalized_form(P)
    if d % ell == 0:
        return None
    inv = pow(d, -1, ell)
    return (a * inv * inv % ell, b * inv ** 3 % ell)


def order_mod_ell(curve, P, ell):
    """Order of the reduction of P in E(F_l), l of good reduction."""
    if curve.discriminant % ell == 0:
        raise ValueError("bad reduction at %d" % ell)
    pt = reduce_point(curve, P, ell)
    if pt is None:
        return 1
    limit = ell + 2 * isqrt(ell) + 3
    k = kernels.ec_point_order(curve.coeffs, pt[0], pt[1], ell, limit)
    if k == 0:
        raise AssertionError("order not found below the Hasse bound")
    return k


def count_points_mod(curve, ell):
    """|E(F_l)| including the point at infinity."""
    a1, a2, a3, a4, a6 = [c % ell for c in curve.coeffs]
    total = 1
    for x in range(ell):
        rhs = (x ** 3 + a2 * x * x + a4 * x + a6) % ell
        lin = (a1 * x + a3) % ell
        if ell == 2:
            total += sum(1 for y in range(2) if (y * y + lin * y - rhs) % 2 == 0)
            continue
        disc = (lin * lin + 4 * rhs) % ell
        if disc == 0:
            total += 1
        elif pow(disc, (ell - 1) // 2, ell) == 1:
            total += 2
    return total


def nu_coverage(curve, P, ell_max=10 ** 4, p_max=50):
    """Which primes p <= p_max occur as nu(l) for good l <= ell_max."""
    disc = curve.discriminant
    nus = {}
    for ell in primes_up_to(ell_max):
        if disc % ell:
            nus[ell] = order_mod_ell(curve, P, ell)
    values = set(nus.values())
    targets = primes_up_to(p_max)
    covered = [p for p in targets if p in values]
    return {
        "ell_max": ell_max, "p_max": p_max,
        "covered": covered,
        "exceptions": [p for p in targets if p not in values],
        "coverage": len(covered) / len(targets),
        "witness": {p: min(l for l, v in nus.items() if v == p) for p in covered},
    }


def eds_rows(W, bound=10 ** 6):
    """(n, digits(W_n), omega lower bound, cofactor flag) for n >= 1."""
    rows = []
    for n in range(1, len(W.W)):
        w, flag = omega_trial(W[n], bound)
        rows.append({"n": n, "digits": len(str(abs(W[n]))), "omega_lower": w,
                     "cofactor_flag": flag})
    return rows


def small_omega_ratio(rows, kappa=0.5):
    """count(n <= N with omega < kappa log log N) * log log N / N (reported only)."""
    N = len(rows)
    if N < 16:
        raise ValueError("need N >= 16")
    ll = log(log(N))
    count = sum(1 for r in rows if r["omega_lower"] < kappa * ll)
    return {"N": N, "kappa": kappa, "count": count, "ratio": count * ll / N}
