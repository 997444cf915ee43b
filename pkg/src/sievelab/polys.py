"""Polynomial helpers: char polys, arithmetic over F_p, irreducibility over Q.

Polynomials are coefficient lists with the leading coefficient first.
"""
from itertools import combinations
from math import comb, isqrt

import numpy as np

from ._kernels_py import _berkowitz

SMALL_PRIMES = [p for p in range(2, 100) if all(p % d for d in range(2, isqrt(p) + 1))]


def charpoly(matrix, mod=None):
    """det(T I - A) as [1, c1, ..., cn], exact over Z or reduced mod ``mod``."""
    a = np.asarray(matrix, dtype=object)
    d = a.shape[0]
    return _berkowitz([int(v) for v in a.ravel()], d, mod)


def _trim(f):
    i = 0
    while i < len(f) - 1 and f[i] == 0:
        i += 1
    return f[i:]


def poly_eval(f, x, mod=None):
    acc = 0
    for c in f:
        acc = acc * x + c
        if mod:
            acc %= mod
    return acc


# arithmetic over F_p -------------------------------------------------------

def pmod(f, p):
    return _trim([c % p for c in f])


def pdivmod(f, g, p):
    """Quotient and remainder of f by g over F_p."""
    f = pmod(f, p)
    g = pmod(g, p)
    if g == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(g[0], p - 2, p)
    rem = list(f)
    quot = [0] * max(len(f) - len(g) + 1, 1)
    while len(rem) >= len(g) and rem != [0]:
        c = rem[0] * inv % p
        shift = len(rem) - len(g)
        quot[len(quot) - 1 - shift] = c
        for i, gc in enumerate(g):
            rem[i] = (rem[i] - c * gc) % p
        rem = _trim(rem[1:]) if len(rem) > 1 else [0]
    return _trim(quot), rem


def pmul(f, g, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def pgcd(f, g, p):
    f, g = pmod(f, p), pmod(g, p)
    while g != [0]:
        f, g = g, pdivmod(f, g, p)[1]
    if f != [0]:
        inv = pow(f[0], p - 2, p)
        f = [c * inv % p for c in f]
    return f


def pderiv(f, p):
    n = len(f) - 1
    return pmod([c * (n - i) for i, c in enumerate(f[:-1])] or [0], p)


def ppowmod(base, e, modulus, p):
    result = [1]
    base = pdivmod(base, modulus, p)[1]
    while e:
        if e & 1:
            result = pdivmod(pmul(result, base, p), modulus, p)[1]
        base = pdivmod(pmul(base, base, p), modulus, p)[1]
        e >>= 1
    return result


def is_irreducible_mod_p(f, p):
    """Ben-Or test: f (degree >= 1, leading coefficient a unit mod p) irreducible over F_p."""
    f = pmod(f, p)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [1, 0]
    h = x
    for _ in range(n // 2):
        h = ppowmod(h, p, f, p)
        diff = list(h)
        # h - x
        diff = [0] * max(0, 2 - len(diff)) + diff
        diff[-2] = (diff[-2] - 1) % p
        if len(pgcd(f, _trim(diff), p)) > 1:
            return False
    return True


def is_squarefree_mod_p(f, p):
    return len(pgcd(f, pderiv(f, p), p)) == 1


def find_irreducible(p, r):
    """Smallest monic irreducible polynomial of degree r over F_p (lexicographic)."""
    if r == 1:
        return [1, 0]
    for code in range(p ** r):
        tail = []
        c = code
        for _ in range(r):
            c, d = divmod(c, p)
            tail.append(d)
        f = [1] + tail[::-1]
        if f[-1] and is_irreducible_mod_p(f, p):
            return f
    raise ValueError("no irreducible polynomial found")


# integer polynomials -------------------------------------------------------

def mignotte_bound(f):
    """Bound on the coefficients of any monic integer factor of f."""
    n = len(f) - 1
    norm = isqrt(sum(c * c for c in f)) + 1
    return comb(n - 1, (n - 1) // 2) * norm


def _exact_div(f, g):
    """Quotient of f by monic g over Z, or None if the division is not exact."""
    rem = list(f)
    quot = []
    while len(rem) >= len(g):
        c = rem[0]
        quot.append(c)
        for i, gc in enumerate(g):
            rem[i] -= c * gc
        rem = rem[1:]
    if any(rem):
        return None
    return quot


def _divisors(n):
    n = abs(n)
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def irreducibility_certificate(f):
    """Decide irreducibility over Q of a monic integer polynomial (leading first).

    Returns ("irreducible", p) with p a prime certificate mod which f stays
    irreducible, ("reducible", g) with g an exact monic factor, or
    ("irreducible", None) when the bounded factor search exhausts every split.
    """
    f = [int(c) for c in f]
    if f[0] != 1:
        raise ValueError("polynomial must be monic")
    n = len(f) - 1
    if n <= 0:
        raise ValueError("degree must be positive")
    if n == 1:
        return ("irreducible", None)
    if f[-1] == 0:
        return ("reducible", [1, 0])
    # rational roots divide the constant term
    cands = (1, -1) if abs(f[-1]) == 1 else None
    if cands is None and abs(f[-1]) < 10 ** 12:
        cands = [s * d for d in _divisors(f[-1]) for s in (1, -1)]
    if cands is not None:
        for r in cands:
            if poly_eval(f, r) == 0:
                return ("reducible", [1, -r])
        if n <= 3:
            return ("irreducible", None)
    for p in SMALL_PRIMES:
        if is_irreducible_mod_p(f, p):
            return ("irreducible", p)
    factor = _factor_search(f)
    if factor is not None:
        return ("reducible", factor)
    return ("irreducible", None)


def _factor_search(f):
    """Search monic factors of degree <= n/2 among products of complex roots."""
    import mpmath
    n = len(f) - 1
    bound = mignotte_bound(f)
    digits = len(str(bound)) + len(str(max(abs(c) for c in f))) + 30
    with mpmath.workdps(digits):
        roots = mpmath.polyroots(f, maxsteps=200, extraprec=4 * digits)
        for deg in range(1, n // 2 + 1):
            for subset in combinations(range(n), deg):
                coeffs = [mpmath.mpc(1)]
                for k in subset:
                    z = roots[k]
                    coeffs = [a - z * b for a, b in zip(coeffs + [0], [0] + coeffs)]
                g = [int(mpmath.nint(mpmath.re(c))) for c in coeffs]
                if any(abs(c) > bound for c in g):
                    continue
                if _exact_div(f, g) is not None:
                    return g
    return None


def rational_irreducibility(f):
    """True iff the monic integer polynomial f (leading first) is irreducible over Q."""
    return irreducibility_certificate(f)[0] == "irreducible"
