"""Sieving the simple random walk S_n on the integers."""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, cos, gcd, pi

import numpy as np

from .classical import additive_character_table, primes_up_to
from .core import (OrthonormalBasisSpec, SiftableSample, SieveSupport, SieveSystem,
                   compute_H, gram_delta)


def _is_squarefree(m):
    d = 2
    while d * d <= m:
        if m % (d * d) == 0:
            return False
        d += 1
    return True


def _is_prime(k):
    if k < 2:
        return False
    d = 2
    while d * d <= k:
        if k % d == 0:
            return False
        d += 1
    return True


def _factor(m):
    out = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


@dataclass
class WalkDistribution:
    n: int
    pmf: dict
    lazy: bool = False


def exact_distribution(n, lazy=False):
    """Exact law of S_n; steps are +-1, or -1/0/+1 each with probability 1/3 when lazy."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if not lazy:
        den = 2 ** n
        pmf = {k: Fraction(comb(n, (n + k) // 2), den) for k in range(-n, n + 1, 2)}
        return WalkDistribution(n, pmf)
    counts = [1]
    for _ in range(n):
        nxt = [0] * (len(counts) + 2)
        for i, c in enumerate(counts):
            nxt[i] += c
            nxt[i + 1] += c
            nxt[i + 2] += c
        counts = nxt
    den = 3 ** n
    return WalkDistribution(n, {k - n: Fraction(c, den) for k, c in enumerate(counts)}, True)


def _check_modulus(a, m):
    if m < 1 or m % 2 == 0 or not _is_squarefree(m):
        raise ValueError("modulus %d must be odd and squarefree" % m)
    if gcd(a, m) != 1:
        raise ValueError("need gcd(a, m) = 1")


def walk_w(n, a1, m1, a2, m2):
    """E(e(a1 S_n / m1) e(-a2 S_n / m2)) = cos(2 pi (a1 m2 - a2 m1) / (m1 m2))^n."""
    _check_modulus(a1, m1)
    _check_modulus(a2, m2)
    return cos(2 * pi * (a1 * m2 - a2 * m1) / (m1 * m2)) ** n


def lazy_walk_w(n, theta):
    """E(e(theta S_n)) for the lazy walk."""
    return ((1 + 2 * cos(2 * pi * theta)) / 3) ** n


def odd_squarefree_up_to(L):
    return [m for m in range(1, L + 1, 2) if _is_squarefree(m)]


def walk_delta_bound(n, L):
    """1 + |cos(2 pi / L^2)|^n times the sum of odd squarefree m <= L."""
    return 1 + abs(cos(2 * pi / L ** 2)) ** n * sum(odd_squarefree_up_to(L))


def walk_system(moduli, omega=None):
    """Uniform densities on Z/m for each label; labels are the moduli."""
    quotients, dens, om, tables = {}, {}, {}, {}
    for m in moduli:
        ys = tuple(range(m))
        quotients[m] = ys
        dens[m] = {y: Fraction(1, m) for y in ys}
        om[m] = set(omega[m]) if omega and m in omega else {0}
        tables[m] = additive_character_table(m)
    return SieveSystem(tuple(moduli), quotients, dens, om), OrthonormalBasisSpec(tables)


def walk_sample(dist, moduli):
    ks = sorted(k for k, p in dist.pmf.items() if p)
    return SiftableSample(ks, [dist.pmf[k] for k in ks], {m: [k % m for k in ks] for m in moduli})


def walk_gram_delta(n, L, lazy=False):
    """Exact Delta for the support of squarefree m <= L (odd unless lazy)."""
    primes = [p for p in primes_up_to(L) if lazy or p != 2]
    system, basis = walk_system(primes)
    support = SieveSupport.products_up_to(primes, L)
    return gram_delta(walk_sample(exact_distribution(n, lazy), primes), system, support, basis)


def prime_ap_probability(n, q, a, lazy=False):
    """P(S_n is a positive prime congruent to a mod q), exactly."""
    if q < 1 or q % 2 == 0:
        raise ValueError("q must be odd and >= 1")
    if gcd(a, q) != 1:
        raise ValueError("need gcd(a, q) = 1")
    dist = exact_distribution(n, lazy)
    return sum((p for k, p in dist.pmf.items() if k % q == a % q and _is_prime(k)), Fraction(0))


def mixed_setting(q, a, L):
    """System and support sieving S_n prime and = a mod q.

    Labels are odd primes l <= L/q coprime to q (modulus l, Omega = {0}) and the
    prime powers l^v exactly dividing q (Omega = everything except a).
    """
    if q < 1 or q % 2 == 0 or gcd(a, q) != 1:
        raise ValueError("need odd q >= 1 and gcd(a, q) = 1")
    if L < q:
        raise ValueError("need L >= q")
    qparts = [p ** v for p, v in sorted(_factor(q).items())]
    small = [p for p in primes_up_to(L // q) if p != 2 and q % p]
    omega = {pv: set(range(pv)) - {a % pv} for pv in qparts}
    system, basis = walk_system(small + qparts, omega)
    base = SieveSupport.products_up_to(small, L // q)
    subsets = []
    for mask in range(1 << len(qparts)):
        extra = frozenset(pv for i, pv in enumerate(qparts) if mask >> i & 1)
        subsets.extend(m | extra for m in base.subsets)
    return system, SieveSupport(tuple(subsets)), basis


def corollary_delta_bound(n, q, L):
    """1 + |cos(2 pi / L^2)|^n sum_{m <= L/q, (m, 2q) = 1} sum_{m' | q} m q (squarefree m, m')."""
    ms = [m for m in odd_squarefree_up_to(L // q) if gcd(m, q) == 1]
    ndiv = 2 ** len(_factor(q))
    return 1 + abs(cos(2 * pi / L ** 2)) ** n * sum(ms) * q * ndiv


@lru_cache(maxsize=None)
def corollary_H(q, L):
    system, support, _ = mixed_setting(q, 1, L)
    return compute_H(system, support)


def best_corollary_bound(n, q, levels=None):
    """Smallest bound / H over the admissible levels L (odd, q <= L <= 59 by default)."""
    if levels is None:
        levels = range(max(3, q), 60, 2)
    best = None
    for L in levels:
        val = corollary_delta_bound(n, q, L) / float(corollary_H(q, L))
        if best is None or val < best[0]:
            best = (val, L)
    return best


def walkz_report(n, q, a, L=None, lazy=False):
    prob = prime_ap_probability(n, q, a, lazy)
    if lazy:
        return {"n": n, "q": q, "a": a, "probability": prob}
    if L is None:
        bound, L = best_corollary_bound(n, q)
    else:
        bound = corollary_delta_bound(n, q, L) / float(corollary_H(q, L))
    return {"n": n, "q": q, "a": a, "L": L, "probability": prob, "sieve_bound": bound,
            "ratio": float(prob) / bound}
