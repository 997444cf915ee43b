"""Integer boxes sieved by residues modulo primes, with additive characters."""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt

import numpy as np

from .core import (OrthonormalBasisSpec, SiftableSample, SieveSupport, SieveSystem,
                   compute_H, gram_delta, row_sum_delta_bound, sifted_measure)


def primes_up_to(n):
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i in range(n + 1) if sieve[i]]


def residues(ell, r=1):
    if r == 1:
        return tuple(range(ell))
    return tuple(product(range(ell), repeat=r))


def additive_character_table(ell, r=1):
    """Rows e(a.y/ell) for a in (Z/ell)^r (a = 0 first), columns y in residue order."""
    ys = residues(ell, r)
    arr = np.array(ys, dtype=float).reshape(len(ys), r)
    return np.exp(2j * np.pi * (arr @ arr.T) / ell)


@dataclass(frozen=True)
class IntervalSpec:
    """Box (M, M + N]^r of integer points."""
    M: int
    N: int
    r: int = 1

    def __post_init__(self):
        if self.N < 1 or self.r < 1:
            raise ValueError("need N >= 1 and r >= 1")

    def points(self):
        side = range(self.M + 1, self.M + self.N + 1)
        if self.r == 1:
            return list(side)
        return list(product(side, repeat=self.r))


def interval_system(primes, r=1, omega=None):
    """Uniform densities on (Z/l)^r; Omega_l defaults to {0}."""
    primes = tuple(primes)
    quotients, dens, om = {}, {}, {}
    zero = 0 if r == 1 else (0,) * r
    for p in primes:
        ys = residues(p, r)
        quotients[p] = ys
        dens[p] = {y: Fraction(1, p ** r) for y in ys}
        om[p] = set(omega[p]) if omega is not None and p in omega else {zero}
    return SieveSystem(primes, quotients, dens, om)


def interval_sample(spec, primes):
    pts = spec.points()
    vals = {}
    for p in primes:
        if spec.r == 1:
            vals[p] = [x % p for x in pts]
        else:
            vals[p] = [tuple(c % p for c in x) for x in pts]
    return SiftableSample(pts, [1] * len(pts), vals)


def character_basis(primes, r=1):
    return OrthonormalBasisSpec({p: additive_character_table(p, r) for p in primes})


def classical_support(L, kind="squarefree"):
    """Squarefree m <= L, or those with prod (l + 1) <= L + 1 when kind == 'psi'."""
    primes = primes_up_to(L)
    if kind == "squarefree":
        return SieveSupport.products_up_to(primes, L)
    if kind == "psi":
        return SieveSupport.products_up_to(primes, L + 1, weight=lambda p: p + 1)
    raise ValueError("unknown support kind %r" % (kind,))


def analytic_delta_bound(N, L, r=1):
    """N - 1 + L^2 in dimension one, (sqrt N + L)^(2r) otherwise."""
    if r == 1:
        return N - 1 + L * L
    return (N ** 0.5 + L) ** (2 * r)


def equidist_remainder(sample, system, d, y):
    """Mass with value y_l at every l in d, minus nu_d(y) times the total mass."""
    d = tuple(d)
    y = tuple(y)
    if len(d) != len(y):
        raise ValueError("one residue per label required")
    count = Fraction(0)
    for k, w in enumerate(sample.weights):
        if all(sample.values[l][k] == yl for l, yl in zip(d, y)):
            count += w
    dens = Fraction(1)
    for l, yl in zip(d, y):
        dens *= system.densities[l][yl]
    return count - dens * sample.total_mass


def brute_force_sifted(spec, L):
    """Direct count of box points not divisible (coordinatewise) by any prime <= L."""
    if spec.r != 1:
        primes = primes_up_to(L)
        return sum(1 for x in spec.points()
                   if not any(all(c % p == 0 for c in x) for p in primes))
    primes = primes_up_to(L)
    return sum(1 for x in spec.points() if all(x % p for p in primes))


def classical_report(N, L, M=0, r=1, support="squarefree"):
    spec = IntervalSpec(M, N, r)
    sup = classical_support(L, support)
    primes = sorted(sup.primes) or []
    all_primes = primes_up_to(L)
    system = interval_system(all_primes, r)
    sample = interval_sample(spec, all_primes)
    gd = gram_delta(sample, system, sup, character_basis(all_primes, r))
    h = compute_H(system, sup)
    sifted = sifted_measure(sample, system)
    return {
        "N": N, "L": L, "M": M, "r": r, "support": support,
        "delta_exact": gd.delta,
        "delta_bound": analytic_delta_bound(N, L, r),
        "row_sum_bound": row_sum_delta_bound(gd),
        "H": h,
        "sifted": sifted,
        "bound": gd.delta / float(h),
        "analytic_sieve_bound": analytic_delta_bound(N, L, r) / float(h),
    }


def primitive_root(p):
    phi = p - 1
    fs = {q for q in primes_up_to(phi) if phi % q == 0}
    for g in range(1, p):
        if all(pow(g, phi // q, p) != 1 for q in fs):
            return g
    raise ValueError("no primitive root")


def zero_density_system(primes, omega):
    """nu(0) = 0 and nu(y) = 1/(l-1) otherwise, with Dirichlet characters as basis."""
    quotients, dens, om, tables = {}, {}, {}, {}
    for p in primes:
        ys = tuple(range(p))
        quotients[p] = ys
        dens[p] = {y: (Fraction(0) if y == 0 else Fraction(1, p - 1)) for y in ys}
        if 0 in omega[p]:
            raise ValueError("sieving sets must avoid 0 for the zero-density system")
        om[p] = set(omega[p])
        g = primitive_root(p)
        log = {pow(g, j, p): j for j in range(p - 1)}
        t = np.zeros((p - 1, p), dtype=complex)
        for k in range(p - 1):
            for y in range(1, p):
                t[k, y] = np.exp(2j * np.pi * k * log[y] / (p - 1))
        t[0, 0] = 1.0
        tables[p] = t
    return SieveSystem(tuple(primes), quotients, dens, om), OrthonormalBasisSpec(tables)
