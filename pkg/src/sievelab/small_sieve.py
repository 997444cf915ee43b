"""Upper and lower sieve coefficients (Bonferroni-truncated Moebius) and the
sandwich inequality with its main-term/remainder split."""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import prod

from .core import sifted_measure


@dataclass
class SieveCoefficients:
    side: str  # "upper", "lower" or "exact"
    primes: tuple
    table: dict  # tuple of labels (d) -> lambda_d
    level: object = None

    def check_axioms(self):
        """lambda_1 = 1 and sum_{d | n} lambda_d has the right sign for every n > 1."""
        if self.table.get((), 0) != 1:
            return False
        for size in range(1, len(self.primes) + 1):
            for T in combinations(self.primes, size):
                s = sum(v for d, v in self.table.items() if set(d) <= set(T))
                if self.side == "upper" and s < 0:
                    return False
                if self.side == "lower" and s > 0:
                    return False
                if self.side == "exact" and s != 0:
                    return False
        return True


def bonferroni_coeffs(primes, k=None):
    """lambda_d = mu(d) for omega(d) <= k (all d when k is None)."""
    primes = tuple(primes)
    if k is not None and k < 0:
        raise ValueError("k must be >= 0")
    top = len(primes) if k is None else min(k, len(primes))
    table = {}
    for j in range(top + 1):
        for d in combinations(primes, j):
            table[d] = (-1) ** j
    if k is None or k >= len(primes):
        side = "exact"
    else:
        side = "upper" if k % 2 == 0 else "lower"
    level = None
    if all(isinstance(p, int) for p in primes):
        level = max(prod(d) for d in table) + 1
    coeffs = SieveCoefficients(side, primes, table, level)
    if not coeffs.check_axioms():
        raise AssertionError("Bonferroni coefficients violate the sieve axioms")
    return coeffs


def _s_d(sample, system, d):
    total = Fraction(0)
    for k, w in enumerate(sample.weights):
        if all(sample.values[l][k] in system.sieving_sets[l] for l in d):
            total += w
    return total


def sieve_sum(sample, system, coeffs):
    """sum lambda_d S_d, with main term V * mass and remainder bound R = sum |lambda_d r_d|."""
    mass = sample.total_mass
    value = v = r = Fraction(0)
    for d, lam in coeffs.table.items():
        sd = _s_d(sample, system, d)
        nu = prod((system.nu_omega(l) for l in d), start=Fraction(1))
        value += lam * sd
        v += lam * nu
        r += abs(lam * (sd - nu * mass))
    return {"value": value, "V": v, "R": r, "main": v * mass}


def sandwich_bounds(sample, system, upper, lower):
    labels = tuple(sorted(set(upper.primes) | set(lower.primes), key=system.labels.index))
    up = sieve_sum(sample, system, upper)
    lo = sieve_sum(sample, system, lower)
    exact = sifted_measure(sample, system, labels)
    return {
        "lower": lo["value"], "exact": exact, "upper": up["value"],
        "V_upper": up["V"], "R_upper": up["R"], "V_lower": lo["V"], "R_lower": lo["R"],
        "total_mass": sample.total_mass,
        "holds": lo["value"] <= exact <= up["value"]
        and up["value"] <= up["main"] + up["R"] and lo["value"] >= lo["main"] - lo["R"],
    }
