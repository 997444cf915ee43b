"""Abstract sieve setting: systems, supports, samples, bases and the constant Delta.

Densities and weights are exact ``Fraction``s; only the eigenvalue solve is
floating point.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import prod

import numpy as np

from .errors import ComputeGateError

ORTHO_TOL = 1e-12
GRAM_GATE = 5000


def _frac(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        return Fraction(v).limit_denominator(10 ** 12)
    return Fraction(v)


@dataclass
class SieveSystem:
    """Finite quotients Y_l with densities nu_l and sieving sets Omega_l."""
    labels: tuple
    quotients: dict
    densities: dict
    sieving_sets: dict

    def __post_init__(self):
        self.labels = tuple(self.labels)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels")
        for l in self.labels:
            ys = tuple(self.quotients[l])
            if len(set(ys)) != len(ys) or not ys:
                raise ValueError("quotient for %r must be a non-empty set" % (l,))
            self.quotients[l] = ys
            nu = {y: _frac(self.densities[l].get(y, 0)) for y in ys}
            if set(self.densities[l]) - set(ys):
                raise ValueError("density for %r outside its quotient" % (l,))
            if any(v < 0 for v in nu.values()):
                raise ValueError("negative density at %r" % (l,))
            if sum(nu.values()) != 1:
                raise ValueError("densities at %r do not sum to 1" % (l,))
            self.densities[l] = nu
            om = frozenset(self.sieving_sets.get(l, ()))
            if not om <= set(ys):
                raise ValueError("sieving set at %r is not inside the quotient" % (l,))
            if any(nu[y] == 0 for y in om):
                raise ValueError("zero density on the sieving set at %r" % (l,))
            if sum(nu[y] for y in om) == 1:
                raise ValueError("nu(Omega_%r) = 1 makes H undefined" % (l,))
            self.sieving_sets[l] = om

    def nu_omega(self, l):
        return sum((self.densities[l][y] for y in self.sieving_sets[l]), Fraction(0))

    def order(self, labels):
        pos = {l: i for i, l in enumerate(self.labels)}
        return tuple(sorted(labels, key=pos.__getitem__))


@dataclass
class SieveSupport:
    """Finite family of label subsets containing the empty set, closed on singletons."""
    subsets: tuple

    def __post_init__(self):
        subs = []
        seen = set()
        for m in self.subsets:
            fm = frozenset(m)
            if fm not in seen:
                seen.add(fm)
                subs.append(fm)
        self.subsets = tuple(subs)

    @property
    def primes(self):
        out = set()
        for m in self.subsets:
            out |= m
        return out

    def validate(self, system, require_empty=True):
        if require_empty and frozenset() not in self.subsets:
            raise ValueError("support must contain the empty set")
        known = set(system.labels)
        for m in self.subsets:
            if not m <= known:
                raise ValueError("support uses unknown labels %r" % (sorted(m - known, key=str),))
            for l in m:
                if frozenset([l]) not in self.subsets:
                    raise ValueError("support not closed: {%r} missing" % (l,))

    @classmethod
    def singletons(cls, labels, with_empty=True):
        subs = [frozenset()] if with_empty else []
        return cls(tuple(subs + [frozenset([l]) for l in labels]))

    @classmethod
    def power_set(cls, labels):
        labels = list(labels)
        subs = []
        for mask in range(1 << len(labels)):
            subs.append(frozenset(l for i, l in enumerate(labels) if mask >> i & 1))
        return cls(tuple(subs))

    @classmethod
    def products_up_to(cls, primes, bound, weight=lambda p: p):
        """Squarefree subsets whose product of ``weight`` values is <= bound."""
        primes = sorted(primes)
        subs = []

        def rec(start, cur, val):
            subs.append(frozenset(cur))
            for i in range(start, len(primes)):
                v = val * weight(primes[i])
                if v > bound:
                    break
                rec(i + 1, cur + [primes[i]], v)

        rec(0, [], 1)
        return cls(tuple(subs))


@dataclass
class SiftableSample:
    """Finite measure on items with a value in Y_l for every label."""
    items: tuple
    weights: tuple
    values: dict

    def __post_init__(self):
        self.items = tuple(self.items)
        self.weights = tuple(_frac(w) for w in self.weights)
        if len(self.weights) != len(self.items):
            raise ValueError("one weight per item required")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative")
        for l, vals in self.values.items():
            if len(vals) != len(self.items):
                raise ValueError("values for %r not aligned with items" % (l,))

    @property
    def total_mass(self):
        return sum(self.weights, Fraction(0))

    def check(self, system):
        for l in system.labels:
            if l not in self.values:
                raise ValueError("sample has no values for label %r" % (l,))
            ys = set(system.quotients[l])
            for v in self.values[l]:
                if v not in ys:
                    raise ValueError("value %r not in Y_%r" % (v, l))


@dataclass
class OrthonormalBasisSpec:
    """Per label, a table (functions x elements of Y_l); row 0 is the constant 1."""
    tables: dict

    def validate(self, system, tol=ORTHO_TOL):
        for l in system.labels:
            b = np.asarray(self.tables[l], dtype=complex)
            ys = system.quotients[l]
            nu = np.array([float(system.densities[l][y]) for y in ys])
            if b.ndim != 2 or b.shape[1] != len(ys):
                raise ValueError("basis table for %r has wrong shape" % (l,))
            expected = int(np.count_nonzero(nu))
            if b.shape[0] != expected:
                raise ValueError("basis for %r must have %d functions" % (l, expected))
            if np.max(np.abs(b[0] - 1)) > tol:
                raise ValueError("first basis function at %r is not constant 1" % (l,))
            g = (b * nu) @ b.conj().T
            err = np.max(np.abs(g - np.eye(b.shape[0])))
            if err > tol:
                raise ValueError("basis at %r not orthonormal (error %.3g)" % (l, err))
            self.tables[l] = b


def standard_basis(system):
    """An orthonormal basis for each nu_l, built by QR from the constant function."""
    tables = {}
    for l in system.labels:
        ys = system.quotients[l]
        nu = np.array([float(system.densities[l][y]) for y in ys])
        pos = np.flatnonzero(nu > 0)
        s = np.sqrt(nu[pos])
        mat = np.column_stack([s, np.eye(len(pos))])
        qm, _ = np.linalg.qr(mat)
        qm = qm[:, :len(pos)]
        qm[:, 0] *= np.sign(qm[:, 0] @ s)
        table = np.zeros((len(pos), len(ys)), dtype=complex)
        table[:, pos] = (qm / s[:, None]).T
        table[0, :] = 1.0
        tables[l] = table
    return OrthonormalBasisSpec(tables)


@dataclass
class GramDelta:
    """Gram matrix over (subset, primitive basis tuple) and its top eigenvalue."""
    index: list
    matrix: np.ndarray
    delta: float

    def to_json(self):
        return {
            "index": [{"subset": list(m), "basis": list(phi)} for m, phi in self.index],
            "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix],
            "top_eigenvalue": float(self.delta),
        }


def _element_index(system, sample):
    idx = {}
    for l in system.labels:
        pos = {y: i for i, y in enumerate(system.quotients[l])}
        idx[l] = np.fromiter((pos[v] for v in sample.values[l]), dtype=np.int64,
                             count=len(sample.items))
    return idx


def _gram(sample, system, subsets, basis):
    sample.check(system)
    idx = _element_index(system, sample)
    mu = np.array([float(w) for w in sample.weights])
    size = sum(prod(len(basis.tables[l]) - 1 for l in m) for m in subsets)
    if size > GRAM_GATE:
        raise ComputeGateError("gram-size", "Gram dimension %d exceeds %d" % (size, GRAM_GATE))
    rows, index = [], []
    for m in subsets:
        m = system.order(m)
        tabs = [np.asarray(basis.tables[l], dtype=complex) for l in m]
        for phi in product(*[range(1, t.shape[0]) for t in tabs]):
            v = np.ones(len(mu), dtype=complex)
            for l, t, k in zip(m, tabs, phi):
                v = v * t[k, idx[l]]
            rows.append(v)
            index.append((m, phi))
    if not rows:
        return GramDelta([], np.zeros((0, 0), dtype=complex), 0.0)
    v = np.array(rows)
    w = (v * mu) @ v.conj().T
    w = (w + w.conj().T) / 2
    delta = float(np.linalg.eigvalsh(w)[-1])
    return GramDelta(index, w, delta)


def gram_delta(sample, system, support, basis=None):
    """Gram matrix W and Delta = largest eigenvalue."""
    support.validate(system)
    if basis is None:
        basis = standard_basis(system)
    else:
        basis.validate(system)
    return _gram(sample, system, support.subsets, basis)


def row_sum_delta_bound(gd):
    """Gershgorin-type bound max_i sum_j |W_ij| >= Delta."""
    if gd.matrix.size == 0:
        return 0.0
    return float(np.max(np.sum(np.abs(gd.matrix), axis=1)))


def compute_H(system, support):
    """H = sum over m of prod_{l in m} nu(Omega_l) / (1 - nu(Omega_l))."""
    total = Fraction(0)
    for m in support.subsets:
        term = Fraction(1)
        for l in m:
            a = system.nu_omega(l)
            if a == 1:
                raise ValueError("nu(Omega_%r) = 1" % (l,))
            term *= a / (1 - a)
        total += term
    return total


def sifted_measure(sample, system, labels=None):
    """Mass of items whose value avoids Omega_l for every label considered."""
    labels = system.labels if labels is None else tuple(labels)
    total = Fraction(0)
    for k, w in enumerate(sample.weights):
        if all(sample.values[l][k] not in system.sieving_sets[l] for l in labels):
            total += w
    return total


@dataclass
class SieveCheck:
    sifted: Fraction
    delta: float
    H: Fraction
    bound: float
    holds: bool


def large_sieve_check(sample, system, support, basis=None, tol=1e-9):
    gd = gram_delta(sample, system, support, basis)
    h = compute_H(system, support)
    labels = system.order(support.primes)
    s = sifted_measure(sample, system, labels)
    bound = gd.delta / float(h)
    return SieveCheck(s, gd.delta, h, bound, float(s) <= bound + tol)


@dataclass
class DualSieveCheck:
    lhs: Fraction
    delta: float
    Q: Fraction
    P: Fraction
    holds: bool


def dual_variance_check(sample, system, basis=None, labels=None, tol=1e-9):
    """Variance form: sum mu (P(x) - P)^2 <= Delta Q with Delta over singletons only."""
    labels = system.labels if labels is None else system.order(labels)
    if basis is None:
        basis = standard_basis(system)
    else:
        basis.validate(system)
    nus = {l: system.nu_omega(l) for l in labels}
    p_mean = sum(nus.values(), Fraction(0))
    q = sum((a * (1 - a) for a in nus.values()), Fraction(0))
    lhs = Fraction(0)
    for k, w in enumerate(sample.weights):
        px = sum(1 for l in labels if sample.values[l][k] in system.sieving_sets[l])
        lhs += w * (px - p_mean) ** 2
    gd = _gram(sample, system, [frozenset([l]) for l in labels], basis)
    return DualSieveCheck(lhs, gd.delta, q, p_mean, float(lhs) <= gd.delta * float(q) + tol)


def binary_event_system(probs, labels=None):
    """Events of probability p_i as a sieve system with Y = {0, 1}, Omega = {1}."""
    labels = tuple(range(len(probs))) if labels is None else tuple(labels)
    quotients, dens, omegas, tables = {}, {}, {}, {}
    for l, p in zip(labels, probs):
        p = _frac(p)
        if not 0 < p < 1:
            raise ValueError("event probabilities must lie strictly between 0 and 1")
        quotients[l] = (0, 1)
        dens[l] = {0: 1 - p, 1: p}
        omegas[l] = {1}
        s = float(p * (1 - p)) ** 0.5
        tables[l] = np.array([[1.0, 1.0], [-float(p) / s, (1 - float(p)) / s]], dtype=complex)
    return SieveSystem(labels, quotients, dens, omegas), OrthonormalBasisSpec(tables)


def independent_sample(probs, labels=None):
    """All 2^k outcomes of independent events, weighted by their exact probability."""
    labels = tuple(range(len(probs))) if labels is None else tuple(labels)
    ps = [_frac(p) for p in probs]
    items, weights = [], []
    vals = {l: [] for l in labels}
    for bits in product((0, 1), repeat=len(ps)):
        items.append(bits)
        weights.append(prod((p if b else 1 - p for p, b in zip(ps, bits)), start=Fraction(1)))
        for l, b in zip(labels, bits):
            vals[l].append(b)
    return SiftableSample(items, weights, vals)
