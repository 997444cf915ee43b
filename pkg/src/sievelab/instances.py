"""Seeded random sieve instances for experiments and checks."""
from fractions import Fraction

import numpy as np

from .core import SiftableSample, SieveSystem


def random_instance(rng, max_labels=3, max_size=4, max_items=10):
    """Small random system (rational densities, non-empty proper Omega) with a weighted sample."""
    rng = np.random.default_rng(rng)
    k = int(rng.integers(1, max_labels + 1))
    labels = tuple(range(k))
    quotients, dens, omegas = {}, {}, {}
    for l in labels:
        size = int(rng.integers(2, max_size + 1))
        ys = tuple(range(size))
        raw = [int(v) for v in rng.integers(1, 6, size=size)]
        tot = sum(raw)
        quotients[l] = ys
        dens[l] = {y: Fraction(r, tot) for y, r in zip(ys, raw)}
        m = int(rng.integers(1, size))
        omegas[l] = set(int(v) for v in rng.choice(size, size=m, replace=False))
    system = SieveSystem(labels, quotients, dens, omegas)
    n = int(rng.integers(1, max_items + 1))
    weights = [Fraction(int(w)) for w in rng.integers(0, 5, size=n)]
    if not any(weights):
        weights[0] = Fraction(1)
    values = {l: [int(v) for v in rng.integers(0, len(quotients[l]), size=n)] for l in labels}
    return SiftableSample(tuple(range(n)), weights, values), system


def random_instances(seed, count, **kw):
    seqs = np.random.SeedSequence(seed).spawn(count)
    return [random_instance(np.random.default_rng(s), **kw) for s in seqs]
