"""Random walks on SL(n, Z) by elementary matrices: reducibility decay,
Cayley-quotient spectra and coupon-collector statistics."""
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import log, prod, sqrt
from statistics import NormalDist

import numpy as np

from . import kernels
from .errors import ComputeGateError
from .polys import charpoly, rational_irreducibility

BUDGET = 2 * 10 ** 9  # n^2 * steps * trials
CAYLEY_GATE = 5000
CHUNK = 1000


def elementary_generators(n):
    """All E_ij(s) = I + s e_ij, i != j, s = +-1, as (i, j, s) triples."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return [(i, j, s) for i in range(n) for j in range(n) if i != j for s in (1, -1)]


def generator_matrix(n, gen):
    i, j, s = gen
    m = np.eye(n, dtype=np.int64)
    m[i, j] = s
    return m


@dataclass(frozen=True)
class WalkConfig:
    n: int
    steps: int
    trials: int
    seed: int

    def __post_init__(self):
        if self.n < 2 or self.steps < 0 or self.trials < 1:
            raise ValueError("need n >= 2, steps >= 0, trials >= 1")
        if self.n > 8:
            raise ValueError("n must be <= 8")

    @property
    def generators(self):
        return elementary_generators(self.n)


def wilson_interval(successes, total, level=0.95):
    z = NormalDist().inv_cdf(0.5 + level / 2)
    if total == 0:
        return (0.0, 1.0)
    p = successes / total
    den = 1 + z * z / total
    centre = (p + z * z / (2 * total)) / den
    half = z * sqrt(p * (1 - p) / total + z * z / (4 * total * total)) / den
    return (max(0.0, centre - half), min(1.0, centre + half))


def _choices(config):
    """Generator indices per trial, drawn chunkwise from spawned seeds."""
    nchunks = -(-config.trials // CHUNK)
    seqs = np.random.SeedSequence(config.seed).spawn(nchunks)
    ngen = len(config.generators)
    out = []
    for c, ss in enumerate(seqs):
        size = min(CHUNK, config.trials - c * CHUNK)
        out.append(np.random.default_rng(ss).integers(0, ngen, size=(size, config.steps),
                                                      dtype=np.int32))
    return out


def _gen_arrays(n):
    gens = elementary_generators(n)
    return (np.array([g[0] for g in gens], np.int32), np.array([g[1] for g in gens], np.int32),
            np.array([g[2] for g in gens], np.int32))


class _Reducibility:
    """Reducibility over Q of char polys, cached; the +-1 root test is vectorised."""

    def __init__(self):
        self.cache = {}

    def one(self, f):
        f = tuple(int(c) for c in f)
        r = self.cache.get(f)
        if r is None:
            r = not rational_irreducibility(list(f))
            self.cache[f] = r
        return r

    def rows(self, coeffs):
        """coeffs: int64 (M, n+1) with constant term +-1; returns bool reducible flags."""
        n = coeffs.shape[1] - 1
        signs = (-1) ** np.arange(n, -1, -1)
        root = (coeffs.sum(axis=1) == 0) | ((coeffs * signs).sum(axis=1) == 0)
        if n <= 3:
            return root
        out = root.copy()
        for k in np.flatnonzero(~root):
            out[k] = self.one(coeffs[k])
        return out


def _bigint_trial(n, choice_row, gens):
    """Exact char polys along one walk with Python integers."""
    x = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    polys = [charpoly(x)]
    for c in choice_row:
        i, j, s = gens[int(c)]
        for r in range(n):
            x[r][j] += s * x[r][i]
        polys.append(charpoly(x))
    return polys


def _walk_chunk(n, choices):
    gi, gj, gs = _gen_arrays(n)
    return kernels.walk_charpolys(choices, gi, gj, gs, n)


def _threads(threads):
    if threads is None:
        threads = int(os.environ.get("SIEVELAB_THREADS", "1") or 1)
    return max(1, int(threads))


def _run_chunks(config, threads):
    chunks = _choices(config)
    with ThreadPoolExecutor(max_workers=_threads(threads)) as ex:
        results = list(ex.map(lambda ch: _walk_chunk(config.n, ch), chunks))
    return chunks, results


def _check_det(n, polys):
    want = (-1) ** n
    if any(int(p[-1]) != want for p in polys):
        raise AssertionError("walk state left SL(n, Z)")


def reducible_table(config, threads=None):
    """Reducibility flags (trials x (steps+1)) for the configured walks."""
    n, N = config.n, config.steps
    if n * n * N * config.trials > BUDGET:
        raise ComputeGateError("walk-budget", "n^2 * steps * trials exceeds %d" % BUDGET)
    red = _Reducibility()
    gens = config.generators
    chunks, results = _run_chunks(config, threads)
    flags = []
    for ch, (coeffs, overflow) in zip(chunks, results):
        fl = np.zeros((len(ch), N + 1), dtype=bool)
        good = overflow == 0
        cg = coeffs[good]
        if cg.size:
            _check_det(n, cg.reshape(-1, n + 1))
            fl[good] = red.rows(cg.reshape(-1, n + 1)).reshape(cg.shape[0], N + 1)
        for t in np.flatnonzero(~good):
            polys = _bigint_trial(n, ch[t], gens)
            _check_det(n, polys)
            fl[t] = [red.one(p) for p in polys]
        flags.append(fl)
    return np.concatenate(flags)


def run_reducibility_experiment(config, threads=None, level=0.95):
    """Per step k: fraction of walks whose char poly at step k is reducible over Q."""
    flags = reducible_table(config, threads)
    counts = flags.sum(axis=0)
    rows = []
    for k, c in enumerate(counts.tolist()):
        lo, hi = wilson_interval(c, config.trials, level)
        rows.append({"k": k, "reducible": c, "reducible_frequency": c / config.trials,
                     "ci_low": lo, "ci_high": hi})
    return rows


def harmonic_expectation(n):
    """n H_n, the exact mean of the coupon-collector time."""
    return n * sum(Fraction(1, k) for k in range(1, n + 1))


def _first_irreducible(n, row, gens, coeffs, valid, red, max_steps):
    """First k >= 1 whose char poly is irreducible, using kernel rows while valid."""
    signs = (-1) ** np.arange(n, -1, -1)
    for k in range(1, valid + 1):
        f = coeffs[k]
        if int(f.sum()) == 0 or int((f * signs).sum()) == 0:
            continue
        if n <= 3 or not red.one(f):
            return k
    if valid >= max_steps:
        return None
    x = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for k, c in enumerate(row[:max_steps].tolist(), start=1):
        i, j, s = gens[c]
        for r in range(n):
            x[r][j] += s * x[r][i]
        if k > valid and not red.one(charpoly(x)):
            return k
    return None


def coupon_and_transition_times(n, trials, seed, max_steps=200, threads=None, horizon=64):
    """Coupon time t_n (every column index rewritten) and first irreducible step tau_n."""
    if not 2 <= n <= 6:
        raise ValueError("n must be in 2..6")
    config = WalkConfig(n, max_steps, trials, seed)
    gens = config.generators
    gj = np.array([g[1] for g in gens])
    gi_, gj_, gs_ = _gen_arrays(n)
    chunks = _choices(config)
    h = min(horizon, max_steps)
    with ThreadPoolExecutor(max_workers=_threads(threads)) as ex:
        results = list(ex.map(
            lambda ch: kernels.walk_charpolys(np.ascontiguousarray(ch[:, :h]), gi_, gj_, gs_, n),
            chunks))
    red = _Reducibility()
    ts, taus = [], []
    censored_t = censored_tau = 0
    pathwise = True
    for ch, (coeffs, overflow) in zip(chunks, results):
        cols = gj[ch]
        for t in range(len(ch)):
            seen = set()
            tn = None
            for k, c in enumerate(cols[t].tolist(), start=1):
                seen.add(c)
                if len(seen) == n:
                    tn = k
                    break
            if overflow[t]:
                valid = int(np.flatnonzero(coeffs[t, 1:, 0] == 0)[0]) if (coeffs[t, 1:, 0] == 0).any() else h
            else:
                valid = h
            tau = _first_irreducible(n, ch[t], gens, coeffs[t], valid, red, max_steps)
            if tn is None:
                censored_t += 1
            else:
                ts.append(tn)
            if tau is None:
                censored_tau += 1
            else:
                taus.append(tau)
                if tn is None or tau < tn:
                    pathwise = False
    ts = np.array(ts, dtype=float)
    taus = np.array(taus, dtype=float)
    exact = harmonic_expectation(n)
    out = {
        "n": n, "trials": trials, "max_steps": max_steps,
        "mean_t": float(ts.mean()), "se_t": float(ts.std(ddof=1) / sqrt(len(ts))),
        "exact_t": exact, "censored_t": censored_t,
        "mean_tau": float(taus.mean()) if len(taus) else None,
        "se_tau": float(taus.std(ddof=1) / sqrt(len(taus))) if len(taus) > 1 else None,
        "censored_tau": censored_tau,
        "pathwise_tau_ge_t": pathwise,
    }
    out["ratio_tau_t"] = out["mean_tau"] / out["mean_t"] if out["mean_tau"] else None
    return out


def sl_order(n, ell):
    return prod(ell ** n - ell ** i for i in range(n)) // (ell - 1)


@dataclass
class CayleySpectrum:
    n: int
    ell: int
    order: int
    eigenvalues: np.ndarray
    rho: float
    alpha: float
    bipartite: bool
    multiplicity_one: int


def cayley_operator(n, ell):
    """Averaging operator (M f)(g) = |S|^-1 sum_s f(g s) on SL(n, F_l), dense."""
    order = sl_order(n, ell)
    if order > CAYLEY_GATE:
        raise ComputeGateError("cayley-size", "|SL(%d,F_%d)| = %d exceeds %d"
                               % (n, ell, order, CAYLEY_GATE))
    gens = np.array([generator_matrix(n, g) for g in elementary_generators(n)]) % ell
    elems = kernels.group_closure(gens, ell, order)
    if len(elems) != order:
        raise AssertionError("closure has %d elements, expected %d" % (len(elems), order))
    weights = ell ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    codes = elems.reshape(len(elems), -1) @ weights
    m = np.zeros((order, order))
    for s in gens:
        prod_codes = ((elems @ s) % ell).reshape(order, -1) @ weights
        m[np.arange(order), np.searchsorted(codes, prod_codes)] += 1
    return m / len(gens)


def cayley_spectrum(n, ell, tol=1e-9):
    m = cayley_operator(n, ell)
    ev = np.linalg.eigvalsh((m + m.T) / 2)
    ones = int(np.sum(np.abs(ev - 1) < tol))
    rest = np.delete(ev, np.argmax(ev))
    rho = float(np.max(np.abs(rest))) if len(rest) else 0.0
    size = 2 * (n * n - n)
    alpha = -log(rho) / log(size) if 0 < rho < 1 else (0.0 if rho >= 1 else float("inf"))
    return CayleySpectrum(n, ell, len(m), ev, rho, alpha, bool(abs(ev[0] + 1) < tol), ones)
