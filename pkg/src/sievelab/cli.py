"""Command-line entry point: ``sievelab <subcommand> [options]``.

Exit codes: 0 success, 1 compute gate refused (gate named on stderr),
2 invalid arguments.
"""
import argparse
import sys
import time
from fractions import Fraction
from math import prod

from . import __version__
from .errors import ComputeGateError
from .serialize import dumps, to_csv

STOCHASTIC = {"groupwalk"}


class ValidationError(ValueError):
    pass


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers, got %r" % text)


def _frac_list(text):
    try:
        return [Fraction(v.strip()) for v in text.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("expected comma-separated rationals p/q, got %r" % text)


def _pair(text):
    vals = _int_list(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError("expected i,j")
    return tuple(vals)


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


# subcommand runners return (results, rows) where rows is a list of dicts for CSV

def run_classical(a):
    from .classical import classical_report
    r = classical_report(a.N, a.L, a.M, a.r, a.support)
    cols = ("N", "L", "delta_exact", "delta_bound", "H", "sifted", "bound")
    return r, [{c: r[c] for c in cols}]


def run_walkz(a):
    from .walk_z import walkz_report
    r = walkz_report(a.n, a.q, a.a, a.L, a.lazy)
    return r, [r]


def run_groupwalk(a):
    from .group_walk import WalkConfig, coupon_and_transition_times, run_reducibility_experiment
    rows = run_reducibility_experiment(WalkConfig(a.n, a.steps, a.trials, a.seed), a.threads)
    res = {"table": rows}
    if a.coupon:
        res["coupon"] = coupon_and_transition_times(a.n, a.trials, a.seed, threads=a.threads)
    return res, rows


def run_cayley(a):
    from .group_walk import cayley_spectrum
    s = cayley_spectrum(a.n, a.prime)
    res = {"n": s.n, "prime": s.ell, "order": s.order, "rho": s.rho, "alpha": s.alpha,
           "bipartite": s.bipartite, "eigenvalue_one_multiplicity": s.multiplicity_one,
           "eigenvalues": [round(float(v), 12) + 0.0 for v in s.eigenvalues]}
    return res, [{k: v for k, v in res.items() if k != "eigenvalues"}]


def run_appendixB(a):
    from .finite_groups import MatrixGroupSpec, density_report, q_symplectic_census
    if a.census:
        if a.g is None or a.q is None:
            raise ValidationError("--census needs --g and --q")
        count, total = q_symplectic_census(a.ell, a.g, a.q, a.census)
        res = {"ell": a.ell, "g": a.g, "q": a.q, "predicate": a.census, "count": count,
               "total": total}
        return res, [res]
    if a.family is None or a.n is None or a.part is None:
        raise ValidationError("need --family, --n and --part (or --census)")
    r = density_report(MatrixGroupSpec(a.family, a.n, a.ell), a.part, a.fiber, a.entry)
    return r, [r]


def run_repdegrees(a):
    from .rep_degrees import degree_multiset, rep_report
    r = rep_report(a.family, a.q)
    r["degrees"] = [list(e) for e in degree_multiset(a.family, a.q).entries]
    return r, [r]


def run_elliptic(a):
    from .elliptic import (CurvePoint, WeierstrassCurve, denominator_and_omega, multiples,
                           nu_coverage)
    curve = WeierstrassCurve(a.a1, a.a2, a.a3, a.a4, a.a6)
    P = CurvePoint.affine(Fraction(a.x), Fraction(a.y))
    if not curve.contains(P):
        raise ValidationError("point is not on the curve")
    rows = []
    for n, Q in enumerate(multiples(curve, P, a.N), start=1):
        d, w, flag = denominator_and_omega(Q, a.bound)
        rows.append({"n": n, "digits": len(str(d)) if d else 0, "omega_lower": w,
                     "cofactor_flag": flag})
    res = {"curve": list(curve.coeffs), "discriminant": curve.discriminant, "rows": rows}
    if a.coverage:
        res["coverage"] = nu_coverage(curve, P, a.coverage, a.p_max)
    return res, rows


def run_eds(a):
    from .elliptic import eds_discriminant, eds_extend, eds_rows, small_omega_ratio
    W = eds_extend(a.w2, a.w3, a.w4, a.N)
    rows = eds_rows(W, a.bound)
    res = {"discriminant": eds_discriminant(a.w2, a.w3, a.w4),
           "W": [str(w) for w in W.W], "rows": rows}
    if a.N >= 16:
        res["small_omega"] = small_omega_ratio(rows)
    return res, rows


def run_frobenius(a):
    from .frobenius import FamilySpec, census_rows, square_census
    spec = FamilySpec(a.q, tuple(a.f_coeffs))
    if a.g is not None and a.g != spec.g:
        raise ValidationError("--g %d does not match deg f = %d" % (a.g, 2 * spec.g))
    if a.sweep:
        rows = census_rows(spec)
        res = square_census(spec)
        res["rows"] = rows
        return res, rows
    if a.t is None:
        raise ValidationError("need --t or --sweep")
    rows = census_rows(spec, [a.t])
    if not rows:
        raise ValidationError("excluded fiber: f(t) = 0")
    return rows[0], rows


def run_smallsieve(a):
    from .classical import IntervalSpec, interval_sample, interval_system
    from .small_sieve import bonferroni_coeffs, sandwich_bounds
    primes = a.primes
    system = interval_system(primes)
    sample = interval_sample(IntervalSpec(0, a.N), primes)
    rows = []
    for k in range(len(primes) + 1):
        up = bonferroni_coeffs(primes, k if k % 2 == 0 else k + 1)
        lo = bonferroni_coeffs(primes, k if k % 2 else k + 1)
        b = sandwich_bounds(sample, system, up, lo)
        rows.append({"instance_id": 0, "k": k, "lower": b["lower"], "exact": b["exact"], "upper": b["upper"]})
    full = bonferroni_coeffs(primes, None)
    res = {"N": a.N, "primes": primes, "rows": rows,
           "full_moebius": sandwich_bounds(sample, system, full, full)["upper"]}
    if a.k is not None:
        res["selected"] = sandwich_bounds(sample, system, bonferroni_coeffs(primes, a.k),
                                          bonferroni_coeffs(primes, a.k))
    return res, rows


def run_dualsieve(a):
    from .classical import IntervalSpec, character_basis, interval_sample, interval_system
    from .core import dual_variance_check
    from .instances import random_instances
    rows = []
    if a.random:
        if a.seed is None:
            raise ValidationError("--random needs --seed")
        for i, (sample, system) in enumerate(random_instances(a.seed, a.random)):
            c = dual_variance_check(sample, system)
            rows.append({"instance": i, "lhs": c.lhs, "delta": c.delta, "Q": c.Q,
                         "rhs": c.delta * float(c.Q), "holds": c.holds})
    else:
        if a.N is None or a.primes is None:
            raise ValidationError("need --N and --primes (or --random)")
        system = interval_system(a.primes)
        sample = interval_sample(IntervalSpec(0, a.N), a.primes)
        c = dual_variance_check(sample, system, character_basis(a.primes))
        rows.append({"N": a.N, "primes": a.primes, "lhs": c.lhs, "delta": c.delta, "Q": c.Q,
                     "rhs": c.delta * float(c.Q), "holds": c.holds})
    return {"rows": rows, "all_hold": all(r["holds"] for r in rows)}, rows


def run_inclusionexclusion(a):
    from .core import (SieveSupport, binary_event_system, compute_H, gram_delta,
                       independent_sample, sifted_measure)
    probs = a.probs
    system, basis = binary_event_system(probs)
    sample = independent_sample(probs)
    support = SieveSupport.power_set(system.labels)
    gd = gram_delta(sample, system, support, basis)
    h = compute_H(system, support)
    res = {"probs": probs, "delta": gd.delta, "H": h, "bound": gd.delta / float(h),
           "product": prod((1 - p for p in probs), start=Fraction(1)),
           "sifted": sifted_measure(sample, system)}
    return res, [res]


def _common(p):
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--dry-run", action="store_true", help="validate and print the plan only")
    p.add_argument("--threads", type=_positive, default=None,
                   help="worker cap (default: $SIEVELAB_THREADS or 1)")
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")


def build_parser():
    parser = argparse.ArgumentParser(prog="sievelab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("classical", help="integers in an interval sieved by residues")
    p.add_argument("--N", type=_positive, required=True)
    p.add_argument("--L", type=_positive, required=True)
    p.add_argument("--M", type=int, default=0)
    p.add_argument("--r", type=_positive, default=1)
    p.add_argument("--support", choices=("squarefree", "psi"), default="squarefree")
    p.set_defaults(run=run_classical)

    p = sub.add_parser("walkz", help="simple random walk on Z: primes in progressions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=_positive, default=1)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--L", type=_positive)
    p.add_argument("--lazy", action="store_true")
    p.set_defaults(run=run_walkz)

    p = sub.add_parser("groupwalk", help="reducibility along random walks on SL(n, Z)")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--trials", type=_positive, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--coupon", action="store_true", help="also report t_n and tau_n")
    p.set_defaults(run=run_groupwalk)

    p = sub.add_parser("cayley", help="spectrum of the Cayley averaging operator on SL(n, F_l)")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(run=run_cayley)

    p = sub.add_parser("appendixB", help="local densities in SL/Sp/CSp over F_l")
    p.add_argument("--family", choices=("SL", "GL", "Sp", "CSp"))
    p.add_argument("--n", type=int, help="matrix size (n or 2g)")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--part", type=int, choices=range(1, 7))
    p.add_argument("--fiber", type=int)
    p.add_argument("--entry", type=_pair, default=(0, 0))
    p.add_argument("--census", choices=("f1_square", "q1_minus_a1_square", "f1_zero",
                                        "a1_eq_q1"))
    p.add_argument("--g", type=_positive)
    p.add_argument("--q", type=int)
    p.set_defaults(run=run_appendixB)

    p = sub.add_parser("repdegrees", help="character degrees of GL(2,q), SL(2,q)")
    p.add_argument("--family", choices=("GL2", "SL2"), required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(run=run_repdegrees)

    p = sub.add_parser("elliptic", help="denominators of multiples of a rational point")
    for c in ("a1", "a2", "a3", "a4", "a6"):
        p.add_argument("--" + c, type=int, default=0)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--N", type=_positive, default=20)
    p.add_argument("--bound", type=_positive, default=10 ** 6)
    p.add_argument("--coverage", type=_positive, help="report nu(l) coverage for l up to this")
    p.add_argument("--p-max", type=_positive, default=50)
    p.set_defaults(run=run_elliptic)

    p = sub.add_parser("eds", help="elliptic divisibility sequence")
    p.add_argument("--w2", type=int, default=1)
    p.add_argument("--w3", type=int, default=-1)
    p.add_argument("--w4", type=int, default=1)
    p.add_argument("--N", type=_positive, required=True)
    p.add_argument("--bound", type=_positive, default=10 ** 6)
    p.set_defaults(run=run_eds)

    p = sub.add_parser("frobenius", help="hyperelliptic family y^2 = f(x)(x - t)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--g", type=_positive)
    p.add_argument("--f-coeffs", type=_int_list, required=True,
                   help="coefficients of f, leading first, e.g. 1,0,1")
    p.add_argument("--t", type=int)
    p.add_argument("--sweep", action="store_true")
    p.set_defaults(run=run_frobenius)

    p = sub.add_parser("smallsieve", help="Bonferroni sandwich on 1..N")
    p.add_argument("--N", type=_positive, required=True)
    p.add_argument("--primes", type=_int_list, required=True)
    p.add_argument("--k", type=int)
    p.set_defaults(run=run_smallsieve)

    p = sub.add_parser("dualsieve", help="variance form of the sieve")
    p.add_argument("--N", type=_positive)
    p.add_argument("--primes", type=_int_list)
    p.add_argument("--random", type=_positive, help="number of random instances")
    p.add_argument("--seed", type=int)
    p.set_defaults(run=run_dualsieve)

    p = sub.add_parser("inclusionexclusion", help="independent events: the equality case")
    p.add_argument("--probs", type=_frac_list, required=True)
    p.set_defaults(run=run_inclusionexclusion)

    for p in sub.choices.values():
        _common(p)
    return parser


def _inputs(args):
    return {k: v for k, v in sorted(vars(args).items())
            if k not in ("run", "format", "output", "dry_run", "timing")}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.subcommand in STOCHASTIC and args.seed is None:
        parser.error("--seed is required for %s" % args.subcommand)
    inputs = _inputs(args)
    report = {"subcommand": args.subcommand, "version": __version__, "inputs": inputs}
    if args.dry_run:
        report["plan"] = "validated; would run %s" % args.subcommand
        sys.stdout.write(dumps(report))
        return 0
    start = time.perf_counter()
    try:
        results, rows = args.run(args)
    except ComputeGateError as exc:
        sys.stderr.write("compute gate %s refused: %s\n" % (exc.gate, exc))
        return 1
    except (ValueError, ArithmeticError) as exc:
        sys.stderr.write("sievelab: error: %s\n" % exc)
        return 2
    elapsed = time.perf_counter() - start
    report["results"] = results
    if args.timing:
        report["elapsed_seconds"] = elapsed
        sys.stderr.write("elapsed %.3f s\n" % elapsed)
    text = dumps(report) if args.format == "json" else to_csv(rows)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
