"""Irreducible character degrees of GL(2, q) and SL(2, q) and the A_p functionals."""
from dataclasses import dataclass
from math import inf

FAMILIES = {"GL2": (4, 2), "SL2": (3, 1)}  # (dimension d, rank r)


def _odd_prime(q):
    return q > 2 and all(q % k for k in range(2, int(q ** 0.5) + 1))


@dataclass(frozen=True)
class DegreeMultiset:
    family: str
    q: int
    entries: tuple  # ((degree, multiplicity), ...)

    @property
    def order(self):
        q = self.q
        gl = (q * q - 1) * (q * q - q)
        return gl if self.family == "GL2" else gl // (q - 1)

    @property
    def class_count(self):
        return sum(m for _, m in self.entries)

    def check(self):
        if sum(m * d * d for d, m in self.entries) != self.order:
            raise AssertionError("sum of squared degrees differs from |G|")
        expected = self.q ** 2 - 1 if self.family == "GL2" else self.q + 4
        if self.class_count != expected:
            raise AssertionError("class count mismatch")
        return True


def degree_multiset(family, q):
    if family not in FAMILIES:
        raise ValueError("family must be GL2 or SL2")
    if not _odd_prime(q):
        raise ValueError("q must be an odd prime")
    if family == "GL2":
        entries = ((1, q - 1), (q - 1, q * (q - 1) // 2), (q, q - 1),
                   (q + 1, (q - 1) * (q - 2) // 2))
    else:
        entries = ((1, 1), (q, 1), ((q + 1) // 2, 2), ((q - 1) // 2, 2),
                   (q + 1, (q - 3) // 2), (q - 1, (q - 1) // 2))
    ms = DegreeMultiset(family, q, tuple((d, m) for d, m in entries if m))
    ms.check()
    return ms


def a_p(ms, p):
    """(sum of dim^p)^(1/p); the largest degree when p is infinite."""
    if p == inf:
        return max(d for d, _ in ms.entries)
    if p < 1:
        raise ValueError("p must be >= 1")
    return sum(m * d ** p for d, m in ms.entries) ** (1 / p)


def a_1(ms):
    return sum(m * d for d, m in ms.entries)


def a_2_squared(ms):
    return sum(m * d * d for d, m in ms.entries)


def gow_symmetric_count(q):
    """Number of invertible symmetric 2x2 matrices over F_q, by brute force."""
    if not _odd_prime(q) or q > 50:
        raise ValueError("q must be an odd prime <= 50")
    return sum(1 for a in range(q) for b in range(q) for d in range(q) if (a * d - b * b) % q)


def p_prime_part(n, p):
    while n % p == 0:
        n //= p
    return n


def type_a_bound(q, p):
    """(q+1)^((d-r)/2 + r/p) with (d, r) = (4, 2); valid for GL(2, q) and its subgroups."""
    d, r = FAMILIES["GL2"]
    return (q + 1) ** ((d - r) / 2 + (0 if p == inf else r / p))


def sl_lemma_bound(q, p, kappa=2):
    """kappa^(1/p) (q+1)^((d-r)/2 + r/p) ((q+1)/(q-1))^(1/p) with (d, r) = (3, 1)."""
    d, r = FAMILIES["SL2"]
    if p == inf:
        return (q + 1) ** ((d - r) / 2)
    return kappa ** (1 / p) * (q + 1) ** ((d - r) / 2 + r / p) * ((q + 1) / (q - 1)) ** (1 / p)


def bounds(family, q):
    d, r = FAMILIES[family]
    out = {"bound_Ainf": (q + 1) ** ((d - r) // 2)}
    if family == "GL2":
        out["bound_A1"] = type_a_bound(q, 1)
    else:
        out["bound_A1"] = sl_lemma_bound(q, 1)
    return out


def rep_report(family, q):
    ms = degree_multiset(family, q)
    row = {
        "family": family, "q": q,
        "A_1": a_1(ms), "A_2": a_p(ms, 2), "A_inf": a_p(ms, inf),
    }
    row.update(bounds(family, q))
    row["gow_count"] = gow_symmetric_count(q) if family == "GL2" and q <= 50 else None
    return row
