"""Logrank test statistic in fixed point.

Each time point contributes expected deaths e_i and variance v_i for group 1;
the final statistic is chi = (sum d_1 - sum e)^2 / sum v.  Values carry
PRECISION fractional bits.  The cdf of chi^2_1 is applied in the clear.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from ..algebra import Q
from .circuit import Builder
from .gadgets import div_round

PRECISION = 16
N_BITS = 10          # at-risk counts per group are < 2^N_BITS
TIME_POINTS = 16
STMT_DOMAIN = 128
CHI_SLOT = 4 * TIME_POINTS + 1


@dataclass
class FixedPoint:
    """Scaled integer value / 2^precision."""
    value: int
    precision: int = PRECISION

    @classmethod
    def from_fraction(cls, x, precision=PRECISION):
        return cls(round(Fraction(x) * (1 << precision)), precision)

    def __float__(self):
        return self.value / (1 << self.precision)

    def to_fraction(self):
        return Fraction(self.value, 1 << self.precision)


def signed(v):
    v %= Q
    return v - Q if v > Q // 2 else v


def logrank_block(b, d1, d2, n1, n2, precision=PRECISION):
    """(e_i^f, v_i^f, d_i) for one time point."""
    ac = d1 + d2
    bd = n1 + n2
    bdb = N_BITS + 1
    # e = ac n1 / bd, rounded once
    e = div_round(b, b.mul(ac, n1), bd, precision, 2 * bdb, bdb, bdb + precision + 1)
    vn = b.mul(b.mul(n1, n2), b.mul(ac, bd - ac))
    vd = b.mul(b.mul(bd, bd), bd - 1)
    v = div_round(b, vn, vd, precision, 4 * bdb, 3 * bdb, bdb + precision + 1)
    return e, v, d1


def logrank_fin(b, es, vs, ds, precision=PRECISION, as_written=False, points=TIME_POINTS):
    """chi^f = dmi^2 / vs with dmi = ds^f - es (or ds^f - vs, as the algorithm is written)."""
    ds_f = ds * (1 << precision)
    dmi = ds_f - (vs if as_written else es)
    sq = b.mul(dmi, dmi)
    lb = (points.bit_length() + N_BITS + 1 + precision + 1)
    return div_round(b, sq, vs, 0, 2 * lb, lb, 2 * lb)


def logrank_circuit(b, points=TIME_POINTS, precision=PRECISION, as_written=False, chi_slot=None):
    """Statement layout: slot 4i+1..4i+4 = (d1, d2, n1, n2) of time point i; chi at chi_slot."""
    es = vs = ds = b.zero()
    for i in range(points):
        d1, d2, n1, n2 = (b.stmt(4 * i + k) for k in range(1, 5))
        e, v, d = logrank_block(b, d1, d2, n1, n2, precision)
        es, vs, ds = es + e, vs + v, ds + d
    chi = logrank_fin(b, es, vs, ds, precision, as_written, points)
    slot = chi_slot or 4 * points + 1
    out = b.set_stmt(slot, chi.val)
    b.enforce(chi, 1, out)
    return out, (es, vs, ds)


def logrank_run(rt, table, precision=PRECISION, as_written=False):
    """table: list of (d1, d2, n1, n2) runtime values per time point."""
    points = len(table)
    b = Builder(rt, 4 * points + 1)
    for i, row in enumerate(table):
        for k, v in enumerate(row):
            b.set_stmt(4 * i + 1 + k, v)
    out, parts = logrank_circuit(b, points, precision, as_written)
    return b, out, parts


# ------------------------------------------------------------------ oracles

def exact_parts(table):
    es = sum((Fraction((d1 + d2) * n1, n1 + n2) for d1, d2, n1, n2 in table), Fraction(0))
    vs = sum((Fraction(n1 * n2 * (d1 + d2) * (n1 + n2 - d1 - d2), (n1 + n2) ** 2 * (n1 + n2 - 1))
              for d1, d2, n1, n2 in table), Fraction(0))
    ds = sum(d1 for d1, _, _, _ in table)
    return es, vs, ds


def exact_chi(table):
    """(sum E - sum d)^2 / sum V in exact rationals."""
    es, vs, ds = exact_parts(table)
    return (es - ds) ** 2 / vs


def as_written_chi(table):
    """The algorithm's FIN taken literally: (ds - vs)^2 / vs."""
    _, vs, ds = exact_parts(table)
    return (ds - vs) ** 2 / vs


def chi2_sf(x):
    """P[chi^2_1 > x], computed in the clear."""
    return math.erfc(math.sqrt(max(float(x), 0.0) / 2))


def random_table(rng, points=TIME_POINTS, hazard_ratio=None):
    """Two-arm survival table with a treatment effect so the statistic is well away from 0."""
    hr = hazard_ratio or rng.uniform(2.0, 4.0)
    n1 = rng.randint(60, 120)
    n2 = rng.randint(60, 120)
    base = rng.uniform(0.02, 0.05)
    rows = []
    for _ in range(points):
        d1 = min(n1 - 1, sum(rng.random() < base for _ in range(n1))) if n1 > 1 else 0
        d2 = min(n2 - 1, sum(rng.random() < base * hr for _ in range(n2))) if n2 > 1 else 0
        rows.append((d1, d2, n1, n2))
        n1 -= d1
        n2 -= d2
    return rows
