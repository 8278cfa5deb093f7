"""Shamir sharing, Beaver multiplication and robust decoding.

Party i holds the evaluation at x = i of a degree-t polynomial.  The simulated
dealer plays the offline phase: triples, random field shares and random bits.
Vectorised helpers keep one list per party ("share rows") because every MPC
step in this package touches many values at once.
"""

import itertools
import json
import random
from dataclasses import dataclass

from .algebra import Q, inv, lagrange_coeffs_at, msm, poly_divmod_raw, trim


class DecodeError(Exception):
    """No 2t+1 shares agree on a degree-t polynomial."""


class ProtocolError(Exception):
    pass


@dataclass(frozen=True)
class ShareParams:
    n: int
    t: int

    def __post_init__(self):
        if self.t < 0 or self.n < 1:
            raise ValueError("bad sharing parameters")
        if self.n < 3 * self.t + 1:
            raise ValueError("need n >= 3t+1 (n=%d, t=%d)" % (self.n, self.t))


@dataclass(frozen=True)
class Share:
    party_index: int
    value: int


@dataclass(frozen=True)
class GroupShare:
    party_index: int
    value: object


# ------------------------------------------------------------- plain sharing

def share(secret, params, rng):
    coeffs = [secret % Q] + [rng.randrange(Q) for _ in range(params.t)]
    out = []
    for i in range(1, params.n + 1):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * i + c) % Q
        out.append(Share(i, acc))
    return out


def reconstruct(shares):
    """Lagrange interpolation at 0 over whatever shares are given."""
    xs = [s.party_index for s in shares]
    lam = lagrange_coeffs_at(xs, 0)
    return sum(l * s.value for l, s in zip(lam, shares)) % Q


def _solve_mod(rows, rhs):
    """Gaussian elimination mod Q; returns one solution (free vars = 0) or None."""
    m = len(rows)
    ncol = len(rows[0]) if rows else 0
    A = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(ncol):
        p = next((i for i in range(r, m) if A[i][c] % Q), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        iv = inv(A[r][c])
        A[r] = [x * iv % Q for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % Q for x, y in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if A[i][ncol] % Q:
            return None
    sol = [0] * ncol
    for i, c in enumerate(piv_cols):
        sol[c] = A[i][ncol]
    return sol


def berlekamp_welch(xs, ys, t):
    """Coefficients of the degree-t polynomial agreeing with all but <= t points."""
    n = len(xs)
    e = t
    # unknowns: Q_0..Q_{e+t}, E_0..E_{e-1}; E monic of degree e
    rows, rhs = [], []
    for x, y in zip(xs, ys):
        row = []
        p = 1
        for _ in range(e + t + 1):
            row.append(p)
            p = p * x % Q
        p = 1
        for _ in range(e):
            row.append((-y * p) % Q)
            p = p * x % Q
        rows.append(row)
        rhs.append(y * pow(x, e, Q) % Q)
    sol = _solve_mod(rows, rhs)
    if sol is None:
        raise DecodeError("Berlekamp-Welch system has no solution")
    Qp = sol[:e + t + 1]
    E = sol[e + t + 1:] + [1]
    # P = Qp / E must be exact
    P, R = poly_divmod_raw(Qp, E)
    if trim(R):
        raise DecodeError("error locator does not divide")
    P = P + [0] * (t + 1 - len(P))
    if len(P) > t + 1:
        raise DecodeError("decoded degree too high")
    agree = 0
    for x, y in zip(xs, ys):
        acc = 0
        for c in reversed(P):
            acc = (acc * x + c) % Q
        agree += acc == y
    if agree < n - t or agree < 2 * t + 1:
        raise DecodeError("too few shares agree")
    return P


def robust_reconstruct(shares, params):
    """Secret from >= 2t+1 shares with at most t of them wrong."""
    if len(shares) < 2 * params.t + 1:
        raise DecodeError("need at least 2t+1 shares")
    xs = [s.party_index for s in shares]
    ys = [s.value % Q for s in shares]
    t = params.t
    # fast path: everything already on one degree-t curve
    lam = lagrange_coeffs_at(xs[:t + 1], 0)
    ok = True
    for j in range(t + 1, len(xs)):
        lj = lagrange_coeffs_at(xs[:t + 1], xs[j])
        if sum(a * b for a, b in zip(lj, ys[:t + 1])) % Q != ys[j]:
            ok = False
            break
    if ok:
        return sum(a * b for a, b in zip(lam, ys[:t + 1])) % Q
    return berlekamp_welch(xs, ys, t)[0]


def robust_reconstruct_exhaustive(shares, params):
    """Reference decoder: try every (t+1)-subset.  Test oracle only."""
    t = params.t
    xs = [s.party_index for s in shares]
    ys = [s.value % Q for s in shares]
    for sub in itertools.combinations(range(len(xs)), t + 1):
        px = [xs[i] for i in sub]
        py = [ys[i] for i in sub]
        agree = 0
        for x, y in zip(xs, ys):
            l = lagrange_coeffs_at(px, x)
            agree += sum(a * b for a, b in zip(l, py)) % Q == y
        if agree >= 2 * t + 1:
            l0 = lagrange_coeffs_at(px, 0)
            return sum(a * b for a, b in zip(l0, py)) % Q
    raise DecodeError("no agreeing subset")


# ------------------------------------------------------------ vector decoding

class Decoder:
    """Cached interpolation matrices for one (n, t)."""

    _cache = {}

    @classmethod
    def get(cls, n, t):
        key = (n, t)
        if key not in cls._cache:
            cls._cache[key] = cls(n, t)
        return cls._cache[key]

    def __init__(self, n, t):
        self.n, self.t = n, t
        self.params = ShareParams(n, t)
        self.base = list(range(1, t + 2))
        self.at0 = lagrange_coeffs_at(self.base, 0)
        self.pred = {j: lagrange_coeffs_at(self.base, j) for j in range(t + 2, n + 1)}
        self._subset_cache = {}

    def _coeffs_for(self, subset):
        key = tuple(subset)
        if key not in self._subset_cache:
            pred = {j: lagrange_coeffs_at(list(subset), j) for j in range(1, self.n + 1)}
            self._subset_cache[key] = (lagrange_coeffs_at(list(subset), 0), pred)
        return self._subset_cache[key]

    def open_rows(self, rows, suspects=()):
        """rows[i] = party i+1's shares of k values; returns the k secrets."""
        n, t = self.n, self.t
        k = len(rows[0])
        if t == 0:
            # degree-0 sharing: all shares equal the secret; majority vote
            out = []
            for j in range(k):
                vals = [r[j] % Q for r in rows]
                best = max(set(vals), key=vals.count)
                if vals.count(best) < (n // 2) + 1 and n > 1:
                    raise DecodeError("no majority")
                out.append(best)
            return out
        cols = list(zip(*rows))
        out = [0] * k
        bad = []
        # fast path on the first t+1 parties
        lam0 = self.at0
        predicted = {j: self.pred[j] for j in self.pred}
        for idx in range(k):
            c = cols[idx]
            ok = True
            for j, lj in predicted.items():
                if sum(a * b for a, b in zip(lj, c[:t + 1])) % Q != c[j - 1] % Q:
                    ok = False
                    break
            if ok:
                out[idx] = sum(a * b for a, b in zip(lam0, c[:t + 1])) % Q
            else:
                bad.append(idx)
        if not bad:
            return out
        # slow path: find liars once, then reuse the clean subset
        first = bad[0]
        xs = list(range(1, n + 1))
        P = berlekamp_welch(xs, [v % Q for v in cols[first]], t)
        liars = set()
        for x in xs:
            acc = 0
            for cf in reversed(P):
                acc = (acc * x + cf) % Q
            if acc != cols[first][x - 1] % Q:
                liars.add(x)
        honest = [x for x in xs if x not in liars]
        sub = honest[:t + 1]
        l0, pred = self._coeffs_for(sub)
        for idx in bad:
            c = cols[idx]
            py = [c[x - 1] % Q for x in sub]
            agree = 0
            for x in honest:
                agree += sum(a * b for a, b in zip(pred[x], py)) % Q == c[x - 1] % Q
            if agree >= 2 * t + 1:
                out[idx] = sum(a * b for a, b in zip(l0, py)) % Q
            else:
                out[idx] = berlekamp_welch(xs, [v % Q for v in c], t)[0]
        return out

    def open_points(self, pts, suspects=()):
        """Robust interpolation in the exponent: pts[i] is party i+1's G1 share."""
        n, t = self.n, self.t
        if t == 0:
            for p in pts:
                if sum(1 for r in pts if r == p) * 2 > n:
                    return p
            raise DecodeError("no majority among group shares")
        xs = list(range(1, n + 1))
        order = [x for x in xs if x not in suspects] + [x for x in xs if x in suspects]
        tried = set()
        # candidate subsets, preferring unsuspected parties
        for sub in itertools.combinations(order, t + 1):
            key = tuple(sorted(sub))
            if key in tried:
                continue
            tried.add(key)
            l0, pred = self._coeffs_for(key)
            base_pts = [pts[x - 1] for x in key]
            agree = t + 1
            for x in xs:
                if x in key:
                    continue
                if msm(base_pts, pred[x]) == pts[x - 1]:
                    agree += 1
            if agree >= 2 * t + 1:
                return msm(base_pts, l0)
        raise DecodeError("no 2t+1 group shares agree")


def robust_exp_interpolate(gshares, params):
    """g^{f(0)} h^{r(0)} from group shares, tolerating t bad ones."""
    dec = Decoder.get(params.n, params.t)
    pts = [None] * params.n
    for s in gshares:
        pts[s.party_index - 1] = s.value
    if any(p is None for p in pts):
        raise DecodeError("missing group shares")
    return dec.open_points(pts)


# ----------------------------------------------------------------- dealer

@dataclass
class BeaverTriple:
    a: list
    b: list
    c: list
    used: bool = False


class Dealer:
    """Trusted-dealer stand-in for the robust offline phase."""

    def __init__(self, params, seed=0):
        self.params = params
        self.rng = random.Random(repr(("dealer", seed)))
        self.stats = {"triples": 0, "bits": 0, "randoms": 0, "shared": 0}
        n = params.n
        self._pows = [[pow(i, k, Q) for k in range(params.t + 1)] for i in range(1, n + 1)]

    def share_rows(self, values):
        """Share every value; returns n rows of shares."""
        t = self.params.t
        m = len(values)
        self.stats["shared"] += m
        rnd = self.rng.randrange
        R = [[rnd(Q) for _ in range(m)] for _ in range(t)]
        rows = []
        for pw in self._pows:
            row = list(values)
            for k in range(t):
                c = pw[k + 1]
                row = [v + c * r for v, r in zip(row, R[k])]
            rows.append([v % Q for v in row])
        return rows

    def share(self, secret):
        return share(secret, self.params, self.rng)

    def triples(self, m):
        rnd = self.rng.randrange
        a = [rnd(Q) for _ in range(m)]
        b = [rnd(Q) for _ in range(m)]
        c = [x * y % Q for x, y in zip(a, b)]
        self.stats["triples"] += m
        return BeaverTriple(self.share_rows(a), self.share_rows(b), self.share_rows(c))

    def triple(self):
        return self.triples(1)

    def random_rows(self, m):
        self.stats["randoms"] += m
        return self.share_rows([self.rng.randrange(Q) for _ in range(m)])

    def random_bit_rows(self, m):
        self.stats["bits"] += m
        return self.share_rows([self.rng.getrandbits(1) for _ in range(m)])

    def export(self, path, n_triples=0, n_randoms=0):
        """Write a preprocessing file: per-party triple and random shares."""
        tr = self.triples(n_triples) if n_triples else BeaverTriple([[]] * self.params.n, [[]] * self.params.n, [[]] * self.params.n)
        rr = self.random_rows(n_randoms) if n_randoms else [[] for _ in range(self.params.n)]
        doc = {"n": self.params.n, "t": self.params.t, "parties": []}
        for i in range(self.params.n):
            doc["parties"].append({
                "index": i + 1,
                "triples": [[hex(x), hex(y), hex(z)] for x, y, z in zip(tr.a[i], tr.b[i], tr.c[i])],
                "randoms": [hex(x) for x in rr[i]],
            })
        with open(path, "w") as f:
            json.dump(doc, f)
        return doc


def load_preprocessing(path):
    with open(path) as f:
        doc = json.load(f)
    parties = doc["parties"]
    a = [[int(x[0], 16) for x in p["triples"]] for p in parties]
    b = [[int(x[1], 16) for x in p["triples"]] for p in parties]
    c = [[int(x[2], 16) for x in p["triples"]] for p in parties]
    r = [[int(x, 16) for x in p["randoms"]] for p in parties]
    return ShareParams(doc["n"], doc["t"]), BeaverTriple(a, b, c), r


def rows_to_shares(rows, j=0):
    return [Share(i + 1, row[j]) for i, row in enumerate(rows)]


def open_rows(rows, bus, op="open"):
    """Each party broadcasts its row; everyone decodes robustly."""
    rows = bus.broadcast_fq(rows, op)
    return Decoder.get(bus.n, bus.t).open_rows(rows, bus.suspects)


def beaver_mul_rows(x_rows, y_rows, triple, bus):
    """Elementwise product of two shared vectors using one triple per element."""
    if triple.used:
        raise ProtocolError("Beaver triple reused")
    triple.used = True
    eps_rows = [[(x - a) % Q for x, a in zip(xr, ar)] for xr, ar in zip(x_rows, triple.a)]
    del_rows = [[(y - b) % Q for y, b in zip(yr, br)] for yr, br in zip(y_rows, triple.b)]
    k = len(x_rows[0])
    opened = open_rows([e + d for e, d in zip(eps_rows, del_rows)], bus, "beaver")
    eps, dlt = opened[:k], opened[k:]
    ed = [e * d % Q for e, d in zip(eps, dlt)]
    return [[(c + e * b + d * a + w) % Q for c, e, b, d, a, w in zip(cr, eps, br, dlt, ar, ed)]
            for cr, br, ar in zip(triple.c, triple.b, triple.a)]


def beaver_mul(x, y, triple, bus):
    """x, y: one Share per party.  Returns shares of the product."""
    rows = beaver_mul_rows([[s.value] for s in x], [[s.value] for s in y], triple, bus)
    return [Share(i + 1, r[0]) for i, r in enumerate(rows)]
