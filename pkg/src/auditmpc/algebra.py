"""Scalar field, FFT domains, polynomials and the pairing group backend.

Field elements are plain Python ints reduced mod Q.  Group elements are the
BLS12-381 points of ``py_arkworks_bls12381``; nothing outside this module
touches that package directly.
"""

import hashlib
from functools import lru_cache

from py_arkworks_bls12381 import G1Point, G2Point, GT, Scalar

# order of G1/G2/GT
Q = 0x73EDA753299D7D483339D80809A1D80553BDA402FFFE5BFEFFFFFFFF00000001
TWO_ADICITY = 32
MULT_GEN = 7
G1_BYTES = 48
G2_BYTES = 96
FQ_BYTES = 32


class DomainError(ValueError):
    pass


def inv(a):
    if a % Q == 0:
        raise ZeroDivisionError("inverse of zero")
    return pow(a, -1, Q)


def batch_inverse(xs):
    """Montgomery's trick: one field inversion for the whole list."""
    n = len(xs)
    if n == 0:
        return []
    prefix = [1] * n
    acc = 1
    for i, x in enumerate(xs):
        prefix[i] = acc
        acc = acc * x % Q
    acc = inv(acc)
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = acc * prefix[i] % Q
        acc = acc * xs[i] % Q
    return out


def root_of_unity(n):
    if n & (n - 1) or n < 1:
        raise DomainError("domain size must be a power of two")
    k = n.bit_length() - 1
    if k > TWO_ADICITY:
        raise DomainError("domain larger than the field 2-adicity")
    w = pow(MULT_GEN, (Q - 1) >> TWO_ADICITY, Q)
    return pow(w, 1 << (TWO_ADICITY - k), Q)


def next_pow2(n):
    return 1 if n <= 1 else 1 << (n - 1).bit_length()


# ---------------------------------------------------------------- FFT

@lru_cache(maxsize=None)
def _bitrev(n):
    bits = n.bit_length() - 1
    out = [0] * n
    for i in range(1, n):
        out[i] = (out[i >> 1] >> 1) | ((i & 1) << (bits - 1))
    return tuple(out)


@lru_cache(maxsize=32)
def _twiddles(n, inverse):
    w = root_of_unity(n)
    if inverse:
        w = inv(w)
    tw = [1] * max(1, n // 2)
    for k in range(1, n // 2):
        tw[k] = tw[k - 1] * w % Q
    return tw


def _fft_core(a, inverse):
    n = len(a)
    if n == 1:
        return list(a)
    R = _bitrev(n)
    a = [a[i] for i in R]
    tw = _twiddles(n, inverse)
    h = 1
    while h < n:
        step = n // (2 * h)
        # pick whichever loop is shorter: butterflies by twiddle or by block
        if h <= step:
            for k in range(h):
                c = tw[k * step]
                lo = a[k::2 * h]
                hi = a[k + h::2 * h]
                t = hi if c == 1 else [c * y % Q for y in hi]
                a[k::2 * h] = [(x + y) % Q for x, y in zip(lo, t)]
                a[k + h::2 * h] = [(x - y) % Q for x, y in zip(lo, t)]
        else:
            ws = tw[::step][:h]
            for s in range(0, n, 2 * h):
                lo = a[s:s + h]
                t = [c * y % Q for c, y in zip(ws, a[s + h:s + 2 * h])]
                a[s:s + h] = [(x + y) % Q for x, y in zip(lo, t)]
                a[s + h:s + 2 * h] = [(x - y) % Q for x, y in zip(lo, t)]
        h *= 2
    return a


class EvaluationDomain:
    """Multiplicative subgroup of size ``size`` (optionally shifted by ``offset``)."""

    def __init__(self, size, offset=1):
        if size < 1 or size & (size - 1):
            raise DomainError("domain size must be a power of two, got %r" % (size,))
        self.size = size
        self.offset = offset % Q
        self.generator = root_of_unity(size)
        self.size_inv = inv(size)
        self._elements = None

    def __repr__(self):
        return "EvaluationDomain(size=%d, offset=%d)" % (self.size, self.offset)

    @property
    def elements(self):
        if self._elements is None:
            el = [self.offset] * self.size
            for i in range(1, self.size):
                el[i] = el[i - 1] * self.generator % Q
            self._elements = el
        return self._elements

    def element(self, i):
        return self.offset * pow(self.generator, i, Q) % Q

    def vanishing_eval(self, x):
        return (pow(x, self.size, Q) - pow(self.offset, self.size, Q)) % Q

    def vanishing_poly(self):
        return [(-pow(self.offset, self.size, Q)) % Q] + [0] * (self.size - 1) + [1]

    def fft(self, coeffs):
        """Evaluate a coefficient vector (len <= size) on the domain."""
        if len(coeffs) > self.size:
            raise DomainError("polynomial too long for domain (%d > %d)" % (len(coeffs), self.size))
        a = list(coeffs) + [0] * (self.size - len(coeffs))
        if self.offset != 1:
            g = 1
            for i in range(len(coeffs)):
                a[i] = a[i] * g % Q
                g = g * self.offset % Q
        return _fft_core(a, False)

    def ifft(self, evals):
        if len(evals) != self.size:
            raise DomainError("expected %d evaluations, got %d" % (self.size, len(evals)))
        a = _fft_core(evals, True)
        ni = self.size_inv
        if self.offset == 1:
            return [x * ni % Q for x in a]
        gi = inv(self.offset)
        c = ni
        out = [0] * self.size
        for i in range(self.size):
            out[i] = a[i] * c % Q
            c = c * gi % Q
        return out

    def lagrange_evals(self, x):
        """[L_i(x)] for the Lagrange basis of this domain."""
        x %= Q
        el = self.elements
        vx = self.vanishing_eval(x)
        if vx == 0:
            return [1 if e == x else 0 for e in el]
        # L_i(x) = v(x) * w_i / (n * offset^n * (x - w_i))
        c = vx * inv(self.size * pow(self.offset, self.size, Q)) % Q
        dens = batch_inverse([(x - e) % Q for e in el])
        return [c * e % Q * d % Q for e, d in zip(el, dens)]


def fft_evaluate(coeffs, domain):
    return domain.fft(coeffs)


def fft_interpolate(evals, domain):
    if len(evals) != domain.size:
        raise DomainError("expected %d evaluations, got %d" % (domain.size, len(evals)))
    return DensePolynomial(domain.ifft(evals))


# ---------------------------------------------------------- polynomials
# raw helpers on coefficient lists (low to high); the prover lives on these

def trim(c):
    c = list(c)
    while c and c[-1] % Q == 0:
        c.pop()
    return c


def poly_eval(c, x):
    acc = 0
    for a in reversed(c):
        acc = (acc * x + a) % Q
    return acc


def poly_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = (out[i] + y) % Q
    return out


def poly_sub(a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % Q
    return out


def poly_scale(a, s):
    return [x * s % Q for x in a]


def poly_lincomb(polys, scalars):
    n = max((len(p) for p in polys), default=0)
    out = [0] * n
    for p, s in zip(polys, scalars):
        if s % Q == 0:
            continue
        for i, x in enumerate(p):
            out[i] += x * s
    return [x % Q for x in out]


def poly_mul_naive(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return [x % Q for x in out]


def poly_mul(a, b):
    if not a or not b:
        return []
    if min(len(a), len(b)) < 32:
        return poly_mul_naive(a, b)
    n = len(a) + len(b) - 1
    d = EvaluationDomain(next_pow2(n))
    ea, eb = d.fft(a), d.fft(b)
    return d.ifft([x * y % Q for x, y in zip(ea, eb)])[:n]


def divide_by_linear(a, z):
    """Quotient of a(X) by (X - z); the remainder a(z) is dropped."""
    n = len(a)
    if n <= 1:
        return []
    out = [0] * (n - 1)
    acc = 0
    for i in range(n - 1, 0, -1):
        acc = (acc * z + a[i]) % Q
        out[i - 1] = acc
    return out


def divide_by_vanishing(a, n, c=1):
    """Divide by X^n - c.  Returns (quotient, remainder) with deg r < n."""
    a = list(a)
    if len(a) <= n:
        return [], a
    quo = [0] * (len(a) - n)
    for i in range(len(a) - 1, n - 1, -1):
        v = a[i]
        if v:
            quo[i - n] = v
            a[i - n] = (a[i - n] + v * c) % Q
    return quo, a[:n]


def _long_divmod(a, b):
    a = list(a)
    db = len(b) - 1
    lead_inv = inv(b[-1])
    if len(a) <= db:
        return [], a
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        coef = a[i] * lead_inv % Q
        quo[i - db] = coef
        if coef:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - coef * b[j]) % Q
    return quo, a[:db]


def _series_inverse(f, k):
    # g with f*g = 1 mod X^k, Newton doubling
    g = [inv(f[0])]
    m = 1
    while m < k:
        m = min(2 * m, k)
        fg = poly_mul(f[:m], g)[:m]
        corr = [(-x) % Q for x in fg]
        corr[0] = (corr[0] + 2) % Q
        g = poly_mul(g, corr)[:m]
    return g


def _fft_divmod(a, b):
    da, db = len(a) - 1, len(b) - 1
    k = da - db + 1
    ra, rb = a[::-1], b[::-1]
    rq = poly_mul(ra[:k], _series_inverse(rb, k))[:k]
    rq += [0] * (k - len(rq))
    quo = rq[::-1]
    rem = poly_sub(a, poly_mul(quo, b))[:db]
    return quo, rem


FFT_DIVMOD_THRESHOLD = 64


def poly_divmod_raw(a, b):
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    if len(b) - 1 < FFT_DIVMOD_THRESHOLD and len(a) - 1 < FFT_DIVMOD_THRESHOLD:
        return _long_divmod(a, b)
    return _fft_divmod(a, b)


class DensePolynomial:
    """Coefficient vector, lowest degree first, trailing zeros stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = tuple(trim([c % Q for c in coeffs]))

    @classmethod
    def X(cls):
        return cls([0, 1])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __call__(self, x):
        return poly_eval(self.coeffs, x % Q)

    def __eq__(self, other):
        if isinstance(other, int):
            other = DensePolynomial([other])
        return isinstance(other, DensePolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "DensePolynomial(deg=%d)" % self.degree

    def __add__(self, other):
        return DensePolynomial(poly_add(self.coeffs, _coeffs(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return DensePolynomial(poly_sub(self.coeffs, _coeffs(other)))

    def __rsub__(self, other):
        return DensePolynomial(poly_sub(_coeffs(other), self.coeffs))

    def __neg__(self):
        return DensePolynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return DensePolynomial(poly_scale(self.coeffs, other))
        return DensePolynomial(poly_mul(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def __divmod__(self, other):
        return poly_divmod(self, other)


def _coeffs(p):
    if isinstance(p, DensePolynomial):
        return list(p.coeffs)
    if isinstance(p, int):
        return [p % Q]
    return list(p)


def poly_divmod(a, b):
    """Returns (q, r) with q*b + r == a and deg r < deg b."""
    qc, rc = poly_divmod_raw(_coeffs(a), _coeffs(b))
    return DensePolynomial(qc), DensePolynomial(rc)


def vanishing_poly(n):
    return DensePolynomial(EvaluationDomain(n).vanishing_poly())


def lagrange_coeffs_at(points, x):
    """[l_i(x)] for the Lagrange basis over arbitrary distinct points."""
    pts = [p % Q for p in points]
    if len(set(pts)) != len(pts):
        raise DomainError("interpolation points must be distinct")
    x %= Q
    if x in pts:
        return [1 if p == x else 0 for p in pts]
    full = 1
    for p in pts:
        full = full * (x - p) % Q
    dens = []
    for i, p in enumerate(pts):
        d = (x - p) % Q
        for j, r in enumerate(pts):
            if j != i:
                d = d * (p - r) % Q
        dens.append(d)
    return [full * di % Q for di in batch_inverse(dens)]


def interpolate_points(xs, ys):
    """Coefficients of the unique polynomial through (xs, ys); O(n^2)."""
    n = len(xs)
    out = [0] * n
    for i in range(n):
        basis = [1]
        den = 1
        for j in range(n):
            if j == i:
                continue
            basis = poly_mul_naive(basis, [(-xs[j]) % Q, 1])
            den = den * (xs[i] - xs[j]) % Q
        c = ys[i] * inv(den) % Q
        for k, b in enumerate(basis):
            out[k] = (out[k] + c * b) % Q
    return out


# ------------------------------------------------------------- groups

class PairingCounter:
    """Counts Miller loops so verifiers can be held to a pairing budget."""

    def __init__(self):
        self.count = 0

    def reset(self):
        self.count = 0


PAIRINGS = PairingCounter()


def to_scalar(x):
    return Scalar(x % Q)


def g1_gen():
    return G1Point()


def g2_gen():
    return G2Point()


def g1_zero():
    return G1Point.identity()


def g2_zero():
    return G2Point.identity()


def g1_mul(p, k):
    k %= Q
    if k == 0:
        return G1Point.identity()
    return p * Scalar(k)


def g2_mul(p, k):
    k %= Q
    if k == 0:
        return G2Point.identity()
    return p * Scalar(k)


def msm(points, scalars):
    """Variable-base multi-scalar multiplication (Pippenger, in the backend)."""
    if len(points) < len(scalars):
        raise ValueError("more scalars than bases")
    pts, scs = [], []
    fb = Scalar.from_le_bytes
    for p, s in zip(points, scalars):
        s %= Q
        if s:
            pts.append(p)
            scs.append(fb(s.to_bytes(32, "little")))
    if not pts:
        return G1Point.identity()
    if len(pts) == 1:
        return pts[0] * scs[0]
    return G1Point.multiexp_unchecked(pts, scs)


def pairing(p, q):
    PAIRINGS.count += 1
    return GT.pairing(p, q)


def pairing_product_is_one(g1s, g2s):
    """True iff prod e(g1s[i], g2s[i]) == 1, using one multi-pairing."""
    PAIRINGS.count += len(g1s)
    return GT.multi_pairing(list(g1s), list(g2s)) == GT.one()


class FixedBase:
    """Windowed table for repeated multiplication of one base point."""

    def __init__(self, base, window=8, bits=256):
        self.window = window
        self.mask = (1 << window) - 1
        self.nwin = (bits + window - 1) // window
        table = []
        step = base
        for _ in range(self.nwin):
            row = [G1Point.identity(), step]
            for _ in range(2, 1 << window):
                row.append(row[-1] + step)
            table.append(row)
            step = row[-1] + step
        self.table = table

    def mul(self, k):
        k %= Q
        acc = G1Point.identity()
        j = 0
        while k:
            d = k & self.mask
            if d:
                acc = acc + self.table[j][d]
            k >>= self.window
            j += 1
        return acc


class BilinearGroup:
    """(G1, G2, GT, q, g, h, e) for the configured curve."""

    order = Q

    def __init__(self):
        self.g = G1Point()
        self.h = G2Point()

    def pairing(self, a, b):
        return pairing(a, b)

    def gt_one(self):
        return GT.one()


# ------------------------------------------------------- serialization

def g1_to_bytes(p):
    return bytes(p.to_compressed_bytes())


def g1_from_bytes(b, check=True):
    b = bytes(b)
    if len(b) != G1_BYTES:
        raise ValueError("G1 encoding must be %d bytes" % G1_BYTES)
    if check:
        return G1Point.from_compressed_bytes(b)
    return G1Point.from_compressed_bytes_unchecked(b)


def g2_to_bytes(p):
    return bytes(p.to_compressed_bytes())


def g2_from_bytes(b, check=True):
    b = bytes(b)
    if len(b) != G2_BYTES:
        raise ValueError("G2 encoding must be %d bytes" % G2_BYTES)
    if check:
        return G2Point.from_compressed_bytes(b)
    return G2Point.from_compressed_bytes_unchecked(b)


def fq_to_bytes(x):
    return (x % Q).to_bytes(FQ_BYTES, "little")


def fq_from_bytes(b):
    if len(b) != FQ_BYTES:
        raise ValueError("scalar encoding must be %d bytes" % FQ_BYTES)
    v = int.from_bytes(b, "little")
    if v >= Q:
        raise ValueError("non-canonical scalar")
    return v


def hash_to_field(*parts):
    """Wide (512-bit) hash reduced mod Q."""
    h = hashlib.blake2b(digest_size=64)
    for p in parts:
        h.update(len(p).to_bytes(8, "little"))
        h.update(p)
    return int.from_bytes(h.digest(), "little") % Q
