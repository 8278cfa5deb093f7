"""Hiding KZG commitments in the algebraic group model.

    Sigma = (g^{a^i}, g^{gamma a^i})_{i<=D},   rk = (D, g^gamma, h^a)
    commit(phi; phibar) = g^{phi(a)} g^{gamma phibar(a)}
    open at q:  w = commit((phi - phi(q))/(X - q); (phibar - phibar(q))/(X - q)),  vbar = phibar(q)
    check:      e(c / (g^v g^{gamma vbar}), h) == e(w, h^a / h^q)
"""

import random
import struct
from dataclasses import dataclass

from .algebra import (G1_BYTES, G2_BYTES, Q, DensePolynomial, FixedBase, divide_by_linear,
                      g1_from_bytes, g1_gen, g1_mul, g1_to_bytes, g1_zero, g2_from_bytes,
                      g2_gen, g2_mul, g2_to_bytes, msm, pairing_product_is_one, poly_eval,
                      poly_lincomb)


class DegreeError(ValueError):
    pass


@dataclass
class Trapdoor:
    alpha: int
    gamma: int


@dataclass
class CommitterKey:
    powers: list
    shifted_powers: list  # g^{gamma a^i}
    max_degree: int

    def __len__(self):
        return self.max_degree + 1


@dataclass
class ReceiverKey:
    max_degree: int
    g: object
    g_gamma: object
    h: object
    h_alpha: object


@dataclass
class PolyCommitment:
    c: object

    def to_bytes(self):
        return g1_to_bytes(self.c)

    def __eq__(self, other):
        return isinstance(other, PolyCommitment) and self.c == other.c


@dataclass
class OpeningProof:
    w: object
    v_bar: int


@dataclass
class Randomness:
    """Hiding polynomial phibar as a coefficient list."""
    coeffs: list

    @classmethod
    def sample(cls, degree, rng):
        return cls([rng.randrange(Q) for _ in range(max(degree, 0) + 1)])

    @classmethod
    def zero(cls):
        return cls([])


def srs_powers(D, alpha, gamma):
    """g^{alpha^i} and g^{gamma alpha^i} for i = 0..D via a fixed-base table."""
    fb = FixedBase(g1_gen())
    powers, shifted = [], []
    a = 1
    for _ in range(D + 1):
        powers.append(fb.mul(a))
        shifted.append(fb.mul(gamma * a))
        a = a * alpha % Q
    return powers, shifted


def pc_setup(max_degree, rng):
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    alpha = rng.randrange(1, Q)
    gamma = rng.randrange(1, Q)
    powers, shifted = srs_powers(max_degree, alpha, gamma)
    ck = CommitterKey(powers, shifted, max_degree)
    rk = ReceiverKey(max_degree, powers[0], shifted[0], g2_gen(), g2_mul(g2_gen(), alpha))
    return ck, rk, Trapdoor(alpha, gamma)


def commit_raw(ck, coeffs, hiding=None, shift=0):
    """g^{X^shift p(a)} g^{gamma X^shift pbar(a)}; aborts past the SRS degree."""
    top = shift + max(len(coeffs), len(hiding or ())) - 1
    if top > ck.max_degree:
        raise DegreeError("degree %d exceeds SRS bound %d" % (top, ck.max_degree))
    pts = ck.powers[shift:shift + len(coeffs)]
    scs = list(coeffs)
    if hiding:
        pts = pts + ck.shifted_powers[shift:shift + len(hiding)]
        scs += hiding
    return msm(pts, scs) if scs else g1_zero()


def _coeffs(phi):
    return list(phi.coeffs) if isinstance(phi, DensePolynomial) else list(phi)


def pc_commit(ck, phi, omega=None, rng=None):
    """Commit to phi.  ``omega`` is the hiding polynomial; sampled from rng if absent."""
    coeffs = _coeffs(phi)
    if len(coeffs) - 1 > ck.max_degree:
        raise DegreeError("deg(phi) = %d > D = %d" % (len(coeffs) - 1, ck.max_degree))
    if omega is None:
        omega = Randomness.sample(len(coeffs) - 1, rng or random.Random())
    return PolyCommitment(commit_raw(ck, coeffs, omega.coeffs))


def open_raw(ck, coeffs, hiding, q, shift=0):
    """Witness for X^shift p(X) at q.  Returns (w, vbar) with vbar for the shifted hiding poly."""
    full = [0] * shift + list(coeffs)
    hfull = [0] * shift + list(hiding or [])
    wq = divide_by_linear(full, q)
    wh = divide_by_linear(hfull, q) if hiding else []
    w = commit_raw(ck, wq, wh)
    return w, poly_eval(hfull, q) if hiding else 0


def pc_open(ck, phi, q, omega):
    coeffs = _coeffs(phi)
    v = poly_eval(coeffs, q)
    w, vbar = open_raw(ck, coeffs, omega.coeffs, q)
    return v, OpeningProof(w, vbar)


def pc_check(rk, c, q, v, proof):
    c = c.c if isinstance(c, PolyCommitment) else c
    lhs = c - g1_mul(rk.g, v) - g1_mul(rk.g_gamma, proof.v_bar)
    rhs_g2 = rk.h_alpha - g2_mul(rk.h, q)
    try:
        return pairing_product_is_one([lhs, -proof.w], [rk.h, rhs_g2])
    except Exception:
        return False


# ---------------------------------------------------------------- batching

def pc_batch_open(ck, polys, hidings, q, xi):
    """One witness for several polynomials at q, combined with powers of xi."""
    scal = [pow(xi, i, Q) for i in range(len(polys))]
    comb = poly_lincomb([_coeffs(p) for p in polys], scal)
    hcomb = poly_lincomb([list(h or []) for h in hidings], scal)
    values = [poly_eval(_coeffs(p), q) for p in polys]
    w, vbar = open_raw(ck, comb, hcomb, q)
    return values, OpeningProof(w, vbar)


def pc_batch_check(rk, commitments, q, values, proof, xi):
    c = g1_zero()
    v = 0
    s = 1
    for cm, val in zip(commitments, values):
        cm = cm.c if isinstance(cm, PolyCommitment) else cm
        c = c + g1_mul(cm, s) if s != 1 else c + cm
        v = (v + s * val) % Q
        s = s * xi % Q
    return pc_check(rk, c, q, v, proof)


# --------------------------------------------------------------- SRS files

MAGIC = b"AMPCSRS1"
CURVE_ID = b"bls12-381\x00\x00\x00\x00\x00\x00\x00"


def srs_to_bytes(ck, rk):
    out = [MAGIC, CURVE_ID, struct.pack("<I", ck.max_degree)]
    out.append(g2_to_bytes(rk.h))
    out.append(g2_to_bytes(rk.h_alpha))
    out.extend(g1_to_bytes(p) for p in ck.powers)
    out.extend(g1_to_bytes(p) for p in ck.shifted_powers)
    return b"".join(out)


def srs_from_bytes(data, check=False):
    if data[:8] != MAGIC or data[8:24] != CURVE_ID:
        raise ValueError("not an SRS file for this curve")
    (D,) = struct.unpack("<I", data[24:28])
    off = 28
    h = g2_from_bytes(data[off:off + G2_BYTES], check)
    off += G2_BYTES
    ha = g2_from_bytes(data[off:off + G2_BYTES], check)
    off += G2_BYTES
    pts = []
    for _ in range(2 * (D + 1)):
        pts.append(g1_from_bytes(data[off:off + G1_BYTES], check))
        off += G1_BYTES
    ck = CommitterKey(pts[:D + 1], pts[D + 1:], D)
    rk = ReceiverKey(D, ck.powers[0], ck.shifted_powers[0], h, ha)
    return ck, rk


def save_srs(path, ck, rk):
    with open(path, "wb") as f:
        f.write(srs_to_bytes(ck, rk))


def load_srs(path, check=False):
    with open(path, "rb") as f:
        return srs_from_bytes(f.read(), check)
