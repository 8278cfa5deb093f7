"""Polynomial evaluation commitments (PEC).

Each party commits to its evaluation(s) of a polynomial over a fixed
evaluation domain; the commitments multiply together into a hiding KZG
commitment of the interpolated polynomial, which is then opened with the
ordinary polynomial-commitment algorithms.

Three constructions:

* ``ped``    per-evaluation Pedersen points, interpolation is the identity
             (not succinct; used as a reference)
* ``lipmaa`` Lagrange-basis keys g^{l_i(a)} plus a Schnorr-style proof of
             knowledge over (value, hiding polynomial)
* ``succ``   Lagrange-basis key blocks, one per party, with knowledge rows
             g^{tau_i ...}; the interpolator checks e(c^k, h) = e(c, h^{tau_i})
"""

import random
import struct
from dataclasses import dataclass, field

from .algebra import (G1_BYTES, Q, EvaluationDomain, FixedBase, fq_from_bytes, fq_to_bytes,
                      g1_from_bytes, g1_gen, g1_mul, g1_to_bytes, g1_zero, g2_gen, g2_mul,
                      hash_to_field, inv, msm, next_pow2, pairing_product_is_one, poly_eval)
from .polycommit import (OpeningProof, PolyCommitment, Randomness, pc_check, pc_open,
                         pc_setup, CommitterKey, ReceiverKey, Trapdoor)

CONSTRUCTIONS = ("ped", "lipmaa", "succ")
WIRE_VERSION = 1


class PecError(Exception):
    def __init__(self, msg, party=None):
        super().__init__(msg)
        self.party = party


@dataclass
class PecKeys:
    construction: str
    domain: EvaluationDomain
    per_party: int
    ck_e: list          # per-party committer keys
    ck_p: CommitterKey
    rk_p: ReceiverKey
    trapdoor: Trapdoor = None
    vk_e: list = field(default_factory=list)  # succ: h^{tau_i}

    @property
    def parties(self):
        return len(self.ck_e)

    def points_of(self, party):
        d = self.per_party
        return [self.domain.element(j) for j in range(party * d, (party + 1) * d)]


@dataclass
class LagrangeKey:
    """Lipmaa key for one evaluation slot: g^{l_i(a)} plus the hiding rows."""
    slot: int
    lag: object


@dataclass
class SuccKey:
    party: int
    slots: list
    lag: list       # g^{l_p(a)} for the party's slots
    lag_k: list     # g^{tau l_p(a)}
    hid_k: list     # g^{tau gamma a^j}


def _lagrange_at_alpha(domain, alpha):
    return domain.lagrange_evals(alpha)


def pec_setup(D, K, rng, construction="lipmaa", per_party=1, pc=None):
    """Keys for K parties, each owning ``per_party`` consecutive domain points.

    ``pc`` may be an existing (ck, rk, trapdoor) triple to reuse its SRS.
    """
    if construction not in CONSTRUCTIONS:
        raise ValueError("unknown construction %r" % construction)
    if K < 1 or D < K:
        raise ValueError("need D >= K >= 1")
    if construction != "succ" and per_party != 1:
        raise ValueError("%s commits one evaluation per party" % construction)
    N = next_pow2(K * per_party)
    if N - 1 > D:
        raise ValueError("domain of size %d does not fit under D = %d" % (N, D))
    if pc is None:
        ck, rk, td = pc_setup(D, rng)
    else:
        ck, rk, td = pc
    domain = EvaluationDomain(N)
    lag = _lagrange_at_alpha(domain, td.alpha)
    fb = FixedBase(g1_gen())
    keys = PecKeys(construction, domain, per_party, [], ck, rk, td)
    if construction in ("ped", "lipmaa"):
        for i in range(K):
            keys.ck_e.append(LagrangeKey(i, fb.mul(lag[i])))
    else:
        for i in range(K):
            tau = rng.randrange(1, Q)
            slots = list(range(i * per_party, (i + 1) * per_party))
            keys.ck_e.append(SuccKey(
                i, slots,
                [fb.mul(lag[s]) for s in slots],
                [fb.mul(tau * lag[s]) for s in slots],
                [fb.mul(tau * td.gamma % Q * pow(td.alpha, j, Q)) for j in range(N)],
            ))
            keys.vk_e.append(g2_mul(g2_gen(), tau))
    return keys


def lagrange_keys_from_srs(ck, domain):
    """g^{l_i(a)} computed publicly from the monomial SRS (inverse FFT in the exponent)."""
    N = domain.size
    out = []
    for i in range(N):
        # l_i(X) = (1/N) sum_j (w^{-i} X)^j
        wi = inv(domain.element(i))
        coeffs = [pow(wi, j, Q) * domain.size_inv % Q for j in range(N)]
        out.append(msm(ck.powers[:N], coeffs))
    return out


# ---------------------------------------------------------- commitments

@dataclass
class PedCommitment:
    party: int
    points: list

    construction = "ped"


@dataclass
class LipmaaCommitment:
    party: int
    c: object
    K: object = None
    s: int = 0
    s_bar: list = None

    construction = "lipmaa"

    @property
    def has_proof(self):
        return self.K is not None


@dataclass
class SuccCommitment:
    party: int
    c: object
    c_k: object

    construction = "succ"


def _hiding_commit(ck, coeffs):
    return msm(ck.shifted_powers[:len(coeffs)], coeffs) if coeffs else g1_zero()


def lipmaa_challenge(slot, c, K):
    return hash_to_field(b"pec-lipmaa-sigma", slot.to_bytes(4, "little"), g1_to_bytes(c), g1_to_bytes(K))


def lipmaa_commit(keys, slot, e, hiding, rng=None, with_proof=True, nonce=None):
    """c = (g^{l_i(a)})^e g^{gamma phibar(a)} and the proof of knowledge of (e, phibar)."""
    key = keys.ck_e[slot]
    N = keys.domain.size
    if len(hiding) > N:
        raise PecError("hiding polynomial longer than the evaluation domain", slot)
    c = g1_mul(key.lag, e) + _hiding_commit(keys.ck_p, hiding)
    if not with_proof:
        return LipmaaCommitment(slot, c)
    if nonce is None:
        rng = rng or random.Random()
        r = rng.randrange(Q)
        r_bar = [rng.randrange(Q) for _ in range(N)]
    else:
        r, r_bar = nonce
    K = g1_mul(key.lag, r) + _hiding_commit(keys.ck_p, r_bar)
    beta = lipmaa_challenge(slot, c, K)
    hid = list(hiding) + [0] * (N - len(hiding))
    s = (r + beta * e) % Q
    s_bar = [(a + beta * b) % Q for a, b in zip(r_bar, hid)]
    return LipmaaCommitment(slot, c, K, s, s_bar)


def lipmaa_verify(keys, com):
    if not com.has_proof:
        return False
    key = keys.ck_e[com.party]
    beta = lipmaa_challenge(com.party, com.c, com.K)
    lhs = msm([key.lag] + keys.ck_p.shifted_powers[:len(com.s_bar)], [com.s] + list(com.s_bar))
    return lhs == com.K + g1_mul(com.c, beta)


def pec_commit_eval(keys, party, evals, omega=None, rng=None, points=None):
    """Commit to this party's evaluation(s).  ``omega`` supplies the hiding randomness."""
    rng = rng or random.Random()
    if points is not None and [p % Q for p in points] != keys.points_of(party):
        raise PecError("points do not match the party's key block", party)
    if isinstance(evals, int):
        evals = [evals]
    if len(evals) > keys.per_party:
        raise PecError("evaluation budget exceeded (%d > %d)" % (len(evals), keys.per_party), party)
    N = keys.domain.size
    if keys.construction == "ped":
        r = omega.coeffs if omega is not None else [rng.randrange(Q)]
        h = keys.ck_p.shifted_powers[0]
        return PedCommitment(party, [g1_mul(keys.ck_p.powers[0], evals[0]) + g1_mul(h, r[0])])
    if keys.construction == "lipmaa":
        hid = omega.coeffs if omega is not None else Randomness.sample(N - 1, rng).coeffs
        return lipmaa_commit(keys, party, evals[0], hid, rng)
    key = keys.ck_e[party]
    hid = omega.coeffs if omega is not None else Randomness.sample(N - 1, rng).coeffs
    if len(hid) > N:
        raise PecError("hiding polynomial longer than the evaluation domain", party)
    ev = list(evals) + [0] * (len(key.slots) - len(evals))
    c = msm(key.lag, ev) + _hiding_commit(keys.ck_p, hid)
    ck_ = msm(key.lag_k, ev) + (msm(key.hid_k[:len(hid)], hid) if hid else g1_zero())
    return SuccCommitment(party, c, ck_)


def succ_verify(keys, com):
    vk = keys.vk_e[com.party]
    try:
        return pairing_product_is_one([com.c_k, -com.c], [keys.rk_p.h, vk])
    except Exception:
        return False


def pec_interpolate(keys, eval_commitments, points=None):
    """Combine per-party commitments into one commitment to the interpolated polynomial."""
    if keys.construction == "ped":
        return [com.points[0] for com in eval_commitments]
    acc = g1_zero()
    seen = set()
    for com in eval_commitments:
        if com.construction != keys.construction:
            raise PecError("mixed constructions", com.party)
        if com.party in seen:
            raise PecError("duplicate commitment", com.party)
        seen.add(com.party)
        ok = lipmaa_verify(keys, com) if keys.construction == "lipmaa" else succ_verify(keys, com)
        if not ok:
            raise PecError("knowledge check failed for party %d" % com.party, com.party)
        acc = acc + com.c
    return PolyCommitment(acc)


def interpolate_polynomial(keys, evals_by_party):
    """Coefficients of the polynomial through all committed evaluations (missing = 0)."""
    N = keys.domain.size
    vals = [0] * N
    for party, ev in evals_by_party.items():
        ev = [ev] if isinstance(ev, int) else ev
        for j, e in enumerate(ev):
            vals[party * keys.per_party + j] = e % Q
    return keys.domain.ifft(vals)


def pec_open(keys, phi, q, omega_vec):
    """Open the interpolated polynomial; randomness is the sum of per-party hiding polys.

    For ``ped`` the proof is the interpolated Pedersen randomness r(q) where
    omega_vec holds each party's scalar r_i.
    """
    if keys.construction == "ped":
        N = keys.domain.size
        rv = [0] * N
        for party, om in omega_vec.items():
            rv[party] = om.coeffs[0] if om.coeffs else 0
        lag = keys.domain.lagrange_evals(q)
        coeffs = list(phi.coeffs) if hasattr(phi, "coeffs") else list(phi)
        v = poly_eval(coeffs, q)
        return v, OpeningProof(None, sum(a * b for a, b in zip(lag, rv)) % Q)
    total = []
    for om in omega_vec.values() if isinstance(omega_vec, dict) else omega_vec:
        c = om.coeffs
        if len(c) > len(total):
            total += [0] * (len(c) - len(total))
        for i, x in enumerate(c):
            total[i] = (total[i] + x) % Q
    return pc_open(keys.ck_p, phi, q, Randomness(total))


def pec_check(keys, c, q, v, proof):
    if keys.construction == "ped":
        lag = keys.domain.lagrange_evals(q)
        pts = list(c) + [g1_zero()] * (len(lag) - len(c))
        lhs = msm(pts, lag)
        return lhs == g1_mul(keys.ck_p.powers[0], v) + g1_mul(keys.ck_p.shifted_powers[0], proof.v_bar)
    return pc_check(keys.rk_p, c, q, v, proof)


# --------------------------------------------------------- wire format

_TAGS = {"ped": b"P", "lipmaa": b"L", "succ": b"S"}


def eval_commitment_to_bytes(com):
    head = _TAGS[com.construction] + bytes([WIRE_VERSION]) + struct.pack("<I", com.party)
    if com.construction == "ped":
        return head + b"".join(g1_to_bytes(p) for p in com.points)
    if com.construction == "succ":
        return head + g1_to_bytes(com.c) + g1_to_bytes(com.c_k)
    if not com.has_proof:
        return head + b"\x00" + g1_to_bytes(com.c)
    body = g1_to_bytes(com.c) + g1_to_bytes(com.K) + fq_to_bytes(com.s)
    body += struct.pack("<I", len(com.s_bar)) + b"".join(fq_to_bytes(x) for x in com.s_bar)
    return head + b"\x01" + body


def eval_commitment_from_bytes(data):
    tag, ver = data[:1], data[1]
    if ver != WIRE_VERSION:
        raise ValueError("unsupported EvalCommitment version %d" % ver)
    (party,) = struct.unpack("<I", data[2:6])
    body = data[6:]
    if tag == b"P":
        pts = [g1_from_bytes(body[i:i + G1_BYTES]) for i in range(0, len(body), G1_BYTES)]
        return PedCommitment(party, pts)
    if tag == b"S":
        return SuccCommitment(party, g1_from_bytes(body[:G1_BYTES]), g1_from_bytes(body[G1_BYTES:2 * G1_BYTES]))
    if tag != b"L":
        raise ValueError("unknown construction tag %r" % tag)
    flag, body = body[0], body[1:]
    c = g1_from_bytes(body[:G1_BYTES])
    if not flag:
        return LipmaaCommitment(party, c)
    K = g1_from_bytes(body[G1_BYTES:2 * G1_BYTES])
    off = 2 * G1_BYTES
    s = fq_from_bytes(body[off:off + 32])
    off += 32
    (m,) = struct.unpack("<I", body[off:off + 4])
    off += 4
    s_bar = [fq_from_bytes(body[off + 32 * i:off + 32 * (i + 1)]) for i in range(m)]
    return LipmaaCommitment(party, c, K, s, s_bar)
