"""Commitments, openings and evaluations computed by servers from Shamir shares.

Every server applies the (linear) centralized algorithm to its own share of
the coefficients and the hiding polynomial; the resulting group or field
shares are broadcast once and robustly interpolated.  Because commitment and
evaluation are linear, the decoded result equals the centralized output on
the reconstructed polynomial.
"""

from dataclasses import dataclass

from .algebra import divide_by_linear, g1_mul, msm, poly_eval
from .bus import ProtocolAbort
from .pec import PolyCommitment
from .polycommit import OpeningProof, commit_raw
from .sharing import DecodeError, Decoder


@dataclass
class SharedPolynomial:
    party_index: int
    coeff_shares: list
    hiding_shares: list = None


@dataclass
class CommitmentShare:
    party_index: int
    c_share: object


def shared_from_rows(coeff_rows, hiding_rows=None):
    """n coefficient rows (one per server) -> SharedPolynomial per server."""
    return [SharedPolynomial(i + 1, list(r), list(hiding_rows[i]) if hiding_rows else None)
            for i, r in enumerate(coeff_rows)]


def reconstruct_polynomial(parties, t):
    """Coefficient-wise reconstruction (test helper / oracle input)."""
    dec = Decoder.get(len(parties), t)
    coeffs = dec.open_rows([p.coeff_shares for p in parties])
    hid = None
    if parties[0].hiding_shares is not None:
        hid = dec.open_rows([p.hiding_shares for p in parties])
    return coeffs, hid


def decode_point(shares, bus):
    try:
        return Decoder.get(bus.n, bus.t).open_points(shares, bus.suspects)
    except DecodeError as e:
        raise ProtocolAbort("commitment decode failed: %s" % e)


def commitment_shares(ck, parties, shift=0):
    return [CommitmentShare(p.party_index, commit_raw(ck, p.coeff_shares, p.hiding_shares, shift))
            for p in parties]


def pc_commit_mpc(ck, parties, bus, shift=0, op="commit"):
    """One G1 broadcast per server, then robust interpolation in the exponent."""
    shares = commitment_shares(ck, parties, shift)
    sent = bus.broadcast_g1([[s.c_share] for s in shares], op)
    return PolyCommitment(decode_point([s[0] for s in sent], bus))


def open_scalars(rows, bus, op):
    rows = bus.broadcast_fq(rows, op)
    try:
        return Decoder.get(bus.n, bus.t).open_rows(rows, bus.suspects)
    except DecodeError as e:
        raise ProtocolAbort("scalar decode failed: %s" % e)


def eval_mpc(parties, beta, bus, op="eval"):
    """Each server reveals only its share of phi(beta)."""
    return open_scalars([[poly_eval(p.coeff_shares, beta)] for p in parties], bus, op)[0]


def eval_many_mpc(parties_list, beta, bus, op="eval"):
    """Several shared polynomials evaluated at one point in a single broadcast."""
    n = len(parties_list[0])
    rows = [[poly_eval(pl[i].coeff_shares, beta) for pl in parties_list] for i in range(n)]
    return open_scalars(rows, bus, op)


def pc_open_mpc(ck, parties, q, bus, v=None, shift=0):
    """Witness commitment plus the opened hiding evaluation.

    Costs one G1 and one scalar per server; if ``v`` is not already public it
    is obtained with ``eval_mpc`` first.
    """
    if v is None:
        v = eval_mpc(parties, q, bus)
    pts, vb = [], []
    for p in parties:
        full = [0] * shift + list(p.coeff_shares)
        hfull = [0] * shift + list(p.hiding_shares or [])
        wq = divide_by_linear(full, q)
        wh = divide_by_linear(hfull, q) if p.hiding_shares else []
        pts.append([commit_raw(ck, wq, wh)])
        vb.append([poly_eval(hfull, q)])
    sent = bus.broadcast_g1(pts, "witness")
    w = decode_point([s[0] for s in sent], bus)
    v_bar = open_scalars(vb, bus, "witness")[0]
    return v, OpeningProof(w, v_bar)


def input_consistency_check(keys, client_commitments, x_rows, r_rows, bus):
    """Recompute each client's evaluation commitment from the servers' shares.

    x_rows[i][k]  server i+1's share of client k's input
    r_rows[i][k]  server i+1's shares (list) of client k's hiding polynomial
    Returns the list of client indices whose commitment does not match.
    """
    clients = list(client_commitments)
    pts = []
    for i in range(bus.n):
        row = []
        for k, com in enumerate(clients):
            key = keys.ck_e[com.party]
            hid = r_rows[i][k]
            row.append(g1_mul(key.lag, x_rows[i][k]) + msm(keys.ck_p.shifted_powers[:len(hid)], hid))
        pts.append(row)
    sent = bus.broadcast_g1(pts, "input-check")
    dec = Decoder.get(bus.n, bus.t)
    bad = []
    for k, com in enumerate(clients):
        try:
            c = dec.open_points([s[k] for s in sent], bus.suspects)
        except DecodeError:
            bad.append(com.party)
            continue
        if c != com.c:
            bad.append(com.party)
    return bad
