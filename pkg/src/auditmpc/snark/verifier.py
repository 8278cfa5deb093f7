"""Auditor-side verification of an adaptive proof: three pairings."""

from ..algebra import Q, g1_mul, g2_mul, inv, pairing_product_is_one
from .indexer import INDEX_POLYS
from .proof import AdaptiveProof
from .prover import check_statement_slots, statement_absorb
from .transcript import Transcript


def replay_transcript(vk, statement, p):
    tr = Transcript()
    statement_absorb(tr, vk, statement, p.c_pad)
    tr.absorb_g1(b"round1", p.w, p.z_a, p.z_b, p.s)
    ch = {"alpha": tr.challenge_outside(b"alpha", 4 * vk.H)}
    ch["eta"] = (tr.challenge(b"eta_a"), tr.challenge(b"eta_b"), tr.challenge(b"eta_c"))
    tr.absorb_g1(b"round2", p.g1, p.g1_shift, p.h1)
    ch["beta1"] = tr.challenge_outside(b"beta1", vk.H)
    tr.absorb_g1(b"round3", p.g2, p.g2_shift, p.h2)
    tr.absorb_fq(b"sigma2", p.sigma2)
    ch["beta2"] = tr.challenge_outside(b"beta2", vk.H)
    tr.absorb_g1(b"round4", p.g3, p.g3_shift, p.h3)
    tr.absorb_fq(b"sigma3", p.sigma3)
    ch["beta3"] = tr.challenge(b"beta3")
    evals = ([p.v, p.e1_w, p.e1_z_a, p.e1_z_b, p.e1_s, p.e1_g1, p.e1_h1, p.e2_g2, p.e2_h2, p.e3_g3, p.e3_h3]
             + [getattr(p, "e3_" + k) for k in INDEX_POLYS])
    tr.absorb_fq(b"evaluations", *evals)
    ch["xi"] = tr.challenge(b"xi")
    tr.absorb_g1(b"witnesses", p.w_beta1, p.w_beta2, p.w_beta3)
    tr.absorb_fq(b"v_bar", p.v_bar)
    ch["r"] = tr.challenge(b"batch")
    return ch


def statement_commitment(vk, statement, c_pad):
    c = vk.const_commitment + c_pad
    for _, pt in statement:
        c = c + pt
    return c


def algebraic_checks(vk, p, ch):
    """The three scalar identities at beta1, beta2, beta3."""
    H, K, S = vk.H, vk.K, vk.S
    alpha, (ea, eb, ec) = ch["alpha"], ch["eta"]
    b1, b2, b3 = ch["beta1"], ch["beta2"], ch["beta3"]
    vHa = (pow(alpha, H, Q) - 1) % Q
    vH1 = (pow(b1, H, Q) - 1) % Q
    vH2 = (pow(b2, H, Q) - 1) % Q
    vHx1 = (pow(b1, S, Q) - 1) % Q
    r1 = (vHa - vH1) * inv((alpha - b1) % Q) % Q
    r2 = (vHa - vH2) * inv((alpha - b2) % Q) % Q
    ok1 = (p.e1_s + r1 * (ea * p.e1_z_a + eb * p.e1_z_b + ec * p.e1_z_a * p.e1_z_b)
           - p.sigma2 * (p.e1_w * vHx1 + p.v) - p.e1_h1 * vH1 - b1 * p.e1_g1) % Q == 0
    ok2 = (p.e2_h2 * vH2 + b2 * p.e2_g2 + p.sigma2 * inv(H) - r2 * p.sigma3) % Q == 0
    cst = vH1 * vH2 % Q
    d = {}
    for m in "ABC":
        d[m] = (b2 - getattr(p, "e3_row_" + m)) * (b1 - getattr(p, "e3_col_" + m)) % Q
    b_ = d["A"] * d["B"] % Q * d["C"] % Q
    a_ = cst * (ea * p.e3_val_A * d["B"] * d["C"] + eb * p.e3_val_B * d["A"] * d["C"]
                + ec * p.e3_val_C * d["A"] * d["B"]) % Q
    vK3 = (pow(b3, K, Q) - 1) % Q
    ok3 = (p.e3_h3 * vK3 - a_ + b_ * (b3 * p.e3_g3 + p.sigma3 * inv(K))) % Q == 0
    return ok1, ok2, ok3


def _fold(points, values, xi):
    c, v, s = None, 0, 1
    for pt, val in zip(points, values):
        term = pt if s == 1 else g1_mul(pt, s)
        c = term if c is None else c + term
        v = (v + s * val) % Q
        s = s * xi % Q
    return c, v


def verify_adaptive(ivk, rk, statement, proof, return_reason=False):
    """statement: [(slot, G1)] in board order, excluding the constant and the pad."""
    def out(ok, why):
        return (ok, why) if return_reason else ok
    try:
        if isinstance(proof, (bytes, bytearray)):
            proof = AdaptiveProof.from_bytes(bytes(proof))
        check_statement_slots(ivk, statement)
    except Exception as e:
        return out(False, "malformed: %s" % e)
    if rk.max_degree != ivk.max_degree:
        return out(False, "receiver key does not match index")
    p = proof
    ch = replay_transcript(ivk, statement, p)
    oks = algebraic_checks(ivk, p, ch)
    if not all(oks):
        return out(False, "sumcheck identity %d failed" % (oks.index(False) + 1))
    D = ivk.max_degree
    b1, b2, b3, xi, r = ch["beta1"], ch["beta2"], ch["beta3"], ch["xi"], ch["r"]
    sh_h = D - (ivk.H - 2)
    sh_k = D - (ivk.K - 2)
    cx = statement_commitment(ivk, statement, p.c_pad)
    c1, v1 = _fold([cx, p.w, p.z_a, p.z_b, p.s, p.g1, p.g1_shift, p.h1],
                   [p.v, p.e1_w, p.e1_z_a, p.e1_z_b, p.e1_s, p.e1_g1,
                    pow(b1, sh_h, Q) * p.e1_g1 % Q, p.e1_h1], xi)
    c2, v2 = _fold([p.g2, p.g2_shift, p.h2],
                   [p.e2_g2, pow(b2, sh_h, Q) * p.e2_g2 % Q, p.e2_h2], xi)
    c3, v3 = _fold([p.g3, p.g3_shift, p.h3] + [ivk.commitments[k] for k in INDEX_POLYS],
                   [p.e3_g3, pow(b3, sh_k, Q) * p.e3_g3 % Q, p.e3_h3] + [getattr(p, "e3_" + k) for k in INDEX_POLYS],
                   xi)
    # e(L1, h) e(-W1, h^a - b1 h) e(-(W2 + r W3), h^a) == 1
    # with L1 = c1 - v1 g - vbar g^gamma and the b2, b3 checks folded in as L + b W
    L1 = c1 - g1_mul(rk.g, v1) - g1_mul(rk.g_gamma, p.v_bar)
    L2 = c2 - g1_mul(rk.g, v2) + g1_mul(p.w_beta2, b2)
    L3 = c3 - g1_mul(rk.g, v3) + g1_mul(p.w_beta3, b3)
    L = L1 + L2 + g1_mul(L3, r)
    try:
        ok = pairing_product_is_one(
            [L, -p.w_beta1, -(p.w_beta2 + g1_mul(p.w_beta3, r))],
            [rk.h, rk.h_alpha - g2_mul(rk.h, b1), rk.h_alpha])
    except Exception as e:
        return out(False, "pairing failed: %s" % e)
    return out(ok, "ok" if ok else "pairing check failed")
