"""Adaptive prover: four Marlin-style rounds over committed statements.

The same code drives the centralized prover and the MPC prover; the backend
decides whether a secret is one vector or n share vectors.  Rounds 3 and 4
touch only public data and always run in the clear.
"""

import random

from ..algebra import (Q, EvaluationDomain, batch_inverse, divide_by_linear, divide_by_vanishing,
                       inv, poly_eval, poly_sub)
from ..bus import ProtocolAbort
from ..polycommit import commit_raw
from .backend import CentralBackend, Secret, lincomb, lincomb_vecs
from .indexer import INDEX_POLYS, MATRICES, sparse_lincheck_vectors
from .proof import AdaptiveProof
from .transcript import Transcript


class RandomTape:
    """Every random value the prover uses, drawn in a fixed order from one seed."""

    def __init__(self, seed):
        self.rng = random.Random(repr(("tape", seed)))
        self.drawn = 0

    def vec(self, n):
        self.drawn += n
        return [self.rng.randrange(Q) for _ in range(n)]


def statement_absorb(tr, vk, statement, c_pad):
    tr.absorb(b"ivk", vk.digest)
    for slot, pt in statement:
        tr.absorb_g1(b"stmt" + slot.to_bytes(4, "little"), pt)
    tr.absorb_g1(b"pad", c_pad)


def check_statement_slots(vk, statement):
    seen = set()
    for slot, _ in statement:
        if not 1 <= slot <= vk.S - 2 or slot in seen:
            raise ValueError("bad statement slot %r" % (slot,))
        seen.add(slot)


def r_alpha_points(xs, alpha, vH_alpha, H):
    """r(alpha, x) = (v_H(alpha) - v_H(x)) / (alpha - x); pass H=None when every x is in H."""
    dens = batch_inverse([(alpha - x) % Q for x in xs])
    if H is None:
        return [vH_alpha * d % Q for d in dens]
    return [(vH_alpha - pow(x, H, Q) + 1) * d % Q for x, d in zip(xs, dens)]


def _scatter(padded, v):
    out = [0] * padded.H
    for var, val in enumerate(v):
        out[padded.pos[var]] = val % Q
    return out


def prove_adaptive(ipk, ck, statement, z, stmt_hiding=None, backend=None, tape=None, debug=False):
    """Prove that the committed statement and witness satisfy the index.

    statement   [(slot, G1)] in board order; slot 0 (constant) and the pad are implicit
    z           Secret of full assignments (constant, statement, witness), no pad
    stmt_hiding Secret of the summed hiding polynomials of the statement commitments
    """
    backend = backend or CentralBackend()
    tape = tape if isinstance(tape, RandomTape) else RandomTape(tape or 0)
    vk = ipk.vk
    P = ipk.padded
    H, K, S = P.H, P.K, P.S
    D = ck.max_degree
    dH, dK, dHx, dH4, coset = (ipk.domains[k] for k in ("H", "K", "Hx", "H4", "coset"))
    dH2 = EvaluationDomain(2 * H)
    check_statement_slots(vk, statement)
    info = {"degrees": {}}

    # fixed tape order: pad, pad hiding, masks, s, hiding polys
    pad_val = tape.vec(1)
    pad_hid = tape.vec(S)
    rho = tape.vec(3)
    s_plain = tape.vec(2 * H + 1)
    s_plain[0] = (-(s_plain[H] + s_plain[2 * H])) % Q
    hid_w = tape.vec(H - S + 1)
    hid_za = tape.vec(H + 1)
    hid_zb = tape.vec(H + 1)
    hid_s = tape.vec(2 * H + 1)
    hid_g1 = tape.vec(H - 1)
    hid_h1 = tape.vec(2 * H)

    lag_last = [0] * S
    lag_last[S - 1] = 1
    lag_last = dHx.ifft(lag_last)

    with backend.round("initial"):
        pad_s = backend.share(pad_val)
        pad_h = backend.share(pad_hid)
        pad_poly = pad_s.map(lambda v: [v[0] * c % Q for c in lag_last])
        c_pad = backend.commit(ck, pad_poly, pad_h)

    tr = Transcript()
    statement_absorb(tr, vk, statement, c_pad)

    # ---------------------------------------------------------- round 1
    zfull = Secret.combine(lambda v, p: list(v) + [p[0]], z, pad_s)
    zh = zfull.map(lambda v: _scatter(P, v))
    stride = P.stride
    xhat = zh.map(lambda v: dHx.ifft([v[i * stride] for i in range(S)]))
    if stmt_hiding is None:
        stmt_hiding = backend.share([0] * S) if backend.mode == "central" else Secret([[0] * S] * backend.n_views)
    xhat_hid = Secret.combine(lambda a, b: lincomb_vecs([a, b], [1, 1]), stmt_hiding, pad_h)
    zhat = zh.map(dH.ifft)
    rho_s = backend.share(rho)

    def make_w(zc, xc, r):
        quo, rem = divide_by_vanishing(poly_sub(zc, xc), S)
        if debug and backend.mode == "central" and any(rem):
            raise ProtocolAbort("statement does not match the assignment")
        quo = quo + [0] * (H - S + 1 - len(quo))
        for j in range(0, H - S + 1, S):
            quo[j] = (quo[j] + r[0]) % Q
        return quo

    w = Secret.combine(make_w, zhat, xhat, rho_s)

    def masked_lde(name, idx):
        def f(v, r):
            c = dH.ifft(P.mat_vec(name, v)) + [0]
            c[0] = (c[0] - r[idx]) % Q
            c[H] = (c[H] + r[idx]) % Q
            return c
        return Secret.combine(f, zh, rho_s)

    za = masked_lde("A", 1)
    zb = masked_lde("B", 2)
    s_poly = backend.share(s_plain)
    sh = {k: backend.share(v) for k, v in (("w", hid_w), ("z_a", hid_za), ("z_b", hid_zb), ("s", hid_s),
                                           ("g1", hid_g1), ("h1", hid_h1))}
    with backend.round("round1"):
        c_x = backend.commit(ck, xhat, xhat_hid)
        expected = vk.const_commitment + c_pad
        for _, pt in statement:
            expected = expected + pt
        if c_x != expected:
            raise ProtocolAbort("statement commitments do not open to the shared statement")
        C = {"w": backend.commit(ck, w, sh["w"]),
             "z_a": backend.commit(ck, za, sh["z_a"]),
             "z_b": backend.commit(ck, zb, sh["z_b"]),
             "s": backend.commit(ck, s_poly, sh["s"])}
    tr.absorb_g1(b"round1", C["w"], C["z_a"], C["z_b"], C["s"])
    alpha = tr.challenge_outside(b"alpha", 4 * H)
    eta = (tr.challenge(b"eta_a"), tr.challenge(b"eta_b"), tr.challenge(b"eta_c"))

    # ---------------------------------------------------------- round 2
    vH_alpha = (pow(alpha, H, Q) - 1) % Q
    vHx_coeffs = [Q - 1] + [0] * (S - 1) + [1]
    ztrue = Secret.combine(
        lambda wc, xc: lincomb_vecs([_mul_sparse(wc, vHx_coeffs), xc], [1, 1]), w, xhat)
    za4 = za.map(dH4.fft)
    zb4 = zb.map(dH4.fft)
    with backend.round("beaver"):
        prod4 = backend.mul(za4, zb4)
    r4 = r_alpha_points(dH4.elements, alpha, vH_alpha, H)
    rH = r_alpha_points(dH.elements, alpha, vH_alpha, None)
    t_col, _ = sparse_lincheck_vectors(ipk, eta, rH, None)
    t4 = dH4.fft(dH.ifft(t_col))
    ea, eb, ec = eta

    def q1_evals(s4, a4, b4, p4, z4):
        return [(s_ + r * ((ea * a + eb * b + ec * p) % Q) - t * zz) % Q
                for s_, a, b, p, zz, r, t in zip(s4, a4, b4, p4, z4, r4, t4)]

    q1e = Secret.combine(q1_evals, s_poly.map(dH4.fft), za4, zb4, prod4, ztrue.map(dH4.fft))

    def split_q1(ev):
        q1 = dH4.ifft(ev)[:3 * H]
        h1, rem = divide_by_vanishing(q1, H)
        return h1 + [0] * (2 * H - len(h1)), rem

    parts = q1e.map(split_q1)
    h1 = parts.map(lambda p: p[0])
    rem = parts.map(lambda p: p[1])
    if backend.mode == "central":
        info["sigma1_rem0"] = rem.views[0][0]
    g1 = rem.map(lambda r: r[1:])
    shift_h = D - (H - 2)
    with backend.round("round2"):
        C["g1"] = backend.commit(ck, g1, sh["g1"])
        C["g1_shift"] = backend.commit(ck, g1, sh["g1"], shift=shift_h)
        C["h1"] = backend.commit(ck, h1, sh["h1"])
    tr.absorb_g1(b"round2", C["g1"], C["g1_shift"], C["h1"])
    beta1 = tr.challenge_outside(b"beta1", H)

    # ---------------------------------------------------------- round 3 (public)
    LH = dH.lagrange_evals(beta1)
    _, u = sparse_lincheck_vectors(ipk, eta, None, LH)
    sigma2 = sum(a * b for a, b in zip(rH, u)) % Q
    u2 = dH2.fft(dH.ifft(u))
    r2 = r_alpha_points(dH2.elements, alpha, vH_alpha, H)
    q2 = dH2.ifft([a * b % Q for a, b in zip(r2, u2)])
    h2, rem2 = divide_by_vanishing(q2, H)
    if rem2[0] != sigma2 * dH.size_inv % Q:
        raise ProtocolAbort("second sumcheck inconsistent")
    g2 = rem2[1:]
    h2 = h2[:H - 1]
    C["g2"] = commit_raw(ck, g2)
    C["g2_shift"] = commit_raw(ck, g2, shift=shift_h)
    C["h2"] = commit_raw(ck, h2)
    tr.absorb_g1(b"round3", C["g2"], C["g2_shift"], C["h2"])
    tr.absorb_fq(b"sigma2", sigma2)
    beta2 = tr.challenge_outside(b"beta2", H)

    # ---------------------------------------------------------- round 4 (public)
    vH1 = (pow(beta1, H, Q) - 1) % Q
    vH2 = (pow(beta2, H, Q) - 1) % Q
    cst = vH1 * vH2 % Q
    f = [0] * K
    for name, e in zip(MATRICES, eta):
        ok = ipk.on_k[name]
        dens = batch_inverse([(beta2 - r) * (beta1 - c) % Q for r, c in zip(ok["row"], ok["col"])])
        ec_ = e * cst % Q
        for k in range(K):
            f[k] = (f[k] + ec_ * ok["val"][k] % Q * dens[k]) % Q
    sigma3 = sum(f) % Q
    fc = dK.ifft(f)
    g3 = fc[1:]
    a_ev, b_ev = ab_on_coset(ipk, eta, beta1, beta2, cst)
    f_ev = coset.fft(fc)
    vk_ev = [(pow(x, K, Q) - 1) % Q for x in coset.elements[:8]]
    vk_inv = batch_inverse(vk_ev)
    h3_ev = [(a - b * ff) * vk_inv[i % 8] % Q for i, (a, b, ff) in enumerate(zip(a_ev, b_ev, f_ev))]
    h3 = coset.ifft(h3_ev)
    if debug and any(h3[6 * K - 6:]):
        raise ProtocolAbort("third sumcheck quotient too long")
    h3 = h3[:6 * K - 6]
    shift_k = D - (K - 2)
    C["g3"] = commit_raw(ck, g3)
    C["g3_shift"] = commit_raw(ck, g3, shift=shift_k)
    C["h3"] = commit_raw(ck, h3)
    tr.absorb_g1(b"round4", C["g3"], C["g3_shift"], C["h3"])
    tr.absorb_fq(b"sigma3", sigma3)
    beta3 = tr.challenge(b"beta3")

    # ---------------------------------------------------------- evaluations
    b1_secret = [w, za, zb, s_poly, g1, h1]
    with backend.round("evaluations"):
        ev = backend.evaluate(b1_secret + [xhat], beta1)
    e1 = dict(zip(("w", "z_a", "z_b", "s", "g1", "h1"), ev[:6]))
    v = ev[6]
    e2 = {"g2": poly_eval(g2, beta2), "h2": poly_eval(h2, beta2)}
    e3 = {"g3": poly_eval(g3, beta3), "h3": poly_eval(h3, beta3)}
    for name in INDEX_POLYS:
        e3[name] = poly_eval(ipk.coeffs[name], beta3)
    fq_evals = [sigma2, sigma3, v] + list(e1.values()) + list(e2.values()) + list(e3.values())
    tr.absorb_fq(b"evaluations", *fq_evals[2:])
    xi = tr.challenge(b"xi")

    # ---------------------------------------------------------- openings
    shifted = lambda p, k: [0] * k + list(p)
    xis = [pow(xi, i, Q) for i in range(12)]
    items = [xhat, w, za, zb, s_poly, g1, g1.map(lambda p: shifted(p, shift_h)), h1]
    hids = [xhat_hid, sh["w"], sh["z_a"], sh["z_b"], sh["s"], sh["g1"],
            sh["g1"].map(lambda p: shifted(p, shift_h)), sh["h1"]]
    vals1 = [v, e1["w"], e1["z_a"], e1["z_b"], e1["s"], e1["g1"],
             pow(beta1, shift_h, Q) * e1["g1"] % Q, e1["h1"]]
    comb = lincomb(items, xis[:8])
    comb_h = lincomb(hids, xis[:8])
    v1 = sum(a * b for a, b in zip(vals1, xis)) % Q
    with backend.round("final"):
        W1, v_bar = backend.open(ck, comb, comb_h, beta1, v1)

    W2 = commit_raw(ck, divide_by_linear(lincomb_vecs([g2, shifted(g2, shift_h), h2], xis[:3]), beta2))
    b3 = [g3, shifted(g3, shift_k), h3] + [ipk.coeffs[nm] for nm in INDEX_POLYS]
    W3 = commit_raw(ck, divide_by_linear(lincomb_vecs(b3, xis[:len(b3)]), beta3))

    if debug and backend.mode == "central":
        info["degrees"] = {
            "w": _deg(w.views[0]), "z_a": _deg(za.views[0]), "z_b": _deg(zb.views[0]),
            "s": _deg(s_poly.views[0]), "g1": _deg(g1.views[0]), "h1": _deg(h1.views[0]),
            "g2": _deg(g2), "h2": _deg(h2), "g3": _deg(g3), "h3": _deg(h3), "xhat": _deg(xhat.views[0]),
        }
        info["polys"] = {
            "w": w.views[0], "z_a": za.views[0], "z_b": zb.views[0], "s": s_poly.views[0],
            "xhat": xhat.views[0], "g1": g1.views[0], "h1": h1.views[0], "g2": g2, "h2": h2,
            "g3": g3, "h3": h3}
    info.update(alpha=alpha, eta=eta, beta1=beta1, beta2=beta2, beta3=beta3, xi=xi,
                sigma2=sigma2, sigma3=sigma3)

    proof = AdaptiveProof(
        c_pad=c_pad, w=C["w"], z_a=C["z_a"], z_b=C["z_b"], s=C["s"], g1=C["g1"],
        g1_shift=C["g1_shift"], h1=C["h1"], g2=C["g2"], g2_shift=C["g2_shift"], h2=C["h2"],
        g3=C["g3"], g3_shift=C["g3_shift"], h3=C["h3"], w_beta1=W1, w_beta2=W2, w_beta3=W3,
        sigma2=sigma2, sigma3=sigma3, v=v,
        e1_w=e1["w"], e1_z_a=e1["z_a"], e1_z_b=e1["z_b"], e1_s=e1["s"], e1_g1=e1["g1"], e1_h1=e1["h1"],
        e2_g2=e2["g2"], e2_h2=e2["h2"],
        e3_g3=e3["g3"], e3_h3=e3["h3"],
        **{"e3_" + k: e3[k] for k in INDEX_POLYS},
        v_bar=v_bar)
    return proof, info


def _deg(c):
    for i in range(len(c) - 1, -1, -1):
        if c[i] % Q:
            return i
    return -1


def _mul_sparse(a, sparse):
    """a(X) * b(X) for b given densely but with few nonzeros."""
    nz = [(i, c) for i, c in enumerate(sparse) if c]
    out = [0] * (len(a) + len(sparse) - 1)
    for i, c in nz:
        for j, x in enumerate(a):
            out[i + j] += c * x
    return [x % Q for x in out]


def ab_on_coset(ipk, eta, beta1, beta2, cst):
    """a(X), b(X) of the K-sumcheck evaluated on the 8|K| coset."""
    ce = ipk.coset_evals
    n = len(ce["row_A"])
    d = {}
    for name in MATRICES:
        rows, cols = ce["row_" + name], ce["col_" + name]
        d[name] = [(beta2 - r) * (beta1 - c) % Q for r, c in zip(rows, cols)]
    dA, dB, dC = d["A"], d["B"], d["C"]
    ka, kb, kc = (e * cst % Q for e in eta)
    vA, vB, vC = ce["val_A"], ce["val_B"], ce["val_C"]
    a_ev = [0] * n
    b_ev = [0] * n
    for i in range(n):
        x, y, zz = dA[i], dB[i], dC[i]
        b_ev[i] = x * y % Q * zz % Q
        a_ev[i] = (ka * vA[i] % Q * (y * zz % Q) + kb * vB[i] % Q * (x * zz % Q)
                   + kc * vC[i] % Q * (x * y % Q)) % Q
    return a_ev, b_ev


def sigma_brute_force(ipk, eta, alpha, beta1, beta2):
    """Direct sums for the second and third sumchecks (test oracle; O(|H|^2) for sigma2)."""
    P = ipk.padded
    H = P.H
    dH = EvaluationDomain(H)
    el = dH.elements
    vHa = (pow(alpha, H, Q) - 1) % Q

    def L(c, x):
        # Lagrange polynomial of H at element index c evaluated at x
        return (pow(x, H, Q) - 1) * el[c] % Q * inv(H * (x - el[c]) % Q) % Q

    s2 = 0
    for name, e in zip(MATRICES, eta):
        for r, c, val in P.matrices[name]:
            s2 += e * val * vHa * inv((alpha - el[r]) % Q) % Q * L(c, beta1)
    s3 = 0
    for name, e in zip(MATRICES, eta):
        for r, c, val in P.matrices[name]:
            s3 += e * val * L(r, beta2) % Q * L(c, beta1)
    return s2 % Q, s3 % Q
