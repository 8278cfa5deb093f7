import random
from pathlib import Path

import pytest

import oracles as O
from helpers import Instance, commit_statement
from auditmpc.algebra import PAIRINGS, Q, EvaluationDomain, poly_eval
from auditmpc.polycommit import OpeningProof, open_raw, pc_check, pc_setup
from auditmpc.snark import (PROOF_BYTES, AdaptiveProof, R1csIndex, RandomTape, index,
                            prove_adaptive, verify_adaptive)
from auditmpc.snark import backend as backend_mod
from auditmpc.snark import prover as prover_mod
from auditmpc.snark.indexer import INDEX_POLYS
from auditmpc.snark.r1cs import IndexError_

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="module")
def inst():
    return Instance(6, 2, 1)


@pytest.fixture(scope="module")
def honest(inst):
    return inst.prove_central(debug=True)


def square_circuit():
    # x * x = y with y the only statement value, x a witness
    return R1csIndex(3, 1, [{2: 1}], [{2: 1}], [{1: 1}])


# ---------------------------------------------------------------- indexer

def test_index_commitments_open_to_index_polys():
    ck, rk, _ = pc_setup(64, random.Random(3))
    ipk = index(square_circuit(), ck, 4)
    q = 1234567
    for name in INDEX_POLYS:
        c = ipk.coeffs[name]
        w, _ = open_raw(ck, c, None, q)
        assert pc_check(rk, ipk.vk.commitments[name], q, poly_eval(c, q), OpeningProof(w, 0))


def test_index_is_deterministic():
    ck, _, _ = pc_setup(64, random.Random(3))
    a = index(square_circuit(), ck, 4).vk
    b = index(square_circuit(), ck, 4).vk
    assert a.digest == b.digest


def test_index_rejects_small_srs():
    ck, _, _ = pc_setup(8, random.Random(3))
    with pytest.raises(IndexError_):
        index(square_circuit(), ck, 4)


def test_index_val_encoding_matches_dense_matrix(inst):
    # row/col/val over K reproduce every nonzero of the padded matrices
    P = inst.ipk.padded
    dH = EvaluationDomain(P.H)
    for name in "ABC":
        ok = inst.ipk.on_k[name]
        got = {}
        for r, c, v in zip(ok["row"], ok["col"], ok["val"]):
            if v:
                got[(r, c)] = (got.get((r, c), 0) + v * P.H * P.H * O.inv(r * c)) % Q
        M = O.dense(P, name)
        want = {(dH.element(r), dH.element(c)): M[r][c]
                for r in range(P.H) for c in range(P.H) if M[r][c]}
        assert got == want


# ---------------------------------------------------------------- completeness

def test_square_circuit_proves():
    ck, rk, td = pc_setup(64, random.Random(5))
    from auditmpc.pec import pec_setup
    keys = pec_setup(ck.max_degree, 4, random.Random(6), "lipmaa", pc=(ck, rk, td))
    ipk = index(square_circuit(), ck, 4)
    stmt, hid = commit_statement(keys, [49], 4, random.Random(7))
    from auditmpc.snark import Secret
    proof, _ = prove_adaptive(ipk, ck, stmt, Secret([[1, 49, 7]]), Secret([hid]))
    assert verify_adaptive(ipk.vk, rk, stmt, proof)
    bad, _ = prove_adaptive(ipk, ck, stmt, Secret([[1, 49, 8]]), Secret([hid]))
    assert not verify_adaptive(ipk.vk, rk, stmt, bad)


@pytest.mark.parametrize("m,x,seed", [(1, 1, 0), (6, 2, 1), (20, 5, 2), (40, 14, 3), (130, 3, 4)])
def test_honest_proof_verifies(m, x, seed):
    I = Instance(m, x, seed)
    proof, _ = I.prove_central()
    assert verify_adaptive(I.vk, I.rk, I.statement, proof, return_reason=True) == (True, "ok")


def test_unsatisfied_assignment_rejected(inst):
    z = list(inst.z)
    z[-1] = (z[-1] + 1) % Q  # last wire is a product output
    assert not inst.r1.is_satisfied(z)
    from auditmpc.snark import Secret
    proof, _ = prove_adaptive(inst.ipk, inst.ck, inst.statement, Secret([z]), Secret([inst.hiding]))
    ok, why = verify_adaptive(inst.vk, inst.rk, inst.statement, proof, return_reason=True)
    assert not ok and "sumcheck" in why


def test_mpc_and_central_byte_identical(inst):
    central, _ = inst.prove_central(tape=9)
    for n, t in ((4, 1), (7, 2)):
        mpc, _ = inst.prove_mpc(n, t, tape=9, seed=n)
        assert mpc.to_bytes() == central.to_bytes()


def test_tape_changes_proof_not_validity(inst):
    a, _ = inst.prove_central(tape=1)
    b, _ = inst.prove_central(tape=2)
    assert a.to_bytes() != b.to_bytes()
    assert verify_adaptive(inst.vk, inst.rk, inst.statement, b)


# ---------------------------------------------------------------- sumcheck oracles

def _z_on_h(inst, info):
    P = inst.ipk.padded
    el = O.h_elements(P.S)
    pad = poly_eval(info["polys"]["xhat"], el[P.S - 1])
    return P.z_on_h(inst.z, pad)


def test_xhat_interpolates_statement(inst, honest):
    _, info = honest
    P = inst.ipk.padded
    el = O.h_elements(P.S)
    xh = info["polys"]["xhat"]
    got = [poly_eval(xh, e) for e in el]
    assert got[:inst.x + 1] == [1] + inst.z[1:inst.x + 1]
    assert all(v == 0 for v in got[inst.x + 1:P.S - 1])
    assert info["degrees"]["xhat"] <= P.S - 1


def test_w_and_masked_ldes_agree_on_h(inst, honest):
    _, info = honest
    P = inst.ipk.padded
    el = O.h_elements(P.H)
    zh = _z_on_h(inst, info)
    pl = info["polys"]
    A, B = O.dense(P, "A"), O.dense(P, "B")
    for h, e in enumerate(el):
        zz = (poly_eval(pl["w"], e) * (pow(e, P.S, Q) - 1) + poly_eval(pl["xhat"], e)) % Q
        assert zz == zh[h]
        assert poly_eval(pl["z_a"], e) == sum(A[h][c] * zh[c] for c in range(P.H)) % Q
        assert poly_eval(pl["z_b"], e) == sum(B[h][c] * zh[c] for c in range(P.H)) % Q


@pytest.mark.parametrize("seed", range(5))
def test_sigma_oracles(seed):
    I = Instance(4 + 2 * seed, 1 + seed % 3, 100 + seed)
    assert I.ipk.padded.H <= 16
    _, info = I.prove_central(debug=True)
    P = I.ipk.padded
    el = O.h_elements(P.H)
    s_on_h = [poly_eval(info["polys"]["s"], e) for e in el]
    za_h = [poly_eval(info["polys"]["z_a"], e) for e in el]
    zb_h = [poly_eval(info["polys"]["z_b"], e) for e in el]
    assert O.sigma1_sum(P, info["eta"], info["alpha"], _z_on_h(I, info), s_on_h, za_h, zb_h) == 0
    assert info["sigma2"] == O.sigma2(P, info["eta"], info["alpha"], info["beta1"])
    assert info["sigma3"] == O.sigma3(P, info["eta"], info["beta1"], info["beta2"])


def test_sigma1_nonzero_for_false_witness(inst, honest):
    _, info = honest
    P = inst.ipk.padded
    z = list(inst.z)
    z[-1] = (z[-1] + 1) % Q  # breaks the constraint that outputs the last wire
    zh = _z_on_h(inst, info)
    bad = P.z_on_h(z, zh[P.pos[P.pad_var]])
    s_on_h = [poly_eval(info["polys"]["s"], e) for e in O.h_elements(P.H)]
    assert O.sigma1_sum(P, info["eta"], info["alpha"], zh, s_on_h) == 0
    assert O.sigma1_sum(P, info["eta"], info["alpha"], bad, s_on_h) != 0


def test_q1_identity_at_random_points(inst, honest):
    _, info = honest
    P = inst.ipk.padded
    el = O.h_elements(P.H)
    pl = info["polys"]
    ea, eb, ec = info["eta"]
    rng = random.Random(11)
    for _ in range(20):
        y = rng.randrange(Q)
        za, zb = poly_eval(pl["z_a"], y), poly_eval(pl["z_b"], y)
        zz = (poly_eval(pl["w"], y) * (pow(y, P.S, Q) - 1) + poly_eval(pl["xhat"], y)) % Q
        lhs = (poly_eval(pl["s"], y) + O.r_biv(el, info["alpha"], y) * (ea * za + eb * zb + ec * za * zb)
               - O.t_at(P, info["eta"], info["alpha"], y) * zz) % Q
        rhs = (poly_eval(pl["h1"], y) * O.vanish(el, y) + y * poly_eval(pl["g1"], y)) % Q
        assert lhs == rhs


def test_q2_identity_at_random_points(inst, honest):
    _, info = honest
    P = inst.ipk.padded
    el = O.h_elements(P.H)
    pl = info["polys"]
    rng = random.Random(12)
    for _ in range(10):
        y = rng.randrange(Q)
        u = sum(e * O.m_hat(el, O.dense(P, n), y, info["beta1"]) for e, n in zip(info["eta"], "ABC"))
        lhs = O.r_biv(el, info["alpha"], y) * u % Q
        rhs = (poly_eval(pl["h2"], y) * O.vanish(el, y) + y * poly_eval(pl["g2"], y)
               + info["sigma2"] * O.inv(P.H)) % Q
        assert lhs == rhs


def test_q3_identity_at_random_points(inst, honest):
    _, info = honest
    P = inst.ipk.padded
    K = P.K
    c = inst.ipk.coeffs
    pl = info["polys"]
    b1, b2 = info["beta1"], info["beta2"]
    cst = (pow(b1, P.H, Q) - 1) * (pow(b2, P.H, Q) - 1) % Q
    rng = random.Random(13)
    for _ in range(100):
        y = rng.randrange(Q)
        d = {m: (b2 - poly_eval(c["row_" + m], y)) * (b1 - poly_eval(c["col_" + m], y)) % Q for m in "ABC"}
        val = {m: poly_eval(c["val_" + m], y) for m in "ABC"}
        b = d["A"] * d["B"] * d["C"] % Q
        a = cst * sum(e * val[m] * d[o1] * d[o2] for e, m, o1, o2 in
                      zip(info["eta"], "ABC", "BAA", "CCB")) % Q
        lhs = (a - b * (y * poly_eval(pl["g3"], y) + info["sigma3"] * O.inv(K))) % Q
        assert lhs == poly_eval(pl["h3"], y) * (pow(y, K, Q) - 1) % Q


def test_degree_discipline(inst, honest):
    _, info = honest
    H, K, S = inst.ipk.padded.H, inst.ipk.padded.K, inst.ipk.padded.S
    deg = info["degrees"]
    assert deg["w"] <= H - S
    assert deg["z_a"] <= H and deg["z_b"] <= H
    assert deg["s"] <= 2 * H
    assert deg["g1"] <= H - 2 and deg["g2"] <= H - 2 and deg["g3"] <= K - 2
    assert deg["h1"] <= 2 * H - 1 and deg["h2"] <= H - 2 and deg["h3"] <= 6 * K - 7


# ---------------------------------------------------------------- soundness

def test_degree_bound_violation_rejected(inst, monkeypatch):
    """A false witness whose nonzero sum is pushed into g1's top coefficient."""
    H = inst.ipk.padded.H
    real_div = prover_mod.divide_by_vanishing

    def cheat_div(a, n, c=1):
        quo, rem = real_div(a, n, c)
        if n == H and len(a) == 3 * H and rem[0]:
            s = rem[0]
            quo = list(quo)
            quo[0] = (quo[0] - s) % Q
            rem = [0] + list(rem[1:]) + [s]
        return quo, rem

    real_commit = backend_mod.commit_raw

    def clipped_commit(ck, coeffs, hiding=None, shift=0):
        room = ck.max_degree + 1 - shift
        return real_commit(ck, list(coeffs)[:room], hiding, shift)

    monkeypatch.setattr(prover_mod, "divide_by_vanishing", cheat_div)
    monkeypatch.setattr(backend_mod, "commit_raw", clipped_commit)
    z = list(inst.z)
    z[-1] = (z[-1] + 1) % Q
    from auditmpc.snark import Secret
    proof, _ = prove_adaptive(inst.ipk, inst.ck, inst.statement, Secret([z]), Secret([inst.hiding]))
    ok, why = verify_adaptive(inst.vk, inst.rk, inst.statement, proof, return_reason=True)
    # the first identity is satisfied, only the shifted commitment catches it
    assert not ok and why == "pairing check failed"


def test_wrong_v_rejected(inst, honest):
    p = AdaptiveProof.from_bytes(honest[0].to_bytes())
    p.v = (p.v + 1) % Q
    assert not verify_adaptive(inst.vk, inst.rk, inst.statement, p)


def test_swapped_statement_commitment_rejected(inst, honest):
    other = Instance(6, 2, 2)
    stmt = [inst.statement[0], (inst.statement[1][0], other.statement[1][1])]
    assert not verify_adaptive(inst.vk, inst.rk, stmt, honest[0])


def test_statement_order_is_bound(inst, honest):
    stmt = list(reversed(inst.statement))
    assert not verify_adaptive(inst.vk, inst.rk, stmt, honest[0])


def test_bad_slots_rejected(inst, honest):
    for stmt in ([(0, inst.statement[0][1])], [(inst.S - 1, inst.statement[0][1])],
                 inst.statement + [inst.statement[0]]):
        ok, why = verify_adaptive(inst.vk, inst.rk, stmt, honest[0], return_reason=True)
        assert not ok and why.startswith("malformed")


def test_single_bit_mutations_rejected(inst, honest):
    data = honest[0].to_bytes()
    rng = random.Random(17)
    for _ in range(200):
        i = rng.randrange(len(data) * 8)
        mut = bytearray(data)
        mut[i // 8] ^= 1 << (i % 8)
        assert not verify_adaptive(inst.vk, inst.rk, inst.statement, bytes(mut)), i


def test_wrong_length_rejected(inst, honest):
    data = honest[0].to_bytes()
    for bad in (data[:-1], data + b"\0", b""):
        ok, why = verify_adaptive(inst.vk, inst.rk, inst.statement, bad, return_reason=True)
        assert not ok and why.startswith("malformed")


def test_mismatched_receiver_key(inst, honest):
    _, rk2, _ = pc_setup(inst.ck.max_degree + 1, random.Random(0))
    assert not verify_adaptive(inst.vk, rk2, inst.statement, honest[0])


# ---------------------------------------------------------------- size and cost

def test_proof_size(honest):
    data = honest[0].to_bytes()
    assert len(data) == PROOF_BYTES == 1552
    assert honest[0].element_counts() == (17, 23)
    assert AdaptiveProof.from_bytes(data).to_bytes() == data


@pytest.mark.parametrize("m,x", [(6, 2), (130, 3), (300, 12)])
def test_pairing_budget(m, x):
    I = Instance(m, x, 8)
    proof, _ = I.prove_central()
    PAIRINGS.reset()
    assert verify_adaptive(I.vk, I.rk, I.statement, proof)
    assert PAIRINGS.count <= 3


def test_golden_proof(inst):
    proof, _ = inst.prove_central(tape=RandomTape(42))
    path = GOLDEN / "proof_random_6_2_seed1_tape42.hex"
    assert proof.to_bytes().hex() == path.read_text().strip()


def test_tampered_index_evaluation_rejected(inst, honest):
    p = AdaptiveProof.from_bytes(honest[0].to_bytes())
    p.e3_val_A = (p.e3_val_A + 1) % Q
    assert not verify_adaptive(inst.vk, inst.rk, inst.statement, p)
