import random

import pytest

from auditmpc.algebra import Q, g1_gen, g1_mul, poly_eval
from auditmpc.pec import (LipmaaCommitment, PecError, SuccCommitment, eval_commitment_from_bytes,
                          eval_commitment_to_bytes, interpolate_polynomial, lagrange_keys_from_srs,
                          lipmaa_verify, pec_check, pec_commit_eval, pec_interpolate, pec_open,
                          pec_setup, succ_verify)
from auditmpc.polycommit import Randomness, pc_commit, pc_setup


def honest_run(construction, K, d, seed, D=32):
    rng = random.Random(seed)
    keys = pec_setup(D, K, rng, construction, per_party=d)
    evals, coms, oms = {}, [], {}
    for i in range(K):
        ev = [rng.randrange(Q) for _ in range(d)]
        om = Randomness.sample(0 if construction == "ped" else keys.domain.size - 1, rng)
        evals[i], oms[i] = ev, om
        coms.append(pec_commit_eval(keys, i, ev if d > 1 else ev[0], om, rng,
                                    points=keys.points_of(i)))
    return keys, evals, coms, oms, rng


@pytest.mark.parametrize("construction", ["ped", "lipmaa", "succ"])
def test_completeness_game(construction):
    trials = 0
    for K in range(1, 7):
        for d in ((1,) if construction != "succ" else (1, 2, 4)):
            if K * d > 32:
                continue
            for seed in range(4):
                keys, evals, coms, oms, rng = honest_run(construction, K, d, seed * 97 + K)
                c = pec_interpolate(keys, coms)
                phi = interpolate_polynomial(keys, evals)
                q = rng.randrange(Q)
                v, pf = pec_open(keys, phi, q, oms)
                assert v == poly_eval(phi, q)
                assert pec_check(keys, c, q, v, pf)
                assert not pec_check(keys, c, q, (v + 1) % Q, pf)
                trials += 1
    assert trials >= 20


@pytest.mark.parametrize("construction", ["lipmaa", "succ"])
def test_interpolate_equals_central_commit(construction):
    keys, evals, coms, oms, _ = honest_run(construction, 4, 1, 11)
    phi = interpolate_polynomial(keys, evals)
    total = [sum(om.coeffs[j] for om in oms.values()) % Q for j in range(keys.domain.size)]
    assert pec_interpolate(keys, coms).c == pc_commit(keys.ck_p, phi, Randomness(total)).c


def test_lipmaa_and_succ_open_same_polynomial():
    # shared SRS so both interpolate into commitments of the same phi
    rng = random.Random(12)
    pc = pc_setup(32, rng)
    res = {}
    for cons in ("lipmaa", "succ"):
        keys = pec_setup(32, 4, random.Random(13), cons, pc=pc)
        ev = {i: [10 + i] for i in range(4)}
        om = {i: Randomness([i + 1, 2 * i]) for i in range(4)}
        coms = [pec_commit_eval(keys, i, ev[i], om[i], random.Random(i)) for i in range(4)]
        c = pec_interpolate(keys, coms)
        phi = interpolate_polynomial(keys, ev)
        v, pf = pec_open(keys, phi, 99, om)
        assert pec_check(keys, c, 99, v, pf)
        res[cons] = (c.c, v)
    assert res["lipmaa"] == res["succ"]


def test_ped_zero():
    keys = pec_setup(8, 2, random.Random(0), "ped")
    com = pec_commit_eval(keys, 0, 0, Randomness([0]))
    assert com.points[0] == g1_mul(g1_gen(), 0)


def test_lipmaa_tamper_names_party():
    keys, evals, coms, oms, _ = honest_run("lipmaa", 4, 1, 21)
    bad = coms[2]
    coms[2] = LipmaaCommitment(bad.party, bad.c, bad.K, (bad.s + 1) % Q, bad.s_bar)
    with pytest.raises(PecError) as e:
        pec_interpolate(keys, coms)
    assert e.value.party == 2


def test_succ_foreign_block_rejected():
    keys, evals, coms, oms, rng = honest_run("succ", 4, 2, 22)
    for j in range(4):
        honest = pec_commit_eval(keys, j, [5, 6], Randomness([1]), rng)
        for i in range(4):
            if i != j:
                forged = SuccCommitment(i, honest.c, honest.c_k)
                assert not succ_verify(keys, forged)
                with pytest.raises(PecError) as e:
                    pec_interpolate(keys, [c for c in coms if c.party != i] + [forged])
                assert e.value.party == i


def test_succ_single_party_identity():
    keys, evals, coms, oms, _ = honest_run("succ", 1, 2, 23)
    assert pec_interpolate(keys, coms).c == coms[0].c


def test_succ_budget():
    keys = pec_setup(16, 4, random.Random(2), "succ", per_party=2)
    with pytest.raises(PecError):
        pec_commit_eval(keys, 0, [1, 2, 3])
    with pytest.raises(PecError):
        pec_commit_eval(keys, 0, [1, 2], points=keys.points_of(1))


def test_setup_bounds():
    with pytest.raises(ValueError):
        pec_setup(2, 4, random.Random(0))


def test_lagrange_keys_public_derivation():
    rng = random.Random(3)
    pc = pc_setup(16, rng)
    keys = pec_setup(16, 8, rng, "lipmaa", pc=pc)
    assert [k.lag for k in keys.ck_e] == lagrange_keys_from_srs(pc[0], keys.domain)


@pytest.mark.parametrize("construction", ["ped", "lipmaa", "succ"])
def test_wire_roundtrip(construction):
    keys, evals, coms, oms, _ = honest_run(construction, 3, 1, 31)
    for com in coms:
        data = eval_commitment_to_bytes(com)
        assert data[1] == 1
        back = eval_commitment_from_bytes(data)
        assert eval_commitment_to_bytes(back) == data
        if construction == "lipmaa":
            assert lipmaa_verify(keys, back)


def test_wire_rejects_unknown():
    with pytest.raises(ValueError):
        eval_commitment_from_bytes(b"X\x01\x00\x00\x00\x00")
    with pytest.raises(ValueError):
        eval_commitment_from_bytes(b"L\x07\x00\x00\x00\x00")


def test_commitment_byte_statistics():
    # smoke test only: bytes of commitments to a fixed value vs random values look alike
    keys = pec_setup(16, 4, random.Random(4), "lipmaa")
    rng = random.Random(5)

    def hist(fixed):
        h = [0] * 16
        for _ in range(150):
            com = pec_commit_eval(keys, 1, 7 if fixed else rng.randrange(Q), rng=rng)
            for b in eval_commitment_to_bytes(com)[8:54]:
                h[b >> 4] += 1
        return h

    a, b = hist(True), hist(False)
    chi = sum((x - y) ** 2 / (x + y) for x, y in zip(a, b) if x + y)
    assert chi < 45
