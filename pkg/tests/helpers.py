"""Instance builders shared by the snark, protocol and acceptance tests."""

import random

from auditmpc.algebra import Q
from auditmpc.apps.circuit import PlainRuntime
from auditmpc.apps.random_circuits import random_circuit, stmt_domain
from auditmpc.bus import Bus
from auditmpc.pec import lipmaa_commit, pec_setup
from auditmpc.polycommit import pc_setup
from auditmpc.sharing import Dealer, ShareParams
from auditmpc.snark import MpcBackend, Secret, index, prove_adaptive, required_degree


class Instance:
    """A compiled random circuit, its assignment and committed statement."""

    def __init__(self, m, x, seed, ck=None, rk=None, td=None, keys=None):
        rng = random.Random(seed)
        inputs = [rng.randrange(Q) for _ in range(x)]
        b = random_circuit(PlainRuntime(), m, x, inputs, seed)
        self.r1 = b.compile()
        self.z = b.assignment_rows()[0]
        self.S = stmt_domain(x)
        self.m, self.x, self.seed = m, x, seed
        if ck is None:
            from auditmpc.snark.r1cs import PaddedIndex
            P = PaddedIndex(self.r1, self.S)
            ck, rk, td = pc_setup(required_degree(P.H, P.K), rng)
        self.ck, self.rk = ck, rk
        self.ipk = index(self.r1, ck, self.S)
        if keys is None or keys.domain.size != self.S:
            keys = pec_setup(ck.max_degree, self.S, rng, "lipmaa", pc=(ck, rk, td))
        self.keys = keys
        self.statement, self.hiding = commit_statement(keys, self.z[1:x + 1], self.S, rng)

    @property
    def vk(self):
        return self.ipk.vk

    def prove_central(self, tape=1, **kw):
        return prove_adaptive(self.ipk, self.ck, self.statement, Secret([self.z]),
                              Secret([self.hiding]), tape=tape, **kw)

    def prove_mpc(self, n, t, corrupt=(), tape=1, seed=0):
        dealer = Dealer(ShareParams(n, t), seed)
        bus = Bus(n, t, corrupt, seed)
        zr = dealer.share_rows(self.z)
        hr = dealer.share_rows(self.hiding)
        proof, info = prove_adaptive(self.ipk, self.ck, self.statement, Secret(zr), Secret(hr),
                                     backend=MpcBackend(bus, dealer), tape=tape)
        return proof, bus


def commit_statement(keys, values, S, rng, first_slot=1):
    """Lipmaa commitments for consecutive slots; returns (statement, summed hiding)."""
    statement, total = [], [0] * S
    for i, v in enumerate(values):
        h = [rng.randrange(Q) for _ in range(S)]
        c = lipmaa_commit(keys, first_slot + i, v, h, rng, with_proof=False)
        statement.append((first_slot + i, c.c))
        total = [(a + b) % Q for a, b in zip(total, h)]
    return statement, total


def shared_srs(max_degree, seed=0):
    return pc_setup(max_degree, random.Random(seed))
