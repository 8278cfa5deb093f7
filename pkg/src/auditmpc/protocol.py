"""Auditable MPC end to end: clients, servers, bulletin board, auditor.

A round goes

    clients post evaluation commitments and send shares to the servers
    servers check the shares against the posted commitments (abort on mismatch)
    servers evaluate the circuit on shares, post output commitments / opened outputs
    servers jointly prove the round and post the proof
    anyone audits the board

Secret outputs can be carried into the next round (reactive state); their
shares are checked against the posted commitment exactly like client inputs.
"""

import json
import random
import struct
from dataclasses import dataclass, field

from .algebra import G1_BYTES, Q, EvaluationDomain, g1_from_bytes, g1_mul, g1_to_bytes, msm
from .apps.circuit import SharedRuntime
from .bus import Bus, ProtocolAbort
from .mpc_pc import decode_point, input_consistency_check
from .pec import (LagrangeKey, PecError, PecKeys, eval_commitment_from_bytes,
                  eval_commitment_to_bytes, lipmaa_commit,
                  lipmaa_verify, pec_setup)
from .polycommit import Randomness, pc_setup, srs_from_bytes, srs_to_bytes
from .sharing import Dealer, DecodeError, Decoder, ShareParams
from .snark import (CentralBackend, MpcBackend, RandomTape, Secret, index,
                    prove_adaptive, verify_adaptive)
from .snark.prover import check_statement_slots

PROVER_ROUNDS = ("initial", "round1", "round2", "evaluations", "final")


@dataclass
class NetworkConfig:
    n: int = 4
    t: int = 1
    latency_ms: float = 200.0
    bandwidth_mbps: float = 200.0

    def __post_init__(self):
        if self.latency_ms < 0 or self.bandwidth_mbps <= 0:
            raise ValueError("latency must be >= 0 and bandwidth > 0")


# ----------------------------------------------------------- bulletin board

class BoardError(Exception):
    pass


class BulletinBoard:
    """Append-only log of (author, kind, payload, meta); persisted as JSON lines."""

    def __init__(self, entries=None):
        self.entries = list(entries or [])

    def post(self, author, kind, payload=b"", **meta):
        if kind == "input":
            for e in self.entries:
                if e["kind"] == "input" and e["meta"].get("round") == meta.get("round") \
                        and e["meta"].get("slot") == meta.get("slot"):
                    raise BoardError("duplicate input for slot %s" % meta.get("slot"))
        entry = {"seq": len(self.entries), "author": author, "kind": kind,
                 "payload": bytes(payload).hex(), "meta": meta}
        self.entries.append(entry)
        return entry

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def to_jsonl(self):
        return "".join(json.dumps(e, sort_keys=True) + "\n" for e in self.entries)

    @classmethod
    def from_jsonl(cls, text):
        return cls([json.loads(line) for line in text.splitlines() if line.strip()])

    def save(self, path):
        with open(path, "w") as f:
            f.write(self.to_jsonl())

    @classmethod
    def load(cls, path):
        with open(path) as f:
            return cls.from_jsonl(f.read())

    def copy(self):
        return BulletinBoard(json.loads(json.dumps(self.entries)))


def payload(entry):
    return bytes.fromhex(entry["payload"])


# --------------------------------------------------------------------- setup

@dataclass
class Setup:
    ck: object
    rk: object
    keys: object     # PEC (Lipmaa) keys over the statement domain
    n: int
    t: int

    @property
    def S(self):
        return self.keys.domain.size

    def client_key(self, slot):
        """What client ``slot`` receives: its Lagrange key and the hiding rows."""
        return ClientKey(slot, self.keys.ck_e[slot].lag, self.keys.ck_p.shifted_powers[:self.S])

    def public_commitment(self, slot, value):
        return g1_mul(self.keys.ck_e[slot].lag, value)


@dataclass
class ClientKey:
    slot: int
    lag: object
    hiding_rows: list


def run_setup(D, S, n, t, rng):
    """Trusted setup: SRS up to degree D and Lagrange keys for S statement slots."""
    ShareParams(n, t)
    ck, rk, td = pc_setup(D, rng)
    keys = pec_setup(D, S, rng, "lipmaa", pc=(ck, rk, td))
    keys.trapdoor = None
    return Setup(ck, rk, keys, n, t)


SETUP_MAGIC = b"AMPCSET1"


def setup_to_bytes(setup):
    head = SETUP_MAGIC + struct.pack("<III", setup.n, setup.t, setup.S)
    lags = b"".join(g1_to_bytes(k.lag) for k in setup.keys.ck_e)
    return head + lags + srs_to_bytes(setup.ck, setup.rk)


def setup_from_bytes(data):
    if data[:8] != SETUP_MAGIC:
        raise ValueError("not a setup file")
    n, t, S = struct.unpack("<III", data[8:20])
    off = 20
    lags = []
    for i in range(S):
        lags.append(LagrangeKey(i, g1_from_bytes(data[off:off + G1_BYTES], False)))
        off += G1_BYTES
    ck, rk = srs_from_bytes(data[off:])
    keys = PecKeys("lipmaa", EvaluationDomain(S), 1, lags, ck, rk)
    return Setup(ck, rk, keys, n, t)


def save_setup(path, setup):
    with open(path, "wb") as f:
        f.write(setup_to_bytes(setup))


def load_setup(path):
    with open(path, "rb") as f:
        return setup_from_bytes(f.read())


# -------------------------------------------------------------------- clients

@dataclass
class Client:
    slot: int
    value: int
    seed: int = 0
    hiding: list = None
    entry: dict = None

    def commit(self, setup, board, round_no, author=None):
        rng = random.Random(repr(("client", self.seed, self.slot, round_no)))
        self.hiding = Randomness.sample(setup.S - 1, rng).coeffs
        com = lipmaa_commit(setup.keys, self.slot, self.value, self.hiding, rng)
        data = eval_commitment_to_bytes(com)
        for e in board:
            # the same client re-deriving its commitment adopts its earlier post
            if e["kind"] == "input" and e["meta"].get("round") == round_no \
                    and e["meta"].get("slot") == self.slot and payload(e) == data:
                self.entry = e
                return e
        self.entry = board.post(author or "client-%d" % self.slot, "input",
                                data, round=round_no, slot=self.slot)
        return self.entry

    def shares(self, dealer):
        """Shamir shares of (x, hiding polynomial) for every server."""
        rows = dealer.share_rows([self.value] + list(self.hiding))
        return [(r[0], r[1:]) for r in rows]


def client_commit(setup, board, slot, value, round_no=0, seed=0):
    c = Client(slot, value % Q, seed)
    c.commit(setup, board, round_no)
    return c


# ---------------------------------------------------------------- reactive state

@dataclass
class ReactiveState:
    slot: int
    seq: int
    point: object
    value_shares: list
    hiding_shares: list


@dataclass
class RoundResult:
    round_no: int
    circuit: str
    proof: bytes
    public: dict = field(default_factory=dict)
    state: ReactiveState = None
    builder: object = None


# -------------------------------------------------------------------- servers

class Servers:
    """The n MPC servers, simulated in one process over a metered bus."""

    def __init__(self, setup, config=None, corrupt=(), seed=0, mode="mpc"):
        self.setup = setup
        self.config = config or NetworkConfig(setup.n, setup.t)
        self.params = ShareParams(self.config.n, self.config.t)
        self.bus = Bus(self.config.n, self.config.t, corrupt, seed)
        self.dealer = Dealer(self.params, seed)
        self.seed = seed
        self.mode = mode
        self.indices = {}

    def index_for(self, circuit_id, r1cs):
        if circuit_id not in self.indices:
            self.indices[circuit_id] = index(r1cs, self.setup.ck, self.setup.S)
        return self.indices[circuit_id]

    def submit_and_check_inputs(self, board, clients, carried=None):
        """Parse each client's board entry, check its proof of knowledge, then check shares.

        Returns per-server input rows {slot: (x_share, hiding_shares)}.
        """
        keys = self.setup.keys
        coms, x_cols, r_cols, slots = [], [], [], []
        for c in clients:
            com = eval_commitment_from_bytes(payload(c.entry))
            if com.party != c.slot or not lipmaa_verify(keys, com):
                raise ProtocolAbort("client %d: bad proof of knowledge" % c.slot)
            sh = c.shares(self.dealer)
            coms.append(com)
            x_cols.append([s[0] for s in sh])
            r_cols.append([s[1] for s in sh])
            slots.append(c.slot)
        if carried is not None:
            coms.append(_PointCommitment(carried.slot, carried.point))
            x_cols.append(carried.value_shares)
            r_cols.append(carried.hiding_shares)
            slots.append(carried.slot)
        n = self.bus.n
        x_rows = [[col[i] for col in x_cols] for i in range(n)]
        r_rows = [[col[i] for col in r_cols] for i in range(n)]
        if coms:
            with self.bus.round("initial"):
                bad = input_consistency_check(keys, coms, x_rows, r_rows, self.bus)
            if bad:
                raise ProtocolAbort("input shares inconsistent with commitments for slots %s" % bad)
        return {s: ([x_rows[i][k] for i in range(n)], [r_rows[i][k] for i in range(n)])
                for k, s in enumerate(slots)}

    def commit_output(self, slot, value_shares, hiding_shares):
        """Servers jointly compute the evaluation commitment of a shared output."""
        lag = self.setup.keys.ck_e[slot].lag
        hrows = self.setup.keys.ck_p.shifted_powers
        pts = [[g1_mul(lag, x) + msm(hrows[:len(h)], h)] for x, h in zip(value_shares, hiding_shares)]
        with self.bus.round("initial"):
            sent = self.bus.broadcast_g1(pts, "output-commit")
            return decode_point([s[0] for s in sent], self.bus)

    def run_round(self, board, round_no, circuit_id, build, clients, carried=None,
                  secret_outputs=(), public_outputs=(), tape_seed=None):
        """One auditable round.

        build(runtime, inputs) -> Builder, where inputs maps slot -> runtime value.
        secret_outputs / public_outputs list statement slots written by the circuit.
        """
        board.post("servers", "round", round=round_no, circuit=circuit_id)
        try:
            inputs = self.submit_and_check_inputs(board, clients, carried)
        except ProtocolAbort as e:
            board.post("servers", "abort", round=round_no, reason=str(e))
            raise
        try:
            rt = SharedRuntime(self.bus, self.dealer)
            with self.bus.round("circuit"):
                b = build(rt, {s: v[0] for s, v in inputs.items()})
            S = self.setup.S
            hid_sh = {s: v[1] for s, v in inputs.items()}
            statement = []
            for c in clients:
                statement.append((c.slot, eval_commitment_from_bytes(payload(c.entry)).c))
            if carried is not None:
                board.post("servers", "carry", round=round_no, slot=carried.slot, ref=carried.seq)
                statement.append((carried.slot, carried.point))
            new_state = None
            for slot in secret_outputs:
                hs = self.dealer.random_rows(S)
                val = b.values[slot]
                pt = self.commit_output(slot, val, hs)
                e = board.post("servers", "output", g1_to_bytes(pt), round=round_no, slot=slot)
                statement.append((slot, pt))
                hid_sh[slot] = hs
                new_state = ReactiveState(slot, e["seq"], pt, list(val), hs)
            public = {}
            for slot in public_outputs:
                # robust opening; a single server's share is not the value
                with self.bus.round("circuit"):
                    v = rt.open(b.values[slot]) % Q
                public[slot] = v
                board.post("servers", "public", round=round_no, slot=slot, value=hex(v))
                statement.append((slot, self.setup.public_commitment(slot, v)))
        except (ProtocolAbort, DecodeError) as e:
            board.post("servers", "abort", round=round_no, reason=str(e))
            raise ProtocolAbort(str(e))
        r1cs = b.compile()
        ipk = self.index_for(circuit_id, r1cs)
        n = self.bus.n
        hiding_rows = [[0] * S for _ in range(n)]
        for rows in hid_sh.values():
            for i in range(n):
                hiding_rows[i] = [(a + x) % Q for a, x in zip(hiding_rows[i], rows[i])]
        z_rows = b.assignment_rows()
        tape = RandomTape(tape_seed if tape_seed is not None else ("round", self.seed, round_no))
        if self.mode == "mpc":
            backend = MpcBackend(self.bus, self.dealer)
            z, hid = Secret(z_rows), Secret(hiding_rows)
        else:
            backend = CentralBackend()
            dec = _reconstruct_rows
            z, hid = Secret([dec(z_rows, self.params)]), Secret([dec(hiding_rows, self.params)])
        try:
            proof, _ = prove_adaptive(ipk, self.setup.ck, statement, z, hid, backend, tape)
        except (ProtocolAbort, DecodeError) as e:
            board.post("servers", "abort", round=round_no, reason=str(e))
            raise ProtocolAbort(str(e))
        pb = proof.to_bytes()
        board.post("servers", "proof", pb, round=round_no, circuit=circuit_id)
        return RoundResult(round_no, circuit_id, pb, public, new_state, b)


def _reconstruct_rows(rows, params):
    return Decoder.get(params.n, params.t).open_rows(rows)


class _PointCommitment:
    def __init__(self, party, c):
        self.party = party
        self.c = c


# -------------------------------------------------------------------- auditor

class AuditReject(Exception):
    pass


def round_statement(board, setup, round_no):
    """Statement commitments of one round, in board order, plus the proof entry."""
    by_seq = {e["seq"]: e for e in board}
    statement, proof, circuit, aborted = [], None, None, False
    for e in board:
        m = e["meta"]
        if m.get("round") != round_no:
            continue
        k = e["kind"]
        if k == "round":
            circuit = m["circuit"]
        elif k == "input":
            try:
                com = eval_commitment_from_bytes(payload(e))
            except Exception as ex:
                raise AuditReject("unparseable input at seq %d: %s" % (e["seq"], ex))
            if com.party != m.get("slot") or not lipmaa_verify(setup.keys, com):
                raise AuditReject("input knowledge proof failed for slot %s" % m.get("slot"))
            statement.append((m["slot"], com.c))
        elif k == "carry":
            ref = by_seq.get(m["ref"])
            if ref is None or ref["kind"] != "output" or ref["meta"]["slot"] != m["slot"] \
                    or ref["seq"] >= e["seq"]:
                raise AuditReject("carried state does not reference an earlier output")
            statement.append((m["slot"], g1_from_bytes(payload(ref))))
        elif k == "output":
            statement.append((m["slot"], g1_from_bytes(payload(e))))
        elif k == "public":
            statement.append((m["slot"], setup.public_commitment(m["slot"], int(m["value"], 16))))
        elif k == "proof":
            proof = payload(e)
        elif k == "abort":
            aborted = True
    return circuit, statement, proof, aborted


def audit(board, ivks, setup):
    """Check every round on the board.  ivks maps circuit id -> index verifier key.

    Returns (accept, reasons) where reasons lists one line per round.
    """
    rounds = sorted({e["meta"]["round"] for e in board if "round" in e["meta"]})
    if not rounds:
        return False, ["empty board"]
    reasons = []
    ok = True
    for r in rounds:
        try:
            circuit, statement, proof, aborted = round_statement(board, setup, r)
            if aborted:
                raise AuditReject("round aborted")
            if proof is None:
                raise AuditReject("incomplete: no proof")
            if circuit not in ivks:
                raise AuditReject("unknown circuit %r" % circuit)
            check_statement_slots(ivks[circuit], statement)
            good, why = verify_adaptive(ivks[circuit], setup.rk, statement, proof, return_reason=True)
            if not good:
                raise AuditReject(why)
            reasons.append("round %d: accept" % r)
        except (AuditReject, PecError, ValueError) as e:
            ok = False
            reasons.append("round %d: reject (%s)" % (r, e))
    return ok, reasons


# ------------------------------------------------------------- network model

def simulate_network(bus, config):
    """Per-round simulated wall clock.

    Messages inside one prover round are independent and share a single
    latency; circuit and Beaver openings are sequential, one latency each.
    Transfer time is a sender's payload over the link bandwidth.
    """
    per_round, seen = {}, set()
    for rnd, op, kind, count, total in bus.log:
        ms = total / bus.n * 8 / (config.bandwidth_mbps * 1e6) * 1e3
        if rnd not in PROVER_ROUNDS or rnd not in seen:
            ms += config.latency_ms
        seen.add(rnd)
        per_round[rnd] = per_round.get(rnd, 0.0) + ms
    rows = []
    for name, m in bus.metrics.items():
        row = m.as_row()
        row["sim_ms"] = round(per_round.get(name, 0.0), 3)
        rows.append(row)
    return rows


def prover_comm_bytes(bus):
    return bus.total_bytes(PROVER_ROUNDS)


def snark_comm_bytes(bus):
    """Traffic of the proof generation alone: prover rounds minus input checks and output commitments."""
    return sum(total for rnd, op, _, _, total in bus.log
               if rnd in PROVER_ROUNDS and op not in ("input-check", "output-commit"))


__all__ = ["AuditReject", "BoardError", "BulletinBoard", "Client", "NetworkConfig", "ReactiveState",
           "RoundResult", "Servers", "Setup", "audit", "client_commit", "prover_comm_bytes",
           "load_setup", "round_statement", "run_setup", "save_setup", "simulate_network",
           "snark_comm_bytes"]
