"""Circuit registry and drivers tying applications to the protocol."""

import random

from ..algebra import Q
from ..snark import index, required_degree
from ..snark.r1cs import PaddedIndex
from . import auction, logrank
from .circuit import PlainRuntime
from .random_circuits import parse_random_id, random_circuit, stmt_domain


def auction_id(round_no):
    return "auction/%s" % ("even" if round_no % 2 == 0 else "odd")


def finalize_id(round_no):
    return "auction-final/%s" % ("even" if round_no % 2 == 0 else "odd")


def structure(circuit_id):
    """R1CS of a registered circuit, built on dummy inputs (the shape never depends on values)."""
    rt = PlainRuntime()
    kind, _, parity = circuit_id.partition("/")
    if kind == "auction":
        b, _ = auction.auction_round(rt, [0] * auction.BIDDERS, 0, 0 if parity == "even" else 1)
        return b.compile(), auction.STMT_DOMAIN
    if kind == "auction-final":
        b, _ = auction.finalize(rt, 0, 0 if parity == "even" else 1)
        return b.compile(), auction.STMT_DOMAIN
    if circuit_id.startswith("logrank"):
        b, _, _ = logrank.logrank_run(rt, [(1, 1, 10, 10)] * logrank.TIME_POINTS,
                                      as_written=circuit_id.endswith("as-written"))
        return b.compile(), logrank.STMT_DOMAIN
    if circuit_id.startswith("random:"):
        m, x, seed = parse_random_id(circuit_id)
        b = random_circuit(rt, m, x, [1] * x, seed)
        return b.compile(), stmt_domain(x)
    raise ValueError("unknown circuit %r" % circuit_id)


def degree_for(circuit_id):
    r1, S = structure(circuit_id)
    P = PaddedIndex(r1, S)
    return required_degree(P.H, P.K), S


def verifier_keys(board, ck, cache=None):
    """Index every circuit named on the board (deterministic; anyone can redo it)."""
    cache = {} if cache is None else cache
    out = {}
    for e in board:
        if e["kind"] == "round":
            cid = e["meta"]["circuit"]
            if cid not in cache:
                r1, S = structure(cid)
                cache[cid] = index(r1, ck, S)
            out[cid] = cache[cid].vk
    return out


# ---------------------------------------------------------------- drivers

def auction_round(servers, board, bids, round_no, state=None, seed=0):
    """Bids go to slots 1..len(bids); returns the RoundResult carrying the new best price."""
    from ..protocol import Client
    clients = [Client(1 + i, v % Q, seed) for i, v in enumerate(bids)]
    for c in clients:
        c.commit(servers.setup, board, round_no)
    sin, sout = auction.state_slots(round_no)

    def build(rt, inputs):
        vals = [inputs.get(1 + i, rt.const(0)) for i in range(auction.BIDDERS)]
        st = inputs.get(sin, rt.const(0))
        b, _ = auction.auction_round(rt, vals, st, round_no)
        return b

    if state is not None and state.slot != sin:
        raise ValueError("carried state sits in slot %d, round expects %d" % (state.slot, sin))
    return servers.run_round(board, round_no, auction_id(round_no), build, clients, carried=state,
                             secret_outputs=(sout,))


def auction_finalize(servers, board, state, round_no):
    """Open the carried best price; round_no must follow the round that wrote ``state``."""
    if auction.state_slots(round_no)[0] != state.slot:
        raise ValueError("state in slot %d cannot be finalized in round %d" % (state.slot, round_no))

    def build(rt, inputs):
        b, _ = auction.finalize(rt, inputs[state.slot], round_no)
        return b

    return servers.run_round(board, round_no, finalize_id(round_no), build, [], carried=state,
                             public_outputs=(auction.RESULT_SLOT,))


def logrank_round(servers, board, table, round_no=0, seed=0, as_written=False):
    from ..protocol import Client
    clients = []
    for i, row in enumerate(table):
        for k, v in enumerate(row):
            clients.append(Client(4 * i + 1 + k, v, seed))
    for c in clients:
        c.commit(servers.setup, board, round_no)

    def build(rt, inputs):
        tb = [tuple(inputs[4 * i + 1 + k] for k in range(4)) for i in range(len(table))]
        b, _, _ = logrank.logrank_run(rt, tb, as_written=as_written)
        return b

    cid = "logrank" + ("/as-written" if as_written else "")
    return servers.run_round(board, round_no, cid, build, clients,
                             public_outputs=(logrank.CHI_SLOT,))


def random_round(servers, board, circuit_id, round_no=0, seed=0, inputs=None):
    from ..protocol import Client
    m, x, sseed = parse_random_id(circuit_id)
    rng = random.Random(repr(("inputs", seed)))
    vals = inputs or [rng.randrange(Q) for _ in range(x)]
    clients = [Client(1 + i, v, seed) for i, v in enumerate(vals)]
    for c in clients:
        c.commit(servers.setup, board, round_no)

    def build(rt, inp):
        return random_circuit(rt, m, x, [inp[1 + i] for i in range(x)], sseed)

    return servers.run_round(board, round_no, circuit_id, build, clients)
