"""auditmpc command line: setup, commit, run, audit, bench."""

import argparse
import json
import os
import random
import sys

from .algebra import Q
from .apps import auction, bench as benchmod, logrank, runner
from .apps.random_circuits import parse_random_id
from .bus import ProtocolAbort
from .protocol import (BulletinBoard, Client, NetworkConfig, Servers, audit, load_setup,
                       run_setup, save_setup, simulate_network)


def circuit_ids(circuit):
    """Every circuit id a run of ``circuit`` may post (setup must cover all of them)."""
    if circuit == "auction":
        return [runner.auction_id(0), runner.auction_id(1),
                runner.finalize_id(0), runner.finalize_id(1)]
    if circuit == "logrank":
        return ["logrank"]
    if circuit.startswith("random:"):
        parse_random_id(circuit)
        return [circuit]
    raise SystemExit("unknown circuit %r (auction, logrank or random:<m>:<x>)" % circuit)


def _degree(circuit):
    ds = [runner.degree_for(c) for c in circuit_ids(circuit)]
    return max(d for d, _ in ds), ds[0][1]


def _default_inputs(circuit, seed):
    rng = random.Random(seed)
    if circuit == "auction":
        return [[rng.randrange(1 << 32) for _ in range(auction.BIDDERS)]]
    if circuit == "logrank":
        return [list(r) for r in logrank.random_table(rng)]
    m, x, _ = parse_random_id(circuit)
    return [rng.randrange(Q) for _ in range(x)]


def _load_inputs(args):
    if args.inputs:
        # a JSON file, or the JSON itself
        if args.inputs.lstrip().startswith("["):
            return json.loads(args.inputs)
        with open(args.inputs) as f:
            return json.load(f)
    return _default_inputs(args.circuit, args.seed)


def _client_values(circuit, inputs, round_no):
    """(slot, value) pairs the clients of one round commit to."""
    if circuit == "auction":
        return [(1 + i, v) for i, v in enumerate(inputs[round_no])]
    if circuit == "logrank":
        return [(4 * i + 1 + k, v) for i, row in enumerate(inputs) for k, v in enumerate(row)]
    return [(1 + i, v) for i, v in enumerate(inputs)]


def _config(args):
    return NetworkConfig(args.servers, args.threshold, args.latency_ms, args.bandwidth_mbps)


def _board(path):
    return BulletinBoard.load(path) if path and os.path.exists(path) else BulletinBoard()


# ------------------------------------------------------------------ commands

def cmd_setup(args):
    D, S = _degree(args.circuit)
    setup = run_setup(D, S, args.servers, args.threshold, random.Random(args.seed))
    save_setup(args.setup, setup)
    print("setup: D=%d statement slots=%d n=%d t=%d -> %s" % (D, S, args.servers, args.threshold,
                                                             args.setup))


def cmd_commit(args):
    setup = load_setup(args.setup)
    board = _board(args.board)
    inputs = _load_inputs(args)
    for slot, v in _client_values(args.circuit, inputs, args.round):
        Client(slot, v % Q, args.seed).commit(setup, board, args.round)
    board.save(args.board)
    print("committed round %d inputs -> %s (%d entries)" % (args.round, args.board, len(board)))


def cmd_run(args):
    setup = load_setup(args.setup)
    if (setup.n, setup.t) != (args.servers, args.threshold):
        raise SystemExit("setup was made for n=%d t=%d" % (setup.n, setup.t))
    board = _board(args.board)
    inputs = _load_inputs(args)
    corrupt = [int(c) for c in args.corrupt.split(",")] if args.corrupt else []
    servers = Servers(setup, _config(args), corrupt=corrupt, seed=args.seed, mode=args.mode)
    results = []
    try:
        if args.circuit == "auction":
            state = None
            for r, bids in enumerate(inputs):
                res = runner.auction_round(servers, board, bids, r, state, seed=args.seed)
                state = res.state
                results.append(res)
            results.append(runner.auction_finalize(servers, board, state, len(inputs)))
        elif args.circuit == "logrank":
            results.append(runner.logrank_round(servers, board, inputs, 0, seed=args.seed))
        else:
            results.append(runner.random_round(servers, board, args.circuit, 0, args.seed, inputs))
    except ProtocolAbort as e:
        board.save(args.board)
        print("abort: %s" % e)
        return 2
    finally:
        rows = simulate_network(servers.bus, servers.config)
        if args.metrics:
            benchmod.write_metrics(args.metrics, rows)
    board.save(args.board)
    if args.proof:
        with open(args.proof, "wb") as f:
            f.write(results[-1].proof)
    for res in results:
        print("round %d (%s): proof %d bytes%s" % (
            res.round_no, res.circuit, len(res.proof),
            "".join(", slot %d = %d" % kv for kv in res.public.items())))
    if args.circuit == "logrank":
        chi = results[-1].public[logrank.CHI_SLOT] / (1 << logrank.PRECISION)
        print("chi = %.6f  p = %.3g" % (chi, logrank.chi2_sf(chi)))
    return 0


def cmd_audit(args):
    setup = load_setup(args.setup)
    board = BulletinBoard.load(args.board)
    ok, reasons = audit(board, runner.verifier_keys(board, setup.ck), setup)
    for r in reasons:
        print(r)
    print("ACCEPT" if ok else "REJECT")
    return 0 if ok else 1


def cmd_bench(args):
    sizes = [int(s) for s in args.sizes.split(",")]
    xs = [int(s) for s in args.xs.split(",")]
    rows = benchmod.bench(args.suite, sizes, xs, args.servers, args.threshold, args.comm_servers,
                          args.seed, args.mode, config=_config(args),
                          log=lambda r: print(r["suite"], r["circuit"], "prover %.0f ms" % r["prover_ms"],
                                              "audit %.1f ms" % r["audit_ms"],
                                              "comm %d B" % r["comm_bytes"], flush=True))
    benchmod.write_csv(args.out, rows)
    print("wrote %s" % args.out)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="auditmpc", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--servers", type=int, default=4)
    common.add_argument("--threshold", type=int, default=1)
    common.add_argument("--latency-ms", type=float, default=200.0)
    common.add_argument("--bandwidth-mbps", type=float, default=200.0)
    common.add_argument("--circuit", default="auction")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--setup", default="setup.bin")
    common.add_argument("--board", default="board.jsonl")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("setup", parents=[common], help="trusted setup for a circuit family")
    s.set_defaults(fn=cmd_setup)

    c = sub.add_parser("commit", parents=[common], help="clients post input commitments")
    c.add_argument("--inputs", help="JSON file or inline JSON: auction [[bids]...], logrank [[d1,d2,n1,n2]...], random [x...]")
    c.add_argument("--round", type=int, default=0)
    c.set_defaults(fn=cmd_commit)

    r = sub.add_parser("run", parents=[common], help="servers compute, post outputs and proofs")
    r.add_argument("--inputs")
    r.add_argument("--proof", default="proof.bin")
    r.add_argument("--metrics", default="metrics.csv")
    r.add_argument("--mode", choices=("mpc", "central"), default="mpc")
    r.add_argument("--corrupt", default="", help="comma separated server indices (1-based)")
    r.set_defaults(fn=cmd_run)

    a = sub.add_parser("audit", parents=[common], help="verify every round on a board")
    a.set_defaults(fn=cmd_audit)

    b = sub.add_parser("bench", parents=[common], help="prover / auditor / traffic benchmarks")
    b.add_argument("--suite", choices=("all", "prover", "auditor", "comm"), default="all")
    b.add_argument("--sizes", default="10,12,14", help="log2 m for the prover suite")
    b.add_argument("--xs", default="2,8,32", help="|X| values for the auditor suite")
    b.add_argument("--comm-servers", type=int, default=32)
    b.add_argument("--mode", choices=("mpc", "central"), default="central")
    b.add_argument("--out", default="bench.csv")
    b.set_defaults(fn=cmd_bench)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.fn(args) or 0


if __name__ == "__main__":
    sys.exit(main())
