"""Benchmark harness: prover and auditor cost on random circuits, plus traffic per server count."""

import csv
import random
import statistics
import time

from ..protocol import (BulletinBoard, NetworkConfig, Servers, audit, prover_comm_bytes,
                        run_setup, simulate_network, snark_comm_bytes)
from . import runner

COLUMNS = ["suite", "circuit", "m", "x", "n", "t", "constraints", "prover_ms",
           "ms_per_constraint", "audit_ms", "proof_bytes", "comm_bytes", "snark_bytes", "sim_ms"]


def _one(circuit_id, n, t, seed, mode, setup=None, config=None, audit_reps=5):
    D, S = runner.degree_for(circuit_id)
    if setup is None or setup.ck.max_degree < D or setup.S != S or setup.n != n:
        setup = run_setup(D, S, n, t, random.Random(seed))
    config = config or NetworkConfig(n, t)
    servers = Servers(setup, config, seed=seed, mode=mode)
    board = BulletinBoard()
    r1, _ = runner.structure(circuit_id)
    # index outside the timed region: the indexer runs once per circuit
    servers.index_for(circuit_id, r1)
    t0 = time.perf_counter()
    res = runner.random_round(servers, board, circuit_id, 0, seed)
    prover_ms = (time.perf_counter() - t0) * 1e3
    ivks = {circuit_id: servers.indices[circuit_id].vk}
    times = []
    for _ in range(audit_reps):
        t0 = time.perf_counter()
        ok, reasons = audit(board, ivks, setup)
        times.append((time.perf_counter() - t0) * 1e3)
    audit_ms = statistics.median(times)
    if not ok:
        raise RuntimeError("benchmark round failed audit: %s" % reasons)
    m = len(r1.A)
    sim = sum(r["sim_ms"] for r in simulate_network(servers.bus, config))
    row = {"circuit": circuit_id, "m": m, "x": r1.num_statement, "n": n, "t": t,
           "constraints": m, "prover_ms": round(prover_ms, 1),
           "ms_per_constraint": round(prover_ms / m, 4), "audit_ms": round(audit_ms, 2),
           "proof_bytes": len(res.proof), "comm_bytes": prover_comm_bytes(servers.bus),
           "snark_bytes": snark_comm_bytes(servers.bus),
           "sim_ms": round(sim, 1)}
    return row, setup


def bench(suite="all", sizes=(10, 12, 14), xs=(2, 8, 32), n=4, t=1, comm_n=32, seed=0,
          mode="central", fixed_x=8, fixed_log_m=10, config=None, log=None):
    """Rows for the requested suites.

    prover   m = 2^k for k in sizes at |X| = fixed_x
    auditor  |X| in xs at m = 2^fixed_log_m
    comm     one MPC run with comm_n servers (traffic does not depend on m)
    """
    rows = []
    suites = ("prover", "auditor", "comm") if suite == "all" else (suite,)
    setup = None
    if "prover" in suites:
        big = "random:%d:%d" % (1 << max(sizes), fixed_x)
        setup = run_setup(runner.degree_for(big)[0], runner.degree_for(big)[1], n, t,
                          random.Random(seed))
        for k in sizes:
            row, setup = _one("random:%d:%d" % (1 << k, fixed_x), n, t, seed, mode, setup, config)
            row["suite"] = "prover"
            rows.append(row)
            if log:
                log(row)
    if "auditor" in suites:
        for x in xs:
            row, _ = _one("random:%d:%d" % (1 << fixed_log_m, x), n, t, seed, mode, None, config)
            row["suite"] = "auditor"
            rows.append(row)
            if log:
                log(row)
    if "comm" in suites:
        ct = (comm_n - 1) // 3
        cfg = NetworkConfig(comm_n, ct, *(config.latency_ms, config.bandwidth_mbps) if config else ())
        row, _ = _one("random:%d:%d" % (1 << 6, fixed_x), comm_n, ct, seed, "mpc", None, cfg)
        row["suite"] = "comm"
        rows.append(row)
        if log:
            log(row)
    return rows


def write_csv(path, rows, columns=COLUMNS):
    with open(path, "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=columns, extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow(r)


METRIC_COLUMNS = ["round", "g1", "g2", "fq", "bytes", "sim_ms"]


def write_metrics(path, rows):
    write_csv(path, rows, METRIC_COLUMNS)
