"""Random satisfiable R1CS: each constraint multiplies two small linear combinations."""

import random

from ..algebra import next_pow2
from .circuit import Builder


def parse_random_id(circuit_id):
    """'random:<m>:<x>[:<structure seed>]' -> (m, x, seed)."""
    parts = circuit_id.split(":")
    if parts[0] != "random" or len(parts) not in (3, 4):
        raise ValueError("expected random:<m>:<x>[:<seed>], got %r" % circuit_id)
    m, x = int(parts[1]), int(parts[2])
    seed = int(parts[3]) if len(parts) == 4 else 0
    if m < 1 or x < 1:
        raise ValueError("need m >= 1 and x >= 1")
    return m, x, seed


def stmt_domain(x):
    return next_pow2(x + 2)


def random_circuit(rt, m, x, inputs, structure_seed=0):
    """Statement slots 1..x hold the inputs; m product constraints over earlier wires."""
    srng = random.Random(repr(("structure", m, x, structure_seed)))
    b = Builder(rt, x)
    wires = [b.const(1)]
    for i in range(x):
        wires.append(b.set_stmt(i + 1, inputs[i]))

    def lc():
        k = srng.randint(1, 2)
        acc = None
        for _ in range(k):
            w = wires[srng.randrange(len(wires))] * srng.randrange(1, 1 << 16)
            acc = w if acc is None else acc + w
        return acc

    for _ in range(m):
        wires.append(b.mul(lc(), lc()))
    return b
