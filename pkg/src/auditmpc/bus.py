"""Round-synchronous broadcast channel between the MPC servers.

Every value a server reveals goes through ``Bus``; this is where traffic is
metered and where corrupted servers get to lie.  Messages are point-to-point
copies of one payload to each of the other n-1 servers.
"""

import random
from collections import OrderedDict
from contextlib import contextmanager
from dataclasses import dataclass, field

from .algebra import FQ_BYTES, G1_BYTES, G2_BYTES, Q, g1_mul, g1_gen


class ProtocolAbort(Exception):
    """Raised when a server-side check fails; the run stops with no proof."""


@dataclass
class RoundMetrics:
    round: str
    g1: int = 0
    g2: int = 0
    fq: int = 0
    bytes: int = 0
    messages: int = 0
    # largest payload any single server pushed this round (for timing)
    max_sender_bytes: int = 0
    sender_bytes: dict = field(default_factory=dict)

    def as_row(self):
        return {"round": self.round, "g1": self.g1, "g2": self.g2, "fq": self.fq,
                "bytes": self.bytes}


SIZES = {"g1": G1_BYTES, "g2": G2_BYTES, "fq": FQ_BYTES}


class Bus:
    """Shared message bus for n servers, t of which may be corrupted.

    ``corrupt`` lists 1-based server indices whose every broadcast is replaced
    by garbage of the right type.
    """

    def __init__(self, n, t, corrupt=(), seed=0):
        self.n = n
        self.t = t
        self.corrupt = set(corrupt)
        self.rng = random.Random(("bus", seed).__repr__())
        self.metrics = OrderedDict()
        self.log = []
        self.current = "setup"
        # parties caught sending inconsistent data; decoders try without them first
        self.suspects = set()

    @contextmanager
    def round(self, name):
        prev = self.current
        self.current = name
        self.metrics.setdefault(name, RoundMetrics(name))
        try:
            yield self
        finally:
            self.current = prev

    def _meter(self, kind, op, count):
        m = self.metrics.setdefault(self.current, RoundMetrics(self.current))
        setattr(m, kind, getattr(m, kind) + count)
        per_sender = count * SIZES[kind] * (self.n - 1)
        total = per_sender * self.n
        m.bytes += total
        m.messages += self.n * (self.n - 1)
        for i in range(1, self.n + 1):
            m.sender_bytes[i] = m.sender_bytes.get(i, 0) + per_sender
        m.max_sender_bytes = max(m.sender_bytes.values())
        self.log.append((self.current, op, kind, count, total))

    def broadcast_fq(self, per_party, op="open"):
        """per_party[i] is server i+1's list of field elements."""
        k = len(per_party[0])
        self._meter("fq", op, k)
        if not self.corrupt:
            return per_party
        out = list(per_party)
        for i in self.corrupt:
            out[i - 1] = [self.rng.randrange(Q) for _ in range(k)]
        return out

    def broadcast_g1(self, per_party, op="commit"):
        k = len(per_party[0])
        self._meter("g1", op, k)
        if not self.corrupt:
            return per_party
        out = list(per_party)
        for i in self.corrupt:
            out[i - 1] = [g1_mul(g1_gen(), self.rng.randrange(1, Q)) for _ in range(k)]
        return out

    def total_bytes(self, rounds=None):
        return sum(m.bytes for name, m in self.metrics.items() if rounds is None or name in rounds)
