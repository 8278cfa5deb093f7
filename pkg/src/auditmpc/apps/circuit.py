"""One gadget interface, two outputs: runtime values and R1CS constraints.

A ``Builder`` executes on a runtime (plain integers or Shamir shares) and at
the same time records every constraint, so the MPC trace is the witness.
"""

from ..algebra import Q
from ..bus import ProtocolAbort
from ..mpc_pc import open_scalars
from ..sharing import DecodeError, ProtocolError, beaver_mul_rows
from ..snark.r1cs import R1csIndex

STAT_SECURITY = 40


class PlainRuntime:
    n = 1

    def const(self, c):
        return c % Q

    def add(self, a, b):
        return (a + b) % Q

    def scale(self, a, k):
        return a * k % Q

    def mul(self, a, b):
        return a * b % Q

    def open(self, a):
        return a % Q

    def bits(self, a, L):
        a %= Q
        if a >> L:
            raise ValueError("value does not fit in %d bits" % L)
        return [(a >> i) & 1 for i in range(L)]

    def divround(self, N, Dv, W, Lq):
        return (N % Q) // (Dv % Q)

    def rows(self, values):
        return [list(values)]


class SharedRuntime:
    """Values are lists of n shares; products use dealer triples over the bus."""

    def __init__(self, bus, dealer):
        self.bus = bus
        self.dealer = dealer
        self.n = bus.n

    def const(self, c):
        return [c % Q] * self.n

    def add(self, a, b):
        return [(x + y) % Q for x, y in zip(a, b)]

    def scale(self, a, k):
        return [x * k % Q for x in a]

    def mul(self, a, b):
        tr = self.dealer.triples(1)
        try:
            rows = beaver_mul_rows([[x] for x in a], [[y] for y in b], tr, self.bus)
        except (DecodeError, ProtocolError) as e:
            raise ProtocolAbort("multiplication failed: %s" % e)
        return [r[0] for r in rows]

    def open(self, a):
        return open_scalars([[x] for x in a], self.bus, "output")[0]

    def bits(self, a, L):
        """Bit decomposition of a shared value known to lie in [0, 2^L)."""
        width = L + STAT_SECURITY
        rbits = self.dealer.random_bit_rows(width)
        r = [sum(row[i] << i for i in range(width)) % Q for row in rbits]
        c = open_scalars([[(x + y) % Q] for x, y in zip(a, r)], self.bus, "mask")[0]
        out = []
        borrow = [0] * self.n
        for i in range(L):
            ri = [row[i] for row in rbits]
            t = self.mul(ri, borrow) if i else [0] * self.n
            xor = [(p + q - 2 * s) % Q for p, q, s in zip(ri, borrow, t)]
            if (c >> i) & 1:
                out.append([(1 - x) % Q for x in xor])
                borrow = t
            else:
                out.append(xor)
                borrow = [(p + q - s) % Q for p, q, s in zip(ri, borrow, t)]
        return out

    def geq(self, a, b, W):
        """Share of [a >= b] for a, b in [0, 2^W)."""
        d = [(x - y + (1 << W)) % Q for x, y in zip(a, b)]
        return self.bits(d, W + 1)[W]

    def divround(self, N, Dv, W, Lq):
        """floor(N / Dv) by shared long division (MPC only; the result is constrained later)."""
        rem = list(N)
        q = [0] * self.n
        for j in range(Lq - 1, -1, -1):
            sub = [x * (1 << j) % Q for x in Dv]
            ge = self.geq(rem, sub, W)
            rem = [(r - p) % Q for r, p in zip(rem, self.mul(ge, sub))]
            q = [(a + g * (1 << j)) % Q for a, g in zip(q, ge)]
        return q

    def rows(self, values):
        return [[v[i] for v in values] for i in range(self.n)]


class Wire:
    """A linear combination of variables together with its runtime value."""
    __slots__ = ("b", "lc", "val")

    def __init__(self, b, lc, val):
        self.b, self.lc, self.val = b, lc, val

    def _other(self, o):
        if isinstance(o, Wire):
            return o
        return self.b.const(o)

    def __add__(self, o):
        o = self._other(o)
        lc = dict(self.lc)
        for k, v in o.lc.items():
            lc[k] = (lc.get(k, 0) + v) % Q
        return Wire(self.b, {k: v for k, v in lc.items() if v}, self.b.rt.add(self.val, o.val))

    __radd__ = __add__

    def __neg__(self):
        return self * (Q - 1)

    def __sub__(self, o):
        return self + (-self._other(o))

    def __rsub__(self, o):
        return self._other(o) - self

    def __mul__(self, k):
        if isinstance(k, Wire):
            return self.b.mul(self, k)
        k %= Q
        return Wire(self.b, {v: c * k % Q for v, c in self.lc.items() if c * k % Q},
                    self.b.rt.scale(self.val, k))

    __rmul__ = __mul__


class Builder:
    def __init__(self, rt, num_statement):
        self.rt = rt
        self.num_statement = num_statement
        self.values = [rt.const(1)] + [rt.const(0)] * num_statement
        self.A, self.B, self.C = [], [], []

    def const(self, c):
        return Wire(self, {0: c % Q} if c % Q else {}, self.rt.const(c))

    def zero(self):
        return self.const(0)

    def stmt(self, i):
        """Statement variable i (1-based); its value is set with ``set_stmt``."""
        return Wire(self, {i: 1}, self.values[i])

    def set_stmt(self, i, val):
        self.values[i] = val
        return self.stmt(i)

    def witness(self, val):
        self.values.append(val)
        return Wire(self, {len(self.values) - 1: 1}, val)

    def enforce(self, a, b, c):
        lc = lambda w: dict(w.lc) if isinstance(w, Wire) else ({0: w % Q} if w % Q else {})
        self.A.append(lc(a))
        self.B.append(lc(b))
        self.C.append(lc(c))

    def mul(self, a, b):
        out = self.witness(self.rt.mul(a.val, b.val))
        self.enforce(a, b, out)
        return out

    def bits(self, a, L, pack="A"):
        """L boolean witnesses with sum 2^i b_i = a (packing sum on side ``pack``)."""
        bv = self.rt.bits(a.val, L)
        ws = [self.witness(v) for v in bv]
        for w in ws:
            self.enforce(w, w, w)
        acc = self.zero()
        for i, w in enumerate(ws):
            acc = acc + w * (1 << i)
        if pack == "A":
            self.enforce(acc, 1, a)
        else:
            self.enforce(a, 1, acc)
        return ws

    def open(self, w):
        return self.rt.open(w.val)

    @property
    def num_constraints(self):
        return len(self.A)

    def compile(self):
        return R1csIndex(len(self.values), self.num_statement, self.A, self.B, self.C)

    def assignment_rows(self):
        """Full assignment as runtime rows: one list (plain) or one per server."""
        return self.rt.rows(self.values)
