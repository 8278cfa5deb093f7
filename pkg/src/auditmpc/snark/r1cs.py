"""Rank-1 constraint systems and their padded, H-positioned form.

Variable 0 is the constant 1, variables 1..num_statement are the statement
and the rest are witness.  Rows are sparse dicts {var: coeff}.
"""

from dataclasses import dataclass

from ..algebra import Q, next_pow2


class IndexError_(ValueError):
    pass


@dataclass
class R1csIndex:
    num_vars: int
    num_statement: int
    A: list
    B: list
    C: list
    field_id: str = "bls12-381/fr"

    @property
    def num_constraints(self):
        return len(self.A)

    def nnz(self):
        return max(sum(len(r) for r in M) for M in (self.A, self.B, self.C))

    def products(self, z):
        def dot(row):
            return sum(c * z[v] for v, c in row.items()) % Q
        return ([dot(r) for r in self.A], [dot(r) for r in self.B], [dot(r) for r in self.C])

    def is_satisfied(self, z):
        a, b, c = self.products(z)
        return all(x * y % Q == w for x, y, w in zip(a, b, c))

    def first_unsatisfied(self, z):
        a, b, c = self.products(z)
        for i, (x, y, w) in enumerate(zip(a, b, c)):
            if x * y % Q != w:
                return i
        return None


class PaddedIndex:
    """R1CS plus one free statement variable (the pad) and a dummy constraint.

    The statement lives on a subgroup of size S inside H: slot s sits at
    H-position s*|H|/S.  Slot 0 is the constant, slots 1..num_statement the
    statement, slot S-1 the pad.  Witness variables take the remaining
    H-positions in order.
    """

    def __init__(self, index, stmt_size=None):
        nx = index.num_statement
        S = stmt_size or next_pow2(nx + 2)
        if nx + 2 > S:
            raise IndexError_("statement of %d values does not fit a domain of %d slots" % (nx, S))
        self.index = index
        self.S = S
        self.pad_var = index.num_vars
        self.num_vars = index.num_vars + 1
        dummy = ({self.pad_var: 1}, {}, {})
        self.A = list(index.A) + [dummy[0]]
        self.B = list(index.B) + [dummy[1]]
        self.C = list(index.C) + [dummy[2]]
        self.m = len(self.A)
        nw = index.num_vars - 1 - nx
        self.H = next_pow2(max(self.m, nw + S, S))
        stride = self.H // S
        self.stride = stride
        slot_of = {0: 0, self.pad_var: S - 1}
        for v in range(1, nx + 1):
            slot_of[v] = v
        self.slot_of = slot_of
        pos = [0] * self.num_vars
        for v, s in slot_of.items():
            pos[v] = s * stride
        free = (h for h in range(self.H) if h % stride != 0)
        for v in range(nx + 1, index.num_vars):
            pos[v] = next(free)
        self.pos = pos
        self.matrices = {}
        for name, M in (("A", self.A), ("B", self.B), ("C", self.C)):
            entries = []
            for r, row in enumerate(M):
                for v, c in row.items():
                    if c % Q:
                        entries.append((r, pos[v], c % Q))
            self.matrices[name] = entries
        self.K = next_pow2(max(max(len(e) for e in self.matrices.values()), 1))

    @property
    def num_statement(self):
        return self.index.num_statement

    def z_on_h(self, z, pad):
        """Full assignment (without pad) -> vector indexed by H-position."""
        out = [0] * self.H
        for v, val in enumerate(z):
            out[self.pos[v]] = val % Q
        out[self.pos[self.pad_var]] = pad % Q
        return out

    def statement_vector(self, x, pad):
        """x' over the S statement slots."""
        out = [0] * self.S
        out[0] = 1
        for i, v in enumerate(x):
            out[i + 1] = v % Q
        out[self.S - 1] = pad % Q
        return out

    def mat_vec(self, name, zh):
        out = [0] * self.H
        for r, c, v in self.matrices[name]:
            out[r] = (out[r] + v * zh[c]) % Q
        return out
