"""Prover backends.

A secret value is a list of *views*: one plain vector for the centralized
prover, or one share vector per server for the MPC prover.  Linear steps are
applied view by view (a public constant c is a valid Shamir sharing of c, so
public terms are added to every view).  The backend supplies the only
non-linear or revealing steps: products, commitments, evaluations, openings.
"""

from contextlib import nullcontext

from ..algebra import Q, divide_by_linear, poly_eval
from ..bus import ProtocolAbort
from ..mpc_pc import eval_many_mpc, pc_commit_mpc, pc_open_mpc, shared_from_rows
from ..polycommit import commit_raw
from ..sharing import DecodeError, ProtocolError, beaver_mul_rows


class Secret:
    __slots__ = ("views",)

    def __init__(self, views):
        self.views = views

    def map(self, fn):
        return Secret([fn(v) for v in self.views])

    @staticmethod
    def combine(fn, *secrets):
        return Secret([fn(*vs) for vs in zip(*(s.views for s in secrets))])

    def add_public(self, vec):
        def f(v):
            n = max(len(v), len(vec))
            a = list(v) + [0] * (n - len(v))
            for i, x in enumerate(vec):
                a[i] = (a[i] + x) % Q
            return a
        return self.map(f)


def lincomb_vecs(vecs, scalars):
    n = max(len(v) for v in vecs)
    out = [0] * n
    for v, s in zip(vecs, scalars):
        if s == 0:
            continue
        if s == 1:
            for i, x in enumerate(v):
                out[i] += x
        else:
            for i, x in enumerate(v):
                out[i] += s * x
    return [x % Q for x in out]


def lincomb(secrets, scalars):
    return Secret.combine(lambda *vs: lincomb_vecs(vs, scalars), *secrets)


class CentralBackend:
    mode = "central"
    n_views = 1

    def round(self, name):
        return nullcontext()

    def share(self, values):
        return Secret([list(values)])

    def mul(self, a, b):
        return Secret([[x * y % Q for x, y in zip(a.views[0], b.views[0])]])

    def commit(self, ck, coeffs, hiding=None, shift=0):
        return commit_raw(ck, coeffs.views[0], hiding.views[0] if hiding else None, shift)

    def evaluate(self, secrets, beta):
        return [poly_eval(s.views[0], beta) for s in secrets]

    def open(self, ck, coeffs, hiding, q, v):
        wq = divide_by_linear(coeffs.views[0], q)
        wh = divide_by_linear(hiding.views[0], q) if hiding else []
        vbar = poly_eval(hiding.views[0], q) if hiding else 0
        return commit_raw(ck, wq, wh), vbar


class MpcBackend:
    """Servers holding Shamir shares; every reveal goes through the bus."""
    mode = "mpc"

    def __init__(self, bus, dealer):
        self.bus = bus
        self.dealer = dealer
        self.n_views = bus.n

    def round(self, name):
        return self.bus.round(name)

    def share(self, values):
        return Secret(self.dealer.share_rows(list(values)))

    def share_rows(self, rows):
        return Secret(rows)

    def mul(self, a, b):
        m = len(a.views[0])
        triple = self.dealer.triples(m)
        try:
            return Secret(beaver_mul_rows(a.views, b.views, triple, self.bus))
        except (DecodeError, ProtocolError) as e:
            raise ProtocolAbort("multiplication failed: %s" % e)

    def commit(self, ck, coeffs, hiding=None, shift=0):
        parties = shared_from_rows(coeffs.views, hiding.views if hiding else None)
        return pc_commit_mpc(ck, parties, self.bus, shift).c

    def evaluate(self, secrets, beta):
        lists = [shared_from_rows(s.views) for s in secrets]
        return eval_many_mpc(lists, beta, self.bus)

    def open(self, ck, coeffs, hiding, q, v):
        parties = shared_from_rows(coeffs.views, hiding.views if hiding else None)
        _, proof = pc_open_mpc(ck, parties, q, self.bus, v=v)
        return proof.w, proof.v_bar
