"""Deterministic indexer: sparse matrices -> committed row/col/val polynomials over K."""

import hashlib
from dataclasses import dataclass, field

from ..algebra import MULT_GEN, Q, EvaluationDomain, g1_to_bytes, inv
from ..polycommit import commit_raw
from .r1cs import IndexError_, PaddedIndex

MATRICES = ("A", "B", "C")
INDEX_POLYS = tuple("%s_%s" % (k, m) for m in MATRICES for k in ("row", "col", "val"))


def required_degree(H, K):
    """Largest committed degree: mask s (2|H|) or the K-sumcheck quotient."""
    return max(2 * H, 6 * K - 6)


@dataclass
class IndexVerifierKey:
    H: int
    K: int
    S: int
    num_statement: int
    max_degree: int
    commitments: dict
    const_commitment: object = None  # g^{l_0(a)} over the statement domain
    digest: bytes = b""

    def bounds(self):
        """Declared degree bounds of the strictly bounded polynomials."""
        return {"g1": self.H - 2, "g2": self.H - 2, "g3": self.K - 2}


@dataclass
class IndexProverKey:
    padded: PaddedIndex
    vk: IndexVerifierKey
    # per matrix: lists over K of row/col/val
    on_k: dict
    coeffs: dict
    coset_evals: dict
    domains: dict = field(default_factory=dict)


def _digest(vk):
    h = hashlib.blake2b(digest_size=32)
    h.update(b"auditmpc-ivk-v1")
    for v in (vk.H, vk.K, vk.S, vk.num_statement, vk.max_degree):
        h.update(v.to_bytes(8, "little"))
    for name in INDEX_POLYS:
        h.update(g1_to_bytes(vk.commitments[name]))
    h.update(g1_to_bytes(vk.const_commitment))
    return h.digest()


def index(r1cs, ck, stmt_size=None):
    """Index a circuit against a committer key.  Pure function of (r1cs, ck)."""
    padded = r1cs if isinstance(r1cs, PaddedIndex) else PaddedIndex(r1cs, stmt_size)
    H, K = padded.H, padded.K
    need = required_degree(H, K)
    if need > ck.max_degree:
        raise IndexError_("circuit needs degree %d, SRS supports %d" % (need, ck.max_degree))
    dH = EvaluationDomain(H)
    dK = EvaluationDomain(K)
    coset = EvaluationDomain(8 * K, MULT_GEN)
    hsq_inv = inv(H * H % Q)
    on_k, coeffs, coset_evals, comms = {}, {}, {}, {}
    for name in MATRICES:
        ent = padded.matrices[name]
        rows = [dH.element(r) for r, _, _ in ent] + [1] * (K - len(ent))
        cols = [dH.element(c) for _, c, _ in ent] + [1] * (K - len(ent))
        # val / (u(r) u(c)) with u(k) = |H| / k
        vals = [v * rr % Q * cc % Q * hsq_inv % Q for (_, _, v), rr, cc in zip(ent, rows, cols)]
        vals += [0] * (K - len(ent))
        on_k[name] = {"row": rows, "col": cols, "val": vals}
        for kind, vec in (("row", rows), ("col", cols), ("val", vals)):
            key = "%s_%s" % (kind, name)
            c = dK.ifft(vec)
            coeffs[key] = c
            coset_evals[key] = coset.fft(c)
            comms[key] = commit_raw(ck, c)
    vk = IndexVerifierKey(H, K, padded.S, padded.num_statement, ck.max_degree, comms)
    # l_0 over the statement domain is (1/S) sum_j X^j
    vk.const_commitment = commit_raw(ck, [inv(padded.S)] * padded.S)
    vk.digest = _digest(vk)
    return IndexProverKey(padded, vk, on_k, coeffs, coset_evals,
                          {"H": dH, "K": dK, "coset": coset, "Hx": EvaluationDomain(padded.S),
                           "H4": EvaluationDomain(4 * H)})


def sparse_lincheck_vectors(ipk, eta, x_vec, y_vec):
    """sum_M eta_M sum_{(r,c)} M[r,c] x_vec[r] y_vec[c], split per column and per row.

    Returns (by_col, by_row): by_col[c] = sum eta M[r,c] x_vec[r],
    by_row[r] = sum eta M[r,c] y_vec[c].  Either input may be None.
    """
    H = ipk.padded.H
    by_col = [0] * H if x_vec is not None else None
    by_row = [0] * H if y_vec is not None else None
    for name, e in zip(MATRICES, eta):
        for r, c, v in ipk.padded.matrices[name]:
            ev = e * v
            if by_col is not None:
                by_col[c] = (by_col[c] + ev * x_vec[r]) % Q
            if by_row is not None:
                by_row[r] = (by_row[r] + ev * y_vec[c]) % Q
    return by_col, by_row

