"""AdaptiveProof and its fixed-layout serialization (17 G1 + 23 scalars)."""

from dataclasses import dataclass, fields

from ..algebra import FQ_BYTES, G1_BYTES, fq_from_bytes, fq_to_bytes, g1_from_bytes, g1_to_bytes
from .indexer import INDEX_POLYS

G1_FIELDS = ("c_pad", "w", "z_a", "z_b", "s", "g1", "g1_shift", "h1",
             "g2", "g2_shift", "h2", "g3", "g3_shift", "h3",
             "w_beta1", "w_beta2", "w_beta3")
EVALS_B1 = ("w", "z_a", "z_b", "s", "g1", "h1")
EVALS_B3 = ("g3", "h3") + INDEX_POLYS
FQ_FIELDS = (("sigma2", "sigma3", "v")
             + tuple("e1_" + k for k in EVALS_B1)
             + ("e2_g2", "e2_h2")
             + tuple("e3_" + k for k in EVALS_B3)
             + ("v_bar",))

PROOF_BYTES = len(G1_FIELDS) * G1_BYTES + len(FQ_FIELDS) * FQ_BYTES


@dataclass
class AdaptiveProof:
    c_pad: object
    w: object
    z_a: object
    z_b: object
    s: object
    g1: object
    g1_shift: object
    h1: object
    g2: object
    g2_shift: object
    h2: object
    g3: object
    g3_shift: object
    h3: object
    w_beta1: object
    w_beta2: object
    w_beta3: object
    sigma2: int
    sigma3: int
    v: int
    e1_w: int
    e1_z_a: int
    e1_z_b: int
    e1_s: int
    e1_g1: int
    e1_h1: int
    e2_g2: int
    e2_h2: int
    e3_g3: int
    e3_h3: int
    e3_row_A: int
    e3_col_A: int
    e3_val_A: int
    e3_row_B: int
    e3_col_B: int
    e3_val_B: int
    e3_row_C: int
    e3_col_C: int
    e3_val_C: int
    v_bar: int

    def to_bytes(self):
        out = [g1_to_bytes(getattr(self, f)) for f in G1_FIELDS]
        out += [fq_to_bytes(getattr(self, f)) for f in FQ_FIELDS]
        return b"".join(out)

    @classmethod
    def from_bytes(cls, data):
        if len(data) != PROOF_BYTES:
            raise ValueError("proof must be %d bytes, got %d" % (PROOF_BYTES, len(data)))
        kw = {}
        off = 0
        for f in G1_FIELDS:
            kw[f] = g1_from_bytes(data[off:off + G1_BYTES])
            off += G1_BYTES
        for f in FQ_FIELDS:
            kw[f] = fq_from_bytes(data[off:off + FQ_BYTES])
            off += FQ_BYTES
        return cls(**kw)

    def element_counts(self):
        return len(G1_FIELDS), len(FQ_FIELDS)


assert {f.name for f in fields(AdaptiveProof)} == set(G1_FIELDS) | set(FQ_FIELDS)
