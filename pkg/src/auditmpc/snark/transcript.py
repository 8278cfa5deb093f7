"""Fiat-Shamir transcript: blake2b sponge with length-prefixed, labelled absorbs."""

import hashlib

from ..algebra import Q, fq_to_bytes, g1_to_bytes


class Transcript:
    def __init__(self, label=b"auditmpc-adaptive-v1"):
        self._h = hashlib.blake2b(digest_size=64)
        self.log = []
        self.absorb(b"init", label)

    def absorb(self, label, data):
        self.log.append((label, len(data)))
        for part in (label, data):
            self._h.update(len(part).to_bytes(8, "little"))
            self._h.update(part)

    def absorb_g1(self, label, *points):
        self.absorb(label, b"".join(g1_to_bytes(p) for p in points))

    def absorb_fq(self, label, *xs):
        self.absorb(label, b"".join(fq_to_bytes(x) for x in xs))

    def challenge(self, label):
        ctr = 0
        while True:
            h = self._h.copy()
            h.update(label + ctr.to_bytes(4, "little"))
            c = int.from_bytes(h.digest(), "little") % Q
            if c:
                break
            ctr += 1
        self.absorb(b"challenge:" + label, fq_to_bytes(c))
        return c

    def challenge_outside(self, label, domain_size):
        """Challenge c with c^domain_size != 1, i.e. outside that subgroup (and its subgroups)."""
        ctr = 0
        while True:
            c = self.challenge(label + b"/" + str(ctr).encode())
            if pow(c, domain_size, Q) != 1:
                return c
            ctr += 1
