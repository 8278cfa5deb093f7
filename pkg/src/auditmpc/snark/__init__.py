"""Adaptive preprocessing argument over committed statements."""

from .backend import CentralBackend, MpcBackend, Secret
from .indexer import IndexProverKey, IndexVerifierKey, index, required_degree
from .proof import PROOF_BYTES, AdaptiveProof
from .prover import RandomTape, prove_adaptive
from .r1cs import PaddedIndex, R1csIndex
from .transcript import Transcript
from .verifier import verify_adaptive

__all__ = ["AdaptiveProof", "CentralBackend", "IndexProverKey", "IndexVerifierKey", "MpcBackend",
           "PROOF_BYTES", "PaddedIndex", "R1csIndex", "RandomTape", "Secret", "Transcript",
           "index", "prove_adaptive", "required_degree", "verify_adaptive"]
