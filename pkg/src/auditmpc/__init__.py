"""Auditable multiparty computation over BLS12-381.

Servers compute on Shamir shares of committed client inputs and jointly
produce a succinct proof that the posted outputs are correct; anyone can
audit the bulletin board with the verifier key alone.
"""

from .protocol import (AuditReject, BulletinBoard, Client, NetworkConfig, Servers, audit,
                       load_setup, run_setup, save_setup, simulate_network)

__version__ = "0.1.0"

__all__ = ["AuditReject", "BulletinBoard", "Client", "NetworkConfig", "Servers", "audit",
           "load_setup", "run_setup", "save_setup", "simulate_network"]
