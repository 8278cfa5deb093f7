"""Applications built on the circuit builder: auction, logrank, random circuits."""
