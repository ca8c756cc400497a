"""prulab: desk-scale numerics around pseudorandom unitaries.

Subpackages cover Haar/Clifford sampling, the sqrt(d)-query collision
distinguisher, unitary-design moment operators, epsilon-net coverage,
diagonal-oracle truncation, channel tomography, and closed-form
cardinality/entropy bound calculators, all with brute-force test oracles.
"""

from prulab.linalg import RandomSeed, diamond_distance_unitaries, haar_unitary

__all__ = ["RandomSeed", "diamond_distance_unitaries", "haar_unitary"]
__version__ = "0.1.0"
