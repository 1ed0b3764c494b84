"""
Displaced squeezed cat states from photon-addition/displacement circuits.

Submodules
----------
fock       truncated Fock-space operators and states
states     coherent states, rotated cats, displaced-number-state expansions
circuit    photon-addition chains, Hadamard-gate pipeline, dark-count noise
optimizer  fidelity objective and multi-start simplex search
tables     reproduction of the published optimum tables
wigner     closed-form and numeric Wigner functions, grids, marginals
verify     identity self-check suite
cli        command-line entry point
"""

__version__ = "0.1.0"

from .fock import DimensionError, StateVector, TruncationError, TruncationWarning
from .states import EVEN, ODD, HalfFinished, TargetCat

__all__ = [
    "DimensionError",
    "StateVector",
    "TruncationError",
    "TruncationWarning",
    "EVEN",
    "ODD",
    "HalfFinished",
    "TargetCat",
    "__version__",
]
