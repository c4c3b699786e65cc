"""Phonon-dressed polaritons: cavity QED + ultrastrong vibrational coupling.

Simulates a driven hybrid system of a lossy cavity mode, a molecular
two-level exciton and a vibrational mode, using either the standard
Lindblad master equation or a generalized (dressed-state, non-secular)
master equation with structured baths.  Provides eigenstructure sweeps,
steady states, cavity emission spectra and populations versus laser
detuning, all at desk scale (dense linear algebra, dims <~ 200).

Units: hbar = 1, energies in meV, temperatures in Kelvin
(k_B = 0.0861733 meV/K), time in hbar/meV.
"""

from .hilbert import HilbertDims
from .model import SystemParams, OptomechParams
from .baths import BathParams, OhmicBath, DephasingBath

__all__ = [
    "HilbertDims",
    "SystemParams",
    "OptomechParams",
    "BathParams",
    "OhmicBath",
    "DephasingBath",
]

__version__ = "0.1.0"
