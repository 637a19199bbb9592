"""Exact interaction groups for shift actions of N^k and their minimal dilations."""

__version__ = "0.1.0"

from .lattice import LatticeElement, ball, decompose, join
from .cylinder import CylinderFunction, ShiftSystem
from .cocycle import Cocycle, extend
from .interaction import InteractionSystem, expectation, transfer, v_apply
from .dilation import DilationElement, beta_apply, big_expectation, embed, fiber_measure
from .kernels import FiniteKernel
from .report import VerificationReport

__all__ = [
    "LatticeElement", "ball", "decompose", "join",
    "CylinderFunction", "ShiftSystem",
    "Cocycle", "extend",
    "InteractionSystem", "expectation", "transfer", "v_apply",
    "DilationElement", "beta_apply", "big_expectation", "embed", "fiber_measure",
    "FiniteKernel", "VerificationReport",
]
