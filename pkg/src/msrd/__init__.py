"""Constructions of maximum sum-rank distance (MSRD) codes with exhaustive verification."""

from msrd.gf import FieldElement, FieldTower
from msrd.kernels import BACKEND
from msrd.sumrank import BlockProfile, LengthPartition, MatrixTuple

__all__ = ["BACKEND", "BlockProfile", "FieldElement", "FieldTower", "LengthPartition", "MatrixTuple"]
__version__ = "0.1.0"
