"""Determinants of banded Toeplitz matrices in time logarithmic in n."""

from .bandspec import BandSpec, BandSpecError, dense, transpose, validate
from .companion import build as build_companion, charpoly, shift_lambda
from .detengine import DetResult, Path, det, det_shifted, small_det
from .matpow import OpCounter, Strategy
from .scalar import FLOAT, RATIONAL, PrimeField, ScaledValue

__all__ = [
    "BandSpec",
    "BandSpecError",
    "DetResult",
    "FLOAT",
    "OpCounter",
    "Path",
    "PrimeField",
    "RATIONAL",
    "ScaledValue",
    "Strategy",
    "build_companion",
    "charpoly",
    "dense",
    "det",
    "det_shifted",
    "shift_lambda",
    "small_det",
    "transpose",
    "validate",
]
