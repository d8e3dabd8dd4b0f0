"""Quaternionic Möbius transformations and the modular groups PSL(2, 𝔏) and PSL(2, ℌ)."""

from .moebius import INF, GroupElement, QMatrix, apply, compose, dieudonne
from .quat import Quaternion, QuaternionF, parse_quaternion

__all__ = [
    "INF",
    "GroupElement",
    "QMatrix",
    "Quaternion",
    "QuaternionF",
    "apply",
    "compose",
    "dieudonne",
    "parse_quaternion",
]

__version__ = "0.1.0"
