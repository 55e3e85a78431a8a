"""Exact-arithmetic verifier for a loop-algebra-to-Yangian homomorphism."""

from .series import KERNEL_IMPLEMENTATION, GradedSeries, ModeSeries, VarContext, rat

__all__ = [
    "GradedSeries",
    "ModeSeries",
    "VarContext",
    "rat",
    "KERNEL_IMPLEMENTATION",
]
