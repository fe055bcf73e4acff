"""Exact BV algebra computations on loop homology of HP^n, OP^2 and even spheres."""

from .bv import BVTable, assemble_delta, bracket, delta, theorem_table
from .linalg import AbelianGroup, homology_at, smith_normal_form
from .report import VerificationReport
from .ring import Element, GradedPresentation, build_presentation
from .spaces import SpaceSpec, UnsupportedSpaceError
from .tables import RingTable
from .verify import run_suite

__all__ = [
    "AbelianGroup",
    "BVTable",
    "Element",
    "GradedPresentation",
    "RingTable",
    "SpaceSpec",
    "UnsupportedSpaceError",
    "VerificationReport",
    "assemble_delta",
    "bracket",
    "build_presentation",
    "delta",
    "homology_at",
    "run_suite",
    "smith_normal_form",
    "theorem_table",
]
