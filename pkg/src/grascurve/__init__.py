"""Exact computations with lines, conics and twisted cubics on linear sections of Gr(2,5)."""

from .binform import BinForm, PolyMat, SplittingType, graded_kernel_splitting, minimal_basis, split_cohomology
from .curves import CurveFamily, curve_axis, curve_classify, curve_envelope, curve_in_section, curve_vertex
from .errors import GrascurveError
from .exact import GF, QQ, Mat, Subspace
from .grassmann import PlueckerVector, SkewForm, pluecker_embed, schubert_table
from .sections import SectionModel, section_preset

__version__ = "0.1.0"

__all__ = [
    "BinForm", "PolyMat", "SplittingType", "graded_kernel_splitting", "minimal_basis", "split_cohomology",
    "CurveFamily", "curve_axis", "curve_classify", "curve_envelope", "curve_in_section", "curve_vertex",
    "GrascurveError", "GF", "QQ", "Mat", "Subspace", "PlueckerVector", "SkewForm", "pluecker_embed",
    "schubert_table", "SectionModel", "section_preset",
]
