"""Exact linear algebra and chain complexes over Z, Q and F2."""
from .complex import (ChainComplex, FilteredChainComplex, GradedChainComplex, HomologySummary,
                      InvariantFailure, Reduction, cancel, filtration_grading, homology)
from .linalg import EchelonBasis, kernel, rank
from .ring import RingTag
from .snf import invariant_factors, smith_normal_form, smith_normal_form_dense
from .spectral import SpectralPage, SpectralSequence, spectral_pages
from .sparse import SparseMatrix

__all__ = [
    "ChainComplex", "EchelonBasis", "FilteredChainComplex", "GradedChainComplex", "HomologySummary",
    "InvariantFailure", "Reduction", "RingTag", "SparseMatrix", "SpectralPage", "SpectralSequence",
    "cancel", "filtration_grading", "homology", "invariant_factors", "kernel", "rank",
    "smith_normal_form", "smith_normal_form_dense", "spectral_pages",
]
