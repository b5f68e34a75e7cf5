"""Saturation functions of forbidden 0-1 matrices."""

from .classify import CensusReport, ClassWitness, census, is_ordinary, reduces_to_class, sample_fraction
from .construct import (
    SaturationCertificate,
    SaturationFailure,
    build_tp,
    greedy_saturate,
    pad_middle,
    section_layout,
    verify_saturating,
)
from .core import Embedding, Matrix01, PermutationMatrix, Transform, apply_transform, contains, find_embedding, flip_creates, orbit
from .oracle import SatResult, enumerate_maximal_avoiding, ex_exact, sat_exact, sat_upper_random, verify_lift_lemma

__all__ = [
    "CensusReport",
    "ClassWitness",
    "Embedding",
    "Matrix01",
    "PermutationMatrix",
    "SatResult",
    "SaturationCertificate",
    "SaturationFailure",
    "Transform",
    "apply_transform",
    "build_tp",
    "census",
    "contains",
    "enumerate_maximal_avoiding",
    "ex_exact",
    "find_embedding",
    "flip_creates",
    "greedy_saturate",
    "is_ordinary",
    "orbit",
    "pad_middle",
    "reduces_to_class",
    "sample_fraction",
    "sat_exact",
    "sat_upper_random",
    "section_layout",
    "verify_lift_lemma",
    "verify_saturating",
]
