"""Symbolic calculus and decision engine for partial orders."""
from __future__ import annotations

from .attrs import AttrReport, HierInfo, attrs, hierarchy_info, rho_surrogate
from .condense import condense, condense_finite, condense_H, hausdorff_rank
from .densegen import StageOrder, back_and_forth, check_star, saturate
from .dsl import parse, to_text
from .finposet import FinPoset
from .ordinal import CnfOrdinal
from .sampler import compare, sample_restriction

__version__ = "0.1.0"

__all__ = [
    "AttrReport", "CnfOrdinal", "FinPoset", "HierInfo", "StageOrder", "attrs", "back_and_forth",
    "check_star", "compare", "condense", "condense_H", "condense_finite", "hausdorff_rank",
    "hierarchy_info", "parse", "rho_surrogate", "sample_restriction", "saturate", "to_text",
]
