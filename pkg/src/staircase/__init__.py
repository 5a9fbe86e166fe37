"""Staircase diagrams over Dynkin graphs, their labellings, and smooth Schubert variety counts."""

from .coxeter import CoxeterGroup, GroupElement, coxeter_group, from_word
from .diagram import StaircaseDiagram, validate
from .errors import (
    ArgumentError,
    AxiomViolationError,
    CapabilityError,
    LabellingError,
    NoCompleteBPDecomposition,
    StaircaseError,
)
from .graphs import DynkinGraph, build_dynkin
from .labelling import Labelling, lambda_product, phi_inverse
from .series import PowerSeries, closed_form_series, recurrence_series

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "AxiomViolationError",
    "CapabilityError",
    "CoxeterGroup",
    "DynkinGraph",
    "GroupElement",
    "Labelling",
    "LabellingError",
    "NoCompleteBPDecomposition",
    "PowerSeries",
    "StaircaseDiagram",
    "StaircaseError",
    "build_dynkin",
    "closed_form_series",
    "coxeter_group",
    "from_word",
    "lambda_product",
    "phi_inverse",
    "recurrence_series",
    "validate",
]
