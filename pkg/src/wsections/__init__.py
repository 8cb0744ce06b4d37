"""Exact construction and verification of linear sections e + V for the
adjoint action of block upper-triangular groups on their nilradicals."""

from .construction import (
    LEFTMOST,
    RIGHTMOST,
    CompositeFamily,
    Line,
    LineSet,
    Section,
    extract_section,
    lineset_to_json,
    step1,
    step2,
    step3,
    verify_P1,
    verify_P2,
)
from .invariants import (
    MinorSpec,
    build_minor,
    generic_invariant,
    restrict_to_E,
    restrict_to_section,
    section_coordinate,
)
from .poly import Polynomial, SymbolicMatrix, det, substitute, top_term
from .tableau import (
    Box,
    Composition,
    MatrixUnit,
    NeighborPair,
    Tableau,
    bs_degree,
    build_tableau,
    compositions,
    in_nilradical,
    neighboring_pairs,
    nilradical_basis,
)
from .verify import (
    GradingElement,
    SeparationMatrix,
    codim_orbit,
    density_check,
    grading_element,
    line_weight,
    root_system_type,
    separation_matrix,
    separation_rank,
)

__version__ = "0.1.0"

__all__ = [
    "Box",
    "Composition",
    "CompositeFamily",
    "GradingElement",
    "LEFTMOST",
    "Line",
    "LineSet",
    "MatrixUnit",
    "MinorSpec",
    "NeighborPair",
    "Polynomial",
    "RIGHTMOST",
    "Section",
    "SeparationMatrix",
    "SymbolicMatrix",
    "Tableau",
    "bs_degree",
    "build_minor",
    "build_tableau",
    "codim_orbit",
    "compositions",
    "density_check",
    "det",
    "extract_section",
    "generic_invariant",
    "grading_element",
    "in_nilradical",
    "line_weight",
    "lineset_to_json",
    "neighboring_pairs",
    "nilradical_basis",
    "restrict_to_E",
    "restrict_to_section",
    "root_system_type",
    "section_coordinate",
    "separation_matrix",
    "separation_rank",
    "step1",
    "step2",
    "step3",
    "substitute",
    "top_term",
    "verify_P1",
    "verify_P2",
]
