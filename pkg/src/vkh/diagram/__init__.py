"""Virtual link diagrams modulo detour moves, and their structural operations."""

from vkh.diagram.cable import cable
from vkh.diagram.codes import (
    diagram_to_dict,
    link_from_gauss,
    load_diagrams,
    parse_diagram_json,
    parse_gauss,
    serialize_diagram,
    to_gauss,
)
from vkh.diagram.core import (
    UNKNOT,
    Crossing,
    HalfEdge,
    ValidationReport,
    VirtualDiagram,
    Violation,
    canonical_form,
    count_components,
    disjoint_union,
    frame_components,
    isomorphic,
    orientation,
    relabel,
    signs_consistent,
    standard_labels,
    stats,
    strands,
    unlink,
    validate,
    virtualize,
)
from vkh.diagram.generate import random_diagram
from vkh.diagram.moves import FRAMED_KINDS, KINDS, MoveSpec, apply_move, sites

__all__ = [
    "UNKNOT", "Crossing", "HalfEdge", "ValidationReport", "VirtualDiagram", "Violation",
    "FRAMED_KINDS", "KINDS", "MoveSpec", "apply_move", "cable", "canonical_form",
    "count_components", "diagram_to_dict", "disjoint_union", "frame_components", "isomorphic",
    "link_from_gauss", "load_diagrams", "orientation", "parse_diagram_json", "parse_gauss",
    "random_diagram", "relabel", "serialize_diagram", "signs_consistent", "sites",
    "standard_labels", "stats", "strands", "to_gauss", "unlink", "validate", "virtualize",
]
