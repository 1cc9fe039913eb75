"""Khovanov homology of virtual diagrams over GF(2) and over Q."""

from vkh.khovanov.complex import QQ, Z2, FaceFailure, GradedComplex, chain_complex, normalize_field, verify_d2
from vkh.khovanov.cube import MERGE, ONE_ONE, SPLIT, CubeEdge, PerestroikaCube, build_cube
from vkh.khovanov.frobenius import edge_map
from vkh.khovanov.homology import (
    BettiTable,
    euler_char,
    homology,
    khovanov,
    split_even_odd,
    tensor_product,
    tensor_sqrt,
)
from vkh.khovanov.local import CUBE_LIMIT, kh_table, scan_homology

__all__ = [
    "QQ", "Z2", "MERGE", "ONE_ONE", "SPLIT", "BettiTable", "CubeEdge", "FaceFailure",
    "GradedComplex", "PerestroikaCube", "build_cube", "chain_complex", "edge_map", "euler_char",
    "homology", "khovanov", "normalize_field", "scan_homology", "kh_table", "CUBE_LIMIT", "split_even_odd", "tensor_product", "tensor_sqrt",
    "verify_d2",
]
