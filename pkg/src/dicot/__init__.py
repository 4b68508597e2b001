"""Monopole-dimer models on dicots: exact partition functions, enumeration,
planar orientations, involution quotients and closed-form families."""

from .core import (
    DASHED,
    SOLID,
    Dicot,
    DicotError,
    Loop,
    MonopoleDimerConfig,
    complete_dicot,
    config_weight,
    load_dicot,
    loop_weight,
    make_dicot,
    validate_dicot,
    validate_graph,
)
from .enumeration import TooLarge, brute_force_partition_function, check_positivity, count_configs, enumerate_configs
from .gaussian import I, GaussianRational
from .linalg import build_matrix, determinant, partition_function
from .planar import (
    PlanarDicot,
    enclosed_vertices,
    extract_faces,
    is_planar_dicot,
    kasteleyn_orient,
    planar_loop_weight,
    validate_planar,
    verify_kasteleyn,
)
from .quotient import check_involution, find_adapted_partition, quotient_dicot, verify_squareness

__all__ = [
    "DASHED", "SOLID", "Dicot", "DicotError", "Loop", "MonopoleDimerConfig", "complete_dicot",
    "config_weight", "load_dicot", "loop_weight", "make_dicot", "validate_dicot", "validate_graph",
    "TooLarge", "brute_force_partition_function", "check_positivity", "count_configs", "enumerate_configs",
    "I", "GaussianRational", "build_matrix", "determinant", "partition_function",
    "PlanarDicot", "enclosed_vertices", "extract_faces", "is_planar_dicot", "kasteleyn_orient",
    "planar_loop_weight", "validate_planar", "verify_kasteleyn",
    "check_involution", "find_adapted_partition", "quotient_dicot", "verify_squareness",
]
