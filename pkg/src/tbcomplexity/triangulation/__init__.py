from .builders import build_figure_eight, build_sibling, parse_gluing_pattern
from .cocycle import TransferCocycle, cyclic_cover, transfer_cocycle
from .core import (
    EdgeClass,
    IdealTriangulation,
    SpineStats,
    edge_classes,
    edge_partition_union_find,
    spine_stats,
)
from .fileformat import parse_triangulation, read_triangulation, serialize_triangulation
from .isomorphism import find_isomorphism, is_isomorphic

__all__ = [
    "EdgeClass",
    "IdealTriangulation",
    "SpineStats",
    "TransferCocycle",
    "build_figure_eight",
    "build_sibling",
    "cyclic_cover",
    "edge_classes",
    "edge_partition_union_find",
    "find_isomorphism",
    "is_isomorphic",
    "parse_gluing_pattern",
    "parse_triangulation",
    "read_triangulation",
    "serialize_triangulation",
    "spine_stats",
    "transfer_cocycle",
]
