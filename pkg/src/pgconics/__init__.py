"""Conics, pencils and simultaneous diagonalization in PG(2, q), q odd."""

from .conic import Conic, ConicClass, ConicTag, classify, conic, intersect, substitute, zero_set
from .diag import DiagOutcome, decide, oracle_triangle
from .gf import FieldCtx, field_create
from .pencil import Pencil, PencilShape, ShapeTag, build_pencil, shape
from .pg2 import Collineation, Line, Point, enumerate_points, frame_map

__all__ = [
    "Collineation", "Conic", "ConicClass", "ConicTag", "DiagOutcome", "FieldCtx",
    "Line", "Pencil", "PencilShape", "Point", "ShapeTag", "build_pencil", "classify",
    "conic", "decide", "enumerate_points", "field_create", "frame_map", "intersect",
    "oracle_triangle", "shape", "substitute", "zero_set",
]
