"""Exact triangulations of filling surfaces and their modular flip-graphs."""

from .canon import canonical_code, canonical_form, equivalent, mirror
from .contract import delete_vertex, insert_ear, project_path
from .errors import FlipmodError
from .families import a_triangulation, b_triangulation, gamma_star, parse_family, polygon_fan, zigzag
from .flip import FlipSequence, flip, flippable_arcs, is_flippable
from .surface import TopologySpec, disc, gamma, pi
from .trimap import Triangulation, from_faces, polygon, validate

__version__ = "0.1.0"

__all__ = [
    "FlipSequence",
    "FlipmodError",
    "TopologySpec",
    "Triangulation",
    "a_triangulation",
    "b_triangulation",
    "canonical_code",
    "canonical_form",
    "delete_vertex",
    "disc",
    "equivalent",
    "flip",
    "flippable_arcs",
    "from_faces",
    "gamma",
    "gamma_star",
    "insert_ear",
    "is_flippable",
    "mirror",
    "parse_family",
    "pi",
    "polygon",
    "polygon_fan",
    "project_path",
    "validate",
    "zigzag",
]
