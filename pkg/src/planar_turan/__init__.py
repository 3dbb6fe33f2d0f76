"""Planar Turán numbers for unions of disjoint cycles, with C3 ∪ C5 worked out in full."""

from .blocks import TriBlock, decompose, holes, is_good
from .constructions import extremal_c3c5, fan, wheel
from .cycles import CyclePattern, find_pattern, is_free, parse_pattern
from .graph_core import Graph, canonical_code
from .plane_map import PlaneMap, embed_planar, is_planar, plane_code

__version__ = "0.1.0"

__all__ = [
    "CyclePattern",
    "Graph",
    "PlaneMap",
    "TriBlock",
    "canonical_code",
    "decompose",
    "embed_planar",
    "extremal_c3c5",
    "fan",
    "find_pattern",
    "holes",
    "is_free",
    "is_good",
    "is_planar",
    "parse_pattern",
    "plane_code",
    "wheel",
]
