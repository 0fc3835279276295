"""Exact computations with birational maps of real rational surfaces.

Rational numbers and square-root towers (:mod:`ratsurf.exactfield`), points
and rotations (:mod:`ratsurf.geom`), polynomial maps (:mod:`ratsurf.polyrat`),
a catalog of classical maps (:mod:`ratsurf.catalog`), twisting maps of the
sphere (:mod:`ratsurf.twist`) and regulous functions (:mod:`ratsurf.regulous`).
"""

from .exactfield import TowerCtx, TowerElem, adjoin_sqrt, format_rational, parse_rational, sign
from .geom import ProjPoint, Rotation3, SpherePoint, cayley_rotation, reflection_to_pole, sphere_from_plane
from .polyrat import (
    Equal,
    MultiPoly,
    NotEqual,
    RationalMap,
    compose,
    evaluate,
    identity,
    maps_equal,
    reduce_mod_quadric,
    reduce_mod_sphere,
)
from .twist import (
    CircleMap,
    TwistingMap,
    dehn_twist_map,
    interpolate_circle,
    transitivity_solve,
    twist_inverse,
    twisting_map,
    winding_number,
)
from .regulous import RegFunction, builtin, eval_regulous, k_regulous_check, zero_membership

__all__ = [
    "TowerCtx", "TowerElem", "adjoin_sqrt", "format_rational", "parse_rational", "sign",
    "ProjPoint", "Rotation3", "SpherePoint", "cayley_rotation", "reflection_to_pole",
    "sphere_from_plane",
    "Equal", "MultiPoly", "NotEqual", "RationalMap", "compose", "evaluate", "identity",
    "maps_equal", "reduce_mod_quadric", "reduce_mod_sphere",
    "CircleMap", "TwistingMap", "dehn_twist_map", "interpolate_circle", "transitivity_solve",
    "twist_inverse", "twisting_map", "winding_number",
    "RegFunction", "builtin", "eval_regulous", "k_regulous_check", "zero_membership",
]
