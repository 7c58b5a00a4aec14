"""Exact p-adic arithmetic and dynamics on the Berkovich projective line."""

from .field import (
    LogNorm,
    MPoly,
    NewtonPolygon,
    Poly,
    Radius,
    Scalar,
    count_zeros_in_disk,
    lognorm,
    newton_polygon,
    resultant,
    taylor_shift,
    val,
)
from .points import (
    BerkPoint,
    TangentDirection,
    ball,
    classify,
    direction,
    gauss,
    infinity,
    join,
    leq,
    points_equal,
    rigid,
    same_direction,
    seminorm_enclosure,
    seminorm_eval,
    type_iv,
)

__all__ = [
    "BerkPoint",
    "LogNorm",
    "MPoly",
    "NewtonPolygon",
    "Poly",
    "Radius",
    "Scalar",
    "TangentDirection",
    "ball",
    "classify",
    "count_zeros_in_disk",
    "direction",
    "gauss",
    "infinity",
    "join",
    "leq",
    "lognorm",
    "newton_polygon",
    "points_equal",
    "resultant",
    "rigid",
    "same_direction",
    "seminorm_enclosure",
    "seminorm_eval",
    "taylor_shift",
    "type_iv",
    "val",
]
