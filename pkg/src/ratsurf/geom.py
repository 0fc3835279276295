"""Exact points on the unit sphere and in projective spaces, and exact rotations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PointNotOnSurface
from .exactfield import decode_value, encode_value, simplify


def _val(v):
    if isinstance(v, str) or isinstance(v, dict):
        return decode_value(v)
    return simplify(v)


@dataclass(frozen=True)
class SpherePoint:
    x: object
    y: object
    z: object

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, _val(getattr(self, name)))
        if self.x * self.x + self.y * self.y + self.z * self.z != 1:
            raise PointNotOnSurface(f"({self.x}, {self.y}, {self.z}) is not on the unit sphere")

    def as_tuple(self):
        return (self.x, self.y, self.z)

    def __iter__(self):
        return iter(self.as_tuple())

    def to_json(self):
        return {"x": encode_value(self.x), "y": encode_value(self.y), "z": encode_value(self.z)}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, dict):
            return cls(obj["x"], obj["y"], obj["z"])
        x, y, z = obj
        return cls(x, y, z)


@dataclass(frozen=True, eq=False)
class ProjPoint:
    """Homogeneous coordinates; ``groups`` splits them for products like P1 x P1."""

    coords: tuple
    groups: tuple = ()

    def __post_init__(self):
        coords = tuple(_val(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        groups = self.groups or ((0, len(coords)),)
        object.__setattr__(self, "groups", tuple(tuple(g) for g in groups))
        for lo, hi in self.groups:
            if not any(coords[lo:hi]):
                raise PointNotOnSurface(f"all coordinates zero in {coords[lo:hi]}")

    def as_tuple(self):
        return self.coords

    def __iter__(self):
        return iter(self.coords)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if len(self.coords) != len(other.coords) or self.groups != other.groups:
            return False
        return all(
            proportional(self.coords[lo:hi], other.coords[lo:hi]) for lo, hi in self.groups
        )

    def __hash__(self):
        return hash(normalize_projective(self.coords, self.groups))

    def normalized(self):
        return normalize_projective(self.coords, self.groups)

    def to_json(self):
        return {"coords": [encode_value(c) for c in self.coords]}


def proportional(a, b) -> bool:
    """All 2x2 minors of the two coordinate tuples vanish."""
    n = len(a)
    return all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n))


def normalize_projective(coords, groups=None):
    """Scale each group so its first nonzero coordinate is 1."""
    coords = list(coords)
    groups = groups or ((0, len(coords)),)
    for lo, hi in groups:
        piv = next(c for c in coords[lo:hi] if c)
        for i in range(lo, hi):
            coords[i] = simplify(coords[i] / piv)
    return tuple(coords)


def p1xp1_point(x0, x1, y0, y1) -> ProjPoint:
    return ProjPoint((x0, x1, y0, y1), ((0, 2), (2, 4)))


class Rotation3:
    """3x3 matrix with exact entries; constructors guarantee ``R^T R = I`` and ``det R = 1``."""

    __slots__ = ("m",)

    def __init__(self, rows, check: bool = True):
        self.m = tuple(tuple(simplify(_val(v)) for v in row) for row in rows)
        if len(self.m) != 3 or any(len(r) != 3 for r in self.m):
            raise ValueError("rotation must be 3x3")
        if check and not (self.is_orthogonal() and self.det() == 1):
            raise ValueError("matrix is not a rotation")

    @classmethod
    def identity(cls):
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)), check=False)

    def row(self, i):
        return self.m[i]

    def __matmul__(self, other):
        if isinstance(other, Rotation3):
            b = other.m
            return Rotation3(
                [[sum((self.m[i][k] * b[k][j] for k in range(3)), Fraction(0)) for j in range(3)]
                 for i in range(3)],
                check=False,
            )
        v = tuple(other)
        return tuple(
            simplify(self.m[i][0] * v[0] + self.m[i][1] * v[1] + self.m[i][2] * v[2])
            for i in range(3)
        )

    def apply(self, v):
        return self @ v

    def T(self):
        return Rotation3([[self.m[j][i] for j in range(3)] for i in range(3)], check=False)

    def det(self):
        a = self.m
        return simplify(
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )

    def is_orthogonal(self) -> bool:
        p = self.T() @ self
        return p == Rotation3.identity()

    def is_identity(self) -> bool:
        return self == Rotation3.identity()

    def __eq__(self, other):
        return isinstance(other, Rotation3) and all(
            self.m[i][j] == other.m[i][j] for i in range(3) for j in range(3)
        )

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return "Rotation3(" + "; ".join(" ".join(str(v) for v in r) for r in self.m) + ")"

    def to_json(self):
        return [[encode_value(v) for v in row] for row in self.m]

    @classmethod
    def from_json(cls, obj):
        return cls(obj)


# cyclic coordinate permutation (x, y, z) -> (y, z, x); sends e_x to e_z
CYCLE = Rotation3(((0, 1, 0), (0, 0, 1), (1, 0, 0)), check=False)


def cayley_rotation(a, b, c) -> Rotation3:
    """``(I - K)(I + K)^-1`` for the skew matrix ``K`` of ``(a, b, c)``.

    Uses the closed form ``((1 - s) I + 2 v v^T - 2 K) / (1 + s)`` with
    ``s = |v|^2``.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    v = (a, b, c)
    s = a * a + b * b + c * c
    k = ((0, -c, b), (c, 0, -a), (-b, a, 0))
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            e = (1 - s if i == j else 0) + 2 * v[i] * v[j] - 2 * k[i][j]
            row.append(e / (1 + s))
        rows.append(row)
    return Rotation3(rows, check=False)


def reflection_to_pole(v) -> Rotation3:
    """Rotation ``R`` with ``R v = (0, 0, 1)``.

    Householder reflection through ``v - e_z`` followed by ``x -> -x``, which
    fixes ``e_z`` and restores determinant 1.
    """
    x, y, z = (_val(c) for c in v)
    if x * x + y * y + z * z != 1:
        raise PointNotOnSurface("reflection_to_pole needs a unit vector")
    w = (x, y, z - 1)
    ww = w[0] * w[0] + w[1] * w[1] + w[2] * w[2]
    if not ww:
        return Rotation3.identity()
    h = [[(1 if i == j else 0) - 2 * w[i] * w[j] / ww for j in range(3)] for i in range(3)]
    h[0] = [-e for e in h[0]]
    return Rotation3(h, check=False)


def sphere_from_plane(p) -> SpherePoint:
    """Inverse stereographic projection ``[x:y:z] -> [x²+y²+z² : 2xz : 2yz : x²+y²-z²]``."""
    x, y, z = (_val(c) for c in (p.as_tuple() if hasattr(p, "as_tuple") else p))
    w = x * x + y * y + z * z
    if not w:
        raise PointNotOnSurface("[0:0:0] is not a point of P2")
    return SpherePoint(2 * x * z / w, 2 * y * z / w, (x * x + y * y - z * z) / w)


def dot(u, v):
    return simplify(u[0] * v[0] + u[1] * v[1] + u[2] * v[2])
