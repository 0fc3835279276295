"""Twisting maps of the unit sphere.

A circle profile ``f: [-1, 1] -> S^1`` is stored as a pair of univariate
polynomials ``q, r`` together with a constant unit complex number ``post``:

    f(z) = post * (q(z) + i r(z))^2 / (q(z)^2 + r(z)^2)

so that ``f = post * ((1 - p^2) + 2 i p) / (1 + p^2)`` with ``p = r / q``.
As long as ``q`` and ``r`` have no common real root the profile has no
poles, and products and conjugates of profiles stay in this form.

A twisting map rotates the circle of height ``z`` (in a rotated frame) by
``f(z)``; it preserves the sphere and its inverse is the twisting map of the
conjugate profile.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import (
    DuplicateInput,
    DuplicateNodes,
    InvalidEps,
    NestedRadical,
    PointNotOnSurface,
    SearchExhausted,
    TargetNotOnCircle,
    ToleranceUnreachable,
)
from .exactfield import EMPTY_CTX, adjoin_sqrt, decode_value, encode_value, sign, simplify
from .geom import CYCLE, Rotation3, cayley_rotation, dot
from .polyrat import Equal, MultiPoly, RationalMap, compose, identity, maps_equal
from .upoly import UPoly, count_roots, isolate_roots, lagrange, RootCursor, squarefree_part, sturm_sequence

ONE = (Fraction(1), Fraction(0))


def cmul(a, b):
    return (simplify(a[0] * b[0] - a[1] * b[1]), simplify(a[0] * b[1] + a[1] * b[0]))


def cconj(a):
    return (a[0], simplify(-a[1]))


def _is_one(c) -> bool:
    return c[0] == 1 and c[1] == 0


def rational_circle_points():
    """Rational points of the unit circle other than ``(1, 0)``, simplest first."""
    yield (Fraction(-1), Fraction(0))
    yield (Fraction(0), Fraction(1))
    yield (Fraction(0), Fraction(-1))
    seen = set()
    for height in itertools.count(2):
        for num in range(1, height):
            t = Fraction(num, height)
            if t in seen:
                continue
            seen.add(t)
            for tt in (t, -t, 1 / t, -1 / t):
                d = 1 + tt * tt
                pt = ((1 - tt * tt) / d, 2 * tt / d)
                if pt[0] and pt[1]:
                    yield pt


class CircleMap:
    """A pole-free rational map ``[-1, 1] -> S^1`` (see the module docstring)."""

    __slots__ = ("r", "q", "post")

    def __init__(self, r, q=None, post=ONE):
        self.r = r if isinstance(r, UPoly) else UPoly(r)
        q = UPoly.const(1) if q is None else q
        self.q = q if isinstance(q, UPoly) else UPoly(q)
        post = (simplify(post[0]), simplify(post[1]))
        if post[0] * post[0] + post[1] * post[1] != 1:
            raise TargetNotOnCircle(f"post-rotation {post} is not on the unit circle")
        if not self.q and not self.r:
            raise ValueError("profile with q = r = 0")
        self.post = post

    @classmethod
    def constant(cls, rho) -> "CircleMap":
        return cls(UPoly(), UPoly.const(1), rho)

    @classmethod
    def from_ratio(cls, p: UPoly, post=ONE) -> "CircleMap":
        return cls(p, UPoly.const(1), post)

    def parts(self):
        """``(A, B, D)`` with ``f = (A + iB) / D`` as polynomials."""
        q, r = self.q, self.r
        re, im = q * q - r * r, 2 * q * r
        c1, c2 = self.post
        return re * c1 - im * c2, re * c2 + im * c1, q * q + r * r

    def __call__(self, z):
        qz, rz = self.q(z), self.r(z)
        d = simplify(qz * qz + rz * rz)
        if not d:
            raise ZeroDivisionError(f"profile has a pole at {z}")
        base = (simplify((qz * qz - rz * rz) / d), simplify(2 * qz * rz / d))
        return cmul(self.post, base)

    def __mul__(self, other: "CircleMap") -> "CircleMap":
        q = self.q * other.q - self.r * other.r
        r = self.r * other.q + other.r * self.q
        return CircleMap(r, q, cmul(self.post, other.post))

    def conjugate(self) -> "CircleMap":
        return CircleMap(-self.r, self.q, cconj(self.post))

    def is_identity(self) -> bool:
        return not self.r and _is_one(self.post)

    def on_circle_identically(self) -> bool:
        """Symbolic check ``f1^2 + f2^2 = 1``, i.e. ``A^2 + B^2 = D^2``."""
        a, b, d = self.parts()
        return not (a * a + b * b - d * d)

    def pole_free(self, lo=-1, hi=1) -> bool:
        """``q^2 + r^2`` has no real root in ``[lo, hi]``."""
        d = self.q * self.q + self.r * self.r
        if d.degree <= 0:
            return bool(d)
        if not d(lo) or not d(hi):
            return False
        seq = sturm_sequence(squarefree_part(d))
        return count_roots(seq, Fraction(lo), Fraction(hi)) == 0

    @property
    def degree(self) -> int:
        return max(self.q.degree, self.r.degree)

    def __repr__(self):
        return f"CircleMap(r={self.r!r}, q={self.q!r}, post={self.post})"

    def to_json(self):
        return {
            "num": [encode_value(c) for c in self.r.c],
            "den": [encode_value(c) for c in self.q.c],
            "post": [encode_value(c) for c in self.post],
        }

    @classmethod
    def from_json(cls, obj):
        r = UPoly([decode_value(c) for c in obj.get("num", [])])
        q = UPoly([decode_value(c) for c in obj.get("den", ["1"])])
        post = tuple(decode_value(c) for c in obj.get("post", ["1", "0"]))
        return cls(r, q, post)


def _check_circle(rho):
    rho = (simplify(rho[0]), simplify(rho[1]))
    if rho[0] * rho[0] + rho[1] * rho[1] != 1:
        raise TargetNotOnCircle(f"{rho} is not on the unit circle")
    return rho


def interpolate_circle(nodes) -> CircleMap:
    """Profile with ``f(z_j) = rho_j`` for each ``(z_j, rho_j)`` in ``nodes``.

    Targets are converted to half-angle parameters ``t = rho2 / (1 + rho1)``
    and joined by the Lagrange polynomial.  The target ``(-1, 0)`` has no
    parameter, so when it occurs all targets are first rotated by the
    conjugate of a rational circle point ``c`` that avoids the problem, and
    ``c`` is kept as the post-rotation.
    """
    zs, rhos = [], []
    for z, rho in nodes:
        zs.append(simplify(z))
        rhos.append(_check_circle(rho))
    if len(set(zs)) != len(zs):
        raise DuplicateNodes(f"interpolation levels {zs} are not distinct")
    post = ONE
    minus_one = (Fraction(-1), Fraction(0))
    if any(r == minus_one for r in rhos):
        for c in rational_circle_points():
            shifted = [cmul(cconj(c), r) for r in rhos]
            if all(not (s[0] == -1 and s[1] == 0) for s in shifted):
                post, rhos = c, shifted
                break
    ts = [simplify(r[1] / (1 + r[0])) for r in rhos]
    return CircleMap(lagrange(zs, ts), UPoly.const(1), post)


# -- twisting maps ----------------------------------------------------------------

def _upoly_at(p: UPoly, lin: MultiPoly) -> MultiPoly:
    acc = MultiPoly.const(lin.vars, 0)
    for c in reversed(p.c):
        acc = acc * lin + c
    return acc


SPHERE_VARS = ("x", "y", "z")


@dataclass(frozen=True, eq=False)
class TwistingMap:
    """``X -> F^T phi_f(F X)`` with ``phi_f(x, y, z) = (f(z) * (x, y), z)``."""

    profile: CircleMap
    frame: Rotation3 = field(default_factory=Rotation3.identity)

    @property
    def axis(self):
        return self.frame.row(2)

    def __call__(self, point):
        if hasattr(point, "as_tuple"):
            point = point.as_tuple()
        x, y, z = self.frame @ point
        f1, f2 = self.profile(z)
        local = (simplify(f1 * x - f2 * y), simplify(f2 * x + f1 * y), z)
        return self.frame.T() @ local

    def inverse(self) -> "TwistingMap":
        return TwistingMap(self.profile.conjugate(), self.frame)

    def local_map(self) -> RationalMap:
        """The twist in frame coordinates, with denominators ``(D, D, 1)``."""
        x, y, z = (MultiPoly.var(SPHERE_VARS, v) for v in SPHERE_VARS)
        a, b, d = (_upoly_at(p, z) for p in self.profile.parts())
        one = MultiPoly.const(SPHERE_VARS, 1)
        return RationalMap("Sphere", "Sphere", (a * x - b * y, b * x + a * y, z), (d, d, one))

    def world_map(self) -> RationalMap:
        """The twist in the ambient coordinates (one common denominator)."""
        xs = [MultiPoly.var(SPHERE_VARS, v) for v in SPHERE_VARS]
        lin = [sum((xs[k] * self.frame.m[i][k] for k in range(3)), MultiPoly.const(SPHERE_VARS, 0))
               for i in range(3)]
        a, b, d = (_upoly_at(p, lin[2]) for p in self.profile.parts())
        local = (a * lin[0] - b * lin[1], b * lin[0] + a * lin[1], lin[2] * d)
        ft = self.frame.T().m
        coords = tuple(
            sum((local[k] * ft[i][k] for k in range(3)), MultiPoly.const(SPHERE_VARS, 0))
            for i in range(3)
        )
        return RationalMap("Sphere", "Sphere", coords, (d, d, d))

    def sphere_certificate(self) -> bool:
        """The image lies on the sphere: ``A^2 + B^2 = D^2`` identically."""
        return self.profile.on_circle_identically()

    def certify_inverse(self):
        """``maps_equal`` of this twist composed with its inverse against the identity.

        Both are conjugated by the same frame, so the check is carried out in
        frame coordinates, where the degrees stay small.
        """
        return maps_equal(compose(self.local_map(), self.inverse().local_map()), identity("Sphere"))

    def to_json(self):
        return {"axis": self.frame.to_json(), "profile": self.profile.to_json()}

    @classmethod
    def from_json(cls, obj):
        frame = Rotation3.from_json(obj["axis"]) if "axis" in obj else Rotation3.identity()
        return cls(CircleMap.from_json(obj["profile"]), frame)


def twisting_map(f: CircleMap, frame: Rotation3 | None = None) -> TwistingMap:
    return TwistingMap(f, frame if frame is not None else Rotation3.identity())


def twist_inverse(t: TwistingMap) -> TwistingMap:
    return t.inverse()


def apply_twists(twists, point):
    for t in twists:
        point = t(point)
    return point


# -- transitivity ------------------------------------------------------------------

FRAME_I = Rotation3.identity()
FRAME_AXES = (FRAME_I, CYCLE, CYCLE @ CYCLE)  # axes e_z, e_x, e_y


@lru_cache(maxsize=None)
def _cayley_shell(h: int):
    out = []
    for t in itertools.product(range(-h, h + 1), repeat=3):
        if max(abs(v) for v in t) == h:
            out.append(cayley_rotation(*t))
    return tuple(out)


def _ratio(p, r):
    """Unit complex ``rho`` with ``rho * (p1 + i p2) = r1 + i r2`` (equal radii)."""
    n = simplify(p[0] * p[0] + p[1] * p[1])
    num = cmul((r[0], r[1]), cconj((p[0], p[1])))
    return (simplify(num[0] / n), simplify(num[1] / n))


def _rotate_about(frame, point, c):
    x, y, z = frame @ point
    return frame.T() @ (simplify(c[0] * x - c[1] * y), simplify(c[1] * x + c[0] * y), z)


def _twist(frame, moves, fixed_levels):
    """Twist about ``frame`` with the given ``(level, rho)`` moves, fixing other levels."""
    nodes = list(moves)
    taken = {lv for lv, _ in moves}
    for lv in fixed_levels:
        if lv not in taken and -1 < lv < 1:
            taken.add(lv)
            nodes.append((lv, ONE))
    return TwistingMap(interpolate_circle(nodes), frame)


def _rational_point(p):
    if hasattr(p, "as_tuple"):
        p = p.as_tuple()
    out = []
    for c in p:
        if isinstance(c, (str, dict)):
            c = decode_value(c)
        c = simplify(c)
        if not isinstance(c, (int, Fraction)):
            raise NestedRadical("solver inputs must have rational coordinates")
        out.append(Fraction(c))
    if len(out) != 3 or out[0] ** 2 + out[1] ** 2 + out[2] ** 2 != 1:
        raise PointNotOnSurface(f"{tuple(out)} is not on the unit sphere")
    return tuple(out)


class TransitivitySolution(list):
    """Twisting maps in the order they are applied (first element first)."""

    def __call__(self, point):
        return apply_twists(self, point)

    def to_json(self):
        return [t.to_json() for t in self]


class _Solver:
    def __init__(self, P, Q, height_cap):
        self.P = [_rational_point(p) for p in P]
        self.Q = [_rational_point(q) for q in Q]
        if len(self.P) != len(self.Q):
            raise DuplicateInput(f"{len(self.P)} source points but {len(self.Q)} targets")
        if len(set(self.P)) != len(self.P) or len(set(self.Q)) != len(self.Q):
            raise DuplicateInput("points must be pairwise distinct")
        self.cap = height_cap
        self.ctx = EMPTY_CTX
        self.cur = list(self.P)
        self.twists = TransitivitySolution()

    def solve(self):
        for j in range(len(self.P)):
            if self.cur[j] != self.Q[j]:
                if not self._single_twist(j):
                    self._two_twists(j)
                self.cur[j] = self.Q[j]
        return self.twists

    def _single_twist(self, j) -> bool:
        m, target = self.cur[j], self.Q[j]
        if target in self.cur:
            return False
        others = [p for k, p in enumerate(self.cur) if k != j]
        for frame in FRAME_AXES:
            u = frame.row(2)
            a = dot(u, m)
            if dot(u, target) != a or abs(a) == 1:
                continue
            levels = [dot(u, p) for p in others]
            if a in levels:
                continue
            rho = _ratio(frame @ m, frame @ target)
            self.twists.append(_twist(frame, [(a, rho)], levels))
            return True
        return False

    def _relocate(self, frame, k, v, b):
        """Rational rotation of ``cur[k]`` about the frame axis to a free spot."""
        taken = set(self.cur) | set(self.Q)
        for c in itertools.islice(rational_circle_points(), 12):
            s = _rotate_about(frame, self.cur[k], c)
            if s not in taken and dot(v, s) != b:
                return c, s
        return None

    def _two_twists(self, j):
        m, target = self.cur[j], self.Q[j]
        n = len(self.cur)
        occupied = [k for k in range(n) if k != j and self.cur[k] == target]
        for h in range(self.cap + 1):
            for frame in _cayley_shell(h):
                if self._try_frame(j, m, target, occupied, frame):
                    return
        raise SearchExhausted(f"no axis pair of height <= {self.cap} moves point {j}")

    def _try_frame(self, j, m, target, occupied, frame) -> bool:
        u, v, w = frame.row(2), frame.row(0), frame.row(1)
        a = dot(u, m)
        lev = {k: dot(u, p) for k, p in enumerate(self.cur) if k != j}
        if a in lev.values():
            return False
        b = dot(v, target)
        if a * a + b * b >= 1:
            return False
        after = dict(enumerate(self.cur))
        del after[j]
        moves = []
        if occupied:
            k = occupied[0]
            lk = lev[k]
            if abs(lk) == 1 or any(lev[o] == lk for o in lev if o != k):
                return False
            found = self._relocate(frame, k, v, b)
            if found is None:
                return False
            c, s = found
            moves.append((lk, c))
            after[k] = s
        if any(dot(v, p) == b for p in after.values()):
            return False
        ctx, s = adjoin_sqrt(self.ctx, 1 - a * a - b * b)
        self.ctx = ctx
        R = tuple(simplify(a * u[i] + b * v[i] + s * w[i]) for i in range(3))
        moves.insert(0, (a, _ratio(frame @ m, frame @ R)))
        self.twists.append(_twist(frame, moves, lev.values()))
        frame2 = CYCLE @ frame
        rho2 = _ratio(frame2 @ R, frame2 @ target)
        self.twists.append(_twist(frame2, [(b, rho2)], [dot(v, p) for p in after.values()]))
        for k, p in after.items():
            self.cur[k] = p
        return True


def transitivity_solve(P, Q, height_cap: int = 64) -> TransitivitySolution:
    """Twisting maps whose composition carries ``P[j]`` to ``Q[j]`` for every ``j``.

    Points are moved one at a time.  Each stage uses at most two twists, one
    about an axis ``u`` and one about an axis ``v`` found by a search over
    rational rotations, with all other points fixed by identity nodes.  The
    intermediate point generally needs one square root of a rational.
    """
    return _Solver(P, Q, height_cap).solve()


def solution_certificates(P, Q, twists) -> dict:
    hits = all(
        apply_twists(twists, _rational_point(p)) == _rational_point(q) for p, q in zip(P, Q)
    )
    involutions = all(
        isinstance(t.certify_inverse(), Equal) and t.sphere_certificate() for t in twists
    )
    return {"hits": hits, "involutions": involutions}


# -- Dehn twist and winding number ---------------------------------------------------

ALPHA_SCALE = Fraction(2 * 113, 355)  # 2 / pi with pi ~ 355/113


def dehn_grid(eps, count: int = 1000):
    """``count`` evenly spaced rational points of ``[-1, -2 eps] U [2 eps, 1]``."""
    eps = Fraction(eps)
    lo = 2 * eps
    half = count // 2
    pts = [lo + (1 - lo) * Fraction(k, half - 1) for k in range(half)]
    return [-p for p in reversed(pts)] + pts


def profile_within(f: CircleMap, grid, tol) -> bool:
    """``|f(z) - (1, 0)| <= tol`` on every grid point (exact comparison)."""
    tol2 = Fraction(tol) ** 2
    for z in grid:
        f1, f2 = f(z)
        if (f1 - 1) ** 2 + f2 ** 2 > tol2:
            return False
    return True


def dehn_twist_map(fixed_levels, eps, tol, degree_cap: int = 64, grid_size: int = 1000) -> TwistingMap:
    """Twist about ``e_z`` whose profile loops once around the circle inside ``(-eps, eps)``.

    ``p(z) = -alpha C(z) eps^(2m) / (z (eps^(2m) + z^(2m)))`` where
    ``C(z) = prod (z - z_i) / prod (-z_i)`` vanishes at the fixed levels and
    ``alpha = 2 eps / pi`` (rationally approximated) matches the slope of the
    ideal step profile at 0.  ``m`` grows until the profile is within ``tol``
    of the identity on the grid outside ``[-2 eps, 2 eps]``.
    """
    eps = Fraction(eps)
    tol = Fraction(tol)
    if not 0 < eps < 1:
        raise InvalidEps(f"eps = {eps} must lie in (0, 1)")
    levels = [Fraction(z) for z in fixed_levels]
    for z in levels:
        if not (eps < abs(z) < 1):
            raise InvalidEps(f"fixed level {z} must lie in (-1, 1) outside [-{eps}, {eps}]")
    if len(set(levels)) != len(levels):
        raise DuplicateNodes(f"fixed levels {levels} are not distinct")
    if tol <= 0:
        raise ToleranceUnreachable("tolerance must be positive")
    c = UPoly.const(1)
    for z in levels:
        c = c * UPoly((-z, 1)) * (1 / -z)
    alpha = ALPHA_SCALE * eps
    grid = dehn_grid(eps, grid_size)
    m = 1
    while 2 * m + 1 <= degree_cap:
        e2m = eps ** (2 * m)
        q = UPoly([0, e2m] + [0] * (2 * m - 1) + [1])
        r = c * (-alpha * e2m)
        f = CircleMap(r, q)
        if profile_within(f, grid, tol):
            return TwistingMap(f, Rotation3.identity())
        m += 1
    raise ToleranceUnreachable(f"tolerance {tol} not reached with degree <= {degree_cap}")


_RAYS = ((Fraction(-1), Fraction(0)), (Fraction(1), Fraction(0)),
         (Fraction(0), Fraction(1)), (Fraction(0), Fraction(-1)))


def _cross(a, b):
    return simplify(a[0] * b[1] - a[1] * b[0])


def winding_number(f: CircleMap, lo=-1, hi=1) -> int:
    """Number of full turns of ``f`` on ``[lo, hi]``, closing the path along the shorter arc.

    Signed crossings of a ray from the origin are counted exactly with
    Sturm-sequence root isolation.  When the endpoints are antipodal the
    closing arc is taken counterclockwise.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    a, b, _ = f.parts()
    start, end = f(lo), f(hi)
    for ray in _RAYS:
        perp = b * ray[0] - a * ray[1]
        along = a * ray[0] + b * ray[1]
        if any(_cross(ray, pt) == 0 and dot2(ray, pt) > 0 for pt in (start, end)):
            continue
        break
    total = 0
    for ia, ib in isolate_roots(perp, lo, hi):
        sa, sb = sign(perp(ia)), sign(perp(ib))
        if sa == sb:
            continue
        if RootCursor(perp, ia, ib).sign_of(along) > 0:
            total += 1 if sb > 0 else -1
    # close the path from f(hi) back to f(lo)
    if start != end:
        turn = _cross(end, start)
        ccw = turn > 0 or (turn == 0)
        if ccw and _cross(end, ray) > 0 and (_cross(ray, start) > 0 or turn == 0):
            total += 1
        elif not ccw and _cross(end, ray) < 0 and _cross(ray, start) < 0:
            total -= 1
    return total


def dot2(a, b):
    return simplify(a[0] * b[0] + a[1] * b[1])
