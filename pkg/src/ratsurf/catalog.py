"""Ready-made rational maps: stereographic projection, quadratic involutions,
involutions of P1 x P1, monomial maps, and the blow-up charts of the plane at
the origin.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotUnimodular, PointNotOnSurface, UnknownName
from .exactfield import simplify
from .polyrat import MultiPoly, RationalMap, surface

P2 = surface("P2").vars
Q31 = surface("Q31").vars
P1P1 = surface("P1xP1").vars
CHART = surface("BlowupChart").vars
A2 = surface("A2").vars


def _polys(vars, *texts):
    return tuple(MultiPoly.parse(t, vars) for t in texts)


def stereographic_north():
    """``(pi_N, pi_N_inv)``: projection of the quadric from its north pole and its inverse."""
    pi_n = RationalMap("Q31", "P2", _polys(Q31, "x", "y", "w-z"))
    pi_n_inv = RationalMap("P2", "Q31", _polys(P2, "x^2+y^2+z^2", "2*x*z", "2*y*z", "x^2+y^2-z^2"))
    return pi_n, pi_n_inv


def sigma0() -> RationalMap:
    return RationalMap("P2", "P2", _polys(P2, "y*z", "x*z", "x*y"))


def sigma1() -> RationalMap:
    return RationalMap("P2", "P2", _polys(P2, "y^2+z^2", "x*y", "x*z"))


def tau0() -> RationalMap:
    return RationalMap("P1xP1", "P1xP1", _polys(P1P1, "x0", "x1", "x0*y0+x1*y1", "x1*y0-x0*y1"))


def e_invol() -> RationalMap:
    return RationalMap("P1xP1", "P1xP1", _polys(P1P1, "x0", "x1", "x0*y1", "x1*y0"))


def _torus_monomial(a: int, b: int):
    """Numerator/denominator of ``s^a t^b`` with ``s = x1/x0`` and ``t = y1/y0``, made bihomogeneous."""
    x0, x1, y0, y1 = (MultiPoly.var(P1P1, v) for v in P1P1)
    num = (x1 ** a if a > 0 else x0 ** -a) * (y1 ** b if b > 0 else y0 ** -b)
    den = (x0 ** a if a > 0 else x1 ** -a) * (y0 ** b if b > 0 else y1 ** -b)
    return num, den


def monomial_torus(m) -> RationalMap:
    """``(s, t) -> (s^a t^b, s^c t^d)`` on the torus of P1 x P1 for ``m = [[a, b], [c, d]]``."""
    (a, b), (c, d) = ((int(v) for v in row) for row in m)
    if abs(a * d - b * c) != 1:
        raise NotUnimodular(f"det {a * d - b * c} of {m} is not ±1")
    n1, d1 = _torus_monomial(a, b)
    n2, d2 = _torus_monomial(c, d)
    return RationalMap("P1xP1", "P1xP1", (d1, n1, d2, n2))


def blowup_chart_maps():
    """``(phi0, phi1, proj)``: the two affine charts of the blow-up and its projection to A2."""
    x, y, u, v = (MultiPoly.var(CHART, s) for s in CHART)
    one = MultiPoly.const(CHART, 1)
    phi0 = RationalMap("BlowupChart", "A2", (x, v), (one, u))
    phi1 = RationalMap("BlowupChart", "A2", (x, u), (one, v))
    proj = RationalMap("BlowupChart", "A2", (x, y), (one, one))
    return phi0, phi1, proj


def blowup_chart_inverses():
    """``(phi0_inv, phi1_inv)``: ``(x, w) -> ((x, x w), [1:w])`` and ``((x, x/w), [w:1])``."""
    x, w = (MultiPoly.var(A2, s) for s in A2)
    one = MultiPoly.const(A2, 1)
    phi0_inv = RationalMap("A2", "BlowupChart", (x, x * w, one, w), (one, one, one, one))
    phi1_inv = RationalMap("A2", "BlowupChart", (x, x, w, one), (one, w, one, one))
    return phi0_inv, phi1_inv


@dataclass(frozen=True)
class BlowupChartPoint:
    """A point ``((x, y), [u:v])`` of the blow-up of A2 at the origin."""

    base: tuple
    dir: tuple

    def __post_init__(self):
        base = tuple(simplify(Fraction(c) if isinstance(c, (int, str)) else c) for c in self.base)
        d = tuple(simplify(Fraction(c) if isinstance(c, (int, str)) else c) for c in self.dir)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "dir", d)
        if len(base) != 2 or len(d) != 2:
            raise PointNotOnSurface("blow-up points are ((x, y), [u:v])")
        if not any(d):
            raise PointNotOnSurface("[0:0] is not a point of P1")
        if d[0] * base[1] != d[1] * base[0]:
            raise PointNotOnSurface(f"{self.base}, [{d[0]}:{d[1]}] violates uy = vx")

    def as_tuple(self):
        return self.base + self.dir


def _catalog():
    pi_n, pi_n_inv = stereographic_north()
    phi0, phi1, proj = blowup_chart_maps()
    return {
        "pi_N": pi_n,
        "pi_N_inv": pi_n_inv,
        "sigma0": sigma0(),
        "sigma1": sigma1(),
        "tau0": tau0(),
        "e": e_invol(),
        "blowup_phi0": phi0,
        "blowup_phi1": phi1,
        "blowup_proj": proj,
    }


def names() -> list:
    return sorted(_catalog()) + ["monomial:[a,b,c,d]"]


def lookup(name: str) -> RationalMap:
    """Resolve a registry name such as ``sigma1`` or ``monomial:[1,1,0,1]``."""
    if name.startswith("monomial:"):
        try:
            a, b, c, d = json.loads(name[len("monomial:"):])
        except (ValueError, TypeError):
            raise UnknownName(f"malformed monomial name {name!r}") from None
        if not all(isinstance(v, int) for v in (a, b, c, d)):
            raise UnknownName(f"monomial entries must be integers in {name!r}")
        return monomial_torus([[a, b], [c, d]])
    try:
        return _catalog()[name]
    except KeyError:
        raise UnknownName(f"unknown map {name!r}; known: {names()}") from None
