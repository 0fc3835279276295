import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratsurf.catalog import sigma0, sigma1, stereographic_north
from ratsurf.errors import GrammarError, Indeterminate, PointNotOnSurface, SurfaceMismatch
from ratsurf.polyrat import (
    Equal,
    MultiPoly,
    NotEqual,
    RationalMap,
    compose,
    evaluate,
    factor_str,
    identity,
    maps_equal,
    reduce_mod_quadric,
    reduce_mod_sphere,
    sample_points,
    sphere_image_certificate,
    strip_content,
)
from ratsurf.twist import CircleMap, twisting_map
from ratsurf.upoly import UPoly

XYZ = ("x", "y", "z")


def P(text, vars=XYZ):
    return MultiPoly.parse(text, vars)


terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
    st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5)),
    max_size=6,
)
polys = terms.map(lambda t: MultiPoly(XYZ, t))


def test_parse_and_print():
    p = P("(x - 2*y)^2 + z/3")
    assert str(p) == "x^2-4*x*y+4*y^2+1/3*z"
    assert P("x**2 − 1") == P("x^2-1")
    with pytest.raises(GrammarError):
        P("x + w")
    with pytest.raises(GrammarError):
        P("x / y")
    with pytest.raises(GrammarError):
        P("(x + 1")


def test_no_zero_coefficients_stored():
    p = P("x + y") - P("x")
    assert p.terms == {(0, 1, 0): 1}


def test_json_round_trip():
    p = P("3/2*x^2*z - y + 7")
    assert MultiPoly.from_json(p.to_json()) == p
    assert p.to_json()["terms"][0] == {"exp": [2, 0, 1], "coeff": "3/2"}


@pytest.mark.parametrize("text,expect", [
    ("x*y^2+x*z^2", "x*(y^2+z^2)"),
    ("2*w-2*z", "2*(w-z)"),
    ("x*y*z", "x*y*z"),
    ("-x^2-x*y", "-x*(x+y)"),
])
def test_factor_str(text, expect):
    vars = ("w", "x", "y", "z") if "w" in text else XYZ
    assert factor_str(P(text, vars)) == expect


def test_reduce_mod_sphere_examples():
    assert not reduce_mod_sphere(P("x^2+y^2+z^2-1"))
    assert reduce_mod_sphere(P("z^3")) == P("z-x^2*z-y^2*z")
    assert reduce_mod_sphere(P("x^2")) == P("x^2")


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_reduce_mod_sphere_properties(p, q):
    r = reduce_mod_sphere(p)
    assert reduce_mod_sphere(r) == r
    assert r.degree_in(2) <= 1
    assert reduce_mod_sphere(p + q) == r + reduce_mod_sphere(q)
    assert reduce_mod_sphere(p * 3) == r * 3
    assert not reduce_mod_sphere(q * P("x^2+y^2+z^2-1"))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_reduce_mod_sphere_kernel_is_the_ideal(q, a, b):
    # r has z-degree <= 1, so q * relation + r reduces to exactly r
    r = reduce_mod_sphere(a) + reduce_mod_sphere(b) * P("z")
    r = reduce_mod_sphere(r)
    assert reduce_mod_sphere(q * P("x^2+y^2+z^2-1") + r) == r


def test_reduce_mod_quadric():
    v = ("w", "x", "y", "z")
    assert not reduce_mod_quadric(P("w^2-x^2-y^2-z^2", v))
    assert reduce_mod_quadric(P("w^3", v)) == P("w*x^2+w*y^2+w*z^2", v)


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_exact_division(p, q):
    if not q:
        return
    assert (p * q).divide_exact(q) == p


def test_evaluate_examples():
    assert evaluate(sigma0(), (1, 1, 1)) == (1, 1, 1)
    with pytest.raises(Indeterminate):
        evaluate(sigma0(), (0, 0, 1))
    pi_n, _ = stereographic_north()
    assert evaluate(pi_n, (1, 0, 0, -1)) == (0, 0, 1)
    with pytest.raises(Indeterminate):
        evaluate(pi_n, (1, 0, 0, 1))
    with pytest.raises(PointNotOnSurface):
        evaluate(pi_n, (2, 1, 0, 1))
    assert evaluate(pi_n, (2, 1, 0, 1), check=False) == (1, 0, 1)


def test_compose_examples():
    s0 = sigma0()
    sq = compose(s0, s0)
    assert sq.coords == tuple(P(t) for t in ("x^2*y*z", "x*y^2*z", "x*y*z^2"))
    assert strip_content(sq).coords == identity("P2").coords
    f = sigma1()
    assert compose(identity("P2"), f).coords == f.coords
    with pytest.raises(SurfaceMismatch):
        compose(s0, stereographic_north()[1])


def test_compose_stereographic_factor():
    pi_n, pi_inv = stereographic_north()
    h = compose(pi_inv, pi_n)
    res = maps_equal(h, identity("Q31"))
    assert isinstance(res, Equal) and res.factor_text() == "2*(w-z)"


def test_maps_equal_examples():
    res = maps_equal(compose(sigma1(), sigma1()), identity("P2"))
    assert isinstance(res, Equal) and factor_str(res.factor) == "x*(y^2+z^2)"
    ne = maps_equal(sigma0(), sigma1())
    assert isinstance(ne, NotEqual) and ne.witness == (1, 2, 3)
    with pytest.raises(SurfaceMismatch):
        maps_equal(sigma0(), identity("Sphere"))


def test_evaluate_commutes_with_compose():
    rng = random.Random(7)
    maps = [sigma0(), sigma1(), identity("P2")]
    checked = 0
    for _ in range(200):
        g, f = rng.choice(maps), rng.choice(maps)
        p = tuple(Fraction(rng.randint(-5, 5)) for _ in range(3))
        try:
            expect = evaluate(g, evaluate(f, p))
        except (Indeterminate, PointNotOnSurface):
            continue
        assert evaluate(compose(g, f), p) == expect
        checked += 1
    assert checked > 100


def test_affine_compose_with_sphere_maps():
    t = twisting_map(CircleMap(UPoly((1, -2))))
    w = t.world_map()
    assert sphere_image_certificate(w)
    h = compose(w, w)
    for p in sample_points("Sphere", count=10):
        assert evaluate(h, p) == t(t(p))


def test_sphere_certificate_rejects_non_sphere_map():
    bad = RationalMap("Sphere", "Sphere", (P("2*x"), P("y"), P("z")))
    assert not sphere_image_certificate(bad)


def test_map_json_round_trip():
    f = sigma1()
    g = RationalMap.from_json(f.to_json())
    assert g.coords == f.coords and g.source == f.source
    w = twisting_map(CircleMap(UPoly((1, -2)))).world_map()
    w2 = RationalMap.from_json(w.to_json())
    assert w2.dens == w.dens and w2.coords == w.coords


def test_homogeneity_enforced():
    with pytest.raises(ValueError):
        RationalMap("P2", "P2", (P("x^2"), P("y"), P("z")))
