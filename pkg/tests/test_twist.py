import random
from fractions import Fraction

import pytest

from conftest import distinct_sphere_points, random_rational, random_sphere_point
from ratsurf.errors import (
    DuplicateInput,
    DuplicateNodes,
    InvalidEps,
    NestedRadical,
    TargetNotOnCircle,
    ToleranceUnreachable,
)
from ratsurf.exactfield import EMPTY_CTX, adjoin_sqrt
from ratsurf.geom import CYCLE, Rotation3, cayley_rotation
from ratsurf.polyrat import Equal, compose, evaluate, identity, maps_equal, sample_points, sphere_image_certificate
from ratsurf.twist import (
    CircleMap,
    TwistingMap,
    apply_twists,
    dehn_grid,
    dehn_twist_map,
    interpolate_circle,
    profile_within,
    solution_certificates,
    transitivity_solve,
    twist_inverse,
    twisting_map,
    winding_number,
)
from ratsurf.upoly import UPoly

H = Fraction(1, 2)


def test_interpolation_line_example():
    f = interpolate_circle([(0, (0, 1)), (H, (1, 0))])
    assert f.r == UPoly((1, -2)) and f.post == (1, 0)
    assert f(0) == (0, 1) and f(H) == (1, 0)


def test_interpolation_single_identity_node():
    f = interpolate_circle([(0, (1, 0))])
    assert f.is_identity()


def test_interpolation_antipode_fallback():
    f = interpolate_circle([(-H, (-1, 0)), (H, (1, 0))])
    assert f.post == (0, 1)
    assert f(-H) == (-1, 0) and f(H) == (1, 0)
    assert f.on_circle_identically() and f.pole_free()


def test_interpolation_errors():
    with pytest.raises(DuplicateNodes):
        interpolate_circle([(0, (1, 0)), (0, (0, 1))])
    with pytest.raises(TargetNotOnCircle):
        interpolate_circle([(0, (1, 1))])


def test_interpolation_with_tower_targets():
    ctx, s = adjoin_sqrt(EMPTY_CTX, Fraction(1, 2))
    rho = (s, s)
    f = interpolate_circle([(Fraction(1, 3), rho), (-H, (0, -1)), (H, (-1, 0))])
    assert f(Fraction(1, 3)) == rho
    assert f(-H) == (0, -1) and f(H) == (-1, 0)
    assert f.on_circle_identically()


def test_twisting_map_examples():
    ident = twisting_map(CircleMap.constant((1, 0)), cayley_rotation(1, 2, 3))
    p = (Fraction(2, 3), Fraction(1, 3), Fraction(2, 3))
    assert ident(p) == p
    quarter = twisting_map(CircleMap.constant((0, 1)))
    w = quarter.world_map()
    assert [str(c) for c in w.coords] == ["-y", "x", "z"]
    f = interpolate_circle([(0, (0, 1)), (H, (1, 0))])
    assert twisting_map(f)((1, 0, 0)) == (0, 1, 0)


def test_inverse_examples():
    assert twist_inverse(twisting_map(CircleMap.constant((1, 0)))).profile.is_identity()
    q = twisting_map(CircleMap.constant((0, 1)))
    qi = twist_inverse(q)
    assert qi.profile.post == (0, -1)
    assert isinstance(q.certify_inverse(), Equal)
    f = interpolate_circle([(0, (0, 1)), (H, (1, 0))])
    t = twisting_map(f, cayley_rotation(1, 0, 2))
    assert isinstance(t.certify_inverse(), Equal)
    # the same identity in ambient coordinates
    h = compose(t.world_map(), t.inverse().world_map())
    assert isinstance(maps_equal(h, identity("Sphere")), Equal)


def test_world_and_local_realizations_agree():
    f = interpolate_circle([(0, (0, 1)), (H, (Fraction(3, 5), Fraction(-4, 5)))])
    t = twisting_map(f, cayley_rotation(2, -1, 1))
    w = t.world_map()
    assert sphere_image_certificate(w)
    for p in sample_points("Sphere", count=40):
        assert evaluate(w, p) == t(p)


def test_twists_preserve_sphere_and_fix_poles():
    rng = random.Random(5)
    for _ in range(10):
        nodes = [(Fraction(k, 7), random_circle(rng)) for k in range(-3, 3)]
        frame = cayley_rotation(*(rng.randint(-3, 3) for _ in range(3)))
        t = twisting_map(interpolate_circle(nodes), frame)
        assert t.sphere_certificate()
        axis = frame.row(2)
        assert t(axis) == axis
        assert t(tuple(-c for c in axis)) == tuple(-c for c in axis)
        for _ in range(10):
            x, y, z = t(random_sphere_point(rng))
            assert x * x + y * y + z * z == 1


def random_circle(rng):
    t = random_rational(rng, 9)
    return ((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def test_circle_product_and_conjugate():
    f = interpolate_circle([(0, (0, 1)), (H, (1, 0))])
    g = interpolate_circle([(0, (Fraction(3, 5), Fraction(4, 5)))])
    fg = f * g
    for z in (Fraction(-1, 3), 0, H):
        a, b = f(z), g(z)
        assert fg(z) == (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])
    assert (f * f.conjugate())(Fraction(1, 7)) == (1, 0)


def test_solver_single_point():
    twists = transitivity_solve([(1, 0, 0)], [(0, 1, 0)])
    assert len(twists) == 1
    t = twists[0]
    assert t.frame == Rotation3.identity()
    assert t.profile(Fraction(1, 3)) == (0, 1) and t.profile(-H) == (0, 1)
    assert apply_twists(twists, (1, 0, 0)) == (0, 1, 0)


def test_solver_identity_is_empty():
    P = [(1, 0, 0), (0, 0, 1)]
    assert transitivity_solve(P, P) == []


def test_solver_two_points_example():
    P = [(1, 0, 0), (Fraction(3, 5), Fraction(4, 5), 0)]
    Q = [(0, 1, 0), (Fraction(-3, 5), Fraction(4, 5), 0)]
    twists = transitivity_solve(P, Q)
    assert len(twists) <= 4
    assert [apply_twists(twists, p) for p in P] == Q
    assert solution_certificates(P, Q, twists) == {"hits": True, "involutions": True}


def test_solver_swaps_points():
    P = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    Q = [P[1], P[2], P[0]]
    twists = transitivity_solve(P, Q)
    assert len(twists) <= 6
    assert [apply_twists(twists, p) for p in P] == Q


def test_solver_stage_pins_placed_points():
    rng = random.Random(11)
    P = distinct_sphere_points(rng, 3)
    Q = distinct_sphere_points(rng, 3)
    twists = transitivity_solve(P, Q)
    # after all twists for stage 1 the first point stays put
    placed = apply_twists(twists, P[0])
    assert placed == Q[0]


def test_solver_random_instances():
    rng = random.Random(2024)
    for i in range(25):
        n = 1 + i % 4
        P, Q = distinct_sphere_points(rng, n), distinct_sphere_points(rng, n)
        twists = transitivity_solve(P, Q)
        assert len(twists) <= 2 * n
        assert [apply_twists(twists, p) for p in P] == Q


def test_solver_errors():
    with pytest.raises(DuplicateInput):
        transitivity_solve([(1, 0, 0), (1, 0, 0)], [(0, 1, 0), (0, 0, 1)])
    with pytest.raises(DuplicateInput):
        transitivity_solve([(1, 0, 0)], [(0, 1, 0), (0, 0, 1)])
    _, r = adjoin_sqrt(EMPTY_CTX, Fraction(1, 2))
    with pytest.raises(NestedRadical):
        transitivity_solve([(r, r, 0)], [(1, 0, 0)])


def test_twist_json_round_trip():
    f = interpolate_circle([(0, (0, 1)), (H, (-1, 0))])
    t = TwistingMap(f, CYCLE)
    t2 = TwistingMap.from_json(t.to_json())
    p = (Fraction(2, 3), Fraction(2, 3), Fraction(1, 3))
    assert t2(p) == t(p)


def test_winding_examples():
    assert winding_number(CircleMap.constant((0, 1))) == 0
    loop = CircleMap(UPoly((0, 1)), UPoly((Fraction(-1, 16), 0, 1)))
    assert abs(winding_number(loop)) == 1
    assert winding_number(loop.conjugate()) == -winding_number(loop)
    # squaring doubles the turns of a profile whose ends meet at (1, 0)
    closed = dehn_twist_map([], Fraction(1, 4), Fraction(1, 20)).profile
    assert winding_number(closed * closed) == 2
    assert winding_number(closed * closed * closed.conjugate()) == 1


def test_winding_closing_arc():
    # half a turn from (1,0) to (-1,0): the closing arc is taken counterclockwise
    half = interpolate_circle([(-1, (1, 0)), (0, (0, 1)), (1, (-1, 0))])
    assert winding_number(half) == 1
    assert winding_number(half.conjugate()) == 0


def test_dehn_examples():
    eps = Fraction(1, 4)
    d = dehn_twist_map([], eps, Fraction(1, 20))
    assert winding_number(d.profile) == 1
    d2 = dehn_twist_map([H, -H], eps, Fraction(1, 20))
    assert d2.profile(H) == (1, 0) and d2.profile(-H) == (1, 0)
    loose = dehn_twist_map([], eps, 1)
    assert loose.profile.q.degree == 3
    assert profile_within(d2.profile, dehn_grid(eps), Fraction(1, 20))
    assert d2.profile.pole_free()


def test_dehn_errors():
    with pytest.raises(InvalidEps):
        dehn_twist_map([], 0, Fraction(1, 10))
    with pytest.raises(InvalidEps):
        dehn_twist_map([Fraction(1, 8)], Fraction(1, 4), Fraction(1, 10))
    with pytest.raises(ToleranceUnreachable):
        dehn_twist_map([], Fraction(1, 4), Fraction(1, 10**9), degree_cap=9)
