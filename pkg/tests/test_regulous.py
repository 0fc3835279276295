import random
from fractions import Fraction

import pytest

from ratsurf.errors import NestedRadical, PencilTooSmall, UnknownName
from ratsurf.exactfield import EMPTY_CTX, adjoin_sqrt
from ratsurf.polyrat import MultiPoly
from ratsurf.regulous import (
    FailAt,
    NotContinuous,
    PassUpTo,
    RegFunction,
    Undetermined,
    Value,
    builtin,
    eval_regulous,
    k_regulous_check,
    pencil_directions,
    resolve_function,
    zero_membership,
)

XYZ = ("x", "y", "z")


def test_canopy_values():
    c = builtin("cartan_canopy")
    assert eval_regulous(c, (0, 0)) == Value(0, "pencil")
    assert eval_regulous(c, (1, 1)) == Value(Fraction(1, 2), "direct")


def test_infinite_limit_witness():
    f = RegFunction.parse("x", "x^2+y^2")
    res = eval_regulous(f, (0, 0))
    assert isinstance(res, NotContinuous)
    assert res.dir1 == (1, 0) and res.value1 is None


def test_disagreeing_limits():
    f = RegFunction.parse("x^2", "x^2+y^2")
    res = eval_regulous(f, (0, 0))
    assert isinstance(res, NotContinuous)
    assert (res.dir1, res.value1, res.dir2, res.value2) == ((1, 0), 1, (0, 1), 0)


def test_undetermined_when_all_lines_vanish():
    # the denominator vanishes on every line through the origin in the first two directions
    f = RegFunction.parse("x+y", "x*y", ("x", "y"))
    assert eval_regulous(f, (0, 0), pencil_size=2) == Undetermined()


def test_horn_splitter_points():
    h = builtin("horn_splitter")
    for c in (1, Fraction(1, 2), -2):
        assert eval_regulous(h, (0, 0, c)) == Value(Fraction(c) ** 2, "pencil")
    assert eval_regulous(h, (0, -16, 4)) == Value(0, "direct")
    assert zero_membership(h, (0, -16, 4))
    assert not zero_membership(h, (0, 0, 1))


def test_horned_surface_point():
    s = builtin("horned_surface")
    assert s.evaluate((0, -16, 4)) == 0
    assert zero_membership(s, (0, -16, 4))


def test_builtin_formulas():
    assert builtin("cartan_surface") == MultiPoly.parse("z*x^2+z*y^2-x^3", XYZ)
    h = builtin("horn_splitter")
    assert h.den == MultiPoly.parse("x^2+y^4+y^2*z^4", XYZ)
    assert h.num == MultiPoly.parse("z^2", XYZ) * builtin("horned_surface")
    assert builtin("k_family(2)").num == MultiPoly.parse("x^5", ("x", "y"))
    with pytest.raises(UnknownName):
        builtin("umbrella")


def test_content_is_removed():
    f = RegFunction.parse("2*x^3*y", "4*x^2*y+4*y^3")
    assert str(f.num) == "1/2*x^3" and str(f.den) == "x^2+y^2"


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_k_family(k):
    f = builtin(f"k_family({k})")
    assert k_regulous_check(f, (0, 0), k) == PassUpTo(k)
    res = k_regulous_check(f, (0, 0), k + 1)
    assert isinstance(res, FailAt) and res.order == k + 1


def test_canopy_fails_first_order():
    res = k_regulous_check(builtin("cartan_canopy"), (0, 0), 1)
    assert isinstance(res, FailAt) and res.order == 1


def test_k_check_at_regular_point_passes():
    assert k_regulous_check(builtin("cartan_canopy"), (1, 2), 3) == PassUpTo(3)


def test_pencil_too_small():
    with pytest.raises(PencilTooSmall):
        k_regulous_check(builtin("k_family(3)"), (0, 0), 3, pencil_size=4)
    with pytest.raises(PencilTooSmall):
        eval_regulous(builtin("cartan_canopy"), (0, 0), pencil_size=1)


def test_pencil_directions_distinct():
    dirs = pencil_directions(3, 30)
    assert len(dirs) == 30
    normed = {tuple(v / next(w for w in d if w) for v in d) for d in dirs}
    assert len(normed) == 30
    assert dirs[:3] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_agrees_with_direct_evaluation():
    rng = random.Random(9)
    f = builtin("horn_splitter")
    for _ in range(50):
        p = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(3))
        d = f.den.evaluate(p)
        if d:
            assert eval_regulous(f, p) == Value(f.num.evaluate(p) / d, "direct")


def test_rejects_tower_points():
    _, r = adjoin_sqrt(EMPTY_CTX, 2)
    with pytest.raises(NestedRadical):
        eval_regulous(builtin("cartan_canopy"), (r, 0))


def test_resolve_function():
    f = resolve_function('{"vars": ["x", "y"], "num": "x^3", "den": "x^2+y^2"}')
    assert eval_regulous(f, (0, 0)).value == 0
    g = resolve_function("horned_surface")
    assert isinstance(g, RegFunction) and g.den == 1
