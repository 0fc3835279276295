"""Rational functions that extend continuously across their denominator zeros.

Evaluation at a zero of the denominator restricts the function to a pencil
of rational lines through the point and compares the univariate limits.
Agreement along the pencil is evidence, not a proof, of continuity, and
results obtained that way are labelled ``"pencil"``.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import NestedRadical, PencilTooSmall, UnknownName
from .exactfield import decode_value, simplify
from .polyrat import MultiPoly
from .upoly import series_quotient

XY = ("x", "y")
XYZ = ("x", "y", "z")

PENCIL_VALUES = (Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2),
                 Fraction(2), Fraction(-2), Fraction(1, 3), Fraction(-1, 3))
DEFAULT_PENCIL = 8


class RegFunction:
    """``num / den`` over Q with numeric and monomial content cancelled."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None):
        if den is None:
            den = MultiPoly.const(num.vars, 1)
        if num.vars != den.vars:
            raise ValueError(f"numerator variables {num.vars} differ from {den.vars}")
        if not den:
            raise ZeroDivisionError("denominator is identically zero")
        if not (num.is_rational() and den.is_rational()):
            raise NestedRadical("regulous functions have rational coefficients")
        if num:
            mono = tuple(min(a, b) for a, b in zip(num.monomial_content(), den.monomial_content()))
            num, den = num.divide_monomial(mono), den.divide_monomial(mono)
            scale = den.numeric_content()
            if den.leading()[1] < 0:
                scale = -scale
            num, den = num * (1 / scale), den * (1 / scale)
        else:
            den = MultiPoly.const(num.vars, 1)
        self.num, self.den = num, den

    @classmethod
    def parse(cls, num: str, den: str = "1", vars=XY) -> "RegFunction":
        return cls(MultiPoly.parse(num, vars), MultiPoly.parse(den, vars))

    @property
    def vars(self):
        return self.num.vars

    @property
    def arity(self) -> int:
        return len(self.num.vars)

    def __repr__(self):
        return f"RegFunction(({self.num}) / ({self.den}))"

    def to_json(self):
        return {"vars": list(self.vars), "num": str(self.num), "den": str(self.den)}

    @classmethod
    def from_json(cls, obj) -> "RegFunction":
        try:
            num, den = obj["num"], obj.get("den", "1")
            if isinstance(num, dict):
                n = MultiPoly.from_json(num)
                d = MultiPoly.from_json(den) if isinstance(den, dict) else MultiPoly.parse(den, n.vars)
                return cls(n, d)
            return cls.parse(num, den, tuple(obj["vars"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad function encoding: {exc}") from None


@dataclass(frozen=True)
class Value:
    value: Fraction
    how: str = "direct"  # "direct" when the denominator is nonzero, "pencil" otherwise


@dataclass(frozen=True)
class NotContinuous:
    """Two directions with different limits; ``None`` stands for an infinite limit."""

    dir1: tuple
    value1: Fraction | None
    dir2: tuple | None = None
    value2: Fraction | None = None


@dataclass(frozen=True)
class Undetermined:
    """Every sampled line lies in the zero set of the denominator."""

    reason: str = "DenIdenticallyZeroOnAllLines"


@dataclass(frozen=True)
class PassUpTo:
    k: int


@dataclass(frozen=True)
class FailAt:
    order: int
    direction: tuple


def _rational_point(p, n):
    out = []
    for c in p:
        if isinstance(c, (str, dict)):
            c = decode_value(c)
        c = simplify(c)
        if not isinstance(c, (int, Fraction)):
            raise NestedRadical("regulous evaluation needs rational points")
        out.append(Fraction(c))
    if len(out) != n:
        raise ValueError(f"point {tuple(out)} has {len(out)} coordinates, expected {n}")
    return tuple(out)


def pencil_directions(n: int, size: int = DEFAULT_PENCIL):
    """First ``size`` directions of the pencil, simplest first and pairwise non-proportional.

    Directions have a 1 in one slot and entries from a fixed list of small
    rationals elsewhere; coordinate axes come first.
    """
    cands = []
    for i in range(n):
        for rest in itertools.product(PENCIL_VALUES, repeat=n - 1):
            d = rest[:i] + (Fraction(1),) + rest[i:]
            cands.append(d)
    cands.sort(key=lambda d: (sum(1 for v in d if v), sum(v.denominator + abs(v.numerator) for v in d)))
    out, seen = [], set()
    for d in cands:
        piv = next(v for v in d if v)
        key = tuple(v / piv for v in d)
        if key not in seen:
            seen.add(key)
            out.append(d)
        if len(out) == size:
            break
    return out


def _line_restriction(f: RegFunction, p, d):
    """``(N, D)`` along ``t -> p + t d`` with common powers of ``t`` cancelled.

    Returns ``None`` when ``D`` vanishes identically on the line, and
    ``(N, None)`` when the limit at ``t = 0`` is infinite.
    """
    den = f.den.restrict_to_line(p, d)
    if not den:
        return None
    num = f.num.restrict_to_line(p, d)
    o = den.order_at_zero()
    if num and num.order_at_zero() < o:
        return num, None
    return num.shift_down(o), den.shift_down(o)


def eval_regulous(f: RegFunction, p, pencil_size: int = DEFAULT_PENCIL):
    """Exact value of the continuous extension of ``f`` at ``p`` (or a witness against it)."""
    if pencil_size < 2:
        raise PencilTooSmall("a pencil needs at least two directions")
    p = _rational_point(p, f.arity)
    dv = f.den.evaluate(p)
    if dv:
        return Value(simplify(f.num.evaluate(p) / dv), "direct")
    first = None
    for d in pencil_directions(f.arity, pencil_size):
        res = _line_restriction(f, p, d)
        if res is None:
            continue
        num, den = res
        if den is None:
            return NotContinuous(d, None)
        v = simplify(num[0] / den[0])
        if first is None:
            first = (d, v)
        elif v != first[1]:
            return NotContinuous(first[0], first[1], d, v)
    if first is None:
        return Undetermined()
    return Value(first[1], "pencil")


def zero_membership(f, p, pencil_size: int = DEFAULT_PENCIL) -> bool:
    if isinstance(f, MultiPoly):
        f = RegFunction(f)
    r = eval_regulous(f, p, pencil_size)
    return isinstance(r, Value) and r.value == 0


def _monomials(n, j):
    if n == 1:
        return [(j,)]
    return [(a,) + rest for a in range(j, -1, -1) for rest in _monomials(n - 1, j - a)]


def _rank(rows) -> int:
    """Rank by exact Gaussian elimination."""
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, len(m)):
            if m[i][c]:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _rank_increases(rows, new) -> bool:
    return _rank(list(rows) + [new]) > len(rows)


def _solve(rows, rhs):
    """Solve the square nonsingular system ``rows x = rhs`` exactly."""
    n = len(rows)
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    for c in range(n):
        piv = next(i for i in range(c, n) if m[i][c])
        m[c], m[piv] = m[piv], m[c]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return [m[i][n] / m[i][i] for i in range(n)]


def k_regulous_check(f: RegFunction, p, k: int, pencil_size: int = DEFAULT_PENCIL):
    """Do the line restrictions through ``p`` fit together like a C^k function up to order ``k``?

    For a C^k function the ``j``-th derivative along direction ``d`` is a
    homogeneous form of degree ``j`` in ``d``.  The form is fitted on a set of
    reference directions and every other direction must agree with it.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    p = _rational_point(p, f.arity)
    dirs = pencil_directions(f.arity, pencil_size)
    series = []
    for d in dirs:
        res = _line_restriction(f, p, d)
        if res is None:
            continue
        num, den = res
        if den is None:
            return FailAt(0, d)
        series.append((d, series_quotient(num, den, k)))
    if not series:
        return Undetermined()
    for j in range(k + 1):
        monos = _monomials(f.arity, j)
        rows = []
        for d, coeffs in series:
            row = []
            for e in monos:
                v = Fraction(1)
                for di, ei in zip(d, e):
                    v *= di ** ei
                row.append(v)
            rows.append((d, row, factorial(j) * coeffs[j]))
        basis = []
        for d, row, val in rows:
            if len(basis) < len(monos) and _rank_increases([b[1] for b in basis], row):
                basis.append((d, row, val))
        if len(basis) < len(monos) or len(rows) <= len(monos):
            raise PencilTooSmall(
                f"order {j} needs {len(monos) + 1} directions spanning all {len(monos)} forms; "
                f"{len(rows)} usable directions span {len(basis)}"
            )
        form = _solve([b[1] for b in basis], [b[2] for b in basis])
        for d, row, val in rows:
            if sum(a * b for a, b in zip(form, row)) != val:
                return FailAt(j, d)
    return PassUpTo(k)


_HORN = "x^2+y^2*((y-z^2)^2+y*z^3)"


def builtin(name: str):
    """Named examples: umbrella surfaces (polynomials) and regulous functions."""
    m = re.fullmatch(r"k_family\((\d+)\)", name.strip())
    if m:
        k = int(m.group(1))
        return RegFunction.parse(f"x^{3 + k}", "x^2+y^2", XY)
    if name == "cartan_canopy":
        return RegFunction.parse("x^3", "x^2+y^2", XY)
    if name == "cartan_surface":
        return MultiPoly.parse("z*(x^2+y^2)-x^3", XYZ)
    if name == "horned_surface":
        return MultiPoly.parse(_HORN, XYZ)
    if name == "horn_splitter":
        return RegFunction.parse(f"z^2*({_HORN})", "x^2+y^4+y^2*z^4", XYZ)
    raise UnknownName(
        f"unknown function {name!r}; known: cartan_canopy, cartan_surface, horned_surface, "
        "horn_splitter, k_family(k)"
    )


def resolve_function(source) -> RegFunction:
    """A builtin name, a JSON object, or a JSON string encoding one."""
    if isinstance(source, str):
        text = source.strip()
        if text.startswith("{"):
            source = json.loads(text)
        else:
            f = builtin(text)
            return f if isinstance(f, RegFunction) else RegFunction(f)
    return RegFunction.from_json(source)
