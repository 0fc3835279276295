"""Sparse multivariate polynomials and rational maps between rational surfaces.

A :class:`MultiPoly` maps exponent tuples to nonzero coefficients (Fractions
or tower elements).  A :class:`RationalMap` is a tuple of coordinate
polynomials in the variables of its source surface; maps into affine
surfaces additionally carry one denominator per coordinate.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    DenominatorZero,
    GrammarError,
    Indeterminate,
    PointNotOnSurface,
    SurfaceMismatch,
    UnknownName,
)
from .exactfield import TowerElem, decode_value, encode_value, format_rational, simplify
from .geom import normalize_projective, proportional, sphere_from_plane
from .upoly import UPoly


def _grlex(exp):
    return (sum(exp), exp)


def _coeff_str(c) -> str:
    c = simplify(c)
    if isinstance(c, Fraction):
        return format_rational(c)
    return f"({c})"


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        clean = {}
        if terms:
            n = len(self.vars)
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != n:
                    raise ValueError(f"exponent {exp} does not match variables {self.vars}")
                c = simplify(c)
                if c:
                    clean[exp] = c
        self.terms = clean

    @classmethod
    def _raw(cls, vars, terms):
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        return obj

    @classmethod
    def var(cls, vars, name):
        vars = tuple(vars)
        i = vars.index(name)
        return cls._raw(vars, {tuple(int(j == i) for j in range(len(vars))): Fraction(1)})

    @classmethod
    def const(cls, vars, c):
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def parse(cls, text: str, vars) -> "MultiPoly":
        return _PolyParser(text, tuple(vars)).parse()

    # -- basic queries ------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, idx) -> int:
        if isinstance(idx, int):
            idx = (idx,)
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def multidegrees(self, groups) -> set:
        return {tuple(sum(e[i] for i in g) for g in groups) for e in self.terms}

    def leading(self):
        exp = max(self.terms, key=_grlex)
        return exp, self.terms[exp]

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.terms.values())

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if other.vars != self.vars:
            raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.const(self.vars, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = simplify(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            other = simplify(other)
            if not other:
                return MultiPoly._raw(self.vars, {})
            return MultiPoly._raw(self.vars, {e: simplify(c * other) for e, c in self.terms.items()})
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.vars, {e: simplify(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = MultiPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction, TowerElem)):
            return (self - other).terms == {}
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- evaluation and substitution ---------------------------------------
    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        return self.evaluate(point)

    def evaluate(self, point):
        if len(point) != len(self.vars):
            raise ValueError(f"point of arity {len(point)} for variables {self.vars}")
        powers = [[Fraction(1)] for _ in point]
        acc = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    pw = powers[i]
                    while len(pw) <= k:
                        pw.append(pw[-1] * point[i])
                    t = t * pw[k]
            acc = acc + t
        return simplify(acc)

    def substitute(self, polys, _cache=None) -> "MultiPoly":
        """Replace variable ``i`` by ``polys[i]`` (all over one common variable list)."""
        polys = list(polys)
        if len(polys) != len(self.vars):
            raise ValueError("substitution arity mismatch")
        target_vars = polys[0].vars
        cache = _cache if _cache is not None else {}
        acc = MultiPoly._raw(target_vars, {})
        for e, c in self.terms.items():
            t = MultiPoly.const(target_vars, c)
            for i, k in enumerate(e):
                if k:
                    t = t * _power(cache, ("v", i), polys[i], k)
            acc = acc + t
        return acc

    def restrict_to_line(self, point, direction) -> UPoly:
        """Univariate polynomial ``t -> self(point + t * direction)``."""
        lines = [UPoly((p, d)) for p, d in zip(point, direction)]
        cache: dict = {}
        acc = UPoly()
        for e, c in self.terms.items():
            t = UPoly.const(c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = lines[i] ** k
                    t = t * cache[key]
            acc = acc + t
        return acc

    # -- division and content ----------------------------------------------
    def divide_exact(self, other: "MultiPoly"):
        """Quotient if ``other`` divides ``self`` exactly, else ``None``."""
        self._check(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        lexp, lc = other.leading()
        rem = self
        quot: dict = {}
        while rem:
            exp, c = rem.leading()
            diff = tuple(a - b for a, b in zip(exp, lexp))
            if any(d < 0 for d in diff):
                return None
            q = simplify(c / lc)
            quot[diff] = q
            rem = rem - MultiPoly._raw(self.vars, {diff: q}) * other
        return MultiPoly._raw(self.vars, quot)

    def monomial_content(self) -> tuple:
        if not self.terms:
            return (0,) * len(self.vars)
        exps = list(self.terms)
        return tuple(min(e[i] for e in exps) for i in range(len(self.vars)))

    def numeric_content(self) -> Fraction:
        """Positive rational gcd of the coefficients (1 when some coefficient is irrational)."""
        if not self.terms or not self.is_rational():
            return Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def divide_monomial(self, exp) -> "MultiPoly":
        return MultiPoly._raw(
            self.vars, {tuple(a - b for a, b in zip(e, exp)): c for e, c in self.terms.items()}
        )

    def primitive(self):
        """Split as ``content * monomial * rest`` with ``rest`` primitive."""
        mono = self.monomial_content()
        rest = self.divide_monomial(mono)
        c = rest.numeric_content()
        if rest.terms and isinstance(rest.leading()[1], Fraction) and rest.leading()[1] < 0:
            c = -c
        return c, mono, rest * (1 / c)

    # -- relations ----------------------------------------------------------
    def reduce_power(self, idx: int, replacement: "MultiPoly") -> "MultiPoly":
        """Rewrite ``v**2 -> replacement`` for ``v = vars[idx]`` until ``deg_v <= 1``."""
        cache: dict = {}
        out: dict = {}
        for e, c in self.terms.items():
            q, r = divmod(e[idx], 2)
            base = e[:idx] + (r,) + e[idx + 1:]
            if q == 0:
                out[base] = out.get(base, 0) + c
                continue
            rep = _power(cache, "rep", replacement, q)
            for e2, c2 in rep.terms.items():
                k = tuple(a + b for a, b in zip(base, e2))
                out[k] = out.get(k, 0) + c * c2
        return MultiPoly._raw(self.vars, {e: simplify(c) for e, c in out.items() if c})

    # -- text ---------------------------------------------------------------
    def _mono_str(self, exp) -> str:
        parts = []
        for v, k in zip(self.vars, exp):
            if k == 1:
                parts.append(v)
            elif k > 1:
                parts.append(f"{v}^{k}")
        return "*".join(parts)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = self._mono_str(e)
            if not mono:
                out.append(_coeff_str(c))
            elif c == 1:
                out.append(mono)
            elif c == -1:
                out.append("-" + mono)
            else:
                out.append(f"{_coeff_str(c)}*{mono}")
        return "+".join(out).replace("+-", "-")

    def __repr__(self):
        return f"MultiPoly({self}; {','.join(self.vars)})"

    def to_json(self):
        return {
            "vars": list(self.vars),
            "terms": [{"exp": list(e), "coeff": encode_value(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj):
        try:
            vars = tuple(obj["vars"])
            terms: dict = {}
            for t in obj["terms"]:
                e = tuple(int(k) for k in t["exp"])
                if any(k < 0 for k in e):
                    raise ValueError("negative exponent")
                terms[e] = terms.get(e, 0) + decode_value(t["coeff"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad polynomial encoding: {exc}") from None
        return cls(vars, terms)


def _power(cache, key, poly, k):
    """``poly**k`` memoised in ``cache`` under ``key`` (builds on lower powers)."""
    pw = cache.get(key)
    if pw is None:
        pw = cache[key] = [MultiPoly.const(poly.vars, 1), poly]
    while len(pw) <= k:
        pw.append(pw[-1] * poly)
    return pw[k]


def factor_str(p: MultiPoly) -> str:
    """Print ``p`` with its numeric and monomial content pulled out, e.g. ``x*(y^2+z^2)``."""
    if not p.terms or len(p.terms) == 1 or not p.is_rational():
        return str(p)
    c, mono, rest = p.primitive()
    head = []
    if c == -1:
        head.append("-")
    elif c != 1:
        head.append(format_rational(c) + "*")
    m = rest._mono_str(mono)
    wrap = len(rest.terms) > 1 and (head or m)
    body = f"({rest})" if wrap else str(rest)
    parts = ([m] if m else []) + ([body] if body != "1" or not m else [])
    return "".join(head) + "*".join(parts)


class _PolyParser:
    _tok = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")

    def __init__(self, text, vars):
        self.vars = vars
        self.toks = []
        pos = 0
        text = text.replace("−", "-")
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = self._tok.match(text, pos)
            if not m:
                raise GrammarError(f"cannot parse polynomial at {text[pos:]!r}")
            num, name, op = m.groups()
            if num:
                self.toks.append(("num", int(num)))
            elif name:
                if name not in vars:
                    raise GrammarError(f"unknown variable {name!r} (expected one of {vars})")
                self.toks.append(("var", name))
            else:
                self.toks.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        p = self.expr()
        if self.i != len(self.toks):
            raise GrammarError(f"trailing input in polynomial: {self.toks[self.i:]}")
        return p

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        acc = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            f = self.factor()
            if op == "*":
                acc = acc * f
            else:
                if not f.is_constant() or not f:
                    raise GrammarError("division only by nonzero constants")
                acc = acc * (1 / f.constant_value())
        return acc

    def factor(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise GrammarError("exponent must be a nonnegative integer")
            base = base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return MultiPoly.const(self.vars, val)
        if kind == "var":
            return MultiPoly.var(self.vars, val)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise GrammarError("missing ')'")
            return p
        raise GrammarError(f"unexpected token {val!r}")


# -- surfaces -----------------------------------------------------------------

@dataclass(frozen=True)
class Surface:
    name: str
    vars: tuple
    projective: bool
    groups: tuple  # coordinate index groups that are homogeneous/projective
    relation: tuple | None = None  # (variable index, replacement for var**2)

    def relation_poly(self):
        if self.relation is None:
            return None
        idx, text = self.relation
        return idx, MultiPoly.parse(text, self.vars)

    def check_point(self, p):
        p = tuple(simplify(v) for v in p)
        if len(p) != len(self.vars):
            raise PointNotOnSurface(f"{self.name} points have {len(self.vars)} coordinates")
        for g in self.groups:
            if not any(p[i] for i in g):
                raise PointNotOnSurface(f"all coordinates zero in a projective factor of {p}")
        if self.name == "Sphere" and p[0] ** 2 + p[1] ** 2 + p[2] ** 2 != 1:
            raise PointNotOnSurface(f"{p} is not on the unit sphere")
        if self.name == "Q31" and p[1] ** 2 + p[2] ** 2 + p[3] ** 2 != p[0] ** 2:
            raise PointNotOnSurface(f"{p} is not on the quadric x²+y²+z²=w²")
        if self.name == "BlowupChart" and p[2] * p[1] != p[3] * p[0]:
            raise PointNotOnSurface(f"{p} violates the incidence uy = vx")
        return p


SURFACES = {
    "P2": Surface("P2", ("x", "y", "z"), True, ((0, 1, 2),)),
    "Q31": Surface("Q31", ("w", "x", "y", "z"), True, ((0, 1, 2, 3),), (0, "x^2+y^2+z^2")),
    "P1xP1": Surface("P1xP1", ("x0", "x1", "y0", "y1"), True, ((0, 1), (2, 3))),
    "Sphere": Surface("Sphere", ("x", "y", "z"), False, (), (2, "1-x^2-y^2")),
    "A2": Surface("A2", ("x", "y"), False, ()),
    "BlowupChart": Surface("BlowupChart", ("x", "y", "u", "v"), False, ((2, 3),)),
}


def surface(name: str) -> Surface:
    try:
        return SURFACES[name]
    except KeyError:
        raise UnknownName(f"unknown surface {name!r}; known: {sorted(SURFACES)}") from None


def reduce_mod_sphere(p: MultiPoly) -> MultiPoly:
    """Normal form modulo ``x²+y²+z²-1``: rewrite ``z² -> 1-x²-y²`` until ``deg_z <= 1``."""
    if p.vars != ("x", "y", "z"):
        raise ValueError(f"reduce_mod_sphere needs variables (x, y, z), got {p.vars}")
    return p.reduce_power(2, MultiPoly.parse("1-x^2-y^2", p.vars))


def reduce_mod_quadric(p: MultiPoly) -> MultiPoly:
    """Normal form modulo ``x²+y²+z²-w²`` on P3: rewrite ``w² -> x²+y²+z²``."""
    if p.vars != ("w", "x", "y", "z"):
        raise ValueError(f"reduce_mod_quadric needs variables (w, x, y, z), got {p.vars}")
    return p.reduce_power(0, MultiPoly.parse("x^2+y^2+z^2", p.vars))


def reduce_mod_relation(p: MultiPoly, surf: Surface) -> MultiPoly:
    rel = surf.relation_poly()
    if rel is None:
        return p
    idx, rep = rel
    return p.reduce_power(idx, rep)


# -- rational maps --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RationalMap:
    source: str
    target: str
    coords: tuple
    dens: tuple | None = None

    def __post_init__(self):
        src, tgt = surface(self.source), surface(self.target)
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != len(tgt.vars):
            raise ValueError(f"{self.target} needs {len(tgt.vars)} coordinates, got {len(coords)}")
        for c in coords:
            if c.vars != src.vars:
                raise ValueError(f"coordinate variables {c.vars} differ from {src.vars}")
        if tgt.projective:
            if self.dens is not None:
                raise ValueError("maps into projective targets carry no denominators")
        else:
            dens = self.dens
            if dens is None:
                dens = tuple(MultiPoly.const(src.vars, 1) for _ in coords)
            dens = tuple(dens)
            if len(dens) != len(coords) or any(d.vars != src.vars for d in dens):
                raise ValueError("denominators do not match coordinates")
            if any(not d for d in dens):
                raise ValueError("zero denominator polynomial")
            object.__setattr__(self, "dens", dens)
        groups = tgt.groups if tgt.projective else ()
        for g in groups:
            polys = [coords[i] for i in g]
            if not any(polys):
                raise ValueError("a projective factor has all coordinates identically zero")
            if src.projective:
                degs = set()
                for p in polys:
                    degs |= p.multidegrees(src.groups)
                if len(degs) > 1:
                    raise ValueError(f"coordinates {polys} are not homogeneous of one degree")

    def __repr__(self):
        body = ", ".join(
            str(c) if self.dens is None or self.dens[i] == 1 else f"({c})/({self.dens[i]})"
            for i, c in enumerate(self.coords)
        )
        return f"RationalMap[{self.source}->{self.target}]({body})"

    def to_json(self):
        out = {
            "source": self.source,
            "target": self.target,
            "coords": [c.to_json() for c in self.coords],
        }
        if self.dens is not None:
            out["dens"] = [d.to_json() for d in self.dens]
        return out

    @classmethod
    def from_json(cls, obj):
        try:
            coords = tuple(MultiPoly.from_json(c) for c in obj["coords"])
            dens = obj.get("dens")
            if dens is not None:
                dens = tuple(MultiPoly.from_json(d) for d in dens)
            return cls(obj["source"], obj["target"], coords, dens)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad map encoding: {exc}") from None

    def __call__(self, point):
        return evaluate(self, point)


def identity(surface_name: str) -> RationalMap:
    s = surface(surface_name)
    coords = tuple(MultiPoly.var(s.vars, v) for v in s.vars)
    return RationalMap(surface_name, surface_name, coords)


def _point_tuple(p):
    if hasattr(p, "as_tuple"):
        return tuple(p.as_tuple())
    return tuple(p)


def evaluate(f: RationalMap, p, check: bool = True):
    """Exact image of ``p``; projective factors are scaled so their first nonzero entry is 1."""
    src, tgt = surface(f.source), surface(f.target)
    p = _point_tuple(p)
    p = src.check_point(p) if check else tuple(simplify(v) for v in p)
    vals = [c.evaluate(p) for c in f.coords]
    if tgt.projective:
        for g in tgt.groups:
            if not any(vals[i] for i in g):
                raise Indeterminate(f"{p} is a base point of {f}")
        spans = tuple((g[0], g[-1] + 1) for g in tgt.groups)
        return normalize_projective(vals, spans)
    out = []
    for v, d in zip(vals, f.dens):
        dv = d.evaluate(p)
        if not dv:
            raise DenominatorZero(f"denominator {d} vanishes at {p}")
        out.append(simplify(v / dv))
    for g in tgt.groups:
        if not any(out[i] for i in g):
            raise Indeterminate(f"{p} is a base point of {f}")
        lo, hi = g[0], g[-1] + 1
        out[lo:hi] = normalize_projective(out[lo:hi])
    return tuple(out)


def _fraction_substitute(poly: MultiPoly, nums, groups, cache):
    """Substitute ``vars[i] -> nums[i] / D_G`` (``i`` in group ``G``).

    Returns ``(numerator, exponents)`` where the value equals
    ``numerator / prod_G D_G**exponents[G]``.
    """
    target_vars = nums[0].vars
    exps = [poly.degree_in(idx) if poly else 0 for _, idx in groups]
    acc = MultiPoly._raw(target_vars, {})
    for e, c in poly.terms.items():
        t = MultiPoly.const(target_vars, c)
        for gi, (den, idx) in enumerate(groups):
            s = 0
            for i in idx:
                if e[i]:
                    t = t * _power(cache, ("n", i), nums[i], e[i])
                    s += e[i]
            if exps[gi] > s and not den.is_constant():
                t = t * _power(cache, ("d", gi), den, exps[gi] - s)
            elif exps[gi] > s:
                t = t * (den.constant_value() ** (exps[gi] - s))
        acc = acc + t
    return acc, exps


def compose(g: RationalMap, f: RationalMap, strip: bool = False) -> RationalMap:
    """``g ∘ f`` by formal substitution of the coordinates of ``f`` into ``g``.

    With ``strip`` the numeric content and common monomial factor of each
    projective coordinate block are removed; by default nothing is cancelled
    so the proportionality factor against a reference map stays visible.
    """
    if f.target != g.source:
        raise SurfaceMismatch(f"cannot compose {g.source}<-{g.target} after {f.source}->{f.target}")
    src = surface(g.source)
    cache: dict = {}
    if src.projective:
        coords = [c.substitute(f.coords, cache) for c in g.coords]
        dens = None if g.dens is None else [d.substitute(f.coords, cache) for d in g.dens]
    else:
        groups = []
        for i, d in enumerate(f.dens):
            for gi, (den, idx) in enumerate(groups):
                if den == d:
                    idx.append(i)
                    break
            else:
                groups.append((d, [i]))
        coords, dens = [], []
        for num_g, den_g in zip(g.coords, g.dens):
            rn, en = _fraction_substitute(num_g, f.coords, groups, cache)
            rd, ed = _fraction_substitute(den_g, f.coords, groups, cache)
            for gi, (den, _) in enumerate(groups):
                k = ed[gi] - en[gi]
                if k > 0:
                    rn = rn * _power(cache, ("d", gi), den, k)
                elif k < 0:
                    rd = rd * _power(cache, ("d", gi), den, -k)
            coords.append(rn)
            dens.append(rd)
        if surface(g.target).projective:
            dens = None
    out = RationalMap(f.source, g.target, tuple(coords),
                      None if dens is None else tuple(dens))
    return strip_content(out) if strip else out


def strip_content(f: RationalMap) -> RationalMap:
    tgt = surface(f.target)
    if not tgt.projective:
        return f
    coords = list(f.coords)
    for g in tgt.groups:
        polys = [coords[i] for i in g if coords[i]]
        if not all(p.is_rational() for p in polys):
            continue
        mono = tuple(min(m) for m in zip(*(p.monomial_content() for p in polys)))
        num = 0
        den = 1
        for p in polys:
            c = p.numeric_content()
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        content = Fraction(num, den)
        for i in g:
            coords[i] = coords[i].divide_monomial(mono) * (1 / content) if coords[i] else coords[i]
    return RationalMap(f.source, f.target, tuple(coords), f.dens)


# -- equality certification -------------------------------------------------------

@dataclass(frozen=True)
class Equal:
    """Maps agree; ``factor`` is ``lhs = factor * rhs`` (a tuple per projective factor)."""

    factor: object = None

    def __bool__(self):
        return True

    def factor_text(self):
        if self.factor is None:
            return None
        if isinstance(self.factor, tuple):
            return [factor_str(f) if f is not None else None for f in self.factor]
        return factor_str(self.factor)


@dataclass(frozen=True)
class NotEqual:
    witness: tuple | None = None
    lhs_value: tuple | None = None
    rhs_value: tuple | None = None

    def __bool__(self):
        return False


def _proportionality(fg, gg, surf):
    """Polynomial ``lam`` with ``fg[i] == lam * gg[i]`` modulo the relation, if one exists."""
    for i in range(len(gg)):
        if not gg[i]:
            continue
        for cand in (fg[i], reduce_mod_relation(fg[i], surf)):
            lam = cand.divide_exact(gg[i])
            if lam is None:
                continue
            if all(not reduce_mod_relation(fg[j] - lam * gg[j], surf) for j in range(len(gg))):
                return lam
    return None


def maps_equal(f: RationalMap, g: RationalMap, seed: int = 0, samples: int = 200):
    """Exact symbolic equality of two rational maps on their common source."""
    if f.source != g.source or f.target != g.target:
        raise SurfaceMismatch(
            f"comparing {f.source}->{f.target} with {g.source}->{g.target}"
        )
    src, tgt = surface(f.source), surface(f.target)
    equal = True
    factors = []
    if tgt.projective:
        for grp in tgt.groups:
            fg = [f.coords[i] for i in grp]
            gg = [g.coords[i] for i in grp]
            for a in range(len(grp)):
                for b in range(a + 1, len(grp)):
                    if reduce_mod_relation(fg[a] * gg[b] - fg[b] * gg[a], src):
                        equal = False
                        break
                if not equal:
                    break
            if not equal:
                break
            factors.append(_proportionality(fg, gg, src))
        if equal:
            return Equal(factors[0] if len(factors) == 1 else tuple(factors))
    else:
        for i in range(len(f.coords)):
            diff = f.coords[i] * g.dens[i] - g.coords[i] * f.dens[i]
            if reduce_mod_relation(diff, src):
                equal = False
                break
        if equal:
            factor = None
            if len(set(f.dens)) == 1 and len(set(g.dens)) == 1:
                q = f.dens[0].divide_exact(g.dens[0])
                factor = q
            return Equal(factor)
    return _find_witness(f, g, src, seed, samples)


def _find_witness(f, g, src, seed, samples):
    tgt = surface(f.target)
    for p in sample_points(src.name, seed, samples):
        try:
            a = evaluate(f, p)
            b = evaluate(g, p)
        except (Indeterminate, DenominatorZero):
            continue
        if tgt.projective:
            same = all(
                proportional([a[i] for i in grp], [b[i] for i in grp]) for grp in tgt.groups
            )
        else:
            same = a == b
        if not same:
            return NotEqual(p, a, b)
    return NotEqual(None)


_P2_START = [(1, 2, 3), (2, -1, 3), (3, 1, -2), (1, 1, 1), (-2, 3, 5), (4, -3, 2)]


def sample_points(surface_name: str, seed: int = 0, count: int = 200):
    """Deterministic exact sample points on a surface (a fixed prefix, then seeded random)."""
    rng = random.Random(seed)
    plane = list(_P2_START)
    while len(plane) < count:
        p = tuple(rng.randint(-9, 9) for _ in range(3))
        if any(p):
            plane.append(p)
    out = []
    for k, (a, b, c) in enumerate(plane[:count]):
        if surface_name == "P2":
            out.append(tuple(Fraction(v) for v in (a, b, c)))
        elif surface_name in ("Sphere", "Q31"):
            s = sphere_from_plane((a, b, c)).as_tuple()
            out.append(s if surface_name == "Sphere" else (Fraction(1),) + s)
        elif surface_name == "P1xP1":
            out.append((Fraction(a or 1), Fraction(b), Fraction(c), Fraction(k % 2 + 1)))
        elif surface_name == "A2":
            out.append((Fraction(a, b or 7), Fraction(c, k % 5 + 1)))
        elif surface_name == "BlowupChart":
            x, w = Fraction(a, c or 5), Fraction(b, k % 3 + 1)
            out.append((x, x * w, Fraction(1), w))
        else:  # pragma: no cover
            raise UnknownName(surface_name)
    return out


def sphere_image_certificate(f: RationalMap) -> bool:
    """True iff the image of a Sphere->Sphere map lies on the sphere, checked modulo the ideal."""
    if f.source != "Sphere" or f.target != "Sphere":
        raise SurfaceMismatch("sphere certificate applies to Sphere->Sphere maps")
    src = surface("Sphere")
    if len(set(f.dens)) == 1:
        d = f.dens[0]
        total = sum((c * c for c in f.coords), MultiPoly.const(d.vars, 0)) - d * d
        return not reduce_mod_relation(total, src)
    terms = []
    for i, c in enumerate(f.coords):
        t = c * c
        for j, d in enumerate(f.dens):
            if j != i:
                t = t * d * d
        terms.append(t)
    full = f.dens[0] * f.dens[0] * f.dens[1] * f.dens[1] * f.dens[2] * f.dens[2]
    return not reduce_mod_relation(terms[0] + terms[1] + terms[2] - full, src)
