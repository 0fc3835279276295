"""Exact arithmetic over Q and over multiquadratic towers Q(sqrt(g1), ..., sqrt(gm)).

Rationals are plain :class:`fractions.Fraction` values.  A :class:`TowerElem`
stores one rational coefficient per subset ``S`` of the generators, encoded
as a bitmask, and represents ``sum_S c_S * prod_{i in S} sqrt(g_i)``.  Because
the generators are square-free and multiplicatively independent modulo
squares, the products ``prod_{i in S} g_i`` are never perfect squares for
nonempty ``S`` and the representation is unique: an element is zero iff all
of its coefficients are zero.
"""

from __future__ import annotations

import json
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from .errors import (
    ContextMismatch,
    DivisionByZero,
    NegativeRadicand,
    RadicandTooLarge,
    SignRefinementExhausted,
    ZeroDenominator,
)

Rational = Fraction

MAX_RADICAND = 2**64
SIGN_START_BITS = 64
SIGN_MAX_ROUNDS = 64


def rat(num: int, den: int = 1) -> Fraction:
    """Canonical rational ``num/den`` with the sign carried by the numerator."""
    if den == 0:
        raise ZeroDenominator(f"zero denominator in {num}/{den}")
    return Fraction(num, den)


def parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    s = text.strip().replace("−", "-")
    if "/" in s:
        n, d = s.split("/", 1)
        try:
            return rat(int(n), int(d))
        except ValueError:
            raise ValueError(f"not a rational: {text!r}") from None
    try:
        return Fraction(int(s))
    except ValueError:
        raise ValueError(f"not a rational: {text!r}") from None


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(k, r)`` with ``n = k * r**2`` and ``k`` square-free.

    Trial division runs only while ``p**3 <= m``; the cofactor left over then
    has at most two prime factors, so it is square-free unless it is a
    perfect square.
    """
    if n <= 0:
        raise ValueError("squarefree_decompose needs a positive integer")
    s = isqrt(n)
    if s * s == n:
        return 1, s
    if n > MAX_RADICAND:
        raise RadicandTooLarge(f"radicand part {n} exceeds 2^64 and is not a perfect square")
    k, r, m = 1, 1, n
    p = 2
    while p * p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            r *= p ** (e // 2)
            if e % 2:
                k *= p
        p += 1 if p == 2 else 2
    s = isqrt(m)
    if s * s == m:
        r *= s
    else:
        k *= m
    return k, r


@dataclass(frozen=True)
class TowerCtx:
    """Ordered square-free generators; contexts only ever grow by appending."""

    gens: tuple[int, ...] = ()
    _radicands: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(int(g) for g in self.gens))

    @property
    def size(self) -> int:
        return len(self.gens)

    def radicand(self, mask: int) -> int:
        """Product of the generators selected by ``mask``."""
        r = self._radicands.get(mask)
        if r is None:
            r = 1
            i, m = 0, mask
            while m:
                if m & 1:
                    r *= self.gens[i]
                m >>= 1
                i += 1
            self._radicands[mask] = r
        return r

    def extends(self, other: "TowerCtx") -> bool:
        return self.gens[: len(other.gens)] == other.gens

    def locate(self, k: int):
        """Find a subset ``S`` with ``k * prod(g_S)`` a perfect square.

        Returns ``(mask, s)`` with ``k * radicand(mask) == s**2`` or ``None``.
        """
        for mask in range(1 << len(self.gens)):
            prod = k * self.radicand(mask)
            s = isqrt(prod)
            if s * s == prod:
                return mask, s
        return None

    def is_independent(self) -> bool:
        """No nonempty subset product of generators is a perfect square."""
        for g in self.gens:
            if g <= 1 or squarefree_decompose(g)[1] != 1:
                return False
        for mask in range(1, 1 << len(self.gens)):
            r = self.radicand(mask)
            if isqrt(r) ** 2 == r:
                return False
        return True

    def __repr__(self):
        return f"TowerCtx{list(self.gens)}"


EMPTY_CTX = TowerCtx()


def _is_number(x) -> bool:
    return isinstance(x, (int, Fraction))


class TowerElem:
    """Immutable element of a multiquadratic tower."""

    __slots__ = ("ctx", "coeffs", "_hash")

    def __init__(self, ctx: TowerCtx, coeffs=None):
        self.ctx = ctx
        clean = {}
        if coeffs:
            limit = 1 << ctx.size
            for mask, c in coeffs.items():
                if mask < 0 or mask >= limit:
                    raise ValueError(f"mask {mask} outside context {ctx}")
                c = Fraction(c)
                if c:
                    clean[mask] = c
        self.coeffs = clean
        self._hash = None

    @classmethod
    def _raw(cls, ctx, coeffs):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, q, ctx: TowerCtx = EMPTY_CTX) -> "TowerElem":
        q = Fraction(q)
        return cls._raw(ctx, {0: q} if q else {})

    # -- inspection -------------------------------------------------------
    def is_rational(self) -> bool:
        return all(m == 0 for m in self.coeffs)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs.get(0, Fraction(0))

    def lift(self, ctx: TowerCtx) -> "TowerElem":
        if ctx.gens == self.ctx.gens:
            return self
        if ctx.extends(self.ctx) or self.is_rational():
            return TowerElem._raw(ctx, self.coeffs)
        raise ContextMismatch(f"cannot lift {self.ctx} into {ctx}")

    # -- coercion ---------------------------------------------------------
    def _common(self, other):
        if isinstance(other, TowerElem):
            a, b = self.ctx, other.ctx
            if a.gens == b.gens or a.extends(b):
                return a, other.coeffs
            if b.extends(a):
                return b, other.coeffs
            if other.is_rational():
                return a, other.coeffs
            if self.is_rational():
                return b, other.coeffs
            raise ContextMismatch(f"elements over {a} and {b}")
        if _is_number(other):
            q = Fraction(other)
            return self.ctx, ({0: q} if q else {})
        return None, None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        ctx, oc = self._common(other)
        if ctx is None:
            return NotImplemented
        out = dict(self.coeffs)
        for m, c in oc.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return TowerElem._raw(ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return TowerElem._raw(self.ctx, {m: -c for m, c in self.coeffs.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        ctx, oc = self._common(other)
        if ctx is None:
            return NotImplemented
        out = dict(self.coeffs)
        for m, c in oc.items():
            v = out.get(m, 0) - c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return TowerElem._raw(ctx, out)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        ctx, oc = self._common(other)
        if ctx is None:
            return NotImplemented
        return TowerElem._raw(ctx, _mul_coeffs(ctx, self.coeffs, oc))

    __rmul__ = __mul__

    def conjugate(self, i: int) -> "TowerElem":
        """Image under sqrt(g_i) -> -sqrt(g_i)."""
        bit = 1 << i
        return TowerElem._raw(
            self.ctx, {m: (-c if m & bit else c) for m, c in self.coeffs.items()}
        )

    def inverse(self) -> "TowerElem":
        if not self.coeffs:
            raise DivisionByZero("division by zero in tower")
        ctx = self.ctx
        num = {0: Fraction(1)}
        cur = self.coeffs
        for i in reversed(range(ctx.size)):
            bit = 1 << i
            if any(m & bit for m in cur):
                conj = {m: (-c if m & bit else c) for m, c in cur.items()}
                num = _mul_coeffs(ctx, num, conj)
                cur = _mul_coeffs(ctx, cur, conj)
        r = cur[0]
        return TowerElem._raw(ctx, {m: c / r for m, c in num.items()})

    def __truediv__(self, other):
        if isinstance(other, TowerElem):
            return self * other.inverse()
        if _is_number(other):
            q = Fraction(other)
            if not q:
                raise DivisionByZero("division by zero")
            return TowerElem._raw(self.ctx, {m: c / q for m, c in self.coeffs.items()})
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_number(other):
            return self.inverse() * Fraction(other)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = TowerElem.rational(1, self.ctx)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- comparison -------------------------------------------------------
    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, TowerElem) or _is_number(other):
            try:
                return not (self - other).coeffs
            except ContextMismatch:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs.get(0, Fraction(0)))
            else:
                self._hash = hash(
                    frozenset((self.ctx.radicand(m), c) for m, c in self.coeffs.items())
                )
        return self._hash

    def sign(self) -> int:
        return sign(self)

    def _cmp(self, other, op):
        d = self - other
        if d is NotImplemented:
            return NotImplemented
        return op(sign(d), 0)

    def __lt__(self, other):
        return self._cmp(other, operator.lt)

    def __le__(self, other):
        return self._cmp(other, operator.le)

    def __gt__(self, other):
        return self._cmp(other, operator.gt)

    def __ge__(self, other):
        return self._cmp(other, operator.ge)

    def __abs__(self):
        return -self if sign(self) < 0 else self

    def __float__(self):
        from math import sqrt

        return float(
            sum(float(c) * sqrt(self.ctx.radicand(m)) for m, c in self.coeffs.items())
        )

    # -- text -------------------------------------------------------------
    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m in sorted(self.coeffs):
            c = self.coeffs[m]
            if m == 0:
                parts.append(format_rational(c))
                continue
            root = f"sqrt({self.ctx.radicand(m)})"
            if c == 1:
                parts.append(root)
            elif c == -1:
                parts.append("-" + root)
            else:
                parts.append(f"{format_rational(c)}*{root}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"TowerElem({self})"


def _mul_coeffs(ctx: TowerCtx, a: dict, b: dict) -> dict:
    out: dict = {}
    for s, ca in a.items():
        for t, cb in b.items():
            common = s & t
            c = ca * cb
            if common:
                c *= ctx.radicand(common)
            key = s ^ t
            out[key] = out.get(key, 0) + c
    return {m: c for m, c in out.items() if c}


def as_tower(x, ctx: TowerCtx = EMPTY_CTX) -> TowerElem:
    if isinstance(x, TowerElem):
        return x.lift(ctx) if ctx.size > x.ctx.size else x
    return TowerElem.rational(Fraction(x), ctx)


def simplify(x):
    """Collapse rational-valued tower elements to Fractions."""
    if isinstance(x, TowerElem) and x.is_rational():
        return x.rational_value()
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


def is_zero(x) -> bool:
    return not x


def adjoin_sqrt(ctx: TowerCtx, d) -> tuple[TowerCtx, TowerElem]:
    """Return ``(ctx2, e)`` with ``e > 0`` and ``e**2 == d``.

    ``ctx2`` is ``ctx`` itself when ``sqrt(d)`` already lives in the tower,
    otherwise ``ctx`` with the square-free kernel of ``d`` appended.
    """
    if isinstance(d, TowerElem):
        if not d.is_rational():
            from .errors import NestedRadical

            raise NestedRadical("square roots are only taken of rationals")
        d = d.rational_value()
    d = Fraction(d)
    if d < 0:
        raise NegativeRadicand(f"cannot adjoin sqrt of negative {d}")
    if d == 0:
        return ctx, TowerElem.rational(0, ctx)
    kn, rn = squarefree_decompose(d.numerator)
    km, rm = squarefree_decompose(d.denominator)
    g = gcd(kn, km)
    k = (kn // g) * (km // g)
    # sqrt(d) = sqrt(n*m)/m = g*rn*rm*sqrt(k)/m
    scale = Fraction(g * rn * rm, d.denominator)
    if k == 1:
        return ctx, TowerElem.rational(scale, ctx)
    found = ctx.locate(k)
    if found is not None:
        mask, s = found
        # k*g_S = s^2  =>  sqrt(k) = (s/g_S)*sqrt(g_S)
        return ctx, TowerElem._raw(ctx, {mask: scale * Fraction(s, ctx.radicand(mask))})
    new = TowerCtx(ctx.gens + (k,))
    return new, TowerElem._raw(new, {1 << ctx.size: scale})


def arith(a, b, op: str):
    """Binary field operation selected by ``op`` in ``{'+', '-', '*', '/'}``."""
    ops = {
        "+": operator.add,
        "-": operator.sub,
        "−": operator.sub,
        "*": operator.mul,
        "×": operator.mul,
        "/": operator.truediv,
        "÷": operator.truediv,
    }
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    a = as_tower(a)
    return ops[op](a, b)


def _sqrt_enclosure(n: int, bits: int) -> tuple[Fraction, Fraction]:
    scale = 1 << bits
    lo = isqrt(n << (2 * bits))
    if lo * lo == n << (2 * bits):
        v = Fraction(lo, scale)
        return v, v
    return Fraction(lo, scale), Fraction(lo + 1, scale)


def sign(a) -> int:
    """Exact sign of a rational or tower element."""
    if not isinstance(a, TowerElem):
        q = Fraction(a)
        return (q > 0) - (q < 0)
    if not a.coeffs:
        return 0
    if a.is_rational():
        q = a.coeffs[0]
        return 1 if q > 0 else -1
    bits = SIGN_START_BITS
    for _ in range(SIGN_MAX_ROUNDS):
        lo = hi = Fraction(0)
        for m, c in a.coeffs.items():
            rl, rh = _sqrt_enclosure(a.ctx.radicand(m), bits)
            if c > 0:
                lo += c * rl
                hi += c * rh
            else:
                lo += c * rh
                hi += c * rl
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2
    raise SignRefinementExhausted(f"sign of {a} undecided after {SIGN_MAX_ROUNDS} rounds")


# -- text / JSON encodings ---------------------------------------------------

def encode_value(x):
    """Exact JSON encoding: rationals as ``"num/den"`` strings, tower elements as dicts."""
    x = simplify(x)
    if isinstance(x, Fraction):
        return format_rational(x)
    coeffs = {}
    for m in sorted(x.coeffs):
        idx = [i for i in range(x.ctx.size) if m >> i & 1]
        coeffs[json.dumps(idx, separators=(",", ":"))] = format_rational(x.coeffs[m])
    return {"gens": list(x.ctx.gens), "coeffs": coeffs}


def decode_value(obj):
    """Inverse of :func:`encode_value`; returns a Fraction or a TowerElem."""
    if isinstance(obj, dict):
        if set(obj) != {"gens", "coeffs"}:
            raise ValueError(f"bad tower element encoding: {obj!r}")
        ctx = TowerCtx(tuple(int(g) for g in obj["gens"]))
        if not ctx.is_independent():
            raise ValueError(f"tower generators {list(ctx.gens)} are not independent square-free")
        coeffs = {}
        for key, val in obj["coeffs"].items():
            idx = json.loads(key)
            if not isinstance(idx, list) or any(not 0 <= i < ctx.size for i in idx):
                raise ValueError(f"bad subset key {key!r}")
            mask = 0
            for i in idx:
                mask |= 1 << i
            coeffs[mask] = parse_rational(val)
        return simplify(TowerElem(ctx, coeffs))
    return parse_rational(obj)
