"""Dense univariate polynomials over Q or a quadratic tower.

Coefficients are stored low degree first.  Besides ring arithmetic this
module provides Lagrange interpolation, Sturm sequences and exact real-root
isolation, which the winding-number computation relies on.
"""

from __future__ import annotations

from fractions import Fraction

from .exactfield import sign, simplify


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(simplify(c) for c in coeffs)


class UPoly:
    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        self.c = _trim(coeffs)

    @classmethod
    def const(cls, a):
        return cls((a,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def lead(self):
        return self.c[-1]

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly.const(other)
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"UPoly({[str(a) for a in self.c]})"

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else Fraction(0)

    def __add__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly.const(other)
        n = max(len(self.c), len(other.c))
        return UPoly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-a for a in self.c])

    def __sub__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return UPoly([a * other for a in self.c])
        if not self.c or not other.c:
            return UPoly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(other.c):
                out[i + j] = out[i + j] + a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = UPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, x):
        acc = Fraction(0)
        for a in reversed(self.c):
            acc = acc * x + a
        return simplify(acc)

    def derivative(self) -> "UPoly":
        return UPoly([i * self.c[i] for i in range(1, len(self.c))])

    def compose(self, inner: "UPoly") -> "UPoly":
        acc = UPoly()
        for a in reversed(self.c):
            acc = acc * inner + a
        return acc

    def divmod(self, other: "UPoly"):
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        q = [Fraction(0)] * max(len(rem) - len(other.c) + 1, 0)
        lead = other.c[-1]
        dn = len(other.c) - 1
        for k in range(len(rem) - 1, dn - 1, -1):
            coef = rem[k]
            if not coef:
                continue
            f = coef / lead
            q[k - dn] = f
            for j, b in enumerate(other.c):
                rem[k - dn + j] = rem[k - dn + j] - f * b
        return UPoly(q), UPoly(rem[:dn] if dn else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "UPoly":
        return self * (1 / self.lead()) if self.c else self

    def order_at_zero(self) -> int:
        """Multiplicity of the root 0 (``-1`` for the zero polynomial)."""
        for i, a in enumerate(self.c):
            if a:
                return i
        return -1

    def shift_down(self, k: int) -> "UPoly":
        return UPoly(self.c[k:])


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def lagrange(nodes, values) -> UPoly:
    """Interpolating polynomial through ``(nodes[j], values[j])``."""
    n = len(nodes)
    result = UPoly()
    for j in range(n):
        if not values[j]:
            continue
        basis = UPoly.const(1)
        denom = Fraction(1)
        for k in range(n):
            if k != j:
                basis = basis * UPoly((-nodes[k], 1))
                denom = denom * (nodes[j] - nodes[k])
        result = result + basis * (values[j] / denom)
    return result


def squarefree_part(p: UPoly) -> UPoly:
    g = upoly_gcd(p, p.derivative())
    return p // g if g.degree > 0 else p


def sturm_sequence(p: UPoly) -> list[UPoly]:
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if not r:
            break
        seq.append(-r)
    return seq


def _variations(seq, x) -> int:
    count = 0
    prev = 0
    for q in seq:
        s = sign(q(x))
        if s:
            if prev and s != prev:
                count += 1
            prev = s
    return count


def count_roots(seq, a, b) -> int:
    """Distinct roots of ``seq[0]`` in ``(a, b]`` (``seq`` a Sturm sequence)."""
    return _variations(seq, a) - _variations(seq, b)


def _split_point(q: UPoly, a, b):
    for num, den in ((1, 2), (1, 3), (2, 3), (2, 5), (3, 5), (3, 7), (4, 7)):
        m = a + (b - a) * Fraction(num, den)
        if q(m):
            return m
    raise RuntimeError("no non-root split point found")  # pragma: no cover


def isolate_roots(p: UPoly, lo, hi) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(a, b)`` each holding exactly one root of ``p`` in ``(lo, hi)``.

    Endpoints are never roots of ``p``.  Roots at ``lo`` or ``hi`` are ignored.
    """
    if p.degree <= 0:
        return []
    q = squarefree_part(p)
    seq = sturm_sequence(q)
    lo, hi = Fraction(lo), Fraction(hi)
    # pull the endpoints inward past any root sitting exactly on them
    if not q(lo) or not q(hi):
        at_hi = 0 if q(hi) else 1
        width = (hi - lo) / 4
        while True:
            a, b = lo + width, hi - width
            if q(a) and q(b) and count_roots(seq, lo, a) == 0 \
                    and count_roots(seq, b, hi) == at_hi:
                break
            width /= 2
        lo, hi = a, b
    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        k = count_roots(seq, a, b)
        if k == 0:
            continue
        if k == 1:
            out.append((a, b))
            continue
        m = _split_point(q, a, b)
        stack.append((m, b))
        stack.append((a, m))
    out.sort()
    return out


class RootCursor:
    """One isolated real root of ``p`` with on-demand interval refinement."""

    def __init__(self, p: UPoly, a, b):
        self.q = squarefree_part(p)
        self.a, self.b = Fraction(a), Fraction(b)
        self.sa = sign(self.q(self.a))

    def refine(self):
        m = _split_point(self.q, self.a, self.b)
        sm = sign(self.q(m))
        if sm == self.sa:
            self.a = m
        else:
            self.b = m

    def sign_of(self, other: UPoly) -> int:
        """Sign of ``other`` at the root; ``other`` must not vanish there."""
        seq = sturm_sequence(squarefree_part(other)) if other.degree > 0 else None
        for _ in range(10_000):
            if seq is None:
                return sign(other[0])
            sa = sign(other(self.a))
            sb = sign(other(self.b))
            if sa and sb and count_roots(seq, self.a, self.b) == 0:
                return sa
            self.refine()
        raise RuntimeError("root refinement did not separate the polynomials")  # pragma: no cover


def series_quotient(num: UPoly, den: UPoly, order: int) -> list:
    """Taylor coefficients ``c_0..c_order`` of ``num/den`` at 0; ``den(0) != 0``."""
    d0 = den[0]
    if not d0:
        raise ZeroDivisionError("series denominator vanishes at 0")
    out = []
    for k in range(order + 1):
        acc = num[k]
        for j in range(1, k + 1):
            acc = acc - den[j] * out[k - j]
        out.append(simplify(acc / d0))
    return out
