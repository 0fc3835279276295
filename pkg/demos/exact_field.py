"""Arithmetic in a tower of square roots, with exact signs."""

from fractions import Fraction

from ratsurf.exactfield import EMPTY_CTX, adjoin_sqrt, sign


def main():
    ctx, r2 = adjoin_sqrt(EMPTY_CTX, 2)
    ctx, r3 = adjoin_sqrt(ctx, 3)
    print("sqrt2 * sqrt3 =", r2 * r3)
    a = 1 + r2 - r3
    print("a =", a)
    print("a * (1/a) =", a * (1 / a))

    same, r8 = adjoin_sqrt(ctx, 8)
    print("sqrt8 reuses the existing root:", same is ctx, "->", r8)
    _, half = adjoin_sqrt(ctx, Fraction(9, 4))
    print("sqrt(9/4) =", half)

    # 5*sqrt2 - 7 is about 0.0711, too close to zero for a loose float check to be trusted
    x = 5 * r2 - 7
    print("sign(5*sqrt2 - 7) =", sign(x))
    print("sign(sqrt2 + sqrt3 - sqrt6 - 1/2) =", sign(r2 + r3 - r2 * r3 - Fraction(1, 2)))


if __name__ == "__main__":
    main()
