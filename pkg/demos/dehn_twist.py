"""A Dehn twist of the sphere: a full turn in a thin band, nearly still elsewhere."""

from fractions import Fraction

from ratsurf.twist import dehn_grid, dehn_twist_map, interpolate_circle, profile_within, winding_number


def fmt(p):
    return "(" + ", ".join(str(c) for c in p) + ")"


def main():
    f = interpolate_circle([(Fraction(-1, 2), (1, 0)), (Fraction(0), (0, 1)), (Fraction(1, 2), (-1, 0))])
    print("interpolated profile hits", ", ".join(fmt(f(z)) for z in (Fraction(-1, 2), 0, Fraction(1, 2))))
    print("  on the circle identically:", f.on_circle_identically(), " pole free:", f.pole_free())

    eps, tol = Fraction(1, 4), Fraction(1, 20)
    t = dehn_twist_map([Fraction(1, 2), Fraction(-1, 2)], eps, tol)
    g = t.profile
    print("Dehn profile degree", g.degree, "winding number", winding_number(g))
    print("fixed levels:", fmt(g(Fraction(1, 2))), fmt(g(Fraction(-1, 2))))
    print("within", tol, "of the identity outside the band:", profile_within(g, dehn_grid(eps), tol))
    print("rotation at the equator:", fmt(g(0)))


if __name__ == "__main__":
    main()
