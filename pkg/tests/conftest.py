from fractions import Fraction

from ratsurf.geom import sphere_from_plane


def random_sphere_point(rng, bound=6):
    while True:
        p = [rng.randint(-bound, bound) for _ in range(3)]
        if any(p):
            return sphere_from_plane(p).as_tuple()


def distinct_sphere_points(rng, n, bound=6):
    out = []
    while len(out) < n:
        p = random_sphere_point(rng, bound)
        if p not in out:
            out.append(p)
    return out


def random_rational(rng, bound=20):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
