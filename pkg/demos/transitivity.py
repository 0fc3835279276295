"""Move n rational points of the sphere onto n others with twisting maps."""

import random

from ratsurf.geom import sphere_from_plane
from ratsurf.polyrat import Equal
from ratsurf.twist import apply_twists, solution_certificates, transitivity_solve


def random_points(rng, n):
    pts = []
    while len(pts) < n:
        c = [rng.randint(-5, 5) for _ in range(3)]
        if not any(c):
            continue
        p = sphere_from_plane(c).as_tuple()
        if p not in pts:
            pts.append(p)
    return pts


def fmt(p):
    return "(" + ", ".join(str(c) for c in p) + ")"


def main():
    rng = random.Random(7)
    P, Q = random_points(rng, 3), random_points(rng, 3)
    twists = transitivity_solve(P, Q)
    print(f"{len(twists)} twists move 3 points onto their targets")
    for i, t in enumerate(twists):
        print(f"  twist {i}: profile degree {t.profile.degree}, axis {fmt(t.axis)}")
    for p, q in zip(P, Q):
        print(" ", fmt(p), "->", fmt(apply_twists(twists, p)), "target", fmt(q))
    print("certificates:", solution_certificates(P, Q, twists))
    print("first twist inverse certified:", isinstance(twists[0].certify_inverse(), Equal))


if __name__ == "__main__":
    main()
