"""Classical involutions and stereographic projection, checked as exact identities."""

from ratsurf.catalog import e_invol, sigma0, sigma1, stereographic_north, tau0
from ratsurf.polyrat import Equal, compose, evaluate, factor_str, identity, maps_equal


def fmt(p):
    return "(" + ", ".join(str(c) for c in p) + ")"


def report(label, f, g):
    res = maps_equal(f, g)
    if isinstance(res, Equal):
        print(f"{label}: equal up to the factor {res.factor_text()}")
    else:
        print(f"{label}: differ at {fmt(res.witness)}")


def main():
    report("sigma0 o sigma0 = id", compose(sigma0(), sigma0()), identity("P2"))
    report("sigma1 o sigma1 = id", compose(sigma1(), sigma1()), identity("P2"))
    report("tau0 o tau0 = id", compose(tau0(), tau0()), identity("P1xP1"))
    report("e o e = id", compose(e_invol(), e_invol()), identity("P1xP1"))
    report("sigma0 o sigma1 = id", compose(sigma0(), sigma1()), identity("P2"))

    pi_n, pi_inv = stereographic_north()
    res = maps_equal(compose(pi_inv, pi_n), identity("Q31"))
    print("pi_N_inv o pi_N = id on the quadric, factor", factor_str(res.factor))
    res = maps_equal(compose(pi_n, pi_inv), identity("P2"))
    print("pi_N o pi_N_inv = id on P2, factor", factor_str(res.factor))

    q = evaluate(pi_inv, (1, 2, 3))
    print("[1:2:3] lifts to", fmt(q), "which projects back to", fmt(evaluate(pi_n, q)))


if __name__ == "__main__":
    main()
