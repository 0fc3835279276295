"""Continuous rational functions evaluated where their denominator vanishes."""

from ratsurf.regulous import RegFunction, builtin, eval_regulous, k_regulous_check


def main():
    canopy = builtin("cartan_canopy")
    print(canopy, "at (0,0):", eval_regulous(canopy, (0, 0)))
    for k in range(3):
        f = builtin(f"k_family({k})")
        print(f, f"order {k}:", k_regulous_check(f, (0, 0), k), f" order {k + 1}:",
              k_regulous_check(f, (0, 0), k + 1))
    h = builtin("horn_splitter")
    for p in [(0, 0, 1), (0, 0, 3), (0, -16, 4), (1, 1, 1)]:
        print("horn splitter at", p, "->", eval_regulous(h, p))
    wedge = RegFunction.parse("x*y", "x^2+y^2")
    print(wedge, "at (0,0):", eval_regulous(wedge, (0, 0)))

if __name__ == "__main__":
    main()
