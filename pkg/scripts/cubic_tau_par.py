"""Evidence that tau_par = m for F_7[x,y,z]/(x^3+y^3+z^3), then m*I* = m*I on samples.

Both routes use the bounded Frobenius check with c = z, so the result is
desk-scale evidence, not a proof.
"""

import argparse

from charp_closure_lab.groebner import Ideal
from charp_closure_lab.poly import RingSpec
from charp_closure_lab.strong_test import check_tau_par_maximal


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t-max", type=int, default=3)
    ap.add_argument("--e-max", type=int, default=3)
    args = ap.parse_args()
    A = RingSpec(7, ("x", "y", "z"))
    x, y, z = A.gens()
    R = A.quotient([x**3 + y**3 + z**3])
    samples = [Ideal(R, [y**t, z**t]) for t in (1, 2, 3)] + [Ideal(R, [y + z, z**2])]
    report = check_tau_par_maximal(R, [y, z], z, samples, t_max=args.t_max, e_max=args.e_max)
    print(f"colon route limit: {report.colon_route}  (= m: {report.colon_route_is_max})")
    print(f"bounded route gives m: {report.bounded_route_is_max}")
    if report.warning:
        print("warning:", report.warning)
    for row in report.instances:
        print(f"  I = {row.ideal}: I* ~ {row.closure}, m*I == m*I*: {row.equal}")


if __name__ == "__main__":
    main()
