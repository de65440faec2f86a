"""Search for (c1 d1, c2 d2, tail) families and check the lemma and strong property on each."""

import argparse

from charp_closure_lab.closures import test_ideal_sr
from charp_closure_lab.local_cohomology import counterexample_ring
from charp_closure_lab.strong_test import (check_strong_property, find_parameter_test_elements,
                                           search_param_families, verify_lemma_containment)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prime", type=int, default=3)
    ap.add_argument("--degree-bound", type=int, default=2)
    ap.add_argument("--max-attempts", type=int, default=2000)
    args = ap.parse_args()
    R = counterexample_ring(args.prime)
    elems = find_parameter_test_elements(R, args.degree_bound)
    print(f"{len(elems)} parameter test elements of degree <= {args.degree_bound}, e.g.",
          ", ".join(map(str, elems[:5])))
    result = search_param_families(R, args.degree_bound, max_attempts=args.max_attempts)
    if not result.families:
        print("SKIPPED:", result.skipped_reason)
        return
    tau = test_ideal_sr(R)
    for F in result.families:
        lemma = verify_lemma_containment(F)
        strong = check_strong_property(tau, [F.ideal], R).all_equal
        print(f"{F.describe()}: lemma {lemma}, strong {strong}, colon identity {F.colon_identity}")


if __name__ == "__main__":
    main()
