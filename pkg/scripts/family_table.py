"""Print the alpha = 2^n + 1 exclusion table and check the closed forms."""

import argparse

from rigidpg.sieve import family_exclude


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=32)
    args = ap.parse_args()
    print(f"{'n':>3} {'alpha':>12} {'|N|':>22} {'k1+':>22} {'k1-':>22}  closed-form  digits(Var+)")
    for n in range(2, args.n_max + 1):
        fe = family_exclude(n)
        print(
            f"{n:>3} {fe.instance.alpha:>12} {fe.reduction.subgroup.order:>22} {fe.k1_plus:>22} "
            f"{fe.k1_minus:>22}  {str(fe.closed_form_match):<11}  {len(str(-fe.var_plus))}"
        )
        assert fe.excluded and fe.closed_form_match


if __name__ == "__main__":
    main()
