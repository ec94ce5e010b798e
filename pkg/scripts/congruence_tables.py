"""Print small tables of E_k^(2) coefficients and their residues mod p.

For p = 3 mod 4 and k = (p+1)/2 the residues vanish off det(T) = 0 mod p;
for k = p+1 they vanish where chi_T(p) = 1.
"""

import argparse

from siegelcong.eisenstein import eis2
from siegelcong.exact import format_rational, residue_mod_p
from siegelcong.quadforms import chi_of_matrix, enumerate_pos_def_reduced


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--prime", type=int, default=11)
    ap.add_argument("--det2-bound", type=int, default=60)
    args = ap.parse_args()
    p = args.prime
    forms = [T for T in enumerate_pos_def_reduced(args.det2_bound)]
    trace_bound = max(T.trace for T in forms)
    weights = ([(p + 1) // 2] if p % 4 == 3 else []) + [p + 1]
    for k in weights:
        F = eis2(k, trace_bound, args.det2_bound)
        print(f"k = {k}, p = {p}")
        print(f"{'T':>12} {'det2':>5} {'chi_T(p)':>8} {'mod p':>6}  coefficient")
        for T in forms:
            v = F[T]
            print(f"{str(tuple(T)):>12} {T.det2:5d} {chi_of_matrix(T)(p):8d} "
                  f"{residue_mod_p(v, p):6d}  {format_rational(v)}")
        print()


if __name__ == "__main__":
    main()
