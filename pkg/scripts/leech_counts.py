"""Count Leech lattice vectors by norm and compare with E_12 - (65520/691) Delta.

Norm 6 takes seconds; ``--max-norm 8`` (398034000 vectors) is the long run.
"""

import argparse
import time

from siegelcong.lattices import golay_code, leech_identity_expansion, leech_lattice, short_vector_counts


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-norm", type=int, default=6)
    args = ap.parse_args()

    t0 = time.perf_counter()
    code = golay_code()
    lattice = leech_lattice()
    print(f"Golay weight enumerator {code.weight_enumerator()}")
    print(f"Leech Gram: det {lattice.determinant()}, even {lattice.is_even()} "
          f"({time.perf_counter() - t0:.1f}s)")

    t0 = time.perf_counter()
    counts = short_vector_counts(lattice, args.max_norm)
    elapsed = time.perf_counter() - t0
    ident = leech_identity_expansion(args.max_norm // 2)
    for m in range(0, args.max_norm + 1, 2):
        expected = ident[m // 2]
        flag = "ok" if counts[m] == expected else "MISMATCH"
        print(f"norm {m:2d}: {counts[m]:>12d}  identity {expected}  {flag}")
    print(f"enumeration {elapsed:.1f}s")


if __name__ == "__main__":
    main()
