"""Find algebras whose strong-regularity and congruence-strong-regularity verdicts
differ when point congruences are taken in class mode, and compare with collapse mode.

    python3 scripts/separate_sr_csr.py [--max-size N]
"""
import argparse

from latsheaf.blo import blo_product, is_relatively_complemented_blo
from latsheaf.classify import classify
from latsheaf.corpus import boolean_corpus, diamond, two, with_closure


def verdicts(A, mode):
    r = classify(A, mode=mode)
    return r.strongly_regular, r.congruence_strongly_regular


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-size", type=int, default=8)
    args = ap.parse_args()

    named = blo_product([with_closure(diamond()), two()])
    print(f"{named.name}: {named.n} elements")
    for mode in ("collapse", "class"):
        sr, csr = verdicts(named, mode)
        print(f"  {mode:8s} strongly_regular={sr} congruence_strongly_regular={csr}")
    r = classify(named, mode="class")
    for p in r.points:
        if not p.congruence_maximal:
            print(f"  class-mode point {p.point}: congruence {p.congruence}")

    collapse_split, class_split = [], []
    corpus = [A for A in boolean_corpus(args.max_size, 2) if is_relatively_complemented_blo(A)]
    for A in corpus:
        if len(set(verdicts(A, "collapse"))) > 1:
            collapse_split.append(A.name)
        if len(set(verdicts(A, "class"))) > 1:
            class_split.append(A.name)
    print(f"{len(corpus)} RC BLOs of size <= {args.max_size}:")
    print(f"  collapse mode separates {len(collapse_split)} {collapse_split[:5]}")
    print(f"  class mode separates {len(class_split)} {class_split[:5]}")

if __name__ == "__main__":
    main()
