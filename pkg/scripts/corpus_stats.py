"""Corpus sizes, enumeration counts and representation statistics.

The representation map is checked with full section algebras up to size 6
(<= 2 operators) and on the Boolean algebras of size 8; sizes 7 and 8 with at
most one operator are checked for injectivity from the generators alone.

    python3 scripts/corpus_stats.py
"""
import time
from collections import Counter

from latsheaf.blo import is_relatively_complemented_blo
from latsheaf.corpus import blo_corpus, boolean_corpus, enumerate_lattices
from latsheaf.sheaf import eta_injectivity, eta_report


def timed(label, fn):
    t = time.perf_counter()
    out = fn()
    print(f"{label} ({time.perf_counter() - t:.2f}s)")
    return out


def main():
    for n in range(1, 9):
        print(f"n={n}: {len(enumerate_lattices(n))} lattices, "
              f"{len(enumerate_lattices(n, True))} distributive")

    small = timed("blo_corpus(6, 2)", lambda: blo_corpus(6, 2))
    print(f"  {len(small)} algebras, by size {dict(sorted(Counter(A.n for A in small).items()))}")
    boolean = timed("boolean_corpus(8, 2)", lambda: boolean_corpus(8, 2))
    rc = [A for A in boolean if is_relatively_complemented_blo(A)]
    print(f"  {len(boolean)} algebras, {len(rc)} with a Boolean center")

    def eta_full():
        counts = Counter()
        for A in small + [A for A in boolean if A.n == 8]:
            r = eta_report(A)
            counts["injective"] += r.injective
            counts["isomorphism"] += r.isomorphism
            counts["mismatch"] += r.injective != r.kernel_identity
            counts["total"] += 1
        return counts
    print(f"  eta: {dict(timed('eta_report over both corpora', eta_full))}")

    wide = timed("blo_corpus(8, 1) restricted to sizes 7 and 8",
                 lambda: blo_corpus(8, 1, min_size=7))

    def eta_wide():
        counts = Counter()
        for A in wide:
            inj, ker = eta_injectivity(A)
            counts["injective"] += inj
            counts["mismatch"] += inj != ker
            counts["total"] += 1
        return counts
    print(f"  eta injectivity: {dict(timed('generator check', eta_wide))}")


if __name__ == "__main__":
    main()
