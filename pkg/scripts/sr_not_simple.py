"""Search the corpus for strongly regular BLOs that are not simple.

Reports counts per size and the first few examples that carry a non-identity
operator.  Absence in the corpus would not be a refutation; presence is a witness.

    python3 scripts/sr_not_simple.py [--max-size N] [--max-ops K]
"""
import argparse
from collections import Counter

from latsheaf.classify import classify
from latsheaf.corpus import blo_corpus, boolean_corpus


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-size", type=int, default=6)
    ap.add_argument("--max-ops", type=int, default=2)
    args = ap.parse_args()
    corpus = blo_corpus(args.max_size, args.max_ops)
    if args.max_size < 8:
        corpus += [A for A in boolean_corpus(8, args.max_ops) if A.n == 8]
    per_size, examples = Counter(), []
    for A in corpus:
        r = classify(A)
        if r.strongly_regular and not r.simple:
            per_size[A.n] += 1
            if A.ops and len(examples) < 5:
                examples.append((A, r))
    print(f"{len(corpus)} algebras; strongly regular and not simple by size: {dict(sorted(per_size.items()))}")
    for A, r in examples:
        ops = {k: [A.names[f[x]] for x in range(A.n)] for k, f in A.ops}
        print(f"  {A.name}: elements {list(A.names)} operators {ops}")
        print(f"    {r.summary()}")


if __name__ == "__main__":
    main()
