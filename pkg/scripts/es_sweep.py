"""Epimorphism sweep over a universe of small bounded distributive lattices.

Prints the number of homomorphisms, the non-surjective epimorphisms grouped by
the regularity classes of source and target, and optionally writes the full
JSON report.

    python3 scripts/es_sweep.py [--size N] [--out report.json]
"""
import argparse
import time

from latsheaf.epi import es_experiment, universe_of_size
from latsheaf.io import dumps


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=5)
    ap.add_argument("--out")
    args = ap.parse_args()
    t = time.perf_counter()
    U = universe_of_size(args.size)
    r = es_experiment(U)
    print(f"universe {U.name}: {len(U)} algebras, {r.n_homomorphisms} homomorphisms "
          f"({time.perf_counter() - t:.2f}s)")
    print(f"surjective => epi: {r.surjective_all_epi}; injective <=> mono: {r.injective_iff_mono}; "
          f"witnesses verified: {r.witnesses_verified}")
    print(f"non-surjective epimorphisms: {len(r.non_surjective_epis)}")
    for group, count in sorted(r.grouped.items()):
        print(f"  {group}: {count}")
    for e in r.non_surjective_epis[:5]:
        print(f"  e.g. {e}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dumps(r.to_json()))


if __name__ == "__main__":
    main()
