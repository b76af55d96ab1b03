"""Named small algebras and exhaustive corpora up to isomorphism."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .blo import OperatorAlgebra, as_blo, closure_operator, enumerate_operators, make_blo
from .errors import TooLarge
from .lattice import (
    Lattice,
    automorphisms,
    build_lattice,
    chain,
    find_isomorphism,
    is_distributive,
    lattice_from_order,
    structure_signature,
)

MAX_ENUMERATION_SIZE = 9


def two() -> Lattice:
    return build_lattice(["0", "1"], [("0", "1")], name="2")


def chain3() -> Lattice:
    return build_lattice(["0", "a", "1"], [("0", "a"), ("a", "1")], name="3")


def diamond() -> Lattice:
    return build_lattice(["0", "p", "q", "1"],
                         [("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")], name="2x2")


def pentagon() -> Lattice:
    return build_lattice(["0", "a", "b", "c", "1"],
                         [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")], name="N5")


def m3() -> Lattice:
    return build_lattice(["0", "a", "b", "c", "1"],
                         [("0", x) for x in "abc"] + [(x, "1") for x in "abc"], name="M3")


def with_closure(L: Lattice, key: str = "c") -> OperatorAlgebra:
    return make_blo(L, {key: closure_operator(L)}, name=f"{L.name}+cl")


def _inner_name(i: int) -> str:
    return chr(ord("a") + i) if i < 26 else f"e{i}"


def _natural_posets(k: int):
    """Strict-downset lists of naturally labelled posets on k elements."""
    def grow(below):
        if len(below) == k:
            yield below
            return
        m = len(below)
        for mask in range(1 << m):
            ok = True
            for i in range(m):
                if mask >> i & 1 and (below[i] & ~mask):
                    ok = False
                    break
            if ok:
                yield from grow(below + [mask])
    yield from grow([])


def _bounded_masks(k: int, below: list[int]) -> list[int]:
    """Down-set bitmasks of the poset with bottom (bit 0) and top (bit k+1) adjoined."""
    n = k + 2
    down = [1]
    for i in range(k):
        down.append(1 | (1 << (i + 1)) | (below[i] << 1))
    down.append((1 << n) - 1)
    return down


def _is_lattice_masks(down: list[int]) -> bool:
    values = set(down)
    n = len(down)
    for x in range(n):
        for y in range(x + 1, n):
            if down[x] & down[y] not in values:
                return False
    return True


def _dedupe(items):
    buckets: dict[tuple, list] = {}
    out = []
    for X in items:
        sig = structure_signature(X)
        bucket = buckets.setdefault(sig, [])
        if any(find_isomorphism(X, Y) is not None for Y in bucket):
            continue
        bucket.append(X)
        out.append(X)
    return out


@lru_cache(maxsize=None)
def enumerate_lattices(n: int, distributive: bool = False) -> tuple[Lattice, ...]:
    """All bounded lattices with exactly n elements, one per isomorphism class."""
    if n > MAX_ENUMERATION_SIZE:
        raise TooLarge(f"lattice enumeration is limited to {MAX_ENUMERATION_SIZE} elements")
    if n < 1:
        return ()
    if n == 1:
        found = [lattice_from_order(["0"], [[True]], name="L1.0")]
    elif n == 2:
        found = [chain(2)]
    else:
        k = n - 2
        names = ["0"] + [_inner_name(i) for i in range(k)] + ["1"]
        cands = []
        for below in _natural_posets(k):
            down = _bounded_masks(k, below)
            if not _is_lattice_masks(down):
                continue
            leq = [[bool(down[y] >> x & 1) for y in range(n)] for x in range(n)]
            cands.append(lattice_from_order(names, leq))
        found = _dedupe(cands)
    if distributive:
        found = [L for L in found if is_distributive(L)]
    out = []
    for i, L in enumerate(sorted(found, key=_lattice_sort_key)):
        tag = "D" if distributive else "L"
        out.append(Lattice(L.names, L.leq, L.meet, L.join, L.bottom, L.top, name=f"{tag}{n}.{i}"))
    return tuple(out)


def _lattice_sort_key(L: Lattice):
    return (-max(L.rank), len(L.join_irreducibles), L.leq)


def lattices_up_to(n: int, distributive: bool = False) -> list[Lattice]:
    return [L for m in range(1, n + 1) for L in enumerate_lattices(m, distributive)]


def _conjugate(f, alpha):
    g = [0] * len(f)
    for x, fx in enumerate(f):
        g[alpha[x]] = alpha[fx]
    return tuple(g)


def operator_families(L: Lattice, max_ops: int = 2) -> list[tuple[tuple[int, ...], ...]]:
    """Families of non-identity operators on L up to automorphism and index renaming."""
    ops = enumerate_operators(L, include_identity=False)
    autos = automorphisms(L)
    families = [()]
    for size in range(1, max_ops + 1):
        seen = set()
        for fam in combinations(ops, size):
            key = min(tuple(sorted(_conjugate(f, a) for f in fam)) for a in autos)
            if key in seen:
                continue
            seen.add(key)
            families.append(key)
    return families


def blo_corpus(max_size: int = 4, max_ops: int = 1, lattices=None,
               min_size: int = 1) -> list[OperatorAlgebra]:
    """BLOs on the distributive lattices of the requested sizes, one per isomorphism class."""
    if lattices is None:
        lattices = [L for L in lattices_up_to(max_size, distributive=True) if L.n >= min_size]
    out = []
    for L in lattices:
        for j, fam in enumerate(operator_families(L, max_ops)):
            ops = {f"c{i}": f for i, f in enumerate(fam)}
            out.append(make_blo(L, ops, name=f"{L.name}#{j}" if fam else L.name))
    return out


def boolean_corpus(max_size: int = 8, max_ops: int = 2) -> list[OperatorAlgebra]:
    """BLOs over the Boolean lattices of size <= max_size."""
    from .lattice import is_relatively_complemented

    lats = [L for L in lattices_up_to(max_size, distributive=True)
            if is_relatively_complemented(L)]
    return blo_corpus(max_size, max_ops, lattices=lats)


def as_algebras(items) -> list[OperatorAlgebra]:
    return [as_blo(X) for X in items]
