"""Finite bounded lattices stored as index tables.

Elements are addressed by their position in ``Lattice.names``; that order is
the canonical order used by every enumeration in the package.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as _cartesian
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DuplicateElement,
    NoBounds,
    NotALattice,
    NotAPartialOrder,
    UnknownElement,
)

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Lattice:
    names: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    meet: Table
    join: Table
    bottom: int
    top: int
    name: str = field(default="", compare=False)

    @property
    def n(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    @cached_property
    def index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.names)}

    def idx(self, x: str | int) -> int:
        if isinstance(x, int):
            return x
        try:
            return self.index[x]
        except KeyError:
            raise UnknownElement(f"unknown element {x!r}") from None

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq[x][y]

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for y in range(self.n):
            below = [x for x in range(self.n) if self.lt(x, y)]
            out.append(tuple(x for x in below
                             if not any(self.lt(x, z) and self.lt(z, y) for z in below)))
        return tuple(out)

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        up: list[list[int]] = [[] for _ in range(self.n)]
        for y, xs in enumerate(self.lower_covers):
            for x in xs:
                up[x].append(y)
        return tuple(tuple(sorted(u)) for u in up)

    @cached_property
    def rank(self) -> tuple[int, ...]:
        """Length of the longest chain from bottom to each element."""
        r = [0] * self.n
        for y in self.linear_extension:
            r[y] = max((r[x] + 1 for x in self.lower_covers[y]), default=0)
        return tuple(r)

    @cached_property
    def corank(self) -> tuple[int, ...]:
        r = [0] * self.n
        for y in reversed(self.linear_extension):
            r[y] = max((r[x] + 1 for x in self.upper_covers[y]), default=0)
        return tuple(r)

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        return tuple(sorted(range(self.n),
                            key=lambda x: (sum(self.leq[y][x] for y in range(self.n)), x)))

    @cached_property
    def join_irreducibles(self) -> tuple[int, ...]:
        return join_irreducibles(self)

    def down(self, x: int) -> frozenset[int]:
        return frozenset(y for y in range(self.n) if self.leq[y][x])

    def up(self, x: int) -> frozenset[int]:
        return frozenset(y for y in range(self.n) if self.leq[x][y])

    def join_all(self, xs: Iterable[int]) -> int:
        acc = self.bottom
        for x in xs:
            acc = self.join[acc][x]
        return acc

    def meet_all(self, xs: Iterable[int]) -> int:
        acc = self.top
        for x in xs:
            acc = self.meet[acc][x]
        return acc

    def cover_pairs(self) -> list[tuple[str, str]]:
        return [(self.names[x], self.names[y])
                for y in range(self.n) for x in self.lower_covers[y]]

    def __repr__(self) -> str:
        label = self.name or "Lattice"
        return f"<{label}: {self.n} elements>"


def _closure(n: int, pairs: Iterable[tuple[int, int]]) -> list[list[bool]]:
    rel = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        rel[a][b] = True
    for k in range(n):
        rk = rel[k]
        for i in range(n):
            if rel[i][k]:
                ri = rel[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return rel


def lattice_from_order(names: Sequence[str], leq: Sequence[Sequence[bool]], name: str = "") -> Lattice:
    """Build a lattice from a complete partial-order matrix (no closure step)."""
    n = len(names)
    for i in range(n):
        for j in range(i + 1, n):
            if leq[i][j] and leq[j][i]:
                raise NotAPartialOrder(f"{names[i]} and {names[j]} are mutually below each other")
    bottoms = [x for x in range(n) if all(leq[x][y] for y in range(n))]
    tops = [x for x in range(n) if all(leq[y][x] for y in range(n))]
    if not bottoms or not tops:
        raise NoBounds("no global minimum" if not bottoms else "no global maximum")
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            lower = [z for z in range(n) if leq[z][x] and leq[z][y]]
            glb = [z for z in lower if all(leq[w][z] for w in lower)]
            upper = [z for z in range(n) if leq[x][z] and leq[y][z]]
            lub = [z for z in upper if all(leq[z][w] for w in upper)]
            if not glb:
                raise NotALattice(f"{names[x]} and {names[y]} have no greatest lower bound")
            if not lub:
                raise NotALattice(f"{names[x]} and {names[y]} have no least upper bound")
            meet[x][y] = meet[y][x] = glb[0]
            join[x][y] = join[y][x] = lub[0]
    return Lattice(
        names=tuple(names),
        leq=tuple(tuple(bool(v) for v in row) for row in leq),
        meet=tuple(map(tuple, meet)),
        join=tuple(map(tuple, join)),
        bottom=bottoms[0],
        top=tops[0],
        name=name,
    )


def build_lattice(
    elements: Sequence[str],
    leq: Iterable[Sequence[str]] = (),
    meet: Mapping | Sequence | None = None,
    join: Mapping | Sequence | None = None,
    name: str = "",
) -> Lattice:
    """Build a lattice from element names and generating order pairs.

    The order is the reflexive-transitive closure of ``leq``.  Optional
    ``meet``/``join`` tables (nested mappings or index matrices) are checked
    against the ones derived from the order.
    """
    names = [str(e) for e in elements]
    seen = set()
    for x in names:
        if x in seen:
            raise DuplicateElement(f"element {x!r} declared twice")
        seen.add(x)
    index = {x: i for i, x in enumerate(names)}
    pairs = []
    for pair in leq:
        if len(pair) != 2:
            raise NotALattice(f"order pair {pair!r} must have two entries")
        a, b = (str(p) for p in pair)
        for p in (a, b):
            if p not in index:
                raise UnknownElement(f"order pair references undeclared element {p!r}")
        pairs.append((index[a], index[b]))
    L = lattice_from_order(names, _closure(len(names), pairs), name=name)
    for label, given, derived in (("meet", meet, L.meet), ("join", join, L.join)):
        if given is None:
            continue
        for x in range(L.n):
            for y in range(L.n):
                if isinstance(given, Mapping):
                    v = L.idx(str(given[names[x]][names[y]]))
                else:
                    v = given[x][y]
                    v = L.idx(v) if isinstance(v, str) else int(v)
                if v != derived[x][y]:
                    raise NotALattice(
                        f"supplied {label} table disagrees with the order at "
                        f"({names[x]}, {names[y]})")
    return L


def chain(n: int, names: Sequence[str] | None = None) -> Lattice:
    if names is None:
        names = ["0"] + [chr(ord("a") + i) for i in range(n - 2)] + ["1"] if n >= 2 else ["0"]
    leq = [[i <= j for j in range(n)] for i in range(n)]
    return lattice_from_order(list(names), leq, name=f"{n}-chain")


def boolean(k: int) -> Lattice:
    """The powerset lattice of a k-element set, elements named by bit strings."""
    n = 1 << k
    names = [format(i, f"0{k}b") if k else "0" for i in range(n)]
    leq = [[(i & j) == i for j in range(n)] for i in range(n)]
    return lattice_from_order(names, leq, name=f"2^{k}")


def is_distributive(L: Lattice) -> bool:
    m, j, r = L.meet, L.join, range(L.n)
    return all(m[x][j[y][z]] == j[m[x][y]][m[x][z]] for x in r for y in r for z in r)


def distributivity_witness(L: Lattice) -> tuple[int, int, int] | None:
    m, j, r = L.meet, L.join, range(L.n)
    for x in r:
        for y in r:
            for z in r:
                if m[x][j[y][z]] != j[m[x][y]][m[x][z]]:
                    return x, y, z
    return None


def is_relatively_complemented(L: Lattice) -> bool:
    for c in range(L.n):
        for d in range(L.n):
            if not L.leq[c][d]:
                continue
            interval = [x for x in range(L.n) if L.leq[c][x] and L.leq[x][d]]
            for a in interval:
                if not any(L.join[a][b] == d and L.meet[a][b] == c for b in interval):
                    return False
    return True


def join_irreducibles(L: Lattice) -> tuple[int, ...]:
    out = []
    for x in range(L.n):
        if x == L.bottom:
            continue
        if all(a == x or b == x for a in range(L.n) for b in range(L.n) if L.join[a][b] == x):
            out.append(x)
    return tuple(out)


def meet_irreducibles(L: Lattice) -> tuple[int, ...]:
    out = []
    for x in range(L.n):
        if x == L.top:
            continue
        if all(a == x or b == x for a in range(L.n) for b in range(L.n) if L.meet[a][b] == x):
            out.append(x)
    return tuple(out)


def sublattice(L: Lattice, members: Iterable[int], name: str = "") -> tuple[Lattice, tuple[int, ...]]:
    """Restrict ``L`` to ``members`` (kept in canonical order); returns the embedding too.

    Raises NotALattice when the subset is not closed under meet and join.
    """
    emb = tuple(sorted(set(members)))
    pos = {x: i for i, x in enumerate(emb)}
    meet, join = [], []
    for x in emb:
        mrow, jrow = [], []
        for y in emb:
            mx, jx = L.meet[x][y], L.join[x][y]
            if mx not in pos or jx not in pos:
                raise NotALattice(f"subset not closed at ({L.names[x]}, {L.names[y]})")
            mrow.append(pos[mx])
            jrow.append(pos[jx])
        meet.append(tuple(mrow))
        join.append(tuple(jrow))
    bottoms = [i for i, x in enumerate(emb) if all(L.leq[x][y] for y in emb)]
    tops = [i for i, x in enumerate(emb) if all(L.leq[y][x] for y in emb)]
    S = Lattice(
        names=tuple(L.names[x] for x in emb),
        leq=tuple(tuple(L.leq[x][y] for y in emb) for x in emb),
        meet=tuple(meet),
        join=tuple(join),
        bottom=bottoms[0],
        top=tops[0],
        name=name,
    )
    return S, emb


@dataclass(frozen=True)
class Homomorphism:
    """A map between two lattices (or operator algebras) given as an index table."""

    source: object
    target: object
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def compose(self, first: "Homomorphism") -> "Homomorphism":
        """``self ∘ first``."""
        return Homomorphism(first.source, self.target, tuple(self.map[y] for y in first.map))

    @property
    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.map)) == _lattice(self.target).n

    def table(self) -> dict[str, str]:
        S, T = _lattice(self.source), _lattice(self.target)
        return {S.names[x]: T.names[y] for x, y in enumerate(self.map)}


def _lattice(x) -> Lattice:
    return getattr(x, "lattice", x)


def _operators(x) -> dict[str, tuple[int, ...]]:
    return getattr(x, "operators", {})


def as_map(f, source, target) -> tuple[int, ...]:
    """Normalise a name mapping, index sequence or Homomorphism to an index table."""
    if isinstance(f, Homomorphism):
        return f.map
    S, T = _lattice(source), _lattice(target)
    if isinstance(f, Mapping):
        return tuple(T.idx(f[S.names[x]]) for x in range(S.n))
    return tuple(T.idx(v) for v in f)


def check_homomorphism(f, source, target) -> bool:
    """True iff ``f`` preserves meet, join, bottom and top."""
    S, T = _lattice(source), _lattice(target)
    h = as_map(f, source, target)
    if len(h) != S.n:
        return False
    if h[S.bottom] != T.bottom or h[S.top] != T.top:
        return False
    for x in range(S.n):
        hx = h[x]
        for y in range(x + 1, S.n):
            if h[S.meet[x][y]] != T.meet[hx][h[y]] or h[S.join[x][y]] != T.join[hx][h[y]]:
                return False
    return True


def product(Ls: Sequence[Lattice], name: str = "") -> Lattice:
    """Componentwise product; carrier enumerated lexicographically."""
    Ls = list(Ls)
    if not Ls:
        raise ValueError("product needs at least one factor")
    if len(Ls) == 1:
        return Ls[0]
    tuples = list(_cartesian(*(range(L.n) for L in Ls)))
    pos = {t: i for i, t in enumerate(tuples)}
    names = tuple("(" + ",".join(L.names[c] for L, c in zip(Ls, t)) + ")" for t in tuples)
    leq = tuple(tuple(all(L.leq[a][b] for L, a, b in zip(Ls, s, t)) for t in tuples) for s in tuples)
    meet = tuple(tuple(pos[tuple(L.meet[a][b] for L, a, b in zip(Ls, s, t))] for t in tuples)
                 for s in tuples)
    join = tuple(tuple(pos[tuple(L.join[a][b] for L, a, b in zip(Ls, s, t))] for t in tuples)
                 for s in tuples)
    return Lattice(names, leq, meet, join,
                   bottom=pos[tuple(L.bottom for L in Ls)],
                   top=pos[tuple(L.top for L in Ls)],
                   name=name or "x".join(L.name or str(L.n) for L in Ls))


def element_invariant(L: Lattice, x: int) -> tuple:
    ji = len(L.lower_covers[x]) == 1
    return (L.rank[x], L.corank[x], len(L.lower_covers[x]), len(L.upper_covers[x]), ji,
            len(L.down(x)), len(L.up(x)))


def _invariants(A) -> list[tuple]:
    L = _lattice(A)
    ops = _operators(A)
    out = []
    for x in range(L.n):
        inv = element_invariant(L, x)
        op_inv = tuple((nm, t[x] == x, L.rank[t[x]]) for nm, t in sorted(ops.items()))
        out.append(inv + op_inv)
    return out


def structure_signature(A) -> tuple:
    """Isomorphism invariant used to bucket candidates before an exact search."""
    return (_lattice(A).n, tuple(sorted(_operators(A))), tuple(sorted(_invariants(A))))


def _iso_search(A, B, find_all: bool) -> Iterator[tuple[int, ...]]:
    L, M = _lattice(A), _lattice(B)
    opsA, opsB = _operators(A), _operators(B)
    if L.n != M.n or sorted(opsA) != sorted(opsB):
        return
    invA, invB = _invariants(A), _invariants(B)
    if sorted(invA) != sorted(invB):
        return
    ops = [(opsA[k], opsB[k]) for k in sorted(opsA)]
    order = sorted(range(L.n), key=lambda x: (L.rank[x], x))
    cands = {x: [y for y in range(M.n) if invB[y] == invA[x]] for x in order}
    phi = [-1] * L.n
    used = [False] * M.n

    def consistent(x: int, y: int) -> bool:
        for u in range(L.n):
            v = phi[u]
            if v < 0:
                continue
            if L.leq[x][u] != M.leq[y][v] or L.leq[u][x] != M.leq[v][y]:
                return False
        for f, g in ops:
            fx = f[x]
            if fx == x:
                if g[y] != y:
                    return False
            elif phi[fx] >= 0 and phi[fx] != g[y]:
                return False
            for u in range(L.n):
                if phi[u] >= 0 and f[u] == x and g[phi[u]] != y:
                    return False
        return True

    def extend(k: int):
        if k == len(order):
            yield tuple(phi)
            return
        x = order[k]
        for y in cands[x]:
            if used[y] or not consistent(x, y):
                continue
            phi[x], used[y] = y, True
            yield from extend(k + 1)
            phi[x], used[y] = -1, False

    for sol in extend(0):
        yield sol
        if not find_all:
            return


def find_isomorphism(A, B) -> tuple[int, ...] | None:
    """An order isomorphism (hence lattice isomorphism) A -> B, or None.

    Operator algebras must carry the same operator names; the bijection then
    also commutes with every operator.
    """
    return next(_iso_search(A, B, find_all=False), None)


def automorphisms(A) -> list[tuple[int, ...]]:
    return list(_iso_search(A, A, find_all=True))


def is_order_embedding(f: Sequence[int], L: Lattice, M: Lattice) -> bool:
    return all(L.leq[x][y] == M.leq[f[x]][f[y]] for x in range(L.n) for y in range(L.n))
