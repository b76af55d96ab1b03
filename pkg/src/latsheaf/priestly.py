"""Prime spectra with the Priestly base, clopen downsets, and duals of lattice maps.

A finite space keeps its topology as a named family of generating sets.  Every
finite Priestly space is discrete, which `is_discrete` lets callers confirm.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .blo import as_blo
from .errors import NotDistributive, NotPrime
from .ideals import Ideal, prime_ideals
from .lattice import Homomorphism, Lattice, find_isomorphism, is_distributive, lattice_from_order


def point_label(L: Lattice, members: Iterable[int]) -> str:
    return "{" + ",".join(L.names[x] for x in sorted(members)) + "}"


def minimal_neighborhoods(n_points: int, opens: Iterable[frozenset[int]]) -> tuple[frozenset[int], ...]:
    """Smallest open set around each point of the topology generated by ``opens``."""
    everything = frozenset(range(n_points))
    out = [everything] * n_points
    for U in opens:
        for x in U:
            out[x] = out[x] & U
    return tuple(out)


def is_open_in(nbhds: Sequence[frozenset[int]], U: Iterable[int]) -> bool:
    U = frozenset(U)
    return all(nbhds[x] <= U for x in U)


def open_sets(nbhds: Sequence[frozenset[int]]) -> list[frozenset[int]]:
    """All open sets, ordered by size then lexicographically."""
    n = len(nbhds)
    out = []
    for k in range(n + 1):
        for U in combinations(range(n), k):
            if is_open_in(nbhds, U):
                out.append(frozenset(U))
    return out


@dataclass(frozen=True)
class PriestlySpace:
    lattice: Lattice
    points: tuple[frozenset[int], ...]

    @property
    def n(self) -> int:
        return len(self.points)

    @cached_property
    def order(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(p <= q for q in self.points) for p in self.points)

    def N(self, a: int) -> frozenset[int]:
        """N_a = {P : a not in P}."""
        return frozenset(i for i, P in enumerate(self.points) if a not in P)

    @cached_property
    def base(self) -> dict[str, frozenset[int]]:
        out = {}
        full = frozenset(range(self.n))
        for a, nm in enumerate(self.lattice.names):
            out[f"N_{nm}"] = self.N(a)
            out[f"-N_{nm}"] = full - self.N(a)
        return out

    @cached_property
    def neighborhoods(self) -> tuple[frozenset[int], ...]:
        return minimal_neighborhoods(self.n, self.base.values())

    def is_open(self, U: Iterable[int]) -> bool:
        return is_open_in(self.neighborhoods, U)

    def is_clopen(self, U: Iterable[int]) -> bool:
        U = frozenset(U)
        return self.is_open(U) and self.is_open(frozenset(range(self.n)) - U)

    @property
    def is_discrete(self) -> bool:
        return all(len(nb) == 1 for nb in self.neighborhoods)

    def is_downset(self, U: Iterable[int]) -> bool:
        U = frozenset(U)
        return all(y in U for x in U for y in range(self.n) if self.order[y][x])

    def is_upset(self, U: Iterable[int]) -> bool:
        U = frozenset(U)
        return all(y in U for x in U for y in range(self.n) if self.order[x][y])

    def point_label(self, i: int) -> str:
        return point_label(self.lattice, self.points[i])

    def to_json(self) -> dict:
        nm = self.lattice.names
        return {
            "points": [[nm[x] for x in sorted(P)] for P in self.points],
            "base": {k: [self.point_label(i) for i in sorted(v)] for k, v in self.base.items()},
        }


def spectrum(L) -> PriestlySpace:
    L = as_blo(L).lattice
    if not is_distributive(L):
        raise NotDistributive(f"{L!r} is not distributive")
    return PriestlySpace(L, tuple(I.members for I in prime_ideals(L)))


def downsets(S: PriestlySpace) -> list[frozenset[int]]:
    out = []
    for k in range(S.n + 1):
        for U in combinations(range(S.n), k):
            if S.is_downset(U) and S.is_clopen(U):
                out.append(frozenset(U))
    return out


def downset_label(S: PriestlySpace, U: Iterable[int]) -> str:
    return "{" + ";".join(S.point_label(i) for i in sorted(U)) + "}"


def clopen_downsets(S: PriestlySpace) -> Lattice:
    """The lattice of clopen downward sets ordered by inclusion."""
    ds = downsets(S)
    names = [downset_label(S, U) for U in ds]
    leq = [[U <= V for V in ds] for U in ds]
    return lattice_from_order(names, leq, name=f"D({S.lattice.name})" if S.lattice.name else "")


@dataclass
class RoundtripReport:
    isomorphic: bool
    witness_map: str
    witness: dict[str, str]
    matches_search: bool
    failures: list = field(default_factory=list)


def birkhoff_roundtrip(L) -> RoundtripReport:
    """Check a -> N_a is an isomorphism L -> clopen_downsets(spectrum(L))."""
    L = as_blo(L).lattice
    S = spectrum(L)
    D = clopen_downsets(S)
    table = tuple(D.idx(downset_label(S, S.N(a))) if downset_label(S, S.N(a)) in D.index else -1
                  for a in range(L.n))
    failures = []
    if -1 in table:
        failures.append({"kind": "not-a-downset",
                         "elements": [L.names[a] for a, v in enumerate(table) if v < 0]})
    elif len(set(table)) != L.n or D.n != L.n:
        failures.append({"kind": "not-bijective"})
    else:
        for x in range(L.n):
            for y in range(L.n):
                if (table[L.meet[x][y]] != D.meet[table[x]][table[y]]
                        or table[L.join[x][y]] != D.join[table[x]][table[y]]):
                    failures.append({"kind": "operation", "pair": [L.names[x], L.names[y]]})
    ok = not failures
    searched = find_isomorphism(L, D)
    return RoundtripReport(
        isomorphic=ok,
        witness_map="a -> N_a = {P : a not in P}",
        witness={L.names[a]: (D.names[v] if v >= 0 else "") for a, v in enumerate(table)},
        matches_search=(searched is not None) == ok,
        failures=failures,
    )


def separation_check(S: PriestlySpace, convention: str = "downward") -> bool:
    """Order separation by clopen sets.

    ``downward``: x not<= y gives a clopen downset holding y and missing x.
    ``upward``: x not<= y gives a clopen upset holding x and missing y.
    """
    if convention not in ("downward", "upward"):
        raise ValueError(f"unknown convention {convention!r}")
    n = S.n
    subsets = [frozenset(U) for k in range(n + 1) for U in combinations(range(n), k)
               if S.is_clopen(U)]
    if convention == "downward":
        family = [U for U in subsets if S.is_downset(U)]
    else:
        family = [U for U in subsets if S.is_upset(U)]
    for x in range(n):
        for y in range(n):
            if S.order[x][y]:
                continue
            if convention == "downward":
                ok = any(y in U and x not in U for U in family)
            else:
                ok = any(x in U and y not in U for U in family)
            if not ok:
                return False
    return True


@dataclass(frozen=True)
class SpectralMap:
    """Point map between spectra, dual to a lattice homomorphism."""

    domain: PriestlySpace
    codomain: PriestlySpace
    map: tuple[int, ...]

    def compose(self, first: "SpectralMap") -> "SpectralMap":
        return SpectralMap(first.domain, self.codomain, tuple(self.map[y] for y in first.map))


def dual_of_lattice_hom(h: Homomorphism) -> SpectralMap:
    """P -> h^{-1}(P) from spectrum(target) to spectrum(source)."""
    src = as_blo(h.source).lattice
    tgt = as_blo(h.target).lattice
    X, Y = spectrum(src), spectrum(tgt)
    where = {P: i for i, P in enumerate(X.points)}
    out = []
    for Q in Y.points:
        pre = frozenset(a for a in range(src.n) if h.map[a] in Q)
        if pre not in where or not Ideal(as_blo(src), pre).is_prime():
            raise NotPrime(f"preimage {point_label(src, pre)} is not a prime ideal")
        out.append(where[pre])
    F = SpectralMap(Y, X, tuple(out))
    for i in range(Y.n):
        for j in range(Y.n):
            assert not Y.order[i][j] or X.order[F.map[i]][F.map[j]], "dual map not monotone"
    for U in X.base.values():
        assert Y.is_open(i for i in range(Y.n) if F.map[i] in U), "dual map not continuous"
    return F
