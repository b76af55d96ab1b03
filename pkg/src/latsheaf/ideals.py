"""Ideals, congruences and quotients of finite BLOs (plain lattices are BLOs with no operators)."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .blo import OperatorAlgebra, as_blo, center_members, make_blo
from .errors import NotCompatible, TooLarge
from .lattice import is_distributive, is_relatively_complemented, lattice_from_order

MAX_CONGRUENCES = 200_000


def _closure_element(A: OperatorAlgebra, c: int) -> int:
    """Least c' >= c with f(c') <= c' for every operator."""
    J = A.join
    while True:
        nxt = c
        for _, f in A.ops:
            nxt = J[nxt][f[c]]
        if nxt == c:
            return c
        c = nxt


def is_closed_element(A: OperatorAlgebra, c: int) -> bool:
    return all(A.leq[f[c]][c] for _, f in A.ops)


@dataclass(frozen=True)
class Ideal:
    algebra: OperatorAlgebra
    members: frozenset[int]

    @property
    def generator(self) -> int:
        return self.algebra.lattice.join_all(sorted(self.members))

    @property
    def is_proper(self) -> bool:
        return self.algebra.top not in self.members

    def names(self) -> list[str]:
        return [self.algebra.names[x] for x in sorted(self.members)]

    def label(self) -> str:
        return "{" + ",".join(self.names()) + "}"

    def is_prime(self) -> bool:
        """Lattice primeness: proper, and x ^ y in I forces x in I or y in I."""
        A = self.algebra
        if not self.is_proper:
            return False
        I = self.members
        return all(x in I or y in I
                   for x in range(A.n) for y in range(A.n) if A.meet[x][y] in I)

    def is_blo_prime(self) -> bool:
        """Primeness among operator-closed ideals: Ig(x) ∩ Ig(y) ⊆ I forces x or y into I.

        Agrees with :meth:`is_prime` when there are no operators.
        """
        A = self.algebra
        if not self.is_proper:
            return False
        I = self.members
        cl = [_closure_element(A, x) for x in range(A.n)]
        return all(x in I or y in I
                   for x in range(A.n) for y in range(A.n) if A.meet[cl[x]][cl[y]] in I)

    def is_maximal(self) -> bool:
        """Maximal among proper operator-closed ideals."""
        A = self.algebra
        if not self.is_proper:
            return False
        c = self.generator
        return not any(A.lattice.lt(c, d) and d != A.top and is_closed_element(A, d)
                       for d in range(A.n))

    def is_regular(self) -> bool:
        A = self.algebra
        return ideal_generated(A, self.members & center_members(A)).members == self.members

    def __repr__(self) -> str:
        return f"Ideal{self.label()}"


def principal_ideal(A, a: int) -> Ideal:
    A = as_blo(A)
    return Ideal(A, A.lattice.down(a))


def is_ideal(A, members: Iterable[int]) -> bool:
    A = as_blo(A)
    S = frozenset(members)
    if not S:
        return False
    c = A.lattice.join_all(S)
    return S == A.lattice.down(c) and is_closed_element(A, c)


def all_ideals(A) -> list[Ideal]:
    """Operator-closed ideals, ordered by generator.  In a finite lattice every ideal is principal."""
    A = as_blo(A)
    return [principal_ideal(A, a) for a in range(A.n) if is_closed_element(A, a)]


def prime_ideals(L) -> list[Ideal]:
    return [I for I in all_ideals(as_blo(L).lattice) if I.is_prime()]


def ideal_generated(A, X: Iterable[int]) -> Ideal:
    """Ig^A(X): least downward, join-closed, operator-closed set containing X."""
    A = as_blo(A)
    c = _closure_element(A, A.lattice.join_all(X))
    return Ideal(A, A.lattice.down(c))


def canonical_labels(labels: Sequence[int]) -> tuple[int, ...]:
    first: dict[int, int] = {}
    out = []
    for i, v in enumerate(labels):
        out.append(first.setdefault(v, i))
    return tuple(out)


@dataclass(frozen=True)
class Congruence:
    """A partition stored as ``labels[x]`` = least element of the block of x."""

    algebra: OperatorAlgebra = field(compare=False, repr=False)
    labels: tuple[int, ...]

    @property
    def blocks(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for x, r in enumerate(self.labels):
            groups.setdefault(r, []).append(x)
        return [groups[r] for r in sorted(groups)]

    @property
    def n_blocks(self) -> int:
        return len(set(self.labels))

    def related(self, x: int, y: int) -> bool:
        return self.labels[x] == self.labels[y]

    @property
    def is_identity(self) -> bool:
        return self.n_blocks == len(self.labels)

    @property
    def is_universal(self) -> bool:
        return self.n_blocks == 1

    def block_of(self, x: int) -> frozenset[int]:
        r = self.labels[x]
        return frozenset(y for y, s in enumerate(self.labels) if s == r)

    def refines(self, other: "Congruence") -> bool:
        return all(other.labels[x] == other.labels[r] for x, r in enumerate(self.labels))

    def meet(self, other: "Congruence") -> "Congruence":
        return Congruence(self.algebra, canonical_labels(list(zip(self.labels, other.labels))))

    def join(self, other: "Congruence") -> "Congruence":
        return Congruence(self.algebra, _merge(self.labels, other.labels))

    def serialize(self) -> list[list[str]]:
        nm = self.algebra.names
        return [[nm[x] for x in b] for b in self.blocks]


def _merge(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    parent = list(range(len(a)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for labels in (a, b):
        for x, r in enumerate(labels):
            rx, rr = find(x), find(r)
            if rx != rr:
                parent[max(rx, rr)] = min(rx, rr)
    return canonical_labels([find(x) for x in range(len(a))])


def identity_congruence(A) -> Congruence:
    A = as_blo(A)
    return Congruence(A, tuple(range(A.n)))


def universal_congruence(A) -> Congruence:
    A = as_blo(A)
    return Congruence(A, (0,) * A.n)


def generate_congruence(A, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence containing ``pairs``.

    Union-find over the pair queue; every merging pair is pushed through the
    basic translations x -> x^c, x -> x v c and x -> f(x).
    """
    A = as_blo(A)
    n, M, J = A.n, A.meet, A.join
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = list(pairs)
    fs = [f for _, f in A.ops]
    while queue:
        a, b = queue.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[max(ra, rb)] = min(ra, rb)
        Ma, Mb, Ja, Jb = M[a], M[b], J[a], J[b]
        for c in range(n):
            queue.append((Ma[c], Mb[c]))
            queue.append((Ja[c], Jb[c]))
        for f in fs:
            queue.append((f[a], f[b]))
    return Congruence(A, canonical_labels([find(x) for x in range(n)]))


def principal_congruence(A, a: int, b: int) -> Congruence:
    return generate_congruence(A, [(a, b)])


def is_compatible(A, labels: Sequence[int]) -> bool:
    A = as_blo(A)
    n = A.n
    blocks: dict[int, list[int]] = {}
    for x, r in enumerate(labels):
        blocks.setdefault(r, []).append(x)
    reps = []
    for b in blocks.values():
        reps.extend((b[0], y) for y in b[1:])
    for x, y in reps:
        for c in range(n):
            if labels[A.meet[x][c]] != labels[A.meet[y][c]]:
                return False
            if labels[A.join[x][c]] != labels[A.join[y][c]]:
                return False
        for _, f in A.ops:
            if labels[f[x]] != labels[f[y]]:
                return False
    return True


def all_congruences(A, limit: int = MAX_CONGRUENCES) -> list[Congruence]:
    """Every congruence, as joins of principal congruences.

    Ordered by decreasing number of blocks, then by label tuple.
    """
    A = as_blo(A)
    n = A.n
    ident = identity_congruence(A)
    principals = {}
    for a in range(n):
        for b in range(n):
            if A.lattice.lt(a, b):
                th = principal_congruence(A, a, b)
                principals[th.labels] = th
    found = {ident.labels: ident}
    frontier = [ident]
    gens = list(principals.values())
    while frontier:
        nxt = []
        for th in frontier:
            for g in gens:
                j = th.join(g)
                if j.labels not in found:
                    found[j.labels] = j
                    nxt.append(j)
                    if len(found) > limit:
                        raise TooLarge(f"more than {limit} congruences")
        frontier = nxt
    return sorted(found.values(), key=lambda t: (-t.n_blocks, t.labels))


def maximal_congruences(A) -> list[Congruence]:
    cons = [t for t in all_congruences(A) if not t.is_universal]
    return [t for t in cons
            if not any(s.labels != t.labels and t.refines(s) for s in cons)]


def is_simple(A) -> bool:
    A = as_blo(A)
    if A.n < 2:
        return False
    return all(principal_congruence(A, a, b).is_universal
               for a in range(A.n) for b in range(A.n) if A.lattice.lt(a, b))


def is_semisimple(A) -> bool:
    """The maximal congruences intersect to the identity."""
    A = as_blo(A)
    acc = universal_congruence(A)
    for t in maximal_congruences(A):
        acc = acc.meet(t)
    return acc.is_identity


def congruence_generated_by_class(A, X: Iterable[int],
                                  congruences: Sequence[Congruence] | None = None) -> Congruence:
    """Co^A(X): intersection of the congruences having X as a full class.

    The empty intersection is the universal congruence.  ``congruences`` may
    pass a precomputed ``all_congruences(A)``.
    """
    A = as_blo(A)
    X = frozenset(X)
    acc = universal_congruence(A)
    if not X:
        return acc
    x0 = min(X)
    for th in congruences if congruences is not None else all_congruences(A):
        if th.block_of(x0) == X:
            acc = acc.meet(th)
    return acc


def ideal_congruence(A, I: Ideal | Iterable[int]) -> Congruence:
    """a ≡ b iff a v i = b v i for some i in I; its bottom block is I."""
    A = as_blo(A)
    members = I.members if isinstance(I, Ideal) else frozenset(I)
    J = A.join
    labels = []
    for a in range(A.n):
        for b in range(a + 1):
            if b == a or any(J[a][i] == J[b][i] for i in members):
                labels.append(b)
                break
    labels = canonical_labels(labels)
    if not is_compatible(A, labels):
        raise NotCompatible("ideal collapse is not compatible with the operations")
    th = Congruence(A, labels)
    if th.block_of(A.bottom) != members:
        raise NotCompatible("bottom block of the collapse differs from the ideal")
    return th


def block_name(A: OperatorAlgebra, block: Iterable[int]) -> str:
    return "[" + ",".join(A.names[x] for x in sorted(block)) + "]"


def quotient(A, theta: Congruence) -> tuple[OperatorAlgebra, tuple[int, ...]]:
    """A/θ with blockwise operations, and the canonical surjection a -> a/θ."""
    A = as_blo(A)
    lab = theta.labels
    reps = sorted(set(lab))
    pos = {r: i for i, r in enumerate(reps)}
    can = tuple(pos[lab[x]] for x in range(A.n))
    blocks = theta.blocks
    names = [block_name(A, b) for b in blocks]
    leq = [[lab[A.join[r][s]] == lab[s] for s in reps] for r in reps]
    Q = lattice_from_order(names, leq, name=f"{A.name}/θ" if A.name else "")
    ops = {k: tuple(can[f[r]] for r in reps) for k, f in A.ops}
    return make_blo(Q, ops, name=Q.name), can


@dataclass
class GSReport:
    correspondence: bool
    distributive: bool
    relatively_complemented: bool
    predicate: bool
    equivalence: bool
    n_ideals: int
    n_congruences: int
    witness: dict | None = None


def gratzer_schmidt_report(L) -> GSReport:
    """Does θ -> [bottom]θ give an order isomorphism Con(L) -> Id(L)?"""
    L = as_blo(L).lattice
    A = as_blo(L)
    ideals = all_ideals(L)
    cons = all_congruences(A)
    kernel = {t.labels: t.block_of(L.bottom) for t in cons}
    witness = None
    by_kernel: dict[frozenset, Congruence] = {}
    for t in cons:
        k = kernel[t.labels]
        if k in by_kernel and witness is None:
            witness = {"kind": "shared-kernel", "kernel": [L.names[x] for x in sorted(k)],
                       "congruences": [by_kernel[k].serialize(), t.serialize()]}
        by_kernel.setdefault(k, t)
    ideal_sets = {I.members for I in ideals}
    if witness is None:
        for I in ideals:
            if I.members not in by_kernel:
                witness = {"kind": "ideal-not-a-kernel", "ideal": I.names()}
                break
    bijective = witness is None and set(by_kernel) == ideal_sets
    monotone = all(
        s.refines(t) == (kernel[s.labels] <= kernel[t.labels]) for s in cons for t in cons
    ) if bijective else False
    if bijective and not monotone:
        witness = {"kind": "order-not-preserved"}
    distributive = is_distributive(L)
    rc = is_relatively_complemented(L)
    correspondence = bijective and monotone
    predicate = distributive and rc
    return GSReport(correspondence, distributive, rc, predicate, correspondence == predicate,
                    len(ideals), len(cons), witness)
