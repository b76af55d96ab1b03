"""Dual sheaf spaces of finite BLOs, their sections, and sheaf morphisms.

A ``Sheaf`` is a finite base (points plus generating opens), one stalk algebra
per point, and a family of generating sections.  A section is continuous when
near every point it agrees with some generating section on the smallest open
neighbourhood of that point.  For the dual space of A the generating sections
are the maps x -> a/θ_x.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product as _cartesian
from typing import Iterable, Sequence

from .blo import (
    OperatorAlgebra,
    as_blo,
    center_members,
    embedding_by_name,
    is_blo_homomorphism,
    is_relatively_complemented_blo,
    make_blo,
    neat_reduct,
)
from .errors import NotPrime, NotWellDefined, TooLarge
from .ideals import (
    Congruence,
    all_congruences,
    all_ideals,
    congruence_generated_by_class,
    ideal_congruence,
    ideal_generated,
    quotient,
    universal_congruence,
)
from .lattice import Homomorphism, Lattice
from .priestly import PriestlySpace, is_open_in, minimal_neighborhoods, open_sets, spectrum

MODES = ("collapse", "class")
MAX_SECTIONS = 250_000


@dataclass(frozen=True, eq=False)
class Sheaf:
    point_names: tuple[str, ...]
    opens: tuple[frozenset[int], ...]
    stalks: tuple[OperatorAlgebra, ...]
    generators: tuple[tuple[int, ...], ...]

    @property
    def n_points(self) -> int:
        return len(self.point_names)

    @cached_property
    def neighborhoods(self) -> tuple[frozenset[int], ...]:
        return minimal_neighborhoods(self.n_points, self.opens)

    def is_open(self, U: Iterable[int]) -> bool:
        return is_open_in(self.neighborhoods, U)

    def is_clopen(self, U: Iterable[int]) -> bool:
        U = frozenset(U)
        return self.is_open(U) and self.is_open(frozenset(range(self.n_points)) - U)

    @property
    def is_discrete(self) -> bool:
        return all(len(nb) == 1 for nb in self.neighborhoods)

    def locally_generated_at(self, choice: Sequence[int], x: int) -> bool:
        nb = self.neighborhoods[x]
        return any(all(g[y] == choice[y] for y in nb) for g in self.generators)

    def is_continuous(self, choice: Sequence[int]) -> bool:
        return all(self.locally_generated_at(choice, x) for x in range(self.n_points))

    @property
    def zero(self) -> tuple[int, ...]:
        return tuple(S.bottom for S in self.stalks)

    @property
    def one(self) -> tuple[int, ...]:
        return tuple(S.top for S in self.stalks)

    def section_name(self, choice: Sequence[int]) -> str:
        return "<" + "|".join(S.names[c] for S, c in zip(self.stalks, choice)) + ">"

    def support(self, choice: Sequence[int]) -> frozenset[int]:
        """[σ] = points where σ is not the bottom of the stalk."""
        return frozenset(x for x, (S, c) in enumerate(zip(self.stalks, choice)) if c != S.bottom)


@dataclass(frozen=True, eq=False)
class DualSpace(Sheaf):
    source: OperatorAlgebra
    J: tuple[str, ...]
    base: PriestlySpace
    points: tuple[frozenset[int], ...]
    congruences: tuple[Congruence, ...]
    canonical: tuple[tuple[int, ...], ...]
    mode: str

    @property
    def base_members(self) -> frozenset[int]:
        """Carrier of Nr_J(A) as indices of A."""
        return frozenset(embedding_by_name(self.base.lattice, self.source))

    def to_json(self) -> dict:
        from .io import algebra_to_json

        A = self.source
        return {
            "source": A.name,
            "J": list(self.J),
            "mode": self.mode,
            "points": [[A.names[x] for x in sorted(P)] for P in self.points],
            "base": self.base.to_json()["base"],
            "stalks": [algebra_to_json(S) for S in self.stalks],
            "canonical": [{A.names[a]: S.names[c[a]] for a in range(A.n)}
                          for S, c in zip(self.stalks, self.canonical)],
        }


def point_congruence(A: OperatorAlgebra, x: Iterable[int], mode: str,
                     congruences: Sequence[Congruence] | None = None) -> Congruence:
    if mode == "collapse":
        return ideal_congruence(A, ideal_generated(A, x))
    if mode == "class":
        return congruence_generated_by_class(A, x, congruences)
    raise ValueError(f"unknown quotient mode {mode!r}")


def dual_space(A, J: Iterable[str] = (), mode: str = "collapse") -> DualSpace:
    """(X(A,J), δ(A)): prime ideals of Nr_J(A) with the stalks A/θ_x."""
    A = as_blo(A)
    J = tuple(sorted(J))
    nr = neat_reduct(A, J)
    emb = embedding_by_name(nr, A)
    base = spectrum(nr.lattice)
    points = tuple(frozenset(emb[i] for i in P) for P in base.points)
    congs, stalks, cans = [], [], []
    every = all_congruences(A) if mode == "class" and points else None
    for x in points:
        th = point_congruence(A, x, mode, every)
        Q, can = quotient(A, th)
        congs.append(th)
        stalks.append(Q)
        cans.append(can)
    gens = tuple(tuple(c[a] for c in cans) for a in range(A.n))
    return DualSpace(
        point_names=tuple(base.point_label(i) for i in range(base.n)),
        opens=tuple(base.base.values()),
        stalks=tuple(stalks),
        generators=gens,
        source=A,
        J=J,
        base=base,
        points=points,
        congruences=tuple(congs),
        canonical=tuple(cans),
        mode=mode,
    )


@dataclass(frozen=True, eq=False)
class Section:
    space: Sheaf
    choice: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.choice[x]

    @property
    def is_continuous(self) -> bool:
        return self.space.is_continuous(self.choice)

    @property
    def support(self) -> frozenset[int]:
        return self.space.support(self.choice)

    def values(self) -> dict[str, str]:
        S = self.space
        return {S.point_names[x]: S.stalks[x].names[c] for x, c in enumerate(self.choice)}

    def __eq__(self, other) -> bool:
        return isinstance(other, Section) and self.choice == other.choice

    def __hash__(self) -> int:
        return hash(self.choice)


def section_of(D: DualSpace, a) -> Section:
    """σ_a(x) = a/θ_x."""
    return Section(D, D.generators[D.source.idx(a)])


@dataclass(frozen=True, eq=False)
class Gamma:
    space: Sheaf
    sections: tuple[tuple[int, ...], ...]
    algebra: OperatorAlgebra

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {s: i for i, s in enumerate(self.sections)}

    def __len__(self) -> int:
        return len(self.sections)


def gamma(S: Sheaf, limit: int = MAX_SECTIONS) -> Gamma:
    """Γ(X, δ): continuous sections under pointwise operations."""
    total = 1
    for st in S.stalks:
        total *= st.n
    if total > limit:
        raise TooLarge(f"{total} candidate sections exceed the limit {limit}")
    secs = tuple(c for c in _cartesian(*(range(st.n) for st in S.stalks)) if S.is_continuous(c))
    pos = {s: i for i, s in enumerate(secs)}
    stalks = S.stalks

    def pointwise(tables):
        rows = []
        for s in secs:
            cols = [tab[a] for tab, a in zip(tables, s)]
            row = []
            for t in secs:
                v = tuple([c[b] for c, b in zip(cols, t)])
                assert v in pos, "continuous sections are not closed under the operations"
                row.append(pos[v])
            rows.append(tuple(row))
        return tuple(rows)

    leqs = [st.leq for st in stalks]
    leq = tuple(tuple(all(tab[a][b] for tab, a, b in zip(leqs, s, t)) for t in secs)
                for s in secs)
    assert S.zero in pos and S.one in pos, "bottom/top sections must be continuous"
    L = Lattice(
        names=tuple(S.section_name(s) for s in secs),
        leq=leq,
        meet=pointwise([st.meet for st in stalks]),
        join=pointwise([st.join for st in stalks]),
        bottom=pos[S.zero],
        top=pos[S.one],
        name="Gamma",
    )
    keys = sorted({k for st in stalks for k in st.op_names})
    ops = {}
    for k in keys:
        row = []
        for s in secs:
            v = tuple(st.operators[k][a] if k in st.operators else a for st, a in zip(stalks, s))
            assert v in pos, f"continuous sections not closed under {k}"
            row.append(pos[v])
        ops[k] = tuple(row)
    return Gamma(S, secs, make_blo(L, ops, name="Gamma"))


def _kernel_is_identity(D: DualSpace) -> bool:
    A = D.source
    acc = universal_congruence(A)
    for th in D.congruences:
        acc = acc.meet(th)
    return acc.is_identity


def delta_topology_flags(D: DualSpace) -> tuple[bool, bool]:
    """(every σ_a is open, every σ_a is continuous) for the topology on δ(A)
    generated by the sets σ_a(O), O a basic neighbourhood."""
    nbs = D.neighborhoods
    generating = [frozenset((x, g[x]) for x in nb) for g in D.generators for nb in nbs]

    def open_in_delta(W):
        return all(any(p in G and G <= W for G in generating) for p in W)

    sections_open = all(open_in_delta(frozenset((x, g[x]) for x in nb))
                        for g in D.generators for nb in nbs)
    sections_continuous = all(
        D.is_open(x for x in range(D.n_points) if (x, g[x]) in G)
        for g in D.generators for G in generating)
    return sections_open, sections_continuous


@dataclass
class EtaReport:
    homomorphism: bool
    injective: bool
    surjective: bool
    isomorphism: bool
    kernel_identity: bool
    n_points: int
    stalk_sizes: list[int]
    gamma_size: int
    sections_open: bool
    sections_continuous: bool
    relatively_complemented: bool
    witness: dict | None = None


def eta_injectivity(A, J: Iterable[str] = (), mode: str = "collapse") -> tuple[bool, bool]:
    """(η injective, ⋂θ_x = identity) from the generators alone, without building Γ."""
    D = dual_space(A, J, mode)
    return len(set(D.generators)) == D.source.n, _kernel_is_identity(D)


def eta_map(D: DualSpace, G: Gamma) -> tuple[int, ...]:
    return tuple(G.index[g] for g in D.generators)


def eta_report(A, J: Iterable[str] = (), mode: str = "collapse") -> EtaReport:
    """η(a) = σ_a into the continuous sections; injectivity and surjectivity decided exhaustively."""
    A = as_blo(A)
    D = dual_space(A, J, mode)
    G = gamma(D)
    eta = eta_map(D, G)
    hom = is_blo_homomorphism(eta, A, G.algebra)
    injective = len(set(eta)) == A.n
    surjective = len(set(eta)) == len(G)
    witness = None
    if not injective:
        seen = {}
        for a, v in enumerate(eta):
            if v in seen:
                witness = {"kind": "collision", "elements": [A.names[seen[v]], A.names[a]]}
                break
            seen[v] = a
    elif not surjective:
        missing = next(i for i in range(len(G)) if i not in set(eta))
        witness = {"kind": "section-not-in-image", "section": G.algebra.names[missing]}
    opn, cont = delta_topology_flags(D)
    return EtaReport(
        homomorphism=hom,
        injective=injective,
        surjective=surjective,
        isomorphism=hom and injective and surjective,
        kernel_identity=_kernel_is_identity(D),
        n_points=D.n_points,
        stalk_sizes=[S.n for S in D.stalks],
        gamma_size=len(G),
        sections_open=opn,
        sections_continuous=cont,
        relatively_complemented=is_relatively_complemented_blo(A),
        witness=witness,
    )


def characteristic_section_check(D: DualSpace, a) -> bool:
    """σ_a is the top class on N_a and the bottom class elsewhere."""
    a = D.source.idx(a)
    if a not in D.base_members:
        raise ValueError(f"{D.source.names[a]} is not in the neat reduct")
    g = D.generators[a]
    for x, P in enumerate(D.points):
        want = D.stalks[x].top if a not in P else D.stalks[x].bottom
        if g[x] != want:
            return False
    return True


@dataclass(frozen=True, eq=False)
class SheafMorphism:
    """H = (λ, μ): domain -> codomain with λ on points and μ_y: stalk(λy) -> stalk(y)."""

    domain: Sheaf
    codomain: Sheaf
    lam: tuple[int, ...]
    mu: tuple[tuple[int, ...], ...]

    def apply(self, choice: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.mu[y][choice[self.lam[y]]] for y in range(self.domain.n_points))

    def compose(self, first: "SheafMorphism") -> "SheafMorphism":
        """``self ∘ first`` where first: Z -> Y and self: Y -> X."""
        lam = tuple(self.lam[first.lam[z]] for z in range(first.domain.n_points))
        mu = tuple(tuple(first.mu[z][self.mu[first.lam[z]][t]]
                         for t in range(self.codomain.stalks[lam[z]].n))
                   for z in range(first.domain.n_points))
        return SheafMorphism(first.domain, self.codomain, lam, mu)

    def problems(self) -> list[str]:
        out = []
        Y, X = self.domain, self.codomain
        for y in range(Y.n_points):
            src, tgt = X.stalks[self.lam[y]], Y.stalks[y]
            if not is_blo_homomorphism(self.mu[y], src, tgt):
                out.append(f"mu at {Y.point_names[y]} is not a homomorphism")
        for U in X.opens:
            if not Y.is_open(y for y in range(Y.n_points) if self.lam[y] in U):
                out.append("lambda is not continuous")
                break
        for g in X.generators:
            if not Y.is_continuous(self.apply(g)):
                out.append("mu does not carry continuous sections to continuous sections")
                break
        return out

    @property
    def is_valid(self) -> bool:
        return not self.problems()

    def same_as(self, other: "SheafMorphism") -> bool:
        return self.lam == other.lam and self.mu == other.mu


def identity_morphism(S: Sheaf) -> SheafMorphism:
    return SheafMorphism(S, S, tuple(range(S.n_points)),
                         tuple(tuple(range(st.n)) for st in S.stalks))


def apply_sheaf_morphism(H: SheafMorphism, sigma: Section) -> Section:
    """(Γ(H)σ)(y) = μ(y, σ(λ y))."""
    return Section(H.domain, H.apply(sigma.choice))


def gamma_map(H: SheafMorphism, G_cod: Gamma | None = None, G_dom: Gamma | None = None) -> Homomorphism:
    """Γ(H): Γ(codomain) -> Γ(domain), verified to be a homomorphism."""
    G_cod = G_cod or gamma(H.codomain)
    G_dom = G_dom or gamma(H.domain)
    table = []
    for s in G_cod.sections:
        t = H.apply(s)
        if t not in G_dom.index:
            raise NotWellDefined("transported section is not continuous", witness=list(s))
        table.append(G_dom.index[t])
    hom = Homomorphism(G_cod.algebra, G_dom.algebra, tuple(table))
    assert is_blo_homomorphism(hom, G_cod.algebra, G_dom.algebra), "Γ(H) is not a homomorphism"
    return hom


def dual_of_blo_hom(h: Homomorphism, source_dual: DualSpace | None = None,
                    target_dual: DualSpace | None = None, mode: str = "collapse") -> SheafMorphism:
    """h^d = (h*, h°) from the dual of h.target to the dual of h.source.

    h*(y) = h^{-1}(y) ∩ Nr_J(A) and h°(y, a/θ_{h*y}) = h(a)/θ_y.
    h must be conformal; otherwise h* can drop a point and functoriality fails.
    """
    A, B = as_blo(h.source), as_blo(h.target)
    zb = center_members(B)
    off = [a for a in center_members(A) if h.map[a] not in zb]
    if off:
        raise NotWellDefined("h is not conformal", witness=[A.names[off[0]], B.names[h.map[off[0]]]])
    DA = source_dual or dual_space(A, (), mode)
    DB = target_dual or dual_space(B, (), mode)
    where = {P: i for i, P in enumerate(DA.points)}
    base_A = DA.base_members
    lam, mu = [], []
    for y, Py in enumerate(DB.points):
        pre = frozenset(a for a in base_A if h.map[a] in Py)
        if pre not in where:
            raise NotPrime(f"h*({DB.point_names[y]}) = "
                           f"{{{','.join(A.names[a] for a in sorted(pre))}}} is not a point")
        x = where[pre]
        canA, canB = DA.canonical[x], DB.canonical[y]
        table: dict[int, int] = {}
        first: dict[int, int] = {}
        for a in range(A.n):
            s, t = canA[a], canB[h.map[a]]
            if s in table and table[s] != t:
                raise NotWellDefined(
                    f"h° not well defined at {DB.point_names[y]}",
                    witness=[A.names[first[s]], A.names[a]])
            table.setdefault(s, t)
            first.setdefault(s, a)
        lam.append(x)
        mu.append(tuple(table[s] for s in range(DA.stalks[x].n)))
    H = SheafMorphism(DB, DA, tuple(lam), tuple(mu))
    bad = [p for p in H.problems() if "homomorphism" in p]
    if bad:
        raise NotWellDefined(bad[0])
    return H


def naturality_holds(h: Homomorphism, mode: str = "collapse") -> bool:
    """Γ(h^d) ∘ η_A = η_B ∘ h."""
    A, B = as_blo(h.source), as_blo(h.target)
    DA, DB = dual_space(A, (), mode), dual_space(B, (), mode)
    H = dual_of_blo_hom(h, DA, DB, mode)
    return all(H.apply(DA.generators[a]) == DB.generators[h.map[a]] for a in range(A.n))


def restrict(S: Sheaf, Y: Sequence[int]) -> Sheaf:
    Y = sorted(set(Y))
    pos = {y: i for i, y in enumerate(Y)}
    opens = tuple(frozenset(pos[y] for y in U if y in pos) for U in S.opens)
    return Sheaf(
        point_names=tuple(S.point_names[y] for y in Y),
        opens=opens,
        stalks=tuple(S.stalks[y] for y in Y),
        generators=tuple(tuple(g[y] for y in Y) for g in S.generators),
    )


@dataclass
class RestrictionReport:
    isomorphic: bool
    closed: bool
    quotient_size: int
    point_map: dict[str, str] | None
    reason: str = ""


def restrict_to_closed(D: DualSpace, Y: Iterable[int]) -> tuple[Sheaf, RestrictionReport]:
    """Restrict to Y and compare with the dual of A/⋂θ_y, matched through canonical maps."""
    A = D.source
    Y = sorted(set(Y))
    closed = D.is_open(set(range(D.n_points)) - set(Y))
    R = restrict(D, Y)
    theta = universal_congruence(A)
    for y in Y:
        theta = theta.meet(D.congruences[y])
    Q, q = quotient(A, theta)
    D2 = dual_space(Q, D.J, D.mode)
    if D2.n_points != len(Y):
        return R, RestrictionReport(False, closed, Q.n, None,
                                    f"quotient dual has {D2.n_points} points, restriction {len(Y)}")
    for perm in permutations(range(len(Y))):
        if _stalks_match(D, Y, D2, q, perm):
            pm = {D.point_names[y]: D2.point_names[perm[i]] for i, y in enumerate(Y)}
            return R, RestrictionReport(True, closed, Q.n, pm)
    return R, RestrictionReport(False, closed, Q.n, None, "no point bijection matches the stalks")


def _stalks_match(D: DualSpace, Y, D2: DualSpace, q, perm) -> bool:
    A = D.source
    for i, y in enumerate(Y):
        can, can2 = D.canonical[y], D2.canonical[perm[i]]
        if D.stalks[y].n != D2.stalks[perm[i]].n:
            return False
        phi: dict[int, int] = {}
        for a in range(A.n):
            if phi.setdefault(can[a], can2[q[a]]) != can2[q[a]]:
                return False
        if len(set(phi.values())) != len(phi):
            return False
    return True


@dataclass
class RegularIdealReport:
    bijective: bool
    n_regular_ideals: int
    n_open_sets: int
    order_preserving: bool
    pairs: list = field(default_factory=list)
    witness: dict | None = None


def regular_ideal_openset_iso(S: Sheaf) -> RegularIdealReport:
    """Regular ideals of Γ versus open subsets of the base via J -> U[J] and U -> J[U]."""
    G = gamma(S)
    GA = G.algebra
    regular = [I for I in all_ideals(GA) if I.is_regular()]
    reg_sets = {I.members for I in regular}
    opens = open_sets(S.neighborhoods)
    supports = [S.support(s) for s in G.sections]

    def U_of(J: frozenset[int]) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for i in J:
            out |= supports[i]
        return out

    def J_of(U: frozenset[int]) -> frozenset[int]:
        return frozenset(i for i, sp in enumerate(supports) if sp <= U)

    witness = None
    for U in opens:
        JU = J_of(U)
        if JU not in reg_sets:
            witness = {"kind": "J[U] not a regular ideal", "U": sorted(U)}
            break
        if U_of(JU) != U:
            witness = {"kind": "U[J[U]] != U", "U": sorted(U)}
            break
    if witness is None:
        for J in reg_sets:
            UJ = U_of(J)
            if not S.is_open(UJ) or J_of(UJ) != J:
                witness = {"kind": "J[U[J]] != J", "J": sorted(GA.names[i] for i in J)}
                break
    order = all((U <= V) == (J_of(U) <= J_of(V)) for U in opens for V in opens)
    order = order and all((U_of(I) <= U_of(K)) for I in reg_sets for K in reg_sets if I <= K)
    bij = witness is None and len(reg_sets) == len(opens)
    pairs = [{"open": [S.point_names[x] for x in sorted(U)],
              "ideal": [GA.names[i] for i in sorted(J_of(U))]} for U in opens]
    return RegularIdealReport(bij and order, len(reg_sets), len(opens), order, pairs, witness)


def one_point_sheaf(D_alg) -> Sheaf:
    """The sheaf (1, D) over the one-point space."""
    D_alg = as_blo(D_alg)
    return Sheaf(("0",), (frozenset({0}),), (D_alg,), tuple((d,) for d in range(D_alg.n)))
