"""Homomorphism enumeration, universe-relative epi/mono tests and the ES replay harness.

Epimorphism status is always relative to a finite ``Universe``: f: A -> B is
epi when any two homomorphisms out of B into a universe member that agree
after f are equal.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .blo import OperatorAlgebra, as_blo, is_blo, is_conformal
from .classify import classify
from .corpus import _dedupe, lattices_up_to
from .errors import NotAPartition, NotClopen, TooLarge
from .lattice import Homomorphism
from .sheaf import (
    DualSpace,
    Section,
    Sheaf,
    SheafMorphism,
    dual_of_blo_hom,
    dual_space,
    gamma,
    one_point_sheaf,
)
from .ideals import is_simple

HOM_ENVELOPE = 4096


@dataclass(frozen=True)
class Universe:
    algebras: tuple[OperatorAlgebra, ...]
    provenance: str = "enumerated"
    name: str = ""

    def __len__(self) -> int:
        return len(self.algebras)

    def describe(self) -> dict:
        return {"name": self.name, "provenance": self.provenance,
                "members": [A.name for A in self.algebras]}


def make_universe(algebras, provenance: str = "user-supplied", name: str = "") -> Universe:
    """Validate and deduplicate up to isomorphism, keeping first occurrences."""
    algs = [as_blo(A) for A in algebras]
    for A in algs:
        if not is_blo(A):
            raise ValueError(f"{A!r} is not a valid BLO")
    return Universe(tuple(_dedupe(algs)), provenance, name)


def universe_of_size(n: int) -> Universe:
    """All bounded distributive lattices with at most n elements, identity operators."""
    algs = tuple(as_blo(L) for L in lattices_up_to(n, distributive=True))
    return Universe(algs, "enumerated", f"distributive<= {n}")


def enumerate_homomorphisms(A, B, envelope: int = HOM_ENVELOPE) -> list[Homomorphism]:
    """All homomorphisms A -> B preserving bounds, meet, join and shared operators.

    Images of the join-irreducibles are chosen first (monotonically), every other
    value is the join of the images below it, and the candidate is verified.
    """
    A, B = as_blo(A), as_blo(B)
    if A.n * B.n > envelope:
        raise TooLarge(f"|A|*|B| = {A.n * B.n} exceeds the envelope {envelope}")
    S, T = A.lattice, B.lattice
    jis = sorted(S.join_irreducibles, key=lambda j: (S.rank[j], j))
    below = [[j for j in jis if S.leq[j][x]] for x in range(S.n)]
    shared = [(A.operators[k], B.operators[k]) for k in A.op_names if k in B.operators]
    pos = {j: i for i, j in enumerate(jis)}
    out = []
    g: dict[int, int] = {}

    def clash(j: int, v: int) -> bool:
        for k in jis[:pos[j]]:
            if S.leq[k][j] and not T.leq[g[k]][v]:
                return True
            if S.leq[j][k] and not T.leq[v][g[k]]:
                return True
        for fa, fb in shared:
            fj = fa[j]
            if fj == S.bottom and fb[v] != T.bottom:
                return True
            if fj == j and fb[v] != v:
                return True
            if fj in g and fb[v] != g[fj]:
                return True
        return False

    def finish():
        h = tuple(T.join_all(g[j] for j in below[x]) if below[x] else T.bottom
                  for x in range(S.n))
        if h[S.top] != T.top:
            return
        for x in range(S.n):
            for y in range(x + 1, S.n):
                if h[S.meet[x][y]] != T.meet[h[x]][h[y]] or h[S.join[x][y]] != T.join[h[x]][h[y]]:
                    return
        for fa, fb in shared:
            if any(h[fa[x]] != fb[h[x]] for x in range(S.n)):
                return
        out.append(h)

    def extend(i: int):
        if i == len(jis):
            finish()
            return
        j = jis[i]
        for v in range(T.n):
            if clash(j, v):
                continue
            g[j] = v
            extend(i + 1)
            del g[j]

    if S.n == 1:
        if T.n == 1:
            out.append((0,))
    else:
        extend(0)
    return [Homomorphism(A, B, h) for h in sorted(set(out))]


@dataclass
class EpiWitness:
    D: OperatorAlgebra
    g1: Homomorphism
    g2: Homomorphism

    def verify(self, f: Homomorphism) -> bool:
        from .blo import is_blo_homomorphism

        return (self.g1.map != self.g2.map
                and is_blo_homomorphism(self.g1, self.g1.source, self.D)
                and is_blo_homomorphism(self.g2, self.g2.source, self.D)
                and self.g1.compose(f).map == self.g2.compose(f).map)

    def to_json(self) -> dict:
        return {"D": self.D.name, "g1": self.g1.table(), "g2": self.g2.table()}


def _cancellation_witness(f_map: Sequence[int], homs: Sequence[Homomorphism], D) -> EpiWitness | None:
    seen: dict[tuple[int, ...], Homomorphism] = {}
    for g in homs:
        key = tuple(g.map[y] for y in f_map)
        if key in seen:
            return EpiWitness(as_blo(D), seen[key], g)
        seen[key] = g
    return None


def is_epimorphism(f: Homomorphism, U: Universe) -> tuple[bool, EpiWitness | None]:
    """Right-cancellable against every pair of homs from f.target into a member of U."""
    for D in U.algebras:
        w = _cancellation_witness(f.map, enumerate_homomorphisms(f.target, D), D)
        if w is not None:
            return False, w
    return True, None


def is_monomorphism(f: Homomorphism, U: Universe) -> tuple[bool, EpiWitness | None]:
    """Left-cancellable against every pair of homs from a member of U into f.source."""
    for D in U.algebras:
        seen: dict[tuple[int, ...], Homomorphism] = {}
        for g in enumerate_homomorphisms(D, f.source):
            key = tuple(f.map[x] for x in g.map)
            if key in seen:
                return False, EpiWitness(as_blo(f.source), seen[key], g)
            seen[key] = g
    return True, None


@dataclass
class HomomorphismRecord:
    source: str
    target: str
    map: dict[str, str]
    injective: bool
    surjective: bool
    epi_wrt_universe: bool
    mono_wrt_universe: bool
    conformal: bool
    witness: dict | None = None
    witness_verified: bool | None = None


@dataclass
class ESReport:
    universe: dict
    n_homomorphisms: int
    records: list[HomomorphismRecord]
    classes: dict[str, str]
    non_surjective_epis: list[dict]
    grouped: dict[str, int]
    surjective_all_epi: bool
    injective_iff_mono: bool
    witnesses_verified: bool

    def to_json(self) -> dict:
        from dataclasses import asdict

        return asdict(self)


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("LATSHEAF_THREADS", "1")))
    except ValueError:
        return 1


def _homs_row(args):
    i, algs = args
    return [[h.map for h in enumerate_homomorphisms(algs[i], B)] for B in algs]


def hom_table(U: Universe) -> list[list[list[Homomorphism]]]:
    """homs[i][j] lists every homomorphism U[i] -> U[j]; rows may be computed in parallel."""
    algs = U.algebras
    n = len(algs)
    workers = min(_thread_count(), n)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_homs_row, [(i, algs) for i in range(n)]))
    else:
        rows = [_homs_row((i, algs)) for i in range(n)]
    return [[[Homomorphism(algs[i], algs[j], m) for m in rows[i][j]] for j in range(n)]
            for i in range(n)]


def es_experiment(U: Universe) -> ESReport:
    """Every hom between universe members with its surjectivity and epi/mono status."""
    algs = U.algebras
    n = len(algs)
    H = hom_table(U)
    levels = {i: classify(A).level for i, A in enumerate(algs)}
    records, found = [], []
    grouped: dict[str, int] = {}
    surj_ok = inj_ok = wit_ok = True
    for i in range(n):
        for j in range(n):
            for f in H[i][j]:
                epi_w = None
                for d in range(n):
                    epi_w = _cancellation_witness(f.map, H[j][d], algs[d])
                    if epi_w:
                        break
                mono_w = None
                for d in range(n):
                    seen: dict = {}
                    for g in H[d][i]:
                        key = tuple(f.map[x] for x in g.map)
                        if key in seen:
                            mono_w = (seen[key], g)
                            break
                        seen[key] = g
                    if mono_w:
                        break
                epi, mono = epi_w is None, mono_w is None
                verified = epi_w.verify(f) if epi_w else None
                if verified is False:
                    wit_ok = False
                if f.is_surjective and not epi:
                    surj_ok = False
                if f.is_injective != mono:
                    inj_ok = False
                rec = HomomorphismRecord(
                    source=algs[i].name, target=algs[j].name, map=f.table(),
                    injective=f.is_injective, surjective=f.is_surjective,
                    epi_wrt_universe=epi, mono_wrt_universe=mono, conformal=is_conformal(f),
                    witness=epi_w.to_json() if epi_w else None, witness_verified=verified)
                records.append(rec)
                if epi and not f.is_surjective:
                    key = f"{levels[i]} -> {levels[j]}"
                    grouped[key] = grouped.get(key, 0) + 1
                    found.append({"source": rec.source, "target": rec.target, "map": rec.map,
                                  "classes": [levels[i], levels[j]]})
    return ESReport(
        universe=U.describe(),
        n_homomorphisms=len(records),
        records=records,
        classes={A.name: levels[i] for i, A in enumerate(algs)},
        non_surjective_epis=found,
        grouped=dict(sorted(grouped.items())),
        surjective_all_epi=surj_ok,
        injective_iff_mono=inj_ok,
        witnesses_verified=wit_ok,
    )


def amalgamation_check(C, A, B, e1: Homomorphism, e2: Homomorphism,
                       U: Universe) -> tuple[bool, dict]:
    """Search U for D with embeddings m1: A -> D, m2: B -> D and m1∘e1 = m2∘e2."""
    if not (e1.is_injective and e2.is_injective):
        raise ValueError("the arms must be embeddings")
    for D in U.algebras:
        left = [m for m in enumerate_homomorphisms(A, D) if m.is_injective]
        right = {}
        for m in enumerate_homomorphisms(B, D):
            if m.is_injective:
                right.setdefault(m.compose(e2).map, m)
        for m1 in left:
            m2 = right.get(m1.compose(e1).map)
            if m2 is not None:
                return True, {"D": D.name, "m1": m1.table(), "m2": m2.table()}
    return False, {"note": f"exhausted {len(U)} universe members without an amalgam"}


def one_point_sheaf_probe(D_alg, target: Sheaf, y: int, f) -> SheafMorphism:
    """(λ, μ): (1, D) -> target with λ(0) = y and μ_0 = f: stalk_y -> D."""
    D_alg = as_blo(D_alg)
    if not is_simple(D_alg):
        raise ValueError(f"{D_alg!r} is not simple")
    table = f.map if isinstance(f, Homomorphism) else tuple(f)
    H = SheafMorphism(one_point_sheaf(D_alg), target, (y,), (tuple(table),))
    problems = H.problems()
    assert not problems, problems[0]
    return H


@dataclass
class ReplayResult:
    step: str
    instance: str
    detected: bool
    details: dict = field(default_factory=dict)


def _injective_homs(S, D) -> list[Homomorphism]:
    return [g for g in enumerate_homomorphisms(S, D) if g.is_injective]


def replay_point_injectivity(H: SheafMorphism, D_alg, instance: str = "") -> ReplayResult:
    """Point-injectivity step: two points with the same image under λ give one-point probes H_x ≠ H_y
    with H∘H_x = H∘H_y, so H fails to be mono once λ is not one to one."""
    Y = H.domain
    for x in range(Y.n_points):
        for y in range(x + 1, Y.n_points):
            if H.lam[x] != H.lam[y]:
                continue
            for fx in _injective_homs(Y.stalks[x], D_alg):
                for fy in _injective_homs(Y.stalks[y], D_alg):
                    kx = tuple(fx.map[t] for t in H.mu[x])
                    ky = tuple(fy.map[t] for t in H.mu[y])
                    if kx != ky:
                        continue
                    Hx = one_point_sheaf_probe(D_alg, Y, x, fx)
                    Hy = one_point_sheaf_probe(D_alg, Y, y, fy)
                    equal_after = H.compose(Hx).same_as(H.compose(Hy))
                    return ReplayResult("point-injectivity", instance, equal_after and not Hx.same_as(Hy), {
                        "points": [Y.point_names[x], Y.point_names[y]],
                        "composites_equal": equal_after,
                        "probes_distinct": not Hx.same_as(Hy),
                    })
    return ReplayResult("point-injectivity", instance, False, {"lambda_injective": len(set(H.lam)) == len(H.lam)})


def replay_stalk_cancellation(H: SheafMorphism, y: int, D_alg, instance: str = "") -> ReplayResult:
    """Stalk-surjectivity step: f0 ≠ f1 on the stalk at y agreeing after μ_y give H∘H_0 = H∘H_1."""
    Y = H.domain
    homs = enumerate_homomorphisms(Y.stalks[y], D_alg)
    seen: dict[tuple[int, ...], Homomorphism] = {}
    for f in homs:
        key = tuple(f.map[t] for t in H.mu[y])
        if key in seen:
            H0 = one_point_sheaf_probe(D_alg, Y, y, seen[key])
            H1 = one_point_sheaf_probe(D_alg, Y, y, f)
            same = H.compose(H0).same_as(H.compose(H1))
            return ReplayResult("stalk-surjectivity", instance, same and not H0.same_as(H1), {
                "point": Y.point_names[y], "f0": seen[key].table(), "f1": f.table()})
        seen[key] = f
    return ReplayResult("stalk-surjectivity", instance, False, {"point": Y.point_names[y],
                                                "stalk_map_surjective": len(set(H.mu[y])) == Y.stalks[y].n})


def _local_values(S: Sheaf, block: Sequence[int], local) -> dict[int, int]:
    if isinstance(local, Section):
        return {x: local.choice[x] for x in block}
    if isinstance(local, Mapping):
        return {x: local[x] for x in block}
    local = tuple(local)
    if len(local) == S.n_points:
        return {x: local[x] for x in block}
    if len(local) != len(block):
        raise ValueError("a local section must cover its block")
    return dict(zip(block, local))


def clopen_partition_glue(S: Sheaf, partition: Sequence[Sequence[int]], locals) -> Section:
    """Glue per-block sections over a clopen partition into one continuous section.

    A local is a Section of S, a mapping point -> value, or a tuple listing the
    values on the block in increasing point order.
    """
    blocks = [sorted(set(b)) for b in partition]
    if len(blocks) != len(locals):
        raise NotAPartition("one local section per block is required")
    covered: list[int] = []
    for b in blocks:
        if not b:
            raise NotAPartition("empty block")
        covered.extend(b)
    if len(covered) != len(set(covered)):
        raise NotAPartition("blocks overlap")
    if sorted(covered) != list(range(S.n_points)):
        raise NotAPartition("blocks do not cover the space")
    for b in blocks:
        if not S.is_clopen(b):
            raise NotClopen(f"block {[S.point_names[x] for x in b]} is not clopen")
    choice = [0] * S.n_points
    for b, local in zip(blocks, locals):
        vals = _local_values(S, b, local)
        for x in b:
            if not any(all(g[z] == vals[z] for z in S.neighborhoods[x]) for g in S.generators):
                raise ValueError(f"local section is not continuous at {S.point_names[x]}")
            choice[x] = vals[x]
    glued = Section(S, tuple(choice))
    assert glued.is_continuous, "glued section is not continuous"
    return glued


def restrict_to_blocks(sigma: Section, partition: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    return [tuple(sigma.choice[x] for x in sorted(set(b))) for b in partition]


@dataclass
class GlueReplay:
    instance: str
    n_sections: int
    all_lifted: bool
    partitions: list = field(default_factory=list)
    failures: list = field(default_factory=list)


def replay_gluing(H: SheafMorphism, instance: str = "") -> GlueReplay:
    """Lift every σ of the domain through Γ(H) by gluing generating sections.

    For each point y pick a with μ_y(a/θ) = σ(y); the generator σ_a transported
    by H agrees with σ on an open set N_y.  The λ-images of a disjoint choice of
    these sets, together with the points outside λ(Y), form a clopen partition
    of the codomain base; gluing the σ_a over it gives τ with Γ(H)τ = σ.
    """
    X, Y = H.codomain, H.domain
    if len(set(H.lam)) != len(H.lam):
        raise ValueError("λ must be injective for the gluing replay")
    G = gamma(Y)
    gens = X.generators
    failures, parts = [], []
    for sigma in G.sections:
        blocks, locs = [], []
        covered: set[int] = set()
        for y in range(Y.n_points):
            if y in covered:
                continue
            g = next((g for g in gens if H.apply(g)[y] == sigma[y]), None)
            if g is None:
                failures.append({"section": Y.section_name(sigma), "point": Y.point_names[y],
                                 "reason": "stalk map misses the value"})
                break
            moved = H.apply(g)
            agree = {z for z in range(Y.n_points) if moved[z] == sigma[z]}
            N = {z for z in agree if Y.neighborhoods[z] <= agree} - covered
            covered |= N
            blocks.append(sorted(H.lam[z] for z in N))
            locs.append(Section(X, g))
        else:
            rest = sorted(set(range(X.n_points)) - {H.lam[z] for z in range(Y.n_points)})
            if rest:
                blocks.append(rest)
                locs.append(Section(X, gens[0]))
            tau = clopen_partition_glue(X, blocks, locs)
            if H.apply(tau.choice) != sigma:
                failures.append({"section": Y.section_name(sigma), "reason": "lift mismatch"})
            parts.append([[X.point_names[x] for x in b] for b in blocks])
    return GlueReplay(instance, len(G), not failures, parts, failures)


def replay_instances() -> list[tuple[str, Homomorphism]]:
    """Small homomorphisms used to exercise the proof replay."""
    from .corpus import chain3, diamond, two
    from .lattice import boolean

    b3 = as_blo(boolean(3))
    d, c3, t = as_blo(diamond()), as_blo(chain3()), as_blo(two())

    def hom(A, B, table):
        return Homomorphism(A, B, tuple(B.idx(table[a]) for a in A.names))

    return [
        ("2 -> 2x2", hom(t, d, {"0": "0", "1": "1"})),
        ("2 -> 2^3", hom(t, b3, {"0": "000", "1": "111"})),
        ("2x2 -> 2^3 diagonal", hom(d, b3, {"0": "000", "p": "100", "q": "011", "1": "111"})),
        ("3 -> 2x2", hom(c3, d, {"0": "0", "a": "p", "1": "1"})),
        ("2x2 -> 2", hom(d, t, {"0": "0", "p": "1", "q": "0", "1": "1"})),
        ("2^3 -> 2x2", hom(b3, d, {"000": "0", "100": "p", "010": "q", "001": "0",
                                  "110": "1", "101": "p", "011": "q", "111": "1"})),
        ("2x2 identity", hom(d, d, {x: x for x in d.names})),
    ]


def dual_pair(h: Homomorphism, mode: str = "collapse") -> tuple[DualSpace, DualSpace, SheafMorphism]:
    DA = dual_space(h.source, (), mode)
    DB = dual_space(h.target, (), mode)
    return DA, DB, dual_of_blo_hom(h, DA, DB, mode)
