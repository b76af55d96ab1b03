"""Regularity hierarchy, the strongly-regular equivalence, and product/center checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Iterable, Sequence

from .blo import (
    OperatorAlgebra,
    as_blo,
    blo_product,
    center,
    center_members,
    closure_operator,
    is_relatively_complemented_blo,
    make_blo,
)
from .errors import FactorNotIndecomposable
from .ideals import (
    all_congruences,
    ideal_generated,
    is_simple,
    quotient,
)
from .lattice import boolean, find_isomorphism
from .sheaf import dual_space, point_congruence


@dataclass
class PointRecord:
    point: str
    ideal: list[str]
    ideal_prime: bool
    ideal_lattice_prime: bool
    ideal_maximal: bool
    congruence: list[list[str]]
    congruence_maximal: bool


@dataclass
class RegularityReport:
    algebra: str
    J: list[str]
    mode: str
    points: list[PointRecord]
    regular: bool
    strongly_regular: bool
    congruence_strongly_regular: bool
    simple: bool
    semisimple_stalks: bool

    def summary(self) -> str:
        flags = [k for k in ("simple", "strongly_regular", "congruence_strongly_regular",
                             "regular", "semisimple_stalks") if getattr(self, k)]
        return f"{self.algebra or 'algebra'}: " + (", ".join(flags) if flags else "none")

    @property
    def level(self) -> str:
        if self.simple:
            return "simple"
        if self.strongly_regular:
            return "strongly_regular"
        if self.regular:
            return "regular"
        return "irregular"


def classify(A, J: Iterable[str] = (), mode: str = "collapse") -> RegularityReport:
    """Check, for each prime x of Nr_J(A), whether Ig^A(x) is prime / maximal and θ_x is maximal.

    "Prime" is taken among operator-closed ideals; the plain lattice notion is
    recorded alongside.  θ_x is maximal iff A/θ_x is simple.
    """
    A = as_blo(A)
    D = dual_space(A, J, mode)
    records = []
    stalk_simple = []
    for i, x in enumerate(D.points):
        I = ideal_generated(A, x)
        th = D.congruences[i]
        simple_stalk = is_simple(D.stalks[i])
        stalk_simple.append(simple_stalk)
        records.append(PointRecord(
            point=D.point_names[i],
            ideal=I.names(),
            ideal_prime=I.is_blo_prime(),
            ideal_lattice_prime=I.is_prime(),
            ideal_maximal=I.is_maximal(),
            congruence=th.serialize(),
            congruence_maximal=simple_stalk,
        ))
    return RegularityReport(
        algebra=A.name,
        J=list(D.J),
        mode=mode,
        points=records,
        regular=all(r.ideal_prime for r in records),
        strongly_regular=all(r.ideal_maximal for r in records),
        congruence_strongly_regular=all(r.congruence_maximal for r in records),
        simple=is_simple(A),
        semisimple_stalks=all(stalk_simple),
    )


@dataclass
class StrongRegularityReport:
    in_hypothesis: bool
    strongly_regular: bool
    principal_ideals_central: bool
    stalks_simple: bool
    equivalent: bool
    witness: dict | None = None


def principal_ideals_centrally_generated(A) -> tuple[bool, str | None]:
    """Every Ig^A(a) equals Ig^A(z) for some central z; returns a failing a otherwise."""
    A = as_blo(A)
    central = {ideal_generated(A, [z]).members for z in center_members(A)}
    for a in range(A.n):
        if ideal_generated(A, [a]).members not in central:
            return False, A.names[a]
    return True, None


def strongly_regular_equivalence_report(A) -> StrongRegularityReport:
    A = as_blo(A)
    sr = classify(A).strongly_regular
    pic, bad = principal_ideals_centrally_generated(A)
    D = dual_space(A, (), "collapse")
    stalks = [is_simple(S) for S in D.stalks]
    witness = None
    if bad is not None:
        witness = {"principal_ideal_not_central": bad}
    if not all(stalks):
        witness = dict(witness or {}, non_simple_stalk=D.point_names[stalks.index(False)])
    return StrongRegularityReport(
        in_hypothesis=is_relatively_complemented_blo(A),
        strongly_regular=sr,
        principal_ideals_central=pic,
        stalks_simple=all(stalks),
        equivalent=sr == pic == all(stalks),
        witness=witness,
    )


def factor_congruence_pairs(A) -> list[tuple]:
    """Pairs (θ, φ) of nontrivial congruences with θ ∧ φ = identity and θ ∘ φ universal."""
    A = as_blo(A)
    cons = [t for t in all_congruences(A) if not t.is_identity and not t.is_universal]
    out = []
    for i, t in enumerate(cons):
        tb = [frozenset(b) for b in t.blocks]
        for s in cons[i + 1:]:
            if not t.meet(s).is_identity:
                continue
            sb = [frozenset(b) for b in s.blocks]
            if all(b & c for b in tb for c in sb):
                out.append((t, s))
    return out


def is_directly_indecomposable(A) -> bool:
    """Nontrivial and without a pair of complementary factor congruences."""
    A = as_blo(A)
    return A.n >= 2 and not factor_congruence_pairs(A)


@dataclass
class ProductCenterReport:
    n_factors: int
    product_size: int
    center_size: int
    center_is_boolean: bool
    stalks_match: list[bool]
    kernels_match: list[bool]
    ok: bool
    factors: list[str] = field(default_factory=list)


def _prepare_factor(F: OperatorAlgebra, auto_closure: bool) -> OperatorAlgebra:
    F = as_blo(F)
    if not is_directly_indecomposable(F):
        raise FactorNotIndecomposable(f"{F!r} is not directly indecomposable")
    if len(center_members(F)) != 2 and not F.ops and auto_closure:
        F = make_blo(F.lattice, {"c": closure_operator(F.lattice)}, name=f"{F.name}+cl")
    if len(center_members(F)) != 2:
        raise FactorNotIndecomposable(f"{F!r} has a nontrivial center")
    return F


def _extend(F: OperatorAlgebra, keys: Sequence[str]) -> OperatorAlgebra:
    ops = {k: F.operators.get(k, tuple(range(F.n))) for k in keys}
    return make_blo(F.lattice, ops, name=F.name)


def product_center_check(factors: Sequence, auto_closure: bool = True) -> ProductCenterReport:
    """Zd(∏ B_i) ≅ 2^I and each stalk of the product's dual is the matching factor."""
    prepared = [_prepare_factor(F, auto_closure) for F in factors]
    P = blo_product(prepared)
    keys = P.op_names
    k = len(prepared)
    Z, _ = center(P)
    center_ok = find_isomorphism(Z, boolean(k)) is not None
    D = dual_space(P, (), "collapse")
    coords = list(_cartesian(*(range(F.n) for F in prepared))) if k > 1 else [(x,) for x in range(P.n)]
    stalks_ok = [False] * k
    kernels_ok = [False] * k
    matched = set()
    for x, pt in enumerate(D.points):
        m = P.lattice.join_all(pt)
        c = coords[m]
        zeros = [i for i in range(k) if c[i] == prepared[i].bottom]
        if len(zeros) != 1 or any(c[i] != prepared[i].top for i in range(k) if i != zeros[0]):
            continue
        i = zeros[0]
        matched.add(i)
        stalks_ok[i] = find_isomorphism(D.stalks[x], _extend(prepared[i], keys)) is not None
        th = D.congruences[x]
        kernels_ok[i] = all(th.related(a, b) == (coords[a][i] == coords[b][i])
                            for a in range(P.n) for b in range(P.n))
    ok = (center_ok and len(D.points) == k and len(matched) == k
          and all(stalks_ok) and all(kernels_ok))
    return ProductCenterReport(k, P.n, Z.n, center_ok, stalks_ok, kernels_ok, ok,
                               [F.name for F in prepared])


def quotient_is_simple(A, x, mode: str = "collapse") -> bool:
    A = as_blo(A)
    Q, _ = quotient(A, point_congruence(A, x, mode))
    return is_simple(Q)
