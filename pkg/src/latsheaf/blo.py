"""Bounded distributive lattices with unary operators."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as _cartesian
from typing import Iterable, Mapping, Sequence

from .errors import NotALattice, NotClosed, UnknownElement
from .lattice import (
    Homomorphism,
    Lattice,
    check_homomorphism,
    distributivity_witness,
    is_relatively_complemented,
    product,
    sublattice,
)


@dataclass(frozen=True)
class OperatorAlgebra:
    lattice: Lattice
    ops: tuple[tuple[str, tuple[int, ...]], ...] = ()
    name: str = field(default="", compare=False)

    @cached_property
    def operators(self) -> dict[str, tuple[int, ...]]:
        return dict(self.ops)

    @property
    def op_names(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.ops)

    @property
    def n(self) -> int:
        return self.lattice.n

    def __len__(self) -> int:
        return self.lattice.n

    @property
    def names(self) -> tuple[str, ...]:
        return self.lattice.names

    @property
    def meet(self):
        return self.lattice.meet

    @property
    def join(self):
        return self.lattice.join

    @property
    def leq(self):
        return self.lattice.leq

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @property
    def top(self) -> int:
        return self.lattice.top

    def idx(self, x) -> int:
        return self.lattice.idx(x)

    def __repr__(self) -> str:
        label = self.name or self.lattice.name or "BLO"
        return f"<{label}: {self.n} elements, ops {list(self.op_names)}>"


def make_blo(L: Lattice, operators: Mapping[str, Sequence | Mapping] | None = None,
             name: str = "") -> OperatorAlgebra:
    """Attach operators (index tables or element-name mappings) to a lattice."""
    ops = []
    for key in sorted(operators or {}):
        table = operators[key]
        if isinstance(table, Mapping):
            missing = [x for x in L.names if x not in table]
            if missing:
                raise UnknownElement(f"operator {key!r} undefined on {missing}")
            row = tuple(L.idx(str(table[x])) for x in L.names)
        else:
            row = tuple(L.idx(v) if isinstance(v, str) else int(v) for v in table)
        if len(row) != L.n:
            raise ValueError(f"operator {key!r} has {len(row)} entries, expected {L.n}")
        ops.append((str(key), row))
    return OperatorAlgebra(L, tuple(ops), name=name or L.name)


def as_blo(A) -> OperatorAlgebra:
    if isinstance(A, OperatorAlgebra):
        return A
    return OperatorAlgebra(A, (), name=A.name)


def identity_operator(L: Lattice) -> tuple[int, ...]:
    return tuple(range(L.n))


def closure_operator(L: Lattice) -> tuple[int, ...]:
    """x -> top for x != bottom; makes the center {bottom, top}."""
    return tuple(L.bottom if x == L.bottom else L.top for x in range(L.n))


def _violations_for(L: Lattice, key: str, f: Sequence[int]) -> list[dict]:
    nm = L.names
    out = []

    def add(axiom, message, *witness):
        out.append({"axiom": axiom, "operator": key, "message": message,
                    "witness": [nm[w] for w in witness]})

    if f[L.bottom] != L.bottom:
        add("bottom", f"{key}(bottom) != bottom", L.bottom)
    if f[L.top] != L.top:
        add("top", f"{key}(top) != top", L.top)
    for x in range(L.n):
        if f[f[x]] != f[x]:
            add("idempotent", f"{key}({key}(x)) != {key}(x)", x)
            break
    mono = join = dim_meet = None
    for x in range(L.n):
        for y in range(L.n):
            if mono is None and L.leq[x][y] and not L.leq[f[x]][f[y]]:
                mono = (x, y)
            if join is None and f[L.join[x][y]] != L.join[f[x]][f[y]]:
                join = (x, y)
            m = L.meet[x][y]
            if dim_meet is None and f[x] == x and f[y] == y and f[m] != m:
                dim_meet = (x, y)
    if mono:
        add("monotone", f"x <= y but {key}(x) is not below {key}(y)", *mono)
    if join:
        add("join", f"{key}(x v y) != {key}(x) v {key}(y)", *join)
    if dim_meet:
        add("dimension-meet", f"{key} fixes x and y but not x ^ y", *dim_meet)
    return out


def validate_blo(A: OperatorAlgebra) -> list[dict]:
    """Every violated BLO axiom with a witness; empty iff ``A`` is a BLO.

    The join half of the dimension-set law follows from join preservation, so
    it is reported under ``join``; the meet half is checked per operator.
    """
    A = as_blo(A)
    L = A.lattice
    out = []
    w = distributivity_witness(L)
    if w is not None:
        out.append({"axiom": "distributive", "operator": None,
                    "message": "x ^ (y v z) != (x ^ y) v (x ^ z)",
                    "witness": [L.names[v] for v in w]})
    for key, f in A.ops:
        out.extend(_violations_for(L, key, f))
    return out


def is_blo(A) -> bool:
    return not validate_blo(A)


def is_valid_operator(L: Lattice, f: Sequence[int]) -> bool:
    return not _violations_for(L, "f", f)


@dataclass(frozen=True)
class DimensionSet:
    element: str
    indices: frozenset[str]


def dimension_indices(A: OperatorAlgebra, x: int) -> frozenset[str]:
    return frozenset(k for k, f in A.ops if f[x] != x)


def dimension_set(A: OperatorAlgebra, x) -> DimensionSet:
    A = as_blo(A)
    i = A.idx(x)
    return DimensionSet(A.names[i], dimension_indices(A, i))


def fixed_points(A: OperatorAlgebra, indices: Iterable[str] | None = None) -> tuple[int, ...]:
    A = as_blo(A)
    keys = set(A.op_names if indices is None else indices)
    return tuple(x for x in range(A.n) if all(f[x] == x for k, f in A.ops if k in keys))


def center(A) -> tuple[Lattice, tuple[int, ...]]:
    """Zd(A): the sublattice of elements fixed by every operator, with its inclusion."""
    A = as_blo(A)
    members = fixed_points(A)
    try:
        return sublattice(A.lattice, members, name=f"Zd({A.name})" if A.name else "Zd")
    except NotALattice as exc:
        raise NotClosed(f"center is not a sublattice: {exc}") from None


def center_members(A) -> frozenset[int]:
    return frozenset(fixed_points(as_blo(A)))


def neat_reduct(A, J: Iterable[str] = ()) -> OperatorAlgebra:
    """Nr_J(A): elements fixed by every operator outside J, with the J-operators kept."""
    A = as_blo(A)
    J = set(J)
    unknown = J - set(A.op_names)
    if unknown:
        raise UnknownElement(f"unknown operator indices {sorted(unknown)}")
    outside = [k for k in A.op_names if k not in J]
    members = fixed_points(A, outside)
    try:
        S, emb = sublattice(A.lattice, members)
    except NotALattice as exc:
        raise NotClosed(f"Nr_J carrier is not a sublattice: {exc}") from None
    pos = {x: i for i, x in enumerate(emb)}
    ops = {}
    for k in sorted(J):
        f = A.operators[k]
        row = []
        for x in emb:
            if f[x] not in pos:
                raise NotClosed(f"operator {k} sends {A.names[x]} to {A.names[f[x]]}, "
                                "outside the neat reduct")
            row.append(pos[f[x]])
        ops[k] = tuple(row)
    label = f"Nr_{{{','.join(sorted(J))}}}({A.name})" if A.name else ""
    return make_blo(S, ops, name=label)


def embedding_by_name(sub, A) -> tuple[int, ...]:
    A = as_blo(A)
    return tuple(A.idx(x) for x in getattr(sub, "names"))


def is_relatively_complemented_blo(A) -> bool:
    """The lattice and its center are both relatively complemented.

    For a finite BLO this says the lattice is Boolean and the center is a
    Boolean subalgebra (complements of central elements stay central).
    """
    A = as_blo(A)
    if not is_relatively_complemented(A.lattice):
        return False
    Z, _ = center(A)
    return is_relatively_complemented(Z)


def is_blo_homomorphism(f, source, target) -> bool:
    """Lattice homomorphism commuting with every operator name the two share."""
    from .lattice import as_map

    S, T = as_blo(source), as_blo(target)
    h = as_map(f, S, T)
    if not check_homomorphism(h, S, T):
        return False
    for key, g in S.ops:
        if key in T.operators:
            gt = T.operators[key]
            if any(h[g[x]] != gt[h[x]] for x in range(S.n)):
                return False
    return True


def is_conformal(f: Homomorphism) -> bool:
    """f maps Zd(source) into Zd(target)."""
    S, T = as_blo(f.source), as_blo(f.target)
    zt = center_members(T)
    return all(f.map[x] in zt for x in center_members(S))


def enumerate_operators(L: Lattice, include_identity: bool = True) -> list[tuple[int, ...]]:
    """Every BLO operator on a distributive lattice ``L``, in lexicographic order.

    A join- and bottom-preserving map is fixed by its values on the
    join-irreducibles, so candidates are monotone assignments on them.
    """
    jis = list(L.join_irreducibles)
    below = [[j for j in jis if L.leq[j][x]] for x in range(L.n)]
    out = []
    for images in _cartesian(range(L.n), repeat=len(jis)):
        g = dict(zip(jis, images))
        if any(L.leq[a][b] and not L.leq[g[a]][g[b]] for a in jis for b in jis):
            continue
        f = tuple(L.join_all(g[j] for j in below[x]) for x in range(L.n))
        if not include_identity and f == tuple(range(L.n)):
            continue
        if is_valid_operator(L, f):
            out.append(f)
    return sorted(out)


def blo_product(factors: Sequence[OperatorAlgebra], name: str = "") -> OperatorAlgebra:
    """Componentwise product; an operator missing from a factor acts as the identity there."""
    factors = [as_blo(F) for F in factors]
    P = product([F.lattice for F in factors], name=name)
    if len(factors) == 1:
        return factors[0]
    keys = sorted({k for F in factors for k in F.op_names})
    tuples = list(_cartesian(*(range(F.n) for F in factors)))
    pos = {t: i for i, t in enumerate(tuples)}
    ops = {}
    for k in keys:
        ops[k] = tuple(pos[tuple(F.operators[k][c] if k in F.operators else c
                                 for F, c in zip(factors, t))] for t in tuples)
    return make_blo(P, ops, name=name or P.name)
