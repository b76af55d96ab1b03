import pytest
from hypothesis import given, strategies as st

from conftest import distributive_lattices, lattices
from latsheaf.corpus import chain3, diamond, pentagon, m3, two
from latsheaf.errors import DuplicateElement, NoBounds, NotALattice, NotAPartialOrder, UnknownElement
from latsheaf.lattice import (
    Homomorphism,
    automorphisms,
    boolean,
    build_lattice,
    chain,
    check_homomorphism,
    distributivity_witness,
    find_isomorphism,
    is_distributive,
    is_order_embedding,
    is_relatively_complemented,
    join_irreducibles,
    lattice_from_order,
    meet_irreducibles,
    product,
    sublattice,
)


def names(L, xs):
    return {L.names[x] for x in xs}


def test_two_element_lattice():
    L = two()
    assert L.n == 2
    assert L.meet[0][1] == 0 and L.join[0][1] == 1
    assert (L.bottom, L.top) == (0, 1)


def test_three_chain_meet_is_min():
    L = chain3()
    for x in range(3):
        for y in range(3):
            assert L.meet[x][y] == min(x, y)
            assert L.join[x][y] == max(x, y)


def test_diamond_tables():
    L = diamond()
    p, q = L.idx("p"), L.idx("q")
    assert L.names[L.meet[p][q]] == "0"
    assert L.names[L.join[p][q]] == "1"


def test_order_is_transitive_closure():
    L = build_lattice(["0", "a", "b", "1"], [("0", "a"), ("a", "b"), ("b", "1")])
    assert L.leq[L.idx("0")][L.idx("1")]
    assert L.leq[L.idx("a")][L.idx("1")]


def test_supplied_tables_are_checked():
    good = {"0": {"0": "0", "1": "0"}, "1": {"0": "0", "1": "1"}}
    build_lattice(["0", "1"], [("0", "1")], meet=good)
    bad = {"0": {"0": "0", "1": "1"}, "1": {"0": "1", "1": "1"}}
    with pytest.raises(NotALattice):
        build_lattice(["0", "1"], [("0", "1")], meet=bad)


def test_build_errors():
    with pytest.raises(DuplicateElement):
        build_lattice(["0", "0"], [])
    with pytest.raises(UnknownElement):
        build_lattice(["0", "1"], [("0", "z")])
    with pytest.raises(NoBounds):
        build_lattice(["a", "b"], [])
    with pytest.raises(NotAPartialOrder):
        build_lattice(["0", "a", "1"], [("0", "a"), ("a", "0"), ("a", "1")])
    # two maximal lower bounds below the pair c, d
    with pytest.raises(NotALattice):
        build_lattice(["0", "a", "b", "c", "d", "1"],
                      [("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"),
                       ("c", "1"), ("d", "1")])


def test_distributivity_examples():
    assert is_distributive(diamond())
    assert not is_distributive(pentagon())
    assert not is_distributive(m3())
    assert distributivity_witness(pentagon()) is not None
    for n in range(1, 7):
        assert is_distributive(chain(n))


def test_relative_complementation_examples():
    assert is_relatively_complemented(diamond())
    assert not is_relatively_complemented(chain3())
    assert is_relatively_complemented(boolean(3))
    assert is_relatively_complemented(product([two(), two(), two()]))


def test_join_irreducible_examples():
    assert names(chain3(), join_irreducibles(chain3())) == {"a", "1"}
    assert names(diamond(), join_irreducibles(diamond())) == {"p", "q"}
    B = boolean(3)
    assert names(B, join_irreducibles(B)) == {"001", "010", "100"}
    assert names(B, meet_irreducibles(B)) == {"011", "101", "110"}


def test_check_homomorphism_examples():
    c, t, d = chain3(), two(), diamond()
    assert check_homomorphism(list(range(3)), c, c)
    assert check_homomorphism({"0": "0", "a": "0", "1": "1"}, c, t)
    assert check_homomorphism({"0": "0", "p": "1", "q": "0", "1": "1"}, d, t)
    assert not check_homomorphism({"0": "0", "p": "1", "q": "1", "1": "1"}, d, t)
    assert not check_homomorphism({"0": "0", "a": "1", "1": "0"}, c, t)


def test_product_examples():
    assert find_isomorphism(product([two(), two()]), diamond()) is not None
    c = chain3()
    assert product([c]) is c
    P = product([two(), chain3()])
    assert P.n == 6
    assert len(join_irreducibles(P)) == 3


def test_isomorphism_examples():
    c = chain3()
    assert find_isomorphism(c, c) == (0, 1, 2)
    assert find_isomorphism(c, diamond()) is None
    assert find_isomorphism(diamond(), product([two(), two()])) is not None
    assert len(automorphisms(diamond())) == 2
    assert len(automorphisms(boolean(3))) == 6


def test_sublattice_of_diamond():
    d = diamond()
    S, emb = sublattice(d, [d.idx("0"), d.idx("p"), d.idx("1")])
    assert S.n == 3 and find_isomorphism(S, chain3()) is not None
    assert is_order_embedding(emb, S, d)


def test_homomorphism_compose():
    c, t = chain3(), two()
    f = Homomorphism(c, t, (0, 0, 1))
    g = Homomorphism(t, c, (0, 2))
    assert g.compose(f).map == (0, 0, 2)
    assert f.compose(g).map == (0, 1)
    assert f.is_surjective and not f.is_injective


@given(lattices)
def test_lattice_laws(L):
    r = range(L.n)
    m, j = L.meet, L.join
    for x in r:
        assert m[x][x] == x and j[x][x] == x
        assert L.leq[L.bottom][x] and L.leq[x][L.top]
        for y in r:
            assert m[x][y] == m[y][x] and j[x][y] == j[y][x]
            assert m[x][j[x][y]] == x and j[x][m[x][y]] == x
            assert L.leq[x][y] == (m[x][y] == x)
            for z in r:
                assert m[m[x][y]][z] == m[x][m[y][z]]
                assert j[j[x][y]][z] == j[x][j[y][z]]


@given(distributive_lattices)
def test_downset_of_join_irreducibles_is_order_embedding(L):
    ji = join_irreducibles(L)
    code = [frozenset(j for j in ji if L.leq[j][x]) for x in range(L.n)]
    for x in range(L.n):
        for y in range(L.n):
            assert (code[x] <= code[y]) == L.leq[x][y]


@given(distributive_lattices, distributive_lattices)
def test_product_commutes_up_to_isomorphism(A, B):
    if A.n * B.n > 16:
        return
    assert find_isomorphism(product([A, B]), product([B, A])) is not None


@given(lattices, st.randoms(use_true_random=False))
def test_isomorphism_found_after_relabelling(L, rnd):
    perm = list(range(L.n))
    rnd.shuffle(perm)
    inv = [0] * L.n
    for i, p in enumerate(perm):
        inv[p] = i
    names_ = [L.names[inv[i]] for i in range(L.n)]
    leq = [[L.leq[inv[i]][inv[j]] for j in range(L.n)] for i in range(L.n)]
    M = lattice_from_order(names_, leq)
    phi = find_isomorphism(L, M)
    assert phi is not None
    assert check_homomorphism(phi, L, M)
