import pytest

from oracles import lattice_count
from latsheaf.blo import is_blo
from latsheaf.corpus import (
    blo_corpus,
    boolean_corpus,
    enumerate_lattices,
    lattices_up_to,
    operator_families,
    with_closure,
)
from latsheaf.errors import TooLarge
from latsheaf.lattice import boolean, find_isomorphism, is_distributive, is_relatively_complemented


@pytest.mark.parametrize("n", range(1, 7))
def test_lattice_counts_match_oracle(n):
    assert len(enumerate_lattices(n)) == lattice_count(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_distributive_counts_match_oracle(n):
    assert len(enumerate_lattices(n, distributive=True)) == lattice_count(n, distributive=True)


def test_known_counts_beyond_oracle():
    assert [len(enumerate_lattices(n)) for n in (7, 8)] == [53, 222]
    assert [len(enumerate_lattices(n, True)) for n in (7, 8)] == [8, 15]


def test_enumeration_has_no_duplicates():
    Ls = enumerate_lattices(6)
    for i, A in enumerate(Ls):
        for B in Ls[i + 1:]:
            assert find_isomorphism(A, B) is None


def test_enumeration_is_deterministic():
    names = [L.name for L in lattices_up_to(6, True)]
    assert names == [L.name for L in lattices_up_to(6, True)]
    assert all(is_distributive(L) for L in lattices_up_to(7, True))


def test_size_limit():
    with pytest.raises(TooLarge):
        enumerate_lattices(12)


def test_operator_families_are_up_to_automorphism():
    fams = operator_families(boolean(2), 1)
    assert fams[0] == ()
    # non-identity operators on 2x2 up to the swap
    assert len(fams) - 1 == 3


def test_blo_corpus_is_valid():
    C = blo_corpus(5, 2)
    assert all(is_blo(A) for A in C)
    assert len({A.name for A in C}) == len(C)


def test_boolean_corpus():
    C = boolean_corpus(8, 2)
    assert len(C) == 329
    assert all(is_relatively_complemented(A.lattice) for A in C)


def test_closure_name():
    assert with_closure(boolean(2)).name == "11+cl" or with_closure(boolean(2)).name.endswith("+cl")
