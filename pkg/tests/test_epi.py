import pytest
from hypothesis import given, strategies as st

from oracles import all_homs, is_epi_oracle
from latsheaf.blo import as_blo
from latsheaf.corpus import chain3, diamond, two, with_closure
from latsheaf.epi import (
    Universe,
    amalgamation_check,
    clopen_partition_glue,
    dual_pair,
    enumerate_homomorphisms,
    es_experiment,
    hom_table,
    is_epimorphism,
    is_monomorphism,
    make_universe,
    one_point_sheaf_probe,
    replay_gluing,
    replay_instances,
    replay_point_injectivity,
    replay_stalk_cancellation,
    restrict_to_blocks,
    universe_of_size,
)
from latsheaf.errors import NotAPartition, NotClopen, TooLarge
from latsheaf.ideals import is_simple
from latsheaf.lattice import Homomorphism, boolean
from latsheaf.sheaf import dual_space, gamma, identity_morphism, section_of

U4 = universe_of_size(4)
U5 = universe_of_size(5)
pairs5 = st.tuples(st.sampled_from(U5.algebras), st.sampled_from(U5.algebras))


def hom(A, B, table):
    A, B = as_blo(A), as_blo(B)
    return Homomorphism(A, B, tuple(B.idx(table[a]) for a in A.names))


def test_enumeration_examples():
    t, c = two(), chain3()
    assert [h.map for h in enumerate_homomorphisms(t, t)] == [(0, 1)]
    assert [h.map for h in enumerate_homomorphisms(t, c)] == [(0, 2)]
    assert [h.map for h in enumerate_homomorphisms(c, t)] == [(0, 0, 1), (0, 1, 1)]


def test_enumeration_envelope():
    big = as_blo(boolean(7))
    with pytest.raises(TooLarge):
        enumerate_homomorphisms(big, big)


def test_epi_examples():
    t, c, d = as_blo(two()), as_blo(chain3()), as_blo(diamond())
    U = make_universe([c], name="{3}")
    bounds = hom(t, c, {"0": "0", "1": "1"})
    ok, w = is_epimorphism(bounds, U)
    assert not ok and w.D.name == c.name
    assert {w.g1.map, w.g2.map} == {(0, 1, 2), (0, 0, 2)}
    assert w.verify(bounds)
    ident = hom(d, d, {x: x for x in d.names})
    assert is_epimorphism(ident, U5) == (True, None)
    proj = hom(d, t, {"0": "0", "p": "1", "q": "0", "1": "1"})
    assert is_epimorphism(proj, U5)[0]


def test_three_chain_into_diamond_is_a_non_surjective_epi():
    f = hom(chain3(), diamond(), {"0": "0", "a": "p", "1": "1"})
    assert not f.is_surjective
    assert is_epimorphism(f, U5)[0]


def test_es_experiment_small_universes():
    r = es_experiment(U4)
    assert r.surjective_all_epi and r.injective_iff_mono and r.witnesses_verified
    assert all(rec.witness_verified for rec in r.records if not rec.epi_wrt_universe)
    r = es_experiment(make_universe([two()], name="{2}"))
    assert r.n_homomorphisms == 1 and r.non_surjective_epis == []
    simples = make_universe([two(), with_closure(diamond()), with_closure(boolean(2))],
                            name="simple<=4")
    assert all(is_simple(A) for A in simples.algebras)
    r = es_experiment(simples)
    assert all(rec.epi_wrt_universe == rec.surjective for rec in r.records)


def test_amalgamation_examples():
    t, c = as_blo(two()), as_blo(chain3())
    e = hom(t, t, {"0": "0", "1": "1"})
    ok, w = amalgamation_check(t, t, t, e, e, make_universe([t]))
    assert ok and w["D"] == t.name
    e1 = hom(t, c, {"0": "0", "1": "1"})
    ok, w = amalgamation_check(t, c, c, e1, e1, U5)
    assert ok
    ok, w = amalgamation_check(t, c, c, e1, e1, make_universe([t]))
    assert not ok and "exhausted" in w["note"]


def test_one_point_probe_identity():
    D = dual_space(diamond())
    H = one_point_sheaf_probe(two(), D, 0, (0, 1))
    assert H.is_valid and H.lam == (0,)
    with pytest.raises(ValueError):
        one_point_sheaf_probe(chain3(), dual_space(chain3()), 0, (0, 1, 2))


def test_replay_step_one_detects_non_injective_point_map():
    t, d = as_blo(two()), as_blo(diamond())
    _, _, H = dual_pair(hom(t, d, {"0": "0", "1": "1"}))
    r = replay_point_injectivity(H, t)
    assert r.detected and r.details["composites_equal"] and r.details["probes_distinct"]


def test_replay_step_two_detects_non_surjective_stalk_map():
    t, c = as_blo(two()), as_blo(chain3())
    _, _, H = dual_pair(hom(t, c, {"0": "0", "1": "1"}))
    r = replay_stalk_cancellation(H, 0, t)
    assert r.detected
    _, _, H = dual_pair(hom(diamond(), diamond(), {x: x for x in "0pq1"}))
    assert not replay_stalk_cancellation(H, 0, t).detected


def test_glue_examples():
    D = dual_space(diamond())
    s = section_of(D, "p")
    assert clopen_partition_glue(D, [[0, 1]], [s]) == s
    sp, sq = section_of(D, "p"), section_of(D, "q")
    glued = clopen_partition_glue(D, [[0], [1]], [sp, sq])
    assert glued.is_continuous
    assert glued.choice in D.generators
    with pytest.raises(NotAPartition):
        clopen_partition_glue(D, [[0, 1], [1]], [sp, sq])
    with pytest.raises(NotAPartition):
        clopen_partition_glue(D, [[0]], [sp])


def test_glue_rejects_non_clopen_block():
    from latsheaf.sheaf import Sheaf

    S = Sheaf(("x", "y"), (frozenset({0, 1}),), (as_blo(two()), as_blo(two())), ((0, 0), (1, 1)))
    with pytest.raises(NotClopen):
        clopen_partition_glue(S, [[0], [1]], [(0,), (1,)])


def test_replay_instances_cover_both_steps():
    detected = glued = 0
    for name, h in replay_instances():
        _, _, H = dual_pair(h)
        if len(set(H.lam)) < len(H.lam):
            detected += replay_point_injectivity(H, two(), name).detected
        else:
            glued += replay_gluing(H, name).all_lifted
    assert detected >= 3 and glued >= 3


@given(pairs5)
def test_surjective_implies_epi(pair):
    A, B = pair
    for f in enumerate_homomorphisms(A, B):
        if f.is_surjective:
            assert is_epimorphism(f, U5)[0]


@given(pairs5)
def test_mono_iff_injective(pair):
    A, B = pair
    for f in enumerate_homomorphisms(A, B):
        mono, _ = is_monomorphism(f, U5)
        assert mono == f.is_injective
        if f.is_injective:
            assert mono


@given(pairs5)
def test_epi_is_monotone_in_universe(pair):
    A, B = pair
    for f in enumerate_homomorphisms(A, B):
        if not is_epimorphism(f, U4)[0]:
            assert not is_epimorphism(f, U5)[0]


@given(pairs5)
def test_enumeration_agrees_with_all_maps(pair):
    A, B = pair
    assert [h.map for h in enumerate_homomorphisms(A, B)] == sorted(all_homs(A, B))


@given(st.sampled_from(U4.algebras), st.sampled_from(U4.algebras), st.randoms(use_true_random=False))
def test_epi_agrees_with_oracle(A, B, rnd):
    homs = enumerate_homomorphisms(A, B)
    if not homs:
        return
    f = rnd.choice(homs)
    assert is_epimorphism(f, U4)[0] == is_epi_oracle(f.map, B, U4.algebras)


@given(st.sampled_from([d for d in (diamond(), boolean(3), chain3())]), st.data())
def test_glue_restrict_round_trip(L, data):
    D = dual_space(L)
    G = gamma(D)
    sigma = section_of(D, 0).__class__(D, data.draw(st.sampled_from(G.sections)))
    pts = list(range(D.n_points))
    labels = [data.draw(st.integers(0, 2)) for _ in pts]
    partition = [[x for x in pts if labels[x] == k] for k in range(3)]
    partition = [b for b in partition if b]
    assert clopen_partition_glue(D, partition, restrict_to_blocks(sigma, partition)) == sigma


def test_parallel_hom_table_matches_serial(monkeypatch):
    serial = [[[h.map for h in c] for c in row] for row in hom_table(U4)]
    monkeypatch.setenv("LATSHEAF_THREADS", "2")
    parallel = [[[h.map for h in c] for c in row] for row in hom_table(U4)]
    assert serial == parallel


def test_universe_is_deduplicated():
    U = make_universe([two(), two(), chain3()])
    assert len(U) == 2 and U.provenance == "user-supplied"
    assert isinstance(U5, Universe) and len(U5) == 8


def test_identity_sheaf_morphism_replay_is_quiet():
    D = dual_space(diamond())
    r = replay_point_injectivity(identity_morphism(D), two())
    assert not r.detected and r.details["lambda_injective"]
