import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from bicayley.graphs import (LCF_CODES, NAMED_EXPECTED, BiCayleySpec, DiGraph, Graph, Graph6Error,
                             GraphError, bcay, cay, connected_components, girth, graph6_decode,
                             graph6_encode, hat, induced_subgraph, is_bipartition, is_connected,
                             named_graph, quotient_graph, read_graph6_file, right_translation_group,
                             write_graph6_file)
from bicayley.groups import automorphism_group as group_aut, build_group
from bicayley.isomorph import automorphism_group, canonical_form
from bicayley.permgrp import PermGroup, is_semiregular, orbits

GROUPS_UP_TO_16 = ["C2", "C3", "C4", "C2^2", "C5", "C6", "D3", "C7", "C8", "C2xC4", "C2^3", "D4",
                   "Q8", "C9", "C3^2", "C10", "D5", "C12", "C2xC6", "D6", "C14", "C15", "C16",
                   "C2^4", "C4^2", "C2xQ8"]


def random_graph(rng, n, p):
    return Graph(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        Graph(3, [(0, 3)])
    g = Graph(4, [(0, 1), (1, 2)])
    assert g.neighbors(1).tolist() == [0, 2]
    assert g.has_edge(2, 1) and not g.has_edge(0, 2)
    assert g.degrees.tolist() == [1, 2, 1, 0]
    assert Graph.from_json(g.to_json()).edges == g.edges


def test_bcay_examples():
    K = bcay(build_group("C3"), (0, 1, 2))
    assert K.num_edges == 9 and all(K.has_edge(u, v) for u in range(3) for v in range(3, 6))
    G = build_group("C4")
    cube = bcay(G, (0, 1, 3))
    assert canonical_form(cube).certificate == canonical_form(named_graph("cube")).certificate
    assert nx.is_isomorphic(oracles.to_nx(cube), nx.hypercube_graph(3))
    heawood = bcay(build_group("C7"), (0, 1, 3))
    assert nx.is_isomorphic(oracles.to_nx(heawood), nx.heawood_graph())
    with pytest.raises(GraphError):
        bcay(G, ())


def test_vertex_convention():
    G = build_group("C5")
    spec = BiCayleySpec(G, (0, 2))
    assert spec.vertex(3, 0) == 3 and spec.vertex(3, 1) == 8
    gamma = spec.graph()
    # (x,0) ~ (s x, 1)
    for x in range(5):
        for s in (0, 2):
            assert gamma.has_edge(x, 5 + G.mul(s, x))
    Q = build_group("Q8")
    gq = bcay(Q, (Q.index("1"), Q.index("i")))
    i, j = Q.index("i"), Q.index("j")
    assert gq.has_edge(j, 8 + Q.mul(i, j))


def test_cay_examples():
    D = cay(build_group("C4"), (1,))
    assert sorted(D.arcs) == [(0, 1), (1, 2), (2, 3), (3, 0)]
    D = cay(build_group("C5"), (1, 4))
    assert len(D.arcs) == 10
    assert nx.is_isomorphic(oracles.to_nx(D.underlying()), nx.cycle_graph(5))
    Q = build_group("Q8")
    D = cay(Q, (Q.index("i"), Q.index("j")))
    assert all(len(D.out_neighbors(v)) == 2 for v in range(8))
    with pytest.raises(GraphError):
        cay(Q, (Q.identity,))


def test_right_translation_group():
    rng = random.Random(7)
    for _ in range(50):
        spec = rng.choice(GROUPS_UP_TO_16)
        G = build_group(spec)
        S = rng.sample(range(G.order), rng.randint(1, min(4, G.order)))
        gamma = bcay(G, S)
        H = right_translation_group(G)
        assert H.order == G.order
        assert all(gamma.is_automorphism(g) for g in H.gens)
        assert is_semiregular(H)
        assert orbits(H) == [tuple(range(G.order)), tuple(range(G.order, 2 * G.order))]


def test_quotients():
    G = build_group("C4")
    cube = bcay(G, (0, 1, 3))
    assert quotient_graph(cube, [[v] for v in range(8)]).edges == cube.edges
    q = quotient_graph(cube, orbits(PermGroup(8, [hat(G, 2)])))
    assert nx.is_isomorphic(oracles.to_nx(q), nx.cycle_graph(4))
    C9 = build_group("C9")
    q = quotient_graph(bcay(C9, (0, 1, 3)), orbits(PermGroup(18, [hat(C9, 3)])))
    assert nx.is_isomorphic(oracles.to_nx(q), nx.cycle_graph(6))
    with pytest.raises(GraphError):
        quotient_graph(cube, [[0, 1], [2, 3]])


def test_girth_examples():
    assert girth(named_graph("K33")) == 4
    assert girth(named_graph("heawood")) == 6
    assert girth(named_graph("moebius_kantor")) == 6  # GP(8,3); see notes on the listed value
    assert girth(Graph(4, [(0, 1), (1, 2)])) == float("inf")


@pytest.mark.parametrize("seed", range(6))
def test_girth_against_oracle(seed):
    rng = random.Random(seed)
    g = random_graph(rng, 12, 0.25)
    assert girth(g) == oracles.nx_girth(g)


def test_components():
    G = build_group("C6")
    gamma = bcay(G, (0, 2, 4))
    comps = connected_components(gamma)
    assert len(comps) == 2
    assert nx.number_connected_components(oracles.to_nx(gamma)) == 2
    assert len(connected_components(bcay(build_group("C7"), (0, 1, 3)))) == 1
    sub = induced_subgraph(gamma, comps[0])
    assert canonical_form(sub).certificate == canonical_form(bcay(build_group("C3"), (0, 1, 2))).certificate


@pytest.mark.parametrize("spec", GROUPS_UP_TO_16)
def test_connected_iff_generates(spec):
    G = build_group(spec)
    sizes = range(1, G.order + 1) if G.order <= 8 else (1, 2, 3)
    for k in sizes:
        for S in itertools.combinations(range(G.order), k):
            s_inv = G.inv(S[0])
            gen = G.closure(G.mul(s_inv, t) for t in S)
            assert is_connected(bcay(G, S)) == (len(gen) == G.order), (spec, S)


@pytest.mark.parametrize("spec", ["C6", "Q8", "C3^2", "D4", "C2xC4"])
def test_bipartite_and_regular(spec):
    G = build_group(spec)
    rng = random.Random(spec)
    for _ in range(10):
        S = rng.sample(range(G.order), rng.randint(1, G.order))
        gamma = bcay(G, S)
        assert is_bipartition(gamma, range(G.order))
        assert gamma.is_regular(len(S))


@pytest.mark.parametrize("spec", ["C8", "Q8", "C3^2", "C2xC4", "D4"])
def test_bcay_isomorphism_invariance(spec):
    G = build_group(spec)
    aut = group_aut(G).element_list()
    rng = random.Random(spec)
    for _ in range(8):
        S = rng.sample(range(G.order), 3)
        g = rng.randrange(G.order)
        a = rng.choice(aut)
        T = [G.mul(g, a[s]) for s in S]
        assert canonical_form(bcay(G, S)).certificate == canonical_form(bcay(G, T)).certificate


@pytest.mark.parametrize("name", sorted(NAMED_EXPECTED))
def test_named_graphs(name):
    g = named_graph(name)
    n, gi = NAMED_EXPECTED[name]
    assert g.n == n and g.is_regular(3) and girth(g) == gi
    assert oracles.nx_girth(g) == gi


def test_named_graphs_match_networkx():
    pairs = {"heawood": nx.heawood_graph(), "pappus": nx.pappus_graph(),
             "desargues": nx.desargues_graph(), "moebius_kantor": nx.moebius_kantor_graph(),
             "cube": nx.hypercube_graph(3),
             "K33": nx.complete_bipartite_graph(3, 3)}
    for name, ref in pairs.items():
        assert nx.is_isomorphic(oracles.to_nx(named_graph(name)), ref), name
    tc = nx.LCF_graph(30, [-13, -9, 7, -7, 9, 13], 5)
    assert nx.is_isomorphic(oracles.to_nx(named_graph("tutte_coxeter")), tc)


def test_lcf_fault_injection():
    with pytest.raises(GraphError):
        named_graph("cube", ((3, 3), 4))
    with pytest.raises(KeyError):
        named_graph("nonexistent")
    assert named_graph("cube", LCF_CODES["cube"]).n == 8


def test_graph6_examples():
    assert graph6_encode(Graph(5, [])) == b"D??"
    assert graph6_encode(Graph(0, [])) == b"?"
    k33 = named_graph("K33")
    assert graph6_encode(k33) == oracles.nx_graph6(k33)
    back = graph6_decode(graph6_encode(k33))
    assert canonical_form(back).certificate == canonical_form(k33).certificate
    assert graph6_decode(b">>graph6<<" + graph6_encode(k33)).edges == k33.edges


@pytest.mark.parametrize("n", [62, 63, 64, 100, 258])
def test_graph6_size_forms(n):
    rng = random.Random(n)
    g = random_graph(rng, n, 0.05)
    enc = graph6_encode(g)
    assert enc == oracles.nx_graph6(g)
    assert graph6_decode(enc).edges == g.edges


def test_graph6_random_roundtrips():
    rng = random.Random(2024)
    for _ in range(200):
        g = random_graph(rng, rng.randint(0, 40), rng.random())
        enc = graph6_encode(g)
        assert enc == oracles.nx_graph6(g)
        assert graph6_decode(enc).edges == g.edges


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 20).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, max(n - 1, 0)),
                                                        st.integers(0, max(n - 1, 0))), max_size=40))))
def test_graph6_roundtrip_property(data):
    n, pairs = data
    edges = {tuple(sorted(p)) for p in pairs if p[0] != p[1]}
    g = Graph(n, sorted(edges))
    assert graph6_decode(graph6_encode(g)).edges == g.edges


@pytest.mark.parametrize("bad", [b"", b"D?", b"D???", b"D\x10?", b"~??", b"~?~"])
def test_graph6_malformed(bad):
    with pytest.raises(Graph6Error):
        graph6_decode(bad)


def test_graph6_files(tmp_path):
    p = tmp_path / "h.g6"
    h = named_graph("heawood")
    write_graph6_file(h, p)
    assert read_graph6_file(p).edges == h.edges
    assert nx.read_graph6(p).number_of_edges() == 21


def test_digraph_basics():
    D = DiGraph(3, [(0, 1), (1, 2)])
    assert D.out_neighbors(0).tolist() == [1]
    assert D.is_automorphism((0, 1, 2)) and not D.is_automorphism((1, 0, 2))
    with pytest.raises(GraphError):
        DiGraph(2, [(0, 1), (0, 1)])


def test_relabel():
    g = Graph(3, [(0, 1)])
    h = g.relabel((2, 0, 1))
    assert h.edges == ((0, 2),)
    assert automorphism_group(g).order == 2
