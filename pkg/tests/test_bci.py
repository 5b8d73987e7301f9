import itertools
import random
from math import comb

import networkx as nx
import pytest

import oracles
from bicayley.bci import (HypothesisError, bci_by_conjugacy, bicayley_equivalent, build_reverser,
                          bipartite_semiregular_class, ci_bci_transfer, ci_set_classes,
                          connection_set_classes, is_bci_graph, is_ci_digraph, is_m_bci_group,
                          is_m_dci_group, normalized_connection_set, parse_set,
                          regular_subgroups_conjugate)
from bicayley.graphs import bcay, cay, named_graph
from bicayley.groups import automorphism_group as group_aut, build_group, classify_class_C
from bicayley.isomorph import are_isomorphic, automorphism_group

NILPOTENT_UP_TO_16 = ["C2", "C3", "C4", "C2^2", "C5", "C7", "C8", "C2xC4", "C2^3", "D4", "Q8",
                      "C9", "C3^2", "C11", "C12", "C2xC6", "C13", "C15", "C16", "C2^4", "C4^2",
                      "C2xC8", "C2^2xC4", "C2xQ8", "D8", "C3xC4", "C14", "C10"]
CSTAR_UP_TO_9 = ["C2", "C3", "C4", "C2^2", "C5", "C6", "C7", "C8", "C2^3", "Q8", "C9", "C3^2"]


def oracle_equivalent(G, S, T, auts):
    """Brute force over G x Aut(G) straight from the definition T = g S^a."""
    T = set(T)
    return any({G.mul(g, a[s]) for s in S} == T for a in auts for g in range(G.order))


def oracle_is_bci(G, S, auts):
    ref = oracles.to_nx(bcay(G, S))
    for T in itertools.combinations(range(G.order), len(S)):
        if nx.is_isomorphic(ref, oracles.to_nx(bcay(G, T))) and not oracle_equivalent(G, S, T, auts):
            return False
    return True


def test_equivalence_examples():
    G = build_group("C4")
    g, a = bicayley_equivalent(G, (0, 1, 2), (0, 1, 2))
    assert g == G.identity and a == (0, 1, 2, 3)
    assert bicayley_equivalent(G, (0, 1, 2), (1, 2, 3)) == (1, (0, 1, 2, 3))
    g, a = bicayley_equivalent(G, (0, 1, 2), (2, 3, 0))
    assert g == 2 and a == (0, 1, 2, 3)
    assert bicayley_equivalent(G, (0, 1), (0, 1, 2)) is None
    assert bicayley_equivalent(G, (0, 2), (0, 1)) is None


@pytest.mark.parametrize("spec", ["C6", "Q8", "C2xC4", "C3^2"])
def test_equivalence_against_oracle(spec):
    G = build_group(spec)
    auts = [[phi[x] for x in range(G.order)] for phi in oracles.automorphisms(G)]
    rng = random.Random(spec)
    for _ in range(25):
        k = rng.randint(1, 4)
        S, T = rng.sample(range(G.order), k), rng.sample(range(G.order), k)
        res = bicayley_equivalent(G, S, T)
        assert (res is not None) == oracle_equivalent(G, S, T, auts)
        if res is not None:
            g, a = res
            assert {G.mul(g, a[s]) for s in S} == set(T)


@pytest.mark.parametrize("spec,k,count", [("C3", 3, 1), ("C4", 3, 1), ("C7", 1, 1), ("Q8", 1, 1),
                                          ("C2xC4", 1, 1)])
def test_class_counts(spec, k, count):
    assert len(connection_set_classes(build_group(spec), k)) == count


@pytest.mark.parametrize("spec", ["C6", "Q8", "C2xC4", "C3^2", "D4"])
def test_classes_partition_subsets(spec):
    G = build_group(spec)
    auts = [[phi[x] for x in range(G.order)] for phi in oracles.automorphisms(G)]
    for k in (2, 3):
        classes = connection_set_classes(G, k)
        assert sum(c.size for c in classes) == comb(G.order, k)
        reps = [c.representative for c in classes]
        for a, b in itertools.combinations(reps, 2):
            assert not oracle_equivalent(G, a, b, auts)
        for c in classes:
            orbit = {tuple(sorted({G.mul(g, a[s]) for s in c.representative}))
                     for a in auts for g in range(G.order)}
            assert len(orbit) == c.size and min(orbit) == c.representative


def test_ci_classes():
    G = build_group("C8")
    classes = ci_set_classes(G, 1)
    assert sum(c.size for c in classes) == 7
    assert len(classes) == 3  # elements of order 2, 4 and 8


def test_normalized_connection_set():
    C4 = build_group("C4")
    assert normalized_connection_set(C4, (1, 2, 3)) == (1, (0, 1, 2))
    assert normalized_connection_set(C4, (0, 2)) == (0, (0, 2))
    Q = build_group("Q8")
    i, j, k = (Q.index(x) for x in "ijk")
    s, T = normalized_connection_set(Q, (i, j, k))
    assert s == i
    assert T == tuple(sorted({Q.identity, Q.mul(Q.inv(i), j), Q.mul(Q.inv(i), k)}))
    with pytest.raises(ValueError):
        normalized_connection_set(Q, ())


@pytest.mark.parametrize("spec", ["C6", "Q8", "C2xC4", "C3^2"])
def test_normalization_preserves_bci(spec):
    G = build_group(spec)
    rng = random.Random(spec)
    for _ in range(8):
        S = rng.sample(range(1, G.order), 3)
        _, T = normalized_connection_set(G, S)
        assert is_bci_graph(G, S).is_bci == is_bci_graph(G, T).is_bci


def test_is_bci_graph_examples():
    assert is_bci_graph(build_group("C3"), (0, 1, 2))
    v = is_bci_graph(build_group("C4"), (0, 1, 3))
    assert v.is_bci
    w = v.witness["equivalences"][0]
    assert w["T"] == ["0", "1", "3"]


def test_c2xc4_counterexample():
    G = build_group("C2xC4")
    report = is_m_bci_group(G, 3)
    assert not report and report.failures
    S = report.failures[0].representative
    v = is_bci_graph(G, S)
    assert not v
    T = parse_set(G, ",".join(v.witness["counterexample"]))
    phi = v.witness["isomorphism"]
    A, B = bcay(G, S), bcay(G, T)
    assert all(B.has_edge(phi[u], phi[w]) for u, w in A.edges)
    auts = [[p[x] for x in range(G.order)] for p in oracles.automorphisms(G)]
    assert not oracle_equivalent(G, S, T, auts)
    assert v.to_json()["is_bci"] is False


@pytest.mark.parametrize("spec", ["C4", "C6", "C2^2", "D3"])
def test_is_bci_graph_against_oracle(spec):
    G = build_group(spec)
    auts = [[p[x] for x in range(G.order)] for p in oracles.automorphisms(G)]
    for k in (2, 3):
        for S in itertools.combinations(range(G.order), k):
            assert is_bci_graph(G, S).is_bci == oracle_is_bci(G, S, auts), (spec, S)


@pytest.mark.parametrize("spec,expected", [("C9", True), ("Q8", True), ("C2xC4", False)])
def test_m_bci_examples(spec, expected):
    r = is_m_bci_group(build_group(spec), 3)
    assert bool(r) is expected
    assert r.to_json()["is_m_bci"] is expected


def test_m_bci_bounds():
    with pytest.raises(ValueError):
        is_m_bci_group(build_group("C3"), 4)
    with pytest.raises(ValueError):
        is_m_bci_group(build_group("C3"), 0)


@pytest.mark.parametrize("spec", NILPOTENT_UP_TO_16)
def test_three_bci_iff_class_C(spec):
    G = build_group(spec)
    rec = classify_class_C(G)
    assert rec.nilpotent
    assert bool(is_m_bci_group(G, min(3, G.order))) == rec.in_C


def test_ci_examples():
    C4 = build_group("C4")
    assert is_ci_digraph(C4, (1,))
    with pytest.raises(HypothesisError):
        is_ci_digraph(C4, (0, 1))
    assert is_m_dci_group(build_group("C8"), 2)
    assert is_m_dci_group(build_group("Q8"), 2)
    with pytest.raises(ValueError):
        is_m_dci_group(C4, 3)


def test_ci_failure_witness():
    # C2xC4 has two non-equivalent involution classes giving isomorphic Cayley digraphs
    G = build_group("C2xC4")
    assert not is_m_dci_group(G, 1)
    fails = [S for S in itertools.combinations(range(1, 8), 1) if not is_ci_digraph(G, S)]
    assert fails
    v = is_ci_digraph(G, fails[0])
    T = parse_set(G, ",".join(v.witness["counterexample"]))
    phi = v.witness["isomorphism"]
    arcs_T = set(cay(G, T).arcs)
    assert all((phi[u], phi[w]) in arcs_T for u, w in cay(G, fails[0]).arcs)


@pytest.mark.parametrize("spec", ["C4", "C6", "C2^2", "D3", "C8", "Q8", "C2xC4", "D4"])
def test_babai_criterion(spec):
    G = build_group(spec)
    for k in (1, 2):
        for S in itertools.combinations(range(1, G.order), k):
            assert is_ci_digraph(G, S).is_ci == regular_subgroups_conjugate(G, S), (spec, S)


def test_reverser_examples():
    C4 = build_group("C4")
    r = build_reverser(C4, (0, 1, 3))
    assert r.iota.images == (0, 3, 2, 1)
    assert all(r.tau[r.tau[v]] == v for v in range(8))
    assert named_graph("cube").n == 8 and bcay(C4, (0, 1, 3)).is_automorphism(r.tau)
    Q = build_group("Q8")
    i, j, k = (Q.index(x) for x in "ijk")
    r = build_reverser(Q, (Q.identity, i, j))
    assert r.conjugator in (k, Q.index("-k"))
    assert r.iota.images[i] == Q.index("-i") and r.iota.images[j] == Q.index("-j")
    assert all(r.checks.values())


@pytest.mark.parametrize("spec", ["C9", "C3^2", "C2^3", "C3xQ8", "C15"])
def test_reverser_contract(spec):
    X = build_group(spec)
    rng = random.Random(spec)
    for _ in range(4):
        S = (X.identity, *rng.sample(range(1, X.order), 2))
        r = build_reverser(X, S)
        assert {r.iota.images[s] for s in S} == {X.inv(s) for s in S}
        assert bcay(X, S).is_automorphism(r.tau)
        assert r.checks["regular"] and r.checks["subgroups_normal"]


def test_reverser_errors():
    with pytest.raises(HypothesisError):
        build_reverser(build_group("C2xC4"), (0, 1, 2))
    with pytest.raises(HypothesisError):
        build_reverser(build_group("C4"), (1, 2, 3))


def test_semiregular_class_examples():
    K = bcay(build_group("C3"), (0, 1, 2))
    assert bipartite_semiregular_class(K, build_group("C3")).all_conjugate
    C4 = build_group("C4")
    r = bipartite_semiregular_class(bcay(C4, (0, 1, 3)), C4)
    assert r.all_conjugate and all(w is not None for w in r.witnesses)
    C8 = build_group("C8")
    mk = bcay(C8, (0, 1, 3))
    assert are_isomorphic(mk, named_graph("moebius_kantor"))
    assert bipartite_semiregular_class(mk, C8).members
    with pytest.raises(HypothesisError):
        bipartite_semiregular_class(K, build_group("C4"))


def test_bci_by_conjugacy_examples():
    assert bci_by_conjugacy(build_group("C3"), (0, 1, 2))
    assert bci_by_conjugacy(build_group("C4"), (0, 1, 3))
    with pytest.raises(HypothesisError):
        bci_by_conjugacy(build_group("C4"), (0, 1))
    with pytest.raises(HypothesisError):
        bci_by_conjugacy(build_group("C2xC4"), (0, 1, 2))


def test_bci_by_conjugacy_sweep():
    rng = random.Random(30)
    for _ in range(30):
        G = build_group(rng.choice(CSTAR_UP_TO_9))
        if G.order < 3:
            continue
        S = rng.sample(range(G.order), 3)
        assert bci_by_conjugacy(G, S) == is_bci_graph(G, S).is_bci, (G.name, S)


def test_transfer_pinned():
    # frozen from the brute-force oracle: |Aut| = 20, stabilizers coincide, both verdicts true
    C5 = build_group("C5")
    rec = ci_bci_transfer(C5, (0, 1, 4))
    assert automorphism_group(bcay(C5, (0, 1, 4))).order == 20
    assert rec.hypothesis_holds and rec.ci_verdict and rec.bci_verdict and rec.consistent


@pytest.mark.parametrize("spec", ["C3", "C4", "C2^2", "C5", "C6", "C7", "C8", "C2^3", "Q8"])
def test_transfer_sweep(spec):
    G = build_group(spec)
    aut = group_aut(G)
    for rest in itertools.combinations(range(1, G.order), 2):
        rec = ci_bci_transfer(G, (G.identity, *rest), aut)
        assert rec.consistent, (spec, rest)


def test_transfer_errors():
    with pytest.raises(HypothesisError):
        ci_bci_transfer(build_group("C5"), (1, 2, 3))
