"""Acceptance criteria A1-A18, one line each in the terminal summary.

Every criterion runs its claim from the suite and then cross-checks the
claim's witness against an independent oracle where one is affordable.
"""

import itertools

import networkx as nx
import pytest

import oracles
from conftest import ACCEPTANCE
from bicayley.bci import parse_set
from bicayley.claims import SuiteContext, claim_by_id, run_claim
from bicayley.graphs import NAMED_EXPECTED, bcay, named_graph
from bicayley.groups import build_group

CTX = SuiteContext()
NX_NAMED = {"K33": nx.complete_bipartite_graph(3, 3), "cube": nx.hypercube_graph(3),
            "heawood": nx.heawood_graph(), "moebius_kantor": nx.moebius_kantor_graph(),
            "pappus": nx.pappus_graph(), "desargues": nx.desargues_graph()}


def record(cid, ok, note=""):
    status = "PASS" if ok else "FAIL"
    ACCEPTANCE[cid] = (status, note)
    print(f"{cid} {status} {note}")


def run(cid):
    rec = run_claim(claim_by_id(cid), CTX)
    return rec, rec.status == "pass"


def nx_iso(gamma, ref):
    return nx.is_isomorphic(oracles.to_nx(gamma), ref)


def test_a1_named_graphs():
    rec, ok = run("A1")
    girths = {name: oracles.nx_girth(named_graph(name)) for name in NAMED_EXPECTED}
    ok = ok and all(girths[n] == NAMED_EXPECTED[n][1] for n in girths)
    ok = ok and girths["cube"] == 4 and girths["heawood"] == 6 and girths["K33"] == 4
    ok = ok and all(nx_iso(named_graph(n), ref) for n, ref in NX_NAMED.items())
    record("A1", ok, f"girths {girths}")
    assert ok, rec.witness


def test_a2_aut_orders():
    rec, ok = run("A2")
    brute = {n: oracles.graph_aut_order(named_graph(n).n, named_graph(n).edges) for n in ("K33", "cube")}
    vf2 = {}
    for n, ref in NX_NAMED.items():
        vf2[n] = sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(ref, ref).isomorphisms_iter())
    ok = ok and brute == {"K33": 72, "cube": 48} and vf2 == rec.witness
    record("A2", ok, f"{rec.witness}")
    assert ok, (rec.witness, vf2)


def test_a3_s_regularity():
    rec, ok = run("A3")
    got = rec.witness["regular_at"]
    aut = claim_by_id("A2").check(CTX)[1]
    # s-regular means Aut acts regularly on s-arcs, so |Aut| = #s-arcs
    for name, s in got.items():
        g = named_graph(name)
        ok = ok and oracles.count_s_arcs(g.n, g.edges, s) == aut[name]
    record("A3", ok, f"{got}")
    assert ok, rec.witness


def test_a4_bicayley_identities():
    rec, _ = run("A4")
    w = rec.witness
    ok = w["K33"] and w["cube"] and w["heawood"] and w["moebius_kantor_over_Q8"] is not None
    ok = ok and nx_iso(bcay(build_group("C3"), (0, 1, 2)), NX_NAMED["K33"])
    ok = ok and nx_iso(bcay(build_group("C4"), (0, 1, 3)), NX_NAMED["cube"])
    ok = ok and nx_iso(bcay(build_group("C7"), (0, 1, 3)), NX_NAMED["heawood"])
    Q = build_group("Q8")
    ok = ok and nx_iso(bcay(Q, parse_set(Q, ",".join(w["moebius_kantor_over_Q8"]))), NX_NAMED["moebius_kantor"])
    c9_found = w["pappus_over_C9"] is not None
    c9_oracle = any(nx_iso(bcay(build_group("C9"), S), NX_NAMED["pappus"])
                    for S in itertools.combinations(range(9), 3))
    assert c9_found == c9_oracle
    note = "K33, cube, heawood, Q8/moebius_kantor ok; pappus over C9: none of 84 sets (oracle agrees), " \
           f"pappus over C3^2: {w['pappus_over_C3^2']}"
    record("A4", ok and c9_found, note)
    assert ok, w


@pytest.mark.xfail(strict=True, reason="no BCay(C9, S) with |S| = 3 is the Pappus graph; the graph is a "
                                       "bi-Cayley graph of C3^2 instead (see notes/decisions.md)")
def test_a4_pappus_over_c9():
    rec, _ = run("A4")
    assert rec.witness["pappus_over_C9"] is not None


def test_a5_reverser():
    rec, ok = run("A5")
    record("A5", ok, f"{rec.witness.get('samples', '')} samples, failures {rec.witness.get('failures')}")
    assert ok, rec.witness


@pytest.mark.slow
def test_a6_conjugacy_criterion():
    rec, ok = run("A6")
    record("A6", ok, f"{rec.elapsed_ms / 1e3:.1f} s")
    assert ok, rec.witness


@pytest.mark.parametrize("cid", ["A7", "A8", "A9", "A10", "A11", "A12", "A13", "A15"])
def test_tier2(cid):
    rec, ok = run(cid)
    record(cid, ok, f"{rec.elapsed_ms:.0f} ms")
    assert ok, rec.witness


def test_a14_class_members_are_3bci():
    rec, ok = run("A14")
    record("A14", ok, f"{rec.elapsed_ms:.0f} ms")
    assert ok, rec.witness


@pytest.mark.slow
@pytest.mark.parametrize("cid", ["A16", "A17", "A18"])
def test_tier3(cid):
    rec, ok = run(cid)
    record(cid, ok, f"{rec.status}, {rec.elapsed_ms / 1e3:.1f} s")
    assert ok, rec.witness
