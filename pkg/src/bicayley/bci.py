"""Bi-Cayley isomorphism (BCI) and Cayley isomorphism (CI) decisions.

A connection set ``S`` of ``G`` is BCI when every ``T`` with
``BCay(G,T) ~ BCay(G,S)`` has the form ``T = g S^a`` for some ``g`` in ``G``
and ``a`` in Aut(G).  The k-subsets of ``G`` fall into orbits under the
action ``T -> g T^a``; ``S`` is BCI exactly when no other orbit yields an
isomorphic graph, which is decided by comparing canonical certificates of
one representative per orbit.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .graphs import Graph, bcay, cay, hat, right_translation_group
from .groups import FinGroup, GroupMap, all_subgroups, automorphism_group as group_aut, classify_class_C
from .isomorph import (automorphism_group, canonical_form, digraph_automorphism_group,
                       digraph_certificate, digraph_isomorphism, isomorphism)
from .permgrp import (PermGroup, Regular, SemiregularWithOrbits, conjugating_element,
                      find_isomorphic_subgroups, is_normal, is_regular, normalizer_order)


class HypothesisError(ValueError):
    """The inputs do not satisfy the hypotheses of the requested check."""


# ---------------------------------------------------------------- sets and labels

def parse_set(G: FinGroup, text: str) -> tuple[int, ...]:
    """Element indices from a comma-separated list of labels.

    Commas inside parentheses belong to the element, so both ``"0,1,2"``
    and ``"(0:1),(2:i)"`` work; bare ``"0:1"`` is accepted for ``(0:1)``.
    """
    items, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in ",;" and depth == 0:
            items.append(cur)
            cur = ""
        else:
            cur += ch
    items.append(cur)
    items = [t.strip() for t in items if t.strip()]
    return tuple(sorted({G.index(t) for t in items}))


def set_labels(G: FinGroup, S: Iterable[int]) -> list[str]:
    return [G.elements[x] for x in sorted(S)]


def _aut_elements(G: FinGroup, aut: PermGroup | None = None) -> np.ndarray:
    A = aut if aut is not None else group_aut(G)
    return A.elements


def normalized_connection_set(G: FinGroup, S: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """``(s, s^-1 S)`` for the least-index ``s`` in ``S``."""
    S = sorted(set(S))
    if not S:
        raise ValueError("connection set must be nonempty")
    s = S[0]
    si = G.inv(s)
    return s, tuple(sorted(G.mul(si, x) for x in S))


# ---------------------------------------------------------------- equivalence

def bicayley_equivalent(G: FinGroup, S: Iterable[int], T: Iterable[int],
                        aut: PermGroup | None = None) -> tuple[int, tuple[int, ...]] | None:
    """``(g, a)`` with ``T = g S^a``, or None after trying all of Aut(G) x G.

    Automorphisms are tried in sorted order; for each, ``g`` ranges over the
    elements ``t (s0^a)^-1`` with ``t`` in ``T``.
    """
    S = sorted(set(S))
    T = sorted(set(T))
    if len(S) != len(T):
        return None
    Tset = set(T)
    rows = G.rows
    for a in _aut_elements(G, aut).tolist():
        Sa = [a[s] for s in S]
        s0inv = G.inv(Sa[0])
        for t in T:
            g = rows[t][s0inv]
            if all(rows[g][x] in Tset for x in Sa):
                return g, tuple(a)
    return None


def ci_equivalent(G: FinGroup, S: Iterable[int], T: Iterable[int],
                  aut: PermGroup | None = None) -> tuple[int, ...] | None:
    """An automorphism ``a`` with ``S^a = T``, or None."""
    S = sorted(set(S))
    Tset = set(T)
    if len(S) != len(Tset):
        return None
    for a in _aut_elements(G, aut).tolist():
        if {a[s] for s in S} == Tset:
            return tuple(a)
    return None


# ---------------------------------------------------------------- orbit classes

@dataclass(frozen=True)
class SetClass:
    representative: tuple[int, ...]  # least k-subset of the orbit
    size: int


def _subset_orbits(n: int, k: int, maps: Sequence[Sequence[int]],
                   universe: Sequence[int] | None = None) -> tuple[list[tuple[int, ...]], list[int]]:
    pts = list(range(n)) if universe is None else sorted(universe)
    subsets = list(itertools.combinations(pts, k))
    index = {s: i for i, s in enumerate(subsets)}
    parent = list(range(len(subsets)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in maps:
        for i, s in enumerate(subsets):
            j = index[tuple(sorted(f[x] for x in s))]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    roots = [find(i) for i in range(len(subsets))]
    return subsets, roots


def _classes_from_roots(subsets, roots) -> list[SetClass]:
    sizes: dict[int, int] = {}
    for r in roots:
        sizes[r] = sizes.get(r, 0) + 1
    return [SetClass(subsets[r], sizes[r]) for r in sorted(sizes)]


def _bci_maps(G: FinGroup, aut: PermGroup) -> list[list[int]]:
    """Generators of the action ``x -> g x^a``: left translations and automorphisms."""
    from .permgrp import generating_set
    rows = G.rows
    maps = [[rows[g][x] for x in range(G.order)] for g in generating_set(G)]
    maps += [list(a) for a in aut.gens]
    return maps


def connection_set_classes(G: FinGroup, k: int, aut: PermGroup | None = None) -> list[SetClass]:
    """One least representative per orbit of ``T -> g T^a`` on k-subsets."""
    if not 1 <= k <= G.order:
        raise ValueError(f"k must lie in 1..{G.order}")
    aut = aut if aut is not None else group_aut(G)
    subsets, roots = _subset_orbits(G.order, k, _bci_maps(G, aut))
    classes = _classes_from_roots(subsets, roots)
    assert sum(c.size for c in classes) == math.comb(G.order, k)
    return classes


def ci_set_classes(G: FinGroup, k: int, aut: PermGroup | None = None) -> list[SetClass]:
    """Orbits of Aut(G) on k-subsets of the non-identity elements."""
    aut = aut if aut is not None else group_aut(G)
    universe = [x for x in range(G.order) if x != G.identity]
    if not 0 <= k <= len(universe):
        raise ValueError(f"k must lie in 0..{len(universe)}")
    subsets, roots = _subset_orbits(G.order, k, [list(a) for a in aut.gens], universe)
    classes = _classes_from_roots(subsets, roots)
    assert sum(c.size for c in classes) == math.comb(len(universe), k)
    return classes


# ---------------------------------------------------------------- BCI verdicts

@dataclass
class BCIVerdict:
    group: FinGroup
    S: tuple[int, ...]
    is_bci: bool
    witness: dict
    elapsed_ms: float = 0.0
    certificates: dict = field(default_factory=dict)

    def __bool__(self):
        return self.is_bci

    def to_json(self) -> dict:
        return {
            "group_spec": self.group.name,
            "set": set_labels(self.group, self.S),
            "is_bci": self.is_bci,
            "witness": self.witness,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "certificates": self.certificates,
        }


def _cert(G: FinGroup, S: Sequence[int]) -> bytes:
    return canonical_form(bcay(G, S)).certificate


def is_bci_graph(G: FinGroup, S: Iterable[int], aut: PermGroup | None = None,
                 classes: list[SetClass] | None = None) -> BCIVerdict:
    """Decide whether BCay(G, S) is a BCI-graph.

    Scans the orbit representatives of the same size; one with an equal
    certificate but outside the orbit of ``S`` is a counterexample.
    """
    t0 = time.perf_counter()
    S = tuple(sorted(set(S)))
    if not S:
        raise ValueError("connection set must be nonempty")
    aut = aut if aut is not None else group_aut(G)
    if classes is None:
        classes = connection_set_classes(G, len(S), aut)
    cert_S = _cert(G, S)
    own = None
    for c in classes:
        if bicayley_equivalent(G, c.representative, S, aut) is not None:
            own = c
            break
    assert own is not None
    certs = {",".join(set_labels(G, S)): cert_S.decode()}
    for c in classes:
        if c is own:
            continue
        T = c.representative
        cert_T = _cert(G, T)
        if cert_T != cert_S:
            continue
        phi = isomorphism(bcay(G, S), bcay(G, T))
        assert phi is not None
        assert bicayley_equivalent(G, S, T, aut) is None
        certs[",".join(set_labels(G, T))] = cert_T.decode()
        witness = {
            "counterexample": set_labels(G, T),
            "isomorphism": list(phi),
            "pairs_checked": aut.order * len(T),
        }
        return BCIVerdict(G, S, False, witness, (time.perf_counter() - t0) * 1e3, certs)
    g, a = bicayley_equivalent(G, S, S, aut)
    witness = {"equivalences": [{"T": set_labels(G, S), "g": G.elements[g],
                                 "alpha": [G.elements[x] for x in a]}]}
    return BCIVerdict(G, S, True, witness, (time.perf_counter() - t0) * 1e3, certs)


@dataclass
class ClassReport:
    k: int
    representative: tuple[int, ...]
    size: int
    certificate: str
    is_bci: bool
    isomorphic_to: tuple[int, ...] | None = None  # another class with the same graph


@dataclass
class MBCIReport:
    group: FinGroup
    m: int
    is_m_bci: bool
    classes: list[ClassReport]

    def __bool__(self):
        return self.is_m_bci

    @property
    def failures(self) -> list[ClassReport]:
        return [c for c in self.classes if not c.is_bci]

    def to_json(self) -> dict:
        G = self.group
        return {
            "group_spec": G.name,
            "m": self.m,
            "is_m_bci": self.is_m_bci,
            "classes": [{
                "k": c.k, "set": set_labels(G, c.representative), "orbit_size": c.size,
                "is_bci": c.is_bci,
                "isomorphic_to": set_labels(G, c.isomorphic_to) if c.isomorphic_to else None,
            } for c in self.classes],
        }


def is_m_bci_group(G: FinGroup, m: int, aut: PermGroup | None = None,
                   stop_early: bool = False) -> MBCIReport:
    """Whether every bi-Cayley graph of ``G`` of valency at most ``m`` is BCI."""
    if not 1 <= m <= G.order:
        raise ValueError(f"m must lie in 1..{G.order}")
    aut = aut if aut is not None else group_aut(G)
    reports: list[ClassReport] = []
    ok = True
    for k in range(1, m + 1):
        classes = connection_set_classes(G, k, aut)
        by_cert: dict[bytes, list[SetClass]] = {}
        certs = []
        for c in classes:
            cert = _cert(G, c.representative)
            certs.append(cert)
            by_cert.setdefault(cert, []).append(c)
        for c, cert in zip(classes, certs):
            same = by_cert[cert]
            other = next((d.representative for d in same if d is not c), None)
            reports.append(ClassReport(k, c.representative, c.size, cert.decode(),
                                       other is None, other))
            if other is not None:
                ok = False
        if not ok and stop_early:
            break
    return MBCIReport(G, m, ok, reports)


# ---------------------------------------------------------------- CI

@dataclass
class CIVerdict:
    group: FinGroup
    S: tuple[int, ...]
    is_ci: bool
    witness: dict

    def __bool__(self):
        return self.is_ci

    def to_json(self) -> dict:
        return {"group_spec": self.group.name, "set": set_labels(self.group, self.S),
                "is_ci": self.is_ci, "witness": self.witness}


def is_ci_digraph(G: FinGroup, S: Iterable[int], aut: PermGroup | None = None,
                  classes: list[SetClass] | None = None) -> CIVerdict:
    """Decide whether Cay(G, S) is a CI-digraph (``T = S^a`` for every isomorphic ``T``)."""
    S = tuple(sorted(set(S)))
    if G.identity in S:
        raise HypothesisError("the identity may not lie in a Cayley connection set")
    aut = aut if aut is not None else group_aut(G)
    if classes is None:
        classes = ci_set_classes(G, len(S), aut)
    cert_S = digraph_certificate(cay(G, S))
    for c in classes:
        T = c.representative
        if ci_equivalent(G, S, T, aut) is not None:
            continue
        if digraph_certificate(cay(G, T)) == cert_S:
            phi = digraph_isomorphism(cay(G, S), cay(G, T))
            assert phi is not None
            return CIVerdict(G, S, False, {"counterexample": set_labels(G, T),
                                           "isomorphism": list(phi)})
    return CIVerdict(G, S, True, {"automorphisms_checked": aut.order})


def is_m_dci_group(G: FinGroup, m: int, aut: PermGroup | None = None) -> bool:
    """Whether every Cayley digraph of ``G`` of out-valency ``1..m`` is CI (``m <= 2``)."""
    if not 1 <= m <= 2:
        raise ValueError("m-DCI checks are limited to m <= 2")
    aut = aut if aut is not None else group_aut(G)
    for k in range(1, m + 1):
        if k > G.order - 1:
            break
        classes = ci_set_classes(G, k, aut)
        by_cert: dict[bytes, int] = {}
        for c in classes:
            cert = digraph_certificate(cay(G, c.representative))
            by_cert[cert] = by_cert.get(cert, 0) + 1
        if any(v > 1 for v in by_cert.values()):
            return False
    return True


def regular_subgroups_conjugate(G: FinGroup, S: Iterable[int]) -> bool:
    """Babai-type criterion: regular subgroups of Aut(Cay(G,S)) isomorphic to ``G`` are conjugate."""
    D = cay(G, S)
    A = digraph_automorphism_group(D)
    members = find_isomorphic_subgroups(A, G, Regular(G.order))
    return all(conjugating_element(A, members[0], H) is not None for H in members[1:])


# ---------------------------------------------------------------- reverser

@dataclass
class ReverserBundle:
    group: FinGroup
    S: tuple[int, ...]
    iota: GroupMap
    conjugator: int
    tau: tuple[int, ...]
    checks: dict


def _split_nilpotent(X: FinGroup) -> tuple[list[int], list[int], dict[int, tuple[int, int]]]:
    orders = X.element_orders
    U = [x for x in range(X.order) if orders[x] % 2 == 1]
    V = [x for x in range(X.order) if orders[x] & (orders[x] - 1) == 0]
    parts = {}
    for u in U:
        for v in V:
            parts[X.mul(u, v)] = (u, v)
    if len(parts) != X.order:
        raise HypothesisError("group is not the direct product of its odd and 2-parts")
    return U, V, parts


def build_reverser(X: FinGroup, S: Iterable[int]) -> ReverserBundle:
    """The side-swapping automorphism ``tau`` of BCay(X, S).

    ``iota`` inverts the odd part and an abelian 2-part; on a quaternion
    2-part it is conjugation by the first ``c`` (by index) for which the
    resulting ``iota`` maps ``S`` onto ``S^-1``.  Then ``tau`` sends
    ``(x,0) -> (x^iota,1)`` and ``(x,1) -> (x^iota,0)``.
    """
    S = tuple(sorted(set(S)))
    rec = classify_class_C(X)
    if not rec.in_Cstar:
        raise HypothesisError(f"{X.name} has no overgroup in the class")
    if X.identity not in S:
        raise HypothesisError("the connection set must contain the identity")
    U, V, parts = _split_nilpotent(X)
    Vset = sorted(V)
    if rec.two_part == "Q8":
        candidates = Vset
    else:
        candidates = [X.identity]
    Sinv = {X.inv(s) for s in S}
    chosen = None
    for c in candidates:
        ci = X.inv(c)
        images = [0] * X.order
        for x, (u, v) in parts.items():
            vv = X.inv(v) if rec.two_part != "Q8" else X.mul(X.mul(ci, v), c)
            images[x] = X.mul(X.inv(u), vv)
        if {images[s] for s in S} == Sinv:
            chosen = (c, tuple(images))
            break
    if chosen is None:
        raise AssertionError("no conjugator inverts the connection set; this contradicts the reverser construction")
    c, images = chosen
    iota = GroupMap(X, X, images)
    n = X.order
    tau = tuple([n + images[x] for x in range(n)] + [images[x] for x in range(n)])
    gamma = bcay(X, S)
    hatX = right_translation_group(X)
    R = PermGroup(2 * n, list(hatX.gens) + [tau])
    checks = {
        "iota_automorphism": iota.is_isomorphism,
        "S_iota_is_S_inverse": {images[s] for s in S} == Sinv,
        "tau_involution": all(tau[tau[v]] == v for v in range(2 * n)),
        "tau_swaps_sides": all(tau[v] >= n for v in range(n)),
        "tau_in_aut": gamma.is_automorphism(tau),
        "regular": is_regular(R),
    }
    if n <= 64:
        subs = all_subgroups(X)
        ok = True
        for H in subs:
            Hh = PermGroup(2 * n, [hat(X, h) for h in H])
            if not is_normal(R, Hh):
                ok = False
                break
        checks["subgroups_normal"] = ok
    if not all(checks.values()):
        raise AssertionError(f"reverser checks failed: {checks}")
    return ReverserBundle(X, S, iota, c, tau, checks)


# ---------------------------------------------------------------- semiregular classes

@dataclass
class SemiregularClass:
    members: list[PermGroup]
    all_conjugate: bool
    witnesses: list[tuple[int, ...] | None]
    bipartition_stabilizer_order: int
    normalizer_order: int


def _sides(n: int) -> list[list[int]]:
    return [list(range(n)), list(range(n, 2 * n))]


def bipartite_semiregular_class(gamma: Graph, G: FinGroup, A: PermGroup | None = None,
                                max_witnesses: int = 16) -> SemiregularClass:
    """Members of 𝒢(A) isomorphic to ``G`` and whether they form one conjugacy class.

    Any conjugator between two members must preserve the bipartition, so
    the members are all conjugate exactly when their number equals
    ``|B| / |N_B(H)|`` for the bipartition stabilizer ``B`` and any member ``H``.
    """
    n = G.order
    if gamma.n != 2 * n:
        raise HypothesisError("graph order must be twice the group order")
    if A is None:
        A = automorphism_group(gamma)
    members = find_isomorphic_subgroups(A, G, SemiregularWithOrbits(_sides(n), 2 * n))
    if not members:
        return SemiregularClass([], True, [], 0, 0)
    Ael = A.elements
    first_side = Ael[:, :n] >= n
    keeps = first_side.all(axis=1) | (~first_side).all(axis=1)
    B_el = Ael[keeps]
    B = PermGroup(2 * n, elements=B_el)
    norm = normalizer_order(B, members[0])
    conj = len(members) == len(B_el) // norm
    witnesses: list = []
    if len(members) <= max_witnesses:
        witnesses = [conjugating_element(B, members[0], H) for H in members]
        assert conj == all(w is not None for w in witnesses)
    return SemiregularClass(members, conj, witnesses, len(B_el), norm)


def bci_by_conjugacy(G: FinGroup, S: Iterable[int]) -> bool:
    """BCI status from the conjugacy of 𝒢(Aut BCay(G,S)) members isomorphic to ``G``."""
    S = tuple(sorted(set(S)))
    if len(S) != 3:
        raise HypothesisError("the conjugacy criterion is stated for valency 3")
    if not classify_class_C(G).in_Cstar:
        raise HypothesisError(f"{G.name} has no overgroup in the class")
    return bipartite_semiregular_class(bcay(G, S), G).all_conjugate


@dataclass
class TransferRecord:
    hypothesis_holds: bool
    ci_verdict: bool
    bci_verdict: bool

    @property
    def consistent(self) -> bool:
        return not self.hypothesis_holds or self.ci_verdict == self.bci_verdict


def ci_bci_transfer(G: FinGroup, S: Iterable[int], aut: PermGroup | None = None) -> TransferRecord:
    """Compare CI of Cay(G, S minus 1) with BCI of BCay(G, S).

    The hypothesis is that the stabilizers of ``(1,0)`` and ``(1,1)`` in
    Aut(BCay(G,S)) coincide.
    """
    S = tuple(sorted(set(S)))
    if G.identity not in S or len(S) != 3:
        raise HypothesisError("needs |S| = 3 with the identity in S")
    if not classify_class_C(G).in_Cstar:
        raise HypothesisError(f"{G.name} has no overgroup in the class")
    n = G.order
    A = automorphism_group(bcay(G, S))
    el = A.elements
    zero, one = G.identity, n + G.identity
    holds = bool(((el[:, zero] == zero) == (el[:, one] == one)).all())
    aut = aut if aut is not None else group_aut(G)
    ci = is_ci_digraph(G, [x for x in S if x != G.identity], aut).is_ci
    bci = is_bci_graph(G, S, aut).is_bci
    rec = TransferRecord(holds, ci, bci)
    return rec


__all__ = [
    "HypothesisError", "parse_set", "set_labels", "normalized_connection_set",
    "bicayley_equivalent", "ci_equivalent", "SetClass", "connection_set_classes",
    "ci_set_classes", "BCIVerdict", "is_bci_graph", "ClassReport", "MBCIReport",
    "is_m_bci_group", "CIVerdict", "is_ci_digraph", "is_m_dci_group",
    "regular_subgroups_conjugate", "ReverserBundle", "build_reverser", "SemiregularClass",
    "bipartite_semiregular_class", "bci_by_conjugacy", "TransferRecord", "ci_bci_transfer",
]
