"""Slow, obviously-correct reference computations used to freeze expected values.

Nothing here imports the search code under test: groups are touched only
through their multiplication tables, graphs through their edge lists.
"""

from __future__ import annotations

import itertools
from collections import deque

import networkx as nx


def table_of(G):
    return [list(map(int, row)) for row in G.table]


def closure(table, gens, e):
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = table[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def subgroups(G) -> set[frozenset]:
    """All subgroups: start from {1} and adjoin one element at a time until stable."""
    t, e, n = table_of(G), G.identity, G.order
    out = {frozenset({e})}
    frontier = list(out)
    while frontier:
        nxt = []
        for H in frontier:
            for g in range(n):
                if g not in H:
                    K = closure(t, list(H) + [g], e)
                    if K not in out:
                        out.add(K)
                        nxt.append(K)
        frontier = nxt
    return out


def small_generating_set(G) -> list[int]:
    t, e, n = table_of(G), G.identity, G.order
    gens: list[int] = []
    have = frozenset({e})
    while len(have) < n:
        x = next(x for x in range(n) if x not in have)
        gens.append(x)
        have = closure(t, gens, e)
    return gens


def _extend(t, e, gens, images):
    """Homomorphism defined by ``gens -> images`` on <gens>, or None."""
    phi = {e: e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g, h in zip(gens, images):
            y, z = t[x][g], t[phi[x]][h]
            if y in phi:
                if phi[y] != z:
                    return None
            else:
                phi[y] = z
                queue.append(y)
    return phi


def automorphisms(G) -> list[dict]:
    """Every automorphism, by trying all generator images."""
    t, e, n = table_of(G), G.identity, G.order
    gens = small_generating_set(G)
    out = []
    for images in itertools.product(range(n), repeat=len(gens)):
        phi = _extend(t, e, gens, images)
        if phi is not None and len(set(phi.values())) == n:
            out.append(phi)
    return out


def isomorphisms_between(G, A: frozenset, B: frozenset) -> list[dict]:
    t, e = table_of(G), G.identity
    gens, have = [], frozenset({e})
    for x in sorted(A):
        if x not in have:
            gens.append(x)
            have = closure(t, gens, e)
    out = []
    for images in itertools.product(sorted(B), repeat=len(gens)):
        phi = _extend(t, e, gens, images)
        if phi is not None and len(phi) == len(A) and set(phi.values()) == set(B):
            out.append(phi)
    return out


def is_homogeneous(G) -> bool:
    auts = automorphisms(G)
    subs = sorted(subgroups(G), key=sorted)
    for A in subs:
        for B in subs:
            if len(A) != len(B):
                continue
            for phi in isomorphisms_between(G, A, B):
                if not any(all(a[x] == phi[x] for x in A) for a in auts):
                    return False
    return True


def graph_aut_order(n: int, edges) -> int:
    """|Aut| by checking every vertex permutation (n <= 8)."""
    E = {frozenset(e) for e in edges}
    return sum(all(frozenset((p[u], p[v])) in E for u, v in E)
               for p in itertools.permutations(range(n)))


def to_nx(gamma) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(gamma.n))
    g.add_edges_from(gamma.edges)
    return g


def nx_graph6(gamma) -> bytes:
    return nx.to_graph6_bytes(to_nx(gamma), header=False).strip()


def nx_girth(gamma) -> float:
    g = to_nx(gamma)
    best = float("inf")
    for c in nx.minimum_cycle_basis(g):
        best = min(best, len(c))
    return best


def count_s_arcs(n: int, edges, s: int) -> int:
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    paths = [[v] for v in range(n)]
    for _ in range(s):
        paths = [p + [w] for p in paths for w in adj[p[-1]] if len(p) < 2 or w != p[-2]]
    return len(paths)
