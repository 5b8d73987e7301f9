"""Canonical labelling, isomorphism and automorphism groups of graphs.

The search follows the individualize-and-refine scheme: an ordered
partition is refined to an equitable one, a vertex of the first smallest
non-singleton cell is individualized, and so on down to discrete
partitions (leaves).  The canonical leaf is the one whose relabelled
adjacency encoding is lexicographically least.  Automorphisms found along
the way prune sibling branches.

Vertex colours (small non-negative integers) seed the initial partition;
digraphs are handled through a coloured three-layer encoding.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from itertools import count
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .caps import CANONICAL_VERTICES, CapExceeded, cap
from .graphs import DiGraph, Graph, connected_components, graph6_encode, induced_subgraph, is_connected
from .permgrp import PermGroup, compose, identity


# ---------------------------------------------------------------- partitions

class _Part:
    __slots__ = ("lab", "cell_of", "cell_end")

    def __init__(self, lab, cell_of, cell_end):
        self.lab = lab
        self.cell_of = cell_of
        self.cell_end = cell_end

    def copy(self) -> "_Part":
        return _Part(self.lab.copy(), self.cell_of.copy(), self.cell_end.copy())

    def is_discrete(self) -> bool:
        return bool((self.cell_end[self.cell_of] - self.cell_of == 1).all())

    def layout(self) -> np.ndarray:
        """Cell start of every position; equal layouts mean equal cell shapes."""
        return self.cell_of[self.lab]

    def target_cell(self) -> tuple[int, int] | None:
        """First smallest non-singleton cell as ``(start, end)``."""
        n = len(self.lab)
        best = None
        c = 0
        ce = self.cell_end
        while c < n:
            e = int(ce[c])
            if e - c > 1 and (best is None or e - c < best[1] - best[0]):
                best = (c, e)
                if e - c == 2:
                    break
            c = e
        return best


class _Searcher:
    """Shared state for refinement on one (coloured) graph."""

    def __init__(self, gamma: Graph, colors: Sequence[int] | None):
        self.gamma = gamma
        self.n = gamma.n
        self.indptr = np.array(gamma.indptr, dtype=np.int32)
        self.indices = np.array(gamma.indices, dtype=np.int32)
        self.colors = None if colors is None else [int(c) for c in colors]
        self.edge_set = set(gamma.edges)

    def root(self) -> _Part:
        n = self.n
        if self.colors is None:
            order = list(range(n))
            keys = [0] * n
        else:
            order = sorted(range(n), key=lambda v: (self.colors[v], v))
            keys = [self.colors[v] for v in order]
        lab = np.asarray(order, dtype=np.int32)
        cell_of = np.zeros(n, dtype=np.int32)
        cell_end = np.zeros(n + 1, dtype=np.int32)
        starts = []
        start = 0
        for p in range(1, n + 1):
            if p == n or keys[p] != keys[start]:
                cell_end[start] = p
                cell_of[lab[start:p]] = start
                starts.append(start)
                start = p
        part = _Part(lab, cell_of, cell_end)
        if n:
            kernels.refine(self.indptr, self.indices, part.lab, part.cell_of, part.cell_end, starts)
        return part

    def individualize(self, part: _Part, v: int) -> _Part:
        new = part.copy()
        c = int(new.cell_of[v])
        e = int(new.cell_end[c])
        p = int(np.flatnonzero(new.lab[c:e] == v)[0]) + c
        new.lab[c], new.lab[p] = new.lab[p], new.lab[c]
        new.cell_end[c] = c + 1
        new.cell_end[c + 1] = e
        new.cell_of[new.lab[c + 1:e]] = c + 1
        kernels.refine(self.indptr, self.indices, new.lab, new.cell_of, new.cell_end, [c])
        return new

    def leaf_key(self, part: _Part) -> bytes:
        return kernels.leaf_key(self.indptr, self.indices, part.lab)

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        if self.colors is not None and any(self.colors[perm[v]] != self.colors[v] for v in range(self.n)):
            return False
        es = self.edge_set
        for u, v in self.gamma.edges:
            a, b = perm[u], perm[v]
            if (a, b) not in es and (b, a) not in es:
                return False
        return True


def _perm_between(left: _Part, right: _Part) -> tuple[int, ...]:
    """Vertex map sending ``left.lab[i]`` to ``right.lab[i]``."""
    perm = np.empty(len(left.lab), dtype=np.int64)
    perm[left.lab] = right.lab
    return tuple(int(x) for x in perm)


# ---------------------------------------------------------------- canonical form

@dataclass(frozen=True)
class CanonicalCertificate:
    labeling: tuple[int, ...]  # canonical position -> original vertex
    certificate: bytes

    @property
    def relabeling(self) -> tuple[int, ...]:
        """Original vertex -> canonical position."""
        inv = [0] * len(self.labeling)
        for i, v in enumerate(self.labeling):
            inv[v] = i
        return tuple(inv)

    def __str__(self):
        return self.certificate.decode("ascii")


def _canonical_connected(S: _Searcher) -> tuple[list[int], bytes]:
    """Least leaf of the search tree: its labelling and key."""
    root = S.root()
    if S.n == 0:
        return [], b""
    gens: list[tuple[int, ...]] = []
    state: dict = {"first": None, "best": None}
    limit = sys.getrecursionlimit()
    if limit < 4 * S.n + 100:
        sys.setrecursionlimit(4 * S.n + 100)

    def visit(part: _Part, path: list[int]) -> int:
        """Explore below ``part``; returns the depth to unwind to (or len(path))."""
        tc = part.target_cell()
        if tc is None:
            key = S.leaf_key(part)
            if state["first"] is None:
                state["first"] = (key, part, list(path))
                state["best"] = (key, part, list(path))
                return len(path)
            for tag in ("first", "best"):
                k0, p0, path0 = state[tag]
                if key == k0:
                    gamma = _perm_between(p0, part)
                    if S.is_automorphism(gamma):
                        if gamma != identity(S.n):
                            gens.append(gamma)
                        common = 0
                        while common < len(path) and path[common] == path0[common]:
                            common += 1
                        return common
            if key < state["best"][0]:
                state["best"] = (key, part, list(path))
            return len(path)
        c, e = tc
        children = sorted(int(v) for v in part.lab[c:e])
        done: list[int] = []
        for w in children:
            if done:
                fix = [g for g in gens if all(g[x] == x for x in path)]
                if fix:
                    orb = _orbit_of(w, fix)
                    if any(d in orb for d in done):
                        continue
            done.append(w)
            back = visit(S.individualize(part, w), path + [w])
            if back < len(path):
                return back
        return len(path)

    visit(root, [])
    key, best, _ = state["best"]
    return [int(v) for v in best.lab], key


def _orbit_of(v: int, gens: Sequence[Sequence[int]]) -> set[int]:
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def canonical_form(gamma: Graph, colors: Sequence[int] | None = None) -> CanonicalCertificate:
    """Canonical labelling and certificate of a (vertex-coloured) graph.

    The certificate is the graph6 string of the relabelled graph, prefixed
    by the colour sequence in canonical order when colours are given.
    Components are labelled separately and concatenated in sorted order.
    """
    limit = cap(CANONICAL_VERTICES)
    if gamma.n > limit:
        raise CapExceeded("canonical labelling (vertices)", limit, gamma.n)
    comps = connected_components(gamma)
    if len(comps) <= 1:
        lab, _ = _canonical_connected(_Searcher(gamma, colors))
    else:
        parts = []
        for comp in comps:
            sub = induced_subgraph(gamma, comp)
            sub_colors = None if colors is None else [colors[v] for v in comp]
            sl, _ = _canonical_connected(_Searcher(sub, sub_colors))
            lab_c = [comp[i] for i in sl]
            cols = () if colors is None else tuple(colors[v] for v in lab_c)
            relabeled = sub.relabel(_inverse(sl))
            parts.append(((len(comp), cols, graph6_encode(relabeled)), lab_c))
        parts.sort(key=lambda t: t[0])
        lab = [v for _, lc in parts for v in lc]
    relabeled = gamma.relabel(_inverse(lab))
    cert = graph6_encode(relabeled)
    if colors is not None:
        cert = b"c" + ",".join(str(colors[v]) for v in lab).encode() + b";" + cert
    return CanonicalCertificate(tuple(lab), cert)


def _inverse(lab: Sequence[int]) -> list[int]:
    inv = [0] * len(lab)
    for i, v in enumerate(lab):
        inv[v] = i
    return inv


def certificate(gamma: Graph, colors: Sequence[int] | None = None) -> bytes:
    return canonical_form(gamma, colors).certificate


def isomorphism(g1: Graph, g2: Graph, colors1: Sequence[int] | None = None,
                colors2: Sequence[int] | None = None) -> tuple[int, ...] | None:
    """A bijection ``V(g1) -> V(g2)`` preserving edges (and colours), or None."""
    if g1.n != g2.n or g1.num_edges != g2.num_edges:
        return None
    if sorted(g1.degrees.tolist()) != sorted(g2.degrees.tolist()):
        return None
    c1 = canonical_form(g1, colors1)
    c2 = canonical_form(g2, colors2)
    if c1.certificate != c2.certificate:
        return None
    phi = [0] * g1.n
    for a, b in zip(c1.labeling, c2.labeling):
        phi[a] = b
    phi = tuple(phi)
    if not all(g2.has_edge(phi[u], phi[v]) for u, v in g1.edges):  # pragma: no cover
        raise AssertionError("certificates agree but the extracted map is not an isomorphism")
    return phi


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    return isomorphism(g1, g2) is not None


# ---------------------------------------------------------------- automorphisms

def automorphism_group(gamma: Graph, colors: Sequence[int] | None = None) -> PermGroup:
    """Aut of a (vertex-coloured) graph as a stabilizer chain.

    A base is read off the leftmost path of the search tree.  For each base
    point, every vertex of its cell outside the known orbit gets a lockstep
    search for an automorphism fixing the earlier base points and moving
    the base point there; successes join the strong generating set.
    """
    limit = cap(CANONICAL_VERTICES)
    if gamma.n > limit:
        raise CapExceeded("automorphism search (vertices)", limit, gamma.n)
    S = _Searcher(gamma, colors)
    n = S.n
    parts = [S.root()]
    base: list[int] = []
    cells: list[tuple[int, int]] = []
    while True:
        tc = parts[-1].target_cell()
        if tc is None:
            break
        c, e = tc
        b = int(parts[-1].lab[c:e].min())
        base.append(b)
        cells.append(tc)
        parts.append(S.individualize(parts[-1], b))

    strong: list[tuple[int, ...]] = []
    chain: list = [None] * len(base)
    for i in reversed(range(len(base))):
        b = base[i]
        c, e = cells[i]
        trans = _transversal(b, strong, n)
        for w in sorted(int(v) for v in parts[i].lab[c:e]):
            if w in trans:
                continue
            gamma_w = _extend(S, parts, cells, i, w)
            if gamma_w is not None:
                strong.append(gamma_w)
                trans = _transversal(b, strong, n)
        chain[i] = (b, trans)
    return PermGroup(n, strong, chain=chain, name="Aut")


def _transversal(b: int, gens: Sequence[tuple[int, ...]], n: int) -> dict[int, tuple[int, ...]]:
    trans = {b: identity(n)}
    queue = [b]
    for x in queue:
        for g in gens:
            y = g[x]
            if y not in trans:
                trans[y] = compose(trans[x], g)
                queue.append(y)
    return trans


def _extend(S: _Searcher, parts: list[_Part], cells: list[tuple[int, int]],
            level: int, w: int) -> tuple[int, ...] | None:
    """An automorphism fixing ``base[:level]`` and sending ``base[level]`` to ``w``."""
    right = S.individualize(parts[level], w)
    if not np.array_equal(right.layout(), parts[level + 1].layout()):
        return None
    return _lockstep(S, parts, cells, level + 1, right)


def _lockstep(S: _Searcher, parts, cells, j: int, right: _Part) -> tuple[int, ...] | None:
    if j == len(cells):
        gamma = _perm_between(parts[j], right)
        return gamma if S.is_automorphism(gamma) else None
    c, e = cells[j]
    for w in sorted(int(v) for v in right.lab[c:e]):
        nxt = S.individualize(right, w)
        if not np.array_equal(nxt.layout(), parts[j + 1].layout()):
            continue
        found = _lockstep(S, parts, cells, j + 1, nxt)
        if found is not None:
            return found
    return None


def automorphism_group_order(gamma: Graph, colors: Sequence[int] | None = None) -> int:
    return automorphism_group(gamma, colors).order


# ---------------------------------------------------------------- digraphs

def digraph_encoding(D: DiGraph) -> tuple[Graph, list[int]]:
    """Coloured graph whose colour-preserving automorphisms are those of ``D``.

    Vertex ``v`` becomes a centre ``v`` (colour 0), an out-port ``n+v``
    (colour 1) and an in-port ``2n+v`` (colour 2); the centre is joined to
    both ports and an arc ``(u, v)`` becomes the edge ``u_out -- v_in``.
    """
    n = D.n
    edges = [(v, n + v) for v in range(n)] + [(v, 2 * n + v) for v in range(n)]
    edges += [(n + u, 2 * n + v) for u, v in D.arcs]
    return Graph(3 * n, edges), [0] * n + [1] * n + [2] * n


def digraph_certificate(D: DiGraph) -> bytes:
    g, col = digraph_encoding(D)
    return canonical_form(g, col).certificate


def digraph_isomorphism(D1: DiGraph, D2: DiGraph) -> tuple[int, ...] | None:
    if D1.n != D2.n or len(D1.arcs) != len(D2.arcs):
        return None
    g1, c1 = digraph_encoding(D1)
    g2, c2 = digraph_encoding(D2)
    phi = isomorphism(g1, g2, c1, c2)
    if phi is None:
        return None
    res = phi[:D1.n]
    arcs2 = set(D2.arcs)
    if not all((res[u], res[v]) in arcs2 for u, v in D1.arcs):  # pragma: no cover
        raise AssertionError("encoded isomorphism does not preserve arcs")
    return res


def digraph_automorphism_group(D: DiGraph) -> PermGroup:
    """Aut(D) acting on the ``n`` original vertices."""
    g, col = digraph_encoding(D)
    A = automorphism_group(g, col)
    n = D.n
    # ports move with their centres, so a port base point stands for its centre
    chain = [(b % n, {x % n: t[:n] for x, t in trans.items()}) for b, trans in A.chain]
    return PermGroup(n, [p[:n] for p in A.gens], chain=chain, name="Aut")


# ---------------------------------------------------------------- arcs

def arcs(gamma: Graph) -> list[tuple[int, int]]:
    return [(u, v) for u in range(gamma.n) for v in gamma.adjacency[u]]


def is_arc_transitive(gamma: Graph, A: PermGroup | None = None) -> bool:
    """Whether ``A`` (default Aut(gamma)) has a single orbit on arcs."""
    if A is None:
        A = automorphism_group(gamma)
    elif not all(gamma.is_automorphism(g) for g in A.gens):
        raise ValueError("group is not a subgroup of Aut(gamma)")
    return _transitive_on(enumerate_s_arcs(gamma, 1), A)


def _transitive_on(items: Sequence[tuple[int, ...]], A: PermGroup) -> bool:
    items = list(items)
    if not items:
        return True
    index = {t: i for i, t in enumerate(items)}
    parent = list(range(len(items)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in A.gens:
        for i, t in enumerate(items):
            j = index[tuple(g[v] for v in t)]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return all(find(i) == 0 for i in range(len(items)))


def enumerate_s_arcs(gamma: Graph, s: int) -> Iterator[tuple[int, ...]]:
    """All s-arcs ``(v0, ..., vs)`` with ``v_{i-1} != v_{i+1}``, in DFS order."""
    if s < 0:
        raise ValueError("s must be non-negative")
    adj = gamma.adjacency

    def walk(path):
        if len(path) == s + 1:
            yield tuple(path)
            return
        prev = path[-2] if len(path) > 1 else -1
        for w in adj[path[-1]]:
            if w != prev:
                path.append(w)
                yield from walk(path)
                path.pop()

    for v in range(gamma.n):
        yield from walk([v])


def count_s_arcs(gamma: Graph, s: int) -> int:
    if s < 1:
        raise ValueError("s must be at least 1")
    return int(kernels.count_s_arcs(np.array(gamma.indptr, dtype=np.int32),
                                    np.array(gamma.indices, dtype=np.int32), s))


@dataclass(frozen=True)
class SRegularity:
    max_transitive_s: int
    regular_at: int | None
    aut_order: int

    def to_json(self) -> dict:
        return {"max_transitive_s": self.max_transitive_s, "regular_at": self.regular_at,
                "aut_order": self.aut_order}


def s_regularity(gamma: Graph, A: PermGroup | None = None) -> SRegularity:
    """Largest ``s`` with Aut transitive on s-arcs, and whether it acts regularly there."""
    if not gamma.is_regular(3) or not is_connected(gamma):
        raise ValueError("s-regularity is only defined here for connected cubic graphs")
    if A is None:
        A = automorphism_group(gamma)
    order = A.order
    best = 0
    for s in count(1):
        if count_s_arcs(gamma, s) > order:
            break
        if not _transitive_on(list(enumerate_s_arcs(gamma, s)), A):
            break
        best = s
    regular = best if best and count_s_arcs(gamma, best) == order else None
    return SRegularity(best, regular, order)


def aut_order_formula(n: int, s: int) -> int:
    """|Aut| of an s-regular cubic graph on ``n`` vertices."""
    return n * 3 * 2 ** (s - 1)


__all__ = [
    "CanonicalCertificate", "SRegularity", "canonical_form", "certificate", "isomorphism",
    "are_isomorphic", "automorphism_group", "automorphism_group_order", "digraph_encoding",
    "digraph_certificate", "digraph_isomorphism", "digraph_automorphism_group", "arcs",
    "is_arc_transitive", "enumerate_s_arcs", "count_s_arcs", "s_regularity", "aut_order_formula",
]
