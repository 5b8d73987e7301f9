"""Graphs, digraphs and the bi-Cayley / Cayley constructions.

Vertices are ``0..n-1``.  Adjacency is stored in CSR form (``indptr``,
``indices``) with every neighbour list sorted.  In a bi-Cayley graph of a
group of order ``n`` the vertex ``(x, 0)`` is ``x`` and ``(x, 1)`` is
``n + x``.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .groups import FinGroup
from .permgrp import PermGroup


class GraphError(ValueError):
    pass


def _csr(n: int, pairs: Iterable[tuple[int, int]]) -> tuple[np.ndarray, np.ndarray]:
    lists: list[list[int]] = [[] for _ in range(n)]
    for u, v in pairs:
        lists[u].append(v)
    indptr = np.zeros(n + 1, dtype=np.int32)
    for v in range(n):
        lists[v].sort()
        indptr[v + 1] = indptr[v] + len(lists[v])
    indices = np.fromiter((w for row in lists for w in row), dtype=np.int32, count=int(indptr[-1]))
    return indptr, indices


class Graph:
    """A simple undirected graph."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        self.n = n
        es = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in es:
                raise GraphError(f"repeated edge {e}")
            es.add(e)
        self._edges = tuple(sorted(es))
        self.indptr, self.indices = _csr(n, [p for u, v in self._edges for p in ((u, v), (v, u))])
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)

    def __repr__(self):
        return f"<Graph n={self.n} m={len(self._edges)}>"

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self._edges == other._edges

    def __hash__(self):
        return hash((self.n, self._edges))

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    @cached_property
    def adjacency(self) -> list[list[int]]:
        ptr = self.indptr.tolist()
        idx = self.indices.tolist()
        return [idx[ptr[v]:ptr[v + 1]] for v in range(self.n)]

    @cached_property
    def bitset(self) -> np.ndarray:
        """Adjacency matrix packed 8 vertices per byte, row by row."""
        m = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self._edges:
            m[u, v] = m[v, u] = True
        return np.packbits(m, axis=1)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.bitset[u, v >> 3] & (0x80 >> (v & 7)))

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def is_regular(self, k: int | None = None) -> bool:
        d = self.degrees
        if self.n == 0:
            return True
        return bool((d == (d[0] if k is None else k)).all())

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """The graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self._edges))

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        return len(perm) == self.n and all(self.has_edge(perm[u], perm[v]) for u, v in self._edges)

    def to_json(self) -> dict:
        return {"n": self.n, "adjacency": self.adjacency}

    @classmethod
    def from_json(cls, data: dict | str) -> "Graph":
        if isinstance(data, str):
            data = json.loads(data)
        adj = data["adjacency"]
        return cls(data["n"], ((u, v) for u, row in enumerate(adj) for v in row if u < v))


class DiGraph:
    """A digraph without repeated arcs."""

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        self.n = n
        arcs = [(int(u), int(v)) for u, v in arcs]
        if len(set(arcs)) != len(arcs):
            raise GraphError("repeated arc")
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"arc ({u}, {v}) out of range")
        self._arcs = tuple(sorted(arcs))
        self.indptr, self.indices = _csr(n, self._arcs)

    def __repr__(self):
        return f"<DiGraph n={self.n} arcs={len(self._arcs)}>"

    def __eq__(self, other):
        return isinstance(other, DiGraph) and self.n == other.n and self._arcs == other._arcs

    def __hash__(self):
        return hash((self.n, self._arcs))

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return self._arcs

    def out_neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def out_degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def underlying(self) -> Graph:
        """Undirected graph on the same vertices, loops dropped."""
        return Graph(self.n, {(min(u, v), max(u, v)) for u, v in self._arcs if u != v})

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        arcs = set(self._arcs)
        return all((perm[u], perm[v]) in arcs for u, v in self._arcs)


# ---------------------------------------------------------------- constructions

@dataclass(frozen=True)
class BiCayleySpec:
    group: FinGroup
    S: tuple[int, ...]

    def __post_init__(self):
        s = tuple(sorted(set(int(x) for x in self.S)))
        if not s:
            raise GraphError("connection set must be nonempty")
        if s[0] < 0 or s[-1] >= self.group.order:
            raise GraphError("connection set element outside the group")
        object.__setattr__(self, "S", s)

    def vertex(self, x: int, side: int) -> int:
        return x + side * self.group.order

    @property
    def zero(self) -> int:
        return self.vertex(self.group.identity, 0)

    @property
    def one(self) -> int:
        return self.vertex(self.group.identity, 1)

    def graph(self) -> Graph:
        return bcay(self.group, self.S)

    def labels(self) -> list[str]:
        return [self.group.elements[x] for x in self.S]


def bcay(G: FinGroup, S: Iterable[int]) -> Graph:
    """BCay(G, S): edges ``{(x,0), (sx,1)}`` for ``x`` in ``G``, ``s`` in ``S``."""
    S = sorted(set(S))
    if not S:
        raise GraphError("connection set must be nonempty")
    n = G.order
    rows = G.rows
    return Graph(2 * n, ((x, n + rows[s][x]) for x in range(n) for s in S))


def cay(G: FinGroup, S: Iterable[int]) -> DiGraph:
    """Cay(G, S): arcs ``(x, sx)``; the identity is not allowed in ``S``."""
    S = sorted(set(S))
    if G.identity in S:
        raise GraphError("Cayley digraphs exclude the identity from the connection set")
    rows = G.rows
    return DiGraph(G.order, ((x, rows[s][x]) for x in range(G.order) for s in S))


def hat(G: FinGroup, g: int) -> tuple[int, ...]:
    """Right translation ``(x, i) -> (xg, i)`` on the bi-Cayley vertex set."""
    n = G.order
    col = [G.rows[x][g] for x in range(n)]
    return tuple(col + [n + y for y in col])


def right_translation_group(G: FinGroup) -> PermGroup:
    n = G.order
    rows = np.asarray(G.table).T  # rows[g][x] = x*g
    full = np.concatenate([rows, rows + n], axis=1)
    return PermGroup(2 * n, elements=full, name=f"hat({G.name})")


def quotient_graph(gamma: Graph, parts: Sequence[Iterable[int]]) -> Graph:
    """Graph on the parts; two parts are adjacent when some edge joins them."""
    part_of = [-1] * gamma.n
    plist = [sorted(p) for p in parts]
    for i, p in enumerate(plist):
        for v in p:
            if not 0 <= v < gamma.n or part_of[v] != -1:
                raise GraphError("parts must be disjoint subsets of the vertex set")
            part_of[v] = i
    if -1 in part_of:
        raise GraphError("parts must cover the vertex set")
    es = {(min(part_of[u], part_of[v]), max(part_of[u], part_of[v]))
          for u, v in gamma.edges if part_of[u] != part_of[v]}
    return Graph(len(plist), es)


def girth(gamma: Graph) -> float:
    """Length of a shortest cycle (``math.inf`` for forests)."""
    adj = gamma.adjacency
    best = math.inf
    for root in range(gamma.n):
        dist = [-1] * gamma.n
        parent = [-1] * gamma.n
        dist[root] = 0
        q = deque([root])
        while q:
            u = q.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def connected_components(gamma: Graph) -> list[tuple[int, ...]]:
    adj = gamma.adjacency
    comp = [-1] * gamma.n
    out = []
    for r in range(gamma.n):
        if comp[r] != -1:
            continue
        comp[r] = len(out)
        stack, members = [r], [r]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if comp[w] == -1:
                    comp[w] = len(out)
                    stack.append(w)
                    members.append(w)
        out.append(tuple(sorted(members)))
    return out


def is_connected(gamma: Graph) -> bool:
    return len(connected_components(gamma)) <= 1


def induced_subgraph(gamma: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph on ``vertices``, renumbered in increasing order."""
    vs = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(vs)}
    return Graph(len(vs), ((pos[u], pos[v]) for u, v in gamma.edges if u in pos and v in pos))


def is_bipartition(gamma: Graph, side: Iterable[int]) -> bool:
    inside = set(side)
    return all((u in inside) != (v in inside) for u, v in gamma.edges)


# ---------------------------------------------------------------- named graphs

LCF_CODES: dict[str, tuple[tuple[int, ...], int]] = {
    "cube": ((3, -3), 4),
    "heawood": ((5, -5), 7),
    "moebius_kantor": ((5, -5), 8),
    "pappus": ((5, 7, -7, 7, -7, -5), 3),
    "desargues": ((5, -5, 9, -9), 5),
    "tutte_coxeter": ((-13, -9, 7, -7, 9, 13), 5),
}

# (vertices, girth) every build is checked against
NAMED_EXPECTED: dict[str, tuple[int, int]] = {
    "K33": (6, 4),
    "cube": (8, 4),
    "heawood": (14, 6),
    "moebius_kantor": (16, 6),
    "pappus": (18, 6),
    "desargues": (20, 6),
    "tutte_coxeter": (30, 8),
}

NAMED_GRAPHS = tuple(NAMED_EXPECTED)


def lcf_graph(code: Sequence[int], repeats: int) -> Graph:
    """Hamiltonian cycle ``0..n-1`` plus chords ``i -- i + code[i mod len]``."""
    n = len(code) * repeats
    es = {(i, (i + 1) % n) for i in range(n)}
    for i in range(n):
        j = (i + code[i % len(code)]) % n
        es.add((i, j))
    norm = {(min(u, v), max(u, v)) for u, v in es if u != v}
    return Graph(n, norm)


def named_graph(name: str, lcf: tuple[Sequence[int], int] | None = None) -> Graph:
    """One of :data:`NAMED_GRAPHS`, validated against order, cubicity and girth.

    ``lcf`` replaces the stored LCF recipe (used to inject faults).
    """
    if name not in NAMED_EXPECTED:
        raise KeyError(f"unknown graph {name!r}; known: {', '.join(NAMED_GRAPHS)}")
    if name == "K33":
        gamma = Graph(6, ((u, v) for u in range(3) for v in range(3, 6)))
    else:
        code, reps = lcf if lcf is not None else LCF_CODES[name]
        gamma = lcf_graph(code, reps)
    n, g = NAMED_EXPECTED[name]
    got = (gamma.n, gamma.is_regular(3), girth(gamma))
    if got != (n, True, g):
        raise GraphError(f"{name}: built (order, cubic, girth) = {got}, expected {(n, True, g)}")
    return gamma


# ---------------------------------------------------------------- graph6

class Graph6Error(ValueError):
    pass


def _size_field(n: int) -> bytes:
    if n < 0:
        raise Graph6Error("negative order")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise Graph6Error(f"order {n} too large for graph6")


def graph6_encode(gamma: Graph) -> bytes:
    n = gamma.n
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if gamma.has_edge(i, j) else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = bytes(63 + int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6))
    return _size_field(n) + body


def graph6_decode(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data or any(b < 63 or b > 126 for b in data):
        raise Graph6Error("graph6 bytes must lie in 63..126")
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated size field")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        pos = 8
    else:
        if len(data) < 4:
            raise Graph6Error("truncated size field")
        n = 0
        for b in data[1:4]:
            n = (n << 6) | (b - 63)
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for {n} vertices, got {len(body)}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def read_graph6_file(path) -> Graph:
    with open(path, "rb") as fh:
        line = fh.readline()
    return graph6_decode(line)


def write_graph6_file(gamma: Graph, path) -> None:
    with open(path, "wb") as fh:
        fh.write(graph6_encode(gamma) + b"\n")
