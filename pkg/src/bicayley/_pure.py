"""Pure-Python versions of the hot loops.

Every function here has a twin of the same name and signature in the
compiled ``_speedups`` module; :mod:`bicayley.kernels` picks one at import.
Arrays are numpy ``int32`` arrays, modified in place where documented.
"""

from __future__ import annotations

from collections import deque

import numpy as np

BACKEND = "python"


def refine(indptr, indices, lab, cell_of, cell_end, splitters) -> None:
    """Equitable refinement of an ordered partition, in place.

    The partition is stored nauty-style: ``lab`` lists the vertices cell by
    cell, ``cell_of[v]`` is the start position of the cell holding ``v`` and
    ``cell_end[s]`` the end position (exclusive) of the cell starting at
    ``s``.  ``splitters`` are the cell starts to refine against first.
    Split cells keep their start, sub-cells are ordered by increasing
    neighbour count, so the result commutes with vertex relabelling.
    """
    ptr = indptr.tolist()
    nbr = indices.tolist()
    lb = lab.tolist()
    cof = cell_of.tolist()
    cend = cell_end.tolist()
    n = len(lb)

    queue = deque()
    inq = [False] * (n + 1)
    for s in splitters:
        s = int(s)
        if not inq[s]:
            inq[s] = True
            queue.append(s)

    while queue:
        s = queue.popleft()
        inq[s] = False
        cnt: dict[int, int] = {}
        for p in range(s, cend[s]):
            w = lb[p]
            for q in range(ptr[w], ptr[w + 1]):
                u = nbr[q]
                cnt[u] = cnt.get(u, 0) + 1
        touched: dict[int, int] = {}
        for u in cnt:
            touched[cof[u]] = 1
        for c in sorted(touched):
            ce = cend[c]
            if ce - c == 1:
                continue
            members = lb[c:ce]
            keys = [cnt.get(v, 0) for v in members]
            k0 = keys[0]
            if all(k == k0 for k in keys):
                continue
            members.sort(key=lambda v: cnt.get(v, 0))
            lb[c:ce] = members
            start = c
            prev = cnt.get(members[0], 0)
            for off in range(1, len(members) + 1):
                cur = cnt.get(members[off], 0) if off < len(members) else None
                if cur != prev:
                    end = c + off
                    cend[start] = end
                    for p in range(start, end):
                        cof[lb[p]] = start
                    if not inq[start]:
                        inq[start] = True
                        queue.append(start)
                    start = end
                    prev = cur

    lab[:] = lb
    cell_of[:] = cof
    cell_end[:] = cend


def leaf_key(indptr, indices, lab) -> bytes:
    """Encode the graph relabelled by a discrete partition.

    Vertex ``lab[i]`` becomes ``i``; each row is its degree followed by its
    sorted new neighbour labels, all as big-endian 16-bit words.
    """
    ptr = indptr.tolist()
    nbr = indices.tolist()
    lb = lab.tolist()
    inv = [0] * len(lb)
    for i, v in enumerate(lb):
        inv[v] = i
    out: list[int] = []
    for v in lb:
        row = sorted(inv[nbr[q]] for q in range(ptr[v], ptr[v + 1]))
        out.append(len(row))
        out.extend(row)
    return np.asarray(out, dtype=">u2").tobytes()


def closure(gens, cap: int):
    """Breadth-first closure of permutation generators (rows of ``gens``).

    Returns the elements as a 2-D array in discovery order, or raises
    ``OverflowError`` with the partial count once ``cap`` is exceeded.
    """
    d = gens.shape[1]
    glist = [tuple(g) for g in gens.tolist()]
    ident = tuple(range(d))
    seen = {ident}
    order = [ident]
    head = 0
    while head < len(order):
        e = order[head]
        head += 1
        for g in glist:
            h = tuple([g[x] for x in e])
            if h not in seen:
                seen.add(h)
                order.append(h)
                if len(order) > cap:
                    raise OverflowError(len(order))
    return np.asarray(order, dtype=np.int32).reshape(len(order), d)


def count_s_arcs(indptr, indices, s: int) -> int:
    """Number of s-arcs (non-backtracking walks with s steps)."""
    ptr = indptr.tolist()
    nbr = indices.tolist()
    n = len(ptr) - 1

    def walk(v: int, prev: int, left: int) -> int:
        if left == 0:
            return 1
        total = 0
        for q in range(ptr[v], ptr[v + 1]):
            u = nbr[q]
            if u != prev:
                total += walk(u, v, left - 1)
        return total

    return sum(walk(v, -1, s) for v in range(n))
