"""Permutation groups at desk scale.

Permutations are tuples of images, ``p[i]`` being the image of point ``i``.
They act on the right: ``compose(p, q)`` applies ``p`` first, and the
conjugate of ``h`` by ``a`` is ``a^-1 h a``.  A :class:`PermGroup` keeps its
generators and materializes the full element set on demand, either by a
breadth-first closure or, when a stabilizer chain is known (automorphism
searches produce one), by multiplying out the transversals.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .caps import PERM_ELEMENTS, CapExceeded, cap

Perm = tuple[int, ...]


# ---------------------------------------------------------------- single perms

def identity(degree: int) -> Perm:
    return tuple(range(degree))


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """``p`` followed by ``q``."""
    return tuple(q[x] for x in p)


def invert(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def conjugate(h: Sequence[int], a: Sequence[int]) -> Perm:
    """``a^-1 h a``."""
    return compose(compose(invert(a), h), a)


def is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(len(c) for c in cycles(p)))


def perm_order(p: Sequence[int]) -> int:
    return math.lcm(*cycle_type(p)) if len(p) else 1


def format_cycles(p: Sequence[int]) -> str:
    """Cycle notation, fixed points omitted; ``()`` for the identity."""
    parts = ["(" + " ".join(map(str, c)) + ")" for c in cycles(p) if len(c) > 1]
    return "".join(parts) or "()"


def parse_cycles(text: str, degree: int) -> Perm:
    img = list(range(degree))
    body = text.replace(" ", ",")
    for chunk in body.split(")"):
        chunk = chunk.strip().lstrip("(").strip(",")
        if not chunk:
            continue
        pts = [int(t) for t in chunk.split(",") if t]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    if not is_perm(img):
        raise ValueError(f"not a permutation: {text!r}")
    return tuple(img)


def format_images(p: Sequence[int]) -> str:
    return " ".join(map(str, p))


# ---------------------------------------------------------------- row helpers

def _dtype_for(degree: int):
    if degree <= 256:
        return np.uint8
    if degree <= 65536:
        return np.uint16
    return np.int32


def _void(rows: np.ndarray) -> np.ndarray:
    rows = np.ascontiguousarray(rows)
    return rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).ravel()


def rows_in(rows: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Boolean mask: which rows of ``rows`` occur in ``table``."""
    if len(rows) == 0:
        return np.zeros(0, dtype=bool)
    if len(table) == 0:
        return np.zeros(len(rows), dtype=bool)
    dt = np.result_type(rows.dtype, table.dtype)
    return np.isin(_void(rows.astype(dt, copy=False)), _void(table.astype(dt, copy=False)))


def _sort_rows(rows: np.ndarray) -> np.ndarray:
    if len(rows) <= 1:
        return rows
    idx = np.lexsort(rows.T[::-1])
    return rows[idx]


def compose_rows(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Row-wise ``p`` then ``q``; either side may be a single row."""
    p2 = np.atleast_2d(p)
    q2 = np.atleast_2d(q)
    if len(q2) == 1:
        return q2[0][p2]
    if len(p2) == 1:
        return q2[:, p2[0]]
    return np.take_along_axis(q2, p2.astype(np.intp, copy=False), axis=1)


def invert_rows(p: np.ndarray) -> np.ndarray:
    p2 = np.atleast_2d(p)
    out = np.empty_like(p2)
    np.put_along_axis(out, p2.astype(np.intp, copy=False),
                      np.broadcast_to(np.arange(p2.shape[1], dtype=p2.dtype), p2.shape), axis=1)
    return out


def conjugate_rows(h: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Row-wise ``a^-1 h a``; broadcasting as in :func:`compose_rows`."""
    return compose_rows(compose_rows(invert_rows(a), h), a)


def power_rows(x: np.ndarray, k: int) -> np.ndarray:
    x = np.atleast_2d(x)
    result = np.broadcast_to(np.arange(x.shape[1], dtype=x.dtype), x.shape).copy()
    base = x
    while k > 0:
        if k & 1:
            result = compose_rows(result, base)
        base = compose_rows(base, base)
        k >>= 1
    return result


def is_identity_rows(x: np.ndarray) -> np.ndarray:
    x = np.atleast_2d(x)
    return (x == np.arange(x.shape[1])).all(axis=1)


def order_is(x: np.ndarray, m: int) -> np.ndarray:
    """Mask of rows whose order is exactly ``m``."""
    x = np.atleast_2d(x)
    ok = is_identity_rows(power_rows(x, m))
    for q in _prime_factors(m):
        ok &= ~is_identity_rows(power_rows(x, m // q))
    return ok


def _prime_factors(m: int) -> list[int]:
    out = []
    q = 2
    while q * q <= m:
        if m % q == 0:
            out.append(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        out.append(m)
    return out


# ---------------------------------------------------------------- groups

class PermGroup:
    """A finitely generated permutation group of a given degree.

    ``chain`` is an optional stabilizer chain: a list of
    ``(base_point, transversal)`` pairs, top level first, where the
    transversal maps every orbit point of the base point (under the
    stabilizer of all earlier base points) to a permutation sending the base
    point there.  With a chain the order is known without materializing.
    """

    def __init__(self, degree: int, gens: Iterable[Sequence[int]] = (), *,
                 chain: list[tuple[int, dict[int, Perm]]] | None = None,
                 elements: np.ndarray | None = None, name: str = ""):
        self.degree = degree
        gl = []
        ident = identity(degree)
        for g in gens:
            g = tuple(int(x) for x in g)
            if len(g) != degree or not is_perm(g):
                raise ValueError("generator is not a permutation of the right degree")
            if g != ident and g not in gl:
                gl.append(g)
        self.gens: tuple[Perm, ...] = tuple(gl)
        self.chain = chain
        self.name = name
        self._elements: np.ndarray | None = None
        self._lock = threading.Lock()
        if elements is not None:
            self._elements = _sort_rows(np.asarray(elements).astype(_dtype_for(degree)))
            if not self.gens:
                self.gens = _small_generating_set(self._elements)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        known = self._known_order()
        size = f"order {known}" if known is not None else f"{len(self.gens)} gens"
        return f"<PermGroup{label} degree {self.degree}, {size}>"

    # -- size and elements

    def _known_order(self) -> int | None:
        if self._elements is not None:
            return len(self._elements)
        if self.chain is not None:
            return math.prod(len(t) for _, t in self.chain)
        if not self.gens:
            return 1
        return None

    @property
    def order(self) -> int:
        known = self._known_order()
        if known is not None:
            return known
        return len(self.elements)

    @property
    def elements(self) -> np.ndarray:
        """All elements as rows, sorted lexicographically (identity first)."""
        if self._elements is None:
            with self._lock:
                if self._elements is None:
                    self._elements = self._materialize()
        return self._elements

    def _materialize(self) -> np.ndarray:
        limit = cap(PERM_ELEMENTS)
        dt = _dtype_for(self.degree)
        if self.chain is not None:
            total = math.prod(len(t) for _, t in self.chain)
            if total > limit:
                raise CapExceeded("permutation group elements", limit, total)
            rows = np.arange(self.degree, dtype=dt)[None, :]
            for _, trans in reversed(self.chain):
                u = np.asarray(list(trans.values()), dtype=dt)
                rows = u[:, rows].reshape(-1, self.degree)
            return _sort_rows(rows)
        if not self.gens:
            return np.arange(self.degree, dtype=dt)[None, :]
        rows, _ = close_generators(self.gens, self.degree, limit)
        return _sort_rows(rows.astype(dt))

    def element_list(self) -> list[Perm]:
        return [tuple(r) for r in self.elements.tolist()]

    def is_materialized(self) -> bool:
        return self._elements is not None

    def __contains__(self, p: Sequence[int]) -> bool:
        p = tuple(int(x) for x in p)
        if len(p) != self.degree:
            return False
        if self._elements is None and self.chain is not None:
            return self.sift(p)
        return bool(rows_in(np.asarray([p], dtype=self.elements.dtype), self.elements)[0])

    def sift(self, p: Perm) -> bool:
        """Membership through the stabilizer chain."""
        assert self.chain is not None
        g = p
        for b, trans in self.chain:
            u = trans.get(g[b])
            if u is None:
                return False
            g = compose(g, invert(u))
        return g == identity(self.degree)

    def generated_by(self, gens: Iterable[Sequence[int]], name: str = "") -> "PermGroup":
        return PermGroup(self.degree, gens, name=name)


def _small_generating_set(rows: np.ndarray) -> tuple[Perm, ...]:
    """Greedy generating set for a materialized group (elements in row order)."""
    total = len(rows)
    if total <= 1:
        return ()
    gens: list[Perm] = []
    current = np.arange(rows.shape[1], dtype=rows.dtype)[None, :]
    inside = rows_in(rows, current)
    while len(current) < total:
        # pick the first element of maximal order outside the current subgroup
        cand = rows[~inside]
        g = tuple(int(x) for x in cand[0])
        gens.append(g)
        current, _ = close_generators(gens, rows.shape[1], total)
        inside = rows_in(rows, current.astype(rows.dtype))
    return tuple(gens)


# ---------------------------------------------------------------- operations

def close_generators(gens: Iterable[Sequence[int]], degree: int,
                     limit: int | None = None) -> tuple[np.ndarray, int]:
    """All elements generated by ``gens`` (breadth-first) and their count."""
    gl = [tuple(g) for g in gens]
    if limit is None:
        limit = cap(PERM_ELEMENTS)
    if not gl:
        return np.arange(degree, dtype=np.int32)[None, :], 1
    arr = np.asarray(gl, dtype=np.int32)
    try:
        rows = kernels.closure(arr, limit)
    except OverflowError as exc:
        raise CapExceeded("generator closure", limit, int(exc.args[0])) from None
    return rows, len(rows)


def orbits(G: PermGroup, domain: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """Orbits of ``G`` on ``domain`` (default: all points), canonically sorted.

    The domain should be a union of orbits; points outside it are ignored.
    """
    pts = sorted(set(range(G.degree) if domain is None else domain))
    parent = list(range(G.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in G.gens:
        for x in range(G.degree):
            a, b = find(x), find(g[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for x in pts:
        groups.setdefault(find(x), []).append(x)
    return sorted(tuple(v) for v in groups.values())


def orbit(G: PermGroup, v: int) -> tuple[int, ...]:
    for orb in orbits(G):
        if v in orb:
            return orb
    raise ValueError(v)


def _filtered(G: PermGroup, mask: np.ndarray, name: str = "") -> PermGroup:
    return PermGroup(G.degree, elements=G.elements[mask], name=name)


def point_stabilizer(G: PermGroup, v: int) -> PermGroup:
    return _filtered(G, G.elements[:, v] == v, name=f"stab({v})")


def setwise_stabilizer(G: PermGroup, points: Iterable[int]) -> PermGroup:
    pts = sorted(set(points))
    inside = np.zeros(G.degree, dtype=bool)
    inside[pts] = True
    mask = inside[G.elements[:, pts]].all(axis=1)
    return _filtered(G, mask, name="setstab")


def pointwise_stabilizer(G: PermGroup, points: Iterable[int]) -> PermGroup:
    pts = sorted(set(points))
    mask = (G.elements[:, pts] == np.asarray(pts)).all(axis=1)
    return _filtered(G, mask, name="pointstab")


def is_transitive(G: PermGroup, domain: Iterable[int] | None = None) -> bool:
    return len(orbits(G, domain)) == 1


def is_semiregular(G: PermGroup, domain: Iterable[int] | None = None) -> bool:
    """Every point stabilizer (on ``domain``) is trivial."""
    n = G.order
    return all(len(orb) == n for orb in orbits(G, domain))


def is_regular(G: PermGroup, domain: Iterable[int] | None = None) -> bool:
    return is_transitive(G, domain) and is_semiregular(G, domain)


@dataclass(frozen=True)
class BlockSystem:
    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "BlockSystem":
        bl = sorted(tuple(sorted(b)) for b in blocks)
        degree = sum(len(b) for b in bl)
        block_of = [-1] * degree
        for i, b in enumerate(bl):
            for x in b:
                if x >= degree or block_of[x] != -1:
                    raise ValueError("blocks must partition 0..d-1")
                block_of[x] = i
        if -1 in block_of:
            raise ValueError("blocks must partition 0..d-1")
        return cls(tuple(bl), tuple(block_of))

    def is_invariant(self, G: PermGroup) -> bool:
        bo = np.asarray(self.block_of)
        for g in G.gens:
            img = bo[np.asarray(g)]
            for b in self.blocks:
                if len(set(img[list(b)].tolist())) != 1:
                    return False
        return True


def block_system_from_seed(G: PermGroup, seed: Iterable[int]) -> BlockSystem:
    """Smallest block system in which ``seed`` lies inside one block.

    Union-find over generator images of merged pairs until invariant.
    """
    if not is_transitive(G):
        raise ValueError("group is not transitive")
    seed = sorted(set(seed))
    parent = list(range(G.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pending = []
    for x in seed[1:]:
        a, b = find(seed[0]), find(x)
        if a != b:
            parent[max(a, b)] = min(a, b)
            pending.append((seed[0], x))
    while pending:
        x, y = pending.pop()
        for g in G.gens:
            a, b = find(g[x]), find(g[y])
            if a != b:
                parent[max(a, b)] = min(a, b)
                pending.append((g[x], g[y]))
    groups: dict[int, list[int]] = {}
    for x in range(G.degree):
        groups.setdefault(find(x), []).append(x)
    return BlockSystem.from_blocks(groups.values())


def block_via_setwise_stabilizer(G: PermGroup, v: int, delta: Iterable[int]) -> tuple[int, ...]:
    """Orbit of ``v`` under the setwise stabilizer of ``delta``.

    This orbit is a block whenever the stabilizer of ``v`` fixes ``delta``
    setwise; kept as a cross-check on :func:`block_system_from_seed`.
    """
    S = setwise_stabilizer(G, delta)
    return tuple(sorted(set(S.elements[:, v].tolist())))


def kernel_of_blocks(G: PermGroup, delta: BlockSystem) -> PermGroup:
    if not delta.is_invariant(G):
        raise ValueError("block system is not invariant under the group")
    bo = np.asarray(delta.block_of)
    mask = (bo[G.elements] == bo).all(axis=1)
    return _filtered(G, mask, name="kernel")


def _conjugates_in(H_rows: np.ndarray, a: Sequence[int]) -> np.ndarray:
    return conjugate_rows(H_rows, np.asarray(a, dtype=H_rows.dtype))


def is_subgroup(H: PermGroup, A: PermGroup) -> bool:
    return all(h in A for h in H.gens)


def is_normal(A: PermGroup, H: PermGroup) -> bool:
    """Whether ``H`` (a subgroup of ``A``) is normal in ``A``."""
    Hel = H.elements
    for a in A.gens:
        if not rows_in(_conjugates_in(Hel, a), Hel).all():
            return False
    return True


def core_in(A: PermGroup, H: PermGroup) -> PermGroup:
    """Largest normal subgroup of ``A`` contained in ``H``."""
    cur = H.elements
    while True:
        keep = np.ones(len(cur), dtype=bool)
        for a in A.gens:
            # h survives if a h a^-1 lies in cur for every generator a
            ainv = invert(a)
            keep &= rows_in(_conjugates_in(cur, ainv), cur)
        if keep.all():
            return PermGroup(A.degree, elements=cur, name="core")
        cur = cur[keep]


def normalizer(A: PermGroup, H: PermGroup, chunk: int = 1 << 18) -> PermGroup:
    """Elements ``a`` of ``A`` with ``a^-1 H a = H``."""
    mask = _conjugator_mask(A, H, H, chunk)
    return _filtered(A, mask, name="normalizer")


def normalizer_order(A: PermGroup, H: PermGroup, within: np.ndarray | None = None,
                     chunk: int = 1 << 18) -> int:
    return int(_conjugator_mask(A, H, H, chunk, within).sum())


def _conjugator_mask(A: PermGroup, H: PermGroup, K: PermGroup, chunk: int,
                     within: np.ndarray | None = None) -> np.ndarray:
    Ael = A.elements if within is None else within
    Kel = K.elements
    hgens = [np.asarray(h, dtype=Ael.dtype) for h in H.gens]
    mask = np.ones(len(Ael), dtype=bool)
    for lo in range(0, len(Ael), chunk):
        block = Ael[lo:lo + chunk]
        m = np.ones(len(block), dtype=bool)
        for h in hgens:
            conj = conjugate_rows(h[None, :], block)
            m &= rows_in(conj, Kel)
        mask[lo:lo + chunk] = m
    return mask


def conjugating_element(A: PermGroup, H: PermGroup, K: PermGroup) -> Perm | None:
    """Some ``a`` in ``A`` with ``a^-1 H a = K``, or None if there is none."""
    if H.order != K.order:
        return None
    if sorted(cycle_type(tuple(r)) for r in H.elements.tolist()) != \
            sorted(cycle_type(tuple(r)) for r in K.elements.tolist()):
        return None
    if not H.gens:
        return identity(A.degree)
    mask = _conjugator_mask(A, H, K, 1 << 18)
    hits = np.flatnonzero(mask)
    if len(hits) == 0:
        return None
    return tuple(int(x) for x in A.elements[hits[0]])


# ---------------------------------------------------------------- subgroup search

class SubgroupPredicate:
    """A condition on subgroups, with an optional per-element necessary test.

    ``element_mask(rows)`` must hold for every non-identity element of an
    acceptable subgroup; it is used to prune the search early.
    """

    def element_mask(self, rows: np.ndarray) -> np.ndarray:
        return np.ones(len(rows), dtype=bool)

    def __call__(self, elements: np.ndarray) -> bool:
        return True


class SemiregularWithOrbits(SubgroupPredicate):
    """Semiregular subgroups whose orbits are exactly the given parts."""

    def __init__(self, parts: Sequence[Iterable[int]], degree: int):
        self.parts = [tuple(sorted(p)) for p in parts]
        self.part_of = np.full(degree, -1)
        for i, p in enumerate(self.parts):
            self.part_of[list(p)] = i

    def element_mask(self, rows):
        rows = np.atleast_2d(rows)
        fpf = (rows != np.arange(rows.shape[1])).all(axis=1)
        keeps = (self.part_of[rows] == self.part_of).all(axis=1)
        return fpf & keeps

    def __call__(self, elements):
        if len(elements) != len(self.parts[0]):
            return False
        if any(len(p) != len(elements) for p in self.parts):
            return False
        nontriv = elements[~is_identity_rows(elements)]
        if not self.element_mask(nontriv).all():
            return False
        for p in self.parts:
            if set(elements[:, p[0]].tolist()) != set(p):
                return False
        return True


class Regular(SemiregularWithOrbits):
    def __init__(self, degree: int):
        super().__init__([range(degree)], degree)


class Semiregular(SubgroupPredicate):
    def element_mask(self, rows):
        rows = np.atleast_2d(rows)
        return (rows != np.arange(rows.shape[1])).all(axis=1)

    def __call__(self, elements):
        return bool(self.element_mask(elements[~is_identity_rows(elements)]).all())


def generating_set(G) -> list[int]:
    """Greedy generating set of a finite group given by its table.

    Repeatedly adds the outside element of largest order (least index on
    ties).  Small, though not always of minimum size.
    """
    orders = G.element_orders
    gens: list[int] = []
    inside = {G.identity}
    while len(inside) < G.order:
        best = max((x for x in range(G.order) if x not in inside),
                   key=lambda x: (orders[x], -x))
        gens.append(best)
        inside = set(G.closure(gens))
    return gens


def _bfs_plan(G, gens: Sequence[int]) -> tuple[list[int], list[tuple[int, int, int, bool]]]:
    """Breadth-first traversal of the subgroup generated by ``gens``.

    Returns the node order and the step list ``(src, gen_idx, dst, tree)``
    where ``dst = src * gens[gen_idx]``; tree steps define images, the others
    are consistency checks.
    """
    seen = {G.identity: 0}
    nodes = [G.identity]
    steps = []
    head = 0
    while head < len(nodes):
        x = nodes[head]
        head += 1
        for i, g in enumerate(gens):
            y = int(G.table[x, g])
            if y not in seen:
                seen[y] = len(nodes)
                nodes.append(y)
                steps.append((x, i, y, True))
            else:
                steps.append((x, i, y, False))
    return nodes, steps


def find_isomorphic_subgroups(A: PermGroup, G, predicate: Callable | None = None,
                              limit: int | None = None) -> list[PermGroup]:
    """All subgroups of ``A`` isomorphic to the abstract group ``G``.

    Generators of ``G`` are mapped into ``A`` one at a time; each partial
    assignment is checked for consistency with the relations of the
    generated prefix subgroup, vectorized over the candidate images.
    Results are deduplicated by element set, filtered by ``predicate`` and
    sorted canonically.
    """
    if predicate is None:
        predicate = SubgroupPredicate()
    elem_mask = getattr(predicate, "element_mask", None)
    gens = generating_set(G)
    Ael = A.elements
    dt = Ael.dtype
    d = A.degree
    orders = G.element_orders
    if not gens:
        ident = np.arange(d, dtype=dt)[None, :]
        return [PermGroup(d, elements=ident)] if predicate(ident) else []

    cands = []
    for g in gens:
        m = order_is(Ael, orders[g])
        if elem_mask is not None:
            m &= elem_mask(Ael)
        cands.append(Ael[m])
    plans = [_bfs_plan(G, gens[:j + 1]) for j in range(len(gens))]

    found: dict[bytes, np.ndarray] = {}

    def extend(j: int, fixed: list[np.ndarray]):
        C = cands[j]
        if len(C) == 0:
            return
        nodes, steps = plans[j]
        pos = {x: i for i, x in enumerate(nodes)}
        imgs = np.empty((len(nodes), len(C), d), dtype=dt)
        imgs[0] = np.arange(d, dtype=dt)
        ok = np.ones(len(C), dtype=bool)
        for src, gi, dst, tree in steps:
            gimg = C if gi == j else fixed[gi][None, :]
            val = compose_rows(imgs[pos[src]], gimg) if gi == j else compose_rows(imgs[pos[src]], fixed[gi])
            if tree:
                imgs[pos[dst]] = val
            else:
                ok &= (imgs[pos[dst]] == val).all(axis=1)
        for i in range(1, len(nodes)):
            ok &= ~is_identity_rows(imgs[i])
            if elem_mask is not None:
                ok &= elem_mask(imgs[i])
        idx = np.flatnonzero(ok)
        if j + 1 == len(gens):
            for c in idx:
                el = _sort_rows(imgs[:, c, :])
                key = el.tobytes()
                if key not in found:
                    found[key] = el
            return
        for c in idx:
            extend(j + 1, fixed + [C[c]])

    extend(0, [])
    out = []
    for key in sorted(found):
        el = found[key]
        if predicate(el):
            out.append(PermGroup(d, elements=el))
            if limit is not None and len(out) >= limit:
                break
    return out


def sylow_subgroup(A: PermGroup, p: int) -> PermGroup:
    """A Sylow ``p``-subgroup, grown one normalizing ``p``-element at a time."""
    n = A.order
    if n % p:
        raise ValueError(f"{p} does not divide the group order {n}")
    target = 1
    while n % (target * p) == 0:
        target *= p
    Ael = A.elements
    pel = np.zeros(len(Ael), dtype=bool)
    k = 1
    while k <= target:
        pel |= is_identity_rows(power_rows(Ael, k))
        k *= p
    P = PermGroup(A.degree, name=f"sylow{p}")
    while P.order < target:
        Pel = P.elements
        outside = pel & ~rows_in(Ael, Pel)
        extended = False
        for i in np.flatnonzero(outside):
            x = tuple(int(v) for v in Ael[i])
            if rows_in(_conjugates_in(Pel, x), Pel).all():
                P = PermGroup(A.degree, P.gens + (x,), name=f"sylow{p}")
                extended = True
                break
        if not extended:  # pragma: no cover - Sylow's theorem
            raise RuntimeError("could not extend p-subgroup")
    return P


def subgroup_lattice(A: PermGroup, limit: int = 4096) -> list[PermGroup]:
    """Every subgroup of a small materialized group, by joining cyclic ones."""
    Ael = A.elements
    key_of = {r.tobytes(): i for i, r in enumerate(Ael)}
    n = len(Ael)
    rows = [tuple(r) for r in Ael.tolist()]

    def idx(p):
        return key_of[np.asarray(p, dtype=Ael.dtype).tobytes()]

    mult = {}

    def mul(i, j):
        k = (i, j)
        if k not in mult:
            mult[k] = idx(compose(rows[i], rows[j]))
        return mult[k]

    def close(gen_idx):
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gen_idx:
                    y = mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    cyclic = {}
    for i in range(n):
        c = close([i])
        cyclic.setdefault(c, i)
    subs = {c: [g] for c, g in cyclic.items()}
    frontier = list(subs)
    while frontier:
        nxt = []
        for H in frontier:
            for C, g in cyclic.items():
                if C <= H:
                    continue
                K = close(subs[H] + [g])
                if K not in subs:
                    subs[K] = subs[H] + [g]
                    nxt.append(K)
                    if len(subs) > limit:
                        raise CapExceeded("subgroup lattice", limit, len(subs))
        frontier = nxt
    out = [PermGroup(A.degree, elements=Ael[sorted(S)]) for S in subs]
    out.sort(key=lambda H: (H.order, H.elements.tobytes()))
    return out


def all_tuples_conjugate(A: PermGroup, groups: Sequence[PermGroup]) -> tuple[bool, list[Perm | None]]:
    """Whether every group in ``groups`` is conjugate in ``A`` to the first."""
    if not groups:
        return True, []
    wit = [conjugating_element(A, groups[0], H) for H in groups]
    return all(w is not None for w in wit), wit


__all__ = [name for name in dir() if not name.startswith("_") and name not in {
    "annotations", "itertools", "math", "threading", "np", "dataclass",
    "Callable", "Iterable", "Sequence", "kernels",
}]
