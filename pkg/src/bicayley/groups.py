"""Finite groups as explicit multiplication tables.

Elements are dense indices ``0..n-1`` with a parallel list of labels.  Groups
are built from a small spec language (``C9^2xQ8``), checked against the group
axioms at construction, and classified against the class of groups
``U x V`` with ``U`` odd homocyclic and ``V`` trivial, cyclic 2-group,
elementary abelian 2-group or ``Q8``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .caps import GROUP_ORDER, PERM_ELEMENTS, SUBGROUP_SEARCH, CapExceeded, cap
from .permgrp import PermGroup, close_generators, compose, generating_set, identity as perm_identity

ASSOC_CHECK_LIMIT = 512


# ---------------------------------------------------------------- the group type

@dataclass(frozen=True, eq=False)
class FinGroup:
    order: int
    elements: tuple[str, ...]
    table: np.ndarray
    identity: int
    name: str = ""

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int32)
        n = self.order
        if t.shape != (n, n) or len(self.elements) != n:
            raise ValueError("table shape does not match the order")
        if len(set(self.elements)) != n:
            raise ValueError("element labels must be distinct")
        ar = np.arange(n)
        if not ((np.sort(t, axis=1) == ar).all() and (np.sort(t, axis=0) == ar[:, None]).all()):
            raise ValueError("table is not a Latin square")
        e = self.identity
        if not ((t[e] == ar).all() and (t[:, e] == ar).all()):
            raise ValueError("identity is not a two-sided identity")
        # Latin square + identity give unique right inverses; check they are left inverses too
        right = np.argmax(t == e, axis=1)
        if not (t[right, ar] == e).all():
            raise ValueError("some element lacks a two-sided inverse")
        if n <= ASSOC_CHECK_LIMIT:
            for a in range(n):
                if not (t[t[a]] == t[a][t]).all():
                    raise ValueError("table is not associative")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    def __repr__(self) -> str:
        return f"<FinGroup {self.name or '?'} of order {self.order}>"

    def __len__(self) -> int:
        return self.order

    @cached_property
    def rows(self) -> list[list[int]]:
        return self.table.tolist()

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.argmax(self.table == self.identity, axis=1))

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        rows = self.rows
        out = []
        for x in range(self.order):
            k, y = 1, x
            while y != self.identity:
                y = rows[y][x]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.elements)}

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, k: int) -> int:
        k %= self.element_orders[a]
        y = self.identity
        for _ in range(k):
            y = self.rows[y][a]
        return y

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def index(self, label: str) -> int:
        """Element index of ``label``; product labels may omit the parentheses."""
        key = label.strip().replace(" ", "")
        hit = self._label_index.get(key)
        if hit is None and not key.startswith("("):
            hit = self._label_index.get(f"({key})")
        if hit is None:
            raise KeyError(f"no element labelled {label!r} in {self.name or 'group'}")
        return hit

    def label(self, x: int) -> str:
        return self.elements[x]

    def closure(self, gens: Iterable[int]) -> tuple[int, ...]:
        """Sorted element list of the subgroup generated by ``gens``."""
        gl = list(dict.fromkeys(int(g) for g in gens))
        rows = self.rows
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                r = rows[x]
                for g in gl:
                    y = r[g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen))

    def is_subgroup(self, elements: Iterable[int]) -> bool:
        el = set(elements)
        if self.identity not in el:
            return False
        return all(self.rows[a][b] in el for a in el for b in el)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.element_orders)

    def __hash__(self):
        return id(self)


# ---------------------------------------------------------------- spec language

@dataclass(frozen=True)
class Cyclic:
    n: int

    def __str__(self):
        return f"C{self.n}"

    @property
    def order(self):
        return self.n


@dataclass(frozen=True)
class CyclicPower:
    n: int
    k: int

    def __str__(self):
        return f"C{self.n}^{self.k}"

    @property
    def order(self):
        return self.n ** self.k


@dataclass(frozen=True)
class Quaternion8:
    def __str__(self):
        return "Q8"

    @property
    def order(self):
        return 8


@dataclass(frozen=True)
class Dihedral:
    """Dihedral group of order ``2n`` (experimental atom ``D<n>``)."""
    n: int

    def __str__(self):
        return f"D{self.n}"

    @property
    def order(self):
        return 2 * self.n


@dataclass(frozen=True)
class Experimental:
    """A named non-nilpotent group from :data:`EXPERIMENTAL_ATOMS`."""
    key: str

    def __str__(self):
        return self.key

    @property
    def order(self):
        return EXPERIMENTAL_ORDERS[self.key]


Atom = Cyclic | CyclicPower | Quaternion8 | Dihedral | Experimental


@dataclass(frozen=True)
class GroupSpec:
    factors: tuple = ()

    def __post_init__(self):
        for f in self.factors:
            if isinstance(f, (Cyclic, CyclicPower, Dihedral)) and f.n < 2:
                raise GroupSpecError(f"cyclic order must be at least 2 in {f}", 0)
            if isinstance(f, CyclicPower) and f.k < 1:
                raise GroupSpecError(f"exponent must be positive in {f}", 0)

    def __str__(self):
        return "x".join(str(f) for f in self.factors) or "1"

    @property
    def order(self) -> int:
        return math.prod(f.order for f in self.factors)


class GroupSpecError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


_ATOM_RE = re.compile(r"C(\d+)(?:\^(\d+))?|Q8|D(\d+)")


def parse_group_spec(text: str) -> GroupSpec:
    """Parse ``atom (x atom)*`` with ``atom := C<n> | C<n>^<k> | Q8 | D<n>``.

    ``"1"`` denotes the trivial group.  Registered experimental groups are
    accepted as whole atoms by name, e.g. ``C3^3:C4``.
    """
    s = text.strip()
    if s == "1":
        return GroupSpec(())
    if not s:
        raise GroupSpecError("empty group spec", 0)
    factors = []
    pos = 0
    while True:
        for key in EXPERIMENTAL_ORDERS:
            if s.startswith(key, pos) and (pos + len(key) == len(s) or s[pos + len(key)] == "x"):
                factors.append(Experimental(key))
                pos += len(key)
                break
        else:
            m = _ATOM_RE.match(s, pos)
            if m is None:
                raise GroupSpecError(f"expected C<n>, C<n>^<k>, Q8 or D<n>, got {s[pos:pos + 8]!r}", pos)
            if m.group(0) == "Q8":
                factors.append(Quaternion8())
            elif m.group(3) is not None:
                n = int(m.group(3))
                if n < 2:
                    raise GroupSpecError(f"dihedral degree must be at least 2, got {n}", pos + 1)
                factors.append(Dihedral(n))
            else:
                n = int(m.group(1))
                if n < 2:
                    raise GroupSpecError(f"cyclic order must be at least 2, got {n}", pos + 1)
                if m.group(2) is None:
                    factors.append(Cyclic(n))
                else:
                    k = int(m.group(2))
                    if k < 1:
                        raise GroupSpecError(f"exponent must be positive, got {k}", m.start(2))
                    factors.append(CyclicPower(n, k))
            pos = m.end()
        if pos == len(s):
            return GroupSpec(tuple(factors))
        if s[pos] != "x":
            raise GroupSpecError(f"expected 'x' between factors, got {s[pos]!r}", pos)
        pos += 1
        if pos == len(s):
            raise GroupSpecError("dangling 'x'", pos)


# ---------------------------------------------------------------- construction

Q8_LABELS = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")


def _cyclic_table(n: int) -> np.ndarray:
    a = np.arange(n)
    return (a[:, None] + a[None, :]) % n


def _q8_table() -> np.ndarray:
    # index = 2*unit + sign, units 1,i,j,k
    unit_mul = {  # (a, b) -> (sign, unit)
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }
    t = np.zeros((8, 8), dtype=np.int32)
    for x in range(8):
        for y in range(8):
            sgn, u = unit_mul[(x // 2, y // 2)]
            t[x, y] = 2 * u + ((x % 2) ^ (y % 2) ^ sgn)
    return t


def _dihedral(n: int) -> tuple[np.ndarray, list[str]]:
    # index a -> r^a, index n + a -> r^a s
    t = np.zeros((2 * n, 2 * n), dtype=np.int32)
    for x in range(2 * n):
        a, fx = x % n, x // n
        for y in range(2 * n):
            b, fy = y % n, y // n
            c = (a - b) % n if fx else (a + b) % n
            t[x, y] = c + n * (fx ^ fy)
    labels = [f"r{a}" for a in range(n)] + [f"s{a}" for a in range(n)]
    return t, labels


def _atom_coordinates(atom) -> list[tuple[np.ndarray, list[str]]]:
    if isinstance(atom, Cyclic):
        return [(_cyclic_table(atom.n), [str(i) for i in range(atom.n)])]
    if isinstance(atom, CyclicPower):
        return [(_cyclic_table(atom.n), [str(i) for i in range(atom.n)])] * atom.k
    if isinstance(atom, Quaternion8):
        return [(_q8_table(), list(Q8_LABELS))]
    if isinstance(atom, Dihedral):
        return [_dihedral(atom.n)]
    if isinstance(atom, Experimental):
        G = EXPERIMENTAL_ATOMS[atom.key]()
        return [(np.asarray(G.table), list(G.elements))]
    raise TypeError(f"unknown atom {atom!r}")


def _product_tables(coords: list[tuple[np.ndarray, list[str]]]) -> tuple[np.ndarray, list[str]]:
    table = np.zeros((1, 1), dtype=np.int64)
    labels: list[tuple[str, ...]] = [()]
    for t, lab in coords:
        m = len(lab)
        n = len(labels)
        table = (table[:, None, :, None] * m + np.asarray(t)[None, :, None, :]).reshape(n * m, n * m)
        labels = [old + (new,) for old in labels for new in lab]
    if len(coords) == 1:
        names = [lab[0] for lab in labels]
    else:
        names = ["(" + ":".join(lab) + ")" for lab in labels]
    return table, names


def build_group(spec: GroupSpec | str, limit: int | None = None) -> FinGroup:
    """Explicit table of the direct product described by ``spec``.

    Product elements are coordinate tuples, last factor varying fastest,
    labelled ``(a:b:...)``; a single coordinate keeps its bare label.
    """
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    limit = cap(GROUP_ORDER) if limit is None else limit
    if spec.order > limit:
        raise CapExceeded("group order", limit, spec.order)
    coords = [c for f in spec.factors for c in _atom_coordinates(f)]
    table, names = _product_tables(coords)
    return FinGroup(len(names), tuple(names), table, 0, str(spec))


def semidirect_product(N: FinGroup, H: FinGroup, action: Sequence[Sequence[int]],
                       name: str = "") -> FinGroup:
    """``N`` extended by ``H``, where ``action[h]`` lists the images of ``N``'s
    elements under the automorphism attached to ``h``.

    Elements are pairs ``(n, h)`` with ``(n1,h1)(n2,h2) = (n1 * h1(n2), h1 h2)``;
    the construction is rejected unless ``h -> action[h]`` is a homomorphism.
    """
    nn, nh = N.order, H.order
    act = np.asarray(action, dtype=np.int64)
    for a in range(nh):
        for b in range(nh):
            if not (act[a][act[b]] == act[H.mul(a, b)]).all():
                raise ValueError("action is not a homomorphism into Aut(N)")
    Nt = np.asarray(N.table, dtype=np.int64)
    Ht = np.asarray(H.table, dtype=np.int64)
    n1 = np.arange(nn)[:, None, None, None]
    h1 = np.arange(nh)[None, :, None, None]
    n2 = np.arange(nn)[None, None, :, None]
    h2 = np.arange(nh)[None, None, None, :]
    nprod = Nt[n1, act[h1, n2]]
    hprod = Ht[h1, h2]
    table = (nprod * nh + hprod).reshape(nn * nh, nn * nh)
    labels = tuple(f"({a}:{b})" for a in N.elements for b in H.elements)
    return FinGroup(nn * nh, labels, table, N.identity * nh + H.identity, name)


Z4_ACTIONS_ON_Z3CUBE = {
    "identity": ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    "diag(-1,1,1)": ((-1, 0, 0), (0, 1, 0), (0, 0, 1)),
    "diag(-1,-1,1)": ((-1, 0, 0), (0, -1, 0), (0, 0, 1)),
    "-I": ((-1, 0, 0), (0, -1, 0), (0, 0, -1)),
    "rot+1": ((0, -1, 0), (1, 0, 0), (0, 0, 1)),
    "rot-1": ((0, -1, 0), (1, 0, 0), (0, 0, -1)),
}


def z3cube_by_z4(matrix=Z4_ACTIONS_ON_Z3CUBE["-I"], name: str = "C3^3:C4") -> FinGroup:
    """Z_3^3 extended by Z_4 whose generator acts by ``matrix`` (mod 3).

    The six entries of :data:`Z4_ACTIONS_ON_Z3CUBE` cover every action up to
    conjugacy in GL(3,3).  The default ``-I`` is the one registered as the
    ``C3^3:C4`` atom.
    """
    M = np.asarray(matrix, dtype=np.int64)
    if (np.linalg.matrix_power(M, 4) % 3 != np.eye(3, dtype=np.int64)).any():
        raise ValueError("matrix must have order dividing 4 mod 3")
    N = build_group(GroupSpec((CyclicPower(3, 3),)))
    H = build_group(GroupSpec((Cyclic(4),)))
    coords = [(i // 9, (i // 3) % 3, i % 3) for i in range(27)]
    index = {c: i for i, c in enumerate(coords)}
    gen = [index[tuple(int(t) % 3 for t in M @ np.array(coords[x]))] for x in range(27)]
    action = [list(range(27))]
    for _ in range(3):
        action.append([gen[x] for x in action[-1]])
    return semidirect_product(N, H, action, name=name)


EXPERIMENTAL_ATOMS = {"C3^3:C4": z3cube_by_z4}
EXPERIMENTAL_ORDERS = {"C3^3:C4": 108}


def subgroup_group(G: FinGroup, elements: Sequence[int], name: str = "") -> FinGroup:
    """The subgroup on ``elements`` as a group of its own (labels kept)."""
    el = sorted(elements)
    pos = {x: i for i, x in enumerate(el)}
    sub = G.table[np.ix_(el, el)]
    table = np.vectorize(pos.__getitem__, otypes=[np.int32])(sub) if el else sub
    return FinGroup(len(el), tuple(G.elements[x] for x in el), table, pos[G.identity], name)


def quotient_group(G: FinGroup, N: Sequence[int], name: str = "") -> FinGroup:
    """``G/N`` for a normal subgroup ``N``; cosets labelled by least representative."""
    Nset = set(N)
    rows = G.rows
    coset_of = [-1] * G.order
    reps = []
    for x in range(G.order):
        if coset_of[x] == -1:
            idx = len(reps)
            reps.append(x)
            for y in Nset:
                coset_of[rows[x][y]] = idx
    if any(coset_of[rows[y][x]] != coset_of[rows[x][y]] for x in range(G.order) for y in Nset):
        raise ValueError("subgroup is not normal")
    m = len(reps)
    table = np.array([[coset_of[rows[a][b]] for b in reps] for a in reps], dtype=np.int32)
    return FinGroup(m, tuple(G.elements[r] for r in reps), table, coset_of[G.identity], name)


# ---------------------------------------------------------------- elementary queries

def element_order(G: FinGroup, x: int) -> int:
    return G.element_orders[x]


def order_profile(G: FinGroup) -> tuple[tuple[int, int], ...]:
    counts: dict[int, int] = {}
    for o in G.element_orders:
        counts[o] = counts.get(o, 0) + 1
    return tuple(sorted(counts.items()))


def all_subgroups(G: FinGroup, limit: int | None = None) -> list[tuple[int, ...]]:
    """Every subgroup as a sorted element tuple, sorted lexicographically.

    Subgroups are obtained by joining cyclic subgroups until no new ones
    appear; every subgroup is a join of the cyclic subgroups it contains.
    """
    limit = cap(SUBGROUP_SEARCH) if limit is None else limit
    if G.order > limit:
        raise CapExceeded("subgroup enumeration (group order)", limit, G.order)
    cyclic: dict[tuple[int, ...], int] = {}
    for x in range(G.order):
        cyclic.setdefault(G.closure([x]), x)
    subs: dict[frozenset, list[int]] = {frozenset(c): [g] for c, g in cyclic.items()}
    cyc_sets = [(frozenset(c), g) for c, g in cyclic.items()]
    frontier = list(subs)
    while frontier:
        nxt = []
        for H in frontier:
            for C, g in cyc_sets:
                if C <= H:
                    continue
                K = frozenset(G.closure(subs[H] + [g]))
                if K not in subs:
                    subs[K] = subs[H] + [g]
                    nxt.append(K)
        frontier = nxt
    return sorted(tuple(sorted(S)) for S in subs)


# ---------------------------------------------------------------- homomorphisms

@dataclass(frozen=True)
class GroupMap:
    source: FinGroup
    target: FinGroup
    images: tuple[int, ...]
    is_homomorphism: bool = field(init=False)
    is_injective: bool = field(init=False)
    is_surjective: bool = field(init=False)

    def __post_init__(self):
        S, T, im = self.source, self.target, self.images
        if len(im) != S.order:
            raise ValueError("images must cover the whole source")
        Tr = T.rows
        hom = all(im[S.rows[a][b]] == Tr[im[a]][im[b]]
                  for a in range(S.order) for b in range(S.order))
        object.__setattr__(self, "is_homomorphism", hom)
        object.__setattr__(self, "is_injective", len(set(im)) == S.order)
        object.__setattr__(self, "is_surjective", len(set(im)) == T.order)

    @property
    def is_isomorphism(self) -> bool:
        return self.is_homomorphism and self.is_injective and self.is_surjective

    def __call__(self, x: int) -> int:
        return self.images[x]

    def as_labels(self) -> dict[str, str]:
        return {self.source.elements[x]: self.target.elements[y] for x, y in enumerate(self.images)}


def _bfs_plan(G: FinGroup, gens: Sequence[int]):
    seen = {G.identity}
    nodes = [G.identity]
    steps = []
    head = 0
    rows = G.rows
    while head < len(nodes):
        x = nodes[head]
        head += 1
        for i, g in enumerate(gens):
            y = rows[x][g]
            tree = y not in seen
            if tree:
                seen.add(y)
                nodes.append(y)
            steps.append((x, i, y, tree))
    return steps


def _injective_homs(src: FinGroup, tgt: FinGroup, gens: Sequence[int],
                    prefix: Sequence[int] = (), plans=None) -> Iterator[tuple[int, ...]]:
    """Injective homomorphisms ``src -> tgt`` whose generator images start with ``prefix``.

    Generator images are chosen in index order among elements of the same
    order; each partial assignment is checked on the subgroup generated so
    far, so inconsistent prefixes are cut immediately.
    """
    if plans is None:
        plans = [_bfs_plan(src, gens[:j + 1]) for j in range(len(gens))]
    trows = tgt.rows
    sord = src.element_orders
    by_order: dict[int, list[int]] = {}
    for y, o in enumerate(tgt.element_orders):
        by_order.setdefault(o, []).append(y)

    def partial(images: list[int]) -> dict[int, int] | None:
        img = {src.identity: tgt.identity}
        for x, gi, y, tree in plans[len(images) - 1]:
            v = trows[img[x]][images[gi]]
            if tree:
                img[y] = v
            elif img[y] != v:
                return None
        if len(set(img.values())) != len(img):
            return None
        return img

    def rec(images: list[int]) -> Iterator[tuple[int, ...]]:
        j = len(images)
        if j == len(gens):
            img = partial(images) if images else {src.identity: tgt.identity}
            yield tuple(img[x] for x in range(src.order))
            return
        for c in by_order.get(sord[gens[j]], []):
            nxt = images + [c]
            if partial(nxt) is not None:
                yield from rec(nxt)

    prefix = list(prefix)
    if prefix and partial(prefix) is None:
        return
    yield from rec(prefix)


def find_embedding(G: FinGroup, H: FinGroup) -> GroupMap | None:
    """First injective homomorphism ``G -> H`` in search order, if any."""
    if H.order % G.order:
        return None
    gens = generating_set(G)
    for images in _injective_homs(G, H, gens):
        return GroupMap(G, H, images)
    return None


def find_isomorphism(G: FinGroup, H: FinGroup) -> GroupMap | None:
    """First isomorphism ``G -> H`` in search order, or None."""
    if G.order != H.order or order_profile(G) != order_profile(H):
        return None
    return find_embedding(G, H)


def is_isomorphic(G: FinGroup, H: FinGroup) -> bool:
    return find_isomorphism(G, H) is not None


def automorphism_group(G: FinGroup, limit: int | None = None) -> PermGroup:
    """Aut(G) acting on element indices.

    A stabilizer chain with the generating set of ``G`` as base: at each
    level every element of the right order that is not yet in the orbit of
    the current base point gets one extension search; successes become
    strong generators.  The order is exact without listing all elements.
    """
    limit = cap(GROUP_ORDER) if limit is None else limit
    if G.order > limit:
        raise CapExceeded("automorphism search (group order)", limit, G.order)
    n = G.order
    gens = generating_set(G)
    plans = [_bfs_plan(G, gens[:j + 1]) for j in range(len(gens))]
    orders = G.element_orders
    strong: list[tuple[int, ...]] = []
    chain: list = [None] * len(gens)
    for i in reversed(range(len(gens))):
        b = gens[i]
        trans = _transversal(b, strong, n)
        for c in range(n):
            if c in trans or orders[c] != orders[b]:
                continue
            phi = next(_injective_homs(G, G, gens, list(gens[:i]) + [c], plans), None)
            if phi is not None:
                strong.append(phi)
                trans = _transversal(b, strong, n)
        chain[i] = (b, trans)
    return PermGroup(n, strong, chain=chain, name=f"Aut({G.name})")


def _transversal(b: int, gens: Sequence[tuple[int, ...]], n: int) -> dict[int, tuple[int, ...]]:
    trans = {b: perm_identity(n)}
    queue = [b]
    for x in queue:
        for g in gens:
            y = g[x]
            if y not in trans:
                trans[y] = compose(trans[x], g)
                queue.append(y)
    return trans


# ---------------------------------------------------------------- homogeneity

@dataclass(frozen=True)
class HomogeneityResult:
    homogeneous: bool
    # (H, K, isomorphism H -> K as label dict) that does not extend, if any
    witness: tuple[tuple[int, ...], tuple[int, ...], dict[str, str]] | None = None

    def __bool__(self):
        return self.homogeneous


def is_homogeneous(G: FinGroup, limit: int | None = None) -> HomogeneityResult:
    """Whether every isomorphism between subgroups extends to an automorphism.

    Equivalent to: Aut(G) is transitive on the subgroups of each
    isomorphism type, and the setwise stabilizer of each subgroup ``H``
    induces all of Aut(H) on it.  Stabilizers come from Schreier generators,
    so Aut(G) itself is never listed.
    """
    limit = cap(SUBGROUP_SEARCH) if limit is None else limit
    subs = all_subgroups(G, limit)
    A = automorphism_group(G)
    agens = list(A.gens)

    def image(S, g):
        return tuple(sorted(g[x] for x in S))

    # orbits of Aut(G) on subgroups, with transversal automorphisms
    seen: dict[tuple[int, ...], int] = {}
    reps: list[tuple[tuple[int, ...], dict]] = []
    for S in subs:
        if S in seen:
            continue
        trans = {S: perm_identity(G.order)}
        queue = [S]
        for T in queue:
            for g in agens:
                U = image(T, g)
                if U not in trans:
                    trans[U] = compose(trans[T], g)
                    queue.append(U)
        for T in trans:
            seen[T] = len(reps)
        reps.append((S, trans))

    groups = [subgroup_group(G, S) for S, _ in reps]
    buckets: dict[tuple, list[int]] = {}
    for i, H in enumerate(groups):
        buckets.setdefault(order_profile(H), []).append(i)
    for members in buckets.values():
        for k, a in enumerate(members):
            for c in members[k + 1:]:
                iso = find_isomorphism(groups[a], groups[c])
                if iso is not None:
                    return HomogeneityResult(False, (reps[a][0], reps[c][0], iso.as_labels()))

    for (S, trans), H in zip(reps, groups):
        if len(S) <= 2 or len(S) == G.order:
            continue
        autH = automorphism_group(H)
        pos = {x: i for i, x in enumerate(S)}
        restricted = set()
        for T, t in trans.items():
            for g in agens:
                u = trans[image(T, g)]
                s = compose(compose(t, g), _inverse(u))
                restricted.add(tuple(pos[s[x]] for x in S))
        ident = tuple(range(len(S)))
        restricted.discard(ident)
        induced, count = close_generators(sorted(restricted), len(S), cap(PERM_ELEMENTS))
        if count < autH.order:
            have = {tuple(r) for r in induced.tolist()}
            for phi in autH.element_list():
                if phi not in have:
                    labels = {G.elements[S[i]]: G.elements[S[phi[i]]] for i in range(len(S))}
                    return HomogeneityResult(False, (S, S, labels))
    return HomogeneityResult(True)


def _inverse(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


# ---------------------------------------------------------------- class C

def _prime_factorization(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    q = 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _abelian_p_type(G: FinGroup, elems: list[int], p: int) -> tuple[int, ...]:
    """Exponents ``(l_1 >= l_2 >= ...)`` of an abelian ``p``-group.

    The number of elements with ``x^(p^k) = 1`` is ``p^(sum min(l_i, k))``.
    """
    orders = G.element_orders
    logs = [0]
    k = 1
    while logs[-1] < round(math.log(len(elems), p)):
        c = sum(1 for x in elems if (p ** k) % orders[x] == 0)
        logs.append(round(math.log(c, p)))
        k += 1
    at_least = [logs[i] - logs[i - 1] for i in range(1, len(logs))]  # #{l_i >= i}
    parts = []
    for i, cnt in enumerate(at_least, start=1):
        nxt = at_least[i] if i < len(at_least) else 0
        parts.extend([i] * (cnt - nxt))
    return tuple(sorted(parts, reverse=True))


@dataclass(frozen=True)
class ClassCRecord:
    in_C: bool
    in_Cstar: bool
    nilpotent: bool
    odd_part: tuple[int, ...] | None  # invariant factors d1 | d2 | ...; None if nonabelian
    two_part: str
    overgroup: GroupSpec | None = None

    def to_json(self) -> dict:
        return {
            "in_C": self.in_C,
            "in_Cstar": self.in_Cstar,
            "nilpotent": self.nilpotent,
            "odd_part": list(self.odd_part) if self.odd_part is not None else None,
            "two_part": self.two_part,
            "overgroup": str(self.overgroup) if self.overgroup is not None else None,
        }


ALLOWED_TWO_PARTS = ("trivial", "cyclic", "elementary-abelian", "Q8")


def classify_class_C(G: FinGroup) -> ClassCRecord:
    """Membership in the class of ``U x V`` groups and in its subgroup closure."""
    n = G.order
    fac = _prime_factorization(n)
    orders = G.element_orders
    pelems: dict[int, list[int]] = {}
    nilpotent = True
    for p, a in fac.items():
        pel = [x for x in range(n) if _is_power_of(orders[x], p)]
        pelems[p] = pel
        if len(pel) != p ** a:
            nilpotent = False
    if not nilpotent:
        return ClassCRecord(False, False, False, None, "other")

    rows = G.rows

    def commutative(el):
        return all(rows[a][b] == rows[b][a] for a in el for b in el)

    odd_types: dict[int, tuple[int, ...]] = {}
    odd_abelian = True
    for p, el in pelems.items():
        if p == 2:
            continue
        if not commutative(el):
            odd_abelian = False
            break
        odd_types[p] = _abelian_p_type(G, el, p)

    two = pelems.get(2, [G.identity])
    if len(two) == 1:
        tag, vspec = "trivial", ()
    elif commutative(two):
        lam = _abelian_p_type(G, two, 2)
        if len(lam) == 1:
            tag, vspec = "cyclic", (Cyclic(2 ** lam[0]),)
        elif all(x == 1 for x in lam):
            tag, vspec = "elementary-abelian", (CyclicPower(2, len(lam)),)
        else:
            tag, vspec = "other", ()
    elif len(two) == 8 and sum(1 for x in two if orders[x] == 2) == 1:
        tag, vspec = "Q8", (Quaternion8(),)
    else:
        tag, vspec = "other", ()

    if not odd_abelian:
        return ClassCRecord(False, False, True, None, tag)

    invariants = _invariant_factors(odd_types)
    ranks = {p: len(lam) for p, lam in odd_types.items()}
    homocyclic = len(set(ranks.values())) <= 1 and all(len(set(lam)) == 1 for lam in odd_types.values())
    ok_two = tag in ALLOWED_TWO_PARTS
    in_C = homocyclic and ok_two
    overgroup = None
    in_Cstar = False
    if ok_two:
        rank = max(ranks.values(), default=0)
        expU = math.prod(p ** lam[0] for p, lam in odd_types.items()) if odd_types else 1
        uspec: tuple = ()
        if rank == 1:
            uspec = (Cyclic(expU),)
        elif rank > 1:
            uspec = (CyclicPower(expU, rank),)
        overgroup = GroupSpec(uspec + vspec)
        in_Cstar = overgroup.order <= cap(GROUP_ORDER) and \
            find_embedding(G, build_group(overgroup)) is not None
        if not in_Cstar:
            overgroup = None
    return ClassCRecord(in_C, in_Cstar, True, invariants, tag, overgroup)


def _is_power_of(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1


def _invariant_factors(types: dict[int, tuple[int, ...]]) -> tuple[int, ...]:
    rank = max((len(lam) for lam in types.values()), default=0)
    out = []
    for i in range(rank):
        d = 1
        for p, lam in types.items():
            # smallest factors first: the i-th uses the (rank-1-i)-th largest part
            j = rank - 1 - i
            if j < len(lam):
                d *= p ** lam[j]
        out.append(d)
    return tuple(out)


# ---------------------------------------------------------------- serialization

def dump_table(G: FinGroup) -> str:
    lines = [str(G.order)]
    lines += [" ".join(map(str, row)) for row in G.rows]
    lines += list(G.elements)
    return "\n".join(lines) + "\n"


def load_table(text: str, name: str = "") -> FinGroup:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    n = int(lines[0])
    table = np.array([[int(t) for t in ln.split()] for ln in lines[1:n + 1]], dtype=np.int32)
    labels = tuple(lines[n + 1:2 * n + 1])
    ident = [i for i in range(n) if (table[i] == np.arange(n)).all()]
    if len(ident) != 1:
        raise ValueError("table has no unique identity row")
    return FinGroup(n, labels, table, ident[0], name)
