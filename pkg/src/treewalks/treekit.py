"""Trees, rooted views, greedy constructions, enumeration and edge shifts.

Vertices are the integers ``0..n-1``. Greedy trees are labelled so that the
vertex label *is* its position in the BFS-ordering, hence vertex ``i`` of
``build_greedy_tree(pi)`` has degree ``pi[i]``.
"""

from __future__ import annotations

import heapq
import json
import math
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

from .degseq import DegreeSequence, LeveledDegreeSequence
from .errors import (
    InconsistentLevels,
    InvalidTree,
    NotABranchEdge,
    NotSameLevel,
    TooLarge,
    WouldDisconnect,
)

__all__ = [
    "Forest",
    "Tree",
    "RootedView",
    "BfsOrdering",
    "build_greedy_tree",
    "build_level_greedy_forest",
    "is_bfs_ordering",
    "find_bfs_ordering",
    "is_level_greedy",
    "prufer_decode",
    "multiset_permutations",
    "labeled_tree_count",
    "enumerate_trees",
    "canonical_form",
    "rooted_canonical_forms",
    "edge_shift",
    "root_views",
    "path_tree",
    "star_tree",
    "leveled_degree_sequence",
]

DEFAULT_MAX_N = 12


@dataclass(frozen=True, eq=False)
class Forest:
    """Simple acyclic graph on vertices ``0..n-1``."""

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidTree("a forest needs at least one vertex")
        norm = []
        seen = set()
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            u, v = int(u), int(v)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidTree(f"edge ({u},{v}) out of range for n={self.n}")
            if u == v:
                raise InvalidTree(f"self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InvalidTree(f"parallel edge {key}")
            seen.add(key)
            norm.append(key)
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))
        if len(self.components()) != self.n - len(norm):
            raise InvalidTree("graph contains a cycle")

    def __eq__(self, other):
        if not isinstance(other, Forest):
            return NotImplemented
        return self.n == other.n and sorted(self.edges) == sorted(other.edges)

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.edges))))

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees, reverse=True))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [], [s]
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def relabel(self, perm: Sequence[int]):
        """Return a copy with vertex ``v`` renamed ``perm[v]``."""
        return type(self)(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    def to_text(self) -> str:
        lines = [str(self.n)] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_text(cls, text: str):
        rows = [r.split() for r in text.strip().splitlines() if r.strip()]
        if not rows:
            raise InvalidTree("empty tree text")
        n = int(rows[0][0])
        try:
            edges = tuple((int(r[0]), int(r[1])) for r in rows[1:])
        except (IndexError, ValueError) as exc:
            raise InvalidTree("edge lines must read 'u v'") from exc
        return cls(n, edges)

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["n"]), tuple((int(u), int(v)) for u, v in obj["edges"]))


class Tree(Forest):
    """Connected forest; exactly ``n - 1`` edges."""

    def __post_init__(self):
        super().__post_init__()
        if len(self.edges) != self.n - 1:
            raise InvalidTree(f"a tree on {self.n} vertices has {self.n - 1} edges, got {len(self.edges)}")


@dataclass(frozen=True, eq=False)
class RootedView:
    """A forest together with a root set and the induced levels and parents.

    ``edge_rooted`` views have two adjacent roots, both at level 0; the root
    edge is not a parent link, so both roots have parent ``None``.
    """

    base: Forest
    roots: tuple[int, ...]
    edge_rooted: bool
    level: tuple[int, ...] = field(init=False)
    parent: tuple[int | None, ...] = field(init=False)
    children: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        f = self.base
        roots = tuple(self.roots)
        if len(set(roots)) != len(roots) or not roots:
            raise InvalidTree(f"bad root set {roots}")
        if self.edge_rooted:
            if len(roots) != 2 or not f.has_edge(*roots):
                raise InvalidTree("edge-rooted views need two adjacent roots")
        else:
            comp_of = {}
            for ci, comp in enumerate(f.components()):
                for v in comp:
                    comp_of[v] = ci
            hit = [comp_of[r] for r in roots]
            if len(set(hit)) != len(hit) or len(hit) != len(f.components()):
                raise InvalidTree("vertex-rooted views need exactly one root per component")
        level = [-1] * f.n
        parent: list[int | None] = [None] * f.n
        queue = deque()
        for r in roots:
            level[r] = 0
            queue.append(r)
        while queue:
            u = queue.popleft()
            for w in f.adjacency[u]:
                if level[w] < 0:
                    level[w] = level[u] + 1
                    parent[w] = u
                    queue.append(w)
        if min(level) < 0:
            raise InvalidTree("roots do not reach every vertex")
        kids: list[list[int]] = [[] for _ in range(f.n)]
        for v, p in enumerate(parent):
            if p is not None:
                kids[p].append(v)
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "level", tuple(level))
        object.__setattr__(self, "parent", tuple(parent))
        object.__setattr__(self, "children", tuple(tuple(k) for k in kids))

    @classmethod
    def at_vertex(cls, base: Forest, *roots: int) -> "RootedView":
        return cls(base, tuple(roots), False)

    @classmethod
    def at_edge(cls, base: Forest, a: int, b: int) -> "RootedView":
        return cls(base, (a, b), True)

    @property
    def depth(self) -> int:
        return max(self.level) + 1

    def level_sets(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.depth)]
        for v, h in enumerate(self.level):
            out[h].append(v)
        return out

    def up(self, v: int) -> int | None:
        """Neighbour of ``v`` on the root side: its parent, or the partner
        root for the roots of an edge-rooted view."""
        if self.parent[v] is not None:
            return self.parent[v]
        if self.edge_rooted:
            a, b = self.roots
            return b if v == a else a
        return None

    def subtree(self, v: int) -> list[int]:
        out, stack = [], [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(self.children[u])
        return out

    def describe(self) -> dict:
        return {"roots": list(self.roots), "edge_rooted": self.edge_rooted}


@dataclass(frozen=True)
class BfsOrdering:
    """A BFS-ordering of a rooted view, stored level by level."""

    order: tuple[int, ...]
    view: RootedView

    @property
    def levels(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.view.depth)]
        for v in self.order:
            out[self.view.level[v]].append(v)
        return out

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


def _assemble(levels: Sequence[Sequence[int]], edge_rooted: bool):
    """Lay out a level greedy forest from nonincreasing per-level degrees.

    Vertices are numbered level by level; children of earlier parents get
    earlier (and, by sortedness, larger-degree) slots.
    """
    edges = []
    start = [0]
    for lv in levels:
        start.append(start[-1] + len(lv))
    for i, lv in enumerate(levels[:-1]):
        nxt = start[i + 1]
        for j, d in enumerate(lv):
            v = start[i] + j
            k = d if (i == 0 and not edge_rooted) else d - 1
            for c in range(nxt, nxt + k):
                edges.append((v, c))
            nxt += k
    n = start[-1]
    if edge_rooted:
        edges.append((0, 1))
    return n, edges


def build_greedy_tree(pi: DegreeSequence) -> tuple[Tree, BfsOrdering]:
    """The greedy tree of ``pi`` and its BFS-ordering (the identity).

    The root takes ``pi[0]``; the remaining degrees fill the levels in
    nonincreasing order, left to right.
    """
    degs = list(pi.degrees)
    levels = [degs[:1]]
    pos, slots = 1, degs[0]
    while pos < len(degs):
        lv = degs[pos:pos + slots]
        levels.append(lv)
        pos += slots
        slots = sum(d - 1 for d in lv)
    n, edges = _assemble(levels, edge_rooted=False)
    tree = Tree(n, tuple(edges))
    view = RootedView.at_vertex(tree, 0)
    return tree, BfsOrdering(tuple(range(n)), view)


def build_level_greedy_forest(lds: LeveledDegreeSequence) -> tuple[Forest, BfsOrdering]:
    """Realise ``lds`` as a level greedy forest (a tree if edge-rooted)."""
    n, edges = _assemble(lds.levels, lds.edge_rooted)
    cls = Tree if lds.edge_rooted or len(lds.levels[0]) == 1 else Forest
    forest = cls(n, tuple(edges))
    if lds.edge_rooted:
        view = RootedView.at_edge(forest, 0, 1)
    else:
        view = RootedView.at_vertex(forest, *range(len(lds.levels[0])))
    if forest.degrees != tuple(d for lv in lds.levels for d in lv):
        raise InconsistentLevels("levels cannot be realised")
    return forest, BfsOrdering(tuple(range(n)), view)


def leveled_degree_sequence(rv: RootedView) -> LeveledDegreeSequence:
    degs = rv.base.degrees
    return LeveledDegreeSequence(
        tuple(tuple(degs[v] for v in lv) for lv in rv.level_sets()), rv.edge_rooted
    )


def is_bfs_ordering(t: Forest, rv: RootedView, order: Sequence[int]) -> bool:
    """Check both BFS-ordering conditions for vertices sharing a level:
    degrees are nonincreasing along the order, and the parents of
    same-level vertices appear in the same relative order (siblings share a
    parent, so the comparison is non-strict)."""
    if sorted(order) != list(range(t.n)) or rv.base.n != t.n:
        return False
    pos = {v: i for i, v in enumerate(order)}
    deg = t.degrees
    for lv in rv.level_sets():
        ranked = sorted(lv, key=pos.__getitem__)
        for u, v in zip(ranked, ranked[1:]):
            if deg[u] < deg[v]:
                return False
            pu, pv = rv.parent[u], rv.parent[v]
            if pu is not None and pv is not None and pos[pu] > pos[pv]:
                return False
    return True


def rooted_canonical_forms(rv: RootedView) -> list[str]:
    """AHU string of the subtree hanging below every vertex of ``rv``."""
    forms = [""] * rv.base.n
    for v in sorted(range(rv.base.n), key=lambda u: -rv.level[u]):
        forms[v] = "(" + "".join(sorted(forms[c] for c in rv.children[v])) + ")"
    return forms


def multiset_permutations(items: Sequence) -> Iterator[tuple]:
    """Distinct permutations of ``items`` in lexicographic order."""
    a = sorted(items)
    n = len(a)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])


def _block_orders(block: list[int], forms: list[str]) -> Iterator[list[int]]:
    # permuting isomorphic siblings never changes feasibility
    by_form: dict[str, list[int]] = {}
    for v in block:
        by_form.setdefault(forms[v], []).append(v)
    for word in multiset_permutations([forms[v] for v in block]):
        pools = {k: list(vs) for k, vs in by_form.items()}
        yield [pools[k].pop(0) for k in word]


def _group_orders(group: list[int], deg: Sequence[int], forms: list[str]) -> Iterator[list[int]]:
    group = sorted(group, key=lambda v: -deg[v])
    blocks: list[list[int]] = []
    for v in group:
        if blocks and deg[blocks[-1][0]] == deg[v]:
            blocks[-1].append(v)
        else:
            blocks.append([v])
    for choice in product(*(list(_block_orders(b, forms)) for b in blocks)):
        yield [v for b in choice for v in b]


def find_bfs_ordering(rv: RootedView) -> BfsOrdering | None:
    """Search for a BFS-ordering of ``rv``; ``None`` if the rooted forest is
    not level greedy.

    Level ``i + 1`` is forced up to permutations of equal-degree siblings,
    so the search backtracks over those choices only.
    """
    deg = rv.base.degrees
    forms = rooted_canonical_forms(rv)
    depth = rv.depth

    def nonincreasing(seq: list[int]) -> bool:
        return all(deg[a] >= deg[b] for a, b in zip(seq, seq[1:]))

    def extend(ordered: list[list[int]]) -> list[list[int]] | None:
        if len(ordered) == depth:
            return ordered
        groups = [list(rv.children[p]) for p in ordered[-1]]
        for choice in product(*(list(_group_orders(g, deg, forms)) for g in groups if g)):
            nxt = [v for g in choice for v in g]
            if nonincreasing(nxt):
                done = extend(ordered + [nxt])
                if done is not None:
                    return done
        return None

    for first in _group_orders(list(rv.roots), deg, forms):
        found = extend([first])
        if found is not None:
            return BfsOrdering(tuple(v for lv in found for v in lv), rv)
    return None


def is_level_greedy(rv: RootedView) -> bool:
    return find_bfs_ordering(rv) is not None


def prufer_decode(word: Sequence[int], n: int) -> Tree:
    """Labelled tree on ``n`` vertices encoded by a Prüfer word of length ``n - 2``."""
    if n == 2:
        return Tree(2, ((0, 1),))
    if len(word) != n - 2:
        raise InvalidTree(f"Prüfer word for n={n} must have length {n - 2}")
    remaining = [1] * n
    for x in word:
        remaining[x] += 1
    edges = []
    leaves = [v for v in range(n) if remaining[v] == 1]
    heapq.heapify(leaves)
    for x in word:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        remaining[x] -= 1
        if remaining[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return Tree(n, tuple(edges))


def labeled_tree_count(pi: DegreeSequence) -> int:
    """``(n-2)! / prod (d_i - 1)!``: labelled trees where vertex ``i`` has degree ``pi[i]``."""
    out = math.factorial(pi.n - 2)
    for d in pi:
        out //= math.factorial(d - 1)
    return out


def enumerate_trees(pi: DegreeSequence, mode: str = "unlabeled", max_n: int = DEFAULT_MAX_N) -> Iterator[Tree]:
    """Stream the trees with degree sequence ``pi``.

    ``labeled`` yields one tree per Prüfer word in which vertex ``i`` occurs
    ``pi[i] - 1`` times. ``unlabeled`` keeps the first labelled tree of each
    isomorphism class.
    """
    if pi.n > max_n:
        raise TooLarge(f"n={pi.n} exceeds the enumeration guard {max_n}")
    if mode not in ("labeled", "unlabeled"):
        raise ValueError(f"mode must be 'labeled' or 'unlabeled', got {mode!r}")
    n = pi.n
    letters = [v for v, d in enumerate(pi.degrees) for _ in range(d - 1)]
    seen: set[str] = set()
    for word in multiset_permutations(letters):
        t = prufer_decode(word, n)
        if mode == "labeled":
            yield t
            continue
        key = canonical_form(t)
        if key not in seen:
            seen.add(key)
            yield t


def _centers(t: Forest) -> list[int]:
    deg = list(t.degrees)
    layer = [v for v in range(t.n) if deg[v] <= 1]
    left = t.n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in t.adjacency[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def canonical_form(t: Tree) -> str:
    """Isomorphism invariant string of a free tree.

    The tree is rooted at its center; a bicentral tree is rooted at its
    central edge. Each rooted subtree encodes as ``"("`` + sorted child
    codes + ``")"``. The result is ``"V"`` + code for a central vertex and
    ``"E"`` + the two side codes in sorted order for a central edge.
    """
    if t.n == 1:
        return "V()"
    c = _centers(t)
    if len(c) == 1:
        return "V" + rooted_canonical_forms(RootedView.at_vertex(t, c[0]))[c[0]]
    rv = RootedView.at_edge(t, c[0], c[1])
    forms = rooted_canonical_forms(rv)
    return "E" + "".join(sorted((forms[c[0]], forms[c[1]])))


def edge_shift(g: Tree, rv: RootedView, x: int, x1: int, x_prime: int) -> Tree:
    """Detach the branch hanging below edge ``x x1`` and hang it from ``x_prime``.

    ``x1`` must be a child of ``x`` in ``rv`` and ``x``, ``x_prime`` must share
    a level. The degree of ``x`` drops by one, that of ``x_prime`` rises by one.
    """
    if not g.has_edge(x, x1) or rv.parent[x1] != x:
        raise NotABranchEdge(f"{x1} is not a child of {x} in this rooted view")
    if rv.level[x] != rv.level[x_prime]:
        raise NotSameLevel(f"levels differ: {rv.level[x]} vs {rv.level[x_prime]}")
    if x == x_prime:
        return g
    if x_prime in rv.subtree(x1):
        raise WouldDisconnect(f"{x_prime} lies in the moved branch")
    edges = [e for e in g.edges if e != (min(x, x1), max(x, x1))]
    edges.append((x_prime, x1))
    try:
        return Tree(g.n, tuple(edges))
    except InvalidTree as exc:
        raise WouldDisconnect(str(exc)) from exc


def root_views(t: Tree) -> Iterator[RootedView]:
    """All ``n`` vertex-rooted views, then all ``n - 1`` edge-rooted views."""
    for v in range(t.n):
        yield RootedView.at_vertex(t, v)
    for a, b in t.edges:
        yield RootedView.at_edge(t, a, b)


def path_tree(n: int) -> Tree:
    return Tree(n, tuple((i, i + 1) for i in range(n - 1)))


def star_tree(n: int) -> Tree:
    return Tree(n, tuple((0, i) for i in range(1, n)))
