"""Exact closed-walk counts on trees.

Two independent engines produce the per-vertex vector ``C(k; T)``:

* :func:`closed_walks_power` propagates indicator vectors through the
  adjacency lists (the diagonal of ``A^k``);
* :func:`walk_vector_by_recurrence` builds the same numbers from subtree
  ("hat") counts and edge counts with the convolution recurrences.

:func:`closed_walks_bruteforce` enumerates walks one by one and is only meant
as an oracle for small cases. Every count is a Python ``int``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import NotAnEdge, NotParentChild, TooLarge
from .treekit import Forest, RootedView

__all__ = [
    "WalkVector",
    "LevelCensus",
    "closed_walks_power",
    "closed_walks_bruteforce",
    "edge_closed_walks",
    "hat_closed_walks",
    "hat_edge_closed_walks",
    "level_census",
    "hat_tables",
    "walk_vector_by_recurrence",
    "spectral_moment",
    "spectral_moments",
    "estrada_index",
    "estrada_series",
    "estrada_index_eigen",
]

BRUTEFORCE_LIMIT = 10**7
CENSUS_MAX_K = 12


@dataclass(frozen=True)
class WalkVector:
    k: int
    counts: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, v: int) -> int:
        return self.counts[v]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def sorted_desc(self) -> list[int]:
        return sorted(self.counts, reverse=True)

    def to_json(self) -> dict:
        return {"k": self.k, "counts": [str(c) for c in self.counts]}

    @classmethod
    def from_json(cls, obj: dict) -> "WalkVector":
        return cls(int(obj["k"]), tuple(int(c) for c in obj["counts"]))

    def to_csv(self) -> str:
        return "vertex,count\n" + "".join(f"{v},{c}\n" for v, c in enumerate(self.counts))


@dataclass(frozen=True)
class LevelCensus:
    """Closed walks from ``start`` grouped by their level sequence."""

    start: int
    k: int
    counts: dict[tuple[int, ...], int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def _step(adj: Sequence[Sequence[int]], x: list[int]) -> list[int]:
    y = [0] * len(x)
    for u, xu in enumerate(x):
        if xu:
            for w in adj[u]:
                y[w] += xu
    return y


def closed_walks_power(t: Forest, k: int) -> WalkVector:
    """Diagonal of ``A^k``.

    For each source ``v`` the vector ``x = A^h e_v`` with ``h = k // 2`` is
    built by sparse propagation; since ``A`` is symmetric the diagonal entry
    is ``x . x`` for even ``k`` and ``x . (A x)`` for odd ``k``.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    adj = t.adjacency
    h = k // 2
    out = []
    for v in range(t.n):
        x = [0] * t.n
        x[v] = 1
        for _ in range(h):
            x = _step(adj, x)
        y = x if k % 2 == 0 else _step(adj, x)
        out.append(sum(a * b for a, b in zip(x, y)))
    return WalkVector(k, tuple(out))


def _distances_from(t: Forest, v: int) -> list[int]:
    dist = [-1] * t.n
    dist[v] = 0
    frontier = [v]
    while frontier:
        nxt = []
        for u in frontier:
            for w in t.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def closed_walks_bruteforce(t: Forest, k: int, v: int, limit: int = BRUTEFORCE_LIMIT) -> int:
    """Count closed ``k``-walks at ``v`` by listing them one step at a time.

    Branches that can no longer get back to ``v`` in the remaining steps are
    cut. Raises :class:`TooLarge` once more than ``limit`` extensions are made.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    dist = _distances_from(t, v)
    adj = t.adjacency
    count = 0
    work = 0
    stack = [(v, 0)]
    while stack:
        u, steps = stack.pop()
        if steps == k:
            count += u == v
            continue
        left = k - steps - 1
        for w in adj[u]:
            if 0 <= dist[w] <= left:
                work += 1
                if work > limit:
                    raise TooLarge(f"more than {limit} walk extensions")
                stack.append((w, steps + 1))
    return count


def edge_closed_walks(t: Forest, v: int, w: int, k: int) -> int:
    """Closed ``k``-walks at ``v`` whose first step goes to ``w``."""
    if not t.has_edge(v, w):
        raise NotAnEdge(f"({v},{w}) is not an edge")
    if k < 1:
        return 0
    x = [0] * t.n
    x[w] = 1
    for _ in range(k - 1):
        x = _step(t.adjacency, x)
    return x[v]


def _restricted_walks(rv: RootedView, start: int, k: int, first: int | None = None) -> int:
    """Closed walks whose level sequence avoids the pair ``(0, 0)`` and, for
    a start at level ``i > 0``, the pair ``(i, i - 1)``."""
    lev = rv.level
    i = lev[start]
    adj = rv.base.adjacency

    def allowed(u: int, w: int) -> bool:
        if lev[u] == 0 and lev[w] == 0:
            return False
        return not (i > 0 and lev[u] == i and lev[w] == i - 1)

    x = [0] * rv.base.n
    if first is None:
        x[start] = 1
        steps = k
    else:
        if k < 1:
            return 0
        x[first] = 1
        steps = k - 1
    for _ in range(steps):
        y = [0] * len(x)
        for u, xu in enumerate(x):
            if xu:
                for w in adj[u]:
                    if allowed(u, w):
                        y[w] += xu
        x = y
    return x[start]


def hat_closed_walks(rv: RootedView, v: int, k: int) -> int:
    """Closed ``k``-walks at ``v`` that never step from level ``h(v)`` up to
    level ``h(v) - 1`` and never use a level-0 to level-0 edge."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return _restricted_walks(rv, v, k)


def hat_edge_closed_walks(rv: RootedView, parent: int, child: int, k: int) -> int:
    """Like :func:`hat_closed_walks` from ``parent``, first step to ``child``."""
    if rv.parent[child] != parent:
        raise NotParentChild(f"{parent} is not the parent of {child}")
    if k < 0:
        raise ValueError("k must be >= 0")
    return _restricted_walks(rv, parent, k, first=child)


def level_census(rv: RootedView, v: int, k: int, max_k: int = CENSUS_MAX_K) -> LevelCensus:
    """Closed ``k``-walks at ``v`` grouped by level sequence ``(i_1, ..., i_{k+1})``."""
    if k > max_k:
        raise TooLarge(f"k={k} exceeds census guard {max_k}")
    lev = rv.level
    adj = rv.base.adjacency
    states: dict[tuple[int, tuple[int, ...]], int] = {(v, (lev[v],)): 1}
    for _ in range(k):
        nxt: dict[tuple[int, tuple[int, ...]], int] = {}
        for (u, seq), c in states.items():
            for w in adj[u]:
                key = (w, seq + (lev[w],))
                nxt[key] = nxt.get(key, 0) + c
        states = nxt
    counts: dict[tuple[int, ...], int] = {}
    for (u, seq), c in states.items():
        if u == v:
            counts[seq] = counts.get(seq, 0) + c
    return LevelCensus(v, k, counts)


def _bottom_up(rv: RootedView) -> list[int]:
    return sorted(range(rv.base.n), key=lambda u: -rv.level[u])


def hat_tables(rv: RootedView, m: int) -> tuple[list[list[int]], list[list[int]]]:
    """Subtree counts for lengths ``0, 2, ..., 2m``.

    Returns ``(hat, hat_edge)`` where ``hat[v][t]`` counts closed ``2t``-walks
    at ``v`` inside the subtree of ``v`` and ``hat_edge[c][t]`` counts those
    at ``parent(c)`` inside the parent's subtree that start with the step to
    ``c``. A walk of the latter kind splits at its first return to the
    parent::

        hat_edge[c][t+1] = sum_{s=0..t} hat[c][s] * hat[parent(c)][t-s]
    """
    n = rv.base.n
    hat = [[1] + [0] * m for _ in range(n)]
    hat_edge = [[0] * (m + 1) for _ in range(n)]
    for v in _bottom_up(rv):
        kids = rv.children[v]
        hv = hat[v]
        for T in range(1, m + 1):
            total = 0
            for c in kids:
                hc = hat[c]
                val = sum(hc[s] * hv[T - 1 - s] for s in range(T))
                hat_edge[c][T] = val
                total += val
            hv[T] = total
    return hat, hat_edge


def walk_vector_by_recurrence(rv: RootedView, k: int) -> WalkVector:
    """``C(k; T)`` for every vertex through the level decomposition.

    With ``up(v)`` the neighbour of ``v`` towards the root (the partner root
    for the two roots of an edge-rooted view) and ``E_v = C_{v,up(v)}``:

    * ``C_v(2T) = sum_{t<T} hat_v(2t) E_v(2T-2t) + hat_v(2T)``;
    * for a child ``c`` of ``p``, ``E_c = C_{p,c}`` splits at the first step
      from ``p`` to ``up(p)``:
      ``E_c(2T) = sum_{0<t<T} hat_edge_c(2t) E_p(2T-2t) + hat_edge_c(2T)``;
    * for an edge root ``a`` with partner ``b``:
      ``E_a(2T) = sum_{s<T} hat_b(2s) C_a(2T-2-2s)``.

    Odd ``k`` gives the zero vector.
    """
    n = rv.base.n
    if k < 0:
        raise ValueError("k must be >= 0")
    if k % 2:
        return WalkVector(k, (0,) * n)
    m = k // 2
    hat, hat_edge = hat_tables(rv, m)
    up_edge = [[0] * (m + 1) for _ in range(n)]
    full = [[0] * (m + 1) for _ in range(n)]

    def close(v: int, T: int) -> int:
        hv, ev = hat[v], up_edge[v]
        return sum(hv[t] * ev[T - t] for t in range(T)) + hv[T]

    if rv.edge_rooted:
        a, b = rv.roots
        for T in range(m + 1):
            if T:
                up_edge[a][T] = sum(hat[b][s] * full[a][T - 1 - s] for s in range(T))
                up_edge[b][T] = sum(hat[a][s] * full[b][T - 1 - s] for s in range(T))
            full[a][T] = close(a, T)
            full[b][T] = close(b, T)
    else:
        for r in rv.roots:
            full[r] = list(hat[r])

    for v in sorted(range(n), key=lambda u: rv.level[u]):
        p = rv.parent[v]
        if p is None:
            continue
        he, ep = hat_edge[v], up_edge[p]
        ev = up_edge[v]
        for T in range(1, m + 1):
            ev[T] = sum(he[t] * ep[T - t] for t in range(1, T)) + he[T]
        for T in range(m + 1):
            full[v][T] = close(v, T)
    return WalkVector(k, tuple(full[v][m] for v in range(n)))


def spectral_moment(t: Forest, k: int) -> int:
    """Total number of closed ``k``-walks, i.e. ``trace(A^k)``."""
    return closed_walks_power(t, k).total


def spectral_moments(t: Forest, kmax: int) -> list[int]:
    """``[M_0, M_1, ..., M_kmax]`` from a single propagation pass per source."""
    moments = [0] * (kmax + 1)
    for v in range(t.n):
        x = [0] * t.n
        x[v] = 1
        moments[0] += 1
        for k in range(1, kmax + 1):
            x = _step(t.adjacency, x)
            moments[k] += x[v]
    return moments


def _radius_bound(t: Forest) -> float:
    dmax = max(t.degrees) if t.n > 1 else 0
    if dmax <= 1:
        return float(dmax)
    return 2.0 * math.sqrt(dmax - 1)


def estrada_series(t: Forest, tol: float) -> tuple[float, int, float]:
    """Truncated power series for the Estrada index.

    Sums ``M_k / k!`` for ``k <= K`` with the smallest ``K`` whose tail bound
    ``n r^(K+1) / (K+1)! / (1 - r/(K+2))`` is below ``tol``, where ``r`` is
    ``2 sqrt(maxdeg - 1)`` (an upper bound on the spectral radius of a tree).
    Returns ``(value, K, tail_bound)``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    r = _radius_bound(t)
    K = 0
    while True:
        if K + 2 > r:
            bound = t.n * r ** (K + 1) / math.factorial(K + 1) / (1 - r / (K + 2))
            if bound < tol:
                break
        K += 1
    moments = spectral_moments(t, K)
    value = sum(Fraction(mk, math.factorial(k)) for k, mk in enumerate(moments))
    return float(value), K, bound


def estrada_index(t: Forest, tol: float = 1e-12) -> float:
    """Estrada index ``sum_i exp(lambda_i)`` to within ``tol``."""
    return estrada_series(t, tol)[0]


def estrada_index_eigen(t: Forest) -> float:
    """Estrada index from the adjacency eigenvalues (numpy, small ``n`` only)."""
    if t.n > 64:
        raise TooLarge("the eigenvalue path is limited to n <= 64")
    a = np.zeros((t.n, t.n))
    for u, v in t.edges:
        a[u, v] = a[v, u] = 1.0
    return float(np.exp(np.linalg.eigvalsh(a)).sum())
