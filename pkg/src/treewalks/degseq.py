"""Tree degree sequences, majorization and the corollary factory sequences.

All sequences are stored nonincreasing. Callers may pass any order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Iterator, Sequence

from .errors import (
    InconsistentLevels,
    InvalidParameter,
    LengthMismatch,
    NonPositiveEntry,
    NotComparable,
    SumMismatch,
    TooSmall,
)

__all__ = [
    "DegreeSequence",
    "LeveledDegreeSequence",
    "Relation",
    "MajorizationVerdict",
    "validate_tree_degseq",
    "parse_degseq",
    "compare_majorization",
    "weakly_majorized",
    "majorization_chain",
    "corollary_sequence",
    "tree_degree_sequences",
]


@dataclass(frozen=True)
class DegreeSequence:
    """Validated degree sequence of a tree on ``n`` vertices."""

    degrees: tuple[int, ...]

    def __post_init__(self):
        d = self.degrees
        if len(d) < 2:
            raise TooSmall(f"a tree degree sequence needs n >= 2, got n={len(d)}")
        if any(x < 1 for x in d):
            raise NonPositiveEntry(f"entries must be >= 1: {d}")
        if any(a < b for a, b in zip(d, d[1:])):
            raise ValueError(f"degrees must be nonincreasing: {d}")
        if sum(d) != 2 * len(d) - 2:
            raise SumMismatch(f"sum {sum(d)} != 2n-2 = {2 * len(d) - 2}")

    @property
    def n(self) -> int:
        return len(self.degrees)

    def __iter__(self) -> Iterator[int]:
        return iter(self.degrees)

    def __len__(self) -> int:
        return len(self.degrees)

    def __getitem__(self, i):
        return self.degrees[i]

    def __str__(self) -> str:
        return ",".join(map(str, self.degrees))

    def to_json(self) -> list[int]:
        return list(self.degrees)


def validate_tree_degseq(raw: Iterable[int]) -> DegreeSequence:
    """Sort ``raw`` nonincreasing and check it is a tree degree sequence.

    Every sequence of ``n >= 2`` positive integers summing to ``2n - 2`` is
    realised by some tree, so no further graphicality test is needed.

    Raises:
        TooSmall: fewer than two entries.
        NonPositiveEntry: some entry is < 1.
        SumMismatch: the entries do not sum to ``2n - 2``.
    """
    seq = [int(x) for x in raw]
    if len(seq) < 2:
        raise TooSmall(f"a tree degree sequence needs n >= 2, got n={len(seq)}")
    if any(x < 1 for x in seq):
        raise NonPositiveEntry(f"entries must be >= 1: {tuple(seq)}")
    if sum(seq) != 2 * len(seq) - 2:
        raise SumMismatch(f"sum {sum(seq)} != 2n-2 = {2 * len(seq) - 2}")
    return DegreeSequence(tuple(sorted(seq, reverse=True)))


def parse_degseq(text: str) -> DegreeSequence:
    """Parse the comma-separated text form, e.g. ``"3,1,1,1"``."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    try:
        values = [int(p) for p in parts]
    except ValueError as exc:
        raise InvalidParameter(f"not a comma-separated integer list: {text!r}") from exc
    return validate_tree_degseq(values)


@dataclass(frozen=True)
class LeveledDegreeSequence:
    """Per-level degree lists ``V_0, ..., V_{l-1}`` of a rooted forest.

    For a vertex-rooted forest every entry of ``V_0`` is the root of its own
    component and all its incidences go to children. For an edge-rooted
    forest ``V_0`` has exactly two entries joined by the root edge, so each
    root has ``degree - 1`` children. Below level 0 every vertex has
    ``degree - 1`` children.
    """

    levels: tuple[tuple[int, ...], ...]
    edge_rooted: bool = False

    def __post_init__(self):
        levels = tuple(tuple(sorted(lv, reverse=True)) for lv in self.levels)
        object.__setattr__(self, "levels", levels)
        if not levels or not levels[0]:
            raise InconsistentLevels("level 0 must be nonempty")
        if self.edge_rooted and len(levels[0]) != 2:
            raise InconsistentLevels("edge-rooted sequences need exactly two roots")
        for i, lv in enumerate(levels):
            if any(d < 0 for d in lv):
                raise InconsistentLevels(f"negative degree at level {i}")
            want = self.child_slots(i)
            got = len(levels[i + 1]) if i + 1 < len(levels) else 0
            if any(c < 0 for c in self.children_per_vertex(i)):
                raise InconsistentLevels(f"a vertex at level {i} has too small a degree")
            if want != got:
                raise InconsistentLevels(
                    f"level {i} offers {want} child slots but level {i + 1} has {got} vertices"
                )

    def children_per_vertex(self, i: int) -> list[int]:
        if i == 0 and not self.edge_rooted:
            return list(self.levels[0])
        return [d - 1 for d in self.levels[i]]

    def child_slots(self, i: int) -> int:
        return sum(self.children_per_vertex(i))

    @property
    def n(self) -> int:
        return sum(len(lv) for lv in self.levels)


class Relation(str, enum.Enum):
    EQUAL = "equal"
    WEAK = "weak"
    WEAK_STRICT = "weak-strict"
    MAJORIZED = "majorized"
    MAJORIZED_STRICT = "majorized-strict"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class MajorizationVerdict:
    """How ``alpha`` relates to ``beta`` (is alpha weakly majorized by beta?).

    ``incomparable`` means alpha is *not* weakly majorized by beta; the index
    of the first failing prefix is then in ``first_violation_index``.
    """

    relation: Relation
    first_strict_index: int | None = None
    first_violation_index: int | None = None

    @property
    def weak(self) -> bool:
        """True when alpha is weakly majorized by beta (equality included)."""
        return self.relation is not Relation.INCOMPARABLE

    @property
    def majorized(self) -> bool:
        return self.relation in (Relation.EQUAL, Relation.MAJORIZED, Relation.MAJORIZED_STRICT)

    @property
    def strict(self) -> bool:
        return self.first_strict_index is not None and self.weak


def _sorted_padded(alpha: Sequence[int], beta: Sequence[int], pad: bool):
    a = sorted(alpha, reverse=True)
    b = sorted(beta, reverse=True)
    if len(a) != len(b):
        if not pad:
            raise LengthMismatch(f"lengths differ: {len(a)} vs {len(b)}")
        m = max(len(a), len(b))
        a += [0] * (m - len(a))
        b += [0] * (m - len(b))
    return a, b


def compare_majorization(alpha: Sequence[int], beta: Sequence[int], pad: bool = True) -> MajorizationVerdict:
    """Compare the prefix sums of ``alpha`` and ``beta`` after sorting both.

    With ``pad`` the shorter sequence is extended by zeros; with
    ``pad=False`` unequal lengths raise :class:`LengthMismatch`.
    """
    a, b = _sorted_padded(alpha, beta, pad)
    if a == b:
        return MajorizationVerdict(Relation.EQUAL)
    first_strict = None
    for t, (sa, sb) in enumerate(zip(accumulate(a), accumulate(b))):
        if sa > sb:
            return MajorizationVerdict(Relation.INCOMPARABLE, first_strict, t)
        if sa < sb and first_strict is None:
            first_strict = t
    if sum(a) == sum(b):
        rel = Relation.MAJORIZED if first_strict is None else Relation.MAJORIZED_STRICT
    else:
        rel = Relation.WEAK if first_strict is None else Relation.WEAK_STRICT
    return MajorizationVerdict(rel, first_strict, None)


def weakly_majorized(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """Shortcut for ``compare_majorization(alpha, beta).weak``."""
    return compare_majorization(alpha, beta).weak


def majorization_chain(pi: DegreeSequence, pi_prime: DegreeSequence) -> list[DegreeSequence]:
    """Unit steps from ``pi`` up to ``pi_prime`` in the majorization order.

    Each step finds the first index ``l`` and the last index ``L`` where the
    current sequence differs from the target, raises entry ``l`` by one and
    lowers entry ``L`` by one. The result starts with ``pi`` and ends with
    ``pi_prime``.
    """
    if pi.n != pi_prime.n or not compare_majorization(pi.degrees, pi_prime.degrees).majorized:
        raise NotComparable(f"{pi} is not majorized by {pi_prime}")
    chain = [pi]
    cur = list(pi.degrees)
    target = list(pi_prime.degrees)
    # every step lowers sum |cur - target| by 2
    budget = sum(abs(x - y) for x, y in zip(cur, target)) // 2
    while cur != target:
        diff = [i for i in range(len(cur)) if cur[i] != target[i]]
        lo, hi = diff[0], diff[-1]
        cur[lo] += 1
        cur[hi] -= 1
        if cur[hi] < 1:
            raise NotComparable(f"chain step produced a zero entry: {cur}")
        cur.sort(reverse=True)
        chain.append(validate_tree_degseq(cur))
        budget -= 1
        if budget < 0:
            raise RuntimeError("majorization chain failed to converge")
    return chain


def corollary_sequence(kind: str, n: int, parameter: int | None = None) -> DegreeSequence:
    """Extremal degree sequences for the star, max-degree, leaf-count and
    independence-number families.

    ``kind`` is one of ``"star"``, ``"bounded_degree"`` (parameter = maximum
    degree), ``"leaf_count"`` (parameter = number of leaves) or
    ``"independence"`` (parameter = independence number, at least ``n/2``).
    """
    if n < 2:
        raise InvalidParameter(f"n must be >= 2, got {n}")
    if kind == "star":
        return validate_tree_degseq([n - 1] + [1] * (n - 1))
    if parameter is None:
        raise InvalidParameter(f"{kind} needs a parameter")
    p = int(parameter)
    if kind == "bounded_degree":
        if n == 2:
            if p != 1:
                raise InvalidParameter("the only tree on 2 vertices has maximum degree 1")
            return validate_tree_degseq([1, 1])
        if not 2 <= p <= n - 1:
            raise InvalidParameter(f"maximum degree must lie in [2, {n - 1}], got {p}")
        # m*(p-1) + r = n-1 with 1 <= r <= p-1
        m = (n - 2) // (p - 1)
        r = n - 1 - m * (p - 1)
        return validate_tree_degseq([p] * m + [r] + [1] * (n - m - 1))
    if kind in ("leaf_count", "independence"):
        low = 2 if kind == "leaf_count" else (n + 1) // 2
        if n == 2:
            if p != (2 if kind == "leaf_count" else 1):
                raise InvalidParameter(f"invalid {kind} parameter {p} for n=2")
            return validate_tree_degseq([1, 1])
        if not max(low, 2) <= p <= n - 1:
            raise InvalidParameter(f"{kind} parameter must lie in [{max(low, 2)}, {n - 1}], got {p}")
        return validate_tree_degseq([p] + [2] * (n - p - 1) + [1] * p)
    raise InvalidParameter(f"unknown corollary kind {kind!r}")


def tree_degree_sequences(n: int) -> Iterator[DegreeSequence]:
    """All tree degree sequences on ``n`` vertices in reverse-lexicographic order.

    These are the partitions of ``2n - 2`` into exactly ``n`` positive parts,
    i.e. partitions of ``n - 2`` (the excess over 1) into at most ``n`` parts.
    """
    if n < 2:
        return

    def parts(total: int, largest: int, slots: int) -> Iterator[list[int]]:
        if total == 0:
            yield []
            return
        if slots == 0:
            return
        for first in range(min(total, largest), 0, -1):
            for rest in parts(total - first, first, slots - 1):
                yield [first] + rest

    for excess in parts(n - 2, n - 2, n):
        yield DegreeSequence(tuple(e + 1 for e in excess) + (1,) * (n - len(excess)))
