"""Exhaustive desk-scale checks of the majorization theorems.

Each check returns a :class:`VerificationReport`; a counterexample report
carries enough data (trees, walk vectors, failing prefix) to be re-checked
by hand or by :func:`recheck_witness`.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterator, Sequence

from .degseq import (
    DegreeSequence,
    compare_majorization,
    corollary_sequence,
    majorization_chain,
    tree_degree_sequences,
)
from .errors import BadPermutation, InvalidParameter, LengthMismatch, NotComparable, TooLarge
from .treekit import (
    RootedView,
    Tree,
    build_greedy_tree,
    canonical_form,
    edge_shift,
    enumerate_trees,
    find_bfs_ordering,
    root_views,
)
from .walkcount import WalkVector, closed_walks_power

__all__ = [
    "VerificationReport",
    "LemmaCheck",
    "DenseResult",
    "SuiteConfig",
    "CLAIMS",
    "verify_maintheorem1",
    "verify_maintheorem2",
    "verify_edge_shift",
    "admissible_shifts",
    "edge_shift_sweep",
    "verify_corollary",
    "strictness_search",
    "check_majorization_lemma",
    "random_lemma_instance",
    "lemma_sweep",
    "dense_r_max",
    "independence_number",
    "recheck_witness",
    "run_suite",
    "suite_exit_status",
]

DEFAULT_GUARD = 10
HARD_GUARD = 12
CLAIMS = ("thm1", "thm2", "edge_shift", "star", "bounded_degree", "leaf_count", "independence", "strict",
          "lemma")
COROLLARIES = ("star", "bounded_degree", "leaf_count", "independence")


@dataclass
class VerificationReport:
    claim: str
    params: dict
    status: str
    witness: dict | None = None
    elapsed_ms: int = 0

    @property
    def ok(self) -> bool:
        return self.status != "counterexample"

    def body(self) -> dict:
        """Report without the timing field (stable across runs)."""
        return {"claim": self.claim, "params": self.params, "status": self.status, "witness": self.witness}

    def to_json(self) -> dict:
        return {**self.body(), "elapsed_ms": self.elapsed_ms}


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = int((time.perf_counter() - self.t0) * 1000)


def _vec(w: WalkVector | Sequence[int]) -> list[str]:
    counts = w.counts if isinstance(w, WalkVector) else w
    return [str(c) for c in counts]


def _guard(n: int, max_n: int) -> None:
    if max_n > HARD_GUARD:
        raise TooLarge(f"guard {max_n} exceeds the hard limit {HARD_GUARD}")
    if n > max_n:
        raise TooLarge(f"n={n} exceeds the enumeration guard {max_n}")


def _failure(lower: Sequence[int], upper: Sequence[int]) -> int | None:
    """Index of the first failing prefix of ``lower`` weakly below ``upper``."""
    return compare_majorization(lower, upper).first_violation_index


def verify_maintheorem1(pi: DegreeSequence, k: int, max_n: int = DEFAULT_GUARD) -> VerificationReport:
    """Every tree with degree sequence ``pi`` has its walk vector weakly
    majorized by that of the greedy tree, and the greedy tree attains each
    top-``r`` sum on its first ``r`` BFS vertices."""
    _guard(pi.n, max_n)
    params = {"pi": pi.to_json(), "k": k}
    with _Timer() as tm:
        greedy, bfs = build_greedy_tree(pi)
        cg = closed_walks_power(greedy, k)
        witness = None
        in_order = [cg[v] for v in bfs.order]
        for r, (a, b) in enumerate(zip(accumulate(in_order), accumulate(cg.sorted_desc())), start=1):
            if a != b:
                witness = {"kind": "u_star", "tree": greedy.to_json(), "k": k, "r": r,
                           "greedy_vector": _vec(cg), "bfs_order": list(bfs.order)}
                break
        checked = 0
        if witness is None:
            for t in enumerate_trees(pi, "unlabeled", max_n=max_n):
                checked += 1
                ct = closed_walks_power(t, k)
                bad = _failure(ct.counts, cg.counts)
                if bad is not None:
                    witness = {"kind": "majorization", "tree": t.to_json(), "greedy": greedy.to_json(),
                               "k": k, "tree_vector": _vec(ct), "greedy_vector": _vec(cg),
                               "failing_prefix": bad}
                    break
    if witness is not None:
        return VerificationReport("thm1", params, "counterexample", witness, tm.ms)
    return VerificationReport("thm1", params, "verified", {"trees_checked": checked}, tm.ms)


def verify_maintheorem2(pi: DegreeSequence, pi_prime: DegreeSequence, k: int,
                        chain: bool = True) -> VerificationReport:
    """Greedy walk vectors respect weak majorization of degree sequences.

    With ``chain`` and equal totals, the unit-step chain from ``pi`` to
    ``pi_prime`` is walked and every consecutive pair is checked too.
    """
    verdict = compare_majorization(pi.degrees, pi_prime.degrees)
    if not verdict.weak:
        raise NotComparable(f"{pi} is not weakly majorized by {pi_prime}")
    params = {"pi": pi.to_json(), "pi_prime": pi_prime.to_json(), "k": k}
    with _Timer() as tm:
        pairs = [(pi, pi_prime)]
        steps = 0
        if chain and pi.n == pi_prime.n and verdict.majorized:
            seq = majorization_chain(pi, pi_prime)
            steps = len(seq) - 1
            pairs += list(zip(seq, seq[1:]))
        vectors: dict[tuple, WalkVector] = {}

        def vec(p: DegreeSequence) -> WalkVector:
            if p.degrees not in vectors:
                vectors[p.degrees] = closed_walks_power(build_greedy_tree(p)[0], k)
            return vectors[p.degrees]

        witness = None
        for lo, hi in pairs:
            bad = _failure(vec(lo).counts, vec(hi).counts)
            if bad is not None:
                witness = {"kind": "majorization", "tree": build_greedy_tree(lo)[0].to_json(),
                           "greedy": build_greedy_tree(hi)[0].to_json(), "k": k,
                           "tree_vector": _vec(vec(lo)), "greedy_vector": _vec(vec(hi)),
                           "failing_prefix": bad, "pi": lo.to_json(), "pi_prime": hi.to_json()}
                break
    if witness is not None:
        return VerificationReport("thm2", params, "counterexample", witness, tm.ms)
    return VerificationReport("thm2", params, "verified", {"chain_steps": steps}, tm.ms)


def verify_edge_shift(g: Tree, rv: RootedView, x: int, x1: int, x_prime: int, k: int) -> VerificationReport:
    """``C(k; g)`` is weakly majorized by ``C(k; g - x x1 + x' x1)``."""
    params = {"tree": g.to_json(), "root": rv.describe(), "x": x, "x1": x1, "x_prime": x_prime, "k": k}
    with _Timer() as tm:
        shifted = edge_shift(g, rv, x, x1, x_prime)
        before = closed_walks_power(g, k)
        after = closed_walks_power(shifted, k)
        bad = _failure(before.counts, after.counts)
    if bad is None:
        return VerificationReport("edge_shift", params, "verified", None, tm.ms)
    witness = {"kind": "majorization", "tree": g.to_json(), "greedy": shifted.to_json(), "k": k,
               "tree_vector": _vec(before), "greedy_vector": _vec(after), "failing_prefix": bad}
    return VerificationReport("edge_shift", params, "counterexample", witness, tm.ms)


def admissible_shifts(g: Tree, direction: str = "forward") -> Iterator[tuple[RootedView, int, int, int]]:
    """Shifts ``(rv, x, x1, x')`` to which the edge-shift theorems apply.

    ``rv`` ranges over the vertex and edge roots for which ``g`` is level
    greedy; ``x`` and ``x'`` share a level, ``x1`` is a child of ``x``. With
    ``direction="forward"`` only shifts towards an earlier vertex of the
    BFS-ordering (``x'`` before ``x``) are produced; ``"any"`` drops both the
    direction and the level-greedy requirement.
    """
    if direction not in ("forward", "any"):
        raise InvalidParameter(f"direction must be 'forward' or 'any', got {direction!r}")
    for rv in root_views(g):
        if direction == "forward":
            bfs = find_bfs_ordering(rv)
            if bfs is None:
                continue
            pos = bfs.position()
        for x in range(g.n):
            for x1 in rv.children[x]:
                for xp in range(g.n):
                    if xp == x or rv.level[xp] != rv.level[x]:
                        continue
                    if direction == "forward" and pos[xp] > pos[x]:
                        continue
                    yield rv, x, x1, xp


def edge_shift_sweep(pi: DegreeSequence, k: int, direction: str = "forward") -> VerificationReport:
    """All admissible shifts on the greedy tree of ``pi``."""
    params = {"pi": pi.to_json(), "k": k, "direction": direction}
    with _Timer() as tm:
        g, _ = build_greedy_tree(pi)
        base = closed_walks_power(g, k)
        shifts = 0
        witness = None
        for rv, x, x1, xp in admissible_shifts(g, direction):
            shifts += 1
            shifted = edge_shift(g, rv, x, x1, xp)
            after = closed_walks_power(shifted, k)
            bad = _failure(base.counts, after.counts)
            if bad is not None:
                witness = {"kind": "majorization", "tree": g.to_json(), "greedy": shifted.to_json(),
                           "k": k, "tree_vector": _vec(base), "greedy_vector": _vec(after),
                           "failing_prefix": bad, "root": rv.describe(), "x": x, "x1": x1, "x_prime": xp}
                break
    if witness is not None:
        return VerificationReport("edge_shift", params, "counterexample", witness, tm.ms)
    return VerificationReport("edge_shift", params, "verified", {"shifts_checked": shifts}, tm.ms)


def independence_number(t: Tree) -> int:
    """Size of a maximum independent set (tree dynamic programme)."""
    rv = RootedView.at_vertex(t, 0)
    take = [1] * t.n
    skip = [0] * t.n
    for v in sorted(range(t.n), key=lambda u: -rv.level[u]):
        for c in rv.children[v]:
            take[v] += skip[c]
            skip[v] += max(take[c], skip[c])
    return max(take[0], skip[0])


def _corollary_target(kind: str, t: Tree) -> DegreeSequence:
    n = t.n
    if kind == "star":
        return corollary_sequence("star", n)
    if kind == "bounded_degree":
        return corollary_sequence(kind, n, max(t.degrees))
    if kind == "leaf_count":
        return corollary_sequence(kind, n, sum(1 for d in t.degrees if d == 1))
    if kind == "independence":
        return corollary_sequence(kind, n, independence_number(t))
    raise InvalidParameter(f"unknown corollary {kind!r}")


def verify_corollary(kind: str, n: int, k: int, max_n: int = DEFAULT_GUARD) -> VerificationReport:
    """Every tree on ``n`` vertices is weakly below the greedy tree of the
    extremal sequence of its class (star, same max degree, same number of
    leaves, same independence number)."""
    _guard(n, max_n)
    params = {"n": n, "k": k}
    with _Timer() as tm:
        cache: dict[tuple, WalkVector] = {}
        checked = 0
        witness = None
        for pi in tree_degree_sequences(n):
            for t in enumerate_trees(pi, "unlabeled", max_n=max_n):
                target = _corollary_target(kind, t)
                if target.degrees not in cache:
                    cache[target.degrees] = closed_walks_power(build_greedy_tree(target)[0], k)
                cg = cache[target.degrees]
                ct = closed_walks_power(t, k)
                checked += 1
                bad = _failure(ct.counts, cg.counts)
                if bad is not None:
                    witness = {"kind": "majorization", "tree": t.to_json(),
                               "greedy": build_greedy_tree(target)[0].to_json(), "k": k,
                               "tree_vector": _vec(ct), "greedy_vector": _vec(cg),
                               "failing_prefix": bad, "target": target.to_json()}
                    break
            if witness:
                break
    if witness is not None:
        return VerificationReport(kind, params, "counterexample", witness, tm.ms)
    return VerificationReport(kind, params, "verified", {"trees_checked": checked}, tm.ms)


def strictness_search(pi: DegreeSequence, k_max: int = 20, max_n: int = DEFAULT_GUARD) -> VerificationReport:
    """For each tree not isomorphic to the greedy tree, the smallest even
    ``k <= k_max`` at which some prefix inequality is strict.

    Trees with no strict ``k`` in the window make the report
    ``inconclusive``; a failed weak majorization makes it a counterexample.
    """
    _guard(pi.n, max_n)
    params = {"pi": pi.to_json(), "k_max": k_max}
    with _Timer() as tm:
        greedy, _ = build_greedy_tree(pi)
        key = canonical_form(greedy)
        gvec = {k: closed_walks_power(greedy, k) for k in range(2, k_max + 1, 2)}
        first_strict: dict[str, int | None] = {}
        witness = None
        for t in enumerate_trees(pi, "unlabeled", max_n=max_n):
            form = canonical_form(t)
            if form == key:
                continue
            first_strict[form] = None
            for k in range(2, k_max + 1, 2):
                ct = closed_walks_power(t, k)
                verdict = compare_majorization(ct.counts, gvec[k].counts)
                if not verdict.weak:
                    witness = {"kind": "majorization", "tree": t.to_json(), "greedy": greedy.to_json(),
                               "k": k, "tree_vector": _vec(ct), "greedy_vector": _vec(gvec[k]),
                               "failing_prefix": verdict.first_violation_index}
                    break
                if verdict.strict:
                    first_strict[form] = k
                    break
            if witness:
                break
    if witness is not None:
        return VerificationReport("strict", params, "counterexample", witness, tm.ms)
    status = "inconclusive" if any(v is None for v in first_strict.values()) else "verified"
    return VerificationReport("strict", params, status, {"first_strict_k": first_strict}, tm.ms)


@dataclass(frozen=True)
class LemmaCheck:
    conditions_hold: bool
    conclusion_holds: bool


def check_majorization_lemma(alpha: Sequence[int], beta: Sequence[int], v1: Sequence[int],
                             phi: Sequence[int]) -> LemmaCheck:
    """Evaluate the pairing lemma on one instance (0-based indices).

    Conditions: ``phi(V1)`` misses ``V1``; ``a_i <= b_i`` off ``V1``; on
    ``V1``, ``a_i + a_phi(i) <= b_i + b_phi(i)`` and ``a_i <= a_phi(i)``.
    Conclusion: ``alpha`` is weakly majorized by ``beta``.
    """
    n = len(alpha)
    if len(beta) != n:
        raise LengthMismatch(f"lengths differ: {n} vs {len(beta)}")
    if sorted(phi) != list(range(n)):
        raise BadPermutation(f"phi is not a permutation of 0..{n - 1}")
    inside = set(v1)
    if not inside <= set(range(n)):
        raise BadPermutation("V1 has indices out of range")
    cond = not (inside & {phi[i] for i in inside})
    if cond:
        for i in range(n):
            if i in inside:
                j = phi[i]
                if alpha[i] + alpha[j] > beta[i] + beta[j] or alpha[i] > alpha[j]:
                    cond = False
                    break
            elif alpha[i] > beta[i]:
                cond = False
                break
    return LemmaCheck(cond, compare_majorization(alpha, beta).weak)


def random_lemma_instance(rng: random.Random, n: int, top: int = 20):
    """Random ``(alpha, beta, V1, phi)`` satisfying the lemma's conditions."""
    phi = list(range(n))
    rng.shuffle(phi)
    v1: list[int] = []
    image: set[int] = set()
    for i in rng.sample(range(n), n):
        if phi[i] != i and i not in image and phi[i] not in v1 and rng.random() < 0.7:
            v1.append(i)
            image.add(phi[i])
    alpha = [rng.randint(0, top) for _ in range(n)]
    for i in v1:
        j = phi[i]
        if alpha[i] > alpha[j]:
            alpha[i], alpha[j] = alpha[j], alpha[i]
    beta = [0] * n
    for i in range(n):
        if i not in v1:
            beta[i] = alpha[i] + rng.randint(0, 3)
    for i in v1:
        j = phi[i]
        beta[i] = max(0, alpha[i] + alpha[j] - beta[j] + rng.randint(0, 3))
    return alpha, beta, sorted(v1), phi


def lemma_sweep(trials: int, seed: int = 0, max_len: int = 12) -> VerificationReport:
    """Random instances meeting the pairing lemma's conditions; any whose
    conclusion fails is returned as a counterexample."""
    params = {"trials": trials, "seed": seed, "max_len": max_len}
    rng = random.Random(seed)
    with _Timer() as tm:
        witness = None
        for _ in range(trials):
            alpha, beta, v1, phi = random_lemma_instance(rng, rng.randint(1, max_len))
            check = check_majorization_lemma(alpha, beta, v1, phi)
            if check.conditions_hold and not check.conclusion_holds:
                witness = {"kind": "lemma", "alpha": alpha, "beta": beta, "v1": v1, "phi": phi}
                break
    if witness is not None:
        return VerificationReport("lemma", params, "counterexample", witness, tm.ms)
    return VerificationReport("lemma", params, "verified", None, tm.ms)


@dataclass
class DenseResult:
    value: int
    tree: Tree
    subset: tuple[int, ...]
    brute_force_value: int | None = None
    trees_checked: int = 0

    def to_json(self) -> dict:
        out = {"value": str(self.value), "tree": self.tree.to_json(), "subset": list(self.subset)}
        if self.brute_force_value is not None:
            out["brute_force_value"] = str(self.brute_force_value)
            out["trees_checked"] = self.trees_checked
        return out


def dense_r_max(pi: DegreeSequence, k: int, r: int, brute_force: bool = False,
                max_n: int = DEFAULT_GUARD) -> DenseResult:
    """Largest sum of ``C_v(k)`` over ``r`` vertices of any tree with degree
    sequence ``pi``, certified by the first ``r`` BFS vertices of the greedy
    tree. ``brute_force`` re-derives the maximum over every tree."""
    if not 0 <= r <= pi.n:
        raise InvalidParameter(f"r must lie in [0, {pi.n}], got {r}")
    greedy, bfs = build_greedy_tree(pi)
    cg = closed_walks_power(greedy, k)
    subset = tuple(bfs.order[:r])
    result = DenseResult(sum(cg[v] for v in subset), greedy, subset)
    if brute_force:
        _guard(pi.n, max_n)
        best = 0
        for t in enumerate_trees(pi, "unlabeled", max_n=max_n):
            result.trees_checked += 1
            best = max(best, sum(closed_walks_power(t, k).sorted_desc()[:r]))
        result.brute_force_value = best
    return result


def recheck_witness(witness: dict) -> int | None:
    """Recompute both walk vectors of a majorization witness and return the
    first failing prefix index (``None`` if the relation actually holds)."""
    lower = closed_walks_power(Tree.from_json(witness["tree"]), witness["k"])
    upper = closed_walks_power(Tree.from_json(witness["greedy"]), witness["k"])
    if _vec(lower) != witness["tree_vector"] or _vec(upper) != witness["greedy_vector"]:
        raise ValueError("witness vectors do not match the recomputed ones")
    return _failure(lower.counts, upper.counts)


@dataclass
class SuiteConfig:
    n_max: int
    ks: tuple[int, ...] = (2, 4)
    claims: tuple[str, ...] = ("thm1",)
    n_min: int = 2
    max_n: int = DEFAULT_GUARD
    direction: str = "forward"
    k_max_strict: int = 20
    jobs: int = 1
    seed: int = 0
    lemma_trials: int = 10_000

    def validate(self) -> None:
        if self.max_n > HARD_GUARD:
            raise TooLarge(f"guard {self.max_n} exceeds the hard limit {HARD_GUARD}")
        if self.n_max > self.max_n:
            raise TooLarge(f"n_max={self.n_max} exceeds the guard {self.max_n}")
        if self.n_min < 2 or self.n_min > max(self.n_max, 2):
            raise InvalidParameter(f"bad n range [{self.n_min}, {self.n_max}]")
        if self.lemma_trials < 0:
            raise InvalidParameter("lemma_trials must be nonnegative")
        if any(k < 0 for k in self.ks):
            raise InvalidParameter("walk lengths must be nonnegative")
        unknown = set(self.claims) - set(CLAIMS)
        if unknown:
            raise InvalidParameter(f"unknown claims {sorted(unknown)}; choose from {CLAIMS}")


def _tasks(cfg: SuiteConfig) -> list[tuple]:
    tasks = []
    ns = range(cfg.n_min, cfg.n_max + 1)
    for claim in cfg.claims:
        if claim == "lemma":
            tasks.append(("lemma", cfg.lemma_trials, cfg.seed))
            continue
        if claim == "thm2":
            # pairs may mix orders; shorter sequences are padded with zeros
            every = [pi for n in ns for pi in tree_degree_sequences(n)]
            tasks += [("thm2", a, b, k) for a in every for b in every
                      if compare_majorization(a.degrees, b.degrees).weak for k in cfg.ks]
            continue
        for n in ns:
            seqs = list(tree_degree_sequences(n))
            if claim == "thm1":
                tasks += [("thm1", pi, k, cfg.max_n) for pi in seqs for k in cfg.ks]
            elif claim == "edge_shift":
                tasks += [("edge_shift", pi, k, cfg.direction) for pi in seqs for k in cfg.ks]
            elif claim == "strict":
                tasks += [("strict", pi, cfg.k_max_strict, cfg.max_n) for pi in seqs]
            else:
                tasks += [("corollary", claim, n, k, cfg.max_n) for k in cfg.ks]
    return tasks


def _run_task(task: tuple) -> VerificationReport:
    name, *args = task
    if name == "thm1":
        return verify_maintheorem1(*args)
    if name == "thm2":
        return verify_maintheorem2(*args)
    if name == "edge_shift":
        return edge_shift_sweep(*args)
    if name == "strict":
        return strictness_search(*args)
    if name == "lemma":
        return lemma_sweep(*args)
    return verify_corollary(*args)


def run_suite(cfg: SuiteConfig) -> list[VerificationReport]:
    """Run every selected claim over all tree degree sequences with
    ``n_min <= n <= n_max``; reports come back in task order."""
    cfg.validate()
    tasks = _tasks(cfg)
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(_run_task, tasks, chunksize=8))
    return [_run_task(t) for t in tasks]


def suite_exit_status(reports: Sequence[VerificationReport]) -> int:
    return 1 if any(r.status == "counterexample" for r in reports) else 0
