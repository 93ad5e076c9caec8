"""Checkers for the random-graph properties the game strategies rely on.

Every checker is a pure function of (graph, parameters, seed). Exact modes
enumerate and are gated by a cost budget; sampled modes draw seeded
queries and can only refute (``refuted-by-sample``) or stay
``inconclusive``. Trial ``i`` of a sampled check with seed ``s`` uses its
own stream seeded with ``s + i``, so trials may run in any order or in
parallel without changing the report.

Membership tests use the graph's bitset index: vertex sets are Python ints
with bit ``u`` set for vertex ``u``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import replace
from itertools import combinations
from typing import TYPE_CHECKING, Any, cast

from revspy.core.exceptions import (
    BudgetExceededError,
    InvalidQueryError,
    InvalidVertexError,
    ParameterError,
)
from revspy.core.graph import (
    BITSET_LIMIT,
    Graph,
    LazyGnp,
    ball,
    distances,
    ell_n,
    estimate_eta,
    mask_of,
    members,
)
from revspy.core.models import (
    CheckMode,
    ECQuery,
    ECVariant,
    ExpansionReport,
    MatchingSetCandidate,
    ModeKind,
    PropertyReport,
    Verdict,
)
from revspy.core.rng import SplitMix64, derive_seed


if TYPE_CHECKING:
    from collections.abc import Sequence

    from revspy.core.graph import NeighborhoodView, VertexSet
    from revspy.core.ports import ExecutorPort


logger = logging.getLogger(__name__)

DEFAULT_EC_BUDGET = 10**9
SAMPLE_CHUNK = 1024


# ---------------------------------------------------------------------------
# e.c. witnesses
# ---------------------------------------------------------------------------


def _candidate_mask(g: Graph, q: ECQuery) -> int:
    """Bitset of every vertex satisfying the query's conditions."""
    near = g.ball_masks(q.j)
    excluded = mask_of(q.A)
    if q.variant.has_anchor:
        assert q.v is not None
        excluded |= 1 << q.v
        cand = 0
        for a in q.A:
            cand |= near[a]
        cand &= near[q.v]
    else:
        cand = near[q.A[0]]
        for a in q.A[1:]:
            cand &= near[a]
    for b in q.B:
        cand &= ~near[b]
    return cand & ~excluded


def _witness_by_scan(view: NeighborhoodView, q: ECQuery) -> int | None:
    """BFS-based witness search for views without a bitset index."""
    close = [set(distances(view, [a], limit=q.j)) for a in q.A]
    if q.variant.has_anchor:
        assert q.v is not None
        pool = set.union(*close) & set(distances(view, [q.v], limit=q.j))
        pool.discard(q.v)
    else:
        pool = set.intersection(*close)
    pool.difference_update(q.A)
    for b in q.B:
        pool.difference_update(distances(view, [b], limit=q.j))
    return min(pool) if pool else None


def _check_query_vertices(n: int, q: ECQuery) -> None:
    for u in (*q.A, *q.B, *(() if q.v is None else (q.v,))):
        if not 0 <= u < n:
            raise InvalidVertexError(u, n)


def find_witness(g: NeighborhoodView, q: ECQuery) -> int | None:
    """Lowest-id vertex z satisfying an e.c. query, or None.

    ``ec``: z adjacent to all of A and to none of B. ``one-ec``: z adjacent
    to v, to some vertex of A, and to none of B. The ``-j`` variants read
    "adjacent" as distance <= j and "not adjacent" as distance >= j + 1.
    z never lies in {v} ∪ A ∪ B.

    Example:
        >>> from revspy.core.graph import cycle_graph
        >>> find_witness(cycle_graph(5), ECQuery(ECVariant.EC, A=(0,), B=(1,)))
        4
    """
    _check_query_vertices(g.n, q)
    if isinstance(g, Graph) and g.n <= BITSET_LIMIT:
        cand = _candidate_mask(g, q)
        return (cand & -cand).bit_length() - 1 if cand else None
    return _witness_by_scan(g, q)


def verify_witness(g: NeighborhoodView, q: ECQuery, z: int) -> bool:
    """Re-check a witness with plain BFS distances."""
    if z in q.A or z in q.B or z == q.v:
        return False
    dist = distances(g, [z])
    within = [dist.get(a, math.inf) <= q.j for a in q.A]
    if q.variant.has_anchor:
        assert q.v is not None
        if dist.get(q.v, math.inf) > q.j or not any(within):
            return False
    elif not all(within):
        return False
    return all(dist.get(b, math.inf) >= q.j + 1 for b in q.B)


def _validate_ec_params(variant: ECVariant, l: int, k: int, j: int) -> None:  # noqa: E741
    if l < 1:
        raise ParameterError("l", l, "must be >= 1")
    if k < 0:
        raise ParameterError("k", k, "must be >= 0")
    if j < 1:
        raise ParameterError("j", j, "must be >= 1")
    if not variant.uses_distance and j != 1:
        raise ParameterError("j", j, f"must be 1 for variant {variant}")


def ec_enumeration_count(n: int, variant: ECVariant, l: int, k: int) -> int:  # noqa: E741
    """C(n,l) * C(n-l,k), times n for the anchored variants."""
    count = math.comb(n, l) * math.comb(max(n - l, 0), k)
    return count * n if variant.has_anchor else count


def _exact_ec(
    g: Graph, variant: ECVariant, l: int, k: int, j: int  # noqa: E741
) -> tuple[ECQuery | None, int]:
    """First query without a witness in enumeration order, and queries checked."""
    near = g.ball_masks(j)
    n = g.n
    checked = 0
    anchors: Sequence[int | None] = range(n) if variant.has_anchor else (None,)
    for v in anchors:
        pool = [u for u in range(n) if u != v]
        for A in combinations(pool, l):
            excluded = mask_of(A)
            if v is None:
                cand = near[A[0]]
                for a in A[1:]:
                    cand &= near[a]
            else:
                excluded |= 1 << v
                cand = 0
                for a in A:
                    cand |= near[a]
                cand &= near[v]
            cand &= ~excluded
            rest = [u for u in pool if not (excluded >> u) & 1]
            restricted = [cand & near[b] for b in rest]
            for idx in combinations(range(len(rest)), k):
                checked += 1
                cover = 0
                for i in idx:
                    cover |= restricted[i]
                if cover == cand:
                    B = tuple(rest[i] for i in idx)
                    return ECQuery(variant, A=A, B=B, j=j, v=v), checked
    return None, checked


def _sampled_query(
    n: int, variant: ECVariant, l: int, k: int, j: int, trial_seed: int  # noqa: E741
) -> ECQuery:
    rng = SplitMix64(trial_seed)
    anchor = 1 if variant.has_anchor else 0
    drawn = rng.sample(n, anchor + l + k)
    v = drawn[0] if anchor else None
    A = tuple(sorted(drawn[anchor : anchor + l]))
    B = tuple(sorted(drawn[anchor + l :]))
    return ECQuery(variant, A=A, B=B, j=j, v=v)


def _sampled_chunk(
    g: Graph,
    variant: ECVariant,
    l: int,  # noqa: E741
    k: int,
    j: int,
    seed: int,
    start: int,
    stop: int,
) -> tuple[int, ECQuery] | None:
    """First refuting trial in [start, stop)."""
    for trial in range(start, stop):
        q = _sampled_query(g.n, variant, l, k, j, seed + trial)
        if find_witness(g, q) is None:
            return trial, q
    return None


def check_ec(
    g: Graph,
    variant: ECVariant,
    l: int,  # noqa: E741
    k: int,
    j: int = 1,
    mode: CheckMode | None = None,
    budget: int = DEFAULT_EC_BUDGET,
    executor: ExecutorPort | None = None,
) -> PropertyReport:
    """Check one e.c. property exactly or by seeded sampling.

    Args:
        g: The graph.
        variant: Which e.c. family.
        l: |A|.
        k: |B|.
        j: Radius for the ``-j`` variants.
        mode: Exact (default) or sampled.
        budget: Largest enumeration count an exact check accepts.
        executor: Optional pool for sampled trials.

    Raises:
        BudgetExceededError: If the exact enumeration count exceeds budget.
    """
    _validate_ec_params(variant, l, k, j)
    mode = mode or CheckMode.exact()
    name = variant.label(l, k, j)
    needed = l + k + (1 if variant.has_anchor else 0)
    if needed > g.n:
        # no admissible query exists
        return PropertyReport(
            property=name,
            mode=mode,
            verdict=Verdict.HOLDS,
            stats={"queries": 0},
            vacuous=True,
        )

    if mode.kind is ModeKind.SAMPLED:
        return _check_ec_sampled(g, variant, l, k, j, mode, executor)

    estimate = ec_enumeration_count(g.n, variant, l, k)
    if estimate > budget:
        raise BudgetExceededError(f"exact {name} enumeration", estimate, budget)
    logger.debug("exact %s on n=%d: %d queries", name, g.n, estimate)
    failing, checked = _exact_ec(g, variant, l, k, j)
    if failing is None:
        return PropertyReport(
            property=name,
            mode=mode,
            verdict=Verdict.HOLDS,
            stats={"queries": checked},
        )
    return PropertyReport(
        property=name,
        mode=mode,
        verdict=Verdict.FAILS,
        witness=failing.to_dict(),
        stats={"queries": checked},
    )


def _check_ec_sampled(
    g: Graph,
    variant: ECVariant,
    l: int,  # noqa: E741
    k: int,
    j: int,
    mode: CheckMode,
    executor: ExecutorPort | None,
) -> PropertyReport:
    assert mode.trials is not None
    assert mode.seed is not None
    trials, seed = mode.trials, mode.seed
    bounds = [(a, min(a + SAMPLE_CHUNK, trials)) for a in range(0, trials, SAMPLE_CHUNK)]
    if executor is None:
        results = []
        for a, b in bounds:
            hit = _sampled_chunk(g, variant, l, k, j, seed, a, b)
            results.append(hit)
            if hit is not None:
                break
    else:
        g.ball_masks(j)
        futures = [
            executor.submit(_sampled_chunk, g, variant, l, k, j, seed, a, b)
            for a, b in bounds
        ]
        results = [cast("tuple[int, ECQuery] | None", f.result()) for f in futures]
    hits = [h for h in results if h is not None]
    name = variant.label(l, k, j)
    if not hits:
        return PropertyReport(
            property=name,
            mode=mode,
            verdict=Verdict.INCONCLUSIVE,
            stats={"queries": trials},
        )
    trial, q = min(hits, key=lambda h: h[0])
    return PropertyReport(
        property=name,
        mode=mode,
        verdict=Verdict.REFUTED,
        witness={**q.to_dict(), "trial": trial},
        stats={"queries": trial + 1},
    )


def largest_ec_parameter(
    g: Graph,
    variant: ECVariant,
    l: int,  # noqa: E741
    j: int = 1,
    s_max: int = 3,
    budget: int = DEFAULT_EC_BUDGET,
) -> int:
    """Largest k <= s_max with an exact pass, scanning k = 0, 1, ... upward.

    The properties are monotone in k, so the scan stops at the first
    failure. Returns -1 when even k = 0 fails.
    """
    best = -1
    for k in range(s_max + 1):
        report = check_ec(g, variant, l, k, j, CheckMode.exact(), budget)
        if report.verdict is not Verdict.HOLDS:
            break
        best = k
    return best


def predicted_ec_threshold(n: float, p: float) -> float:
    """Predicted largest s with (2,s)-e.c.: 2.99 * (1/3 - eta_hat) * 𝕃n, floored at 0."""
    eta3 = 1.0 / 3.0 - estimate_eta(n, p)
    return max(0.0, 2.99 * eta3 * ell_n(n, p))


# ---------------------------------------------------------------------------
# Non-neighbourhood intersections
# ---------------------------------------------------------------------------


def resolve_p(g: Graph, p: float | None) -> float:
    """Use the supplied p, or the edge density when it lies in (0, 1)."""
    if p is not None:
        if not 0.0 < p < 1.0:
            raise ParameterError("p", p, "must lie strictly between 0 and 1")
        return p
    pairs = g.n * (g.n - 1) // 2
    density = g.edge_count / pairs if pairs else 0.0
    if not 0.0 < density < 1.0:
        raise ParameterError(
            "p", density, "must lie strictly between 0 and 1; pass p explicitly"
        )
    return density


def check_nonneighborhood_bound(
    g: Graph,
    beta: float,
    alpha: float,
    mode: CheckMode | None = None,
    p: float | None = None,
    budget: int = DEFAULT_EC_BUDGET,
) -> PropertyReport:
    """Check |∩_{v in S} N^c(v)| <= alpha*beta*𝕃n for sets S of size ceil(beta*𝕃n).

    The largest intersection found is reported in ``measured`` next to the
    verdict. When ceil(beta*𝕃n) > n there is no such S and the report is a
    vacuous hold.
    """
    if beta <= 0:
        raise ParameterError("beta", beta, "must be > 0")
    if alpha <= 0:
        raise ParameterError("alpha", alpha, "must be > 0")
    mode = mode or CheckMode.exact()
    elln = ell_n(g.n, resolve_p(g, p))
    size = max(1, math.ceil(beta * elln))
    bound = alpha * beta * elln
    name = f"nonneighborhood(beta={beta:g}, alpha={alpha:g}, |S|={size})"
    measured: dict[str, float] = {"set_size": size, "bound": bound}
    if size > g.n:
        return PropertyReport(
            property=name, mode=mode, verdict=Verdict.HOLDS, measured=measured, vacuous=True
        )

    closed = g.closed_masks
    full = (1 << g.n) - 1

    def intersection(S: Sequence[int]) -> int:
        union = 0
        for v in S:
            union |= closed[v]
        return (full & ~union).bit_count()

    first: tuple[int, ...] | None = None
    largest = 0
    if mode.kind is ModeKind.SAMPLED:
        assert mode.trials is not None
        assert mode.seed is not None
        checked = mode.trials
        for trial in range(mode.trials):
            S = tuple(sorted(SplitMix64(mode.seed + trial).sample(g.n, size)))
            value = intersection(S)
            largest = max(largest, value)
            if first is None and value > bound:
                first = S
    else:
        estimate = math.comb(g.n, size)
        if estimate > budget:
            raise BudgetExceededError(f"exact {name}", estimate, budget)
        checked = 0
        for S in combinations(range(g.n), size):
            checked += 1
            value = intersection(S)
            largest = max(largest, value)
            if first is None and value > bound:
                first = S
    measured["max_intersection"] = largest
    if first is None:
        verdict = Verdict.INCONCLUSIVE if mode.kind is ModeKind.SAMPLED else Verdict.HOLDS
        witness = None
    else:
        verdict = Verdict.REFUTED if mode.kind is ModeKind.SAMPLED else Verdict.FAILS
        witness = {"S": list(first), "intersection": intersection(first)}
    return PropertyReport(
        property=name,
        mode=mode,
        verdict=verdict,
        witness=witness,
        stats={"sets": checked},
        measured=measured,
    )


def check_nonneighborhood_slack(
    g: Graph,
    beta: float,
    eps: float,
    mode: CheckMode | None = None,
    p: float | None = None,
    budget: int = DEFAULT_EC_BUDGET,
) -> PropertyReport:
    """The non-neighbourhood bound with alpha = (1 + eps) / (beta - 1)."""
    if beta <= 1:
        raise ParameterError("beta", beta, "must be > 1")
    if eps <= 0:
        raise ParameterError("eps", eps, "must be > 0")
    return check_nonneighborhood_bound(g, beta, (1 + eps) / (beta - 1), mode, p, budget)


# ---------------------------------------------------------------------------
# Matchings and matching sets
# ---------------------------------------------------------------------------


def maximum_matching(
    g: Graph,
    T: Sequence[int],
    S: Sequence[int],
    preference: Sequence[int] | None = None,
) -> dict[int, int]:
    """Maximum matching between T and S along edges of g (augmenting paths).

    T is processed in the given order; each t tries its S-neighbours in
    ``preference`` order (ascending id by default). The result maps matched
    t to s and is deterministic for fixed input.
    """
    order = list(preference) if preference is not None else sorted(S)
    allowed = set(S)
    ranked = [s for s in order if s in allowed]
    options = {t: [s for s in ranked if g.has_edge(t, s)] for t in T}
    owner: dict[int, int] = {}

    def search(t: int, seen: set[int]) -> bool:
        for s in options[t]:
            if s in seen:
                continue
            seen.add(s)
            if s not in owner or search(owner[s], seen):
                owner[s] = t
                return True
        return False

    for t in T:
        search(t, set())
    return {t: s for s, t in owner.items()}


def hall_matching(
    g: Graph,
    T: Sequence[int],
    S: Sequence[int],
    preference: Sequence[int] | None = None,
) -> list[tuple[int, int]] | None:
    """Matching saturating T into S, or None when none exists.

    Example:
        >>> from revspy.core.graph import cycle_graph
        >>> hall_matching(cycle_graph(6), [0, 2, 4], [1, 3, 5])
        [(0, 1), (2, 3), (4, 5)]
    """
    if set(T) & set(S):
        raise InvalidQueryError("T and S must be disjoint")
    matched = maximum_matching(g, T, S, preference)
    if len(matched) < len(set(T)):
        return None
    return sorted(matched.items())


def _s_degrees(g: Graph, inside: int) -> dict[int, int]:
    """Number of S-neighbours of every vertex outside S."""
    opened = g.open_masks
    return {
        x: (opened[x] & inside).bit_count()
        for x in range(g.n)
        if not (inside >> x) & 1
    }


def _pair_certificate(g: Graph, inside: int, degrees: dict[int, int], need: int) -> bool:
    """Every outside vertex sees S, and low-degree pairs jointly see >= need."""
    if any(d == 0 for d in degrees.values()):
        return False
    opened = g.open_masks
    low = [x for x, d in degrees.items() if d < need]
    for x, y in combinations(low, 2):
        if ((opened[x] | opened[y]) & inside).bit_count() < need:
            return False
    return True


def build_matching_set(
    g: Graph,
    gamma: float,
    delta: float,
    seed: int = 0,
    retries: int = 10,
    repairs: int = 200,
    p: float | None = None,
) -> MatchingSetCandidate:
    """Randomized construction of a set S every small outside set matches into.

    Each attempt draws S of size ceil(gamma*𝕃n) from its own derived seed,
    then repeatedly swaps the worst-covered outside vertex into S in place
    of the member whose removal hurts the fewest nearly-deficient vertices.
    A candidate is certified by the degree certificate (every outside vertex
    has ceil(delta*𝕃n) S-neighbours) or, failing that, by the pair
    certificate. Returns the first certified candidate, otherwise the one
    with the fewest deficient vertices.
    """
    if delta <= 0:
        raise ParameterError("delta", delta, "must be > 0")
    if gamma <= delta:
        raise ParameterError("gamma", gamma, "must exceed delta")
    elln = ell_n(g.n, resolve_p(g, p))
    size = math.ceil(gamma * elln)
    need = math.ceil(delta * elln)
    if size > g.n:
        raise ParameterError("gamma", gamma, f"must give ceil(gamma*Ln)={size} <= n={g.n}")
    opened = g.open_masks
    best: MatchingSetCandidate | None = None
    for attempt in range(1, retries + 1):
        rng = SplitMix64(derive_seed(seed, "matching-set", attempt))
        inside = mask_of(rng.sample(g.n, size))
        degrees = _s_degrees(g, inside)
        for _ in range(repairs):
            deficient = [x for x, d in degrees.items() if d < need]
            if not deficient or size == g.n:
                break
            x = min(deficient, key=lambda u: (degrees[u], u))
            fragile = mask_of(u for u, d in degrees.items() if d <= need and u != x)
            y = min(members(inside), key=lambda u: ((opened[u] & fragile).bit_count(), u))
            inside = (inside | (1 << x)) & ~(1 << y)
            degrees = _s_degrees(g, inside)
        deficient = [x for x, d in degrees.items() if d < need]
        vertices = members(inside)
        if not deficient:
            logger.debug("matching set certified by degree after %d attempts", attempt)
            return MatchingSetCandidate(vertices, True, "degree", (), attempt)
        if _pair_certificate(g, inside, degrees, need):
            logger.debug("matching set certified by pairs after %d attempts", attempt)
            return MatchingSetCandidate(vertices, True, "pair", tuple(deficient), attempt)
        candidate = MatchingSetCandidate(vertices, False, None, tuple(deficient), attempt)
        if best is None or len(candidate.deficient) < len(best.deficient):
            best = candidate
    logger.info("no certified matching set in %d attempts", retries)
    assert best is not None
    return replace(best, attempts=retries)


def find_matching_set(
    g: Graph,
    gamma: float,
    delta: float,
    seed: int = 0,
    retries: int = 10,
    repairs: int = 200,
    p: float | None = None,
) -> VertexSet | None:
    """Certified matching set of size ceil(gamma*𝕃n), or None."""
    if retries < 1:
        raise ParameterError("retries", retries, "must be >= 1")
    candidate = build_matching_set(g, gamma, delta, seed, retries, repairs, p)
    return candidate.vertices if candidate.certified else None


def check_matching_set(
    g: Graph,
    gamma: float,
    delta: float,
    seed: int = 0,
    retries: int = 10,
    repairs: int = 200,
    p: float | None = None,
) -> PropertyReport:
    """Report form of :func:`build_matching_set` (certified-sufficient mode)."""
    candidate = build_matching_set(g, gamma, delta, seed, retries, repairs, p)
    witness: dict[str, Any] = {
        "S": list(candidate.vertices),
        "certificate": candidate.certificate,
        "deficient": list(candidate.deficient),
    }
    return PropertyReport(
        property=f"matching-set(gamma={gamma:g}, delta={delta:g})",
        mode=CheckMode.certified(),
        verdict=Verdict.HOLDS if candidate.certified else Verdict.INCONCLUSIVE,
        witness=witness,
        stats={"attempts": candidate.attempts},
        measured={"size": len(candidate.vertices)},
    )


# ---------------------------------------------------------------------------
# Common neighbours, bicliques, expansion
# ---------------------------------------------------------------------------


def _pair_scan(g: Graph, cap: int, closed_second: bool) -> tuple[tuple[int, int, int] | None, int]:
    """First pair over cap and the largest count seen."""
    opened = g.open_masks
    second = g.closed_masks if closed_second else opened
    first: tuple[int, int, int] | None = None
    largest = 0
    for u in range(g.n):
        nu = opened[u]
        for w in range(u + 1, g.n):
            value = (nu & second[w]).bit_count()
            if value > largest:
                largest = value
            if first is None and value > cap:
                first = (u, w, value)
    return first, largest


def check_common_neighbor_bound(g: Graph, cap: int) -> PropertyReport:
    """Exact scan: |S(u,1) ∩ N(w,1)| <= cap for all distinct u, w.

    Example:
        >>> from revspy.core.graph import path_graph
        >>> check_common_neighbor_bound(path_graph(4), 1).verdict.value
        'holds'
    """
    if cap < 1:
        raise ParameterError("cap", cap, "must be >= 1")
    first, largest = _pair_scan(g, cap, closed_second=True)
    return _pair_report(f"common-neighbor(cap={cap})", g, first, largest)


def check_biclique_free(g: Graph, t: int) -> PropertyReport:
    """Exact scan for a K_{2,t} subgraph (two vertices with t common neighbours)."""
    if t < 2:
        raise ParameterError("t", t, "must be >= 2")
    first, largest = _pair_scan(g, t - 1, closed_second=False)
    return _pair_report(f"biclique-free(K_2,{t})", g, first, largest)


def _pair_report(
    name: str, g: Graph, first: tuple[int, int, int] | None, largest: int
) -> PropertyReport:
    pairs = g.n * (g.n - 1) // 2
    if first is None:
        return PropertyReport(
            property=name,
            mode=CheckMode.exact(),
            verdict=Verdict.HOLDS,
            stats={"pairs": pairs},
            measured={"max_common": largest},
        )
    u, w, value = first
    return PropertyReport(
        property=name,
        mode=CheckMode.exact(),
        verdict=Verdict.FAILS,
        witness={"u": u, "w": w, "common": value},
        stats={"pairs": pairs},
        measured={"max_common": largest},
    )


def _infer_degree(g: NeighborhoodView) -> float:
    if isinstance(g, LazyGnp):
        return g.params.expected_degree
    if isinstance(g, Graph):
        return 2.0 * g.edge_count / g.n if g.n else 0.0
    raise ParameterError("d", None, "must be supplied for this graph view")


def audit_expansion(
    g: NeighborhoodView,
    S: Sequence[int],
    i: int,
    tol: float,
    d: float | None = None,
    x: int | None = None,
) -> ExpansionReport:
    """Compare |N[S,i]| with s*d^i and optionally measure |N(x,i) minus N[S,i]|.

    ``out_of_regime`` is set when s*d^i >= n/ln n; the measurements are
    still reported but both pass flags stay None there.

    Example:
        >>> from revspy.core.graph import cycle_graph
        >>> audit_expansion(cycle_graph(100), [0], 3, 0.5, d=2.0).size
        7
    """
    if i < 1:
        raise ParameterError("i", i, "must be >= 1")
    if tol < 0:
        raise ParameterError("tol", tol, "must be >= 0")
    if not S:
        raise ParameterError("S", list(S), "must be non-empty")
    degree = _infer_degree(g) if d is None else d
    if degree <= 0:
        raise ParameterError("d", degree, "must be > 0")
    reached = set(ball(g, S, i))
    s = len(set(S))
    expected = s * degree**i
    ratio = len(reached) / expected
    out_of_regime = g.n < 2 or expected >= g.n / math.log(g.n)
    report = ExpansionReport(
        S=tuple(sorted(set(S))),
        radius=i,
        d=degree,
        size=len(reached),
        expected=expected,
        ratio=ratio,
        tol=tol,
        out_of_regime=out_of_regime,
        ratio_pass=None if out_of_regime else abs(ratio - 1.0) <= tol,
    )
    if x is None:
        return report
    outside = [u for u in ball(g, [x], i) if u not in reached]
    threshold = degree**i / 2.0
    return replace(
        report,
        x=x,
        difference=len(outside),
        difference_threshold=threshold,
        difference_pass=None if out_of_regime else len(outside) >= threshold,
    )
