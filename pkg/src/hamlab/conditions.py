"""Degree conditions used to screen digraphs for Hamiltonicity, plus a report.

Every predicate returns a :class:`ConditionVerdict` carrying the verdict, the
most binding witness, and a capped list of violations, so failures are always
explainable.  The central object is the triple degree-sum condition with slack
``k`` (``condition_a_k``) and its margin: the largest slack a digraph still
satisfies, or "unbounded" when no triple qualifies at all.

Row-level kernels (``*_rows``) operate on raw out-adjacency bitmasks so the
verification harness can call them in bulk without building Digraph objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional, Sequence

from .digraph import Digraph, HypothesisUnmet, bits

#: violations kept per condition; totals are still exact
VIOLATION_CAP = 100


@dataclass(frozen=True)
class TripleViolation:
    """One failed clause of the triple condition.

    ``clause`` names the missing arc that fired the clause: ``"x->z"`` checks
    d(x)+d(y)+d+(x)+d-(z), ``"z->x"`` checks d(x)+d(y)+d-(x)+d+(z).
    """

    x: int
    y: int
    z: int
    clause: str
    total: int
    required: int

    def to_json(self) -> dict[str, Any]:
        return {
            "x": self.x,
            "y": self.y,
            "z": self.z,
            "clause": self.clause,
            "sum": self.total,
            "required": self.required,
        }


@dataclass(frozen=True)
class AkMargin:
    """Largest slack k the digraph satisfies; ``max_k is None`` means unbounded."""

    max_k: Optional[int]

    @property
    def unbounded(self) -> bool:
        return self.max_k is None

    def admits(self, k: int) -> bool:
        return self.max_k is None or k <= self.max_k

    def to_json(self) -> dict[str, Any]:
        if self.max_k is None:
            return {"kind": "unbounded"}
        return {"kind": "bounded", "max_k": self.max_k}


@dataclass(frozen=True)
class ConditionVerdict:
    """Outcome of one condition: verdict, worst witness, capped violation list."""

    name: str
    holds: bool
    witnesses: tuple[Any, ...]
    total_violations: int
    worst: Optional[Any] = None

    def to_json(self) -> dict[str, Any]:
        items = [w.to_json() if hasattr(w, "to_json") else w for w in self.witnesses]
        return {
            "holds": self.holds,
            "witnesses": items,
            "total_violations": self.total_violations,
        }


def _degree_arrays(n: int, rows: Sequence[int]) -> tuple[list[int], list[int], list[int]]:
    out_deg = [rows[v].bit_count() for v in range(n)]
    in_deg = [0] * n
    for u in range(n):
        for v in bits(rows[u]):
            in_deg[v] += 1
    total = [out_deg[v] + in_deg[v] for v in range(n)]
    return out_deg, in_deg, total


def ghouila_houri(d: Digraph) -> ConditionVerdict:
    """Total degree of every vertex at least n."""
    viol = []
    worst = None
    worst_deg = None
    for v in range(d.n):
        deg = d.degree(v)
        if worst_deg is None or deg < worst_deg:
            worst, worst_deg = v, deg
        if deg < d.n:
            viol.append({"vertex": v, "degree": deg, "required": d.n})
    return ConditionVerdict(
        name="ghouila_houri",
        holds=not viol,
        witnesses=tuple(viol[:VIOLATION_CAP]),
        total_violations=len(viol),
        worst={"vertex": worst, "degree": worst_deg},
    )


def woodall(d: Digraph) -> ConditionVerdict:
    """d+(x) + d-(y) >= n for every ordered pair with the arc x->y absent."""
    viol = []
    worst = None
    worst_sum = None
    for x in range(d.n):
        for y in range(d.n):
            if x == y or d.has_arc(x, y):
                continue
            s = d.out_degree(x) + d.in_degree(y)
            if worst_sum is None or s < worst_sum:
                worst, worst_sum = (x, y), s
            if s < d.n:
                viol.append({"x": x, "y": y, "sum": s, "required": d.n})
    return ConditionVerdict(
        name="woodall",
        holds=not viol,
        witnesses=tuple(viol[:VIOLATION_CAP]),
        total_violations=len(viol),
        worst=None if worst is None else {"x": worst[0], "y": worst[1], "sum": worst_sum},
    )


def meyniel(d: Digraph) -> ConditionVerdict:
    """d(x) + d(y) >= 2n - 1 for every non-adjacent pair."""
    bound = 2 * d.n - 1
    viol = []
    worst = None
    worst_sum = None
    for x in range(d.n):
        for y in range(x + 1, d.n):
            if (d.out[x] >> y | d.out[y] >> x) & 1:
                continue
            s = d.degree(x) + d.degree(y)
            if worst_sum is None or s < worst_sum:
                worst, worst_sum = (x, y), s
            if s < bound:
                viol.append({"x": x, "y": y, "sum": s, "required": bound})
    return ConditionVerdict(
        name="meyniel",
        holds=not viol,
        witnesses=tuple(viol[:VIOLATION_CAP]),
        total_violations=len(viol),
        worst=None if worst is None else {"x": worst[0], "y": worst[1], "sum": worst_sum},
    )


def min_degree_semidegree(d: Digraph) -> ConditionVerdict:
    """Total degree >= n-1 everywhere and minimum semi-degree >= n/2 - 1.

    The half-integral comparison is done exactly as 2*min(d+, d-) >= n - 2.
    """
    viol = []
    worst = None
    worst_deg = None
    for v in range(d.n):
        o, i = d.out_degree(v), d.in_degree(v)
        deg = o + i
        if worst_deg is None or deg < worst_deg:
            worst, worst_deg = v, deg
        if deg < d.n - 1 or 2 * min(o, i) < d.n - 2:
            viol.append({"vertex": v, "degree": deg, "out": o, "in": i})
    return ConditionVerdict(
        name="min_degree_semidegree",
        holds=not viol,
        witnesses=tuple(viol[:VIOLATION_CAP]),
        total_violations=len(viol),
        worst={"vertex": worst, "degree": worst_deg},
    )


def _triple_clauses(d: Digraph, z_may_equal_y: bool):
    """Yield (x, y, z, clause, attained_sum) for every qualifying clause.

    Qualifying: x, y distinct and non-adjacent, z any vertex other than x
    (z = y is allowed by default and restricted only when ``z_may_equal_y``
    is false), and the named arc absent.  Both orderings of each non-adjacent
    pair are scanned.  The z = y clauses matter: complete bipartite digraphs
    with parts of size two have no qualifying triple at all without them.
    """
    n = d.n
    deg = [d.degree(v) for v in range(n)]
    out_deg = [d.out_degree(v) for v in range(n)]
    in_deg = [d.in_degree(v) for v in range(n)]
    for x in range(n):
        row_x = d.out[x]
        for y in range(n):
            if y == x or (row_x >> y | d.out[y] >> x) & 1:
                continue
            pair_sum = deg[x] + deg[y]
            for z in range(n):
                if z == x or (z == y and not z_may_equal_y):
                    continue
                if not row_x >> z & 1:
                    yield x, y, z, "x->z", pair_sum + out_deg[x] + in_deg[z]
                if not d.out[z] >> x & 1:
                    yield x, y, z, "z->x", pair_sum + in_deg[x] + out_deg[z]


def condition_a_k(d: Digraph, k: int, *, z_may_equal_y: bool = True) -> ConditionVerdict:
    """Triple degree-sum condition with slack ``k``.

    For every triple (x, y, z) with x, y non-adjacent and z != x: a missing
    arc x->z requires d(x)+d(y)+d+(x)+d-(z) >= 3n-2+k, and a missing arc
    z->x requires d(x)+d(y)+d-(x)+d+(z) >= 3n-2+k.  Negative slack is allowed
    so margins below zero can be probed directly.  Pass
    ``z_may_equal_y=False`` for the stricter pairwise-distinct reading.
    """
    required = 3 * d.n - 2 + k
    viol: list[TripleViolation] = []
    total = 0
    for x, y, z, clause, s in _triple_clauses(d, z_may_equal_y):
        if s < required:
            total += 1
            if len(viol) < VIOLATION_CAP:
                viol.append(TripleViolation(x, y, z, clause, s, required))
    return ConditionVerdict(
        name=f"a{k}",
        holds=total == 0,
        witnesses=tuple(viol),
        total_violations=total,
        worst=min(viol, key=lambda t: t.total) if viol else None,
    )


def ak_margin(d: Digraph, *, z_may_equal_y: bool = True) -> AkMargin:
    """Largest slack still satisfied: min qualifying sum minus (3n - 2).

    Unbounded when no clause qualifies (for instance, no non-adjacent pair).
    """
    best: Optional[int] = None
    for *_ignored, s in _triple_clauses(d, z_may_equal_y):
        if best is None or s < best:
            best = s
    if best is None:
        return AkMargin(None)
    return AkMargin(best - (3 * d.n - 2))


def holds_a_k_rows(n: int, rows: Sequence[int], k: int = 0) -> bool:
    """Early-exit row-level check of the triple condition with slack ``k``."""
    bound = 3 * n - 2 + k
    out_deg, in_deg, deg = _degree_arrays(n, rows)
    for x in range(n):
        row_x = rows[x]
        for y in range(n):
            if y == x or (row_x >> y | rows[y] >> x) & 1:
                continue
            base = deg[x] + deg[y]
            need_in = bound - base - out_deg[x]
            need_out = bound - base - in_deg[x]
            for z in range(n):
                if z == x:
                    continue
                if not row_x >> z & 1 and in_deg[z] < need_in:
                    return False
                if not rows[z] >> x & 1 and out_deg[z] < need_out:
                    return False
    return True


def bjgl_16(d: Digraph) -> ConditionVerdict:
    """min degree >= n-1 and pair sum >= 2n-1 for non-adjacent pairs with a
    common in-neighbour."""
    bound = 2 * d.n - 1
    viol = []
    worst = None
    worst_key = None
    for x in range(d.n):
        for y in range(x + 1, d.n):
            if (d.out[x] >> y | d.out[y] >> x) & 1 or not d.inn[x] & d.inn[y]:
                continue
            dx, dy = d.degree(x), d.degree(y)
            key = min(min(dx, dy) - (d.n - 1), dx + dy - bound)
            if worst_key is None or key < worst_key:
                worst, worst_key = (x, y), key
            if min(dx, dy) < d.n - 1 or dx + dy < bound:
                viol.append({"x": x, "y": y, "d_x": dx, "d_y": dy})
    return ConditionVerdict(
        name="bjgl_16",
        holds=not viol,
        witnesses=tuple(viol[:VIOLATION_CAP]),
        total_violations=len(viol),
        worst=None if worst is None else {"x": worst[0], "y": worst[1], "margin": worst_key},
    )


def bjgl_17(d: Digraph) -> ConditionVerdict:
    """min(d+(x)+d-(y), d-(x)+d+(y)) >= n for non-adjacent pairs with a common
    out-neighbour or a common in-neighbour."""
    viol = []
    worst = None
    worst_sum = None
    for x in range(d.n):
        for y in range(x + 1, d.n):
            if (d.out[x] >> y | d.out[y] >> x) & 1:
                continue
            if not (d.out[x] & d.out[y] or d.inn[x] & d.inn[y]):
                continue
            s = min(
                d.out_degree(x) + d.in_degree(y),
                d.in_degree(x) + d.out_degree(y),
            )
            if worst_sum is None or s < worst_sum:
                worst, worst_sum = (x, y), s
            if s < d.n:
                viol.append({"x": x, "y": y, "sum": s, "required": d.n})
    return ConditionVerdict(
        name="bjgl_17",
        holds=not viol,
        witnesses=tuple(viol[:VIOLATION_CAP]),
        total_violations=len(viol),
        worst=None if worst is None else {"x": worst[0], "y": worst[1], "sum": worst_sum},
    )


def bgy_18(d: Digraph) -> ConditionVerdict:
    """Pair sum >= 2n-1 and min semi-sum >= n-1, for non-adjacent pairs with a
    common out-neighbour or a common in-neighbour."""
    bound = 2 * d.n - 1
    viol = []
    worst = None
    worst_key = None
    for x in range(d.n):
        for y in range(x + 1, d.n):
            if (d.out[x] >> y | d.out[y] >> x) & 1:
                continue
            if not (d.out[x] & d.out[y] or d.inn[x] & d.inn[y]):
                continue
            pair = d.degree(x) + d.degree(y)
            semi = min(
                d.out_degree(x) + d.in_degree(y),
                d.in_degree(x) + d.out_degree(y),
            )
            key = min(pair - bound, semi - (d.n - 1))
            if worst_key is None or key < worst_key:
                worst, worst_key = (x, y), key
            if pair < bound or semi < d.n - 1:
                viol.append({"x": x, "y": y, "pair_sum": pair, "semi_sum": semi})
    return ConditionVerdict(
        name="bgy_18",
        holds=not viol,
        witnesses=tuple(viol[:VIOLATION_CAP]),
        total_violations=len(viol),
        worst=None if worst is None else {"x": worst[0], "y": worst[1], "margin": worst_key},
    )


def lemma35_holds(d: Digraph) -> ConditionVerdict:
    """Under the slack-0 triple condition: each vertex has at most one
    non-adjacent partner with pair degree sum below 2n - 1.

    Raises :class:`HypothesisUnmet` when the digraph does not satisfy the
    slack-0 condition, so a hypothesis failure is never confused with a
    property failure.
    """
    if not holds_a_k_rows(d.n, d.out, 0):
        raise HypothesisUnmet("slack-0 triple condition does not hold")
    bound = 2 * d.n - 1
    viol = []
    total = 0
    for x in range(d.n):
        low = [
            y
            for y in range(d.n)
            if y != x
            and not (d.out[x] >> y | d.out[y] >> x) & 1
            and d.degree(x) + d.degree(y) < bound
        ]
        for i in range(len(low)):
            for j in range(i + 1, len(low)):
                total += 1
                if len(viol) < VIOLATION_CAP:
                    viol.append(
                        {
                            "x": x,
                            "y": low[i],
                            "z": low[j],
                            "sum_xy": d.degree(x) + d.degree(low[i]),
                            "sum_xz": d.degree(x) + d.degree(low[j]),
                            "required": bound,
                        }
                    )
    return ConditionVerdict(
        name="lemma35",
        holds=total == 0,
        witnesses=tuple(viol),
        total_violations=total,
        worst=viol[0] if viol else None,
    )


def lemma35_rows(n: int, rows: Sequence[int]) -> bool:
    """Row-level check of the paired low-degree property (hypothesis NOT checked)."""
    _, _, deg = _degree_arrays(n, rows)
    bound = 2 * n - 1
    for x in range(n):
        low = 0
        for y in range(n):
            if y == x or (rows[x] >> y | rows[y] >> x) & 1:
                continue
            if deg[x] + deg[y] < bound:
                low += 1
                if low >= 2:
                    return False
    return True


@dataclass(frozen=True)
class ConditionReport:
    """All screening conditions for one digraph, plus the triple-slack margin."""

    ghouila_houri: ConditionVerdict
    woodall: ConditionVerdict
    meyniel: ConditionVerdict
    min_degree_semidegree: ConditionVerdict
    a0: ConditionVerdict
    bjgl_16: ConditionVerdict
    bjgl_17: ConditionVerdict
    bgy_18: ConditionVerdict
    ak_margin: AkMargin

    def to_json(self) -> dict[str, Any]:
        return {
            "ghouila_houri": self.ghouila_houri.to_json(),
            "woodall": self.woodall.to_json(),
            "meyniel": self.meyniel.to_json(),
            "min_degree_semidegree": self.min_degree_semidegree.to_json(),
            "a0": self.a0.to_json(),
            "bjgl_16": self.bjgl_16.to_json(),
            "bjgl_17": self.bjgl_17.to_json(),
            "bgy_18": self.bgy_18.to_json(),
            "ak_margin": self.ak_margin.to_json(),
        }


def condition_report(d: Digraph) -> ConditionReport:
    """Evaluate every screening condition on one digraph."""
    return ConditionReport(
        ghouila_houri=ghouila_houri(d),
        woodall=woodall(d),
        meyniel=meyniel(d),
        min_degree_semidegree=min_degree_semidegree(d),
        a0=condition_a_k(d, 0),
        bjgl_16=bjgl_16(d),
        bjgl_17=bjgl_17(d),
        bgy_18=bgy_18(d),
        ak_margin=ak_margin(d),
    )
