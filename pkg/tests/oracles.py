"""Independent brute-force oracles used to cross-check the fast implementations.

Everything here is deliberately naive: subsets plus permutations, Warshall
closure, direct formula evaluation.  None of it shares code with the package
so a bug has to be made twice to slip through.
"""
from __future__ import annotations

from itertools import combinations, permutations
from typing import Optional

from hamlab.digraph import Digraph


def oracle_cycle_of_length(d: Digraph, length: int) -> Optional[tuple[int, ...]]:
    """Subset-and-permutation search for a cycle with exactly ``length`` vertices."""
    if not 2 <= length <= d.n:
        return None
    for subset in combinations(range(d.n), length):
        first = subset[0]
        for rest in permutations(subset[1:]):
            order = (first,) + rest
            if all(d.has_arc(order[i], order[(i + 1) % length]) for i in range(length)):
                return order
    return None


def oracle_spectrum(d: Digraph) -> set[int]:
    return {length for length in range(2, d.n + 1) if oracle_cycle_of_length(d, length)}


def oracle_strong(d: Digraph) -> bool:
    """Warshall transitive closure; strong iff every ordered pair is reachable."""
    n = d.n
    if n == 1:
        return True
    reach = [[d.has_arc(u, v) for v in range(n)] for u in range(n)]
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                ri, rk = reach[i], reach[k]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return all(reach[i][j] for i in range(n) for j in range(n) if i != j)


def oracle_hamiltonian_bypass(d: Digraph) -> Optional[tuple[int, ...]]:
    """Spanning path whose first vertex also sends an arc to its last."""
    for order in permutations(range(d.n)):
        if all(d.has_arc(order[i], order[i + 1]) for i in range(d.n - 1)) and d.has_arc(
            order[0], order[-1]
        ):
            return order
    return None


def oracle_ak_margin(d: Digraph, *, z_may_equal_y: bool = True) -> Optional[int]:
    """Direct evaluation of the triple-condition margin; None when no clause fires."""
    n = d.n
    best: Optional[int] = None
    for x in range(n):
        for y in range(n):
            if x == y or d.has_arc(x, y) or d.has_arc(y, x):
                continue
            for z in range(n):
                if z == x or (z == y and not z_may_equal_y):
                    continue
                if not d.has_arc(x, z):
                    s = d.degree(x) + d.degree(y) + d.out_degree(x) + d.in_degree(z)
                    best = s if best is None else min(best, s)
                if not d.has_arc(z, x):
                    s = d.degree(x) + d.degree(y) + d.in_degree(x) + d.out_degree(z)
                    best = s if best is None else min(best, s)
    return None if best is None else best - (3 * n - 2)


def oracle_is_kstar(d: Digraph) -> Optional[tuple[int, int]]:
    """Part sizes (p, q) with p <= q if the digraph is a complete bipartite digraph."""
    n = d.n
    for size in range(1, n // 2 + 1):
        for part in combinations(range(n), size):
            a = set(part)
            b = set(range(n)) - a
            ok = True
            for u in range(n):
                for v in range(n):
                    if u == v:
                        continue
                    want = (u in a) != (v in a)
                    if d.has_arc(u, v) != want:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                p, q = sorted((len(a), len(b)))
                return p, q
    return None


def oracle_insertion_slots(d: Digraph, path: tuple[int, ...], x: int) -> list[int]:
    """Every index i where x fits between path[i] and path[i+1]."""
    return [
        i
        for i in range(len(path) - 1)
        if d.has_arc(path[i], x) and d.has_arc(x, path[i + 1])
    ]


def oracle_pair_deficiency(d: Digraph) -> dict[int, list[int]]:
    """Map each vertex to its non-adjacent partners with degree pair sum < 2n - 1."""
    n = d.n
    low: dict[int, list[int]] = {v: [] for v in range(n)}
    for x in range(n):
        for y in range(n):
            if x == y or d.has_arc(x, y) or d.has_arc(y, x):
                continue
            if d.degree(x) + d.degree(y) < 2 * n - 1:
                low[x].append(y)
    return low
