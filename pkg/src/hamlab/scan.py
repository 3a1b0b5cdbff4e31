"""Vectorized block kernels for bulk screening of digraph spaces.

The verification harness owes its throughput to these routines: whole blocks
of labeled-space indices (or whole blocks of random samples) are decoded and
screened with numpy, and only the rare digraphs that survive the cheap
filters (strong connectivity, the triple degree-sum condition) are handed
back for scalar re-confirmation and cycle search.  Every kernel mirrors a
scalar routine bit for bit — the test suite holds the two routes equal over
a full labeled space — so the fast path never becomes the only authority.

All row blocks are ``(B, n)`` uint64 arrays of out-adjacency bitmasks, the
same encoding the scalar modules use.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .generators import GAMMA, GIVE_UP_AFTER, GiveUpError, ordered_pairs, threshold_for

U = np.uint64
ONE = U(1)
ZERO = U(0)
GAMMA_U = U(GAMMA)

_SH = [U(i) for i in range(65)]

_M1 = U(0xBF58476D1CE4E5B9)
_M2 = U(0x94D049BB133111EB)
_S30, _S27, _S31 = U(30), U(27), U(31)

_P1 = U(0x5555555555555555)
_P2 = U(0x3333333333333333)
_P4 = U(0x0F0F0F0F0F0F0F0F)
_PM = U(0x0101010101010101)
_S1, _S2, _S4, _S56 = U(1), U(2), U(4), U(56)


def popcount(a: np.ndarray) -> np.ndarray:
    """Set-bit count of a uint64 array (classic parallel bit-count)."""
    a = a - ((a >> _S1) & _P1)
    a = (a & _P2) + ((a >> _S2) & _P2)
    a = (a + (a >> _S4)) & _P4
    return ((a * _PM) >> _S56).astype(np.int32)


def mix_vec(state: np.ndarray) -> np.ndarray:
    """splitmix64 output hash applied elementwise to a uint64 array."""
    z = state ^ (state >> _S30)
    z = z * _M1
    z ^= z >> _S27
    z = z * _M2
    return z ^ (z >> _S31)


@lru_cache(maxsize=None)
def _row_tables(n: int) -> np.ndarray:
    """Per-vertex lookup tables mapping an (n-1)-bit chunk to an out-row.

    Chunk bit j addresses the j-th other vertex in ascending order; the table
    re-inserts the vertex's own (always clear) diagonal bit.
    """
    size = 1 << (n - 1)
    tables = np.zeros((n, size), dtype=np.uint64)
    for u in range(n):
        chunks = np.arange(size, dtype=np.uint64)
        low = chunks & U((1 << u) - 1)
        high = (chunks >> _SH[u]) << _SH[u + 1]
        tables[u] = low | high
    return tables


def decode_rows(n: int, indices: np.ndarray) -> np.ndarray:
    """Decode labeled-space indices into out-adjacency row blocks."""
    tables = _row_tables(n)
    chunk_mask = U((1 << (n - 1)) - 1)
    rows = np.empty((indices.shape[0], n), dtype=np.uint64)
    for u in range(n):
        chunks = (indices >> _SH[u * (n - 1)]) & chunk_mask
        rows[:, u] = tables[u][chunks]
    return rows


def strong_flags(n: int, rows: np.ndarray) -> np.ndarray:
    """Boolean mask of strongly connected digraphs in a row block."""
    count = rows.shape[0]
    full = U((1 << n) - 1)
    reach = np.full(count, 1, dtype=np.uint64)
    back = np.full(count, 1, dtype=np.uint64)
    for _ in range(n - 1):
        grown = reach
        for v in range(n):
            has = ((reach >> _SH[v]) & ONE).astype(bool)
            grown = grown | np.where(has, rows[:, v], ZERO)
        reach = grown
        grown = back
        for v in range(1, n):
            joins = (rows[:, v] & back) != ZERO
            grown = grown | np.where(joins, U(1 << v), ZERO)
        back = grown
    return (reach == full) & (back == full)


def degree_tables(n: int, rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(out-degree, in-degree) int32 arrays of shape (B, n) for a row block."""
    out_deg = np.empty(rows.shape, dtype=np.int32)
    in_deg = np.zeros(rows.shape, dtype=np.int32)
    for v in range(n):
        out_deg[:, v] = popcount(rows[:, v])
        for u in range(n):
            if u != v:
                in_deg[:, v] += ((rows[:, u] >> _SH[v]) & ONE).astype(np.int32)
    return out_deg, in_deg


def triple_condition_flags(n: int, rows: np.ndarray, slack: int) -> np.ndarray:
    """Boolean mask of digraphs satisfying the triple degree-sum condition.

    Quantifier identical to the scalar row kernel: ordered non-adjacent pairs
    (x, y), witness z ranging over every vertex other than x.
    """
    bound = 3 * n - 2 + slack
    out_deg, in_deg = degree_tables(n, rows)
    deg = out_deg + in_deg
    ok = np.ones(rows.shape[0], dtype=bool)
    for x in range(n):
        row_x = rows[:, x]
        for y in range(n):
            if y == x:
                continue
            nonadj = (((row_x >> _SH[y]) | (rows[:, y] >> _SH[x])) & ONE) == ZERO
            if not nonadj.any():
                continue
            base = deg[:, x] + deg[:, y]
            need_in = bound - base - out_deg[:, x]
            need_out = bound - base - in_deg[:, x]
            for z in range(n):
                if z == x:
                    continue
                miss_fwd = ((row_x >> _SH[z]) & ONE) == ZERO
                bad = nonadj & miss_fwd & (in_deg[:, z] < need_in)
                miss_back = ((rows[:, z] >> _SH[x]) & ONE) == ZERO
                bad |= nonadj & miss_back & (out_deg[:, z] < need_out)
                ok &= ~bad
        if not ok.any():
            break
    return ok


def seeds_for(seed: int, ordinals: np.ndarray) -> np.ndarray:
    """Per-sample substream seeds for the given sample ordinals."""
    return mix_vec(U(seed) + (ordinals.astype(np.uint64) + ONE) * GAMMA_U)


def derived_seed_block(seed: int, start: int, count: int) -> np.ndarray:
    """Per-sample substream seeds for samples start..start+count-1."""
    return seeds_for(seed, np.arange(start, start + count, dtype=np.uint64))


def sample_strong_rows(n: int, arc_prob: float, seeds: np.ndarray) -> np.ndarray:
    """Strong random digraphs, one per substream seed, as a (B, n) row block.

    Bit-exact vector replica of the scalar rejection sampler: draw one
    splitmix64 value per ordered pair in row-major order, keep the digraph
    when it is strong, otherwise continue the same stream.
    """
    cutoff = threshold_for(arc_prob)
    all_arcs = cutoff >= 1 << 64
    cut = U(min(cutoff, (1 << 64) - 1))
    pairs = ordered_pairs(n)
    pair_count = U(len(pairs))
    total = seeds.shape[0]
    rows = np.zeros((total, n), dtype=np.uint64)
    attempt = np.zeros(total, dtype=np.uint64)
    alive = np.arange(total)
    while alive.size:
        sub_seeds = seeds[alive]
        base = attempt[alive] * pair_count
        sub = np.zeros((alive.size, n), dtype=np.uint64)
        for i, (u, v) in enumerate(pairs):
            draw = mix_vec(sub_seeds + (base + U(i + 1)) * GAMMA_U)
            arc = np.ones(alive.size, dtype=bool) if all_arcs else draw < cut
            sub[:, u] |= arc.astype(np.uint64) << _SH[v]
        good = strong_flags(n, sub)
        rows[alive[good]] = sub[good]
        alive = alive[~good]
        attempt[alive] += ONE
        if alive.size and int(attempt[alive].max()) >= GIVE_UP_AFTER:
            raise GiveUpError(
                f"no strong digraph of order {n} at arc_prob={arc_prob} "
                f"after {GIVE_UP_AFTER} attempts"
            )
    return rows
