"""The totalistic mod-2 family on free groups: layer structure, the odd-k
expansivity evidence and the explicit two-spot non-2-expansivity witness.

Large-time trace values of a spot orbit are obtained from the distance
projection of the lazy walk on the 2n-regular tree: every vertex at distance
d > 0 has exactly one neighbor closer to the root and 2n-1 farther, so walk
counts (hence orbit values, mod 2) depend on the distance alone.  The 1-D
recurrence this gives is cross-checked cell-by-cell against a genuine ball
simulation before it is trusted at depths where full simulation is
impossible (the support of a t-step orbit is the whole ball B_t).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import engine
from .config import Configuration
from .errors import ResourceLimitError, UsageError
from .lattice import FreeLattice, free
from .presets import lambda_rule
from .report import Report

__all__ = ["lambda_rule", "BallTree", "walk_parity_table", "LayerProfile",
           "layer_profile", "fg_non2exp_witness", "fg_oddk_check"]


class BallTree:
    """Implicit BFS indexing of the ball B_L in F_n.

    Level d occupies a contiguous index block; the children of the j-th node
    of a level form a contiguous block of the next one, so parent/child
    indices are pure arithmetic and no words are stored.  Node 0 is the
    identity; the generator order is a, a^-1, b, b^-1, ...
    """

    def __init__(self, n: int, depth: int, max_nodes: int = 4_000_000):
        if n < 1 or depth < 0:
            raise UsageError("need n >= 1 and depth >= 0")
        q = 2 * n
        counts = [1]
        for d in range(1, depth + 1):
            counts.append(q if d == 1 else counts[-1] * (q - 1))
        starts = [0]
        for c in counts:
            starts.append(starts[-1] + c)
        total = starts[-1]
        if total > max_nodes:
            raise ResourceLimitError(
                f"ball B_{depth} of F_{n} has {total} nodes (> {max_nodes})",
                requested=total)
        self.n = n
        self.depth = depth
        self.counts = counts
        self.starts = starts
        self.total = total
        self.pad = total  # extra slot holding a permanent 0
        nei = np.full((total, q), self.pad, dtype=np.int64)
        if depth >= 1:
            nei[0, :] = np.arange(1, q + 1)
        for d in range(1, depth + 1):
            idx = np.arange(counts[d])
            base = starts[d]
            if d == 1:
                nei[base + idx, 0] = 0
            else:
                nei[base + idx, 0] = starts[d - 1] + idx // (q - 1)
            if d < depth:
                child0 = starts[d + 1] + idx * (q - 1)
                for j in range(q - 1):
                    nei[base + idx, 1 + j] = child0 + j
        self.nei = nei

    def level_slice(self, d: int) -> slice:
        return slice(self.starts[d], self.starts[d] + self.counts[d])

    def step_totalistic(self, values: np.ndarray) -> np.ndarray:
        """values -> values + sum over tree neighbors, mod 2."""
        ext = np.zeros(self.total + 1, dtype=np.uint8)
        ext[:self.total] = values
        gathered = ext[self.nei]
        return (values ^ np.bitwise_xor.reduce(gathered, axis=1)).astype(np.uint8)

    def words(self) -> list[tuple[int, ...]]:
        """Reduced words in index order (small depths only; for cross-checks)."""
        order = [g for i in range(1, self.n + 1) for g in (i, -i)]
        out: list[tuple[int, ...]] = [()]
        frontier: list[tuple[int, ...]] = [()]
        for _ in range(self.depth):
            nxt = []
            for w in frontier:
                last = w[-1] if w else 0
                for g in order:
                    if g != -last:
                        nxt.append(w + (g,))
            out.extend(nxt)
            frontier = nxt
        return out


def walk_parity_table(n: int, d_max: int, t_max: int) -> np.ndarray:
    """table[t, d] = parity of lazy t-step walks between vertices at distance d.

    Recurrence (distance projection of the tree walk): for d > 0 the count
    pulls from d-1 once, d+1 with multiplicity 2n-1 and d itself once; at the
    root all 2n neighbors sit at distance 1.
    """
    if d_max < 0 or t_max < 0:
        raise UsageError("need d_max >= 0 and t_max >= 0")
    width = d_max + t_max + 2
    table = np.zeros((t_max + 1, width), dtype=np.uint8)
    table[0, 0] = 1
    far_mult = (2 * n - 1) % 2  # always 1
    root_mult = (2 * n) % 2     # always 0
    for t in range(1, t_max + 1):
        prev = table[t - 1]
        cur = table[t]
        cur[0] = prev[0] ^ (root_mult & prev[1])
        cur[1:-1] = prev[1:-1] ^ prev[:-2] ^ (far_mult * prev[2:])
    return table[:, :d_max + 1]


@dataclass(frozen=True)
class LayerProfile:
    """Common state of all norm-l cells of the spot orbit, per time step."""

    n: int
    L: int
    t_max: int
    values: tuple[tuple[int, ...], ...]  # values[t][l]

    def value(self, t: int, level: int) -> int:
        return self.values[t][level]


def _sim_depth(L: int, t_max: int) -> int:
    # Boundary effects reach B_L only after 2*depth + 2 - L steps.
    return max(L, (t_max + L) // 2)


def layer_profile(n: int, L: int, t_max: int,
                  max_nodes: int = 4_000_000) -> LayerProfile:
    """Simulate the spot orbit on a ball, verify cell-by-cell that values at
    equal norms agree, and compress to the per-layer profile.

    A failure of the equivariance assertion would be an engine bug, so it
    raises RuntimeError rather than returning a verdict.
    """
    if L < 0 or t_max < 0:
        raise UsageError("need L >= 0 and t_max >= 0")
    depth = _sim_depth(L, t_max)
    tree = BallTree(n, depth, max_nodes=max_nodes)
    dp = walk_parity_table(n, L, t_max)
    values = np.zeros(tree.total, dtype=np.uint8)
    values[0] = 1
    rows = []
    for t in range(t_max + 1):
        if t > 0:
            values = tree.step_totalistic(values)
        row = []
        for lev in range(L + 1):
            block = values[tree.level_slice(lev)]
            first = int(block[0])
            if block.size and not np.all(block == first):
                raise RuntimeError(
                    f"norm equivariance violated at t={t} level={lev}")
            if first != int(dp[t, lev]):
                raise RuntimeError(
                    f"distance recurrence disagrees with simulation at "
                    f"t={t} level={lev}")
            row.append(first)
        rows.append(tuple(row))
    for lev in range(min(L, t_max) + 1):
        if rows[lev][lev] != 1:
            raise RuntimeError(f"first arrival at level {lev} is not 1")
    return LayerProfile(n=n, L=L, t_max=t_max, values=tuple(rows))


def _single_generator_power(lat: FreeLattice, z) -> tuple[int, int]:
    lat.validate_site(z)
    if not z or any(g != z[0] for g in z):
        raise UsageError("z must be a positive power of a single generator")
    return z[0], len(z)


def fg_non2exp_witness(n: int, z, sprime, m: int | None = None,
                       t_max: int = 64, cross_check_t: int = 8) -> Report:
    """Two equidistant spots hanging off the tip of z share their radius-m
    trace, so the rule is not 2-expansive for n >= 2."""
    if n < 2:
        raise UsageError("the two-spot witness needs at least 2 generators")
    lat = free(n)
    s, power = _single_generator_power(lat, z)
    lat.validate_site(sprime)
    if len(sprime) != 1 or abs(sprime[0]) == abs(s):
        raise UsageError("s' must be a generator distinct from +-s")
    if m is None:
        m = power
    if m != power:
        raise UsageError("the construction shields exactly B_{|z|}; m must equal |z|")
    rep = Report(f"fg-witness n={n} z={lat.format_site(z)} "
                 f"s'={lat.format_site(sprime)} m={m} t_max={t_max}")
    x = lat.add(z, sprime)
    y = lat.add(z, lat.neg(sprime))
    rep.expect("norm(x) = norm(y) = m+1",
               lat.norm(x) == m + 1 and lat.norm(y) == m + 1,
               f"x={lat.format_site(x)} y={lat.format_site(y)}")
    window = lat.origin_ball(m)
    dx = [lat.norm(lat.add(lat.neg(w), x)) for w in window]
    dy = [lat.norm(lat.add(lat.neg(w), y)) for w in window]
    rep.expect("windows are equidistant cell-by-cell", dx == dy,
               f"{len(window)} window cells")
    table = walk_parity_table(n, max(max(dx), max(dy)), t_max)
    equal = all(np.array_equal(table[:, a], table[:, b]) for a, b in zip(dx, dy))
    rep.expect(f"traces equal through t={t_max}", equal)
    # cross-check the projected values against the sparse engine at small t
    rule = lambda_rule(n)
    cx = Configuration(lat, 2, {x: 1})
    cy = Configuration(lat, 2, {y: 1})
    ok = True
    cur_x, cur_y = cx, cy
    for t in range(cross_check_t + 1):
        if t > 0:
            cur_x = engine.step(rule, cur_x)
            cur_y = engine.step(rule, cur_y)
        for w, d in zip(window, dx):
            if cur_x.get(w) != int(table[t, d]):
                ok = False
        for w, d in zip(window, dy):
            if cur_y.get(w) != int(table[t, d]):
                ok = False
    rep.expect(f"projection matches sparse engine through t={cross_check_t}", ok)
    return rep


def fg_oddk_check(n: int, k: int, R: int, t_max: int | None = None,
                  sample_cap: int = 5000, seed: int = 0) -> Report:
    """Every k-cell sum of spots (k odd) shows at the origin at the first
    layer with odd occupancy."""
    if k < 1 or k % 2 == 0:
        raise UsageError("k must be odd; for even k see fg_non2exp_witness")
    if R < 0:
        raise UsageError("R must be >= 0")
    lat = free(n)
    rule = lambda_rule(n)
    ball = lat.origin_ball(R)
    if t_max is not None and t_max < R:
        raise UsageError("t_max must cover the ball radius")
    import itertools
    import math
    import random
    total = math.comb(len(ball), k)
    rep = Report(f"fg-oddk n={n} k={k} R={R}")
    if total <= sample_cap:
        subsets = itertools.combinations(range(len(ball)), k)
        rep.note("enumeration", f"exhaustive, {total} subsets")
    else:
        rng = random.Random(seed)
        subsets = (tuple(sorted(rng.sample(range(len(ball)), k)))
                   for _ in range(sample_cap))
        rep.note("enumeration", f"sampled {sample_cap} of {total} subsets")
    bad = 0
    checked = 0
    for subset in subsets:
        sites = [ball[i] for i in subset]
        occupancy: dict[int, int] = {}
        for s in sites:
            lev = lat.norm(s)
            occupancy[lev] = occupancy.get(lev, 0) + 1
        lbar = min(lev for lev, cnt in occupancy.items() if cnt % 2 == 1)
        cfg = Configuration(lat, 2, {s: 1 for s in sites}, _validated=True)
        out = engine.iterate(rule, cfg, lbar)
        if out.get(lat.origin) != 1:
            bad += 1
        checked += 1
    rep.expect("origin value 1 at the first odd layer", bad == 0,
               f"{checked} subsets")
    return rep
