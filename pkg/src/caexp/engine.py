"""Rule evaluation, iteration, traces and propagation fronts.

Sign convention, fixed package-wide: ``sigma_z(c)(x) = c(z + x)``, so a cell
at site s seen through a neighborhood offset v contributes to the image at
``s - v``.  A dedicated test pins this.

The sparse step below is the reference semantics for every rule and lattice.
Dense bit-packed backends (``bitgrid`` for Z^2, local array kernels for Z)
are used by the heavier analyses and are cross-checked against this path;
results are bit-identical by construction.
"""
from __future__ import annotations

from dataclasses import dataclass

from .config import Configuration
from .errors import ResourceLimitError, UsageError
from .lattice import Site, ZLattice
from .rules import LinearRule, ProductRule, Rule


def _check_match(rule: Rule, c: Configuration) -> None:
    if rule.lattice != c.lattice:
        raise UsageError(f"rule on {rule.lattice.kind} applied to a "
                         f"{c.lattice.kind} configuration")
    if rule.q != c.q:
        raise UsageError(f"rule alphabet size {rule.q} != configuration q {c.q}")


def step(rule: Rule, c: Configuration) -> Configuration:
    """One exact synchronous update of a finite-support configuration."""
    _check_match(rule, c)
    if isinstance(rule, LinearRule):
        return _step_linear(rule, c)
    return _step_generic(rule, c)


def _step_linear(rule: LinearRule, c: Configuration) -> Configuration:
    lat = rule.lattice
    m = rule.m
    acc: dict[Site, int] = {}
    for s, val in c.cells.items():
        for v, a in rule.coeffs.items():
            z = lat.sub(s, v)
            acc[z] = acc.get(z, 0) + a * val
    out = {z: r for z, r in ((z, x % m) for z, x in acc.items()) if r}
    return Configuration(lat, m, out, _validated=True)


def _step_generic(rule: Rule, c: Configuration) -> Configuration:
    lat = rule.lattice
    nbhd = rule.neighborhood
    candidates = set()
    for s in c.cells:
        for v in nbhd:
            candidates.add(lat.sub(s, v))
    get = c.cells.get
    out: dict[Site, int] = {}
    for z in candidates:
        vals = [get(lat.add(z, v), 0) for v in nbhd]
        r = rule.local(vals)
        if r:
            out[z] = r
    return Configuration(lat, rule.q, out, _validated=True)


def iterate(rule: Rule, c: Configuration, t: int,
            max_cells: int | None = None) -> Configuration:
    """t-fold composition of step; iterate(rule, c, 0) = c.

    ``max_cells`` bounds the evolving support; exceeding it raises a
    ResourceLimitError carrying the last completed step.
    """
    if t < 0:
        raise UsageError("iteration count must be >= 0")
    _check_match(rule, c)
    cur = c
    for done in range(t):
        cur = step(rule, cur)
        if max_cells is not None and len(cur) > max_cells:
            raise ResourceLimitError(
                f"support grew past {max_cells} cells at step {done + 1}",
                last_completed=done + 1)
    return cur


@dataclass(frozen=True)
class TracePrefix:
    """Orbit restricted to the ball B_m(0): patterns[t][i] = F^t(c)(ball[i])."""

    m: int
    ball: tuple[Site, ...]
    patterns: tuple[tuple[int, ...], ...]

    @property
    def t_max(self) -> int:
        return len(self.patterns) - 1

    def is_null(self) -> bool:
        return all(not any(p) for p in self.patterns)

    def pattern_map(self, t: int) -> dict[Site, int]:
        return {s: v for s, v in zip(self.ball, self.patterns[t]) if v}


def trace(rule: Rule, c: Configuration, m: int, t_max: int,
          max_cells: int | None = None) -> TracePrefix:
    """First t_max+1 window patterns of the orbit, one incremental pass."""
    if m < 0 or t_max < 0:
        raise UsageError("trace needs m >= 0 and t_max >= 0")
    _check_match(rule, c)
    ball = tuple(rule.lattice.origin_ball(m))
    patterns = [c.restrict(ball)]
    cur = c
    for done in range(t_max):
        cur = step(rule, cur)
        if max_cells is not None and len(cur) > max_cells:
            raise ResourceLimitError(
                f"support grew past {max_cells} cells at step {done + 1}",
                last_completed=done + 1)
        patterns.append(cur.restrict(ball))
    return TracePrefix(m=m, ball=ball, patterns=tuple(patterns))


def traces_equal(rule: Rule, c: Configuration, d: Configuration,
                 m: int, t_max: int) -> bool:
    """Compare two radius-m traces with early exit."""
    _check_match(rule, c)
    _check_match(rule, d)
    ball = tuple(rule.lattice.origin_ball(m))
    cc, dd = c, d
    if cc.restrict(ball) != dd.restrict(ball):
        return False
    for _ in range(t_max):
        cc = step(rule, cc)
        dd = step(rule, dd)
        if cc.restrict(ball) != dd.restrict(ball):
            return False
    return True


@dataclass
class FrontSeries:
    """Left/right difference positions per step; None marks equal images."""

    l: list[int | None]
    r: list[int | None]
    radius: int

    @property
    def t_max(self) -> int:
        return len(self.l) - 1

    def defined(self, t: int) -> bool:
        return self.l[t] is not None


def fronts(rule: Rule, c: Configuration, d: Configuration,
           t_max: int) -> FrontSeries:
    """Exact min/max difference positions of two orbits on Z."""
    if not isinstance(rule.lattice, ZLattice):
        raise UsageError("fronts are defined on the Z lattice only")
    _check_match(rule, c)
    _check_match(rule, d)
    if c == d:
        raise UsageError("fronts undefined for equal configurations")
    ls: list[int | None] = []
    rs: list[int | None] = []
    cc, dd = c, d
    for t in range(t_max + 1):
        if t > 0:
            cc = step(rule, cc)
            dd = step(rule, dd)
        diffs = cc.diff_sites(dd)
        if diffs:
            ls.append(min(diffs))
            rs.append(max(diffs))
        else:
            ls.append(None)
            rs.append(None)
    return FrontSeries(l=ls, r=rs, radius=rule.radius)


def product(rule_a: Rule, rule_b: Rule) -> ProductRule:
    """Componentwise product rule on the product alphabet."""
    return ProductRule(rule_a, rule_b)
