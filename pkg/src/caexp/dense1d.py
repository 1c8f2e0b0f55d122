"""Dense array kernels for orbits of Z rules.

Arrays are allocated over the full light cone of the requested run, so the
zero boundary is exact (np.roll wraparound only ever moves zeros).  These
kernels back the heavier one-dimensional sweeps and are cross-checked against
the sparse engine.
"""
from __future__ import annotations

import numpy as np

from .config import Configuration
from .errors import UsageError
from .lattice import Z
from .rules import LinearRule, MultRule, Rule, SecondOrderRule


def _extent(cells, offsets, t_max: int, pad: int = 1):
    xs = list(cells) or [0]
    disp = [-v for v in offsets] + [0]
    lo = min(xs) + t_max * min(disp) - pad
    hi = max(xs) + t_max * max(disp) + pad
    return lo, hi - lo + 1


def _fill(cells, x0: int, length: int, dtype=np.int64) -> np.ndarray:
    arr = np.zeros(length, dtype=dtype)
    for s, v in cells.items():
        arr[s - x0] = v
    return arr


def orbit_linear(rule: LinearRule, c: Configuration, t_max: int):
    """Orbit of a linear Z rule; returns (x0, array of shape (t_max+1, L))."""
    x0, length = _extent(c.cells, rule.neighborhood, t_max)
    rows = np.empty((t_max + 1, length), dtype=np.int64)
    rows[0] = _fill(c.cells, x0, length)
    m = rule.m
    items = sorted(rule.coeffs.items())
    for t in range(1, t_max + 1):
        prev = rows[t - 1]
        acc = np.zeros(length, dtype=np.int64)
        for v, a in items:
            acc += a * np.roll(prev, -v)
        rows[t] = acc % m
    return x0, rows


def orbit_second_order(rule: SecondOrderRule, c: Configuration, t_max: int):
    """Orbit of SO(F, +) split into layers; returns (x0, A, B).

    A[t], B[t] are the first/second components of the step-t configuration.
    """
    inner = rule.inner
    if not isinstance(inner, LinearRule) or inner.lattice != Z:
        raise UsageError("dense second-order kernel needs a linear Z inner rule")
    q = inner.q
    x0, length = _extent(c.cells, rule.neighborhood, t_max)
    a = np.zeros((t_max + 1, length), dtype=np.int64)
    b = np.zeros((t_max + 1, length), dtype=np.int64)
    for s, val in c.cells.items():
        hi, lo = divmod(val, q)
        a[0, s - x0] = hi
        b[0, s - x0] = lo
    items = sorted(inner.coeffs.items())
    for t in range(1, t_max + 1):
        prev_b = b[t - 1]
        acc = np.zeros(length, dtype=np.int64)
        for v, co in items:
            acc += co * np.roll(prev_b, -v)
        a[t] = prev_b
        b[t] = (acc + a[t - 1]) % q
    return x0, a, b


def orbit_mult(rule: MultRule, c: Configuration, t_max: int):
    x0, length = _extent(c.cells, rule.neighborhood, t_max)
    rows = np.empty((t_max + 1, length), dtype=np.int64)
    rows[0] = _fill(c.cells, x0, length)
    k, m = rule.k, rule.m
    for t in range(1, t_max + 1):
        prev = rows[t - 1]
        rows[t] = (k * prev) % m + (k * np.roll(prev, -1)) // m
    return x0, rows


def row_to_config(rule: Rule, x0: int, row: np.ndarray) -> Configuration:
    cells = {int(i + x0): int(v) for i, v in enumerate(row) if v}
    return Configuration(Z, rule.q, cells, _validated=True)


def pair_rows_to_config(rule: SecondOrderRule, x0: int,
                        row_a: np.ndarray, row_b: np.ndarray) -> Configuration:
    q = rule.inner.q
    enc = row_a * q + row_b
    return row_to_config(rule, x0, enc)
