"""Rule variants: table rules, linear rules, second-order wrappers, the
base-kk' multiplication rule, componentwise products and the layered flip
family.

Every rule knows its lattice, its alphabet (with the group law it is linear
for, when it is linear) and its neighborhood V; the semantics is always
``F(c)(z) = f(v -> c(z+v))``.  Construction-time validation guarantees the
all-quiescent neighborhood maps to the quiescent state, so finite support is
preserved and ``step`` never fails on data.
"""
from __future__ import annotations

import itertools
from typing import Callable, Mapping, Sequence

from .alphabet import Alphabet, Bits, Cyclic, Pair, Product
from .errors import ResourceLimitError, UsageError
from .lattice import Lattice, Site, Z


class Rule:
    lattice: Lattice
    alphabet: Alphabet
    neighborhood: tuple[Site, ...]
    is_linear: bool = False
    name: str = "rule"

    @property
    def q(self) -> int:
        return self.alphabet.size

    @property
    def radius(self) -> int:
        """Smallest r with V contained in B_r(0)."""
        if not self.neighborhood:
            return 0
        return max(self.lattice.norm(v) for v in self.neighborhood)

    def local(self, values: Sequence[int]) -> int:
        """Local function on states listed in neighborhood order."""
        raise NotImplementedError

    def describe(self) -> str:
        return self.name

    def _check_neighborhood(self) -> None:
        seen = set()
        for v in self.neighborhood:
            self.lattice.validate_site(v)
            if v in seen:
                raise UsageError(f"duplicate neighborhood site {v!r}")
            seen.add(v)
        if self.local(tuple(0 for _ in self.neighborhood)) != 0:
            raise UsageError("rule does not fix the quiescent state")


class TableRule(Rule):
    """Exhaustive lookup over Q^V."""

    def __init__(self, lattice: Lattice, q: int, neighborhood: Sequence[Site],
                 table: Mapping[tuple[int, ...], int] | Callable[[tuple[int, ...]], int],
                 name: str = "table", alphabet: Alphabet | None = None):
        self.lattice = lattice
        self.alphabet = alphabet if alphabet is not None else Cyclic(q)
        if self.alphabet.size != q:
            raise UsageError("alphabet size disagrees with q")
        self.neighborhood = tuple(neighborhood)
        self.name = name
        if callable(table):
            self.table = {key: table(key) for key in
                          itertools.product(range(q), repeat=len(self.neighborhood))}
        else:
            self.table = dict(table)
        expected = q ** len(self.neighborhood)
        if len(self.table) != expected:
            raise UsageError(f"table must be exhaustive ({expected} entries)")
        for key, val in self.table.items():
            if not 0 <= val < q:
                raise UsageError(f"table value {val!r} outside alphabet")
        self._check_neighborhood()

    def local(self, values):
        return self.table[tuple(values)]


class LinearRule(Rule):
    """c(z) -> sum_v coeffs[v] * c(z+v) mod m.  Linear for addition mod m."""

    is_linear = True

    def __init__(self, lattice: Lattice, m: int, coeffs: Mapping[Site, int],
                 name: str | None = None):
        self.lattice = lattice
        self.alphabet = Cyclic(m)
        cleaned: dict[Site, int] = {}
        for site, a in coeffs.items():
            lattice.validate_site(site)
            a = a % m
            if a == 0:
                raise UsageError(f"coefficient at {site!r} is 0 mod {m}")
            cleaned[site] = a
        if not cleaned:
            raise UsageError("linear rule needs at least one coefficient")
        self.coeffs = cleaned
        self.neighborhood = tuple(sorted(cleaned))
        self.name = name or f"linear(m={m})"
        self._check_neighborhood()

    @property
    def m(self) -> int:
        return self.alphabet.size

    def local(self, values):
        m = self.m
        return sum(self.coeffs[v] * x for v, x in zip(self.neighborhood, values)) % m

    def describe(self):
        terms = ",".join(f"{self.lattice.format_site(v)}:{a}"
                         for v, a in sorted(self.coeffs.items()))
        return f"linear m={self.m} coeffs={terms}"


class MultRule(Rule):
    """Multiplication by k in base m = k*k' on Z; no carry propagation."""

    def __init__(self, k: int, kp: int):
        if k < 2 or kp < 2:
            raise UsageError("multiplication rule needs k, k' >= 2")
        self.k = k
        self.kp = kp
        self.lattice = Z
        self.alphabet = Cyclic(k * kp)
        self.neighborhood = (0, 1)
        self.name = f"mult({k},{kp})"
        self._check_neighborhood()

    @property
    def m(self) -> int:
        return self.alphabet.size

    def local(self, values):
        c0, c1 = values
        return (self.k * c0) % self.m + (self.k * c1) // self.m


class SecondOrderRule(Rule):
    """Reversible wrapper on Q x Q: (c, d) -> (d, F(d) (+) c)."""

    def __init__(self, inner: Rule, name: str | None = None):
        if not isinstance(inner.alphabet, Cyclic):
            raise UsageError("second-order construction expects a cyclic alphabet")
        self.inner = inner
        self.lattice = inner.lattice
        self.alphabet = Pair(inner.q)
        nbhd = sorted(set(inner.neighborhood) | {inner.lattice.origin})
        self.neighborhood = tuple(nbhd)
        self._origin_idx = nbhd.index(inner.lattice.origin)
        self._inner_idx = [nbhd.index(v) for v in inner.neighborhood]
        self.is_linear = inner.is_linear
        self.name = name or f"SO({inner.name})"
        self._check_neighborhood()

    def local(self, values):
        q = self.inner.q
        pairs = [divmod(s, q) for s in values]
        b_here = pairs[self._origin_idx][1]
        a_here = pairs[self._origin_idx][0]
        f_val = self.inner.local([pairs[i][1] for i in self._inner_idx])
        return b_here * q + (f_val + a_here) % q


class SecondOrderInverseRule(Rule):
    """Inverse of the second-order wrapper: (c, d) -> (inv(F(c)) (+) d, c)."""

    def __init__(self, forward: SecondOrderRule):
        inner = forward.inner
        self.inner = inner
        self.forward = forward
        self.lattice = inner.lattice
        self.alphabet = Pair(inner.q)
        self.neighborhood = forward.neighborhood
        self._origin_idx = forward._origin_idx
        self._inner_idx = forward._inner_idx
        self.is_linear = inner.is_linear
        self.name = f"SO_inv({inner.name})"
        self._check_neighborhood()

    def local(self, values):
        q = self.inner.q
        pairs = [divmod(s, q) for s in values]
        a_here, b_here = pairs[self._origin_idx]
        f_val = self.inner.local([pairs[i][0] for i in self._inner_idx])
        return ((b_here - f_val) % q) * q + a_here


class ProductRule(Rule):
    """Componentwise action of two rules on the product alphabet."""

    def __init__(self, rule_a: Rule, rule_b: Rule):
        if rule_a.lattice != rule_b.lattice:
            raise UsageError("product of rules on different lattices")
        self.rule_a = rule_a
        self.rule_b = rule_b
        self.lattice = rule_a.lattice
        self.alphabet = Product(rule_a.alphabet, rule_b.alphabet)
        nbhd = sorted(set(rule_a.neighborhood) | set(rule_b.neighborhood))
        self.neighborhood = tuple(nbhd)
        self._a_idx = [nbhd.index(v) for v in rule_a.neighborhood]
        self._b_idx = [nbhd.index(v) for v in rule_b.neighborhood]
        self.is_linear = rule_a.is_linear and rule_b.is_linear
        self.name = f"{rule_a.name}x{rule_b.name}"
        self._check_neighborhood()

    def local(self, values):
        alpha: Product = self.alphabet  # type: ignore[assignment]
        decoded = [alpha.decode(s) for s in values]
        va = self.rule_a.local([decoded[i][0] for i in self._a_idx])
        vb = self.rule_b.local([decoded[i][1] for i in self._b_idx])
        return alpha.encode(va, vb)


class LayeredFlipRule(Rule):
    """k copies of a radius-1 binary rule plus a one-shot flip layer.

    Layer i of the image is F applied to layer i, XOR the previous step's
    layer k+1 read at offset -3i; layer k+1 is reset to 0, so the rule is
    never surjective while staying k'-expansive for k' <= k.
    """

    def __init__(self, inner: Rule, k: int):
        if inner.lattice != Z:
            raise UsageError("layered flip is a Z construction")
        if inner.q != 2:
            raise UsageError("layered flip needs a binary inner rule")
        if inner.radius != 1:
            raise UsageError("layered flip needs an inner rule of radius 1")
        if k < 1:
            raise UsageError("layer count k must be >= 1")
        self.inner = inner
        self.k = k
        self.lattice = Z
        self.alphabet = Bits(k + 1)
        nbhd = sorted(set(inner.neighborhood) | {0} | {-3 * i for i in range(1, k + 1)})
        self.neighborhood = tuple(nbhd)
        self._inner_idx = [nbhd.index(v) for v in inner.neighborhood]
        self._flip_idx = [nbhd.index(-3 * i) for i in range(1, k + 1)]
        self.is_linear = inner.is_linear
        self.name = f"layered({inner.name},{k})"
        self._check_neighborhood()

    def local(self, values):
        out = 0
        flip_layer = self.k  # 0-based bit index of layer k+1
        for i in range(self.k):
            f_val = self.inner.local(
                [(values[j] >> i) & 1 for j in self._inner_idx])
            flip = (values[self._flip_idx[i]] >> flip_layer) & 1
            out |= ((f_val ^ flip) & 1) << i
        return out


def identity_rule(lattice: Lattice, q: int) -> LinearRule:
    return LinearRule(lattice, q, {lattice.origin: 1}, name="id")


def is_lr_permutive(rule: Rule) -> bool:
    """Both boundary maps of a Z rule are permutations for every fixed middle.

    Defined only for neighborhoods [-l, r] with l, r > 0; one-sided rules are
    rejected rather than silently classified.
    """
    import itertools as _it
    if rule.lattice != Z:
        raise UsageError("LR-permutivity is a Z notion")
    nbhd = rule.neighborhood
    lo, hi = min(nbhd), max(nbhd)
    if lo >= 0 or hi <= 0:
        raise UsageError("LR-permutivity needs a neighborhood [-l, r] with l, r > 0")
    span = list(range(lo, hi + 1))
    idx = {v: i for i, v in enumerate(nbhd)}
    q = rule.q
    if q ** len(span) > 1 << 20:
        raise ResourceLimitError("alphabet too large for the exhaustive check")

    def value(cells):
        return rule.local([cells[span.index(v)] for v in nbhd])

    for middle in _it.product(range(q), repeat=len(span) - 1):
        for fixed_left in (True, False):
            seen = set()
            for a in range(q):
                cells = ((middle[:0] + (a,) + middle) if fixed_left
                         else (middle + (a,)))
                seen.add(value(cells))
            if len(seen) != q:
                return False
    return True
