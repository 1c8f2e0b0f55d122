"""Fast algebra special to linear rules.

In prime characteristic p the p^k-th power of a linear rule is the same rule
with its neighborhood scaled by p^k; ``fast_iterate`` composes those spread
rules along the base-p digits of t, so the cost scales with the digit count
rather than t for sparse configurations.  Composite moduli are handled by
Chinese-remainder decomposition instead.
"""
from __future__ import annotations

from . import engine
from .config import Configuration
from .errors import UsageError
from .lattice import Site
from .rules import (LayeredFlipRule, LinearRule, Rule, SecondOrderInverseRule,
                    SecondOrderRule)


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime-power factorization [(p, e), ...] by trial division."""
    if n < 2:
        raise UsageError("factorize expects n >= 2")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == [(n, 1)]


def _scale_site(lattice, v: Site, factor: int) -> Site:
    if isinstance(v, int):
        return v * factor
    if isinstance(v, tuple) and len(v) == 2 and all(isinstance(x, int) for x in v):
        return (v[0] * factor, v[1] * factor)
    raise UsageError("neighborhood scaling needs a Z or Z^2 site")


def lucas_power_coeffs(rule: LinearRule, k: int) -> dict[Site, int]:
    """Coefficient map of F^{p^k}: each coefficient relocated to p^k * v."""
    if not is_prime(rule.m):
        raise UsageError("prime modulus required; crt_decompose composite rules first")
    if k < 0:
        raise UsageError("k must be >= 0")
    p = rule.m
    factor = p ** k
    return {_scale_site(rule.lattice, v, factor): a
            for v, a in rule.coeffs.items()}


def spread_rule(rule: LinearRule, k: int) -> LinearRule:
    return LinearRule(rule.lattice, rule.m, lucas_power_coeffs(rule, k),
                      name=f"{rule.name}^({rule.m}^{k})")


def fast_iterate(rule: LinearRule, c: Configuration, t: int) -> Configuration:
    """Exactly iterate(rule, c, t), via the base-p digits of t."""
    if t < 0:
        raise UsageError("iteration count must be >= 0")
    if not is_prime(rule.m):
        raise UsageError("prime modulus required; crt_decompose composite rules first")
    p = rule.m
    cur = c
    k = 0
    while t > 0:
        t, digit = divmod(t, p)
        if digit:
            power = spread_rule(rule, k)
            for _ in range(digit):
                cur = engine.step(power, cur)
        k += 1
    return cur


def crt_decompose(rule: LinearRule) -> list[LinearRule]:
    """One linear rule per prime power of m, coefficients reduced mod p^e."""
    parts = []
    for p, e in factorize(rule.m):
        mod = p ** e
        coeffs = {v: a % mod for v, a in rule.coeffs.items() if a % mod}
        parts.append(LinearRule(rule.lattice, mod, coeffs,
                                name=f"{rule.name} mod {mod}"))
    return parts


def crt_recombine(values: list[int], moduli: list[int]) -> int:
    x, m = 0, 1
    for v, mod in zip(values, moduli):
        # solve x' = x (mod m), x' = v (mod mod)
        inv = pow(m % mod, -1, mod)
        x = x + m * (((v - x) * inv) % mod)
        m *= mod
    return x % m


def amplify(rule: LinearRule, c: Configuration, m_target: int) -> Configuration:
    """Dilate a null-trace witness: c'(p^k x) = c(x), minimal k with
    m_target <= p^k - 1 (and k >= 1).

    If trace(rule, c, r, .) is identically null for the rule radius r, the
    dilated configuration has a null trace on the radius-m_target ball.
    """
    if c.is_zero():
        raise UsageError("amplify needs a nonzero configuration")
    if not is_prime(rule.m):
        raise UsageError("prime modulus required")
    p = rule.m
    k = 1
    while p ** k - 1 < m_target:
        k += 1
    factor = p ** k
    cells = {_scale_site(rule.lattice, s, factor): v for s, v in c.cells.items()}
    return Configuration(c.lattice, c.q, cells, _validated=True)


def second_order(rule: Rule) -> SecondOrderRule:
    """Reversible second-order wrapper (c, d) -> (d, F(d) (+) c)."""
    return SecondOrderRule(rule)


def second_order_inverse(rule: SecondOrderRule) -> SecondOrderInverseRule:
    if not isinstance(rule, SecondOrderRule):
        raise UsageError("expected a second-order rule")
    return SecondOrderInverseRule(rule)


def layered_flip(inner: Rule, k: int) -> LayeredFlipRule:
    return LayeredFlipRule(inner, k)
