"""State alphabets and the group laws rules are linear for.

States are stored as integers 0..size-1 everywhere; structured alphabets
(pairs, bit vectors, products) define how those integers encode tuples and
what the componentwise addition law is.
"""
from __future__ import annotations

from .errors import UsageError


class Alphabet:
    size: int

    @property
    def zero(self) -> int:
        return 0

    def add(self, s: int, t: int) -> int:
        raise NotImplementedError

    def neg(self, s: int) -> int:
        raise NotImplementedError

    @property
    def moduli(self) -> tuple[int, ...]:
        """Cyclic factors: every alphabet here is a product of Z_{m_i}."""
        raise NotImplementedError

    def components(self, s: int) -> tuple[int, ...]:
        raise NotImplementedError

    def from_components(self, comps) -> int:
        raise NotImplementedError

    def format(self, s: int) -> str:
        return str(s)

    def states(self) -> range:
        return range(self.size)

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items()))))


class Cyclic(Alphabet):
    """Z_m with addition mod m."""

    def __init__(self, m: int):
        if m < 2:
            raise UsageError("alphabet size must be >= 2")
        self.size = m

    def add(self, s, t):
        return (s + t) % self.size

    def neg(self, s):
        return (-s) % self.size

    def scale(self, a: int, s: int) -> int:
        return (a * s) % self.size

    @property
    def moduli(self):
        return (self.size,)

    def components(self, s):
        return (s,)

    def from_components(self, comps):
        return comps[0] % self.size

    def __repr__(self):
        return f"Z_{self.size}"


class Pair(Alphabet):
    """Q x Q for Q = Z_q, encoded as a*q + b, with componentwise addition."""

    def __init__(self, q: int):
        if q < 2:
            raise UsageError("component size must be >= 2")
        self.q = q
        self.size = q * q

    def encode(self, a: int, b: int) -> int:
        return a * self.q + b

    def decode(self, s: int) -> tuple[int, int]:
        return divmod(s, self.q)

    def add(self, s, t):
        q = self.q
        sa, sb = divmod(s, q)
        ta, tb = divmod(t, q)
        return ((sa + ta) % q) * q + (sb + tb) % q

    def neg(self, s):
        q = self.q
        a, b = divmod(s, q)
        return ((-a) % q) * q + (-b) % q

    def scale(self, a: int, s: int) -> int:
        q = self.q
        x, y = divmod(s, q)
        return ((a * x) % q) * q + (a * y) % q

    @property
    def moduli(self):
        return (self.q, self.q)

    def components(self, s):
        return self.decode(s)

    def from_components(self, comps):
        return (comps[0] % self.q) * self.q + comps[1] % self.q

    def format(self, s):
        a, b = self.decode(s)
        return f"({a},{b})"

    def __repr__(self):
        return f"(Z_{self.q})^2"


class Bits(Alphabet):
    """{0,1}^layers encoded as a bitmask, with XOR as the group law."""

    def __init__(self, layers: int):
        if layers < 1:
            raise UsageError("need at least one layer")
        self.layers = layers
        self.size = 1 << layers

    def add(self, s, t):
        return s ^ t

    def neg(self, s):
        return s

    def bit(self, s: int, layer: int) -> int:
        """Layer values are 1-based to match the layered-rule convention."""
        return (s >> (layer - 1)) & 1

    @property
    def moduli(self):
        return (2,) * self.layers

    def components(self, s):
        return tuple((s >> i) & 1 for i in range(self.layers))

    def from_components(self, comps):
        out = 0
        for i, c in enumerate(comps):
            out |= (c & 1) << i
        return out

    def format(self, s):
        return "".join(str(self.bit(s, i)) for i in range(1, self.layers + 1))

    def __repr__(self):
        return f"(Z_2)^{self.layers}"


class Product(Alphabet):
    """Q_A x Q_B for two arbitrary alphabets, encoded as a*|B| + b."""

    def __init__(self, a: Alphabet, b: Alphabet):
        self.a = a
        self.b = b
        self.size = a.size * b.size

    def encode(self, sa: int, sb: int) -> int:
        return sa * self.b.size + sb

    def decode(self, s: int) -> tuple[int, int]:
        return divmod(s, self.b.size)

    def add(self, s, t):
        sa, sb = self.decode(s)
        ta, tb = self.decode(t)
        return self.encode(self.a.add(sa, ta), self.b.add(sb, tb))

    def neg(self, s):
        sa, sb = self.decode(s)
        return self.encode(self.a.neg(sa), self.b.neg(sb))

    @property
    def moduli(self):
        return self.a.moduli + self.b.moduli

    def components(self, s):
        sa, sb = self.decode(s)
        return self.a.components(sa) + self.b.components(sb)

    def from_components(self, comps):
        na = len(self.a.moduli)
        return self.encode(self.a.from_components(comps[:na]),
                           self.b.from_components(comps[na:]))

    def format(self, s):
        sa, sb = self.decode(s)
        return f"({self.a.format(sa)},{self.b.format(sb)})"

    def __repr__(self):
        return f"{self.a!r}x{self.b!r}"
