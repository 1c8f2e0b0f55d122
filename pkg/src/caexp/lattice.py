"""Finitely generated groups used as cell lattices: Z, Z^2 and free groups.

Sites are plain values: an ``int`` for Z, an ``(x, y)`` tuple for Z^2, and a
tuple of nonzero signed generator indices (always in reduced form) for a free
group.  All operations are pure; lattice objects are immutable and safe to
share.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .errors import UsageError

Site = object  # int | tuple[int, int] | tuple[int, ...]


class Lattice:
    """Group operations, the word norm and ball enumeration."""

    kind: str

    # -- group structure -------------------------------------------------
    @property
    def origin(self) -> Site:
        raise NotImplementedError

    def add(self, a: Site, b: Site) -> Site:
        raise NotImplementedError

    def neg(self, a: Site) -> Site:
        raise NotImplementedError

    def sub(self, a: Site, b: Site) -> Site:
        """a + (-b)."""
        return self.add(a, self.neg(b))

    def norm(self, a: Site) -> int:
        raise NotImplementedError

    def size_norm(self, a: Site) -> int:
        """Bounding radius used for configuration size (L-inf on Z^2)."""
        return self.norm(a)

    def generators(self) -> list[Site]:
        """Generator set, closed under inversion."""
        raise NotImplementedError

    def validate_site(self, a: Site) -> None:
        raise NotImplementedError

    # -- balls ------------------------------------------------------------
    def ball(self, center: Site, r: int) -> list[Site]:
        """Sites at word distance <= r from center, in a deterministic order."""
        if r < 0:
            raise UsageError("ball radius must be >= 0")
        return [self.add(center, x) for x in self.origin_ball(r)]

    def origin_ball(self, r: int) -> list[Site]:
        raise NotImplementedError

    # -- textual form -----------------------------------------------------
    def parse_site(self, text: str) -> Site:
        raise NotImplementedError

    def format_site(self, a: Site) -> str:
        raise NotImplementedError

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.kind == getattr(other, "kind", None)

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return f"<lattice {self.kind}>"


class ZLattice(Lattice):
    kind = "z"

    @property
    def origin(self) -> int:
        return 0

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def norm(self, a):
        return abs(a)

    def generators(self):
        return [1, -1]

    def validate_site(self, a):
        if not isinstance(a, int):
            raise UsageError(f"not a Z site: {a!r}")

    def origin_ball(self, r):
        return list(range(-r, r + 1))

    def parse_site(self, text):
        try:
            return int(text)
        except ValueError:
            raise UsageError(f"bad Z site: {text!r}") from None

    def format_site(self, a):
        return str(a)


class Z2Lattice(Lattice):
    kind = "z2"

    @property
    def origin(self):
        return (0, 0)

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def neg(self, a):
        return (-a[0], -a[1])

    def norm(self, a):
        # word norm w.r.t. the unit generators = L1
        return abs(a[0]) + abs(a[1])

    def size_norm(self, a):
        return max(abs(a[0]), abs(a[1]))

    def generators(self):
        return [(1, 0), (-1, 0), (0, 1), (0, -1)]

    def validate_site(self, a):
        if not (isinstance(a, tuple) and len(a) == 2
                and all(isinstance(c, int) for c in a)):
            raise UsageError(f"not a Z^2 site: {a!r}")

    def origin_ball(self, r):
        out = []
        for x in range(-r, r + 1):
            rest = r - abs(x)
            for y in range(-rest, rest + 1):
                out.append((x, y))
        return out

    def box(self, r: int) -> list[tuple[int, int]]:
        """L-inf box of radius r (the size-<=r sites)."""
        return [(x, y) for x in range(-r, r + 1) for y in range(-r, r + 1)]

    def parse_site(self, text):
        parts = text.split(",")
        if len(parts) != 2:
            raise UsageError(f"bad Z^2 site: {text!r}")
        try:
            return (int(parts[0]), int(parts[1]))
        except ValueError:
            raise UsageError(f"bad Z^2 site: {text!r}") from None

    def format_site(self, a):
        return f"{a[0]},{a[1]}"


def reduce_word(letters: Iterable[int]) -> tuple[int, ...]:
    """Cancel adjacent inverse pairs; the result is the canonical reduced word."""
    stack: list[int] = []
    for g in letters:
        if stack and stack[-1] == -g:
            stack.pop()
        else:
            stack.append(g)
    return tuple(stack)


class FreeLattice(Lattice):
    """Free group F_n; sites are reduced words over signed generators 1..n."""

    def __init__(self, n: int):
        if n < 1:
            raise UsageError("free group rank must be >= 1")
        if n > 26:
            raise UsageError("free group rank capped at 26 (letter names a..z)")
        self.n = n
        self.kind = f"free:{n}"

    @property
    def origin(self):
        return ()

    def add(self, a, b):
        return reduce_word(tuple(a) + tuple(b))

    def neg(self, a):
        return tuple(-g for g in reversed(a))

    def norm(self, a):
        return len(a)

    def generators(self):
        out = []
        for i in range(1, self.n + 1):
            out.append((i,))
            out.append((-i,))
        return out

    def validate_site(self, a):
        if not isinstance(a, tuple):
            raise UsageError(f"not a free-group site: {a!r}")
        for g in a:
            if not isinstance(g, int) or g == 0 or abs(g) > self.n:
                raise UsageError(f"bad generator {g!r} in word {a!r}")
        if reduce_word(a) != a:
            raise UsageError(f"word not reduced: {a!r}")

    def origin_ball(self, r):
        # BFS with last-letter exclusion; children appended in generator order,
        # so the listing is by norm and deterministic.
        out: list[tuple[int, ...]] = [()]
        frontier: list[tuple[int, ...]] = [()]
        signed = [g for i in range(1, self.n + 1) for g in (i, -i)]
        for _ in range(r):
            nxt = []
            for w in frontier:
                last = w[-1] if w else 0
                for g in signed:
                    if g != -last:
                        nxt.append(w + (g,))
            out.extend(nxt)
            frontier = nxt
        return out

    def ball_size(self, r: int) -> int:
        if r == 0:
            return 1
        q = 2 * self.n
        if self.n == 1:
            return 2 * r + 1
        return 1 + q * ((q - 1) ** r - 1) // (q - 2)

    def parse_site(self, text):
        text = text.strip()
        if text in ("e", ""):
            return ()
        letters = []
        for tok in text.split():
            if len(tok) != 1 or not tok.isalpha():
                raise UsageError(f"bad free-group letter: {tok!r}")
            idx = ord(tok.lower()) - ord("a") + 1
            if idx > self.n:
                raise UsageError(f"generator {tok!r} outside F_{self.n}")
            letters.append(-idx if tok.isupper() else idx)
        word = reduce_word(letters)
        return word

    def format_site(self, a):
        if not a:
            return "e"
        return " ".join(
            chr(ord("a") + abs(g) - 1).upper() if g < 0
            else chr(ord("a") + g - 1)
            for g in a)


def branch_of(lattice: Lattice, s: Site):
    """First letter of a reduced free-group word, or "root" for the identity."""
    if not isinstance(lattice, FreeLattice):
        raise UsageError("branch_of is only defined on free-group lattices")
    lattice.validate_site(s)
    if not s:
        return "root"
    return s[0]


@lru_cache(maxsize=None)
def _lattice_singleton(kind: str) -> Lattice:
    if kind == "z":
        return ZLattice()
    if kind == "z2":
        return Z2Lattice()
    if kind.startswith("free:"):
        return FreeLattice(int(kind.split(":", 1)[1]))
    raise UsageError(f"unknown lattice kind: {kind!r}")


def lattice_by_kind(kind: str) -> Lattice:
    return _lattice_singleton(kind)


Z = lattice_by_kind("z")
Z2 = lattice_by_kind("z2")


def free(n: int) -> FreeLattice:
    return lattice_by_kind(f"free:{n}")  # type: ignore[return-value]
