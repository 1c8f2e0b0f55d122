"""Text format for configurations.

Header line: ``lattice=<z|z2|free:n> q=<int> quiescent=<int>``, then one
``site<TAB>state`` line per support entry.  Site syntax: Z ``7``, Z^2
``3,-2``, free groups whitespace-separated letters with uppercase meaning
inverse (``a b A``) and ``e`` for the identity.
"""
from __future__ import annotations

from .config import Configuration
from .errors import UsageError
from .lattice import lattice_by_kind


def dumps(c: Configuration) -> str:
    lines = [f"lattice={c.lattice.kind} q={c.q} quiescent=0"]
    for site in c.support():
        lines.append(f"{c.lattice.format_site(site)}\t{c.cells[site]}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> Configuration:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise UsageError("empty configuration file")
    fields = {}
    for tok in lines[0].split():
        if "=" not in tok:
            raise UsageError(f"bad header token {tok!r}")
        key, val = tok.split("=", 1)
        fields[key] = val
    try:
        lattice = lattice_by_kind(fields["lattice"])
        q = int(fields["q"])
        quiescent = int(fields.get("quiescent", "0"))
    except (KeyError, ValueError) as exc:
        raise UsageError(f"bad configuration header: {lines[0]!r}") from exc
    if quiescent != 0:
        raise UsageError("only quiescent state 0 is supported")
    cells = {}
    for ln in lines[1:]:
        if "\t" not in ln:
            raise UsageError(f"expected site<TAB>state: {ln!r}")
        site_text, state_text = ln.split("\t", 1)
        site = lattice.parse_site(site_text)
        try:
            state = int(state_text)
        except ValueError:
            raise UsageError(f"bad state {state_text!r}") from None
        if site in cells:
            raise UsageError(f"duplicate site {site_text!r}")
        cells[site] = state
    return Configuration(lattice, q, cells)


def save(c: Configuration, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(c))


def load(path) -> Configuration:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())
