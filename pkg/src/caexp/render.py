"""Space-time rendering to binary PGM (P5) or plain text.

Z rules produce one strip image with time running bottom-to-top (the last
computed step is the top row).  Z^2 rules produce one numbered frame per
step.  Gray value is floor(255 * state / (q - 1)); output is byte-exact for
fixed inputs.
"""
from __future__ import annotations

import os

import numpy as np

from . import engine
from .config import Configuration
from .errors import UsageError
from .lattice import Z2Lattice, ZLattice
from .rules import Rule


def _pgm_bytes(img: np.ndarray) -> bytes:
    h, w = img.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + img.astype(np.uint8).tobytes()


def _gray(state: int, q: int) -> int:
    if q <= 1:
        return 0
    return (255 * state) // (q - 1)


def render_strip(rule: Rule, c: Configuration, width_window: int,
                 t_max: int) -> np.ndarray:
    """Z space-time diagram as a (t_max+1, 2*width_window+1) gray array."""
    if not isinstance(rule.lattice, ZLattice):
        raise UsageError("strip rendering needs a Z rule")
    xs = list(range(-width_window, width_window + 1))
    rows = []
    cur = c
    for t in range(t_max + 1):
        if t > 0:
            cur = engine.step(rule, cur)
        rows.append([_gray(cur.get(x), rule.q) for x in xs])
    rows.reverse()  # bottom-to-top time axis
    return np.array(rows, dtype=np.uint8)


def render_frames(rule: Rule, c: Configuration, width_window: int,
                  t_max: int) -> list[np.ndarray]:
    """Z^2 orbit as one gray frame per step (rows are decreasing y)."""
    if not isinstance(rule.lattice, Z2Lattice):
        raise UsageError("frame rendering needs a Z^2 rule")
    span = range(-width_window, width_window + 1)
    frames = []
    cur = c
    for t in range(t_max + 1):
        if t > 0:
            cur = engine.step(rule, cur)
        img = np.zeros((len(span), len(span)), dtype=np.uint8)
        for i, y in enumerate(reversed(span)):
            for j, x in enumerate(span):
                img[i, j] = _gray(cur.get((x, y)), rule.q)
        frames.append(img)
    return frames


def render_spacetime(rule: Rule, c: Configuration, width_window: int,
                     t_max: int, fmt: str = "pgm",
                     out_dir: str | None = None,
                     basename: str = "spacetime") -> list[str] | bytes | str:
    """Render to PGM bytes/files or a text dump.

    With ``out_dir`` set, files are written and their paths returned;
    otherwise the raw bytes (Z) or text are returned directly.
    """
    lat = rule.lattice
    if isinstance(lat, ZLattice):
        img = render_strip(rule, c, width_window, t_max)
        if fmt == "text":
            txt = "\n".join("".join(str((v * (rule.q - 1) + 254) // 255) for v in row)
                            for row in img) + "\n"
            return _write_or_return(txt.encode(), out_dir, f"{basename}.txt", text=True)
        data = _pgm_bytes(img)
        return _write_or_return(data, out_dir, f"{basename}.pgm", text=False)
    if isinstance(lat, Z2Lattice):
        if fmt == "text":
            raise UsageError("text format is only available for Z strips")
        frames = render_frames(rule, c, width_window, t_max)
        if out_dir is None:
            raise UsageError("Z^2 rendering writes frame files; pass out_dir")
        paths = []
        for t, img in enumerate(frames):
            path = os.path.join(out_dir, f"{basename}_{t:04d}.pgm")
            with open(path, "wb") as fh:
                fh.write(_pgm_bytes(img))
            paths.append(path)
        return paths
    raise UsageError("rendering supports Z and Z^2 only; "
                     "use the textual configuration dump for free groups")


def _write_or_return(data: bytes, out_dir, name, text: bool):
    if out_dir is None:
        return data.decode() if text else data
    path = os.path.join(out_dir, name)
    with open(path, "wb") as fh:
        fh.write(data)
    return [path]
