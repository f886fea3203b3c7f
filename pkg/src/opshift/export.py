"""Deterministic CSV output.

Floats are written with ``%.17g`` so they round-trip exactly, and nothing
time-dependent goes into a file: the same inputs give byte-identical output.
Files are written to a temporary sibling and renamed into place, so a failed
run never leaves a partial file behind.
"""
from __future__ import annotations

import csv
import io
import os
import tempfile
from pathlib import Path

import numpy as np

from . import __version__


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % float(v)
    return str(v)


def provenance(digest: str = "", **extra) -> list[str]:
    lines = [f"opshift {__version__}"]
    if digest:
        lines.append(f"config_sha256 {digest}")
    lines += [f"{k} {v}" for k, v in extra.items()]
    return lines


def render_csv(columns, rows, header_lines=()) -> str:
    buf = io.StringIO()
    for line in header_lines:
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def atomic_write(path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path, columns, rows, header_lines=()):
    atomic_write(path, render_csv(columns, rows, header_lines))


def basis_rows(basis):
    for n in range(basis.N + 1):
        for i in range(n + 1):
            c = basis.C[n, i]
            yield (n, i, c.real, c.imag)


def kappa_rows(basis):
    for n, k in enumerate(basis.kappa):
        yield (n, k)


def hessenberg_rows(M):
    """Structural entries ``(j, k)`` with ``j <= k + 1`` (1-based)."""
    N = M.size
    for k in range(1, N + 1):
        for j in range(1, min(k + 1, N) + 1):
            v = M.entries[j - 1, k - 1]
            yield (j, k, v.real, v.imag)


def series_rows(s):
    for k in range(-1, s.order + 1):
        c = s.coef(k)
        yield (k, c.real, c.imag)
